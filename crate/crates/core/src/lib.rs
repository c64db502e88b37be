#![allow(clippy::needless_range_loop)]

pub mod channel;
pub mod decode;
pub mod gf2;
pub mod lp;
pub mod relax;
pub mod sim;
pub mod trellis;
