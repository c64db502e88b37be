//! Guide chapters compiled as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/codes.md")]
pub mod codes {}
#[doc = include_str!("../../../book/src/relaxations.md")]
pub mod relaxations {}
#[doc = include_str!("../../../book/src/lp-decoding.md")]
pub mod lp_decoding {}
#[doc = include_str!("../../../book/src/improving.md")]
pub mod improving {}
#[doc = include_str!("../../../book/src/fractional-distance.md")]
pub mod fractional_distance {}
#[doc = include_str!("../../../book/src/trellis.md")]
pub mod trellis {}
#[doc = include_str!("../../../book/src/simulation.md")]
pub mod simulation {}
