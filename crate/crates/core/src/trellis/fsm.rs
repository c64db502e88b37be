use std::fmt;
use std::str::FromStr;

use super::TrellisError;

/// A binary-input encoder state machine. Each step consumes one input bit
/// and emits the same number of parity bits; the input itself is the
/// systematic bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fsm {
    next: Vec<[usize; 2]>,
    output: Vec<[Vec<u8>; 2]>,
}

impl Fsm {
    /// Builds a machine from `(state, input) -> (next, parity bits)` tables.
    pub fn new(next: Vec<[usize; 2]>, output: Vec<[Vec<u8>; 2]>) -> Result<Self, TrellisError> {
        let s = next.len();
        let bad = |msg: String| TrellisError::Parse { line: 0, msg };
        if s == 0 || output.len() != s {
            return Err(bad("state count mismatch".into()));
        }
        if next.iter().flatten().any(|&t| t >= s) {
            return Err(bad("next state out of range".into()));
        }
        let width = output[0][0].len();
        if output.iter().flatten().any(|o| o.len() != width || o.iter().any(|&b| b > 1)) {
            return Err(bad("parity outputs must be bit strings of equal length".into()));
        }
        Ok(Self { next, output })
    }

    /// Two-state accumulator: next state and output are both `s ⊕ u`.
    pub fn accumulator() -> Self {
        Self::new(vec![[0, 1], [1, 0]], vec![[vec![0], vec![1]], [vec![1], vec![0]]]).unwrap()
    }

    /// Four-state recursive systematic encoder with feedback `1 + D + D²`
    /// and feedforward `1 + D²` (octal 7 and 5). State `2 d₁ + d₂` holds the
    /// two most recent register values.
    pub fn rsc_7_5() -> Self {
        let mut next = Vec::new();
        let mut output = Vec::new();
        for s in 0..4usize {
            let (d1, d2) = ((s >> 1) as u8 & 1, s as u8 & 1);
            let mut nx = [0; 2];
            let mut out: [Vec<u8>; 2] = [Vec::new(), Vec::new()];
            for u in 0..2u8 {
                let w = u ^ d1 ^ d2;
                nx[u as usize] = (usize::from(w) << 1) | usize::from(d1);
                out[u as usize] = vec![w ^ d2];
            }
            next.push(nx);
            output.push(out);
        }
        Self::new(next, output).unwrap()
    }

    pub fn num_states(&self) -> usize {
        self.next.len()
    }

    /// Parity bits emitted per step.
    pub fn parity_width(&self) -> usize {
        self.output[0][0].len()
    }

    pub fn next_state(&self, state: usize, input: u8) -> usize {
        self.next[state][usize::from(input)]
    }

    pub fn output(&self, state: usize, input: u8) -> &[u8] {
        &self.output[state][usize::from(input)]
    }

    /// Runs the machine from state 0 and returns the parity bits and the
    /// final state.
    pub fn encode(&self, input: &[u8]) -> (Vec<u8>, usize) {
        let mut s = 0;
        let mut parity = Vec::with_capacity(input.len() * self.parity_width());
        for &u in input {
            parity.extend_from_slice(self.output(s, u));
            s = self.next_state(s, u);
        }
        (parity, s)
    }
}

/// Text form: `states=N`, then one line `s u -> s' bits` per transition.
/// Blank lines and `#` comments are ignored.
impl FromStr for Fsm {
    type Err = TrellisError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let err = |line: usize, msg: &str| TrellisError::Parse { line, msg: msg.to_string() };
        let (line, header) = lines.next().ok_or_else(|| err(1, "empty FSM description"))?;
        let states: usize = header
            .strip_prefix("states=")
            .and_then(|v| v.trim().parse().ok())
            .filter(|&v| v > 0)
            .ok_or_else(|| err(line, "expected states=N with N ≥ 1"))?;
        let mut next = vec![[usize::MAX; 2]; states];
        let mut output: Vec<[Vec<u8>; 2]> = vec![[Vec::new(), Vec::new()]; states];
        let mut width = None;
        for (line, l) in lines {
            let (lhs, rhs) = l.split_once("->").ok_or_else(|| err(line, "expected `s u -> s' bits`"))?;
            let lhs: Vec<&str> = lhs.split_whitespace().collect();
            let rhs: Vec<&str> = rhs.split_whitespace().collect();
            if lhs.len() != 2 || rhs.len() != 2 {
                return Err(err(line, "expected `s u -> s' bits`"));
            }
            let s: usize = lhs[0].parse().map_err(|_| err(line, "bad state"))?;
            let u: usize = match lhs[1] {
                "0" => 0,
                "1" => 1,
                _ => return Err(err(line, "input must be 0 or 1")),
            };
            let t: usize = rhs[0].parse().map_err(|_| err(line, "bad next state"))?;
            if s >= states || t >= states {
                return Err(err(line, "state out of range"));
            }
            let bits: Vec<u8> = rhs[1]
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(err(line, "output must be a bit string")),
                })
                .collect::<Result<_, _>>()?;
            if *width.get_or_insert(bits.len()) != bits.len() {
                return Err(err(line, "output width differs from earlier lines"));
            }
            if next[s][u] != usize::MAX {
                return Err(err(line, "duplicate transition"));
            }
            next[s][u] = t;
            output[s][u] = bits;
        }
        for (s, nx) in next.iter().enumerate() {
            for u in 0..2 {
                if nx[u] == usize::MAX {
                    return Err(TrellisError::MissingTransition { state: s, input: u as u8 });
                }
            }
        }
        Fsm::new(next, output)
    }
}

impl fmt::Display for Fsm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states={}", self.num_states())?;
        for s in 0..self.num_states() {
            for u in 0..2u8 {
                let bits: String = self.output(s, u).iter().map(|b| char::from(b'0' + b)).collect();
                writeln!(f, "{s} {u} -> {} {bits}", self.next_state(s, u))?;
            }
        }
        Ok(())
    }
}
