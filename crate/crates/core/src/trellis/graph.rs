use crate::lp::{LpProblem, Row};

use super::{Fsm, TrellisError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrellisEdge {
    pub from: usize,
    pub to: usize,
    pub input: u8,
    pub output: Vec<u8>,
}

/// The state machine unrolled over `k` steps, starting and ending in state
/// 0, keeping only edges that lie on some start-to-end path.
///
/// Edges are numbered globally segment by segment; within a segment they
/// are ordered by source state, then input.
#[derive(Debug, Clone, PartialEq)]
pub struct Trellis {
    num_states: usize,
    parity_width: usize,
    segments: Vec<Vec<TrellisEdge>>,
    offsets: Vec<usize>,
}

impl Trellis {
    pub fn new(fsm: &Fsm, k: usize) -> Result<Self, TrellisError> {
        if k == 0 {
            return Err(TrellisError::EmptyBlock);
        }
        let s = fsm.num_states();
        let mut reach = vec![vec![false; s]; k + 1];
        reach[0][0] = true;
        for t in 0..k {
            for st in 0..s {
                if reach[t][st] {
                    for u in 0..2 {
                        reach[t + 1][fsm.next_state(st, u)] = true;
                    }
                }
            }
        }
        let mut coreach = vec![vec![false; s]; k + 1];
        coreach[k][0] = true;
        for t in (0..k).rev() {
            for st in 0..s {
                coreach[t][st] = (0..2).any(|u| coreach[t + 1][fsm.next_state(st, u)]);
            }
        }
        if !reach[k][0] {
            return Err(TrellisError::NoTerminatingPath(k));
        }
        let mut segments = Vec::with_capacity(k);
        for t in 0..k {
            let mut seg = Vec::new();
            for st in 0..s {
                if !(reach[t][st] && coreach[t][st]) {
                    continue;
                }
                for u in 0..2 {
                    let to = fsm.next_state(st, u);
                    if coreach[t + 1][to] {
                        seg.push(TrellisEdge {
                            from: st,
                            to,
                            input: u,
                            output: fsm.output(st, u).to_vec(),
                        });
                    }
                }
            }
            segments.push(seg);
        }
        let mut offsets = vec![0];
        for seg in &segments {
            offsets.push(offsets.last().unwrap() + seg.len());
        }
        Ok(Self {
            num_states: s,
            parity_width: fsm.parity_width(),
            segments,
            offsets,
        })
    }

    /// Number of segments (information bits).
    pub fn k(&self) -> usize {
        self.segments.len()
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn parity_width(&self) -> usize {
        self.parity_width
    }

    pub fn num_edges(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn segment(&self, t: usize) -> &[TrellisEdge] {
        &self.segments[t]
    }

    /// Global id of edge `local` in segment `t`.
    pub fn edge_id(&self, t: usize, local: usize) -> usize {
        self.offsets[t] + local
    }

    /// Segment and edge of a global id.
    pub fn edge(&self, id: usize) -> (usize, &TrellisEdge) {
        let t = self.offsets.partition_point(|&o| o <= id) - 1;
        (t, &self.segments[t][id - self.offsets[t]])
    }

    /// Edge costs for systematic LLRs `λ^s` (one per segment) and parity
    /// LLRs `λ^p` (`parity_width` per segment).
    pub fn edge_costs(&self, systematic: &[f64], parity: &[f64]) -> Result<Vec<f64>, TrellisError> {
        let w = self.parity_width;
        if systematic.len() != self.k() || parity.len() != self.k() * w {
            return Err(TrellisError::LengthMismatch {
                expected: self.k() * (1 + w),
                found: systematic.len() + parity.len(),
            });
        }
        let mut costs = Vec::with_capacity(self.num_edges());
        for (t, seg) in self.segments.iter().enumerate() {
            for e in seg {
                let mut c = systematic[t] * f64::from(e.input);
                for (b, l) in e.output.iter().zip(&parity[t * w..(t + 1) * w]) {
                    c += f64::from(*b) * l;
                }
                costs.push(c);
            }
        }
        Ok(costs)
    }

    /// Input bits and parity bits along a path given as one edge id per
    /// segment.
    pub fn path_bits(&self, path: &[usize]) -> (Vec<u8>, Vec<u8>) {
        let mut inputs = Vec::with_capacity(path.len());
        let mut parity = Vec::new();
        for &id in path {
            let (_, e) = self.edge(id);
            inputs.push(e.input);
            parity.extend_from_slice(&e.output);
        }
        (inputs, parity)
    }
}

/// Minimum-cost start-to-end path. Among equal-cost paths the one with the
/// lexicographically smallest sequence of edge ids wins.
pub fn viterbi(trellis: &Trellis, costs: &[f64]) -> Result<(Vec<usize>, f64), TrellisError> {
    if costs.len() != trellis.num_edges() {
        return Err(TrellisError::LengthMismatch {
            expected: trellis.num_edges(),
            found: costs.len(),
        });
    }
    let k = trellis.k();
    let s = trellis.num_states();
    // cost-to-go from every state at every level
    let mut togo = vec![vec![f64::INFINITY; s]; k + 1];
    togo[k][0] = 0.0;
    for t in (0..k).rev() {
        for (i, e) in trellis.segment(t).iter().enumerate() {
            let c = costs[trellis.edge_id(t, i)] + togo[t + 1][e.to];
            if c < togo[t][e.from] {
                togo[t][e.from] = c;
            }
        }
    }
    let total = togo[0][0];
    let mut path = Vec::with_capacity(k);
    let mut state = 0;
    for t in 0..k {
        let target = togo[t][state];
        let tol = 1e-12 * (1.0 + target.abs());
        let (i, e) = trellis
            .segment(t)
            .iter()
            .enumerate()
            .find(|(i, e)| e.from == state && costs[trellis.edge_id(t, *i)] + togo[t + 1][e.to] <= target + tol)
            .expect("an optimal continuation exists");
        path.push(trellis.edge_id(t, i));
        state = e.to;
    }
    Ok((path, total))
}

/// Unit-flow LP of one trellis: one variable per edge, a unit of flow out of
/// the start state, conservation at every intermediate state and a unit
/// into the end state.
pub fn trellis_flow_lp(trellis: &Trellis, costs: &[f64]) -> Result<LpProblem, TrellisError> {
    if costs.len() != trellis.num_edges() {
        return Err(TrellisError::LengthMismatch {
            expected: trellis.num_edges(),
            found: costs.len(),
        });
    }
    let mut lp = LpProblem::new(trellis.num_edges());
    lp.objective = costs.to_vec();
    add_flow_rows(&mut lp, trellis, 0);
    Ok(lp)
}

/// Appends the flow rows of `trellis` with edge `e` living in column
/// `first_col + e`.
pub(crate) fn add_flow_rows(lp: &mut LpProblem, trellis: &Trellis, first_col: usize) {
    let k = trellis.k();
    let out_of = |t: usize, st: usize| -> Vec<(usize, f64)> {
        trellis
            .segment(t)
            .iter()
            .enumerate()
            .filter(|(_, e)| e.from == st)
            .map(|(i, _)| (first_col + trellis.edge_id(t, i), 1.0))
            .collect()
    };
    let into = |t: usize, st: usize| -> Vec<(usize, f64)> {
        trellis
            .segment(t)
            .iter()
            .enumerate()
            .filter(|(_, e)| e.to == st)
            .map(|(i, _)| (first_col + trellis.edge_id(t, i), 1.0))
            .collect()
    };
    lp.add_row(Row::eq(out_of(0, 0), 1.0));
    lp.add_row(Row::eq(into(k - 1, 0), 1.0));
    for level in 1..k {
        for st in 0..trellis.num_states() {
            let inflow = into(level - 1, st);
            if inflow.is_empty() {
                continue;
            }
            let mut coeffs = out_of(level, st);
            coeffs.extend(inflow.into_iter().map(|(c, _)| (c, -1.0)));
            lp.add_row(Row::eq(coeffs, 0.0));
        }
    }
}
