use std::time::Instant;

use crate::decode::{DecodeResult, DecodeStats, DecodeStatus};
use crate::lp::{is_integral, round_bits, solve, LpProblem, Row};

use super::graph::add_flow_rows;
use super::{viterbi, Fsm, Trellis, TrellisError};

/// Two copies of one state machine, the second fed through an interleaver.
///
/// Encoder `a` reads `u` in order and encoder `b` reads `u_{π(0)}, …,
/// u_{π(k−1)}`. Codewords are laid out as `(x^s, x^a, x^b)` with `x^s = u`
/// and both parity streams, `k + 2·k·w` bits for parity width `w`. An input
/// is valid only if both encoders end in state 0.
#[derive(Debug, Clone, PartialEq)]
pub struct TurboCode {
    fsm: Fsm,
    interleaver: Vec<usize>,
    trellis: Trellis,
}

impl TurboCode {
    pub fn new(fsm: Fsm, interleaver: Vec<usize>) -> Result<Self, TrellisError> {
        let k = interleaver.len();
        let mut seen = vec![false; k];
        for &p in &interleaver {
            if p >= k || std::mem::replace(&mut seen[p], true) {
                return Err(TrellisError::InvalidInterleaver(k));
            }
        }
        let trellis = Trellis::new(&fsm, k)?;
        Ok(Self { fsm, interleaver, trellis })
    }

    pub fn k(&self) -> usize {
        self.interleaver.len()
    }

    /// Codeword length `k + 2·k·w`.
    pub fn n(&self) -> usize {
        self.k() * (1 + 2 * self.fsm.parity_width())
    }

    pub fn fsm(&self) -> &Fsm {
        &self.fsm
    }

    pub fn interleaver(&self) -> &[usize] {
        &self.interleaver
    }

    /// The constituent trellis shared by both encoders.
    pub fn trellis(&self) -> &Trellis {
        &self.trellis
    }

    fn interleave(&self, u: &[u8]) -> Vec<u8> {
        self.interleaver.iter().map(|&p| u[p]).collect()
    }

    /// Codeword of `u`, or `None` if an encoder does not end in state 0.
    pub fn encode(&self, u: &[u8]) -> Result<Option<Vec<u8>>, TrellisError> {
        if u.len() != self.k() {
            return Err(TrellisError::LengthMismatch {
                expected: self.k(),
                found: u.len(),
            });
        }
        let (pa, sa) = self.fsm.encode(u);
        let (pb, sb) = self.fsm.encode(&self.interleave(u));
        if sa != 0 || sb != 0 {
            return Ok(None);
        }
        let mut word = u.to_vec();
        word.extend(pa);
        word.extend(pb);
        Ok(Some(word))
    }

    fn check_llr(&self, llr: &[f64]) -> Result<(), TrellisError> {
        if llr.len() != self.n() {
            return Err(TrellisError::LengthMismatch {
                expected: self.n(),
                found: llr.len(),
            });
        }
        Ok(())
    }

    /// Splits a codeword-ordered vector into `(s, a, b)` parts.
    pub fn split<'a, T>(&self, v: &'a [T]) -> (&'a [T], &'a [T], &'a [T]) {
        let k = self.k();
        let kw = k * self.fsm.parity_width();
        (&v[..k], &v[k..k + kw], &v[k + kw..])
    }

    /// Exhaustive ML over all `2^k` inputs. Ties go to the smallest input
    /// read as a binary number with `u_0` least significant.
    pub fn ml_bruteforce(&self, llr: &[f64]) -> Result<Option<(Vec<u8>, f64)>, TrellisError> {
        self.check_llr(llr)?;
        let k = self.k();
        if k > 24 {
            return Err(TrellisError::InvalidParameter(format!("exhaustive search over 2^{k} inputs")));
        }
        let mut best: Option<(Vec<u8>, f64)> = None;
        for v in 0u32..1 << k {
            let u: Vec<u8> = (0..k).map(|j| ((v >> j) & 1) as u8).collect();
            if let Some(w) = self.encode(&u)? {
                let cost: f64 = w.iter().zip(llr).map(|(&b, l)| f64::from(b) * l).sum();
                if best.as_ref().is_none_or(|(_, c)| cost < *c) {
                    best = Some((w, cost));
                }
            }
        }
        Ok(best)
    }
}

/// The flow LP over both trellises with the interleaver coupling.
///
/// Columns: flows of encoder `a`, flows of encoder `b`, then `x^s`, `x^a`,
/// `x^b` in codeword order. Only the `x` columns carry cost.
#[derive(Debug, Clone, PartialEq)]
pub struct TclpdFormulation {
    pub lp: LpProblem,
    num_edges: usize,
}

impl TclpdFormulation {
    pub fn build(code: &TurboCode, llr: &[f64]) -> Result<Self, TrellisError> {
        code.check_llr(llr)?;
        let t = code.trellis();
        let e = t.num_edges();
        let k = code.k();
        let w = t.parity_width();
        let (fa, fb, xs, xa, xb) = (0, e, 2 * e, 2 * e + k, 2 * e + k + k * w);
        let mut lp = LpProblem::new(2 * e + code.n());
        lp.objective[xs..].copy_from_slice(llr);
        add_flow_rows(&mut lp, t, fa);
        add_flow_rows(&mut lp, t, fb);
        for seg in 0..k {
            let edges = t.segment(seg);
            let ones = |first: usize, pick: &dyn Fn(&super::TrellisEdge) -> bool| -> Vec<(usize, f64)> {
                edges
                    .iter()
                    .enumerate()
                    .filter(|(_, ed)| pick(ed))
                    .map(|(i, _)| (first + t.edge_id(seg, i), 1.0))
                    .collect()
            };
            for bit in 0..w {
                for (flows, xcol) in [(fa, xa), (fb, xb)] {
                    let mut row = ones(flows, &|ed| ed.output[bit] == 1);
                    row.push((xcol + seg * w + bit, -1.0));
                    lp.add_row(Row::eq(row, 0.0));
                }
            }
            let mut row = ones(fa, &|ed| ed.input == 1);
            row.push((xs + seg, -1.0));
            lp.add_row(Row::eq(row, 0.0));
            let mut row = ones(fb, &|ed| ed.input == 1);
            row.push((xs + code.interleaver()[seg], -1.0));
            lp.add_row(Row::eq(row, 0.0));
        }
        Ok(Self { lp, num_edges: e })
    }

    /// Flow values of both encoders.
    pub fn flows<'a>(&self, x: &'a [f64]) -> (&'a [f64], &'a [f64]) {
        (&x[..self.num_edges], &x[self.num_edges..2 * self.num_edges])
    }

    /// The codeword-ordered `x` part of an LP point.
    pub fn project<'a>(&self, x: &'a [f64]) -> &'a [f64] {
        &x[2 * self.num_edges..]
    }

    /// LP point of a codeword given by its input: indicator flows of both
    /// encoder paths.
    pub fn lift(&self, code: &TurboCode, u: &[u8]) -> Result<Option<Vec<f64>>, TrellisError> {
        let Some(word) = code.encode(u)? else {
            return Ok(None);
        };
        let t = code.trellis();
        let mut x = vec![0.0; self.lp.num_vars()];
        for (offset, input) in [(0, u.to_vec()), (self.num_edges, code.interleave(u))] {
            let mut state = 0;
            for (seg, &b) in input.iter().enumerate() {
                let i = t
                    .segment(seg)
                    .iter()
                    .position(|e| e.from == state && e.input == b)
                    .expect("valid input stays in the trellis");
                x[offset + t.edge_id(seg, i)] = 1.0;
                state = t.segment(seg)[i].to;
            }
        }
        for (slot, b) in x[2 * self.num_edges..].iter_mut().zip(&word) {
            *slot = f64::from(*b);
        }
        Ok(Some(x))
    }
}

/// Solves the coupled flow LP. An integral flow is the ML codeword.
pub fn tclpd_decode(code: &TurboCode, llr: &[f64]) -> Result<DecodeResult, TrellisError> {
    let start = Instant::now();
    let form = TclpdFormulation::build(code, llr)?;
    let mut stats = DecodeStats {
        lp_solves: 1,
        max_rows: form.lp.num_rows(),
        ..DecodeStats::default()
    };
    let sol = match solve(&form.lp) {
        Ok(s) if s.is_optimal() => s,
        Ok(_) => {
            let err = crate::lp::LpError::InvalidProblem("flow LP infeasible".into());
            return Ok(DecodeResult::solver_error(err, stats).timed(start));
        }
        Err(e) => return Ok(DecodeResult::solver_error(e, stats).timed(start)),
    };
    stats.simplex_pivots = sol.iterations;
    stats.objective_trace.push(sol.value);
    let (fa, fb) = form.flows(&sol.x);
    let x = form.project(&sol.x);
    let integral = is_integral(fa) && is_integral(fb);
    let (status, point) = if integral {
        (DecodeStatus::MLCertified, round_bits(x).into_iter().map(f64::from).collect())
    } else {
        (DecodeStatus::FractionalFailure, x.to_vec())
    };
    Ok(DecodeResult {
        status,
        point,
        value: sol.value,
        stats,
        error: None,
    }
    .timed(start))
}

#[derive(Debug, Clone, PartialEq)]
pub struct LagrangianResult {
    /// Best dual value seen.
    pub lower_bound: f64,
    /// Dual value of every iterate.
    pub bound_trace: Vec<f64>,
    /// Cheapest codeword found at an iterate where both paths agreed.
    pub codeword: Option<Vec<u8>>,
    pub codeword_cost: f64,
    pub iterations: usize,
}

/// Subgradient ascent on the multipliers of the interleaver coupling
/// `u^a_{π(j)} = u^b_j`. Each iterate is two Viterbi runs; the step at
/// iteration `t` is `a / (1 + t)` with `a = max |λ|` (1 if `λ = 0`).
/// Stops early once both paths agree.
pub fn lagrangian_turbo_decode(code: &TurboCode, llr: &[f64], max_iter: usize) -> Result<LagrangianResult, TrellisError> {
    code.check_llr(llr)?;
    if max_iter == 0 {
        return Err(TrellisError::InvalidParameter("max_iter must be at least 1".into()));
    }
    let k = code.k();
    let t = code.trellis();
    let (ls, la, lb) = code.split(llr);
    let base_a = t.edge_costs(ls, la)?;
    let base_b = t.edge_costs(&vec![0.0; k], lb)?;
    let mut inverse = vec![0; k];
    for (j, &p) in code.interleaver().iter().enumerate() {
        inverse[p] = j;
    }
    let scale = llr.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let mut mu = vec![0.0; k];
    let mut out = LagrangianResult {
        lower_bound: f64::NEG_INFINITY,
        bound_trace: Vec::new(),
        codeword: None,
        codeword_cost: f64::INFINITY,
        iterations: 0,
    };
    for it in 0..max_iter {
        let mut ca = base_a.clone();
        let mut cb = base_b.clone();
        for id in 0..t.num_edges() {
            let (seg, e) = t.edge(id);
            if e.input == 1 {
                ca[id] += mu[inverse[seg]];
                cb[id] -= mu[seg];
            }
        }
        let (pa, va) = viterbi(t, &ca)?;
        let (pb, vb) = viterbi(t, &cb)?;
        let dual = va + vb;
        out.iterations = it + 1;
        out.bound_trace.push(dual);
        out.lower_bound = out.lower_bound.max(dual);
        let (ua, _) = t.path_bits(&pa);
        let (ub, _) = t.path_bits(&pb);
        let g: Vec<f64> = (0..k)
            .map(|j| f64::from(ua[code.interleaver()[j]]) - f64::from(ub[j]))
            .collect();
        if g.iter().all(|&v| v == 0.0) {
            let word = code.encode(&ua)?.expect("both paths terminate");
            let cost: f64 = word.iter().zip(llr).map(|(&b, l)| f64::from(b) * l).sum();
            if cost < out.codeword_cost {
                out.codeword_cost = cost;
                out.codeword = Some(word);
            }
            break;
        }
        let step = scale / (1.0 + it as f64);
        for (m, gj) in mu.iter_mut().zip(&g) {
            *m += step * gj;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> TurboCode {
        TurboCode::new(Fsm::accumulator(), vec![2, 0, 3, 1]).unwrap()
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(TurboCode::new(Fsm::accumulator(), vec![0, 0]).is_err());
        assert!(TurboCode::new(Fsm::accumulator(), vec![0, 2]).is_err());
    }

    #[test]
    fn codewords_lift_to_feasible_points() {
        let code = small();
        let form = TclpdFormulation::build(&code, &vec![0.0; code.n()]).unwrap();
        let mut valid = 0;
        for v in 0u8..16 {
            let u: Vec<u8> = (0..4).map(|j| (v >> j) & 1).collect();
            if let Some(x) = form.lift(&code, &u).unwrap() {
                valid += 1;
                assert!(form.lp.is_feasible(&x, 1e-9));
            }
        }
        // accumulator ends in 0 iff the input has even weight
        assert_eq!(valid, 8);
    }

    #[test]
    fn noiseless_decodes_to_the_sent_word() {
        let code = small();
        let word = code.encode(&[1, 1, 0, 0]).unwrap().unwrap();
        let llr: Vec<f64> = word.iter().map(|&b| if b == 1 { -1.0 } else { 1.0 }).collect();
        let r = tclpd_decode(&code, &llr).unwrap();
        assert_eq!(r.status, DecodeStatus::MLCertified);
        assert_eq!(r.codeword().unwrap(), word);
        let l = lagrangian_turbo_decode(&code, &llr, 10).unwrap();
        assert_eq!(l.codeword, Some(word));
        assert_eq!(l.iterations, 1);
        assert!((l.lower_bound - r.value).abs() < 1e-9);
    }
}
