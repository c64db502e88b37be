use std::collections::VecDeque;
use std::time::Instant;

use crate::gf2::LinearCode;
use crate::lp::{is_integral, round_bits, LpError, LpSolution, LpStatus, Simplex, INTEGRALITY_TOL};
use crate::relax::{FormulationKind, Formulation, VarRole};

use super::cutting::{cut_loop, CutSearcher, CuttingPlaneConfig};
use super::{check_llr, DecodeError, DecodeResult, DecodeStats, DEFAULT_MAX_ROUNDS, DEFAULT_NODE_CAP};

const PRUNE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct BranchAndBoundConfig {
    /// `Blpd2` or `Ipd`.
    pub base: FormulationKind,
    /// Cut rounds at the root before branching; empty for plain branching.
    pub root_searchers: Vec<CutSearcher>,
    pub max_rounds: usize,
    /// LP nodes solved before giving up the ML certificate.
    pub node_cap: usize,
}

impl Default for BranchAndBoundConfig {
    /// Root cuts identical to the default cutting-plane decoder, so every
    /// frame that decoder gets right is also decoded correctly here.
    fn default() -> Self {
        let cp = CuttingPlaneConfig::default();
        Self {
            base: cp.base,
            root_searchers: cp.searchers,
            max_rounds: cp.max_rounds,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

impl BranchAndBoundConfig {
    pub fn plain() -> Self {
        Self {
            root_searchers: Vec::new(),
            ..Self::default()
        }
    }

    /// Branching over the integer-programming relaxation after matrix
    /// adaptation cuts at the root.
    pub fn over_ipd() -> Self {
        let sad = CuttingPlaneConfig::sad();
        Self {
            base: sad.base,
            root_searchers: sad.searchers,
            max_rounds: DEFAULT_MAX_ROUNDS,
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

fn least_certain(values: impl Iterator<Item = (usize, f64)>) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (j, v) in values {
        let frac = v - v.floor();
        if frac <= INTEGRALITY_TOL || frac >= 1.0 - INTEGRALITY_TOL {
            continue;
        }
        let d = (frac - 0.5).abs();
        if best.is_none_or(|(_, bd)| d < bd) {
            best = Some((j, d));
        }
    }
    best.map(|(j, _)| j)
}

/// Column to branch on: the least certain fractional bit (lowest index on
/// ties), or for the `Ipd` base a fractional check weight once the bits are
/// integral.
fn branch_column(form: &Formulation, x: &[f64]) -> Option<usize> {
    if let Some(bit) = least_certain(form.x_cols().iter().map(|&c| x[c]).enumerate()) {
        return Some(form.x_cols()[bit]);
    }
    let weights = form
        .roles()
        .iter()
        .enumerate()
        .filter(|(_, r)| matches!(r, VarRole::HalfWeight { .. }))
        .map(|(col, _)| (col, x[col]));
    least_certain(weights)
}

pub(super) fn codeword_of(code: &LinearCode, form: &Formulation, sol: &LpSolution) -> Option<Vec<u8>> {
    let x = form.project(&sol.x);
    let bits = round_bits(&x);
    (is_integral(&x) && code.is_codeword(&bits)).then_some(bits)
}

pub(super) fn record_solve(stats: &mut DecodeStats, sol: &LpSolution) {
    stats.lp_solves += 1;
    stats.simplex_pivots += sol.iterations;
}

pub(super) fn codeword_result(bits: Vec<u8>, value: f64, certified: bool, stats: DecodeStats) -> DecodeResult {
    DecodeResult {
        status: if certified {
            super::DecodeStatus::MLCertified
        } else {
            super::DecodeStatus::CodewordFound
        },
        point: bits.into_iter().map(f64::from).collect(),
        value,
        stats,
        error: None,
    }
}

/// Exact ML decoding by depth-first branch and bound on LP relaxations.
///
/// The 0-child is explored first and nodes whose LP value is not below the
/// incumbent are pruned. Hitting `node_cap` returns the incumbent without a
/// certificate.
pub fn branch_and_bound_ml(
    code: &LinearCode,
    llr: &[f64],
    cfg: &BranchAndBoundConfig,
    seed: u64,
) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    CuttingPlaneConfig {
        base: cfg.base,
        searchers: Vec::new(),
        max_rounds: 0,
    }
    .validate()?;
    let form = cfg.base.build(code)?.with_llr(llr)?;
    let mut stats = DecodeStats::default();
    let run = |stats: &mut DecodeStats| -> Result<DecodeResult, LpError> {
        let mut root = Simplex::new(&form.lp)?;
        let sol = root.solve()?;
        record_solve(stats, &sol);
        stats.branch_nodes = 1;
        let sol = cut_loop(code, &form, &mut root, sol, &cfg.root_searchers, cfg.max_rounds, seed, stats)?;
        if let Some(bits) = codeword_of(code, &form, &sol) {
            return Ok(codeword_result(bits, sol.value, true, std::mem::take(stats)));
        }
        let root_x = form.project(&sol.x);
        let root_value = sol.value;
        let mut incumbent: Option<(Vec<u8>, f64)> = None;
        let mut stack: Vec<(Simplex, Option<LpSolution>)> = vec![(root, Some(sol))];
        while let Some((mut node, solved)) = stack.pop() {
            let sol = match solved {
                Some(s) => s,
                None => {
                    if stats.branch_nodes >= cfg.node_cap {
                        stats.node_cap_hit = true;
                        break;
                    }
                    let s = node.solve()?;
                    record_solve(stats, &s);
                    stats.branch_nodes += 1;
                    s
                }
            };
            if sol.status == LpStatus::Infeasible {
                continue;
            }
            if incumbent.as_ref().is_some_and(|(_, v)| sol.value >= v - PRUNE_TOL) {
                continue;
            }
            if let Some(bits) = codeword_of(code, &form, &sol) {
                incumbent = Some((bits, sol.value));
                continue;
            }
            let Some(col) = branch_column(&form, &sol.x) else {
                continue;
            };
            let (lo, hi) = node.var_bounds(col);
            let v = sol.x[col];
            let mut up = node.clone();
            up.set_var_bounds(col, v.ceil(), hi)?;
            node.set_var_bounds(col, lo, v.floor())?;
            stack.push((up, None));
            stack.push((node, None));
        }
        Ok(match incumbent {
            Some((bits, value)) => {
                let certified = !stats.node_cap_hit;
                codeword_result(bits, value, certified, std::mem::take(stats))
            }
            None => DecodeResult::from_point(code, root_x, root_value, false, std::mem::take(stats)),
        })
    };
    Ok(match run(&mut stats) {
        Ok(r) => r,
        Err(e) => DecodeResult::solver_error(e, stats),
    }
    .timed(start))
}

/// The `g` least certain fractional bits of `x`, most uncertain first.
fn branch_set(x: &[f64], g: usize) -> Vec<usize> {
    let mut frac: Vec<usize> = (0..x.len())
        .filter(|&j| x[j] > INTEGRALITY_TOL && x[j] < 1.0 - INTEGRALITY_TOL)
        .collect();
    frac.sort_by(|&a, &b| (x[a] - 0.5).abs().total_cmp(&(x[b] - 0.5).abs()).then(a.cmp(&b)));
    frac.truncate(g);
    frac
}

/// Ordered variable depth decoding: breadth-first branching on the `g`
/// least certain fractional bits of the `blpd2` optimum, at most
/// `2^(g+1) − 1` LPs in total.
///
/// The best codeword is certified when no fractional node below its value
/// was left unexplored at depth `g`.
pub fn ovdd(code: &LinearCode, llr: &[f64], g: usize) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    if g == 0 || g > 30 {
        return Err(DecodeError::InvalidParameter(format!("depth {g} outside 1..=30")));
    }
    let form = FormulationKind::Blpd2.build(code)?.with_llr(llr)?;
    let mut stats = DecodeStats::default();
    let run = |stats: &mut DecodeStats| -> Result<DecodeResult, LpError> {
        let mut root = Simplex::new(&form.lp)?;
        let root_sol = root.solve()?;
        record_solve(stats, &root_sol);
        stats.branch_nodes = 1;
        let root_x = form.project(&root_sol.x);
        let branch = branch_set(&root_x, g);
        if branch.is_empty() {
            return Ok(DecodeResult::from_point(code, root_x, root_sol.value, true, std::mem::take(stats)));
        }
        let mut best: Option<(Vec<u8>, f64)> = None;
        let mut open = false;
        let mut queue: VecDeque<(Simplex, usize, Option<LpSolution>)> = VecDeque::new();
        queue.push_back((root, 0, Some(root_sol.clone())));
        while let Some((mut node, depth, solved)) = queue.pop_front() {
            let sol = match solved {
                Some(s) => s,
                None => {
                    let s = node.solve()?;
                    record_solve(stats, &s);
                    stats.branch_nodes += 1;
                    s
                }
            };
            if sol.status == LpStatus::Infeasible
                || best.as_ref().is_some_and(|(_, v)| sol.value >= v - PRUNE_TOL)
            {
                continue;
            }
            if let Some(bits) = codeword_of(code, &form, &sol) {
                best = Some((bits, sol.value));
                continue;
            }
            if depth == branch.len() {
                open = true;
                continue;
            }
            let col = form.x_cols()[branch[depth]];
            let mut one = node.clone();
            one.set_var_bounds(col, 1.0, 1.0)?;
            node.set_var_bounds(col, 0.0, 0.0)?;
            queue.push_back((node, depth + 1, None));
            queue.push_back((one, depth + 1, None));
        }
        Ok(match best {
            Some((bits, value)) => codeword_result(bits, value, !open, std::mem::take(stats)),
            None => DecodeResult::from_point(code, root_x, root_sol.value, false, std::mem::take(stats)),
        })
    };
    Ok(match run(&mut stats) {
        Ok(r) => r,
        Err(e) => DecodeResult::solver_error(e, stats),
    }
    .timed(start))
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for t in i + 1..k {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Ordered constant depth decoding: for each `m`-subset of the `g` least
/// certain fractional bits (lexicographic order), solves all `2^m` fixings
/// and stops at the first subset whose lowest-value solution is integral.
/// Uses at most `C(g, m) 2^m + 1` LPs.
pub fn ocdd(code: &LinearCode, llr: &[f64], g: usize, m: usize) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    if g == 0 || m == 0 || m > g || m > 20 {
        return Err(DecodeError::InvalidParameter(format!("need 1 ≤ m ≤ g and m ≤ 20, got g={g}, m={m}")));
    }
    let form = FormulationKind::Blpd2.build(code)?.with_llr(llr)?;
    let mut stats = DecodeStats::default();
    let run = |stats: &mut DecodeStats| -> Result<DecodeResult, LpError> {
        let mut root = Simplex::new(&form.lp)?;
        let root_sol = root.solve()?;
        record_solve(stats, &root_sol);
        let root_x = form.project(&root_sol.x);
        let branch = branch_set(&root_x, g);
        if branch.is_empty() {
            return Ok(DecodeResult::from_point(code, root_x, root_sol.value, true, std::mem::take(stats)));
        }
        let m = m.min(branch.len());
        let mut subset: Vec<usize> = (0..m).collect();
        loop {
            stats.iterations += 1;
            let mut lowest: Option<LpSolution> = None;
            for pattern in 0u32..(1 << m) {
                let mut node = root.clone();
                for (t, &pos) in subset.iter().enumerate() {
                    let b = f64::from((pattern >> t) & 1);
                    node.set_var_bounds(form.x_cols()[branch[pos]], b, b)?;
                }
                let s = node.solve()?;
                record_solve(stats, &s);
                stats.branch_nodes += 1;
                if s.status == LpStatus::Optimal && lowest.as_ref().is_none_or(|l| s.value < l.value) {
                    lowest = Some(s);
                }
            }
            if let Some(bits) = lowest.as_ref().and_then(|s| codeword_of(code, &form, s)) {
                let value = lowest.map_or(f64::NAN, |s| s.value);
                return Ok(codeword_result(bits, value, false, std::mem::take(stats)));
            }
            if !next_subset(&mut subset, branch.len()) {
                break;
            }
        }
        Ok(DecodeResult::from_point(code, root_x, root_sol.value, false, std::mem::take(stats)))
    };
    Ok(match run(&mut stats) {
        Ok(r) => r,
        Err(e) => DecodeResult::solver_error(e, stats),
    }
    .timed(start))
}
