use std::time::Instant;

use crate::gf2::LinearCode;
use crate::lp::{LpError, LpProblem, Simplex, FEAS_TOL};
use crate::relax::{most_violated_fs_cut, FormulationKind, FsInequality};

use super::{check_llr, DecodeError, DecodeResult, DecodeStats};

/// LP decoding over one of the formulations.
pub fn blpd(code: &LinearCode, llr: &[f64], kind: FormulationKind) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    let form = kind.build(code)?.with_llr(llr)?;
    let mut stats = DecodeStats {
        lp_solves: 1,
        max_rows: form.lp.num_rows(),
        ..DecodeStats::default()
    };
    let sol = match Simplex::new(&form.lp).and_then(|mut s| s.solve()) {
        Ok(sol) => sol,
        Err(e) => return Ok(DecodeResult::solver_error(e, stats).timed(start)),
    };
    stats.simplex_pivots = sol.iterations;
    stats.objective_trace.push(sol.value);
    let x = form.project(&sol.x);
    Ok(DecodeResult::from_point(code, x, sol.value, true, stats).timed(start))
}

fn box_simplex(llr: &[f64]) -> Result<Simplex, LpError> {
    let mut lp = LpProblem::new(llr.len());
    lp.objective = llr.to_vec();
    Simplex::new(&lp)
}

fn round_cap(n: usize) -> usize {
    4 * n + 100
}

/// Adaptive LP decoding: starts from the unit box and, each round, adds the
/// most violated forbidden-set inequality of every check until none is
/// violated. The optimum equals that of `blpd2`.
pub fn alpd(code: &LinearCode, llr: &[f64]) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    let n = code.n();
    let identity: Vec<usize> = (0..n).collect();
    let mut stats = DecodeStats::default();
    let run = |stats: &mut DecodeStats| -> Result<(Vec<f64>, f64), LpError> {
        let mut simplex = box_simplex(llr)?;
        let mut sol = simplex.solve()?;
        loop {
            stats.lp_solves += 1;
            stats.simplex_pivots += sol.iterations;
            stats.objective_trace.push(sol.value);
            let cuts: Vec<FsInequality> = code
                .checks()
                .iter()
                .filter_map(|c| most_violated_fs_cut(c, &sol.x))
                .collect();
            if cuts.is_empty() {
                return Ok((sol.x, sol.value));
            }
            if stats.iterations == round_cap(n) {
                return Err(LpError::IterationLimit(stats.iterations));
            }
            stats.iterations += 1;
            stats.cuts_added += cuts.len();
            let rows: Vec<_> = cuts.iter().map(|c| c.to_row(&identity)).collect();
            sol = simplex.add_rows_resolve(&rows)?;
            stats.fs_rows = simplex.num_rows();
            stats.max_rows = stats.max_rows.max(simplex.num_rows());
        }
    };
    Ok(match run(&mut stats) {
        Ok((x, value)) => DecodeResult::from_point(code, x, value, true, stats),
        Err(e) => DecodeResult::solver_error(e, stats),
    }
    .timed(start))
}

/// Adaptive LP decoding that skips checks already holding an active
/// forbidden-set row and drops rows that have gone slack.
pub fn malpd(code: &LinearCode, llr: &[f64]) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    let n = code.n();
    let identity: Vec<usize> = (0..n).collect();
    let mut stats = DecodeStats::default();
    let run = |stats: &mut DecodeStats| -> Result<(Vec<f64>, f64), LpError> {
        let mut simplex = box_simplex(llr)?;
        // check index of every LP row, in row order
        let mut owners: Vec<(usize, FsInequality)> = Vec::new();
        let mut sol = simplex.solve()?;
        loop {
            stats.lp_solves += 1;
            stats.simplex_pivots += sol.iterations;
            stats.objective_trace.push(sol.value);
            let x = &sol.x;
            let slack = |ineq: &FsInequality| ineq.rhs() - ineq.lhs(x);
            let mut has_active = vec![false; code.checks().len()];
            for (check, ineq) in &owners {
                if slack(ineq) <= FEAS_TOL {
                    has_active[*check] = true;
                }
            }
            let cuts: Vec<(usize, FsInequality)> = code
                .checks()
                .iter()
                .enumerate()
                .filter(|(i, _)| !has_active[*i])
                .filter_map(|(i, c)| most_violated_fs_cut(c, x).map(|cut| (i, cut)))
                .collect();
            if cuts.is_empty() {
                return Ok((sol.x, sol.value));
            }
            if stats.iterations == round_cap(n) {
                return Err(LpError::IterationLimit(stats.iterations));
            }
            stats.iterations += 1;
            let slack_rows: Vec<usize> = (0..owners.len())
                .filter(|&r| slack(&owners[r].1) > FEAS_TOL && simplex.row_is_basic(r))
                .collect();
            simplex.remove_rows(&slack_rows)?;
            let mut r = 0;
            owners.retain(|_| {
                let keep = slack_rows.binary_search(&r).is_err();
                r += 1;
                keep
            });
            stats.cuts_added += cuts.len();
            let rows: Vec<_> = cuts.iter().map(|(_, c)| c.to_row(&identity)).collect();
            owners.extend(cuts);
            sol = simplex.add_rows_resolve(&rows)?;
            stats.fs_rows = simplex.num_rows();
            stats.max_rows = stats.max_rows.max(simplex.num_rows());
        }
    };
    Ok(match run(&mut stats) {
        Ok((x, value)) => DecodeResult::from_point(code, x, value, true, stats),
        Err(e) => DecodeResult::solver_error(e, stats),
    }
    .timed(start))
}
