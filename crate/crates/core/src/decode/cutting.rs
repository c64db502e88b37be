use std::time::Instant;

use crate::gf2::LinearCode;
use crate::lp::{is_integral, round_bits, LpError, LpSolution, Simplex};
use crate::relax::{
    matrix_adaptation_cut_search, row_fs_cuts, rpc_cycle_cut_search, FormulationKind, Formulation, FsInequality,
};

use super::{check_llr, DecodeError, DecodeResult, DecodeStats, DEFAULT_MAX_ROUNDS};

/// A cut separation routine used by the cutting-plane decoders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutSearcher {
    /// Most violated forbidden-set inequality of every row of `H`.
    RowFs,
    /// Redundant parity checks from cycles among fractional bits.
    CycleRpc { max_tries: Option<usize> },
    /// Rows of `H` reduced to unit columns at the fractional bits.
    MatrixAdaptation,
}

impl CutSearcher {
    pub fn search(self, code: &LinearCode, x: &[f64], seed: u64) -> Vec<FsInequality> {
        let h = code.parity_check();
        match self {
            CutSearcher::RowFs => row_fs_cuts(h, x),
            CutSearcher::CycleRpc { max_tries } => rpc_cycle_cut_search(h, x, seed, max_tries),
            CutSearcher::MatrixAdaptation => matrix_adaptation_cut_search(h, x),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CuttingPlaneConfig {
    /// `Blpd2` or the integer-programming relaxation `Ipd`.
    pub base: FormulationKind,
    /// Tried in order each round; the first one that finds cuts wins.
    pub searchers: Vec<CutSearcher>,
    pub max_rounds: usize,
}

impl Default for CuttingPlaneConfig {
    fn default() -> Self {
        Self {
            base: FormulationKind::Blpd2,
            searchers: vec![CutSearcher::MatrixAdaptation, CutSearcher::CycleRpc { max_tries: None }],
            max_rounds: DEFAULT_MAX_ROUNDS,
        }
    }
}

impl CuttingPlaneConfig {
    /// Matrix adaptation over the integer-programming relaxation.
    pub fn sad() -> Self {
        Self {
            base: FormulationKind::Ipd,
            searchers: vec![CutSearcher::MatrixAdaptation],
            max_rounds: DEFAULT_MAX_ROUNDS,
        }
    }

    pub(crate) fn validate(&self) -> Result<(), DecodeError> {
        if !matches!(self.base, FormulationKind::Blpd2 | FormulationKind::Ipd) {
            return Err(DecodeError::InvalidParameter(format!(
                "cutting planes run over blpd2 or ipd, not {}",
                self.base
            )));
        }
        Ok(())
    }
}

/// Adds cut rounds to a solved LP until its bit projection is a codeword,
/// no searcher finds a cut, or the round cap is hit. Returns the last
/// solution.
#[allow(clippy::too_many_arguments)]
pub(crate) fn cut_loop(
    code: &LinearCode,
    form: &Formulation,
    simplex: &mut Simplex,
    mut sol: LpSolution,
    searchers: &[CutSearcher],
    max_rounds: usize,
    seed: u64,
    stats: &mut DecodeStats,
) -> Result<LpSolution, LpError> {
    let mut rounds = 0;
    loop {
        let x = form.project(&sol.x);
        if is_integral(&x) && code.is_codeword(&round_bits(&x)) || rounds == max_rounds {
            return Ok(sol);
        }
        let round_seed = seed.wrapping_add(rounds as u64);
        let Some(cuts) = searchers
            .iter()
            .map(|s| s.search(code, &x, round_seed))
            .find(|c| !c.is_empty())
        else {
            return Ok(sol);
        };
        rounds += 1;
        stats.iterations += 1;
        stats.cuts_added += cuts.len();
        let rows: Vec<_> = cuts.iter().map(|c| c.to_row(form.x_cols())).collect();
        sol = simplex.add_rows_resolve(&rows)?;
        stats.lp_solves += 1;
        stats.simplex_pivots += sol.iterations;
        stats.objective_trace.push(sol.value);
        stats.max_rows = stats.max_rows.max(simplex.num_rows());
    }
}

/// Cutting-plane decoding: LP decoding over `cfg.base`, tightened round by
/// round with the configured cut searchers. The objective trace is
/// non-decreasing and an integral codeword is certified ML.
pub fn cutting_plane_decode(
    code: &LinearCode,
    llr: &[f64],
    cfg: &CuttingPlaneConfig,
    seed: u64,
) -> Result<DecodeResult, DecodeError> {
    let start = Instant::now();
    check_llr(code, llr)?;
    cfg.validate()?;
    let form = cfg.base.build(code)?.with_llr(llr)?;
    let mut stats = DecodeStats {
        max_rows: form.lp.num_rows(),
        ..DecodeStats::default()
    };
    let run = |stats: &mut DecodeStats| -> Result<LpSolution, LpError> {
        let mut simplex = Simplex::new(&form.lp)?;
        let sol = simplex.solve()?;
        stats.lp_solves += 1;
        stats.simplex_pivots += sol.iterations;
        stats.objective_trace.push(sol.value);
        cut_loop(code, &form, &mut simplex, sol, &cfg.searchers, cfg.max_rounds, seed, stats)
    };
    Ok(match run(&mut stats) {
        Ok(sol) => {
            let x = form.project(&sol.x);
            DecodeResult::from_point(code, x, sol.value, true, stats)
        }
        Err(e) => DecodeResult::solver_error(e, stats),
    }
    .timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decode::DecodeStatus;
    use crate::gf2::hamming_code;

    #[test]
    fn sad_reaches_ml_on_hamming() {
        let code = hamming_code(3).unwrap();
        let llr = [-0.9, 0.4, 0.3, 0.8, -0.2, 1.1, 0.5];
        let (_, value) = code.ml_bruteforce(&llr).unwrap();
        let r = cutting_plane_decode(&code, &llr, &CuttingPlaneConfig::sad(), 0).unwrap();
        assert_eq!(r.status, DecodeStatus::MLCertified);
        assert!(code.is_codeword(&r.codeword().unwrap()));
        assert!((r.value - value).abs() < 1e-6);
        assert!(r.stats.objective_trace.windows(2).all(|w| w[1] >= w[0] - 1e-9));
    }

    #[test]
    fn rejects_other_bases() {
        let code = hamming_code(3).unwrap();
        let cfg = CuttingPlaneConfig {
            base: FormulationKind::Clpd,
            ..CuttingPlaneConfig::default()
        };
        assert!(cutting_plane_decode(&code, &[1.0; 7], &cfg, 0).is_err());
    }
}
