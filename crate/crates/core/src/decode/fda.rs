use crate::gf2::LinearCode;
use crate::lp::{LpStatus, Sense, Simplex, FEAS_TOL};
use crate::relax::FormulationKind;

use super::DecodeError;

/// Minimum `Σ x_j` over the nonzero vertices of a relaxation.
///
/// Every nonzero vertex lies on a face that misses the lifted all-zero
/// point, so the minimum over those faces of `Σ x_j` is the fractional
/// distance. With `Clpd` only the rows `x_a + x_b + x_c ≤ 2` are used as
/// faces. Returns `+∞` when the relaxation has no vertex besides zero.
pub fn fda(code: &LinearCode, kind: FormulationKind) -> Result<f64, DecodeError> {
    let mut form = kind.build(code)?;
    form.set_llr(&vec![1.0; code.n()])?;
    let zero = form.lift_codeword(&vec![0; code.n()]);
    let lp = &form.lp;
    let mut root = Simplex::new(lp)?;
    root.solve()?;

    let clpd_face = |i: usize| {
        let row = &lp.rows[i];
        row.sense == Sense::Le
            && (row.rhs - 2.0).abs() < 1e-12
            && row.coeffs.len() == 3
            && row.coeffs.iter().all(|&(_, a)| a == 1.0)
    };
    let mut best = f64::INFINITY;
    let mut consider = |node: &mut Simplex| -> Result<(), DecodeError> {
        let s = node.solve()?;
        if s.status == LpStatus::Optimal {
            best = best.min(s.value);
        }
        Ok(())
    };
    for i in 0..lp.num_rows() {
        let row = &lp.rows[i];
        if row.sense == Sense::Eq || row.is_tight(&zero) || (kind == FormulationKind::Clpd && !clpd_face(i)) {
            continue;
        }
        let mut node = root.clone();
        node.set_row_bounds(i, row.rhs, row.rhs)?;
        consider(&mut node)?;
    }
    if kind != FormulationKind::Clpd {
        for j in 0..lp.num_vars() {
            for bound in [lp.lower[j], lp.upper[j]] {
                if (zero[j] - bound).abs() > FEAS_TOL && lp.lower[j] < lp.upper[j] {
                    let mut node = root.clone();
                    node.set_var_bounds(j, bound, bound)?;
                    consider(&mut node)?;
                }
            }
        }
    }
    Ok(best)
}

/// Fractional distance of the `blpd2` relaxation.
pub fn fractional_distance(code: &LinearCode) -> Result<f64, DecodeError> {
    fda(code, FormulationKind::Blpd2)
}
