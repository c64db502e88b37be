use std::fmt;
use std::str::FromStr;

use crate::gf2::LinearCode;
use crate::lp::{LpProblem, Row};

use super::decompose::decompose_checks;
use super::fs::fs_inequalities;
use super::RelaxError;

/// Largest check degree accepted by formulations that enumerate subsets.
pub const MAX_ENUMERATED_DEGREE: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FormulationKind {
    /// Even-configuration variables per check.
    Blpd1,
    /// Forbidden-set inequalities on the bits only.
    Blpd2,
    /// Parity-polytope description of polynomial size.
    Blpd3,
    /// Checks split to degree ≤ 3, then forbidden sets.
    Clpd,
    /// Row and column copies of every bit, coupled through repetition codes.
    Plpd,
    /// Integer-program relaxation `Hx − 2z = 0`.
    Ipd,
}

impl FormulationKind {
    pub const ALL: [FormulationKind; 6] = [
        Self::Blpd1,
        Self::Blpd2,
        Self::Blpd3,
        Self::Clpd,
        Self::Plpd,
        Self::Ipd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Blpd1 => "blpd1",
            Self::Blpd2 => "blpd2",
            Self::Blpd3 => "blpd3",
            Self::Clpd => "clpd",
            Self::Plpd => "plpd",
            Self::Ipd => "ipd",
        }
    }

    pub fn build(self, code: &LinearCode) -> Result<Formulation, RelaxError> {
        match self {
            Self::Blpd1 => build_blpd1(code),
            Self::Blpd2 => build_blpd2(code),
            Self::Blpd3 => build_blpd3(code),
            Self::Clpd => build_clpd(code),
            Self::Plpd => build_plpd(code),
            Self::Ipd => build_ipd_relaxation(code),
        }
    }
}

impl fmt::Display for FormulationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulationKind {
    type Err = RelaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| RelaxError::UnknownFormulation(s.to_string()))
    }
}

/// What an LP column stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VarRole {
    /// Code bit `x_j`.
    Bit(usize),
    /// `w_{i,S}`: check `i` takes the even configuration `S`.
    Config { check: usize, set: Vec<usize> },
    /// `p_{i,k}`: exactly `k` neighbors of check `i` are one.
    CheckWeight { check: usize, weight: usize },
    /// `q_{j,i,k}`: bit `j` is among the `k` ones at check `i`.
    Member { bit: usize, check: usize, weight: usize },
    /// `v_{i,j}`: row-side copy of bit `j` at check `i`.
    CheckCopy { check: usize, bit: usize },
    /// `u_{j,i}`: column-side copy of bit `j`; `None` is the copy tied to `x_j`.
    BitCopy { bit: usize, check: Option<usize> },
    /// `α_{j,S}` of the repetition code at bit `j` (all ones or all zeros).
    Repetition { bit: usize, ones: bool },
    /// Auxiliary bit of a split check: parity of the listed original bits.
    Auxiliary { prefix: Vec<usize> },
    /// `z_i`, half the number of ones at check `i`.
    HalfWeight { check: usize },
}

/// An LP relaxation of a code together with the meaning of its columns.
#[derive(Debug, Clone)]
pub struct Formulation {
    pub kind: FormulationKind,
    pub lp: LpProblem,
    roles: Vec<VarRole>,
    x_cols: Vec<usize>,
    checks: Vec<Vec<usize>>,
}

impl Formulation {
    /// Block length of the underlying code.
    pub fn n(&self) -> usize {
        self.x_cols.len()
    }

    /// Column of every code bit.
    pub fn x_cols(&self) -> &[usize] {
        &self.x_cols
    }

    pub fn roles(&self) -> &[VarRole] {
        &self.roles
    }

    /// Places `λ` on the bit columns and zero on every auxiliary column.
    pub fn set_llr(&mut self, llr: &[f64]) -> Result<(), RelaxError> {
        if llr.len() != self.n() {
            return Err(RelaxError::LengthMismatch {
                expected: self.n(),
                found: llr.len(),
            });
        }
        self.lp.objective.iter_mut().for_each(|c| *c = 0.0);
        for (&col, &l) in self.x_cols.iter().zip(llr) {
            self.lp.objective[col] = l;
        }
        Ok(())
    }

    pub fn with_llr(mut self, llr: &[f64]) -> Result<Self, RelaxError> {
        self.set_llr(llr)?;
        Ok(self)
    }

    /// Bit coordinates of an LP point.
    pub fn project(&self, point: &[f64]) -> Vec<f64> {
        self.x_cols.iter().map(|&c| point[c]).collect()
    }

    /// The LP point a codeword induces on every column.
    pub fn lift_codeword(&self, bits: &[u8]) -> Vec<f64> {
        let ones_at = |i: usize| -> Vec<usize> {
            self.checks[i].iter().copied().filter(|&j| bits[j] == 1).collect()
        };
        let indicator = |b: bool| f64::from(u8::from(b));
        self.roles
            .iter()
            .map(|role| match role {
                VarRole::Bit(j) | VarRole::CheckCopy { bit: j, .. } | VarRole::BitCopy { bit: j, .. } => {
                    f64::from(bits[*j])
                }
                VarRole::Config { check, set } => indicator(&ones_at(*check) == set),
                VarRole::CheckWeight { check, weight } => indicator(ones_at(*check).len() == *weight),
                VarRole::Member { bit, check, weight } => {
                    indicator(bits[*bit] == 1 && ones_at(*check).len() == *weight)
                }
                VarRole::Repetition { bit, ones } => indicator((bits[*bit] == 1) == *ones),
                VarRole::Auxiliary { prefix } => f64::from(prefix.iter().fold(0, |a, &j| a ^ bits[j])),
                VarRole::HalfWeight { check } => (ones_at(*check).len() / 2) as f64,
            })
            .collect()
    }
}

struct Builder {
    lp: LpProblem,
    roles: Vec<VarRole>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Self {
            lp: LpProblem::new(n),
            roles: (0..n).map(VarRole::Bit).collect(),
        }
    }

    fn column(&mut self, role: VarRole, upper: f64) -> usize {
        self.lp.objective.push(0.0);
        self.lp.lower.push(0.0);
        self.lp.upper.push(upper);
        self.roles.push(role);
        self.roles.len() - 1
    }

    fn finish(self, kind: FormulationKind, code: &LinearCode, n: usize) -> Formulation {
        Formulation {
            kind,
            lp: self.lp,
            roles: self.roles,
            x_cols: (0..n).collect(),
            checks: code.checks().to_vec(),
        }
    }
}

fn guard_degrees(code: &LinearCode) -> Result<(), RelaxError> {
    for (i, c) in code.checks().iter().enumerate() {
        if c.len() > MAX_ENUMERATED_DEGREE {
            return Err(RelaxError::DegreeTooLarge {
                check: i,
                degree: c.len(),
                max: MAX_ENUMERATED_DEGREE,
            });
        }
    }
    Ok(())
}

/// Even subsets of a check, in increasing bitmask order (`∅` first).
fn even_subsets(support: &[usize]) -> Vec<Vec<usize>> {
    let d = support.len();
    (0u64..1 << d)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| (0..d).filter(|t| m >> t & 1 == 1).map(|t| support[t]).collect())
        .collect()
}

/// Adds `Σ_S w_{i,S} = 1` and `copy_j = Σ_{S∋j} w_{i,S}` for one check.
fn add_configuration_block(b: &mut Builder, check: usize, support: &[usize], copy_col: impl Fn(usize) -> usize) {
    let sets = even_subsets(support);
    let cols: Vec<usize> = sets
        .iter()
        .map(|s| b.column(VarRole::Config { check, set: s.clone() }, 1.0))
        .collect();
    b.lp.add_row(Row::eq(cols.iter().map(|&c| (c, 1.0)).collect(), 1.0));
    for &j in support {
        let mut coeffs = vec![(copy_col(j), 1.0)];
        coeffs.extend(
            sets.iter()
                .zip(&cols)
                .filter(|(s, _)| s.contains(&j))
                .map(|(_, &c)| (c, -1.0)),
        );
        b.lp.add_row(Row::eq(coeffs, 0.0));
    }
}

pub fn build_blpd1(code: &LinearCode) -> Result<Formulation, RelaxError> {
    guard_degrees(code)?;
    let n = code.n();
    let mut b = Builder::new(n);
    for (i, support) in code.checks().iter().enumerate() {
        if !support.is_empty() {
            add_configuration_block(&mut b, i, support, |j| j);
        }
    }
    Ok(b.finish(FormulationKind::Blpd1, code, n))
}

pub fn build_blpd2(code: &LinearCode) -> Result<Formulation, RelaxError> {
    guard_degrees(code)?;
    let n = code.n();
    let mut b = Builder::new(n);
    let identity: Vec<usize> = (0..n).collect();
    for support in code.checks() {
        for ineq in fs_inequalities(support) {
            b.lp.add_row(ineq.to_row(&identity));
        }
    }
    Ok(b.finish(FormulationKind::Blpd2, code, n))
}

pub fn build_blpd3(code: &LinearCode) -> Result<Formulation, RelaxError> {
    let n = code.n();
    let mut b = Builder::new(n);
    for (i, support) in code.checks().iter().enumerate() {
        if support.is_empty() {
            continue;
        }
        let weights: Vec<usize> = (0..=support.len()).step_by(2).collect();
        let p: Vec<usize> = weights
            .iter()
            .map(|&k| b.column(VarRole::CheckWeight { check: i, weight: k }, 1.0))
            .collect();
        // q[t][s]: bit support[t], weight weights[s]
        let q: Vec<Vec<usize>> = support
            .iter()
            .map(|&j| {
                weights
                    .iter()
                    .map(|&k| b.column(VarRole::Member { bit: j, check: i, weight: k }, 1.0))
                    .collect()
            })
            .collect();
        for (t, &j) in support.iter().enumerate() {
            let mut coeffs = vec![(j, 1.0)];
            coeffs.extend(q[t].iter().map(|&c| (c, -1.0)));
            b.lp.add_row(Row::eq(coeffs, 0.0));
        }
        b.lp.add_row(Row::eq(p.iter().map(|&c| (c, 1.0)).collect(), 1.0));
        for (s, &k) in weights.iter().enumerate() {
            let mut coeffs: Vec<(usize, f64)> = q.iter().map(|qt| (qt[s], 1.0)).collect();
            if k > 0 {
                coeffs.push((p[s], -(k as f64)));
            }
            b.lp.add_row(Row::eq(coeffs, 0.0));
            for qt in &q {
                b.lp.add_row(Row::le(vec![(qt[s], 1.0), (p[s], -1.0)], 0.0));
            }
        }
    }
    Ok(b.finish(FormulationKind::Blpd3, code, n))
}

pub fn build_clpd(code: &LinearCode) -> Result<Formulation, RelaxError> {
    let n = code.n();
    let dec = decompose_checks(code)?;
    let mut b = Builder::new(n);
    for prefix in &dec.aux_prefix {
        b.column(VarRole::Auxiliary { prefix: prefix.clone() }, 1.0);
    }
    let identity: Vec<usize> = (0..dec.code.n()).collect();
    for support in dec.code.checks() {
        match support.len() {
            0 => {}
            2 => {
                b.lp.add_row(Row::eq(vec![(support[0], 1.0), (support[1], -1.0)], 0.0));
            }
            _ => {
                for ineq in fs_inequalities(support) {
                    b.lp.add_row(ineq.to_row(&identity));
                }
            }
        }
    }
    Ok(b.finish(FormulationKind::Clpd, code, n))
}

pub fn build_plpd(code: &LinearCode) -> Result<Formulation, RelaxError> {
    guard_degrees(code)?;
    let n = code.n();
    let tanner = code.tanner_graph();
    let mut b = Builder::new(n);
    // u_{j,i} for i ∈ N_j ∪ {0}, keyed (bit, Some(check)) / (bit, None)
    let mut u_col = std::collections::HashMap::new();
    for j in 0..n {
        let ones = {
            let zeros = b.column(VarRole::Repetition { bit: j, ones: false }, 1.0);
            let ones = b.column(VarRole::Repetition { bit: j, ones: true }, 1.0);
            b.lp.add_row(Row::eq(vec![(zeros, 1.0), (ones, 1.0)], 1.0));
            ones
        };
        let tied = b.column(VarRole::BitCopy { bit: j, check: None }, 1.0);
        b.lp.add_row(Row::eq(vec![(j, 1.0), (tied, -1.0)], 0.0));
        b.lp.add_row(Row::eq(vec![(tied, 1.0), (ones, -1.0)], 0.0));
        for &i in tanner.var_neighbors(j) {
            let u = b.column(VarRole::BitCopy { bit: j, check: Some(i) }, 1.0);
            b.lp.add_row(Row::eq(vec![(u, 1.0), (ones, -1.0)], 0.0));
            u_col.insert((j, i), u);
        }
    }
    for (i, support) in code.checks().iter().enumerate() {
        if support.is_empty() {
            continue;
        }
        let v: Vec<usize> = support
            .iter()
            .map(|&j| {
                let v = b.column(VarRole::CheckCopy { check: i, bit: j }, 1.0);
                b.lp.add_row(Row::eq(vec![(u_col[&(j, i)], 1.0), (v, -1.0)], 0.0));
                v
            })
            .collect();
        add_configuration_block(&mut b, i, support, |j| v[support.iter().position(|&s| s == j).unwrap()]);
    }
    Ok(b.finish(FormulationKind::Plpd, code, n))
}

pub fn build_ipd_relaxation(code: &LinearCode) -> Result<Formulation, RelaxError> {
    let n = code.n();
    let mut b = Builder::new(n);
    for (i, support) in code.checks().iter().enumerate() {
        if support.is_empty() {
            continue;
        }
        let z = b.column(VarRole::HalfWeight { check: i }, (support.len() / 2) as f64);
        let mut coeffs: Vec<(usize, f64)> = support.iter().map(|&j| (j, 1.0)).collect();
        coeffs.push((z, -2.0));
        b.lp.add_row(Row::eq(coeffs, 0.0));
    }
    Ok(b.finish(FormulationKind::Ipd, code, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{hamming_code, BinaryMatrix};
    use crate::lp::solve;

    fn fig1() -> LinearCode {
        LinearCode::new(
            BinaryMatrix::from_rows(&[
                [1, 1, 1, 0, 1, 0, 0, 0],
                [1, 1, 0, 1, 0, 1, 0, 0],
                [1, 0, 1, 1, 0, 0, 1, 0],
                [0, 1, 1, 1, 0, 0, 0, 1],
            ])
            .unwrap(),
        )
    }

    fn spc(n: usize) -> LinearCode {
        LinearCode::new(BinaryMatrix::from_supports(n, &[(0..n).collect()]).unwrap())
    }

    #[test]
    fn blpd1_sizes() {
        let f = build_blpd1(&fig1()).unwrap();
        assert_eq!(f.lp.num_vars(), 40);
        assert_eq!(f.lp.num_rows(), 20);
        assert_eq!(build_blpd1(&spc(3)).unwrap().lp.num_vars(), 7);
    }

    #[test]
    fn blpd2_sizes() {
        assert_eq!(build_blpd2(&fig1()).unwrap().lp.num_rows(), 32);
        assert_eq!(build_blpd2(&spc(3)).unwrap().lp.num_rows(), 4);
        let zero = LinearCode::new(BinaryMatrix::zeros(1, 4).unwrap());
        let f = build_blpd2(&zero).unwrap();
        assert_eq!((f.lp.num_vars(), f.lp.num_rows()), (4, 0));
    }

    #[test]
    fn blpd3_weight_sets() {
        let f = build_blpd3(&spc(4)).unwrap();
        let p = |f: &Formulation| {
            f.roles()
                .iter()
                .filter_map(|r| match r {
                    VarRole::CheckWeight { weight, .. } => Some(*weight),
                    _ => None,
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(p(&f), vec![0, 2, 4]);
        assert_eq!(p(&build_blpd3(&spc(5)).unwrap()), vec![0, 2, 4]);
    }

    #[test]
    fn clpd_adds_one_auxiliary_per_degree_four_row() {
        let f = build_clpd(&fig1()).unwrap();
        assert_eq!(f.lp.num_vars(), 12);
        let f = build_clpd(&spc(3)).unwrap();
        assert_eq!(f.lp, build_blpd2(&spc(3)).unwrap().lp);
    }

    #[test]
    fn degree_guard() {
        let wide = spc(26);
        assert!(matches!(build_blpd1(&wide), Err(RelaxError::DegreeTooLarge { .. })));
        assert!(matches!(build_blpd2(&wide), Err(RelaxError::DegreeTooLarge { .. })));
        assert!(build_clpd(&wide).is_ok());
    }

    #[test]
    fn ipd_lift() {
        let f = build_ipd_relaxation(&spc(3)).unwrap();
        assert_eq!(f.lift_codeword(&[1, 1, 0]), vec![1.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn every_codeword_lifts_to_a_feasible_point() {
        for code in [hamming_code(3).unwrap(), fig1(), spc(5)] {
            for kind in FormulationKind::ALL {
                let f = kind.build(&code).unwrap();
                for c in code.enumerate_codewords().unwrap() {
                    let p = f.lift_codeword(&c);
                    assert!(f.lp.is_feasible(&p, 1e-12), "{kind} rejects {c:?}");
                    assert_eq!(f.project(&p), c.iter().map(|&b| f64::from(b)).collect::<Vec<_>>());
                }
            }
        }
    }

    #[test]
    fn plpd_without_checks_leaves_bits_free() {
        let zero = LinearCode::new(BinaryMatrix::zeros(1, 3).unwrap());
        let f = build_plpd(&zero).unwrap().with_llr(&[1.0, -1.0, -2.0]).unwrap();
        assert!((solve(&f.lp).unwrap().value + 3.0).abs() < 1e-12);
    }

    #[test]
    fn kind_names_round_trip() {
        for k in FormulationKind::ALL {
            assert_eq!(k.name().parse::<FormulationKind>().unwrap(), k);
        }
        assert!("blpd9".parse::<FormulationKind>().is_err());
    }
}
