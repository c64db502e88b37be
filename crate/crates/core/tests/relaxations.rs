mod common;

use common::{fig1_code, is_fractional, random_sparse_code, uniform_llr};
use lpdecode::gf2::{array_code, hamming_code, spc_product_code, BinaryMatrix, LinearCode};
use lpdecode::lp::{solve, Row};
use lpdecode::relax::{
    build_blpd2, build_ipd_relaxation, fs_inequalities, matrix_adaptation_cut_search, most_violated_fs_cut,
    rpc_cycle_cut_search, rpc_from_rows, FormulationKind, FsInequality,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn lp_value(code: &LinearCode, kind: FormulationKind, llr: &[f64]) -> (f64, Vec<f64>) {
    let form = kind.build(code).unwrap().with_llr(llr).unwrap();
    let sol = solve(&form.lp).unwrap();
    assert!(sol.is_optimal());
    (sol.value, form.project(&sol.x))
}

fn all_words(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0u32..1 << n).map(move |v| (0..n).map(|j| ((v >> j) & 1) as u8).collect())
}

/// Every dual codeword of `code` (nonzero row-space elements of `H`).
fn dual_codewords(code: &LinearCode) -> Vec<Vec<usize>> {
    let h = code.parity_check();
    let (r, pivots) = h.rref();
    let rank = pivots.len();
    (1u32..1 << rank)
        .map(|mask| {
            let rows: Vec<usize> = (0..rank).filter(|t| (mask >> t) & 1 == 1).collect();
            rpc_from_rows(&r, &rows).unwrap()
        })
        .collect()
}

#[test]
fn formulations_agree_on_random_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let n = 6 + (rand::Rng::random_range(&mut rng, 0..10));
        let m = 2 + (rand::Rng::random_range(&mut rng, 0..n / 2));
        let code = random_sparse_code(&mut rng, n, m, 6);
        let llr = uniform_llr(&mut rng, n);
        let (reference, _) = lp_value(&code, FormulationKind::Blpd2, &llr);
        for kind in [FormulationKind::Blpd1, FormulationKind::Blpd3, FormulationKind::Clpd, FormulationKind::Plpd] {
            let (v, _) = lp_value(&code, kind, &llr);
            assert!((v - reference).abs() < 1e-6, "{kind}: {v} vs {reference}");
        }
    }
}

#[test]
fn codewords_extend_to_feasible_points_of_every_formulation() {
    for code in [fig1_code(), hamming_code(3).unwrap(), spc_product_code(&[3, 3]).unwrap()] {
        let words = code.enumerate_codewords().unwrap();
        for kind in FormulationKind::ALL {
            let form = kind.build(&code).unwrap();
            for w in &words {
                let point = form.lift_codeword(w);
                assert!(form.lp.is_feasible(&point, 1e-9), "{kind} rejects {w:?}");
            }
        }
    }
}

#[test]
fn integral_feasible_points_of_blpd2_are_codewords() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut codes = vec![fig1_code(), hamming_code(3).unwrap()];
    codes.extend((0..5).map(|_| random_sparse_code(&mut rng, 10, 5, 5)));
    for code in codes {
        let form = build_blpd2(&code).unwrap();
        for w in all_words(code.n()) {
            let x: Vec<f64> = w.iter().map(|&b| f64::from(b)).collect();
            assert_eq!(form.lp.is_feasible(&x, 1e-9), code.is_codeword(&w), "{w:?}");
        }
    }
}

#[test]
fn ipd_relaxation_lower_bounds_ml() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..30 {
        let code = random_sparse_code(&mut rng, 10, 5, 5);
        let llr = uniform_llr(&mut rng, 10);
        let (_, ml) = code.ml_bruteforce(&llr).unwrap();
        let form = build_ipd_relaxation(&code).unwrap().with_llr(&llr).unwrap();
        let v = solve(&form.lp).unwrap().value;
        assert!(v <= ml + 1e-9);
    }
}

#[test]
fn spc3_blpd2_is_the_codeword_polytope() {
    let code = LinearCode::new(BinaryMatrix::from_rows(&[[1, 1, 1]]).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..50 {
        let llr = uniform_llr(&mut rng, 3);
        let (v, x) = lp_value(&code, FormulationKind::Blpd2, &llr);
        let (_, ml) = code.ml_bruteforce(&llr).unwrap();
        assert!((v - ml).abs() < 1e-9);
        assert!(x.iter().all(|&t| !is_fractional(t)));
    }
}

#[test]
fn separation_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..500 {
        let d = 1 + rand::Rng::random_range(&mut rng, 0..6);
        let support: Vec<usize> = (0..d).collect();
        let x: Vec<f64> = (0..d).map(|_| rand::Rng::random_range(&mut rng, 0.0..1.0)).collect();
        let worst = fs_inequalities(&support)
            .into_iter()
            .map(|f| f.violation(&x))
            .fold(f64::NEG_INFINITY, f64::max);
        match most_violated_fs_cut(&support, &x) {
            Some(cut) => assert!((cut.violation(&x) - worst).abs() < 1e-12),
            None => assert!(worst <= 1e-6),
        }
    }
    let cut = most_violated_fs_cut(&[0, 1, 2], &[1.0, 1.0, 0.4]).unwrap();
    assert_eq!(cut.odd_subset(), &[0, 1, 2]);
    assert!(most_violated_fs_cut(&[0, 1, 2], &[0.5, 0.5, 0.5]).is_none());
}

/// Fractional `blpd2` optima of random objectives on `code`.
fn fractional_vertices(code: &LinearCode, seed: u64, wanted: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..20_000 {
        let llr = uniform_llr(&mut rng, code.n());
        let (_, x) = lp_value(code, FormulationKind::Blpd2, &llr);
        if x.iter().any(|&v| is_fractional(v)) {
            out.push(x);
            if out.len() == wanted {
                break;
            }
        }
    }
    out
}

fn assert_valid_cut(code: &LinearCode, words: &[Vec<u8>], cut: &FsInequality, x: &[f64]) {
    assert!(cut.violation(x) > 1e-6);
    for w in words {
        assert!(cut.is_satisfied_by(w), "cut {cut:?} removes codeword {w:?}");
    }
    let _ = code;
}

#[test]
fn cut_searches_return_valid_violated_cuts() {
    let code = hamming_code(3).unwrap();
    let words = code.enumerate_codewords().unwrap();
    let duals = dual_codewords(&code);
    let vertices = fractional_vertices(&code, 3, 30);
    assert!(!vertices.is_empty());
    for (t, x) in vertices.iter().enumerate() {
        // some dual codeword always separates a fractional vertex of this code
        let exists = duals.iter().any(|s| most_violated_fs_cut(s, x).is_some());
        let adapted = matrix_adaptation_cut_search(code.parity_check(), x);
        if exists {
            assert!(!adapted.is_empty(), "matrix adaptation missed a cut at {x:?}");
        }
        for cut in adapted.iter().chain(&rpc_cycle_cut_search(code.parity_check(), x, t as u64, None)) {
            assert_valid_cut(&code, &words, cut, x);
        }
    }
}

#[test]
fn cycle_search_finds_two_row_rpc_cut() {
    let code = fig1_code();
    let words = code.enumerate_codewords().unwrap();
    let h = code.parity_check();
    let mut checked = 0;
    for x in fractional_vertices(&code, 21, 40) {
        let pair_cut = (0..h.rows()).any(|a| {
            (a + 1..h.rows()).any(|b| {
                rpc_from_rows(h, &[a, b]).is_ok_and(|s| most_violated_fs_cut(&s, &x).is_some())
            })
        });
        if !pair_cut {
            continue;
        }
        checked += 1;
        let cuts = rpc_cycle_cut_search(h, &x, 9, Some(200));
        assert!(!cuts.is_empty(), "no cycle cut at {x:?}");
        for cut in &cuts {
            assert_valid_cut(&code, &words, cut, &x);
        }
    }
    assert!(checked > 0);
}

#[test]
fn fractional_vertices_never_have_a_lone_fractional_neighbor() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..20 {
        let code = random_sparse_code(&mut rng, 12, 6, 5);
        for x in fractional_vertices(&code, rand::Rng::random(&mut rng), 5) {
            for check in code.checks() {
                let frac = check.iter().filter(|&&j| is_fractional(x[j])).count();
                assert_ne!(frac, 1, "check {check:?} at {x:?}");
            }
        }
    }
}

#[test]
fn short_rpcs_do_not_tighten_girth_six_code() {
    let code = array_code(5, 3, 5).unwrap();
    assert_eq!(code.tanner_graph().girth(), Some(6));
    let h = code.parity_check();
    let mut rows: Vec<Row> = Vec::new();
    let form = build_blpd2(&code).unwrap();
    for a in 0..h.rows() {
        for b in a + 1..h.rows() {
            if let Ok(s) = rpc_from_rows(h, &[a, b]) {
                rows.extend(fs_inequalities(&s).iter().map(|f| f.to_row(form.x_cols())));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let llr = uniform_llr(&mut rng, code.n());
        let plain = form.clone().with_llr(&llr).unwrap();
        let mut tightened = plain.lp.clone();
        for r in &rows {
            tightened.add_row(r.clone());
        }
        let a = solve(&plain.lp).unwrap().value;
        let b = solve(&tightened).unwrap().value;
        assert!((a - b).abs() < 1e-7, "{a} vs {b}");
    }
}
