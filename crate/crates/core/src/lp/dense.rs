/// Gauss-Jordan inverse with partial pivoting; `None` when a pivot falls
/// below `1e-11` relative to the largest entry.
pub(crate) fn invert(m: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let k = m.len();
    let scale = m
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |a, &v| a.max(v.abs()))
        .max(1.0);
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut inv: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let mut r = vec![0.0; k];
            r[i] = 1.0;
            r
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-11 * scale {
            return None;
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col];
        for v in a[col].iter_mut() {
            *v /= p;
        }
        for v in inv[col].iter_mut() {
            *v /= p;
        }
        let (src_a, src_i) = (a[col].clone(), inv[col].clone());
        for r in 0..k {
            if r == col {
                continue;
            }
            let f = a[r][col];
            if f == 0.0 {
                continue;
            }
            for (v, s) in a[r].iter_mut().zip(&src_a) {
                *v -= f * s;
            }
            for (v, s) in inv[r].iter_mut().zip(&src_i) {
                *v -= f * s;
            }
        }
    }
    Some(inv)
}
