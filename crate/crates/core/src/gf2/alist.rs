use std::fmt::Write as _;

use super::{BinaryMatrix, Gf2Error, LinearCode};

/// Parses a parity-check matrix in alist format.
///
/// Neighbor lists may be zero-padded to the maximum degree. The column and
/// row sections must describe the same matrix.
pub fn load_alist(text: &str) -> Result<LinearCode, Gf2Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let mut last_line = 0;
    let mut next_numbers = |what: &str| -> Result<(usize, Vec<usize>), Gf2Error> {
        let Some((no, line)) = lines.next() else {
            return Err(Gf2Error::Alist {
                line: last_line + 1,
                msg: format!("unexpected end of input, expected {what}"),
            });
        };
        last_line = no;
        let nums = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|_| Gf2Error::Alist {
                    line: no,
                    msg: format!("not a non-negative integer: {t:?}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((no, nums))
    };
    let err = |line: usize, msg: String| Gf2Error::Alist { line, msg };

    let (no, header) = next_numbers("header \"n m\"")?;
    let [n, m] = header[..] else {
        return Err(err(no, "header must be \"n m\"".into()));
    };
    if n == 0 || m == 0 {
        return Err(err(no, "n and m must be positive".into()));
    }
    let (no, maxes) = next_numbers("maximum degrees")?;
    let [max_col, max_row] = maxes[..] else {
        return Err(err(no, "expected \"maxColDeg maxRowDeg\"".into()));
    };
    let (no, col_deg) = next_numbers("column degrees")?;
    if col_deg.len() != n {
        return Err(err(no, format!("expected {n} column degrees, found {}", col_deg.len())));
    }
    if col_deg.iter().max() != Some(&max_col) {
        return Err(err(no, format!("maximum column degree is not {max_col}")));
    }
    let (no, row_deg) = next_numbers("row degrees")?;
    if row_deg.len() != m {
        return Err(err(no, format!("expected {m} row degrees, found {}", row_deg.len())));
    }
    if row_deg.iter().max() != Some(&max_row) {
        return Err(err(no, format!("maximum row degree is not {max_row}")));
    }

    let mut read_lists = |count: usize, degrees: &[usize], bound: usize, what: &str| {
        let mut lists = Vec::with_capacity(count);
        for (idx, &deg) in degrees.iter().enumerate() {
            let (no, nums) = next_numbers(what)?;
            let (entries, padding) = nums.split_at(deg.min(nums.len()));
            if entries.len() != deg || padding.iter().any(|&p| p != 0) {
                return Err(err(no, format!("{what} {} should list {deg} indices", idx + 1)));
            }
            let mut list = Vec::with_capacity(deg);
            for &e in entries {
                if e == 0 || e > bound {
                    return Err(err(no, format!("index {e} outside 1..={bound}")));
                }
                list.push(e - 1);
            }
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(err(no, format!("{what} {} repeats an index", idx + 1)));
            }
            lists.push(list);
        }
        Ok::<_, Gf2Error>(lists)
    };
    let col_lists = read_lists(n, &col_deg, m, "column")?;
    let row_lists = read_lists(m, &row_deg, n, "row")?;

    let h = BinaryMatrix::from_supports(n, &row_lists)?;
    for (j, list) in col_lists.iter().enumerate() {
        let from_rows: Vec<usize> = (0..m).filter(|&i| h.get(i, j)).collect();
        if &from_rows != list {
            return Err(err(
                last_line,
                format!("column {} disagrees with the row lists", j + 1),
            ));
        }
    }
    Ok(LinearCode::new(h))
}

/// Writes the parity-check matrix in alist format without zero padding.
pub fn save_alist(code: &LinearCode) -> String {
    let h = code.parity_check();
    let (m, n) = (h.rows(), h.cols());
    let cols: Vec<Vec<usize>> = (0..n).map(|j| (0..m).filter(|&i| h.get(i, j)).collect()).collect();
    let rows: Vec<Vec<usize>> = (0..m).map(|i| h.row_support(i)).collect();
    let join = |v: &mut dyn Iterator<Item = usize>| v.map(|x| x.to_string()).collect::<Vec<_>>().join(" ");

    let mut out = String::new();
    let _ = writeln!(out, "{n} {m}");
    let max_col = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_row = rows.iter().map(Vec::len).max().unwrap_or(0);
    let _ = writeln!(out, "{max_col} {max_row}");
    let _ = writeln!(out, "{}", join(&mut cols.iter().map(Vec::len)));
    let _ = writeln!(out, "{}", join(&mut rows.iter().map(Vec::len)));
    for list in cols.iter().chain(&rows) {
        let _ = writeln!(out, "{}", join(&mut list.iter().map(|&x| x + 1)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::random_regular_ldpc;

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

    #[test]
    fn fig1_header() {
        let text = save_alist(&fig1());
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("8 4"));
        // column 1 touches three checks, so the column maximum is 3
        assert_eq!(lines.next(), Some("3 4"));
        assert_eq!(lines.next(), Some("3 3 3 3 1 1 1 1"));
        assert_eq!(lines.next(), Some("4 4 4 4"));
        assert_eq!(lines.next(), Some("1 2 3"));
    }

    #[test]
    fn round_trip_random_ldpc() {
        let code = random_regular_ldpc(48, 3, 6, 5).unwrap();
        let back = load_alist(&save_alist(&code)).unwrap();
        assert_eq!(back.parity_check(), code.parity_check());
    }

    #[test]
    fn zero_padding_accepted() {
        let text = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";
        let code = load_alist(text).unwrap();
        assert_eq!(code.parity_check().row_support(1), vec![1, 2]);
    }

    #[test]
    fn malformed_inputs_rejected() {
        let full = save_alist(&fig1());
        let truncated: String = full.lines().take(10).map(|l| format!("{l}\n")).collect();
        assert!(matches!(load_alist(&truncated), Err(Gf2Error::Alist { .. })));
        assert!(load_alist("8\n").is_err());
        assert!(load_alist("x y\n").is_err());
        // degree list too short
        assert!(load_alist("3 1\n1 3\n1 1\n3\n1\n1\n1\n1 2 3\n").is_err());
        // out-of-range index
        assert!(load_alist("2 1\n1 2\n1 1\n2\n1\n2\n1 3\n").is_err());
        // rows and columns disagree
        assert!(load_alist("2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n").is_err());
    }
}
