//! Smith normal form over the integers.
//!
//! Used to describe quotients `Ω / L` of the weight lattice by sublattices
//! spanned by characters, which is how torus strata are constructed.

/// `P · A · Q = D` with `P`, `Q` unimodular and `D` diagonal,
/// `d_1 | d_2 | …`, all `d_i ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub p: Vec<Vec<i64>>,
    pub q: Vec<Vec<i64>>,
    /// Diagonal entries of `D` (length `min(m, n)`), trailing zeros included.
    pub diagonal: Vec<i64>,
    pub rows: usize,
    pub cols: usize,
}

impl Smith {
    /// Number of non-zero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|&&d| d != 0).count()
    }
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Smith normal form of an `m × n` integer matrix given by rows.
pub fn smith_normal_form(a: &[Vec<i64>], cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut d: Vec<Vec<i64>> = a.to_vec();
    let mut p = identity(m);
    let mut q = identity(n);

    let swap_rows = |d: &mut Vec<Vec<i64>>, p: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        d.swap(i, j);
        p.swap(i, j);
    };
    let swap_cols = |d: &mut Vec<Vec<i64>>, q: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        for row in d.iter_mut() {
            row.swap(i, j);
        }
        for row in q.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i += k * row_j
    let add_row = |d: &mut Vec<Vec<i64>>, p: &mut Vec<Vec<i64>>, i: usize, j: usize, k: i64| {
        for c in 0..d[0].len() {
            d[i][c] += k * d[j][c];
        }
        for c in 0..p[0].len() {
            p[i][c] += k * p[j][c];
        }
    };
    // col_i += k * col_j
    let add_col = |d: &mut Vec<Vec<i64>>, q: &mut Vec<Vec<i64>>, i: usize, j: usize, k: i64| {
        for row in d.iter_mut() {
            row[i] += k * row[j];
        }
        for row in q.iter_mut() {
            row[i] += k * row[j];
        }
    };

    let steps = m.min(n);
    for t in 0..steps {
        loop {
            // Smallest non-zero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d[i][j] != 0
                        && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            swap_rows(&mut d, &mut p, t, bi);
            swap_cols(&mut d, &mut q, t, bj);

            let piv = d[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let k = d[i][t] / piv;
                if k != 0 {
                    add_row(&mut d, &mut p, i, t, -k);
                }
                clean &= d[i][t] == 0;
            }
            for j in t + 1..n {
                let k = d[t][j] / piv;
                if k != 0 {
                    add_col(&mut d, &mut q, j, t, -k);
                }
                clean &= d[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % piv != 0));
            match bad {
                Some(i) => add_row(&mut d, &mut p, t, i, 1),
                None => break,
            }
        }
        if d[t][t] < 0 {
            for c in 0..n {
                d[t][c] = -d[t][c];
            }
            for c in 0..m {
                p[t][c] = -p[t][c];
            }
        }
    }
    let diagonal = (0..steps).map(|i| d[i][i]).collect();
    Smith {
        p,
        q,
        diagonal,
        rows: m,
        cols: n,
    }
}
