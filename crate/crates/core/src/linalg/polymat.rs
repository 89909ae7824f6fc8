//! Matrices over Q[t]: fraction-free determinants, minors and the Smith
//! normal form.

use crate::field::{Poly, RatFunc};
use crate::par::ExecMode;

use super::{LinalgError, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Result<PolyMatrix, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(PolyMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Clears denominators row by row: each row is multiplied by the monic
    /// lcm of its entry denominators. Minors change only by products of
    /// those denominators.
    pub fn clear_denominators(m: &Matrix) -> Result<PolyMatrix, LinalgError> {
        let mut out = PolyMatrix::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            let row: Vec<RatFunc> = m
                .row(i)
                .iter()
                .map(|e| {
                    e.to_ratfunc()
                        .ok_or_else(|| LinalgError::Shape("entries must lie in Q(t)".into()))
                })
                .collect::<Result<_, _>>()?;
            let lcm = row.iter().fold(Poly::one(), |acc, e| {
                let g = acc.gcd(e.denom());
                (&acc * e.denom()).exact_div(&g).expect("gcd divides")
            });
            for (j, e) in row.iter().enumerate() {
                let scale = lcm.exact_div(e.denom()).expect("lcm is a multiple");
                out.set(i, j, e.numer() * &scale);
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// The submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        PolyMatrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    /// Monic gcd of all `k × k` minors, computed one minor at a time with
    /// Bareiss elimination. `k = 0` gives 1 by convention; `k` beyond the
    /// matrix size gives 0.
    pub fn minors_gcd(&self, k: usize, mode: ExecMode) -> Poly {
        if k == 0 {
            return Poly::one();
        }
        if k > self.rows || k > self.cols {
            return Poly::zero();
        }
        let row_sets = combinations(self.rows, k);
        let col_sets = combinations(self.cols, k);
        // chunk by row subset; each chunk folds its own gcd
        let partial = mode.map(row_sets, |rs| {
            let mut g = Poly::zero();
            for cs in &col_sets {
                if g.is_one() {
                    break;
                }
                g = g.gcd(&bareiss_det(&self.select(&rs, cs)));
            }
            g
        });
        partial.iter().fold(Poly::zero(), |acc, g| acc.gcd(g))
    }

    /// Invariant factors `d1 | d2 | ...` (monic, zeros last) of the Smith
    /// normal form over Q[t]; there are `min(rows, cols)` of them.
    pub fn smith_diagonal(&self) -> Vec<Poly> {
        let mut m = self.clone();
        let n = self.rows.min(self.cols);
        let mut diag = Vec::with_capacity(n);
        for s in 0..n {
            let Some((pi, pj)) = m.min_degree_entry(s) else {
                diag.resize(n, Poly::zero());
                break;
            };
            m.swap_rows(s, pi);
            m.swap_cols(s, pj);
            loop {
                if m.reduce_pivot_line(s) {
                    continue;
                }
                // pivot must divide the whole remaining block
                let bad = (s + 1..m.rows)
                    .flat_map(|i| (s + 1..m.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !m.get(s, s).divides(m.get(i, j)));
                match bad {
                    Some((i, _)) => {
                        for j in s..m.cols {
                            let v = m.get(s, j) + m.get(i, j);
                            m.set(s, j, v);
                        }
                    }
                    None => break,
                }
            }
            diag.push(m.get(s, s).monic());
        }
        diag
    }

    fn min_degree_entry(&self, s: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in s..self.rows {
            for j in s..self.cols {
                if let Some(d) = self.get(i, j).degree() {
                    if best.is_none_or(|(bd, _, _)| d < bd) {
                        best = Some((d, i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Clears row and column `s` below/right of the pivot by division with
    /// remainder. Returns `true` when a smaller remainder was swapped in
    /// as the new pivot and another pass is needed.
    fn reduce_pivot_line(&mut self, s: usize) -> bool {
        for i in s + 1..self.rows {
            if self.get(i, s).is_zero() {
                continue;
            }
            let (q, r) = self.get(i, s).div_rem(self.get(s, s));
            for j in s..self.cols {
                let v = self.get(i, j) - &(&q * self.get(s, j));
                self.set(i, j, v);
            }
            if !r.is_zero() {
                self.swap_rows(s, i);
                return true;
            }
        }
        for j in s + 1..self.cols {
            if self.get(s, j).is_zero() {
                continue;
            }
            let (q, r) = self.get(s, j).div_rem(self.get(s, s));
            for i in s..self.rows {
                let v = self.get(i, j) - &(&q * self.get(i, s));
                self.set(i, j, v);
            }
            if !r.is_zero() {
                self.swap_cols(s, j);
                return true;
            }
        }
        false
    }

    /// `D_k`, the monic gcd of all `k × k` minors, for every `k` from 0 to
    /// `min(rows, cols)`, read off the Smith normal form.
    pub fn determinantal_divisors(&self) -> Vec<Poly> {
        let mut out = vec![Poly::one()];
        for d in self.smith_diagonal() {
            let next = out.last().expect("nonempty") * &d;
            out.push(next);
        }
        out
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Fraction-free determinant over Q[t]; every division is exact.
pub fn bareiss_det(m: &PolyMatrix) -> Poly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Poly::one();
    }
    let mut a = m.clone();
    let mut prev = Poly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Poly::zero();
            };
            a.swap_rows(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(a.get(k, k) * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                let v = num.exact_div(&prev).expect("Bareiss division is exact");
                a.set(i, j, v);
            }
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Laplace expansion along the first row. Exponential; a test oracle for
/// small matrices only.
pub fn cofactor_det(m: &PolyMatrix) -> Poly {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    let n = m.rows;
    if n == 0 {
        return Poly::one();
    }
    let rest: Vec<usize> = (1..n).collect();
    let mut acc = Poly::zero();
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m.get(0, j) * &cofactor_det(&m.select(&rest, &cols));
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}
