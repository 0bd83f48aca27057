//! Exact integer matrices and their normal forms.
//!
//! Everything in this module runs on arbitrary-precision integers: the
//! lattices under study have squared volumes around `3n * n^(2(3n-7))`,
//! which leaves 64-bit arithmetic before n = 6. The normal forms are the
//! classical elimination algorithms; at the sizes handled here (dimensions
//! up to ~30) they are far from the bottleneck and no modular tricks are
//! needed.
//!
//! Conventions:
//! * Hermite normal form is row-style: zero rows removed, pivots positive,
//!   entries above each pivot reduced into `[0, pivot)`. Two row sets span
//!   the same integer lattice exactly when their HNFs are identical, so
//!   the HNF doubles as a canonical form.
//! * Smith normal form returns the invariant factors `d_1 | d_2 | ...`
//!   with unit factors dropped.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct BigMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl BigMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BigMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    /// Builds a matrix from complete rows. Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            entries.extend(row);
        }
        BigMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> BigMatrix {
        let mut t = BigMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &BigMatrix) -> BigMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = BigMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    *out.at_mut(r, c) += a * other.at(k, c);
                }
            }
        }
        out
    }

    /// Serializes to the plain text format: a `rows cols` header line, then
    /// one whitespace-separated row of decimal integers per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(BigInt::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses the text format written by [`BigMatrix::to_text`].
    pub fn from_text(text: &str) -> Result<BigMatrix, Error> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::Parse(format!("bad matrix header: {header:?}")));
        }
        let rows: usize = dims[0]
            .parse()
            .map_err(|_| Error::Parse(format!("bad row count: {:?}", dims[0])))?;
        let cols: usize = dims[1]
            .parse()
            .map_err(|_| Error::Parse(format!("bad column count: {:?}", dims[1])))?;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing matrix row {r}")))?;
            let mut count = 0;
            for tok in line.split_whitespace() {
                let v: BigInt = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer {tok:?} in row {r}")))?;
                entries.push(v);
                count += 1;
            }
            if count != cols {
                return Err(Error::Parse(format!(
                    "row {r} has {count} entries, expected {cols}"
                )));
            }
        }
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(Error::Parse(format!(
                "trailing data after matrix: {extra:?}"
            )));
        }
        Ok(BigMatrix {
            rows,
            cols,
            entries,
        })
    }
}

impl fmt::Debug for BigMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BigMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(BigInt::to_string).collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Invariant factors `d_1 | d_2 | ...` of an integer matrix, units omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    /// Product of the invariant factors: the order of the torsion quotient
    /// they describe (1 for an empty list).
    pub fn index(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

fn row_submul(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
}

/// Row-style Hermite normal form.
///
/// The row space over the integers is preserved; zero rows are dropped, all
/// pivots are positive and every entry above a pivot lies in `[0, pivot)`.
pub fn hnf(m: &BigMatrix) -> BigMatrix {
    let mut rows = m.row_vecs();
    let cols = m.cols();
    let mut top = 0;
    for col in 0..cols {
        if top == rows.len() {
            break;
        }
        loop {
            // Pivot: smallest nonzero magnitude in this column, first
            // occurrence on ties.
            let mut pivot: Option<usize> = None;
            for i in top..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some(i),
                    Some(p) => {
                        if rows[i][col].magnitude() < rows[p][col].magnitude() {
                            pivot = Some(i);
                        }
                    }
                }
            }
            let Some(p) = pivot else { break };
            let mut remaining = false;
            for i in top..rows.len() {
                if i == p || rows[i][col].is_zero() {
                    continue;
                }
                let q = &rows[i][col] / &rows[p][col];
                row_submul(&mut rows, i, p, &q);
                remaining |= !rows[i][col].is_zero();
            }
            if !remaining {
                rows.swap(top, p);
                if rows[top][col].is_negative() {
                    for x in rows[top].iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
                // Reduce the entries above the pivot into [0, pivot).
                for r in 0..top {
                    let q = rows[r][col].div_floor(&rows[top][col]);
                    row_submul(&mut rows, r, top, &q);
                }
                top += 1;
                break;
            }
        }
    }
    debug_assert!(rows[top..].iter().all(|r| r.iter().all(Zero::is_zero)));
    rows.truncate(top);
    BigMatrix::from_rows(rows).with_cols(cols)
}

impl BigMatrix {
    // from_rows infers cols = 0 for an empty row list; restore the true
    // column count so 0-rank results keep their ambient dimension.
    fn with_cols(mut self, cols: usize) -> BigMatrix {
        if self.rows == 0 {
            self.cols = cols;
        }
        self
    }
}

/// Column index of the first nonzero entry of each HNF row.
pub(crate) fn pivot_columns(h: &BigMatrix) -> Vec<usize> {
    (0..h.rows())
        .map(|r| {
            (0..h.cols())
                .find(|&c| !h.at(r, c).is_zero())
                .expect("HNF contains a zero row")
        })
        .collect()
}

/// Expresses `v` as an integer combination of the rows of an HNF matrix by
/// back-substitution. Returns the coefficients, or `None` if `v` is outside
/// the row span.
pub(crate) fn solve_in_hnf(h: &BigMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(v.len(), h.cols());
    let pivots = pivot_columns(h);
    let mut rem = v.to_vec();
    let mut coeffs = Vec::with_capacity(h.rows());
    for (r, &p) in pivots.iter().enumerate() {
        let (q, rest) = rem[p].div_rem(h.at(r, p));
        if !rest.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (x, y) in rem.iter_mut().zip(h.row(r)) {
                *x -= &q * y;
            }
        }
        coeffs.push(q);
    }
    if rem.iter().all(Zero::is_zero) {
        Some(coeffs)
    } else {
        None
    }
}

/// Rank over the rationals (equal to the number of HNF rows).
pub fn rank(m: &BigMatrix) -> usize {
    hnf(m).rows()
}

/// Smith normal form by alternating row/column gcd elimination.
///
/// The pivot at each corner is the smallest-magnitude nonzero entry of the
/// remaining submatrix (first occurrence in row-major order on ties), which
/// keeps intermediate entry growth manageable at these sizes.
pub fn snf(m: &BigMatrix) -> SmithForm {
    let mut a = m.row_vecs();
    let nrows = a.len();
    let ncols = m.cols();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // Global pivot search over the trailing submatrix.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if a[i][j].is_zero() {
                    continue;
                }
                match pivot {
                    None => pivot = Some((i, j)),
                    Some((pi, pj)) => {
                        if a[i][j].magnitude() < a[pi][pj].magnitude() {
                            pivot = Some((i, j));
                        }
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        col_swap(&mut a, t, pj);
        loop {
            // Clear column t with row operations; a nonzero remainder is
            // strictly smaller than the pivot, so swap it up and retry.
            let mut dirty = false;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                row_submul(&mut a, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // Clear row t with column operations.
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                col_submul(&mut a, j, t, &q);
                if !a[t][j].is_zero() {
                    col_swap(&mut a, t, j);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // Corner clean; make the pivot divide the rest of the submatrix.
            let mut fixed = true;
            'sweep: for i in t + 1..nrows {
                for j in t + 1..ncols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        let src = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(src) {
                            *x += y;
                        }
                        fixed = false;
                        break 'sweep;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        t += 1;
    }
    let mut factors: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    debug_assert!(factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    factors.retain(|d| !d.is_one());
    SmithForm {
        invariant_factors: factors,
    }
}

fn col_swap(a: &mut [Vec<BigInt>], c1: usize, c2: usize) {
    if c1 == c2 {
        return;
    }
    for row in a.iter_mut() {
        row.swap(c1, c2);
    }
}

fn col_submul(a: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        let s = row[src].clone();
        row[dst] -= q * s;
    }
}

/// Determinant by fraction-free (Bareiss) elimination. Exact.
pub fn det(m: &BigMatrix) -> BigInt {
    assert_eq!(m.rows(), m.cols(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.row_vecs();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Gram determinant `det(B * B^T)` of a basis given by rows: the squared
/// volume of the lattice the rows generate, kept exact.
pub fn gram_det(basis: &BigMatrix) -> Result<BigInt, Error> {
    let gram = basis.mul(&basis.transpose());
    let d = det(&gram);
    if d.is_zero() {
        return Err(Error::RankDeficient);
    }
    debug_assert!(d.is_positive());
    Ok(d)
}
