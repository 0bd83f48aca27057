//! Exact LLL basis reduction.
//!
//! Runs entirely in big-rational arithmetic, so the Lovász condition holds
//! exactly for the requested delta and no floating-point soundness argument
//! is needed. Used as preprocessing so that enumeration radii stay small.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::lattice::Lattice;
use crate::matrix::BigMatrix;

/// Default reduction parameter 99/100: close to the strongest admissible
/// value, which shrinks the enumeration trees downstream.
pub fn default_delta() -> BigRational {
    BigRational::new(BigInt::from(99), BigInt::from(100))
}

fn dot_int_rat(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
        .sum()
}

fn dot_rat(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram-Schmidt data for a list of independent integer rows: the mu
/// coefficients (strictly lower triangular) and the squared norms of the
/// orthogonalized vectors, all exact.
pub(crate) struct GramSchmidt {
    pub mu: Vec<Vec<BigRational>>,
    pub norms_sq: Vec<BigRational>,
}

pub(crate) fn gram_schmidt(rows: &[Vec<BigInt>]) -> GramSchmidt {
    let r = rows.len();
    let dim = rows.first().map_or(0, Vec::len);
    let mut ortho: Vec<Vec<BigRational>> = Vec::with_capacity(r);
    let mut mu = vec![vec![BigRational::zero(); r]; r];
    let mut norms_sq = Vec::with_capacity(r);
    for i in 0..r {
        let mut v: Vec<BigRational> = rows[i]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for j in 0..i {
            let m = dot_int_rat(&rows[i], &ortho[j]) / &norms_sq[j];
            for (x, y) in v.iter_mut().zip(&ortho[j]) {
                *x -= &m * y;
            }
            mu[i][j] = m;
        }
        let n = dot_rat(&v, &v);
        assert!(!n.is_zero(), "rows must be linearly independent");
        let _ = dim;
        ortho.push(v);
        norms_sq.push(n);
    }
    GramSchmidt { mu, norms_sq }
}

struct LllState {
    rows: Vec<Vec<BigInt>>,
    ortho: Vec<Vec<BigRational>>,
    norms_sq: Vec<BigRational>,
    valid: usize, // prefix of ortho/norms that is up to date
}

impl LllState {
    fn new(rows: Vec<Vec<BigInt>>) -> Self {
        let n = rows.len();
        LllState {
            rows,
            ortho: Vec::with_capacity(n),
            norms_sq: Vec::with_capacity(n),
            valid: 0,
        }
    }

    fn invalidate(&mut self, from: usize) {
        if self.valid > from {
            self.ortho.truncate(from);
            self.norms_sq.truncate(from);
            self.valid = from;
        }
    }

    fn ensure(&mut self, upto: usize) {
        while self.valid <= upto {
            let i = self.valid;
            let mut v: Vec<BigRational> = self.rows[i]
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect();
            for j in 0..i {
                let m = dot_int_rat(&self.rows[i], &self.ortho[j]) / &self.norms_sq[j];
                for (x, y) in v.iter_mut().zip(&self.ortho[j]) {
                    *x -= &m * y;
                }
            }
            let n = dot_rat(&v, &v);
            assert!(!n.is_zero(), "rows must be linearly independent");
            self.ortho.push(v);
            self.norms_sq.push(n);
            self.valid = i + 1;
        }
    }

    fn mu(&mut self, i: usize, j: usize) -> BigRational {
        self.ensure(j);
        dot_int_rat(&self.rows[i], &self.ortho[j]) / &self.norms_sq[j]
    }
}

fn round_nearest(x: &BigRational) -> BigInt {
    // Nearest integer, ties rounded up.
    (x + BigRational::new(BigInt::one(), BigInt::from(2)))
        .floor()
        .to_integer()
}

/// LLL-reduces a list of independent integer rows in place and returns them.
pub(crate) fn lll_reduce_rows(rows: Vec<Vec<BigInt>>, delta: &BigRational) -> Vec<Vec<BigInt>> {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    assert!(
        delta > &quarter && delta < &BigRational::one(),
        "delta must lie in (1/4, 1)"
    );
    let r = rows.len();
    if r <= 1 {
        return rows;
    }
    let mut st = LllState::new(rows);
    let mut k = 1;
    while k < r {
        // Size-reduce row k against rows k-1 .. 0.
        for j in (0..k).rev() {
            let m = round_nearest(&st.mu(k, j));
            if !m.is_zero() {
                let src = st.rows[j].clone();
                for (x, y) in st.rows[k].iter_mut().zip(&src) {
                    *x -= &m * y;
                }
                st.invalidate(k);
            }
        }
        // Lovász condition between rows k-1 and k.
        let mu_k = st.mu(k, k - 1);
        st.ensure(k);
        let lhs = st.norms_sq[k].clone();
        let rhs = (delta - &mu_k * &mu_k) * &st.norms_sq[k - 1];
        if lhs >= rhs {
            k += 1;
        } else {
            st.rows.swap(k, k - 1);
            st.invalidate(k - 1);
            k = k.max(2) - 1;
        }
    }
    st.rows
}

/// Returns an LLL-reduced basis of the same lattice. `hnf` of the output
/// equals the lattice's canonical basis.
pub fn lll_reduce(lat: &Lattice, delta: &BigRational) -> BigMatrix {
    let rows = lll_reduce_rows(lat.basis().row_vecs(), delta);
    BigMatrix::from_rows(rows)
}

/// Checks size reduction and the Lovász condition; used by tests.
pub fn is_lll_reduced(rows: &[Vec<BigInt>], delta: &BigRational) -> bool {
    let gs = gram_schmidt(rows);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    for i in 0..rows.len() {
        for j in 0..i {
            if gs.mu[i][j].abs() > half {
                return false;
            }
        }
    }
    for k in 1..rows.len() {
        let mu = &gs.mu[k][k - 1];
        if gs.norms_sq[k] < (delta - mu * mu) * &gs.norms_sq[k - 1] {
            return false;
        }
    }
    true
}
