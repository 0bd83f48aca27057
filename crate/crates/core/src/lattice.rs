//! Integer lattices with a canonical Hermite-normal-form basis.
//!
//! Two lattices are equal exactly when their canonical bases are equal,
//! which makes lattice equality a plain structural comparison.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::matrix::{self, BigMatrix, SmithForm};

/// A lattice in `Z^ambient_dim`, stored as its canonical HNF basis
/// (one row per basis vector; row count = rank).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient_dim: usize,
    basis: BigMatrix,
}

impl Lattice {
    /// Lattice generated by the given vectors. The generator list may be
    /// redundant or empty (the zero-rank lattice is allowed).
    pub fn from_generators(ambient_dim: usize, gens: &[Vec<i64>]) -> Lattice {
        let rows = gens
            .iter()
            .map(|g| {
                assert_eq!(g.len(), ambient_dim, "generator has wrong length");
                g.iter().map(|&x| BigInt::from(x)).collect()
            })
            .collect();
        Self::from_big_generators(ambient_dim, rows)
    }

    pub fn from_big_generators(ambient_dim: usize, gens: Vec<Vec<BigInt>>) -> Lattice {
        for g in &gens {
            assert_eq!(g.len(), ambient_dim, "generator has wrong length");
        }
        let mut m = BigMatrix::from_rows(gens);
        if m.rows() == 0 {
            m = BigMatrix::zeros(0, ambient_dim);
        }
        let basis = matrix::hnf(&m);
        Lattice { ambient_dim, basis }
    }

    /// Wraps an existing canonical basis, verifying that it really is in
    /// HNF (used when loading cached bases).
    pub fn from_hnf_basis(basis: BigMatrix) -> Result<Lattice, Error> {
        if matrix::hnf(&basis) != basis {
            return Err(Error::CacheMismatch(
                "basis rows are not in canonical Hermite normal form".into(),
            ));
        }
        Ok(Lattice {
            ambient_dim: basis.cols(),
            basis,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &BigMatrix {
        &self.basis
    }

    /// True iff `v` is an integer combination of the basis rows.
    pub fn contains(&self, v: &[i64]) -> bool {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.coords_of(&big).is_some()
    }

    /// Coefficients of `v` in the canonical basis, if `v` lies in the
    /// lattice. Exact back-substitution against the HNF.
    pub fn coords_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.ambient_dim, "vector has wrong length");
        if self.rank() == 0 {
            return v.iter().all(Zero::is_zero).then(Vec::new);
        }
        matrix::solve_in_hnf(&self.basis, v)
    }
}

/// The root lattice of integer vectors in `Z^m` with zero coordinate sum,
/// generated by `e_i - e_(i+1)` for `i = 1 .. m-1` (rank `m - 1`).
pub fn a_root_lattice(m: usize) -> Lattice {
    assert!(m >= 2, "ambient dimension must be at least 2");
    let mut gens = Vec::with_capacity(m - 1);
    for i in 0..m - 1 {
        let mut v = vec![0i64; m];
        v[i] = 1;
        v[i + 1] = -1;
        gens.push(v);
    }
    Lattice::from_generators(m, &gens)
}

/// Invariant factors of the quotient group `sup / sub`.
///
/// Requires `sub` to be a finite-index sublattice of `sup`: every basis row
/// of `sub` must be an integer combination of `sup`'s basis and the ranks
/// must agree. The product of the factors is the index.
pub fn quotient_invariants(sup: &Lattice, sub: &Lattice) -> Result<SmithForm, Error> {
    assert_eq!(
        sup.ambient_dim(),
        sub.ambient_dim(),
        "ambient dimensions differ"
    );
    if sub.rank() != sup.rank() {
        return Err(Error::InfiniteIndex {
            sup: sup.rank(),
            sub: sub.rank(),
        });
    }
    let mut coeff_rows = Vec::with_capacity(sub.rank());
    for r in 0..sub.rank() {
        let coords = sup
            .coords_of(sub.basis().row(r))
            .ok_or(Error::NotSublattice { row: r })?;
        coeff_rows.push(coords);
    }
    if coeff_rows.is_empty() {
        return Ok(SmithForm {
            invariant_factors: Vec::new(),
        });
    }
    Ok(matrix::snf(&BigMatrix::from_rows(coeff_rows)))
}
