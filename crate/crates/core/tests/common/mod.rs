//! Independent oracles for the acceptance suite.
//!
//! Everything here recomputes results by a different method than the code
//! under test: lattice spectra by scanning a provably sufficient coordinate
//! box, and coset minima by Bellman recursion over a windowed shift space.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;

use fermat_lattices::matrix::{det, BigMatrix};
use fermat_lattices::Lattice;

/// Exhaustive box-scan spectrum: every coefficient vector inside the
/// inverse-Gram box is tried. For a vector `v = x * B` with `||v|| <= R`,
/// each coordinate satisfies `|x_i| <= R * sqrt((G^-1)_ii)`, where
/// `(G^-1)_ii = M_ii / det(G)` with `M_ii` the principal minor; so the box
/// with `radius_i = floor(sqrt(bound * M_ii / det))` provably contains all
/// solutions. Entirely independent of LLL and tree search.
pub fn box_scan_spectrum(lat: &Lattice, bound_sq: u64) -> BTreeMap<u64, u64> {
    let basis = lat.basis();
    let r = basis.rows();
    let gram = basis.mul(&basis.transpose());
    let g_det = det(&gram);
    assert!(g_det.is_positive(), "basis rows must be independent");
    let radii: Vec<i64> = (0..r)
        .map(|i| {
            let minor = principal_minor(&gram, i);
            floor_sqrt_ratio(&(BigInt::from(bound_sq) * minor), &g_det)
        })
        .collect();
    let mut spectrum = BTreeMap::new();
    let mut coeffs = vec![0i64; r];
    scan(basis, &radii, 0, &mut coeffs, bound_sq, &mut spectrum);
    spectrum
}

/// Number of points the box-scan oracle would visit; used to skip
/// pathologically skewed random instances.
pub fn box_scan_volume(lat: &Lattice, bound_sq: u64) -> u128 {
    let basis = lat.basis();
    let gram = basis.mul(&basis.transpose());
    let g_det = det(&gram);
    assert!(g_det.is_positive());
    (0..basis.rows())
        .map(|i| {
            let minor = principal_minor(&gram, i);
            2 * floor_sqrt_ratio(&(BigInt::from(bound_sq) * minor), &g_det) as u128 + 1
        })
        .product()
}

fn scan(
    basis: &BigMatrix,
    radii: &[i64],
    level: usize,
    coeffs: &mut Vec<i64>,
    bound_sq: u64,
    spectrum: &mut BTreeMap<u64, u64>,
) {
    if level == radii.len() {
        let mut v = vec![BigInt::zero(); basis.cols()];
        for (x, row_idx) in coeffs.iter().zip(0..basis.rows()) {
            if *x == 0 {
                continue;
            }
            for (out, y) in v.iter_mut().zip(basis.row(row_idx)) {
                *out += BigInt::from(*x) * y;
            }
        }
        let norm: BigInt = v.iter().map(|x| x * x).sum();
        let norm = norm.to_u64().expect("norm fits u64");
        if norm > 0 && norm <= bound_sq {
            *spectrum.entry(norm).or_insert(0) += 1;
        }
        return;
    }
    for x in -radii[level]..=radii[level] {
        coeffs[level] = x;
        scan(basis, radii, level + 1, coeffs, bound_sq, spectrum);
    }
    coeffs[level] = 0;
}

fn principal_minor(gram: &BigMatrix, skip: usize) -> BigInt {
    let n = gram.rows();
    if n == 1 {
        return BigInt::from(1);
    }
    let rows: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| i != skip)
        .map(|i| {
            (0..n)
                .filter(|&j| j != skip)
                .map(|j| gram.at(i, j).clone())
                .collect()
        })
        .collect();
    det(&BigMatrix::from_rows(rows))
}

/// Largest k with k^2 * den <= num.
fn floor_sqrt_ratio(num: &BigInt, den: &BigInt) -> i64 {
    let approx = (num.to_f64().unwrap_or(f64::MAX) / den.to_f64().unwrap()).sqrt() as i64;
    let fits = |k: i64| BigInt::from(k) * BigInt::from(k) * den <= *num;
    let mut k = approx.max(0);
    while !fits(k) {
        k -= 1;
    }
    while fits(k + 1) {
        k += 1;
    }
    k
}

/// Exact minimum of `sum x_i^2` over lifts `x_i = centered_i - n*t_i` with
/// `t_i` restricted to the window {-2..2} and `sum x_i = 0`, by Bellman
/// recursion over partial sums. Independent of the greedy allocation.
pub fn windowed_min_norm(residues: &[u8], n: usize) -> Option<u64> {
    let centered: Vec<i64> = residues
        .iter()
        .map(|&r| {
            let r = r as i64;
            if 2 * r > n as i64 {
                r - n as i64
            } else {
                r
            }
        })
        .collect();
    let mut states: BTreeMap<i64, u64> = BTreeMap::from([(0, 0)]);
    for &c in &centered {
        let mut next: BTreeMap<i64, u64> = BTreeMap::new();
        for (&sum, &cost) in &states {
            for t in -2i64..=2 {
                let x = c - n as i64 * t;
                let entry = next.entry(sum + x).or_insert(u64::MAX);
                *entry = (*entry).min(cost + (x * x) as u64);
            }
        }
        states = next;
    }
    states.get(&0).copied()
}

/// Random residue class with vanishing sum mod n.
pub fn random_residues(rng: &mut impl Rng, n: usize) -> Vec<u8> {
    let dim = 3 * n;
    loop {
        let mut residues: Vec<u8> = (0..dim - 1).map(|_| rng.gen_range(0..n) as u8).collect();
        let sum: u64 = residues.iter().map(|&r| r as u64).sum();
        let last = (n as u64 - sum % n as u64) % n as u64;
        residues.push(last as u8);
        if residues.iter().any(|&r| r != 0) {
            return residues;
        }
    }
}

/// Random integer matrix with entries in [-limit, limit].
pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, limit: i64) -> Vec<Vec<i64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-limit..=limit)).collect())
        .collect()
}
