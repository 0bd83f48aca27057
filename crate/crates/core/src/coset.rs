//! The coset oracle: a second, independent route to the norm spectrum.
//!
//! A degree-zero divisor lies in the lattice exactly when its residue mod n
//! lies in the span of the six standard generators, so the lattice splits
//! into residue classes. Per class the minimum-norm degree-zero lift is a
//! separable convex problem (solved greedily, exactly), and the number of
//! lifts per squared norm is counted by dynamic programming over the 3n
//! coordinates. Summing the per-class spectra over the whole span must
//! reproduce geometric enumeration entry for entry; nothing in this module
//! touches a lattice basis, which is what makes the cross-check meaningful.
//!
//! Residue representatives are centered into `(-n/2, n/2]`. For even n the
//! boundary residue n/2 has two shortest lifts; counting explores both,
//! while the deterministic witness starts from `+n/2`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet, VecDeque};

use crate::enumerate::NormSpectrum;
use crate::error::Error;
use crate::fermat::{rohrlich_generators, PlaceVector};

/// Largest n accepted by span enumeration by default (the closure holds up
/// to n^6 classes).
pub const DEFAULT_SPAN_LIMIT: usize = 12;

/// One residue class of the span, with the generator coefficients that
/// first produced it during the closure walk (absent for classes built
/// directly from residues, e.g. in tests).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetClass {
    residues: Vec<u8>,
    coeffs: Option<[u8; 6]>,
}

impl CosetClass {
    /// Wraps a raw residue vector; the residue sum must vanish mod n.
    pub fn from_residues(n: usize, residues: Vec<u8>) -> CosetClass {
        assert_eq!(residues.len(), 3 * n, "residue vector has wrong length");
        assert!(residues.iter().all(|&r| (r as usize) < n));
        let sum: u64 = residues.iter().map(|&r| r as u64).sum();
        assert_eq!(sum % n as u64, 0, "residue sum must vanish mod n");
        CosetClass {
            residues,
            coeffs: None,
        }
    }

    pub fn residues(&self) -> &[u8] {
        &self.residues
    }

    pub fn coefficients(&self) -> Option<[u8; 6]> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    fn n(&self) -> usize {
        self.residues.len() / 3
    }
}

/// All distinct elements of the mod-n span of the six generators,
/// discovered breadth-first from the zero class with dedup on the residue
/// vector (the generators can be dependent mod n, so coefficient tuples
/// would overcount).
pub fn span_elements(n: usize) -> Result<Vec<CosetClass>, Error> {
    span_elements_with_limit(n, DEFAULT_SPAN_LIMIT)
}

pub fn span_elements_with_limit(n: usize, limit: usize) -> Result<Vec<CosetClass>, Error> {
    if n > limit {
        return Err(Error::SpanTooLarge { n, limit });
    }
    let gens: Vec<Vec<u8>> = rohrlich_generators(n)
        .iter()
        .map(|g| {
            g.coeffs()
                .iter()
                .map(|&c| c.rem_euclid(n as i64) as u8)
                .collect()
        })
        .collect();
    let zero = CosetClass {
        residues: vec![0u8; 3 * n],
        coeffs: Some([0; 6]),
    };
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(zero.residues.clone());
    let mut classes = vec![zero];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(idx) = queue.pop_front() {
        let (base_res, base_coeffs) = {
            let c = &classes[idx];
            (
                c.residues.clone(),
                c.coeffs.expect("walk classes carry coefficients"),
            )
        };
        for (g, gen) in gens.iter().enumerate() {
            let mut res = base_res.clone();
            for (r, &add) in res.iter_mut().zip(gen) {
                let s = *r as usize + add as usize;
                *r = (s % n) as u8;
            }
            if seen.insert(res.clone()) {
                let mut coeffs = base_coeffs;
                coeffs[g] = ((coeffs[g] as usize + 1) % n) as u8;
                queue.push_back(classes.len());
                classes.push(CosetClass {
                    residues: res,
                    coeffs: Some(coeffs),
                });
            }
        }
    }
    Ok(classes)
}

/// Minimum-norm data for one residue class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetMinimum {
    pub norm_sq: u64,
    /// Number of distinct degree-zero lifts attaining the minimum.
    pub optimal_count: u64,
    /// One optimal lift, deterministically chosen.
    pub witness: PlaceVector,
}

fn centered_reps(residues: &[u8], n: usize) -> Vec<i64> {
    residues
        .iter()
        .map(|&r| {
            let r = r as i64;
            if 2 * r > n as i64 {
                r - n as i64
            } else {
                r
            }
        })
        .collect()
}

/// Exact minimum of `sum x_i^2` over integer `x` with `x == residues (mod n)`
/// and `sum x_i = 0`.
///
/// Starting from the centered representatives, the coordinate sum is off by
/// a multiple `k` of n; the fix applies `|k|` unit shifts of `-n` (or `+n`),
/// each time on the coordinate with the smallest marginal cost increase.
/// The per-coordinate cost is convex, so greedy marginal allocation is
/// exact for this separable resource problem.
pub fn min_norm_in_coset(class: &CosetClass, n: usize, exclude_zero: bool) -> CosetMinimum {
    assert_eq!(class.n(), n);
    if class.is_zero() && !exclude_zero {
        return CosetMinimum {
            norm_sq: 0,
            optimal_count: 1,
            witness: PlaceVector::zero(n),
        };
    }
    if class.is_zero() && exclude_zero {
        // Forced shape: the shortest nonzero lift of the zero class moves
        // one coordinate up by n and another down by n.
        let norm_sq = 2 * (n as u64) * (n as u64);
        let mut coeffs = vec![0i64; 3 * n];
        coeffs[0] = n as i64;
        coeffs[1] = -(n as i64);
        return CosetMinimum {
            norm_sq,
            optimal_count: count_lifts(class.residues(), n, norm_sq)
                .get(&norm_sq)
                .copied()
                .unwrap_or(0),
            witness: PlaceVector::from_coeffs(n, coeffs),
        };
    }
    let mut x = centered_reps(class.residues(), n);
    let total: i64 = x.iter().sum();
    debug_assert_eq!(total.rem_euclid(n as i64), 0);
    let k = total / n as i64;
    let step = if k >= 0 { -(n as i64) } else { n as i64 };
    let marginal = |v: i64| (v + step) * (v + step) - v * v;
    let mut heap: BinaryHeap<Reverse<(i64, usize)>> = x
        .iter()
        .enumerate()
        .map(|(i, &v)| Reverse((marginal(v), i)))
        .collect();
    for _ in 0..k.abs() {
        let Reverse((_, i)) = heap.pop().expect("heap holds every coordinate");
        x[i] += step;
        heap.push(Reverse((marginal(x[i]), i)));
    }
    debug_assert_eq!(x.iter().sum::<i64>(), 0);
    let norm_sq: u64 = x.iter().map(|&v| (v * v) as u64).sum();
    let optimal_count = count_lifts(class.residues(), n, norm_sq)
        .get(&norm_sq)
        .copied()
        .unwrap_or(0);
    debug_assert!(optimal_count >= 1);
    CosetMinimum {
        norm_sq,
        optimal_count,
        witness: PlaceVector::from_coeffs(n, x),
    }
}

fn isqrt(x: u64) -> u64 {
    let mut r = (x as f64).sqrt() as u64;
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    while r * r > x {
        r -= 1;
    }
    r
}

/// Counts the degree-zero lifts of a residue class by squared norm, up to
/// `bound_sq`, via dynamic programming over the coordinates with state
/// (running coordinate sum, running norm). The zero vector is dropped.
fn count_lifts(residues: &[u8], n: usize, bound_sq: u64) -> BTreeMap<u64, u64> {
    let dim = residues.len();
    let reach = isqrt(bound_sq) as i64;
    let mut cands: Vec<Vec<i64>> = Vec::with_capacity(dim);
    for &r in residues {
        let vals: Vec<i64> = (-reach..=reach)
            .filter(|x| x.rem_euclid(n as i64) == r as i64)
            .collect();
        if vals.is_empty() {
            return BTreeMap::new();
        }
        cands.push(vals);
    }
    // Suffix bounds for pruning: minimal possible remaining cost and the
    // reachable range of the remaining coordinate sum.
    let mut suf_cost = vec![0u64; dim + 1];
    let mut suf_min = vec![0i64; dim + 1];
    let mut suf_max = vec![0i64; dim + 1];
    for i in (0..dim).rev() {
        suf_cost[i] = suf_cost[i + 1] + cands[i].iter().map(|&x| (x * x) as u64).min().unwrap();
        suf_min[i] = suf_min[i + 1] + cands[i].iter().min().unwrap();
        suf_max[i] = suf_max[i + 1] + cands[i].iter().max().unwrap();
    }
    let mut states: HashMap<(i64, u64), u64> = HashMap::from([((0i64, 0u64), 1u64)]);
    for i in 0..dim {
        let mut next: HashMap<(i64, u64), u64> = HashMap::new();
        for ((sum, cost), count) in states {
            for &x in &cands[i] {
                let cost2 = cost + (x * x) as u64;
                if cost2 + suf_cost[i + 1] > bound_sq {
                    continue;
                }
                let sum2 = sum + x;
                if sum2 + suf_min[i + 1] > 0 || sum2 + suf_max[i + 1] < 0 {
                    continue;
                }
                *next.entry((sum2, cost2)).or_insert(0) += count;
            }
        }
        states = next;
    }
    let mut out = BTreeMap::new();
    for ((sum, cost), count) in states {
        if sum == 0 {
            *out.entry(cost).or_insert(0) += count;
        }
    }
    out.remove(&0);
    out
}

fn spectrum_limit(n: usize) -> u64 {
    10 * n as u64
}

/// Exact counts of degree-zero lifts of one class with squared norm at most
/// `bound_sq`. Bounds above 10n are refused to keep the DP table small.
pub fn coset_spectrum(class: &CosetClass, n: usize, bound_sq: u64) -> Result<NormSpectrum, Error> {
    assert_eq!(class.n(), n);
    if bound_sq > spectrum_limit(n) {
        return Err(Error::SpectrumBoundTooLarge {
            bound_sq,
            limit: spectrum_limit(n),
        });
    }
    let mut spectrum = NormSpectrum::new();
    for (norm, count) in count_lifts(class.residues(), n, bound_sq) {
        spectrum.record(norm, count);
    }
    Ok(spectrum)
}

/// Sum of the per-class spectra over the whole span: the lattice's norm
/// spectrum up to `bound_sq`, computed without ever touching a basis.
pub fn merged_coset_spectrum(n: usize, bound_sq: u64) -> Result<NormSpectrum, Error> {
    if bound_sq > spectrum_limit(n) {
        return Err(Error::SpectrumBoundTooLarge {
            bound_sq,
            limit: spectrum_limit(n),
        });
    }
    let classes = span_elements(n)?;
    let mut merged = NormSpectrum::new();
    for class in &classes {
        // Cheap lower bound first: the centered representatives minimize
        // each coordinate independently.
        let floor: u64 = centered_reps(class.residues(), n)
            .iter()
            .map(|&v| (v * v) as u64)
            .sum();
        if floor > bound_sq {
            continue;
        }
        if !class.is_zero() && min_norm_in_coset(class, n, true).norm_sq > bound_sq {
            continue;
        }
        for (norm, count) in count_lifts(class.residues(), n, bound_sq) {
            merged.record(norm, count);
        }
    }
    Ok(merged)
}

/// The first two distinct norms of the merged spectrum. The search bound 6n
/// always suffices: 2n is realized by the side-sum differences and 6n by
/// coefficient patterns like 2A - B - C.
pub fn second_minimum_via_cosets(n: usize) -> Result<(u64, u64), Error> {
    let spectrum = merged_coset_spectrum(n, 6 * n as u64)?;
    spectrum
        .distinct(1)
        .ok_or_else(|| Error::Parse(format!("spectrum of degree {n} has fewer than two shells")))
}

/// `2 * sum_(j=0)^(n-1) (m1 + j)^2`, evaluated in closed form.
pub fn closed_form_phi(m1: i64, n: usize) -> i64 {
    let n_i = n as i64;
    let sum_j = n_i * (n_i - 1) / 2;
    let sum_j_sq = (n_i - 1) * n_i * (2 * n_i - 1) / 6;
    2 * (n_i * m1 * m1 + 2 * m1 * sum_j + sum_j_sq)
}

/// `2 * sum_(j=0)^(n-1) (m1 - j)^2`, evaluated in closed form.
pub fn closed_form_psi(m1: i64, n: usize) -> i64 {
    let n_i = n as i64;
    let sum_j = n_i * (n_i - 1) / 2;
    let sum_j_sq = (n_i - 1) * n_i * (2 * n_i - 1) / 6;
    2 * (n_i * m1 * m1 - 2 * m1 * sum_j + sum_j_sq)
}

/// `-n*m1^2 + n^2*m1`: the squared norm of the aligned-support divisors.
pub fn closed_form_mu(m1: i64, n: usize) -> i64 {
    let n_i = n as i64;
    -n_i * m1 * m1 + n_i * n_i * m1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fermat::{side_sum, Side};

    fn class_of(v: &PlaceVector, n: usize) -> CosetClass {
        CosetClass::from_residues(
            n,
            v.coeffs()
                .iter()
                .map(|&c| c.rem_euclid(n as i64) as u8)
                .collect(),
        )
    }

    #[test]
    fn span_count_n4() {
        let classes = span_elements(4).unwrap();
        assert_eq!(classes.len(), 2048);
        assert!(classes[0].is_zero());
    }

    #[test]
    fn span_count_n5() {
        // The six generators are independent mod 5, so the span is all of
        // (Z/5)^6 worth of combinations: 5^6 elements. Together with the
        // class group order 5^8 this accounts for all 5^14 degree-zero
        // residue vectors.
        let classes = span_elements(5).unwrap();
        assert_eq!(classes.len(), 5usize.pow(6));
    }

    #[test]
    fn span_limit_is_enforced() {
        assert!(matches!(
            span_elements(13),
            Err(Error::SpanTooLarge { n: 13, limit: 12 })
        ));
        assert!(span_elements_with_limit(13, 12).is_err());
    }

    #[test]
    fn zero_class_minimum_n5() {
        let zero = CosetClass::from_residues(5, vec![0; 15]);
        let m = min_norm_in_coset(&zero, 5, true);
        assert_eq!(m.norm_sq, 50);
        assert_eq!(m.witness.degree(), 0);
        assert_eq!(m.witness.norm_sq(), 50);
        // n*(e_i - e_j) over 15 coordinates: 15 * 14 ordered pairs.
        assert_eq!(m.optimal_count, 15 * 14);
    }

    #[test]
    fn class_of_x_divisor_n6() {
        let n = 6;
        let x = &side_sum(n, Side::A) - &side_sum(n, Side::C);
        let m = min_norm_in_coset(&class_of(&x, n), n, false);
        assert_eq!(m.norm_sq, 12);
        assert_eq!(m.witness, x);
    }

    #[test]
    fn aligned_combination_class_n7() {
        // Coefficients (2, -1, -1) on the side sums: norm 6n.
        let n = 7;
        let v = &(&side_sum(n, Side::A).scaled(2) - &side_sum(n, Side::B)) - &side_sum(n, Side::C);
        let m = min_norm_in_coset(&class_of(&v, n), n, false);
        assert_eq!(m.norm_sq, 42);
    }

    #[test]
    fn zero_class_spectrum_is_empty_below_2n_sq() {
        let zero = CosetClass::from_residues(4, vec![0; 12]);
        let s = coset_spectrum(&zero, 4, 12).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn x_divisor_class_spectrum_n4() {
        let n = 4;
        let x = &side_sum(n, Side::A) - &side_sum(n, Side::C);
        let s = coset_spectrum(&class_of(&x, n), n, 8).unwrap();
        assert_eq!(s.entries(), vec![(8, 1)]);
    }

    #[test]
    fn spectrum_bound_is_enforced() {
        let zero = CosetClass::from_residues(4, vec![0; 12]);
        assert!(matches!(
            coset_spectrum(&zero, 4, 41),
            Err(Error::SpectrumBoundTooLarge { .. })
        ));
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_phi(-3, 7), 56); // (n-1)n(n+1)/6 at m1 = (1-n)/2
        assert_eq!(closed_form_phi(-3, 6), 38); // n(n^2+2)/6 at m1 = -n/2
        assert_eq!(closed_form_phi(-2, 6), 38); // and at m1 = 1 - n/2
        assert_eq!(closed_form_mu(1, 5), 20);
        assert_eq!(closed_form_psi(3, 7), 56);
    }

    #[test]
    fn closed_forms_match_literal_summation() {
        for n in 3..=9usize {
            for m1 in -12..=12i64 {
                let phi_lit: i64 = (0..n as i64).map(|j| 2 * (m1 + j) * (m1 + j)).sum();
                let psi_lit: i64 = (0..n as i64).map(|j| 2 * (m1 - j) * (m1 - j)).sum();
                assert_eq!(closed_form_phi(m1, n), phi_lit);
                assert_eq!(closed_form_psi(m1, n), psi_lit);
            }
        }
    }

    #[test]
    fn phi_argmin_parity_rule() {
        for n in 4..=9usize {
            let lo = -(2 * n as i64);
            let hi = 2 * n as i64;
            let min_val = (lo..=hi).map(|m| closed_form_phi(m, n)).min().unwrap();
            let argmins: Vec<i64> = (lo..=hi)
                .filter(|&m| closed_form_phi(m, n) == min_val)
                .collect();
            if n % 2 == 1 {
                assert_eq!(argmins, vec![(1 - n as i64) / 2]);
            } else {
                assert_eq!(argmins, vec![-(n as i64) / 2, 1 - n as i64 / 2]);
            }
        }
    }

    #[test]
    fn second_minimum_examples() {
        // Values are what exact computation finds; each is cross-checked
        // against geometric enumeration in the acceptance suite. For n = 5
        // the class with all six generator coefficients equal to 1 lifts
        // to vectors with twelve +-1 entries, so the second shell sits at
        // 12 rather than at n^2 - n.
        assert_eq!(second_minimum_via_cosets(4).unwrap(), (12, 440));
        assert_eq!(second_minimum_via_cosets(5).unwrap(), (12, 50));
        assert_eq!(second_minimum_via_cosets(7).unwrap(), (42, 342));
        assert_eq!(second_minimum_via_cosets(8).unwrap(), (48, 30));
    }

    #[test]
    fn witness_determinism_on_even_boundary() {
        // Residues n/2 everywhere force boundary ties; the witness must be
        // reproducible.
        let n = 4;
        let residues = vec![2u8; 12];
        let class = CosetClass::from_residues(n, residues);
        let a = min_norm_in_coset(&class, n, false);
        let b = min_norm_in_coset(&class, n, false);
        assert_eq!(a, b);
        assert_eq!(a.witness.degree(), 0);
        assert_eq!(a.witness.norm_sq(), a.norm_sq);
    }

    #[test]
    fn coset_class_rejects_bad_residues() {
        let ok = CosetClass::from_residues(4, {
            let mut r = vec![0u8; 12];
            r[0] = 3;
            r[1] = 1;
            r
        });
        assert!(!ok.is_zero());
        let res = std::panic::catch_unwind(|| {
            CosetClass::from_residues(4, {
                let mut r = vec![0u8; 12];
                r[0] = 1;
                r
            })
        });
        assert!(res.is_err(), "nonzero residue sum must be rejected");
    }
}
