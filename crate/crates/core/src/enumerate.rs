//! Bounded shortest-vector enumeration with exact arithmetic.
//!
//! Depth-first search over Gram-Schmidt levels from the last basis vector
//! down to the first, with candidate integers at each level ordered
//! center-outward around the Babai midpoint. All Gram-Schmidt data is kept
//! as exact rationals, so the returned counts and squared norms are exact
//! integers, not floating-point estimates.
//!
//! Only one representative of each `v / -v` pair is walked (the one whose
//! highest-index nonzero coefficient is positive); counts are doubled on
//! output. A node budget turns runaway searches into an explicit error
//! instead of an OOM or a silently truncated spectrum.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;
use crate::lattice::Lattice;
use crate::lll::{self, GramSchmidt};
use crate::matrix::{self, BigMatrix};

/// Exact counts of lattice vectors grouped by squared norm.
///
/// For a full-lattice spectrum the counts include both signs of every
/// `v / -v` pair, so they are even; per-coset spectra need not be.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormSpectrum {
    counts: BTreeMap<u64, u64>,
}

impl NormSpectrum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, norm_sq: u64, count: u64) {
        if count > 0 {
            *self.counts.entry(norm_sq).or_insert(0) += count;
        }
    }

    pub fn merge(&mut self, other: &NormSpectrum) {
        for (&n, &c) in &other.counts {
            self.record(n, c);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sorted `(norm_sq, count)` pairs.
    pub fn entries(&self) -> Vec<(u64, u64)> {
        self.counts.iter().map(|(&n, &c)| (n, c)).collect()
    }

    pub fn count_at(&self, norm_sq: u64) -> u64 {
        self.counts.get(&norm_sq).copied().unwrap_or(0)
    }

    /// The k-th distinct squared norm (0-indexed) with its count.
    pub fn distinct(&self, k: usize) -> Option<(u64, u64)> {
        self.counts.iter().nth(k).map(|(&n, &c)| (n, c))
    }

    pub fn min(&self) -> Option<(u64, u64)> {
        self.distinct(0)
    }
}

/// Knobs for enumeration. `capture` additionally returns the vectors found
/// (one canonical representative per `v / -v` pair).
#[derive(Clone, Debug)]
pub struct EnumConfig {
    pub node_budget: u64,
    pub capture: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            node_budget: 1_000_000_000,
            capture: false,
        }
    }
}

/// Result of a bounded enumeration.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub spectrum: NormSpectrum,
    /// Canonical representatives (lexicographically sorted ambient
    /// vectors), present when capture was requested.
    pub vectors: Option<Vec<Vec<i64>>>,
}

/// Everything `minima` finds about the shortest nonzero vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimaReport {
    pub min_norm_sq: u64,
    /// All minimal vectors, both signs, lexicographically sorted.
    pub minimal_vectors: Vec<Vec<i64>>,
    pub kissing: u64,
    pub minimal_span_rank: usize,
    pub well_rounded: bool,
}

struct SearchCtx<'a> {
    rows: &'a [Vec<BigInt>],
    mu: &'a [Vec<BigRational>],
    norms_sq: &'a [BigRational],
    bound: BigRational,
    budget: u64,
    nodes: u64,
    capture: bool,
    spectrum: BTreeMap<u64, u64>,
    reps: Vec<Vec<i64>>,
}

impl SearchCtx<'_> {
    fn spend_node(&mut self) -> Result<(), Error> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        Ok(())
    }

    fn record_leaf(&mut self, coeffs: &[i64], rho: &BigRational) {
        debug_assert!(rho.is_integer(), "squared norm must be an integer");
        let norm_sq = rho.to_integer().to_u64().expect("norm fits in u64");
        // The walked representative stands for the pair {v, -v}.
        *self.spectrum.entry(norm_sq).or_insert(0) += 2;
        if self.capture {
            self.reps.push(ambient_vector(self.rows, coeffs));
        }
    }

    fn search(
        &mut self,
        level: usize,
        rho: BigRational,
        zero_prefix: bool,
        coeffs: &mut [i64],
    ) -> Result<(), Error> {
        let remaining = &self.bound - &rho;
        // Center of the admissible interval at this level.
        let mut center = BigRational::zero();
        for (i, &c) in coeffs.iter().enumerate().skip(level + 1) {
            if c != 0 {
                center -= BigRational::from_integer(BigInt::from(c)) * &self.mu[i][level];
            }
        }
        let level_norm = &self.norms_sq[level];

        let descend = |ctx: &mut Self, x: i64, coeffs: &mut [i64]| -> Result<bool, Error> {
            let offset = BigRational::from_integer(BigInt::from(x)) - &center;
            let cost = &offset * &offset * level_norm;
            if cost > remaining {
                return Ok(false);
            }
            ctx.spend_node()?;
            coeffs[level] = x;
            let next_rho = &rho + cost;
            let next_zero = zero_prefix && x == 0;
            if level == 0 {
                if !next_zero {
                    ctx.record_leaf(coeffs, &next_rho);
                }
            } else {
                ctx.search(level - 1, next_rho, next_zero, coeffs)?;
            }
            Ok(true)
        };

        if zero_prefix {
            // All higher coefficients are zero, so the center is zero and
            // negative candidates would repeat mirrored vectors.
            debug_assert!(center.is_zero());
            let mut x = 0i64;
            while descend(self, x, coeffs)? {
                x += 1;
            }
        } else {
            let start = round_nearest(&center);
            if !descend(self, start, coeffs)? {
                coeffs[level] = 0;
                return Ok(());
            }
            // Zigzag outward; each direction is monotone in cost, so a
            // failed step kills that direction.
            let mut lo = start - 1;
            let mut hi = start + 1;
            let mut lo_alive = true;
            let mut hi_alive = true;
            let center_x2 = &center + &center;
            while lo_alive || hi_alive {
                let pick_lo = if lo_alive && hi_alive {
                    // |lo - c| <= |hi - c|  <=>  lo + hi <= 2c.
                    BigRational::from_integer(BigInt::from(lo + hi)) <= center_x2
                } else {
                    lo_alive
                };
                if pick_lo {
                    lo_alive = descend(self, lo, coeffs)?;
                    lo -= 1;
                } else {
                    hi_alive = descend(self, hi, coeffs)?;
                    hi += 1;
                }
            }
        }
        coeffs[level] = 0;
        Ok(())
    }
}

fn round_nearest(x: &BigRational) -> i64 {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    (x + half)
        .floor()
        .to_integer()
        .to_i64()
        .expect("enumeration center out of i64 range")
}

fn ambient_vector(rows: &[Vec<BigInt>], coeffs: &[i64]) -> Vec<i64> {
    let dim = rows[0].len();
    let mut v = vec![BigInt::zero(); dim];
    for (x, row) in coeffs.iter().zip(rows) {
        if *x == 0 {
            continue;
        }
        let k = BigInt::from(*x);
        for (out, y) in v.iter_mut().zip(row) {
            *out += &k * y;
        }
    }
    v.into_iter()
        .map(|x| x.to_i64().expect("vector entry fits in i64"))
        .collect()
}

impl Lattice {
    /// Exact counts of all nonzero lattice vectors `v` with
    /// `||v||^2 <= bound_sq`, grouped by squared norm.
    ///
    /// The basis is LLL-preprocessed first; search effort beyond the
    /// configured node budget is an error, never a truncated answer.
    pub fn enumerate_up_to(&self, bound_sq: u64, cfg: &EnumConfig) -> Result<Enumeration, Error> {
        if self.rank() == 0 || bound_sq == 0 {
            return Ok(Enumeration {
                spectrum: NormSpectrum::new(),
                vectors: cfg.capture.then(Vec::new),
            });
        }
        let reduced = lll::lll_reduce_rows(self.basis().row_vecs(), &lll::default_delta());
        let GramSchmidt { mu, norms_sq } = lll::gram_schmidt(&reduced);
        let mut ctx = SearchCtx {
            rows: &reduced,
            mu: &mu,
            norms_sq: &norms_sq,
            bound: BigRational::from_integer(BigInt::from(bound_sq)),
            budget: cfg.node_budget,
            nodes: 0,
            capture: cfg.capture,
            spectrum: BTreeMap::new(),
            reps: Vec::new(),
        };
        let mut coeffs = vec![0i64; reduced.len()];
        ctx.search(reduced.len() - 1, BigRational::zero(), true, &mut coeffs)?;
        let spectrum = NormSpectrum {
            counts: ctx.spectrum,
        };
        let vectors = if cfg.capture {
            let mut reps = ctx.reps;
            reps.sort_unstable();
            Some(reps)
        } else {
            None
        };
        Ok(Enumeration { spectrum, vectors })
    }

    /// Minimum squared norm, the full set of minimal vectors (both signs),
    /// the kissing number and whether the lattice is well-rounded.
    ///
    /// The search radius is initialized from the shortest LLL basis vector,
    /// which always dominates the true minimum.
    pub fn minima(&self, cfg: &EnumConfig) -> Result<MinimaReport, Error> {
        assert!(self.rank() >= 1, "minima of the zero lattice");
        let reduced = lll::lll_reduce_rows(self.basis().row_vecs(), &lll::default_delta());
        let radius_sq = reduced
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x * x)
                    .sum::<BigInt>()
                    .to_u64()
                    .expect("basis norm fits in u64")
            })
            .min()
            .expect("nonempty basis");
        let run = self.enumerate_up_to(
            radius_sq,
            &EnumConfig {
                node_budget: cfg.node_budget,
                capture: true,
            },
        )?;
        let (min_norm_sq, count) = run
            .spectrum
            .min()
            .expect("a basis vector realizes the search radius");
        let reps = run.vectors.expect("capture was requested");
        let mut minimal_vectors: Vec<Vec<i64>> = reps
            .into_iter()
            .filter(|v| norm_sq_i64(v) == min_norm_sq)
            .collect();
        let negated: Vec<Vec<i64>> = minimal_vectors
            .iter()
            .map(|v| v.iter().map(|&x| -x).collect())
            .collect();
        minimal_vectors.extend(negated);
        minimal_vectors.sort_unstable();
        debug_assert_eq!(minimal_vectors.len() as u64, count);
        let span = BigMatrix::from_i64_rows(&minimal_vectors);
        let minimal_span_rank = matrix::rank(&span);
        Ok(MinimaReport {
            min_norm_sq,
            kissing: count,
            well_rounded: minimal_span_rank == self.rank(),
            minimal_span_rank,
            minimal_vectors,
        })
    }
}

pub(crate) fn norm_sq_i64(v: &[i64]) -> u64 {
    v.iter().map(|&x| (x as i128) * (x as i128)).sum::<i128>() as u64
}
