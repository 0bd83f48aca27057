//! The Fermat-specific layer: places, divisors, generators, builder and
//! closed-form parameter predictions.
//!
//! For the degree-n curve `X^n + Y^n = Z^n` the 3n places with exactly one
//! vanishing coordinate split into three sides of a triangle: the `a_j` on
//! `X = 0`, the `b_j` on `Y = 0` and the `c_j` on `Z = 0`. Divisors
//! supported on them are integer vectors of length 3n in the fixed global
//! ordering `a_0 .. a_(n-1), b_0 .., c_0 ..`; the roots of unity that pin
//! the individual points down never need a numerical representation, only
//! the combinatorial labels matter.
//!
//! A degree-zero divisor is principal exactly when its reduction mod n lies
//! in the span of six standard generators (Rohrlich's characterization):
//! the three side sums, the two linear ramps `sum j*(a_j + b_j)`,
//! `sum j*(b_j + c_j)`, and the quadratic ramp `sum j(j+1)*(a_j+b_j+c_j)`.
//! The lattice built here is the set of all such divisors.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::lattice::Lattice;

/// Which side of the coordinate triangle a place lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
    C,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::A, Side::B, Side::C];

    fn offset(self) -> usize {
        match self {
            Side::A => 0,
            Side::B => 1,
            Side::C => 2,
        }
    }
}

/// One of the 3n places, identified by side and index `j` in `0 .. n-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Place {
    pub side: Side,
    pub j: usize,
}

pub fn place(side: Side, j: usize) -> Place {
    Place { side, j }
}

impl Place {
    /// Coordinate in the global place ordering.
    pub fn index(&self, n: usize) -> usize {
        debug_assert!(self.j < n);
        self.side.offset() * n + self.j
    }
}

/// An integer divisor supported on the 3n places: a coefficient vector in
/// the global place ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaceVector {
    n: usize,
    coeffs: Vec<i64>,
}

impl PlaceVector {
    pub fn zero(n: usize) -> Self {
        PlaceVector {
            n,
            coeffs: vec![0; 3 * n],
        }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<i64>) -> Self {
        assert_eq!(coeffs.len(), 3 * n, "coefficient vector has wrong length");
        PlaceVector { n, coeffs }
    }

    /// Builds a divisor from a coefficient rule per place.
    pub fn from_fn(n: usize, f: impl Fn(Side, usize) -> i64) -> Self {
        let mut v = Self::zero(n);
        for side in Side::ALL {
            for j in 0..n {
                v.coeffs[place(side, j).index(n)] = f(side, j);
            }
        }
        v
    }

    pub fn unit(n: usize, p: Place) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[p.index(n)] = 1;
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, p: Place) -> i64 {
        self.coeffs[p.index(self.n)]
    }

    pub fn add_at(&mut self, p: Place, k: i64) {
        let idx = p.index(self.n);
        self.coeffs[idx] += k;
    }

    /// Degree of the divisor: the coefficient sum.
    pub fn degree(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Degree of a function with this principal divisor: the sum of the
    /// positive coefficients (= zero-divisor degree).
    pub fn function_degree(&self) -> u64 {
        self.coeffs.iter().filter(|&&c| c > 0).sum::<i64>() as u64
    }

    pub fn norm_sq(&self) -> u64 {
        crate::enumerate::norm_sq_i64(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        PlaceVector {
            n: self.n,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }
}

impl std::ops::Add for &PlaceVector {
    type Output = PlaceVector;
    fn add(self, rhs: &PlaceVector) -> PlaceVector {
        assert_eq!(self.n, rhs.n);
        PlaceVector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl std::ops::Sub for &PlaceVector {
    type Output = PlaceVector;
    fn sub(self, rhs: &PlaceVector) -> PlaceVector {
        assert_eq!(self.n, rhs.n);
        PlaceVector {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl std::ops::Neg for &PlaceVector {
    type Output = PlaceVector;
    fn neg(self) -> PlaceVector {
        self.scaled(-1)
    }
}

/// Sum of all places on one side (the divisor cut out by that side's line).
pub fn side_sum(n: usize, side: Side) -> PlaceVector {
    PlaceVector::from_fn(n, |s, _| if s == side { 1 } else { 0 })
}

/// The six standard generators of the residue span, in the fixed order
/// side sums A, B, C, then the two linear ramps, then the quadratic ramp.
pub fn rohrlich_generators(n: usize) -> Vec<PlaceVector> {
    assert!(n >= 3, "the construction needs n >= 3");
    let linear_ab = PlaceVector::from_fn(n, |s, j| match s {
        Side::A | Side::B => j as i64,
        Side::C => 0,
    });
    let linear_bc = PlaceVector::from_fn(n, |s, j| match s {
        Side::B | Side::C => j as i64,
        Side::A => 0,
    });
    let quadratic = PlaceVector::from_fn(n, |_, j| (j * (j + 1)) as i64);
    vec![
        side_sum(n, Side::A),
        side_sum(n, Side::B),
        side_sum(n, Side::C),
        linear_ab,
        linear_bc,
        quadratic,
    ]
}

/// Projects a divisor whose degree is a multiple of n to degree zero by
/// subtracting the excess at the base place `a_0`. The result is congruent
/// to the input mod n.
pub fn degree_zero_lift(g: &PlaceVector) -> Result<PlaceVector, Error> {
    let n = g.n();
    let degree = g.degree();
    if degree.rem_euclid(n as i64) != 0 {
        return Err(Error::DegreeNotMultiple { degree, n });
    }
    let mut lifted = g.clone();
    lifted.add_at(place(Side::A, 0), -degree);
    Ok(lifted)
}

/// Builds the lattice of principal divisors supported on the 3n places:
/// generated by `n * (e_i - e_(i+1))` together with the degree-zero lifts
/// of the six standard generators. Rank is always `3n - 1`.
pub fn build_lattice(n: usize) -> Lattice {
    assert!(n >= 3, "the construction needs n >= 3");
    let dim = 3 * n;
    let mut gens: Vec<Vec<i64>> = Vec::with_capacity(dim + 5);
    for i in 0..dim - 1 {
        let mut v = vec![0i64; dim];
        v[i] = n as i64;
        v[i + 1] = -(n as i64);
        gens.push(v);
    }
    for g in rohrlich_generators(n) {
        let lift = degree_zero_lift(&g).expect("generator degrees are multiples of n");
        gens.push(lift.coeffs().to_vec());
    }
    let lat = Lattice::from_generators(dim, &gens);
    assert_eq!(lat.rank(), dim - 1, "generator set must have rank 3n - 1");
    lat
}

/// Decides residue-span membership for degree-zero divisors.
///
/// Internally this is the full-rank lattice generated by the six standard
/// generators together with `n * Z^(3n)`: a vector reduces into the span
/// mod n exactly when it lies in that lattice. Build once and reuse when
/// testing many vectors.
pub struct SpanMembership {
    n: usize,
    preimage: Lattice,
}

impl SpanMembership {
    pub fn new(n: usize) -> Self {
        let dim = 3 * n;
        let mut gens: Vec<Vec<i64>> = rohrlich_generators(n)
            .iter()
            .map(|g| g.coeffs().to_vec())
            .collect();
        for i in 0..dim {
            let mut v = vec![0i64; dim];
            v[i] = n as i64;
            gens.push(v);
        }
        let preimage = Lattice::from_generators(dim, &gens);
        debug_assert_eq!(preimage.rank(), dim);
        SpanMembership { n, preimage }
    }

    /// True iff the divisor has degree zero and its reduction mod n lies in
    /// the span of the six generators.
    pub fn contains(&self, v: &PlaceVector) -> bool {
        assert_eq!(v.n(), self.n);
        v.degree() == 0 && self.preimage.contains(v.coeffs())
    }
}

/// One-shot convenience for [`SpanMembership::contains`].
pub fn membership_mod_n(v: &PlaceVector, n: usize) -> bool {
    SpanMembership::new(n).contains(v)
}

/// A named function together with its principal divisor and degree.
#[derive(Clone, Debug)]
pub struct NamedDivisor {
    pub name: String,
    pub vector: PlaceVector,
    pub degree: u64,
}

/// The standard table of functions supported on the 3n places.
pub fn standard_function_divisors(n: usize) -> Vec<NamedDivisor> {
    assert!(n >= 3);
    let a = side_sum(n, Side::A);
    let b = side_sum(n, Side::B);
    let c = side_sum(n, Side::C);
    let deg_n = n as u64;
    let mut out = vec![
        NamedDivisor {
            name: "x".into(),
            vector: &a - &c,
            degree: deg_n,
        },
        NamedDivisor {
            name: "y".into(),
            vector: &b - &c,
            degree: deg_n,
        },
    ];
    for j in 0..n {
        let aj = PlaceVector::unit(n, place(Side::A, j)).scaled(n as i64);
        let bj = PlaceVector::unit(n, place(Side::B, j)).scaled(n as i64);
        let cj = PlaceVector::unit(n, place(Side::C, j)).scaled(n as i64);
        out.push(NamedDivisor {
            name: format!("x-zeta^{j}"),
            vector: &bj - &c,
            degree: deg_n,
        });
        out.push(NamedDivisor {
            name: format!("y-zeta^{j}"),
            vector: &aj - &c,
            degree: deg_n,
        });
        out.push(NamedDivisor {
            name: format!("(y-zeta^{j})/x"),
            vector: &aj - &a,
            degree: deg_n - 1,
        });
        out.push(NamedDivisor {
            name: format!("(x-zeta^{j})/y"),
            vector: &bj - &b,
            degree: deg_n - 1,
        });
        out.push(NamedDivisor {
            name: format!("x-eps*zeta^{j}*y"),
            vector: &cj - &c,
            degree: deg_n - 1,
        });
    }
    out.push(NamedDivisor {
        name: "1/x".into(),
        vector: &c - &a,
        degree: deg_n,
    });
    out.push(NamedDivisor {
        name: "1/y".into(),
        vector: &c - &b,
        degree: deg_n,
    });
    out.push(NamedDivisor {
        name: "x/y".into(),
        vector: &a - &b,
        degree: deg_n,
    });
    out.push(NamedDivisor {
        name: "y/x".into(),
        vector: &b - &a,
        degree: deg_n,
    });
    out
}

/// Closed-form parameter predictions the computation is checked against.
///
/// For n = 3 the lattice is elliptic: the minimum is 4 and the lattice is
/// well-rounded, while kissing number and second minimum carry no
/// prediction and are only reported.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredictedParameters {
    pub n: usize,
    pub gonality: u64,
    pub genus: u64,
    pub rank: usize,
    pub min_norm_sq: u64,
    pub kissing: Option<u64>,
    pub second_min_sq: Option<u64>,
    pub vol_sq: BigInt,
    pub class_invariants: Vec<BigInt>,
    pub well_rounded: bool,
}

/// Predicted squared volume `3n * n^(2(3n-7))`, times 4 for even n.
pub fn predicted_vol_sq(n: usize) -> BigInt {
    let base = BigInt::from(n);
    let mut v = BigInt::from(3 * n) * base.pow(2 * (3 * n as u32 - 7));
    if n.is_multiple_of(2) {
        v *= 4;
    }
    v
}

/// Invariant factors of the predicted divisor class group: `3n - 7` copies
/// of n, preceded by a 2 when n is even.
pub fn predicted_class_invariants(n: usize) -> Vec<BigInt> {
    let mut inv = Vec::with_capacity(3 * n - 6);
    if n.is_multiple_of(2) {
        inv.push(BigInt::from(2));
    }
    inv.extend(std::iter::repeat_n(BigInt::from(n), 3 * n - 7));
    inv
}

pub fn predicted_parameters(n: usize) -> PredictedParameters {
    assert!(n >= 3, "no construction below n = 3");
    let nn = n as u64;
    let (min_norm_sq, kissing, second_min_sq, well_rounded) = if n == 3 {
        (4, None, None, true)
    } else {
        let second = if n <= 7 { nn * nn - nn } else { 6 * nn };
        (2 * nn, Some(6), Some(second), false)
    };
    let vol_sq = predicted_vol_sq(n);
    let class_invariants = predicted_class_invariants(n);
    debug_assert_eq!(
        {
            let idx: BigInt = class_invariants.iter().fold(BigInt::one(), |a, d| a * d);
            BigInt::from(3 * n) * &idx * &idx
        },
        vol_sq,
        "volume must equal 3n times the squared class number"
    );
    PredictedParameters {
        n,
        gonality: nn - 1,
        genus: (nn - 1) * (nn - 2) / 2,
        rank: 3 * n - 1,
        min_norm_sq,
        kissing,
        second_min_sq,
        vol_sq,
        class_invariants,
        well_rounded,
    }
}

/// The predicted minimal-vector set for n >= 4: the six pairwise
/// differences of the side sums.
pub fn predicted_minimal_vectors(n: usize) -> Option<Vec<PlaceVector>> {
    if n < 4 {
        return None;
    }
    let a = side_sum(n, Side::A);
    let b = side_sum(n, Side::B);
    let c = side_sum(n, Side::C);
    Some(vec![&a - &c, &c - &a, &b - &c, &c - &b, &a - &b, &b - &a])
}
