//! Report assembly: run the requested computation paths for one degree and
//! compare the results with the built-in closed-form expectations.
//!
//! The structured report is the source of truth; the other output formats
//! are projections of it. Exact integers that outgrow 64 bits (the squared
//! volume does so from n = 6) are serialized as decimal strings.

use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use fermat_lattices::cache::{read_basis_cache, write_basis_cache};
use fermat_lattices::coset::{merged_coset_spectrum, DEFAULT_SPAN_LIMIT};
use fermat_lattices::fermat::{build_lattice, predicted_minimal_vectors, predicted_parameters};
use fermat_lattices::matrix::gram_det;
use fermat_lattices::{
    a_root_lattice, quotient_invariants, EnumConfig, Error, Lattice, NormSpectrum,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PathsUsed {
    Enumeration,
    Coset,
    Both,
}

impl PathsUsed {
    fn runs_enumeration(self) -> bool {
        matches!(self, PathsUsed::Enumeration | PathsUsed::Both)
    }

    fn runs_coset(self) -> bool {
        matches!(self, PathsUsed::Coset | PathsUsed::Both)
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// None = both paths where the span limit permits, enumeration alone
    /// beyond it.
    pub paths: Option<PathsUsed>,
    pub bound_sq: Option<u64>,
    pub node_budget: u64,
    pub cache_dir: Option<PathBuf>,
    pub capture_minimal: bool,
    pub max_n: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            paths: None,
            bound_sq: None,
            node_budget: 1_000_000_000,
            cache_dir: None,
            capture_minimal: false,
            max_n: 10,
        }
    }
}

/// Closed-form expected values, serialized alongside the computed ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    pub gonality: u64,
    pub genus: u64,
    pub rank: usize,
    pub min_norm_sq: u64,
    pub kissing: Option<u64>,
    pub second_min_sq: Option<u64>,
    pub vol_sq: String,
    pub class_invariants: Vec<String>,
    pub well_rounded: bool,
}

/// Per-field verdicts; `None` where no expectation exists (or the field was
/// not computed by the selected paths).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchFlags {
    pub rank: bool,
    pub vol_sq: bool,
    pub class_invariants: bool,
    pub min_norm_sq: bool,
    pub kissing: Option<bool>,
    pub second_min_sq: Option<bool>,
    pub well_rounded: Option<bool>,
    pub minimal_vectors: Option<bool>,
}

impl MatchFlags {
    /// True iff every field that has an expectation matches it.
    pub fn all_match(&self) -> bool {
        self.rank
            && self.vol_sq
            && self.class_invariants
            && self.min_norm_sq
            && self.kissing.unwrap_or(true)
            && self.second_min_sq.unwrap_or(true)
            && self.well_rounded.unwrap_or(true)
            && self.minimal_vectors.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timings {
    pub build_ms: u64,
    pub linalg_ms: u64,
    pub enumeration_ms: Option<u64>,
    pub coset_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub n: usize,
    pub rank: usize,
    pub vol_sq: String,
    pub class_invariants: Vec<String>,
    pub min_norm_sq: u64,
    pub kissing: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub minimal_vectors: Option<Vec<Vec<i64>>>,
    pub bound_sq: u64,
    pub second_min_sq: Option<u64>,
    pub second_count: Option<u64>,
    pub third_min_sq: Option<u64>,
    /// Only the enumeration path decides well-roundedness.
    pub well_rounded: Option<bool>,
    pub expected: Expectations,
    pub match_flags: MatchFlags,
    pub paths_used: PathsUsed,
    /// Present when both paths ran: entrywise spectrum agreement.
    pub paths_agree: Option<bool>,
    pub timings_ms: Timings,
}

impl LatticeReport {
    /// A report is sound when the two paths did not contradict each other.
    pub fn internally_consistent(&self) -> bool {
        self.paths_agree != Some(false)
    }
}

fn load_or_build(n: usize, cache_dir: Option<&Path>) -> Result<(Lattice, bool), Error> {
    match cache_dir {
        None => Ok((build_lattice(n), false)),
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("fermat-lattice-n{n}.txt"));
            if path.exists() {
                Ok((read_basis_cache(&path, n)?, true))
            } else {
                let lat = build_lattice(n);
                write_basis_cache(&path, n, &lat)?;
                Ok((lat, false))
            }
        }
    }
}

fn millis(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Runs the requested paths for one degree and assembles the report.
pub fn analyze(n: usize, opts: &AnalyzeOptions) -> Result<LatticeReport, Error> {
    assert!(
        (3..=opts.max_n).contains(&n),
        "degree n must satisfy 3 <= n <= {}",
        opts.max_n
    );
    let paths = opts.paths.unwrap_or(if n <= DEFAULT_SPAN_LIMIT {
        PathsUsed::Both
    } else {
        PathsUsed::Enumeration
    });
    let expected_params = predicted_parameters(n);
    let bound_sq = opts.bound_sq.unwrap_or(6 * n as u64);

    let t = Instant::now();
    let (lattice, _cached) = load_or_build(n, opts.cache_dir.as_deref())?;
    let build_ms = millis(t);

    let t = Instant::now();
    let rank = lattice.rank();
    let vol_sq = gram_det(lattice.basis())?;
    let class = quotient_invariants(&a_root_lattice(3 * n), &lattice)?;
    let linalg_ms = millis(t);

    let cfg = EnumConfig {
        node_budget: opts.node_budget,
        capture: false,
    };

    let mut enumeration_ms = None;
    let mut coset_ms = None;
    let mut minima = None;
    let mut enum_spectrum: Option<NormSpectrum> = None;
    if paths.runs_enumeration() {
        let t = Instant::now();
        minima = Some(lattice.minima(&cfg)?);
        enum_spectrum = Some(lattice.enumerate_up_to(bound_sq, &cfg)?.spectrum);
        enumeration_ms = Some(millis(t));
    }
    let mut coset_spectrum: Option<NormSpectrum> = None;
    if paths.runs_coset() {
        let t = Instant::now();
        coset_spectrum = Some(merged_coset_spectrum(n, bound_sq)?);
        coset_ms = Some(millis(t));
    }
    let paths_agree = match (&enum_spectrum, &coset_spectrum) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };

    // The enumeration path is primary when it ran; each value it yields is
    // checked against the coset path through the spectrum comparison above.
    let spectrum = enum_spectrum
        .as_ref()
        .or(coset_spectrum.as_ref())
        .expect("at least one path runs");
    let (min_norm_sq, kissing) = match &minima {
        Some(m) => (m.min_norm_sq, m.kissing),
        None => spectrum.min().ok_or_else(|| {
            Error::Parse(format!(
                "norm bound {bound_sq} is too small to reach the minimum via the coset path"
            ))
        })?,
    };
    let second = spectrum.distinct(1);
    let third = spectrum.distinct(2).map(|(norm, _)| norm);
    let well_rounded = minima.as_ref().map(|m| m.well_rounded);
    let minimal_vectors = match (&minima, opts.capture_minimal) {
        (Some(m), true) => Some(m.minimal_vectors.clone()),
        _ => None,
    };

    let expected = Expectations {
        gonality: expected_params.gonality,
        genus: expected_params.genus,
        rank: expected_params.rank,
        min_norm_sq: expected_params.min_norm_sq,
        kissing: expected_params.kissing,
        second_min_sq: expected_params.second_min_sq,
        vol_sq: expected_params.vol_sq.to_string(),
        class_invariants: expected_params
            .class_invariants
            .iter()
            .map(|d| d.to_string())
            .collect(),
        well_rounded: expected_params.well_rounded,
    };
    let computed_class: Vec<String> = class
        .invariant_factors
        .iter()
        .map(|d| d.to_string())
        .collect();
    let match_flags = MatchFlags {
        rank: rank == expected.rank,
        vol_sq: vol_sq.to_string() == expected.vol_sq,
        class_invariants: computed_class == expected.class_invariants,
        min_norm_sq: min_norm_sq == expected.min_norm_sq,
        kissing: expected.kissing.map(|k| kissing == k),
        second_min_sq: expected
            .second_min_sq
            .map(|s| second.map(|(norm, _)| norm) == Some(s)),
        well_rounded: well_rounded.map(|w| w == expected.well_rounded),
        minimal_vectors: match (&minimal_vectors, predicted_minimal_vectors(n)) {
            (Some(found), Some(want)) => {
                let mut want: Vec<Vec<i64>> = want.iter().map(|v| v.coeffs().to_vec()).collect();
                want.sort_unstable();
                Some(*found == want)
            }
            _ => None,
        },
    };

    Ok(LatticeReport {
        n,
        rank,
        vol_sq: vol_sq.to_string(),
        class_invariants: computed_class,
        min_norm_sq,
        kissing,
        minimal_vectors,
        bound_sq,
        second_min_sq: second.map(|(norm, _)| norm),
        second_count: second.map(|(_, count)| count),
        third_min_sq: third,
        well_rounded,
        expected,
        match_flags,
        paths_used: paths,
        paths_agree,
        timings_ms: Timings {
            build_ms,
            linalg_ms,
            enumeration_ms,
            coset_ms,
        },
    })
}
