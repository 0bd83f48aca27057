//! On-disk cache for computed lattice bases.
//!
//! File layout: a header line
//! `fermat-lattice v1 n=<n> ambient=<3n> rank=<r>` followed by the plain
//! matrix text format. Loading validates the header against what the
//! caller asked for and checks that the stored rows really are a canonical
//! degree-zero basis, so a stale or damaged file surfaces as a
//! [`Error::CacheMismatch`] instead of a wrong answer.

use std::path::Path;

use num_traits::Zero;

use crate::error::Error;
use crate::lattice::Lattice;
use crate::matrix::BigMatrix;

const FORMAT_TAG: &str = "fermat-lattice";
const FORMAT_VERSION: &str = "v1";

pub fn write_basis_cache(path: &Path, n: usize, lattice: &Lattice) -> Result<(), Error> {
    let header = format!(
        "{FORMAT_TAG} {FORMAT_VERSION} n={n} ambient={} rank={}\n",
        lattice.ambient_dim(),
        lattice.rank()
    );
    std::fs::write(path, header + &lattice.basis().to_text())?;
    Ok(())
}

pub fn read_basis_cache(path: &Path, expected_n: usize) -> Result<Lattice, Error> {
    let text = std::fs::read_to_string(path)?;
    let (header, body) = text
        .split_once('\n')
        .ok_or_else(|| Error::CacheMismatch("missing header line".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != FORMAT_TAG || fields[1] != FORMAT_VERSION {
        return Err(Error::CacheMismatch(format!(
            "unrecognized header {header:?}"
        )));
    }
    let field = |idx: usize, key: &str| -> Result<usize, Error> {
        fields[idx]
            .strip_prefix(&format!("{key}="))
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| Error::CacheMismatch(format!("bad {key} field in {header:?}")))
    };
    let n = field(2, "n")?;
    let ambient = field(3, "ambient")?;
    let rank = field(4, "rank")?;
    if n != expected_n {
        return Err(Error::CacheMismatch(format!(
            "cache holds n = {n}, expected n = {expected_n}"
        )));
    }
    if ambient != 3 * n {
        return Err(Error::CacheMismatch(format!(
            "ambient dimension {ambient} does not equal 3n = {}",
            3 * n
        )));
    }
    let matrix =
        BigMatrix::from_text(body).map_err(|e| Error::CacheMismatch(format!("bad matrix: {e}")))?;
    if matrix.rows() != rank || matrix.cols() != ambient {
        return Err(Error::CacheMismatch(format!(
            "matrix is {}x{}, header says {rank}x{ambient}",
            matrix.rows(),
            matrix.cols()
        )));
    }
    for r in 0..matrix.rows() {
        if !matrix.row(r).iter().sum::<num_bigint::BigInt>().is_zero() {
            return Err(Error::CacheMismatch(format!(
                "basis row {r} does not have degree zero"
            )));
        }
    }
    // from_hnf_basis re-checks canonical form, catching reordered or
    // hand-edited rows.
    Lattice::from_hnf_basis(matrix)
}
