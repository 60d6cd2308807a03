//! Exhaustive reference checks.

use crate::cuts::combinations;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{IndexSet, Matrix};

/// Largest size accepted by [`brute_force_pme`].
pub const BRUTE_FORCE_PME_LIMIT: usize = 14;

/// Largest size accepted by [`cycle_weight_oracle`].
pub const CYCLE_ORACLE_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorComparison {
    pub equivalent: bool,
    /// First subset in (size, lexicographic) order whose minors differ.
    pub refuting: Option<IndexSet>,
}

fn check_pair(a: &Matrix, b: &Matrix, limit: usize) -> Result<()> {
    a.require_square()?;
    b.require_square()?;
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.labels() != b.labels() {
        return Err(Error::LabelMismatch);
    }
    if a.n() > limit {
        return Err(Error::TooLarge {
            size: a.n(),
            limit,
        });
    }
    Ok(())
}

/// Compares every principal minor.
pub fn brute_force_pme(a: &Matrix, b: &Matrix) -> Result<MinorComparison> {
    check_pair(a, b, BRUTE_FORCE_PME_LIMIT)?;
    let n = a.n();
    for k in 1..=n {
        for c in combinations(n, k) {
            let da = a.submatrix_at(&c, &c).determinant()?;
            let db = b.submatrix_at(&c, &c).determinant()?;
            if da != db {
                return Ok(MinorComparison {
                    equivalent: false,
                    refuting: Some(IndexSet::from_labels(c.iter().map(|&i| a.labels()[i]))),
                });
            }
        }
    }
    Ok(MinorComparison {
        equivalent: true,
        refuting: None,
    })
}

/// Sum over directed Hamiltonian cycles of the support graph on each subset,
/// indexed by position bitmask; loops count as one-vertex cycles.
fn cycle_sums(a: &Matrix) -> Vec<Scalar> {
    let f = a.field();
    let n = a.n();
    let mut sums = vec![f.zero(); 1 << n];
    for s in 0..n {
        sums[1 << s] = a.get(s, s).clone();
        // paths from s through vertices > s, by visited mask and endpoint
        let mut dp: Vec<Vec<Scalar>> = vec![vec![f.zero(); n]; 1 << n];
        dp[1 << s][s] = f.one();
        for mask in 0..1usize << n {
            if mask & (1 << s) == 0 || mask & ((1 << s) - 1) != 0 {
                continue;
            }
            for v in 0..n {
                if f.is_zero(&dp[mask][v]) {
                    continue;
                }
                if mask != 1 << s {
                    let closing = f.mul(&dp[mask][v], a.get(v, s));
                    sums[mask] = f.add(&sums[mask], &closing);
                }
                for w in s + 1..n {
                    if mask & (1 << w) != 0 || !a.is_nonzero(v, w) {
                        continue;
                    }
                    let ext = f.mul(&dp[mask][v], a.get(v, w));
                    let next = mask | 1 << w;
                    dp[next][w] = f.add(&dp[next][w], &ext);
                }
            }
        }
    }
    sums
}

/// True iff the weighted Hamiltonian cycle sums agree on every vertex subset.
pub fn cycle_weight_oracle(a: &Matrix, b: &Matrix) -> Result<bool> {
    check_pair(a, b, CYCLE_ORACLE_LIMIT)?;
    Ok(cycle_sums(a) == cycle_sums(b))
}
