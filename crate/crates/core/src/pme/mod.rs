//! Principal-minor equivalence with cut-transpose certificates.

mod algorithm;
mod certificate;
mod oracle;
mod shift;

use std::fmt;

pub use algorithm::{finding_cut_sequence, min_cut_size_two, Branch, CutSearch};
pub use certificate::{BlockCertificate, Certificate};
pub use oracle::{
    brute_force_pme, cycle_weight_oracle, MinorComparison, BRUTE_FORCE_PME_LIMIT,
    CYCLE_ORACLE_LIMIT,
};
pub use shift::{
    adjugate_entry_shift, candidate_count, combine_shifts, nonsingular_shift, shift_path, Shift,
    ShiftOptions, RANDOM_ATTEMPTS,
};

use crate::cuts::{cut_transpose, is_cut};
use crate::error::{Error, Result};
use crate::field::{build_extension, FieldSpec};
use crate::linalg::{IndexSet, Matrix};
use crate::structure::{diag_equivalent, partition_compatible};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PmeOptions {
    pub shift: ShiftOptions,
}

/// Why two matrices are not principal-minor equivalent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// A principal minor that differs.
    Minor(IndexSet),
    /// The strongly connected components of the supports differ.
    PartitionMismatch,
    /// The cut search failed on an irreducible block.
    Branch { block: IndexSet, branch: Branch },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::Minor(s) => write!(f, "principal minor {s} differs"),
            Refutation::PartitionMismatch => f.write_str("irreducible block partitions differ"),
            Refutation::Branch { block, branch } => write!(f, "block {block}: {branch}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equivalent(Certificate),
    NotEquivalent(Refutation),
}

impl Verdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Verdict::Equivalent(_))
    }
}

/// Field size the check needs for an `n × n` input.
pub fn required_field_size(n: usize) -> u128 {
    10 * (n as u128).pow(5)
}

/// Working field for `n × n` inputs over `f`.
pub fn working_field(f: &FieldSpec, n: usize) -> Result<FieldSpec> {
    let need = required_field_size(n);
    match f {
        FieldSpec::Rational => Ok(f.clone()),
        _ if f.exceeds(need) => Ok(f.clone()),
        FieldSpec::Prime(p) => build_extension(*p, need + 1),
        FieldSpec::Extension(_) => Err(Error::FieldTooSmall {
            needed: need + 1,
            available: f.cardinality().unwrap_or(u128::MAX),
        }),
    }
}

/// Applies each cut transpose in turn; the `i`th set must be a cut of the
/// matrix reached after the first `i` steps.
pub fn apply_cut_sequence(a: &Matrix, sequence: &[IndexSet]) -> Result<Matrix> {
    let mut current = a.clone();
    for (i, x) in sequence.iter().enumerate() {
        if !is_cut(&current, x) {
            return Err(Error::NotACut { index: Some(i) });
        }
        current = cut_transpose(&current, x)?;
    }
    Ok(current)
}

pub fn pme_check(a: &Matrix, b: &Matrix) -> Result<Verdict> {
    pme_check_with(a, b, &PmeOptions::default())
}

pub fn pme_check_with(a: &Matrix, b: &Matrix, opts: &PmeOptions) -> Result<Verdict> {
    a.require_square()?;
    b.require_square()?;
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.labels() != b.labels() {
        return Err(Error::LabelMismatch);
    }
    let field = working_field(a.field(), a.n())?;
    let a = a.embed(&field)?;
    let b = b.embed(&field)?;
    for i in 0..a.n() {
        if a.get(i, i) != b.get(i, i) {
            return Ok(Verdict::NotEquivalent(Refutation::Minor(IndexSet::from_labels([
                a.labels()[i],
            ]))));
        }
    }
    let Some(blocks) = partition_compatible(&a, &b)? else {
        return Ok(Verdict::NotEquivalent(Refutation::PartitionMismatch));
    };
    let mut certs = Vec::with_capacity(blocks.len());
    let mut shift_out = Vec::new();
    for block in blocks {
        let ab = a.principal_submatrix(&block)?;
        let bb = b.principal_submatrix(&block)?;
        if block.len() == 1 {
            certs.push(BlockCertificate {
                witness: crate::structure::DiagonalWitness::identity(&ab),
                labels: block,
                cut_sequence: Vec::new(),
            });
            continue;
        }
        let shift = combine_shifts(&ab, &bb, &opts.shift)?;
        shift_out.extend(block.iter().zip(shift.d.iter().cloned()));
        let sequence = match finding_cut_sequence(&shift.a_adj, &shift.b_adj)? {
            CutSearch::Found { sequence, .. } => sequence,
            CutSearch::No { branch } => {
                return Ok(Verdict::NotEquivalent(Refutation::Branch { block, branch }))
            }
        };
        let end = apply_cut_sequence(&ab, &sequence)
            .map_err(|e| Error::Internal(format!("replaying block {block}: {e}")))?;
        let witness = diag_equivalent(&end, &bb)?.ok_or_else(|| {
            Error::Internal(format!("block {block}: replayed sequence is not diagonally equivalent"))
        })?;
        certs.push(BlockCertificate {
            labels: block,
            cut_sequence: sequence,
            witness,
        });
    }
    Ok(Verdict::Equivalent(Certificate {
        field,
        blocks: certs,
        preprocessing_shift: (!shift_out.is_empty()).then_some(shift_out),
    }))
}

/// Checks a certificate against the two matrices without rerunning the search.
pub fn verify_certificate(a: &Matrix, b: &Matrix, cert: &Certificate) -> Result<bool> {
    a.require_square()?;
    b.require_square()?;
    if a.labels() != b.labels() {
        return Err(Error::LabelMismatch);
    }
    if !cert.field.extends(a.field()) || !cert.field.extends(b.field()) {
        return Ok(false);
    }
    let a = a.embed(&cert.field)?;
    let b = b.embed(&cert.field)?;
    let mut covered: Vec<_> = cert.blocks.iter().flat_map(|c| c.labels.iter()).collect();
    covered.sort_unstable();
    if covered != a.labels() {
        return Ok(false);
    }
    let Some(mut blocks) = partition_compatible(&a, &b)? else {
        return Ok(false);
    };
    let mut claimed: Vec<IndexSet> = cert.blocks.iter().map(|c| c.labels.clone()).collect();
    blocks.sort();
    claimed.sort();
    if blocks != claimed {
        return Ok(false);
    }
    for c in &cert.blocks {
        if c.cut_sequence.len() >= 2 * c.labels.len().max(1) {
            return Ok(false);
        }
        let ab = a.principal_submatrix(&c.labels)?;
        let bb = b.principal_submatrix(&c.labels)?;
        let end = match apply_cut_sequence(&ab, &c.cut_sequence) {
            Ok(m) => m,
            Err(Error::NotACut { .. }) | Err(Error::UnknownLabel(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        if !c.witness.certifies(&end, &bb) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn m(f: &FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(f.clone(), rows).unwrap()
    }

    #[test]
    fn transpose_certificate_verifies() {
        let a = m(&q(), &[&[1, 2, 0, 3], &[4, 5, 6, 0], &[0, 7, 8, 9], &[1, 0, 2, 3]]);
        let b = a.transpose();
        match pme_check(&a, &b).unwrap() {
            Verdict::Equivalent(c) => assert!(verify_certificate(&a, &b, &c).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_mismatch_refutes_with_singleton() {
        let a = m(&q(), &[&[1, 2], &[3, 4]]);
        let b = m(&q(), &[&[1, 2], &[3, 5]]);
        assert_eq!(
            pme_check(&a, &b).unwrap(),
            Verdict::NotEquivalent(Refutation::Minor(IndexSet::from_labels([1])))
        );
    }

    #[test]
    fn partition_mismatch() {
        let a = m(&q(), &[&[1, 2, 0], &[3, 1, 0], &[0, 0, 1]]);
        let b = m(&q(), &[&[1, 0, 0], &[0, 1, 2], &[0, 3, 1]]);
        assert_eq!(
            pme_check(&a, &b).unwrap(),
            Verdict::NotEquivalent(Refutation::PartitionMismatch)
        );
    }

    #[test]
    fn small_prime_field_is_extended() {
        let f = FieldSpec::prime(3).unwrap();
        let a = m(&f, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 2]]);
        match pme_check(&a, &a.transpose()).unwrap() {
            Verdict::Equivalent(c) => {
                assert!(c.field.cardinality().unwrap() > required_field_size(3));
                assert!(verify_certificate(&a, &a.transpose(), &c).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tampered_certificate_fails() {
        let a = m(&q(), &[&[1, 2, 1, 3], &[4, 5, 6, 1], &[1, 7, 8, 9], &[1, 1, 2, 3]]);
        let b = a.transpose();
        let Verdict::Equivalent(mut c) = pme_check(&a, &b).unwrap() else {
            panic!()
        };
        c.blocks[0].witness.d[0] = q().from_i64(17);
        assert!(!verify_certificate(&a, &b, &c).unwrap());
    }

    #[test]
    fn apply_reports_failing_index() {
        let a = m(&q(), &[&[1, 2, 1, 3], &[4, 5, 6, 1], &[1, 7, 8, 9], &[1, 1, 2, 3]]);
        let ones = m(&q(), &[&[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1], &[1, 1, 1, 1]]);
        let single = IndexSet::from_labels([0]);
        let pair = IndexSet::from_labels([0, 1]);
        let r = apply_cut_sequence(&a, std::slice::from_ref(&pair));
        assert!(matches!(r, Err(Error::NotACut { index: Some(0) })), "{r:?}");
        let r = apply_cut_sequence(&ones, &[pair, single]);
        assert!(matches!(r, Err(Error::NotACut { index: Some(1) })), "{r:?}");
    }
}
