//! Cut-sequence search on matrices whose off-diagonal entries are all nonzero.

use std::fmt;

use crate::cuts::{cut_transpose, is_cut, minimal_cut_with, CutBackend};
use crate::error::{Error, Result};
use crate::linalg::{IndexSet, Matrix};
use crate::structure::{diag_equivalent, diag_similar, DiagonalWitness};

/// Where the search answered "no".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// No cut (or at most three labels) and the pair is not diagonally equivalent.
    NotDiagonallyEquivalent,
    /// A minimal cut of size at least three is not a cut of the second matrix.
    LargeCutNotShared,
    /// Some `S + t` submatrix pair is neither diagonally similar nor similar to the transpose.
    SizeTwoUnmatched,
    /// The set assembled for a two-element minimal cut is not a cut of the second matrix.
    SizeTwoNotACut,
    /// Neither the lifted result nor its cut-transpose along the complement is equivalent.
    FinalMismatch,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::NotDiagonallyEquivalent => "no cut and not diagonally equivalent",
            Branch::LargeCutNotShared => "minimal cut of size >= 3 is not a cut of B",
            Branch::SizeTwoUnmatched => "size-two cut: some S+t pair is not diagonally similar",
            Branch::SizeTwoNotACut => "size-two cut: assembled set is not a cut of B",
            Branch::FinalMismatch => "lifted sequence does not reach B up to diagonal equivalence",
        })
    }
}

/// Outcome of [`finding_cut_sequence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutSearch {
    Found {
        sequence: Vec<IndexSet>,
        witness: DiagonalWitness,
    },
    No {
        branch: Branch,
    },
}

/// `X = P ∪ {min S}` where `P` collects the `t ∉ S` with `A[S+t]` diagonally
/// similar to `B[S+t]`; every other `t` must match `B[S+t]ᵀ` instead.
pub fn min_cut_size_two(a: &Matrix, b: &Matrix, s: &IndexSet) -> Result<std::result::Result<IndexSet, Branch>> {
    let s0 = s.first().ok_or_else(|| Error::Internal("empty cut".into()))?;
    let mut p = IndexSet::from_labels([s0]);
    for t in a.labels().iter().copied().filter(|&t| !s.contains(t)) {
        let st = s.with(t);
        let sa = a.principal_submatrix(&st)?;
        let sb = b.principal_submatrix(&st)?;
        if diag_similar(&sa, &sb)?.is_some() {
            p.insert(t);
        } else if diag_similar(&sa, &sb.transpose())?.is_none() {
            return Ok(Err(Branch::SizeTwoUnmatched));
        }
    }
    Ok(if is_cut(b, &p) { Ok(p) } else { Err(Branch::SizeTwoNotACut) })
}

fn search(a: &Matrix, b: &Matrix) -> Result<std::result::Result<Vec<IndexSet>, Branch>> {
    let n = a.n();
    let base = |a: &Matrix, b: &Matrix| -> Result<std::result::Result<Vec<IndexSet>, Branch>> {
        Ok(if diag_equivalent(a, b)?.is_some() {
            Ok(Vec::new())
        } else {
            Err(Branch::NotDiagonallyEquivalent)
        })
    };
    if n <= 3 {
        return base(a, b);
    }
    let Some(s) = minimal_cut_with(a, CutBackend::Auto)? else {
        return base(a, b);
    };
    let mut b_tilde = b.clone();
    let mut extra = None;
    if !is_cut(b, &s) {
        if s.len() >= 3 {
            return Ok(Err(Branch::LargeCutNotShared));
        }
        let x = match min_cut_size_two(a, b, &s)? {
            Ok(x) => x,
            Err(branch) => return Ok(Err(branch)),
        };
        b_tilde = cut_transpose(b, &x)?;
        extra = Some(x);
    }
    let s0 = s.first().expect("cuts are nonempty");
    let s_bar = s.complement_in(a.labels());
    let rest = s_bar.with(s0);
    let inner = search(
        &a.principal_submatrix(&rest)?,
        &b_tilde.principal_submatrix(&rest)?,
    )?;
    let inner = match inner {
        Ok(seq) => seq,
        Err(branch) => return Ok(Err(branch)),
    };
    let mut sequence = Vec::with_capacity(inner.len() + 2);
    let mut current = a.clone();
    for x in inner {
        let lifted = if x.contains(s0) { x.union(&s) } else { x };
        if !is_cut(&current, &lifted) {
            return Err(Error::Internal(format!("lifted set {lifted} is not a cut")));
        }
        current = cut_transpose(&current, &lifted)?;
        sequence.push(lifted);
    }
    if diag_equivalent(&current, &b_tilde)?.is_none() {
        if !is_cut(&current, &s_bar) {
            return Err(Error::Internal(format!("complement {s_bar} is not a cut")));
        }
        let twisted = cut_transpose(&current, &s_bar)?;
        if diag_equivalent(&twisted, &b_tilde)?.is_none() {
            return Ok(Err(Branch::FinalMismatch));
        }
        sequence.push(s_bar);
    }
    if let Some(x) = extra {
        sequence.push(x);
    }
    Ok(Ok(sequence))
}

/// Cut sequence relating `a` to `b` up to diagonal equivalence, or the branch
/// that rules it out. Both matrices must have every off-diagonal entry nonzero.
pub fn finding_cut_sequence(a: &Matrix, b: &Matrix) -> Result<CutSearch> {
    a.require_square()?;
    b.require_square()?;
    if a.labels() != b.labels() {
        return Err(Error::LabelMismatch);
    }
    match search(a, b)? {
        Err(branch) => Ok(CutSearch::No { branch }),
        Ok(sequence) => {
            let end = super::apply_cut_sequence(a, &sequence)?;
            let witness = diag_equivalent(&end, b)?.ok_or_else(|| {
                Error::Internal("cut sequence does not end diagonally equivalent".into())
            })?;
            Ok(CutSearch::Found { sequence, witness })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, Scalar};

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn dense() -> Matrix {
        Matrix::from_i64_rows(
            q(),
            &[[2, 3, 1, 5, 7], [1, 1, 4, 2, 3], [6, 2, 5, 1, 1], [3, 8, 2, 2, 4], [1, 5, 9, 2, 6]],
        )
        .unwrap()
    }

    #[test]
    fn identical_pair() {
        let a = dense();
        match finding_cut_sequence(&a, &a).unwrap() {
            CutSearch::Found { sequence, witness } => {
                assert!(sequence.is_empty());
                assert_eq!(witness, DiagonalWitness::identity(&a));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conjugated_pair() {
        let a = dense();
        let f = q();
        let d: Vec<Scalar> = [1, 2, -3, 5, 7].iter().map(|&v| f.from_i64(v)).collect();
        let mut b = a.clone();
        for i in 0..5 {
            for j in 0..5 {
                b.set(i, j, f.div(&f.mul(&d[i], a.get(i, j)), &d[j]).unwrap());
            }
        }
        match finding_cut_sequence(&a, &b).unwrap() {
            CutSearch::Found { sequence, witness } => {
                assert!(sequence.is_empty());
                assert!(witness.certifies(&a, &b));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn perturbed_pair_is_rejected() {
        let a = dense();
        let mut b = a.clone();
        b.set(0, 1, q().from_i64(4));
        assert!(matches!(finding_cut_sequence(&a, &b).unwrap(), CutSearch::No { .. }));
    }
}
