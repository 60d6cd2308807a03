use crate::field::{FieldSpec, Scalar};
use crate::linalg::{IndexSet, Label};
use crate::structure::DiagonalWitness;

/// Cut sequence and final diagonal witness for one irreducible block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCertificate {
    pub labels: IndexSet,
    pub cut_sequence: Vec<IndexSet>,
    pub witness: DiagonalWitness,
}

/// Proof that two matrices have equal principal minors.
///
/// `field` is the field every value lives in; when the inputs were over a
/// small finite field this is the extension the check ran in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub field: FieldSpec,
    pub blocks: Vec<BlockCertificate>,
    /// Diagonal shift used to make the adjugates dense, for inspection only.
    pub preprocessing_shift: Option<Vec<(Label, Scalar)>>,
}

impl Certificate {
    pub fn total_cuts(&self) -> usize {
        self.blocks.iter().map(|b| b.cut_sequence.len()).sum()
    }
}
