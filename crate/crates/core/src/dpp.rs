//! Determinantal point processes with nonsymmetric kernels.
//!
//! Kernels are exact rationals. Floating-point kernels have to be converted to
//! rationals by the caller before use.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{IndexSet, Matrix};
use crate::pme::{pme_check_with, PmeOptions, Verdict};

/// Square rational kernel `K` with `Pr[J ⊆ Y] = det(K[J])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    k: Matrix,
}

impl Kernel {
    pub fn new(k: Matrix) -> Result<Self> {
        k.require_square()?;
        if *k.field() != FieldSpec::Rational {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { k })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.k
    }

    pub fn into_matrix(self) -> Matrix {
        self.k
    }
}

/// `Pr[J ⊆ Y]`; the empty set has probability one.
pub fn subset_probability(kernel: &Kernel, j: &IndexSet) -> Result<Scalar> {
    if let Some(l) = j.iter().find(|&l| !kernel.k.labels().contains(&l)) {
        return Err(Error::UnknownLabel(l));
    }
    kernel.k.principal_submatrix(j)?.determinant()
}

/// Whether two kernels define the same process, with a certificate when they do.
pub fn dpp_equivalent(k1: &Kernel, k2: &Kernel) -> Result<Verdict> {
    dpp_equivalent_with(k1, k2, &PmeOptions::default())
}

pub fn dpp_equivalent_with(k1: &Kernel, k2: &Kernel, opts: &PmeOptions) -> Result<Verdict> {
    pme_check_with(&k1.k, &k2.k, opts)
}
