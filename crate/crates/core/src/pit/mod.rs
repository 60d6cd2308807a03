//! Equality of determinants of rank-one pencils `A₀ + Σ uⱼvⱼᵀ yⱼ`.

mod matroid;

pub use matroid::{matroid_intersection_common_base, max_common_independent, LinearMatroid};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{IndexSet, Matrix};
use crate::pme::{pme_check_with, PmeOptions};

/// Largest variable count accepted by [`brute_force_pit`].
pub const BRUTE_FORCE_PIT_LIMIT: usize = 12;

/// `A₀ + Σⱼ uⱼ·vⱼᵀ·yⱼ` over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOnePencil {
    a0: Matrix,
    terms: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

impl RankOnePencil {
    pub fn new(a0: Matrix, terms: Vec<(Vec<Scalar>, Vec<Scalar>)>) -> Result<Self> {
        a0.require_square()?;
        let f = a0.field();
        let n = a0.n();
        for (j, (u, v)) in terms.iter().enumerate() {
            if u.len() != n || v.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "term {} has vectors of length {} and {}, expected {n}",
                    j + 1,
                    u.len(),
                    v.len()
                )));
            }
            if u.iter().chain(v).any(|x| !f.contains(x)) {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Self { a0, terms })
    }

    /// Builds the pencil from full coefficient matrices, each of rank at most one.
    pub fn from_matrices(a0: Matrix, coefficients: &[Matrix]) -> Result<Self> {
        let terms = coefficients
            .iter()
            .enumerate()
            .map(|(j, m)| {
                rank_one_decompose(m).map_err(|e| match e {
                    Error::RankTooHigh { .. } => Error::RankTooHigh { term: j + 1 },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(a0, terms)
    }

    pub fn field(&self) -> &FieldSpec {
        self.a0.field()
    }

    pub fn n(&self) -> usize {
        self.a0.n()
    }

    pub fn m(&self) -> usize {
        self.terms.len()
    }

    pub fn a0(&self) -> &Matrix {
        &self.a0
    }

    pub fn terms(&self) -> &[(Vec<Scalar>, Vec<Scalar>)] {
        &self.terms
    }

    pub fn is_homogeneous(&self) -> bool {
        self.a0.is_zero_matrix()
    }

    fn columns(&self, pick: impl Fn(&(Vec<Scalar>, Vec<Scalar>)) -> &Vec<Scalar>) -> Matrix {
        let n = self.n();
        let rows = (0..n)
            .map(|i| self.terms.iter().map(|t| pick(t)[i].clone()).collect())
            .collect();
        if self.terms.is_empty() {
            return Matrix::zeros(self.field().clone(), n, 0);
        }
        Matrix::from_rows(self.field().clone(), rows).expect("rectangular")
    }

    /// `n × m` matrix with columns `uⱼ`.
    pub fn u_matrix(&self) -> Matrix {
        self.columns(|t| &t.0)
    }

    /// `n × m` matrix with columns `vⱼ`.
    pub fn v_matrix(&self) -> Matrix {
        self.columns(|t| &t.1)
    }

    /// The pencil at `y`.
    pub fn evaluate(&self, y: &[Scalar]) -> Result<Matrix> {
        if y.len() != self.m() {
            return Err(Error::DimensionMismatch(format!(
                "{} values for {} variables",
                y.len(),
                self.m()
            )));
        }
        let f = self.field();
        let mut out = self.a0.clone();
        for ((u, v), yj) in self.terms.iter().zip(y) {
            if f.is_zero(yj) {
                continue;
            }
            for r in 0..self.n() {
                let uy = f.mul(&u[r], yj);
                for c in 0..self.n() {
                    let val = f.add(out.get(r, c), &f.mul(&uy, &v[c]));
                    out.set(r, c, val);
                }
            }
        }
        Ok(out)
    }
}

/// `(u, v)` with `A = u·vᵀ`; `u` is the first nonzero column.
pub fn rank_one_decompose(a: &Matrix) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    a.require_square()?;
    let f = a.field();
    let n = a.n();
    let Some(c0) = (0..n).find(|&c| (0..n).any(|r| a.is_nonzero(r, c))) else {
        return Ok((vec![f.zero(); n], vec![f.zero(); n]));
    };
    if a.rank() > 1 {
        return Err(Error::RankTooHigh { term: 0 });
    }
    let u: Vec<Scalar> = (0..n).map(|r| a.get(r, c0).clone()).collect();
    let r0 = (0..n).find(|&r| a.is_nonzero(r, c0)).expect("nonzero column");
    let inv = f.inv(&u[r0])?;
    let v = (0..n).map(|c| f.mul(a.get(r0, c), &inv)).collect();
    Ok((u, v))
}

fn rows_of(m: &Matrix) -> Vec<usize> {
    (0..m.rows()).collect()
}

/// Whether `Σ_T det(U₁[:,T])·det(V₁[:,T])·y^T` equals the same sum for `(U₂, V₂)`.
///
/// With `T` a common base of the first pair, both pairs are normalised to
/// `[I | Û]`, `[I | V̂]` on the column order (non-base, base); the coefficient
/// of `y^S` is then the principal minor of `[[0, V̂ᵀ], [-Û, 0]]` indexed by
/// `S Δ T`, scaled by the coefficient of `y^T`.
pub fn cauchy_binet_equal(
    u1: &Matrix,
    v1: &Matrix,
    u2: &Matrix,
    v2: &Matrix,
    opts: &PmeOptions,
) -> Result<bool> {
    let shape = (u1.rows(), u1.cols());
    for m in [v1, u2, v2] {
        if (m.rows(), m.cols()) != shape {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} against {}x{}",
                m.rows(),
                m.cols(),
                shape.0,
                shape.1
            )));
        }
        if m.field() != u1.field() {
            return Err(Error::FieldMismatch);
        }
    }
    let f = u1.field();
    let (n, m) = shape;
    let t1 = matroid_intersection_common_base(u1, v1)?;
    let t2 = matroid_intersection_common_base(u2, v2)?;
    let t = match (t1, t2) {
        (None, None) => return Ok(true),
        (Some(t), Some(_)) => t,
        _ => return Ok(false),
    };
    let base: Vec<usize> = t.iter().collect();
    let rest: Vec<usize> = (0..m).filter(|c| !t.contains(*c)).collect();
    let coefficient = |u: &Matrix, v: &Matrix| -> Result<Scalar> {
        let du = u.submatrix_at(&rows_of(u), &base).determinant()?;
        let dv = v.submatrix_at(&rows_of(v), &base).determinant()?;
        Ok(f.mul(&du, &dv))
    };
    if coefficient(u1, v1)? != coefficient(u2, v2)? {
        return Ok(false);
    }
    let assemble = |u: &Matrix, v: &Matrix| -> Result<Matrix> {
        let hat = |x: &Matrix| -> Result<Matrix> {
            let inv = x
                .submatrix_at(&rows_of(x), &base)
                .inverse()?
                .ok_or_else(|| Error::Internal("common base is singular".into()))?;
            inv.mul(&x.submatrix_at(&rows_of(x), &rest))
        };
        let uh = hat(u)?;
        let vh = hat(v)?;
        let k = m - n;
        let mut out = Matrix::zeros(f.clone(), m, m);
        for r in 0..k {
            for c in 0..n {
                out.set(r, k + c, vh.get(c, r).clone());
                out.set(k + c, r, f.neg(uh.get(c, r)));
            }
        }
        Ok(out)
    };
    let a = assemble(u1, v1)?;
    let b = assemble(u2, v2)?;
    Ok(pme_check_with(&a, &b, opts)?.is_equivalent())
}

fn check_pair(p1: &RankOnePencil, p2: &RankOnePencil) -> Result<()> {
    if p1.field() != p2.field() {
        return Err(Error::FieldMismatch);
    }
    if p1.n() != p2.n() || p1.m() != p2.m() {
        return Err(Error::DimensionMismatch(format!(
            "pencils of shape (n={}, m={}) and (n={}, m={})",
            p1.n(),
            p1.m(),
            p2.n(),
            p2.m()
        )));
    }
    Ok(())
}

/// Both pencils must have `A₀ = 0`.
pub fn pit_homogeneous(p1: &RankOnePencil, p2: &RankOnePencil) -> Result<bool> {
    pit_homogeneous_with(p1, p2, &PmeOptions::default())
}

pub fn pit_homogeneous_with(p1: &RankOnePencil, p2: &RankOnePencil, opts: &PmeOptions) -> Result<bool> {
    check_pair(p1, p2)?;
    if !p1.is_homogeneous() || !p2.is_homogeneous() {
        return Err(Error::DimensionMismatch("pencil has a nonzero constant term".into()));
    }
    cauchy_binet_equal(&p1.u_matrix(), &p1.v_matrix(), &p2.u_matrix(), &p2.v_matrix(), opts)
}

/// `[[0_m, I_m, Vᵀ], [U, 0, A₀]]`, of size `(m+n) × (2m+n)`.
fn lifted_u(p: &RankOnePencil) -> Matrix {
    let f = p.field();
    let (n, m) = (p.n(), p.m());
    let mut out = Matrix::zeros(f.clone(), m + n, 2 * m + n);
    for j in 0..m {
        out.set(j, m + j, f.one());
        for i in 0..n {
            out.set(j, 2 * m + i, p.terms[j].1[i].clone());
            out.set(m + i, j, p.terms[j].0[i].clone());
        }
    }
    for r in 0..n {
        for c in 0..n {
            out.set(m + r, 2 * m + c, p.a0.get(r, c).clone());
        }
    }
    out
}

/// `[[I_m, I_m, 0], [0, 0, I_n]]`, of size `(m+n) × (2m+n)`.
fn lifted_v(f: &FieldSpec, n: usize, m: usize) -> Matrix {
    let mut out = Matrix::zeros(f.clone(), m + n, 2 * m + n);
    for j in 0..m {
        out.set(j, j, f.one());
        out.set(j, m + j, f.one());
    }
    for i in 0..n {
        out.set(m + i, 2 * m + i, f.one());
    }
    out
}

/// General pencils.
///
/// With `W = [[0_m, I_m, Vᵀ], [U, 0, A₀]]` and `V' = [[I_m, I_m, 0], [0, 0, I_n]]`,
/// `W·diag(y, z, w)·V'ᵀ = [[diag(z), Vᵀ·diag(w)], [U·diag(y), A₀·diag(w)]]`, whose
/// determinant is `Πz·Πw·det(A₀ − U·diag(y/z)·Vᵀ)`. That is the homogenised
/// pencil at `−y`, so two pencils agree iff the pairs `(W₁, V')` and `(W₂, V')`
/// have equal Cauchy–Binet expansions. Each comparison assembles two
/// `(2m+n) × (2m+n)` matrices for the principal-minor check.
pub fn pit_general(p1: &RankOnePencil, p2: &RankOnePencil) -> Result<bool> {
    pit_general_with(p1, p2, &PmeOptions::default())
}

pub fn pit_general_with(p1: &RankOnePencil, p2: &RankOnePencil, opts: &PmeOptions) -> Result<bool> {
    check_pair(p1, p2)?;
    let v = lifted_v(p1.field(), p1.n(), p1.m());
    cauchy_binet_equal(&lifted_u(p1), &v, &lifted_u(p2), &v, opts)
}

pub fn pit_check(p1: &RankOnePencil, p2: &RankOnePencil) -> Result<bool> {
    pit_check_with(p1, p2, &PmeOptions::default())
}

pub fn pit_check_with(p1: &RankOnePencil, p2: &RankOnePencil, opts: &PmeOptions) -> Result<bool> {
    check_pair(p1, p2)?;
    if p1.is_homogeneous() && p2.is_homogeneous() {
        pit_homogeneous_with(p1, p2, opts)
    } else {
        pit_general_with(p1, p2, opts)
    }
}

/// Compares the determinants at every point of `{0,1}^m`; both are affine in
/// each variable, so this decides equality.
pub fn brute_force_pit(p1: &RankOnePencil, p2: &RankOnePencil) -> Result<bool> {
    check_pair(p1, p2)?;
    let m = p1.m();
    if m > BRUTE_FORCE_PIT_LIMIT {
        return Err(Error::TooLarge {
            size: m,
            limit: BRUTE_FORCE_PIT_LIMIT,
        });
    }
    let f = p1.field();
    for mask in 0u32..1 << m {
        let y: Vec<Scalar> = (0..m)
            .map(|j| if mask >> j & 1 == 1 { f.one() } else { f.zero() })
            .collect();
        if p1.evaluate(&y)?.determinant()? != p2.evaluate(&y)?.determinant()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Column labels of a common base, for reporting.
pub fn common_base(p: &RankOnePencil) -> Result<Option<IndexSet>> {
    matroid_intersection_common_base(&p.u_matrix(), &p.v_matrix())
}
