use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

use super::det_in_place;

/// Coefficients low-to-high with no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl UnivariatePoly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Self { field, coeffs }
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: FieldSpec, c: Scalar) -> Self {
        Self::new(field, vec![c])
    }

    /// The polynomial `y`.
    pub fn var(field: FieldSpec) -> Self {
        let coeffs = vec![field.zero(), field.one()];
        Self { field, coeffs }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn eval(&self, at: &Scalar) -> Scalar {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, at), c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let z = f.zero();
        let coeffs = (0..len)
            .map(|i| {
                f.add(
                    self.coeffs.get(i).unwrap_or(&z),
                    other.coeffs.get(i).unwrap_or(&z),
                )
            })
            .collect();
        Self::new(f.clone(), coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f.clone());
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f.clone(), out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let f = &self.field;
        Self::new(f.clone(), self.coeffs.iter().map(|x| f.mul(x, c)).collect())
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let c = f.format_scalar(c);
            terms.push(match i {
                0 => c,
                1 => format!("{c}*y"),
                _ => format!("{c}*y^{i}"),
            });
        }
        write!(out, "{}", terms.join(" + "))
    }
}

/// The unique polynomial of degree below `points.len()` through every point.
pub fn lagrange_interpolate(field: &FieldSpec, points: &[(Scalar, Scalar)]) -> Result<UnivariatePoly> {
    let f = field;
    let k = points.len();
    for i in 0..k {
        for j in 0..i {
            if points[i].0 == points[j].0 {
                return Err(Error::DuplicatePoint);
            }
        }
    }
    // master polynomial prod (y - x_i), low-to-high
    let mut master = vec![f.one()];
    for (x, _) in points {
        let mut next = vec![f.zero(); master.len() + 1];
        for (d, c) in master.iter().enumerate() {
            next[d + 1] = f.add(&next[d + 1], c);
            next[d] = f.sub(&next[d], &f.mul(c, x));
        }
        master = next;
    }
    let mut acc = vec![f.zero(); k];
    for (i, (xi, yi)) in points.iter().enumerate() {
        if f.is_zero(yi) {
            continue;
        }
        // master / (y - x_i) by synthetic division
        let mut quotient = vec![f.zero(); k];
        let mut carry = f.zero();
        for d in (0..k).rev() {
            carry = f.add(&master[d + 1], &f.mul(&carry, xi));
            quotient[d] = carry.clone();
        }
        let mut denom = f.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if j != i {
                denom = f.mul(&denom, &f.sub(xi, xj));
            }
        }
        let scale = f.div(yi, &denom)?;
        for (slot, q) in acc.iter_mut().zip(&quotient) {
            *slot = f.add(slot, &f.mul(q, &scale));
        }
    }
    Ok(UnivariatePoly::new(f.clone(), acc))
}

/// Precomputed barycentric weights for evaluating interpolants off the nodes.
#[derive(Debug, Clone)]
pub struct BarycentricNodes {
    field: FieldSpec,
    nodes: Vec<Scalar>,
    weights: Vec<Scalar>,
}

impl BarycentricNodes {
    pub fn new(field: &FieldSpec, nodes: Vec<Scalar>) -> Result<Self> {
        let f = field;
        let mut weights = Vec::with_capacity(nodes.len());
        for (i, xi) in nodes.iter().enumerate() {
            let mut prod = f.one();
            for (j, xj) in nodes.iter().enumerate() {
                if i != j {
                    let d = f.sub(xi, xj);
                    if f.is_zero(&d) {
                        return Err(Error::DuplicatePoint);
                    }
                    prod = f.mul(&prod, &d);
                }
            }
            weights.push(f.inv(&prod)?);
        }
        Ok(Self {
            field: f.clone(),
            nodes,
            weights,
        })
    }

    pub fn nodes(&self) -> &[Scalar] {
        &self.nodes
    }

    /// Coefficients `c_t` with `P(at) = sum_t c_t * P(x_t)` for every interpolant `P`.
    pub fn basis_at(&self, at: &Scalar) -> Result<Vec<Scalar>> {
        let f = &self.field;
        if let Some(t) = self.nodes.iter().position(|x| x == at) {
            let mut out = vec![f.zero(); self.nodes.len()];
            out[t] = f.one();
            return Ok(out);
        }
        let raw = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| f.div(w, &f.sub(at, x)))
            .collect::<Result<Vec<_>>>()?;
        let total = raw.iter().fold(f.zero(), |acc, v| f.add(&acc, v));
        let inv = f.inv(&total)?;
        Ok(raw.iter().map(|v| f.mul(v, &inv)).collect())
    }
}

/// Determinant of a square matrix of polynomials by evaluation at the first
/// `degree_bound + 1` canonical points followed by interpolation.
pub fn poly_matrix_determinant(
    field: &FieldSpec,
    m: &[Vec<UnivariatePoly>],
    degree_bound: usize,
) -> Result<UnivariatePoly> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.first().map_or(0, |r| r.len()),
        });
    }
    let points = field.enumerate_points(degree_bound + 1)?;
    let mut samples = Vec::with_capacity(points.len());
    for x in points {
        let rows: Vec<Vec<Scalar>> = m
            .iter()
            .map(|row| row.iter().map(|p| p.eval(&x)).collect())
            .collect();
        let y = det_in_place(field, rows);
        samples.push((x, y));
    }
    lagrange_interpolate(field, &samples)
}
