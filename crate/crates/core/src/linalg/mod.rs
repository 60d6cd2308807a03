//! Dense exact matrices with labelled rows and columns.

mod poly;

pub use poly::{lagrange_interpolate, poly_matrix_determinant, BarycentricNodes, UnivariatePoly};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Row/column identifier. Printed one-based.
pub type Label = usize;

/// A sorted, duplicate-free set of labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<Label>);

impl IndexSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_labels<I: IntoIterator<Item = Label>>(labels: I) -> Self {
        let mut v: Vec<Label> = labels.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    /// Elements of `labels` whose position bit is set in `mask`.
    pub fn from_mask(labels: &[Label], mask: u64) -> Self {
        Self(
            labels
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &l)| l)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, l: Label) -> bool {
        self.0.binary_search(&l).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Label] {
        &self.0
    }

    pub fn first(&self) -> Option<Label> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, l: Label) {
        if let Err(pos) = self.0.binary_search(&l) {
            self.0.insert(pos, l);
        }
    }

    pub fn with(&self, l: Label) -> Self {
        let mut s = self.clone();
        s.insert(l);
        s
    }

    pub fn union(&self, other: &IndexSet) -> Self {
        Self::from_labels(self.iter().chain(other.iter()))
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.iter().all(|l| other.contains(l))
    }

    /// `universe ∖ self`.
    pub fn complement_in(&self, universe: &[Label]) -> Self {
        Self(universe.iter().copied().filter(|&l| !self.contains(l)).collect())
    }
}

impl FromIterator<Label> for IndexSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        Self::from_labels(iter)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|l| (l + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
}

impl Matrix {
    /// Row-major data with default labels `0..rows` and `0..cols`.
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|s| !field.contains(s)) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
            row_labels: (0..rows).collect(),
            col_labels: (0..cols).collect(),
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Self {
            data: vec![z; rows * cols],
            field,
            rows,
            cols,
            row_labels: (0..rows).collect(),
            col_labels: (0..cols).collect(),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        let one = m.field.one();
        for i in 0..n {
            m.data[i * n + i] = one.clone();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> Result<Self> {
        let data = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, data)
    }

    /// Replaces the labels of a square matrix. Labels must be strictly increasing.
    pub fn with_labels(mut self, labels: Vec<Label>) -> Result<Self> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if labels.len() != self.rows || labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::DimensionMismatch(
                "labels must be strictly increasing, one per row".into(),
            ));
        }
        self.row_labels = labels.clone();
        self.col_labels = labels;
        Ok(self)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn n(&self) -> usize {
        self.rows
    }

    /// Labels of a square matrix.
    pub fn labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    pub fn label_set(&self) -> IndexSet {
        IndexSet(self.row_labels.clone())
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    /// Entry at row position `r`, column position `c`.
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(self.field.contains(&v));
        self.data[r * self.cols + c] = v;
    }

    pub fn is_nonzero(&self, r: usize, c: usize) -> bool {
        !self.field.is_zero(self.get(r, c))
    }

    pub fn row_position(&self, l: Label) -> Result<usize> {
        position(&self.row_labels, l)
    }

    pub fn col_position(&self, l: Label) -> Result<usize> {
        position(&self.col_labels, l)
    }

    /// Entry addressed by labels.
    pub fn at(&self, i: Label, j: Label) -> Result<&Scalar> {
        Ok(self.get(self.row_position(i)?, self.col_position(j)?))
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            data,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = f.zero();
                for k in 0..self.cols {
                    let a = self.get(r, k);
                    if f.is_zero(a) {
                        continue;
                    }
                    acc = f.add(&acc, &f.mul(a, other.get(k, c)));
                }
                data.push(acc);
            }
        }
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: other.cols,
            data,
            row_labels: self.row_labels.clone(),
            col_labels: other.col_labels.clone(),
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(
        &self,
        other: &Matrix,
        op: impl Fn(&FieldSpec, &Scalar, &Scalar) -> Scalar,
    ) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("shapes differ".into()));
        }
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = op(&self.field, x, y);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = self.field.mul(x, c);
        }
        out
    }

    /// `A + diag(d)`, with `d` indexed by position.
    pub fn add_diagonal(&self, d: &[Scalar]) -> Matrix {
        let mut out = self.clone();
        for (i, v) in d.iter().enumerate().take(self.rows.min(self.cols)) {
            let x = self.field.add(out.get(i, i), v);
            out.set(i, i, x);
        }
        out
    }

    /// Rows and columns restricted to `s`, labels preserved.
    pub fn principal_submatrix(&self, s: &IndexSet) -> Result<Matrix> {
        self.submatrix(s, s)
    }

    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Matrix> {
        let rp = rows
            .iter()
            .map(|l| self.row_position(l))
            .collect::<Result<Vec<_>>>()?;
        let cp = cols
            .iter()
            .map(|l| self.col_position(l))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.submatrix_at(&rp, &cp))
    }

    /// Submatrix by positions; labels follow the selected positions.
    pub fn submatrix_at(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            for &c in cols {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
            row_labels: rows.iter().map(|&r| self.row_labels[r]).collect(),
            col_labels: cols.iter().map(|&c| self.col_labels[c]).collect(),
        }
    }

    /// Copies the matrix into an extension field.
    pub fn embed(&self, target: &FieldSpec) -> Result<Matrix> {
        let data = self
            .data
            .iter()
            .map(|x| target.embed(&self.field, x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            field: target.clone(),
            data,
            ..self.clone()
        })
    }

    fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        self.data.chunks(self.cols.max(1)).map(|c| c.to_vec()).collect()
    }

    /// Determinant by elimination, pivoting on the first nonzero entry of each column.
    pub fn determinant(&self) -> Result<Scalar> {
        self.require_square()?;
        Ok(det_in_place(&self.field, self.row_vecs_square()))
    }

    fn row_vecs_square(&self) -> Vec<Vec<Scalar>> {
        if self.rows == 0 {
            Vec::new()
        } else {
            self.row_vecs()
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let f = &self.field;
        let mut m = self.row_vecs();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !f.is_zero(&m[r][c])) else {
                continue;
            };
            m.swap(rank, p);
            let inv = f.inv(&m[rank][c]).expect("pivot is nonzero");
            for r in rank + 1..self.rows {
                if f.is_zero(&m[r][c]) {
                    continue;
                }
                let factor = f.mul(&m[r][c], &inv);
                for k in c..self.cols {
                    let t = f.mul(&factor, &m[rank][k]);
                    m[r][k] = f.sub(&m[r][k], &t);
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        let mut m = self.row_vecs_square();
        let mut inv: Vec<Vec<Scalar>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect())
            .collect();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !f.is_zero(&m[r][c])) else {
                return Ok(None);
            };
            m.swap(c, p);
            inv.swap(c, p);
            let pinv = f.inv(&m[c][c])?;
            for k in 0..n {
                m[c][k] = f.mul(&m[c][k], &pinv);
                inv[c][k] = f.mul(&inv[c][k], &pinv);
            }
            for r in 0..n {
                if r == c || f.is_zero(&m[r][c]) {
                    continue;
                }
                let factor = m[r][c].clone();
                for k in 0..n {
                    let t = f.mul(&factor, &m[c][k]);
                    m[r][k] = f.sub(&m[r][k], &t);
                    let t = f.mul(&factor, &inv[c][k]);
                    inv[r][k] = f.sub(&inv[r][k], &t);
                }
            }
        }
        Ok(Some(Matrix {
            field: f.clone(),
            rows: n,
            cols: n,
            data: inv.into_iter().flatten().collect(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }))
    }

    /// `adj(A)[i,j] = (-1)^{i+j} det(A without row j and column i)`.
    pub fn adjugate(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let f = &self.field;
        if n == 0 {
            return Ok(self.clone());
        }
        if n == 1 {
            let mut out = self.clone();
            out.data[0] = f.one();
            return Ok(out);
        }
        let det = self.determinant()?;
        if !f.is_zero(&det) {
            let inv = self.inverse()?.ok_or_else(|| {
                Error::Internal("nonzero determinant but no inverse".into())
            })?;
            let mut out = inv.scale(&det);
            out.row_labels = self.row_labels.clone();
            out.col_labels = self.col_labels.clone();
            return Ok(out);
        }
        let mut out = Matrix {
            data: vec![f.zero(); n * n],
            ..self.clone()
        };
        if self.rank() < n - 1 {
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix_at(&rows, &cols).determinant()?;
                let v = if (i + j) % 2 == 0 { minor } else { f.neg(&minor) };
                out.data[i * n + j] = v;
            }
        }
        Ok(out)
    }

    /// Entries in display form, one row per line.
    pub fn format_rows(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.field.format_scalar(self.get(r, c)))
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.format_rows() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn position(labels: &[Label], l: Label) -> Result<usize> {
    labels
        .iter()
        .position(|&x| x == l)
        .ok_or(Error::UnknownLabel(l))
}

/// Consumes a square row array. Empty input has determinant one.
pub(crate) fn det_in_place(f: &FieldSpec, mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = f.one();
    let mut negate = false;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !f.is_zero(&m[r][c])) else {
            return f.zero();
        };
        if p != c {
            m.swap(c, p);
            negate = !negate;
        }
        let inv = f.inv(&m[c][c]).expect("pivot is nonzero");
        det = f.mul(&det, &m[c][c]);
        let (top, bottom) = m.split_at_mut(c + 1);
        let pivot_row = &top[c];
        for row in bottom.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let factor = f.mul(&row[c], &inv);
            for k in c + 1..n {
                if f.is_zero(&pivot_row[k]) {
                    continue;
                }
                let t = f.mul(&factor, &pivot_row[k]);
                row[k] = f.sub(&row[k], &t);
            }
        }
    }
    if negate {
        f.neg(&det)
    } else {
        det
    }
}
