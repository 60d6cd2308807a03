//! Diagonal shifts that make both adjugates entrywise nonzero.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{poly_matrix_determinant, BarycentricNodes, Label, Matrix, UnivariatePoly};
use crate::structure::{is_irreducible, support_digraph};

/// Number of random diagonals tried before the deterministic scan when the
/// randomized fast path is enabled.
pub const RANDOM_ATTEMPTS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ShiftOptions {
    /// Try seeded random diagonals before the deterministic scan.
    pub randomized: bool,
    pub seed: u64,
}

/// The shift `D` (by position) and the two adjugates it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    pub d: Vec<Scalar>,
    pub a_adj: Matrix,
    pub b_adj: Matrix,
}

/// Constant shift `a·I` with `det(A + aI) != 0`, `a` the first such canonical point.
pub fn nonsingular_shift(a: &Matrix) -> Result<Vec<Scalar>> {
    a.require_square()?;
    let f = a.field();
    let n = a.n();
    let entries: Vec<Vec<UnivariatePoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = UnivariatePoly::constant(f.clone(), a.get(i, j).clone());
                    if i == j {
                        c.add(&UnivariatePoly::var(f.clone()))
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let det = poly_matrix_determinant(f, &entries, n)?;
    // a monic degree-n polynomial has at most n roots
    for x in f.enumerate_points(n + 1)? {
        if !f.is_zero(&det.eval(&x)) {
            return Ok(vec![x; n]);
        }
    }
    Err(Error::Internal("monic determinant vanished on n+1 points".into()))
}

/// Shortest path from position `i` to `j` in the support digraph, visiting
/// successors in ascending order.
fn shortest_path(a: &Matrix, i: usize, j: usize) -> Option<Vec<usize>> {
    if i == j {
        return Some(vec![i]);
    }
    let adj = support_digraph(a);
    let mut parent = vec![None; a.n()];
    let mut seen = vec![false; a.n()];
    seen[i] = true;
    let mut queue = VecDeque::from([i]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some(v);
            if w == j {
                let mut path = vec![j];
                let mut cur = j;
                while let Some(p) = parent[cur] {
                    path.push(p);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// `adj(M)[i, j]` by a single cofactor.
fn adjugate_entry(m: &Matrix, i: usize, j: usize) -> Result<Scalar> {
    let n = m.n();
    let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
    let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
    let minor = m.submatrix_at(&rows, &cols).determinant()?;
    Ok(if (i + j).is_multiple_of(2) {
        minor
    } else {
        m.field().neg(&minor)
    })
}

/// Path from label `i` to label `j` used by [`adjugate_entry_shift`].
pub fn shift_path(a: &Matrix, i: Label, j: Label) -> Result<Vec<Label>> {
    let (pi, pj) = (a.row_position(i)?, a.row_position(j)?);
    let path = shortest_path(a, pi, pj).ok_or(Error::NotIrreducible)?;
    Ok(path.into_iter().map(|p| a.labels()[p]).collect())
}

/// Diagonal `D` with `adj(A + D)[i, j] != 0`: zero on the shortest path from
/// `i` to `j` (except at `i`) and a common value `y` elsewhere, with `y` the
/// first canonical point that works.
pub fn adjugate_entry_shift(a: &Matrix, i: Label, j: Label) -> Result<Vec<Scalar>> {
    a.require_square()?;
    if !is_irreducible(a) {
        return Err(Error::NotIrreducible);
    }
    let f = a.field();
    let n = a.n();
    let (pi, pj) = (a.row_position(i)?, a.row_position(j)?);
    let path = shortest_path(a, pi, pj).ok_or(Error::NotIrreducible)?;
    let on_path: Vec<bool> = (0..n).map(|v| v != pi && path.contains(&v)).collect();
    // the entry is a nonzero polynomial in y of degree below n
    for y in f.enumerate_points(n)? {
        let d: Vec<Scalar> = (0..n)
            .map(|v| if on_path[v] { f.zero() } else { y.clone() })
            .collect();
        let m = a.add_diagonal(&d);
        if !f.is_zero(&adjugate_entry(&m, pi, pj)?) {
            return Ok(d);
        }
    }
    Err(Error::Internal(format!(
        "adjugate entry ({}, {}) vanished on n points",
        i + 1,
        j + 1
    )))
}

/// Adjugates when `D` passes every condition, `None` otherwise.
fn try_shift(a: &Matrix, b: &Matrix, d: &[Scalar]) -> Result<Option<Shift>> {
    let f = a.field();
    let mut out = Vec::with_capacity(2);
    for m in [a, b] {
        let shifted = m.add_diagonal(d);
        if f.is_zero(&shifted.determinant()?) {
            return Ok(None);
        }
        let adj = shifted.adjugate()?;
        if adj.data().iter().any(|x| f.is_zero(x)) {
            return Ok(None);
        }
        out.push(adj);
    }
    let b_adj = out.pop().expect("two adjugates");
    let a_adj = out.pop().expect("two adjugates");
    Ok(Some(Shift {
        d: d.to_vec(),
        a_adj,
        b_adj,
    }))
}

fn random_point(f: &FieldSpec, rng: &mut ChaCha8Rng) -> Scalar {
    match f.cardinality() {
        Some(c) => f.point(rng.gen_range(0..c)),
        None => f.from_i64(rng.gen_range(-1000..=1000)),
    }
}

/// Number of candidate points scanned: `(2n³ + n)(2n² + 2) + 1`.
pub fn candidate_count(n: usize) -> u128 {
    let n = n as u128;
    (2 * n * n * n + n) * (2 * n * n + 2) + 1
}

/// Deterministic search for `D` with `A + D`, `B + D` invertible and both
/// adjugates entrywise nonzero.
///
/// The `2n² + 2` constituent shifts (a nonsingular shift for each matrix and
/// an entry shift for every `(i, j)` of each matrix, interleaved `A, B` in
/// row-major order) are attached to the first `2n² + 2` canonical points.
/// Candidate points are then scanned in canonical order; at a node the
/// attached shift is used directly, beyond the nodes each diagonal coordinate
/// is the interpolant through all nodes. Constituent shifts are computed only
/// when first needed.
pub fn combine_shifts(a: &Matrix, b: &Matrix, opts: &ShiftOptions) -> Result<Shift> {
    a.require_square()?;
    b.require_square()?;
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.labels() != b.labels() {
        return Err(Error::LabelMismatch);
    }
    let f = a.field();
    let n = a.n();
    if opts.randomized {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        for _ in 0..RANDOM_ATTEMPTS {
            let d: Vec<Scalar> = (0..n).map(|_| random_point(f, &mut rng)).collect();
            if let Some(s) = try_shift(a, b, &d)? {
                return Ok(s);
            }
        }
    }
    let candidates = candidate_count(n);
    f.ensure_points(candidates)?;
    let node_count = 2 * n * n + 2;
    let mut cache: Vec<Option<Vec<Scalar>>> = vec![None; node_count];
    let constituent = |t: usize| -> Result<Vec<Scalar>> {
        match t {
            0 => nonsingular_shift(a),
            1 => nonsingular_shift(b),
            _ => {
                let k = (t - 2) / 2;
                let m = if (t - 2).is_multiple_of(2) { a } else { b };
                adjugate_entry_shift(m, m.labels()[k / n], m.labels()[k % n])
            }
        }
    };
    for t in 0..node_count {
        let d = constituent(t)?;
        let hit = try_shift(a, b, &d)?;
        cache[t] = Some(d);
        if let Some(s) = hit {
            return Ok(s);
        }
    }
    let values: Vec<Vec<Scalar>> = cache
        .into_iter()
        .map(|d| d.expect("every node computed"))
        .collect();
    let nodes = BarycentricNodes::new(f, f.enumerate_points(node_count)?)?;
    for t in node_count as u128..candidates {
        let x = f.point(t);
        let basis = nodes.basis_at(&x)?;
        let d: Vec<Scalar> = (0..n)
            .map(|i| {
                values
                    .iter()
                    .zip(&basis)
                    .fold(f.zero(), |acc, (v, c)| f.add(&acc, &f.mul(&v[i], c)))
            })
            .collect();
        if let Some(s) = try_shift(a, b, &d)? {
            return Ok(s);
        }
    }
    Err(Error::Internal("no candidate shift passed".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn cycle6() -> Matrix {
        let mut rows = vec![vec![0i64; 6]; 6];
        for i in 0..6 {
            rows[i][(i + 1) % 6] = 1;
        }
        Matrix::from_i64_rows(q(), &rows).unwrap()
    }

    #[test]
    fn zero_matrix_shift() {
        let z = Matrix::zeros(q(), 3, 3);
        assert_eq!(nonsingular_shift(&z).unwrap(), vec![q().one(); 3]);
    }

    #[test]
    fn minus_identity_shift() {
        // det(-I) is already nonzero, so the first point wins
        let m = Matrix::identity(q(), 3).scale(&q().from_i64(-1));
        assert_eq!(nonsingular_shift(&m).unwrap(), vec![q().zero(); 3]);
        // diag(0, -1) vanishes at 0 and 1
        let m = Matrix::from_i64_rows(q(), &[[0, 0], [0, -1]]).unwrap();
        assert_eq!(nonsingular_shift(&m).unwrap(), vec![q().from_i64(2); 2]);
    }

    #[test]
    fn shift_mod_101_is_nonsingular() {
        let f = FieldSpec::prime(101).unwrap();
        let m = Matrix::from_i64_rows(f.clone(), &[[3, 5, 0, 1], [2, 2, 7, 9], [0, 4, 4, 4], [1, 0, 0, 8]]).unwrap();
        let d = nonsingular_shift(&m).unwrap();
        assert!(!f.is_zero(&m.add_diagonal(&d).determinant().unwrap()));
    }

    #[test]
    fn cycle_path() {
        assert_eq!(shift_path(&cycle6(), 0, 3).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn entry_shift_makes_entry_nonzero() {
        let a = cycle6();
        for (i, j) in [(0, 0), (0, 3), (4, 1)] {
            let d = adjugate_entry_shift(&a, i, j).unwrap();
            let adj = a.add_diagonal(&d).adjugate().unwrap();
            assert!(adj.is_nonzero(i, j));
        }
        let ones = Matrix::from_i64_rows(q(), &[[1, 1], [1, 1]]).unwrap();
        let d = adjugate_entry_shift(&ones, 0, 1).unwrap();
        let adj = ones.add_diagonal(&d).adjugate().unwrap();
        assert_eq!(adj.get(0, 1), &q().from_i64(-1));
    }

    #[test]
    fn reducible_entry_shift_fails() {
        assert_eq!(
            adjugate_entry_shift(&Matrix::identity(q(), 2), 0, 1),
            Err(Error::NotIrreducible)
        );
    }

    #[test]
    fn cycle_pair_shift_is_dense() {
        let a = cycle6();
        let s = combine_shifts(&a, &a.transpose(), &ShiftOptions::default()).unwrap();
        assert!(s.a_adj.data().iter().all(|x| !q().is_zero(x)));
        assert!(s.b_adj.data().iter().all(|x| !q().is_zero(x)));
    }
}
