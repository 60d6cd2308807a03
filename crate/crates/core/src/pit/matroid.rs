use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{IndexSet, Label, Matrix};

/// Column matroid of a matrix; ground-set element `t` is column `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMatroid {
    matrix: Matrix,
}

impl LinearMatroid {
    pub fn new(matrix: Matrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn ground_size(&self) -> usize {
        self.matrix.cols()
    }

    pub fn rank_of(&self, cols: &[usize]) -> usize {
        let rows: Vec<usize> = (0..self.matrix.rows()).collect();
        self.matrix.submatrix_at(&rows, cols).rank()
    }

    pub fn is_independent(&self, cols: &[usize]) -> bool {
        self.rank_of(cols) == cols.len()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

fn swapped(set: &[usize], out: Option<usize>, inn: usize) -> Vec<usize> {
    let mut s: Vec<usize> = set.iter().copied().filter(|&x| Some(x) != out).collect();
    s.push(inn);
    s
}

/// Maximum common independent set, as sorted column indices.
///
/// Augments along shortest paths in the exchange graph, scanning sources and
/// neighbours in ascending order.
pub fn max_common_independent(m1: &LinearMatroid, m2: &LinearMatroid) -> Result<Vec<usize>> {
    let m = m1.ground_size();
    if m2.ground_size() != m {
        return Err(Error::DimensionMismatch(format!(
            "ground sets of size {m} and {}",
            m2.ground_size()
        )));
    }
    let mut current: Vec<usize> = Vec::new();
    loop {
        let mut inside = vec![false; m];
        for &x in &current {
            inside[x] = true;
        }
        let outside: Vec<usize> = (0..m).filter(|&z| !inside[z]).collect();
        let sinks: Vec<bool> = (0..m)
            .map(|z| !inside[z] && m2.is_independent(&swapped(&current, None, z)))
            .collect();
        let mut prev: Vec<Option<usize>> = vec![None; m];
        let mut seen = vec![false; m];
        let mut queue = VecDeque::new();
        for &z in &outside {
            if m1.is_independent(&swapped(&current, None, z)) {
                seen[z] = true;
                queue.push_back(z);
            }
        }
        let mut end = None;
        while let Some(v) = queue.pop_front() {
            if sinks[v] {
                end = Some(v);
                break;
            }
            for w in 0..m {
                if seen[w] || inside[w] == inside[v] {
                    continue;
                }
                let edge = if inside[v] {
                    // y in I to z outside: I - y + z independent in M1
                    m1.is_independent(&swapped(&current, Some(v), w))
                } else {
                    // z outside to y in I: I - y + z independent in M2
                    m2.is_independent(&swapped(&current, Some(w), v))
                };
                if edge {
                    seen[w] = true;
                    prev[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        let Some(mut v) = end else {
            current.sort_unstable();
            return Ok(current);
        };
        loop {
            inside[v] = !inside[v];
            match prev[v] {
                Some(p) => v = p,
                None => break,
            }
        }
        current = (0..m).filter(|&z| inside[z]).collect();
    }
}

/// Column set `T` with `|T|` equal to the row count and both `U[:,T]` and
/// `V[:,T]` nonsingular, or `None`.
pub fn matroid_intersection_common_base(u: &Matrix, v: &Matrix) -> Result<Option<IndexSet>> {
    if u.rows() != v.rows() || u.cols() != v.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} and {}x{}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols()
        )));
    }
    if u.field() != v.field() {
        return Err(Error::FieldMismatch);
    }
    let n = u.rows();
    if u.cols() < n {
        return Ok(None);
    }
    let common = max_common_independent(
        &LinearMatroid::new(u.clone()),
        &LinearMatroid::new(v.clone()),
    )?;
    Ok((common.len() == n).then(|| IndexSet::from_labels(common.into_iter().map(|c| c as Label))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::combinations;
    use crate::field::FieldSpec;
    use crate::generate::random_element;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    #[test]
    fn identity_prefix() {
        let u = Matrix::from_i64_rows(q(), &[[1, 0, 0, 4], [0, 1, 0, 5], [0, 0, 1, 6]]).unwrap();
        let t = matroid_intersection_common_base(&u, &u).unwrap().unwrap();
        assert_eq!(t, IndexSet::from_labels([0, 1, 2]));
    }

    #[test]
    fn equal_columns_have_no_base() {
        let u = Matrix::from_i64_rows(q(), &[[1, 1, 1], [2, 2, 2]]).unwrap();
        let v = Matrix::from_i64_rows(q(), &[[1, 0, 3], [0, 1, 1]]).unwrap();
        assert_eq!(matroid_intersection_common_base(&u, &v).unwrap(), None);
    }

    #[test]
    fn agrees_with_exhaustive_scan() {
        let f = FieldSpec::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let gen = |rng: &mut ChaCha8Rng| {
                let rows = (0..3)
                    .map(|_| (0..6).map(|_| {
                        if rand::Rng::gen_bool(rng, 0.4) { f.zero() } else { random_element(&f, rng) }
                    }).collect())
                    .collect();
                Matrix::from_rows(f.clone(), rows).unwrap()
            };
            let u = gen(&mut rng);
            let v = gen(&mut rng);
            let rows = [0, 1, 2];
            let exists = combinations(6, 3).any(|c| {
                !f.is_zero(&u.submatrix_at(&rows, &c).determinant().unwrap())
                    && !f.is_zero(&v.submatrix_at(&rows, &c).determinant().unwrap())
            });
            let found = matroid_intersection_common_base(&u, &v).unwrap();
            assert_eq!(found.is_some(), exists);
            if let Some(t) = found {
                let c: Vec<usize> = t.iter().collect();
                assert!(!f.is_zero(&u.submatrix_at(&rows, &c).determinant().unwrap()));
                assert!(!f.is_zero(&v.submatrix_at(&rows, &c).determinant().unwrap()));
            }
        }
    }
}
