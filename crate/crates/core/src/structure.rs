//! Strongly connected blocks and diagonal similarity.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{IndexSet, Label, Matrix};

/// Strong components of the support digraph in a topological order of the
/// condensation, so the matrix is block upper triangular in this order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<IndexSet>,
}

impl BlockDecomposition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_matrices(&self, a: &Matrix) -> Result<Vec<Matrix>> {
        self.blocks.iter().map(|t| a.principal_submatrix(t)).collect()
    }
}

/// Adjacency lists by position: `j` is a successor of `i` iff `i != j` and `A[i,j] != 0`.
pub fn support_digraph(a: &Matrix) -> Vec<Vec<usize>> {
    let n = a.n();
    (0..n)
        .map(|i| (0..n).filter(|&j| j != i && a.is_nonzero(i, j)).collect())
        .collect()
}

struct Tarjan<'a> {
    adj: &'a [Vec<usize>],
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    next: usize,
    comp: Vec<usize>,
    count: usize,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = Some(self.next);
        self.low[v] = self.next;
        self.next += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for &w in self.adj[v].iter() {
            match self.index[w] {
                None => {
                    self.visit(w);
                    self.low[v] = self.low[v].min(self.low[w]);
                }
                Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                _ => {}
            }
        }
        if Some(self.low[v]) == self.index[v] {
            loop {
                let w = self.stack.pop().expect("stack holds the component");
                self.on_stack[w] = false;
                self.comp[w] = self.count;
                if w == v {
                    break;
                }
            }
            self.count += 1;
        }
    }
}

/// Component id per position, and the number of components.
fn strong_components(adj: &[Vec<usize>]) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut t = Tarjan {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        comp: vec![0; n],
        count: 0,
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    (t.comp, t.count)
}

pub fn irreducible_blocks(a: &Matrix) -> Result<BlockDecomposition> {
    a.require_square()?;
    let n = a.n();
    let adj = support_digraph(a);
    let (comp, count) = strong_components(&adj);
    // positions are in label order, so the first member seen is the smallest
    let mut key = vec![usize::MAX; count];
    for v in 0..n {
        key[comp[v]] = key[comp[v]].min(v);
    }
    let mut succ = vec![Vec::new(); count];
    let mut indeg = vec![0usize; count];
    for u in 0..n {
        for &w in &adj[u] {
            let (cu, cw) = (comp[u], comp[w]);
            if cu != cw && !succ[cu].contains(&cw) {
                succ[cu].push(cw);
                indeg[cw] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..count)
        .filter(|&c| indeg[c] == 0)
        .map(|c| Reverse((key[c], c)))
        .collect();
    let mut blocks = Vec::with_capacity(count);
    while let Some(Reverse((_, c))) = heap.pop() {
        blocks.push(IndexSet::from_labels(
            (0..n).filter(|&v| comp[v] == c).map(|v| a.labels()[v]),
        ));
        for &w in &succ[c] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(Reverse((key[w], w)));
            }
        }
    }
    Ok(BlockDecomposition { blocks })
}

pub fn is_irreducible(a: &Matrix) -> bool {
    irreducible_blocks(a).is_ok_and(|b| b.len() <= 1)
}

/// The common block list when both matrices have the same strong-component
/// partition, in the block order of `a`.
pub fn partition_compatible(a: &Matrix, b: &Matrix) -> Result<Option<Vec<IndexSet>>> {
    if a.labels() != b.labels() {
        return Err(Error::LabelMismatch);
    }
    let ba = irreducible_blocks(a)?;
    let bb = irreducible_blocks(b)?;
    let mut sa = ba.blocks.clone();
    let mut sb = bb.blocks;
    sa.sort();
    sb.sort();
    Ok((sa == sb).then_some(ba.blocks))
}

/// `D` over the labels of the pair, with `B = D·A·D⁻¹` (or `D·Aᵀ·D⁻¹` when transposed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalWitness {
    pub labels: Vec<Label>,
    pub d: Vec<Scalar>,
    pub transposed: bool,
}

impl DiagonalWitness {
    pub fn identity(a: &Matrix) -> Self {
        Self {
            labels: a.labels().to_vec(),
            d: vec![a.field().one(); a.n()],
            transposed: false,
        }
    }

    /// Checks `B = D·op(A)·D⁻¹` entry by entry.
    pub fn certifies(&self, a: &Matrix, b: &Matrix) -> bool {
        let f = a.field();
        let n = a.n();
        if b.field() != f
            || a.labels() != self.labels.as_slice()
            || b.labels() != self.labels.as_slice()
            || self.d.len() != n
            || !a.is_square()
            || !b.is_square()
            || self.d.iter().any(|x| !f.contains(x) || f.is_zero(x))
        {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                let src = if self.transposed { a.get(j, i) } else { a.get(i, j) };
                let lhs = f.mul(b.get(i, j), &self.d[j]);
                let rhs = f.mul(&self.d[i], src);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Witness `D` with `B = D·A·D⁻¹`, or `None`.
pub fn diag_similar(a: &Matrix, b: &Matrix) -> Result<Option<DiagonalWitness>> {
    a.require_square()?;
    b.require_square()?;
    if a.labels() != b.labels() {
        return Err(Error::LabelMismatch);
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let f = a.field();
    let n = a.n();
    for i in 0..n {
        if a.get(i, i) != b.get(i, i) {
            return Ok(None);
        }
        for j in 0..n {
            if a.is_nonzero(i, j) != b.is_nonzero(i, j) {
                return Ok(None);
            }
        }
    }
    let mut d: Vec<Option<Scalar>> = vec![None; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(f.one());
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().expect("queued vertices are assigned");
            for j in 0..n {
                if j == i || d[j].is_some() {
                    continue;
                }
                let forward = if a.is_nonzero(i, j) {
                    Some(f.div(&f.mul(&di, a.get(i, j)), b.get(i, j))?)
                } else {
                    None
                };
                let backward = if a.is_nonzero(j, i) {
                    Some(f.div(&f.mul(&di, b.get(j, i)), a.get(j, i))?)
                } else {
                    None
                };
                let dj = match (forward, backward) {
                    (Some(x), Some(y)) if x != y => return Ok(None),
                    (Some(x), _) | (None, Some(x)) => x,
                    (None, None) => continue,
                };
                d[j] = Some(dj);
                queue.push_back(j);
            }
        }
    }
    let witness = DiagonalWitness {
        labels: a.labels().to_vec(),
        d: d.into_iter().map(|x| x.expect("every vertex is reached")).collect(),
        transposed: false,
    };
    Ok(witness.certifies(a, b).then_some(witness))
}

/// Tries `B = D·A·D⁻¹`, then `B = D·Aᵀ·D⁻¹`.
pub fn diag_equivalent(a: &Matrix, b: &Matrix) -> Result<Option<DiagonalWitness>> {
    if let Some(w) = diag_similar(a, b)? {
        return Ok(Some(w));
    }
    Ok(diag_similar(&a.transpose(), b)?.map(|w| DiagonalWitness {
        transposed: true,
        ..w
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64_rows(q(), rows).unwrap()
    }

    fn conjugate(a: &Matrix, d: &[Scalar]) -> Matrix {
        let f = a.field();
        let mut out = a.clone();
        for i in 0..a.n() {
            for j in 0..a.n() {
                let v = f.div(&f.mul(&d[i], a.get(i, j)), &d[j]).unwrap();
                out.set(i, j, v);
            }
        }
        out
    }

    #[test]
    fn cycle_is_one_block() {
        let mut rows = vec![vec![0i64; 6]; 6];
        for i in 0..6 {
            rows[i][(i + 1) % 6] = 1;
        }
        let a = Matrix::from_i64_rows(q(), &rows).unwrap();
        let b = irreducible_blocks(&a).unwrap();
        assert_eq!(b.blocks, vec![a.label_set()]);
    }

    #[test]
    fn triangular_two_blocks() {
        let b = irreducible_blocks(&m(&[&[1, 1], &[0, 1]])).unwrap();
        assert_eq!(b.blocks, vec![IndexSet::from_labels([0]), IndexSet::from_labels([1])]);
        // edge 2 -> 1 only: block {2} must come first
        let b = irreducible_blocks(&m(&[&[1, 0], &[1, 1]])).unwrap();
        assert_eq!(b.blocks, vec![IndexSet::from_labels([1]), IndexSet::from_labels([0])]);
    }

    #[test]
    fn partitions_differ() {
        let a = m(&[&[1, 2, 0], &[3, 1, 0], &[0, 0, 1]]);
        let b = m(&[&[1, 0, 0], &[0, 1, 2], &[0, 3, 1]]);
        assert_eq!(partition_compatible(&a, &b).unwrap(), None);
        assert_eq!(
            partition_compatible(&a, &a).unwrap().unwrap().len(),
            2
        );
    }

    #[test]
    fn recovers_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let rows: Vec<Vec<i64>> = (0..5).map(|_| (0..5).map(|_| rng.gen_range(-3..=3)).collect()).collect();
            let a = Matrix::from_i64_rows(q(), &rows).unwrap();
            let d: Vec<Scalar> = (0..5).map(|_| q().from_i64(rng.gen_range(1..=6))).collect();
            let b = conjugate(&a, &d);
            let w = diag_similar(&a, &b).unwrap().expect("conjugate pair");
            assert!(w.certifies(&a, &b));
            assert!(!w.transposed);
        }
    }

    #[test]
    fn zero_pattern_mismatch() {
        let a = Matrix::identity(q(), 2);
        assert_eq!(diag_similar(&a, &m(&[&[1, 1], &[0, 1]])).unwrap(), None);
    }

    #[test]
    fn equivalent_to_transpose() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        let w = diag_equivalent(&a, &a.transpose()).unwrap().unwrap();
        assert!(w.transposed);
        let w = diag_equivalent(&a, &a).unwrap().unwrap();
        assert_eq!(w, DiagonalWitness::identity(&a));
    }

    #[test]
    fn generic_pair_has_no_witness_over_gf5() {
        let f = FieldSpec::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut negatives = 0;
        for _ in 0..40 {
            let gen = |rng: &mut ChaCha8Rng| {
                let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0..5)).collect()).collect();
                Matrix::from_i64_rows(f.clone(), &rows).unwrap()
            };
            let a = gen(&mut rng);
            let b = gen(&mut rng);
            let fast = diag_equivalent(&a, &b).unwrap().is_some();
            let mut slow = false;
            for t in [false, true] {
                let src = if t { a.transpose() } else { a.clone() };
                for code in 0..64 {
                    let d: Vec<Scalar> = (0..3).map(|k| f.from_i64(((code >> (2 * k)) & 3) + 1)).collect();
                    let w = DiagonalWitness { labels: vec![0, 1, 2], d, transposed: false };
                    slow |= w.certifies(&src, &b);
                }
            }
            assert_eq!(fast, slow);
            negatives += usize::from(!fast);
        }
        assert!(negatives > 30);
    }
}
