//! Cuts, the cut-transpose operation and minimal cut search.

mod sfm;

pub use sfm::min_norm_point_minimizer;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{IndexSet, Matrix};
use crate::structure::is_irreducible;

/// Largest `n` for which the exhaustive subset scan is used automatically.
pub const EXHAUSTIVE_LIMIT: usize = 16;

/// Largest `n` accepted by [`brute_force_min_cut`].
pub const BRUTE_FORCE_LIMIT: usize = 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutBackend {
    /// Closure when all off-diagonal entries are nonzero, otherwise exhaustive
    /// up to [`EXHAUSTIVE_LIMIT`] and minimum-norm-point above.
    #[default]
    Auto,
    Exhaustive,
    MinNormPoint,
    /// Requires every off-diagonal entry to be nonzero.
    Closure,
}

/// `min(rank, 2)` of the block with the given row and column positions.
fn capped_rank(a: &Matrix, rows: &[usize], cols: &[usize]) -> usize {
    let f = a.field();
    let mut pivot: Option<(usize, usize)> = None;
    'outer: for &r in rows {
        for &c in cols {
            if a.is_nonzero(r, c) {
                pivot = Some((r, c));
                break 'outer;
            }
        }
    }
    let Some((r0, c0)) = pivot else {
        return 0;
    };
    let p = a.get(r0, c0);
    for &r in rows {
        let rc0 = a.get(r, c0);
        for &c in cols {
            let lhs = f.mul(a.get(r, c), p);
            let rhs = f.mul(rc0, a.get(r0, c));
            if lhs != rhs {
                return 2;
            }
        }
    }
    1
}

fn split_positions(a: &Matrix, x: &IndexSet) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut inside = Vec::with_capacity(x.len());
    for l in x.iter() {
        inside.push(a.row_position(l)?);
    }
    let outside = (0..a.n()).filter(|p| !inside.contains(p)).collect();
    Ok((inside, outside))
}

/// True iff `2 <= |X| <= n-2` and both off-diagonal blocks have rank at most one.
pub fn is_cut(a: &Matrix, x: &IndexSet) -> bool {
    let n = a.n();
    if !a.is_square() || x.len() < 2 || x.len() + 2 > n {
        return false;
    }
    let Ok((inside, outside)) = split_positions(a, x) else {
        return false;
    };
    capped_rank(a, &inside, &outside) <= 1 && capped_rank(a, &outside, &inside) <= 1
}

/// `A[X,X̄] = p·qᵀ` and `A[X̄,X] = u·vᵀ`, with `q` the first nonzero row of the
/// upper block and `u` the first nonzero column of the lower block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankOneFactors {
    pub p: Vec<Scalar>,
    pub q: Vec<Scalar>,
    pub u: Vec<Scalar>,
    pub v: Vec<Scalar>,
}

/// Row vector `q` (first nonzero row) and scale `p` of a rank-one block.
fn factor_block(a: &Matrix, rows: &[usize], cols: &[usize]) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let f = a.field();
    let (r0, c0) = rows
        .iter()
        .find_map(|&r| cols.iter().find(|&&c| a.is_nonzero(r, c)).map(|&c| (r, c)))
        .ok_or(Error::ZeroBlock)?;
    let q: Vec<Scalar> = cols.iter().map(|&c| a.get(r0, c).clone()).collect();
    let pivot = a.get(r0, c0);
    let p = rows
        .iter()
        .map(|&r| f.div(a.get(r, c0), pivot))
        .collect::<Result<Vec<_>>>()?;
    Ok((p, q))
}

pub fn rank_one_factors(a: &Matrix, x: &IndexSet) -> Result<RankOneFactors> {
    if !is_cut(a, x) {
        return Err(Error::NotACut { index: None });
    }
    let (inside, outside) = split_positions(a, x)?;
    let (p, q) = factor_block(a, &inside, &outside)?;
    // the lower block factors column-wise: work on its transpose
    let (v, u) = factor_block(&a.transpose(), &inside, &outside)?;
    Ok(RankOneFactors { p, q, u, v })
}

/// `tw(A, X)`: blocks `[[A[X], p·uᵀ], [q·vᵀ, A[X̄]ᵀ]]`, labels preserved.
pub fn cut_transpose(a: &Matrix, x: &IndexSet) -> Result<Matrix> {
    let RankOneFactors { p, q, u, v } = rank_one_factors(a, x)?;
    let f = a.field();
    let (inside, outside) = split_positions(a, x)?;
    let mut out = a.clone();
    for (ix, &r) in inside.iter().enumerate() {
        for (iy, &c) in outside.iter().enumerate() {
            out.set(r, c, f.mul(&p[ix], &u[iy]));
            out.set(c, r, f.mul(&q[iy], &v[ix]));
        }
    }
    for &r in &outside {
        for &c in &outside {
            out.set(r, c, a.get(c, r).clone());
        }
    }
    Ok(out)
}

/// `rank(A[X,X̄]) + rank(A[X̄,X])`.
pub fn cut_function_g(a: &Matrix, x: &IndexSet) -> Result<usize> {
    a.require_square()?;
    let (inside, outside) = split_positions(a, x)?;
    let up = a.submatrix_at(&inside, &outside).rank();
    let down = a.submatrix_at(&outside, &inside).rank();
    Ok(up + down)
}

fn to_labels(a: &Matrix, mask: &[bool]) -> IndexSet {
    IndexSet::from_labels(
        mask.iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| a.labels()[i]),
    )
}

/// Index tuples of size `k` from `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let next = {
            let mut c = out.clone();
            let mut i = k;
            loop {
                if i == 0 {
                    break None;
                }
                i -= 1;
                if c[i] < n - k + i {
                    c[i] += 1;
                    for j in i + 1..k {
                        c[j] = c[j - 1] + 1;
                    }
                    break Some(c);
                }
            }
        };
        cur = next;
        Some(out)
    })
}

fn is_cut_positions(a: &Matrix, inside: &[usize]) -> bool {
    let outside: Vec<usize> = (0..a.n()).filter(|p| !inside.contains(p)).collect();
    inside.len() >= 2
        && outside.len() >= 2
        && capped_rank(a, inside, &outside) <= 1
        && capped_rank(a, &outside, inside) <= 1
}

/// First cut in (size, lexicographic) order.
pub fn brute_force_min_cut(a: &Matrix) -> Result<Option<IndexSet>> {
    a.require_square()?;
    let n = a.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    for k in 2..=n.saturating_sub(2) {
        for c in combinations(n, k) {
            if is_cut_positions(a, &c) {
                return Ok(Some(IndexSet::from_labels(c.iter().map(|&i| a.labels()[i]))));
            }
        }
    }
    Ok(None)
}

/// Every cut, in (size, lexicographic) order.
pub fn enumerate_cuts(a: &Matrix) -> Result<Vec<IndexSet>> {
    a.require_square()?;
    let n = a.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut out = Vec::new();
    for k in 2..=n.saturating_sub(2) {
        for c in combinations(n, k) {
            if is_cut_positions(a, &c) {
                out.push(IndexSet::from_labels(c.iter().map(|&i| a.labels()[i])));
            }
        }
    }
    Ok(out)
}

fn off_diagonal_nonzero(a: &Matrix) -> bool {
    let n = a.n();
    (0..n).all(|i| (0..n).all(|j| i == j || a.is_nonzero(i, j)))
}

/// A minimum-size cut, ties broken lexicographically, or `None`.
///
/// Every candidate comes from a tuple `T = (t1, t2, t3, t4)` and a minimizer
/// of `g'_T(X) = (n+1)·g(X ∪ {t1,t2}) + |X|` over `X ⊆ V∖T`. A cut exists iff
/// some minimum has `g <= 2`. Since every minimum-size cut is the unique
/// minimal minimizer for suitable `T`, taking the least candidate in
/// (size, lexicographic) order gives the same answer as [`brute_force_min_cut`].
pub fn minimal_cut(a: &Matrix) -> Result<Option<IndexSet>> {
    minimal_cut_with(a, CutBackend::Auto)
}

pub fn minimal_cut_with(a: &Matrix, backend: CutBackend) -> Result<Option<IndexSet>> {
    a.require_square()?;
    let n = a.n();
    if n < 4 {
        return Ok(None);
    }
    if !is_irreducible(a) {
        return Err(Error::NotIrreducible);
    }
    let dense = off_diagonal_nonzero(a);
    let backend = match backend {
        CutBackend::Auto if dense => CutBackend::Closure,
        CutBackend::Auto if n <= EXHAUSTIVE_LIMIT => CutBackend::Exhaustive,
        CutBackend::Auto => CutBackend::MinNormPoint,
        other => other,
    };
    let mask = match backend {
        CutBackend::Closure => {
            if !dense {
                return Err(Error::Internal(
                    "closure search needs nonzero off-diagonal entries".into(),
                ));
            }
            closure_search(a)
        }
        CutBackend::Exhaustive => exhaustive_search(a)?,
        CutBackend::MinNormPoint => mnp_search(a)?,
        CutBackend::Auto => unreachable!(),
    };
    Ok(mask.map(|m| to_labels(a, &m)))
}

fn better(candidate: &[bool], best: &Option<Vec<bool>>) -> bool {
    let Some(b) = best else { return true };
    let size = |m: &[bool]| m.iter().filter(|&&x| x).count();
    let key = |m: &[bool]| -> Vec<usize> { (0..m.len()).filter(|&i| m[i]).collect() };
    (size(candidate), key(candidate)) < (size(b), key(b))
}

/// Ordered pairs `{t1,t2}`, `{t3,t4}` of the tuple scan, each as a sorted pair.
fn tuple_scan(n: usize) -> impl Iterator<Item = ([usize; 2], [usize; 2])> {
    combinations(n, 2).flat_map(move |s| {
        let s = [s[0], s[1]];
        combinations(n, 2)
            .filter(move |t| !t.contains(&s[0]) && !t.contains(&s[1]))
            .map(move |t| (s, [t[0], t[1]]))
    })
}

fn exhaustive_search(a: &Matrix) -> Result<Option<Vec<bool>>> {
    let n = a.n();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge {
            size: n,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    // capped g per subset: exact up to 2, larger values collapse to 4, which
    // keeps the order of g' among sets with g <= 2
    let full = 1usize << n;
    let mut g = vec![0u8; full];
    for (mask, slot) in g.iter_mut().enumerate() {
        let inside: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let outside: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
        *slot = (capped_rank(a, &inside, &outside) + capped_rank(a, &outside, &inside)) as u8;
    }
    // subsets in increasing g' order, lexicographic among equals
    let mut order: Vec<usize> = (0..full).collect();
    let lex = |m: usize| -> Vec<usize> { (0..n).filter(|i| m >> i & 1 == 1).collect() };
    order.sort_by_cached_key(|&m| ((n + 1) * g[m] as usize + m.count_ones() as usize, lex(m)));
    let mut best: Option<Vec<bool>> = None;
    for (s, t) in tuple_scan(n) {
        let need = 1usize << s[0] | 1usize << s[1];
        let avoid = 1usize << t[0] | 1usize << t[1];
        let Some(&m) = order.iter().find(|&&m| m & need == need && m & avoid == 0) else {
            continue;
        };
        if g[m] <= 2 {
            let cand: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            if better(&cand, &best) {
                best = Some(cand);
            }
        }
    }
    Ok(best)
}

fn mnp_search(a: &Matrix) -> Result<Option<Vec<bool>>> {
    let n = a.n();
    let mut best: Option<Vec<bool>> = None;
    for (s, t) in tuple_scan(n) {
        let ground: Vec<usize> = (0..n).filter(|i| !s.contains(i) && !t.contains(i)).collect();
        let g_prime = |chosen: &[usize]| -> Result<i64> {
            let mut inside: Vec<usize> = chosen.iter().map(|&k| ground[k]).collect();
            inside.extend_from_slice(&s);
            inside.sort_unstable();
            let outside: Vec<usize> = (0..n).filter(|p| !inside.contains(p)).collect();
            let g = a.submatrix_at(&inside, &outside).rank() + a.submatrix_at(&outside, &inside).rank();
            Ok(((n + 1) * g + chosen.len()) as i64)
        };
        let minimizer = min_norm_point_minimizer(ground.len(), g_prime)?;
        let mut cand = vec![false; n];
        cand[s[0]] = true;
        cand[s[1]] = true;
        for k in minimizer {
            cand[ground[k]] = true;
        }
        let inside: Vec<usize> = (0..n).filter(|&i| cand[i]).collect();
        if is_cut_positions(a, &inside) && better(&cand, &best) {
            best = Some(cand);
        }
    }
    Ok(best)
}

/// Smallest cut containing `{t1, t2}` and avoiding `t3`, when all off-diagonal
/// entries are nonzero. Gives up once the set outgrows `limit`.
fn closure(a: &Matrix, t1: usize, t2: usize, t3: usize, limit: usize) -> Option<Vec<bool>> {
    let f = a.field();
    let n = a.n();
    let mut inside = vec![false; n];
    inside[t1] = true;
    inside[t2] = true;
    let mut size = 2;
    let mut work = vec![t1, t2];
    let up = a.get(t1, t3);
    let down = a.get(t3, t1);
    while let Some(i) = work.pop() {
        for j in 0..n {
            if inside[j] {
                continue;
            }
            let forced = f.mul(a.get(i, j), up) != f.mul(a.get(t1, j), a.get(i, t3))
                || f.mul(a.get(j, i), down) != f.mul(a.get(j, t1), a.get(t3, i));
            if forced {
                inside[j] = true;
                size += 1;
                if size > limit || size + 2 > n {
                    return None;
                }
                work.push(j);
            }
        }
    }
    Some(inside)
}

fn closure_search(a: &Matrix) -> Option<Vec<bool>> {
    let n = a.n();
    let mut best: Option<Vec<bool>> = None;
    for pair in combinations(n, 2) {
        for t3 in (0..n).filter(|t| !pair.contains(t)) {
            let limit = best
                .as_ref()
                .map_or(n, |b| b.iter().filter(|&&x| x).count());
            if let Some(c) = closure(a, pair[0], pair[1], t3, limit) {
                if better(&c, &best) {
                    best = Some(c);
                }
            }
        }
    }
    best
}

/// Positions of a label set.
pub fn positions(a: &Matrix, x: &IndexSet) -> Result<Vec<usize>> {
    x.iter().map(|l| a.row_position(l)).collect()
}

/// Labels not in `x`.
pub fn complement(a: &Matrix, x: &IndexSet) -> IndexSet {
    x.complement_in(a.labels())
}
