//! Seeded random instances: planted-cut matrices, equivalent pairs and perturbations.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cuts::{cut_transpose, enumerate_cuts};
use crate::error::Result;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{IndexSet, Label, Matrix};

/// Uniform nonzero element; rationals are small integers or halves.
pub fn random_nonzero<R: Rng + ?Sized>(f: &FieldSpec, rng: &mut R) -> Scalar {
    match f.cardinality() {
        Some(c) => f.point(rng.gen_range(1..c)),
        None => {
            let num = loop {
                let v = rng.gen_range(-9i64..=9);
                if v != 0 {
                    break v;
                }
            };
            f.from_ratio(num, rng.gen_range(1..=2))
                .expect("nonzero denominator")
        }
    }
}

pub fn random_element<R: Rng + ?Sized>(f: &FieldSpec, rng: &mut R) -> Scalar {
    if rng.gen_bool(0.1) {
        f.zero()
    } else {
        random_nonzero(f, rng)
    }
}

/// Dense matrix with every off-diagonal entry nonzero.
pub fn random_dense<R: Rng + ?Sized>(f: &FieldSpec, n: usize, rng: &mut R) -> Matrix {
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { random_element(f, rng) } else { random_nonzero(f, rng) })
                .collect()
        })
        .collect();
    Matrix::from_rows(f.clone(), rows).expect("square rows")
}

/// Matrix in which, under a random ordering of the labels, every prefix whose
/// length is in `boundaries` is a cut. Off-diagonal entries are nonzero.
pub fn planted_cut_matrix<R: Rng + ?Sized>(
    f: &FieldSpec,
    n: usize,
    boundaries: &[usize],
    rng: &mut R,
) -> (Matrix, Vec<IndexSet>) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut rank = vec![0; n];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let factors: Vec<[Scalar; 4]> = (0..n)
        .map(|_| std::array::from_fn(|_| random_nonzero(f, rng)))
        .collect();
    let crosses = |lo: usize, hi: usize| boundaries.iter().any(|&k| lo < k && k <= hi);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (ri, rj) = (rank[i], rank[j]);
                    if i == j {
                        random_element(f, rng)
                    } else if ri < rj && crosses(ri, rj) {
                        f.mul(&factors[i][0], &factors[j][1])
                    } else if rj < ri && crosses(rj, ri) {
                        f.mul(&factors[i][2], &factors[j][3])
                    } else {
                        random_nonzero(f, rng)
                    }
                })
                .collect()
        })
        .collect();
    let a = Matrix::from_rows(f.clone(), rows).expect("square rows");
    let cuts = boundaries
        .iter()
        .filter(|&&k| k >= 2 && k + 2 <= n)
        .map(|&k| IndexSet::from_labels(order[..k].iter().copied()))
        .collect();
    (a, cuts)
}

/// Planted matrix with one to three random cut boundaries.
pub fn random_planted<R: Rng + ?Sized>(f: &FieldSpec, n: usize, rng: &mut R) -> Matrix {
    if n < 4 {
        return random_dense(f, n, rng);
    }
    let count = rng.gen_range(1..=3);
    let boundaries: Vec<usize> = (0..count).map(|_| rng.gen_range(2..=n - 2)).collect();
    planted_cut_matrix(f, n, &boundaries, rng).0
}

/// `D·A·D⁻¹` for a diagonal `D` given by position.
pub fn conjugate(a: &Matrix, d: &[Scalar]) -> Result<Matrix> {
    let f = a.field();
    let mut out = a.clone();
    for i in 0..a.n() {
        for j in 0..a.n() {
            out.set(i, j, f.div(&f.mul(&d[i], a.get(i, j)), &d[j])?);
        }
    }
    Ok(out)
}

/// A matrix principal-minor equivalent to `a`: up to `max_twists` cut
/// transposes along cuts of the running matrix, a random diagonal
/// conjugation, and a transpose with probability one half.
pub fn pme_partner<R: Rng + ?Sized>(a: &Matrix, max_twists: usize, rng: &mut R) -> Result<(Matrix, Vec<IndexSet>)> {
    let mut b = a.clone();
    let mut applied = Vec::new();
    for _ in 0..rng.gen_range(0..=max_twists) {
        let cuts = if b.n() >= 4 { enumerate_cuts(&b)? } else { Vec::new() };
        let Some(x) = cuts.choose(rng) else { break };
        b = cut_transpose(&b, x)?;
        applied.push(x.clone());
    }
    let d: Vec<Scalar> = (0..b.n()).map(|_| random_nonzero(a.field(), rng)).collect();
    b = conjugate(&b, &d)?;
    if rng.gen_bool(0.5) {
        b = b.transpose();
    }
    Ok((b, applied))
}

/// Adds a random nonzero value to one random entry.
pub fn perturb<R: Rng + ?Sized>(a: &Matrix, rng: &mut R) -> Matrix {
    let f = a.field();
    let mut b = a.clone();
    let i = rng.gen_range(0..a.rows());
    let j = rng.gen_range(0..a.cols());
    let v = f.add(b.get(i, j), &random_nonzero(f, rng));
    b.set(i, j, v);
    b
}

/// Block upper-triangular matrix whose diagonal blocks are dense, with labels
/// shuffled so the blocks are not contiguous.
pub fn random_reducible<R: Rng + ?Sized>(f: &FieldSpec, sizes: &[usize], rng: &mut R) -> Matrix {
    let n: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut block_of = vec![0; n];
    let mut start = 0;
    for (b, &s) in sizes.iter().enumerate() {
        for &i in &order[start..start + s] {
            block_of[i] = b;
        }
        start += s;
    }
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match block_of[i].cmp(&block_of[j]) {
                    std::cmp::Ordering::Equal if i != j => random_nonzero(f, rng),
                    std::cmp::Ordering::Equal => random_element(f, rng),
                    std::cmp::Ordering::Less => random_element(f, rng),
                    std::cmp::Ordering::Greater => f.zero(),
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(f.clone(), rows).expect("square rows")
}

/// Labels `0..n` as a set.
pub fn all_labels(n: usize) -> IndexSet {
    IndexSet::from_labels(0..n as Label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::is_cut;
    use crate::pme::brute_force_pme;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_sets_are_cuts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [FieldSpec::Rational, FieldSpec::prime(101).unwrap()] {
            for n in 4..=8 {
                let (a, cuts) = planted_cut_matrix(&f, n, &[2, n - 2], &mut rng);
                assert!(!cuts.is_empty());
                for x in &cuts {
                    assert!(is_cut(&a, x), "{x} in\n{a}");
                }
            }
        }
    }

    #[test]
    fn partners_are_equivalent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = FieldSpec::prime(101).unwrap();
        for n in 4..=6 {
            let a = random_planted(&f, n, &mut rng);
            let (b, _) = pme_partner(&a, 3, &mut rng).unwrap();
            assert!(brute_force_pme(&a, &b).unwrap().equivalent);
        }
    }
}
