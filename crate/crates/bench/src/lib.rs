//! Seeded inputs shared by the benchmarks.

use minoreq::generate::{pme_partner, random_planted};
use minoreq::{FieldSpec, Matrix, RankOnePencil};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn planted(f: &FieldSpec, n: usize, seed: u64) -> Matrix {
    random_planted(f, n, &mut rng(seed))
}

/// A planted-cut matrix and a partner reached by cut transposes and conjugation.
pub fn equivalent_pair(f: &FieldSpec, n: usize, seed: u64) -> (Matrix, Matrix) {
    let a = planted(f, n, seed);
    let mut r = rng(seed.wrapping_add(1));
    let (b, _) = pme_partner(&a, 3, &mut r).expect("partner of a square matrix");
    (a, b)
}

pub fn pencil(f: &FieldSpec, n: usize, m: usize, seed: u64) -> RankOnePencil {
    let mut r = rng(seed);
    let vector = |r: &mut ChaCha8Rng| -> Vec<_> {
        (0..n).map(|_| f.from_i64(r.gen_range(-5..=5))).collect()
    };
    let terms = (0..m).map(|_| (vector(&mut r), vector(&mut r))).collect();
    RankOnePencil::new(Matrix::zeros(f.clone(), n, n), terms).expect("well-formed pencil")
}
