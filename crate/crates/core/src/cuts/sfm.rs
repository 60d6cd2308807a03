//! Minimum-norm-point (Fujishige–Wolfe) submodular minimization in exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;

type Vector = Vec<BigRational>;

fn dot(a: &Vector, b: &Vector) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Extreme point of the base polytope picked by the greedy order of `x`.
fn greedy<F>(m: usize, x: &Vector, f: &mut F, empty: i64) -> Result<Vector>
where
    F: FnMut(&[usize]) -> Result<i64>,
{
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| x[a].cmp(&x[b]).then(a.cmp(&b)));
    let mut out = vec![BigRational::zero(); m];
    let mut prefix: Vec<usize> = Vec::with_capacity(m);
    let mut prev = empty;
    for e in order {
        prefix.push(e);
        let mut sorted = prefix.clone();
        sorted.sort_unstable();
        let val = f(&sorted)?;
        out[e] = int(val - prev);
        prev = val;
    }
    Ok(out)
}

/// Coefficients of the minimum-norm point in the affine hull of `points`.
fn affine_minimizer(points: &[Vector]) -> Result<Vec<BigRational>> {
    let k = points.len();
    let q = FieldSpec::Rational;
    let mut rows = vec![vec![q.zero(); k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            rows[i][j] = Scalar::Rational(dot(&points[i], &points[j]));
        }
        rows[i][k] = q.one();
        rows[k][i] = q.one();
    }
    let system = Matrix::from_rows(q, rows)?;
    let inv = system
        .inverse()?
        .ok_or_else(|| Error::Internal("affinely dependent corral".into()))?;
    // solution = inverse · e_k
    Ok((0..k)
        .map(|i| match inv.get(i, k) {
            Scalar::Rational(r) => r.clone(),
            _ => unreachable!("rational system"),
        })
        .collect())
}

fn combine(points: &[Vector], coeffs: &[BigRational], m: usize) -> Vector {
    let mut out = vec![BigRational::zero(); m];
    for (p, c) in points.iter().zip(coeffs) {
        for (o, v) in out.iter_mut().zip(p) {
            *o += c * v;
        }
    }
    out
}

/// The inclusion-minimal minimizer of a submodular `f` on `{0, ..., m-1}`.
///
/// `f` receives sorted element lists. The returned set is `{e : x*_e < 0}`
/// for the exact minimum-norm point `x*` of the base polytope.
pub fn min_norm_point_minimizer<F>(m: usize, mut f: F) -> Result<Vec<usize>>
where
    F: FnMut(&[usize]) -> Result<i64>,
{
    if m == 0 {
        return Ok(Vec::new());
    }
    let empty = f(&[])?;
    let mut x = greedy(m, &vec![BigRational::zero(); m], &mut f, empty)?;
    let mut corral = vec![x.clone()];
    let mut lambda = vec![int(1)];
    let cap = 10_000;
    let mut steps = 0;
    loop {
        let q = greedy(m, &x, &mut f, empty)?;
        if dot(&x, &x) <= dot(&x, &q) {
            break;
        }
        corral.push(q);
        lambda.push(BigRational::zero());
        loop {
            steps += 1;
            if steps > cap {
                return Err(Error::Internal("minimum-norm-point iteration cap".into()));
            }
            let alpha = affine_minimizer(&corral)?;
            if alpha.iter().all(|a| a.is_positive()) {
                x = combine(&corral, &alpha, m);
                lambda = alpha;
                break;
            }
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, a)| !a.is_positive())
                .map(|(l, a)| l / (l - a))
                .min()
                .expect("some coefficient is non-positive");
            let one = int(1);
            lambda = lambda
                .iter()
                .zip(&alpha)
                .map(|(l, a)| &theta * a + (&one - &theta) * l)
                .collect();
            let keep: Vec<bool> = lambda.iter().map(|l| l.is_positive()).collect();
            corral = corral
                .into_iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(p, _)| p)
                .collect();
            lambda.retain(|l| l.is_positive());
        }
    }
    Ok((0..m).filter(|&e| x[e].is_negative()).collect())
}
