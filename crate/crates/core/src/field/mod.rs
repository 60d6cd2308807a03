//! Exact arithmetic over ℚ, GF(p) and GF(p^k).
//!
//! A [`FieldSpec`] is the arithmetic context; [`Scalar`] is a bare value that
//! only makes sense relative to a spec. Matrices and polynomials store a single
//! spec next to their scalars, so the hot loops never re-check field identity.
//! [`FieldElement`] pairs the two for callers that want checked arithmetic.

pub(crate) mod gfpoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionSpec {
    p: u64,
    /// Monic modulus, low-to-high, length `k + 1`.
    modulus: Vec<u64>,
}

impl ExtensionSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// The coefficient domain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
    Extension(Arc<ExtensionSpec>),
}

/// A field value without its context.
///
/// Extension elements always carry exactly `k` coefficients, so structural
/// equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue(u64),
    Poly(Vec<u64>),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn rational() -> Self {
        FieldSpec::Rational
    }

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// GF(p^k) with the given monic modulus (low-to-high, `c_k = 1`).
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidModulus("degree must be at least one".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidModulus(format!(
                "coefficients must lie in [0, {p})"
            )));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidModulus("modulus must be monic".into()));
        }
        if !gfpoly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus("modulus is reducible".into()));
        }
        if modulus.len() == 2 {
            return Ok(FieldSpec::Prime(p));
        }
        Ok(FieldSpec::Extension(Arc::new(ExtensionSpec { p, modulus })))
    }

    /// 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
            FieldSpec::Extension(e) => e.p,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Extension(e) => e.degree(),
            _ => 1,
        }
    }

    /// `None` means infinite. Saturates at `u128::MAX`.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            FieldSpec::Rational => None,
            FieldSpec::Prime(p) => Some(*p as u128),
            FieldSpec::Extension(e) => {
                let mut c: u128 = 1;
                for _ in 0..e.degree() {
                    c = c.saturating_mul(e.p as u128);
                }
                Some(c)
            }
        }
    }

    /// True when `self` has strictly more than `bound` elements.
    pub fn exceeds(&self, bound: u128) -> bool {
        self.cardinality().is_none_or(|c| c > bound)
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => Scalar::Residue(0),
            FieldSpec::Extension(e) => Scalar::Poly(vec![0; e.degree()]),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue(reduce_i128(v as i128, *p)),
            FieldSpec::Extension(e) => {
                let mut c = vec![0; e.degree()];
                c[0] = reduce_i128(v as i128, e.p);
                Scalar::Poly(c)
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.from_i64(num), &self.from_i64(den))
    }

    pub fn from_rational(&self, q: BigRational) -> Result<Scalar> {
        match self {
            FieldSpec::Rational => Ok(Scalar::Rational(q)),
            _ => {
                let p = self.characteristic();
                let num = reduce_bigint(q.numer(), p);
                let den = reduce_bigint(q.denom(), p);
                let n = self.from_i64(num as i64);
                let d = self.from_i64(den as i64);
                self.div(&n, &d)
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue(r) => *r == 0,
            Scalar::Poly(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        *a == self.one()
    }

    /// True when `a` is a well-formed value of this field.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (FieldSpec::Rational, Scalar::Rational(_)) => true,
            (FieldSpec::Prime(p), Scalar::Residue(r)) => r < p,
            (FieldSpec::Extension(e), Scalar::Poly(c)) => {
                c.len() == e.degree() && c.iter().all(|&x| x < e.p)
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rational, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x + y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(gfpoly::add_mod(*x, *y, *p))
            }
            (FieldSpec::Extension(e), Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(
                x.iter()
                    .zip(y)
                    .map(|(&u, &v)| gfpoly::add_mod(u, v, e.p))
                    .collect(),
            ),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Rational, Scalar::Rational(x)) => Scalar::Rational(-x),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => Scalar::Residue(gfpoly::sub_mod(0, *x, *p)),
            (FieldSpec::Extension(e), Scalar::Poly(x)) => {
                Scalar::Poly(x.iter().map(|&u| gfpoly::sub_mod(0, u, e.p)).collect())
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rational, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x - y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(gfpoly::sub_mod(*x, *y, *p))
            }
            (FieldSpec::Extension(e), Scalar::Poly(x), Scalar::Poly(y)) => Scalar::Poly(
                x.iter()
                    .zip(y)
                    .map(|(&u, &v)| gfpoly::sub_mod(u, v, e.p))
                    .collect(),
            ),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Rational, Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(x * y)
            }
            (FieldSpec::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                Scalar::Residue(gfpoly::mul_mod(*x, *y, *p))
            }
            (FieldSpec::Extension(e), Scalar::Poly(x), Scalar::Poly(y)) => {
                let prod = gfpoly::mul(x, y, e.p);
                Scalar::Poly(pad(gfpoly::rem(&prod, &e.modulus, e.p), e.degree()))
            }
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (FieldSpec::Rational, Scalar::Rational(x)) => Scalar::Rational(x.recip()),
            (FieldSpec::Prime(p), Scalar::Residue(x)) => {
                Scalar::Residue(gfpoly::inv_mod(*x, *p).ok_or(Error::DivisionByZero)?)
            }
            (FieldSpec::Extension(e), Scalar::Poly(x)) => {
                let inv =
                    gfpoly::inv_in_ext(x, &e.modulus, e.p).ok_or(Error::DivisionByZero)?;
                Scalar::Poly(pad(inv, e.degree()))
            }
            _ => panic!("scalar does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        if let (FieldSpec::Rational, Scalar::Rational(x), Scalar::Rational(y)) = (self, a, b) {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(Scalar::Rational(x / y));
        }
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Scalar, mut e: u64) -> Scalar {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// The `index`-th canonical point: the integer `index` over ℚ, the residue
    /// over GF(p), and the base-p digits of `index` (constant term first) over
    /// GF(p^k). Indices beyond the cardinality wrap and must be avoided by callers.
    pub fn point(&self, index: u128) -> Scalar {
        match self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(index))),
            FieldSpec::Prime(p) => Scalar::Residue((index % *p as u128) as u64),
            FieldSpec::Extension(e) => {
                let mut t = index;
                let mut c = vec![0; e.degree()];
                for slot in c.iter_mut() {
                    *slot = (t % e.p as u128) as u64;
                    t /= e.p as u128;
                }
                Scalar::Poly(c)
            }
        }
    }

    /// First `count` canonical points, pairwise distinct.
    pub fn enumerate_points(&self, count: usize) -> Result<Vec<Scalar>> {
        self.ensure_points(count as u128)?;
        Ok((0..count as u128).map(|i| self.point(i)).collect())
    }

    pub(crate) fn ensure_points(&self, count: u128) -> Result<()> {
        match self.cardinality() {
            Some(c) if count > c => Err(Error::FieldTooSmall {
                needed: count,
                available: c,
            }),
            _ => Ok(()),
        }
    }

    /// True when `self` is `base` or an extension of the prime field `base`.
    pub fn extends(&self, base: &FieldSpec) -> bool {
        match (self, base) {
            (a, b) if a == b => true,
            (FieldSpec::Extension(e), FieldSpec::Prime(p)) => e.p == *p,
            _ => false,
        }
    }

    /// Maps a value of the subfield `base` into `self`.
    pub fn embed(&self, base: &FieldSpec, a: &Scalar) -> Result<Scalar> {
        if self == base {
            return Ok(a.clone());
        }
        match (self, base, a) {
            (FieldSpec::Extension(e), FieldSpec::Prime(p), Scalar::Residue(r)) if e.p == *p => {
                let mut c = vec![0; e.degree()];
                c[0] = *r;
                Ok(Scalar::Poly(c))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    /// Inverse of [`FieldSpec::embed`]; fails when `a` is outside the subfield.
    pub fn restrict(&self, base: &FieldSpec, a: &Scalar) -> Result<Scalar> {
        if self == base {
            return Ok(a.clone());
        }
        match (self, base, a) {
            (FieldSpec::Extension(e), FieldSpec::Prime(p), Scalar::Poly(c))
                if e.p == *p && c[1..].iter().all(|&x| x == 0) =>
            {
                Ok(Scalar::Residue(c[0]))
            }
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue(r) => r.to_string(),
            Scalar::Poly(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("[{}]", parts.join(","))
            }
        }
    }

    pub fn parse_scalar(&self, token: &str) -> Result<Scalar> {
        let token = token.trim();
        let bad = || Error::Parse(format!("cannot read `{token}` as an element of {self}"));
        match self {
            FieldSpec::Rational => {
                let (num, den) = match token.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (token, "1"),
                };
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{token}`")));
                }
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            FieldSpec::Prime(p) => {
                let v: BigInt = token.parse().map_err(|_| bad())?;
                Ok(Scalar::Residue(reduce_bigint(&v, *p)))
            }
            FieldSpec::Extension(e) => {
                if let Some(inner) = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
                    let mut c = Vec::new();
                    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        let v: BigInt = part.parse().map_err(|_| bad())?;
                        c.push(reduce_bigint(&v, e.p));
                    }
                    if c.len() > e.degree() {
                        return Err(bad());
                    }
                    Ok(Scalar::Poly(pad(c, e.degree())))
                } else {
                    let v: BigInt = token.parse().map_err(|_| bad())?;
                    let mut c = vec![0; e.degree()];
                    c[0] = reduce_bigint(&v, e.p);
                    Ok(Scalar::Poly(c))
                }
            }
        }
    }

    /// The `field ...` header line of the text formats.
    pub fn header(&self) -> String {
        match self {
            FieldSpec::Rational => "field rational".to_string(),
            FieldSpec::Prime(p) => format!("field gf {p}"),
            FieldSpec::Extension(e) => {
                let coeffs: Vec<String> = e.modulus.iter().map(|c| c.to_string()).collect();
                format!("field gf {}^{} [{}]", e.p, e.degree(), coeffs.join(" "))
            }
        }
    }

    pub fn parse_header(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad field header `{}`", line.trim()));
        let rest = line.trim().strip_prefix("field").ok_or_else(bad)?.trim();
        if rest == "rational" {
            return Ok(FieldSpec::Rational);
        }
        let rest = rest.strip_prefix("gf").ok_or_else(bad)?.trim();
        let (size, modulus) = match rest.split_once('[') {
            Some((s, m)) => (s.trim(), Some(m.trim().strip_suffix(']').ok_or_else(bad)?)),
            None => (rest, None),
        };
        let (p, k) = match size.split_once('^') {
            Some((p, k)) => (
                p.trim().parse::<u64>().map_err(|_| bad())?,
                k.trim().parse::<usize>().map_err(|_| bad())?,
            ),
            None => (size.parse::<u64>().map_err(|_| bad())?, 1),
        };
        if k == 0 {
            return Err(bad());
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match modulus {
            None if k == 1 => FieldSpec::prime(p),
            None => Ok(smallest_irreducible_field(p, k)),
            Some(m) => {
                let coeffs = m
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<u64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if coeffs.len() != k + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients, found {}",
                        k + 1,
                        coeffs.len()
                    )));
                }
                FieldSpec::extension(p, coeffs)
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Extension(e) => write!(f, "GF({}^{})", e.p, e.degree()),
        }
    }
}

fn pad(mut c: Vec<u64>, k: usize) -> Vec<u64> {
    c.resize(k, 0);
    c
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((v % &m) + &m) % &m;
    r.abs().to_u64().expect("residue fits in u64")
}

/// GF(p^k) with the smallest monic irreducible modulus, ordering candidates by
/// the integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
fn smallest_irreducible_field(p: u64, k: usize) -> FieldSpec {
    if k == 1 {
        return FieldSpec::Prime(p);
    }
    let mut digits = vec![0u64; k];
    loop {
        let mut candidate = digits.clone();
        candidate.push(1);
        if gfpoly::is_irreducible(&candidate, p) {
            return FieldSpec::Extension(Arc::new(ExtensionSpec {
                p,
                modulus: candidate,
            }));
        }
        // increment base-p counter, constant term first
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < k, "an irreducible polynomial of every degree exists");
        }
    }
}

/// Smallest `GF(p^k)` with at least `min_size` elements.
pub fn build_extension(p: u64, min_size: u128) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut k = 1usize;
    let mut size = p as u128;
    while size < min_size {
        k += 1;
        size = size.saturating_mul(p as u128);
    }
    Ok(smallest_irreducible_field(p, k))
}

/// A value tagged with its field, for checked arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    spec: FieldSpec,
    value: Scalar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn new(spec: FieldSpec, value: Scalar) -> Result<Self> {
        if !spec.contains(&value) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { spec, value })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    pub fn into_value(self) -> Scalar {
        self.value
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec.format_scalar(&self.value))
    }
}

pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if a.spec != b.spec {
        return Err(Error::FieldMismatch);
    }
    let f = &a.spec;
    let value = match op {
        ArithOp::Add => f.add(&a.value, &b.value),
        ArithOp::Sub => f.sub(&a.value, &b.value),
        ArithOp::Mul => f.mul(&a.value, &b.value),
        ArithOp::Div => f.div(&a.value, &b.value)?,
    };
    Ok(FieldElement {
        spec: f.clone(),
        value,
    })
}
