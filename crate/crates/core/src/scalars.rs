//! Exact arithmetic in the multiquadratic field Q(i, sqrt(p1), ..., sqrt(pk)).
//!
//! A [`Scalar`] is stored as a finite sum `sum_m c_m * sqrt(m)` where `m` runs
//! over square-free positive integers and each `c_m` is a Gaussian rational.
//! The square roots of distinct square-free integers are linearly independent
//! over Q(i), so this representation is canonical and the zero test is just
//! "no terms". Square roots are adjoined on demand: nothing needs to be
//! declared up front, and scalars built in a smaller field keep their meaning
//! in any larger one.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("no square root of {0} is representable")]
    NoSquareRoot(String),
}

/// A Gaussian rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gaussian {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gaussian {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gaussian { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Gaussian { re, im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        Gaussian::real(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Gaussian { re: self.re.clone(), im: -self.im.clone() }
    }

    fn add(&self, o: &Gaussian) -> Gaussian {
        Gaussian { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    fn mul(&self, o: &Gaussian) -> Gaussian {
        if self.im.is_zero() && o.im.is_zero() {
            return Gaussian::real(&self.re * &o.re);
        }
        Gaussian {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn scale_int(&self, k: u64) -> Gaussian {
        let k = BigRational::from_integer(BigInt::from(k));
        Gaussian { re: &self.re * &k, im: &self.im * &k }
    }

    fn inv(&self) -> Gaussian {
        let norm = &self.re * &self.re + &self.im * &self.im;
        Gaussian { re: &self.re / &norm, im: -(&self.im / &norm) }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => write_imag(f, &self.im, false),
            (false, false) => {
                write!(f, "{}", self.re)?;
                write_imag(f, &self.im, true)
            }
        }
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &BigRational, with_sign: bool) -> fmt::Result {
    let neg = im.is_negative();
    let abs = im.abs();
    if neg {
        write!(f, "-")?;
    } else if with_sign {
        write!(f, "+")?;
    }
    if abs.is_one() {
        write!(f, "i")
    } else {
        write!(f, "{}*i", abs)
    }
}

/// Element of Q(i, sqrt(p1), ..., sqrt(pk)).
///
/// Terms are kept sorted by radicand with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(u64, Gaussian)>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::from_gaussian(Gaussian::real(q))
    }

    pub fn from_gaussian(g: Gaussian) -> Self {
        if g.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(1, g)] }
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar::from_gaussian(Gaussian::new(BigRational::zero(), BigRational::one()))
    }

    /// `sqrt(d)` for a positive integer `d`, reduced to `s * sqrt(m)` with `m` square-free.
    pub fn sqrt_int(d: u64) -> Self {
        assert!(d > 0, "sqrt_int needs a positive radicand");
        let (s, m) = squarefree_split(d);
        let coeff = Gaussian::real(BigRational::from_integer(BigInt::from(s)));
        Scalar { terms: vec![(m, coeff)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms[0].0 == 1
            && self.terms[0].1.re.is_one()
            && self.terms[0].1.im.is_zero()
    }

    /// Iterator over `(radicand, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Gaussian)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// The scalar as a Gaussian rational, if it has no radical part.
    pub fn as_gaussian(&self) -> Option<Gaussian> {
        match self.terms.as_slice() {
            [] => Some(Gaussian::zero()),
            [(1, g)] => Some(g.clone()),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.as_gaussian().filter(|g| g.im.is_zero()).map(|g| g.re)
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64())
    }

    /// Primes `p` such that `sqrt(p)` is needed to write this scalar.
    pub fn radical_primes(&self) -> Vec<u64> {
        let mut out: Vec<u64> = self.terms.iter().flat_map(|(m, _)| prime_factors(*m)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn from_map(map: BTreeMap<u64, Gaussian>) -> Self {
        Scalar { terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Complex conjugation (fixes every real square root).
    pub fn conj(&self) -> Self {
        Scalar { terms: self.terms.iter().map(|(m, c)| (*m, c.conj())).collect() }
    }

    /// The field automorphism sending `sqrt(p)` to `-sqrt(p)`.
    fn flip_prime(&self, p: u64) -> Self {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    if m % p == 0 {
                        (*m, Gaussian { re: -c.re.clone(), im: -c.im.clone() })
                    } else {
                        (*m, c.clone())
                    }
                })
                .collect(),
        }
    }

    /// Multiplicative inverse by successive rationalization: first over each
    /// `sqrt(p)`, then over `i`.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut num = Scalar::one();
        let mut den = self.clone();
        while let Some(&p) = den.radical_primes().last() {
            let c = den.flip_prime(p);
            num = &num * &c;
            den = &den * &c;
        }
        let g = den.as_gaussian().expect("rationalized denominator");
        Ok(&num * &Scalar::from_gaussian(g.inv()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// An exact square root inside the multiquadratic tower, when one is
    /// available. Rationals always have one; a Gaussian rational `a+bi`
    /// has one when `a^2+b^2` is a rational square.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let g = self.as_gaussian()?;
        if g.im.is_zero() {
            return sqrt_rational(&g.re);
        }
        // (x + y i)^2 = a + b i with x^2 = (a + |a+bi|) / 2.
        let norm = &g.re * &g.re + &g.im * &g.im;
        let modulus = sqrt_rational(&norm)?.as_rational()?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut x2 = (&g.re + &modulus) * &half;
        if x2.is_zero() {
            x2 = (&modulus - &g.re) * &half;
            // then x = 0 would mean b = 0; here take y first
            let y = sqrt_rational(&x2)?;
            let two_y = &y * &Scalar::from_int(2);
            let x = Scalar::from_rational(g.im.clone()).checked_div(&two_y).ok()?;
            return Some(&x + &(&y * &Scalar::i()));
        }
        let x = sqrt_rational(&x2)?;
        let two_x = &x * &Scalar::from_int(2);
        let y = Scalar::from_rational(g.im.clone()).checked_div(&two_x).ok()?;
        let root = &x + &(&y * &Scalar::i());
        debug_assert_eq!(&root * &root, *self);
        Some(root)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut out = Scalar::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }
}

fn sqrt_rational(q: &BigRational) -> Option<Scalar> {
    if q.is_zero() {
        return Some(Scalar::zero());
    }
    let num = q.numer().abs().to_u64()?;
    let den = q.denom().to_u64()?;
    // sqrt(n/d) = sqrt(n*d) / d
    let (s, m) = squarefree_split(num.checked_mul(den)?);
    let coeff = BigRational::new(BigInt::from(s), BigInt::from(den));
    let root = Scalar { terms: vec![(m, Gaussian::real(coeff))] };
    if q.is_negative() {
        Some(&root * &Scalar::i())
    } else {
        Some(root)
    }
}

/// Write `d = s^2 * m` with `m` square-free.
pub fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut m = 1u64;
    let mut p = 2u64;
    while p * p <= d {
        let mut e = 0;
        while d % p == 0 {
            d /= p;
            e += 1;
        }
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            m *= p;
        }
        p += 1;
    }
    m *= d;
    (s, m)
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            out.push(p);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn merge_terms(a: &Scalar, b: &Scalar, negate_b: bool) -> Scalar {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    let neg = |c: &Gaussian| Gaussian { re: -c.re.clone(), im: -c.im.clone() };
    while i < a.terms.len() || j < b.terms.len() {
        let order = match (a.terms.get(i), b.terms.get(j)) {
            (Some((ma, _)), Some((mb, _))) => ma.cmp(mb),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match order {
            Ordering::Less => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (m, c) = &b.terms[j];
                out.push((*m, if negate_b { neg(c) } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let (m, ca) = &a.terms[i];
                let cb = &b.terms[j].1;
                let c = if negate_b {
                    Gaussian { re: &ca.re - &cb.re, im: &ca.im - &cb.im }
                } else {
                    ca.add(cb)
                };
                if !c.is_zero() {
                    out.push((*m, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    Scalar { terms: out }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        merge_terms(self, rhs, false)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        merge_terms(self, rhs, true)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if let ([(1, a)], [(1, b)]) = (self.terms.as_slice(), rhs.terms.as_slice()) {
            return Scalar::from_gaussian(a.mul(b));
        }
        let mut acc: BTreeMap<u64, Gaussian> = BTreeMap::new();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                let g = m.gcd(n);
                let key = (m / g) * (n / g);
                let mut c = a.mul(b);
                if g > 1 {
                    c = c.scale_int(g);
                }
                acc.entry(key).and_modify(|e| *e = e.add(&c)).or_insert(c);
            }
        }
        Scalar::from_map(acc)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] to handle it.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, Gaussian { re: -c.re.clone(), im: -c.im.clone() }))
                .collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(k: i64) -> Self {
        Scalar::from_int(k)
    }
}

/// Serialized as `c_1 + c_2*sqrt(2) + (1+i)*sqrt(6)`; terms separated by `" + "`,
/// Gaussian coefficients written `p/q+r/s*i` without spaces.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "{c}")?;
            } else if !c.re.is_zero() && !c.im.is_zero() {
                write!(f, "({c})*sqrt({m})")?;
            } else {
                write!(f, "{c}*sqrt({m})")?;
            }
        }
        Ok(())
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let mut total = Scalar::zero();
        for term in s.split(" + ") {
            let term = term.trim();
            if term.is_empty() {
                return Err(err());
            }
            let (coef_str, radicand) = match term.find("sqrt(") {
                Some(pos) => {
                    let rest = &term[pos + 5..];
                    let close = rest.find(')').ok_or_else(err)?;
                    if close + 1 != rest.len() {
                        return Err(err());
                    }
                    let d: u64 = rest[..close].trim().parse().map_err(|_| err())?;
                    if d == 0 {
                        return Err(err());
                    }
                    let head = term[..pos].trim_end();
                    let head = head.strip_suffix('*').unwrap_or(head).trim();
                    let head = if head.is_empty() {
                        "1"
                    } else if head == "-" {
                        "-1"
                    } else {
                        head
                    };
                    (head, d)
                }
                None => (term, 1),
            };
            let coef_str = coef_str
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .unwrap_or(coef_str);
            let g = parse_gaussian(coef_str).ok_or_else(err)?;
            total += &(&Scalar::from_gaussian(g) * &Scalar::sqrt_int(radicand));
        }
        Ok(total)
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn parse_imag(s: &str) -> Option<BigRational> {
    let body = s.strip_suffix('i')?;
    let body = body.strip_suffix('*').unwrap_or(body);
    match body {
        "" | "+" => Some(BigRational::one()),
        "-" => Some(-BigRational::one()),
        _ => parse_rational(body),
    }
}

fn parse_gaussian(s: &str) -> Option<Gaussian> {
    let s = s.trim();
    if !s.ends_with('i') {
        return parse_rational(s).map(Gaussian::real);
    }
    // Split at the last sign that is not the leading one.
    let split = s
        .char_indices()
        .skip(1)
        .filter(|(_, c)| *c == '+' || *c == '-')
        .map(|(k, _)| k)
        .last();
    match split {
        Some(k) => {
            let re = parse_rational(&s[..k])?;
            let im = parse_imag(&s[k..])?;
            Some(Gaussian::new(re, im))
        }
        None => Some(Gaussian::new(BigRational::zero(), parse_imag(s)?)),
    }
}

/// Which square roots a computation has adjoined to Q(i).
///
/// Radicands are stored as primes: they are multiplicatively independent, so
/// the square-class condition holds automatically and `sqrt(6)` is `sqrt(2)*sqrt(3)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, serde::Serialize)]
pub struct FieldSpec {
    radicands: Vec<u64>,
}

impl FieldSpec {
    /// Q(i).
    pub fn gaussian() -> Self {
        FieldSpec::default()
    }

    pub fn radicands(&self) -> &[u64] {
        &self.radicands
    }

    pub fn includes_i(&self) -> bool {
        true
    }

    /// Smallest field containing this one and `sqrt(d)`.
    pub fn extend(&self, d: u64) -> FieldSpec {
        assert!(d >= 1, "radicand must be positive");
        let (_, m) = squarefree_split(d);
        let mut radicands = self.radicands.clone();
        radicands.extend(prime_factors(m));
        radicands.sort_unstable();
        radicands.dedup();
        FieldSpec { radicands }
    }

    pub fn join(&self, other: &FieldSpec) -> FieldSpec {
        other.radicands.iter().fold(self.clone(), |f, &p| f.extend(p))
    }

    pub fn of_scalar(x: &Scalar) -> FieldSpec {
        FieldSpec { radicands: x.radical_primes() }
    }

    pub fn contains(&self, x: &Scalar) -> bool {
        x.radical_primes().iter().all(|p| self.radicands.binary_search(p).is_ok())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn extend_reduces_to_square_free() {
        let base = FieldSpec::gaussian();
        assert_eq!(base.extend(4), base);
        assert_eq!(base.extend(8).radicands(), &[2]);
        let two = base.extend(2);
        assert_eq!(two.extend(2), two);
        assert_eq!(two.extend(6).radicands(), &[2, 3]);
    }

    #[test]
    fn basic_identities() {
        let one_plus_i = &Scalar::one() + &Scalar::i();
        assert!((&one_plus_i / &one_plus_i).is_one());
        let r2 = Scalar::sqrt_int(2);
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
        assert_eq!(Scalar::sqrt_int(8), &Scalar::from_int(2) * &r2);
        assert_eq!(&Scalar::sqrt_int(2) * &Scalar::sqrt_int(3), Scalar::sqrt_int(6));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let x = &Scalar::one() + &Scalar::sqrt_int(2);
        let inv = x.inv().unwrap();
        assert_eq!(inv, &Scalar::sqrt_int(2) - &Scalar::one());
        assert!((&inv * &x).is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
        assert!(Scalar::one().checked_div(&Scalar::zero()).is_err());
    }

    #[test]
    fn square_roots() {
        for q in ["2", "-3", "1/2", "-8/9", "4", "3+4*i", "2*i", "-2*i"] {
            let x = s(q);
            let r = x.sqrt().unwrap_or_else(|| panic!("sqrt of {q}"));
            assert_eq!(&r * &r, x, "{q}");
        }
        // 1+i has no square root in a multiquadratic tower over Q(i)
        assert!(s("1+i").sqrt().is_none());
        assert!(Scalar::sqrt_int(2).sqrt().is_none());
    }

    #[test]
    fn display_and_parse() {
        let x = &(&Scalar::from_ratio(-1, 2) + &(&s("3/4+i") * &Scalar::sqrt_int(6)))
            + &Scalar::sqrt_int(3);
        let text = x.to_string();
        assert_eq!(text, "-1/2 + 1*sqrt(3) + (3/4+i)*sqrt(6)");
        assert_eq!(s(&text), x);
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("2-3*i").to_string(), "2-3*i");
        assert_eq!(s("sqrt(2)"), Scalar::sqrt_int(2));
        assert_eq!(s("-sqrt(8)"), -(Scalar::sqrt_int(8)));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    #[test]
    fn scalars_embed_in_larger_fields() {
        let x = &Scalar::from_int(3) + &Scalar::sqrt_int(2);
        let y = &Scalar::i() - &Scalar::sqrt_int(2);
        let before = &x * &y;
        let field = FieldSpec::of_scalar(&before).extend(5).extend(7);
        assert!(field.contains(&before));
        let after = &(&x + &Scalar::sqrt_int(5)) * &y - &Scalar::sqrt_int(5) * &y;
        assert_eq!(before, after);
    }
}
