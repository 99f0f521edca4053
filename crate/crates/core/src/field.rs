//! Exact scalars over ℚ and prime fields 𝔽_p.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("characteristic {0} is excluded (fields of characteristic 2, 3 and 5 are not supported)")]
    ForbiddenCharacteristic(u64),
    #[error("a prime field needs a modulus")]
    MissingModulus,
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars belong to different fields")]
    FieldMismatch,
}

/// A parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {offset}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime,
}

/// The coefficient field of an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

/// Tonelli–Shanks; `p` must be an odd prime.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl Field {
    /// Builds a field, validating the modulus.
    pub fn make(kind: FieldKind, modulus: Option<u64>) -> Result<Field, FieldError> {
        match kind {
            FieldKind::Rationals => Ok(Field::Rationals),
            FieldKind::Prime => Field::prime(modulus.ok_or(FieldError::MissingModulus)?),
        }
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrimeModulus(p));
        }
        if p <= 5 {
            return Err(FieldError::ForbiddenCharacteristic(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn kind(&self) -> FieldKind {
        match self {
            Field::Rationals => FieldKind::Rationals,
            Field::Prime(_) => FieldKind::Prime,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(Box::new(BigRational::from_integer(n.into()))),
            Field::Prime(p) => Scalar::Modular { residue: (n as i128).rem_euclid(*p as i128) as u64, modulus: *p },
        }
    }

    /// `num / den` in this field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(Box::new(BigRational::from_integer(n.clone()))),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Modular { residue: r.to_u64().expect("residue fits"), modulus: *p }
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }

    /// All nonzero elements of a prime field in increasing residue order.
    pub fn nonzero_elements(&self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((1..*p).map(|r| Scalar::Modular { residue: r, modulus: *p }).collect()),
        }
    }

    /// Parses `INT` or `INT/POSINT`; prime fields accept `INT` only.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, ParseError> {
        let (num, rest, used) = parse_int(text, 0)?;
        if rest.is_empty() {
            return Ok(self.from_bigint(&num));
        }
        if !rest.starts_with('/') {
            return Err(ParseError::new(used, "unexpected character"));
        }
        if self.is_finite() {
            return Err(ParseError::new(used, "fractions are not accepted over a prime field"));
        }
        let den_text = &rest[1..];
        if den_text.starts_with('-') || den_text.starts_with('+') {
            return Err(ParseError::new(used + 1, "denominator must be a positive integer"));
        }
        let (den, rest, used2) = parse_int(den_text, used + 1)?;
        if !rest.is_empty() {
            return Err(ParseError::new(used2, "unexpected character"));
        }
        if den.is_zero() {
            return Err(ParseError::new(used + 1, "zero denominator"));
        }
        Ok(Scalar::Rational(Box::new(BigRational::new(num, den))))
    }
}

fn parse_int(text: &str, base_offset: usize) -> Result<(BigInt, &str, usize), ParseError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    if i < bytes.len() && bytes[i] == b'-' {
        i += 1;
    }
    let start = i;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        i += 1;
    }
    if i == start {
        return Err(ParseError::new(base_offset + i, "expected a digit"));
    }
    let n = BigInt::from_str(&text[..i]).map_err(|_| ParseError::new(base_offset, "bad integer"))?;
    Ok((n, &text[i..], base_offset + i))
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rationals);
        }
        let p = s.strip_prefix("Fp:").ok_or_else(|| format!("unknown field `{s}` (expected Q or Fp:<p>)"))?;
        let p: u64 = p.parse().map_err(|_| format!("bad modulus `{p}`"))?;
        Field::prime(p).map_err(|e| e.to_string())
    }
}

/// An exact field element. Rationals are boxed to keep the modular variant small.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Box<BigRational>),
    Modular { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(Box::new(&**a + &**b))),
            (Scalar::Modular { residue: a, modulus: p }, Scalar::Modular { residue: b, modulus: q }) if p == q => {
                let s = a + b;
                Ok(Scalar::Modular { residue: if s >= *p { s - p } else { s }, modulus: *p })
            }
            _ => Err(FieldError::FieldMismatch),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(Box::new(&**a * &**b))),
            (Scalar::Modular { residue: a, modulus: p }, Scalar::Modular { residue: b, modulus: q }) if p == q => {
                Ok(Scalar::Modular { residue: mul_mod(*a, *b, *p), modulus: *p })
            }
            _ => Err(FieldError::FieldMismatch),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        if self.field() != other.field() {
            return Err(FieldError::FieldMismatch);
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(Box::new(r.recip()))),
            Scalar::Modular { residue, modulus } => Ok(Scalar::Modular {
                residue: inv_mod(*residue, *modulus).ok_or(FieldError::DivisionByZero)?,
                modulus: *modulus,
            }),
        }
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(Box::new(-&**r)),
            Scalar::Modular { residue, modulus } => {
                Scalar::Modular { residue: if *residue == 0 { 0 } else { modulus - residue }, modulus: *modulus }
            }
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Some square root, if one exists in the field.
    pub fn sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = r.numer().sqrt();
                let d = r.denom().sqrt();
                if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
                    Some(Scalar::Rational(Box::new(BigRational::new(n, d))))
                } else {
                    None
                }
            }
            Scalar::Modular { residue, modulus } => {
                sqrt_mod(*residue, *modulus).map(|r| Scalar::Modular { residue: r, modulus: *modulus })
            }
        }
    }

    /// Residue of a prime-field scalar.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Modular { residue, .. } => Some(*residue),
            Scalar::Rational(_) => None,
        }
    }

    /// Numerator and denominator of a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    /// Naive height max(|num|, den) for rationals, the residue otherwise.
    pub fn height(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.numer().abs().max(r.denom().clone()),
            Scalar::Modular { residue, .. } => BigInt::from(*residue),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { residue, .. } => write!(f, "{residue}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
