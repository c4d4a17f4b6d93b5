//! Exact elements of real quadratic fields.
//!
//! A [`QuadIrr`] stores `(a + b·√r)/c` with `c > 0`, `r` squarefree and
//! `gcd(a, b, c) = 1`; rationals use `b = r = 0`. The representation is
//! therefore unique per value, so structural equality is value equality.
//!
//! Field operations (`+ - * /`) are only defined between elements of the
//! same field (or with a rational) and panic otherwise. Ordering is total
//! across fields: see [`crate::tower`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadIrr {
    a: BigInt,
    b: BigInt,
    r: BigInt,
    c: BigInt,
}

/// Splits `d > 0` as `k² · s` with `s` squarefree.
///
/// Trial division runs while `p³` does not exceed the unfactored cofactor;
/// what is left then has at most two prime factors, so it is either a prime
/// square or squarefree.
pub(crate) fn squarefree_split(d: &BigInt) -> (BigInt, BigInt) {
    debug_assert!(d.is_positive());
    let mut k = BigInt::one();
    let mut s = BigInt::one();
    let mut rest = d.clone();
    let mut p = BigInt::from(2u32);
    while &p * &p * &p <= rest {
        let mut e = 0u32;
        while rest.is_multiple_of(&p) {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            k *= p.pow(e / 2);
            if e % 2 == 1 {
                s *= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        k *= root;
    } else {
        s *= rest;
    }
    (k, s)
}

pub(crate) fn is_perfect_square(d: &BigInt) -> bool {
    if d.is_negative() {
        return false;
    }
    let s = d.sqrt();
    &s * &s == *d
}

impl QuadIrr {
    /// `(p + √d)/q`, the form used by the `quad:(P,D,Q)` syntax.
    pub fn new(p: impl Into<BigInt>, d: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, d, q) = (p.into(), d.into(), q.into());
        if q.is_zero() {
            return Err(Error::InvalidArgument("denominator Q must be nonzero".into()));
        }
        if d.is_negative() {
            return Err(Error::InvalidArgument("radicand D must be nonnegative".into()));
        }
        Ok(Self::from_coefficients(p, BigInt::one(), d, q))
    }

    /// `(a + b·√r)/c` for arbitrary `r ≥ 0`, `c ≠ 0`; reduced to canonical form.
    ///
    /// Panics if `c` is zero or `r` negative.
    pub fn from_coefficients(a: BigInt, b: BigInt, r: BigInt, c: BigInt) -> Self {
        assert!(!c.is_zero(), "zero denominator");
        assert!(!r.is_negative(), "negative radicand");
        let (mut a, mut b, mut r) = (a, b, r);
        if b.is_zero() || r.is_zero() {
            b = BigInt::zero();
            r = BigInt::zero();
        } else {
            let (k, s) = squarefree_split(&r);
            b *= k;
            r = s;
            if r.is_one() {
                a += &b;
                b = BigInt::zero();
                r = BigInt::zero();
            }
        }
        Self::reduced(a, b, r, c)
    }

    /// Builds from coefficients whose radicand is already squarefree (or zero).
    fn reduced(mut a: BigInt, mut b: BigInt, mut r: BigInt, mut c: BigInt) -> Self {
        if b.is_zero() {
            r = BigInt::zero();
        }
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() && !g.is_zero() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        if a.is_zero() && b.is_zero() {
            c = BigInt::one();
        }
        QuadIrr { a, b, r, c }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        QuadIrr {
            a: n.into(),
            b: BigInt::zero(),
            r: BigInt::zero(),
            c: BigInt::one(),
        }
    }

    pub fn from_ratio(q: &BigRational) -> Self {
        Self::reduced(q.numer().clone(), BigInt::zero(), BigInt::zero(), q.denom().clone())
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// `√n` for an integer `n ≥ 0`.
    pub fn sqrt_of(n: impl Into<BigInt>) -> Self {
        Self::from_coefficients(BigInt::zero(), BigInt::one(), n.into(), BigInt::one())
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn golden() -> Self {
        Self::from_coefficients(1.into(), 1.into(), 5.into(), 2.into())
    }

    /// The silver ratio `1 + √2`.
    pub fn silver() -> Self {
        Self::from_coefficients(1.into(), 1.into(), 2.into(), 1.into())
    }

    /// Squarefree radicand; zero for rationals.
    pub fn radicand(&self) -> &BigInt {
        &self.r
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.c.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn rational_part(&self) -> BigRational {
        BigRational::new(self.a.clone(), self.c.clone())
    }

    pub fn surd_coefficient(&self) -> BigRational {
        BigRational::new(self.b.clone(), self.c.clone())
    }

    /// Raw canonical coefficients `(a, b, r, c)`.
    pub fn coefficients(&self) -> (&BigInt, &BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.r, &self.c)
    }

    /// The value as `(P + √D)/Q` with `Q ≠ 0` (negative when the surd
    /// coefficient is negative).
    pub fn to_pdq(&self) -> (BigInt, BigInt, BigInt) {
        if self.b.is_zero() {
            return (self.a.clone(), BigInt::zero(), self.c.clone());
        }
        let d = &self.b * &self.b * &self.r;
        if self.b.is_positive() {
            (self.a.clone(), d, self.c.clone())
        } else {
            (-&self.a, d, -&self.c)
        }
    }

    /// `quad:(P,D,Q)` rendering, parseable by [`crate::cf::parse_quad`].
    pub fn to_syntax(&self) -> String {
        let (p, d, q) = self.to_pdq();
        format!("quad:({p},{d},{q})")
    }

    /// Whether `self` and `other` can be combined with field operations.
    pub fn same_field(&self, other: &Self) -> bool {
        self.r.is_zero() || other.r.is_zero() || self.r == other.r
    }

    fn common_radicand(&self, other: &Self) -> BigInt {
        assert!(
            self.same_field(other),
            "mixing quadratic fields Q(√{}) and Q(√{})",
            self.r,
            other.r
        );
        if self.r.is_zero() {
            other.r.clone()
        } else {
            self.r.clone()
        }
    }

    /// Exact sign, as -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        sign_of_surd(&self.a, &self.b, &self.r)
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        // c / (a + b√r) = c(a - b√r) / (a² - b²r)
        let norm = &self.a * &self.a - &self.b * &self.b * &self.r;
        Self::reduced(
            &self.c * &self.a,
            -(&self.c * &self.b),
            self.r.clone(),
            norm,
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = QuadIrr::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.div_floor(&self.c);
        }
        // a ± √N with N = b²r not a square: floor((a + √N)/c) = floor((a + ⌊√N⌋)/c),
        // floor((a - √N)/c) = floor((a - ⌊√N⌋ - 1)/c).
        let n = &self.b * &self.b * &self.r;
        let s = n.sqrt();
        let shifted = if self.b.is_positive() {
            &self.a + s
        } else {
            &self.a - s - 1
        };
        shifted.div_floor(&self.c)
    }

    /// The integer nearest to the value; exact halves round up.
    pub fn round(&self) -> BigInt {
        let half = QuadIrr::from_ratio(&BigRational::new(1.into(), 2.into()));
        (self + &half).floor()
    }

    /// Distance to the nearest integer.
    pub fn dist_to_nearest_int(&self) -> Self {
        let n = QuadIrr::from_integer(self.round());
        (self - &n).abs()
    }

    /// Certified rational enclosure with width at most about `2^-bits / c`.
    pub fn enclose(&self, bits: u32) -> Interval {
        let c = BigRational::from_integer(self.c.clone());
        if self.b.is_zero() {
            let v = BigRational::new(self.a.clone(), self.c.clone());
            return Interval::point(v);
        }
        let n = &self.b * &self.b * &self.r;
        let scaled = n << (2 * bits as usize);
        let s = scaled.sqrt();
        let scale = BigRational::from_integer(BigInt::one() << bits as usize);
        let root_lo = BigRational::from_integer(s.clone()) / &scale;
        let root_hi = BigRational::from_integer(s + 1) / &scale;
        let a = BigRational::from_integer(self.a.clone());
        if self.b.is_positive() {
            Interval::new((&a + root_lo) / &c, (&a + root_hi) / &c)
        } else {
            Interval::new((&a - root_hi) / &c, (&a - root_lo) / &c)
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(96).midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

/// Sign of `a + b√r` for squarefree `r` (or `b = 0`).
pub(crate) fn sign_of_surd(a: &BigInt, b: &BigInt, r: &BigInt) -> i8 {
    let sa = sign_i8(a);
    let sb = sign_i8(b);
    if sb == 0 || r.is_zero() {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * r)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

pub(crate) fn sign_i8(x: &BigInt) -> i8 {
    match x.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

impl Add for &QuadIrr {
    type Output = QuadIrr;
    fn add(self, rhs: &QuadIrr) -> QuadIrr {
        let r = self.common_radicand(rhs);
        QuadIrr::reduced(
            &self.a * &rhs.c + &rhs.a * &self.c,
            &self.b * &rhs.c + &rhs.b * &self.c,
            r,
            &self.c * &rhs.c,
        )
    }
}

impl Sub for &QuadIrr {
    type Output = QuadIrr;
    fn sub(self, rhs: &QuadIrr) -> QuadIrr {
        self + &(-rhs)
    }
}

impl Mul for &QuadIrr {
    type Output = QuadIrr;
    fn mul(self, rhs: &QuadIrr) -> QuadIrr {
        let r = self.common_radicand(rhs);
        QuadIrr::reduced(
            &self.a * &rhs.a + &self.b * &rhs.b * &r,
            &self.a * &rhs.b + &self.b * &rhs.a,
            r,
            &self.c * &rhs.c,
        )
    }
}

impl Div for &QuadIrr {
    type Output = QuadIrr;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &QuadIrr) -> QuadIrr {
        self * &rhs.recip()
    }
}

impl Neg for &QuadIrr {
    type Output = QuadIrr;
    fn neg(self) -> QuadIrr {
        QuadIrr {
            a: -&self.a,
            b: -&self.b,
            r: self.r.clone(),
            c: self.c.clone(),
        }
    }
}

impl Neg for QuadIrr {
    type Output = QuadIrr;
    fn neg(self) -> QuadIrr {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for QuadIrr {
            type Output = QuadIrr;
            fn $m(self, rhs: QuadIrr) -> QuadIrr { (&self).$m(&rhs) }
        }
        impl $tr<&QuadIrr> for QuadIrr {
            type Output = QuadIrr;
            fn $m(self, rhs: &QuadIrr) -> QuadIrr { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for QuadIrr {
    fn from(n: i64) -> Self {
        QuadIrr::from_integer(n)
    }
}

impl From<BigInt> for QuadIrr {
    fn from(n: BigInt) -> Self {
        QuadIrr::from_integer(n)
    }
}

impl PartialOrd for QuadIrr {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadIrr {
    fn cmp(&self, other: &Self) -> Ordering {
        crate::tower::compare(self, other)
    }
}

impl fmt::Display for QuadIrr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return if self.c.is_one() {
                write!(f, "{}", self.a)
            } else {
                write!(f, "{}/{}", self.a, self.c)
            };
        }
        let surd = match (self.b.abs().is_one(), self.b.is_negative()) {
            (true, false) => format!("√{}", self.r),
            (true, true) => format!("-√{}", self.r),
            (false, _) => format!("{}√{}", self.b, self.r),
        };
        let body = if self.a.is_zero() {
            surd
        } else if self.b.is_negative() {
            format!("{} - {}", self.a, surd.trim_start_matches('-'))
        } else {
            format!("{} + {}", self.a, surd)
        };
        if self.c.is_one() {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64, qq: i64) -> QuadIrr {
        QuadIrr::new(p, d, qq).unwrap()
    }

    #[test]
    fn canonical_form_is_unique() {
        assert_eq!(q(2, 20, 4), QuadIrr::golden());
        assert_eq!(QuadIrr::sqrt_of(8), &QuadIrr::from_integer(2) * &QuadIrr::sqrt_of(2));
        assert_eq!(q(3, 9, 2), QuadIrr::from_integer(3));
        assert_eq!(q(1, 2, -1), -QuadIrr::silver());
    }

    #[test]
    fn squarefree_split_handles_prime_squares() {
        let (k, s) = squarefree_split(&BigInt::from(2u64 * 10007 * 10007));
        assert_eq!((k, s), (BigInt::from(10007), BigInt::from(2)));
        let (k, s) = squarefree_split(&BigInt::from(72));
        assert_eq!((k, s), (BigInt::from(6), BigInt::from(2)));
        let (k, s) = squarefree_split(&BigInt::from(10007u64 * 10009));
        assert_eq!((k, s), (BigInt::from(1), BigInt::from(10007u64 * 10009)));
    }

    #[test]
    fn golden_ratio_identities() {
        let t = QuadIrr::golden();
        assert_eq!(&t * &t, &t + &QuadIrr::one());
        assert_eq!(t.recip(), &t - &QuadIrr::one());
        assert_eq!(t.floor(), BigInt::from(1));
        assert_eq!((-&t).floor(), BigInt::from(-2));
    }

    #[test]
    fn floor_and_nearest_integer() {
        let x = q(0, 2, 1) * QuadIrr::from_integer(100); // 141.42...
        assert_eq!(x.floor(), BigInt::from(141));
        assert_eq!(x.round(), BigInt::from(141));
        let seven_tau = &QuadIrr::golden() * &QuadIrr::from_integer(7);
        assert_eq!(seven_tau.round(), BigInt::from(11));
        let d = seven_tau.dist_to_nearest_int();
        assert!((d.to_f64() - 0.326238).abs() < 1e-6);
        assert_eq!(
            QuadIrr::from_ratio(&BigRational::new(5.into(), 2.into())).round(),
            BigInt::from(3)
        );
    }

    #[test]
    fn signs_and_order() {
        assert_eq!(q(-3, 2, 1).signum(), -1);
        assert_eq!(q(-1, 2, 1).signum(), 1);
        assert!(QuadIrr::silver() > QuadIrr::golden());
        assert!(QuadIrr::sqrt_of(2) < QuadIrr::from_ratio(&BigRational::new(99.into(), 70.into())));
    }

    #[test]
    fn enclosure_contains_value() {
        let x = q(-7, 13, 3);
        let e = x.enclose(64);
        let f = x.to_f64();
        assert!(e.lo().to_f64().unwrap() <= f && f <= e.hi().to_f64().unwrap());
        assert!(e.width() < BigRational::new(1.into(), BigInt::one() << 60));
    }

    #[test]
    fn pdq_round_trip() {
        for x in [q(1, 5, 2), q(3, 8, -7), q(5, 0, 3), QuadIrr::silver().recip()] {
            let (p, d, qq) = x.to_pdq();
            assert_eq!(QuadIrr::new(p, d, qq).unwrap(), x);
        }
    }

    #[test]
    #[should_panic(expected = "mixing quadratic fields")]
    fn mixing_fields_panics() {
        let _ = &QuadIrr::golden() + &QuadIrr::silver();
    }
}
