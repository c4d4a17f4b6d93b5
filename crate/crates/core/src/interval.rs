//! Closed rational intervals used as certified enclosures.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    /// Panics if `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Interval spanned by two endpoints in either order.
    pub fn spanning(x: BigRational, y: BigRational) -> Self {
        if x <= y {
            Interval { lo: x, hi: y }
        } else {
            Interval { lo: y, hi: x }
        }
    }

    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `Some(order)` when the intervals are disjoint (or both the same point).
    pub fn try_cmp(&self, other: &Interval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn scale(&self, k: &BigRational) -> Interval {
        Interval::spanning(&self.lo * k, &self.hi * k)
    }

    /// Division by an interval that excludes zero. Panics otherwise.
    pub fn div(&self, other: &Interval) -> Interval {
        assert!(
            other.lo.is_positive() || other.hi.is_negative(),
            "division by an interval containing zero"
        );
        let inv = Interval::spanning(other.hi.recip(), other.lo.recip());
        self.mul(&inv)
    }

    pub fn abs(&self) -> Interval {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            Interval::new(-&self.hi, -&self.lo)
        } else {
            let hi = std::cmp::max(-&self.lo, self.hi.clone());
            Interval::new(BigRational::zero(), hi)
        }
    }

    pub fn max(&self, other: &Interval) -> Interval {
        Interval::new(
            std::cmp::max(&self.lo, &other.lo).clone(),
            std::cmp::max(&self.hi, &other.hi).clone(),
        )
    }

    pub fn min(&self, other: &Interval) -> Interval {
        Interval::new(
            std::cmp::min(&self.lo, &other.lo).clone(),
            std::cmp::min(&self.hi, &other.hi).clone(),
        )
    }

    /// Enclosure of `√x` for a nonnegative interval, to about `2^-bits`.
    pub fn sqrt(&self, bits: u32) -> Interval {
        assert!(!self.lo.is_negative(), "square root of a negative interval");
        let shift = 2 * bits as usize;
        let lo_scaled = floor_scaled(&self.lo, shift);
        let hi_scaled = ceil_scaled(&self.hi, shift);
        let den = BigInt::one() << bits as usize;
        let lo = BigRational::new(lo_scaled.sqrt(), den.clone());
        let hi_root = hi_scaled.sqrt();
        let hi_root = if &hi_root * &hi_root == hi_scaled {
            hi_root
        } else {
            hi_root + 1
        };
        Interval::new(lo, BigRational::new(hi_root, den))
    }

    /// Enclosure of `x^(1/n)` for a nonnegative interval, to about `2^-bits`.
    pub fn nth_root(&self, n: u32, bits: u32) -> Interval {
        assert!(n >= 1);
        assert!(!self.lo.is_negative(), "root of a negative interval");
        let shift = n as usize * bits as usize;
        let lo_scaled = floor_scaled(&self.lo, shift);
        let hi_scaled = ceil_scaled(&self.hi, shift);
        let den = BigInt::one() << bits as usize;
        let lo = BigRational::new(lo_scaled.nth_root(n), den.clone());
        let hi_root = hi_scaled.nth_root(n);
        let hi_root = if hi_root.pow(n) == hi_scaled {
            hi_root
        } else {
            hi_root + 1
        };
        Interval::new(lo, BigRational::new(hi_root, den))
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }
}

fn floor_scaled(x: &BigRational, shift: usize) -> BigInt {
    (x.numer() << shift).div_floor(x.denom())
}

fn ceil_scaled(x: &BigRational, shift: usize) -> BigInt {
    -((-(x.numer() << shift)).div_floor(x.denom()))
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            format_decimal(&self.lo, 17),
            format_decimal(&self.hi, 17)
        )
    }
}

/// Renders `x` with `digits` significant decimal digits (round half up).
///
/// Plain notation is used for magnitudes in `[1e-5, 1e15)`; scientific
/// notation otherwise.
pub fn format_decimal(x: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    let negative = x.is_negative();
    let x = x.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e <= x < 10^(e+1)
    let mut e: i64 = (x.numer().bits() as i64 - x.denom().bits() as i64) * 30103 / 100000;
    loop {
        let p = pow10(e);
        if x < p {
            e -= 1;
        } else if x >= pow10(e + 1) {
            e += 1;
        } else {
            break;
        }
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &x * pow10(shift);
    let half = BigRational::new(1.into(), 2.into());
    let mut mantissa = (scaled + half).floor().to_integer();
    if mantissa >= ten.pow(digits as u32) {
        mantissa /= &ten;
        e += 1;
    }
    let mut s = mantissa.to_string();
    let sign = if negative { "-" } else { "" };
    if !(-5..15).contains(&e) {
        let rest = s.split_off(1);
        let rest = rest.trim_end_matches('0');
        return if rest.is_empty() {
            format!("{sign}{s}e{e}")
        } else {
            format!("{sign}{s}.{rest}e{e}")
        };
    }
    if e < 0 {
        let zeros = "0".repeat((-e - 1) as usize);
        let body = format!("0.{zeros}{s}");
        return format!("{sign}{}", trim_fraction(&body));
    }
    let int_len = e as usize + 1;
    if s.len() <= int_len {
        s.push_str(&"0".repeat(int_len - s.len()));
        return format!("{sign}{s}");
    }
    let frac = s.split_off(int_len);
    format!("{sign}{}", trim_fraction(&format!("{s}.{frac}")))
}

fn trim_fraction(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn pow10(e: i64) -> BigRational {
    let p = BigInt::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt_two_enclosure() {
        let e = Interval::point(r(2, 1)).sqrt(100);
        assert!(e.width() <= r(1, 1) / BigRational::from_integer(BigInt::one() << 99));
        let lo2 = e.lo() * e.lo();
        let hi2 = e.hi() * e.hi();
        assert!(lo2 <= r(2, 1) && hi2 >= r(2, 1));
    }

    #[test]
    fn cube_root_enclosure() {
        let e = Interval::point(r(27, 8)).nth_root(3, 40);
        assert!(e.contains(&r(3, 2)));
        assert_eq!(e.lo(), &r(3, 2));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&r(1, 3), 6), "0.333333");
        assert_eq!(format_decimal(&r(2, 3), 3), "0.667");
        assert_eq!(format_decimal(&r(-5, 1), 15), "-5");
        assert_eq!(format_decimal(&r(12345, 100), 3), "123");
        assert_eq!(format_decimal(&r(99999, 1000), 3), "100");
        assert_eq!(format_decimal(&r(1, 1_000_000_000), 4), "1e-9");
        assert_eq!(format_decimal(&r(123, 10_000_000), 4), "0.0000123");
        assert_eq!(format_decimal(&r(123, 100_000_000), 4), "1.23e-6");
        assert_eq!(format_decimal(&r(7, 4), 15), "1.75");
    }

    #[test]
    fn interval_arithmetic_is_sound() {
        let a = Interval::new(r(-1, 2), r(1, 3));
        let b = Interval::new(r(2, 1), r(3, 1));
        assert_eq!(a.mul(&b), Interval::new(r(-3, 2), r(1, 1)));
        assert_eq!(a.abs(), Interval::new(r(0, 1), r(1, 2)));
        assert_eq!(b.div(&b).lo(), &r(2, 3));
        assert_eq!(a.try_cmp(&b), Some(Ordering::Less));
        assert_eq!(a.try_cmp(&a), None);
    }
}
