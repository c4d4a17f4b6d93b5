use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::PartialQuotients;
use crate::error::{Error, Result};
use crate::quad::QuadIrr;

fn to_quotient(a: &BigInt) -> Result<u64> {
    a.to_u64().ok_or_else(|| Error::QuotientOverflow(a.to_string()))
}

/// Continued fraction of an exact value.
///
/// Rationals give a finite expansion; quadratic irrationals give the
/// eventually periodic one, detected by the first repeated complete
/// quotient `(P + √D)/Q`.
pub fn expand(x: &QuadIrr) -> Result<PartialQuotients> {
    if x.is_rational() {
        let v = x.rational_part();
        let (mut num, mut den) = (v.numer().clone(), v.denom().clone());
        let (a0, rem) = num.div_mod_floor(&den);
        let mut quotients = Vec::new();
        num = den;
        den = rem;
        while !den.is_zero() {
            let (a, rem) = num.div_mod_floor(&den);
            quotients.push(to_quotient(&a)?);
            num = den;
            den = rem;
        }
        return PartialQuotients::finite(a0, quotients);
    }

    let (mut p, mut d, mut q) = x.to_pdq();
    // keep Q | D − P² so every later complete quotient has integral P, Q
    if !(&d - &p * &p).is_multiple_of(&q) {
        let qa = q.abs();
        p *= &qa;
        d *= &q * &q;
        q *= &qa;
    }
    let s = d.sqrt();
    let floor_of = |p: &BigInt, q: &BigInt| -> BigInt {
        if q.is_positive() {
            (p + &s).div_floor(q)
        } else {
            (-p - &s - 1u32).div_floor(&-q)
        }
    };

    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut a0 = BigInt::zero();
    let mut quotients: Vec<u64> = Vec::new();
    let mut i = 0usize;
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            // state i repeats state `start`: quotients a_start .. a_{i-1} recur
            return if start == 0 {
                let mut period = quotients.clone();
                period.push(to_quotient(&a0)?);
                PartialQuotients::periodic(a0, vec![], period)
            } else {
                let pre = quotients[..start - 1].to_vec();
                let period = quotients[start - 1..].to_vec();
                PartialQuotients::periodic(a0, pre, period)
            };
        }
        seen.insert((p.clone(), q.clone()), i);
        let a = floor_of(&p, &q);
        let next_p = &a * &q - &p;
        let next_q = (&d - &next_p * &next_p) / &q;
        if i == 0 {
            a0 = a;
        } else {
            quotients.push(to_quotient(&a)?);
        }
        p = next_p;
        q = next_q;
        i += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64, q: i64) -> QuadIrr {
        QuadIrr::new(p, d, q).unwrap()
    }

    #[test]
    fn classic_expansions() {
        assert_eq!(expand(&QuadIrr::golden()).unwrap(), PartialQuotients::golden());
        assert_eq!(expand(&QuadIrr::silver()).unwrap(), PartialQuotients::silver());
        // √7 = [2; (1, 1, 1, 4)]
        let x = expand(&QuadIrr::sqrt_of(7)).unwrap();
        assert_eq!(x.a0(), &BigInt::from(2));
        assert!(x.preperiod().is_empty());
        assert_eq!(x.period(), &[1, 1, 1, 4]);
        // (1 + √3)/2 = [1; (2, 1)]
        let x = expand(&q(1, 3, 2)).unwrap();
        assert_eq!(x.to_string(), "cf:[1; (2, 1)]");
    }

    #[test]
    fn negative_and_preperiodic_values() {
        // −√2 = [−2; 1, 1, (2)]
        let x = expand(&(-QuadIrr::sqrt_of(2))).unwrap();
        assert_eq!(x.evaluate().unwrap(), -QuadIrr::sqrt_of(2));
        assert_eq!(x.to_string(), "cf:[-2; 1, 1, (2)]");
        let y = q(3, 5, 7);
        assert_eq!(expand(&y).unwrap().evaluate().unwrap(), y);
    }

    #[test]
    fn rationals_terminate() {
        let x = expand(&QuadIrr::from_ratio(&num_rational::BigRational::new(
            415.into(),
            93.into(),
        )))
        .unwrap();
        assert_eq!(x.to_string(), "cf:[4; 2, 6, 7]");
        assert_eq!(
            expand(&QuadIrr::from_ratio(&num_rational::BigRational::new(
                (-7).into(),
                2.into()
            )))
            .unwrap()
            .to_string(),
            "cf:[-4; 2]"
        );
    }

    #[test]
    fn huge_quotient_overflows() {
        // √(n² + 1) = [n; (2n)] with 2n > u64::MAX
        let n = BigInt::from(u64::MAX);
        let x = QuadIrr::new(0, &n * &n + 1, 1).unwrap();
        assert!(matches!(expand(&x), Err(Error::QuotientOverflow(_))));
    }
}
