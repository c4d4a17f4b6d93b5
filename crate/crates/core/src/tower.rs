//! Exact sign determination across different quadratic fields.
//!
//! Values from `ℚ(√r₁)`, `ℚ(√r₂)`, ... are embedded into the iterated
//! extension `ℚ(√r₁)(√r₂)…`, where each element is `a + b·√r` over the
//! previous level. The sign of `a + b√r` follows from the signs of `a`,
//! `b` and of `a² − r·b²`, recursively. No division is needed, so the
//! test is exact even when some radicand is dependent on the others.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::quad::QuadIrr;

/// An ordered list of radicands; elements built from it share one shape.
#[derive(Clone, Debug)]
pub struct Tower {
    radicands: Vec<BigInt>,
}

#[derive(Clone, Debug)]
pub enum TowerElem {
    Rat(BigRational),
    Ext(Box<TowerElem>, Box<TowerElem>),
}

impl Tower {
    /// Tower over the distinct irrational radicands of `values`.
    pub fn over<'a>(values: impl IntoIterator<Item = &'a QuadIrr>) -> Self {
        let mut radicands: Vec<BigInt> = Vec::new();
        for v in values {
            let r = v.radicand();
            if !r.is_zero() && !radicands.contains(r) {
                radicands.push(r.clone());
            }
        }
        Tower { radicands }
    }

    pub fn height(&self) -> usize {
        self.radicands.len()
    }

    pub fn rational(&self, q: BigRational) -> TowerElem {
        self.rational_at(q, self.height())
    }

    fn rational_at(&self, q: BigRational, level: usize) -> TowerElem {
        if level == 0 {
            TowerElem::Rat(q)
        } else {
            TowerElem::Ext(
                Box::new(self.rational_at(q, level - 1)),
                Box::new(self.rational_at(BigRational::zero(), level - 1)),
            )
        }
    }

    /// Panics if the radicand of `q` is not part of the tower.
    pub fn embed(&self, q: &QuadIrr) -> TowerElem {
        if q.is_rational() {
            return self.rational(q.rational_part());
        }
        let pos = self
            .radicands
            .iter()
            .position(|r| r == q.radicand())
            .expect("radicand not in tower");
        self.embed_at(q, pos, self.height())
    }

    fn embed_at(&self, q: &QuadIrr, pos: usize, level: usize) -> TowerElem {
        debug_assert!(level > pos);
        if level == pos + 1 {
            TowerElem::Ext(
                Box::new(self.rational_at(q.rational_part(), level - 1)),
                Box::new(self.rational_at(q.surd_coefficient(), level - 1)),
            )
        } else {
            TowerElem::Ext(
                Box::new(self.embed_at(q, pos, level - 1)),
                Box::new(self.rational_at(BigRational::zero(), level - 1)),
            )
        }
    }

    pub fn add(&self, x: &TowerElem, y: &TowerElem) -> TowerElem {
        match (x, y) {
            (TowerElem::Rat(a), TowerElem::Rat(b)) => TowerElem::Rat(a + b),
            (TowerElem::Ext(a1, b1), TowerElem::Ext(a2, b2)) => TowerElem::Ext(
                Box::new(self.add(a1, a2)),
                Box::new(self.add(b1, b2)),
            ),
            _ => panic!("tower elements of different shapes"),
        }
    }

    pub fn neg(&self, x: &TowerElem) -> TowerElem {
        match x {
            TowerElem::Rat(a) => TowerElem::Rat(-a),
            TowerElem::Ext(a, b) => TowerElem::Ext(Box::new(self.neg(a)), Box::new(self.neg(b))),
        }
    }

    pub fn sub(&self, x: &TowerElem, y: &TowerElem) -> TowerElem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &TowerElem, y: &TowerElem) -> TowerElem {
        self.mul_at(x, y, self.height())
    }

    fn mul_at(&self, x: &TowerElem, y: &TowerElem, level: usize) -> TowerElem {
        match (x, y) {
            (TowerElem::Rat(a), TowerElem::Rat(b)) => TowerElem::Rat(a * b),
            (TowerElem::Ext(a1, b1), TowerElem::Ext(a2, b2)) => {
                let r = self.rational_at(
                    BigRational::from_integer(self.radicands[level - 1].clone()),
                    level - 1,
                );
                let bb = self.mul_at(b1, b2, level - 1);
                let a = self.add(&self.mul_at(a1, a2, level - 1), &self.mul_at(&bb, &r, level - 1));
                let b = self.add(&self.mul_at(a1, b2, level - 1), &self.mul_at(b1, a2, level - 1));
                TowerElem::Ext(Box::new(a), Box::new(b))
            }
            _ => panic!("tower elements of different shapes"),
        }
    }

    /// Exact sign of `x`.
    pub fn signum(&self, x: &TowerElem) -> Ordering {
        self.signum_at(x, self.height())
    }

    fn signum_at(&self, x: &TowerElem, level: usize) -> Ordering {
        match x {
            TowerElem::Rat(q) => q.cmp(&BigRational::zero()),
            TowerElem::Ext(a, b) => {
                let sa = self.signum_at(a, level - 1);
                let sb = self.signum_at(b, level - 1);
                if sb == Ordering::Equal {
                    return sa;
                }
                if sa == Ordering::Equal || sa == sb {
                    return sb;
                }
                // a and b have opposite signs: sign(a + b√r) = sign(a) · sign(a² − r b²)
                let r = self.rational_at(
                    BigRational::from_integer(self.radicands[level - 1].clone()),
                    level - 1,
                );
                let a2 = self.mul_at(a, a, level - 1);
                let b2 = self.mul_at(b, b, level - 1);
                let norm = self.sub(&a2, &self.mul_at(&r, &b2, level - 1));
                match self.signum_at(&norm, level - 1) {
                    Ordering::Equal => Ordering::Equal,
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                }
            }
        }
    }
}

/// Total order on quadratic irrationals, regardless of their fields.
pub fn compare(x: &QuadIrr, y: &QuadIrr) -> Ordering {
    if x.same_field(y) {
        return match (x - y).signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        };
    }
    let tower = Tower::over([x, y]);
    tower.signum(&tower.sub(&tower.embed(x), &tower.embed(y)))
}

/// Compares the products `x1·x2` and `y1·y2`.
pub fn compare_products(x1: &QuadIrr, x2: &QuadIrr, y1: &QuadIrr, y2: &QuadIrr) -> Ordering {
    let tower = Tower::over([x1, x2, y1, y2]);
    let lhs = tower.mul(&tower.embed(x1), &tower.embed(x2));
    let rhs = tower.mul(&tower.embed(y1), &tower.embed(y2));
    tower.signum(&tower.sub(&lhs, &rhs))
}

/// Compares `num/den` against `√square` for `den > 0`, `square ≥ 0`.
pub fn compare_ratio_with_sqrt(num: &QuadIrr, den: &QuadIrr, square: &QuadIrr) -> Ordering {
    debug_assert!(den.signum() > 0);
    if num.signum() <= 0 {
        return if square.is_zero() && num.is_zero() {
            Ordering::Equal
        } else {
            Ordering::Less
        };
    }
    // num/den vs √s  ⇔  num² vs s·den²  (both sides nonnegative)
    let tower = Tower::over([num, den, square]);
    let n = tower.embed(num);
    let d = tower.embed(den);
    let s = tower.embed(square);
    let lhs = tower.mul(&n, &n);
    let rhs = tower.mul(&s, &tower.mul(&d, &d));
    tower.signum(&tower.sub(&lhs, &rhs))
}

/// Rational lower bound helper: is `x` at least `q`?
pub fn at_least_rational(x: &QuadIrr, q: &BigRational) -> bool {
    let d = x - &QuadIrr::from_ratio(q);
    !d.signum().is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cross_field_comparisons() {
        let tau = QuadIrr::golden();
        let theta = QuadIrr::silver();
        assert_eq!(compare(&tau, &theta), Ordering::Less);
        assert_eq!(compare(&theta, &tau), Ordering::Greater);
        // √2 + √3 ≈ 3.1462643699 vs 3.14626437 and 3.1462643698
        let s2 = QuadIrr::sqrt_of(2);
        let s3 = QuadIrr::sqrt_of(3);
        let t = Tower::over([&s2, &s3]);
        let sum = t.add(&t.embed(&s2), &t.embed(&s3));
        let above = t.rational(r(314626437, 100000000));
        let below = t.rational(r(31462643698, 10000000000));
        assert_eq!(t.signum(&t.sub(&sum, &above)), Ordering::Less);
        assert_eq!(t.signum(&t.sub(&sum, &below)), Ordering::Greater);
    }

    #[test]
    fn dependent_radicands_still_decide() {
        // √6 − √2·√3 = 0 inside the tower over {2, 3, 6}
        let s2 = QuadIrr::sqrt_of(2);
        let s3 = QuadIrr::sqrt_of(3);
        let s6 = QuadIrr::sqrt_of(6);
        let t = Tower::over([&s2, &s3, &s6]);
        let prod = t.mul(&t.embed(&s2), &t.embed(&s3));
        assert_eq!(t.signum(&t.sub(&t.embed(&s6), &prod)), Ordering::Equal);
    }

    #[test]
    fn ratio_against_fourth_degree_constant() {
        // √θ ≈ 1.5537739740
        let theta = QuadIrr::silver();
        let one = QuadIrr::one();
        let num = QuadIrr::from_ratio(&r(15537739741, 10000000000));
        assert_eq!(compare_ratio_with_sqrt(&num, &one, &theta), Ordering::Greater);
        let num = QuadIrr::from_ratio(&r(15537739739, 10000000000));
        assert_eq!(compare_ratio_with_sqrt(&num, &one, &theta), Ordering::Less);
        assert_eq!(compare_ratio_with_sqrt(&theta, &one, &(&theta * &theta)), Ordering::Equal);
    }

    #[test]
    fn products_across_fields() {
        let tau = QuadIrr::golden();
        let theta = QuadIrr::silver();
        // τ·θ vs θ·τ
        assert_eq!(compare_products(&tau, &theta, &theta, &tau), Ordering::Equal);
        assert_eq!(
            compare_products(&tau, &tau, &theta, &QuadIrr::one()),
            Ordering::Greater
        );
    }
}
