//! Pairs `(β, ω)` whose ratio profile tends to a prescribed constant.
//!
//! `β` is the base number, `θ = √2 + 1` or `τ = (√5 + 1)/2`; its convergent
//! denominators satisfy `Q_{n+1} = c·Q_n + Q_{n-1}` with `c = 2` or `c = 1`.
//! Pick integers `U, V` with `V + U/β` close to `β^x`, run the same
//! recurrence from `X_0 = U, X_1 = V`, and splice the reversed expansion of
//! `X_{k-1}/X_k` in front of the base period. The denominators of the
//! resulting `ω` follow `X_n`, and `Q_n/X_n → β^{1-x}`.
//!
//! Closed forms. The recurrence has characteristic roots `β` and `−1/β`, so
//! `X_n = Aβ^n + B(−β)^{-n}` with `A + B = U` and `Aβ − B/β = V`, giving
//! `A = (V + U/β)/(β + 1/β)`. For `θ`, `θ + 1/θ = 2√2`; for `τ`,
//! `τ + 1/τ = √5`. The base denominators themselves are the case
//! `U = 1, V = c`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::cf::PartialQuotients;
use crate::error::{Error, Result};
use crate::interval::{format_decimal, Interval};
use crate::psi::check_pair;
use crate::quad::QuadIrr;

/// Default bound on `U` in [`kronecker_search`].
pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Base `θ = [2; (2)]`.
    Sqrt2,
    /// Base `τ = [1; (1)]`.
    Tau,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Sqrt2 => "sqrt2",
            Family::Tau => "tau",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "sqrt2" => Ok(Family::Sqrt2),
            "tau" => Ok(Family::Tau),
            _ => Err(Error::InvalidArgument(format!(
                "unknown family `{s}`; expected `sqrt2` or `tau`"
            ))),
        }
    }

    pub fn base(self) -> QuadIrr {
        match self {
            Family::Sqrt2 => QuadIrr::silver(),
            Family::Tau => QuadIrr::golden(),
        }
    }

    pub fn base_cf(self) -> PartialQuotients {
        match self {
            Family::Sqrt2 => PartialQuotients::silver(),
            Family::Tau => PartialQuotients::golden(),
        }
    }

    /// The recurrence coefficient `c`, also the period of the base.
    pub fn step(self) -> u64 {
        match self {
            Family::Sqrt2 => 2,
            Family::Tau => 1,
        }
    }

    /// `β + 1/β`: `2√2` or `√5`.
    pub fn root_gap(self) -> QuadIrr {
        let b = self.base();
        &b + &b.recip()
    }
}

/// The real number `V + U/β` should approximate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KroneckerTarget {
    /// `β^x` for rational `0 < x < 1`.
    Power(BigRational),
    /// A rational value.
    Value(BigRational),
}

impl KroneckerTarget {
    pub fn enclose(&self, family: Family, bits: u32) -> Interval {
        match self {
            KroneckerTarget::Value(v) => Interval::point(v.clone()),
            KroneckerTarget::Power(x) => power_enclosure(family, x, bits),
        }
    }

    pub fn describe(&self, family: Family) -> String {
        let base = match family {
            Family::Sqrt2 => "theta",
            Family::Tau => "tau",
        };
        match self {
            KroneckerTarget::Power(x) => format!("{base}^({x})"),
            KroneckerTarget::Value(v) => v.to_string(),
        }
    }
}

/// Enclosure of `β^(p/q)`: the real `q`-th root of `β^p`.
pub fn power_enclosure(family: Family, x: &BigRational, bits: u32) -> Interval {
    let (p, q) = (x.numer(), x.denom());
    let p = p.to_u32().expect("exponent numerator out of range");
    let q = q.to_u32().expect("exponent denominator out of range");
    let inner = family.base().pow(p).enclose(bits + 8 + 4 * p);
    inner.nth_root(q, bits + 4)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KroneckerSolution {
    pub family: Family,
    pub u: BigInt,
    pub v: BigInt,
    /// Certified upper bound on `|V + U/β − target|`.
    pub achieved_error: BigRational,
    pub target: KroneckerTarget,
}

impl KroneckerSolution {
    /// `V + U/β`.
    pub fn value(&self) -> QuadIrr {
        approximant(self.family, &self.u, &self.v)
    }

    /// `A = (V + U/β)/(β + 1/β)`.
    pub fn a(&self) -> QuadIrr {
        &self.value() / &self.family.root_gap()
    }

    /// `B = U − A`.
    pub fn b(&self) -> QuadIrr {
        &QuadIrr::from_integer(self.u.clone()) - &self.a()
    }

    /// `Aβ^n + B(−β)^{-n}`, exactly.
    pub fn closed_form(&self, n: u32) -> QuadIrr {
        let base = self.family.base();
        let mut tail = self.b() * base.pow(n).recip();
        if n % 2 == 1 {
            tail = -tail;
        }
        &(self.a() * base.pow(n)) + &tail
    }
}

fn approximant(family: Family, u: &BigInt, v: &BigInt) -> QuadIrr {
    &QuadIrr::from_integer(v.clone()) + &(&QuadIrr::from_integer(u.clone()) * &family.base().recip())
}

fn decide_below(err: &QuadIrr, target: &KroneckerTarget, family: Family, eps: &BigRational) -> Option<BigRational> {
    let mut bits = 96;
    while bits <= 1536 {
        let e = err.enclose(bits).sub(&target.enclose(family, bits)).abs();
        if e.hi() < eps {
            return Some(e.hi().clone());
        }
        if e.lo() >= eps {
            return None;
        }
        bits *= 2;
    }
    None
}

/// First `U = 1, 2, …, bound` (with `V` the nearest integer to
/// `target − U/β`) such that `|V + U/β − target| < ε`, `gcd(U, V) = 1` and
/// `V + U/β > 0`.
///
/// The gcd condition makes `X_{k-1}/X_k` a reduced fraction, so the spliced
/// expansion reproduces `X_k` itself as a denominator.
pub fn kronecker_search(
    family: Family,
    target: &KroneckerTarget,
    epsilon: &BigRational,
    bound: u64,
) -> Result<KroneckerSolution> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    if let KroneckerTarget::Power(x) = target {
        if !x.is_positive() || x >= &BigRational::one() {
            return Err(Error::InvalidArgument("exponent must lie in (0, 1)".into()));
        }
    }
    let target_f = target.enclose(family, 64).to_f64();
    let recip_f = family.base().recip().to_f64();
    let eps_f = epsilon.to_f64().unwrap_or(f64::INFINITY);
    for u in 1..=bound {
        let v_f = (target_f - u as f64 * recip_f).round();
        let err_f = (v_f + u as f64 * recip_f - target_f).abs();
        if err_f > eps_f + 1e-6 {
            continue;
        }
        let (u, v) = (BigInt::from(u), BigInt::from(v_f as i64));
        if !u.gcd(&v).is_one() {
            continue;
        }
        let value = approximant(family, &u, &v);
        if value.signum() <= 0 {
            continue;
        }
        if let Some(achieved_error) = decide_below(&value, target, family, epsilon) {
            return Ok(KroneckerSolution {
                family,
                u,
                v,
                achieved_error,
                target: target.clone(),
            });
        }
    }
    Err(Error::SearchBoundExceeded { bound })
}

/// `X_0 = U, X_1 = V, X_{n+1} = c·X_n + X_{n-1}`.
pub fn x_sequence(sol: &KroneckerSolution, count: usize) -> Vec<BigInt> {
    let c = BigInt::from(sol.family.step());
    let mut out = Vec::with_capacity(count);
    let (mut a, mut b) = (sol.u.clone(), sol.v.clone());
    for _ in 0..count {
        out.push(a.clone());
        let next = &c * &b + &a;
        a = std::mem::replace(&mut b, next);
    }
    out
}

/// `¼((2+√2)θ^n + (2−√2)(−θ)^{-n})`, the `n`-th convergent denominator of `θ`.
pub fn pell_closed_form(n: u32) -> QuadIrr {
    let theta = QuadIrr::silver();
    let s2 = QuadIrr::sqrt_of(2);
    let two = QuadIrr::from_integer(2);
    let mut tail = (&two - &s2) * theta.pow(n).recip();
    if n % 2 == 1 {
        tail = -tail;
    }
    (&((&two + &s2) * theta.pow(n)) + &tail) * QuadIrr::from_ratio(&BigRational::new(1.into(), 4.into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalPair {
    pub family: Family,
    pub base: PartialQuotients,
    pub omega: PartialQuotients,
    pub x_param: BigRational,
    pub epsilon: BigRational,
    pub solution: KroneckerSolution,
    /// Smallest `k ≥ 1` with `1 ≤ X_{k-1} < X_k`.
    pub k: usize,
    /// Length of the spliced quotient block.
    pub l: usize,
    /// Shift with `s_n = X_{n - n0}` for the denominators `s_n` of `ω`.
    pub n0: i64,
}

fn window_search_len() -> usize {
    400
}

/// Splices the reversed expansion of `X_{k-1}/X_k` in front of the base
/// period.
pub fn build_omega(sol: &KroneckerSolution, x_param: BigRational, epsilon: BigRational) -> Result<ExtremalPair> {
    let xs = x_sequence(sol, window_search_len());
    let one = BigInt::one();
    let k = (1..xs.len())
        .find(|&k| xs[k - 1] >= one && xs[k] >= one && xs[k - 1] < xs[k])
        .ok_or(Error::NoPositiveWindow)?;
    let (num, den) = (xs[k - 1].clone(), xs[k].clone());
    let g = num.gcd(&den);
    if !g.is_one() {
        return Err(Error::Precondition(format!("X_{{k-1}} and X_k share the factor {g}")));
    }
    let mut quotients = Vec::new();
    let (mut a, mut b) = (den, num);
    while !b.is_zero() {
        let (q, r) = a.div_rem(&b);
        quotients.push(q.to_u64().ok_or_else(|| Error::QuotientOverflow(q.to_string()))?);
        a = std::mem::replace(&mut b, r);
    }
    quotients.reverse();
    let l = quotients.len();
    let base = sol.family.base_cf();
    let omega = PartialQuotients::periodic(0, quotients, vec![sol.family.step()])?;
    match check_pair(&base, &omega) {
        Ok(()) => {}
        Err(Error::SumOrDifferenceInteger) => return Err(Error::DegeneratePair("base ± omega is an integer".into())),
        Err(e) => return Err(e),
    }
    Ok(ExtremalPair {
        family: sol.family,
        base,
        omega,
        x_param,
        epsilon,
        solution: sol.clone(),
        k,
        l,
        n0: l as i64 - k as i64,
    })
}

/// Builds the pair for exponent `x ∈ (0, 1)`: the profile tends to
/// `max(β^x, β^{1-x}) − 1`.
pub fn build_pair(family: Family, x: &BigRational, epsilon: &BigRational, bound: u64) -> Result<ExtremalPair> {
    let sol = kronecker_search(family, &KroneckerTarget::Power(x.clone()), epsilon, bound)?;
    build_omega(&sol, x.clone(), epsilon.clone())
}

/// A target constant `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetConstant {
    /// `C = β^x − 1` for `1/2 ≤ x < 1`.
    Power(BigRational),
    /// A rational `C`.
    Rational(BigRational),
}

impl TargetConstant {
    pub fn enclose(&self, family: Family, bits: u32) -> Interval {
        match self {
            TargetConstant::Power(x) => power_enclosure(family, x, bits).sub(&Interval::point(BigRational::one())),
            TargetConstant::Rational(c) => Interval::point(c.clone()),
        }
    }
}

/// Range of constants a family reaches: `[√β − 1, β − 1)`.
pub fn admissible_range(family: Family) -> (Interval, Interval) {
    let b = family.base();
    let low = b.enclose(80).sqrt(64).sub(&Interval::point(BigRational::one()));
    let high = (&b - &QuadIrr::one()).enclose(64);
    (low, high)
}

/// Solves `max(β^x, β^{1-x}) − 1 = C` on the branch `x ≥ 1/2` and builds
/// the pair. For a rational `C` the Kronecker target is `1 + C` itself and
/// `x` is reported as a rational approximation of `log_β(1 + C)`.
pub fn build_pair_for_constant(
    family: Family,
    target: &TargetConstant,
    epsilon: &BigRational,
    bound: u64,
) -> Result<ExtremalPair> {
    let half = BigRational::new(1.into(), 2.into());
    match target {
        TargetConstant::Power(x) => {
            if x < &half || x >= &BigRational::one() {
                return Err(Error::TargetOutOfRange(format!(
                    "exponent {x} outside [1/2, 1) for family {}",
                    family.name()
                )));
            }
            build_pair(family, x, epsilon, bound)
        }
        TargetConstant::Rational(c) => {
            // 1 + C ∈ [√β, β)  ⇔  (1 + C)² ≥ β and 1 + C < β
            let v = QuadIrr::from_ratio(&(c + BigRational::one()));
            let b = family.base();
            if v.signum() <= 0 || &v * &v < b || v >= b {
                let (lo, hi) = admissible_range(family);
                return Err(Error::TargetOutOfRange(format!(
                    "C = {} outside [{}, {}) for family {}",
                    format_decimal(c, 10),
                    format_decimal(lo.lo(), 10),
                    format_decimal(hi.hi(), 10),
                    family.name()
                )));
            }
            let x_f = (1.0 + c.to_f64().unwrap()).ln() / b.to_f64().ln();
            let scale = 1_000_000_000_000i64;
            let x_param = BigRational::new(BigInt::from((x_f * scale as f64).round() as i64), BigInt::from(scale));
            let sol = kronecker_search(family, &KroneckerTarget::Value(c + BigRational::one()), epsilon, bound)?;
            build_omega(&sol, x_param, epsilon.clone())
        }
    }
}

impl ExtremalPair {
    /// `s_n` for `n ≥ l − 1` agrees with `X_{n - n0}` for `count` terms.
    pub fn denominators_follow_x(&self, count: usize) -> Result<bool> {
        let xs = x_sequence(&self.solution, self.k + count + 1);
        let conv = self.omega.convergents(self.l + count)?;
        for n in self.l.saturating_sub(1)..self.l + count {
            let idx = n as i64 - self.n0;
            if idx < 0 {
                continue;
            }
            if conv[n].q != xs[idx as usize] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The constant the profile tends to: `max(β^x, β^{1-x}) − 1`.
    pub fn limit_constant(&self, bits: u32) -> Interval {
        let one = BigRational::one();
        let x = if &self.x_param * BigRational::from_integer(2.into()) >= one {
            self.x_param.clone()
        } else {
            &one - &self.x_param
        };
        TargetConstant::Power(x).enclose(self.family, bits)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "family": self.family.name(),
            "theta": self.base.to_syntax(),
            "omega": self.omega.to_syntax(),
            "xParam": self.x_param.to_string(),
            "epsilon": self.epsilon.to_string(),
            "target": self.solution.target.describe(self.family),
            "U": self.solution.u.to_string(),
            "V": self.solution.v.to_string(),
            "k": self.k,
            "l": self.l,
            "n0": self.n0,
            "achievedError": format_decimal(&self.solution.achieved_error, 12),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn big_vec(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kronecker_examples() {
        let half = KroneckerTarget::Power(r(1, 2));
        let sol = kronecker_search(Family::Sqrt2, &half, &r(3, 1000), DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!((sol.u.clone(), sol.v.clone()), (BigInt::from(11), BigInt::from(-3)));
        assert!((sol.achieved_error.to_f64().unwrap() - 0.002575).abs() < 1e-5);
        let sol = kronecker_search(Family::Sqrt2, &half, &r(15, 100), DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!((sol.u.clone(), sol.v.clone()), (BigInt::one(), BigInt::one()));
        assert_eq!(
            kronecker_search(Family::Sqrt2, &half, &r(1, 1_000_000_000), 10),
            Err(Error::SearchBoundExceeded { bound: 10 })
        );
    }

    #[test]
    fn sequences_and_closed_forms() {
        let sol = kronecker_search(Family::Sqrt2, &KroneckerTarget::Power(r(1, 2)), &r(3, 1000), 1000).unwrap();
        assert_eq!(x_sequence(&sol, 7), big_vec(&[11, -3, 5, 7, 19, 45, 109]));
        for (n, x) in x_sequence(&sol, 30).into_iter().enumerate() {
            assert_eq!(sol.closed_form(n as u32), QuadIrr::from_integer(x));
        }
        let ones = KroneckerSolution {
            u: BigInt::one(),
            v: BigInt::one(),
            ..sol
        };
        assert_eq!(x_sequence(&ones, 6), big_vec(&[1, 1, 3, 7, 17, 41]));
    }

    #[test]
    fn pell_matches_recurrence() {
        let theta = PartialQuotients::silver();
        for c in theta.convergents(41).unwrap() {
            assert_eq!(pell_closed_form(c.n as u32), QuadIrr::from_integer(c.q));
        }
    }

    #[test]
    fn omega_for_the_worked_example() {
        let pair = build_pair(Family::Sqrt2, &r(1, 2), &r(3, 1000), DEFAULT_SEARCH_BOUND).unwrap();
        assert_eq!(pair.omega.to_string(), "cf:[0; 2, 2, 1, (2)]");
        assert_eq!(pair.k, 3);
        assert_eq!(pair.l, 3);
        assert_eq!(pair.n0, 0);
        let s: Vec<BigInt> = pair.omega.convergents(7).unwrap().into_iter().map(|c| c.q).collect();
        assert_eq!(s[3..], big_vec(&[7, 19, 45, 109])[..]);
        assert!(pair.denominators_follow_x(30).unwrap());
    }

    #[test]
    fn range_checks() {
        let eps = r(1, 100);
        for c in [r(1, 2), r(3, 2)] {
            assert!(matches!(
                build_pair_for_constant(Family::Sqrt2, &TargetConstant::Rational(c), &eps, 1000),
                Err(Error::TargetOutOfRange(_))
            ));
        }
        assert!(matches!(
            build_pair_for_constant(Family::Tau, &TargetConstant::Rational(r(7, 10)), &eps, 1000),
            Err(Error::TargetOutOfRange(_))
        ));
        let pair = build_pair_for_constant(Family::Sqrt2, &TargetConstant::Rational(r(7, 10)), &eps, 100_000).unwrap();
        assert!((pair.x_param.to_f64().unwrap() - 0.6021).abs() < 1e-3);
        let pair = build_pair_for_constant(Family::Tau, &TargetConstant::Power(r(1, 2)), &eps, 100_000).unwrap();
        assert!(pair.omega.equivalent(&PartialQuotients::golden()).unwrap());
        assert!(pair.denominators_follow_x(30).unwrap());
    }
}
