//! Continued fraction expansions and the quantities derived from them.

mod continuant;
mod expand;
mod syntax;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quad::QuadIrr;

pub use continuant::{continuant, fibonacci};
pub use expand::expand;
pub use syntax::{parse_cf, parse_number, parse_quad};

/// How the quotient sequence continues past the stored data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionKind {
    /// `[a0; a1, …, an]`, a rational number.
    Finite,
    /// `[a0; a1, …, am, (p1, …, pk)]`, a quadratic irrational.
    Periodic,
    /// The first quotients of an irrational number with unknown continuation.
    Stream,
}

/// A continued fraction expansion `[a0; a1, a2, …]`.
///
/// Constructors normalize to the canonical form: a finite expansion never
/// ends in 1 (unless it is the single term `[a0]`), and a periodic one has a
/// primitive period and the shortest possible preperiod.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialQuotients {
    a0: BigInt,
    preperiod: Vec<u64>,
    period: Vec<u64>,
    horizon: Option<usize>,
}

fn check_positive(quotients: &[u64]) -> Result<()> {
    if quotients.contains(&0) {
        return Err(Error::InvalidArgument(
            "partial quotients after a0 must be >= 1".into(),
        ));
    }
    Ok(())
}

/// Smallest prefix length `d` such that `period` is `period[..d]` repeated.
pub(crate) fn primitive_len(period: &[u64]) -> usize {
    let n = period.len();
    (1..=n)
        .find(|&d| n % d == 0 && period.iter().enumerate().all(|(i, a)| *a == period[i % d]))
        .unwrap_or(n)
}

impl PartialQuotients {
    pub fn finite(a0: impl Into<BigInt>, quotients: Vec<u64>) -> Result<Self> {
        check_positive(&quotients)?;
        let mut a0 = a0.into();
        let mut quotients = quotients;
        if quotients.last() == Some(&1) {
            quotients.pop();
            match quotients.last_mut() {
                Some(last) => *last += 1,
                None => a0 += 1,
            }
        }
        Ok(PartialQuotients {
            a0,
            preperiod: quotients,
            period: Vec::new(),
            horizon: None,
        })
    }

    pub fn periodic(a0: impl Into<BigInt>, preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument("period must be nonempty".into()));
        }
        check_positive(&preperiod)?;
        check_positive(&period)?;
        let mut preperiod = preperiod;
        let mut period = period;
        period.truncate(primitive_len(&period));
        while let (Some(&x), Some(&y)) = (preperiod.last(), period.last()) {
            if x != y {
                break;
            }
            preperiod.pop();
            period.rotate_right(1);
        }
        Ok(PartialQuotients {
            a0: a0.into(),
            preperiod,
            period,
            horizon: None,
        })
    }

    /// An irrational number of which only the first `known.len()` quotients
    /// after `a0` are available.
    pub fn stream(a0: impl Into<BigInt>, known: Vec<u64>) -> Result<Self> {
        check_positive(&known)?;
        let horizon = known.len();
        Ok(PartialQuotients {
            a0: a0.into(),
            preperiod: known,
            period: Vec::new(),
            horizon: Some(horizon),
        })
    }

    pub fn integer(a0: impl Into<BigInt>) -> Self {
        PartialQuotients {
            a0: a0.into(),
            preperiod: Vec::new(),
            period: Vec::new(),
            horizon: None,
        }
    }

    /// `τ = [1; (1)]`.
    pub fn golden() -> Self {
        Self::periodic(1, vec![], vec![1]).unwrap()
    }

    /// `θ = [2; (2)]`.
    pub fn silver() -> Self {
        Self::periodic(2, vec![], vec![2]).unwrap()
    }

    pub fn kind(&self) -> ExpansionKind {
        if !self.period.is_empty() {
            ExpansionKind::Periodic
        } else if self.horizon.is_some() {
            ExpansionKind::Stream
        } else {
            ExpansionKind::Finite
        }
    }

    pub fn is_irrational(&self) -> bool {
        self.kind() != ExpansionKind::Finite
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    /// Quotients before the period (all known quotients for finite and stream
    /// expansions).
    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn horizon(&self) -> Option<usize> {
        self.horizon
    }

    /// The quotient `a_i` for `i ≥ 1`; `None` past the end of a finite expansion.
    pub fn quotient(&self, i: usize) -> Result<Option<u64>> {
        assert!(i >= 1, "a0 is not a u64 quotient; use a0()");
        let m = self.preperiod.len();
        if i <= m {
            return Ok(Some(self.preperiod[i - 1]));
        }
        match self.kind() {
            ExpansionKind::Periodic => Ok(Some(self.period[(i - m - 1) % self.period.len()])),
            ExpansionKind::Finite => Ok(None),
            ExpansionKind::Stream => Err(Error::HorizonExhausted {
                requested: i,
                horizon: m,
            }),
        }
    }

    /// `a_i` for any `i ≥ 0`, as a big integer.
    pub(crate) fn quotient_big(&self, i: usize) -> Result<Option<BigInt>> {
        if i == 0 {
            Ok(Some(self.a0.clone()))
        } else {
            Ok(self.quotient(i)?.map(BigInt::from))
        }
    }

    /// Number of quotients (including `a0`) for finite expansions.
    pub fn finite_len(&self) -> Option<usize> {
        (self.kind() == ExpansionKind::Finite).then(|| self.preperiod.len() + 1)
    }

    pub fn convergent_iter(&self) -> Convergents<'_> {
        Convergents {
            x: self,
            last: Convergent::minus_one(),
            before: Convergent {
                n: -2,
                p: BigInt::zero(),
                q: BigInt::one(),
            },
            next_index: 0,
            done: false,
        }
    }

    /// The first `up_to` convergents `p_n/q_n`, `n = 0, 1, …`.
    ///
    /// A finite expansion yields fewer when it ends first.
    pub fn convergents(&self, up_to: usize) -> Result<Vec<Convergent>> {
        if up_to == 0 {
            return Err(Error::InvalidArgument("up_to must be >= 1".into()));
        }
        self.convergent_iter().take(up_to).collect()
    }

    /// Denominators `(n, q_n)` with `q_n ≤ limit`, in index order.
    pub fn denominators_up_to(&self, limit: &BigInt) -> Result<Vec<(usize, BigInt)>> {
        let mut out = Vec::new();
        for c in self.convergent_iter() {
            let c = c?;
            if &c.q > limit {
                break;
            }
            out.push((c.n as usize, c.q));
        }
        Ok(out)
    }

    /// Exact tails `α_r`; see [`TailTable`].
    pub fn tails(&self) -> Result<TailTable> {
        TailTable::new(self)
    }

    /// The tail `α_r = [a_r; a_{r+1}, …]`.
    pub fn tail(&self, r: usize) -> Result<QuadIrr> {
        self.tails()?.get(r)
    }

    pub fn evaluate(&self) -> Result<QuadIrr> {
        self.tail(0)
    }

    /// Whether the two numbers share a common tail.
    ///
    /// Two rationals are always equivalent; a rational never is to an
    /// irrational.
    pub fn equivalent(&self, other: &Self) -> Result<bool> {
        use ExpansionKind::*;
        match (self.kind(), other.kind()) {
            (Stream, _) | (_, Stream) => Err(Error::EquivalenceUndecidable),
            (Finite, Finite) => Ok(true),
            (Finite, _) | (_, Finite) => Ok(false),
            (Periodic, Periodic) => Ok(is_rotation(&self.period, &other.period)),
        }
    }

    /// `cf:[…]` rendering; see [`parse_cf`].
    pub fn to_syntax(&self) -> String {
        self.to_string()
    }
}

fn is_rotation(x: &[u64], y: &[u64]) -> bool {
    x.len() == y.len() && (0..y.len()).any(|s| (0..x.len()).all(|i| x[i] == y[(i + s) % y.len()]))
}

impl fmt::Display for PartialQuotients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cf:[{}", self.a0)?;
        let mut items: Vec<String> = self.preperiod.iter().map(u64::to_string).collect();
        if !self.period.is_empty() {
            let inner: Vec<String> = self.period.iter().map(u64::to_string).collect();
            items.push(format!("({})", inner.join(", ")));
        }
        if self.horizon.is_some() {
            items.push("...".into());
        }
        if !items.is_empty() {
            write!(f, "; {}", items.join(", "))?;
        }
        write!(f, "]")
    }
}

/// The convergent `p_n/q_n`; `n = -1` denotes the `1/0` seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub n: i64,
    pub p: BigInt,
    pub q: BigInt,
}

impl Convergent {
    pub fn minus_one() -> Self {
        Convergent {
            n: -1,
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }
}

/// Iterator over convergents via `p_n = a_n p_{n-1} + p_{n-2}`.
pub struct Convergents<'a> {
    x: &'a PartialQuotients,
    last: Convergent,
    before: Convergent,
    next_index: usize,
    done: bool,
}

impl Iterator for Convergents<'_> {
    type Item = Result<Convergent>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let n = self.next_index;
        let a = match self.x.quotient_big(n) {
            Ok(Some(a)) => a,
            Ok(None) => {
                self.done = true;
                return None;
            }
            Err(e) => {
                self.done = true;
                return Some(Err(e));
            }
        };
        let cur = Convergent {
            n: n as i64,
            p: &a * &self.last.p + &self.before.p,
            q: &a * &self.last.q + &self.before.q,
        };
        self.before = std::mem::replace(&mut self.last, cur.clone());
        self.next_index += 1;
        Some(Ok(cur))
    }
}

/// Exact tails `α_r` of a finite or eventually periodic expansion.
///
/// Tails `0..=m` (with `m` the preperiod length) are stored once, followed
/// by one full cycle of the period.
#[derive(Clone, Debug)]
pub struct TailTable {
    head: Vec<QuadIrr>,
    cycle: Vec<QuadIrr>,
}

impl TailTable {
    pub fn new(x: &PartialQuotients) -> Result<Self> {
        match x.kind() {
            ExpansionKind::Stream => Err(Error::TailNotExact),
            ExpansionKind::Finite => {
                let mut head = vec![QuadIrr::from_integer(x.preperiod.last().map_or(x.a0.clone(), |&a| a.into()))];
                for i in (0..x.preperiod.len()).rev() {
                    let a = x.quotient_big(i)?.expect("within finite expansion");
                    let next = head.last().unwrap().recip();
                    head.push(&QuadIrr::from_integer(a) + &next);
                }
                head.reverse();
                Ok(TailTable { head, cycle: Vec::new() })
            }
            ExpansionKind::Periodic => {
                let period = &x.period;
                let k = period.len();
                // ζ = [p1; p2, …, pk, ζ] = (Pζ + P')/(Qζ + Q')
                let (mut pp, mut p) = (BigInt::zero(), BigInt::one());
                let (mut qq, mut q) = (BigInt::one(), BigInt::zero());
                for &a in period {
                    let a = BigInt::from(a);
                    let np = &a * &p + &pp;
                    let nq = &a * &q + &qq;
                    pp = std::mem::replace(&mut p, np);
                    qq = std::mem::replace(&mut q, nq);
                }
                // Qζ² + (Q' − P)ζ − P' = 0, positive root
                let b = &p - &qq;
                let disc = &b * &b + BigInt::from(4) * &q * &pp;
                let zeta = QuadIrr::new(b, disc, BigInt::from(2) * &q)?;
                let mut cycle = vec![zeta.clone()];
                let mut next = zeta.clone();
                for j in (1..k).rev() {
                    next = &QuadIrr::from_integer(period[j]) + &next.recip();
                    cycle.push(next.clone());
                }
                // cycle now holds ζ, α_{m+k}, …, α_{m+2}; reorder to α_{m+1..=m+k}
                cycle[1..].reverse();
                let m = x.preperiod.len();
                let mut head = Vec::with_capacity(m + 1);
                let mut next = zeta;
                for i in (0..=m).rev() {
                    let a = x.quotient_big(i)?.expect("periodic expansions never end");
                    next = &QuadIrr::from_integer(a) + &next.recip();
                    head.push(next.clone());
                }
                head.reverse();
                Ok(TailTable { head, cycle })
            }
        }
    }

    /// `α_r`; past the end of a finite expansion this is an error.
    pub fn get(&self, r: usize) -> Result<QuadIrr> {
        if r < self.head.len() {
            return Ok(self.head[r].clone());
        }
        if self.cycle.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "tail index {r} past the end of a finite expansion"
            )));
        }
        let m = self.head.len() - 1;
        Ok(self.cycle[(r - m - 1) % self.cycle.len()].clone())
    }

    /// Number of distinct stored tails (preperiodic part plus one cycle).
    pub fn stored(&self) -> usize {
        self.head.len() + self.cycle.len()
    }
}
