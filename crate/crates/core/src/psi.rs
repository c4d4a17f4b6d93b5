//! The irrationality measure function `ψ_x(t) = min_{1≤q≤t} ‖qx‖`.
//!
//! For `q_r ≤ t < q_{r+1}` the minimum is attained at the convergent
//! denominator `q_r` and equals `1/(q_r·x_{r+1} + q_{r-1})`, where `x_{r+1}`
//! is a tail of the expansion. When `q_0 = q_1 = 1` the largest index is
//! used, so `ψ(1) = 1/(x_2 + 1)` for numbers with `a_1 = 1`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cf::{ExpansionKind, PartialQuotients, TailTable};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quad::QuadIrr;

/// How ψ values are evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Exact quadratic-field arithmetic; needs eventually periodic input.
    Exact,
    /// Certified enclosures of width at most `tol`, refined one quotient at
    /// a time. Works on stream-backed input up to its horizon.
    Interval { tol: BigRational },
}

impl Mode {
    pub fn interval(tol: BigRational) -> Result<Self> {
        if !tol.is_positive() {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(Mode::Interval { tol })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Mode::Exact)
    }
}

/// Upper bound on refinement steps before giving up in interval mode.
const MAX_REFINEMENTS: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PsiRepr {
    Exact(QuadIrr),
    Enclosure(Interval),
}

/// A value of ψ (or of ‖qx‖) with the convergent index it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiValue {
    pub value: PsiRepr,
    /// The index `r` with `q_r ≤ t < q_{r+1}`; `None` for `‖qx‖` values.
    pub source_index: Option<usize>,
}

impl PsiValue {
    pub fn exact(&self) -> Option<&QuadIrr> {
        match &self.value {
            PsiRepr::Exact(v) => Some(v),
            PsiRepr::Enclosure(_) => None,
        }
    }

    /// A rational enclosure; exact values are enclosed to about `2^-bits`.
    pub fn enclose(&self, bits: u32) -> Interval {
        match &self.value {
            PsiRepr::Exact(v) => v.enclose(bits),
            PsiRepr::Enclosure(i) => i.clone(),
        }
    }

    pub fn width(&self) -> BigRational {
        match &self.value {
            PsiRepr::Exact(_) => BigRational::zero(),
            PsiRepr::Enclosure(i) => i.width(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.value {
            PsiRepr::Exact(v) => v.to_f64(),
            PsiRepr::Enclosure(i) => i.to_f64(),
        }
    }
}

fn require_irrational(x: &PartialQuotients) -> Result<()> {
    if x.is_irrational() {
        Ok(())
    } else {
        Err(Error::NotIrrational)
    }
}

fn to_precision(e: Error) -> Error {
    match e {
        Error::HorizonExhausted { requested, horizon } => Error::PrecisionUnreachable(format!(
            "quotient {requested} needed but the stream only has {horizon}"
        )),
        other => other,
    }
}

/// Enclosure of the tail `x_start` from the quotients `a_start, …, a_{start+j-1}`.
///
/// The last used quotient is widened to `[a, a + 1]`, which brackets the
/// true tail because every later tail exceeds 1.
pub(crate) fn tail_enclosure(x: &PartialQuotients, start: usize, j: usize) -> Result<Interval> {
    debug_assert!(j >= 1);
    let mut quotients = Vec::with_capacity(j);
    for i in start..start + j {
        let a = x.quotient_big(i)?.ok_or(Error::NotIrrational)?;
        quotients.push(BigRational::from_integer(a));
    }
    let last = quotients.pop().unwrap();
    let eval = |z: BigRational| {
        quotients
            .iter()
            .rev()
            .fold(z, |v, a| a + v.recip())
    };
    let lo = eval(last.clone());
    let hi = eval(last + BigRational::one());
    Ok(Interval::spanning(lo, hi))
}

/// Denominators of one number up to a value limit, with exact ξ values when
/// the expansion is eventually periodic.
#[derive(Clone, Debug)]
pub struct PsiTable {
    x: PartialQuotients,
    /// `q_0, q_1, …`, stopping at the first denominator above the limit (or
    /// at the stream horizon).
    q: Vec<BigInt>,
    covers_limit: bool,
    limit: BigInt,
    tails: Option<TailTable>,
}

impl PsiTable {
    pub fn new(x: &PartialQuotients, limit: &BigInt) -> Result<Self> {
        require_irrational(x)?;
        let mut q = Vec::new();
        let mut covers_limit = false;
        for c in x.convergent_iter() {
            match c {
                Ok(c) => {
                    let above = &c.q > limit;
                    q.push(c.q);
                    if above {
                        covers_limit = true;
                        break;
                    }
                }
                Err(Error::HorizonExhausted { .. }) => break,
                Err(e) => return Err(e),
            }
        }
        let tails = match x.kind() {
            ExpansionKind::Periodic => Some(x.tails()?),
            _ => None,
        };
        Ok(PsiTable {
            x: x.clone(),
            q,
            covers_limit,
            limit: limit.clone(),
            tails,
        })
    }

    pub fn number(&self) -> &PartialQuotients {
        &self.x
    }

    /// Known denominators `q_0, q_1, …` (the last one may exceed the limit).
    pub fn denominators(&self) -> &[BigInt] {
        &self.q
    }

    /// The largest `r` with `q_r ≤ t`.
    pub fn index_for(&self, t: &BigInt) -> Result<usize> {
        if t < &BigInt::one() {
            return Err(Error::InvalidArgument("t must be >= 1".into()));
        }
        let r = self.q.partition_point(|q| q <= t);
        if r == self.q.len() {
            // every known denominator is ≤ t, so q_{r} is not known to exceed t
            if self.covers_limit || t > &self.limit {
                return Err(Error::InvalidArgument(format!(
                    "t = {t} exceeds the table limit {}",
                    self.limit
                )));
            }
            return Err(Error::PrecisionUnreachable(format!(
                "the stream horizon ends before a denominator above t = {t}"
            )));
        }
        Ok(r - 1)
    }

    fn q_prev(&self, n: usize) -> BigInt {
        if n == 0 {
            BigInt::zero()
        } else {
            self.q[n - 1].clone()
        }
    }

    /// `ξ_n = ψ(q_n) = 1/(q_n x_{n+1} + q_{n-1})`.
    pub fn xi(&self, n: usize, mode: &Mode) -> Result<PsiValue> {
        if n >= self.q.len() {
            return Err(Error::InvalidArgument(format!("index {n} beyond the table")));
        }
        let qn = &self.q[n];
        let qp = self.q_prev(n);
        let value = match mode {
            Mode::Exact => {
                let tails = self.tails.as_ref().ok_or(Error::TailNotExact)?;
                let tail = tails.get(n + 1)?;
                let den = &(&QuadIrr::from_integer(qn.clone()) * &tail) + &QuadIrr::from_integer(qp);
                PsiRepr::Exact(den.recip())
            }
            Mode::Interval { tol } => {
                let qn = BigRational::from_integer(qn.clone());
                let qp = Interval::point(BigRational::from_integer(qp));
                let mut j = 1;
                loop {
                    let tail = tail_enclosure(&self.x, n + 1, j).map_err(to_precision)?;
                    let den = tail.scale(&qn).add(&qp);
                    let one = Interval::point(BigRational::one());
                    let v = one.div(&den);
                    if &v.width() <= tol {
                        break PsiRepr::Enclosure(v);
                    }
                    j += 1;
                    if j > MAX_REFINEMENTS {
                        return Err(Error::PrecisionUnreachable(format!(
                            "ξ_{n} not resolved to the requested width after {MAX_REFINEMENTS} quotients"
                        )));
                    }
                }
            }
        };
        Ok(PsiValue {
            value,
            source_index: Some(n),
        })
    }

    pub fn psi(&self, t: &BigInt, mode: &Mode) -> Result<PsiValue> {
        let r = self.index_for(t)?;
        self.xi(r, mode)
    }
}

/// `ψ_x(t)`; see the module documentation for the index convention.
pub fn psi(x: &PartialQuotients, t: &BigInt, mode: &Mode) -> Result<PsiValue> {
    PsiTable::new(x, t)?.psi(t, mode)
}

/// `ξ_n = ψ_x(q_n)`.
pub fn xi(x: &PartialQuotients, n: usize, mode: &Mode) -> Result<PsiValue> {
    require_irrational(x)?;
    let qn = x
        .convergents(n + 1)
        .map_err(to_precision)?
        .pop()
        .expect("n + 1 >= 1 convergents")
        .q;
    let table = PsiTable::new(x, &qn)?;
    table.xi(n, mode)
}

/// `‖qx‖`, the distance from `qx` to the nearest integer.
pub fn dist_to_nearest_int(q: &BigInt, x: &PartialQuotients, mode: &Mode) -> Result<PsiValue> {
    if q < &BigInt::one() {
        return Err(Error::InvalidArgument("q must be >= 1".into()));
    }
    let value = match mode {
        Mode::Exact => {
            let v = x.evaluate()?;
            PsiRepr::Exact((&QuadIrr::from_integer(q.clone()) * &v).dist_to_nearest_int())
        }
        Mode::Interval { tol } => PsiRepr::Enclosure(dist_enclosure(q, x, tol)?),
    };
    Ok(PsiValue {
        value,
        source_index: None,
    })
}

fn dist_enclosure(q: &BigInt, x: &PartialQuotients, tol: &BigRational) -> Result<Interval> {
    let q = BigRational::from_integer(q.clone());
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut prev: Option<BigRational> = None;
    for (steps, c) in x.convergent_iter().enumerate() {
        let c = c.map_err(to_precision)?;
        let cur = BigRational::new(c.p, c.q);
        // consecutive convergents bracket x; a finite expansion ends at x itself
        let exact_next = x.finite_len() == Some(c.n as usize + 1);
        let enclosure = match (&prev, exact_next) {
            (_, true) => Interval::point(cur.clone()),
            (Some(p), false) => Interval::spanning(p.clone(), cur.clone()),
            (None, false) => {
                prev = Some(cur);
                continue;
            }
        };
        let qx = enclosure.scale(&q);
        let k_lo = (qx.lo() + &half).floor();
        let k_hi = (qx.hi() + &half).floor();
        if k_lo == k_hi {
            let d = qx.sub(&Interval::point(k_lo)).abs();
            if &d.width() <= tol {
                return Ok(d);
            }
        }
        if steps > MAX_REFINEMENTS {
            break;
        }
        prev = Some(cur);
    }
    Err(Error::PrecisionUnreachable(
        "‖qx‖ not resolved to the requested width".into(),
    ))
}

/// Exact value of an eventually periodic or finite expansion.
pub(crate) fn exact_value(x: &PartialQuotients) -> Result<QuadIrr> {
    x.evaluate()
}

/// Checks that both numbers are irrational and that `x ± y ∉ ℤ`.
///
/// For stream-backed input the test compares the known quotients; if they
/// cannot separate the two cases the pair is rejected as undecidable.
pub fn check_pair(x: &PartialQuotients, y: &PartialQuotients) -> Result<()> {
    require_irrational(x)?;
    require_irrational(y)?;
    if x.kind() == ExpansionKind::Periodic && y.kind() == ExpansionKind::Periodic {
        let (vx, vy) = (exact_value(x)?, exact_value(y)?);
        if vx.same_field(&vy) && ((&vx - &vy).is_integer() || (&vx + &vy).is_integer()) {
            return Err(Error::SumOrDifferenceInteger);
        }
        return Ok(());
    }
    // x − y ∈ ℤ iff the quotients agree from a_1 on; x + y ∈ ℤ iff x and −y do.
    let neg = negate_prefix(y)?;
    let agree = |u: &[u64], v: &[u64]| u.iter().zip(v).all(|(a, b)| a == b);
    let xs = known_quotients(x);
    if agree(&xs, &known_quotients(y)) || agree(&xs, &neg) {
        return Err(Error::Precondition(
            "x ± y ∈ ℤ cannot be ruled out from the known quotients".into(),
        ));
    }
    Ok(())
}

fn known_quotients(x: &PartialQuotients) -> Vec<u64> {
    let n = x.horizon().unwrap_or(x.preperiod().len() + 2 * x.period().len().max(1));
    (1..=n).filter_map(|i| x.quotient(i).ok().flatten()).collect()
}

/// Quotients `a_1, a_2, …` of `−y`, from the known quotients of `y`.
fn negate_prefix(y: &PartialQuotients) -> Result<Vec<u64>> {
    let b = known_quotients(y);
    Ok(match b.as_slice() {
        [] => vec![],
        [1, rest @ ..] => {
            let mut v = Vec::with_capacity(rest.len());
            if let Some((first, tail)) = rest.split_first() {
                v.push(first + 1);
                v.extend_from_slice(tail);
            }
            v
        }
        [b1, rest @ ..] => {
            let mut v = vec![1, b1 - 1];
            v.extend_from_slice(rest);
            v
        }
    })
}

/// All `n ≤ n_max` with `ψ_x(n) > ‖ny‖`, in increasing order (exact mode).
///
/// A witness has `‖ny‖ < ψ_x(n) < 1/n`. Writing `n = g·n'` with `p'/n'` the
/// reduced nearest fraction, `|y − p'/n'| < 1/n'²`, so `n'` is a convergent
/// denominator of `y` or the denominator of an adjacent intermediate
/// fraction, and `g² n' ‖n'y‖ < 1`. Only those candidates are tested.
pub fn dubickas_witnesses(x: &PartialQuotients, y: &PartialQuotients, n_max: &BigInt) -> Result<Vec<BigInt>> {
    check_pair(x, y)?;
    if n_max < &BigInt::one() {
        return Ok(Vec::new());
    }
    let table = PsiTable::new(x, n_max)?;
    let yv = exact_value(y)?;
    let mut bases: Vec<BigInt> = Vec::new();
    let ys = y.denominators_up_to(&(n_max * 2 + 2))?;
    let ys: Vec<BigInt> = ys.into_iter().map(|(_, q)| q).collect();
    for (i, q) in ys.iter().enumerate() {
        bases.push(q.clone());
        if let Some(next) = ys.get(i + 1) {
            bases.push(q + next);
            bases.push(next - q);
        }
    }
    bases.extend((1..=64).map(BigInt::from));
    bases.retain(|b| b >= &BigInt::one() && b <= n_max);
    bases.sort();
    bases.dedup();

    let one = QuadIrr::one();
    let mut found = Vec::new();
    for base in &bases {
        let d = (&QuadIrr::from_integer(base.clone()) * &yv).dist_to_nearest_int();
        let mut g = BigInt::one();
        loop {
            let n = &g * base;
            if &n > n_max {
                break;
            }
            let bound = &QuadIrr::from_integer(&g * &g * base) * &d;
            if bound.cmp(&one) != Ordering::Less {
                break;
            }
            let psi_n = table.psi(&n, &Mode::Exact)?;
            let dn = (&QuadIrr::from_integer(n.clone()) * &yv).dist_to_nearest_int();
            if psi_n.exact().expect("exact mode") > &dn {
                found.push(n);
            }
            g += 1;
        }
    }
    found.sort();
    found.dedup();
    Ok(found)
}

/// Reference scan over every `n ≤ n_max`, keeping a running minimum for ψ.
pub fn dubickas_witnesses_scan(
    x: &PartialQuotients,
    y: &PartialQuotients,
    n_max: u64,
) -> Result<Vec<BigInt>> {
    check_pair(x, y)?;
    let xv = exact_value(x)?;
    let yv = exact_value(y)?;
    let mut running: Option<QuadIrr> = None;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let nb = QuadIrr::from_integer(n);
        let dx = (&nb * &xv).dist_to_nearest_int();
        let psi_n = match running.take() {
            Some(m) if m <= dx => m,
            _ => dx,
        };
        let dy = (&nb * &yv).dist_to_nearest_int();
        if psi_n > dy {
            out.push(BigInt::from(n));
        }
        running = Some(psi_n);
    }
    Ok(out)
}
