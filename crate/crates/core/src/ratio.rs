//! The normalized difference `|ψ_x(t) − ψ_y(t)| / min(ψ_x(t), ψ_y(t))`.
//!
//! Both functions are constant between consecutive merged denominators, so
//! a profile has one record per such interval. In exact mode each ratio is
//! kept as the pair `(larger ψ, smaller ψ)`; the ratio is `larger/smaller − 1`
//! and comparisons go through [`crate::tower`], never through floats.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cf::PartialQuotients;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::psi::{check_pair, Mode, PsiRepr, PsiTable, PsiValue};
use crate::quad::QuadIrr;
use crate::tower::{compare_products, compare_ratio_with_sqrt};
use crate::word::{build_word, distinct_denominators, merge, scan_qq, scan_xqq, LetterKind};

/// Constants of the form `√s − 1` for a quadratic irrational `s > 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootConstant {
    square: QuadIrr,
}

impl RootConstant {
    /// `√s − 1`. Panics unless `s > 1`.
    pub fn new(square: QuadIrr) -> Self {
        assert!(square > QuadIrr::one(), "√s − 1 needs s > 1");
        RootConstant { square }
    }

    /// `C_1 = √τ − 1 ≈ 0.2720196`.
    pub fn c1() -> Self {
        Self::new(QuadIrr::golden())
    }

    /// `C_2 = √θ − 1 = √(√2 + 1) − 1 ≈ 0.5537740`.
    pub fn c2() -> Self {
        Self::new(QuadIrr::silver())
    }

    pub fn square(&self) -> &QuadIrr {
        &self.square
    }

    pub fn enclose(&self, bits: u32) -> Interval {
        self.square
            .enclose(bits + 4)
            .sqrt(bits)
            .sub(&Interval::point(BigRational::one()))
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(80).to_f64()
    }
}

/// A ratio value, exact or enclosed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RatioValue {
    /// `larger/smaller − 1`.
    Exact { larger: QuadIrr, smaller: QuadIrr },
    Enclosure(Interval),
}

impl RatioValue {
    fn from_psi(a: &PsiValue, b: &PsiValue) -> RatioValue {
        match (&a.value, &b.value) {
            (PsiRepr::Exact(x), PsiRepr::Exact(y)) => {
                if x >= y {
                    RatioValue::Exact {
                        larger: x.clone(),
                        smaller: y.clone(),
                    }
                } else {
                    RatioValue::Exact {
                        larger: y.clone(),
                        smaller: x.clone(),
                    }
                }
            }
            _ => {
                let (x, y) = (a.enclose(128), b.enclose(128));
                let diff = x.sub(&y).abs();
                RatioValue::Enclosure(diff.div(&x.min(&y)))
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, RatioValue::Exact { .. })
    }

    pub fn enclose(&self, bits: u32) -> Interval {
        match self {
            RatioValue::Exact { larger, smaller } => larger
                .enclose(bits + 8)
                .div(&smaller.enclose(bits + 8))
                .sub(&Interval::point(BigRational::one())),
            RatioValue::Enclosure(i) => i.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(80).to_f64()
    }

    /// Decided order, or `None` when enclosures overlap.
    pub fn try_cmp(&self, other: &RatioValue) -> Option<Ordering> {
        match (self, other) {
            (
                RatioValue::Exact { larger: m1, smaller: s1 },
                RatioValue::Exact { larger: m2, smaller: s2 },
            ) => Some(compare_products(m1, s2, m2, s1)),
            _ => self.enclose(128).try_cmp(&other.enclose(128)),
        }
    }

    /// The larger of two values; for enclosures, an enclosure of the maximum.
    pub fn max(&self, other: &RatioValue) -> RatioValue {
        match self.try_cmp(other) {
            Some(Ordering::Less) => other.clone(),
            Some(_) => self.clone(),
            None => RatioValue::Enclosure(self.enclose(128).max(&other.enclose(128))),
        }
    }

    /// Whether the ratio is at least `c − slack`.
    pub fn at_least(&self, c: &RootConstant, slack: &BigRational) -> Result<bool> {
        if let RatioValue::Exact { larger, smaller } = self {
            // larger/smaller − 1 ≥ √s − 1  ⇔  larger/smaller ≥ √s
            if compare_ratio_with_sqrt(larger, smaller, c.square()) != Ordering::Less {
                return Ok(true);
            }
            if slack.is_zero() {
                return Ok(false);
            }
        }
        let mut bits = 64;
        while bits <= 4096 {
            let r = self.enclose(bits);
            let k = c.enclose(bits);
            if r.lo() >= &(k.hi() - slack) {
                return Ok(true);
            }
            if r.hi() < &(k.lo() - slack) {
                return Ok(false);
            }
            if !self.is_exact() && bits >= 256 {
                break;
            }
            bits *= 2;
        }
        Err(Error::PrecisionUnreachable(
            "ratio too close to the constant to decide".into(),
        ))
    }

    /// Whether `larger ≥ k·smaller`, i.e. ratio `≥ k − 1`, exactly.
    fn at_least_factor(&self, k: &QuadIrr) -> Option<bool> {
        match self {
            RatioValue::Exact { larger, smaller } => Some(
                compare_products(larger, &QuadIrr::one(), k, smaller) != Ordering::Less,
            ),
            RatioValue::Enclosure(_) => None,
        }
    }
}

/// One interval `[t_lo, t_hi)` of the profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRecord {
    pub t_lo: BigInt,
    pub t_hi: BigInt,
    pub psi_a: PsiValue,
    pub psi_b: PsiValue,
    pub ratio: RatioValue,
    /// Sign of `ψ_x − ψ_y`; `None` if enclosures could not separate them.
    pub sign: Option<Ordering>,
}

impl RatioRecord {
    /// Enclosure of `|ψ_x − ψ_y|`.
    pub fn diff(&self, bits: u32) -> Interval {
        self.psi_a.enclose(bits).sub(&self.psi_b.enclose(bits)).abs()
    }

    /// Enclosure of `min(ψ_x, ψ_y)`.
    pub fn min_val(&self, bits: u32) -> Interval {
        self.psi_a.enclose(bits).min(&self.psi_b.enclose(bits))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioProfile {
    pub records: Vec<RatioRecord>,
    /// Prefix maxima of the ratio.
    pub running_sup: Vec<RatioValue>,
    /// First record of the tail window.
    pub window_start: usize,
    /// Maximum ratio over the tail window, the estimate of the limsup.
    pub c_estimate: Option<RatioValue>,
}

/// Options for [`profile`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileOptions {
    pub mode: Mode,
    /// Tail window length in records; `None` means the last half.
    pub window: Option<usize>,
}

impl Default for ProfileOptions {
    fn default() -> Self {
        ProfileOptions {
            mode: Mode::Exact,
            window: None,
        }
    }
}

impl RatioProfile {
    pub fn overall_max(&self) -> Option<&RatioValue> {
        self.running_sup.last()
    }

    /// First record whose ratio is at least `c − slack`.
    pub fn first_at_least(&self, c: &RootConstant, slack: &BigRational) -> Result<Option<&RatioRecord>> {
        for r in &self.records {
            if r.ratio.at_least(c, slack)? {
                return Ok(Some(r));
            }
        }
        Ok(None)
    }

    /// Number of sign changes of `ψ_x − ψ_y`, ignoring ties and undecided records.
    pub fn sign_changes(&self) -> usize {
        let mut last: Option<Ordering> = None;
        let mut count = 0;
        for s in self.records.iter().filter_map(|r| r.sign) {
            if s == Ordering::Equal {
                continue;
            }
            if last.is_some_and(|l| l != s) {
                count += 1;
            }
            last = Some(s);
        }
        count
    }
}

/// Lower bound `1/(2·q_{r+1})` on ψ values between `q_r` and `q_{r+1}`.
fn psi_floor(table: &PsiTable, r: usize) -> BigRational {
    let q = table
        .denominators()
        .get(r + 1)
        .cloned()
        .unwrap_or_else(|| table.denominators()[r].clone() * 8);
    BigRational::new(BigInt::one(), q * 2)
}

fn psi_with_ratio_tol(
    ta: &PsiTable,
    tb: &PsiTable,
    ra: usize,
    rb: usize,
    tol: &BigRational,
) -> Result<(PsiValue, PsiValue, RatioValue)> {
    let floor = std::cmp::min(psi_floor(ta, ra), psi_floor(tb, rb));
    let mut psi_tol = tol * &floor / BigRational::from_integer(8.into());
    for _ in 0..24 {
        let mode = Mode::Interval { tol: psi_tol.clone() };
        let a = ta.xi(ra, &mode)?;
        let b = tb.xi(rb, &mode)?;
        let ratio = RatioValue::from_psi(&a, &b);
        if &ratio.enclose(0).width() <= tol {
            return Ok((a, b, ratio));
        }
        psi_tol /= BigRational::from_integer(16.into());
    }
    Err(Error::PrecisionUnreachable(
        "ratio enclosure did not reach the requested width".into(),
    ))
}

/// Profile of the normalized difference over `[1, value_limit)`.
///
/// Records cover `[d_i, d_{i+1})` for consecutive merged denominators,
/// the last one cut at `value_limit`.
pub fn profile(
    x: &PartialQuotients,
    y: &PartialQuotients,
    value_limit: &BigInt,
    options: &ProfileOptions,
) -> Result<RatioProfile> {
    check_pair(x, y)?;
    if value_limit < &BigInt::one() {
        return Err(Error::InvalidArgument("value limit must be >= 1".into()));
    }
    let ta = PsiTable::new(x, value_limit)?;
    let tb = PsiTable::new(y, value_limit)?;
    let xs = distinct_denominators(x, value_limit).or_else(|e| stream_prefix(&ta, value_limit, e))?;
    let ys = distinct_denominators(y, value_limit).or_else(|e| stream_prefix(&tb, value_limit, e))?;
    let letters = merge(&xs, &ys);

    let mut records = Vec::new();
    for (i, letter) in letters.iter().enumerate() {
        let t_lo = letter.value.clone();
        if &t_lo >= value_limit {
            break;
        }
        let t_hi = letters
            .get(i + 1)
            .map(|l| std::cmp::min(&l.value, value_limit).clone())
            .unwrap_or_else(|| value_limit.clone());
        let ra = ta.index_for(&t_lo)?;
        let rb = tb.index_for(&t_lo)?;
        let (psi_a, psi_b, ratio) = match &options.mode {
            Mode::Exact => {
                let a = ta.xi(ra, &Mode::Exact)?;
                let b = tb.xi(rb, &Mode::Exact)?;
                let ratio = RatioValue::from_psi(&a, &b);
                (a, b, ratio)
            }
            Mode::Interval { tol } => psi_with_ratio_tol(&ta, &tb, ra, rb, tol)?,
        };
        let sign = match (psi_a.exact(), psi_b.exact()) {
            (Some(a), Some(b)) => Some(a.cmp(b)),
            _ => psi_a.enclose(0).try_cmp(&psi_b.enclose(0)),
        };
        records.push(RatioRecord {
            t_lo,
            t_hi,
            psi_a,
            psi_b,
            ratio,
            sign,
        });
    }

    let mut running_sup: Vec<RatioValue> = Vec::with_capacity(records.len());
    for r in &records {
        let next = match running_sup.last() {
            Some(m) => m.max(&r.ratio),
            None => r.ratio.clone(),
        };
        running_sup.push(next);
    }
    let n = records.len();
    let window = options.window.unwrap_or(n.div_ceil(2)).clamp(1, n.max(1));
    let window_start = n.saturating_sub(window);
    let c_estimate = records[window_start..]
        .iter()
        .map(|r| r.ratio.clone())
        .reduce(|a, b| a.max(&b));
    Ok(RatioProfile {
        records,
        running_sup,
        window_start,
        c_estimate,
    })
}

/// For stream input the denominators come from the table's known prefix.
fn stream_prefix(table: &PsiTable, limit: &BigInt, e: Error) -> Result<Vec<(usize, BigInt)>> {
    if !matches!(e, Error::HorizonExhausted { .. }) {
        return Err(e);
    }
    let mut out: Vec<(usize, BigInt)> = Vec::new();
    for (n, q) in table.denominators().iter().enumerate() {
        if q > limit {
            break;
        }
        match out.last_mut() {
            Some(last) if &last.1 == q => last.0 = n,
            _ => out.push((n, q.clone())),
        }
    }
    Ok(out)
}

fn golden_equivalent(x: &PartialQuotients) -> Result<bool> {
    x.equivalent(&PartialQuotients::golden())
}

/// Outcome of checking that the profile reaches a constant.
#[derive(Clone, Debug)]
pub struct FloorReport {
    pub holds: bool,
    pub max_ratio: Option<RatioValue>,
    pub witness: Option<RatioRecord>,
    pub records: usize,
}

fn floor_report(p: &RatioProfile, c: &RootConstant, slack: &BigRational) -> Result<FloorReport> {
    let witness = p.first_at_least(c, slack)?.cloned();
    Ok(FloorReport {
        holds: witness.is_some(),
        max_ratio: p.overall_max().cloned(),
        witness,
        records: p.records.len(),
    })
}

/// Whether the ratio reaches `C_2 − slack` below `value_limit`, for pairs
/// where not both numbers are equivalent to the golden ratio.
pub fn verify_main_theorem(
    x: &PartialQuotients,
    y: &PartialQuotients,
    value_limit: &BigInt,
    slack: &BigRational,
) -> Result<FloorReport> {
    check_pair(x, y)?;
    if golden_equivalent(x)? && golden_equivalent(y)? {
        return Err(Error::BothEquivalentToTau);
    }
    let p = profile(x, y, value_limit, &ProfileOptions::default())?;
    floor_report(&p, &RootConstant::c2(), slack)
}

/// Whether the ratio reaches `C_1 − slack` below `value_limit`; holds for
/// every admissible pair.
pub fn verify_floor_c1(
    x: &PartialQuotients,
    y: &PartialQuotients,
    value_limit: &BigInt,
    slack: &BigRational,
) -> Result<FloorReport> {
    let p = profile(x, y, value_limit, &ProfileOptions::default())?;
    floor_report(&p, &RootConstant::c1(), slack)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lemma3Report {
    /// Indices `n ≤ up_to` with `a_n = 2`.
    pub positions: Vec<usize>,
    /// Positions where `max(x_n, x_{n+1}) ≥ √2 + 1` fails.
    pub failures: Vec<usize>,
    /// Positions where the stronger `min(x_n, x_{n+1}) ≥ √2 + 1` fails.
    pub min_failures: Vec<usize>,
}

/// Checks, at every `a_n = 2` with `1 ≤ n ≤ up_to`, that one of the tails
/// `x_n`, `x_{n+1}` is at least `√2 + 1`.
///
/// The `min` form of the bound does not hold in general (`[0; 2, 1, 1, …]`
/// has `x_2 = τ`); its failures are reported separately.
pub fn verify_lemma3(x: &PartialQuotients, up_to: usize) -> Result<Lemma3Report> {
    let tails = x.tails()?;
    let theta = QuadIrr::silver();
    let mut report = Lemma3Report::default();
    for n in 1..=up_to {
        if x.quotient(n)? != Some(2) {
            continue;
        }
        let (u, v) = (tails.get(n)?, tails.get(n + 1)?);
        report.positions.push(n);
        if u < theta && v < theta {
            report.failures.push(n);
        }
        if u < theta || v < theta {
            report.min_failures.push(n);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lemma4Report {
    pub checked: usize,
    /// `(n, s)` pairs where `ξ_{n-1} > η_{s-1}` fails.
    pub failures: Vec<(usize, usize)>,
}

/// For all `n, s ≥ 2` with `q_{n+1} ≤ t_s ≤ value_limit`, checks `ξ_{n-1} > η_{s-1}`.
pub fn verify_lemma4(x: &PartialQuotients, y: &PartialQuotients, value_limit: &BigInt) -> Result<Lemma4Report> {
    let ta = PsiTable::new(x, value_limit)?;
    let tb = PsiTable::new(y, value_limit)?;
    let q = ta.denominators();
    let t = tb.denominators();
    let mut report = Lemma4Report::default();
    let xi: Vec<QuadIrr> = (0..q.len())
        .map(|n| Ok(ta.xi(n, &Mode::Exact)?.exact().unwrap().clone()))
        .collect::<Result<_>>()?;
    for s in 2..t.len() {
        if &t[s] > value_limit {
            break;
        }
        let eta = tb.xi(s - 1, &Mode::Exact)?.exact().unwrap().clone();
        for n in 2..q.len().saturating_sub(1) {
            if q[n + 1] > t[s] {
                break;
            }
            report.checked += 1;
            if xi[n - 1] <= eta {
                report.failures.push((n, s));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma6Report {
    pub r: usize,
    pub q_r: BigInt,
    /// Whether the bound holds at `t = q_r − 1`.
    pub before: bool,
    /// Whether the bound holds at `t = q_r`.
    pub at: bool,
}

impl Lemma6Report {
    pub fn holds(&self) -> bool {
        self.before || self.at
    }

    pub fn branch(&self) -> &'static str {
        match (self.before, self.at) {
            (true, true) => "both",
            (true, false) => "t = q_r - 1",
            (false, true) => "t = q_r",
            (false, false) => "neither",
        }
    }
}

/// At a letter `Q^r` with `x_{r+1} ≥ c`, checks that the ratio is at least
/// `√c − 1` at `t = q_r − 1` or at `t = q_r`.
pub fn verify_lemma6(x: &PartialQuotients, y: &PartialQuotients, r: usize, c: &QuadIrr) -> Result<Lemma6Report> {
    check_pair(x, y)?;
    let q_r = x
        .convergents(r + 1)?
        .pop()
        .map(|c| c.q)
        .ok_or(Error::NoSuchLetter(r))?;
    let word = build_word(x, y, &q_r)?;
    if word.find_q(r).is_none() {
        return Err(Error::NoSuchLetter(r));
    }
    if &x.tail(r + 1)? < c {
        return Err(Error::Precondition(format!("tail x_{} is below the given constant", r + 1)));
    }
    let ta = PsiTable::new(x, &q_r)?;
    let tb = PsiTable::new(y, &q_r)?;
    let check = |t: &BigInt| -> Result<bool> {
        let a = ta.psi(t, &Mode::Exact)?;
        let b = tb.psi(t, &Mode::Exact)?;
        let ratio = RatioValue::from_psi(&a, &b);
        let RatioValue::Exact { larger, smaller } = ratio else {
            unreachable!("exact mode")
        };
        Ok(compare_ratio_with_sqrt(&larger, &smaller, c) != Ordering::Less)
    };
    let before_t = &q_r - 1;
    let before = before_t >= BigInt::one() && check(&before_t)?;
    let at = check(&q_r)?;
    Ok(Lemma6Report { r, q_r, before, at })
}

/// [`verify_lemma6`] at every `Q^r` below `value_limit` whose tail is at least `c`.
pub fn verify_lemma6_all(
    x: &PartialQuotients,
    y: &PartialQuotients,
    value_limit: &BigInt,
    c: &QuadIrr,
) -> Result<Vec<Lemma6Report>> {
    let word = build_word(x, y, value_limit)?;
    let tails = x.tails()?;
    let mut out = Vec::new();
    for l in word.letters.iter().filter(|l| l.kind == LetterKind::Q) {
        let r = l.alpha_index.unwrap();
        if &tails.get(r + 1)? >= c {
            out.push(verify_lemma6(x, y, r, c)?);
        }
    }
    Ok(out)
}

/// A `TQQ` or `BQQ` occurrence and the ratio bound found next to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remark3Witness {
    pub position: usize,
    pub n: usize,
    pub s: usize,
    /// True when `ξ_n ≥ η_s` (the bound sits on `[t_s, q_n)`), false when
    /// it sits on `[q_{n+1}, …)`.
    pub before_pair: bool,
    /// Whether the ratio there is at least `τ − 1`.
    pub holds: bool,
    pub ratio: RatioValue,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Remark3Report {
    pub qq_counts: Vec<(BigInt, usize)>,
    pub witnesses: Vec<Remark3Witness>,
    /// `(n, s)` with `q_n ≤ t_s < q_{n+1} < t_{s+1} < q_{n+2}`.
    pub sandwiches: Vec<(usize, usize)>,
    /// Sandwiches where `q_{n+3} < t_{s+2}` fails.
    pub sandwich_failures: Vec<(usize, usize)>,
}

impl Remark3Report {
    pub fn counts_strictly_increase(&self) -> bool {
        self.qq_counts.windows(2).all(|w| w[0].1 < w[1].1)
    }

    pub fn all_witnesses_hold(&self) -> bool {
        self.witnesses.iter().all(|w| w.holds)
    }
}

/// Scans the word of `(x, y)` with `x ∼ τ` and `y ∼ √2`: counts `QQ` at each
/// limit and, at the largest, checks the ratio bound `τ − 1` next to every
/// `TQQ`/`BQQ` and the sandwich pattern behind the `QQ` claim.
pub fn verify_remark3(x: &PartialQuotients, y: &PartialQuotients, limits: &[BigInt]) -> Result<Remark3Report> {
    check_pair(x, y)?;
    if !golden_equivalent(x)? {
        return Err(Error::Precondition("first number must be equivalent to the golden ratio".into()));
    }
    if !y.equivalent(&PartialQuotients::silver())? {
        return Err(Error::Precondition("second number must be equivalent to √2".into()));
    }
    let largest = limits
        .iter()
        .max()
        .ok_or_else(|| Error::InvalidArgument("no limits given".into()))?;
    let mut qq_counts = Vec::new();
    for limit in limits {
        qq_counts.push((limit.clone(), scan_qq(&build_word(x, y, limit)?).len()));
    }

    let word = build_word(x, y, largest)?;
    let ta = PsiTable::new(x, largest)?;
    let tb = PsiTable::new(y, largest)?;
    let tau = QuadIrr::golden();
    let mut witnesses = Vec::new();
    for pos in scan_xqq(&word) {
        let s = word.letters[pos].beta_index.unwrap();
        let n = word.letters[pos + 1].alpha_index.unwrap();
        let xi = |k: usize| -> Result<PsiValue> { ta.xi(k, &Mode::Exact) };
        let eta_s = tb.xi(s, &Mode::Exact)?;
        let xi_n = xi(n)?;
        let before_pair = xi_n.exact() >= eta_s.exact();
        let other = if before_pair { xi(n - 1)? } else { xi(n + 1)? };
        let ratio = RatioValue::from_psi(&other, &eta_s);
        let holds = ratio.at_least_factor(&tau).unwrap_or(false);
        witnesses.push(Remark3Witness {
            position: pos,
            n,
            s,
            before_pair,
            holds,
            ratio,
        });
    }

    let q = ta.denominators();
    let t = tb.denominators();
    let extra_q = x.convergents(q.len() + 4)?;
    let extra_t = y.convergents(t.len() + 4)?;
    let qq = |i: usize| extra_q[i].q.clone();
    let tt = |i: usize| extra_t[i].q.clone();
    let mut sandwiches = Vec::new();
    let mut sandwich_failures = Vec::new();
    for s in 0..t.len() {
        if &t[s] > largest {
            break;
        }
        let n = q.partition_point(|v| v <= &t[s]);
        if n == 0 {
            continue;
        }
        let n = n - 1;
        if qq(n) <= tt(s) && tt(s) < qq(n + 1) && qq(n + 1) < tt(s + 1) && tt(s + 1) < qq(n + 2) {
            sandwiches.push((n, s));
            if qq(n + 3) >= tt(s + 2) {
                sandwich_failures.push((n, s));
            }
        }
    }
    Ok(Remark3Report {
        qq_counts,
        witnesses,
        sandwiches,
        sandwich_failures,
    })
}

/// Decimal rendering helper for reports.
pub fn ratio_decimal(r: &RatioValue, digits: usize) -> String {
    let e = r.enclose(4 * digits as u32 + 16);
    crate::interval::format_decimal(&e.midpoint(), digits)
}

/// `true` when the value is non-negative; used by property tests.
pub fn ratio_nonnegative(r: &RatioValue) -> bool {
    match r {
        RatioValue::Exact { larger, smaller } => larger >= smaller,
        RatioValue::Enclosure(i) => !i.hi().is_negative(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn constants() {
        assert!((RootConstant::c1().to_f64() - 0.2720196495).abs() < 1e-9);
        assert!((RootConstant::c2().to_f64() - 0.5537739740).abs() < 1e-9);
    }

    #[test]
    fn golden_silver_record_on_two_three() {
        let p = profile(
            &PartialQuotients::golden(),
            &PartialQuotients::silver(),
            &big(30),
            &ProfileOptions::default(),
        )
        .unwrap();
        let r = p.records.iter().find(|r| r.t_lo == big(2)).unwrap();
        assert_eq!(r.t_hi, big(3));
        assert!((r.psi_a.to_f64() - 0.236068).abs() < 1e-6);
        assert!((r.psi_b.to_f64() - 0.171573).abs() < 1e-6);
        assert!((r.ratio.to_f64() - 0.375905).abs() < 1e-6);
        // coverage of [1, 30)
        assert_eq!(p.records[0].t_lo, big(1));
        assert_eq!(p.records.last().unwrap().t_hi, big(30));
        for w in p.records.windows(2) {
            assert_eq!(w[0].t_hi, w[1].t_lo);
        }
    }

    #[test]
    fn lemma3_min_form_fails_on_a_counterexample() {
        let x = PartialQuotients::periodic(0, vec![2], vec![1]).unwrap();
        let rep = verify_lemma3(&x, 10).unwrap();
        assert_eq!(rep.positions, [1]);
        assert!(rep.failures.is_empty());
        assert_eq!(rep.min_failures, [1]);
    }

    #[test]
    fn lemma6_rejects_b_letters() {
        let tau = PartialQuotients::golden();
        let theta = PartialQuotients::silver();
        // q_2 = 2 = t_1 is a B letter
        assert_eq!(
            verify_lemma6(&tau, &theta, 2, &QuadIrr::one()),
            Err(Error::NoSuchLetter(2))
        );
        let rep = verify_lemma6(&theta, &tau, 3, &QuadIrr::silver()).unwrap();
        assert!(rep.holds());
    }

    #[test]
    fn interval_profile_agrees_with_exact() {
        let x = PartialQuotients::periodic(0, vec![1, 3], vec![2, 1]).unwrap();
        let y = PartialQuotients::silver();
        let limit = big(100_000);
        let exact = profile(&x, &y, &limit, &ProfileOptions::default()).unwrap();
        let tol = BigRational::new(1.into(), 1_000_000_000.into());
        let opts = ProfileOptions {
            mode: Mode::Interval { tol: tol.clone() },
            window: None,
        };
        let approx = profile(&x, &y, &limit, &opts).unwrap();
        assert_eq!(exact.records.len(), approx.records.len());
        for (e, a) in exact.records.iter().zip(&approx.records) {
            let enc = a.ratio.enclose(0);
            assert!(enc.width() <= tol);
            assert!(e.ratio.enclose(120).try_cmp(&enc).is_none(), "exact value outside enclosure");
        }
    }
}
