use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use psidiff::{
    build_pair, build_pair_for_constant, build_word, dubickas_witnesses, format_decimal, parse_number, profile,
    verify_floor_c1, verify_lemma3, verify_lemma4, verify_lemma6_all, verify_main_theorem, verify_remark3, Error,
    Family, Mode, PartialQuotients, ProfileOptions, PsiRepr, PsiTable, PsiValue, QuadIrr, RatioValue, Sampler, TargetConstant,
    DEFAULT_SEARCH_BOUND,
};
use serde_json::{json, Value};

use crate::config::{parse_limit, parse_rational, CommandKind, Flags, Format, ModeArg};

/// Failure of a command, with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn io(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("i/o error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_precision() {
            3
        } else if e.is_precondition() || matches!(e, Error::QuotientOverflow(_) | Error::SearchBoundExceeded { .. }) {
            2
        } else {
            1
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

const DEFAULT_LIMIT: u64 = 1_000_000;
const DEFAULT_PRECISION: usize = 15;
const DEFAULT_TOL_EXP: u32 = 20;
const SWEEP_PAIRS: usize = 10;

struct Ctx {
    flags: Flags,
    digits: usize,
}

impl Ctx {
    fn number(&self, which: &str) -> Result<PartialQuotients, Failure> {
        let text = match which {
            "alpha" => self.flags.alpha.as_deref(),
            _ => self.flags.beta.as_deref(),
        }
        .ok_or_else(|| Failure::usage(format!("--{which} is required")))?;
        parse_number(text).map_err(|e| Failure::usage(format!("--{which}: {e}")))
    }

    fn limit(&self) -> Result<BigInt, Failure> {
        match &self.flags.limit {
            None => Ok(BigInt::from(DEFAULT_LIMIT)),
            Some(s) => parse_limit(s).ok_or_else(|| Failure::usage(format!("--limit: expected an integer >= 1, got `{s}`"))),
        }
    }

    fn mode(&self) -> Result<Mode, Failure> {
        match self.flags.mode.unwrap_or(ModeArg::Exact) {
            ModeArg::Exact => Ok(Mode::Exact),
            ModeArg::Interval => {
                let tol = match &self.flags.tol {
                    None => BigRational::new(BigInt::one(), BigInt::from(10).pow(DEFAULT_TOL_EXP)),
                    Some(s) => rational(s, "--tol")?,
                };
                Ok(Mode::interval(tol)?)
            }
        }
    }

    fn format(&self, default: Format) -> Format {
        self.flags.format.unwrap_or(default)
    }

    fn emit(&self, text: &str) -> Outcome {
        match &self.flags.out {
            Some(path) => std::fs::write(path, text).map_err(Failure::io),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(Failure::io),
        }
    }

    fn decimal(&self, v: &PsiValue) -> String {
        format_decimal(&v.enclose(self.bits()).midpoint(), self.digits)
    }

    fn ratio(&self, r: &RatioValue) -> String {
        format_decimal(&r.enclose(self.bits()).midpoint(), self.digits)
    }

    fn bits(&self) -> u32 {
        (self.digits as u32) * 4 + 32
    }
}

fn rational(s: &str, flag: &str) -> Result<BigRational, Failure> {
    parse_rational(s).ok_or_else(|| Failure::usage(format!("{flag}: expected a rational such as 1/2 or 0.003, got `{s}`")))
}

pub fn run(kind: CommandKind, flags: Flags) -> Outcome {
    let digits = flags.precision.unwrap_or(DEFAULT_PRECISION);
    if digits == 0 {
        return Err(Failure::usage("--precision must be >= 1"));
    }
    let ctx = Ctx { flags, digits };
    match kind {
        CommandKind::Psi => psi_cmd(&ctx),
        CommandKind::Word => word_cmd(&ctx),
        CommandKind::Profile => profile_cmd(&ctx),
        CommandKind::Construct => construct_cmd(&ctx),
        CommandKind::Verify => verify_cmd(&ctx),
    }
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let internal = |e: csv::Error| Failure {
        code: 1,
        message: format!("csv error: {e}"),
    };
    w.write_record(header).map_err(internal)?;
    for r in rows {
        w.write_record(r).map_err(internal)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure {
        code: 1,
        message: e.to_string(),
    })?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn width(ctx: &Ctx, v: &PsiValue) -> String {
    format_decimal(&v.width(), ctx.digits.min(6))
}

fn psi_cmd(ctx: &Ctx) -> Outcome {
    let x = ctx.number("alpha")?;
    let mode = ctx.mode()?;
    let header;
    let mut rows = Vec::new();
    if let Some(list) = &ctx.flags.t {
        let ts: Vec<BigInt> = list
            .split(',')
            .map(|s| parse_limit(s).ok_or_else(|| Failure::usage(format!("--t: bad point `{}`", s.trim()))))
            .collect::<Result<_, _>>()?;
        let max = ts.iter().max().cloned().unwrap_or_else(BigInt::one);
        let table = PsiTable::new(&x, &max)?;
        header = vec!["t", "index", "psi", "width"];
        for t in ts {
            let v = table.psi(&t, &mode)?;
            rows.push(vec![
                t.to_string(),
                v.source_index.unwrap().to_string(),
                ctx.decimal(&v),
                width(ctx, &v),
            ]);
        }
    } else {
        let limit = ctx.limit()?;
        let table = PsiTable::new(&x, &limit)?;
        header = vec!["t_lo", "t_hi", "index", "psi", "width"];
        let qs = table.denominators();
        for (n, q) in qs.iter().enumerate() {
            if q >= &limit || qs.get(n + 1) == Some(q) {
                continue;
            }
            let hi = std::cmp::min(qs.get(n + 1).unwrap_or(&limit), &limit).clone();
            let v = table.xi(n, &mode)?;
            rows.push(vec![q.to_string(), hi.to_string(), n.to_string(), ctx.decimal(&v), width(ctx, &v)]);
        }
    }
    match ctx.format(Format::Csv) {
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect()))
                .collect();
            ctx.emit(&json_text(&json!({ "alpha": x.to_syntax(), "rows": items })))
        }
        _ => ctx.emit(&csv_text(&header, &rows)?),
    }
}

fn word_cmd(ctx: &Ctx) -> Outcome {
    let (x, y) = (ctx.number("alpha")?, ctx.number("beta")?);
    let w = build_word(&x, &y, &ctx.limit()?)?;
    match ctx.format(Format::Lines) {
        Format::Lines => ctx.emit(&w.to_lines()),
        Format::Csv => {
            let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
            let rows: Vec<Vec<String>> = w
                .letters
                .iter()
                .map(|l| vec![l.kind.symbol().to_string(), opt(l.alpha_index), opt(l.beta_index), l.value.to_string()])
                .collect();
            ctx.emit(&csv_text(&["letter", "n", "s", "value"], &rows)?)
        }
        Format::Json => {
            let letters: Vec<Value> = w
                .letters
                .iter()
                .map(|l| json!({"letter": l.kind.symbol().to_string(), "n": l.alpha_index, "s": l.beta_index, "value": l.value.to_string()}))
                .collect();
            ctx.emit(&json_text(&json!({
                "alpha": x.to_syntax(),
                "beta": y.to_syntax(),
                "compact": w.compact(),
                "letters": letters,
            })))
        }
    }
}

fn exact_json(v: &PsiValue) -> Value {
    match &v.value {
        PsiRepr::Exact(q) => json!(q.to_syntax()),
        PsiRepr::Enclosure(i) => json!({"lo": i.lo().to_string(), "hi": i.hi().to_string()}),
    }
}

fn ratio_json(r: &RatioValue) -> Value {
    match r {
        RatioValue::Exact { larger, smaller } => json!({"larger": larger.to_syntax(), "smaller": smaller.to_syntax()}),
        RatioValue::Enclosure(i) => json!({"lo": i.lo().to_string(), "hi": i.hi().to_string()}),
    }
}

fn profile_cmd(ctx: &Ctx) -> Outcome {
    let (x, y) = (ctx.number("alpha")?, ctx.number("beta")?);
    let limit = ctx.limit()?;
    let opts = ProfileOptions {
        mode: ctx.mode()?,
        window: ctx.flags.window,
    };
    let p = profile(&x, &y, &limit, &opts)?;
    let rows: Vec<Vec<String>> = p
        .records
        .iter()
        .zip(&p.running_sup)
        .map(|(r, sup)| {
            vec![
                r.t_lo.to_string(),
                r.t_hi.to_string(),
                ctx.decimal(&r.psi_a),
                ctx.decimal(&r.psi_b),
                ctx.ratio(&r.ratio),
                ctx.ratio(sup),
            ]
        })
        .collect();
    if let Some(path) = &ctx.flags.sidecar {
        let records: Vec<Value> = p
            .records
            .iter()
            .map(|r| {
                json!({
                    "t_lo": r.t_lo.to_string(),
                    "t_hi": r.t_hi.to_string(),
                    "psi_a": exact_json(&r.psi_a),
                    "psi_b": exact_json(&r.psi_b),
                    "ratio": ratio_json(&r.ratio),
                })
            })
            .collect();
        std::fs::write(path, json_text(&json!({"alpha": x.to_syntax(), "beta": y.to_syntax(), "records": records})))
            .map_err(Failure::io)?;
    }
    let summary = |v: Option<&RatioValue>| v.map(|v| ctx.ratio(v));
    match ctx.format(Format::Csv) {
        Format::Json => {
            let header = ["t_lo", "t_hi", "psi_a", "psi_b", "ratio", "running_sup"];
            let records: Vec<Value> = rows
                .iter()
                .map(|r| Value::Object(header.iter().zip(r).map(|(k, v)| (k.to_string(), json!(v))).collect()))
                .collect();
            ctx.emit(&json_text(&json!({
                "alpha": x.to_syntax(),
                "beta": y.to_syntax(),
                "limit": limit.to_string(),
                "windowStart": p.window_start,
                "cEstimate": summary(p.c_estimate.as_ref()),
                "overallMax": summary(p.overall_max()),
                "signChanges": p.sign_changes(),
                "records": records,
            })))
        }
        _ => ctx.emit(&csv_text(&["t_lo", "t_hi", "psi_a", "psi_b", "ratio", "running_sup"], &rows)?),
    }
}

fn construct_cmd(ctx: &Ctx) -> Outcome {
    let family = Family::parse(ctx.flags.family.as_deref().unwrap_or("sqrt2")).map_err(Failure::from)?;
    let epsilon = match &ctx.flags.epsilon {
        Some(s) => rational(s, "--epsilon")?,
        None => BigRational::new(3.into(), 1000.into()),
    };
    let bound = ctx.flags.bound.unwrap_or(DEFAULT_SEARCH_BOUND);
    let pair = match (&ctx.flags.x, &ctx.flags.target_c) {
        (Some(_), Some(_)) => return Err(Failure::usage("give either --x or --target-c, not both")),
        (Some(x), None) => build_pair(family, &rational(x, "--x")?, &epsilon, bound)?,
        (None, Some(c)) => {
            let half = BigRational::new(1.into(), 2.into());
            let target = match (c.to_ascii_lowercase().as_str(), family) {
                ("c2", Family::Sqrt2) | ("c1", Family::Tau) => TargetConstant::Power(half),
                ("c1", Family::Sqrt2) | ("c2", Family::Tau) => {
                    return Err(Error::TargetOutOfRange(format!("{c} is not the floor of family {}", family.name())).into())
                }
                _ => TargetConstant::Rational(rational(c, "--target-c")?),
            };
            build_pair_for_constant(family, &target, &epsilon, bound)?
        }
        (None, None) => build_pair(family, &BigRational::new(1.into(), 2.into()), &epsilon, bound)?,
    };
    ctx.emit(&json_text(&pair.to_json()))
}

struct Report {
    lines: Vec<String>,
    failed: usize,
}

impl Report {
    fn pass(&mut self, name: &str, detail: String) {
        self.lines.push(format!("PASS {name}: {detail}"));
    }

    fn fail(&mut self, name: &str, detail: String) {
        self.failed += 1;
        self.lines.push(format!("FAIL {name}: {detail}"));
    }

    fn check(&mut self, name: &str, ok: bool, detail: String) {
        if ok {
            self.pass(name, detail)
        } else {
            self.fail(name, detail)
        }
    }

    fn skip(&mut self, name: &str, why: String) {
        self.lines.push(format!("SKIP {name}: {why}"));
    }
}

fn verify_cmd(ctx: &Ctx) -> Outcome {
    let (x, y) = (ctx.number("alpha")?, ctx.number("beta")?);
    let limit = ctx.limit()?;
    let slack = match &ctx.flags.slack {
        Some(s) => rational(s, "--slack")?,
        None => BigRational::new(1.into(), 1_000_000.into()),
    };
    if let Err(e) = psidiff::psi::check_pair(&x, &y) {
        let f = Failure::from(e);
        let text = format!("REJECT precondition: {}\n", f.message);
        ctx.emit(&text)?;
        return Err(Failure { code: f.code, message: f.message });
    }
    let mut rep = Report {
        lines: Vec::new(),
        failed: 0,
    };
    for (name, z) in [("lemma 3 (alpha)", &x), ("lemma 3 (beta)", &y)] {
        let up_to = z.denominators_up_to(&limit)?.len();
        let r = verify_lemma3(z, up_to)?;
        rep.check(
            name,
            r.failures.is_empty(),
            format!("{} positions with a_n = 2, failures {:?}", r.positions.len(), r.failures),
        );
    }
    let r4 = verify_lemma4(&x, &y, &limit)?;
    rep.check(
        "lemma 4",
        r4.failures.is_empty(),
        format!("{} index pairs, failures {:?}", r4.checked, r4.failures),
    );
    let theta = QuadIrr::silver();
    let mut l6 = Vec::new();
    for (a, b) in [(&x, &y), (&y, &x)] {
        l6.extend(verify_lemma6_all(a, b, &limit, &theta)?);
    }
    let bad: Vec<usize> = l6.iter().filter(|r| !r.holds()).map(|r| r.r).collect();
    rep.check("lemma 6", bad.is_empty(), format!("{} Q letters with tail >= sqrt2+1, failures {bad:?}", l6.len()));

    let c1 = verify_floor_c1(&x, &y, &limit, &BigRational::from_integer(0.into()))?;
    let max = c1.max_ratio.as_ref().map(|m| ctx.ratio(m)).unwrap_or_default();
    rep.check("floor C_1", c1.holds, format!("max ratio {max}"));
    match verify_main_theorem(&x, &y, &limit, &slack) {
        Ok(r) => {
            let at = r.witness.map(|w| format!("first at [{}, {})", w.t_lo, w.t_hi)).unwrap_or_default();
            rep.check("floor C_2", r.holds, format!("max ratio {max} {at}").trim_end().to_string());
        }
        Err(Error::BothEquivalentToTau) => rep.skip("floor C_2", "both numbers are equivalent to the golden ratio".into()),
        Err(e) => return Err(e.into()),
    }
    let tau_theta = x.equivalent(&PartialQuotients::golden())? && y.equivalent(&PartialQuotients::silver())?;
    if tau_theta {
        let mut limits: Vec<BigInt> = Vec::new();
        let mut l = BigInt::from(1000);
        while l < limit {
            limits.push(l.clone());
            l *= 1000;
        }
        limits.push(limit.clone());
        let r = verify_remark3(&x, &y, &limits)?;
        let counts: Vec<usize> = r.qq_counts.iter().map(|c| c.1).collect();
        rep.check(
            "QQ growth",
            r.counts_strictly_increase(),
            format!("QQ counts {counts:?} at limits {}", limits.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")),
        );
        rep.check(
            "QQ ratio witnesses",
            r.all_witnesses_hold(),
            format!("{} of {} at least tau - 1", r.witnesses.iter().filter(|w| w.holds).count(), r.witnesses.len()),
        );
        rep.check(
            "sandwiches",
            r.sandwich_failures.is_empty(),
            format!("{} found, failures {:?}", r.sandwiches.len(), r.sandwich_failures),
        );
    } else {
        rep.skip("QQ growth", "needs alpha equivalent to tau and beta equivalent to sqrt2".into());
    }
    let p = profile(&x, &y, &limit, &ProfileOptions::default())?;
    let w = dubickas_witnesses(&x, &y, &limit)?;
    rep.pass(
        "counts",
        format!("{} sign changes of psi_a - psi_b, {} n with psi_a(n) > ||n beta||", p.sign_changes(), w.len()),
    );

    if let Some(seed) = ctx.flags.seed {
        let mut sampler = Sampler::new(seed, 4);
        let mut low = Vec::new();
        for _ in 0..SWEEP_PAIRS {
            let (a, b) = sampler.pair_not_both_golden();
            let r = verify_main_theorem(&a, &b, &limit, &slack)?;
            if !r.holds {
                low.push(format!("{a} {b}"));
            }
        }
        rep.check(
            "random sweep",
            low.is_empty(),
            format!("{SWEEP_PAIRS} pairs from seed {seed} reach C_2 - slack, failures {low:?}"),
        );
    }

    let mut text = rep.lines.join("\n");
    text.push('\n');
    text.push_str(&format!("{} failed\n", rep.failed));
    ctx.emit(&text)?;
    if rep.failed > 0 {
        return Err(Failure {
            code: 1,
            message: format!("{} checks failed", rep.failed),
        });
    }
    Ok(())
}
