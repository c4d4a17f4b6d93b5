//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use psidiff::{
    build_pair, dubickas_witnesses, pell_closed_form, profile, verify_floor_c1, verify_lemma3, verify_lemma4,
    verify_lemma6_all, verify_main_theorem, verify_remark3, Family, Interval, PartialQuotients, ProfileOptions,
    QuadIrr, RatioValue, Sampler, DEFAULT_SEARCH_BOUND,
};

const SEED: u64 = 20_240_917;
const MAX_QUOTIENT: u64 = 4;

/// Criterion 1: window for the tail maximum, C_2 ± 0.01.
const C1_WINDOW: (f64, f64) = (0.5437, 0.5637);
const C1_TIME: Duration = Duration::from_secs(10);
/// Criterion 2: floor for the profile maximum, just under √τ − 1.
const C2_FLOOR: (i64, i64) = (27_201, 100_000);
const C2_TIME: Duration = Duration::from_secs(60);
/// Criterion 4: Kronecker tolerance; the window is ±(5ε + 0.01).
const C4_EPSILON: (i64, i64) = (3, 1000);
/// Criterion 6: Pell closed-form enclosures must be narrower than 10^-PELL_DIGITS.
const PELL_DIGITS: u32 = 30;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pow10(e: u32) -> BigInt {
    BigInt::from(10).pow(e)
}

fn at_least(v: &RatioValue, bound: &BigRational) -> bool {
    v.enclose(128).lo() >= bound
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn constant_reproduction() -> Outcome {
    let start = Instant::now();
    let pair = build_pair(Family::Sqrt2, &rat(1, 2), &rat(3, 1000), DEFAULT_SEARCH_BOUND).map_err(|e| e.to_string())?;
    let p = profile(&pair.base, &pair.omega, &pow10(12), &ProfileOptions::default()).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let est = p.c_estimate.ok_or("empty profile")?.enclose(64);
    let window = Interval::new(
        BigRational::from_float(C1_WINDOW.0).unwrap(),
        BigRational::from_float(C1_WINDOW.1).unwrap(),
    );
    let detail = format!(
        "omega = {}, {} records, tail max {:.7}, {:.2?}",
        pair.omega,
        p.records.len(),
        est.to_f64(),
        elapsed
    );
    if est.lo() >= window.lo() && est.hi() <= window.hi() && elapsed < C1_TIME {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_floor() -> Outcome {
    let start = Instant::now();
    let mut s = Sampler::new(SEED, MAX_QUOTIENT);
    let floor = rat(C2_FLOOR.0, C2_FLOOR.1);
    let mut lowest = f64::INFINITY;
    for _ in 0..50 {
        let (x, y) = s.pair();
        let rep = verify_floor_c1(&x, &y, &pow10(9), &BigRational::zero()).map_err(|e| e.to_string())?;
        let max = rep.max_ratio.ok_or("empty profile")?;
        lowest = lowest.min(max.to_f64());
        if !rep.holds || !at_least(&max, &floor) {
            return Err(format!("{x}, {y}: max ratio {:.7}", max.to_f64()));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!("50 pairs, smallest max ratio {lowest:.6}, {elapsed:.2?}");
    if elapsed < C2_TIME {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c2_floor() -> Outcome {
    let mut s = Sampler::new(SEED + 1, MAX_QUOTIENT);
    let mut lowest = f64::INFINITY;
    for _ in 0..50 {
        let (x, y) = s.pair_not_both_golden();
        let rep = verify_main_theorem(&x, &y, &pow10(9), &BigRational::zero()).map_err(|e| e.to_string())?;
        let max = rep.max_ratio.ok_or("empty profile")?.to_f64();
        lowest = lowest.min(max);
        if !rep.holds {
            return Err(format!("{x}, {y}: max ratio {max:.7} below C_2"));
        }
    }
    Ok(format!("50 pairs reach C_2 exactly, smallest max ratio {lowest:.6}"))
}

fn parametric_family() -> Outcome {
    let eps = rat(C4_EPSILON.0, C4_EPSILON.1);
    let tol = &eps * BigRational::from_integer(5.into()) + rat(1, 100);
    let mut parts = Vec::new();
    let mut ok = true;
    for x in [rat(1, 2), rat(3, 5), rat(3, 4)] {
        let pair = build_pair(Family::Sqrt2, &x, &eps, DEFAULT_SEARCH_BOUND).map_err(|e| e.to_string())?;
        let p = profile(&pair.base, &pair.omega, &pow10(12), &ProfileOptions::default()).map_err(|e| e.to_string())?;
        let est = p.c_estimate.ok_or("empty profile")?.enclose(64);
        let target = pair.limit_constant(64);
        let gap = est.sub(&target).abs();
        ok &= gap.hi() <= &tol;
        parts.push(format!("x={x}: {:.5} vs {:.5}", est.to_f64(), target.to_f64()));
    }
    let detail = format!("{} (tolerance {:.3})", parts.join(", "), tol_f64(&tol));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn tol_f64(x: &BigRational) -> f64 {
    Interval::point(x.clone()).to_f64()
}

fn oracle_equivalence() -> Outcome {
    let mut s = Sampler::new(SEED + 2, MAX_QUOTIENT);
    let mut total = 0;
    for _ in 0..20 {
        let (x, y) = s.pair();
        total += common::profile_matches_brute_force(&x, &y, 1000)?;
    }
    Ok(format!("20 pairs, {total} integer points match exactly"))
}

fn identity_suite() -> Outcome {
    let mut s = Sampler::new(SEED + 3, MAX_QUOTIENT);
    let mut dets = 0;
    for _ in 0..20 {
        let x = s.periodic();
        common::tail_xi_identity(&x, 50)?;
        dets += common::determinant_identity(&x, 60)?;
    }
    for _ in 0..100 {
        let len = 1 + (s.quotients(1)[0] as usize) * 3;
        common::continuant_identities(&s.quotients(len))?;
    }
    let width = BigRational::new(1.into(), pow10(PELL_DIGITS));
    for c in PartialQuotients::silver().convergents(41).map_err(|e| e.to_string())? {
        let e = pell_closed_form(c.n as u32).enclose(110);
        if !e.contains(&BigRational::from_integer(c.q.clone())) || e.width() > width {
            return Err(format!("Pell closed form at n = {}", c.n));
        }
    }
    Ok(format!(
        "tail identity n ≤ 50 on 20 numbers, {dets} determinants, 100 continuant lists, Pell n ≤ 40"
    ))
}

fn lemma_suite() -> Outcome {
    let mut s = Sampler::new(SEED + 4, MAX_QUOTIENT);
    let mut twos = 0;
    let mut min_form = 0;
    let mut numbers = 0;
    while numbers < 20 {
        let x = s.periodic();
        let rep = verify_lemma3(&x, 60).map_err(|e| e.to_string())?;
        if rep.positions.is_empty() {
            continue;
        }
        numbers += 1;
        twos += rep.positions.len();
        min_form += rep.min_failures.len();
        if !rep.failures.is_empty() {
            return Err(format!("lemma 3 fails for {x} at {:?}", rep.failures));
        }
    }
    let theta = QuadIrr::silver();
    let mut pairs: Vec<(PartialQuotients, PartialQuotients)> = (0..20).map(|_| s.pair()).collect();
    let omega = build_pair(Family::Sqrt2, &rat(1, 2), &rat(3, 1000), DEFAULT_SEARCH_BOUND)
        .map_err(|e| e.to_string())?
        .omega;
    pairs.push((PartialQuotients::golden(), PartialQuotients::silver()));
    pairs.push((PartialQuotients::silver(), omega));
    let mut l4 = 0;
    let mut l6 = 0;
    for (i, (x, y)) in pairs.iter().enumerate() {
        if i < 20 {
            let rep = verify_lemma4(x, y, &pow10(6)).map_err(|e| e.to_string())?;
            if !rep.failures.is_empty() {
                return Err(format!("lemma 4 fails for {x}, {y} at {:?}", rep.failures));
            }
            l4 += rep.checked;
        }
        for (a, b) in [(x, y), (y, x)] {
            for rep in verify_lemma6_all(a, b, &pow10(6), &theta).map_err(|e| e.to_string())? {
                if !rep.holds() {
                    return Err(format!("lemma 6 fails for {a}, {b} at r = {}", rep.r));
                }
                l6 += 1;
            }
        }
    }
    Ok(format!(
        "lemma 3 at {twos} positions ({min_form} where the min form fails), lemma 4 on {l4} index pairs, lemma 6 at {l6} letters"
    ))
}

fn growth() -> Outcome {
    let mut s = Sampler::new(SEED + 5, MAX_QUOTIENT);
    let mut limits = Vec::new();
    let mut lim = pow10(4);
    while lim < pow10(8) {
        limits.push(lim.clone());
        lim *= 2;
    }
    limits.push(pow10(8));
    let mut summary = Vec::new();
    for _ in 0..10 {
        let (x, y) = s.pair();
        let mut signs = Vec::new();
        let mut witnesses = Vec::new();
        for l in &limits {
            let p = profile(&x, &y, l, &ProfileOptions::default()).map_err(|e| e.to_string())?;
            signs.push(p.sign_changes());
            witnesses.push(dubickas_witnesses(&x, &y, l).map_err(|e| e.to_string())?.len());
        }
        for (name, v) in [("sign changes", &signs), ("witnesses", &witnesses)] {
            let monotone = v.windows(2).all(|w| w[0] <= w[1]);
            if !monotone || v.first() >= v.last() {
                return Err(format!("{name} for {x}, {y}: {v:?}"));
            }
        }
        summary.push(format!("{}→{}/{}→{}", signs[0], signs.last().unwrap(), witnesses[0], witnesses.last().unwrap()));
    }
    Ok(format!("10 pairs, sign changes/witnesses from 1e4 to 1e8: {}", summary.join(" ")))
}

fn remark3() -> Outcome {
    let limits = [pow10(3), pow10(6), pow10(9)];
    let rep = verify_remark3(&PartialQuotients::golden(), &PartialQuotients::silver(), &limits)
        .map_err(|e| e.to_string())?;
    let counts: Vec<usize> = rep.qq_counts.iter().map(|c| c.1).collect();
    let detail = format!(
        "QQ counts {counts:?}, {} sandwiches verified, {} ratio witnesses ≥ τ − 1",
        rep.sandwiches.len() - rep.sandwich_failures.len(),
        rep.witnesses.iter().filter(|w| w.holds).count()
    );
    if rep.counts_strictly_increase()
        && !rep.sandwiches.is_empty()
        && rep.sandwich_failures.is_empty()
        && rep.all_witnesses_hold()
    {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("constant reproduction", constant_reproduction),
        ("floor C_1 on random pairs", c1_floor),
        ("floor C_2 on random pairs", c2_floor),
        ("parametric family C(x)", parametric_family),
        ("oracle equivalence", oracle_equivalence),
        ("identity suite", identity_suite),
        ("lemma suite", lemma_suite),
        ("sign changes and witnesses grow", growth),
        ("QQ subwords and sandwiches", remark3),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let tag = if outcome.is_ok() { "PASS" } else { "FAIL" };
        let detail = outcome.unwrap_or_else(|e| e);
        println!("{tag} {} {name}: {detail} [{:.2?}]", i + 1, start.elapsed());
        failed += usize::from(tag == "FAIL");
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
