//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use psidiff::tower::compare_products;
use psidiff::{continuant, profile, PartialQuotients, ProfileOptions, PsiTable, QuadIrr, RatioValue, Mode};

/// `ψ_x(t)` for `t = 1..=t_max` from the definition: a running minimum of
/// `‖qx‖` over every integer `q`.
pub fn brute_psi(x: &PartialQuotients, t_max: u64) -> Vec<QuadIrr> {
    let v = x.evaluate().unwrap();
    let mut out: Vec<QuadIrr> = Vec::with_capacity(t_max as usize);
    for q in 1..=t_max {
        let d = (&QuadIrr::from_integer(q) * &v).dist_to_nearest_int();
        let m = match out.last() {
            Some(prev) if prev <= &d => prev.clone(),
            _ => d,
        };
        out.push(m);
    }
    out
}

/// Checks every integer `t` in `[1, limit)` against the profile records.
pub fn profile_matches_brute_force(x: &PartialQuotients, y: &PartialQuotients, limit: u64) -> Result<usize, String> {
    let p = profile(x, y, &BigInt::from(limit), &ProfileOptions::default()).map_err(|e| e.to_string())?;
    let (bx, by) = (brute_psi(x, limit), brute_psi(y, limit));
    let mut checked = 0;
    let mut rec = 0;
    for t in 1..limit {
        let tb = BigInt::from(t);
        while p.records[rec].t_hi <= tb {
            rec += 1;
        }
        let r = &p.records[rec];
        if r.t_lo > tb {
            return Err(format!("t = {t} not covered"));
        }
        let (a, b) = (&bx[t as usize - 1], &by[t as usize - 1]);
        if r.psi_a.exact() != Some(a) || r.psi_b.exact() != Some(b) {
            return Err(format!("ψ mismatch at t = {t} for {x}, {y}"));
        }
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        let RatioValue::Exact { larger, smaller } = &r.ratio else {
            return Err("exact profile gave an enclosure".into());
        };
        if compare_products(larger, lo, hi, smaller) != Ordering::Equal {
            return Err(format!("ratio mismatch at t = {t}"));
        }
        checked += 1;
    }
    if rec + 1 != p.records.len() {
        return Err("records beyond the last integer".into());
    }
    Ok(checked)
}

/// `ξ_{n-1}/ξ_n = x_{n+1}` for `1 ≤ n ≤ n_max`, exactly.
pub fn tail_xi_identity(x: &PartialQuotients, n_max: usize) -> Result<(), String> {
    let conv = x.convergents(n_max + 2).unwrap();
    let limit = conv.last().unwrap().q.clone();
    let table = PsiTable::new(x, &limit).unwrap();
    let xi = |n: usize| table.xi(n, &Mode::Exact).unwrap().exact().unwrap().clone();
    for n in 1..=n_max {
        if &xi(n - 1) / &xi(n) != x.tail(n + 1).unwrap() {
            return Err(format!("ξ_{}/ξ_{} ≠ x_{} for {x}", n - 1, n, n + 1));
        }
    }
    Ok(())
}

/// `p_n q_{n-1} − p_{n-1} q_n = (−1)^{n-1}` for every generated convergent.
pub fn determinant_identity(x: &PartialQuotients, count: usize) -> Result<usize, String> {
    let conv = x.convergents(count).unwrap();
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    for c in &conv {
        let det = &c.p * &q_prev - &p_prev * &c.q;
        let expected = if c.n % 2 == 0 { -BigInt::one() } else { BigInt::one() };
        if det != expected {
            return Err(format!("determinant at n = {} of {x}", c.n));
        }
        p_prev = c.p.clone();
        q_prev = c.q.clone();
    }
    Ok(conv.len())
}

/// Splitting `K(a_1..a_n) = K(a_1..a_k)K(a_{k+1}..a_n) + K(a_1..a_{k-1})K(a_{k+2}..a_n)`,
/// reversal symmetry, and the splice `q_n/q_{n-1} = [a_n; a_{n-1}, …, a_1]`.
pub fn continuant_identities(a: &[u64]) -> Result<(), String> {
    let n = a.len();
    let full = continuant(a);
    for k in 1..n {
        let rhs = continuant(&a[..k]) * continuant(&a[k..]) + continuant(&a[..k - 1]) * continuant(&a[(k + 1).min(n)..]);
        if rhs != full {
            return Err(format!("splitting at k = {k} for {a:?}"));
        }
    }
    let mut rev = a.to_vec();
    rev.reverse();
    if continuant(&rev) != full {
        return Err(format!("reversal for {a:?}"));
    }
    if n >= 1 {
        let splice = rev[1..]
            .iter()
            .rev()
            .fold(None::<BigRational>, |acc, &q| {
                let q = BigRational::from_integer(q.into());
                Some(match acc {
                    None => q,
                    Some(v) => q + v.recip(),
                })
            });
        let value = match splice {
            None => BigRational::from_integer(rev[0].into()),
            Some(v) => BigRational::from_integer(rev[0].into()) + v.recip(),
        };
        if value != BigRational::new(full, continuant(&a[..n - 1])) {
            return Err(format!("splice for {a:?}"));
        }
    }
    Ok(())
}
