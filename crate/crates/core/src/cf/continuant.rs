use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The continuant `K(a1, …, an)`; the empty continuant is 1.
///
/// `q_n = K(a1, …, an)` for the convergent denominators of `[a0; a1, …]`.
pub fn continuant(quotients: &[u64]) -> BigInt {
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for &a in quotients {
        let next = BigInt::from(a) * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Fibonacci numbers with `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(n: usize) -> BigInt {
    let mut a = BigInt::zero();
    let mut b = BigInt::one();
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}
