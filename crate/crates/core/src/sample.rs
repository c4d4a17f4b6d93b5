//! Seeded pseudorandom inputs for sweeps and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cf::PartialQuotients;
use crate::psi::check_pair;

pub struct Sampler {
    rng: ChaCha8Rng,
    max_quotient: u64,
}

impl Sampler {
    pub fn new(seed: u64, max_quotient: u64) -> Self {
        assert!(max_quotient >= 1);
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_quotient,
        }
    }

    pub fn quotients(&mut self, len: usize) -> Vec<u64> {
        (0..len).map(|_| self.rng.gen_range(1..=self.max_quotient)).collect()
    }

    /// An eventually periodic number with preperiod up to 4 and period 1 to 4.
    pub fn periodic(&mut self) -> PartialQuotients {
        let a0 = self.rng.gen_range(0..=2u32);
        let pre_len = self.rng.gen_range(0..=4);
        let per_len = self.rng.gen_range(1..=4);
        let pre = self.quotients(pre_len);
        let per = self.quotients(per_len);
        PartialQuotients::periodic(a0, pre, per).expect("nonempty period")
    }

    /// A pair with `x ± y ∉ ℤ`.
    pub fn pair(&mut self) -> (PartialQuotients, PartialQuotients) {
        loop {
            let (x, y) = (self.periodic(), self.periodic());
            if check_pair(&x, &y).is_ok() {
                return (x, y);
            }
        }
    }

    /// A pair with `x ± y ∉ ℤ` where not both are equivalent to the golden ratio.
    pub fn pair_not_both_golden(&mut self) -> (PartialQuotients, PartialQuotients) {
        let tau = PartialQuotients::golden();
        loop {
            let (x, y) = self.pair();
            if !(x.equivalent(&tau).unwrap() && y.equivalent(&tau).unwrap()) {
                return (x, y);
            }
        }
    }
}
