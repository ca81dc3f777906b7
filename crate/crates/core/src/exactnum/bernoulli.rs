use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use super::rat::{binomial, Rat};

fn table() -> &'static RwLock<Vec<Rat>> {
    static TABLE: OnceLock<RwLock<Vec<Rat>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rat::from_integer(BigInt::from(1))]))
}

/// Extends the shared table through index `m`. Concurrent callers serialize
/// on the write lock; readers never see a partially extended table.
fn extend_to(m: usize) {
    let mut t = table().write().expect("bernoulli table poisoned");
    while t.len() <= m {
        let k = t.len();
        // sum_{j=0}^{k} C(k+1, j) B_j = 0
        let mut acc = Rat::zero();
        for (j, b) in t.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rat::from_integer(binomial(k as u32 + 1, j as u32));
            }
        }
        let next = -acc / Rat::from_integer(BigInt::from(k + 1));
        t.push(next);
    }
}

/// `B_m` with the convention `B_1 = -1/2`, i.e. `t/(e^t - 1) = sum B_m t^m/m!`.
pub fn bernoulli_number(m: u32) -> Rat {
    let m = m as usize;
    {
        let t = table().read().expect("bernoulli table poisoned");
        if let Some(b) = t.get(m) {
            return b.clone();
        }
    }
    extend_to(m);
    table().read().expect("bernoulli table poisoned")[m].clone()
}

/// Copies `B_0..=B_m` in one lock acquisition.
pub fn bernoulli_numbers(m: u32) -> Vec<Rat> {
    extend_to(m as usize);
    table().read().expect("bernoulli table poisoned")[..=m as usize].to_vec()
}

/// The Bernoulli polynomial `B_m(x) = sum_j C(m, j) B_j x^(m-j)`.
pub fn bernoulli_poly(m: u32, x: &Rat) -> Rat {
    let bs = bernoulli_numbers(m);
    // Horner in x over the coefficients C(m, j) B_j, highest power first.
    let mut acc = Rat::zero();
    for (j, b) in bs.iter().enumerate() {
        acc = acc * x + b * Rat::from_integer(binomial(m, j as u32));
    }
    acc
}
