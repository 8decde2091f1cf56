//! Exact Bernoulli numbers and polynomials, and exact Riemann zeta special
//! values at non-positive integers.
//!
//! Convention: B1 = -1/2, zeta(0) = -1/2 special-cased, and
//! zeta(1-k) = -B_k/k for k >= 2. Both statements are then literally true.
//!
//! B_{2n} is computed through the integer tangent-number triangle, an O(n^2)
//! convolution recurrence whose entries stay integral, then divided once:
//! B_{2n} = (-1)^{n-1} * 2n * T_n / (4^n (4^n - 1)). The cache is shared and
//! mutex-guarded, so concurrent callers observe identical values.

use crate::error::{Error, Result};
use crate::{Int, Nat, Rational};
use num::traits::{One, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;

// the numeric companion of the exact values here
pub use crate::numeric::zeta_numeric;

static CACHE: Lazy<Mutex<Vec<Rational>>> = Lazy::new(|| Mutex::new(Vec::new()));

/// Tangent numbers T_1..T_n (tan x = sum T_k x^{2k-1}/(2k-1)!).
fn tangent_numbers(n: usize) -> Vec<Int> {
    if n == 0 {
        return vec![];
    }
    let mut t: Vec<Int> = Vec::with_capacity(n);
    t.push(Int::one());
    for k in 2..=n {
        let prev = t[k - 2].clone();
        t.push(prev * Int::from(k as u64 - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = &t[j - 2] * Int::from((j - k) as u64);
            let b = &t[j - 1] * Int::from((j - k + 2) as u64);
            t[j - 1] = a + b;
        }
    }
    t
}

fn fill_cache_to(cache: &mut Vec<Rational>, k: usize) {
    if cache.len() > k {
        return;
    }
    let n_pairs = k / 2;
    let tang = tangent_numbers(n_pairs);
    let mut fresh: Vec<Rational> = Vec::with_capacity(k + 1);
    fresh.push(Rational::one());
    if k >= 1 {
        fresh.push(Rational::new(Int::from(-1), Int::from(2)));
    }
    let four = Nat::from(4u32);
    for i in 2..=k {
        if i % 2 == 1 {
            fresh.push(Rational::zero());
        } else {
            let n = i / 2;
            let pow4 = four.pow(n as u32);
            let denominator = &pow4 * (&pow4 - Nat::one());
            let mut numerator = &tang[n - 1] * Int::from(i as u64);
            if n % 2 == 0 {
                numerator = -numerator;
            }
            fresh.push(Rational::new(numerator, Int::from(denominator)));
        }
    }
    *cache = fresh;
}

/// Exact B_k under the B1 = -1/2 convention; memoized.
pub fn bernoulli_number(k: usize) -> Rational {
    let mut cache = CACHE.lock().expect("bernoulli cache poisoned");
    if cache.len() <= k {
        // grow in blocks so scans like k = 1..120 do not refill repeatedly
        let target = (k + 1).next_power_of_two().max(64);
        fill_cache_to(&mut cache, target);
    }
    cache[k].clone()
}

/// Binomial row C(n,0..n) as big integers.
fn binomial_row(n: usize) -> Vec<Int> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = Int::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * Int::from((n - j) as u64) / Int::from((j + 1) as u64);
        row.push(c.clone());
    }
    row
}

/// B_n(x) = sum_j C(n,j) B_j x^{n-j}, exact.
pub fn bernoulli_polynomial(n: usize, x: &Rational) -> Rational {
    let row = binomial_row(n);
    let mut acc = Rational::zero();
    let mut x_pow = Rational::one(); // x^{n-j} built from the j = n end down
    for j in (0..=n).rev() {
        let b = bernoulli_number(j);
        if !b.is_zero() {
            acc += Rational::from(row[j].clone()) * b * &x_pow;
        }
        x_pow *= x;
    }
    acc
}

/// zeta(m) for integers m <= 0: zeta(0) = -1/2, zeta(1-k) = -B_k/k for k >= 2.
/// Zero at negative even m (trivial zeros). m = 1 and beyond are rejected.
pub fn zeta_special_value(m: i64) -> Result<Rational> {
    if m == 1 {
        return Err(Error::PoleAtOne("1".into()));
    }
    if m > 0 {
        return Err(Error::PositiveSpecialArgument(m));
    }
    let k = (1 - m) as usize;
    if k == 1 {
        return Ok(Rational::new(Int::from(-1), Int::from(2)));
    }
    Ok(-bernoulli_number(k) / Rational::from(Int::from(k as u64)))
}

/// Prime factors p with (p-1) | k, for even k: the von Staudt-Clausen
/// denominator of B_k. Used by callers as an independent cross-check.
pub fn von_staudt_clausen_denominator(k: u64) -> Nat {
    let mut d = Nat::one();
    for q in 1..=k {
        if k.is_multiple_of(q) {
            let p = q + 1;
            if crate::arith::is_probable_prime(&Nat::from(p)) {
                d *= Nat::from(p);
            }
        }
    }
    d
}
