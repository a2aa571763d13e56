//! Binomial tail bounds and binomial-coefficient estimates.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::models::check_probability;
use crate::rng::rng_from_seed;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TailBound {
    /// `P(X < (1 - a) np) < exp(-a^2 np / 2)`, `a >= 0`.
    ChernoffLower { n: u64, p: f64, a: f64 },
    /// `P(X > (1 + a) np) < exp(-a^2 np / 3)`, `0 < a < 1`.
    ChernoffUpper { n: u64, p: f64, a: f64 },
    /// `P(X >= k) <= (enp / k)^k`.
    Trivial { n: u64, p: f64, k: u64 },
    /// `P(|X - mu| >= a sigma) <= 1 / a^2`, `a > 0`.
    Chebyshev { a: f64 },
}

pub fn tail_bound(kind: TailBound) -> Result<f64> {
    match kind {
        TailBound::ChernoffLower { n, p, a } => {
            check_probability(p)?;
            if a.is_nan() || a < 0.0 {
                return invalid(format!("lower-tail Chernoff needs a >= 0, got {a}"));
            }
            Ok((-a * a * n as f64 * p / 2.0).exp())
        }
        TailBound::ChernoffUpper { n, p, a } => {
            check_probability(p)?;
            if a.is_nan() || a <= 0.0 || a >= 1.0 {
                return invalid(format!("upper-tail Chernoff needs 0 < a < 1, got {a}"));
            }
            Ok((-a * a * n as f64 * p / 3.0).exp())
        }
        TailBound::Trivial { n, p, k } => {
            check_probability(p)?;
            if k == 0 {
                return Ok(1.0);
            }
            Ok((std::f64::consts::E * n as f64 * p / k as f64).powf(k as f64))
        }
        TailBound::Chebyshev { a } => {
            if a.is_nan() || a <= 0.0 {
                return invalid(format!("Chebyshev needs a > 0, got {a}"));
            }
            Ok(1.0 / (a * a))
        }
    }
}

/// Empirical frequency of the event bounded by `kind` over `samples` draws
/// of `Bin(n, p)`.
pub fn tail_frequency(kind: TailBound, samples: u64, seed: u64) -> Result<f64> {
    tail_bound(kind)?;
    let (n, p) = match kind {
        TailBound::ChernoffLower { n, p, .. } | TailBound::ChernoffUpper { n, p, .. } | TailBound::Trivial { n, p, .. } => (n, p),
        TailBound::Chebyshev { .. } => return invalid("Chebyshev needs a distribution; sample it directly"),
    };
    let mean = n as f64 * p;
    let hit: Box<dyn Fn(u64) -> bool> = match kind {
        TailBound::ChernoffLower { a, .. } => Box::new(move |x| (x as f64) < (1.0 - a) * mean),
        TailBound::ChernoffUpper { a, .. } => Box::new(move |x| (x as f64) > (1.0 + a) * mean),
        TailBound::Trivial { k, .. } => Box::new(move |x| x >= k),
        TailBound::Chebyshev { .. } => unreachable!(),
    };
    let dist = Binomial::new(n, p).map_err(|e| crate::Error::InvalidInput(e.to_string()))?;
    let mut rng = rng_from_seed(seed);
    let hits = (0..samples).filter(|_| hit(dist.sample(&mut rng))).count();
    Ok(hits as f64 / samples.max(1) as f64)
}

/// `C(n, k)` exactly.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A rational lower bound on `e`: the partial sum of `1/j!` for `j <= 12`.
fn e_lower() -> (BigUint, BigUint) {
    let den: BigUint = (1u64..=12).product::<u64>().into();
    let mut num = BigUint::ZERO;
    let mut term = den.clone();
    for j in 0u64..=12 {
        if j > 0 {
            term /= j;
        }
        num += &term;
    }
    (num, den)
}

/// Which of the three binomial-coefficient estimates hold at `(n, k, x)`,
/// decided in integer arithmetic (`1 <= x <= k <= n`):
///
/// 1. `(n/k)^k <= C(n,k) <= (en/k)^k`, the upper side against a rational
///    lower bound of `e`;
/// 2. `C(n-x, k-x) / C(n,k) <= (k/n)^x`;
/// 3. `C(n-x, k) / C(n,k) <= e^{-kx/n}`, via the stronger
///    `C(n-x, k) / C(n,k) <= (1 - x/n)^k` and `1 - t <= e^{-t}`.
pub fn binomial_estimates_hold(n: u64, k: u64, x: u64) -> Result<[bool; 3]> {
    if !(1 <= x && x <= k && k <= n) {
        return invalid(format!("need 1 <= x <= k <= n, got x={x} k={k} n={n}"));
    }
    let c = binomial(n, k);
    let big = |v: u64| BigUint::from(v);
    let kk: BigUint = big(k).pow(k as u32);
    let nk: BigUint = big(n).pow(k as u32);
    let (e_num, e_den) = e_lower();
    let lower = nk <= &c * &kk;
    let upper = &c * &kk * e_den.pow(k as u32) <= (e_num * big(n)).pow(k as u32);
    let eq2 = binomial(n - x, k - x) * big(n).pow(x as u32) <= big(k).pow(x as u32) * &c;
    let eq3 = binomial(n - x, k) * &nk <= big(n - x).pow(k as u32) * &c;
    Ok([lower && upper, eq2, eq3])
}
