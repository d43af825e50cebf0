//! Exact and series-expanded counts of ternary vectors by dot product.
//!
//! All counts refer to vectors of length `n` with `k` positive and `k`
//! negative trits, taken relative to a fixed reference vector of the same
//! kind. Probabilities for `d >= 1` are per sign: `P(dot = +d)`, which equals
//! `P(dot = -d)`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{param, Error, Result};

fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 1..=r {
        acc *= n - r + i;
        acc /= i;
    }
    acc
}

fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, i| acc * i)
}

fn check_space(n: u64, k: u64) -> Result<()> {
    if k == 0 {
        return param("k must be at least 1");
    }
    if n < 2 * k {
        return param(format!("n = {n} is smaller than 2k = {}", 2 * k));
    }
    Ok(())
}

/// Total number of length-`n` ternary vectors with `k` trits of each sign.
///
/// Both the "choose the support, then the signs" and "choose positives, then
/// negatives" forms are evaluated and must agree.
pub fn count_total(n: u64, k: u64) -> Result<BigUint> {
    check_space(n, k)?;
    let support_first = binomial(n, 2 * k) * binomial(2 * k, k);
    let sign_first = binomial(n, k) * binomial(n - k, k);
    assert_eq!(
        support_first, sign_first,
        "closed forms disagree at n={n}, k={k}"
    );
    Ok(support_first)
}

fn check_dot_domain(n: u64, k: u64, d: u64) -> Result<()> {
    check_space(n, k)?;
    if d > k {
        return Err(Error::Domain(format!("d = {d} exceeds k = {k}")));
    }
    if n < 4 * k {
        return param(format!("n = {n} is smaller than 4k = {}", 4 * k));
    }
    Ok(())
}

/// Leading-order number of vectors with `|dot| = d` against a reference,
/// per sign, neglecting configurations where coincident trits cancel.
pub fn count_at_dot(n: u64, k: u64, d: u64) -> Result<BigUint> {
    check_dot_domain(n, k, d)?;
    let nonzero = 2 * k - d;
    let sum = ((k - d)..=k)
        .map(|plus| binomial(k, plus) * binomial(k, nonzero - plus) * binomial(nonzero, plus))
        .fold(BigUint::zero(), |acc, t| acc + t);
    Ok(binomial(n - 2 * k, nonzero) * sum)
}

/// Terminating `3F2(-d, -k, -k; 1+k-d, 1+k-d; -1)` as an exact rational.
pub fn hyp3f2_terminating(d: u64, k: u64) -> Result<BigRational> {
    let (d, k) = (d as i64, k as i64);
    let lower = 1 + k - d;
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    for i in 0..=d {
        sum += &term;
        if i == d {
            break;
        }
        let num = (-d + i) * (-k + i) * (-k + i);
        if num == 0 {
            break;
        }
        let b = lower + i;
        if b == 0 {
            return Err(Error::Domain(format!(
                "lower parameter vanishes before the series terminates (d = {d}, k = {k})"
            )));
        }
        // z = -1
        term *= BigRational::new(BigInt::from(-num), BigInt::from(b * b * (i + 1)));
    }
    Ok(sum)
}

/// Same count as [`count_at_dot`], through the hypergeometric closed form.
pub fn count_at_dot_hyp(n: u64, k: u64, d: u64) -> Result<BigUint> {
    check_dot_domain(n, k, d)?;
    let prefactor = binomial(n - 2 * k, 2 * k - d) * binomial(2 * k - d, k) * binomial(k, k - d);
    let value = BigRational::from_integer(BigInt::from(prefactor)) * hyp3f2_terminating(d, k)?;
    if !value.is_integer() {
        return Err(Error::Domain(format!(
            "hypergeometric form is not integral at n={n}, k={k}, d={d}"
        )));
    }
    value
        .to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Domain("negative count".into()))
}

/// Exact number of vectors whose dot product with a reference equals `dot`,
/// counting every configuration including cancelling coincidences.
///
/// A vector places `a` of its positive trits on the reference's positive
/// support, `b` on its negative support and the rest on zeros; likewise `c`
/// and `e` for its negative trits. Its dot product is `a - b - c + e`.
pub fn census_at_dot(n: u64, k: u64, dot: i64) -> Result<BigUint> {
    check_space(n, k)?;
    let zeros = n - 2 * k;
    let mut total = BigUint::zero();
    for a in 0..=k {
        for c in 0..=(k - a) {
            for b in 0..=k {
                for e in 0..=(k - b) {
                    if a as i64 - b as i64 - c as i64 + e as i64 != dot {
                        continue;
                    }
                    let (Some(pz), Some(mz)) = ((k - a).checked_sub(b), (k - c).checked_sub(e))
                    else {
                        continue;
                    };
                    if pz + mz > zeros {
                        continue;
                    }
                    total += binomial(k, a)
                        * binomial(k - a, c)
                        * binomial(k, b)
                        * binomial(k - b, e)
                        * binomial(zeros, pz)
                        * binomial(zeros - pz, mz);
                }
            }
        }
    }
    Ok(total)
}

fn ratio(num: BigUint, den: BigUint) -> f64 {
    BigRational::new(BigInt::from(num), BigInt::from(den))
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// Leading-order probability `P(dot = +d)` as an exact ratio, rounded once.
pub fn prob_dot_exact(n: u64, k: u64, d: u64) -> Result<f64> {
    Ok(ratio(count_at_dot(n, k, d)?, count_total(n, k)?))
}

/// Exact probability `P(dot = value)` including cancellations.
pub fn prob_dot_census(n: u64, k: u64, dot: i64) -> Result<f64> {
    Ok(ratio(census_at_dot(n, k, dot)?, count_total(n, k)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesWarning {
    /// `n < 50k`: the large-`n` expansion is at best marginal.
    SmallN,
    /// `d > k`: outside the range the count was derived for; value is zero.
    DotAboveK,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesProbability {
    pub value: f64,
    pub warning: Option<SeriesWarning>,
}

/// Series expansion of [`prob_dot_exact`] in `1/n`, to second order.
pub fn prob_dot_series(n: u64, k: u64, d: u64) -> Result<SeriesProbability> {
    check_space(n, k)?;
    if d > k {
        return Ok(SeriesProbability {
            value: 0.0,
            warning: Some(SeriesWarning::DotAboveK),
        });
    }
    let warning = (n < 50 * k).then_some(SeriesWarning::SmallN);
    let (nf, kf, df) = (n as f64, k as f64, d as f64);
    let t1 = 1.0 - (8.0 * kf * kf + df * df + df - 8.0 * kf * df) / (2.0 * nf);
    let t2 = (2.0 * (1.0 - 2.0 * kf).powi(2) * kf * kf
        + df.powi(4) / 8.0
        + (5.0 / 12.0 - 2.0 * kf) * df.powi(3)
        + (10.0 * kf * kf - 4.0 * kf + 3.0 / 8.0) * df * df
        + (-16.0 * kf.powi(3) + 10.0 * kf * kf - 2.0 * kf + 1.0 / 12.0) * df)
        / (nf * nf);
    let c = binomial(k, d);
    let combinatorial =
        BigRational::from_integer(BigInt::from(factorial(d) * &c * &c)) * hyp3f2_terminating(d, k)?;
    let value = (t1 + t2) * combinatorial.to_f64().unwrap_or(f64::NAN) / nf.powi(d as i32);
    Ok(SeriesProbability { value, warning })
}
