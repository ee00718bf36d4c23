//! The norms `||a||_{r,s} = sum |a_n| r^n / n!^s` on truncated series, and
//! two exact inequality sweeps built on them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gauss::GaussianRational as Q;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesNorm {
    pub r: BigRational,
    pub s: BigRational,
}

impl SeriesNorm {
    /// `None` unless `r > 0` and `s >= 0`.
    pub fn new(r: BigRational, s: BigRational) -> Option<Self> {
        (r.is_positive() && !s.is_negative()).then_some(SeriesNorm { r, s })
    }

    pub fn from_ints(r: i64, s: i64) -> Option<Self> {
        Self::new(BigRational::from_integer(r.into()), BigRational::from_integer(s.into()))
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Float value of the norm of `sum a_n x^n`.
pub fn series_norm(coeffs: &[Q], norm: &SeriesNorm) -> f64 {
    let r = norm.r.to_f64().unwrap_or(f64::NAN);
    let s = norm.s.to_f64().unwrap_or(f64::NAN);
    coeffs
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(n, a)| {
            let log_fact: f64 = (1..=n).map(|k| (k as f64).ln()).sum();
            a.abs_f64() * (n as f64 * r.ln() - s * log_fact).exp()
        })
        .sum()
}

/// Exact value for real coefficients and integer `s`; `None` otherwise.
pub fn series_norm_exact(coeffs: &[Q], norm: &SeriesNorm) -> Option<BigRational> {
    if !norm.s.is_integer() || coeffs.iter().any(|a| !a.is_real()) {
        return None;
    }
    let s = norm.s.to_integer().to_u32()?;
    let mut total = BigRational::zero();
    let mut rn = BigRational::one();
    for (n, a) in coeffs.iter().enumerate() {
        if !a.is_zero() {
            let denom = BigRational::from_integer(factorial(n).pow(s));
            total += a.re.abs() * &rn / denom;
        }
        rn *= &norm.r;
    }
    Some(total)
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
            out[i + j] += &(x * y);
        }
    }
    out
}

fn monomial(k: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); k + 1];
    v[k] = Q::one();
    v
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormCheckReport {
    pub monomial_pairs: usize,
    pub random_pairs: usize,
    /// `(a, b)` coefficient lists of the first violations found.
    pub violations: Vec<(Vec<Q>, Vec<Q>)>,
}

impl NormCheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `||ab||_{r,s} <= ||a||_{r',s} ||b||_{r',s}` with `r' = 2^s r`,
/// exactly, for all monomial pairs `x^k, x^m` with `k, m <= degree` and for
/// `random` pairs of rational polynomials of degree at most `degree`.
pub fn norm_submultiplicativity_check(degree: usize, r: &BigRational, s: u32, random: usize, seed: u64) -> NormCheckReport {
    let s_rat = BigRational::from_integer(s.into());
    let lhs_norm = SeriesNorm { r: r.clone(), s: s_rat.clone() };
    let rhs_norm = SeriesNorm { r: r * BigRational::from_integer(BigInt::from(2).pow(s)), s: s_rat };
    let norm = |a: &[Q], n: &SeriesNorm| series_norm_exact(a, n).expect("real coefficients, integer s");
    let mut report = NormCheckReport { monomial_pairs: 0, random_pairs: 0, violations: Vec::new() };
    let check = |a: Vec<Q>, b: Vec<Q>, report: &mut NormCheckReport| {
        let lhs = norm(&poly_mul(&a, &b), &lhs_norm);
        if lhs > norm(&a, &rhs_norm) * norm(&b, &rhs_norm) {
            report.violations.push((a, b));
        }
    };
    for k in 0..=degree {
        for m in 0..=degree {
            check(monomial(k), monomial(m), &mut report);
            report.monomial_pairs += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_poly = |rng: &mut ChaCha8Rng| -> Vec<Q> {
        let deg = rng.gen_range(0..=degree);
        (0..=deg).map(|_| Q::from_frac(rng.gen_range(-20..=20), rng.gen_range(1..=12))).collect()
    };
    for _ in 0..random {
        let (a, b) = (random_poly(&mut rng), random_poly(&mut rng));
        check(a, b, &mut report);
        report.random_pairs += 1;
    }
    report
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductBoundReport {
    pub checked: usize,
    pub violations: Vec<Vec<BigRational>>,
}

/// `1 + sum s_i <= prod (1 + s_i) <= (1 + sum s_i)^p` for `count` random
/// nonnegative rational tuples of each length `1..=max_p`, exactly.
pub fn product_bound_check(count: usize, max_p: usize, seed: u64) -> ProductBoundReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProductBoundReport { checked: 0, violations: Vec::new() };
    let one = BigRational::one();
    for p in 1..=max_p {
        for _ in 0..count {
            let s: Vec<BigRational> = (0..p)
                .map(|_| {
                    let scale = 10i64.pow(rng.gen_range(0..4));
                    BigRational::new((rng.gen_range(0..=1000) * scale).into(), rng.gen_range(1..=100).into())
                })
                .collect();
            let sum: BigRational = s.iter().fold(one.clone(), |acc, x| acc + x);
            let prod: BigRational = s.iter().fold(one.clone(), |acc, x| acc * (&one + x));
            let top = num_traits::pow(sum.clone(), p);
            if !(sum <= prod && prod <= top) {
                report.violations.push(s);
            }
            report.checked += 1;
        }
    }
    report
}

pub fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> Vec<Q> {
        cs.iter().map(|&c| Q::from_int(c)).collect()
    }

    #[test]
    fn example_norms() {
        let n = SeriesNorm::from_ints(2, 1).unwrap();
        assert_eq!(series_norm_exact(&poly(&[1]), &n), Some(BigRational::one()));
        assert_eq!(series_norm_exact(&poly(&[0, 1]), &n), Some(ratio(2, 1)));
        assert_eq!(series_norm_exact(&poly(&[0, 0, 1]), &n), Some(ratio(2, 1)));
        assert!((series_norm(&poly(&[0, 0, 1]), &n) - 2.0).abs() < 1e-12);
        assert!((series_norm(&[Q::i()], &n) - 1.0).abs() < 1e-12);
        assert_eq!(series_norm_exact(&[Q::i()], &n), None);
        assert!(SeriesNorm::from_ints(0, 1).is_none());
    }

    #[test]
    fn submultiplicative_on_small_grid() {
        for r in [1, 2] {
            for s in 0..=2 {
                let rep = norm_submultiplicativity_check(4, &ratio(r, 1), s, 10, 7);
                assert!(rep.passed(), "r={r} s={s}");
                assert_eq!(rep.monomial_pairs, 25);
            }
        }
    }

    #[test]
    fn product_bound_small() {
        let rep = product_bound_check(50, 6, 3);
        assert_eq!(rep.checked, 300);
        assert!(rep.violations.is_empty());
    }
}
