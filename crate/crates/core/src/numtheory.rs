//! Exact integer arithmetic: p-parts, prime sets, Legendre's formula and
//! primitive prime divisors.
//!
//! Everything here is exact. Comparisons that look like they want logarithms
//! are done on exponents or on arbitrary-precision integers.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Default trial-division bound before falling back to Pollard rho.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin on arbitrary-precision integers. Deterministic below 3.3e24,
/// probabilistic (with fixed bases) above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    'witness: for &a in MR_BASES.iter().chain([41u64, 43, 47, 53].iter()) {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

fn factor_rho(n: BigUint, out: &mut BTreeMap<BigUint, u32>) {
    if n.is_one() {
        return;
    }
    if is_probable_prime(&n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = pollard_brent(&n);
    let rest = &n / &d;
    factor_rho(d, out);
    factor_rho(rest, out);
}

/// Prime factorization with trial division up to `trial_bound`, then Pollard rho.
pub fn factorize_with_bound(n: &BigUint, trial_bound: u64) -> BTreeMap<BigUint, u32> {
    let mut out = BTreeMap::new();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let mut d: u64 = 2;
    while d <= trial_bound {
        if BigUint::from(d) * BigUint::from(d) > rest {
            break;
        }
        let mut e = 0;
        while (&rest % d).is_zero() {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            out.insert(BigUint::from(d), e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return out;
    }
    if BigUint::from(d) * BigUint::from(d) > rest {
        *out.entry(rest).or_insert(0) += 1;
        return out;
    }
    factor_rho(rest, &mut out);
    out
}

pub fn factorize(n: &BigUint) -> BTreeMap<BigUint, u32> {
    factorize_with_bound(n, DEFAULT_TRIAL_BOUND)
}

/// The set of prime divisors of `n`; empty for `n = 1`.
pub fn prime_set(n: &BigUint) -> BTreeSet<BigUint> {
    factorize(n).into_keys().collect()
}

pub fn prime_set_u64(n: u64) -> BTreeSet<u64> {
    prime_set(&BigUint::from(n))
        .into_iter()
        .map(|p| p.to_u64().expect("divisor of a u64 fits in u64"))
        .collect()
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::invalid(format!("{p} is not prime")))
    }
}

/// Largest power of the prime `p` dividing `n`.
pub fn p_part(n: &BigUint, p: u64) -> Result<BigUint> {
    require_prime(p)?;
    if n.is_zero() {
        return Err(Error::invalid("p-part of 0 is undefined"));
    }
    let mut rest = n.clone();
    let mut part = BigUint::one();
    while (&rest % p).is_zero() {
        rest /= p;
        part *= p;
    }
    Ok(part)
}

pub fn p_part_u64(n: u64, p: u64) -> Result<u64> {
    p_part(&BigUint::from(n), p).map(|v| v.to_u64().expect("divisor of a u64"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorialPPart {
    pub n: u64,
    pub p: u64,
    /// Legendre exponent: the sum of `floor(n / p^i)`.
    pub exponent: u64,
    #[serde(serialize_with = "crate::ser::biguint_str")]
    pub value: BigUint,
    /// Whether `value^(p-1) < p^n`.
    pub bound_holds: bool,
}

/// `(n!)_p` via Legendre's formula, with the exact comparison against `p^(n/(p-1))`.
pub fn factorial_p_part(n: u64, p: u64) -> Result<FactorialPPart> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let mut exponent = 0u64;
    let mut pk = p as u128;
    while pk <= n as u128 {
        exponent += n / pk as u64;
        pk *= p as u128;
    }
    let value = BigUint::from(p).pow(u32::try_from(exponent).map_err(|_| Error::invalid("exponent overflow"))?);
    // (p^e)^(p-1) < p^n  <=>  e(p-1) < n
    let bound_holds = (exponent as u128) * ((p - 1) as u128) < n as u128;
    Ok(FactorialPPart {
        n,
        p,
        exponent,
        value,
        bound_holds,
    })
}

/// Multiplicative order of `a` modulo `r`. `None` when `gcd(a, r) != 1`.
pub fn multiplicative_order(a: &BigUint, r: &BigUint) -> Option<BigUint> {
    let one = BigUint::one();
    if r <= &one || !a.gcd(r).is_one() {
        return None;
    }
    // The order divides phi(r); for prime r that is r - 1.
    let phi = euler_phi(r);
    let mut order = phi.clone();
    for (p, _) in factorize(&phi) {
        while (&order % &p).is_zero() && a.modpow(&(&order / &p), r).is_one() {
            order /= &p;
        }
    }
    Some(order)
}

fn euler_phi(n: &BigUint) -> BigUint {
    let mut phi = n.clone();
    for (p, _) in factorize(n) {
        phi = phi / &p * (&p - 1u32);
    }
    phi
}

fn mobius(n: u64) -> i32 {
    let mut sign = 1;
    for (p, e) in factorize(&BigUint::from(n)) {
        let _ = p;
        if e > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    ds.sort_unstable();
    ds
}

/// The cyclotomic value `Phi_m(a)` by the Mobius product over divisors of `m`.
pub fn cyclotomic_value(a: u64, m: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let base = BigUint::from(a);
    for d in divisors(m) {
        let term = base.pow(d as u32) - 1u32;
        match mobius(m / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PpdResult {
    pub a: u64,
    pub m: u64,
    #[serde(serialize_with = "crate::ser::biguint_vec_str")]
    pub primes: Vec<BigUint>,
    /// Set for `(2, 6)` (returned as `{7}` by convention) and for the `m = 2`,
    /// `a + 1` a power of two case (empty set).
    pub exceptional: bool,
}

/// Primitive prime divisors of `(a, m)`: primes dividing `a^m - 1` but no `a^i - 1`, `0 < i < m`.
///
/// `(2, 6)` returns `{7}` with `exceptional` set.
pub fn ppd(a: u64, m: u64) -> Result<PpdResult> {
    if a < 2 || m < 2 {
        return Err(Error::invalid(format!("ppd requires a >= 2 and m >= 2, got ({a}, {m})")));
    }
    if m > u32::MAX as u64 {
        return Err(Error::invalid("m too large"));
    }
    if (a, m) == (2, 6) {
        return Ok(PpdResult {
            a,
            m,
            primes: vec![BigUint::from(7u32)],
            exceptional: true,
        });
    }
    let exceptional = m == 2 && (a + 1).is_power_of_two();
    // Every primitive prime divisor divides Phi_m(a); the only other primes
    // dividing it also divide m.
    let big_a = BigUint::from(a);
    let big_m = BigUint::from(m);
    let primes: Vec<BigUint> = factorize(&cyclotomic_value(a, m))
        .into_keys()
        .filter(|r| multiplicative_order(&big_a, r).as_ref() == Some(&big_m))
        .collect();
    Ok(PpdResult {
        a,
        m,
        primes,
        exceptional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn p_part_examples() {
        assert_eq!(p_part_u64(12, 2).unwrap(), 4);
        assert_eq!(p_part_u64(1, 7).unwrap(), 1);
        assert_eq!(p_part_u64(95040, 3).unwrap(), 27);
        assert!(p_part_u64(12, 4).is_err());
    }

    #[test]
    fn prime_set_examples() {
        assert_eq!(prime_set_u64(360), BTreeSet::from([2, 3, 5]));
        assert!(prime_set_u64(1).is_empty());
        assert_eq!(prime_set_u64(95040), BTreeSet::from([2, 3, 5, 11]));
    }

    #[test]
    fn factorial_examples() {
        let r = factorial_p_part(6, 2).unwrap();
        assert_eq!(r.value, big(16));
        assert!(r.bound_holds);
        let r = factorial_p_part(1, 5).unwrap();
        assert_eq!(r.value, big(1));
        assert!(r.bound_holds);
        let r = factorial_p_part(10, 3).unwrap();
        assert_eq!(r.value, big(81));
        assert_eq!(r.exponent, 4);
        assert!(r.bound_holds);
    }

    #[test]
    fn ppd_examples() {
        let r = ppd(2, 6).unwrap();
        assert_eq!(r.primes, vec![big(7)]);
        assert!(r.exceptional);
        let r = ppd(3, 2).unwrap();
        assert!(r.primes.is_empty());
        assert!(r.exceptional);
        let r = ppd(2, 10).unwrap();
        assert_eq!(r.primes, vec![big(11)]);
        assert!(!r.exceptional);
        assert!(ppd(1, 3).is_err());
    }

    #[test]
    fn factorization_large_cofactor() {
        // 2^64 + 1 = 274177 * 67280421310721
        let n = BigUint::from(2u32).pow(64) + 1u32;
        let f = factorize_with_bound(&n, 1000);
        assert_eq!(f.len(), 2);
        assert!(f.contains_key(&big(274177)));
        assert!(f.contains_key(&big(67280421310721)));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(18446744073709551557));
        assert!(!is_prime(3215031751));
    }
}
