//! Finite fields `F_q`, `q = p^f`, as explicit tables.
//!
//! An element is encoded as the integer `sum c_i p^i` of its coefficient
//! vector over the prime field, reduced modulo a fixed irreducible polynomial.

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Built-in moduli, coefficients from the constant term up, leading 1 included.
const BUILTIN: &[(u64, &[u64])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
    (49, &[3, 6, 1]),
    (64, &[1, 1, 0, 1, 1, 0, 1]),
    (81, &[2, 0, 0, 2, 1]),
];

/// Largest order served by the built-in table.
pub const MAX_BUILTIN_ORDER: u64 = 81;

/// Split `q` as `p^f` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut f = 0;
    while rest % p == 0 {
        rest /= p;
        f += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, f))
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    f: u32,
    q: usize,
    modulus: Vec<u64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    primitive: u16,
}

fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    // m is monic
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = a.pop().unwrap() % p;
        if lead != 0 {
            let shift = a.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let t = &mut a[shift + i];
                *t = (*t + p * p - (lead * c) % p) % p;
            }
        }
    }
    a
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Monic polynomials of degree `d` over `F_p`.
fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut code| {
        let mut c = Vec::with_capacity(d + 1);
        for _ in 0..d {
            c.push(code % p);
            code /= p;
        }
        c.push(1);
        c
    })
}

/// A monic factor of degree between 1 and `deg / 2`, if any.
fn find_factor(poly: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for cand in monic_polys(p, d) {
            if trim(poly_rem(poly.to_vec(), &cand, p)).is_empty() {
                return Some(cand);
            }
        }
    }
    None
}

impl FiniteField {
    /// `F_q` from the built-in table (prime fields need no polynomial).
    pub fn new(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        if f == 1 {
            return Self::with_polynomial(p, &[0, 1]);
        }
        let modulus = BUILTIN
            .iter()
            .find(|(qq, _)| *qq == q)
            .map(|(_, m)| *m)
            .ok_or_else(|| {
                Error::invalid(format!(
                    "no built-in irreducible polynomial for q = {q}; supply one (built-in table covers q <= {MAX_BUILTIN_ORDER})"
                ))
            })?;
        Self::with_polynomial(p, modulus)
    }

    /// `F_p[x] / (modulus)`. `modulus` is monic, constant term first.
    pub fn with_polynomial(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        let modulus: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::invalid("modulus must be monic of degree at least 1"));
        }
        if let Some(factor) = find_factor(&modulus, p) {
            return Err(Error::invalid(format!(
                "polynomial {modulus:?} is reducible over F_{p}: factor {factor:?}"
            )));
        }
        let f = (modulus.len() - 1) as u32;
        let q = p.checked_pow(f).filter(|&q| q <= u16::MAX as u64).ok_or_else(|| Error::invalid("field too large"))? as usize;

        let decode = |mut x: usize| -> Vec<u64> {
            let mut c = Vec::with_capacity(f as usize);
            for _ in 0..f {
                c.push(x as u64 % p);
                x /= p as usize;
            }
            c
        };
        let encode = |c: &[u64]| -> u16 {
            c.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u16
        };
        let coeffs: Vec<Vec<u64>> = (0..q).map(decode).collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u64> = coeffs[a].iter().zip(&coeffs[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s);
                let mut prod = vec![0u64; 2 * f as usize];
                for (i, x) in coeffs[a].iter().enumerate() {
                    for (j, y) in coeffs[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(prod, &modulus, p);
                r.resize(f as usize, 0);
                mul[a * q + b] = encode(&r);
            }
        }
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .ok_or_else(|| Error::Internal(format!("element {a} has no inverse")))? as u16;
            }
        }
        let mut field = FiniteField {
            p,
            f,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
            primitive: 0,
        };
        field.primitive = (1..q as u16)
            .find(|&a| field.multiplicative_order(a) == q as u64 - 1)
            .ok_or_else(|| Error::Internal("no primitive element".into()))?;
        Ok(field)
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u16) -> Option<u16> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u16, mut e: u64) -> u16 {
        let mut acc = 1u16;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn multiplicative_order(&self, a: u16) -> u64 {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u16 {
        self.primitive
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: u16) -> u16 {
        self.pow(a, self.p)
    }

    pub fn is_square(&self, a: u16) -> bool {
        a == 0 || (1..self.q as u16).any(|b| self.mul(b, b) == a)
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.q as u16
    }

    /// Spot-check the field axioms: associativity and distributivity on a
    /// sample of triples, plus total inverses.
    pub fn verify_axioms(&self) -> bool {
        let q = self.q as u16;
        let step = (q / 7).max(1);
        for a in (0..q).step_by(step as usize) {
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
                for c in (0..q).step_by(step as usize) {
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return false;
                    }
                }
            }
        }
        (1..q).all(|a| self.inv(a).is_some_and(|i| self.mul(a, i) == 1))
    }
}

/// Table of `F_q` with a verified primitive element.
pub fn verify_field(q: u64) -> Result<FiniteField> {
    let field = FiniteField::new(q)?;
    if !field.verify_axioms() {
        return Err(Error::Internal(format!("F_{q} tables fail the field axioms")));
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fields_are_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 49, 64, 81] {
            let f = verify_field(q).unwrap_or_else(|e| panic!("q = {q}: {e}"));
            assert_eq!(f.order() as u64, q);
            assert_eq!(f.multiplicative_order(f.primitive_element()), q - 1, "q = {q}");
        }
    }

    #[test]
    fn f9_primitive_order_8() {
        let f = verify_field(9).unwrap();
        assert_eq!(f.multiplicative_order(f.primitive_element()), 8);
        assert_eq!(f.characteristic(), 3);
        assert_eq!(f.degree(), 2);
    }

    #[test]
    fn f8_and_f7() {
        assert_eq!(verify_field(8).unwrap().characteristic(), 2);
        let f7 = verify_field(7).unwrap();
        assert_eq!(f7.degree(), 1);
        assert_eq!(f7.mul(3, 5), 1);
    }

    #[test]
    fn reducible_polynomial_reports_factor() {
        // x^2 + 1 = (x + 1)^2 over F_2
        let err = FiniteField::with_polynomial(2, &[1, 0, 1]).unwrap_err();
        assert!(err.to_string().contains("factor [1, 1]"), "{err}");
    }

    #[test]
    fn non_prime_powers_rejected() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(1).is_err());
        assert!(FiniteField::new(128).is_err());
    }

    #[test]
    fn frobenius_is_automorphism() {
        let f = verify_field(27).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }
}
