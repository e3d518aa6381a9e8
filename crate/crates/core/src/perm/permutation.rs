use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`, acting on the right: `p^(xy) = (p^x)^y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n > u32::MAX as usize {
            return Err(Error::invalid("degree too large"));
        }
        let mut seen = vec![false; n];
        for (i, &im) in images.iter().enumerate() {
            if im >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {im} of point {i} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[im], true) {
                return Err(Error::InvalidPermutation(format!("point {im} is hit twice")));
            }
        }
        Ok(Permutation {
            images: images.into_iter().map(|x| x as u32).collect(),
        })
    }

    /// Build from 0-indexed cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if std::mem::replace(&mut touched[p], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {p} appears in more than one cycle position"
                    )));
                }
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x^-1 * self * x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        // point p: p^(x^-1 self x) ; with q = p^(x^-1), image is (q^self)^x
        let mut images = vec![0u32; self.images.len()];
        for (q, &qs) in self.images.iter().enumerate() {
            images[x.images[q] as usize] = x.images[qs as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Sorted lengths of the nontrivial cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable();
        t
    }

    pub fn order(&self) -> BigUint {
        self.cycles()
            .iter()
            .fold(BigUint::one(), |acc, c| acc.lcm(&BigUint::from(c.len())))
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Extend to a larger degree, fixing the new points.
    pub fn extend(&self, degree: usize) -> Result<Permutation> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: degree,
            });
        }
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Ok(Permutation { images })
    }

    /// Relabel by adding `offset` to every point, inside a domain of size `degree`.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[i + offset] = x + offset as u32;
        }
        Permutation { images }
    }

    /// Cycle notation, 1-indexed when `one_indexed`; `()` for the identity.
    pub fn to_cycle_string(&self, one_indexed: bool) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let shift = usize::from(one_indexed);
        let mut s = String::new();
        for c in cycles {
            s.push('(');
            let parts: Vec<String> = c.iter().map(|p| (p + shift).to_string()).collect();
            s.push_str(&parts.join(","));
            s.push(')');
        }
        s
    }

    /// Parse cycle notation such as `(1,2,3)(4,5)`. Points may be separated by
    /// commas or whitespace; `()` is the identity.
    pub fn parse_cycles(text: &str, degree: usize, one_indexed: bool) -> Result<Permutation> {
        let cycles = parse_cycle_list(text)?;
        let shift = usize::from(one_indexed);
        let mut zero_based = Vec::with_capacity(cycles.len());
        for (cycle, offset) in cycles {
            let mut c = Vec::with_capacity(cycle.len());
            for p in cycle {
                if p < shift {
                    return Err(Error::Parse {
                        offset,
                        message: "point 0 is not valid in 1-indexed notation".into(),
                    });
                }
                c.push(p - shift);
            }
            zero_based.push(c);
        }
        Permutation::from_cycles(degree, &zero_based)
    }
}

/// Cycles with the byte offset of each opening parenthesis.
fn parse_cycle_list(text: &str) -> Result<Vec<(Vec<usize>, usize)>> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == bytes.len() {
        return Err(Error::Parse {
            offset: i,
            message: "empty permutation".into(),
        });
    }
    while i < bytes.len() {
        if bytes[i] != b'(' {
            return Err(Error::Parse {
                offset: i,
                message: format!("expected '(' but found '{}'", bytes[i] as char),
            });
        }
        let open = i;
        i += 1;
        let mut cycle = Vec::new();
        loop {
            skip_ws(&mut i);
            if i == bytes.len() {
                return Err(Error::Parse {
                    offset: i,
                    message: "unclosed cycle".into(),
                });
            }
            match bytes[i] {
                b')' => {
                    i += 1;
                    break;
                }
                b',' if !cycle.is_empty() => {
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let value = text[start..i].parse::<usize>().map_err(|_| Error::Parse {
                        offset: start,
                        message: "point does not fit in a machine integer".into(),
                    })?;
                    cycle.push(value);
                }
                c => {
                    return Err(Error::Parse {
                        offset: i,
                        message: format!("unexpected character '{}'", c as char),
                    })
                }
            }
        }
        if !cycle.is_empty() {
            out.push((cycle, open));
        }
        skip_ws(&mut i);
    }
    Ok(out)
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.compose(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string(false))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycle_string(true))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm_strategy(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    #[test]
    fn parse_and_cycle_type() {
        let p = Permutation::parse_cycles("(1,2)(3,4,5)", 5, true).unwrap();
        assert_eq!(p.cycle_type(), vec![2, 3]);
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(4), 2);
        assert_eq!(p.to_string(), "(1,2)(3,4,5)");
    }

    #[test]
    fn unclosed_cycle_reports_offset() {
        match Permutation::parse_cycles("(1,2", 5, true) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn repeated_point_is_not_bijective() {
        assert!(matches!(
            Permutation::parse_cycles("(1,2)(2,3)", 4, true),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn identity_round_trip() {
        let id = Permutation::parse_cycles("()", 3, true).unwrap();
        assert!(id.is_identity());
        assert_eq!(id.to_string(), "()");
    }

    #[test]
    fn right_action_convention() {
        let a = Permutation::parse_cycles("(0 1)", 3, false).unwrap();
        let b = Permutation::parse_cycles("(1 2)", 3, false).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!((&a * &b).apply(0), 2);
        let c = b.conjugate_by(&a);
        assert_eq!(c, a.inverse().compose(&b).compose(&a));
    }

    proptest! {
        #[test]
        fn print_parse_identity(p in perm_strategy(9)) {
            let s = p.to_cycle_string(true);
            prop_assert_eq!(Permutation::parse_cycles(&s, 9, true).unwrap(), p.clone());
            let s0 = p.to_cycle_string(false);
            prop_assert_eq!(Permutation::parse_cycles(&s0, 9, false).unwrap(), p);
        }

        #[test]
        fn inverse_and_pow(p in perm_strategy(8)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            let ord: u64 = p.order().try_into().unwrap();
            prop_assert!(p.pow(ord as i64).is_identity());
            prop_assert_eq!(p.pow(-1), p.inverse());
        }
    }
}
