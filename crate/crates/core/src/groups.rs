//! Named permutation groups: symmetric, alternating, cyclic, dihedral, the
//! projective groups of the line over small fields, the Mathieu groups
//! `M11` and `M12`, and wreath, direct and coset-action constructions.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::field::{prime_power, FiniteField};
use crate::perm::{coset_action, normalizer, setwise_stabilizer, PermGroup, Permutation, Subgroup, DEFAULT_SEED};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NamedGroupSpec {
    #[serde(rename = "S")]
    Symmetric { n: usize },
    #[serde(rename = "A")]
    Alternating { n: usize },
    #[serde(rename = "C")]
    Cyclic { n: usize },
    /// Dihedral group of the given order, acting on `order / 2` points.
    #[serde(rename = "D")]
    Dihedral { order: usize },
    #[serde(rename = "PSL2")]
    Psl2 { q: u64 },
    #[serde(rename = "PGL2")]
    Pgl2 { q: u64 },
    #[serde(rename = "PGammaL2")]
    PGammaL2 { q: u64 },
    M11,
    M12,
    Wreath { base: Box<GroupSpec>, k: usize },
    Direct { factors: Vec<GroupSpec> },
    Coset { group: Box<GroupSpec>, subgroup: Box<GroupSpec> },
}

/// Either a named group or explicit generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(NamedGroupSpec),
    Generators {
        degree: usize,
        #[serde(serialize_with = "ser_perms")]
        generators: Vec<Permutation>,
    },
}

fn ser_perms<S: serde::Serializer>(perms: &[Permutation], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(perms.iter().map(|p| p.to_cycle_string(true)))
}

impl From<NamedGroupSpec> for GroupSpec {
    fn from(spec: NamedGroupSpec) -> Self {
        GroupSpec::Named(spec)
    }
}

impl GroupSpec {
    pub fn build(&self, bounds: &Bounds, seed: u64) -> Result<PermGroup> {
        match self {
            GroupSpec::Named(named) => build_named_with_seed(named, bounds, seed),
            GroupSpec::Generators { degree, generators } => {
                check_degree(*degree as u64, bounds)?;
                PermGroup::with_seed(*degree, generators.clone(), seed)
            }
        }
    }
}

impl fmt::Display for NamedGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedGroupSpec::Symmetric { n } => write!(f, "S:{n}"),
            NamedGroupSpec::Alternating { n } => write!(f, "A:{n}"),
            NamedGroupSpec::Cyclic { n } => write!(f, "C:{n}"),
            NamedGroupSpec::Dihedral { order } => write!(f, "D:{order}"),
            NamedGroupSpec::Psl2 { q } => write!(f, "PSL2:{q}"),
            NamedGroupSpec::Pgl2 { q } => write!(f, "PGL2:{q}"),
            NamedGroupSpec::PGammaL2 { q } => write!(f, "PGammaL2:{q}"),
            NamedGroupSpec::M11 => write!(f, "M11"),
            NamedGroupSpec::M12 => write!(f, "M12"),
            NamedGroupSpec::Wreath { base, k } => write!(f, "wr({base},{k})"),
            NamedGroupSpec::Direct { factors } => {
                write!(f, "direct(")?;
                for (i, x) in factors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            NamedGroupSpec::Coset { group, subgroup } => write!(f, "coset({group},{subgroup})"),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Named(n) => write!(f, "{n}"),
            GroupSpec::Generators { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|g| g.to_cycle_string(true)).collect();
                let json = serde_json::json!({ "degree": degree, "generators": gens });
                write!(f, "{json}")
            }
        }
    }
}

fn check_degree(degree: u64, bounds: &Bounds) -> Result<()> {
    if degree > bounds.points {
        return Err(Error::limit("group degree", bounds.points, degree));
    }
    Ok(())
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

fn cycle(degree: usize, points: impl IntoIterator<Item = usize>) -> Result<Permutation> {
    Permutation::from_cycles(degree, &[points.into_iter().collect()])
}

pub fn build_named(spec: &NamedGroupSpec, bounds: &Bounds) -> Result<PermGroup> {
    build_named_with_seed(spec, bounds, DEFAULT_SEED)
}

pub fn build_named_with_seed(spec: &NamedGroupSpec, bounds: &Bounds, seed: u64) -> Result<PermGroup> {
    match spec {
        NamedGroupSpec::Symmetric { n } => symmetric(*n, bounds),
        NamedGroupSpec::Alternating { n } => alternating(*n, bounds),
        NamedGroupSpec::Cyclic { n } => cyclic(*n, bounds),
        NamedGroupSpec::Dihedral { order } => dihedral(*order, bounds),
        NamedGroupSpec::Psl2 { q } => projective(*q, Projective::Psl, seed),
        NamedGroupSpec::Pgl2 { q } => projective(*q, Projective::Pgl, seed),
        NamedGroupSpec::PGammaL2 { q } => projective(*q, Projective::PGammaL, seed),
        NamedGroupSpec::M11 => mathieu_m11(),
        NamedGroupSpec::M12 => mathieu_m12(),
        NamedGroupSpec::Wreath { base, k } => wreath(&base.build(bounds, seed)?, *k, bounds),
        NamedGroupSpec::Direct { factors } => {
            let groups = factors
                .iter()
                .map(|f| f.build(bounds, seed))
                .collect::<Result<Vec<_>>>()?;
            direct_product(&groups, bounds)
        }
        NamedGroupSpec::Coset { group, subgroup } => {
            let g = group.build(bounds, seed)?;
            let h = subgroup.build(bounds, seed)?;
            let h = if h.degree() < g.degree() {
                let gens = h
                    .generators()
                    .iter()
                    .map(|x| x.extend(g.degree()))
                    .collect::<Result<Vec<_>>>()?;
                PermGroup::with_seed(g.degree(), gens, seed)?
            } else {
                h
            };
            let h = Subgroup::new(h, &g)?;
            Ok(coset_action(&g, &h, bounds)?.image().clone())
        }
    }
}

pub fn symmetric(n: usize, bounds: &Bounds) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::invalid("S(n) needs n >= 1"));
    }
    check_degree(n as u64, bounds)?;
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, [0, 1])?);
    }
    if n >= 3 {
        gens.push(cycle(n, 0..n)?);
    }
    PermGroup::build(n, gens, &[], Some(&factorial(n)), DEFAULT_SEED)
}

pub fn alternating(n: usize, bounds: &Bounds) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::invalid("A(n) needs n >= 1"));
    }
    check_degree(n as u64, bounds)?;
    if n <= 2 {
        return Ok(PermGroup::trivial(n));
    }
    let mut gens = vec![cycle(n, [0, 1, 2])?];
    if n >= 4 {
        gens.push(if n % 2 == 1 { cycle(n, 0..n)? } else { cycle(n, 1..n)? });
    }
    PermGroup::build(n, gens, &[], Some(&(factorial(n) / 2u32)), DEFAULT_SEED)
}

/// Regular cyclic group.
pub fn cyclic(n: usize, bounds: &Bounds) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::invalid("C(n) needs n >= 1"));
    }
    check_degree(n as u64, bounds)?;
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    PermGroup::build(n, vec![cycle(n, 0..n)?], &[], Some(&BigUint::from(n)), DEFAULT_SEED)
}

/// Dihedral group of order `2m` acting on `m` points.
pub fn dihedral(order: usize, bounds: &Bounds) -> Result<PermGroup> {
    if order % 2 == 1 || order < 6 {
        return Err(Error::invalid(format!(
            "D(n) needs an even order n >= 6 to act faithfully on n/2 points, got {order}"
        )));
    }
    let m = order / 2;
    check_degree(m as u64, bounds)?;
    let rotation = cycle(m, 0..m)?;
    let reflection = Permutation::from_images((0..m).map(|i| (m - i) % m).collect())?;
    PermGroup::build(m, vec![rotation, reflection], &[], Some(&BigUint::from(order)), DEFAULT_SEED)
}

/// `R wr S_k` in its imprimitive action on `deg(R) * k` points, block `i`
/// being points `i*d .. (i+1)*d`.
pub fn wreath(base: &PermGroup, k: usize, bounds: &Bounds) -> Result<PermGroup> {
    if k == 0 {
        return Err(Error::invalid("wreath product needs k >= 1"));
    }
    let d = base.degree();
    let n = d
        .checked_mul(k)
        .filter(|&n| n as u64 <= bounds.points)
        .ok_or_else(|| Error::limit("group degree", bounds.points, (d as u128) * (k as u128)))?;
    let mut gens: Vec<Permutation> = base.generators().iter().map(|g| g.shifted(0, n)).collect();
    let block_perm = |images: &dyn Fn(usize) -> usize| -> Result<Permutation> {
        Permutation::from_images((0..n).map(|p| images(p / d) * d + p % d).collect())
    };
    if k >= 2 {
        gens.push(block_perm(&|b| match b {
            0 => 1,
            1 => 0,
            b => b,
        })?);
    }
    if k >= 3 {
        gens.push(block_perm(&|b| (b + 1) % k)?);
    }
    let order = base.order().pow(k as u32) * factorial(k);
    PermGroup::build(n, gens, &[], Some(&order), DEFAULT_SEED)
}

/// Direct product on disjoint consecutive domains.
pub fn direct_product(factors: &[PermGroup], bounds: &Bounds) -> Result<PermGroup> {
    if factors.is_empty() {
        return Err(Error::invalid("direct product needs at least one factor"));
    }
    let n: usize = factors.iter().map(PermGroup::degree).sum();
    check_degree(n as u64, bounds)?;
    let mut gens = Vec::new();
    let mut offset = 0;
    let mut order = BigUint::one();
    for f in factors {
        gens.extend(f.generators().iter().map(|g| g.shifted(offset, n)));
        offset += f.degree();
        order *= f.order();
    }
    PermGroup::build(n, gens, &[], Some(&order), DEFAULT_SEED)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Projective {
    Psl,
    Pgl,
    PGammaL,
}

/// The projective line over `F_q`: field elements `0..q` plus `infinity = q`.
#[derive(Debug, Clone)]
pub struct ProjectiveLine {
    field: FiniteField,
}

impl ProjectiveLine {
    pub fn new(q: u64) -> Result<Self> {
        Ok(ProjectiveLine {
            field: FiniteField::new(q)?,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn infinity(&self) -> usize {
        self.field.order()
    }

    pub fn degree(&self) -> usize {
        self.field.order() + 1
    }

    /// The Möbius map `x -> (a x + b) / (c x + d)`.
    pub fn mobius(&self, a: u16, b: u16, c: u16, d: u16) -> Result<Permutation> {
        let f = &self.field;
        let det = f.sub(f.mul(a, d), f.mul(b, c));
        if det == 0 {
            return Err(Error::invalid("singular Möbius map"));
        }
        let inf = self.infinity();
        let images = (0..self.degree())
            .map(|x| {
                let (num, den) = if x == inf {
                    (a, c)
                } else {
                    let x = x as u16;
                    (f.add(f.mul(a, x), b), f.add(f.mul(c, x), d))
                };
                match f.inv(den) {
                    None => inf,
                    Some(i) => f.mul(num, i) as usize,
                }
            })
            .collect();
        Permutation::from_images(images)
    }

    /// `x -> x^p`, fixing infinity.
    pub fn frobenius(&self) -> Result<Permutation> {
        let inf = self.infinity();
        Permutation::from_images(
            (0..self.degree())
                .map(|x| if x == inf { inf } else { self.field.frobenius(x as u16) as usize })
                .collect(),
        )
    }
}

fn projective(q: u64, kind: Projective, seed: u64) -> Result<PermGroup> {
    let (p, f) = prime_power(q).ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
    let line = ProjectiveLine::new(q)?;
    let field = line.field();
    let lambda = field.primitive_element();
    let one = 1u16;
    let minus_one = field.neg(one);
    let mut gens = vec![
        line.mobius(one, one, 0, one)?,
        line.mobius(field.mul(lambda, lambda), 0, 0, one)?,
        line.mobius(0, minus_one, one, 0)?,
    ];
    let qq = BigUint::from(q);
    let mut order = &qq * (&qq * &qq - 1u32);
    match kind {
        Projective::Psl => order /= BigUint::from((q - 1).gcd(&2)),
        Projective::Pgl => gens.push(line.mobius(lambda, 0, 0, one)?),
        Projective::PGammaL => {
            gens.push(line.mobius(lambda, 0, 0, one)?);
            if f > 1 {
                gens.push(line.frobenius()?);
            }
            order *= f;
        }
    }
    gens.retain(|g| !g.is_identity());
    let group = PermGroup::with_seed(line.degree(), gens, seed)?;
    if group.order() != &order {
        return Err(Error::Internal(format!(
            "projective group over F_{q} (p = {p}) has order {}, expected {order}",
            group.order()
        )));
    }
    Ok(group)
}

pub fn psl2(q: u64) -> Result<PermGroup> {
    projective(q, Projective::Psl, DEFAULT_SEED)
}

pub fn pgl2(q: u64) -> Result<PermGroup> {
    projective(q, Projective::Pgl, DEFAULT_SEED)
}

pub fn pgammal2(q: u64) -> Result<PermGroup> {
    projective(q, Projective::PGammaL, DEFAULT_SEED)
}

const M11_GENS: [&str; 2] = ["(1,2,3,4,5,6,7,8,9,10,11)", "(3,7,11,8)(4,10,5,6)"];
const M12_EXTRA: &str = "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)";

fn parse_all(degree: usize, texts: &[&str]) -> Result<Vec<Permutation>> {
    texts.iter().map(|t| Permutation::parse_cycles(t, degree, true)).collect()
}

/// `M11` on 11 points.
pub fn mathieu_m11() -> Result<PermGroup> {
    PermGroup::new(11, parse_all(11, &M11_GENS)?)
}

/// `M12` on 12 points. Its first two generators fix point 12 (index 11) and
/// generate `M11`.
pub fn mathieu_m12() -> Result<PermGroup> {
    let mut gens = parse_all(12, &M11_GENS)?;
    gens.push(Permutation::parse_cycles(M12_EXTRA, 12, true)?);
    PermGroup::new(12, gens)
}

/// `M12` with two copies of `M11` that are not conjugate in it.
#[derive(Debug, Clone)]
pub struct MathieuPair {
    pub m12: PermGroup,
    /// The stabilizer of point 12.
    pub m11: Subgroup,
    /// A transitive `M11` meeting `m11` in `PSL2(11)`.
    pub m11_transitive: Subgroup,
    /// `m11 ∩ m11_transitive`, order 660.
    pub common: Subgroup,
}

/// Builds the pair by seeded random search: first a `PSL2(11)` inside the
/// point stabilizer (an 11-cycle together with a random element), then a
/// random `y` such that `<PSL2(11), y>` is a transitive group of order 7920.
pub fn mathieu_m11_pair(seed: u64) -> Result<MathieuPair> {
    let m12 = mathieu_m12()?;
    let m11 = Subgroup::new(PermGroup::new(12, m12.generators()[..2].to_vec())?, &m12)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eleven = m12.generators()[0].clone();
    let target_small = BigUint::from(660u32);
    let target = BigUint::from(7920u32);
    let mut common = None;
    for _ in 0..2000 {
        let y = m11.random_element(&mut rng);
        let p = PermGroup::new(12, vec![eleven.clone(), y])?;
        if p.order() == &target_small {
            common = Some(p);
            break;
        }
    }
    let common = common.ok_or_else(|| Error::Internal("no PSL2(11) found in M11".into()))?;
    for _ in 0..2000 {
        let y = m12.random_element(&mut rng);
        let mut gens = common.generators().to_vec();
        gens.push(y);
        let b = PermGroup::new(12, gens)?;
        if b.order() == &target && b.is_transitive() {
            return Ok(MathieuPair {
                m11_transitive: Subgroup::new(b, &m12)?,
                common: Subgroup::new(common, &m12)?,
                m11,
                m12,
            });
        }
    }
    Err(Error::Internal("no transitive M11 found in M12".into()))
}

/// `PSL2(5)` acting on the 6 points of the projective line over `F_5`, as a
/// transitive subgroup of `A6`.
pub fn transitive_a5_in_a6(bounds: &Bounds) -> Result<Subgroup> {
    let a6 = alternating(6, bounds)?;
    Subgroup::new(psl2(5)?, &a6)
}

/// `x -> a x + b` with `a` in the subgroup of index `(p-1)/k` of `F_p^*`,
/// i.e. `C_p ⋊ C_k`, on `p` points (`p` prime, `k | p-1`).
pub fn affine_subgroup(p: u64, k: u64, bounds: &Bounds) -> Result<PermGroup> {
    if !crate::numtheory::is_prime(p) || k == 0 || (p - 1) % k != 0 {
        return Err(Error::invalid(format!("need p prime and k | p-1, got p = {p}, k = {k}")));
    }
    check_degree(p, bounds)?;
    let field = FiniteField::new(p)?;
    let a = field.pow(field.primitive_element(), (p - 1) / k);
    let n = p as usize;
    let translation = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect())?;
    let scaling = Permutation::from_images((0..n).map(|x| field.mul(a, x as u16) as usize).collect())?;
    let gens: Vec<Permutation> = [translation, scaling].into_iter().filter(|g| !g.is_identity()).collect();
    PermGroup::build(n, gens, &[], Some(&BigUint::from(p * k)), DEFAULT_SEED)
}

/// First element of order `k` in `g`, in enumeration order.
pub fn element_of_order(g: &PermGroup, k: u64, bounds: &Bounds) -> Result<Option<Permutation>> {
    let k = BigUint::from(k);
    Ok(g.elements(bounds.elements)?.find(|x| x.order() == k))
}

/// Normalizer in `g` of a cyclic subgroup of order `k` of `source`, taken
/// from the first element of that order. Meaningful when all such subgroups
/// of `source` are conjugate (e.g. tori of `PSL2(q)`).
pub fn cyclic_normalizer(g: &PermGroup, source: &PermGroup, k: u64, bounds: &Bounds) -> Result<Subgroup> {
    let x = element_of_order(source, k, bounds)?
        .ok_or_else(|| Error::invalid(format!("no element of order {k}")))?;
    normalizer(g, &PermGroup::new(g.degree(), vec![x])?, bounds)
}

/// Stabilizer of `{0, infinity}` on the projective line: the normalizer of
/// the split torus, dihedral of order `2(q-1)/gcd(2,q-1)` in `PSL2(q)`.
pub fn split_torus_normalizer(g: &PermGroup, bounds: &Bounds) -> Result<Subgroup> {
    let inf = g.degree() - 1;
    setwise_stabilizer(g, &[0, inf], bounds)
}

/// Degree of transitivity: the largest `t` such that the group is
/// `t`-transitive (computed through iterated point stabilizers).
pub fn transitivity_degree(g: &PermGroup) -> Result<usize> {
    let mut t = 0;
    let mut current = g.clone();
    let mut fixed: Vec<usize> = Vec::new();
    loop {
        let remaining: Vec<usize> = (0..g.degree()).filter(|p| !fixed.contains(p)).collect();
        let Some(&first) = remaining.first() else { return Ok(t) };
        if current.orbit(first)?.len() != remaining.len() {
            return Ok(t);
        }
        t += 1;
        fixed.push(first);
        current = g.pointwise_stabilizer(&fixed)?;
    }
}

/// Order as `u64`, or a resource-limit error naming `what`.
pub fn order_u64(g: &PermGroup, what: &'static str, bound: u64) -> Result<u64> {
    g.order()
        .to_u64()
        .filter(|&n| n <= bound)
        .ok_or_else(|| Error::limit(what, bound, g.order()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Bounds {
        Bounds::desk()
    }

    fn ord(g: &PermGroup) -> u64 {
        g.order_u64().unwrap()
    }

    #[test]
    fn small_families() {
        assert_eq!(ord(&symmetric(4, &b()).unwrap()), 24);
        assert_eq!(ord(&symmetric(1, &b()).unwrap()), 1);
        assert_eq!(ord(&alternating(6, &b()).unwrap()), 360);
        assert_eq!(ord(&alternating(7, &b()).unwrap()), 2520);
        assert_eq!(ord(&cyclic(7, &b()).unwrap()), 7);
        let d18 = dihedral(18, &b()).unwrap();
        assert_eq!((ord(&d18), d18.degree()), (18, 9));
        assert!(dihedral(4, &b()).is_err());
        assert!(symmetric(0, &b()).is_err());
    }

    #[test]
    fn projective_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 25, 27] {
            let qq = q * (q * q - 1);
            let psl = psl2(q).unwrap();
            assert_eq!(ord(&psl), qq / (q - 1).gcd(&2), "PSL2({q})");
            assert_eq!(psl.degree() as u64, q + 1);
            assert_eq!(ord(&pgl2(q).unwrap()), qq, "PGL2({q})");
            let (_, f) = prime_power(q).unwrap();
            assert_eq!(ord(&pgammal2(q).unwrap()), qq * f as u64, "PGammaL2({q})");
        }
    }

    #[test]
    fn psl2_is_two_transitive() {
        for q in [5u64, 7, 8, 9, 11] {
            assert!(transitivity_degree(&psl2(q).unwrap()).unwrap() >= 2, "q = {q}");
        }
        assert_eq!(transitivity_degree(&pgl2(9).unwrap()).unwrap(), 3);
    }

    #[test]
    fn psl2_9_order_and_degree() {
        let g = build_named(&NamedGroupSpec::Psl2 { q: 9 }, &b()).unwrap();
        assert_eq!((ord(&g), g.degree()), (360, 10));
    }

    #[test]
    fn mathieu_groups() {
        let m11 = mathieu_m11().unwrap();
        let m12 = mathieu_m12().unwrap();
        assert_eq!(ord(&m11), 7920);
        assert_eq!(ord(&m12), 95040);
        assert_eq!(transitivity_degree(&m11).unwrap(), 4);
        assert_eq!(transitivity_degree(&m12).unwrap(), 5);
    }

    #[test]
    fn mathieu_pair_shape() {
        let pair = mathieu_m11_pair(DEFAULT_SEED).unwrap();
        assert_eq!(ord(&pair.m11), 7920);
        assert_eq!(ord(&pair.m11_transitive), 7920);
        assert_eq!(ord(&pair.common), 660);
        assert!(!pair.m11.is_transitive());
        assert!(pair.m11_transitive.is_transitive());
        assert!(pair.m11.contains_group(&pair.common).unwrap());
        assert!(pair.m11_transitive.contains_group(&pair.common).unwrap());
    }

    #[test]
    fn wreath_and_direct() {
        let s3 = symmetric(3, &b()).unwrap();
        let w = wreath(&s3, 2, &b()).unwrap();
        assert_eq!((ord(&w), w.degree()), (72, 6));
        assert!(w.is_transitive());
        let w3 = wreath(&s3, 3, &b()).unwrap();
        assert_eq!(ord(&w3), 6 * 6 * 6 * 6);
        let d = direct_product(&[s3.clone(), cyclic(5, &b()).unwrap()], &b()).unwrap();
        assert_eq!((ord(&d), d.degree()), (30, 8));
    }

    #[test]
    fn coset_spec_builds_image() {
        let spec = NamedGroupSpec::Coset {
            group: Box::new(NamedGroupSpec::Symmetric { n: 4 }.into()),
            subgroup: Box::new(NamedGroupSpec::Symmetric { n: 3 }.into()),
        };
        let g = build_named(&spec, &b()).unwrap();
        assert_eq!((ord(&g), g.degree()), (24, 4));
    }

    #[test]
    fn transitive_a5_is_psl25() {
        let h = transitive_a5_in_a6(&b()).unwrap();
        assert_eq!(ord(&h), 60);
        assert!(h.is_transitive());
    }

    #[test]
    fn affine_paley_group() {
        let g = affine_subgroup(7, 3, &b()).unwrap();
        assert_eq!(ord(&g), 21);
        assert!(affine_subgroup(7, 4, &b()).is_err());
    }

    #[test]
    fn dihedral_vertex_stabilizers() {
        let cases = [
            (psl2(9).unwrap(), None, 8u64),
            (pgl2(9).unwrap(), None, 16),
            (psl2(8).unwrap(), Some((psl2(8).unwrap(), 9u64)), 18),
            (pgammal2(8).unwrap(), Some((psl2(8).unwrap(), 9)), 54),
            (psl2(7).unwrap(), Some((psl2(7).unwrap(), 4)), 8),
        ];
        for (g, k, expect) in cases {
            let h = match k {
                None => split_torus_normalizer(&g, &b()).unwrap(),
                Some((src, k)) => cyclic_normalizer(&g, &src, k, &b()).unwrap(),
            };
            assert_eq!(ord(&h), expect);
        }
    }

    #[test]
    fn degree_bound_is_enforced() {
        let tight = Bounds { points: 5, ..Bounds::desk() };
        let err = symmetric(6, &tight).unwrap_err();
        assert!(err.is_resource_limit());
    }

    #[test]
    fn display_round_trip_shapes() {
        let spec = NamedGroupSpec::Wreath {
            base: Box::new(NamedGroupSpec::Symmetric { n: 3 }.into()),
            k: 2,
        };
        assert_eq!(spec.to_string(), "wr(S:3,2)");
    }
}
