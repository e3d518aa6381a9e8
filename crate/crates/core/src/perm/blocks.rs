//! Block systems and primitivity.

use serde::Serialize;

use super::group::PermGroup;
use super::permutation::Permutation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitivityVerdict {
    pub primitive: bool,
    /// A minimal nontrivial block containing point 0, when imprimitive.
    pub block: Option<Vec<usize>>,
    /// The block system generated by `block`.
    pub system: Option<Vec<Vec<usize>>>,
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Finest block system in which `a` and `b` share a block.
pub fn minimal_block_system(gens: &[Permutation], degree: usize, a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(degree);
    let mut queue = vec![(a, b)];
    uf.union(a, b);
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if uf.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); degree];
    for p in 0..degree {
        let r = uf.find(p);
        classes[r].push(p);
    }
    let mut system: Vec<Vec<usize>> = classes.into_iter().filter(|c| !c.is_empty()).collect();
    system.sort();
    system
}

/// Primitivity of a transitive group, with a minimal block through 0 as a
/// witness when it fails.
pub fn is_primitive(g: &PermGroup) -> Result<PrimitivityVerdict> {
    if !g.is_transitive() {
        return Err(Error::Precondition("primitivity needs a transitive group".into()));
    }
    let n = g.degree();
    if n <= 2 {
        return Ok(PrimitivityVerdict {
            primitive: true,
            block: None,
            system: None,
        });
    }
    // Minimal blocks through 0 are generated by 0 and a representative of a
    // suborbit, so one candidate per orbit of the point stabilizer suffices.
    let stab = g.point_stabilizer(0)?;
    let mut best: Option<Vec<Vec<usize>>> = None;
    for orbit in stab.orbits() {
        let b = orbit[0];
        if b == 0 {
            continue;
        }
        let system = minimal_block_system(g.generators(), n, 0, b);
        if system.len() > 1 {
            let size = system[0].len();
            if best.as_ref().map_or(true, |s| s[0].len() > size) {
                best = Some(system);
            }
        }
    }
    Ok(match best {
        None => PrimitivityVerdict {
            primitive: true,
            block: None,
            system: None,
        },
        Some(system) => PrimitivityVerdict {
            primitive: false,
            block: Some(system[0].clone()),
            system: Some(system),
        },
    })
}
