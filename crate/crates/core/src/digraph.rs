//! Coset digraphs `Cos(G, H, g)` and s-arc-transitivity.
//!
//! Vertices are the right cosets of `H`, numbered through [`CosetAction`] with
//! vertex 0 the coset `H`. The base arc is `H -> Hg` and the arcs are its
//! `G`-orbit, so the out-neighbours of `H` are `{Hgh : h in H}`. The canonical
//! s-arc is `v_j = Hg^j`.

use std::collections::VecDeque;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::factor::FactorizationCertificate;
use crate::groups::{affine_subgroup, cyclic};
use crate::perm::{
    coset_action, enumerate_normal_subgroups, intersection, is_primitive, CosetAction, PermGroup, Permutation,
    PrimitivityVerdict, Subgroup, SubgroupLattice,
};
use crate::ser::biguint_str;

#[derive(Clone, Debug)]
pub struct CosetDigraph {
    action: Arc<CosetAction>,
    g: Permutation,
    /// `g` acting on the vertices.
    g_bar: Permutation,
    out0: Vec<usize>,
    in0: Vec<usize>,
    connected: bool,
}

impl CosetDigraph {
    pub fn build(group: &PermGroup, h: &Subgroup, g: &Permutation, bounds: &Bounds) -> Result<Self> {
        let action = Arc::new(coset_action(group, h, bounds)?);
        Self::on_action(action, g)
    }

    /// Digraph over an existing coset action, so that several connecting
    /// elements can share one action.
    pub fn on_action(action: Arc<CosetAction>, g: &Permutation) -> Result<Self> {
        let group = action.group();
        let h = action.subgroup();
        if !group.contains(g)? {
            return Err(Error::invalid(format!("{g} is not in the group")));
        }
        if h.contains(g)? {
            return Err(Error::Degenerate(format!("{g} lies in H, so Hg = H is a loop")));
        }
        let g_bar = action.act(g)?;
        let h_gens: Vec<Permutation> = h.generators().to_vec();
        let h_bar_gens = h_gens.iter().map(|x| action.act(x)).collect::<Result<Vec<_>>>()?;
        let n = action.degree();
        let h_bar = PermGroup::new(n, h_bar_gens.clone())?;

        let v1 = g_bar.apply(0);
        let v_inv = g_bar.inverse().apply(0);

        // Orbit of Hg under H, remembering for each coset an element of H
        // carrying Hg to it.
        let mut word: Vec<Option<Permutation>> = vec![None; n];
        word[v1] = Some(group.identity());
        let mut out0 = vec![v1];
        let mut queue = VecDeque::from([v1]);
        while let Some(v) = queue.pop_front() {
            for (s, s_bar) in h_gens.iter().zip(&h_bar_gens) {
                let w = s_bar.apply(v);
                if word[w].is_none() {
                    word[w] = Some(word[v].as_ref().unwrap().compose(s));
                    out0.push(w);
                    queue.push_back(w);
                }
            }
        }
        if let Some(h2) = &word[v_inv] {
            // Hg h2 = Hg^-1, so h = (g h2 g)^-1 lies in H and h g h2 = g^-1.
            let h1 = g.compose(h2).compose(g).inverse();
            return Err(Error::NotADigraph {
                h: h1.to_cycle_string(true),
                h2: h2.to_cycle_string(true),
            });
        }
        out0.sort_unstable();
        let mut in0 = h_bar.orbit(v_inv)?;
        in0.sort_unstable();

        let connected = h.join_with(std::slice::from_ref(g))?.order() == group.order();
        Ok(CosetDigraph {
            action,
            g: g.clone(),
            g_bar,
            out0,
            in0,
            connected,
        })
    }

    pub fn group(&self) -> &PermGroup {
        self.action.group()
    }

    pub fn subgroup(&self) -> &Subgroup {
        self.action.subgroup()
    }

    pub fn connecting_element(&self) -> &Permutation {
        &self.g
    }

    pub fn action(&self) -> &CosetAction {
        &self.action
    }

    /// The group induced on the vertices.
    pub fn vertex_group(&self) -> &PermGroup {
        self.action.image()
    }

    pub fn vertex_count(&self) -> usize {
        self.action.degree()
    }

    pub fn valency(&self) -> usize {
        self.out0.len()
    }

    /// Whether `<H, g> = G`.
    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn out_neighbors_of_base(&self) -> &[usize] {
        &self.out0
    }

    pub fn in_neighbors_of_base(&self) -> &[usize] {
        &self.in0
    }

    /// Vertex `v_j = Hg^j` of the canonical arc.
    pub fn arc_vertex(&self, j: usize) -> usize {
        (0..j).fold(0, |v, _| self.g_bar.apply(v))
    }

    /// The canonical s-arc `v_0, ..., v_s`.
    pub fn canonical_arc(&self, s: usize) -> Vec<usize> {
        let mut arc = vec![0];
        for _ in 0..s {
            arc.push(self.g_bar.apply(*arc.last().unwrap()));
        }
        arc
    }

    /// Out-neighbour lists of every vertex. Bounded by `bounds.arcs` arcs.
    pub fn adjacency(&self, bounds: &Bounds) -> Result<Vec<Vec<usize>>> {
        self.spread(&self.out0, bounds)
    }

    pub fn in_adjacency(&self, bounds: &Bounds) -> Result<Vec<Vec<usize>>> {
        self.spread(&self.in0, bounds)
    }

    fn spread(&self, base: &[usize], bounds: &Bounds) -> Result<Vec<Vec<usize>>> {
        let n = self.vertex_count();
        let arcs = n as u64 * base.len() as u64;
        if arcs > bounds.arcs {
            return Err(Error::limit("digraph arcs", bounds.arcs, arcs));
        }
        let gens = self.vertex_group().generators();
        let mut adj: Vec<Option<Vec<usize>>> = vec![None; n];
        adj[0] = Some(base.to_vec());
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for s in gens {
                let w = s.apply(v);
                if adj[w].is_none() {
                    let mut next: Vec<usize> = adj[v].as_ref().unwrap().iter().map(|&x| s.apply(x)).collect();
                    next.sort_unstable();
                    adj[w] = Some(next);
                    queue.push_back(w);
                }
            }
        }
        Ok(adj.into_iter().map(|a| a.expect("vertex action is transitive")).collect())
    }

    /// Number of s-arcs, counted over the adjacency lists.
    pub fn count_s_arcs(&self, s: usize, bounds: &Bounds) -> Result<BigUint> {
        let adj = self.adjacency(bounds)?;
        let mut paths = vec![BigUint::one(); adj.len()];
        for _ in 0..s {
            paths = adj
                .iter()
                .map(|outs| outs.iter().map(|&w| &paths[w]).sum())
                .collect();
        }
        Ok(paths.into_iter().sum())
    }
}

/// Pointwise stabilizers of the canonical arc, as subgroups of `G`:
/// `prefix[i]` is `G_{v_0 ... v_i} = H ∩ H^g ∩ ... ∩ H^{g^i}`. Since `g` shifts
/// the arc, `G_{v_a ... v_b}` is a conjugate of `prefix[b - a]`.
#[derive(Clone, Debug)]
pub struct StabilizerChainAlongArc {
    pub prefix: Vec<Subgroup>,
}

impl StabilizerChainAlongArc {
    pub fn new(digraph: &CosetDigraph, s: usize, bounds: &Bounds) -> Result<Self> {
        let h = digraph.subgroup().clone();
        let mut prefix = vec![h.clone()];
        let mut power = digraph.group().identity();
        for _ in 1..=s {
            power = power.compose(&digraph.g);
            let next = intersection(prefix.last().unwrap(), &h.conjugate(&power)?, bounds)?;
            prefix.push(next);
        }
        Ok(StabilizerChainAlongArc { prefix })
    }

    /// `|G_{v_a ... v_b}|`.
    pub fn order(&self, a: usize, b: usize) -> &BigUint {
        self.prefix[b - a].order()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectCount {
    pub s: usize,
    #[serde(serialize_with = "biguint_str")]
    pub arcs: BigUint,
    /// Order of the pointwise stabilizer of the canonical s-arc in the
    /// vertex action.
    #[serde(serialize_with = "biguint_str")]
    pub arc_stabilizer_order: BigUint,
    #[serde(serialize_with = "biguint_str")]
    pub group_order: BigUint,
    pub transitive: bool,
}

/// Count the s-arcs and compare with the orbit of the canonical s-arc:
/// transitive iff `N_s |G_{v_0 ... v_s}| = |G|` in the vertex action.
pub fn s_arcs_direct(digraph: &CosetDigraph, s: usize, bounds: &Bounds) -> Result<DirectCount> {
    let arcs = digraph.count_s_arcs(s, bounds)?;
    let image = digraph.vertex_group();
    let stab = image.pointwise_stabilizer(&digraph.canonical_arc(s))?;
    let arc_stabilizer_order = stab.order().clone();
    let transitive = &arcs * &arc_stabilizer_order == *image.order();
    Ok(DirectCount {
        s,
        arcs,
        arc_stabilizer_order,
        group_order: image.order().clone(),
        transitive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelCertificate {
    pub level: usize,
    /// `G_{v_1..v_i} = G_{v_0..v_i} G_{v_1..v_{i+1}}`, with the certificate
    /// fields in that order.
    pub certificate: FactorizationCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub s: usize,
    pub transitive: bool,
    pub levels: Vec<LevelCertificate>,
    pub failing_level: Option<usize>,
}

/// s-arc-transitivity from the stabilizer chain alone: for `1 <= i < s`,
/// `G_{v_1..v_i} = G_{v_0..v_i} G_{v_1..v_{i+1}}`.
pub fn s_arc_criterion(digraph: &CosetDigraph, s: usize, bounds: &Bounds) -> Result<CriterionResult> {
    if s == 0 {
        return Err(Error::invalid("s must be at least 1"));
    }
    let chain = StabilizerChainAlongArc::new(digraph, s, bounds)?;
    let mut levels = Vec::new();
    for i in 1..s {
        let certificate = FactorizationCertificate::from_orders(
            chain.order(1, i).clone(),
            chain.order(0, i).clone(),
            chain.order(1, i + 1).clone(),
            chain.order(0, i + 1).clone(),
        );
        levels.push(LevelCertificate { level: i, certificate });
    }
    let failing_level = levels.iter().find(|l| !l.certificate.verdict).map(|l| l.level);
    Ok(CriterionResult {
        s,
        transitive: failing_level.is_none(),
        levels,
        failing_level,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalAudit {
    pub passed: bool,
    pub normal_subgroups_checked: usize,
    /// Generators of a nontrivial normal subgroup of `H` normalized by `g`.
    pub violation: Option<Vec<String>>,
}

/// Check that no nontrivial normal subgroup of `H` is normalized by `g`.
pub fn normal_subgroup_audit(digraph: &CosetDigraph, bounds: &Bounds) -> Result<NormalAudit> {
    if !digraph.is_connected() {
        return Err(Error::Precondition("the normal-subgroup audit needs a connected digraph".into()));
    }
    let normals = enumerate_normal_subgroups(digraph.subgroup(), bounds)?;
    let mut checked = 0;
    for n in normals.iter().filter(|n| !n.is_trivial()) {
        checked += 1;
        if n.is_normalized_by(&digraph.g)? {
            return Ok(NormalAudit {
                passed: false,
                normal_subgroups_checked: checked,
                violation: Some(n.generator_strings()),
            });
        }
    }
    Ok(NormalAudit {
        passed: true,
        normal_subgroups_checked: checked,
        violation: None,
    })
}

pub fn vertex_primitivity(digraph: &CosetDigraph) -> Result<PrimitivityVerdict> {
    is_primitive(digraph.vertex_group())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ValencyClass {
    PrimeDirectedCycle,
    ValencyAtLeast3,
    Counterexample,
}

/// A vertex-primitive arc-transitive digraph is a directed cycle of prime
/// length or has valency at least 3.
pub fn valency_or_cycle_audit(digraph: &CosetDigraph) -> Result<ValencyClass> {
    if !vertex_primitivity(digraph)?.primitive {
        return Err(Error::invalid("the valency audit needs a vertex-primitive digraph"));
    }
    let n = digraph.vertex_count() as u64;
    Ok(match digraph.valency() {
        1 if crate::numtheory::is_prime(n) => ValencyClass::PrimeDirectedCycle,
        k if k >= 3 => ValencyClass::ValencyAtLeast3,
        _ => ValencyClass::Counterexample,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentVerdict {
    /// `L` was checked for `(s-1)`-arc-transitivity.
    pub s: usize,
    pub count: DirectCount,
    pub holds: bool,
}

/// For `L` normal in `G` and transitive on vertices, with `G` s-arc-transitive,
/// check directly that `L` is `(s-1)`-arc-transitive.
pub fn normal_subgroup_descent(
    digraph: &CosetDigraph,
    l: &PermGroup,
    s: usize,
    bounds: &Bounds,
) -> Result<DescentVerdict> {
    if s == 0 {
        return Err(Error::invalid("s must be at least 1"));
    }
    if !l.is_normal_in(digraph.group())? {
        return Err(Error::invalid("L is not a normal subgroup of G"));
    }
    let l_bar = digraph.action().image_of(l)?;
    if !l_bar.is_transitive() {
        return Err(Error::invalid("L is not transitive on the vertices"));
    }
    if !s_arcs_direct(digraph, s, bounds)?.transitive {
        return Err(Error::invalid(format!("G is not {s}-arc-transitive")));
    }
    let arcs = digraph.count_s_arcs(s - 1, bounds)?;
    let stab = l_bar.pointwise_stabilizer(&digraph.canonical_arc(s - 1))?;
    let arc_stabilizer_order = stab.order().clone();
    let transitive = &arcs * &arc_stabilizer_order == *l_bar.order();
    Ok(DescentVerdict {
        s: s - 1,
        holds: transitive,
        count: DirectCount {
            s: s - 1,
            arcs,
            arc_stabilizer_order,
            group_order: l_bar.order().clone(),
            transitive,
        },
    })
}

/// The directed p-cycle: `C_p` regular, `H = 1`, `g` a generator.
pub fn directed_cycle(p: usize, bounds: &Bounds) -> Result<CosetDigraph> {
    let g = cyclic(p, bounds)?;
    let gen = g
        .generators()
        .first()
        .cloned()
        .ok_or_else(|| Error::invalid("C(1) has no arcs"))?;
    CosetDigraph::build(&g, &Subgroup::trivial(&g), &gen, bounds)
}

/// The Paley tournament on `F_p`, `p ≡ 3 (mod 4)`: `G = C_p ⋊ C_{(p-1)/2}`,
/// `H` the stabilizer of 0 and `g` the translation `x -> x + 1`.
pub fn paley_tournament(p: u64, bounds: &Bounds) -> Result<CosetDigraph> {
    if p % 4 != 3 {
        return Err(Error::invalid(format!("Paley tournaments need p ≡ 3 mod 4, got {p}")));
    }
    let g = affine_subgroup(p, (p - 1) / 2, bounds)?;
    let h = Subgroup::new(g.point_stabilizer(0)?, &g)?;
    let n = p as usize;
    let shift = Permutation::from_images((0..n).map(|x| (x + 1) % n).collect())?;
    CosetDigraph::build(&g, &h, &shift, bounds)
}

#[derive(Clone, Debug)]
pub struct BatteryInstance {
    pub label: String,
    pub digraph: CosetDigraph,
}

/// Every coset digraph of `group` with `H` a core-free nontrivial class
/// representative of index at most `max_index`, and `g` running over one
/// suborbit from each pair of mutually paired, non-self-paired suborbits.
pub fn catalog_digraphs(
    name: &str,
    group: &PermGroup,
    max_index: u64,
    bounds: &Bounds,
) -> Result<Vec<BatteryInstance>> {
    let lattice = SubgroupLattice::new(group, bounds)?;
    let mut out = Vec::new();
    for (ci, h) in lattice.representatives()?.into_iter().enumerate() {
        let index = (group.order() / h.order()).to_u64().unwrap_or(u64::MAX);
        if h.is_trivial() || index < 2 || index > max_index {
            continue;
        }
        let action = Arc::new(coset_action(group, &h, bounds)?);
        if !action.is_faithful() {
            continue;
        }
        let h_bar = action.image().point_stabilizer(0)?;
        let mut seen = vec![false; action.degree()];
        seen[0] = true;
        for orbit in h_bar.orbits() {
            let v = orbit[0];
            if seen[v] {
                continue;
            }
            for &w in &orbit {
                seen[w] = true;
            }
            let g = action.representative(v).clone();
            match CosetDigraph::on_action(action.clone(), &g) {
                Ok(d) => {
                    for &w in d.in_neighbors_of_base() {
                        seen[w] = true;
                    }
                    out.push(BatteryInstance {
                        label: format!("{name} H#{ci} (order {}) suborbit {v}", h.order()),
                        digraph: d,
                    });
                }
                Err(Error::NotADigraph { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}
