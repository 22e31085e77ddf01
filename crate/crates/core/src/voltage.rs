//! Voltage assignments, derived digraphs and the equivariant zeta function.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::character::{character_l, Character};
use crate::cyclotomic::CyclotomicNumber;
use crate::digraph::{Digraph, DigraphFile, DigraphMorphism, GroupAction};
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, Subgroup};
use crate::group_ring::{GroupRingElement, GroupRingPolynomial};
use crate::ring::{self, Poly, Ring};

/// A labelling of the edges of a base digraph by elements of a finite abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VoltageAssignment {
    base: Arc<Digraph>,
    group: Arc<FiniteAbelianGroup>,
    labels: Vec<usize>,
}

impl VoltageAssignment {
    pub fn new(base: Arc<Digraph>, group: Arc<FiniteAbelianGroup>, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != base.edge_count() {
            return Err(Error::Dimension(format!(
                "{} labels for {} edges",
                labels.len(),
                base.edge_count()
            )));
        }
        if let Some(e) = labels.iter().position(|&a| a >= group.order()) {
            return Err(Error::Dimension(format!("label of edge {e} is not a group element")));
        }
        Ok(VoltageAssignment {
            base,
            group,
            labels,
        })
    }

    /// Labels given as coordinate vectors over the cyclic factors.
    pub fn from_vectors(
        base: Arc<Digraph>,
        group: Arc<FiniteAbelianGroup>,
        labels: &[Vec<i64>],
    ) -> Result<Self> {
        let idx = labels
            .iter()
            .map(|v| group.from_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, group, idx)
    }

    /// Reads voltages from a parsed digraph file; every edge must carry one.
    pub fn from_file(file: &DigraphFile, group: Arc<FiniteAbelianGroup>) -> Result<Self> {
        let mut idx = Vec::with_capacity(file.voltages.len());
        for (k, v) in file.voltages.iter().enumerate() {
            let v = v.as_ref().ok_or_else(|| Error::Parse {
                position: format!("edges[{k}].voltage"),
                message: "missing voltage".into(),
            })?;
            idx.push(group.from_vec(v).map_err(|e| Error::Parse {
                position: format!("edges[{k}].voltage"),
                message: e.to_string(),
            })?);
        }
        Self::new(Arc::new(file.digraph.clone()), group, idx)
    }

    pub fn base(&self) -> &Arc<Digraph> {
        &self.base
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> usize {
        self.labels[e]
    }
}

/// The derived digraph `X(G, alpha)` with its projection to the base.
///
/// Vertex `(v, s)` has index `v |G| + s`, edge `(e, s)` has index `e |G| + s`.
#[derive(Clone, Debug)]
pub struct DerivedCover {
    pub digraph: Arc<Digraph>,
    pub projection: DigraphMorphism,
    voltage: VoltageAssignment,
}

impl DerivedCover {
    /// Left translation `t . (v, s) = (v, t s)` restricted to the given elements.
    pub fn action_of(&self, elements: &[usize]) -> GroupAction {
        let g = &self.voltage.group;
        let n = g.order();
        let (nv, ne) = (self.voltage.base.vertex_count(), self.voltage.base.edge_count());
        let translate = |count: usize, t: usize| -> Vec<usize> {
            (0..count * n)
                .map(|x| (x / n) * n + g.add(t, x % n))
                .collect()
        };
        let vp = elements.iter().map(|&t| translate(nv, t)).collect();
        let ep = elements.iter().map(|&t| translate(ne, t)).collect();
        GroupAction::new((**g).clone(), elements.to_vec(), vp, ep).expect("distinct elements")
    }

    /// The action of the whole group.
    pub fn action(&self) -> GroupAction {
        self.action_of(&(0..self.voltage.group.order()).collect::<Vec<_>>())
    }
}

fn element_label(g: &FiniteAbelianGroup, a: usize) -> String {
    g.to_vec(a)
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn derived_digraph(v: &VoltageAssignment) -> DerivedCover {
    let g = &v.group;
    let n = g.order();
    let base = &v.base;
    let names = (0..base.vertex_count())
        .flat_map(|x| (0..n).map(move |s| (x, s)))
        .map(|(x, s)| format!("({},{})", base.vertex_name(x), element_label(g, s)))
        .collect();
    let mut ends = Vec::with_capacity(base.edge_count() * n);
    for e in 0..base.edge_count() {
        let (o, t) = (base.origin(e), base.target(e));
        for s in 0..n {
            ends.push((o * n + s, t * n + g.add(s, v.labels[e])));
        }
    }
    let digraph = Arc::new(Digraph::with_anonymous_edges(names, ends).expect("valid incidence"));
    let vmap = (0..digraph.vertex_count()).map(|x| x / n).collect();
    let emap = (0..digraph.edge_count()).map(|x| x / n).collect();
    let projection = DigraphMorphism::new(digraph.clone(), base.clone(), vmap, emap)
        .expect("projection respects incidence");
    DerivedCover {
        digraph,
        projection,
        voltage: v.clone(),
    }
}

/// The subgroup generated by voltages of closed paths, computed from potentials
/// along an out-tree rooted at vertex 0.
pub fn closed_path_voltage_subgroup(v: &VoltageAssignment) -> Subgroup {
    let g = &v.group;
    let base = &v.base;
    let mut potential = vec![usize::MAX; base.vertex_count()];
    if base.vertex_count() == 0 {
        return Subgroup::trivial(g);
    }
    potential[0] = 0;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for &e in base.out_edges(x) {
            let t = base.target(e);
            if potential[t] == usize::MAX {
                potential[t] = g.add(potential[x], v.labels[e]);
                stack.push(t);
            }
        }
    }
    let gens: Vec<usize> = (0..base.edge_count())
        .filter(|&e| potential[base.origin(e)] != usize::MAX && potential[base.target(e)] != usize::MAX)
        .map(|e| {
            g.sub(
                g.add(potential[base.origin(e)], v.labels[e]),
                potential[base.target(e)],
            )
        })
        .collect();
    Subgroup::generated_by(g, &gens)
}

/// Strong connectivity of `X(G, alpha)`, cross-checked against the voltage subgroup.
pub fn derived_is_connected(v: &VoltageAssignment) -> Result<bool> {
    let direct = derived_digraph(v).digraph.is_strongly_connected();
    let via_group =
        v.base.is_strongly_connected() && closed_path_voltage_subgroup(v).order() == v.group.order();
    if direct != via_group {
        return Err(Error::Internal(format!(
            "derived connectivity {direct} disagrees with voltage subgroup test {via_group}"
        )));
    }
    Ok(direct)
}

/// `X(G, H, alpha)` on `V_X x (H\G)`, cosets ordered by minimal representative.
#[derive(Clone, Debug)]
pub struct IntermediateQuotient {
    pub digraph: Arc<Digraph>,
    pub subgroup: Subgroup,
    /// Cover `X(G, alpha) -> X(G, H, alpha)`.
    pub from_derived: DigraphMorphism,
    /// Cover `X(G, H, alpha) -> X`.
    pub to_base: DigraphMorphism,
}

pub fn intermediate_quotient(v: &VoltageAssignment, h: &Subgroup) -> Result<IntermediateQuotient> {
    if *h.group() != *v.group {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let g = &v.group;
    let n = g.order();
    let reps = h.coset_representatives();
    let coset = h.coset_index();
    let k = reps.len();
    let base = &v.base;
    let names = (0..base.vertex_count())
        .flat_map(|x| reps.iter().map(move |&r| (x, r)))
        .map(|(x, r)| format!("({},H+{})", base.vertex_name(x), element_label(g, r)))
        .collect();
    let mut ends = Vec::with_capacity(base.edge_count() * k);
    for e in 0..base.edge_count() {
        let (o, t) = (base.origin(e), base.target(e));
        for (c, &r) in reps.iter().enumerate() {
            ends.push((o * k + c, t * k + coset[g.add(r, v.labels[e])]));
        }
    }
    let digraph = Arc::new(Digraph::with_anonymous_edges(names, ends)?);
    let derived = derived_digraph(v);
    let vmap = (0..derived.digraph.vertex_count())
        .map(|x| (x / n) * k + coset[x % n])
        .collect();
    let emap = (0..derived.digraph.edge_count())
        .map(|x| (x / n) * k + coset[x % n])
        .collect();
    let from_derived = DigraphMorphism::new(derived.digraph.clone(), digraph.clone(), vmap, emap)?;
    let to_base = DigraphMorphism::new(
        digraph.clone(),
        base.clone(),
        (0..digraph.vertex_count()).map(|x| x / k).collect(),
        (0..digraph.edge_count()).map(|x| x / k).collect(),
    )?;
    Ok(IntermediateQuotient {
        digraph,
        subgroup: h.clone(),
        from_derived,
        to_base,
    })
}

/// `A_alpha` with entry `(i, j)` the sum of voltages of edges `v_j -> v_i`.
pub fn voltage_adjacency(v: &VoltageAssignment) -> Vec<Vec<GroupRingElement>> {
    let n = v.base.vertex_count();
    let mut a = vec![vec![GroupRingElement::zero(&v.group); n]; n];
    for e in 0..v.base.edge_count() {
        let (o, t) = (v.base.origin(e), v.base.target(e));
        a[t][o].add_term(v.labels[e], &BigInt::from(1));
    }
    a
}

/// `det(I - A_alpha u)` over `Z[G][u]`.
pub fn equivariant_zeta(v: &VoltageAssignment) -> Result<GroupRingPolynomial> {
    if !derived_is_connected(v)? {
        return Err(Error::NotStronglyConnected);
    }
    Ok(equivariant_zeta_unchecked(v))
}

pub(crate) fn equivariant_zeta_unchecked(v: &VoltageAssignment) -> GroupRingPolynomial {
    let a = voltage_adjacency(v);
    ring::reversed_char_poly(&a, &GroupRingElement::one(&v.group))
}

/// Equivariant zeta of a free action computed from the digraph itself: the
/// adjacency operator is expressed in a basis of orbit representatives.
pub fn equivariant_zeta_of_action(d: &Digraph, action: &GroupAction) -> Result<GroupRingPolynomial> {
    action.validate(d)?;
    if !action.is_vertex_free() {
        return Err(Error::NotAnAction("action is not free on vertices".into()));
    }
    let group = Arc::new(action.group().clone());
    let nv = d.vertex_count();
    // position[w] = (orbit index, element g with w = g . rep)
    let mut position = vec![(usize::MAX, 0usize); nv];
    let mut reps = Vec::new();
    for w in 0..nv {
        if position[w].0 != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(w);
        for &g in action.elements() {
            position[action.act_vertex(g, w)] = (id, g);
        }
    }
    let k = reps.len();
    let mut a = vec![vec![GroupRingElement::zero(&group); k]; k];
    for (j, &w) in reps.iter().enumerate() {
        for &e in d.out_edges(w) {
            let (i, g) = position[d.target(e)];
            a[i][j].add_term(g, &BigInt::from(1));
        }
    }
    Ok(ring::reversed_char_poly(&a, &GroupRingElement::one(&group)))
}

/// Action of `G/H` on `X(G, H, alpha)`, as a group action by the quotient group.
pub fn quotient_action(v: &VoltageAssignment, q: &IntermediateQuotient) -> GroupAction {
    let g = &v.group;
    let h = &q.subgroup;
    let qm = h.quotient();
    let reps = h.coset_representatives();
    let coset = h.coset_index();
    let k = reps.len();
    // one lift in G for every element of G/H
    let mut lift = vec![usize::MAX; qm.quotient.order()];
    for a in 0..g.order() {
        if lift[qm.map[a]] == usize::MAX {
            lift[qm.map[a]] = a;
        }
    }
    let translate = |count: usize, t: usize| -> Vec<usize> {
        (0..count * k)
            .map(|x| (x / k) * k + coset[g.add(t, reps[x % k])])
            .collect()
    };
    let (nv, ne) = (v.base.vertex_count(), v.base.edge_count());
    let elements: Vec<usize> = (0..qm.quotient.order()).collect();
    let vp = lift.iter().map(|&t| translate(nv, t)).collect();
    let ep = lift.iter().map(|&t| translate(ne, t)).collect();
    GroupAction::new(qm.quotient.clone(), elements, vp, ep).expect("distinct elements")
}

/// `N_Gamma`: the determinant of multiplication by `gamma` on `Z[G][u]` viewed as
/// a free `Z[H][u]`-module on the minimal coset representatives. The result lies
/// in `Z[G][u]` with support in `H`.
pub fn induction_norm(gamma: &GroupRingPolynomial, h: &Subgroup) -> Result<GroupRingPolynomial> {
    let zero = gamma.zero_coeff().clone();
    let group = zero.group().clone();
    if *h.group() != *group {
        return Err(Error::NotASubgroup("subgroup of a different group".into()));
    }
    let reps = h.coset_representatives();
    let coset = h.coset_index();
    let k = reps.len();
    let pzero = Poly::new(Vec::new(), zero.clone());
    let mut m: Vec<Vec<Vec<GroupRingElement>>> = vec![vec![vec![]; k]; k];
    let deg = gamma.coeffs().len();
    for row in m.iter_mut() {
        for cell in row.iter_mut() {
            *cell = vec![zero.clone(); deg];
        }
    }
    for (d, c) in gamma.coeffs().iter().enumerate() {
        for (j, &cj) in reps.iter().enumerate() {
            for (a, x) in c.coeffs().iter().enumerate() {
                if x == &BigInt::from(0) {
                    continue;
                }
                let s = group.add(a, cj);
                let i = coset[s];
                let hpart = group.sub(s, reps[i]);
                m[i][j][d].add_term(hpart, x);
            }
        }
    }
    let entries: Vec<Vec<Poly<GroupRingElement>>> = m
        .into_iter()
        .map(|row| row.into_iter().map(|c| Poly::new(c, zero.clone())).collect())
        .collect();
    Ok(ring::determinant(&entries, &pzero.rone()))
}

/// Coefficientwise image of `gamma` under `Z[G] -> Z[G/H]`.
pub fn inflation(gamma: &GroupRingPolynomial, h: &Subgroup) -> (Arc<FiniteAbelianGroup>, GroupRingPolynomial) {
    let q = h.quotient();
    let target = Arc::new(q.quotient.clone());
    let zero = GroupRingElement::zero(&target);
    (target.clone(), gamma.map(zero, |c| c.project(&q, &target)))
}

/// Outcome of checking `g_Y(u) = g_X(u) prod_{psi != 1} psi(gamma(u))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductDecomposition {
    pub holds: bool,
    pub trivial_character_gives_base: bool,
    pub r_y: usize,
    pub r_x: usize,
    /// `(character index, order of vanishing at u = 1)` for nontrivial characters.
    pub r_psi: Vec<(usize, usize)>,
    pub r_additive: bool,
    pub mismatch: Option<String>,
}

pub fn product_decomposition_check(v: &VoltageAssignment) -> Result<ProductDecomposition> {
    let derived = derived_digraph(v);
    let g_y = derived.digraph.adjacency_matrix().reversed_char_poly()?;
    let g_x = v.base.adjacency_matrix().reversed_char_poly()?;
    let gamma = equivariant_zeta(v)?;
    let chars = Character::all(&v.group);
    let field = chars[0].value_field();
    let lift = |p: &crate::poly::IntPoly| -> Poly<CyclotomicNumber> {
        let zero = CyclotomicNumber::integer(&field, BigInt::from(0));
        Poly::new(
            p.coeffs()
                .iter()
                .map(|c| CyclotomicNumber::integer(&field, c.clone()))
                .collect(),
            zero,
        )
    };
    let base_lifted = lift(&g_x);
    let mut product = base_lifted.clone();
    let mut r_psi = Vec::new();
    let mut trivial_ok = false;
    for psi in &chars {
        let l = character_l(&gamma, psi)?;
        if psi.is_trivial() {
            trivial_ok = l == base_lifted;
            continue;
        }
        let r = l
            .order_at_one()
            .ok_or_else(|| Error::Internal("an L-factor vanished identically".into()))?;
        r_psi.push((psi.index(), r));
        product = product.rmul(&l);
    }
    let lhs = lift(&g_y);
    let holds = lhs == product;
    let r_y = crate::poly::taylor_at_one(&g_y)?.order;
    let r_x = crate::poly::taylor_at_one(&g_x)?.order;
    let r_additive = r_y == r_x + r_psi.iter().map(|(_, r)| r).sum::<usize>();
    let mismatch = (!holds).then(|| {
        format!(
            "g_Y = {:?}, g_X * prod = {:?}",
            lhs.coeffs(),
            product.coeffs()
        )
    });
    Ok(ProductDecomposition {
        holds: holds && trivial_ok,
        trivial_character_gives_base: trivial_ok,
        r_y,
        r_x,
        r_psi,
        r_additive,
        mismatch,
    })
}
