use std::collections::BTreeSet;
use std::sync::Arc;

use super::Digraph;
use crate::error::{Error, Result};
use crate::group::{FiniteAbelianGroup, Subgroup};

/// Largest fiber the deck-group search will attempt.
pub const DECK_FIBER_CAP: usize = 512;

/// An incidence-compatible map of digraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigraphMorphism {
    source: Arc<Digraph>,
    target: Arc<Digraph>,
    vertex_map: Vec<usize>,
    edge_map: Vec<usize>,
}

impl DigraphMorphism {
    pub fn new(
        source: Arc<Digraph>,
        target: Arc<Digraph>,
        vertex_map: Vec<usize>,
        edge_map: Vec<usize>,
    ) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() || edge_map.len() != source.edge_count() {
            return Err(Error::NotAMorphism(
                "map lengths do not match the source digraph".into(),
            ));
        }
        if let Some(v) = vertex_map.iter().position(|&w| w >= target.vertex_count()) {
            return Err(Error::NotAMorphism(format!("vertex {v} maps outside the target")));
        }
        if let Some(e) = edge_map.iter().position(|&w| w >= target.edge_count()) {
            return Err(Error::NotAMorphism(format!("edge {e} maps outside the target")));
        }
        for (e, &fe) in edge_map.iter().enumerate() {
            if vertex_map[source.origin(e)] != target.origin(fe)
                || vertex_map[source.target(e)] != target.target(fe)
            {
                return Err(Error::NotAMorphism(format!(
                    "edge {} is not sent compatibly to edge {}",
                    source.edge_name(e),
                    target.edge_name(fe)
                )));
            }
        }
        Ok(DigraphMorphism {
            source,
            target,
            vertex_map,
            edge_map,
        })
    }

    pub fn identity(d: Arc<Digraph>) -> Self {
        let vertex_map = (0..d.vertex_count()).collect();
        let edge_map = (0..d.edge_count()).collect();
        DigraphMorphism {
            source: d.clone(),
            target: d,
            vertex_map,
            edge_map,
        }
    }

    pub fn source(&self) -> &Digraph {
        &self.source
    }

    pub fn target(&self) -> &Digraph {
        &self.target
    }

    pub fn source_arc(&self) -> &Arc<Digraph> {
        &self.source
    }

    pub fn target_arc(&self) -> &Arc<Digraph> {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    pub fn edge_map(&self) -> &[usize] {
        &self.edge_map
    }

    /// Vertices of the source lying over `v`.
    pub fn fiber(&self, v: usize) -> Vec<usize> {
        (0..self.vertex_map.len())
            .filter(|&w| self.vertex_map[w] == v)
            .collect()
    }
}

/// True iff `f` is surjective on vertices and locally bijective on outgoing
/// and incoming edges.
pub fn check_cover(f: &DigraphMorphism) -> bool {
    let (y, x) = (f.source(), f.target());
    let mut hit = vec![false; x.vertex_count()];
    for &v in &f.vertex_map {
        hit[v] = true;
    }
    if hit.contains(&false) {
        return false;
    }
    let mut mark = vec![usize::MAX; x.edge_count()];
    let locally_bijective = |ys: &[usize], xs: &[usize], mark: &mut Vec<usize>, tag: usize| {
        if ys.len() != xs.len() {
            return false;
        }
        for &e in ys {
            let fe = f.edge_map[e];
            if mark[fe] == tag {
                return false;
            }
            mark[fe] = tag;
        }
        true
    };
    for w in 0..y.vertex_count() {
        let v = f.vertex_map[w];
        if !locally_bijective(y.out_edges(w), x.out_edges(v), &mut mark, 2 * w) {
            return false;
        }
        if !locally_bijective(y.in_edges(w), x.in_edges(v), &mut mark, 2 * w + 1) {
            return false;
        }
    }
    true
}

/// A group acting on a digraph by permutations of vertices and edges.
///
/// `elements` is the (sorted) set of acting group elements, typically the whole
/// group or a subgroup; permutations are indexed by position in that list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteAbelianGroup,
    elements: Vec<usize>,
    vertex_perm: Vec<Vec<usize>>,
    edge_perm: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(
        group: FiniteAbelianGroup,
        elements: Vec<usize>,
        vertex_perm: Vec<Vec<usize>>,
        edge_perm: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if vertex_perm.len() != elements.len() || edge_perm.len() != elements.len() {
            return Err(Error::NotAnAction("one permutation per element required".into()));
        }
        let mut idx: Vec<usize> = (0..elements.len()).collect();
        idx.sort_by_key(|&k| elements[k]);
        if idx.windows(2).any(|w| elements[w[0]] == elements[w[1]]) {
            return Err(Error::NotAnAction("repeated group element".into()));
        }
        Ok(GroupAction {
            elements: idx.iter().map(|&k| elements[k]).collect(),
            vertex_perm: idx.iter().map(|&k| vertex_perm[k].clone()).collect(),
            edge_perm: idx.iter().map(|&k| edge_perm[k].clone()).collect(),
            group,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }

    pub fn act_vertex(&self, g: usize, v: usize) -> usize {
        self.vertex_perm[self.position(g).expect("acting element")][v]
    }

    pub fn act_edge(&self, g: usize, e: usize) -> usize {
        self.edge_perm[self.position(g).expect("acting element")][e]
    }

    /// Checks the action axioms against `d`.
    pub fn validate(&self, d: &Digraph) -> Result<()> {
        let (nv, ne) = (d.vertex_count(), d.edge_count());
        for (k, (vp, ep)) in self.vertex_perm.iter().zip(&self.edge_perm).enumerate() {
            if !is_permutation(vp, nv) || !is_permutation(ep, ne) {
                return Err(Error::NotAnAction(format!(
                    "element {:?} does not act by permutations",
                    self.group.to_vec(self.elements[k])
                )));
            }
            for e in 0..ne {
                if d.origin(ep[e]) != vp[d.origin(e)] || d.target(ep[e]) != vp[d.target(e)] {
                    return Err(Error::NotAnAction(format!(
                        "element {:?} does not preserve the incidence of edge {}",
                        self.group.to_vec(self.elements[k]),
                        d.edge_name(e)
                    )));
                }
            }
        }
        let Some(id) = self.position(self.group.identity()) else {
            return Err(Error::NotAnAction("identity is not among the acting elements".into()));
        };
        if self.vertex_perm[id].iter().enumerate().any(|(i, &j)| i != j)
            || self.edge_perm[id].iter().enumerate().any(|(i, &j)| i != j)
        {
            return Err(Error::NotAnAction("identity acts nontrivially".into()));
        }
        // phi(a + s) = phi(a) phi(s) for a generating set s suffices
        for s in self.generators() {
            let ps = self.position(s).unwrap();
            for (pa, &a) in self.elements.iter().enumerate() {
                let Some(pas) = self.position(self.group.add(a, s)) else {
                    return Err(Error::NotAnAction("acting elements are not closed".into()));
                };
                let vertex_ok = (0..nv).all(|v| {
                    self.vertex_perm[pas][v] == self.vertex_perm[pa][self.vertex_perm[ps][v]]
                });
                let edge_ok = (0..ne)
                    .all(|e| self.edge_perm[pas][e] == self.edge_perm[pa][self.edge_perm[ps][e]]);
                if !vertex_ok || !edge_ok {
                    return Err(Error::NotAnAction(format!(
                        "action is not compatible with composition at {:?} + {:?}",
                        self.group.to_vec(a),
                        self.group.to_vec(s)
                    )));
                }
            }
        }
        Ok(())
    }

    fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = Subgroup::trivial(&self.group);
        for &g in &self.elements {
            if !span.contains(g) {
                gens.push(g);
                span = Subgroup::generated_by(&self.group, &gens);
            }
        }
        gens
    }

    /// No nonidentity element fixes a vertex.
    pub fn is_vertex_free(&self) -> bool {
        self.elements.iter().zip(&self.vertex_perm).all(|(&g, vp)| {
            g == self.group.identity() || vp.iter().enumerate().all(|(i, &j)| i != j)
        })
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<GroupAction> {
        let mut vp = Vec::with_capacity(h.order());
        let mut ep = Vec::with_capacity(h.order());
        for &g in h.elements() {
            let Some(k) = self.position(g) else {
                return Err(Error::NotASubgroup(format!(
                    "{:?} does not act",
                    self.group.to_vec(g)
                )));
            };
            vp.push(self.vertex_perm[k].clone());
            ep.push(self.edge_perm[k].clone());
        }
        GroupAction::new(self.group.clone(), h.elements().to_vec(), vp, ep)
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in p {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Orbit digraph and the natural projection. Each orbit is represented by its
/// smallest member and orbits are ordered by representative.
pub fn quotient_digraph(d: &Arc<Digraph>, a: &GroupAction) -> Result<(Digraph, DigraphMorphism)> {
    a.validate(d)?;
    let orbit_reps = |n: usize, perms: &[Vec<usize>]| -> (Vec<usize>, Vec<usize>) {
        let mut rep = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if rep[x] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(x);
            for p in perms {
                rep[p[x]] = id;
            }
        }
        (rep, reps)
    };
    let (vclass, vreps) = orbit_reps(d.vertex_count(), &a.vertex_perm);
    let (eclass, ereps) = orbit_reps(d.edge_count(), &a.edge_perm);
    let names = vreps.iter().map(|&v| d.vertex_name(v).to_string()).collect();
    let edges = ereps
        .iter()
        .map(|&e| (d.edge_name(e), vclass[d.origin(e)], vclass[d.target(e)]))
        .collect();
    let q = Arc::new(Digraph::new(names, edges)?);
    let f = DigraphMorphism::new(d.clone(), q.clone(), vclass, eclass)?;
    Ok(((*q).clone(), f))
}

/// An automorphism of the source commuting with the cover.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeckTransformation {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl DeckTransformation {
    pub fn is_identity(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// All deck transformations, found by lifting from a base vertex.
/// The identity comes first.
pub fn deck_group(f: &DigraphMorphism) -> Result<Vec<DeckTransformation>> {
    if !check_cover(f) {
        return Err(Error::NotACover("morphism is not locally bijective".into()));
    }
    let y = f.source();
    if !y.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let w0 = 0;
    let fiber = f.fiber(f.vertex_map[w0]);
    if fiber.len() > DECK_FIBER_CAP {
        return Err(Error::FiberTooLarge {
            size: fiber.len(),
            cap: DECK_FIBER_CAP,
        });
    }
    let xe = f.target().edge_count();
    // lift[w * |E_X| + eps] = the out-edge of w over eps
    let mut lift = vec![usize::MAX; y.vertex_count() * xe];
    for w in 0..y.vertex_count() {
        for &e in y.out_edges(w) {
            lift[w * xe + f.edge_map[e]] = e;
        }
    }
    let mut out = Vec::new();
    for &cand in &fiber {
        if let Some(t) = extend_lift(f, &lift, w0, cand) {
            out.push(t);
        }
    }
    Ok(out)
}

fn extend_lift(f: &DigraphMorphism, lift: &[usize], w0: usize, image: usize) -> Option<DeckTransformation> {
    let y = f.source();
    let xe = f.target().edge_count();
    let mut vmap = vec![usize::MAX; y.vertex_count()];
    let mut emap = vec![usize::MAX; y.edge_count()];
    vmap[w0] = image;
    let mut stack = vec![w0];
    while let Some(w) = stack.pop() {
        let w_img = vmap[w];
        for &e in y.out_edges(w) {
            let e_img = lift[w_img * xe + f.edge_map[e]];
            emap[e] = e_img;
            let (t, t_img) = (y.target(e), y.target(e_img));
            if vmap[t] == usize::MAX {
                vmap[t] = t_img;
                stack.push(t);
            } else if vmap[t] != t_img {
                return None;
            }
        }
    }
    let distinct: BTreeSet<usize> = vmap.iter().copied().collect();
    if distinct.len() != vmap.len() {
        return None;
    }
    Some(DeckTransformation {
        vertex_map: vmap,
        edge_map: emap,
    })
}

/// True iff the deck group acts transitively on every vertex fiber.
pub fn is_galois(f: &DigraphMorphism) -> Result<bool> {
    let deck = deck_group(f)?;
    for w in 0..f.source().vertex_count() {
        let orbit: BTreeSet<usize> = deck.iter().map(|t| t.vertex_map[w]).collect();
        if orbit.len() != f.fiber(f.vertex_map[w]).len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn worked_example() -> (Arc<Digraph>, Arc<Digraph>, DigraphMorphism) {
        // Y: two loops at each vertex and one edge each way; X: three loops
        let y = Arc::new(
            Digraph::from_edges(2, vec![(0, 0), (0, 0), (1, 1), (1, 1), (0, 1), (1, 0)]).unwrap(),
        );
        let x = Arc::new(Digraph::bouquet(3));
        let f = DigraphMorphism::new(y.clone(), x.clone(), vec![0, 0], vec![0, 1, 0, 1, 2, 2])
            .unwrap();
        (y, x, f)
    }

    #[test]
    fn worked_example_is_a_galois_double_cover() {
        let (y, _, f) = worked_example();
        assert!(check_cover(&f));
        let deck = deck_group(&f).unwrap();
        assert_eq!(deck.len(), 2);
        assert!(deck[0].is_identity());
        assert_eq!(deck[1].vertex_map, vec![1, 0]);
        assert!(is_galois(&f).unwrap());
        assert!(check_cover(&DigraphMorphism::identity(y)));
    }

    #[test]
    fn non_covers_are_detected() {
        let (y, x, _) = worked_example();
        let g = DigraphMorphism::new(y, x, vec![0, 0], vec![0, 0, 0, 1, 1, 1]).unwrap();
        assert!(!check_cover(&g));
        assert!(matches!(deck_group(&g), Err(Error::NotACover(_))));
    }

    #[test]
    fn incompatible_maps_are_rejected() {
        let y = Arc::new(Digraph::from_edges(2, vec![(0, 1)]).unwrap());
        let z = Arc::new(Digraph::from_edges(2, vec![(0, 1)]).unwrap());
        let bad = DigraphMorphism::new(y, z, vec![1, 0], vec![0]);
        assert!(matches!(bad, Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn swap_action_quotient() {
        let (y, _, _) = worked_example();
        let g = FiniteAbelianGroup::cyclic(2);
        let a = GroupAction::new(
            g,
            vec![0, 1],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1, 2, 3, 4, 5], vec![2, 3, 0, 1, 5, 4]],
        )
        .unwrap();
        assert!(a.is_vertex_free());
        let (q, proj) = quotient_digraph(&y, &a).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert_eq!(q.edge_count(), 3);
        assert!(check_cover(&proj));
    }

    #[test]
    fn broken_actions_are_rejected() {
        let (y, _, _) = worked_example();
        let g = FiniteAbelianGroup::cyclic(2);
        let a = GroupAction::new(
            g,
            vec![0, 1],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1, 2, 3, 4, 5], vec![0, 1, 2, 3, 5, 4]],
        )
        .unwrap();
        assert!(matches!(quotient_digraph(&y, &a), Err(Error::NotAnAction(_))));
    }
}
