//! Floor diagrams: weighted oriented trees with divergence-2 and
//! divergence-4 vertices and weighted legs.
//!
//! Vertices, edges, and legs are index-addressed. Edges are oriented
//! `src -> dst`; legs are always oriented toward the vertex they attach to.
//! The struct is immutable after construction, so values can be shared
//! freely across worker threads.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Div2,
    Div4,
}

impl VertexKind {
    pub fn target_divergence(self) -> i64 {
        match self {
            VertexKind::Div2 => 2,
            VertexKind::Div4 => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub weight: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Leg {
    pub vertex: usize,
    pub weight: i64,
}

/// Malformed references or ids; raised at construction, not validation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructuralError {
    #[error("edge {edge} references unknown vertex id {vertex}")]
    DanglingEdgeVertex { edge: usize, vertex: usize },
    #[error("leg {leg} references unknown vertex id {vertex}")]
    DanglingLegVertex { leg: usize, vertex: usize },
    #[error("unknown vertex id {0}")]
    UnknownVertex(usize),
    #[error("duplicate vertex id {0} in serialized diagram")]
    DuplicateVertexId(u32),
}

/// A named rule of the floor diagram definition that failed to hold.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("edge {0} has non-positive weight")]
    NonPositiveEdgeWeight(usize),
    #[error("leg {0} has non-positive weight")]
    NonPositiveLegWeight(usize),
    #[error("underlying graph is not a connected tree ({vertices} vertices, {edges} edges)")]
    NotATree { vertices: usize, edges: usize },
    #[error("orientation contains a directed cycle")]
    OrientedCycle,
    #[error("vertex {vertex} has divergence {divergence}, expected {expected}")]
    DivergenceMismatch {
        vertex: usize,
        divergence: i64,
        expected: i64,
    },
    #[error("divergence-2 vertex {vertex} has an outgoing edge")]
    Div2WithOutgoingEdge { vertex: usize },
    #[error("edge {edge} joins two divergence-2 vertices")]
    Div2Div2Edge { edge: usize },
    #[error("total leg weight {total} is odd, cannot equal 2d")]
    OddTotalLegWeight { total: i64 },
    #[error("total leg weight {total} gives degree < 1")]
    ZeroDegree { total: i64 },
    #[error("|V2| + 2|V4| = {floors} but degree is {degree}")]
    FloorCountMismatch { floors: i64, degree: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FloorDiagram {
    vertices: Vec<VertexKind>,
    edges: Vec<Edge>,
    legs: Vec<Leg>,
}

impl FloorDiagram {
    pub fn new(
        vertices: Vec<VertexKind>,
        edges: Vec<Edge>,
        legs: Vec<Leg>,
    ) -> Result<Self, StructuralError> {
        let n = vertices.len();
        for (i, e) in edges.iter().enumerate() {
            if e.src >= n {
                return Err(StructuralError::DanglingEdgeVertex {
                    edge: i,
                    vertex: e.src,
                });
            }
            if e.dst >= n {
                return Err(StructuralError::DanglingEdgeVertex {
                    edge: i,
                    vertex: e.dst,
                });
            }
        }
        for (i, l) in legs.iter().enumerate() {
            if l.vertex >= n {
                return Err(StructuralError::DanglingLegVertex {
                    leg: i,
                    vertex: l.vertex,
                });
            }
        }
        Ok(FloorDiagram {
            vertices,
            edges,
            legs,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.vertices[v]
    }

    pub fn vertices(&self) -> &[VertexKind] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn legs_at(&self, v: usize) -> impl Iterator<Item = (usize, &Leg)> {
        self.legs
            .iter()
            .enumerate()
            .filter(move |(_, l)| l.vertex == v)
    }

    pub fn edges_at(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.src == v || e.dst == v)
    }

    /// Degree of the diagram: half the total leg weight.
    pub fn degree(&self) -> i64 {
        self.legs.iter().map(|l| l.weight).sum::<i64>() / 2
    }

    /// Incoming weight (edges oriented toward `v` plus all legs at `v`)
    /// minus outgoing edge weight.
    pub fn divergence(&self, v: usize) -> Result<i64, StructuralError> {
        if v >= self.vertices.len() {
            return Err(StructuralError::UnknownVertex(v));
        }
        let mut div = 0;
        for e in &self.edges {
            if e.dst == v {
                div += e.weight;
            }
            if e.src == v {
                div -= e.weight;
            }
        }
        for l in &self.legs {
            if l.vertex == v {
                div += l.weight;
            }
        }
        Ok(div)
    }

    /// Checks every rule of the definition and reports all failures.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.weight <= 0 {
                violations.push(Violation::NonPositiveEdgeWeight(i));
            }
        }
        for (i, l) in self.legs.iter().enumerate() {
            if l.weight <= 0 {
                violations.push(Violation::NonPositiveLegWeight(i));
            }
        }

        let n = self.vertices.len();
        let connected = n > 0 && {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for (_, e) in self.edges_at(v) {
                    let w = if e.src == v { e.dst } else { e.src };
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        let is_tree = connected && self.edges.len() + 1 == n;
        if !is_tree {
            violations.push(Violation::NotATree {
                vertices: n,
                edges: self.edges.len(),
            });
        }

        // Automatic on a tree, but asserted anyway: Kahn peeling of sources.
        if is_tree && self.has_oriented_cycle() {
            violations.push(Violation::OrientedCycle);
        }

        for v in 0..n {
            let div = self.divergence(v).expect("vertex in range");
            let expected = self.vertices[v].target_divergence();
            if div != expected {
                violations.push(Violation::DivergenceMismatch {
                    vertex: v,
                    divergence: div,
                    expected,
                });
            }
            if self.vertices[v] == VertexKind::Div2 && self.edges.iter().any(|e| e.src == v) {
                violations.push(Violation::Div2WithOutgoingEdge { vertex: v });
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if self.vertices[e.src] == VertexKind::Div2 && self.vertices[e.dst] == VertexKind::Div2
            {
                violations.push(Violation::Div2Div2Edge { edge: i });
            }
        }

        let total: i64 = self.legs.iter().map(|l| l.weight).sum();
        if total % 2 != 0 {
            violations.push(Violation::OddTotalLegWeight { total });
        } else if total < 2 {
            violations.push(Violation::ZeroDegree { total });
        } else {
            let degree = total / 2;
            let v2 = self
                .vertices
                .iter()
                .filter(|k| **k == VertexKind::Div2)
                .count() as i64;
            let v4 = n as i64 - v2;
            if v2 + 2 * v4 != degree {
                violations.push(Violation::FloorCountMismatch {
                    floors: v2 + 2 * v4,
                    degree,
                });
            }
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    fn has_oriented_cycle(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for e in &self.edges {
            indeg[e.dst] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = queue.pop() {
            removed += 1;
            for e in &self.edges {
                if e.src == v {
                    indeg[e.dst] -= 1;
                    if indeg[e.dst] == 0 {
                        queue.push(e.dst);
                    }
                }
            }
        }
        removed != n
    }

    /// Canonical byte key: equal keys iff the diagrams are isomorphic as
    /// weighted oriented trees with legs. Requires a valid (tree) diagram.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.canonical_encoding(None)
    }

    /// Canonical key of the diagram with legs colored by `colors`
    /// (one byte per leg; isomorphisms must preserve colors).
    pub fn canonical_key_colored(&self, colors: &[u8]) -> Vec<u8> {
        assert_eq!(colors.len(), self.legs.len());
        self.canonical_encoding(Some(colors))
    }

    fn canonical_encoding(&self, colors: Option<&[u8]>) -> Vec<u8> {
        (0..self.vertices.len())
            .map(|root| self.encode_rooted(root, usize::MAX, colors))
            .min()
            .expect("diagram has at least one vertex")
    }

    fn encode_rooted(&self, v: usize, parent: usize, colors: Option<&[u8]>) -> Vec<u8> {
        let mut out = Vec::new();
        out.push(self.vertices[v].target_divergence() as u8);

        let mut legs: Vec<(i64, u8)> = self
            .legs_at(v)
            .map(|(i, l)| (l.weight, colors.map_or(0, |c| c[i])))
            .collect();
        legs.sort_unstable();
        out.extend_from_slice(&(legs.len() as u32).to_le_bytes());
        for (w, color) in legs {
            out.extend_from_slice(&(w as u32).to_le_bytes());
            out.push(color);
        }

        let mut children: Vec<Vec<u8>> = Vec::new();
        for (_, e) in self.edges_at(v) {
            let other = if e.src == v { e.dst } else { e.src };
            if other == parent {
                continue;
            }
            let mut entry = Vec::new();
            entry.extend_from_slice(&(e.weight as u32).to_le_bytes());
            entry.push(if e.src == v { 0 } else { 1 });
            entry.extend_from_slice(&self.encode_rooted(other, v, colors));
            children.push(entry);
        }
        children.sort();
        out.extend_from_slice(&(children.len() as u32).to_le_bytes());
        for c in children {
            out.extend_from_slice(&(c.len() as u32).to_le_bytes());
            out.extend_from_slice(&c);
        }
        out
    }

    /// Rewrites the diagram with canonical vertex/edge/leg numbering.
    /// Isomorphic diagrams relabel to identical structs.
    pub fn to_canonical(&self) -> FloorDiagram {
        self.to_canonical_colored(None).0
    }

    /// Canonical relabeling carrying per-leg colors along.
    pub fn to_canonical_colored(&self, colors: Option<&[u8]>) -> (FloorDiagram, Vec<u8>) {
        let best_root = (0..self.vertices.len())
            .min_by_key(|&r| self.encode_rooted(r, usize::MAX, colors))
            .expect("diagram has at least one vertex");

        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        let mut legs = Vec::new();
        let mut out_colors = Vec::new();
        self.rebuild(
            best_root,
            usize::MAX,
            colors,
            &mut vertices,
            &mut edges,
            &mut legs,
            &mut out_colors,
        );
        let rebuilt = FloorDiagram {
            vertices,
            edges,
            legs,
        };
        (rebuilt, out_colors)
    }

    #[allow(clippy::too_many_arguments)]
    fn rebuild(
        &self,
        v: usize,
        parent: usize,
        colors: Option<&[u8]>,
        vertices: &mut Vec<VertexKind>,
        edges: &mut Vec<Edge>,
        legs: &mut Vec<Leg>,
        out_colors: &mut Vec<u8>,
    ) -> usize {
        let new_id = vertices.len();
        vertices.push(self.vertices[v]);

        let mut my_legs: Vec<(i64, u8)> = self
            .legs_at(v)
            .map(|(i, l)| (l.weight, colors.map_or(0, |c| c[i])))
            .collect();
        my_legs.sort_unstable();
        for (w, color) in my_legs {
            legs.push(Leg {
                vertex: new_id,
                weight: w,
            });
            out_colors.push(color);
        }

        let mut children: Vec<(Vec<u8>, usize, bool, i64)> = Vec::new();
        for (_, e) in self.edges_at(v) {
            let other = if e.src == v { e.dst } else { e.src };
            if other == parent {
                continue;
            }
            let mut entry = Vec::new();
            entry.extend_from_slice(&(e.weight as u32).to_le_bytes());
            entry.push(if e.src == v { 0 } else { 1 });
            entry.extend_from_slice(&self.encode_rooted(other, v, colors));
            children.push((entry, other, e.src == v, e.weight));
        }
        children.sort();
        for (_, child, outgoing, w) in children {
            let slot = edges.len();
            edges.push(Edge {
                src: 0,
                dst: 0,
                weight: w,
            });
            let child_id = self.rebuild(child, v, colors, vertices, edges, legs, out_colors);
            edges[slot] = if outgoing {
                Edge {
                    src: new_id,
                    dst: child_id,
                    weight: w,
                }
            } else {
                Edge {
                    src: child_id,
                    dst: new_id,
                    weight: w,
                }
            };
        }
        new_id
    }

    /// Vertex permutations preserving kinds, weighted oriented edges, and
    /// per-vertex leg weight multisets (legs themselves are handled as
    /// interchangeable within a (vertex, weight) class).
    pub fn skeleton_automorphisms(&self) -> Vec<Vec<usize>> {
        self.skeleton_automorphisms_with(|_| 0u8)
    }

    /// Skeleton automorphisms constrained to preserve extra per-vertex data.
    pub fn skeleton_automorphisms_with<T: Ord>(
        &self,
        vertex_data: impl Fn(usize) -> T,
    ) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let profile = |v: usize| {
            let mut legs: Vec<i64> = self.legs_at(v).map(|(_, l)| l.weight).collect();
            legs.sort_unstable();
            (self.vertices[v], legs)
        };
        let profiles: Vec<_> = (0..n).map(profile).collect();

        let mut result = Vec::new();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend_skeleton(
            0,
            &mut perm,
            &mut used,
            &profiles,
            &vertex_data,
            &mut result,
        );
        result
    }

    fn extend_skeleton<T: Ord>(
        &self,
        v: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        profiles: &[(VertexKind, Vec<i64>)],
        vertex_data: &impl Fn(usize) -> T,
        result: &mut Vec<Vec<usize>>,
    ) {
        let n = self.vertices.len();
        if v == n {
            result.push(perm.clone());
            return;
        }
        'candidates: for w in 0..n {
            if used[w] || profiles[v] != profiles[w] || vertex_data(v) != vertex_data(w) {
                continue;
            }
            // every already-mapped edge incident to v must map to an edge
            for e in &self.edges {
                let (a, b) = (e.src, e.dst);
                let touches = |x: usize| x == v || (x < v && perm[x] != usize::MAX);
                if touches(a) && touches(b) && a.max(b) <= v {
                    let ia = if a == v { w } else { perm[a] };
                    let ib = if b == v { w } else { perm[b] };
                    let ok = self
                        .edges
                        .iter()
                        .any(|f| f.src == ia && f.dst == ib && f.weight == e.weight);
                    if !ok {
                        continue 'candidates;
                    }
                }
            }
            perm[v] = w;
            used[w] = true;
            self.extend_skeleton(v + 1, perm, used, profiles, vertex_data, result);
            perm[v] = usize::MAX;
            used[w] = false;
        }
    }

    /// The full automorphism group: kind-, weight-, and orientation-
    /// preserving permutations of vertices together with leg permutations.
    /// The group is returned in factored form and enumerated lazily; it can
    /// be astronomically large, so callers should prefer [`Automorphisms::order`]
    /// over collecting.
    pub fn automorphisms(&self) -> Automorphisms<'_> {
        let skeletons = self.skeleton_automorphisms();
        // legs grouped by (vertex, weight); class members are interchangeable
        let mut classes: BTreeMap<(usize, i64), Vec<usize>> = BTreeMap::new();
        for (i, l) in self.legs.iter().enumerate() {
            classes.entry((l.vertex, l.weight)).or_default().push(i);
        }
        Automorphisms {
            diagram: self,
            skeletons,
            leg_classes: classes.into_iter().collect(),
        }
    }

    pub(crate) fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.src == a && e.dst == b) || (e.src == b && e.dst == a))
    }

    /// Maps each edge index through a vertex permutation.
    pub(crate) fn edge_map_under(&self, vertex_map: &[usize]) -> Vec<usize> {
        self.edges
            .iter()
            .map(|e| {
                self.edge_between(vertex_map[e.src], vertex_map[e.dst])
                    .expect("automorphism maps edges to edges")
            })
            .collect()
    }

    /// Partial order on vertices, edges, and legs by reachability of the
    /// orientation (an edge or leg sits below its head and above its tail),
    /// restricted to `V4 U E U nu_legs`.
    pub fn marking_poset(&self, nu_legs: &BTreeSet<usize>) -> Poset {
        let nv = self.vertices.len();
        let ne = self.edges.len();
        let nl = self.legs.len();
        let total = nv + ne + nl;
        // node numbering: vertices, then edges, then legs
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.src].push(nv + i);
            adj[nv + i].push(e.dst);
        }
        for (i, l) in self.legs.iter().enumerate() {
            adj[nv + ne + i].push(l.vertex);
        }

        let mut reach = vec![vec![false; total]; total];
        for (start, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![start];
            row[start] = true;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !row[y] {
                        row[y] = true;
                        stack.push(y);
                    }
                }
            }
        }

        let mut elements = Vec::new();
        for v in 0..nv {
            if self.vertices[v] == VertexKind::Div4 {
                elements.push(PosetElement::Vertex(v));
            }
        }
        for e in 0..ne {
            elements.push(PosetElement::Edge(e));
        }
        for &l in nu_legs {
            assert!(l < nl, "nu leg index out of range");
            elements.push(PosetElement::Leg(l));
        }

        let node_of = |el: &PosetElement| match *el {
            PosetElement::Vertex(v) => v,
            PosetElement::Edge(e) => nv + e,
            PosetElement::Leg(l) => nv + ne + l,
        };
        let m = elements.len();
        let mut le = vec![vec![false; m]; m];
        for i in 0..m {
            for j in 0..m {
                le[i][j] = reach[node_of(&elements[i])][node_of(&elements[j])];
            }
        }
        Poset { elements, le }
    }
}

/// Lazily enumerable automorphism group of a diagram.
pub struct Automorphisms<'a> {
    diagram: &'a FloorDiagram,
    skeletons: Vec<Vec<usize>>,
    leg_classes: Vec<((usize, i64), Vec<usize>)>,
}

/// One group element: compatible vertex, edge, and leg permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramAutomorphism {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub leg_map: Vec<usize>,
}

impl<'a> Automorphisms<'a> {
    pub fn order(&self) -> u64 {
        let legs: u64 = self
            .leg_classes
            .iter()
            .map(|(_, members)| factorial(members.len() as u64))
            .product();
        self.skeletons.len() as u64 * legs
    }

    pub fn skeletons(&self) -> &[Vec<usize>] {
        &self.skeletons
    }

    /// Iterates every group element. The identity comes first.
    pub fn iter(&self) -> impl Iterator<Item = DiagramAutomorphism> + '_ {
        self.skeletons.iter().flat_map(move |sigma| {
            let edge_map = self.diagram.edge_map_under(sigma);
            LegMapIter::new(self.diagram, sigma, &self.leg_classes).map(move |leg_map| {
                DiagramAutomorphism {
                    vertex_map: sigma.clone(),
                    edge_map: edge_map.clone(),
                    leg_map,
                }
            })
        })
    }
}

/// Odometer over per-class bijections of legs compatible with one skeleton
/// automorphism.
struct LegMapIter {
    // for each class: (source members, target members)
    classes: Vec<(Vec<usize>, Vec<usize>)>,
    // current permutation index per class, counting in factorial base
    counters: Vec<usize>,
    sizes: Vec<usize>,
    n_legs: usize,
    done: bool,
}

impl LegMapIter {
    fn new(
        diagram: &FloorDiagram,
        sigma: &[usize],
        leg_classes: &[((usize, i64), Vec<usize>)],
    ) -> Self {
        let lookup: BTreeMap<(usize, i64), &Vec<usize>> = leg_classes
            .iter()
            .map(|((v, w), members)| ((*v, *w), members))
            .collect();
        let mut classes = Vec::new();
        let mut sizes = Vec::new();
        for ((v, w), members) in leg_classes {
            let target = lookup
                .get(&(sigma[*v], *w))
                .expect("skeleton automorphism preserves leg classes");
            classes.push((members.clone(), (*target).clone()));
            sizes.push(factorial(members.len() as u64) as usize);
        }
        LegMapIter {
            counters: vec![0; classes.len()],
            classes,
            sizes,
            n_legs: diagram.legs().len(),
            done: false,
        }
    }
}

impl Iterator for LegMapIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let mut map = vec![usize::MAX; self.n_legs];
        for (ci, (src, dst)) in self.classes.iter().enumerate() {
            let perm = nth_permutation(dst.len(), self.counters[ci]);
            for (i, &s) in src.iter().enumerate() {
                map[s] = dst[perm[i]];
            }
        }
        // increment odometer
        let mut i = 0;
        loop {
            if i == self.counters.len() {
                self.done = true;
                break;
            }
            self.counters[i] += 1;
            if self.counters[i] < self.sizes[i] {
                break;
            }
            self.counters[i] = 0;
            i += 1;
        }
        Some(map)
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product::<u64>().max(1)
}

/// Decodes `index` (factorial base) into the `index`-th permutation of
/// `0..n` in lexicographic order.
fn nth_permutation(n: usize, mut index: usize) -> Vec<usize> {
    let mut items: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let f = factorial(k as u64 - 1) as usize;
        let pick = index / f;
        index %= f;
        out.push(items.remove(pick));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PosetElement {
    Vertex(usize),
    Edge(usize),
    Leg(usize),
}

/// Finite poset with an explicit reachability relation.
#[derive(Debug, Clone)]
pub struct Poset {
    pub elements: Vec<PosetElement>,
    le: Vec<Vec<bool>>,
}

impl Poset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `elements[i] <= elements[j]` in the restricted order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn index_of(&self, el: PosetElement) -> Option<usize> {
        self.elements.iter().position(|e| *e == el)
    }

    /// Strict predecessors of `j` as indices.
    pub fn below(&self, j: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i != j && self.le[i][j])
    }
}

impl fmt::Display for FloorDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices[")?;
        for (i, k) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "{i}:{}",
                if *k == VertexKind::Div2 { "d2" } else { "d4" }
            )?;
        }
        write!(f, "] edges[")?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}-{}w{}", e.src, e.dst, e.weight)?;
        }
        write!(f, "] legs[")?;
        for (i, l) in self.legs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}w{}", l.vertex, l.weight)?;
        }
        write!(f, "]")
    }
}

// --- serialization: {vertices:[{id,kind}], edges:[{src,dst,w}], legs:[{v,w}]} ---

#[derive(Serialize, Deserialize)]
struct RawVertex {
    id: u32,
    kind: VertexKind,
}

#[derive(Serialize, Deserialize)]
struct RawEdge {
    src: u32,
    dst: u32,
    w: i64,
}

#[derive(Serialize, Deserialize)]
struct RawLeg {
    v: u32,
    w: i64,
}

#[derive(Serialize, Deserialize)]
struct RawDiagram {
    vertices: Vec<RawVertex>,
    edges: Vec<RawEdge>,
    legs: Vec<RawLeg>,
}

impl Serialize for FloorDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawDiagram {
            vertices: self
                .vertices
                .iter()
                .enumerate()
                .map(|(i, k)| RawVertex {
                    id: i as u32,
                    kind: *k,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    src: e.src as u32,
                    dst: e.dst as u32,
                    w: e.weight,
                })
                .collect(),
            legs: self
                .legs
                .iter()
                .map(|l| RawLeg {
                    v: l.vertex as u32,
                    w: l.weight,
                })
                .collect(),
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FloorDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawDiagram::deserialize(deserializer)?;
        let mut index_of = BTreeMap::new();
        for (i, v) in raw.vertices.iter().enumerate() {
            if index_of.insert(v.id, i).is_some() {
                return Err(D::Error::custom(StructuralError::DuplicateVertexId(v.id)));
            }
        }
        let resolve = |id: u32| -> Result<usize, D::Error> {
            index_of
                .get(&id)
                .copied()
                .ok_or_else(|| D::Error::custom(StructuralError::UnknownVertex(id as usize)))
        };
        let vertices = raw.vertices.iter().map(|v| v.kind).collect();
        let mut edges = Vec::with_capacity(raw.edges.len());
        for e in &raw.edges {
            edges.push(Edge {
                src: resolve(e.src)?,
                dst: resolve(e.dst)?,
                weight: e.w,
            });
        }
        let mut legs = Vec::with_capacity(raw.legs.len());
        for l in &raw.legs {
            legs.push(Leg {
                vertex: resolve(l.v)?,
                weight: l.w,
            });
        }
        FloorDiagram::new(vertices, edges, legs).map_err(D::Error::custom)
    }
}
