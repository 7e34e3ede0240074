//! Relation sets `C ⊆ R` between tableau triples, as digraphs with strict and
//! non-strict edges, and the combinatorial decision procedures on them.

mod admissible;
mod reduce;

pub use admissible::{
    has_cross, in_f, is_admissible, is_pre_admissible, normalizations, AdmissibilityVerdict,
    Certificate, Cross, FWitness,
};
pub use reduce::{implies, is_reduced, maximal_set, reduce, rr_remove};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pyramid::Pyramid;
use crate::tableau::{Tableau, TriIndex};

/// `greater ≥ lesser`, or `greater > lesser` when `strict`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Relation {
    pub greater: TriIndex,
    pub lesser: TriIndex,
    pub strict: bool,
}

impl Relation {
    pub fn geq(greater: TriIndex, lesser: TriIndex) -> Self {
        Relation {
            greater,
            lesser,
            strict: false,
        }
    }

    pub fn gt(greater: TriIndex, lesser: TriIndex) -> Self {
        Relation {
            greater,
            lesser,
            strict: true,
        }
    }

    /// Checks membership in `R = R_1 ∪ R_2` for the pyramid.
    pub fn validate(&self, p: &Pyramid) -> Result<()> {
        for t in [self.greater, self.lesser] {
            if !p.contains(&t) {
                return Err(Error::InvalidTriple(t));
            }
        }
        let (g, l) = (self.greater, self.lesser);
        let bad = |reason: &str| Error::InvalidRelation {
            greater: g,
            lesser: l,
            reason: reason.to_string(),
        };
        if self.strict {
            if l.i != g.i + 1 {
                return Err(bad("a strict relation must point from row i to row i+1"));
            }
        } else if g.i == p.n() && l.i == p.n() {
            if g.j == l.j {
                return Err(bad("top-row relations need different positions"));
            }
        } else if g.i != l.i + 1 {
            return Err(bad("a non-strict relation must point from row i to row i-1"));
        }
        Ok(())
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.strict { ">" } else { "≥" };
        write!(f, "{}{}{}", self.greater, op, self.lesser)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationSet {
    pyramid: Pyramid,
    edges: BTreeSet<Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub triples: BTreeSet<TriIndex>,
    pub edges: BTreeSet<Relation>,
}

/// Reachability of one triple from another along edges of a set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Reach {
    None,
    Weak,
    Strict,
}

/// Transitive closure `(⪰_C, ≻_C)` of a relation set.
#[derive(Clone, Debug)]
pub struct Closure {
    verts: Vec<TriIndex>,
    index: HashMap<TriIndex, usize>,
    reach: Vec<Vec<Reach>>,
}

impl Closure {
    pub fn new<'a>(edges: impl IntoIterator<Item = &'a Relation>) -> Self {
        let edges: Vec<&Relation> = edges.into_iter().collect();
        let verts: Vec<TriIndex> = edges
            .iter()
            .flat_map(|e| [e.greater, e.lesser])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<TriIndex, usize> =
            verts.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let m = verts.len();
        let mut reach = vec![vec![Reach::None; m]; m];
        for e in &edges {
            let r = if e.strict { Reach::Strict } else { Reach::Weak };
            let cell = &mut reach[index[&e.greater]][index[&e.lesser]];
            *cell = (*cell).max(r);
        }
        for k in 0..m {
            for a in 0..m {
                if reach[a][k] == Reach::None {
                    continue;
                }
                for b in 0..m {
                    if reach[k][b] == Reach::None {
                        continue;
                    }
                    let r = if reach[a][k] == Reach::Strict || reach[k][b] == Reach::Strict {
                        Reach::Strict
                    } else {
                        Reach::Weak
                    };
                    if r > reach[a][b] {
                        reach[a][b] = r;
                    }
                }
            }
        }
        Closure {
            verts,
            index,
            reach,
        }
    }

    pub fn vertices(&self) -> &[TriIndex] {
        &self.verts
    }

    pub fn reach(&self, a: &TriIndex, b: &TriIndex) -> Reach {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&x), Some(&y)) => self.reach[x][y],
            _ => Reach::None,
        }
    }

    /// `a ⪰_C b`
    pub fn geq(&self, a: &TriIndex, b: &TriIndex) -> bool {
        self.reach(a, b) != Reach::None
    }

    /// `a ≻_C b`
    pub fn gt(&self, a: &TriIndex, b: &TriIndex) -> bool {
        self.reach(a, b) == Reach::Strict
    }

    /// A triple lying on a cycle, if any; cycles force `x ≻ x`.
    pub fn cycle(&self) -> Option<TriIndex> {
        (0..self.verts.len())
            .find(|&a| self.reach[a][a] != Reach::None)
            .map(|a| self.verts[a])
    }
}

impl RelationSet {
    pub fn new(pyramid: Pyramid, edges: impl IntoIterator<Item = Relation>) -> Result<Self> {
        let edges: BTreeSet<Relation> = edges.into_iter().collect();
        for e in &edges {
            e.validate(&pyramid)?;
        }
        let n = pyramid.n();
        let top = Closure::new(edges.iter().filter(|e| e.greater.i == n && e.lesser.i == n));
        if top.cycle().is_some() {
            return Err(Error::TopRowLoop);
        }
        Ok(RelationSet { pyramid, edges })
    }

    pub fn empty(pyramid: Pyramid) -> Self {
        RelationSet {
            pyramid,
            edges: BTreeSet::new(),
        }
    }

    /// The standard set `S`: `(k,r+1,i) ≥ (k,r,i) > (k,r+1,i+1)` for every layer.
    pub fn standard(pyramid: Pyramid) -> Self {
        let mut edges = BTreeSet::new();
        for r in 1..pyramid.n() {
            for i in 1..=r {
                for k in 1..=pyramid.p(i) {
                    let here = TriIndex::new(k, r, i);
                    edges.insert(Relation::geq(TriIndex::new(k, r + 1, i), here));
                    edges.insert(Relation::gt(here, TriIndex::new(k, r + 1, i + 1)));
                }
            }
        }
        RelationSet { pyramid, edges }
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn edges(&self) -> &BTreeSet<Relation> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn with_edges(&self, edges: impl IntoIterator<Item = Relation>) -> Result<Self> {
        RelationSet::new(self.pyramid.clone(), edges)
    }

    /// Subset of the current edges; inherits their validity.
    pub(crate) fn restricted(&self, keep: impl Fn(&Relation) -> bool) -> Self {
        RelationSet {
            pyramid: self.pyramid.clone(),
            edges: self.edges.iter().filter(|e| keep(e)).copied().collect(),
        }
    }

    /// `V(C)`: endpoints of edges.
    pub fn vertices(&self) -> BTreeSet<TriIndex> {
        self.edges
            .iter()
            .flat_map(|e| [e.greater, e.lesser])
            .collect()
    }

    pub fn closure(&self) -> Closure {
        Closure::new(&self.edges)
    }

    /// Connected components, ordered by their least triple.
    pub fn decompose(&self) -> Vec<Component> {
        let verts: Vec<TriIndex> = self.vertices().into_iter().collect();
        let index: HashMap<TriIndex, usize> =
            verts.iter().enumerate().map(|(i, t)| (*t, i)).collect();
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut y = x;
            while parent[y] != r {
                let next = parent[y];
                parent[y] = r;
                y = next;
            }
            r
        }
        for e in &self.edges {
            let a = find(&mut parent, index[&e.greater]);
            let b = find(&mut parent, index[&e.lesser]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Component> = BTreeMap::new();
        for (i, t) in verts.iter().enumerate() {
            let root = find(&mut parent, i);
            groups
                .entry(root)
                .or_insert_with(|| Component {
                    triples: BTreeSet::new(),
                    edges: BTreeSet::new(),
                })
                .triples
                .insert(*t);
        }
        for e in &self.edges {
            let root = find(&mut parent, index[&e.greater]);
            groups.get_mut(&root).unwrap().edges.insert(*e);
        }
        let mut comps: Vec<Component> = groups.into_values().collect();
        comps.sort_by_key(|c| *c.triples.iter().next().unwrap());
        comps
    }

    /// Component label for every vertex of `V(C)`.
    pub fn component_map(&self) -> BTreeMap<TriIndex, usize> {
        self.decompose()
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| comp.triples.iter().map(move |t| (*t, c)))
            .collect()
    }

    /// Every edge holds with integer differences, and entries of a row below
    /// the top differ by an integer only inside one component.
    pub fn satisfies(&self, l: &Tableau) -> bool {
        let p = &self.pyramid;
        if l.pyramid() != p {
            return false;
        }
        for e in &self.edges {
            let g = p.index_of(&e.greater).unwrap();
            let s = p.index_of(&e.lesser).unwrap();
            match l.int_diff(g, s) {
                Some(d) if d >= i64::from(e.strict) => {}
                _ => return false,
            }
        }
        let comp = self.component_map();
        for r in 1..p.n() {
            let range = p.row_range(r);
            for a in range.clone() {
                for b in range.clone().filter(|&b| b > a) {
                    if !l.linked(a, b) {
                        continue;
                    }
                    let ca = comp.get(&p.cells()[a]);
                    let cb = comp.get(&p.cells()[b]);
                    if ca.is_none() || ca != cb {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No satisfying tableau has two equal entries in a row below the top:
    /// inside each component every such pair is strictly ordered by `≻_C`.
    pub fn is_noncritical(&self) -> bool {
        self.critical_pair().is_none()
    }

    /// A same-row pair (below the top row) of one component that some
    /// satisfying tableau can make equal.
    pub fn critical_pair(&self) -> Option<(TriIndex, TriIndex)> {
        let n = self.pyramid.n();
        for comp in self.decompose() {
            let cl = Closure::new(&comp.edges);
            let ts: Vec<&TriIndex> = comp.triples.iter().collect();
            for (x, a) in ts.iter().enumerate() {
                for b in &ts[x + 1..] {
                    if a.i == b.i && a.i < n && !cl.gt(a, b) && !cl.gt(b, a) {
                        return Some((**a, **b));
                    }
                }
            }
        }
        None
    }

    /// Relabels the triples of row `row` by `sigma`, a bijection of its `(k, j)` slots.
    pub fn permute(&self, row: usize, sigma: &BTreeMap<(usize, usize), (usize, usize)>) -> Result<Self> {
        let p = &self.pyramid;
        if row == 0 || row > p.n() {
            return Err(Error::BadPermutation(row));
        }
        let slots: BTreeSet<(usize, usize)> = p
            .row_range(row)
            .map(|idx| p.cells()[idx].slot())
            .collect();
        let image: BTreeSet<(usize, usize)> = sigma.values().copied().collect();
        let domain: BTreeSet<(usize, usize)> = sigma.keys().copied().collect();
        if !domain.is_subset(&slots) || image != domain {
            return Err(Error::BadPermutation(row));
        }
        let map = |t: TriIndex| -> TriIndex {
            if t.i != row {
                return t;
            }
            match sigma.get(&t.slot()) {
                Some(&(k, j)) => TriIndex::new(k, row, j),
                None => t,
            }
        };
        self.with_edges(self.edges.iter().map(|e| Relation {
            greater: map(e.greater),
            lesser: map(e.lesser),
            strict: e.strict,
        }))
    }

    /// Applies a triple relabelling that preserves rows.
    pub fn relabel(&self, map: &BTreeMap<TriIndex, TriIndex>) -> Result<Self> {
        self.with_edges(self.relabelled(map).edges)
    }

    /// Image under a row-preserving relabelling. The image may relate two
    /// top-row triples of one position, which lies outside `R`.
    pub(crate) fn relabelled(&self, map: &BTreeMap<TriIndex, TriIndex>) -> Self {
        let f = |t: TriIndex| map.get(&t).copied().unwrap_or(t);
        RelationSet {
            pyramid: self.pyramid.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Relation {
                    greater: f(e.greater),
                    lesser: f(e.lesser),
                    strict: e.strict,
                })
                .collect(),
        }
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (x, e) in self.edges.iter().enumerate() {
            if x > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Every relation of `R` for the pyramid, in a fixed order.
pub fn all_relations(p: &Pyramid) -> Vec<Relation> {
    let mut out = Vec::new();
    let cells = p.cells();
    for g in cells {
        for l in cells {
            for strict in [false, true] {
                let e = Relation {
                    greater: *g,
                    lesser: *l,
                    strict,
                };
                if e.validate(p).is_ok() {
                    out.push(e);
                }
            }
        }
    }
    out.sort();
    out
}
