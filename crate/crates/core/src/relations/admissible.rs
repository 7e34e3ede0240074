use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{reduce, Closure, Component, Relation, RelationSet};
use crate::tableau::TriIndex;

/// `{greater > upper_right, upper_left ≥ lesser}` with
/// `slot(greater) < slot(lesser)` and `slot(upper_left) < slot(upper_right)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cross {
    pub strict_edge: Relation,
    pub weak_edge: Relation,
}

/// Bridging relations for one adjoining pair `greater ≻ lesser` of a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FWitness {
    /// `greater > upper ≥ lesser` and `greater ≥ lower > lesser`.
    Bridged {
        greater: TriIndex,
        lesser: TriIndex,
        upper: TriIndex,
        lower: TriIndex,
    },
    /// `greater > upper_left ⪰ upper_right ≥ lesser` with `slot(upper_left) < slot(upper_right)`.
    Split {
        greater: TriIndex,
        lesser: TriIndex,
        upper_left: TriIndex,
        upper_right: TriIndex,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Normalized (row-relabelled) reduced set with 𝔉-witnesses for every adjoining pair.
    Admissible {
        relabelling: Vec<(TriIndex, TriIndex)>,
        normalized: Vec<Relation>,
        witnesses: Vec<FWitness>,
    },
    /// The relations force `triple > triple`; nothing satisfies the set.
    Cycle { triple: TriIndex },
    /// Two same-row triples of one component that can coincide.
    Critical { first: TriIndex, second: TriIndex },
    /// Every order-compatible relabelling of the component contains a cross.
    Cross {
        relabelling: Vec<(TriIndex, TriIndex)>,
        cross: Cross,
    },
    /// An adjoining pair without bridging relations.
    NotInF {
        relabelling: Vec<(TriIndex, TriIndex)>,
        greater: TriIndex,
        lesser: TriIndex,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub admissible: bool,
    pub certificate: Certificate,
}

fn has_edge(edges: &BTreeSet<Relation>, g: TriIndex, l: TriIndex, strict: bool) -> bool {
    edges.contains(&Relation {
        greater: g,
        lesser: l,
        strict,
    })
}

/// Lexicographically least cross among the literal edges.
pub fn has_cross(edges: &BTreeSet<Relation>) -> Option<Cross> {
    for s in edges.iter().filter(|e| e.strict) {
        for w in edges.iter().filter(|e| !e.strict) {
            let (g, t) = (s.greater, s.lesser);
            let (u, r) = (w.greater, w.lesser);
            if u.i == t.i && r.i == g.i && g.slot() < r.slot() && u.slot() < t.slot() {
                return Some(Cross {
                    strict_edge: *s,
                    weak_edge: *w,
                });
            }
        }
    }
    None
}

/// Same-row triples below the top of a component, greatest first.
fn row_chain(comp: &Component, cl: &Closure, row: usize) -> Vec<TriIndex> {
    let mut cells: Vec<TriIndex> = comp.triples.iter().filter(|t| t.i == row).copied().collect();
    cells.sort_by(|a, b| {
        if cl.gt(a, b) {
            std::cmp::Ordering::Less
        } else if cl.gt(b, a) {
            std::cmp::Ordering::Greater
        } else {
            a.cmp(b)
        }
    });
    cells
}

/// Checks the bridging condition for every adjoining pair of the component.
/// Returns the witnesses, or the first pair lacking them.
pub fn in_f(comp: &Component, n: usize) -> Result<Vec<FWitness>, (TriIndex, TriIndex)> {
    let cl = Closure::new(&comp.edges);
    let edges = &comp.edges;
    let mut out = Vec::new();
    for row in 1..n {
        let chain = row_chain(comp, &cl, row);
        for pair in chain.windows(2) {
            let (g, s) = (pair[0], pair[1]);
            let uppers: Vec<TriIndex> = comp.triples.iter().filter(|t| t.i == row + 1).copied().collect();
            let lowers: Vec<TriIndex> = comp.triples.iter().filter(|t| t.i + 1 == row).copied().collect();
            let up = uppers
                .iter()
                .find(|t| has_edge(edges, g, **t, true) && has_edge(edges, **t, s, false));
            let low = lowers
                .iter()
                .find(|t| has_edge(edges, g, **t, false) && has_edge(edges, **t, s, true));
            if let (Some(&upper), Some(&lower)) = (up, low) {
                out.push(FWitness::Bridged {
                    greater: g,
                    lesser: s,
                    upper,
                    lower,
                });
                continue;
            }
            let split = uppers.iter().find_map(|t1| {
                if !has_edge(edges, g, *t1, true) {
                    return None;
                }
                uppers
                    .iter()
                    .find(|t2| t1.slot() < t2.slot() && cl.geq(t1, t2) && has_edge(edges, **t2, s, false))
                    .map(|t2| (*t1, *t2))
            });
            match split {
                Some((upper_left, upper_right)) => out.push(FWitness::Split {
                    greater: g,
                    lesser: s,
                    upper_left,
                    upper_right,
                }),
                None => return Err((g, s)),
            }
        }
    }
    Ok(out)
}

/// Literal pre-admissibility: noncritical, rows ordered compatibly with the
/// lexicographic order of `(k, j)` slots, and no cross in the reduced set.
pub fn is_pre_admissible(c: &RelationSet) -> bool {
    if !c.is_noncritical() {
        return false;
    }
    let cl = c.closure();
    if cl.cycle().is_some() || !order_compatible(c, &cl) {
        return false;
    }
    let Ok(r) = reduce(c) else {
        return false;
    };
    r.decompose().iter().all(|comp| has_cross(&comp.edges).is_none())
}

fn order_compatible(c: &RelationSet, cl: &Closure) -> bool {
    let n = c.pyramid().n();
    let verts = cl.vertices();
    for a in verts {
        for b in verts {
            if a.i != b.i || a == b {
                continue;
            }
            let related = if a.i == n { cl.geq(a, b) } else { cl.gt(a, b) };
            if related && a.slot() >= b.slot() {
                return false;
            }
        }
    }
    true
}

/// Relabellings of a component's rows that make its closure order agree with
/// the slot order: rows below the top are forced, the top row ranges over the
/// linear extensions of `⪰` (all of them up to `limit`).
pub fn normalizations(comp: &Component, n: usize, limit: usize) -> Vec<BTreeMap<TriIndex, TriIndex>> {
    let cl = Closure::new(&comp.edges);
    let mut base = BTreeMap::new();
    for row in 1..n {
        assign(&mut base, &row_chain(comp, &cl, row), row);
    }
    let top: Vec<TriIndex> = comp.triples.iter().filter(|t| t.i == n).copied().collect();
    let mut exts = Vec::new();
    extensions(&top, &cl, &mut Vec::new(), &mut exts, limit);
    exts.into_iter()
        .map(|order| {
            let mut m = base.clone();
            assign(&mut m, &order, n);
            m
        })
        .collect()
}

fn assign(map: &mut BTreeMap<TriIndex, TriIndex>, order: &[TriIndex], row: usize) {
    let mut slots: Vec<(usize, usize)> = order.iter().map(TriIndex::slot).collect();
    slots.sort();
    for (t, (k, j)) in order.iter().zip(slots) {
        map.insert(*t, TriIndex::new(k, row, j));
    }
}

fn extensions(
    rest: &[TriIndex],
    cl: &Closure,
    prefix: &mut Vec<TriIndex>,
    out: &mut Vec<Vec<TriIndex>>,
    limit: usize,
) {
    if out.len() >= limit {
        return;
    }
    if rest.is_empty() {
        out.push(prefix.clone());
        return;
    }
    for (x, t) in rest.iter().enumerate() {
        if rest.iter().any(|o| o != t && cl.geq(o, t)) {
            continue;
        }
        let remaining: Vec<TriIndex> = rest
            .iter()
            .enumerate()
            .filter(|(y, _)| *y != x)
            .map(|(_, o)| *o)
            .collect();
        prefix.push(*t);
        extensions(&remaining, cl, prefix, out, limit);
        prefix.pop();
    }
}

const EXTENSION_LIMIT: usize = 5040;

/// Decides admissibility. A set is admissible when, after reduction, every
/// component has a slot-compatible row relabelling that is cross-free and
/// satisfies the bridging condition for all adjoining pairs.
pub fn is_admissible(c: &RelationSet) -> AdmissibilityVerdict {
    let fail = |certificate| AdmissibilityVerdict {
        admissible: false,
        certificate,
    };
    if let Some(triple) = c.closure().cycle() {
        return fail(Certificate::Cycle { triple });
    }
    if let Some((first, second)) = c.critical_pair() {
        return fail(Certificate::Critical { first, second });
    }
    let r = reduce(c).expect("noncritical set reduces");
    let n = c.pyramid().n();
    let mut relabelling = BTreeMap::new();
    let mut witnesses = Vec::new();
    for comp in r.decompose() {
        let mut cross_fail = None;
        let mut f_fail = None;
        let mut found = None;
        for sigma in normalizations(&comp, n, EXTENSION_LIMIT) {
            let relabelled = Component {
                triples: comp.triples.iter().map(|t| sigma[t]).collect(),
                edges: comp
                    .edges
                    .iter()
                    .map(|e| Relation {
                        greater: sigma[&e.greater],
                        lesser: sigma[&e.lesser],
                        strict: e.strict,
                    })
                    .collect(),
            };
            if let Some(x) = has_cross(&relabelled.edges) {
                cross_fail.get_or_insert((sigma.clone(), x));
                continue;
            }
            match in_f(&relabelled, n) {
                Ok(w) => {
                    found = Some((sigma, w));
                    break;
                }
                Err(pair) => {
                    f_fail.get_or_insert((sigma.clone(), pair));
                }
            }
        }
        match found {
            Some((sigma, w)) => {
                relabelling.extend(sigma);
                witnesses.extend(w);
            }
            None => {
                return fail(match (f_fail, cross_fail) {
                    (Some((sigma, (greater, lesser))), _) => Certificate::NotInF {
                        relabelling: moved(&sigma),
                        greater,
                        lesser,
                    },
                    (None, Some((sigma, cross))) => Certificate::Cross {
                        relabelling: moved(&sigma),
                        cross,
                    },
                    (None, None) => unreachable!("a component has at least one linear extension"),
                })
            }
        }
    }
    let normalized = r.relabelled(&relabelling);
    AdmissibilityVerdict {
        admissible: true,
        certificate: Certificate::Admissible {
            relabelling: moved(&relabelling),
            normalized: normalized.edges().iter().copied().collect(),
            witnesses,
        },
    }
}

fn moved(sigma: &BTreeMap<TriIndex, TriIndex>) -> Vec<(TriIndex, TriIndex)> {
    sigma
        .iter()
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (*a, *b))
        .collect()
}

impl AdmissibilityVerdict {
    /// Re-checks the certificate against `c`.
    pub fn revalidate(&self, c: &RelationSet) -> bool {
        let n = c.pyramid().n();
        let reduced = reduce(c);
        match &self.certificate {
            Certificate::Admissible {
                relabelling,
                normalized,
                ..
            } => {
                let Ok(r) = reduced else { return false };
                let map: BTreeMap<TriIndex, TriIndex> = relabelling.iter().copied().collect();
                let norm = r.relabelled(&map);
                self.admissible
                    && norm.edges().iter().copied().collect::<Vec<_>>() == *normalized
                    && is_pre_admissible(&norm)
                    && norm.decompose().iter().all(|k| in_f(k, n).is_ok())
            }
            Certificate::Cycle { triple } => !self.admissible && c.closure().gt(triple, triple),
            Certificate::Critical { first, second } => {
                let cl = c.closure();
                !self.admissible
                    && first.i == second.i
                    && !cl.gt(first, second)
                    && !cl.gt(second, first)
                    && c.component_map().get(first) == c.component_map().get(second)
            }
            Certificate::Cross { relabelling, cross } => {
                let Ok(r) = reduced else { return false };
                let map: BTreeMap<TriIndex, TriIndex> = relabelling.iter().copied().collect();
                let norm = r.relabelled(&map);
                !self.admissible
                    && norm.edges().contains(&cross.strict_edge)
                    && norm.edges().contains(&cross.weak_edge)
            }
            Certificate::NotInF {
                relabelling,
                greater,
                lesser,
            } => {
                let Ok(r) = reduced else { return false };
                let map: BTreeMap<TriIndex, TriIndex> = relabelling.iter().copied().collect();
                let norm = r.relabelled(&map);
                !self.admissible
                    && norm.decompose().iter().any(|k| in_f(k, n) == Err((*greater, *lesser)))
            }
        }
    }
}
