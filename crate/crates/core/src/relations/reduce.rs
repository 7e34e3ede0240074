use std::collections::BTreeSet;

use super::{all_relations, Closure, Reach, Relation, RelationSet};
use crate::error::{Error, Result};
use crate::tableau::{Tableau, TriIndex};

/// Drops every edge implied by a path of length at least two through the
/// remaining set (with a strict step when the edge is strict). On acyclic
/// sets this yields the unique minimal equivalent subset; unsatisfiable
/// (cyclic) sets are returned unchanged.
pub fn reduce(c: &RelationSet) -> Result<RelationSet> {
    if !c.is_noncritical() {
        return Err(Error::CriticalSet);
    }
    let cl = c.closure();
    if cl.cycle().is_some() {
        return Ok(c.clone());
    }
    Ok(c.restricted(|e| !redundant(&cl, e)))
}

fn redundant(cl: &Closure, e: &Relation) -> bool {
    cl.vertices().iter().any(|m| {
        if *m == e.greater || *m == e.lesser {
            return false;
        }
        let a = cl.reach(&e.greater, m);
        let b = cl.reach(m, &e.lesser);
        a != Reach::None && b != Reach::None && (!e.strict || a == Reach::Strict || b == Reach::Strict)
    })
}

/// The literal conditions of a reduced set: at most one relation of each
/// direction class at every triple, and no implied top-row relation.
pub fn is_reduced(c: &RelationSet) -> bool {
    if !c.is_noncritical() {
        return false;
    }
    let n = c.pyramid().n();
    for t in c.vertices() {
        let count = |f: &dyn Fn(&Relation) -> bool| c.edges().iter().filter(|e| f(e)).count();
        let classes = [
            count(&|e| !e.strict && e.lesser == t && e.greater.i == t.i + 1),
            count(&|e| e.strict && e.greater == t && e.lesser.i == t.i + 1),
            count(&|e| !e.strict && e.greater == t && e.lesser.i + 1 == t.i),
            count(&|e| e.strict && e.lesser == t && e.greater.i + 1 == t.i),
        ];
        if classes.iter().any(|&k| k > 1) {
            return false;
        }
    }
    let cl = c.closure();
    !c.edges()
        .iter()
        .any(|e| e.greater.i == n && e.lesser.i == n && redundant(&cl, e))
}

/// Removes every relation incident to an extremal triple `t`.
pub fn rr_remove(c: &RelationSet, t: &TriIndex) -> Result<RelationSet> {
    if !c.vertices().contains(t) {
        return Err(Error::NotExtremal(*t));
    }
    let maximal = !c.edges().iter().any(|e| e.lesser == *t);
    let minimal = !c.edges().iter().any(|e| e.greater == *t);
    if !maximal && !minimal {
        return Err(Error::NotExtremal(*t));
    }
    Ok(c.restricted(|e| e.greater != *t && e.lesser != *t))
}

/// Every tableau satisfying `c1` satisfies `c2`.
pub fn implies(c1: &RelationSet, c2: &RelationSet) -> bool {
    let cl = c1.closure();
    if cl.cycle().is_some() {
        return true;
    }
    let edges_ok = c2.edges().iter().all(|e| {
        if e.strict {
            cl.gt(&e.greater, &e.lesser)
        } else {
            cl.geq(&e.greater, &e.lesser)
        }
    });
    if !edges_ok {
        return false;
    }
    // Entries linked by c1 below the top row must stay in one c2-component.
    let n = c1.pyramid().n();
    let m1 = c1.component_map();
    let m2 = c2.component_map();
    let ts: Vec<(&TriIndex, &usize)> = m1.iter().filter(|(t, _)| t.i < n).collect();
    for (x, (a, ca)) in ts.iter().enumerate() {
        for (b, cb) in &ts[x + 1..] {
            if a.i == b.i && ca == cb {
                match (m2.get(a), m2.get(b)) {
                    (Some(p), Some(q)) if p == q => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// The reduced set of all relations of `R` held by `l`. Equal top-row
/// entries are related in one direction only (lesser position first).
pub fn maximal_set(l: &Tableau) -> Result<RelationSet> {
    let p = l.pyramid();
    if !l.is_noncritical() {
        let row = (1..p.n())
            .find(|&r| {
                let range = p.row_range(r);
                range
                    .clone()
                    .any(|a| range.clone().any(|b| b != a && l.int_diff(a, b) == Some(0)))
            })
            .unwrap_or(0);
        return Err(Error::Critical { row });
    }
    let n = p.n();
    let mut held = BTreeSet::new();
    for e in all_relations(p) {
        let g = p.index_of(&e.greater)?;
        let s = p.index_of(&e.lesser)?;
        let Some(d) = l.int_diff(g, s) else {
            continue;
        };
        if d < i64::from(e.strict) {
            continue;
        }
        if e.greater.i == n && e.lesser.i == n && d == 0 && e.greater > e.lesser {
            continue;
        }
        held.insert(e);
    }
    let c = RelationSet::new(p.clone(), held)?;
    let comp = c.component_map();
    for r in 1..n {
        let range = p.row_range(r);
        for a in range.clone() {
            for b in range.clone().filter(|&b| b > a) {
                if l.linked(a, b) {
                    let ca = comp.get(&p.cells()[a]);
                    if ca.is_none() || ca != comp.get(&p.cells()[b]) {
                        return Err(Error::NotRealizable { row: r });
                    }
                }
            }
        }
    }
    reduce(&c)
}
