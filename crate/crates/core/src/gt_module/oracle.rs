use std::collections::BTreeMap;

use serde::Serialize;

use super::verify::{verify_defining_relations, VerificationReport, VerifyOptions, Violation};
use crate::error::{Error, Result};
use crate::relations::{Closure, RelationSet};
use crate::tableau::Tableau;

/// Outcome of the defining-relation admissibility oracle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub passed: bool,
    pub seeds: usize,
    pub reason: Option<String>,
    pub violation: Option<Violation>,
}

impl OracleVerdict {
    fn fail(seeds: usize, reason: String) -> Self {
        OracleVerdict {
            passed: false,
            seeds,
            reason: Some(reason),
            violation: None,
        }
    }
}

/// Longest-path potential with edge weights `strict + slack`, or `None` if
/// the constraints are infeasible.
fn potential(c: &RelationSet, slack: i64) -> Option<BTreeMap<usize, i64>> {
    let p = c.pyramid();
    let edges: Vec<(usize, usize, i64)> = c
        .edges()
        .iter()
        .map(|e| {
            (
                p.index_of(&e.greater).unwrap(),
                p.index_of(&e.lesser).unwrap(),
                i64::from(e.strict) + slack,
            )
        })
        .collect();
    let mut x: BTreeMap<usize, i64> = edges.iter().flat_map(|&(g, l, _)| [(g, 0), (l, 0)]).collect();
    for _ in 0..=x.len() {
        let mut changed = false;
        for &(g, l, w) in &edges {
            let need = x[&l] + w;
            if x[&g] < need {
                x.insert(g, need);
                changed = true;
            }
        }
        if !changed {
            return Some(x);
        }
    }
    None
}

/// Symbolic seed tableaux realizing `C`: one generic class per component,
/// one per isolated cell, offsets from the tight potential and two slack
/// variants. Empty when `C` is infeasible.
pub fn oracle_seeds(c: &RelationSet) -> Result<Vec<Tableau>> {
    let p = c.pyramid();
    if Closure::new(c.edges()).cycle().is_some() {
        return Ok(Vec::new());
    }
    let comp = c.component_map();
    let ncomp = comp.values().max().map_or(0, |m| m + 1);
    let mut classes = Vec::with_capacity(p.num_cells());
    let mut next = ncomp;
    for t in p.cells() {
        match comp.get(t) {
            Some(&k) => classes.push(k),
            None => {
                classes.push(next);
                next += 1;
            }
        }
    }
    let mut seeds = Vec::new();
    for slack in 0..3 {
        let Some(x) = potential(c, slack) else {
            continue;
        };
        let offsets: Vec<i64> = (0..p.num_cells()).map(|i| x.get(&i).copied().unwrap_or(0)).collect();
        let l = Tableau::symbolic(p.clone(), &classes, &offsets)?;
        if c.satisfies(&l) && !seeds.contains(&l) {
            seeds.push(l);
        }
    }
    Ok(seeds)
}

/// Decides admissibility from the defining relations alone: the module of
/// every seed must pass the verifier.
pub fn admissibility_oracle(c: &RelationSet, opts: &VerifyOptions) -> Result<OracleVerdict> {
    if let Some((a, b)) = c.critical_pair() {
        return Ok(OracleVerdict::fail(0, format!("critical pair {a}, {b}")));
    }
    let seeds = oracle_seeds(c)?;
    if seeds.is_empty() {
        return Ok(OracleVerdict::fail(0, "no tableau satisfies the relations".into()));
    }
    for (k, l) in seeds.iter().enumerate() {
        let report: VerificationReport = match verify_defining_relations(c, l, opts) {
            Ok(r) => r,
            Err(Error::Critical { row }) => {
                return Ok(OracleVerdict::fail(k + 1, format!("critical tableau in row {row}")));
            }
            Err(e) => return Err(e),
        };
        if !report.passed {
            return Ok(OracleVerdict {
                passed: false,
                seeds: k + 1,
                reason: Some("defining relation violated".into()),
                violation: report.first_violation,
            });
        }
    }
    Ok(OracleVerdict {
        passed: true,
        seeds: seeds.len(),
        reason: None,
        violation: None,
    })
}
