//! The relation module `V_C([l])`: exact Gelfand-Tsetlin action on the lattice
//! of shifted tableaux, finite basis windows, the defining-relation verifier
//! and the irreducibility tests.

mod oracle;
mod verify;

pub use oracle::{admissibility_oracle, oracle_seeds, OracleVerdict};
pub use verify::{
    verify_defining_relations, verify_instantiation, FamilyReport, VerificationReport, VerifyOptions,
    Violation,
};

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{int, InvSeries, Scalar, UniPoly};
use crate::pyramid::Pyramid;
use crate::relations::{implies, maximal_set, RelationSet};
use crate::tableau::{Tableau, TableauDelta, TriIndex};

/// Sparse vector of `V_C([l])` keyed by shifts of the seed.
pub type ModuleVector = BTreeMap<TableauDelta, Scalar>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    D,
    DPrime,
    E,
    F,
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GenIndex {
    Superscript(usize),
    Formal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GeneratorSymbol {
    pub family: Family,
    pub row: usize,
    pub index: GenIndex,
}

impl GeneratorSymbol {
    pub fn new(family: Family, row: usize, t: usize) -> Self {
        GeneratorSymbol {
            family,
            row,
            index: GenIndex::Superscript(t),
        }
    }
}

/// Term of a raising or lowering operator: the target cell, the rational
/// prefactor, and the coefficient series in `u^{-1}`.
#[derive(Clone, Debug)]
pub(crate) struct ShiftTerm {
    pub cell: usize,
    pub ratio: Scalar,
    pub series: InvSeries,
}

/// The module for a relation set and an instantiated seed tableau. Operators
/// act on all of `B_C([l])`; tableaux violating `C` are zero.
#[derive(Clone, Debug)]
pub struct GtModule {
    relations: RelationSet,
    seed: Tableau,
    values: Vec<Scalar>,
    thresholds: Vec<(usize, usize, i64)>,
    order: usize,
}

impl GtModule {
    /// `order` is the truncation order of all series.
    pub fn new(relations: &RelationSet, seed: &Tableau, values: Vec<Scalar>, order: usize) -> Result<Self> {
        let p = relations.pyramid();
        if seed.pyramid() != p {
            return Err(Error::InvalidTableau("tableau and relation set use different pyramids".into()));
        }
        if !relations.satisfies(seed) {
            return Err(Error::SeedViolatesRelations);
        }
        let mut thresholds = Vec::new();
        for e in relations.edges() {
            let g = p.index_of(&e.greater)?;
            let l = p.index_of(&e.lesser)?;
            let d = seed.int_diff(g, l).expect("satisfied edges join linked entries");
            thresholds.push((g, l, i64::from(e.strict) - d));
        }
        Ok(GtModule {
            relations: relations.clone(),
            seed: seed.clone(),
            values,
            thresholds,
            order,
        })
    }

    /// Module with the tableau's own class values (pinned or generic for `seed`).
    pub fn instantiate(relations: &RelationSet, l: &Tableau, seed: u64, order: usize) -> Result<Self> {
        GtModule::new(relations, l, l.instantiate(seed), order)
    }

    pub fn pyramid(&self) -> &Pyramid {
        self.relations.pyramid()
    }

    pub fn relations(&self) -> &RelationSet {
        &self.relations
    }

    pub fn seed(&self) -> &Tableau {
        &self.seed
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn seed_values(&self) -> &[Scalar] {
        &self.values
    }

    /// `[l + z]` satisfies `C`.
    pub fn member(&self, z: &TableauDelta) -> bool {
        self.thresholds
            .iter()
            .all(|&(g, l, w)| z.0[g] - z.0[l] >= w)
    }

    pub fn values_at(&self, z: &TableauDelta) -> Vec<Scalar> {
        self.values
            .iter()
            .zip(&z.0)
            .map(|(v, &d)| if d == 0 { v.clone() } else { v + int(d) })
            .collect()
    }

    fn row(&self, r: usize) -> std::ops::Range<usize> {
        if r == 0 {
            0..0
        } else {
            self.pyramid().row_range(r)
        }
    }

    fn check_noncritical(&self, r: usize, vals: &[Scalar]) -> Result<()> {
        let range = self.row(r);
        for a in range.clone() {
            for b in range.clone().filter(|&b| b > a) {
                if vals[a] == vals[b] {
                    return Err(Error::Critical { row: r });
                }
            }
        }
        Ok(())
    }

    /// `A_r(u)` eigenvalue `Π (u + l_{ri}^{(k)})` on `[l + z]`.
    pub fn a_poly(&self, r: usize, z: &TableauDelta) -> UniPoly {
        let vals = self.values_at(z);
        UniPoly::from_shifts(self.row(r).map(|idx| &vals[idx]))
    }

    fn row_poly_shifted(&self, r: usize, vals: &[Scalar], s: &Scalar) -> UniPoly {
        UniPoly::from_shifts(self.row(r).map(|idx| &vals[idx])).shift_arg(s)
    }

    /// `d_r(u) = A_r(u + r − 1) / (u^{p_r} A_{r−1}(u + r − 1))` on `[l + z]`.
    pub fn d_series(&self, r: usize, z: &TableauDelta) -> Result<InvSeries> {
        let vals = self.values_at(z);
        let s = int(r as i64 - 1);
        let num = self.row_poly_shifted(r, &vals, &s);
        let den = &UniPoly::monomial(self.pyramid().p(r)) * &self.row_poly_shifted(r - 1, &vals, &s);
        InvSeries::from_rational(&num, &den, self.order)
    }

    /// `d'_r(u) = d_r(u)^{-1}`.
    pub fn dprime_series(&self, r: usize, z: &TableauDelta) -> Result<InvSeries> {
        self.d_series(r, z)?.inverse()
    }

    /// Terms of `e_r(u)` on `[l + z]`, before gating: target `z + δ_cell`.
    pub(crate) fn e_terms(&self, r: usize, z: &TableauDelta) -> Result<Vec<ShiftTerm>> {
        let vals = self.values_at(z);
        self.check_noncritical(r, &vals)?;
        let shift = int(r as i64 - 1);
        let gap = self.pyramid().p(r + 1) - self.pyramid().p(r);
        let mut out = Vec::new();
        for c in self.row(r) {
            let x = &vals[c];
            let mut ratio: Scalar = self.row(r + 1).map(|a| &vals[a] - x).product();
            let mut num = UniPoly::one();
            let mut den = UniPoly::monomial(gap);
            for o in self.row(r) {
                let sh = &vals[o] + &shift;
                if o == c {
                    den = &den * &UniPoly::linear(sh + int(1));
                } else {
                    ratio /= &vals[o] - x;
                    num = &num * &UniPoly::linear(sh.clone());
                    den = &den * &UniPoly::linear(sh);
                }
            }
            out.push(ShiftTerm {
                cell: c,
                ratio: -ratio,
                series: InvSeries::from_rational(&num, &den, self.order)?,
            });
        }
        Ok(out)
    }

    /// Terms of `f_r(u)` on `[l + z]`, before gating: target `z − δ_cell`.
    pub(crate) fn f_terms(&self, r: usize, z: &TableauDelta) -> Result<Vec<ShiftTerm>> {
        let vals = self.values_at(z);
        self.check_noncritical(r, &vals)?;
        let shift = int(r as i64 - 1);
        let mut out = Vec::new();
        for c in self.row(r) {
            let x = &vals[c];
            let mut ratio: Scalar = self.row(r - 1).map(|a| &vals[a] - x).product();
            let mut num = UniPoly::one();
            let mut den = UniPoly::one();
            for o in self.row(r) {
                let sh = &vals[o] + &shift;
                if o != c {
                    ratio /= &vals[o] - x;
                    num = &num * &UniPoly::linear(sh.clone());
                }
                den = &den * &UniPoly::linear(sh);
            }
            out.push(ShiftTerm {
                cell: c,
                ratio,
                series: InvSeries::from_rational(&num, &den, self.order)?,
            });
        }
        Ok(out)
    }

    /// `B_r(u0)` (raising) or `C_r(u0)` (lowering) on `[l + z]`, Φ-gated.
    pub fn bc_at(&self, r: usize, u0: &Scalar, family: Family, z: &TableauDelta) -> Result<Vec<(TableauDelta, Scalar)>> {
        let n = self.pyramid().n();
        let (other, sign, step) = match family {
            Family::B if r < n => (r + 1, -1, 1),
            Family::C if r < n && r >= 1 => (r - 1, 1, -1),
            _ => {
                return Err(Error::IndexOutOfRange(format!(
                    "{family:?}_{r} is not an operator on this pyramid"
                )))
            }
        };
        let vals = self.values_at(z);
        let mut out = Vec::new();
        for c in self.row(r) {
            let x = &vals[c];
            let numer: Vec<Scalar> = self.row(other).map(|a| &vals[a] - x).collect();
            let points: Vec<Scalar> = self.row(r).map(|a| vals[a].clone()).collect();
            let local = c - self.row(r).start;
            let ratio = crate::exact_arith::lagrange_coefficient(&points, local, &numer)
                .map_err(|_| Error::Critical { row: r })?;
            let interp: Scalar = self
                .row(r)
                .filter(|&o| o != c)
                .map(|o| u0 + &vals[o])
                .product();
            let coef = ratio * interp * int(sign);
            let target = z.bumped(c, step);
            if !coef.is_zero() && self.member(&target) {
                out.push((target, coef));
            }
        }
        Ok(out)
    }
}

/// A finite slice `{z : ‖z‖∞ ≤ radius, [l+z] satisfies C}` of the basis.
#[derive(Clone, Debug)]
pub struct BasisWindow {
    module: GtModule,
    radius: i64,
    members: Vec<TableauDelta>,
}

impl BasisWindow {
    pub fn new(module: GtModule, radius: i64) -> Self {
        let p = module.pyramid().clone();
        let free: Vec<usize> = (1..p.n()).flat_map(|r| p.row_range(r)).collect();
        let mut members = Vec::new();
        let mut z = TableauDelta::zero(&p);
        enumerate_box(&module, &free, 0, radius, &mut z, &mut members);
        members.sort();
        BasisWindow {
            module,
            radius,
            members,
        }
    }

    pub fn module(&self) -> &GtModule {
        &self.module
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn members(&self) -> &[TableauDelta] {
        &self.members
    }

    pub fn contains(&self, z: &TableauDelta) -> bool {
        z.norm() <= self.radius && self.module.member(z)
    }

    /// Members at distance at most `radius − 1` from the seed.
    pub fn interior(&self) -> Vec<TableauDelta> {
        self.members
            .iter()
            .filter(|z| z.norm() < self.radius)
            .cloned()
            .collect()
    }

    fn bounded(&self, z: TableauDelta, what: &str) -> Result<TableauDelta> {
        if z.norm() > self.radius {
            return Err(Error::WindowOverflow(format!(
                "{what} reaches a tableau outside the window of radius {}",
                self.radius
            )));
        }
        Ok(z)
    }

    /// Eigenvalues of `A_r(u)` on the window basis.
    pub fn act_a(&self, r: usize) -> Result<Vec<(TableauDelta, UniPoly)>> {
        if r == 0 || r > self.module.pyramid().n() {
            return Err(Error::IndexOutOfRange(format!("row {r}")));
        }
        Ok(self
            .members
            .iter()
            .map(|z| (z.clone(), self.module.a_poly(r, z)))
            .collect())
    }

    /// `B_r(u0) v` or `C_r(u0) v`.
    pub fn act_bc_at(&self, r: usize, u0: &Scalar, family: Family, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::new();
        for (z, a) in v {
            for (target, c) in self.module.bc_at(r, u0, family, z)? {
                let target = self.bounded(target, "B/C action")?;
                add_to(&mut out, target, a * c);
            }
        }
        Ok(out)
    }

    /// Action of one generator coefficient on a vector.
    pub fn act_series(&self, g: &GeneratorSymbol, v: &ModuleVector) -> Result<ModuleVector> {
        let p = self.module.pyramid();
        let n = p.n();
        let GenIndex::Superscript(t) = g.index else {
            return Err(Error::IndexOutOfRange("series generators need a superscript".into()));
        };
        let r = g.row;
        let in_range = match g.family {
            Family::D | Family::DPrime | Family::A | Family::B | Family::C => r >= 1 && r <= n,
            Family::E | Family::F => r >= 1 && r < n,
        };
        if !in_range {
            return Err(Error::IndexOutOfRange(format!("{:?}_{r}", g.family)));
        }
        if t > self.module.order {
            return Err(Error::IndexOutOfRange(format!(
                "superscript {t} exceeds the truncation order {}",
                self.module.order
            )));
        }
        if g.family == Family::E {
            let min = p.e_min_degree(r)?;
            if t < min {
                return Err(Error::SuperscriptTooSmall {
                    row: r,
                    superscript: t,
                    min,
                });
            }
        }
        let mut out = ModuleVector::new();
        for (z, a) in v {
            match g.family {
                Family::D | Family::DPrime => {
                    let s = if g.family == Family::D {
                        self.module.d_series(r, z)?
                    } else {
                        self.module.dprime_series(r, z)?
                    };
                    add_to(&mut out, z.clone(), a * s.coeff(t));
                }
                Family::A => {
                    let poly = self.module.a_poly(r, z);
                    let deg = p.row_len(r);
                    if t <= deg {
                        add_to(&mut out, z.clone(), a * poly.coeff(deg - t));
                    }
                }
                Family::E | Family::F => {
                    let (terms, step) = if g.family == Family::E {
                        (self.module.e_terms(r, z)?, 1)
                    } else {
                        (self.module.f_terms(r, z)?, -1)
                    };
                    for term in terms {
                        let target = z.bumped(term.cell, step);
                        let c = &term.ratio * term.series.coeff(t);
                        if c.is_zero() || !self.module.member(&target) {
                            continue;
                        }
                        let target = self.bounded(target, "generator action")?;
                        add_to(&mut out, target, a * c);
                    }
                }
                Family::B | Family::C => {
                    return Err(Error::IndexOutOfRange(
                        "use act_bc_at for B and C".into(),
                    ))
                }
            }
        }
        Ok(out)
    }
}

fn enumerate_box(
    m: &GtModule,
    free: &[usize],
    pos: usize,
    radius: i64,
    z: &mut TableauDelta,
    out: &mut Vec<TableauDelta>,
) {
    if pos == free.len() {
        if m.member(z) {
            out.push(z.clone());
        }
        return;
    }
    for d in -radius..=radius {
        z.0[free[pos]] = d;
        enumerate_box(m, free, pos + 1, radius, z, out);
    }
    z.0[free[pos]] = 0;
}

pub(crate) fn add_to(v: &mut ModuleVector, z: TableauDelta, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let entry = v.entry(z);
    match entry {
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

/// Basis window of radius `radius` around `l` for the relation set `c`.
pub fn enumerate_basis(c: &RelationSet, l: &Tableau, radius: i64, seed: u64, order: usize) -> Result<BasisWindow> {
    if !l.is_noncritical() {
        return Err(Error::Critical { row: 0 });
    }
    let m = GtModule::instantiate(c, l, seed, order)?;
    Ok(BasisWindow::new(m, radius))
}

/// The module is irreducible exactly when `C` is equivalent to the maximal
/// set of relations satisfied by `l`. Relations between two top-row triples
/// constrain nothing, since the top row is fixed.
pub fn is_irreducible(c: &RelationSet, l: &Tableau) -> Result<bool> {
    if !c.satisfies(l) {
        return Err(Error::SeedViolatesRelations);
    }
    let maximal = maximal_set(l)?;
    let n = l.pyramid().n();
    let top = maximal.edges().iter().filter(|e| e.greater.i == n && e.lesser.i == n);
    let widened = c.with_edges(c.edges().iter().chain(top).copied())?;
    Ok(implies(&widened, &maximal))
}

/// Window members hit from `z` by a raising or lowering generator with
/// superscript up to `budget`.
fn successors(w: &BasisWindow, z: &TableauDelta, budget: usize) -> Result<Vec<TableauDelta>> {
    let m = w.module();
    let p = m.pyramid();
    let mut targets = Vec::new();
    for r in 1..p.n() {
        let emin = p.e_min_degree(r)?;
        for (terms, step, lo) in [(m.e_terms(r, z)?, 1, emin), (m.f_terms(r, z)?, -1, 1)] {
            for term in terms {
                let target = z.bumped(term.cell, step);
                let hit = (lo..=budget.min(m.order())).any(|t| !(&term.ratio * term.series.coeff(t)).is_zero());
                if hit && w.contains(&target) {
                    targets.push(target);
                }
            }
        }
    }
    Ok(targets)
}

fn reach_from(
    start: &TableauDelta,
    mut next: impl FnMut(&TableauDelta) -> Result<Vec<TableauDelta>>,
) -> Result<BTreeSet<TableauDelta>> {
    let mut reached = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(z) = queue.pop_front() {
        for target in next(&z)? {
            if reached.insert(target.clone()) {
                queue.push_back(target);
            }
        }
    }
    Ok(reached)
}

/// Members reachable from `start` by the raising and lowering generators
/// with superscripts up to `budget`, staying inside the window. Summands of
/// one application have distinct Gelfand-Tsetlin characters, so each
/// nonzero summand is reachable on its own.
pub fn cyclicity_probe(w: &BasisWindow, start: &TableauDelta, budget: usize) -> Result<BTreeSet<TableauDelta>> {
    reach_from(start, |z| successors(w, z, budget))
}

/// Probe verdict: every interior member reaches every other interior member.
/// Returns the first unreachable `(from, to)` pair, if any.
pub fn probe_irreducible(w: &BasisWindow, budget: usize) -> Result<Option<(TableauDelta, TableauDelta)>> {
    let mut graph: BTreeMap<TableauDelta, Vec<TableauDelta>> = BTreeMap::new();
    for z in w.members() {
        graph.insert(z.clone(), successors(w, z, budget)?);
    }
    let step = |z: &TableauDelta| Ok(graph.get(z).cloned().unwrap_or_default());
    let interior = w.interior();
    for s in &interior {
        let reach = reach_from(s, step)?;
        if let Some(t) = interior.iter().find(|t| !reach.contains(*t)) {
            return Ok(Some((s.clone(), t.clone())));
        }
    }
    Ok(None)
}

/// Truncation order large enough for every relation with superscripts up to `budget`.
pub fn default_order(budget: usize) -> usize {
    2 * budget + 2
}

/// Default superscript budget: `max(3, largest minimal e-degree + 2)`.
pub fn default_budget(p: &Pyramid) -> usize {
    let emax = (1..p.n()).filter_map(|r| p.e_min_degree(r).ok()).max().unwrap_or(1);
    3.max(emax + 2)
}

/// Triple of a dense cell index.
pub fn cell_triple(p: &Pyramid, idx: usize) -> TriIndex {
    p.cells()[idx]
}
