use std::collections::HashMap;
use std::rc::Rc;

use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{add_to, default_order, BasisWindow, GtModule, ModuleVector, ShiftTerm};
use crate::error::{Error, Result};
use crate::exact_arith::{format_scalar, int, InvSeries, Scalar};
use crate::relations::RelationSet;
use crate::tableau::{Tableau, TableauDelta, TriIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Op {
    D(usize, usize),
    DPrime(usize, usize),
    E(usize, usize),
    F(usize, usize),
}

impl std::fmt::Display for Op {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Op::D(r, t) => write!(f, "d{r}^({t})"),
            Op::DPrime(r, t) => write!(f, "d'{r}^({t})"),
            Op::E(r, t) => write!(f, "e{r}^({t})"),
            Op::F(r, t) => write!(f, "f{r}^({t})"),
        }
    }
}

/// A relation instance written as `Σ coef · word = 0`; words act right to left.
struct Instance {
    family: &'static str,
    label: String,
    terms: Vec<(i64, Vec<Op>)>,
}

impl Instance {
    fn new(family: &'static str, label: String) -> Self {
        Instance {
            family,
            label,
            terms: Vec::new(),
        }
    }

    fn term(&mut self, coef: i64, word: &[Op]) {
        let word: Vec<Op> = word
            .iter()
            .copied()
            .filter(|op| !matches!(op, Op::D(_, 0) | Op::DPrime(_, 0)))
            .collect();
        self.terms.push((coef, word));
    }

    fn commutator(&mut self, coef: i64, a: Op, b: Op) {
        self.term(coef, &[a, b]);
        self.term(-coef, &[b, a]);
    }
}

pub const FAMILIES: [&str; 12] = [
    "dd", "ef", "de", "df", "ee", "ff", "ee_adj", "ff_adj", "ee_far", "ff_far", "serre_e", "serre_f",
];

fn instances(m: &GtModule, budget: usize) -> Result<Vec<Instance>> {
    let p = m.pyramid();
    let n = p.n();
    let emin: Vec<usize> = (0..n)
        .map(|i| if i >= 1 && i < n { p.e_min_degree(i).unwrap() } else { 1 })
        .collect();
    let er = |i: usize| emin[i]..=budget;
    let fr = || 1..=budget;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for r in 1..=budget {
                for s in 1..=budget {
                    let mut inst = Instance::new("dd", format!("[d{i}^({r}), d{j}^({s})] = 0"));
                    inst.commutator(1, Op::D(i, r), Op::D(j, s));
                    out.push(inst);
                }
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            for r in er(i) {
                for s in fr() {
                    let mut inst = Instance::new("ef", format!("[e{i}^({r}), f{j}^({s})]"));
                    inst.commutator(1, Op::E(i, r), Op::F(j, s));
                    if i == j {
                        for t in 0..r + s {
                            inst.term(1, &[Op::DPrime(i, t), Op::D(i + 1, r + s - t - 1)]);
                        }
                    }
                    out.push(inst);
                }
            }
        }
    }
    for i in 1..=n {
        for j in 1..n {
            let sign = i64::from(i == j) - i64::from(i == j + 1);
            for r in 1..=budget {
                for s in er(j) {
                    let mut inst = Instance::new("de", format!("[d{i}^({r}), e{j}^({s})]"));
                    inst.commutator(1, Op::D(i, r), Op::E(j, s));
                    if sign != 0 {
                        for t in 0..r {
                            inst.term(-sign, &[Op::D(i, t), Op::E(j, r + s - t - 1)]);
                        }
                    }
                    out.push(inst);
                }
                for s in fr() {
                    let mut inst = Instance::new("df", format!("[d{i}^({r}), f{j}^({s})]"));
                    inst.commutator(1, Op::D(i, r), Op::F(j, s));
                    if sign != 0 {
                        for t in 0..r {
                            inst.term(sign, &[Op::F(j, r + s - t - 1), Op::D(i, t)]);
                        }
                    }
                    out.push(inst);
                }
            }
        }
    }
    for i in 1..n {
        for r in er(i) {
            for s in er(i) {
                let mut inst = Instance::new("ee", format!("e{i}: r={r}, s={s}"));
                inst.commutator(1, Op::E(i, r), Op::E(i, s + 1));
                inst.commutator(-1, Op::E(i, r + 1), Op::E(i, s));
                inst.term(-1, &[Op::E(i, r), Op::E(i, s)]);
                inst.term(-1, &[Op::E(i, s), Op::E(i, r)]);
                out.push(inst);
            }
        }
        for r in fr() {
            for s in fr() {
                let mut inst = Instance::new("ff", format!("f{i}: r={r}, s={s}"));
                inst.commutator(1, Op::F(i, r + 1), Op::F(i, s));
                inst.commutator(-1, Op::F(i, r), Op::F(i, s + 1));
                inst.term(-1, &[Op::F(i, r), Op::F(i, s)]);
                inst.term(-1, &[Op::F(i, s), Op::F(i, r)]);
                out.push(inst);
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        for r in er(i) {
            for s in er(i + 1) {
                let mut inst = Instance::new("ee_adj", format!("e{i}, e{}: r={r}, s={s}", i + 1));
                inst.commutator(1, Op::E(i, r), Op::E(i + 1, s + 1));
                inst.commutator(-1, Op::E(i, r + 1), Op::E(i + 1, s));
                inst.term(1, &[Op::E(i, r), Op::E(i + 1, s)]);
                out.push(inst);
            }
        }
        for r in fr() {
            for s in fr() {
                let mut inst = Instance::new("ff_adj", format!("f{i}, f{}: r={r}, s={s}", i + 1));
                inst.commutator(1, Op::F(i, r + 1), Op::F(i + 1, s));
                inst.commutator(-1, Op::F(i, r), Op::F(i + 1, s + 1));
                inst.term(1, &[Op::F(i + 1, s), Op::F(i, r)]);
                out.push(inst);
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) <= 1 {
                continue;
            }
            for r in er(i) {
                for s in er(j) {
                    let mut inst = Instance::new("ee_far", format!("[e{i}^({r}), e{j}^({s})]"));
                    inst.commutator(1, Op::E(i, r), Op::E(j, s));
                    out.push(inst);
                }
            }
            for r in fr() {
                for s in fr() {
                    let mut inst = Instance::new("ff_far", format!("[f{i}^({r}), f{j}^({s})]"));
                    inst.commutator(1, Op::F(i, r), Op::F(j, s));
                    out.push(inst);
                }
            }
        }
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) != 1 {
                continue;
            }
            for (family, mk, ri, rj) in [
                ("serre_e", Op::E as fn(usize, usize) -> Op, er(i), er(j)),
                ("serre_f", Op::F as fn(usize, usize) -> Op, 1..=budget, 1..=budget),
            ] {
                for r in ri.clone() {
                    for s in ri.clone() {
                        for t in rj.clone() {
                            let mut inst = Instance::new(
                                family,
                                format!("{}{i},{}{j}: r={r}, s={s}, t={t}", &family[6..], &family[6..]),
                            );
                            for (a, b) in [(r, s), (s, r)] {
                                let (x, y, z) = (mk(i, a), mk(i, b), mk(j, t));
                                // [x, [y, z]] = xyz − xzy − yzx + zyx
                                inst.term(1, &[x, y, z]);
                                inst.term(-1, &[x, z, y]);
                                inst.term(-1, &[y, z, x]);
                                inst.term(1, &[z, y, x]);
                            }
                            out.push(inst);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

type Image = Option<Rc<Vec<(TableauDelta, Scalar)>>>;

/// Evaluates generator words on basis tableaux, memoized; `None` marks a
/// `C`-valid tableau outside the window.
struct Evaluator<'a> {
    m: &'a GtModule,
    radius: i64,
    ops: HashMap<(Op, TableauDelta), Image>,
    e_terms: HashMap<(usize, TableauDelta), Rc<Vec<ShiftTerm>>>,
    f_terms: HashMap<(usize, TableauDelta), Rc<Vec<ShiftTerm>>>,
    d: HashMap<(usize, TableauDelta), Rc<(InvSeries, InvSeries)>>,
}

impl<'a> Evaluator<'a> {
    fn new(m: &'a GtModule, radius: i64) -> Self {
        Evaluator {
            m,
            radius,
            ops: HashMap::new(),
            e_terms: HashMap::new(),
            f_terms: HashMap::new(),
            d: HashMap::new(),
        }
    }

    fn d_pair(&mut self, r: usize, z: &TableauDelta) -> Result<Rc<(InvSeries, InvSeries)>> {
        let key = (r, z.clone());
        if let Some(v) = self.d.get(&key) {
            return Ok(v.clone());
        }
        let d = self.m.d_series(r, z)?;
        let dp = d.inverse()?;
        let v = Rc::new((d, dp));
        self.d.insert(key, v.clone());
        Ok(v)
    }

    fn shift_terms(&mut self, raising: bool, r: usize, z: &TableauDelta) -> Result<Rc<Vec<ShiftTerm>>> {
        let key = (r, z.clone());
        let cache = if raising { &self.e_terms } else { &self.f_terms };
        if let Some(v) = cache.get(&key) {
            return Ok(v.clone());
        }
        let terms = Rc::new(if raising {
            self.m.e_terms(r, z)?
        } else {
            self.m.f_terms(r, z)?
        });
        let cache = if raising { &mut self.e_terms } else { &mut self.f_terms };
        cache.insert(key, terms.clone());
        Ok(terms)
    }

    fn apply(&mut self, op: Op, z: &TableauDelta) -> Result<Image> {
        let key = (op, z.clone());
        if let Some(v) = self.ops.get(&key) {
            return Ok(v.clone());
        }
        let image = match op {
            Op::D(r, t) | Op::DPrime(r, t) => {
                let pair = self.d_pair(r, z)?;
                let s = if matches!(op, Op::D(..)) { &pair.0 } else { &pair.1 };
                let c = s.coeff(t);
                Some(Rc::new(if c.is_zero() { vec![] } else { vec![(z.clone(), c)] }))
            }
            Op::E(r, t) | Op::F(r, t) => {
                let raising = matches!(op, Op::E(..));
                let terms = self.shift_terms(raising, r, z)?;
                let step = if raising { 1 } else { -1 };
                let mut out = Vec::new();
                let mut overflow = false;
                for term in terms.iter() {
                    let c = &term.ratio * term.series.coeff(t);
                    if c.is_zero() {
                        continue;
                    }
                    let target = z.bumped(term.cell, step);
                    if !self.m.member(&target) {
                        continue;
                    }
                    if target.norm() > self.radius {
                        overflow = true;
                        break;
                    }
                    out.push((target, c));
                }
                (!overflow).then(|| Rc::new(out))
            }
        };
        self.ops.insert(key, image.clone());
        Ok(image)
    }

    /// `Σ coef · word [z]`, or `None` on window overflow.
    fn eval(&mut self, inst: &Instance, z: &TableauDelta) -> Result<Option<ModuleVector>> {
        let mut total = ModuleVector::new();
        for (coef, word) in &inst.terms {
            let mut v = ModuleVector::from([(z.clone(), int(*coef))]);
            for op in word.iter().rev() {
                let mut next = ModuleVector::new();
                for (y, a) in &v {
                    let Some(image) = self.apply(*op, y)? else {
                        return Ok(None);
                    };
                    for (w, c) in image.iter() {
                        add_to(&mut next, w.clone(), a * c);
                    }
                }
                v = next;
            }
            for (y, a) in v {
                add_to(&mut total, y, a);
            }
        }
        Ok(Some(total))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub instances: usize,
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub family: String,
    pub relation: String,
    pub instantiation: usize,
    pub tableau: Vec<(TriIndex, i64)>,
    pub target: Vec<(TriIndex, i64)>,
    pub discrepancy: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub window_members: usize,
    pub instantiations: usize,
    pub families: Vec<FamilyReport>,
    pub first_violation: Option<Violation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub radius: i64,
    pub budget: usize,
    pub instantiations: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            radius: 2,
            budget: 3,
            instantiations: 3,
            seed: 1,
        }
    }
}

/// Checks every defining-relation instance with superscripts up to `budget`
/// at every window tableau whose shift neighbourhood stays inside the window.
pub fn verify_instantiation(m: &GtModule, radius: i64, budget: usize, index: usize) -> Result<VerificationReport> {
    let window = BasisWindow::new(m.clone(), radius);
    let insts = instances(m, budget)?;
    let mut ev = Evaluator::new(m, radius);
    let p = m.pyramid();
    let mut families: Vec<FamilyReport> = FAMILIES
        .iter()
        .map(|f| FamilyReport {
            family: f.to_string(),
            instances: 0,
            checked: 0,
            skipped: 0,
            violations: 0,
        })
        .collect();
    let mut first = None;
    for inst in &insts {
        let fam = FAMILIES.iter().position(|f| *f == inst.family).unwrap();
        families[fam].instances += 1;
        for z in window.members() {
            {
                match ev.eval(inst, z)? {
                    None => families[fam].skipped += 1,
                    Some(v) => {
                        families[fam].checked += 1;
                        if let Some((target, c)) = v.iter().next() {
                            families[fam].violations += 1;
                            if first.is_none() {
                                first = Some(Violation {
                                    family: inst.family.to_string(),
                                    relation: inst.label.clone(),
                                    instantiation: index,
                                    tableau: z.to_sparse(p).into_iter().collect(),
                                    target: target.to_sparse(p).into_iter().collect(),
                                    discrepancy: format_scalar(c),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(VerificationReport {
        passed: first.is_none(),
        window_members: window.members().len(),
        instantiations: 1,
        families,
        first_violation: first,
    })
}

/// Runs the verifier at `opts.instantiations` generic instantiations of `l`
/// and merges the reports. Fails with a window-overflow error when some
/// relation family could not be checked at any window tableau.
pub fn verify_defining_relations(c: &RelationSet, l: &Tableau, opts: &VerifyOptions) -> Result<VerificationReport> {
    if !c.satisfies(l) {
        return Err(Error::SeedViolatesRelations);
    }
    let order = default_order(opts.budget);
    let reports: Vec<Result<VerificationReport>> = (0..opts.instantiations.max(1))
        .into_par_iter()
        .map(|k| {
            let m = GtModule::instantiate(c, l, opts.seed.wrapping_add(k as u64), order)?;
            verify_instantiation(&m, opts.radius, opts.budget, k)
        })
        .collect();
    let mut merged: Option<VerificationReport> = None;
    for r in reports {
        let r = r?;
        merged = Some(match merged {
            None => r,
            Some(mut acc) => {
                for (a, b) in acc.families.iter_mut().zip(&r.families) {
                    a.instances += b.instances;
                    a.checked += b.checked;
                    a.skipped += b.skipped;
                    a.violations += b.violations;
                }
                acc.instantiations += 1;
                if acc.first_violation.is_none() {
                    acc.first_violation = r.first_violation;
                }
                acc.passed = acc.first_violation.is_none();
                acc
            }
        });
    }
    let report = merged.expect("at least one instantiation");
    if let Some(f) = report.families.iter().find(|f| f.instances > 0 && f.checked == 0) {
        return Err(Error::WindowOverflow(format!(
            "radius {} leaves no tableau where family {} can be checked",
            opts.radius, f.family
        )));
    }
    Ok(report)
}
