//! Gelfand-Tsetlin tableaux: entries indexed by triples `(k, i, j)`, stored as
//! (class, integer offset) pairs until instantiated.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{
    fract, generic_instantiate, int, to_i64, GenericAssignment, Scalar, UniPoly,
};
use crate::pyramid::Pyramid;

/// Triple `(k, i, j)`: layer `k`, row `i`, position `j`. Ordered by row, position, layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriIndex {
    pub k: usize,
    pub i: usize,
    pub j: usize,
}

impl TriIndex {
    pub const fn new(k: usize, i: usize, j: usize) -> Self {
        TriIndex { k, i, j }
    }

    /// The `(k, j)` slot inside the row, compared lexicographically.
    pub fn slot(&self) -> (usize, usize) {
        (self.k, self.j)
    }
}

impl Ord for TriIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.i, self.j, self.k).cmp(&(other.i, other.j, other.k))
    }
}

impl PartialOrd for TriIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TriIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.k, self.i, self.j)
    }
}

/// Symbolic entry: class value plus an integer offset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub class: usize,
    pub offset: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    pyramid: Pyramid,
    cells: Vec<Cell>,
    class_names: Vec<String>,
    pinned: Vec<Option<Scalar>>,
}

/// Integer shift vector over the cells of a pyramid; the top row is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TableauDelta(pub Vec<i64>);

impl TableauDelta {
    pub fn zero(p: &Pyramid) -> Self {
        TableauDelta(vec![0; p.num_cells()])
    }

    /// `±δ_t`.
    pub fn unit(p: &Pyramid, t: &TriIndex, sign: i64) -> Result<Self> {
        if t.i == p.n() {
            return Err(Error::TopRowShift(*t));
        }
        let mut d = TableauDelta::zero(p);
        d.0[p.index_of(t)?] = sign;
        Ok(d)
    }

    pub fn from_sparse(p: &Pyramid, entries: &BTreeMap<TriIndex, i64>) -> Result<Self> {
        let mut d = TableauDelta::zero(p);
        for (t, &z) in entries {
            if z != 0 && t.i == p.n() {
                return Err(Error::TopRowShift(*t));
            }
            d.0[p.index_of(t)?] += z;
        }
        Ok(d)
    }

    pub fn to_sparse(&self, p: &Pyramid) -> BTreeMap<TriIndex, i64> {
        p.cells()
            .iter()
            .zip(&self.0)
            .filter(|(_, &z)| z != 0)
            .map(|(t, &z)| (*t, z))
            .collect()
    }

    pub fn norm(&self) -> i64 {
        self.0.iter().map(|z| z.abs()).max().unwrap_or(0)
    }

    pub fn add(&self, other: &TableauDelta) -> TableauDelta {
        TableauDelta(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn bumped(&self, idx: usize, by: i64) -> TableauDelta {
        let mut d = self.clone();
        d.0[idx] += by;
        d
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&z| z == 0)
    }
}

impl Tableau {
    /// Builds a tableau from `(triple, class name, offset)` entries and
    /// optional pinned class values. Pinned classes whose values differ by an
    /// integer are merged.
    pub fn new(
        pyramid: Pyramid,
        entries: &[(TriIndex, String, i64)],
        pinned: &BTreeMap<String, Scalar>,
    ) -> Result<Self> {
        let mut slots: Vec<Option<(String, i64)>> = vec![None; pyramid.num_cells()];
        for (t, class, offset) in entries {
            let idx = pyramid.index_of(t)?;
            if slots[idx].is_some() {
                return Err(Error::InvalidTableau(format!("duplicate entry for {t}")));
            }
            slots[idx] = Some((class.clone(), *offset));
        }
        let mut names: Vec<String> = Vec::new();
        let mut cells = Vec::with_capacity(slots.len());
        for (idx, slot) in slots.into_iter().enumerate() {
            let (class, offset) = slot.ok_or_else(|| {
                Error::InvalidTableau(format!("missing entry for {}", pyramid.cells()[idx]))
            })?;
            let c = match names.iter().position(|n| *n == class) {
                Some(c) => c,
                None => {
                    names.push(class);
                    names.len() - 1
                }
            };
            cells.push(Cell { class: c, offset });
        }
        for name in pinned.keys() {
            if !names.contains(name) {
                return Err(Error::InvalidTableau(format!("unknown class {name:?}")));
            }
        }
        let pins = names.iter().map(|n| pinned.get(n).cloned()).collect();
        let mut t = Tableau {
            pyramid,
            cells,
            class_names: names,
            pinned: pins,
        };
        t.merge_pinned();
        Ok(t)
    }

    /// Tableau with explicit entries (dense cell order); entries whose
    /// differences are integers share a class.
    pub fn from_values(pyramid: Pyramid, values: &[Scalar]) -> Result<Self> {
        if values.len() != pyramid.num_cells() {
            return Err(Error::InvalidTableau(format!(
                "expected {} entries, got {}",
                pyramid.num_cells(),
                values.len()
            )));
        }
        let mut reps: Vec<Scalar> = Vec::new();
        let mut cells = Vec::with_capacity(values.len());
        for v in values {
            let c = match reps.iter().position(|r| (v - r).is_integer()) {
                Some(c) => c,
                None => {
                    reps.push(v.clone());
                    reps.len() - 1
                }
            };
            let offset = to_i64(&(v - &reps[c]))
                .ok_or_else(|| Error::InvalidTableau("entry offset too large".into()))?;
            cells.push(Cell { class: c, offset });
        }
        Ok(Tableau {
            pyramid,
            class_names: (0..reps.len()).map(|c| format!("c{c}")).collect(),
            pinned: reps.into_iter().map(Some).collect(),
            cells,
        })
    }

    /// Tableau from a symbolic class layout: `classes[idx]` and `offsets[idx]` per dense cell.
    pub fn symbolic(pyramid: Pyramid, classes: &[usize], offsets: &[i64]) -> Result<Self> {
        if classes.len() != pyramid.num_cells() || offsets.len() != pyramid.num_cells() {
            return Err(Error::InvalidTableau("wrong number of entries".into()));
        }
        let m = classes.iter().max().map_or(0, |c| c + 1);
        Ok(Tableau {
            cells: classes
                .iter()
                .zip(offsets)
                .map(|(&class, &offset)| Cell { class, offset })
                .collect(),
            class_names: (0..m).map(|c| format!("c{c}")).collect(),
            pinned: vec![None; m],
            pyramid,
        })
    }

    fn merge_pinned(&mut self) {
        let m = self.class_names.len();
        for a in 0..m {
            let Some(va) = self.pinned[a].clone() else {
                continue;
            };
            for b in a + 1..m {
                let Some(vb) = self.pinned[b].clone() else {
                    continue;
                };
                if let Some(shift) = to_i64(&(&vb - &va)) {
                    for cell in &mut self.cells {
                        if cell.class == b {
                            cell.class = a;
                            cell.offset += shift;
                        }
                    }
                    self.pinned[b] = None;
                }
            }
        }
        let used: Vec<usize> = (0..m)
            .filter(|c| self.cells.iter().any(|cell| cell.class == *c))
            .collect();
        for cell in &mut self.cells {
            cell.class = used.iter().position(|&c| c == cell.class).unwrap();
        }
        self.class_names = used.iter().map(|&c| self.class_names[c].clone()).collect();
        self.pinned = used.iter().map(|&c| self.pinned[c].clone()).collect();
    }

    pub fn pyramid(&self) -> &Pyramid {
        &self.pyramid
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, t: &TriIndex) -> Result<Cell> {
        Ok(self.cells[self.pyramid.index_of(t)?])
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    pub fn num_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn pinned(&self) -> &[Option<Scalar>] {
        &self.pinned
    }

    /// Class values: pinned ones as given, the rest generic for `seed`.
    pub fn assignment(&self, seed: u64) -> GenericAssignment {
        let free: Vec<usize> = (0..self.num_classes())
            .filter(|&c| self.pinned[c].is_none())
            .collect();
        let pinned_vals: Vec<&Scalar> = self.pinned.iter().flatten().collect();
        let mut s = seed;
        loop {
            let mut a = generic_instantiate(free.iter().copied(), s);
            let clash = a
                .class_values
                .values()
                .any(|v| pinned_vals.iter().any(|p| (v - *p).is_integer()));
            if !clash {
                for (c, p) in self.pinned.iter().enumerate() {
                    if let Some(p) = p {
                        a.class_values.insert(c, p.clone());
                    }
                }
                a.seed = seed;
                return a;
            }
            s = s.wrapping_add(0x9e37_79b9);
        }
    }

    /// Entry values in dense cell order.
    pub fn values(&self, a: &GenericAssignment) -> Vec<Scalar> {
        self.cells
            .iter()
            .map(|c| a.class_values[&c.class].clone() + int(c.offset))
            .collect()
    }

    pub fn instantiate(&self, seed: u64) -> Vec<Scalar> {
        self.values(&self.assignment(seed))
    }

    pub fn shift(&self, d: &TableauDelta) -> Result<Tableau> {
        if d.0.len() != self.cells.len() {
            return Err(Error::InvalidTableau("delta has wrong length".into()));
        }
        for idx in self.pyramid.row_range(self.pyramid.n()) {
            if d.0[idx] != 0 {
                return Err(Error::TopRowShift(self.pyramid.cells()[idx]));
            }
        }
        let mut t = self.clone();
        for (cell, z) in t.cells.iter_mut().zip(&d.0) {
            cell.offset += z;
        }
        Ok(t)
    }

    /// `true` when the entries `a`, `b` differ by an integer.
    pub fn linked(&self, a: usize, b: usize) -> bool {
        self.cells[a].class == self.cells[b].class
    }

    /// `l_a − l_b` when integral.
    pub fn int_diff(&self, a: usize, b: usize) -> Option<i64> {
        self.linked(a, b)
            .then(|| self.cells[a].offset - self.cells[b].offset)
    }

    /// No two equal entries within any row below the top.
    pub fn is_noncritical(&self) -> bool {
        (1..self.pyramid.n()).all(|r| {
            let range = self.pyramid.row_range(r);
            range
                .clone()
                .all(|a| range.clone().filter(|&b| b > a).all(|b| self.int_diff(a, b) != Some(0)))
        })
    }

    /// Standard (finite-dimensional-type) tableau: interlacing in every layer
    /// and non-integer differences between layers of one position.
    pub fn is_standard(&self) -> bool {
        let p = &self.pyramid;
        let idx = |k, i, j| p.index_of(&TriIndex::new(k, i, j)).unwrap();
        for r in 1..p.n() {
            for i in 1..=r {
                for k in 1..=p.p(i) {
                    let here = idx(k, r, i);
                    match self.int_diff(idx(k, r + 1, i), here) {
                        Some(d) if d >= 0 => {}
                        _ => return false,
                    }
                    match self.int_diff(here, idx(k, r + 1, i + 1)) {
                        Some(d) if d > 0 => {}
                        _ => return false,
                    }
                }
            }
        }
        for i in 1..=p.n() {
            for j in 1..=i {
                for k in 1..=p.p(j) {
                    for r in k + 1..=p.p(j) {
                        if self.linked(idx(k, i, j), idx(r, i, j)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// `true` when no two entries of a row below the top coincide.
pub fn values_noncritical(p: &Pyramid, values: &[Scalar]) -> bool {
    (1..p.n()).all(|r| {
        let range = p.row_range(r);
        range
            .clone()
            .all(|a| range.clone().filter(|&b| b > a).all(|b| values[a] != values[b]))
    })
}

/// `l_{ri}(u) = (u + l_{ri}^{(1)}) … (u + l_{ri}^{(p_i)})`.
pub fn row_polynomial(p: &Pyramid, values: &[Scalar], r: usize, i: usize) -> Result<UniPoly> {
    if r == 0 || r > p.n() || i == 0 || i > r {
        return Err(Error::IndexOutOfRange(format!("row {r}, position {i}")));
    }
    let mut out = UniPoly::one();
    for k in 1..=p.p(i) {
        let idx = p.index_of(&TriIndex::new(k, r, i))?;
        out = &out * &UniPoly::linear(values[idx].clone());
    }
    Ok(out)
}

/// Weight of a one-column tableau: `w_k = Σ_i l_{ki} − Σ_i l_{k−1,i} + k − 1`.
pub fn weight(p: &Pyramid, values: &[Scalar]) -> Result<Vec<Scalar>> {
    if !p.is_one_column() {
        return Err(Error::InvalidPyramid(
            "weights are defined for one-column pyramids".into(),
        ));
    }
    let row_sum = |r: usize| -> Scalar {
        if r == 0 {
            return Scalar::zero();
        }
        p.row_range(r).map(|idx| values[idx].clone()).sum()
    };
    Ok((1..=p.n())
        .map(|k| row_sum(k) - row_sum(k - 1) + int(k as i64 - 1))
        .collect())
}

/// Groups the values into classes of integer differences; returns class
/// representatives with fractional parts in `[0, 1)`.
pub fn residue_classes(values: &[Scalar]) -> Vec<Scalar> {
    let mut reps: Vec<Scalar> = Vec::new();
    for v in values {
        let f = fract(v);
        if !reps.contains(&f) {
            reps.push(f);
        }
    }
    reps
}
