use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num::{One, Zero};
use rayon::prelude::*;

use super::GlWeight;
use crate::error::{Error, Result};
use crate::exact_arith::{int, Scalar};
use crate::gt_module::{GtModule, ModuleVector};
use crate::linalg::kernel;
use crate::pyramid::Pyramid;
use crate::relations::maximal_set;
use crate::tableau::{Tableau, TableauDelta};

pub type TensorKey = Vec<TableauDelta>;
pub type TensorVector = BTreeMap<TensorKey, Scalar>;

type Image<K> = Arc<Vec<(K, Scalar)>>;

fn add_to<K: Ord>(v: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match v.entry(k) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn axpy<K: Ord + Clone>(acc: &mut BTreeMap<K, Scalar>, a: &Scalar, x: &BTreeMap<K, Scalar>) {
    for (k, c) in x {
        add_to(acc, k.clone(), a * c);
    }
}

/// Root coordinates of `Σ ε_{rows} − Σ ε_{cols}`, negated: the change of the
/// depth vector `c` (with `λ − weight = Σ c_k α_k`).
fn depth_shift(n: usize, rows: &[usize], cols: &[usize]) -> Vec<i64> {
    let mut delta = vec![0i64; n + 1];
    for &a in rows {
        delta[a] += 1;
    }
    for &b in cols {
        delta[b] -= 1;
    }
    let mut acc = 0;
    (1..n)
        .map(|k| {
            acc += delta[k];
            -acc
        })
        .collect()
}

fn compositions(total: i64, parts: usize) -> Vec<Vec<i64>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions(total - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// Splits of a depth vector among `parts` summands.
fn vector_splits(c: &[i64], parts: usize) -> Vec<Vec<Vec<i64>>> {
    let per_coord: Vec<Vec<Vec<i64>>> = c.iter().map(|&x| compositions(x, parts)).collect();
    let mut out = vec![vec![vec![0i64; c.len()]; parts]];
    for (k, options) in per_coord.iter().enumerate() {
        let mut next = Vec::new();
        for partial in &out {
            for opt in options {
                let mut s = partial.clone();
                for (f, v) in opt.iter().enumerate() {
                    s[f][k] = *v;
                }
                next.push(s);
            }
        }
        out = next;
    }
    out
}

fn permutations(m: usize) -> Vec<(Vec<usize>, i64)> {
    if m == 0 {
        return vec![(vec![], 1)];
    }
    let mut out = Vec::new();
    for (perm, sign) in permutations(m - 1) {
        for pos in 0..=perm.len() {
            let mut p = perm.clone();
            p.insert(pos, m - 1);
            let flips = (perm.len() - pos) as i64;
            out.push((p, if flips % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> Scalar {
    let mut r = Scalar::one();
    for t in 0..k {
        r = r * int((n - t) as i64) / int(t as i64 + 1);
    }
    r
}

fn pow(x: &Scalar, e: usize) -> Scalar {
    (0..e).fold(Scalar::one(), |acc, _| acc * x)
}

/// The evaluation module `L_a(λ)`, realized on the Gelfand-Tsetlin tableaux
/// below the highest tableau `l_{ij} = λ_j − j + 1`.
pub struct EvaluationFactor {
    weight: GlWeight,
    point: Scalar,
    module: GtModule,
    cache: Mutex<HashMap<(usize, usize, TableauDelta), Image<TableauDelta>>>,
}

impl Clone for EvaluationFactor {
    fn clone(&self) -> Self {
        EvaluationFactor {
            weight: self.weight.clone(),
            point: self.point.clone(),
            module: self.module.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for EvaluationFactor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EvaluationFactor")
            .field("weight", &self.weight)
            .field("point", &self.point)
            .finish()
    }
}

impl EvaluationFactor {
    pub fn new(weight: GlWeight, point: Scalar) -> Result<Self> {
        let n = weight.n();
        if n == 0 {
            return Err(Error::IndexOutOfRange("empty weight".into()));
        }
        if !weight.is_good() {
            return Err(Error::NotGood(format!("{:?}", weight.0)));
        }
        let p = Pyramid::gl(n)?;
        let values: Vec<Scalar> = (1..=n).flat_map(|i| (1..=i).map(|j| weight.l(j))).collect();
        let l = Tableau::from_values(p, &values)?;
        let c = maximal_set(&l)?;
        let module = GtModule::new(&c, &l, values, 2)?;
        Ok(EvaluationFactor {
            weight,
            point,
            module,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn weight(&self) -> &GlWeight {
        &self.weight
    }

    pub fn point(&self) -> &Scalar {
        &self.point
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    pub fn module(&self) -> &GtModule {
        &self.module
    }

    pub fn highest(&self) -> TableauDelta {
        TableauDelta::zero(self.module.pyramid())
    }

    /// Depth vector `c` of a tableau: `λ − weight = Σ c_k α_k`.
    pub fn depth_vector(&self, z: &TableauDelta) -> Vec<i64> {
        let p = self.module.pyramid();
        (1..self.n()).map(|r| -p.row_range(r).map(|i| z.0[i]).sum::<i64>()).collect()
    }

    /// Basis tableaux with depth vector `c`.
    pub fn basis_at(&self, c: &[i64]) -> Vec<TableauDelta> {
        let n = self.n();
        if c.len() + 1 != n || c.iter().any(|&x| x < 0) {
            return Vec::new();
        }
        let p = self.module.pyramid();
        let mut out = vec![TableauDelta::zero(p)];
        for r in 1..n {
            let range = p.row_range(r);
            let mut next = Vec::new();
            for z in &out {
                for parts in compositions(c[r - 1], r) {
                    let mut y = z.clone();
                    for (idx, part) in range.clone().zip(&parts) {
                        y.0[idx] = -part;
                    }
                    next.push(y);
                }
            }
            out = next;
        }
        out.retain(|z| self.module.member(z));
        out
    }

    /// `E_{ij}` on a basis tableau.
    pub fn apply_e_basis(&self, i: usize, j: usize, z: &TableauDelta) -> Result<Image<TableauDelta>> {
        let n = self.n();
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(Error::IndexOutOfRange(format!("E_{{{i},{j}}} for gl_{n}")));
        }
        let key = (i, j, z.clone());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let m = &self.module;
        let image: Vec<(TableauDelta, Scalar)> = if i == j {
            vec![(z.clone(), m.d_series(i, z)?.coeff(1))]
        } else if j == i + 1 || i == j + 1 {
            let (terms, step) = if j == i + 1 { (m.e_terms(i, z)?, 1) } else { (m.f_terms(j, z)?, -1) };
            terms
                .into_iter()
                .filter_map(|t| {
                    let c = &t.ratio * t.series.coeff(1);
                    let target = z.bumped(t.cell, step);
                    (!c.is_zero() && m.member(&target)).then_some((target, c))
                })
                .collect()
        } else {
            let k = if i < j { i + 1 } else { i - 1 };
            let start = ModuleVector::from([(z.clone(), Scalar::one())]);
            let ab = self.apply_e(i, k, &self.apply_e(k, j, &start)?)?;
            let ba = self.apply_e(k, j, &self.apply_e(i, k, &start)?)?;
            let mut v = ab;
            axpy(&mut v, &int(-1), &ba);
            v.into_iter().collect()
        };
        let image = Arc::new(image);
        self.cache.lock().unwrap().insert(key, image.clone());
        Ok(image)
    }

    pub fn apply_e(&self, i: usize, j: usize, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::new();
        for (z, a) in v {
            for (y, c) in self.apply_e_basis(i, j, z)?.iter() {
                add_to(&mut out, y.clone(), a * c);
            }
        }
        Ok(out)
    }

    /// `t_{ij}^{(r)} = a^{r−1} E_{ij}` for `r ≥ 1`, `δ_{ij}` for `r = 0`.
    pub fn apply_t(&self, i: usize, j: usize, r: usize, v: &ModuleVector) -> Result<ModuleVector> {
        if r == 0 {
            return Ok(if i == j { v.clone() } else { ModuleVector::new() });
        }
        let s = pow(&self.point, r - 1);
        if s.is_zero() {
            return Ok(ModuleVector::new());
        }
        let mut out = self.apply_e(i, j, v)?;
        if !s.is_one() {
            for c in out.values_mut() {
                *c *= &s;
            }
        }
        Ok(out)
    }
}

/// Matrix of an operator between two weight spaces; `entries[row][col]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSpaceMatrix {
    pub rows: Vec<TensorKey>,
    pub cols: Vec<TensorKey>,
    pub entries: Vec<Vec<Scalar>>,
}

impl WeightSpaceMatrix {
    fn from_images(rows: Vec<TensorKey>, cols: Vec<TensorKey>, images: &[TensorVector]) -> Result<Self> {
        let index: HashMap<&TensorKey, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut entries = vec![vec![Scalar::zero(); cols.len()]; rows.len()];
        for (c, img) in images.iter().enumerate() {
            for (k, x) in img {
                let r = *index
                    .get(k)
                    .ok_or_else(|| Error::DepthOverflow("image leaves the target weight space".into()))?;
                entries[r][c] = x.clone();
            }
        }
        Ok(WeightSpaceMatrix { rows, cols, entries })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|r| r.iter().all(|x| x.is_zero()))
    }
}

/// Coefficient matrices of an operator series `Σ_t X^{(t)} u^{−t}` between
/// two weight spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSeries {
    pub coeffs: Vec<WeightSpaceMatrix>,
    pub repeated_index: bool,
}

impl OperatorSeries {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|m| m.is_zero())
    }
}

type ActionKey = (usize, usize, usize, TensorKey);

/// Tensor product of evaluation modules, truncated at total depth `depth`.
#[derive(Debug)]
pub struct TensorModule {
    factors: Vec<EvaluationFactor>,
    depth: usize,
    cache: Mutex<HashMap<ActionKey, Arc<TensorVector>>>,
}

impl Clone for TensorModule {
    fn clone(&self) -> Self {
        TensorModule {
            factors: self.factors.clone(),
            depth: self.depth,
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl TensorModule {
    pub fn new(factors: Vec<EvaluationFactor>, depth: usize) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::IndexOutOfRange("no tensor factors".into()));
        };
        let n = first.n();
        if factors.iter().any(|f| f.n() != n) {
            return Err(Error::IndexOutOfRange("factors of different rank".into()));
        }
        Ok(TensorModule {
            factors,
            depth,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Tensor product of `L_a(λ)` for the given weights and points.
    pub fn from_weights(weights: &[GlWeight], points: &[Scalar], depth: usize) -> Result<Self> {
        let factors = weights
            .iter()
            .enumerate()
            .map(|(k, w)| EvaluationFactor::new(w.clone(), points.get(k).cloned().unwrap_or_else(Scalar::zero)))
            .collect::<Result<Vec<_>>>()?;
        TensorModule::new(factors, depth)
    }

    pub fn n(&self) -> usize {
        self.factors[0].n()
    }

    pub fn factors(&self) -> &[EvaluationFactor] {
        &self.factors
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn highest(&self) -> TensorKey {
        self.factors.iter().map(|f| f.highest()).collect()
    }

    pub fn depth_vector(&self, key: &TensorKey) -> Vec<i64> {
        let mut c = vec![0; self.n() - 1];
        for (f, z) in self.factors.iter().zip(key) {
            for (a, b) in c.iter_mut().zip(f.depth_vector(z)) {
                *a += b;
            }
        }
        c
    }

    /// Depth vectors of total height at most `depth` with a nonzero weight space.
    pub fn weight_spaces(&self) -> Vec<Vec<i64>> {
        let k = self.n() - 1;
        let mut out = Vec::new();
        for h in 0..=self.depth as i64 {
            for c in compositions(h, k) {
                if !self.basis(&c).is_empty() {
                    out.push(c);
                }
            }
        }
        out
    }

    /// Pure-tensor basis of the weight space with depth vector `c`.
    pub fn basis(&self, c: &[i64]) -> Vec<TensorKey> {
        if c.len() + 1 != self.n() || c.iter().any(|&x| x < 0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for split in vector_splits(c, self.factors.len()) {
            let mut keys: Vec<TensorKey> = vec![vec![]];
            for (f, cf) in self.factors.iter().zip(&split) {
                let b = f.basis_at(cf);
                keys = keys
                    .into_iter()
                    .flat_map(|k| {
                        b.iter().map(move |z| {
                            let mut k = k.clone();
                            k.push(z.clone());
                            k
                        })
                    })
                    .collect();
            }
            out.extend(keys);
        }
        out.sort();
        out
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if (1..=self.n()).contains(&i) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!("index {i} for gl_{}", self.n())))
        }
    }

    fn apply_t_key(&self, i: usize, j: usize, r: usize, key: &TensorKey) -> Result<Arc<TensorVector>> {
        let ck = (i, j, r, key.clone());
        if let Some(v) = self.cache.lock().unwrap().get(&ck) {
            return Ok(v.clone());
        }
        let n = self.n();
        let last = self.factors.len() - 1;
        // (current row index, remaining degree, partial tensor over the processed prefix)
        let mut states: Vec<(usize, usize, TensorVector)> = vec![(i, r, TensorVector::from([(vec![], Scalar::one())]))];
        for (f, factor) in self.factors.iter().enumerate() {
            let mut next: Vec<(usize, usize, TensorVector)> = Vec::new();
            for (a, rem, partial) in &states {
                let bs: Vec<usize> = if f == last { vec![j] } else { (1..=n).collect() };
                for b in bs {
                    let degrees: Vec<usize> = if f == last { vec![*rem] } else { (0..=*rem).collect() };
                    for rf in degrees {
                        let start = ModuleVector::from([(key[f].clone(), Scalar::one())]);
                        let img = factor.apply_t(*a, b, rf, &start)?;
                        if img.is_empty() {
                            continue;
                        }
                        let mut prod = TensorVector::new();
                        for (pk, pc) in partial {
                            for (z, c) in &img {
                                let mut k = pk.clone();
                                k.push(z.clone());
                                add_to(&mut prod, k, pc * c);
                            }
                        }
                        next.push((b, rem - rf, prod));
                    }
                }
            }
            states = next;
        }
        let mut out = TensorVector::new();
        for (_, rem, v) in states {
            if rem == 0 {
                axpy(&mut out, &Scalar::one(), &v);
            }
        }
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(ck, out.clone());
        Ok(out)
    }

    /// `Δ(t_{ij}^{(r)})` through the iterated coproduct.
    pub fn apply_t(&self, i: usize, j: usize, r: usize, v: &TensorVector) -> Result<TensorVector> {
        self.check_index(i)?;
        self.check_index(j)?;
        let mut out = TensorVector::new();
        for (k, a) in v {
            axpy(&mut out, a, &*self.apply_t_key(i, j, r, k)?);
        }
        Ok(out)
    }

    /// Applies `t_{ij}(u − s)` to a vector-valued series, truncated at `order`.
    fn apply_shifted(&self, i: usize, j: usize, s: usize, series: &[TensorVector], order: usize) -> Result<Vec<TensorVector>> {
        let s = int(s as i64);
        let mut out = vec![TensorVector::new(); order + 1];
        for (q, sq) in series.iter().enumerate() {
            if sq.is_empty() {
                continue;
            }
            let plain: Vec<TensorVector> = (0..=order - q)
                .map(|k| self.apply_t(i, j, k, sq))
                .collect::<Result<_>>()?;
            for p in 0..=order - q {
                if p == 0 {
                    axpy(&mut out[q], &Scalar::one(), &plain[0]);
                    continue;
                }
                for (k, term) in plain.iter().enumerate().take(p + 1).skip(1) {
                    let coef = binomial(p - 1, k - 1) * pow(&s, p - k);
                    if !coef.is_zero() {
                        axpy(&mut out[q + p], &coef, term);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Coefficients `0..=order` of the quantum minor `t^{a_1…a_m}_{b_1…b_m}(u)` applied to `v`.
    pub fn minor_series(&self, a: &[usize], b: &[usize], v: &TensorVector, order: usize) -> Result<Vec<TensorVector>> {
        if a.len() != b.len() {
            return Err(Error::IndexOutOfRange("minor index lists differ in length".into()));
        }
        for &x in a.iter().chain(b) {
            self.check_index(x)?;
        }
        let m = a.len();
        let mut total = vec![TensorVector::new(); order + 1];
        for (sigma, sign) in permutations(m) {
            let mut series = vec![TensorVector::new(); order + 1];
            series[0] = v.clone();
            for pos in (0..m).rev() {
                series = self.apply_shifted(a[sigma[pos]], b[pos], pos, &series, order)?;
            }
            for (t, s) in series.iter().enumerate() {
                axpy(&mut total[t], &int(sign), s);
            }
        }
        Ok(total)
    }

    /// Depth vector of the target weight space of the minor with rows `a`, columns `b`.
    pub fn target_depth(&self, c: &[i64], a: &[usize], b: &[usize]) -> Vec<i64> {
        c.iter().zip(depth_shift(self.n(), a, b)).map(|(x, d)| x + d).collect()
    }
}

fn images_of<F>(cols: &[TensorKey], f: F) -> Result<Vec<TensorVector>>
where
    F: Fn(&TensorVector) -> Result<TensorVector>,
{
    cols.iter()
        .map(|k| f(&TensorVector::from([(k.clone(), Scalar::one())])))
        .collect()
}

/// Matrix of `t_{ij}^{(r)}` on the weight space `c` of a single evaluation module.
pub fn evaluation_action(f: &EvaluationFactor, i: usize, j: usize, r: usize, c: &[i64]) -> Result<WeightSpaceMatrix> {
    let n = f.n();
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::IndexOutOfRange(format!("t_{{{i},{j}}} for gl_{n}")));
    }
    let target: Vec<i64> = c.iter().zip(depth_shift(n, &[i], &[j])).map(|(x, d)| x + d).collect();
    let key = |z: &TableauDelta| vec![z.clone()];
    let cols: Vec<TensorKey> = f.basis_at(c).iter().map(key).collect();
    let rows: Vec<TensorKey> = f.basis_at(&target).iter().map(key).collect();
    let images = images_of(&cols, |v| {
        let (k, a) = v.iter().next().unwrap();
        let img = f.apply_t(i, j, r, &ModuleVector::from([(k[0].clone(), a.clone())]))?;
        Ok(img.into_iter().map(|(z, x)| (vec![z], x)).collect())
    })?;
    WeightSpaceMatrix::from_images(rows, cols, &images)
}

fn check_depth(m: &TensorModule, c: &[i64]) -> Result<()> {
    let h: i64 = c.iter().sum();
    if h > m.depth() as i64 {
        return Err(Error::DepthOverflow(format!("weight space of depth {h} beyond the truncation depth {}", m.depth())));
    }
    Ok(())
}

/// Matrix of `Δ(t_{ij}^{(r)})` from the weight space `c` to its image.
pub fn coproduct_action(m: &TensorModule, i: usize, j: usize, r: usize, c: &[i64]) -> Result<WeightSpaceMatrix> {
    m.check_index(i)?;
    m.check_index(j)?;
    let target = m.target_depth(c, &[i], &[j]);
    check_depth(m, c)?;
    check_depth(m, &target)?;
    let cols = m.basis(c);
    let images = images_of(&cols, |v| m.apply_t(i, j, r, v))?;
    WeightSpaceMatrix::from_images(m.basis(&target), cols, &images)
}

/// Quantum minor `t^{a}_{b}(u)` on the weight space `c`, coefficients `0..=order`.
/// A repeated index yields the zero series and sets `repeated_index`.
pub fn quantum_minor(m: &TensorModule, a: &[usize], b: &[usize], c: &[i64], order: usize) -> Result<OperatorSeries> {
    let repeated = |x: &[usize]| x.iter().enumerate().any(|(k, v)| x[k + 1..].contains(v));
    let target = m.target_depth(c, a, b);
    check_depth(m, c)?;
    check_depth(m, &target)?;
    let cols = m.basis(c);
    let rows = m.basis(&target);
    let series: Vec<Vec<TensorVector>> = cols
        .iter()
        .map(|k| m.minor_series(a, b, &TensorVector::from([(k.clone(), Scalar::one())]), order))
        .collect::<Result<_>>()?;
    let coeffs = (0..=order)
        .map(|t| {
            let images: Vec<TensorVector> = series.iter().map(|s| s[t].clone()).collect();
            WeightSpaceMatrix::from_images(rows.clone(), cols.clone(), &images)
        })
        .collect::<Result<_>>()?;
    Ok(OperatorSeries {
        coeffs,
        repeated_index: repeated(a) || repeated(b),
    })
}

/// Basis of the singular vectors of weight space `c`: the common kernel of the
/// coefficients `1..=order` of `b_m(u)`, `m = 1, …, n−1`.
pub fn find_singular_vectors(m: &TensorModule, c: &[i64], order: usize) -> Result<Vec<TensorVector>> {
    let cols = m.basis(c);
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    let n = m.n();
    let mut rows: BTreeMap<(usize, usize, TensorKey), Vec<Scalar>> = BTreeMap::new();
    for (col, key) in cols.iter().enumerate() {
        let v = TensorVector::from([(key.clone(), Scalar::one())]);
        for k in 1..n {
            let a: Vec<usize> = (1..=k).collect();
            let mut b: Vec<usize> = (1..k).collect();
            b.push(k + 1);
            let series = m.minor_series(&a, &b, &v, order)?;
            for (t, s) in series.iter().enumerate().skip(1) {
                for (target, x) in s {
                    rows.entry((k, t, target.clone()))
                        .or_insert_with(|| vec![Scalar::zero(); cols.len()])[col] = x.clone();
                }
            }
        }
    }
    let rows: Vec<Vec<Scalar>> = rows.into_values().collect();
    Ok(kernel(&rows, cols.len())
        .into_iter()
        .map(|v| {
            cols.iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (k.clone(), x))
                .collect()
        })
        .collect())
}

/// Singular-space dimension of every weight space up to the truncation depth.
/// `order` defaults to `n·depth + n`.
pub fn singular_profile(m: &TensorModule, order: Option<usize>) -> Result<Vec<(Vec<i64>, usize)>> {
    let order = order.unwrap_or(m.n() * m.depth() + m.n());
    m.weight_spaces()
        .par_iter()
        .map(|c| Ok((c.clone(), find_singular_vectors(m, c, order)?.len())))
        .collect()
}
