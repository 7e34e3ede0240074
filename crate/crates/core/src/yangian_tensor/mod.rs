//! Highest-weight evaluation modules over `Y(gl_n)`, their tensor products,
//! and the genericity and integral irreducibility conditions.

mod tensor;

pub use tensor::{
    coproduct_action, evaluation_action, find_singular_vectors, quantum_minor, singular_profile,
    EvaluationFactor, OperatorSeries, TensorKey, TensorModule, TensorVector, WeightSpaceMatrix,
};

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{int, is_integer, to_i64, Scalar};
use crate::pyramid::Pyramid;

/// A `gl_n` weight `λ = (λ_1, …, λ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlWeight(#[serde(with = "crate::exact_arith::scalar_vec_serde")] pub Vec<Scalar>);

impl GlWeight {
    pub fn new(lambda: Vec<Scalar>) -> Self {
        GlWeight(lambda)
    }

    pub fn from_ints(lambda: &[i64]) -> Self {
        GlWeight(lambda.iter().map(|&x| int(x)).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `λ_i`, 1-based.
    pub fn lambda(&self, i: usize) -> &Scalar {
        &self.0[i - 1]
    }

    /// `l_i = λ_i − i + 1`, 1-based.
    pub fn l(&self, i: usize) -> Scalar {
        &self.0[i - 1] - int(i as i64 - 1)
    }

    pub fn ls(&self) -> Vec<Scalar> {
        (1..=self.n()).map(|i| self.l(i)).collect()
    }

    pub fn is_good(&self) -> bool {
        let n = self.n();
        (1..=n).all(|i| {
            (i + 1..=n).all(|j| {
                let d = self.lambda(i) - self.lambda(j);
                !is_integer(&d) || d > int(i as i64 - j as i64)
            })
        })
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.0.windows(2).all(|w| {
            let d = &w[0] - &w[1];
            is_integer(&d) && d >= int(0)
        })
    }
}

/// `(−λ_n, …, −λ_1)`.
pub fn dual_weight(w: &GlWeight) -> GlWeight {
    GlWeight(w.0.iter().rev().map(|x| -x).collect())
}

/// No two weights of the list differ by an integer in any pair of entries.
pub fn is_generic(weights: &[GlWeight]) -> bool {
    weights.iter().enumerate().all(|(a, wa)| {
        weights[a + 1..]
            .iter()
            .all(|wb| wa.0.iter().all(|x| wb.0.iter().all(|y| !is_integer(&(x - y)))))
    })
}

/// Every column `λ^{(k)}` is good for the pyramid's `gl_n`.
pub fn is_good(columns: &[GlWeight], p: &Pyramid) -> bool {
    columns.iter().all(|w| w.n() == p.n() && w.is_good())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Down,
    Up,
}

/// `{start + z : z ∈ ℤ, z ≤ 0}` (down) or `z ≥ 0` (up), minus a finite set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ray {
    #[serde(with = "crate::exact_arith::scalar_serde")]
    pub start: Scalar,
    pub direction: Direction,
    #[serde(with = "crate::exact_arith::scalar_vec_serde")]
    pub excluded: Vec<Scalar>,
}

impl Ray {
    pub fn contains(&self, x: &Scalar) -> bool {
        let d = x - &self.start;
        let inside = match self.direction {
            Direction::Down => d <= int(0),
            Direction::Up => d >= int(0),
        };
        is_integer(&d) && inside && !self.excluded.contains(x)
    }
}

/// A finite set of scalars together with finitely many rays.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalSet {
    #[serde(with = "crate::exact_arith::scalar_vec_serde")]
    pub finite: Vec<Scalar>,
    pub rays: Vec<Ray>,
}

impl IntervalSet {
    pub fn contains(&self, x: &Scalar) -> bool {
        self.finite.contains(x) || self.rays.iter().any(|r| r.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.rays.is_empty()
    }
}

/// Integer-linked chains of `{l_j, …, l_i}`, each listed by decreasing index.
fn chains(l: &[Scalar], i: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for idx in (i..=j).rev() {
        match out.iter_mut().find(|c| is_integer(&(&l[c[0] - 1] - &l[idx - 1]))) {
            Some(c) => c.push(idx),
            None => out.push(vec![idx]),
        }
    }
    out
}

/// `⟨l_j, l_i⟩^−` and `⟨l_j, l_i⟩^+` for `i < j` (1-based indices into `l`).
/// A chain reaching index `j` (resp. `i`) contributes the integer interval
/// between its extreme values minus the chain; otherwise the interval is
/// continued to a ray downwards (resp. upwards).
pub fn interval_sets(l: &[Scalar], i: usize, j: usize) -> Result<(IntervalSet, IntervalSet)> {
    if !(1 <= i && i < j && j <= l.len()) {
        return Err(Error::IndexOutOfRange(format!("need 1 <= i < j <= {}, got i={i}, j={j}", l.len())));
    }
    let mut minus = IntervalSet::default();
    let mut plus = IntervalSet::default();
    for chain in chains(l, i, j) {
        let vals: BTreeSet<Scalar> = chain.iter().map(|&k| l[k - 1].clone()).collect();
        let lo = vals.iter().next().unwrap().clone();
        let hi = vals.iter().next_back().unwrap().clone();
        let span = to_i64(&(&hi - &lo)).unwrap();
        let bounded: Vec<Scalar> = (0..=span)
            .map(|z| &lo + int(z))
            .filter(|x| !vals.contains(x))
            .collect();
        let excluded: Vec<Scalar> = vals.iter().cloned().collect();
        if chain.contains(&j) {
            minus.finite.extend(bounded.iter().cloned());
        } else {
            minus.rays.push(Ray {
                start: hi.clone(),
                direction: Direction::Down,
                excluded: excluded.clone(),
            });
        }
        if chain.contains(&i) {
            plus.finite.extend(bounded);
        } else {
            plus.rays.push(Ray {
                start: lo,
                direction: Direction::Up,
                excluded,
            });
        }
    }
    for s in [&mut minus, &mut plus] {
        s.finite.sort();
        s.finite.dedup();
    }
    Ok((minus, plus))
}

/// The sufficient irreducibility condition for `L(λ) ⊗ L(μ)`: for every
/// `i < j`, either `m_j ∉ ⟨l_j,l_i⟩^−` and `m_i ∉ ⟨l_j,l_i⟩^+`, or the same
/// with the roles of `λ` and `μ` exchanged.
pub fn integral_condition(lambda: &GlWeight, mu: &GlWeight) -> Result<bool> {
    let n = lambda.n();
    if mu.n() != n {
        return Err(Error::IndexOutOfRange(format!("weights of lengths {n} and {}", mu.n())));
    }
    for w in [lambda, mu] {
        if !w.is_good() {
            return Err(Error::NotGood(format!("{:?}", w.0.iter().map(crate::exact_arith::format_scalar).collect::<Vec<_>>())));
        }
    }
    let l = lambda.ls();
    let m = mu.ls();
    for i in 1..=n {
        for j in i + 1..=n {
            let (lm, lp) = interval_sets(&l, i, j)?;
            let (mm, mp) = interval_sets(&m, i, j)?;
            let first = !lm.contains(&m[j - 1]) && !lp.contains(&m[i - 1]);
            let second = !mm.contains(&l[j - 1]) && !mp.contains(&l[i - 1]);
            if !first && !second {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
