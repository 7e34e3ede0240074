use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{frac, int, Scalar};
use crate::error::{Error, Result};

const DENOMINATORS: [i64; 8] = [101, 103, 107, 109, 113, 127, 131, 137];

/// Values for symbolic entry classes, pairwise non-integer apart.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenericAssignment {
    #[serde(serialize_with = "serialize_values")]
    pub class_values: BTreeMap<usize, Scalar>,
    pub seed: u64,
}

fn serialize_values<S: serde::Serializer>(
    m: &BTreeMap<usize, Scalar>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(k, &super::format_scalar(v))?;
    }
    map.end()
}

impl GenericAssignment {
    pub fn value(&self, class: usize) -> Option<&Scalar> {
        self.class_values.get(&class)
    }
}

/// Deterministic generic values: each class gets `n + k/D` with a prime `D`
/// and distinct residues `k`, so cross-class differences are never integers.
pub fn generic_instantiate(
    classes: impl IntoIterator<Item = usize>,
    seed: u64,
) -> GenericAssignment {
    let classes: BTreeSet<usize> = classes.into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut den = DENOMINATORS[rng.gen_range(0..DENOMINATORS.len())];
    while (den as usize) <= classes.len() {
        den = den * 10 + 7;
    }
    let mut residues: Vec<i64> = (1..den).collect();
    residues.shuffle(&mut rng);
    let class_values = classes
        .into_iter()
        .zip(residues)
        .map(|(c, k)| (c, int(rng.gen_range(-8..=8)) + frac(k, den)))
        .collect();
    GenericAssignment { class_values, seed }
}

/// `Π numerator_values / Π_{j≠i}(points[j] − points[i])`.
pub fn lagrange_coefficient(
    points: &[Scalar],
    target_index: usize,
    numerator_values: &[Scalar],
) -> Result<Scalar> {
    let x = points
        .get(target_index)
        .ok_or_else(|| Error::IndexOutOfRange(format!("target index {target_index}")))?;
    let mut den = int(1);
    for (j, p) in points.iter().enumerate() {
        if j == target_index {
            continue;
        }
        let d = p - x;
        if d.is_zero() {
            return Err(Error::Critical { row: 0 });
        }
        den *= d;
    }
    let num = numerator_values.iter().fold(int(1), |acc, v| acc * v);
    Ok(num / den)
}
