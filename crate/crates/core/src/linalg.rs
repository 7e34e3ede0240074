//! Exact kernels of rational matrices by fraction-free elimination.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::exact_arith::Scalar;

/// Basis of `{x : M x = 0}` for a matrix given by rows of length `cols`.
/// Rows are cleared of denominators and eliminated with Bareiss' fraction-free
/// scheme; the basis vectors are returned with integer entries.
pub fn kernel(rows: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| integer_row(r))
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        pivots.push(col);
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    m.truncate(rank);
    // Back substitution over the rationals on the echelon form.
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![Scalar::zero(); cols];
        x[f] = Scalar::one();
        for (r, &pc) in pivots.iter().enumerate().rev() {
            let mut acc = Scalar::zero();
            for c in pc + 1..cols {
                if !m[r][c].is_zero() && !x[c].is_zero() {
                    acc += Scalar::from_integer(m[r][c].clone()) * &x[c];
                }
            }
            x[pc] = -acc / Scalar::from_integer(m[r][pc].clone());
        }
        basis.push(primitive(x));
    }
    basis
}

fn integer_row(r: &[Scalar]) -> Vec<BigInt> {
    let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    r.iter()
        .map(|x| (x * Scalar::from_integer(l.clone())).to_integer())
        .collect()
}

/// Scales a vector to coprime integers with a positive leading entry.
fn primitive(x: Vec<Scalar>) -> Vec<Scalar> {
    let ints = integer_row(&x);
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return x;
    }
    let sign = ints
        .iter()
        .find(|v| !v.is_zero())
        .map_or(BigInt::one(), |v| if v.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.into_iter()
        .map(|v| Scalar::from_integer(v * &sign / &g))
        .collect()
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Scalar>], cols: usize) -> usize {
    cols - kernel(rows, cols).len()
}
