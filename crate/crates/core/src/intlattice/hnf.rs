use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{int_det_guarded, IntMatrix, LatticeError};
use crate::guard::Guard;
use crate::scalar::IntScalar;

/// Hermite normal form of the lattice generated by `vectors`.
///
/// Returns a basis in echelon form, one vector per pivot: pivots positive,
/// entries above each pivot reduced into `[0, pivot)`. Equivalently, the
/// nonzero columns of the column-style HNF of the matrix whose columns are
/// `vectors`, read as rows.
pub fn hermite_normal_form<T: IntScalar>(vectors: &[Vec<T>]) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    let dim = check_vectors(vectors)?;
    let mut w: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(IntScalar::to_bigint).collect())
        .collect();
    let mut rank = 0;
    for col in 0..dim {
        loop {
            let pivot = (rank..w.len())
                .filter(|&r| !w[r][col].is_zero())
                .min_by(|&a, &b| w[a][col].abs().cmp(&w[b][col].abs()));
            let Some(p) = pivot else { break };
            w.swap(rank, p);
            let mut done = true;
            for r in rank + 1..w.len() {
                if w[r][col].is_zero() {
                    continue;
                }
                let q = w[r][col].div_floor(&w[rank][col]);
                let (head, tail) = w.split_at_mut(r);
                for (x, y) in tail[0].iter_mut().zip(&head[rank]) {
                    *x -= &q * y;
                }
                if !w[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rank == w.len() || w[rank][col].is_zero() {
            continue;
        }
        if w[rank][col].is_negative() {
            for x in &mut w[rank] {
                *x = -&*x;
            }
        }
        for r in 0..rank {
            let q = w[r][col].div_floor(&w[rank][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = w.split_at_mut(rank);
            for (x, y) in head[r].iter_mut().zip(&tail[0]) {
                *x -= &q * y;
            }
        }
        rank += 1;
    }
    w.truncate(rank);
    Ok(w)
}

fn check_vectors<T>(vectors: &[Vec<T>]) -> Result<usize, LatticeError> {
    let dim = vectors.first().ok_or(LatticeError::Empty)?.len();
    if dim == 0 {
        return Err(LatticeError::Empty);
    }
    if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != dim) {
        return Err(LatticeError::DimensionMismatch(format!(
            "vector {} has length {}, expected {dim}",
            i + 1,
            v.len()
        )));
    }
    Ok(dim)
}

/// Whether the integer span of `vectors` is all of ℤⁿ.
pub fn spans_zn<T: IntScalar>(vectors: &[Vec<T>]) -> Result<bool, LatticeError> {
    let dim = check_vectors(vectors)?;
    if vectors.len() < dim {
        return Ok(false);
    }
    if vectors.len() == dim {
        let cols: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| v.iter().map(IntScalar::to_bigint).collect())
            .collect();
        let d = int_det_guarded(&IntMatrix::from_columns(&cols)?, Guard::Force)?;
        return Ok(d.abs() == BigInt::from(1));
    }
    let h = hermite_normal_form(vectors)?;
    Ok(h.len() == dim && h.iter().enumerate().all(|(i, r)| r[i] == BigInt::from(1)))
}
