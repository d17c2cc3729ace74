//! Enumeration of fibers `{x ∈ N^n : Ax = b}`.
//!
//! The non-basic coordinates of a fixed nonsingular d-subset σ are swept under the
//! positive grading budget `w·x = w·b`; the basic coordinates are then forced.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::face::Face;
use crate::groebner::CostOrder;
use crate::linalg;
use crate::matrix::IntMatrix;
use crate::{Error, Result};

struct Sweep<'a> {
    a: &'a IntMatrix,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
    /// adjugate of A_σ, so that A_σ^{-1} = adj / det
    adj: Vec<Vec<i128>>,
    det: i128,
    weights: Vec<i64>,
}

impl<'a> Sweep<'a> {
    fn new(a: &'a IntMatrix) -> Result<Sweep<'a>> {
        let d = a.nrows();
        let n = a.ncols();
        let sigma = Face::combinations(n, d)
            .into_iter()
            .find(|&s| !linalg::det(&a.submatrix(s)).is_zero())
            .ok_or_else(|| Error::Internal("no nonsingular maximal minor".into()))?;
        let sub = a.submatrix(sigma);
        let det = linalg::det(&sub);
        let inv = linalg::inverse(&linalg::to_rational(&sub))
            .ok_or_else(|| Error::Internal("singular basis".into()))?;
        let adj = inv
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| {
                        (q * num_rational::BigRational::from_integer(det.clone()))
                            .to_integer()
                            .to_i128()
                            .ok_or(Error::Overflow)
                    })
                    .collect::<Result<Vec<i128>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Sweep {
            a,
            basic: sigma.indices(),
            nonbasic: sigma.complement(n).indices(),
            adj,
            det: det.to_i128().ok_or(Error::Overflow)?,
            weights: a.grading().to_vec(),
        })
    }

    /// Calls `visit` on every fiber point; stops early when `visit` returns false.
    fn run(&self, b: &[i64], visit: &mut dyn FnMut(&[i64]) -> bool) -> Result<()> {
        let bb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
        let Some(budget) = self.a.graded_degree(&bb) else {
            return Ok(());
        };
        if budget.is_negative() {
            return Ok(());
        }
        let budget = budget.to_i64().ok_or(Error::Overflow)?;
        let mut x = vec![0i64; self.a.ncols()];
        let mut rest: Vec<i128> = b.iter().map(|&v| v as i128).collect();
        self.descend(0, budget, &mut x, &mut rest, visit);
        Ok(())
    }

    fn descend(
        &self,
        k: usize,
        budget: i64,
        x: &mut [i64],
        rest: &mut [i128],
        visit: &mut dyn FnMut(&[i64]) -> bool,
    ) -> bool {
        let d = self.basic.len();
        if k == self.nonbasic.len() {
            for (r, &bj) in self.basic.iter().enumerate() {
                let num: i128 = (0..d).map(|i| self.adj[r][i] * rest[i]).sum();
                if num % self.det != 0 {
                    return true;
                }
                let v = num / self.det;
                if v < 0 {
                    return true;
                }
                x[bj] = v as i64;
            }
            let keep = visit(x);
            for &bj in &self.basic {
                x[bj] = 0;
            }
            return keep;
        }
        let j = self.nonbasic[k];
        let w = self.weights[j];
        let col = self.a.column_i64(j);
        let mut v = 0;
        while v * w <= budget {
            x[j] = v;
            if !self.descend(k + 1, budget - v * w, x, rest, visit) {
                x[j] = 0;
                for (r, c) in rest.iter_mut().zip(&col) {
                    *r += (v as i128) * (*c as i128);
                }
                return false;
            }
            for (r, c) in rest.iter_mut().zip(&col) {
                *r -= *c as i128;
            }
            v += 1;
        }
        x[j] = 0;
        for (r, c) in rest.iter_mut().zip(&col) {
            *r += (v as i128) * (*c as i128);
        }
        true
    }
}

/// Visit every point of the fiber of b; `visit` returns false to stop early.
pub fn for_each_fiber_point(
    a: &IntMatrix,
    b: &[i64],
    mut visit: impl FnMut(&[i64]) -> bool,
) -> Result<()> {
    if b.len() != a.nrows() {
        return Err(Error::Dimension(format!("rhs has length {}, expected {}", b.len(), a.nrows())));
    }
    Sweep::new(a)?.run(b, &mut visit)
}

/// All fiber points, in sweep order.
pub fn fiber_points(a: &IntMatrix, b: &[i64]) -> Result<Vec<Vec<i64>>> {
    let mut out = Vec::new();
    for_each_fiber_point(a, b, |x| {
        out.push(x.to_vec());
        true
    })?;
    Ok(out)
}

/// Some fiber point, if the fiber is nonempty.
pub fn first_fiber_point(a: &IntMatrix, b: &[i64]) -> Result<Option<Vec<i64>>> {
    let mut found = None;
    for_each_fiber_point(a, b, |x| {
        found = Some(x.to_vec());
        false
    })?;
    Ok(found)
}

/// The minimum of the fiber under the cost order (cost, then refinements, then the
/// lexicographically smallest point). `None` when the fiber is empty.
pub fn fiber_minimum(a: &IntMatrix, order: &CostOrder, b: &[i64]) -> Result<Option<Vec<i64>>> {
    let mut best: Option<Vec<i64>> = None;
    for_each_fiber_point(a, b, |x| {
        if best
            .as_ref()
            .map_or(true, |cur| order.compare(x, cur).is_lt())
        {
            best = Some(x.to_vec());
        }
        true
    })?;
    Ok(best)
}
