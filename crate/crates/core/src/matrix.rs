//! The coefficient matrix `A`, its kernel lattice, and maximal-minor arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::face::{Face, MAX_COLUMNS};
use crate::linalg::{self, ZRow};
use crate::lp::{LinearProgram, Relation};
use crate::{Error, Result};

/// A d×n integer matrix of full row rank whose kernel meets the nonnegative orthant only in 0.
/// Under these conditions every program `min c·x, Ax = b, x ∈ N^n` has a finite fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    small: Vec<i64>,
    grading: Vec<i64>,
    functional: Vec<BigInt>,
    scale: BigInt,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        let d = rows.len();
        let n = rows.first().map_or(0, |r| r.len());
        if d == 0 || n == 0 {
            return Err(Error::Dimension("matrix must have at least one row and column".into()));
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("rows of unequal length".into()));
        }
        if n > MAX_COLUMNS {
            return Err(Error::Dimension(format!("at most {MAX_COLUMNS} columns supported")));
        }
        let rank = linalg::rank(&rows);
        if rank < d {
            return Err(Error::RankDeficient { rank, rows: d });
        }
        if kernel_meets_orthant(&rows, n) {
            return Err(Error::UnboundedFamily);
        }
        let small = rows
            .iter()
            .flatten()
            .map(|x| x.to_i64().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        let (grading, functional, scale) = positive_grading(&rows, n)?;
        Ok(IntMatrix {
            rows: d,
            cols: n,
            data: rows.into_iter().flatten().collect(),
            small,
            grading,
            functional,
            scale,
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<IntMatrix> {
        IntMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// d
    pub fn nrows(&self) -> usize {
        self.rows
    }

    /// n
    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn entry_i64(&self, i: usize, j: usize) -> i64 {
        self.small[i * self.cols + j]
    }

    pub fn rows(&self) -> Vec<ZRow> {
        self.data.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        self.small.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    /// Column a_j.
    pub fn column(&self, j: usize) -> ZRow {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn column_i64(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.entry_i64(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<ZRow> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// The square (or narrower) submatrix A_σ, as rows.
    pub fn submatrix(&self, face: Face) -> Vec<ZRow> {
        let idx = face.indices();
        (0..self.rows)
            .map(|i| idx.iter().map(|&j| self.entry(i, j).clone()).collect())
            .collect()
    }

    /// A·x for a machine-word vector.
    pub fn apply_i64(&self, x: &[i64]) -> Vec<i64> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entry_i64(i, j) * x[j])
                    .sum()
            })
            .collect()
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j) * &x[j]).sum())
            .collect()
    }

    /// A strictly positive integer vector w = yA in the row space; w·x is constant on fibers.
    pub fn grading(&self) -> &[i64] {
        &self.grading
    }

    /// The common value of `grading()·x` over the fiber `{x : Ax = b}`, or `None` when
    /// it is not an integer (then the fiber has no integer points).
    pub fn graded_degree(&self, b: &[BigInt]) -> Option<BigInt> {
        let v: BigInt = self.functional.iter().zip(b).map(|(y, bi)| y * bi).sum();
        let (q, r) = v.div_rem(&self.scale);
        r.is_zero().then_some(q)
    }
}

/// Exact test: does {x ≥ 0, Ax = 0, Σx = 1} have a rational point?
pub fn kernel_meets_orthant(rows: &[ZRow], n: usize) -> bool {
    let mut lp = LinearProgram::nonnegative(n);
    for r in rows {
        lp.add(
            r.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
            Relation::Eq,
            BigRational::zero(),
        );
    }
    lp.add(vec![BigRational::one(); n], Relation::Eq, BigRational::one());
    lp.feasible_point().is_some()
}

/// Returns `(w, Y, g)` with `w = YA / g` strictly positive and primitive.
fn positive_grading(rows: &[ZRow], n: usize) -> Result<(Vec<i64>, Vec<BigInt>, BigInt)> {
    let d = rows.len();
    let mut lp = LinearProgram::free(d);
    for j in 0..n {
        lp.add(
            rows.iter().map(|r| BigRational::from_integer(r[j].clone())).collect(),
            Relation::Ge,
            BigRational::one(),
        );
    }
    let y = lp.feasible_point().ok_or(Error::UnboundedFamily)?;
    let denom = y.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let w: Vec<BigInt> = (0..n)
        .map(|j| {
            rows.iter()
                .zip(&y)
                .map(|(r, yi)| (yi * BigRational::from_integer(&denom * &r[j])).to_integer())
                .sum()
        })
        .collect();
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let small = w
        .iter()
        .map(|x| (x / &g).to_i64().ok_or(Error::Overflow))
        .collect::<Result<Vec<i64>>>()?;
    let functional = y
        .iter()
        .map(|q| (q * BigRational::from_integer(denom.clone())).to_integer())
        .collect();
    Ok((small, functional, g))
}

/// An n×(n−d) integer matrix whose columns form a basis of the saturated lattice
/// `L = {x ∈ Z^n : Ax = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    n: usize,
    columns: Vec<ZRow>,
    small: Vec<Vec<i64>>,
}

impl LatticeBasis {
    /// Validate a user-supplied basis: A·B = 0, n − d columns, and Smith index 1.
    pub fn from_columns(a: &IntMatrix, columns: Vec<ZRow>) -> Result<LatticeBasis> {
        let n = a.ncols();
        let k = n - a.nrows();
        if columns.len() != k || columns.iter().any(|c| c.len() != n) {
            return Err(Error::Dimension(format!("lattice basis must be {n}×{k}")));
        }
        for c in &columns {
            if a.apply(c).iter().any(|x| !x.is_zero()) {
                return Err(Error::Internal("basis column not in the kernel of A".into()));
            }
        }
        if k > 0 {
            let as_rows = linalg::transpose(&columns, n);
            let inv = linalg::smith_invariants(&as_rows, k);
            if inv.len() != k || inv.iter().any(|x| !x.is_one()) {
                return Err(Error::Internal(
                    "columns do not generate the saturated kernel lattice".into(),
                ));
            }
        }
        let small = columns
            .iter()
            .map(|c| c.iter().map(|x| x.to_i64().ok_or(Error::Overflow)).collect())
            .collect::<Result<Vec<Vec<i64>>>>()?;
        Ok(LatticeBasis { n, columns, small })
    }

    pub fn from_i64_columns(a: &IntMatrix, columns: &[Vec<i64>]) -> Result<LatticeBasis> {
        LatticeBasis::from_columns(
            a,
            columns
                .iter()
                .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// n − d
    pub fn rank(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[ZRow] {
        &self.columns
    }

    pub fn columns_i64(&self) -> &[Vec<i64>] {
        &self.small
    }

    /// Row i of B (length n − d).
    pub fn row_i64(&self, i: usize) -> Vec<i64> {
        self.small.iter().map(|c| c[i]).collect()
    }

    /// Rows of B indexed by the complement of τ, in increasing index order (B^τ̄).
    pub fn projected_rows(&self, tau: Face) -> Vec<(usize, Vec<i64>)> {
        (0..self.n)
            .filter(|&i| !tau.contains(i))
            .map(|i| (i, self.row_i64(i)))
            .collect()
    }

    /// B·z
    pub fn apply_i64(&self, z: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| self.small.iter().zip(z).map(|(c, zj)| c[i] * zj).sum())
            .collect()
    }
}

/// Basis of the kernel lattice via column Hermite reduction, verified saturated.
pub fn kernel_lattice_basis(a: &IntMatrix) -> Result<LatticeBasis> {
    let cols = linalg::integer_kernel(&a.rows(), a.ncols());
    LatticeBasis::from_columns(a, cols)
}

/// gcd of all d×d minors of A.
pub fn gcd_maximal_minors(a: &IntMatrix) -> BigInt {
    Face::combinations(a.ncols(), a.nrows())
        .into_iter()
        .fold(BigInt::zero(), |g, s| g.gcd(&linalg::det(&a.submatrix(s))))
}

/// |det A_σ| for |σ| = d.
pub fn face_determinant(a: &IntMatrix, sigma: Face) -> Result<BigInt> {
    if sigma.len() != a.nrows() {
        return Err(Error::BadIndex(format!(
            "face {sigma} has {} columns, expected {}",
            sigma.len(),
            a.nrows()
        )));
    }
    if sigma.iter().any(|j| j >= a.ncols()) {
        return Err(Error::BadIndex(format!("face {sigma} out of range")));
    }
    Ok(linalg::det(&a.submatrix(sigma)).abs())
}
