//! Regular subdivisions Δ_c of cone(A), optimal LP faces, and unimodularity.
//!
//! Maximal cells are found as vertices of `P_c = {y : yA ≤ c}`: every nonsingular
//! d-subset σ gives a candidate `y = c_σ A_σ^{-1}`; if `y` is feasible, the set of
//! columns where `y·a_j = c_j` is a maximal cell and `y` certifies it.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::face::Face;
use crate::linalg::{self, QRow, ZRow};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::matrix::{gcd_maximal_minors, IntMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularTriangulation {
    d: usize,
    n: usize,
    columns: Vec<ZRow>,
    maximal_faces: Vec<Face>,
    certificates: BTreeMap<Face, QRow>,
    triangulation: bool,
}

fn rat(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn dot_q(y: &[BigRational], a: &[BigInt]) -> BigRational {
    y.iter().zip(a).map(|(yi, ai)| yi * rat(ai)).sum()
}

/// Δ_c for the columns `a_j` (each of length d) and costs `c_j`.
pub(crate) fn subdivide_columns(columns: &[ZRow], d: usize, cost: &[BigInt]) -> RegularTriangulation {
    let n = columns.len();
    let mut cells: BTreeMap<Face, QRow> = BTreeMap::new();
    for sigma in Face::combinations(n, d) {
        // A_σ^T y = c_σ
        let m: Vec<QRow> = sigma
            .iter()
            .map(|j| columns[j].iter().map(rat).collect())
            .collect();
        let rhs: QRow = sigma.iter().map(|j| rat(&cost[j])).collect();
        let Some(y) = linalg::solve_full_column_rank(&m, &rhs) else {
            continue;
        };
        let mut cell = Face::EMPTY;
        let mut feasible = true;
        for (j, a) in columns.iter().enumerate() {
            let slack = rat(&cost[j]) - dot_q(&y, a);
            if slack.is_negative() {
                feasible = false;
                break;
            }
            if slack.is_zero() {
                cell = cell.insert(j);
            }
        }
        if feasible {
            cells.entry(cell).or_insert(y);
        }
    }
    let triangulation = cells.keys().all(|f| f.len() == d);
    RegularTriangulation {
        d,
        n,
        columns: columns.to_vec(),
        maximal_faces: cells.keys().copied().collect(),
        certificates: cells,
        triangulation,
    }
}

/// The regular subdivision of cone(A) induced by lifting column j to height c_j.
/// Non-simplicial cells are reported through `is_triangulation()`, not as an error.
pub fn regular_subdivision(a: &IntMatrix, cost: &[i64]) -> RegularTriangulation {
    let c: Vec<BigInt> = cost.iter().map(|&x| BigInt::from(x)).collect();
    subdivide_columns(&a.columns(), a.nrows(), &c)
}

impl RegularTriangulation {
    /// A triangulation given by its maximal faces, without certificates
    /// (for user-supplied face sets that are checked elsewhere).
    pub fn from_faces(a: &IntMatrix, faces: &[Face]) -> Result<RegularTriangulation> {
        let d = a.nrows();
        for f in faces {
            if f.len() != d || f.iter().any(|j| j >= a.ncols()) {
                return Err(Error::BadIndex(format!("{f} is not a d-subset of the columns")));
            }
            if linalg::det(&a.submatrix(*f)).is_zero() {
                return Err(Error::BadIndex(format!("{f} has singular columns")));
            }
        }
        let mut maximal_faces = faces.to_vec();
        maximal_faces.sort();
        maximal_faces.dedup();
        Ok(RegularTriangulation {
            d,
            n: a.ncols(),
            columns: a.columns(),
            maximal_faces,
            certificates: BTreeMap::new(),
            triangulation: true,
        })
    }

    pub fn maximal_faces(&self) -> &[Face] {
        &self.maximal_faces
    }

    pub fn certificate(&self, sigma: Face) -> Option<&QRow> {
        self.certificates.get(&sigma)
    }

    pub fn certificates(&self) -> &BTreeMap<Face, QRow> {
        &self.certificates
    }

    /// True when every maximal cell has exactly d linearly independent columns.
    pub fn is_triangulation(&self) -> bool {
        self.triangulation
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_maximal(&self, f: Face) -> bool {
        self.maximal_faces.binary_search(&f).is_ok()
    }

    /// τ is a face iff it lies in some maximal cell (valid for triangulations).
    pub fn contains_face(&self, tau: Face) -> bool {
        self.maximal_faces.iter().any(|s| tau.is_subset(*s))
    }

    /// All faces (subset closure of the maximal faces), sorted.
    pub fn all_faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .maximal_faces
            .iter()
            .flat_map(|s| s.subsets())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Lexicographically lowest maximal face containing τ.
    pub fn lowest_maximal_containing(&self, tau: Face) -> Option<Face> {
        self.maximal_faces.iter().copied().find(|s| tau.is_subset(*s))
    }

    /// Coordinates λ with A_σ λ = v, indexed like σ's sorted indices.
    pub fn cell_coordinates(&self, sigma: Face, v: &[BigRational]) -> Option<QRow> {
        let m: Vec<QRow> = (0..self.d)
            .map(|i| sigma.iter().map(|j| rat(&self.columns[j][i])).collect())
            .collect();
        linalg::solve_full_column_rank(&m, v)
    }

    /// The smallest face τ with b ∈ cone(A_τ): the support of b's coordinates in any
    /// maximal cell containing it.
    pub fn optimal_face(&self, b: &[BigInt]) -> Result<Face> {
        if !self.triangulation {
            return Err(Error::NotSimplicial);
        }
        if b.len() != self.d {
            return Err(Error::Dimension(format!("rhs has length {}, expected {}", b.len(), self.d)));
        }
        let bq: QRow = b.iter().map(rat).collect();
        for &sigma in &self.maximal_faces {
            let Some(lambda) = self.cell_coordinates(sigma, &bq) else {
                continue;
            };
            if lambda.iter().all(|x| !x.is_negative()) {
                return Ok(Face::from_indices(
                    sigma
                        .iter()
                        .zip(&lambda)
                        .filter(|(_, l)| !l.is_zero())
                        .map(|(j, _)| j),
                ));
            }
        }
        Err(Error::OutsideCone)
    }
}

/// Independent face test by LP: does some y satisfy y·a_j = c_j on τ and y·a_j < c_j off τ?
/// Returns such a y when it exists.
pub fn face_certificate(a: &IntMatrix, cost: &[i64], tau: Face) -> Option<QRow> {
    let d = a.nrows();
    // variables (y_1..y_d, t): maximize t with y·a_j + t ≤ c_j off τ, t ≤ 1
    let mut lp = LinearProgram::free(d + 1);
    for j in 0..a.ncols() {
        let mut row: QRow = a.column(j).iter().map(rat).collect();
        let c = BigRational::from_integer(cost[j].into());
        if tau.contains(j) {
            row.push(BigRational::zero());
            lp.add(row, Relation::Eq, c);
        } else {
            row.push(BigRational::one());
            lp.add(row, Relation::Le, c);
        }
    }
    let mut cap = vec![BigRational::zero(); d];
    cap.push(BigRational::one());
    lp.add(cap.clone(), Relation::Le, BigRational::one());
    match lp.maximize(&cap) {
        LpOutcome::Optimal { value, point } if value.is_positive() => Some(point[..d].to_vec()),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularityReport {
    /// |det A_σ| / gcd of maximal minors, per maximal face.
    pub indices: BTreeMap<Face, BigInt>,
    pub gcd: BigInt,
    /// All indices equal 1.
    pub tdi: bool,
}

pub fn unimodularity_report(a: &IntMatrix, delta: &RegularTriangulation) -> UnimodularityReport {
    let g = gcd_maximal_minors(a);
    let indices: BTreeMap<Face, BigInt> = delta
        .maximal_faces()
        .iter()
        .map(|&s| (s, linalg::det(&a.submatrix(s)).abs() / &g))
        .collect();
    let tdi = delta.is_triangulation() && indices.values().all(|x| x.is_one());
    UnimodularityReport {
        indices,
        gcd: g,
        tdi,
    }
}
