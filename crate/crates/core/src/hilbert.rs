//! Hilbert bases of pointed cones, normality tests, the Gomory-cost construction and
//! the sharp chain-length family.
//!
//! A Hilbert basis is computed in coordinates of the lattice `span ∩ Z^d`: the cone is
//! triangulated by a placing triangulation, the lattice points of each half-open
//! fundamental parallelepiped are collected as coset representatives of the cell
//! lattice, and the candidates are reduced to the minimal set.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::face::Face;
use crate::fiber::first_fiber_point;
use crate::groebner::{realize_generic, toric_groebner, CostOrder};
use crate::linalg::{self, QRow, ZRow};
use crate::lp::{LinearProgram, Relation};
use crate::matrix::{kernel_meets_orthant, IntMatrix};
use crate::stdpairs::{initial_ideal, is_gomory_family, standard_pair_decomposition, Decomposition};
use crate::triangulation::{regular_subdivision, subdivide_columns, RegularTriangulation};
use crate::{Error, Result};

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn to_i64(x: &BigInt) -> Result<i64> {
    x.to_i64().ok_or(Error::Overflow)
}

/// One simplicial cell, in lattice coordinates.
#[derive(Clone, Debug)]
struct Cell {
    /// columns are the cell generators
    gens: Vec<Vec<i64>>,
    inverse: Vec<QRow>,
}

impl Cell {
    fn new(gens: Vec<Vec<i64>>) -> Result<Cell> {
        let r = gens.len();
        let m: Vec<QRow> = (0..r).map(|i| gens.iter().map(|g| q(g[i])).collect()).collect();
        let inverse = linalg::inverse(&m).ok_or_else(|| Error::Internal("singular cell".into()))?;
        Ok(Cell { gens, inverse })
    }

    fn coefficients(&self, x: &[i64]) -> QRow {
        let v: QRow = x.iter().map(|&t| q(t)).collect();
        linalg::mat_vec_q(&self.inverse, &v)
    }

    fn contains(&self, x: &[i64]) -> bool {
        self.coefficients(x).iter().all(|l| !l.is_negative())
    }

    /// Lattice points of `{Σ λ_i g_i : 0 ≤ λ_i < 1}`.
    fn parallelepiped(&self) -> Result<Vec<Vec<i64>>> {
        let r = self.gens.len();
        let m: Vec<ZRow> = (0..r)
            .map(|i| self.gens.iter().map(|g| BigInt::from(g[i])).collect())
            .collect();
        let (h, _, rank) = linalg::column_hermite(&m, r);
        if rank != r {
            return Err(Error::Internal("cell lattice is not full rank".into()));
        }
        let diag: Vec<i64> = (0..r).map(|i| to_i64(&h[i][i])).collect::<Result<_>>()?;
        let mut out = Vec::new();
        let mut rep = vec![0i64; r];
        loop {
            let lambda = self.coefficients(&rep);
            let mut point = vec![BigRational::zero(); r];
            for (l, g) in lambda.iter().zip(&self.gens) {
                let frac = l - l.floor();
                for (p, &gi) in point.iter_mut().zip(g) {
                    *p += &frac * q(gi);
                }
            }
            out.push(
                point
                    .iter()
                    .map(|p| to_i64(&p.to_integer()))
                    .collect::<Result<Vec<i64>>>()?,
            );
            // odometer over 0 ≤ rep_i < H_ii
            let mut k = 0;
            while k < r {
                rep[k] += 1;
                if rep[k] < diag[k] {
                    break;
                }
                rep[k] = 0;
                k += 1;
            }
            if k == r {
                break;
            }
        }
        Ok(out)
    }
}

/// The minimal Hilbert basis of `cone(generators) ∩ Z^d`.
#[derive(Clone, Debug)]
pub struct HilbertBasis {
    dim: usize,
    /// columns: a basis of the lattice `span(generators) ∩ Z^d`
    lattice: Vec<Vec<i64>>,
    cells: Vec<Cell>,
    elements: Vec<Vec<i64>>,
}

impl HilbertBasis {
    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    /// Ambient dimension d.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the cone.
    pub fn rank(&self) -> usize {
        self.lattice.len()
    }

    fn coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        if self.lattice.is_empty() {
            return x.iter().all(|&v| v == 0).then(Vec::new);
        }
        let m: Vec<QRow> = (0..self.dim)
            .map(|i| self.lattice.iter().map(|b| q(b[i])).collect())
            .collect();
        let rhs: QRow = x.iter().map(|&v| q(v)).collect();
        let t = linalg::solve_full_column_rank(&m, &rhs)?;
        t.iter()
            .map(|v| v.is_integer().then(|| v.to_integer().to_i64()).flatten())
            .collect()
    }

    /// Is the integer vector x in the cone?
    pub fn cone_contains(&self, x: &[i64]) -> bool {
        match self.coordinates(x) {
            Some(t) if t.is_empty() => true,
            Some(t) => self.cells.iter().any(|c| c.contains(&t)),
            None => false,
        }
    }

    /// A nonnegative integer combination of the basis elements summing to x, when x
    /// lies in the cone. Found greedily by subtracting elements while staying in the cone.
    pub fn decompose(&self, x: &[i64]) -> Option<Vec<i64>> {
        if !self.cone_contains(x) {
            return None;
        }
        let mut rest = x.to_vec();
        let mut mult = vec![0i64; self.elements.len()];
        'outer: while rest.iter().any(|&v| v != 0) {
            for (k, h) in self.elements.iter().enumerate() {
                let next: Vec<i64> = rest.iter().zip(h).map(|(a, b)| a - b).collect();
                if self.cone_contains(&next) {
                    rest = next;
                    mult[k] += 1;
                    continue 'outer;
                }
            }
            return None;
        }
        Some(mult)
    }
}

/// Basis (as columns) of `span(gens) ∩ Z^d`.
fn saturated_span(gens: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    let rows: Vec<ZRow> = gens
        .iter()
        .map(|g| g.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let normals = linalg::integer_kernel(&rows, d);
    let basis: Vec<ZRow> = if normals.is_empty() {
        (0..d)
            .map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect()
    } else {
        linalg::integer_kernel(&normals, d)
    };
    basis
        .iter()
        .map(|b| b.iter().map(|x| x.to_i64().expect("lattice basis entry")).collect())
        .collect()
}

/// Placing triangulation of the columns in `r` dimensions.
fn triangulate(columns: &[Vec<i64>], r: usize) -> Result<Vec<Face>> {
    let cols: Vec<ZRow> = columns
        .iter()
        .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    for base in [3u32, 11, 101, 1009] {
        let heights: Vec<BigInt> = (0..columns.len())
            .map(|j| BigInt::from(base).pow(j as u32 + 1))
            .collect();
        let t = subdivide_columns(&cols, r, &heights);
        if t.is_triangulation() {
            return Ok(t.maximal_faces().to_vec());
        }
    }
    Err(Error::NotSimplicial)
}

/// The minimal Hilbert basis of the cone spanned by `generators` (vectors of length d)
/// with respect to the lattice `Z^d`, sorted.
pub fn hilbert_basis(generators: &[Vec<i64>], d: usize) -> Result<HilbertBasis> {
    if generators.iter().any(|g| g.len() != d) {
        return Err(Error::Dimension(format!("generators must have length {d}")));
    }
    let mut gens: Vec<Vec<i64>> = generators
        .iter()
        .filter(|g| g.iter().any(|&x| x != 0))
        .cloned()
        .collect();
    gens.sort();
    gens.dedup();
    if gens.is_empty() {
        return Ok(HilbertBasis {
            dim: d,
            lattice: Vec::new(),
            cells: Vec::new(),
            elements: Vec::new(),
        });
    }
    let as_rows: Vec<ZRow> = (0..d)
        .map(|i| gens.iter().map(|g| BigInt::from(g[i])).collect())
        .collect();
    if kernel_meets_orthant(&as_rows, gens.len()) {
        return Err(Error::NotPointed);
    }
    let lattice = saturated_span(&gens, d);
    let r = lattice.len();
    let mut hb = HilbertBasis {
        dim: d,
        lattice,
        cells: Vec::new(),
        elements: Vec::new(),
    };
    let coords: Vec<Vec<i64>> = gens
        .iter()
        .map(|g| hb.coordinates(g).ok_or_else(|| Error::Internal("generator outside its span".into())))
        .collect::<Result<_>>()?;
    for sigma in triangulate(&coords, r)? {
        hb.cells.push(Cell::new(sigma.iter().map(|j| coords[j].clone()).collect())?);
    }
    let mut candidates: BTreeSet<Vec<i64>> = coords.iter().cloned().collect();
    for cell in &hb.cells {
        candidates.extend(cell.parallelepiped()?);
    }
    candidates.remove(&vec![0; r]);
    let candidates: Vec<Vec<i64>> = candidates.into_iter().collect();
    let mut minimal = Vec::new();
    for x in &candidates {
        let reducible = candidates.iter().any(|h| {
            if h == x {
                return false;
            }
            let diff: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            hb.cells.iter().any(|c| c.contains(&diff))
        });
        if !reducible {
            minimal.push(x.clone());
        }
    }
    let mut elements: Vec<Vec<i64>> = minimal
        .iter()
        .map(|t| {
            (0..d)
                .map(|i| hb.lattice.iter().zip(t).map(|(b, &ti)| b[i] * ti).sum())
                .collect()
        })
        .collect();
    elements.sort();
    hb.elements = elements;
    Ok(hb)
}

/// Δ-normality of one maximal cell: Hilbert basis elements of cone(A_σ) that are not
/// columns of A.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaNormality {
    pub delta_normal: bool,
    pub missing: BTreeMap<Face, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Supernormality {
    pub supernormal: bool,
    /// a column subset and a Hilbert basis element of its cone that is not a column
    pub witness: Option<(Face, Vec<i64>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalityReport {
    pub normal: bool,
    /// Hilbert basis element of cone(A) outside NA
    pub witness: Option<Vec<i64>>,
    pub hilbert_basis: Vec<Vec<i64>>,
    pub delta: Option<DeltaNormality>,
    pub supernormal: Option<Supernormality>,
}

fn missing_columns(a: &IntMatrix, face: Face) -> Result<Vec<Vec<i64>>> {
    let columns: Vec<Vec<i64>> = (0..a.ncols()).map(|j| a.column_i64(j)).collect();
    let gens: Vec<Vec<i64>> = face.iter().map(|j| columns[j].clone()).collect();
    let hb = hilbert_basis(&gens, a.nrows())?;
    Ok(hb
        .elements()
        .iter()
        .filter(|h| !columns.contains(h))
        .cloned()
        .collect())
}

/// Δ-normality per maximal face of `delta`.
pub fn delta_normality(a: &IntMatrix, delta: &RegularTriangulation) -> Result<DeltaNormality> {
    let mut missing = BTreeMap::new();
    for &sigma in delta.maximal_faces() {
        missing.insert(sigma, missing_columns(a, sigma)?);
    }
    Ok(DeltaNormality {
        delta_normal: missing.values().all(Vec::is_empty),
        missing,
    })
}

/// Checks every nonempty column subset; stops at the first failure.
pub fn supernormality(a: &IntMatrix) -> Result<Supernormality> {
    let full = Face::full(a.ncols());
    let mut subsets: Vec<Face> = full.subsets().filter(|f| !f.is_empty()).collect();
    subsets.sort_by_key(|f| (f.len(), *f));
    for f in subsets {
        if let Some(h) = missing_columns(a, f)?.into_iter().next() {
            return Ok(Supernormality {
                supernormal: false,
                witness: Some((f, h)),
            });
        }
    }
    Ok(Supernormality {
        supernormal: true,
        witness: None,
    })
}

/// Normality of A, optionally Δ-normality and supernormality.
pub fn normality_report(
    a: &IntMatrix,
    delta: Option<&RegularTriangulation>,
    check_supernormal: bool,
) -> Result<NormalityReport> {
    let columns: Vec<Vec<i64>> = (0..a.ncols()).map(|j| a.column_i64(j)).collect();
    let hb = hilbert_basis(&columns, a.nrows())?;
    let mut witness = None;
    for h in hb.elements() {
        if first_fiber_point(a, h)?.is_none() {
            witness = Some(h.clone());
            break;
        }
    }
    Ok(NormalityReport {
        normal: witness.is_none(),
        witness,
        hilbert_basis: hb.elements().to_vec(),
        delta: delta.map(|t| delta_normality(a, t)).transpose()?,
        supernormal: if check_supernormal {
            Some(supernormality(a)?)
        } else {
            None
        },
    })
}

fn lcm_scale(v: &[BigRational]) -> Result<Vec<i64>> {
    let den = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let g = if g.is_zero() { BigInt::one() } else { g };
    ints.iter().map(|x| to_i64(&(x / &g))).collect()
}

/// A cost vector c′ with Δ_{c′} = Δ, or `NotRegular`.
pub fn regular_certificate(a: &IntMatrix, delta: &RegularTriangulation) -> Result<Vec<i64>> {
    let (d, n) = (a.nrows(), a.ncols());
    let faces = delta.maximal_faces();
    // variables: c′ (n), then y_σ (d each)
    let mut lp = LinearProgram::free(n + d * faces.len());
    for (k, sigma) in faces.iter().enumerate() {
        for j in 0..n {
            let mut row = vec![BigRational::zero(); lp.nvars()];
            row[j] = BigRational::one();
            for i in 0..d {
                row[n + d * k + i] = -BigRational::from_integer(a.entry(i, j).clone());
            }
            if sigma.contains(j) {
                lp.add(row, Relation::Eq, BigRational::zero());
            } else {
                lp.add(row, Relation::Ge, BigRational::one());
            }
        }
    }
    let point = lp.feasible_point().ok_or(Error::NotRegular)?;
    let c = lcm_scale(&point[..n])?;
    let check = regular_subdivision(a, &c);
    if check.maximal_faces() != faces {
        return Err(Error::NotRegular);
    }
    Ok(c)
}

/// Output of the Gomory-cost construction.
#[derive(Clone, Debug)]
pub struct GomoryCost {
    /// generic integer cost with Δ_c = Δ and a Gomory family
    pub cost: Vec<i64>,
    /// the certificate cost c′ the construction started from
    pub certificate: Vec<i64>,
    pub decomposition: Decomposition,
}

/// Builds a generic cost c with `Δ_c = Δ` whose programs form a Gomory family, for a
/// Δ-normal A. Columns lying inside a cell are lifted onto the cell's facet (or just
/// above it when they are not needed in the cell's Hilbert basis), ties are broken by
/// preferring the cell generators, and the resulting order is realized by an integer
/// weight. The result is re-verified before it is returned.
pub fn gomory_cost(a: &IntMatrix, delta: &RegularTriangulation) -> Result<GomoryCost> {
    let n = a.ncols();
    if !delta.is_triangulation() {
        return Err(Error::NotSimplicial);
    }
    let certificate = regular_certificate(a, delta)?;
    let columns: Vec<Vec<i64>> = (0..n).map(|j| a.column_i64(j)).collect();
    let mut bases = Vec::new();
    for &sigma in delta.maximal_faces() {
        let gens: Vec<Vec<i64>> = sigma.iter().map(|j| columns[j].clone()).collect();
        let hb = hilbert_basis(&gens, a.nrows())?;
        if let Some(h) = hb.elements().iter().find(|h| !columns.contains(h)) {
            return Err(Error::NotDeltaNormal {
                face: sigma.to_string(),
                witness: h.iter().map(|x| x.to_string()).collect(),
            });
        }
        bases.push((sigma, Cell::new(gens)?, hb));
    }
    let rays = delta.maximal_faces().iter().fold(Face::EMPTY, |f, s| f.union(*s));
    let mut cost: Vec<BigRational> = certificate.iter().map(|&x| q(x)).collect();
    let mut kept: Vec<Vec<i64>> = rays.iter().map(|j| columns[j].clone()).collect();
    for j in rays.complement(n).iter() {
        let (sigma, cell, hb) = bases
            .iter()
            .find(|(_, cell, _)| cell.contains(&columns[j]))
            .ok_or_else(|| Error::Internal(format!("column {} lies in no cell", j + 1)))?;
        let lambda = cell.coefficients(&columns[j]);
        let facet: BigRational = lambda
            .iter()
            .zip(sigma.iter())
            .map(|(l, i)| l * q(certificate[i]))
            .sum();
        let needed = hb.elements().contains(&columns[j]) && !kept.contains(&columns[j]);
        cost[j] = if needed {
            kept.push(columns[j].clone());
            facet
        } else {
            facet + BigRational::one()
        };
    }
    let cost = lcm_scale(&cost)?;
    let omega: Vec<i64> = (0..n).map(|j| if rays.contains(j) { -1 } else { 0 }).collect();
    let gb = toric_groebner(a, &CostOrder::with_refinements(cost, vec![omega]))?;
    let w = realize_generic(&gb)?;

    let delta_w = regular_subdivision(a, &w);
    if delta_w.maximal_faces() != delta.maximal_faces() {
        return Err(Error::Internal("constructed cost induces a different triangulation".into()));
    }
    let gbw = toric_groebner(a, &CostOrder::new(w.clone()))?;
    let ideal = initial_ideal(&gbw)?;
    let decomposition = standard_pair_decomposition(&ideal, &delta_w)?;
    if !is_gomory_family(&decomposition, &delta_w) {
        return Err(Error::Internal("constructed cost is not a Gomory family".into()));
    }
    Ok(GomoryCost {
        cost: w,
        certificate,
        decomposition,
    })
}

/// The corank-m family whose associated sets have a chain of length `2^m − (m+1)`.
/// Returns `(A, c)` with `A` of size `(2^m − 1) × (2^m + m − 1)`.
pub fn sharp_family(m: usize) -> Result<(IntMatrix, Vec<i64>)> {
    if !(2..=5).contains(&m) {
        return Err(Error::BadIndex(format!("sharp family needs 2 ≤ m ≤ 5, got {m}")));
    }
    // rows of B′: sign vectors other than all −1, by number of −1 entries, then by
    // the positions of the −1 entries
    let mut negatives: Vec<Face> = Face::full(m)
        .subsets()
        .filter(|s| s.len() < m)
        .collect();
    negatives.sort_by_key(|s| (s.len(), *s));
    let b_prime: Vec<Vec<i64>> = negatives
        .iter()
        .map(|s| (0..m).map(|i| if s.contains(i) { -1 } else { 1 }).collect())
        .collect();
    let d = b_prime.len();
    let a_prime: Vec<Vec<i64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (i == j) as i64)
                .chain(b_prime[i].iter().copied())
                .collect()
        })
        .collect();
    let rows: Vec<Vec<i64>> = a_prime
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if i == 0 {
                r.clone()
            } else {
                r.iter().zip(&a_prime[0]).map(|(x, y)| x + y).collect()
            }
        })
        .collect();
    let mut c = vec![0i64; d + m];
    c[0] = 11;
    for x in &mut c[d..] {
        *x = 10;
    }
    Ok((IntMatrix::from_i64(&rows)?, c))
}
