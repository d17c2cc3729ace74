//! Brute-force geometry: lattice points of polytopes `{z : Sz ≤ h}`, standard polytopes,
//! standard pairs by exhaustive search, widths and Kannan's bound.
//!
//! Enumeration projects the system by Fourier–Motzkin elimination once per matrix S.
//! Each derived inequality remembers its nonnegative multipliers over the original rows,
//! so the projection is reused for every right-hand side h.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::face::Face;
use crate::linalg;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::matrix::{IntMatrix, LatticeBasis};
use crate::stdpairs::StandardPair;
use crate::triangulation::RegularTriangulation;
use crate::{Error, Result};

pub use crate::fiber::{fiber_minimum as fiber_solve, fiber_points};

/// `{z ∈ R^m : s_i·z ≤ h_i}`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IneqPolytope {
    dim: usize,
    rows: Vec<Vec<i64>>,
    offsets: Vec<i64>,
}

impl IneqPolytope {
    pub fn new(dim: usize) -> IneqPolytope {
        IneqPolytope {
            dim,
            rows: Vec::new(),
            offsets: Vec::new(),
        }
    }

    pub fn from_rows(dim: usize, rows: Vec<Vec<i64>>, offsets: Vec<i64>) -> Result<IneqPolytope> {
        if rows.len() != offsets.len() || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Dimension("inequality rows do not match".into()));
        }
        Ok(IneqPolytope { dim, rows, offsets })
    }

    pub fn push(&mut self, row: Vec<i64>, offset: i64) {
        assert_eq!(row.len(), self.dim);
        self.rows.push(row);
        self.offsets.push(offset);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    pub fn contains(&self, z: &[i64]) -> bool {
        self.rows
            .iter()
            .zip(&self.offsets)
            .all(|(r, &h)| dot(r, z) <= h as i128)
    }

    /// The recession cone `{z : Sz ≤ 0}` is `{0}`.
    pub fn is_bounded(&self) -> bool {
        recession_is_trivial(&self.rows, self.dim)
    }

    /// The polytope without row i.
    pub fn without_row(&self, i: usize) -> IneqPolytope {
        let mut p = self.clone();
        p.rows.remove(i);
        p.offsets.remove(i);
        p
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// `{z : Sz ≤ 0} = {0}` iff S has rank m and some strictly positive λ has `λS = 0`.
fn recession_is_trivial(rows: &[Vec<i64>], m: usize) -> bool {
    if m == 0 {
        return true;
    }
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    if big.is_empty() || linalg::rank(&big) < m {
        return false;
    }
    let mut lp = LinearProgram::nonnegative(rows.len());
    for j in 0..m {
        lp.add(rows.iter().map(|r| q(r[j])).collect(), Relation::Eq, BigRational::zero());
    }
    for i in 0..rows.len() {
        let mut e = vec![BigRational::zero(); rows.len()];
        e[i] = BigRational::one();
        lp.add(e, Relation::Ge, BigRational::one());
    }
    lp.feasible_point().is_some()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Derived {
    coeffs: Vec<i128>,
    mult: Vec<i128>,
}

impl Derived {
    fn normalize(mut self) -> Derived {
        let g = self
            .coeffs
            .iter()
            .chain(&self.mult)
            .fold(0i128, |g, &x| g.gcd(&x));
        if g > 1 {
            self.coeffs.iter_mut().for_each(|x| *x /= g);
            self.mult.iter_mut().for_each(|x| *x /= g);
        }
        self
    }

    fn rhs(&self, h: &[i64]) -> i128 {
        self.mult.iter().zip(h).map(|(&l, &x)| l * x as i128).sum()
    }
}

/// Fourier–Motzkin projection of `Sz ≤ h` for a fixed S, reusable for any h.
#[derive(Clone, Debug)]
pub struct PolytopeFamily {
    dim: usize,
    nrows: usize,
    /// `levels[k]`: inequalities in `z_0..=z_k` with a nonzero coefficient on `z_k`.
    levels: Vec<Vec<Derived>>,
    /// Inequalities `0 ≤ λ·h`, conditions for nonemptiness.
    conditions: Vec<Derived>,
}

impl PolytopeFamily {
    /// Fails with `Unbounded` when `{z : Sz ≤ 0} ≠ {0}`.
    pub fn new(dim: usize, rows: &[Vec<i64>]) -> Result<PolytopeFamily> {
        if !recession_is_trivial(rows, dim) {
            return Err(Error::Unbounded);
        }
        let nrows = rows.len();
        let mut current: Vec<Derived> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut mult = vec![0i128; nrows];
                mult[i] = 1;
                Derived {
                    coeffs: r.iter().map(|&x| x as i128).collect(),
                    mult,
                }
                .normalize()
            })
            .collect();
        let mut levels = vec![Vec::new(); dim];
        for k in (0..dim).rev() {
            let eliminated = dim - k;
            let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
            for r in current {
                match r.coeffs[k].signum() {
                    1 => pos.push(r),
                    -1 => neg.push(r),
                    _ => zero.push(r),
                }
            }
            if pos.is_empty() || neg.is_empty() {
                return Err(Error::Internal("projection lost a bound".into()));
            }
            let mut next: Vec<Derived> = Vec::new();
            let mut seen = std::collections::HashSet::new();
            let mut add = |d: Derived, next: &mut Vec<Derived>| {
                if seen.insert(d.clone()) {
                    next.push(d);
                }
            };
            for r in &zero {
                add(
                    Derived {
                        coeffs: r.coeffs[..k].to_vec(),
                        mult: r.mult.clone(),
                    },
                    &mut next,
                );
            }
            for p in &pos {
                for n in &neg {
                    let (a, b) = (-n.coeffs[k], p.coeffs[k]);
                    let mult: Vec<i128> = p
                        .mult
                        .iter()
                        .zip(&n.mult)
                        .map(|(&x, &y)| a.checked_mul(x).and_then(|s| b.checked_mul(y).and_then(|t| s.checked_add(t))))
                        .collect::<Option<_>>()
                        .ok_or(Error::Overflow)?;
                    // Chernikov: a combination of more than eliminated + 1 rows is redundant
                    if mult.iter().filter(|&&x| x != 0).count() > eliminated + 1 {
                        continue;
                    }
                    let coeffs: Vec<i128> = (0..k)
                        .map(|j| {
                            a.checked_mul(p.coeffs[j])
                                .and_then(|s| b.checked_mul(n.coeffs[j]).and_then(|t| s.checked_add(t)))
                        })
                        .collect::<Option<_>>()
                        .ok_or(Error::Overflow)?;
                    add(Derived { coeffs, mult }.normalize(), &mut next);
                }
            }
            let mut level: Vec<Derived> = pos;
            level.extend(neg);
            levels[k] = level;
            current = next;
        }
        Ok(PolytopeFamily {
            dim,
            nrows,
            levels,
            conditions: current,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Visits the lattice points of `{z : Sz ≤ h}` in lexicographic order; stops when
    /// `visit` returns false.
    pub fn for_each_point(&self, h: &[i64], visit: &mut dyn FnMut(&[i64]) -> bool) {
        assert_eq!(h.len(), self.nrows);
        if self.conditions.iter().any(|c| c.rhs(h) < 0) {
            return;
        }
        let rhs: Vec<Vec<i128>> = self
            .levels
            .iter()
            .map(|l| l.iter().map(|d| d.rhs(h)).collect())
            .collect();
        let mut z = vec![0i64; self.dim];
        self.sweep(0, &rhs, &mut z, visit);
    }

    fn sweep(&self, k: usize, rhs: &[Vec<i128>], z: &mut [i64], visit: &mut dyn FnMut(&[i64]) -> bool) -> bool {
        if k == self.dim {
            return visit(z);
        }
        let (mut lo, mut hi) = (i128::MIN, i128::MAX);
        for (d, &r) in self.levels[k].iter().zip(&rhs[k]) {
            let rest = r - (0..k).map(|j| d.coeffs[j] * z[j] as i128).sum::<i128>();
            let a = d.coeffs[k];
            if a > 0 {
                hi = hi.min(Integer::div_floor(&rest, &a));
            } else {
                lo = lo.max(Integer::div_ceil(&rest, &a));
            }
        }
        let mut v = lo;
        while v <= hi {
            z[k] = v as i64;
            if !self.sweep(k + 1, rhs, z, visit) {
                z[k] = 0;
                return false;
            }
            v += 1;
        }
        z[k] = 0;
        true
    }

    pub fn points(&self, h: &[i64]) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.for_each_point(h, &mut |z| {
            out.push(z.to_vec());
            true
        });
        out
    }

    /// Does the polytope contain a lattice point other than the origin?
    pub fn has_nonzero_point(&self, h: &[i64]) -> bool {
        let mut found = false;
        self.for_each_point(h, &mut |z| {
            found = z.iter().any(|&x| x != 0);
            !found
        });
        found
    }
}

/// All lattice points, sorted lexicographically.
pub fn enumerate_lattice_points(p: &IneqPolytope) -> Result<Vec<Vec<i64>>> {
    Ok(PolytopeFamily::new(p.dim, &p.rows)?.points(&p.offsets))
}

/// Rows of `Q_u^τ̄ = {z : B^τ̄ z ≤ π_τ(u), (−wB)·z ≤ 0}`: the rows of B off τ, then the
/// cost row.
pub fn relaxation_rows(lattice: &LatticeBasis, cost: &[i64], tau: Face) -> Result<Vec<Vec<i64>>> {
    let mut rows: Vec<Vec<i64>> = lattice.projected_rows(tau).into_iter().map(|(_, r)| r).collect();
    rows.push(cost_row(lattice, cost)?);
    Ok(rows)
}

/// `−wB`
pub fn cost_row(lattice: &LatticeBasis, cost: &[i64]) -> Result<Vec<i64>> {
    lattice
        .columns_i64()
        .iter()
        .map(|col| (-dot(cost, col)).to_i64().ok_or(Error::Overflow))
        .collect()
}

/// The polytope `Q_u^τ̄`.
pub fn relaxation_polytope(lattice: &LatticeBasis, cost: &[i64], tau: Face, u: &[i64]) -> Result<IneqPolytope> {
    let rows = relaxation_rows(lattice, cost, tau)?;
    let mut offsets: Vec<i64> = (0..lattice.n()).filter(|&i| !tau.contains(i)).map(|i| u[i]).collect();
    offsets.push(0);
    IneqPolytope::from_rows(lattice.rank(), rows, offsets)
}

fn rhs_for(tau: Face, u: &[i64]) -> Vec<i64> {
    let mut h: Vec<i64> = (0..u.len()).filter(|&i| !tau.contains(i)).map(|i| u[i]).collect();
    h.push(0);
    h
}

/// Projection templates for `Q^τ̄` and for each single-row relaxation of it.
struct FaceTemplates {
    full: PolytopeFamily,
    /// `None` when dropping that row leaves an unbounded polyhedron.
    dropped: Vec<Option<PolytopeFamily>>,
}

impl FaceTemplates {
    fn new(lattice: &LatticeBasis, cost: &[i64], tau: Face) -> Result<FaceTemplates> {
        let rows = relaxation_rows(lattice, cost, tau)?;
        let m = lattice.rank();
        let full = PolytopeFamily::new(m, &rows)?;
        let dropped = (0..rows.len() - 1)
            .map(|i| {
                let mut r = rows.clone();
                r.remove(i);
                match PolytopeFamily::new(m, &r) {
                    Ok(f) => Ok(Some(f)),
                    Err(Error::Unbounded) => Ok(None),
                    Err(e) => Err(e),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FaceTemplates { full, dropped })
    }

    fn is_standard(&self, h: &[i64]) -> bool {
        if self.full.has_nonzero_point(h) {
            return false;
        }
        self.dropped.iter().enumerate().all(|(i, t)| match t {
            None => true,
            Some(f) => {
                let mut hh = h.to_vec();
                hh.remove(i);
                f.has_nonzero_point(&hh)
            }
        })
    }
}

/// `Q_u^τ̄` contains only the origin and dropping any row of `B^τ̄ z ≤ π_τ(u)` admits
/// another lattice point.
pub fn is_standard_polytope(
    lattice: &LatticeBasis,
    cost: &[i64],
    delta: &RegularTriangulation,
    u: &[i64],
    tau: Face,
) -> Result<bool> {
    if !delta.contains_face(tau) {
        return Err(Error::NotAFace(tau.to_string()));
    }
    if u.len() != lattice.n() {
        return Err(Error::Dimension("root has the wrong length".into()));
    }
    if u.iter().any(|&x| x < 0) {
        return Ok(false);
    }
    if lattice.rank() == 0 {
        return Ok(tau.complement(lattice.n()).is_empty());
    }
    Ok(FaceTemplates::new(lattice, cost, tau)?.is_standard(&rhs_for(tau, u)))
}

/// Where the root box of `brute_force_standard_pairs` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundSource {
    Kannan,
    SuppliedBox,
    /// Coordinatewise minimum of both.
    Both,
}

impl BoundSource {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundSource::Kannan => "kannan",
            BoundSource::SuppliedBox => "supplied-box",
            BoundSource::Both => "kannan+supplied-box",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OraclePairs {
    /// Sorted by face, then root.
    pub pairs: Vec<StandardPair>,
    pub source: BoundSource,
    /// Inclusive bound on each root coordinate.
    pub bound: Vec<i64>,
    pub kannan: Option<BigRational>,
}

impl OraclePairs {
    pub fn multiplicities(&self) -> BTreeMap<Face, usize> {
        let mut m = BTreeMap::new();
        for p in &self.pairs {
            *m.entry(p.face).or_insert(0) += 1;
        }
        m
    }
}

/// `B̄`: the rows of B followed by `−wB`.
pub fn extended_rows(lattice: &LatticeBasis, cost: &[i64]) -> Result<Vec<Vec<i64>>> {
    let mut rows: Vec<Vec<i64>> = (0..lattice.n()).map(|i| lattice.row_i64(i)).collect();
    rows.push(cost_row(lattice, cost)?);
    Ok(rows)
}

/// Standard pairs found by testing every face of Δ and every root in a box.
/// `max_root` optionally bounds each coordinate (inclusive); Kannan's bound on `B̄` is
/// used as well whenever its minors are all nonzero.
pub fn brute_force_standard_pairs(
    a: &IntMatrix,
    lattice: &LatticeBasis,
    cost: &[i64],
    delta: &RegularTriangulation,
    max_root: Option<&[i64]>,
) -> Result<OraclePairs> {
    let n = a.ncols();
    let k = lattice.rank();
    let kannan = if k == 0 {
        None
    } else {
        match kannan_bound(&extended_rows(lattice, cost)?, k) {
            Ok(b) => Some(b),
            Err(Error::Degenerate) => None,
            Err(e) => return Err(e),
        }
    };
    let kannan_int = kannan
        .as_ref()
        .map(|b| b.floor().to_integer().to_i64().unwrap_or(i64::MAX));
    let (bound, source) = match (max_root, kannan_int) {
        (Some(m), Some(kb)) => (m.iter().map(|&x| x.min(kb)).collect(), BoundSource::Both),
        (Some(m), None) => (m.to_vec(), BoundSource::SuppliedBox),
        (None, Some(kb)) => (vec![kb; n], BoundSource::Kannan),
        (None, None) if k == 0 => (vec![0; n], BoundSource::SuppliedBox),
        (None, None) => return Err(Error::BoundUnavailable),
    };
    let mut pairs = Vec::new();
    for tau in delta.all_faces() {
        if k == 0 {
            if delta.is_maximal(tau) {
                pairs.push(StandardPair {
                    face: tau,
                    root: vec![0; n],
                });
            }
            continue;
        }
        let templates = FaceTemplates::new(lattice, cost, tau)?;
        let free: Vec<usize> = tau.complement(n).indices();
        let mut u = vec![0i64; n];
        let mut visit = |u: &[i64]| {
            if templates.is_standard(&rhs_for(tau, u)) {
                pairs.push(StandardPair {
                    face: tau,
                    root: u.to_vec(),
                });
            }
        };
        box_sweep(&free, &bound, 0, &mut u, &mut visit);
    }
    pairs.sort();
    Ok(OraclePairs {
        pairs,
        source,
        bound,
        kannan,
    })
}

fn box_sweep(free: &[usize], bound: &[i64], k: usize, u: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
    if k == free.len() {
        visit(u);
        return;
    }
    let i = free[k];
    for v in 0..=bound[i] {
        u[i] = v;
        box_sweep(free, bound, k + 1, u, visit);
    }
    u[i] = 0;
}

/// `max v·x − min v·x` over the polytope, by exact LP.
pub fn width_along(p: &IneqPolytope, v: &[i64]) -> Result<BigRational> {
    if v.len() != p.dim || v.iter().all(|&x| x == 0) {
        return Err(Error::Dimension("direction must be a nonzero vector of the right length".into()));
    }
    let mut lp = LinearProgram::free(p.dim);
    for (r, &h) in p.rows.iter().zip(&p.offsets) {
        lp.add(r.iter().map(|&x| q(x)).collect(), Relation::Le, q(h));
    }
    let obj: Vec<BigRational> = v.iter().map(|&x| q(x)).collect();
    let hi = match lp.maximize(&obj) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Unbounded => return Err(Error::Unbounded),
        LpOutcome::Infeasible => return Err(Error::Infeasible),
    };
    let lo = match lp.minimize(&obj) {
        LpOutcome::Optimal { value, .. } => value,
        LpOutcome::Unbounded => return Err(Error::Unbounded),
        LpOutcome::Infeasible => return Err(Error::Infeasible),
    };
    Ok(hi - lo)
}

/// `2M(k+2)Δ_k(S)/δ_k(S)`: M the largest row ℓ1-norm, Δ_k and δ_k the largest and
/// smallest absolute k×k minors. `Degenerate` if some k×k minor vanishes.
pub fn kannan_bound(rows: &[Vec<i64>], k: usize) -> Result<BigRational> {
    if k == 0 || rows.len() < k || rows.iter().any(|r| r.len() != k) {
        return Err(Error::Dimension(format!("need at least {k} rows of length {k}")));
    }
    let m = rows
        .iter()
        .map(|r| r.iter().map(|x| BigInt::from(x.unsigned_abs())).sum::<BigInt>())
        .max()
        .unwrap_or_default();
    let mut hi = BigInt::zero();
    let mut lo: Option<BigInt> = None;
    for s in Face::combinations(rows.len(), k) {
        let sub: Vec<Vec<BigInt>> = s
            .iter()
            .map(|i| rows[i].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let det = linalg::det(&sub).abs();
        if det.is_zero() {
            return Err(Error::Degenerate);
        }
        if det > hi {
            hi = det.clone();
        }
        lo = Some(lo.map_or(det.clone(), |l: BigInt| l.min(det)));
    }
    let lo = lo.ok_or(Error::Degenerate)?;
    let num = BigInt::from(2) * m * BigInt::from(k as u64 + 2) * hi;
    Ok(BigRational::new(num, lo))
}

/// Cache of projection templates keyed by face, for repeated polytope queries.
#[derive(Default)]
pub struct TemplateCache {
    map: HashMap<Face, PolytopeFamily>,
}

impl TemplateCache {
    pub fn get(&mut self, lattice: &LatticeBasis, cost: &[i64], tau: Face) -> Result<&PolytopeFamily> {
        if !self.map.contains_key(&tau) {
            let rows = relaxation_rows(lattice, cost, tau)?;
            let f = PolytopeFamily::new(lattice.rank(), &rows)?;
            self.map.insert(tau, f);
        }
        Ok(&self.map[&tau])
    }
}

/// Lattice points of `Q_u^τ̄`.
pub fn relaxation_points(lattice: &LatticeBasis, cost: &[i64], tau: Face, u: &[i64]) -> Result<Vec<Vec<i64>>> {
    let rows = relaxation_rows(lattice, cost, tau)?;
    Ok(PolytopeFamily::new(lattice.rank(), &rows)?.points(&rhs_for(tau, u)))
}
