//! Exact rational linear programming: two-phase dense tableau simplex with Bland's rule.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
}

/// A linear program over variables that are either nonnegative or free.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    free: Vec<bool>,
    constraints: Vec<Constraint>,
}

impl LinearProgram {
    /// `nvars` variables, all nonnegative.
    pub fn nonnegative(nvars: usize) -> Self {
        LinearProgram {
            free: vec![false; nvars],
            constraints: Vec::new(),
        }
    }

    /// `nvars` variables, all free.
    pub fn free(nvars: usize) -> Self {
        LinearProgram {
            free: vec![true; nvars],
            constraints: Vec::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.free.len()
    }

    pub fn add(&mut self, coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.nvars());
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn minimize(&self, objective: &[BigRational]) -> LpOutcome {
        assert_eq!(objective.len(), self.nvars());
        // column layout: for each variable one column (two if free), then slacks
        let mut col_of = Vec::with_capacity(self.nvars());
        let mut ncols = 0;
        for &f in &self.free {
            col_of.push(ncols);
            ncols += if f { 2 } else { 1 };
        }
        let nstruct = ncols;
        let nslack = self
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        ncols += nslack;
        let mut a = Vec::with_capacity(self.constraints.len());
        let mut b = Vec::with_capacity(self.constraints.len());
        let mut slack = nstruct;
        for con in &self.constraints {
            let mut row = vec![BigRational::zero(); ncols];
            for (v, x) in con.coeffs.iter().enumerate() {
                row[col_of[v]] = x.clone();
                if self.free[v] {
                    row[col_of[v] + 1] = -x.clone();
                }
            }
            match con.relation {
                Relation::Le => {
                    row[slack] = BigRational::from_integer(1.into());
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = BigRational::from_integer((-1).into());
                    slack += 1;
                }
                Relation::Eq => {}
            }
            let mut rhs = con.rhs.clone();
            if rhs.is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
                rhs = -rhs;
            }
            a.push(row);
            b.push(rhs);
        }
        let mut c = vec![BigRational::zero(); ncols];
        for (v, x) in objective.iter().enumerate() {
            c[col_of[v]] = x.clone();
            if self.free[v] {
                c[col_of[v] + 1] = -x.clone();
            }
        }
        match standard_form(a, b, &c) {
            Std::Infeasible => LpOutcome::Infeasible,
            Std::Unbounded => LpOutcome::Unbounded,
            Std::Optimal(x) => {
                let point: Vec<BigRational> = (0..self.nvars())
                    .map(|v| {
                        if self.free[v] {
                            &x[col_of[v]] - &x[col_of[v] + 1]
                        } else {
                            x[col_of[v]].clone()
                        }
                    })
                    .collect();
                let value = point.iter().zip(objective).map(|(p, o)| p * o).sum();
                LpOutcome::Optimal { value, point }
            }
        }
    }

    pub fn maximize(&self, objective: &[BigRational]) -> LpOutcome {
        let neg: Vec<BigRational> = objective.iter().map(|x| -x.clone()).collect();
        match self.minimize(&neg) {
            LpOutcome::Optimal { value, point } => LpOutcome::Optimal {
                value: -value,
                point,
            },
            other => other,
        }
    }

    /// Some feasible point, if any.
    pub fn feasible_point(&self) -> Option<Vec<BigRational>> {
        match self.minimize(&vec![BigRational::zero(); self.nvars()]) {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

enum Std {
    Infeasible,
    Unbounded,
    Optimal(Vec<BigRational>),
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (x, p) in self.obj.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Returns false when unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let rhs = self.width;
        loop {
            let Some(e) = (0..allowed).find(|&j| self.obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[e].is_positive() {
                    let ratio = &row[rhs] / &row[e];
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return false,
            }
        }
    }
}

/// minimize c·x subject to A x = b (b ≥ 0), x ≥ 0.
fn standard_form(a: Vec<Vec<BigRational>>, b: Vec<BigRational>, c: &[BigRational]) -> Std {
    let m = a.len();
    let n = c.len();
    let width = n + m;
    let rows: Vec<Vec<BigRational>> = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, bi))| {
            row.extend((0..m).map(|k| {
                if k == i {
                    BigRational::from_integer(1.into())
                } else {
                    BigRational::zero()
                }
            }));
            row.push(bi);
            row
        })
        .collect();
    let mut obj = vec![BigRational::zero(); width + 1];
    for row in &rows {
        for j in 0..n {
            obj[j] -= &row[j];
        }
        obj[width] -= &row[width];
    }
    let mut t = Tableau {
        rows,
        obj,
        basis: (n..n + m).collect(),
        width,
    };
    t.optimize(width);
    if !t.obj[width].is_zero() {
        return Std::Infeasible;
    }
    // drive artificials out of the basis; drop redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut obj = vec![BigRational::zero(); width + 1];
    obj[..n].clone_from_slice(c);
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        let cb = &c[bv];
        if cb.is_zero() {
            continue;
        }
        for j in 0..=width {
            if !row[j].is_zero() {
                obj[j] -= cb * &row[j];
            }
        }
    }
    t.obj = obj;
    if !t.optimize(n) {
        return Std::Unbounded;
    }
    let mut x = vec![BigRational::zero(); n];
    for (row, &bv) in t.rows.iter().zip(&t.basis) {
        if bv < n {
            x[bv] = row[width].clone();
        }
    }
    Std::Optimal(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn small_lp() {
        // max x + y st x + 2y <= 4, 3x + y <= 6
        let mut lp = LinearProgram::nonnegative(2);
        lp.add(vec![q(1), q(2)], Relation::Le, q(4));
        lp.add(vec![q(3), q(1)], Relation::Le, q(6));
        match lp.maximize(&[q(1), q(1)]) {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, BigRational::new(14.into(), 5.into()));
                assert_eq!(point, vec![BigRational::new(8.into(), 5.into()), BigRational::new(6.into(), 5.into())]);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::nonnegative(1);
        lp.add(vec![q(1)], Relation::Le, q(-1));
        assert_eq!(lp.minimize(&[q(1)]), LpOutcome::Infeasible);
        let mut lp = LinearProgram::free(1);
        lp.add(vec![q(1)], Relation::Le, q(3));
        assert_eq!(lp.minimize(&[q(1)]), LpOutcome::Unbounded);
        assert!(matches!(lp.maximize(&[q(1)]), LpOutcome::Optimal { .. }));
    }

    #[test]
    fn free_variables_and_equalities() {
        // min y st y >= x - 1, y >= -x + 1, x free
        let mut lp = LinearProgram::free(2);
        lp.add(vec![q(-1), q(1)], Relation::Ge, q(-1));
        lp.add(vec![q(1), q(1)], Relation::Ge, q(1));
        match lp.minimize(&[q(0), q(1)]) {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(0)),
            o => panic!("{o:?}"),
        }
        let mut lp = LinearProgram::nonnegative(3);
        lp.add(vec![q(1), q(1), q(1)], Relation::Eq, q(1));
        lp.add(vec![q(2), q(5), q(8)], Relation::Eq, q(0));
        assert_eq!(lp.feasible_point(), None);
    }
}
