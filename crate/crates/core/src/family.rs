//! The family `IP_{A,c}` with everything derived from `(A, c)` computed once.

use crate::face::Face;
use crate::groebner::{genericity, realize_generic, solve_ip, toric_groebner_with_lattice, CostOrder, GroebnerBasis};
use crate::matrix::{kernel_lattice_basis, IntMatrix, LatticeBasis};
use crate::relax::{build_relaxation, solve_relaxation, solve_via_standard_pairs, GroupRelaxation, RelaxationOutcome};
use crate::stdpairs::{associated_report, initial_ideal, is_gomory_family, standard_pair_decomposition, AssociatedReport, Decomposition, MonomialIdeal};
use crate::triangulation::{regular_subdivision, RegularTriangulation};
use crate::Result;

#[derive(Clone, Debug)]
pub struct Family {
    pub a: IntMatrix,
    pub lattice: LatticeBasis,
    pub cost: Vec<i64>,
    pub generic: bool,
    /// An integer weight inducing the same initial ideal as the cost order; equals the
    /// cost when the cost is generic.
    pub weight: Vec<i64>,
    pub groebner: GroebnerBasis,
    pub delta: RegularTriangulation,
    pub ideal: MonomialIdeal,
    pub decomposition: Decomposition,
}

impl Family {
    pub fn new(a: IntMatrix, cost: Vec<i64>) -> Result<Family> {
        let lattice = kernel_lattice_basis(&a)?;
        Family::with_lattice(a, lattice, cost)
    }

    /// Uses a caller-supplied kernel basis, which fixes the coordinates of the
    /// relaxations and standard polytopes.
    pub fn with_lattice(a: IntMatrix, lattice: LatticeBasis, cost: Vec<i64>) -> Result<Family> {
        if cost.len() != a.ncols() {
            return Err(crate::Error::Dimension(format!(
                "cost has length {}, expected {}",
                cost.len(),
                a.ncols()
            )));
        }
        let groebner = toric_groebner_with_lattice(&a, &lattice, &CostOrder::new(cost.clone()))?;
        let generic = genericity(&groebner).generic;
        let weight = realize_generic(&groebner)?;
        let groebner = if generic {
            groebner
        } else {
            toric_groebner_with_lattice(&a, &lattice, &CostOrder::new(weight.clone()))?
        };
        let delta = regular_subdivision(&a, &weight);
        let ideal = initial_ideal(&groebner)?;
        let decomposition = standard_pair_decomposition(&ideal, &delta)?;
        Ok(Family {
            a,
            lattice,
            cost,
            generic,
            weight,
            groebner,
            delta,
            ideal,
            decomposition,
        })
    }

    pub fn solve(&self, b: &[i64]) -> Result<Vec<i64>> {
        solve_ip(&self.a, &self.groebner, b)
    }

    pub fn solve_via_pairs(&self, b: &[i64]) -> Result<Vec<i64>> {
        solve_via_standard_pairs(&self.a, &self.decomposition, &self.delta, b)
    }

    pub fn relaxation(&self, tau: Face, b: &[i64]) -> Result<GroupRelaxation> {
        build_relaxation(&self.a, &self.lattice, &self.weight, &self.delta, tau, b)
    }

    pub fn relax(&self, tau: Face, b: &[i64]) -> Result<RelaxationOutcome> {
        let r = self.relaxation(tau, b)?;
        solve_relaxation(&self.a, &self.lattice, &r)
    }

    pub fn associated(&self) -> Result<AssociatedReport> {
        associated_report(&self.decomposition, &self.delta)
    }

    pub fn is_gomory_family(&self) -> bool {
        is_gomory_family(&self.decomposition, &self.delta)
    }
}
