//! Each command builds a JSON report. Faces are printed with 1-based indices, and
//! faces used as object keys are written `{1,4,5}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Map, Value};
use toric_relax::groebner::{genericity, solve_ip, toric_groebner, CostOrder};
use toric_relax::hilbert::{gomory_cost, hilbert_basis, normality_report, sharp_family};
use toric_relax::oracle::{brute_force_standard_pairs, fiber_points, fiber_solve, is_standard_polytope, relaxation_points};
use toric_relax::stdpairs::{initial_ideal, StandardPair};
use toric_relax::{regular_subdivision, unimodularity_report, Error, Face, Family, IntMatrix};

use crate::input;
use crate::CliError;

type Report = Result<Value, CliError>;

/// A matrix, a cost vector and whether the cost was sampled.
pub struct Problem {
    pub a: IntMatrix,
    pub cost: Vec<i64>,
    pub sampled: bool,
}

impl Problem {
    pub fn load(matrix: &str, cost: Option<&str>, seed: u64) -> Result<Problem, CliError> {
        let a = input::matrix(matrix)?;
        let (cost, sampled) = input::cost(cost, a.ncols(), seed)?;
        Ok(Problem { a, cost, sampled })
    }

    fn family(&self) -> Result<Family, CliError> {
        Ok(Family::new(self.a.clone(), self.cost.clone())?)
    }

    fn rhs(&self, arg: &str) -> Result<Vec<i64>, CliError> {
        input::vector(arg, self.a.nrows(), "right-hand side")
    }

    fn value(&self, x: &[i64]) -> Value {
        int(self.cost.iter().zip(x).map(|(&c, &v)| c as i128 * v as i128).sum())
    }

    /// Adds the sampled cost to a report, so a run can be reproduced from its output.
    fn finish(&self, mut report: Value) -> Value {
        if self.sampled {
            report["cost"] = json!(self.cost);
        }
        report
    }
}

fn int(v: i128) -> Value {
    i64::try_from(v).map_or_else(|_| Value::String(v.to_string()), Value::from)
}

fn face(f: Face) -> Value {
    json!(f.one_based())
}

fn faces(list: &[Face]) -> Value {
    let mut sorted: Vec<Vec<usize>> = list.iter().map(|f| f.one_based()).collect();
    sorted.sort();
    json!(sorted)
}

fn rational(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn multiplicities(m: &BTreeMap<Face, usize>) -> Value {
    let map: Map<String, Value> = m.iter().map(|(f, &k)| (f.to_string(), json!(k))).collect();
    Value::Object(map)
}

fn pairs(list: &[StandardPair]) -> Value {
    let mut sorted: Vec<(Vec<usize>, &Vec<i64>)> = list.iter().map(|p| (p.face.one_based(), &p.root)).collect();
    sorted.sort();
    Value::Array(
        sorted
            .into_iter()
            .map(|(f, root)| json!({"face": f, "root": root}))
            .collect(),
    )
}

pub fn triangulate(p: &Problem) -> Report {
    let delta = regular_subdivision(&p.a, &p.cost);
    let certificates: Map<String, Value> = delta
        .certificates()
        .iter()
        .map(|(f, y)| (f.to_string(), Value::Array(y.iter().map(rational).collect())))
        .collect();
    Ok(p.finish(json!({
        "maximal_faces": faces(delta.maximal_faces()),
        "certificates": certificates,
        "triangulation": delta.is_triangulation(),
        "tdi": unimodularity_report(&p.a, &delta).tdi,
    })))
}

pub fn groebner(p: &Problem) -> Report {
    let gb = toric_groebner(&p.a, &CostOrder::new(p.cost.clone()))?;
    let mut elements: Vec<(&Vec<i64>, &Vec<i64>)> = gb.elements().iter().map(|b| (&b.plus, &b.minus)).collect();
    elements.sort();
    let mut ideal = initial_ideal(&gb)?.generators().to_vec();
    ideal.sort();
    Ok(p.finish(json!({
        "elements": elements,
        "generic": genericity(&gb).generic,
        "initial_ideal": ideal,
    })))
}

pub fn solve(p: &Problem, rhs: &str, oracle: bool) -> Report {
    let b = p.rhs(rhs)?;
    let x = if oracle {
        fiber_solve(&p.a, &CostOrder::new(p.cost.clone()), &b)?.ok_or(Error::Infeasible)?
    } else {
        let gb = toric_groebner(&p.a, &CostOrder::new(p.cost.clone()))?;
        solve_ip(&p.a, &gb, &b)?
    };
    let mut report = json!({"optimum": x, "value": p.value(&x)});
    if oracle {
        report["oracle"] = json!("fiber");
    }
    Ok(p.finish(report))
}

pub fn solve_sp(p: &Problem, rhs: &str) -> Report {
    let b = p.rhs(rhs)?;
    let x = p.family()?.solve_via_pairs(&b)?;
    Ok(p.finish(json!({"optimum": x, "value": p.value(&x)})))
}

pub fn relax(p: &Problem, rhs: &str, tau: &str, oracle: bool) -> Report {
    let b = p.rhs(rhs)?;
    let tau = input::face(tau, p.a.ncols())?;
    let f = p.family()?;
    if oracle {
        if !f.delta.contains_face(tau) {
            return Err(Error::NotAFace(tau.to_string()).into());
        }
        // the relaxation solves the program iff Q_u^τ̄ holds only the origin
        let u = f.solve(&b)?;
        let points = relaxation_points(&f.lattice, &f.weight, tau, &u)?;
        let solves = points.len() == 1 && points[0].iter().all(|&z| z == 0);
        return Ok(p.finish(json!({
            "face": face(tau),
            "oracle": "polytope",
            "points": points.len(),
            "solves_ip": solves,
        })));
    }
    let r = f.relax(tau, &b)?;
    Ok(p.finish(json!({
        "face": face(tau),
        "lift": r.x,
        "z": r.z,
        "value": int(r.value),
        "unique": r.unique,
        "solves_ip": r.solves_ip,
    })))
}

pub fn stdpairs(p: &Problem, oracle: bool) -> Report {
    let f = p.family()?;
    if oracle {
        let bound: Vec<i64> = (0..p.a.ncols()).map(|i| f.ideal.max_exponent(i)).collect();
        let o = brute_force_standard_pairs(&f.a, &f.lattice, &f.weight, &f.delta, Some(&bound))?;
        return Ok(p.finish(json!({
            "pairs": pairs(&o.pairs),
            "multiplicities": multiplicities(&o.multiplicities()),
            "arithmetic_degree": o.pairs.len(),
            "oracle": {"bound": o.bound, "bound_source": o.source.as_str()},
        })));
    }
    let r = f.associated()?;
    Ok(p.finish(json!({
        "pairs": pairs(f.decomposition.pairs()),
        "multiplicities": multiplicities(&r.multiplicities),
        "arithmetic_degree": r.arithmetic_degree,
        "associated_sets": faces(&r.associated),
        "gomory_family": f.is_gomory_family(),
        "max_chain": r.max_chain.iter().map(|&t| face(t)).collect::<Vec<_>>(),
    })))
}

pub fn assoc(p: &Problem) -> Report {
    let r = p.family()?.associated()?;
    Ok(p.finish(json!({
        "associated_sets": faces(&r.associated),
        "multiplicities": multiplicities(&r.multiplicities),
        "arithmetic_degree": r.arithmetic_degree,
        "max_chain": r.max_chain.iter().map(|&t| face(t)).collect::<Vec<_>>(),
        "chain_length": r.chain_length,
        "length_bound": r.length_bound,
    })))
}

pub fn gomory(p: &Problem) -> Report {
    let f = p.family()?;
    let off: Vec<&StandardPair> = f
        .decomposition
        .pairs()
        .iter()
        .filter(|q| !f.delta.is_maximal(q.face))
        .collect();
    Ok(p.finish(json!({
        "gomory_family": off.is_empty(),
        "tdi": unimodularity_report(&f.a, &f.delta).tdi,
        "maximal_faces": faces(f.delta.maximal_faces()),
        "non_maximal_pairs": off.len(),
    })))
}

pub fn hilbert(generators: &str) -> Report {
    let (d, cols) = input::columns(generators)?;
    let hb = hilbert_basis(&cols, d)?;
    Ok(json!({"hilbert_basis": hb.elements(), "rank": hb.rank()}))
}

pub fn normality(matrix: &str, triangulation: Option<&str>, check_super: bool) -> Report {
    let a = input::matrix(matrix)?;
    let delta = triangulation.map(|t| input::triangulation(t, &a)).transpose()?;
    let r = normality_report(&a, delta.as_ref(), check_super)?;
    let mut report = json!({
        "normal": r.normal,
        "witness": r.witness,
        "hilbert_basis": r.hilbert_basis,
    });
    if let Some(dn) = &r.delta {
        let missing: Map<String, Value> = dn.missing.iter().map(|(f, v)| (f.to_string(), json!(v))).collect();
        report["delta_normal"] = json!(dn.delta_normal);
        report["missing"] = Value::Object(missing);
    }
    if let Some(s) = &r.supernormal {
        report["supernormal"] = json!(s.supernormal);
        report["supernormal_witness"] = match &s.witness {
            Some((f, x)) => json!({"face": face(*f), "element": x}),
            None => Value::Null,
        };
    }
    Ok(report)
}

pub fn gomory_cost_cmd(matrix: &str, triangulation: &str) -> Report {
    let a = input::matrix(matrix)?;
    let delta = input::triangulation(triangulation, &a)?;
    let g = gomory_cost(&a, &delta)?;
    Ok(json!({
        "cost": g.cost,
        "certificate": g.certificate,
        "pairs": pairs(g.decomposition.pairs()),
    }))
}

pub fn sharp(m: usize) -> Report {
    let (a, c) = sharp_family(m)?;
    Ok(json!({"matrix": a.rows_i64(), "cost": c}))
}

pub fn oracle_points(p: &Problem, tau: &str, root: &str) -> Report {
    let n = p.a.ncols();
    let tau = input::face(tau, n)?;
    let u = input::vector(root, n, "root")?;
    let f = p.family()?;
    let mut points = relaxation_points(&f.lattice, &f.weight, tau, &u)?;
    points.sort();
    let standard = is_standard_polytope(&f.lattice, &f.weight, &f.delta, &u, tau)?;
    Ok(p.finish(json!({
        "face": face(tau),
        "root": u,
        "points": points,
        "standard_pair": standard,
        "oracle": "polytope",
    })))
}

pub fn oracle_fiber(matrix: &str, rhs: &str, cost: Option<&str>) -> Report {
    let a = input::matrix(matrix)?;
    let b = input::vector(rhs, a.nrows(), "right-hand side")?;
    let mut points = fiber_points(&a, &b)?;
    points.sort();
    let mut report = json!({"points": points, "count": points.len(), "oracle": "fiber"});
    if let Some(cost) = cost {
        let p = Problem { cost: input::vector(cost, a.ncols(), "cost")?, a, sampled: false };
        let x = fiber_solve(&p.a, &CostOrder::new(p.cost.clone()), &b)?.ok_or(Error::Infeasible)?;
        report["optimum"] = json!(x);
        report["value"] = p.value(&x);
    }
    Ok(report)
}
