#![allow(dead_code)]

use toric_relax::Face;

/// Parses `"0"`, `"e3"`, `"2e2+e3"` into an exponent vector of length n.
pub fn root(s: &str, n: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    if s.trim() == "0" {
        return v;
    }
    for term in s.split('+') {
        let term = term.trim();
        let (k, i) = term.split_once('e').expect("term of the form ke_i");
        let k: i64 = if k.is_empty() { 1 } else { k.parse().unwrap() };
        let i: usize = i.parse().unwrap();
        v[i - 1] += k;
    }
    v
}

/// One-based indices to a face.
pub fn face(idx: &[usize]) -> Face {
    Face::from_indices(idx.iter().map(|i| i - 1))
}

pub fn faces(list: &[&[usize]]) -> Vec<Face> {
    let mut v: Vec<Face> = list.iter().map(|f| face(f)).collect();
    v.sort();
    v
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_relax::{Family, IntMatrix};

/// A random valid family: d ≤ 3, n ≤ 6, entries in 0..=4, generic cost in 0..=9.
/// Candidates that are rank deficient, unbounded or non-generic are rejected.
pub fn random_family(seed: u64) -> Family {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(d + 1..=6);
        let rows: Vec<Vec<i64>> = (0..d)
            .map(|_| (0..n).map(|_| rng.gen_range(0..=4)).collect())
            .collect();
        let Ok(a) = IntMatrix::from_i64(&rows) else {
            continue;
        };
        let cost: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=9)).collect();
        match Family::new(a, cost) {
            Ok(f) if f.generic => return f,
            _ => continue,
        }
    }
}

/// Right-hand sides `A x` for random x with entries in 0..=3.
pub fn random_rhs(f: &Family, seed: u64, count: usize) -> Vec<Vec<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    (0..count)
        .map(|_| {
            let x: Vec<i64> = (0..f.a.ncols()).map(|_| rng.gen_range(0..=3)).collect();
            f.a.apply_i64(&x)
        })
        .collect()
}
