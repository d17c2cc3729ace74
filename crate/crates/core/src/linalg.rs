//! Exact integer and rational linear algebra on dense row-major matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type ZRow = Vec<BigInt>;
pub type QRow = Vec<BigRational>;

pub fn to_rational(rows: &[ZRow]) -> Vec<QRow> {
    rows.iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect()
}

pub fn transpose<T: Clone>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    (0..ncols)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn det(m: &[ZRow]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<ZRow> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Rank over Q.
pub fn rank(rows: &[ZRow]) -> usize {
    row_echelon(&to_rational(rows)).len()
}

/// Reduced row echelon form; returns the nonzero rows with their pivot columns.
pub fn row_echelon(rows: &[QRow]) -> Vec<(usize, QRow)> {
    let mut a: Vec<QRow> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut out_rows = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        let Some(p) = (out_rows..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(out_rows, p);
        let inv = a[out_rows][col].recip();
        for x in a[out_rows].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != out_rows && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..ncols {
                    let t = &f * &a[out_rows][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        out_rows += 1;
        if out_rows == a.len() {
            break;
        }
    }
    pivots.into_iter().zip(a).collect()
}

/// Solve `M x = rhs` over Q where `M` (rows × k) has full column rank.
/// Returns `None` when the system is inconsistent.
pub fn solve_full_column_rank(m: &[QRow], rhs: &[BigRational]) -> Option<QRow> {
    let k = m.first().map_or(0, |r| r.len());
    let aug: Vec<QRow> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let ech = row_echelon(&aug);
    let mut x = vec![BigRational::zero(); k];
    for (p, row) in &ech {
        if *p == k {
            return None;
        }
        x[*p] = row[k].clone();
    }
    if ech.iter().filter(|(p, _)| *p < k).count() < k {
        return None;
    }
    Some(x)
}

/// Inverse of a nonsingular square rational matrix.
pub fn inverse(m: &[QRow]) -> Option<Vec<QRow>> {
    let n = m.len();
    let aug: Vec<QRow> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            row
        })
        .collect();
    let ech = row_echelon(&aug);
    if ech.len() < n || ech.iter().any(|(p, _)| *p >= n) {
        return None;
    }
    Some(ech.into_iter().map(|(_, r)| r[n..].to_vec()).collect())
}

pub fn mat_vec_q(m: &[QRow], v: &[BigRational]) -> QRow {
    m.iter()
        .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Extended gcd: returns (g, s, t) with s·a + t·b = g ≥ 0.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Column-style Hermite reduction: returns `(H, U, rank)` with `A·U = H`, `U` unimodular,
/// and `H` lower echelon: the first `rank` columns carry positive pivots, the rest are zero.
pub fn column_hermite(a: &[ZRow], ncols: usize) -> (Vec<ZRow>, Vec<ZRow>, usize) {
    let d = a.len();
    let mut h: Vec<ZRow> = a.to_vec();
    let mut u: Vec<ZRow> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let col_op = |m: &mut Vec<ZRow>, p: usize, j: usize, c: [&BigInt; 4]| {
        // (col p, col j) <- (c0·p + c1·j, c2·p + c3·j)
        for row in m.iter_mut() {
            let x = row[p].clone();
            let y = row[j].clone();
            row[p] = c[0] * &x + c[1] * &y;
            row[j] = c[2] * &x + c[3] * &y;
        }
    };
    let mut pc = 0;
    for i in 0..d {
        if pc == ncols {
            break;
        }
        for j in pc + 1..ncols {
            if h[i][j].is_zero() {
                continue;
            }
            if h[i][pc].is_zero() {
                for row in h.iter_mut().chain(u.iter_mut()) {
                    row.swap(pc, j);
                }
                continue;
            }
            let x = h[i][pc].clone();
            let y = h[i][j].clone();
            let (g, s, t) = ext_gcd(&x, &y);
            let ny = -(&y / &g);
            let nx = &x / &g;
            col_op(&mut h, pc, j, [&s, &t, &ny, &nx]);
            col_op(&mut u, pc, j, [&s, &t, &ny, &nx]);
        }
        if !h[i][pc].is_zero() {
            if h[i][pc].is_negative() {
                for row in h.iter_mut().chain(u.iter_mut()) {
                    row[pc] = -row[pc].clone();
                }
            }
            // reduce entries left of the pivot into [0, pivot)
            for j in 0..pc {
                let q = h[i][j].div_floor(&h[i][pc]);
                if !q.is_zero() {
                    for row in h.iter_mut().chain(u.iter_mut()) {
                        let t = &q * &row[pc];
                        row[j] -= t;
                    }
                }
            }
            pc += 1;
        }
    }
    (h, u, pc)
}

/// Integer basis (as columns) of the kernel lattice `{x ∈ Z^n : A x = 0}`.
/// Returned as a list of column vectors; saturated by construction.
pub fn integer_kernel(a: &[ZRow], ncols: usize) -> Vec<ZRow> {
    let (_, u, r) = column_hermite(a, ncols);
    let mut basis: Vec<ZRow> = (r..ncols)
        .map(|j| u.iter().map(|row| row[j].clone()).collect())
        .collect();
    size_reduce(&mut basis);
    basis
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairwise size reduction: subtract rounded projections until no norm decreases.
/// Keeps kernel bases short without a full lattice reduction.
pub fn size_reduce(basis: &mut [ZRow]) {
    let k = basis.len();
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let nj = dot(&basis[j], &basis[j]);
                if nj.is_zero() {
                    continue;
                }
                let p = dot(&basis[i], &basis[j]);
                // q = round(p / nj)
                let q = (BigInt::from(2) * &p + &nj).div_floor(&(BigInt::from(2) * &nj));
                if q.is_zero() {
                    continue;
                }
                let cand: ZRow = basis[i]
                    .iter()
                    .zip(&basis[j])
                    .map(|(x, y)| x - &q * y)
                    .collect();
                if dot(&cand, &cand) < dot(&basis[i], &basis[i]) {
                    basis[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Invariant factors (diagonal of the Smith normal form, nonzero entries only).
pub fn smith_invariants(m: &[ZRow], ncols: usize) -> Vec<BigInt> {
    let mut a: Vec<ZRow> = m.to_vec();
    let nrows = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < nrows.min(ncols) {
        // pick the smallest nonzero entry in the trailing block as pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !a[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..ncols {
                    let v = &q * &a[t][j];
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let v = &q * &row[t];
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the remaining block
            let mut fix = None;
            'outer: for i in t + 1..nrows {
                for j in t + 1..ncols {
                    if !a[i][j].is_multiple_of(&a[t][t]) {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => {
                    for j in t..ncols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}
