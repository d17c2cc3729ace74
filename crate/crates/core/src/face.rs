//! Column index sets, stored as bitmasks over at most 64 columns.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_COLUMNS: usize = 64;

/// A set of 0-based column indices. Ordered lexicographically by the sorted index list,
/// so `{} < {0} < {0,1} < {1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub fn from_bits(bits: u64) -> Face {
        Face(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All indices `0..n`.
    pub fn full(n: usize) -> Face {
        if n >= 64 {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Face {
        let mut bits = 0u64;
        for i in indices {
            assert!(i < MAX_COLUMNS, "column index {i} exceeds {MAX_COLUMNS}");
            bits |= 1 << i;
        }
        Face(bits)
    }

    /// Build from 1-based indices, checking the range `1..=n`.
    pub fn from_one_based(indices: &[usize], n: usize) -> crate::Result<Face> {
        let mut bits = 0u64;
        for &i in indices {
            if i == 0 || i > n {
                return Err(crate::Error::BadIndex(format!("column {i} not in 1..={n}")));
            }
            bits |= 1 << (i - 1);
        }
        Ok(Face(bits))
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(self, i: usize) -> Face {
        Face(self.0 | 1 << i)
    }

    pub fn remove(self, i: usize) -> Face {
        Face(self.0 & !(1 << i))
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    /// Complement within `0..n`.
    pub fn complement(self, n: usize) -> Face {
        Face(!self.0 & Face::full(n).0)
    }

    /// All `k`-subsets of `0..n` in lexicographic order.
    pub fn combinations(n: usize, k: usize) -> Vec<Face> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(Face::from_indices(idx.iter().copied()));
            let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
                return out;
            };
            idx[p] += 1;
            for q in p + 1..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }

    /// All subsets of this face, including the empty set and itself.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let full = self.0;
        let mut sub = full;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Face(sub);
            if sub == 0 {
                done = true;
            } else {
                sub = (sub - 1) & full;
            }
            Some(out)
        })
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Displays with 1-based indices, e.g. `{1,4,5}`.
impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
