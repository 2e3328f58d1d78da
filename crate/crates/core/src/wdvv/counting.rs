//! How many associativity relations there are for an algebra of dimension `r`.
//!
//! Conventions for the brute-force count: tuples range over the `r - 1`
//! non-identity symbols, `k = i` and `l = j` are trivial, tuples are taken
//! modulo the order-8 symmetry group and orbits that equal their own negative
//! are dropped. For the second count every cyclic triple of orbits of a tuple
//! with four distinct symbols contributes only two.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::relations::canonical_tuple;

/// `(r⁴-6r³+15r²-18r+8)/8` and `(r⁴-4r³+5r²-2r)/12`.
pub fn count_formulas(r: u32) -> Result<(u64, u64)> {
    let x = i128::from(r);
    let a = x.pow(4) - 6 * x.pow(3) + 15 * x * x - 18 * x + 8;
    let b = x.pow(4) - 4 * x.pow(3) + 5 * x * x - 2 * x;
    if a % 8 != 0 || b % 12 != 0 || a < 0 || b < 0 {
        return Err(Error::NonIntegral(r));
    }
    Ok(((a / 8) as u64, (b / 12) as u64))
}

pub const BRUTE_COUNT_MAX: u32 = 10;

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

/// Counts by explicit orbit enumeration.
pub fn brute_count(r: u32) -> Result<(u64, u64)> {
    if r > BRUTE_COUNT_MAX {
        return Err(Error::RangeExceeded { max: BRUTE_COUNT_MAX, got: r });
    }
    let m = r.saturating_sub(1) as usize;
    let mut reps: HashMap<[usize; 4], usize> = HashMap::new();
    let mut distinct: Vec<bool> = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    if k == i || l == j {
                        continue;
                    }
                    let t = [i, j, k, l];
                    let (rep, _, neg) = canonical_tuple(t);
                    if rep == t && !neg {
                        reps.insert(t, distinct.len());
                        distinct.push(i != j && i != l && j != k && j != l && k != l && i != k);
                    }
                }
            }
        }
    }
    let total = reps.len();
    let mut parent: Vec<usize> = (0..total).collect();
    for (t, &id) in &reps {
        if !distinct[id] {
            continue;
        }
        let [i, j, k, l] = *t;
        for u in [[j, k, i, l], [k, i, j, l]] {
            let other = reps[&canonical_tuple(u).0];
            let (a, b) = (find(&mut parent, id), find(&mut parent, other));
            parent[a] = b;
        }
    }
    let mut sizes: HashMap<usize, u64> = HashMap::new();
    for id in 0..total {
        *sizes.entry(find(&mut parent, id)).or_default() += 1;
    }
    let reduced = sizes.values().map(|&c| if c == 3 { 2 } else { c }).sum();
    Ok((total as u64, reduced))
}
