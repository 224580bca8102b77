//! Exact Pfaffians of skew-symmetric rational matrices.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::linalg::{Matrix, Q};

/// Largest dimension evaluated by memoized row expansion.
pub const EXPANSION_LIMIT: usize = 12;

/// Pfaffian by expansion for small matrices and by skew elimination above
/// [`EXPANSION_LIMIT`]. Odd dimension gives zero.
pub fn pfaffian(m: &Matrix) -> Q {
    let n = m.len();
    if n % 2 == 1 {
        return Q::zero();
    }
    let pf = if n <= EXPANSION_LIMIT {
        by_expansion(m)
    } else {
        by_elimination(m)
    };
    debug_assert_eq!(&pf * &pf, crate::linalg::det(m), "Pf^2 = det");
    pf
}

/// Expansion along the first remaining row, memoized on the set of
/// remaining indices.
pub fn by_expansion(m: &Matrix) -> Q {
    let n = m.len();
    if n % 2 == 1 {
        return Q::zero();
    }
    assert!(n < 64, "expansion supports fewer than 64 rows");
    let mut memo: HashMap<u64, Q> = HashMap::new();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    expand(m, full, &mut memo)
}

fn expand(m: &Matrix, mask: u64, memo: &mut HashMap<u64, Q>) -> Q {
    if mask == 0 {
        return Q::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let mut total = Q::zero();
    let mut k = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        k += 1;
        let a = &m[first][j];
        if a.is_zero() {
            continue;
        }
        let sub = expand(m, rest & !(1 << j), memo);
        if sub.is_zero() {
            continue;
        }
        let term = a * sub;
        if k % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    memo.insert(mask, total.clone());
    total
}

/// Reduction to 2×2 blocks by unimodular congruences and row swaps.
pub fn by_elimination(m: &Matrix) -> Q {
    let n = m.len();
    if n % 2 == 1 {
        return Q::zero();
    }
    let mut a = m.clone();
    let mut pf = Q::one();
    for k in (0..n).step_by(2) {
        let Some(p) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return Q::zero();
        };
        if p != k + 1 {
            swap(&mut a, p, k + 1);
            pf = -pf;
        }
        let piv = a[k][k + 1].clone();
        pf *= &piv;
        for i in k + 2..n {
            if !a[k][i].is_zero() {
                let c = -(&a[k][i] / &piv);
                add_multiple(&mut a, i, k + 1, &c);
            }
            if !a[k + 1][i].is_zero() {
                let c = &a[k + 1][i] / &piv;
                add_multiple(&mut a, i, k, &c);
            }
        }
    }
    pf
}

fn swap(a: &mut Matrix, i: usize, j: usize) {
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Row and column `i` += `c` × row and column `j`.
fn add_multiple(a: &mut Matrix, i: usize, j: usize, c: &Q) {
    let n = a.len();
    let rj = a[j].clone();
    for (x, y) in a[i].iter_mut().zip(&rj) {
        if !y.is_zero() {
            *x += c * y;
        }
    }
    for r in 0..n {
        if !a[r][j].is_zero() {
            let t = c * &a[r][j];
            a[r][i] += t;
        }
    }
}
