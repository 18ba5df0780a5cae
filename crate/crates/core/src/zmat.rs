//! Exact integer linear algebra: rank over Q (fraction-free Bareiss
//! elimination) and Smith-style cokernel counting modulo p^k.
//!
//! These are the brute-force oracles backing the formula paths elsewhere;
//! they never touch p-adic precision.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rank of an integer matrix over Q, by fraction-free Gaussian elimination.
pub fn rank_over_q(matrix: &[Vec<BigInt>]) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        // find a pivot in this column
        let pivot_row = (row..rows).find(|&i| !m[i][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        m.swap(row, pr);
        let pivot = m[row][col].clone();
        for i in 0..rows {
            if i == row {
                continue;
            }
            let factor = m[i][col].clone();
            for j in 0..cols {
                let val = &m[i][j] * &pivot - &factor * &m[row][j];
                // Bareiss: exact division by the previous pivot
                m[i][j] = val / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
        row += 1;
        if row == rows {
            break;
        }
    }
    rank
}

fn vp_capped(n: &BigInt, p: u64, cap: usize) -> usize {
    if n.is_zero() {
        return cap;
    }
    let pb = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    while v < cap {
        let (q, r) = m.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        m = q;
        v += 1;
    }
    v
}

fn inv_unit_mod(u: &BigInt, modulus: &BigInt) -> BigInt {
    let e = u.extended_gcd(modulus);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(modulus)
}

/// Valuations of the elementary divisors of an integer matrix read modulo
/// p^k, capped at k (a reported k means "zero at this modulus").
pub fn smith_valuations_mod_pk(matrix: &[Vec<BigInt>], p: u64, k: usize) -> Vec<usize> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let size = rows.min(cols);
    let modulus = BigInt::from(p).pow(k as u32);
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| r.iter().map(|c| c.mod_floor(&modulus)).collect())
        .collect();
    let mut out = Vec::with_capacity(size);
    for t in 0..size {
        // pivot: entry of minimal p-valuation in the remaining block
        let mut best = (k, t, t);
        for i in t..rows {
            for j in t..cols {
                let v = vp_capped(&m[i][j], p, k);
                if v < best.0 {
                    best = (v, i, j);
                }
            }
        }
        let (v, bi, bj) = best;
        if v == k {
            // remaining block vanishes mod p^k
            for _ in t..size {
                out.push(k);
            }
            return out;
        }
        m.swap(t, bi);
        for row in m.iter_mut() {
            row.swap(t, bj);
        }
        // normalize the pivot to exactly p^v
        let pv = BigInt::from(p).pow(v as u32);
        let unit = (&m[t][t] / &pv).mod_floor(&modulus);
        let unit_inv = inv_unit_mod(&unit, &modulus);
        for j in t..cols {
            m[t][j] = (&m[t][j] * &unit_inv).mod_floor(&modulus);
        }
        // clear the column below, then the row to the right
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let factor = &m[i][t] / &pv;
            for j in t..cols {
                let val = &m[i][j] - &factor * &m[t][j];
                m[i][j] = val.mod_floor(&modulus);
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let factor = &m[t][j] / &pv;
            for i in t..rows {
                let val = &m[i][j] - &factor * &m[i][t];
                m[i][j] = val.mod_floor(&modulus);
            }
        }
        out.push(v);
    }
    out
}

/// Order of the cokernel (Z/p^k)^rows / A (Z/p^k)^cols, certified from the
/// entries mod p^k. `None` when some elementary divisor vanishes mod p^k,
/// i.e. the cokernel is infinite (or unresolvably large) at this modulus.
pub fn cokernel_order_mod_pk(matrix: &[Vec<BigInt>], p: u64, k: usize) -> Option<BigUint> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let vals = smith_valuations_mod_pk(matrix, p, k);
    if rows > cols {
        // missing columns leave free Z/p^k summands; only meaningful for
        // square or wide matrices here
        return None;
    }
    if vals.iter().any(|&v| v == k) {
        return None;
    }
    let total: usize = vals.iter().sum();
    Some(BigUint::from(p).pow(total as u32))
}

/// Brute-force cokernel order by literal enumeration of the image of A on
/// (Z/p^k)^cols. Only viable for tiny sizes; used to validate the Smith
/// path itself.
pub fn cokernel_order_enumerated(matrix: &[Vec<BigInt>], p: u64, k: usize) -> Option<BigUint> {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let modulus = BigInt::from(p).pow(k as u32);
    let pk = modulus.to_u64()?;
    let space: u64 = pk.checked_pow(cols as u32)?;
    if space > 2_000_000 {
        return None;
    }
    let mut image = std::collections::HashSet::new();
    for idx in 0..space {
        let mut x = idx;
        let mut vecx = Vec::with_capacity(cols);
        for _ in 0..cols {
            vecx.push(BigInt::from(x % pk));
            x /= pk;
        }
        let img: Vec<u64> = (0..rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..cols {
                    acc += &matrix[i][j] * &vecx[j];
                }
                acc.mod_floor(&modulus).to_u64().unwrap()
            })
            .collect();
        image.insert(img);
    }
    let total = BigUint::from(pk).pow(rows as u32);
    let image_size = BigUint::from(image.len());
    // cokernel order = |target| / |image|
    Some(total / image_size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_over_q(&m(&[&[1, 2], &[3, 4]])), 2);
        assert_eq!(rank_over_q(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_over_q(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_over_q(&m(&[&[2, 0, 1], &[0, 3, 1], &[2, 3, 2]])), 2);
    }

    #[test]
    fn smith_diag_example() {
        let vals = smith_valuations_mod_pk(&m(&[&[5, 0], &[0, 25]]), 5, 4);
        assert_eq!(vals, vec![1, 2]);
        let ord = cokernel_order_mod_pk(&m(&[&[5, 0], &[0, 25]]), 5, 4).unwrap();
        assert_eq!(ord, BigUint::from(125u32));
    }

    #[test]
    fn smith_matches_enumeration() {
        let cases = [
            m(&[&[5, 3], &[10, 4]]),
            m(&[&[25, 5], &[5, 5]]),
            m(&[&[3, 1], &[1, 3]]),
            m(&[&[9, 3], &[3, 9]]),
        ];
        for a in cases {
            for (p, k) in [(5u64, 3usize), (3, 4)] {
                let s = cokernel_order_mod_pk(&a, p, k);
                let e = cokernel_order_enumerated(&a, p, k);
                if let (Some(s), Some(e)) = (s, e) {
                    assert_eq!(s, e, "matrix {a:?} at p={p}, k={k}");
                }
            }
        }
    }

    #[test]
    fn zero_divisor_detected() {
        assert!(cokernel_order_mod_pk(&m(&[&[125, 0], &[0, 1]]), 5, 3).is_none());
    }
}
