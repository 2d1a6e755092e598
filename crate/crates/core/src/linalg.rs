//! Exact linear algebra over the rationals for small integer matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn to_rational(rows: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect()
}

/// Reduces `m` in place to reduced row-echelon form and returns the pivot
/// columns.
fn rref_in_place(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..cols {
                    let t = &f * &m[r][k];
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    rref_in_place(&mut to_rational(rows)).len()
}

/// Reduced row-echelon basis of the row space, each row scaled to a
/// primitive integer vector with a positive leading entry.
pub fn canonical_basis(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = to_rational(rows);
    let r = rref_in_place(&mut m).len();
    m.truncate(r);
    m.iter().map(|row| primitive(row)).collect()
}

fn primitive(row: &[BigRational]) -> Vec<i64> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = row.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.iter()
        .map(|x| {
            (x / &g * &sign)
                .to_i64()
                .expect("canonical basis entries of small integer spans fit in i64")
        })
        .collect()
}

/// Whether `v` lies in the row space of `rows`.
pub fn in_span(rows: &[Vec<i64>], v: &[i64]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    if rows.is_empty() {
        return false;
    }
    let mut m = rows.to_vec();
    let before = rank(&m);
    m.push(v.to_vec());
    rank(&m) == before
}

/// Dimension of the intersection of the row space of `rows` with the
/// coordinate subspace spanned by the basis vectors whose bit is set in
/// `support`.
pub fn dim_within_support(rows: &[Vec<i64>], support: u64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    // span ∩ {x_j = 0 for j outside support} has dimension
    // rank(rows) - rank(rows restricted to the outside coordinates).
    let outside: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            (0..n)
                .filter(|j| support >> j & 1 == 0)
                .map(|j| r[j])
                .collect()
        })
        .collect();
    let out_rank = if outside.first().is_some_and(|r| !r.is_empty()) {
        rank(&outside)
    } else {
        0
    };
    rank(rows) - out_rank
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_bigint(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for k in c + 1..cols {
                let v = (&m[r][c] * &m[i][k] - &m[i][c] * &m[r][k]) / &prev;
                m[i][k] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(rank(&[vec![0, 0, 0]]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn canonical_basis_is_basis_independent() {
        let a = canonical_basis(&[vec![1, -1, 0, 0], vec![0, 1, -1, 0]]);
        let b = canonical_basis(&[vec![1, 0, -1, 0], vec![2, -2, 0, 0]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 0, -1, 0], vec![0, 1, -1, 0]]);
    }

    #[test]
    fn primitive_scaling_is_positive() {
        assert_eq!(canonical_basis(&[vec![0, -2, 2]]), vec![vec![0, 1, -1]]);
    }

    #[test]
    fn span_membership() {
        let rows = [vec![1, -1, 0, 0], vec![0, 0, 1, -1]];
        assert!(in_span(&rows, &[2, -2, -1, 1]));
        assert!(!in_span(&rows, &[1, 0, -1, 0]));
    }

    #[test]
    fn support_dimension() {
        let rows = [vec![1, -1, 0, 0], vec![0, 1, -1, 0], vec![0, 0, 1, -1]];
        // vectors supported on {0, 1}: e0 - e1 only
        assert_eq!(dim_within_support(&rows, 0b0011), 1);
        assert_eq!(dim_within_support(&rows, 0b0001), 0);
        assert_eq!(dim_within_support(&rows, 0b1111), 3);
    }

    #[test]
    fn bareiss_matches_rational_rank() {
        let m = [vec![2, 4, 1], vec![1, 2, 0], vec![3, 6, 1]];
        let big = m
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(rank_bigint(big), rank(&m));
        assert_eq!(rank(&m), 2);
    }
}
