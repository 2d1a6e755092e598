//! Star-matrix calculus: derived series, row and column actions, adjoint
//! image patterns and generic rank.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{linalg, Error, RegularSubalgebra, Result, StarMatrix, SupportVector};

/// Which side a pattern acts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Row,
    Column,
}

const TRIALS: usize = 3;

pub fn nil_star(a: &RegularSubalgebra) -> StarMatrix {
    a.nil_star().clone()
}

pub fn bool_mul(x: &StarMatrix, y: &StarMatrix) -> Result<StarMatrix> {
    x.mul(y)
}

/// Nilpotent positions some cartan vector acts on with a nonzero weight.
fn cartan_active(a: &RegularSubalgebra) -> StarMatrix {
    let mut m = a.nil_star().clone();
    for (i, j) in a.nil_star().positions() {
        if !a.cartan().iter().any(|h| h[i - 1] != h[j - 1]) {
            m.set(i, j, false);
        }
    }
    m
}

/// Patterns of `D^1, D^2, ...` up to and including the first empty one, or
/// until a pattern repeats.
pub fn derived_patterns(a: &RegularSubalgebra) -> Result<Vec<StarMatrix>> {
    a.require_closed()?;
    let nil = a.nil_star();
    let mut cur = nil.mul(nil)?.union(&cartan_active(a))?;
    let mut out = Vec::new();
    loop {
        out.push(cur.clone());
        if cur.is_empty() {
            break;
        }
        let next = cur.mul(&cur)?;
        if next == cur {
            break;
        }
        cur = next;
    }
    Ok(out)
}

/// `[dim A, dim D^1, ...]`, ending at the first 0 or when the series
/// stabilizes.
pub fn derived_series_dims(a: &RegularSubalgebra) -> Result<Vec<usize>> {
    let mut dims = alloc::vec![a.dim()];
    dims.extend(derived_patterns(a)?.iter().map(StarMatrix::count));
    Ok(dims)
}

/// Support of `Xv`.
pub fn col_action(x: &StarMatrix, v: &SupportVector) -> Result<SupportVector> {
    if x.n() != v.n() {
        return Err(Error::DimensionMismatch {
            left: x.n(),
            right: v.n(),
        });
    }
    let bits = x
        .rows()
        .iter()
        .enumerate()
        .filter(|(_, &r)| r & v.bits() != 0)
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    Ok(SupportVector::from_bits(x.n(), bits))
}

/// Support of `vX`.
pub fn row_action(v: &SupportVector, x: &StarMatrix) -> Result<SupportVector> {
    if x.n() != v.n() {
        return Err(Error::DimensionMismatch {
            left: v.n(),
            right: x.n(),
        });
    }
    let bits = x
        .rows()
        .iter()
        .enumerate()
        .filter(|(i, _)| v.bits() >> i & 1 == 1)
        .fold(0u64, |acc, (_, &r)| acc | r);
    Ok(SupportVector::from_bits(x.n(), bits))
}

fn action_size(x: &StarMatrix, side: Side) -> usize {
    match side {
        Side::Column => x.nonempty_rows().count_ones() as usize,
        Side::Row => x.nonempty_cols().count_ones() as usize,
    }
}

/// Action sizes on the full support of the powers `N, N^2, N^3, ...` of the
/// nilpotent part, ending at the first 0.
pub fn action_dim_seq(a: &RegularSubalgebra, side: Side) -> Result<Vec<usize>> {
    a.require_closed()?;
    let nil = a.nil_star();
    let mut cur = nil.clone();
    let mut out = Vec::new();
    loop {
        out.push(action_size(&cur, side));
        if cur.is_empty() {
            break;
        }
        cur = cur.mul(nil)?;
    }
    Ok(out)
}

/// Positions `(i,j)` of the nilpotent part with `h_i != h_j`: the pattern
/// of `ad_h` restricted to the nilpotent part.
pub fn adjoint_image_pattern(h: &[i64], a: &RegularSubalgebra) -> Result<StarMatrix> {
    if h.len() != a.n() {
        return Err(Error::DiagLength {
            n: a.n(),
            len: h.len(),
        });
    }
    let mut m = a.nil_star().clone();
    for (i, j) in a.nil_star().positions() {
        if h[i - 1] == h[j - 1] {
            m.set(i, j, false);
        }
    }
    Ok(m)
}

/// The adjoint image together with `h` itself on the diagonal. This is the
/// pattern of `span{h} + ad_h(N)`, whose column action on the full support
/// is `C^q` for `H_pq` in the full nilpotent algebra.
pub fn adjoint_action_pattern(h: &[i64], a: &RegularSubalgebra) -> Result<StarMatrix> {
    let support = h
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .fold(0u64, |acc, (i, _)| acc | 1 << i);
    Ok(adjoint_image_pattern(h, a)?.with_diagonal(support))
}

fn random_entry(rng: &mut ChaCha8Rng) -> BigInt {
    BigInt::from(rng.random_range(1u64..1 << 31))
}

/// Generic rank of a pattern whose stars carry independent values.
pub fn generic_rank(x: &StarMatrix, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = x.n();
    (0..TRIALS)
        .map(|_| {
            let m = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if x.get0(i, j) {
                                random_entry(&mut rng)
                            } else {
                                BigInt::from(0)
                            }
                        })
                        .collect()
                })
                .collect();
            linalg::rank_bigint(m)
        })
        .max()
        .unwrap_or(0)
}

/// Generic rank of an element of the algebra: every nilpotent star and every
/// cartan coefficient gets an independent random value.
pub fn generic_max_rank(a: &RegularSubalgebra, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = a.n();
    (0..TRIALS)
        .map(|_| {
            let mut m: Vec<Vec<BigInt>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if a.nil_star().get0(i, j) {
                                random_entry(&mut rng)
                            } else {
                                BigInt::from(0)
                            }
                        })
                        .collect()
                })
                .collect();
            for h in a.cartan() {
                let c = random_entry(&mut rng);
                for (k, &x) in h.iter().enumerate() {
                    m[k][k] += &c * x;
                }
            }
            linalg::rank_bigint(m)
        })
        .max()
        .unwrap_or(0)
}

/// Largest `n` for which the nil-free min-rank search runs.
pub const MIN_RANK_MAX_N: usize = 20;

/// Smallest rank of a nonzero element. A single `E_ij` has rank 1; a
/// diagonal element has rank equal to its support, so for nil-free algebras
/// this is the smallest support of a nonzero vector in the cartan span,
/// found exactly by scanning coordinate subsets in increasing size.
pub fn min_rank(a: &RegularSubalgebra) -> Result<usize> {
    if a.nil_dim() > 0 {
        return Ok(1);
    }
    if a.cartan().is_empty() {
        return Err(Error::ZeroAlgebra);
    }
    let n = a.n();
    if n > MIN_RANK_MAX_N {
        return Err(Error::Guard {
            what: "min rank search",
            n,
            max: MIN_RANK_MAX_N,
        });
    }
    for size in 2..=n {
        // Gosper's hack over n-bit masks of the given popcount
        let mut s: u64 = (1 << size) - 1;
        while s < 1 << n {
            if linalg::dim_within_support(a.canonical_cartan(), s) > 0 {
                return Ok(size);
            }
            let c = s & s.wrapping_neg();
            let r = s + c;
            s = (((r ^ s) >> 2) / c) | r;
        }
    }
    unreachable!("a nonzero cartan span has a vector with full support")
}

/// The diagonal entries, sorted: the eigenvalues of `diag(h)`.
pub fn diag_eigen_multiset(h: &[i64]) -> Vec<i64> {
    let mut v = h.to_vec();
    v.sort_unstable();
    v
}
