//! Permutations of `{1..n}` and their action on indices.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A bijection of `{1..n}`. Stored 0-based; the public API is 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// Builds a permutation from its 1-based image list `[σ(1), ..., σ(n)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotBijective(n));
            }
            seen[x - 1] = true;
            out.push(x - 1);
        }
        Ok(Self { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<usize>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(k, &x)| k == x)
        });
        Self { images }
    }

    /// The transposition `τ_ab` (1-based). `τ_aa` is the identity.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::OutOfRange {
                what: "transposition",
                detail: alloc::format!("({a},{b}) with n={n}"),
            });
        }
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i]
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first. Matches the matrix product
    /// `P_self · P_other` of permutation matrices with `P e_j = e_σ(j)`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.n(), other.n());
        Self {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.n()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x] = k;
        }
        Self { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| k == x)
    }

    /// Product of 1-based transpositions read as a matrix product
    /// `τ_1 τ_2 ⋯ τ_m`, so the rightmost acts first.
    pub fn product_of_transpositions(n: usize, taus: &[(usize, usize)]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &(a, b) in taus {
            p = p.compose(&Self::transposition(n, a, b)?);
        }
        Ok(p)
    }

    /// Moves each source label to its target in order, one transposition per
    /// step. Each step swaps the *current* position of the source label with
    /// the target, so earlier placements are never disturbed as long as the
    /// sources are distinct and the targets are distinct.
    pub fn placing(n: usize, moves: &[(usize, usize)]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &(src, dst) in moves {
            if src == 0 || src > n {
                return Err(Error::OutOfRange {
                    what: "placement",
                    detail: alloc::format!("label {src} with n={n}"),
                });
            }
            let cur = p.apply(src);
            p = Self::transposition(n, cur, dst)?.compose(&p);
        }
        Ok(p)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("()");
        }
        let mut seen = alloc::vec![false; self.n()];
        for start in 0..self.n() {
            if seen[start] || self.images[start] == start {
                continue;
            }
            f.write_str("(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.images[x];
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Serialized as the 1-based image list.
#[cfg(feature = "serde")]
impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.images(), s)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Permutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let images: Vec<usize> = serde::Deserialize::deserialize(d)?;
        Self::from_images(&images).map_err(serde::de::Error::custom)
    }
}
