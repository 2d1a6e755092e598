//! Boolean star patterns over the (OR, AND) semiring, stored as one `u64`
//! bitset per row.

use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result, MAX_N};

/// An `n × n` boolean pattern. Bit `j` of `rows[i]` is the star at
/// 0-based position `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StarMatrix {
    n: usize,
    rows: Vec<u64>,
}

/// The support of a vector in `C^n`: bit `i` set means entry `i` may be
/// nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SupportVector {
    n: usize,
    bits: u64,
}

pub(crate) fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidSize(n));
    }
    Ok(())
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl StarMatrix {
    pub fn zero(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self {
            n,
            rows: alloc::vec![0; n],
        })
    }

    /// All strictly upper-triangular positions.
    pub fn strictly_upper(n: usize) -> Result<Self> {
        let mut m = Self::zero(n)?;
        for i in 0..n {
            m.rows[i] = full_mask(n) & !full_mask(i + 1);
        }
        Ok(m)
    }

    /// Builds a pattern from 1-based positions. Positions may lie anywhere
    /// in the square; use [`StarMatrix::is_strictly_upper`] to check.
    pub fn from_positions(
        n: usize,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut m = Self::zero(n)?;
        for (i, j) in positions {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidPosition { n, i, j });
            }
            m.rows[i - 1] |= 1 << (j - 1);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub(crate) fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Star at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i - 1] >> (j - 1) & 1 == 1
    }

    pub(crate) fn get0(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        if value {
            self.rows[i - 1] |= 1 << (j - 1);
        } else {
            self.rows[i - 1] &= !(1 << (j - 1));
        }
    }

    pub fn count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn is_strictly_upper(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, &r)| r & full_mask(i + 1) == 0)
    }

    /// 1-based positions in row-major order.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(i, &r)| {
            (0..self.n)
                .filter(move |&j| r >> j & 1 == 1)
                .map(move |j| (i + 1, j + 1))
        })
    }

    /// Boolean product: `(XY)(i,l) = OR_k X(i,k) AND Y(k,l)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut bits = r;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    acc |= other.rows[k];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        Ok(Self { n: self.n, rows })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a | b)
            .collect();
        Ok(Self { n: self.n, rows })
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.n == other.n && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    /// Bitmask of rows containing at least one star.
    pub fn nonempty_rows(&self) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Bitmask of columns containing at least one star.
    pub fn nonempty_cols(&self) -> u64 {
        self.rows.iter().fold(0, |acc, r| acc | r)
    }

    /// Adds stars on the diagonal wherever `mask` has a bit.
    pub(crate) fn with_diagonal(&self, mask: u64) -> Self {
        let mut m = self.clone();
        for i in 0..self.n {
            if mask >> i & 1 == 1 {
                m.rows[i] |= 1 << i;
            }
        }
        m
    }

    /// Relabels rows and columns by a 0-based index map.
    pub(crate) fn relabel(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut rows = alloc::vec![0u64; self.n];
        for i in 0..self.n {
            let mut bits = self.rows[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                rows[map(i)] |= 1 << map(j);
                bits &= bits - 1;
            }
        }
        Self { n: self.n, rows }
    }
}

impl fmt::Display for StarMatrix {
    /// Renders the pattern as a grid of `*` and `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(if self.get0(i, j) { "*" } else { "0" })?;
            }
            if i + 1 < self.n {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

impl SupportVector {
    pub fn zero(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self { n, bits: 0 })
    }

    pub fn full(n: usize) -> Result<Self> {
        check_size(n)?;
        Ok(Self {
            n,
            bits: full_mask(n),
        })
    }

    /// The pattern of `C^n_i`: entries `1..=i` may be nonzero.
    pub fn prefix(n: usize, i: usize) -> Result<Self> {
        check_size(n)?;
        if i > n {
            return Err(Error::OutOfRange {
                what: "prefix",
                detail: alloc::format!("{i} > {n}"),
            });
        }
        Ok(Self {
            n,
            bits: full_mask(i) & full_mask(n),
        })
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_size(n)?;
        let mut bits = 0;
        for i in indices {
            if i == 0 || i > n {
                return Err(Error::OutOfRange {
                    what: "support index",
                    detail: alloc::format!("{i}"),
                });
            }
            bits |= 1 << (i - 1);
        }
        Ok(Self { n, bits })
    }

    pub(crate) fn from_bits(n: usize, bits: u64) -> Self {
        Self { n, bits }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn size(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits >> (i - 1) & 1 == 1
    }

    /// 1-based indices in the support.
    pub fn indices(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.bits >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }
}
