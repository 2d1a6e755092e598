//! Conjugation invariants collected into a comparable signature.

use alloc::vec::Vec;
use core::fmt;

use crate::starcalc::{self, Side};
use crate::{Error, RegularSubalgebra, Result, SupportVector};

/// Adjoint data for one root vector `e_p - e_q` in the cartan span.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct CartanRecord {
    pub eigen_multiset: Vec<i64>,
    /// Column action size of `ad_h` on the nilpotent part.
    pub adj_col_dim: usize,
    /// Row action size of `ad_h` on the nilpotent part.
    pub adj_row_dim: usize,
    pub adj_max_rank: usize,
    /// Column action size of `span{h} + ad_h(N)`.
    pub span_col_dim: usize,
    /// Row action size of `span{h} + ad_h(N)`.
    pub span_row_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub struct InvariantSignature {
    pub dim: usize,
    pub nil_dim: usize,
    /// Derived series of the nilpotent part, starting with its dimension.
    pub derived_dims: Vec<usize>,
    pub col_action_seq: Vec<usize>,
    pub row_action_seq: Vec<usize>,
    /// Generic rank of the nilpotent part.
    pub max_rank: usize,
    /// 0 for the zero algebra.
    pub min_rank: usize,
    /// Sorted records, one per root vector in the cartan span.
    pub cartan_signature: Vec<CartanRecord>,
    /// Some cartan vector is nonzero at an index whose nilpotent row is
    /// empty.
    pub last_row_cartan_flag: bool,
}

/// Signature fields in separation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "camelCase"))]
pub enum Invariant {
    Dim,
    NilDim,
    DerivedDims,
    ColActionSeq,
    RowActionSeq,
    MaxRank,
    MinRank,
    CartanSignature,
    LastRowCartanFlag,
}

impl Invariant {
    pub const ALL: [Invariant; 9] = [
        Self::Dim,
        Self::NilDim,
        Self::DerivedDims,
        Self::ColActionSeq,
        Self::RowActionSeq,
        Self::MaxRank,
        Self::MinRank,
        Self::CartanSignature,
        Self::LastRowCartanFlag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Dim => "dim",
            Self::NilDim => "nilDim",
            Self::DerivedDims => "derivedDims",
            Self::ColActionSeq => "colActionSeq",
            Self::RowActionSeq => "rowActionSeq",
            Self::MaxRank => "maxRank",
            Self::MinRank => "minRank",
            Self::CartanSignature => "cartanSignature",
            Self::LastRowCartanFlag => "lastRowCartanFlag",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|i| i.name() == s)
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Root vectors `e_p - e_q` (`p < q`) lying in the cartan span.
pub fn roots_in_span(a: &RegularSubalgebra) -> Vec<Vec<i64>> {
    let n = a.n();
    let mut out = Vec::new();
    if a.cartan().is_empty() {
        return out;
    }
    for p in 0..n {
        for q in p + 1..n {
            let mut v = alloc::vec![0; n];
            v[p] = 1;
            v[q] = -1;
            if a.cartan_contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

fn cartan_record(h: &[i64], a: &RegularSubalgebra, seed: u64) -> Result<CartanRecord> {
    let full = SupportVector::full(a.n())?;
    let adj = starcalc::adjoint_image_pattern(h, a)?;
    let span = starcalc::adjoint_action_pattern(h, a)?;
    Ok(CartanRecord {
        eigen_multiset: starcalc::diag_eigen_multiset(h),
        adj_col_dim: starcalc::col_action(&adj, &full)?.size(),
        adj_row_dim: starcalc::row_action(&full, &adj)?.size(),
        adj_max_rank: starcalc::generic_rank(&adj, seed),
        span_col_dim: starcalc::col_action(&span, &full)?.size(),
        span_row_dim: starcalc::row_action(&full, &span)?.size(),
    })
}

/// Computes the signature of a closed subalgebra. `seed` drives the generic
/// rank instantiations.
pub fn signature(a: &RegularSubalgebra, seed: u64) -> Result<InvariantSignature> {
    a.require_closed()?;
    let nil = a.nil_part();
    let mut cartan_signature = roots_in_span(a)
        .iter()
        .map(|h| cartan_record(h, a, seed))
        .collect::<Result<Vec<_>>>()?;
    cartan_signature.sort();
    let empty_rows = !a.nil_star().nonempty_rows();
    let last_row_cartan_flag = a.cartan().iter().any(|h| {
        h.iter()
            .enumerate()
            .any(|(k, &x)| x != 0 && empty_rows >> k & 1 == 1)
    });
    Ok(InvariantSignature {
        dim: a.dim(),
        nil_dim: a.nil_dim(),
        derived_dims: starcalc::derived_series_dims(&nil)?,
        col_action_seq: starcalc::action_dim_seq(&nil, Side::Column)?,
        row_action_seq: starcalc::action_dim_seq(&nil, Side::Row)?,
        max_rank: starcalc::generic_rank(a.nil_star(), seed),
        min_rank: match starcalc::min_rank(a) {
            Err(Error::ZeroAlgebra) => 0,
            r => r?,
        },
        cartan_signature,
        last_row_cartan_flag,
    })
}

/// Every field where the two signatures differ, in separation order.
pub fn differences(a: &InvariantSignature, b: &InvariantSignature) -> Vec<Invariant> {
    Invariant::ALL
        .into_iter()
        .filter(|inv| match inv {
            Invariant::Dim => a.dim != b.dim,
            Invariant::NilDim => a.nil_dim != b.nil_dim,
            Invariant::DerivedDims => a.derived_dims != b.derived_dims,
            Invariant::ColActionSeq => a.col_action_seq != b.col_action_seq,
            Invariant::RowActionSeq => a.row_action_seq != b.row_action_seq,
            Invariant::MaxRank => a.max_rank != b.max_rank,
            Invariant::MinRank => a.min_rank != b.min_rank,
            Invariant::CartanSignature => a.cartan_signature != b.cartan_signature,
            Invariant::LastRowCartanFlag => a.last_row_cartan_flag != b.last_row_cartan_flag,
        })
        .collect()
}

/// The first field where the signatures differ.
pub fn separate(a: &InvariantSignature, b: &InvariantSignature) -> Option<Invariant> {
    differences(a, b).first().copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::h_vector;
    use alloc::vec;

    fn full_e(n: usize) -> Vec<(usize, usize)> {
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect()
    }

    fn l_i(n: usize, i: usize) -> RegularSubalgebra {
        let h = (1..n)
            .filter(|&k| k != i)
            .map(|k| h_vector(n, k).unwrap())
            .collect();
        RegularSubalgebra::new(n, full_e(n), h).unwrap()
    }

    fn l_ii1(n: usize, i: usize) -> RegularSubalgebra {
        let h = (1..n).map(|k| h_vector(n, k).unwrap()).collect();
        RegularSubalgebra::new(n, full_e(n).into_iter().filter(|&p| p != (i, i + 1)), h).unwrap()
    }

    #[test]
    fn full_algebra() {
        let h = (1..4).map(|k| h_vector(4, k).unwrap()).collect();
        let a = RegularSubalgebra::new(4, full_e(4), h).unwrap();
        let s = signature(&a, 0).unwrap();
        assert_eq!((s.dim, s.nil_dim), (9, 6));
        assert_eq!(s.derived_dims, vec![6, 3, 0]);
        assert_eq!(s.cartan_signature.len(), 6);
        assert!(s.last_row_cartan_flag);
    }

    #[test]
    fn single_corner() {
        let a = RegularSubalgebra::nilpotent(3, [(1, 3)]).unwrap();
        let s = signature(&a, 0).unwrap();
        assert_eq!((s.dim, s.nil_dim, s.max_rank, s.min_rank), (1, 1, 1, 1));
        assert!(s.cartan_signature.is_empty());
    }

    #[test]
    fn l2_keeps_two_cartan_generators() {
        let a = l_i(4, 2);
        assert_eq!(a.canonical_cartan().len(), 2);
        assert_eq!(signature(&a, 0).unwrap().nil_dim, 6);
    }

    #[test]
    fn codim1_separators() {
        let (a, b) = (
            signature(&l_i(4, 1), 0).unwrap(),
            signature(&l_ii1(4, 1), 0).unwrap(),
        );
        assert_eq!(separate(&a, &b), Some(Invariant::NilDim));
        let (a, b) = (
            signature(&l_i(4, 1), 0).unwrap(),
            signature(&l_i(4, 2), 0).unwrap(),
        );
        assert_eq!(separate(&a, &b), Some(Invariant::CartanSignature));
        assert_eq!(separate(&a, &a), None);
    }

    #[test]
    fn names_round_trip() {
        for inv in Invariant::ALL {
            assert_eq!(Invariant::from_name(inv.name()), Some(inv));
        }
    }

    #[test]
    fn not_closed_is_rejected() {
        let a = RegularSubalgebra::nilpotent(3, [(1, 2), (2, 3)]).unwrap();
        assert!(signature(&a, 0).is_err());
    }
}
