//! Standard basis elements and their exact brackets.

use alloc::vec::Vec;
use core::fmt;

use crate::star::check_size;
use crate::{Error, Result};

/// A standard basis element of an upper-triangular regular subalgebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    /// `E_ij` with `1 <= i < j <= n`.
    Nil { n: usize, i: usize, j: usize },
    /// A traceless diagonal matrix, given by its diagonal.
    Diag(Vec<i64>),
}

impl BasisElement {
    pub fn nil(n: usize, i: usize, j: usize) -> Result<Self> {
        check_size(n)?;
        if i == 0 || i >= j || j > n {
            return Err(Error::InvalidPosition { n, i, j });
        }
        Ok(Self::Nil { n, i, j })
    }

    pub fn diag(d: Vec<i64>) -> Result<Self> {
        check_size(d.len())?;
        if d.iter().sum::<i64>() != 0 {
            return Err(Error::NotTraceless(d));
        }
        Ok(Self::Diag(d))
    }

    /// `H_k = E_kk - E_{k+1,k+1}`.
    pub fn h(n: usize, k: usize) -> Result<Self> {
        Self::h_pq(n, k, k + 1)
    }

    /// `H_pq = E_pp - E_qq`.
    pub fn h_pq(n: usize, p: usize, q: usize) -> Result<Self> {
        Ok(Self::Diag(h_pq_vector(n, p, q)?))
    }

    pub fn n(&self) -> usize {
        match self {
            Self::Nil { n, .. } => *n,
            Self::Diag(d) => d.len(),
        }
    }
}

/// Diagonal of `H_pq` as a length-`n` vector.
pub fn h_pq_vector(n: usize, p: usize, q: usize) -> Result<Vec<i64>> {
    check_size(n)?;
    if p == 0 || q == 0 || p > n || q > n || p == q {
        return Err(Error::OutOfRange {
            what: "H index",
            detail: alloc::format!("H[{p},{q}] with n={n}"),
        });
    }
    let mut v = alloc::vec![0; n];
    v[p - 1] = 1;
    v[q - 1] = -1;
    Ok(v)
}

/// Diagonal of `H_k`.
pub fn h_vector(n: usize, k: usize) -> Result<Vec<i64>> {
    h_pq_vector(n, k, k + 1)
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Nil { i, j, .. } => write!(f, "E{i}{j}"),
            Self::Diag(d) => f.write_str(&crate::descriptor::format_diag(d)),
        }
    }
}

/// A linear combination of basis elements with nonzero integer
/// coefficients and distinct elements.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BracketResult {
    pub terms: Vec<(i64, BasisElement)>,
}

impl BracketResult {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff · elem`, merging with an existing equal element.
    pub fn add_term(&mut self, coeff: i64, elem: BasisElement) {
        if coeff == 0 {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|(_, e)| *e == elem) {
            self.terms[pos].0 += coeff;
            if self.terms[pos].0 == 0 {
                self.terms.remove(pos);
            }
        } else {
            self.terms.push((coeff, elem));
        }
    }

    pub fn add(&mut self, other: &Self) {
        for (c, e) in &other.terms {
            self.add_term(*c, e.clone());
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (c, e) in &self.terms {
            out.add_term(c * k, e.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1)
    }

    /// Terms sorted by element, for order-insensitive comparison.
    pub fn normalized(&self) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| a.1.cmp(&b.1));
        Self { terms }
    }
}

/// `[a, b]` via the structure constants
/// `[E_ij, E_kl] = δ_jk E_il - δ_li E_kj`,
/// `[D, E_ij] = (d_i - d_j) E_ij` and `[D, D'] = 0`.
pub fn bracket(a: &BasisElement, b: &BasisElement) -> Result<BracketResult> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    let mut out = BracketResult::zero();
    match (a, b) {
        (BasisElement::Nil { i, j, .. }, BasisElement::Nil { i: k, j: l, .. }) => {
            if j == k {
                out.add_term(1, BasisElement::Nil { n, i: *i, j: *l });
            }
            if l == i {
                out.add_term(-1, BasisElement::Nil { n, i: *k, j: *j });
            }
        }
        (BasisElement::Diag(d), BasisElement::Nil { i, j, .. }) => {
            out.add_term(d[i - 1] - d[j - 1], b.clone());
        }
        (BasisElement::Nil { i, j, .. }, BasisElement::Diag(d)) => {
            out.add_term(d[j - 1] - d[i - 1], a.clone());
        }
        (BasisElement::Diag(_), BasisElement::Diag(_)) => {}
    }
    Ok(out)
}

/// Bilinear extension: `[a, Σ c_t e_t]`.
pub fn bracket_with_combination(a: &BasisElement, b: &BracketResult) -> Result<BracketResult> {
    let mut out = BracketResult::zero();
    for (c, e) in &b.terms {
        out.add(&bracket(a, e)?.scaled(*c));
    }
    Ok(out)
}
