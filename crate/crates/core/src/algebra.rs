//! The regular subalgebra data model and bracket-closure checks.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::hash::{Hash, Hasher};

use crate::basis::BasisElement;
use crate::star::check_size;
use crate::{linalg, Error, Permutation, Result, StarMatrix};

/// A subalgebra spanned by a set of `E_ij` (`i < j`) and a linearly
/// independent list of traceless integer diagonal vectors.
///
/// Equality, ordering and hashing compare the nilpotent positions and the
/// cartan *span*, so two values built from different generator lists of the
/// same span are equal.
#[derive(Debug, Clone)]
pub struct RegularSubalgebra {
    n: usize,
    nil: StarMatrix,
    cartan: Vec<Vec<i64>>,
    canonical: Vec<Vec<i64>>,
}

impl RegularSubalgebra {
    /// Validates and builds a subalgebra from 1-based nilpotent positions and
    /// cartan generators. Closure is not required; see [`Self::is_closed`].
    pub fn new(
        n: usize,
        nil: impl IntoIterator<Item = (usize, usize)>,
        cartan: Vec<Vec<i64>>,
    ) -> Result<Self> {
        check_size(n)?;
        let mut pattern = StarMatrix::zero(n)?;
        for (i, j) in nil {
            if i == 0 || i >= j || j > n {
                return Err(Error::InvalidPosition { n, i, j });
            }
            pattern.set(i, j, true);
        }
        Self::from_parts(pattern, cartan)
    }

    pub fn from_parts(nil: StarMatrix, cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = nil.n();
        if !nil.is_strictly_upper() {
            let (i, j) = nil.positions().find(|&(i, j)| i >= j).unwrap_or((0, 0));
            return Err(Error::InvalidPosition { n, i, j });
        }
        for (k, g) in cartan.iter().enumerate() {
            if g.len() != n {
                return Err(Error::DiagLength { n, len: g.len() });
            }
            if g.iter().sum::<i64>() != 0 {
                return Err(Error::NotTraceless(g.clone()));
            }
            if cartan[..k].contains(g) {
                return Err(Error::DuplicateGenerator(k + 1));
            }
        }
        if linalg::rank(&cartan) != cartan.len() {
            return Err(Error::DependentCartan);
        }
        let canonical = linalg::canonical_basis(&cartan);
        Ok(Self {
            n,
            nil,
            cartan,
            canonical,
        })
    }

    /// Nilpotent subalgebra spanned by the given positions.
    pub fn nilpotent(n: usize, nil: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, nil, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nil_star(&self) -> &StarMatrix {
        &self.nil
    }

    /// Nilpotent positions (1-based) in row-major order.
    pub fn nil_positions(&self) -> Vec<(usize, usize)> {
        self.nil.positions().collect()
    }

    pub fn contains_nil(&self, i: usize, j: usize) -> bool {
        i >= 1 && i < j && j <= self.n && self.nil.get(i, j)
    }

    /// Cartan generators as supplied.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Reduced row-echelon basis of the cartan span, scaled to primitive
    /// integer vectors.
    pub fn canonical_cartan(&self) -> &[Vec<i64>] {
        &self.canonical
    }

    pub fn nil_dim(&self) -> usize {
        self.nil.count()
    }

    pub fn dim(&self) -> usize {
        self.nil_dim() + self.cartan.len()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.cartan.is_empty()
    }

    /// The maximal nilpotent part: same positions, no cartan.
    pub fn nil_part(&self) -> Self {
        Self {
            n: self.n,
            nil: self.nil.clone(),
            cartan: Vec::new(),
            canonical: Vec::new(),
        }
    }

    pub fn basis(&self) -> Vec<BasisElement> {
        let mut out: Vec<BasisElement> = self
            .nil
            .positions()
            .map(|(i, j)| BasisElement::Nil { n: self.n, i, j })
            .collect();
        out.extend(self.cartan.iter().cloned().map(BasisElement::Diag));
        out
    }

    /// Whether `v` lies in the cartan span.
    pub fn cartan_contains(&self, v: &[i64]) -> bool {
        linalg::in_span(&self.canonical, v)
    }

    /// Adds a cartan generator. Fails if it is dependent on the existing ones.
    pub fn with_cartan(&self, h: Vec<i64>) -> Result<Self> {
        let mut cartan = self.cartan.clone();
        cartan.push(h);
        Self::from_parts(self.nil.clone(), cartan)
    }

    /// Same cartan, different nilpotent pattern.
    pub fn with_nil(&self, nil: StarMatrix) -> Result<Self> {
        if nil.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: nil.n(),
            });
        }
        Self::from_parts(nil, self.cartan.clone())
    }

    /// Positions produced by brackets of two members that are not members.
    ///
    /// Only first-order defects are reported, not the transitive closure.
    /// Diagonal-nilpotent brackets are scalar multiples of members and
    /// diagonal-diagonal brackets vanish, so only the pattern matters.
    pub fn closure_defect(&self) -> Vec<(usize, usize)> {
        let square = self.nil.mul(&self.nil).expect("same n");
        let mut out = BTreeSet::new();
        for (i, l) in square.positions() {
            if !self.nil.get(i, l) {
                out.insert((i, l));
            }
        }
        out.into_iter().collect()
    }

    /// Pairwise condition: for members `(i,j)`, `(j,l)` the
    /// position `(i,l)` is a member.
    pub fn is_closed(&self) -> bool {
        let sq = self.nil.mul(&self.nil).expect("same n");
        sq.is_subset_of(&self.nil)
    }

    pub(crate) fn require_closed(&self) -> Result<()> {
        if self.is_closed() {
            Ok(())
        } else {
            Err(Error::NotClosed {
                defects: self.closure_defect(),
            })
        }
    }

    /// Upper bound on the dimension of a closed subalgebra missing `E_ij`:
    /// `n(n+1)/2 - (j - i)` when the algebra carries cartan generators and
    /// `n(n-1)/2 - (j - i)` when it is nilpotent.
    pub fn dimension_bound(&self, missing: (usize, usize)) -> Result<usize> {
        let (i, j) = missing;
        if i == 0 || i >= j || j > self.n {
            return Err(Error::InvalidPosition { n: self.n, i, j });
        }
        if self.nil.get(i, j) {
            return Err(Error::OutOfRange {
                what: "missing position",
                detail: alloc::format!("({i},{j}) is a member"),
            });
        }
        Ok(dimension_bound(self.n, (i, j), !self.cartan.is_empty()))
    }

    /// Image under conjugation by a permutation matrix, if it is again
    /// upper-triangular. Monomial sign factors only rescale basis elements,
    /// so permutations capture every monomial conjugation.
    pub fn permuted(&self, sigma: &Permutation) -> Result<Option<Self>> {
        if sigma.n() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: sigma.n(),
            });
        }
        let image = self.nil.relabel(|x| sigma.apply0(x));
        if !image.is_strictly_upper() {
            return Ok(None);
        }
        let cartan: Vec<Vec<i64>> = self
            .cartan
            .iter()
            .map(|v| permute_vector(v, sigma))
            .collect();
        let canonical = linalg::canonical_basis(&cartan);
        Ok(Some(Self {
            n: self.n,
            nil: image,
            cartan,
            canonical,
        }))
    }
}

/// `w[σ(a)] = v[a]`.
pub(crate) fn permute_vector(v: &[i64], sigma: &Permutation) -> Vec<i64> {
    let mut w = alloc::vec![0; v.len()];
    for (a, &x) in v.iter().enumerate() {
        w[sigma.apply0(a)] = x;
    }
    w
}

/// The bound as a free function of `n`, the missing position and whether
/// cartan elements are allowed.
pub fn dimension_bound(n: usize, missing: (usize, usize), solvable: bool) -> usize {
    let total = if solvable {
        n * (n + 1) / 2
    } else {
        n * (n - 1) / 2
    };
    total - (missing.1 - missing.0)
}

impl PartialEq for RegularSubalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.nil == other.nil && self.canonical == other.canonical
    }
}

impl Eq for RegularSubalgebra {}

impl Hash for RegularSubalgebra {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.nil.hash(state);
        self.canonical.hash(state);
    }
}

impl PartialOrd for RegularSubalgebra {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RegularSubalgebra {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.nil, &self.canonical).cmp(&(other.n, &other.nil, &other.canonical))
    }
}
