//! Named families of regular subalgebras and exhaustive small-`n` oracles.

use alloc::vec::Vec;
use core::fmt;

use crate::basis::{bracket, h_vector, BasisElement};
use crate::star::check_size;
use crate::{Error, RegularSubalgebra, Result, StarMatrix};

/// Largest `n` for [`all_dim2_oracle`].
pub const DIM2_ORACLE_MAX_N: usize = 6;
/// Largest `n` for [`all_nilpotent_oracle`].
pub const NILPOTENT_ORACLE_MAX_N: usize = 5;

/// A standard basis element named by its indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Generator {
    E(usize, usize),
    H(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::E(i, j) => write!(f, "E_{{{i},{j}}}"),
            Self::H(k) => write!(f, "H_{k}"),
        }
    }
}

/// The nine classes of two-dimensional regular subalgebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Dim2Class {
    A1,
    A2,
    A3,
    B1,
    B2,
    B3,
    B4,
    C1,
    C2,
}

impl Dim2Class {
    pub const ALL: [Dim2Class; 9] = [
        Self::A1,
        Self::A2,
        Self::A3,
        Self::B1,
        Self::B2,
        Self::B3,
        Self::B4,
        Self::C1,
        Self::C2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::A1 => "A1",
            Self::A2 => "A2",
            Self::A3 => "A3",
            Self::B1 => "B1",
            Self::B2 => "B2",
            Self::B3 => "B3",
            Self::B4 => "B4",
            Self::C1 => "C1",
            Self::C2 => "C2",
        }
    }

    /// Published closed-form count for the class.
    /// B2 and B4 each list two sub-forms of `(n^2 - 3n + 2)/2`; their sum is
    /// returned.
    pub fn stated_count(self, n: usize) -> i64 {
        let n = n as i64;
        match self {
            Self::A1 => (n.pow(4) - 2 * n.pow(3) - n * n + 2 * n) / 8,
            Self::A2 | Self::A3 => (n.pow(3) - 3 * n * n + 2 * n) / 6,
            Self::B1 => (n.pow(3) - 6 * n * n + 11 * n - 6) / 2,
            Self::B2 | Self::B4 => n * n - 3 * n + 2,
            Self::B3 => n - 1,
            Self::C1 => (n * n - 5 * n + 6) / 2,
            Self::C2 => n - 2,
        }
    }
}

impl fmt::Display for Dim2Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DrcKind {
    /// Consecutive off-diagonal positions removed.
    D,
    /// A row segment removed.
    R,
    /// A column segment removed.
    C,
}

impl DrcKind {
    pub const ALL: [DrcKind; 3] = [Self::D, Self::R, Self::C];

    pub fn name(self) -> &'static str {
        match self {
            Self::D => "D",
            Self::R => "R",
            Self::C => "C",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for DrcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Name and parameters of a family member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum FamilyLabel {
    /// Everything except `H_i`.
    L { i: usize },
    /// Everything except `E_{i,i+1}`.
    LOff { i: usize },
    /// Everything except `H_i` and `H_j`.
    P { i: usize, j: usize },
    /// Everything except `E_{i,i+1}` and `H_j`.
    M { i: usize, j: usize },
    /// Everything except `E_{i,i+1}` and `E_{j,j+1}`.
    N { i: usize, j: usize },
    /// Everything except `E_{i,i+1}` and `E_{i,i+2}`.
    NR { i: usize },
    /// Everything except `E_{i,i+2}` and `E_{i+1,i+2}`.
    NC { i: usize },
    Dim2 {
        class: Dim2Class,
        gens: [Generator; 2],
    },
    Drc {
        kind: DrcKind,
        index: usize,
        k: usize,
    },
}

impl FamilyLabel {
    /// Family name without indices.
    pub fn family(&self) -> &'static str {
        match self {
            Self::L { .. } => "L",
            Self::LOff { .. } => "L_off",
            Self::P { .. } => "P",
            Self::M { .. } => "M",
            Self::N { .. } => "N",
            Self::NR { .. } => "N_R",
            Self::NC { .. } => "N_C",
            Self::Dim2 { class, .. } => class.name(),
            Self::Drc { kind, .. } => kind.name(),
        }
    }

    pub fn indices(&self) -> Vec<usize> {
        match *self {
            Self::L { i } | Self::LOff { i } | Self::NR { i } | Self::NC { i } => alloc::vec![i],
            Self::P { i, j } | Self::M { i, j } | Self::N { i, j } => alloc::vec![i, j],
            Self::Dim2 { gens, .. } => gens
                .iter()
                .flat_map(|g| match *g {
                    Generator::E(i, j) => alloc::vec![i, j],
                    Generator::H(k) => alloc::vec![k],
                })
                .collect(),
            Self::Drc { index, k, .. } => alloc::vec![index, k],
        }
    }
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::L { i } => write!(f, "L_{i}"),
            Self::LOff { i } => write!(f, "L_{{{i},{}}}", i + 1),
            Self::P { i, j } => write!(f, "P_{{{i},{j}}}"),
            Self::M { i, j } => write!(f, "M_{{{i},{j}}}"),
            Self::N { i, j } => write!(f, "N_{{{i},{j}}}"),
            Self::NR { i } => write!(f, "N_R_{i}"),
            Self::NC { i } => write!(f, "N_C_{i}"),
            Self::Dim2 { class, gens } => write!(f, "{class}{{{},{}}}", gens[0], gens[1]),
            Self::Drc { kind, index, k } => write!(f, "{kind}_{index}(k={k})"),
        }
    }
}

/// A family member with its label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeled {
    pub label: FamilyLabel,
    pub algebra: RegularSubalgebra,
}

fn full_e(n: usize) -> StarMatrix {
    StarMatrix::strictly_upper(n).expect("size checked")
}

fn full_e_without(n: usize, removed: &[(usize, usize)]) -> StarMatrix {
    let mut m = full_e(n);
    for &(i, j) in removed {
        m.set(i, j, false);
    }
    m
}

fn h_without(n: usize, removed: &[usize]) -> Vec<Vec<i64>> {
    (1..n)
        .filter(|k| !removed.contains(k))
        .map(|k| h_vector(n, k).expect("in range"))
        .collect()
}

fn build(nil: StarMatrix, cartan: Vec<Vec<i64>>) -> RegularSubalgebra {
    RegularSubalgebra::from_parts(nil, cartan).expect("family members are well formed")
}

fn require_at_least(n: usize, min: usize, what: &'static str) -> Result<()> {
    check_size(n)?;
    if n < min {
        return Err(Error::OutOfRange {
            what,
            detail: alloc::format!("n={n} needs n >= {min}"),
        });
    }
    Ok(())
}

/// The `2n - 2` subalgebras of codimension 1 in the upper-triangular
/// subalgebra: `L_i` and `L_{i,i+1}`.
pub fn codim1(n: usize) -> Result<Vec<Labeled>> {
    require_at_least(n, 2, "codimension-1 family")?;
    let mut out = Vec::new();
    for i in 1..n {
        out.push(Labeled {
            label: FamilyLabel::L { i },
            algebra: build(full_e(n), h_without(n, &[i])),
        });
    }
    for i in 1..n {
        out.push(Labeled {
            label: FamilyLabel::LOff { i },
            algebra: build(full_e_without(n, &[(i, i + 1)]), h_without(n, &[])),
        });
    }
    Ok(out)
}

/// The `2n^2 - 3n - 1` subalgebras of codimension 2.
pub fn codim2(n: usize) -> Result<Vec<Labeled>> {
    require_at_least(n, 3, "codimension-2 family")?;
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            out.push(Labeled {
                label: FamilyLabel::P { i, j },
                algebra: build(full_e(n), h_without(n, &[i, j])),
            });
        }
    }
    for i in 1..n {
        for j in 1..n {
            out.push(Labeled {
                label: FamilyLabel::M { i, j },
                algebra: build(full_e_without(n, &[(i, i + 1)]), h_without(n, &[j])),
            });
        }
    }
    for i in 1..n {
        for j in i + 1..n {
            out.push(Labeled {
                label: FamilyLabel::N { i, j },
                algebra: build(
                    full_e_without(n, &[(i, i + 1), (j, j + 1)]),
                    h_without(n, &[]),
                ),
            });
        }
    }
    for i in 1..n - 1 {
        out.push(Labeled {
            label: FamilyLabel::NR { i },
            algebra: build(
                full_e_without(n, &[(i, i + 1), (i, i + 2)]),
                h_without(n, &[]),
            ),
        });
    }
    for i in 1..n - 1 {
        out.push(Labeled {
            label: FamilyLabel::NC { i },
            algebra: build(
                full_e_without(n, &[(i, i + 2), (i + 1, i + 2)]),
                h_without(n, &[]),
            ),
        });
    }
    Ok(out)
}

/// Class of a two-generator span, or `None` if it is not closed.
/// Predicates are tested in the order A2, A3, A1, B3, B2, B4, B1, C2, C1.
pub fn label_dim2(a: Generator, b: Generator) -> Option<Dim2Class> {
    use Generator::{E, H};
    match (a, b) {
        (E(i, j), E(k, l)) => {
            if (i, j) == (k, l) || j == k || l == i {
                None
            } else if i == k {
                Some(Dim2Class::A2)
            } else if j == l {
                Some(Dim2Class::A3)
            } else {
                Some(Dim2Class::A1)
            }
        }
        (E(i, j), H(k)) | (H(k), E(i, j)) => Some(if (i, j) == (k, k + 1) {
            Dim2Class::B3
        } else if i == k || i == k + 1 {
            Dim2Class::B2
        } else if j == k || j == k + 1 {
            Dim2Class::B4
        } else {
            Dim2Class::B1
        }),
        (H(k), H(l)) if k != l => Some(if k.abs_diff(l) == 1 {
            Dim2Class::C2
        } else {
            Dim2Class::C1
        }),
        _ => None,
    }
}

fn generators(n: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.push(Generator::E(i, j));
        }
    }
    out.extend((1..n).map(Generator::H));
    out
}

/// The span of a list of standard generators.
pub fn span_of(n: usize, gens: &[Generator]) -> Result<RegularSubalgebra> {
    let mut nil = Vec::new();
    let mut cartan = Vec::new();
    for g in gens {
        match *g {
            Generator::E(i, j) => nil.push((i, j)),
            Generator::H(k) => cartan.push(h_vector(n, k)?),
        }
    }
    RegularSubalgebra::new(n, nil, cartan)
}

/// All two-dimensional spans of two standard generators, labeled.
pub fn dim2(n: usize) -> Result<Vec<Labeled>> {
    require_at_least(n, 3, "dimension-2 family")?;
    let gens = generators(n);
    let mut out = Vec::new();
    for (x, &a) in gens.iter().enumerate() {
        for &b in &gens[x + 1..] {
            if let Some(class) = label_dim2(a, b) {
                out.push(Labeled {
                    label: FamilyLabel::Dim2 {
                        class,
                        gens: [a, b],
                    },
                    algebra: span_of(n, &[a, b])?,
                });
            }
        }
    }
    Ok(out)
}

/// Per-class member counts of [`dim2`].
pub fn dim2_counts(members: &[Labeled]) -> Vec<(Dim2Class, usize)> {
    Dim2Class::ALL
        .into_iter()
        .map(|c| {
            (
                c,
                members
                    .iter()
                    .filter(|m| matches!(m.label, FamilyLabel::Dim2 { class, .. } if class == c))
                    .count(),
            )
        })
        .collect()
}

/// Closure checked directly from the structure constants: every bracket of
/// two basis elements must lie in the span.
pub fn closed_by_brackets(a: &RegularSubalgebra) -> bool {
    let basis = a.basis();
    basis.iter().enumerate().all(|(x, p)| {
        basis[x + 1..].iter().all(|q| {
            let r = bracket(p, q).expect("same n");
            r.terms.iter().all(|(_, e)| match e {
                BasisElement::Nil { i, j, .. } => a.contains_nil(*i, *j),
                BasisElement::Diag(d) => a.cartan_contains(d),
            })
        })
    })
}

/// Every closed span of two distinct standard generators, by brute force.
pub fn all_dim2_oracle(n: usize) -> Result<Vec<RegularSubalgebra>> {
    check_size(n)?;
    if n > DIM2_ORACLE_MAX_N {
        return Err(Error::Guard {
            what: "dimension-2 oracle",
            n,
            max: DIM2_ORACLE_MAX_N,
        });
    }
    let gens = generators(n);
    let mut out = Vec::new();
    for (x, &a) in gens.iter().enumerate() {
        for &b in &gens[x + 1..] {
            let s = span_of(n, &[a, b])?;
            if closed_by_brackets(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Every closed nilpotent pattern, by scanning all subsets of the strictly
/// upper-triangular positions.
pub fn all_nilpotent_oracle(n: usize) -> Result<Vec<RegularSubalgebra>> {
    check_size(n)?;
    if n > NILPOTENT_ORACLE_MAX_N {
        return Err(Error::Guard {
            what: "nilpotent oracle",
            n,
            max: NILPOTENT_ORACLE_MAX_N,
        });
    }
    let positions: Vec<(usize, usize)> = full_e(n).positions().collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << positions.len() {
        let chosen = positions
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &p)| p);
        let a = RegularSubalgebra::nilpotent(n, chosen)?;
        if closed_by_brackets(&a) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Positions removed from the full nilpotent algebra for a D/R/C member.
pub fn drc_removed(n: usize, kind: DrcKind, index: usize, k: usize) -> Result<Vec<(usize, usize)>> {
    check_size(n)?;
    if k == 0 || index == 0 || index + k > n {
        return Err(Error::OutOfRange {
            what: "D/R/C parameters",
            detail: alloc::format!("{kind} index={index} k={k} with n={n}"),
        });
    }
    Ok(match kind {
        DrcKind::D => (0..k).map(|t| (index + t, index + t + 1)).collect(),
        DrcKind::R => (1..=k).map(|t| (index, index + t)).collect(),
        DrcKind::C => (0..k).map(|t| (index + t, index + k)).collect(),
    })
}

/// The nilpotent algebra `E` minus a D, R or C segment of length `k`.
pub fn make_drc(n: usize, kind: DrcKind, index: usize, k: usize) -> Result<RegularSubalgebra> {
    let a = RegularSubalgebra::from_parts(
        full_e_without(n, &drc_removed(n, kind, index, k)?),
        Vec::new(),
    )?;
    a.require_closed()?;
    Ok(a)
}

/// Every valid D/R/C member for the given `n` and `k`.
pub fn drc_family(n: usize, k: usize) -> Result<Vec<Labeled>> {
    let mut out = Vec::new();
    for kind in DrcKind::ALL {
        for index in 1..=n.saturating_sub(k) {
            out.push(Labeled {
                label: FamilyLabel::Drc { kind, index, k },
                algebra: make_drc(n, kind, index, k)?,
            });
        }
    }
    Ok(out)
}

/// `|ℰ| - dim[A, A]`, where `ℰ` is the set of positions at distance at
/// least two from the diagonal.
pub fn drc_commutator_codim(n: usize, kind: DrcKind, index: usize, k: usize) -> Result<i64> {
    let a = make_drc(n, kind, index, k)?;
    let sq = a.nil_star().mul(a.nil_star())?;
    let far = ((n - 1) * (n - 2) / 2) as i64;
    Ok(far - sq.count() as i64)
}

/// Boundary case (1 to 6) of the commutator table for index `i`.
pub fn drc_table_case(n: usize, i: usize, k: usize) -> Option<u8> {
    if i == 0 || k == 0 || i + k > n {
        return None;
    }
    let tail = if i + k + 2 <= n {
        0
    } else if i + k + 1 == n {
        1
    } else {
        2
    };
    Some(if i >= 2 { 1 + tail } else { 4 + tail })
}

/// The table's value of `|ℰ| - dim[A, A]` for a case.
pub fn drc_table_value(kind: DrcKind, case: u8, k: usize) -> i64 {
    let k = k as i64;
    let idx = usize::from(case - 1);
    match kind {
        DrcKind::D => [2 * k, 2 * k - 1, 2 * k - 2, 2 * k - 1, 2 * k - 2, 2 * k - 3][idx],
        DrcKind::R | DrcKind::C => [k + 1, k + 1, k, k, k, k - 1][idx],
    }
}
