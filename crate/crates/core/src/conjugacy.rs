//! Conjugacy decisions: permutation witnesses, invariant separators and
//! class partitions.

use alloc::vec::Vec;
use core::fmt;

use crate::enumerate::{Dim2Class, DrcKind, FamilyLabel, Generator};
use crate::invariants::{self, Invariant, InvariantSignature};
use crate::{Error, Permutation, RegularSubalgebra, Result};

/// Largest `n` for the permutation search.
pub const SEARCH_MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "verdict", rename_all = "lowercase"))]
pub enum ConjugacyVerdict {
    /// `sigma` maps the first algebra exactly onto the second.
    Conjugate { sigma: Permutation },
    /// The named invariant differs.
    Distinct { invariant: Invariant },
    /// Equal signatures and no permutation witness.
    Unresolved,
}

impl fmt::Display for ConjugacyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Conjugate { sigma } => write!(f, "CONJUGATE {sigma}"),
            Self::Distinct { invariant } => write!(f, "DISTINCT({invariant})"),
            Self::Unresolved => f.write_str("UNRESOLVED"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WitnessEdge {
    pub a: usize,
    pub b: usize,
    pub sigma: Permutation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SeparatorEntry {
    pub a: usize,
    pub b: usize,
    pub invariant: Invariant,
}

/// A partition of a member list into conjugacy classes. Members are
/// referred to by their index in the input.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassPartition {
    /// Sorted member lists, ordered by smallest member.
    pub classes: Vec<Vec<usize>>,
    /// A spanning tree of witnesses for every class.
    pub witnesses: Vec<WitnessEdge>,
    /// One entry per pair with differing signatures.
    pub separators: Vec<SeparatorEntry>,
    /// Pairs in different classes with equal signatures.
    pub unresolved: Vec<(usize, usize)>,
}

impl ClassPartition {
    pub fn class_of(&self, member: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&member))
    }

    pub fn separator(&self, a: usize, b: usize) -> Option<Invariant> {
        let (a, b) = (a.min(b), a.max(b));
        self.separators
            .iter()
            .find(|s| s.a == a && s.b == b)
            .map(|s| s.invariant)
    }
}

/// Image of `a` under `sigma`, if it is upper-triangular.
pub fn permute_subalgebra(
    a: &RegularSubalgebra,
    sigma: &Permutation,
) -> Result<Option<RegularSubalgebra>> {
    a.permuted(sigma)
}

/// Whether `sigma` maps `a` exactly onto `b`.
pub fn is_witness(a: &RegularSubalgebra, b: &RegularSubalgebra, sigma: &Permutation) -> bool {
    sigma.n() == a.n() && a.permuted(sigma).ok().flatten().as_ref() == Some(b)
}

fn check_pair(a: &RegularSubalgebra, b: &RegularSubalgebra) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    if a.n() > SEARCH_MAX_N {
        return Err(Error::Guard {
            what: "permutation search",
            n: a.n(),
            max: SEARCH_MAX_N,
        });
    }
    Ok(())
}

/// Lexicographically first permutation mapping `a` onto `b`, by
/// backtracking over partial assignments that keep the nilpotent patterns
/// consistent. No signature pruning.
pub fn find_permutation_witness(
    a: &RegularSubalgebra,
    b: &RegularSubalgebra,
) -> Result<Option<Permutation>> {
    check_pair(a, b)?;
    if a.nil_dim() != b.nil_dim() || a.cartan().len() != b.cartan().len() {
        return Ok(None);
    }
    let n = a.n();
    let mut images = Vec::with_capacity(n);
    let mut used = 0u64;
    Ok(search(a, b, &mut images, &mut used))
}

fn search(
    a: &RegularSubalgebra,
    b: &RegularSubalgebra,
    images: &mut Vec<usize>,
    used: &mut u64,
) -> Option<Permutation> {
    let n = a.n();
    let x = images.len();
    if x == n {
        let sigma = Permutation::from_zero_based(images.clone());
        return is_witness(a, b, &sigma).then_some(sigma);
    }
    let (na, nb) = (a.nil_star(), b.nil_star());
    for y in 0..n {
        if *used >> y & 1 == 1 {
            continue;
        }
        let consistent = images
            .iter()
            .enumerate()
            .all(|(w, &z)| na.get0(w, x) == nb.get0(z, y) && na.get0(x, w) == nb.get0(y, z));
        if !consistent {
            continue;
        }
        images.push(y);
        *used |= 1 << y;
        let found = search(a, b, images, used);
        images.pop();
        *used &= !(1 << y);
        if found.is_some() {
            return found;
        }
    }
    None
}

/// A permutation witness, searched only when the signatures agree.
pub fn perm_conjugate(
    a: &RegularSubalgebra,
    b: &RegularSubalgebra,
    seed: u64,
) -> Result<Option<Permutation>> {
    check_pair(a, b)?;
    if invariants::signature(a, seed)? != invariants::signature(b, seed)? {
        return Ok(None);
    }
    find_permutation_witness(a, b)
}

fn decide_with(
    a: &RegularSubalgebra,
    b: &RegularSubalgebra,
    sa: &InvariantSignature,
    sb: &InvariantSignature,
) -> Result<ConjugacyVerdict> {
    if let Some(invariant) = invariants::separate(sa, sb) {
        return Ok(ConjugacyVerdict::Distinct { invariant });
    }
    Ok(match find_permutation_witness(a, b)? {
        Some(sigma) => {
            debug_assert!(is_witness(a, b, &sigma));
            ConjugacyVerdict::Conjugate { sigma }
        }
        None => ConjugacyVerdict::Unresolved,
    })
}

/// Conjugate with a witness, Distinct with a separating invariant, or
/// Unresolved.
pub fn decide(a: &RegularSubalgebra, b: &RegularSubalgebra, seed: u64) -> Result<ConjugacyVerdict> {
    check_pair(a, b)?;
    let sa = invariants::signature(a, seed)?;
    let sb = invariants::signature(b, seed)?;
    decide_with(a, b, &sa, &sb)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Partitions `members` into conjugacy classes. Classes merge only on
/// explicit witnesses.
pub fn classify(members: &[RegularSubalgebra], seed: u64) -> Result<ClassPartition> {
    if let Some(first) = members.first() {
        for m in members {
            check_pair(first, m)?;
        }
    }
    let sigs = members
        .iter()
        .map(|m| invariants::signature(m, seed))
        .collect::<Result<Vec<_>>>()?;
    let count = members.len();
    let mut parent: Vec<usize> = (0..count).collect();
    let mut out = ClassPartition::default();

    for x in 0..count {
        for y in x + 1..count {
            if sigs[x] != sigs[y] || find(&mut parent, x) == find(&mut parent, y) {
                continue;
            }
            if let Some(sigma) = find_permutation_witness(&members[x], &members[y])? {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[ry.max(rx)] = rx.min(ry);
                out.witnesses.push(WitnessEdge { a: x, b: y, sigma });
            }
        }
    }

    let roots: Vec<usize> = (0..count).map(|x| find(&mut parent, x)).collect();
    for x in 0..count {
        for y in x + 1..count {
            if roots[x] == roots[y] {
                continue;
            }
            match invariants::separate(&sigs[x], &sigs[y]) {
                Some(invariant) => out.separators.push(SeparatorEntry {
                    a: x,
                    b: y,
                    invariant,
                }),
                None => out.unresolved.push((x, y)),
            }
        }
    }

    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class: Vec<Option<usize>> = alloc::vec![None; count];
    for x in 0..count {
        match root_class[roots[x]] {
            Some(c) => classes[c].push(x),
            None => {
                root_class[roots[x]] = Some(classes.len());
                classes.push(alloc::vec![x]);
            }
        }
    }
    out.classes = classes;
    Ok(out)
}

fn no_recipe(a: &FamilyLabel, b: &FamilyLabel) -> Error {
    Error::NoRecipe(alloc::format!("{a} -> {b}"))
}

fn split_eh(gens: &[Generator; 2]) -> Option<((usize, usize), usize)> {
    match *gens {
        [Generator::E(i, j), Generator::H(k)] | [Generator::H(k), Generator::E(i, j)] => {
            Some(((i, j), k))
        }
        _ => None,
    }
}

fn e_pair(gens: &[Generator; 2]) -> Option<((usize, usize), (usize, usize))> {
    match *gens {
        [Generator::E(i, j), Generator::E(k, l)] => Some(((i, j), (k, l))),
        _ => None,
    }
}

fn h_pair(gens: &[Generator; 2]) -> Option<(usize, usize)> {
    match *gens {
        [Generator::H(k), Generator::H(l)] => Some((k.min(l), k.max(l))),
        _ => None,
    }
}

/// For `E_rc` with `H_k`: the endpoint touching `{k, k+1}`, the other
/// endpoint and the remaining cartan index.
fn touching(e: (usize, usize), k: usize, row: bool) -> (usize, usize, usize) {
    let (touch, free) = if row { (e.0, e.1) } else { (e.1, e.0) };
    let other = if touch == k { k + 1 } else { k };
    (touch, free, other)
}

/// The explicit transposition recipe conjugating `a` to `b`, for pairs in
/// the same dimension-2 class, the `N_{i,i+1}`, `N_R_i`, `N_C_i` triple, the
/// matching D/R/C triple for `k = 2`, and `C_i` to `R_i` for any `k`.
///
/// Where a recipe places several labels, the transpositions are applied as
/// successive placements, so colliding indices are handled.
pub fn recipe_witness(n: usize, a: &FamilyLabel, b: &FamilyLabel) -> Result<Permutation> {
    if a == b {
        return Ok(Permutation::identity(n));
    }
    use FamilyLabel as F;
    let place = |moves: &[(usize, usize)]| Permutation::placing(n, moves);
    let t = |x: usize, y: usize| Permutation::transposition(n, x, y);
    match (a, b) {
        (
            F::Dim2 {
                class: ca,
                gens: ga,
            },
            F::Dim2 {
                class: cb,
                gens: gb,
            },
        ) if ca == cb => match ca {
            Dim2Class::A1 | Dim2Class::A3 => {
                let (((i, j), (k, l)), ((m, nn), (s, tt))) =
                    e_pair(ga).zip(e_pair(gb)).ok_or_else(|| no_recipe(a, b))?;
                if *ca == Dim2Class::A1 {
                    place(&[(i, m), (j, nn), (k, s), (l, tt)])
                } else {
                    place(&[(i, m), (k, s), (j, nn)])
                }
            }
            Dim2Class::A2 => {
                let (((i, j), (_, l)), ((k, m), (_, nn))) =
                    e_pair(ga).zip(e_pair(gb)).ok_or_else(|| no_recipe(a, b))?;
                place(&[(i, k), (j, m), (l, nn)])
            }
            Dim2Class::B1 | Dim2Class::B3 => {
                let (((i, j), k), ((m, nn), l)) = split_eh(ga)
                    .zip(split_eh(gb))
                    .ok_or_else(|| no_recipe(a, b))?;
                if *ca == Dim2Class::B1 {
                    place(&[(i, m), (j, nn), (k, l), (k + 1, l + 1)])
                } else {
                    place(&[(k, l), (k + 1, l + 1)])
                }
            }
            Dim2Class::B2 | Dim2Class::B4 => {
                let ((ea, ka), (eb, kb)) = split_eh(ga)
                    .zip(split_eh(gb))
                    .ok_or_else(|| no_recipe(a, b))?;
                let row = *ca == Dim2Class::B2;
                let (t1, f1, o1) = touching(ea, ka, row);
                let (t2, f2, o2) = touching(eb, kb, row);
                place(&[(t1, t2), (f1, f2), (o1, o2)])
            }
            Dim2Class::C1 => {
                let ((k, l), (m, p)) = h_pair(ga).zip(h_pair(gb)).ok_or_else(|| no_recipe(a, b))?;
                place(&[(k, m), (k + 1, m + 1), (l, p), (l + 1, p + 1)])
            }
            Dim2Class::C2 => {
                let ((l, _), (m, _)) = h_pair(ga).zip(h_pair(gb)).ok_or_else(|| no_recipe(a, b))?;
                place(&[(l, m), (l + 1, m + 1), (l + 2, m + 2)])
            }
        },
        _ => {
            let (ta, tb) = triple_role(a)
                .zip(triple_role(b))
                .ok_or_else(|| no_recipe(a, b))?;
            if ta.0 != tb.0 || ta.2.is_some() != tb.2.is_some() {
                return Err(no_recipe(a, b));
            }
            if let (Some(ka), Some(kb)) = (ta.2, tb.2) {
                if ka != kb {
                    return Err(no_recipe(a, b));
                }
                if ka != 2 {
                    return match (ta.1, tb.1) {
                        (Role::C, Role::R) => c_to_r(n, ta.0, ka),
                        (Role::R, Role::C) => Ok(c_to_r(n, ta.0, ka)?.inverse()),
                        _ => Err(no_recipe(a, b)),
                    };
                }
            }
            let i = ta.0;
            // C -> D by τ_{i+1,i+2}, D -> R by τ_{i,i+1}
            let to_d = |r: Role| -> Result<Permutation> {
                match r {
                    Role::C => t(i + 1, i + 2),
                    Role::D => Ok(Permutation::identity(n)),
                    Role::R => t(i, i + 1),
                }
            };
            Ok(to_d(tb.1)?.inverse().compose(&to_d(ta.1)?))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    D,
    R,
    C,
}

/// `(index, role, k)` for members of the `N_{i,i+1}`, `N_R_i`, `N_C_i`
/// triple (`k` absent) and of the D/R/C family.
fn triple_role(l: &FamilyLabel) -> Option<(usize, Role, Option<usize>)> {
    match *l {
        FamilyLabel::N { i, j } if j == i + 1 => Some((i, Role::D, None)),
        FamilyLabel::NR { i } => Some((i, Role::R, None)),
        FamilyLabel::NC { i } => Some((i, Role::C, None)),
        FamilyLabel::Drc { kind, index, k } => {
            let role = match kind {
                DrcKind::D => Role::D,
                DrcKind::R => Role::R,
                DrcKind::C => Role::C,
            };
            Some((index, role, Some(k)))
        }
        _ => None,
    }
}

/// `τ_{i,i+k} τ_{i,i+1} τ_{i+1,i+2} ⋯ τ_{i+k-2,i+k-1}` as a matrix product.
fn c_to_r(n: usize, i: usize, k: usize) -> Result<Permutation> {
    let mut taus = alloc::vec![(i, i + k)];
    taus.extend((1..k).map(|m| (i + m - 1, i + m)));
    Permutation::product_of_transpositions(n, &taus)
}
