use std::collections::BTreeSet;

use itertools::Itertools;
use regalg_core::basis::{bracket_with_combination, h_vector};
use regalg_core::conjugacy::{self, classify, is_witness, recipe_witness};
use regalg_core::enumerate::{self, codim1, codim2, dim2, drc_family, make_drc};
use regalg_core::invariants::signature;
use regalg_core::starcalc::derived_patterns;
use regalg_core::{
    bracket, linalg, BasisElement, ConjugacyVerdict, DrcKind, FamilyLabel, Invariant, Labeled,
    Permutation, RegularSubalgebra, StarMatrix,
};
use serde::Serialize;

use crate::commands::check_n;
use crate::output::{table, Report};

/// Largest `n` for the signature permutation sweep in the kernel suite.
pub const SWEEP_MAX_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Codim1,
    Codim2,
    Dim2,
    Drc,
    Kernels,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Warn,
    Skip,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::Warn => "WARN",
            Self::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
    pub warnings: usize,
}

impl VerifyReport {
    pub fn success(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub n: usize,
    pub seed: u64,
    pub n_max_oracle: usize,
    pub k: Option<usize>,
}

struct Run {
    cfg: VerifyConfig,
    suite: &'static str,
    checks: Vec<Check>,
}

impl Run {
    fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            status,
            detail: detail.into(),
        });
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.push(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    /// Runs `f`, turning an error into a failed check.
    fn guarded(&mut self, name: &str, f: impl FnOnce(&mut Self) -> anyhow::Result<()>) {
        if let Err(e) = f(self) {
            self.push(name, Status::Fail, format!("error: {e:#}"));
        }
    }

    fn oracle_allowed(&self, guard: usize) -> bool {
        self.cfg.n <= self.cfg.n_max_oracle.min(guard)
    }
}

pub fn verify(suite: Suite, cfg: VerifyConfig) -> anyhow::Result<VerifyReport> {
    check_n(cfg.n)?;
    type SuiteFn = fn(&mut Run);
    let suites: &[(Suite, &'static str, SuiteFn)] = &[
        (Suite::Codim1, "codim1", suite_codim1),
        (Suite::Codim2, "codim2", suite_codim2),
        (Suite::Dim2, "dim2", suite_dim2),
        (Suite::Drc, "drc", suite_drc),
        (Suite::Kernels, "kernels", suite_kernels),
    ];
    let mut run = Run {
        cfg,
        suite: "",
        checks: Vec::new(),
    };
    for (s, name, f) in suites {
        if suite == Suite::All || suite == *s {
            run.suite = name;
            f(&mut run);
        }
    }
    let count = |s: Status| run.checks.iter().filter(|c| c.status == s).count();
    Ok(VerifyReport {
        n: cfg.n,
        seed: cfg.seed,
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        warnings: count(Status::Warn),
        checks: run.checks,
    })
}

impl Report for VerifyReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["suite", "check", "status", "detail"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    c.suite.into(),
                    c.name.clone(),
                    c.status.tag().into(),
                    c.detail.clone(),
                ]
            })
            .collect()
    }

    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .checks
            .iter()
            .map(|c| {
                vec![
                    c.status.tag().into(),
                    c.suite.into(),
                    c.name.clone(),
                    c.detail.clone(),
                ]
            })
            .collect();
        let mut out = table(&["status", "suite", "check", "detail"], &rows);
        out += &format!(
            "{} passed, {} failed, {} warnings\n",
            self.passed, self.failed, self.warnings
        );
        out
    }
}

fn borel_dim(n: usize) -> usize {
    n * (n - 1) / 2 + n - 1
}

fn algebras(fam: &[Labeled]) -> Vec<RegularSubalgebra> {
    fam.iter().map(|m| m.algebra.clone()).collect()
}

fn label_partition(fam: &[Labeled], classes: &[Vec<usize>]) -> BTreeSet<BTreeSet<FamilyLabel>> {
    classes
        .iter()
        .map(|c| c.iter().map(|&x| fam[x].label.clone()).collect())
        .collect()
}

fn closed_with_dim(run: &mut Run, fam: &[Labeled], dim: usize) {
    let bad: Vec<String> = fam
        .iter()
        .filter(|m| !m.algebra.is_closed() || m.algebra.dim() != dim)
        .map(|m| m.label.to_string())
        .collect();
    run.check(
        "closed",
        bad.is_empty(),
        if bad.is_empty() {
            format!("all closed, dim {dim}")
        } else {
            bad.join(", ")
        },
    );
}

fn unresolved_warning(run: &mut Run, count: usize) {
    if count > 0 {
        run.push(
            "unresolved",
            Status::Warn,
            format!("{count} pairs with equal signatures and no permutation witness"),
        );
    }
}

fn suite_codim1(run: &mut Run) {
    let n = run.cfg.n;
    run.guarded("codim1", |run| {
        let fam = codim1(n)?;
        run.check(
            "count",
            fam.len() == 2 * n - 2,
            format!("{} members, expected {}", fam.len(), 2 * n - 2),
        );
        closed_with_dim(run, &fam, borel_dim(n) - 1);
        let p = classify(&algebras(&fam), run.cfg.seed)?;
        let singletons = p.classes.len() == fam.len() && p.classes.iter().all(|c| c.len() == 1);
        run.check(
            "classes",
            singletons,
            format!("{} singleton classes", p.classes.len()),
        );
        unresolved_warning(run, p.unresolved.len());
        if run.oracle_allowed(5) {
            let total = n * (n - 1) / 2;
            let found: BTreeSet<_> = enumerate::all_nilpotent_oracle(n)?
                .into_iter()
                .filter(|a| a.nil_dim() + 1 == total)
                .collect();
            let expected: BTreeSet<_> = fam
                .iter()
                .filter(|m| m.algebra.nil_dim() + 1 == total)
                .map(|m| m.algebra.nil_part())
                .collect();
            run.check(
                "oracle",
                found == expected,
                format!("{} closed patterns of codimension 1", found.len()),
            );
        } else {
            run.push(
                "oracle",
                Status::Skip,
                format!("n={n} above the oracle limit"),
            );
        }
        Ok(())
    });
}

fn expected_codim2(n: usize, fam: &[Labeled]) -> BTreeSet<BTreeSet<FamilyLabel>> {
    let mut out = BTreeSet::new();
    for m in fam {
        match m.label {
            FamilyLabel::N { i, j } if j == i + 1 && i + 2 <= n => {
                out.insert(BTreeSet::from([
                    m.label.clone(),
                    FamilyLabel::NR { i },
                    FamilyLabel::NC { i },
                ]));
            }
            FamilyLabel::NR { .. } | FamilyLabel::NC { .. } => {}
            _ => {
                out.insert(BTreeSet::from([m.label.clone()]));
            }
        }
    }
    out
}

fn suite_codim2(run: &mut Run) {
    let n = run.cfg.n;
    if n < 3 {
        run.push("codim2", Status::Skip, "needs n >= 3");
        return;
    }
    run.guarded("codim2", |run| {
        let fam = codim2(n)?;
        let count = |names: &[&str]| {
            fam.iter()
                .filter(|m| names.contains(&m.label.family()))
                .count()
        };
        let got = [
            count(&["P"]),
            count(&["M"]),
            count(&["N"]),
            count(&["N_R", "N_C"]),
        ];
        let want = [
            (n - 1) * (n - 2) / 2,
            (n - 1) * (n - 1),
            (n - 1) * (n - 2) / 2,
            2 * (n - 2),
        ];
        run.check(
            "count",
            fam.len() == 2 * n * n - 3 * n - 1 && got == want,
            format!("{} members, P/M/N/N_R+N_C = {got:?}", fam.len()),
        );
        closed_with_dim(run, &fam, borel_dim(n) - 2);
        let p = classify(&algebras(&fam), run.cfg.seed)?;
        let ok = label_partition(&fam, &p.classes) == expected_codim2(n, &fam);
        run.check("classes", ok, format!("{} classes", p.classes.len()));
        unresolved_warning(run, p.unresolved.len());
        if run.oracle_allowed(5) {
            let total = n * (n - 1) / 2;
            let found: BTreeSet<_> = enumerate::all_nilpotent_oracle(n)?
                .into_iter()
                .filter(|a| a.nil_dim() + 2 == total)
                .collect();
            let expected: BTreeSet<_> = fam
                .iter()
                .filter(|m| matches!(m.label.family(), "N" | "N_R" | "N_C"))
                .map(|m| m.algebra.nil_part())
                .collect();
            run.check(
                "oracle",
                found == expected,
                format!("{} closed patterns of codimension 2", found.len()),
            );
        } else {
            run.push(
                "oracle",
                Status::Skip,
                format!("n={n} above the oracle limit"),
            );
        }
        Ok(())
    });
}

fn suite_dim2(run: &mut Run) {
    let n = run.cfg.n;
    if n < 3 {
        run.push("dim2", Status::Skip, "needs n >= 3");
        return;
    }
    run.guarded("dim2", |run| {
        let fam = dim2(n)?;
        if run.oracle_allowed(6) {
            let ours: BTreeSet<_> = algebras(&fam).into_iter().collect();
            let oracle: BTreeSet<_> = enumerate::all_dim2_oracle(n)?.into_iter().collect();
            run.check(
                "oracle",
                ours == oracle,
                format!("{} closed two-generator spans", oracle.len()),
            );
        } else {
            run.push(
                "oracle",
                Status::Skip,
                format!("n={n} above the oracle limit"),
            );
        }
        for row in crate::commands::dim2_count_rows(n, &fam) {
            let detail = format!("exhaustive {}, formula {}", row.exhaustive, row.formula);
            let strict = ["A2", "B3", "C2"].contains(&row.class.as_str());
            let status = match (row.matches, strict) {
                (true, _) => Status::Pass,
                (false, true) => Status::Fail,
                (false, false) => Status::Warn,
            };
            let name = if row.matches {
                format!("count {}", row.class)
            } else {
                format!("count {} (formula mismatch)", row.class)
            };
            run.push(name, status, detail);
        }
        let p = classify(&algebras(&fam), run.cfg.seed)?;
        let families: Vec<BTreeSet<&str>> = p
            .classes
            .iter()
            .map(|c| c.iter().map(|&x| fam[x].label.family()).collect())
            .collect();
        let uniform = families.iter().all(|f| f.len() == 1);
        let distinct: BTreeSet<&str> = families.iter().flatten().copied().collect();
        let present: BTreeSet<&str> = fam.iter().map(|m| m.label.family()).collect();
        run.check(
            "classes",
            uniform && distinct.len() == p.classes.len() && distinct == present,
            format!("{} classes: {}", p.classes.len(), distinct.iter().join(" ")),
        );
        unresolved_warning(run, p.unresolved.len());
        let mut checked = 0;
        let mut bad = Vec::new();
        for a in &fam {
            for b in fam.iter().filter(|b| b.label.family() == a.label.family()) {
                let sigma = recipe_witness(n, &a.label, &b.label)?;
                if !is_witness(&a.algebra, &b.algebra, &sigma) {
                    bad.push(format!("{} -> {}", a.label, b.label));
                }
                checked += 1;
            }
        }
        let detail = if bad.is_empty() {
            format!("{checked} recipe witnesses verified")
        } else {
            bad.join(", ")
        };
        run.check("recipes", bad.is_empty(), detail);
        Ok(())
    });
}

fn suite_drc(run: &mut Run) {
    let n = run.cfg.n;
    let ks: Vec<usize> = match run.cfg.k {
        Some(k) => vec![k],
        None => (1..=3).collect(),
    };
    for k in ks {
        if k == 0 || k >= n {
            run.push(
                format!("k={k}"),
                Status::Skip,
                format!("needs 1 <= k < n={n}"),
            );
            continue;
        }
        run.guarded(&format!("k={k}"), |run| drc_for_k(run, n, k));
    }
}

fn drc_for_k(run: &mut Run, n: usize, k: usize) -> anyhow::Result<()> {
    let mut cells = 0;
    let mut misses = Vec::new();
    for kind in DrcKind::ALL {
        for i in 1..=n - k {
            let Some(case) = enumerate::drc_table_case(n, i, k) else {
                continue;
            };
            let got = enumerate::drc_commutator_codim(n, kind, i, k)?;
            let want = enumerate::drc_table_value(kind, case, k);
            cells += 1;
            if got != want {
                misses.push(format!("{kind}_{i} case {case}: {got} vs {want}"));
            }
        }
    }
    if misses.is_empty() {
        run.push(
            format!("table k={k}"),
            Status::Pass,
            format!("{cells} cells match"),
        );
    } else {
        run.push(
            format!("table k={k} (formula mismatch)"),
            Status::Warn,
            misses.join("; "),
        );
    }
    let seed = run.cfg.seed;
    for i in 1..=n - k {
        let [d, r, c] = DrcKind::ALL.map(|kind| make_drc(n, kind, i, k));
        let (d, r, c) = (d?, r?, c?);
        if k == 1 {
            run.check(format!("k=1 i={i}"), d == r, "D and R coincide");
            continue;
        }
        let pairs = [(&d, &r, "D~R"), (&d, &c, "D~C"), (&r, &c, "R~C")];
        for (x, y, name) in pairs {
            let v = conjugacy::decide(x, y, seed)?;
            let check = format!("k={k} i={i} {name}");
            match (&v, k == 2, name == "R~C") {
                (ConjugacyVerdict::Conjugate { sigma }, true, _) => {
                    run.check(check, is_witness(x, y, sigma), v.to_string());
                }
                (ConjugacyVerdict::Distinct { invariant }, false, false) => {
                    let ok = *invariant == Invariant::DerivedDims;
                    run.check(check, ok, v.to_string());
                }
                (_, false, true) => run.push(check, Status::Warn, format!("finding: {v}")),
                (ConjugacyVerdict::Unresolved, _, _) => {
                    run.push(check, Status::Warn, v.to_string())
                }
                _ => run.check(check, false, v.to_string()),
            }
        }
    }
    Ok(())
}

/// Derived series computed by spanning the brackets of basis vectors.
fn span_closure_series(a: &RegularSubalgebra) -> anyhow::Result<Vec<StarMatrix>> {
    let n = a.n();
    let mut basis = a.basis();
    let mut out: Vec<StarMatrix> = Vec::new();
    loop {
        let mut vectors = Vec::new();
        for x in &basis {
            for y in &basis {
                let mut v = vec![0i64; n * n];
                for (c, e) in &bracket(x, y)?.terms {
                    if let BasisElement::Nil { i, j, .. } = e {
                        v[(i - 1) * n + j - 1] += c;
                    }
                }
                if v.iter().any(|&c| c != 0) {
                    vectors.push(v);
                }
            }
        }
        let span = linalg::canonical_basis(&vectors);
        let support: Vec<(usize, usize)> = (0..n * n)
            .filter(|&k| span.iter().any(|v| v[k] != 0))
            .map(|k| (k / n + 1, k % n + 1))
            .collect();
        anyhow::ensure!(
            span.len() == support.len(),
            "derived span of {a} is not spanned by positions"
        );
        let pattern = StarMatrix::from_positions(n, support.iter().copied())?;
        let done = pattern.is_empty() || out.last() == Some(&pattern);
        if out.last() != Some(&pattern) {
            out.push(pattern);
        }
        if done {
            return Ok(out);
        }
        basis = support
            .iter()
            .map(|&(i, j)| BasisElement::nil(n, i, j))
            .collect::<Result<_, _>>()?;
    }
}

fn suite_kernels(run: &mut Run) {
    let n = run.cfg.n;
    run.guarded("kernels", |run| {
        let full = RegularSubalgebra::from_parts(StarMatrix::strictly_upper(n)?, Vec::new())?;
        let mut basis = full.basis();
        for k in 1..n {
            basis.push(BasisElement::Diag(h_vector(n, k)?));
        }
        let mut bad = 0;
        for a in &basis {
            for b in &basis {
                let ab = bracket(a, b)?;
                if ab.normalized() != bracket(b, a)?.neg().normalized() {
                    bad += 1;
                }
                for c in &basis {
                    let mut sum = bracket_with_combination(a, &bracket(b, c)?)?;
                    sum.add(&bracket_with_combination(b, &bracket(c, a)?)?);
                    sum.add(&bracket_with_combination(c, &ab)?);
                    if !sum.is_zero() {
                        bad += 1;
                    }
                }
            }
        }
        let m = basis.len();
        run.check(
            "bracket",
            bad == 0,
            format!(
                "antisymmetry and Jacobi over {} triples, {bad} failures",
                m * m * m
            ),
        );

        if run.oracle_allowed(5) {
            let mut total = 0;
            let mut bad = Vec::new();
            for a in enumerate::all_nilpotent_oracle(n)? {
                if derived_patterns(&a)? != span_closure_series(&a)? {
                    bad.push(a.to_string());
                }
                total += 1;
            }
            run.check(
                "derived series",
                bad.is_empty(),
                format!("{total} closed patterns, {} disagree", bad.len()),
            );
        } else {
            run.push(
                "derived series",
                Status::Skip,
                format!("n={n} above the oracle limit"),
            );
        }

        if n <= SWEEP_MAX_N {
            let mut fam = codim1(n)?;
            if n >= 3 {
                fam.extend(codim2(n)?);
                fam.extend(dim2(n)?);
            }
            for k in 1..n {
                fam.extend(drc_family(n, k)?);
            }
            let perms: Vec<Permutation> = (1..=n)
                .permutations(n)
                .map(|p| Permutation::from_images(&p))
                .collect::<Result<_, _>>()?;
            let mut images = 0;
            let mut bad = Vec::new();
            for m in &fam {
                let sig = signature(&m.algebra, run.cfg.seed)?;
                for sigma in &perms {
                    if let Some(b) = m.algebra.permuted(sigma)? {
                        images += 1;
                        if signature(&b, run.cfg.seed)? != sig {
                            bad.push(format!("{} under {sigma}", m.label));
                        }
                    }
                }
            }
            run.check(
                "signature invariance",
                bad.is_empty(),
                format!("{images} permuted images, {} changed", bad.len()),
            );
        } else {
            run.push(
                "signature invariance",
                Status::Skip,
                format!("n={n} above {SWEEP_MAX_N}"),
            );
        }
        Ok(())
    });
}
