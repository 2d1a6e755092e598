use std::collections::BTreeMap;

use anyhow::{bail, ensure, Context};
use regalg_core::conjugacy::{self, ClassPartition};
use regalg_core::enumerate::{self, Dim2Class};
use regalg_core::invariants::{self, CartanRecord};
use regalg_core::{
    ConjugacyVerdict, DrcKind, Invariant, InvariantSignature, Labeled, Permutation,
    RegularSubalgebra,
};
use serde::Serialize;

use crate::output::{join, table, Report};

/// Range of `n` accepted by the enumeration commands.
pub const N_RANGE: std::ops::RangeInclusive<usize> = 2..=8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Codim1,
    Codim2,
    Dim2,
    Drc,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Self::Codim1 => "codim1",
            Self::Codim2 => "codim2",
            Self::Dim2 => "dim2",
            Self::Drc => "drc",
        }
    }
}

/// Parameters of the D/R/C family. `k` is required for it; `kind` and
/// `index` narrow the members.
#[derive(Debug, Clone, Copy, Default)]
pub struct DrcSelection {
    pub k: Option<usize>,
    pub kind: Option<DrcKind>,
    pub index: Option<usize>,
}

pub fn check_n(n: usize) -> anyhow::Result<()> {
    ensure!(
        N_RANGE.contains(&n),
        "n={n} is out of range ({}..={})",
        N_RANGE.start(),
        N_RANGE.end()
    );
    Ok(())
}

pub fn members(n: usize, family: Family, drc: DrcSelection) -> anyhow::Result<Vec<Labeled>> {
    check_n(n)?;
    Ok(match family {
        Family::Codim1 => enumerate::codim1(n)?,
        Family::Codim2 => enumerate::codim2(n)?,
        Family::Dim2 => enumerate::dim2(n)?,
        Family::Drc => {
            let k = drc.k.context("family drc needs --k")?;
            ensure!(k >= 1 && k < n, "k={k} must satisfy 1 <= k < n={n}");
            enumerate::drc_family(n, k)?
                .into_iter()
                .filter(|m| match m.label {
                    regalg_core::FamilyLabel::Drc { kind, index, .. } => {
                        drc.kind.is_none_or(|x| x == kind) && drc.index.is_none_or(|x| x == index)
                    }
                    _ => true,
                })
                .collect()
        }
    })
}

pub fn parse(descriptor: &str) -> anyhow::Result<RegularSubalgebra> {
    descriptor
        .parse()
        .with_context(|| format!("invalid descriptor `{descriptor}`"))
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MemberRow {
    pub label: String,
    pub family: String,
    pub indices: Vec<usize>,
    pub descriptor: String,
    pub dim: usize,
    pub nil_dim: usize,
}

#[derive(Debug, Serialize)]
pub struct CountRow {
    pub class: String,
    pub exhaustive: usize,
    pub formula: i64,
    pub matches: bool,
}

#[derive(Debug, Serialize)]
pub struct EnumerateReport {
    pub n: usize,
    pub family: Family,
    pub members: Vec<MemberRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Vec<CountRow>>,
}

pub fn dim2_count_rows(n: usize, members: &[Labeled]) -> Vec<CountRow> {
    let got: BTreeMap<Dim2Class, usize> = enumerate::dim2_counts(members).into_iter().collect();
    Dim2Class::ALL
        .into_iter()
        .map(|c| {
            let exhaustive = got.get(&c).copied().unwrap_or(0);
            let formula = c.stated_count(n);
            CountRow {
                class: c.to_string(),
                exhaustive,
                formula,
                matches: exhaustive as i64 == formula,
            }
        })
        .collect()
}

pub fn enumerate(n: usize, family: Family, drc: DrcSelection) -> anyhow::Result<EnumerateReport> {
    let fam = members(n, family, drc)?;
    let counts = (family == Family::Dim2).then(|| dim2_count_rows(n, &fam));
    let members = fam
        .iter()
        .map(|m| MemberRow {
            label: m.label.to_string(),
            family: m.label.family().to_string(),
            indices: m.label.indices(),
            descriptor: m.algebra.to_string(),
            dim: m.algebra.dim(),
            nil_dim: m.algebra.nil_dim(),
        })
        .collect();
    Ok(EnumerateReport {
        n,
        family,
        members,
        counts,
    })
}

impl Report for EnumerateReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["label", "family", "indices", "descriptor", "dim", "nilDim"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.members
            .iter()
            .map(|m| {
                vec![
                    m.label.clone(),
                    m.family.clone(),
                    join(&m.indices),
                    m.descriptor.clone(),
                    m.dim.to_string(),
                    m.nil_dim.to_string(),
                ]
            })
            .collect()
    }

    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .members
            .iter()
            .map(|m| {
                vec![
                    m.label.clone(),
                    m.descriptor.clone(),
                    m.dim.to_string(),
                    m.nil_dim.to_string(),
                ]
            })
            .collect();
        let mut out = table(&["label", "descriptor", "dim", "nilDim"], &rows);
        out += &format!("{} members\n", self.members.len());
        if let Some(counts) = &self.counts {
            let rows: Vec<Vec<String>> = counts
                .iter()
                .map(|c| {
                    let flag = if c.matches { "" } else { "MISMATCH" };
                    vec![
                        c.class.clone(),
                        c.exhaustive.to_string(),
                        c.formula.to_string(),
                        flag.into(),
                    ]
                })
                .collect();
            out += "\n";
            out += &table(&["class", "exhaustive", "formula", ""], &rows);
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsReport {
    pub descriptor: String,
    #[serde(flatten)]
    pub signature: InvariantSignature,
}

pub fn invariants(descriptor: &str, seed: u64) -> anyhow::Result<InvariantsReport> {
    let a = parse(descriptor)?;
    let signature = invariants::signature(&a, seed)?;
    Ok(InvariantsReport {
        descriptor: a.to_string(),
        signature,
    })
}

fn record_cell(r: &CartanRecord) -> String {
    let eig: Vec<String> = r.eigen_multiset.iter().map(i64::to_string).collect();
    format!(
        "{{{}}}/{}/{}/{}/{}/{}",
        eig.join(" "),
        r.adj_col_dim,
        r.adj_row_dim,
        r.adj_max_rank,
        r.span_col_dim,
        r.span_row_dim
    )
}

impl InvariantsReport {
    fn fields(&self) -> Vec<(&'static str, String)> {
        let s = &self.signature;
        let records: Vec<String> = s.cartan_signature.iter().map(record_cell).collect();
        vec![
            ("descriptor", self.descriptor.clone()),
            ("dim", s.dim.to_string()),
            ("nilDim", s.nil_dim.to_string()),
            ("derivedDims", join(&s.derived_dims)),
            ("colActionSeq", join(&s.col_action_seq)),
            ("rowActionSeq", join(&s.row_action_seq)),
            ("maxRank", s.max_rank.to_string()),
            ("minRank", s.min_rank.to_string()),
            ("cartanSignature", records.join(";")),
            ("lastRowCartanFlag", s.last_row_cartan_flag.to_string()),
        ]
    }
}

impl Report for InvariantsReport {
    fn csv_header(&self) -> Vec<&'static str> {
        self.fields().into_iter().map(|(k, _)| k).collect()
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        vec![self.fields().into_iter().map(|(_, v)| v).collect()]
    }

    fn table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .fields()
            .into_iter()
            .map(|(k, v)| {
                let v = if k == "descriptor" {
                    v
                } else {
                    v.replace(';', " ")
                };
                vec![k.to_string(), v]
            })
            .collect();
        table(&["field", "value"], &rows)
    }
}

#[derive(Debug, Serialize)]
pub struct DecideReport {
    pub a: String,
    pub b: String,
    pub summary: String,
    #[serde(flatten)]
    pub verdict: ConjugacyVerdict,
}

pub fn decide(a: &str, b: &str, seed: u64) -> anyhow::Result<DecideReport> {
    let (x, y) = (parse(a)?, parse(b)?);
    ensure!(
        x.n() == y.n(),
        "descriptors have different sizes: n={} and n={}",
        x.n(),
        y.n()
    );
    let verdict = conjugacy::decide(&x, &y, seed)?;
    Ok(DecideReport {
        a: x.to_string(),
        b: y.to_string(),
        summary: verdict.to_string(),
        verdict,
    })
}

impl Report for DecideReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["a", "b", "verdict", "sigma", "invariant"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let (verdict, sigma, invariant) = match &self.verdict {
            ConjugacyVerdict::Conjugate { sigma } => {
                ("conjugate", join(&sigma.images()), String::new())
            }
            ConjugacyVerdict::Distinct { invariant } => {
                ("distinct", String::new(), invariant.to_string())
            }
            ConjugacyVerdict::Unresolved => ("unresolved", String::new(), String::new()),
        };
        vec![vec![
            self.a.clone(),
            self.b.clone(),
            verdict.into(),
            sigma,
            invariant,
        ]]
    }

    fn table(&self) -> String {
        format!("a: {}\nb: {}\n{}\n", self.a, self.b, self.summary)
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessOut {
    pub a: String,
    pub b: String,
    pub sigma: Permutation,
}

#[derive(Debug, Serialize)]
pub struct SeparatorOut {
    pub a: String,
    pub b: String,
    pub invariant: Invariant,
}

/// A partition keyed by descriptors, sorted canonically.
#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub classes: Vec<Vec<String>>,
    pub witnesses: Vec<WitnessOut>,
    pub separators: Vec<SeparatorOut>,
    pub unresolved: Vec<[String; 2]>,
    #[serde(skip)]
    pub labels: BTreeMap<String, String>,
}

impl ClassifyReport {
    pub fn build(desc: &[String], labels: BTreeMap<String, String>, p: &ClassPartition) -> Self {
        let mut classes: Vec<Vec<String>> = p
            .classes
            .iter()
            .map(|c| {
                let mut v: Vec<String> = c.iter().map(|&x| desc[x].clone()).collect();
                v.sort();
                v
            })
            .collect();
        classes.sort();
        let mut witnesses: Vec<WitnessOut> = p
            .witnesses
            .iter()
            .map(|w| {
                let (a, b) = (desc[w.a].clone(), desc[w.b].clone());
                if a <= b {
                    WitnessOut {
                        a,
                        b,
                        sigma: w.sigma.clone(),
                    }
                } else {
                    WitnessOut {
                        a: b,
                        b: a,
                        sigma: w.sigma.inverse(),
                    }
                }
            })
            .collect();
        witnesses.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
        let ordered = |a: usize, b: usize| {
            let (a, b) = (desc[a].clone(), desc[b].clone());
            if a <= b {
                (a, b)
            } else {
                (b, a)
            }
        };
        let mut separators: Vec<SeparatorOut> = p
            .separators
            .iter()
            .map(|s| {
                let (a, b) = ordered(s.a, s.b);
                SeparatorOut {
                    a,
                    b,
                    invariant: s.invariant,
                }
            })
            .collect();
        separators.sort_by(|x, y| (&x.a, &x.b).cmp(&(&y.a, &y.b)));
        let mut unresolved: Vec<[String; 2]> = p
            .unresolved
            .iter()
            .map(|&(a, b)| ordered(a, b).into())
            .collect();
        unresolved.sort();
        Self {
            classes,
            witnesses,
            separators,
            unresolved,
            labels,
        }
    }
}

pub fn classify_family(
    n: usize,
    family: Family,
    drc: DrcSelection,
    seed: u64,
) -> anyhow::Result<ClassifyReport> {
    let fam = members(n, family, drc)?;
    let algebras: Vec<RegularSubalgebra> = fam.iter().map(|m| m.algebra.clone()).collect();
    let desc: Vec<String> = algebras.iter().map(ToString::to_string).collect();
    let labels = fam
        .iter()
        .zip(&desc)
        .map(|(m, d)| (d.clone(), m.label.to_string()))
        .collect();
    let p = conjugacy::classify(&algebras, seed)?;
    Ok(ClassifyReport::build(&desc, labels, &p))
}

pub fn classify_descriptors(descriptors: &[String], seed: u64) -> anyhow::Result<ClassifyReport> {
    if descriptors.is_empty() {
        bail!("nothing to classify: give --n and --family, or descriptors");
    }
    let algebras = descriptors
        .iter()
        .map(|d| parse(d))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let desc: Vec<String> = algebras.iter().map(ToString::to_string).collect();
    let p = conjugacy::classify(&algebras, seed)?;
    Ok(ClassifyReport::build(&desc, BTreeMap::new(), &p))
}

impl Report for ClassifyReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["record", "class", "a", "b", "detail"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for (k, c) in self.classes.iter().enumerate() {
            for d in c {
                let label = self.labels.get(d).cloned().unwrap_or_default();
                rows.push(vec![
                    "member".into(),
                    (k + 1).to_string(),
                    d.clone(),
                    String::new(),
                    label,
                ]);
            }
        }
        for w in &self.witnesses {
            rows.push(vec![
                "witness".into(),
                String::new(),
                w.a.clone(),
                w.b.clone(),
                join(&w.sigma.images()),
            ]);
        }
        for s in &self.separators {
            rows.push(vec![
                "separator".into(),
                String::new(),
                s.a.clone(),
                s.b.clone(),
                s.invariant.to_string(),
            ]);
        }
        for [a, b] in &self.unresolved {
            rows.push(vec![
                "unresolved".into(),
                String::new(),
                a.clone(),
                b.clone(),
                String::new(),
            ]);
        }
        rows
    }

    fn table(&self) -> String {
        let mut rows = Vec::new();
        for (k, c) in self.classes.iter().enumerate() {
            for d in c {
                let label = self.labels.get(d).cloned().unwrap_or_default();
                rows.push(vec![(k + 1).to_string(), label, d.clone()]);
            }
        }
        let mut out = table(&["class", "label", "descriptor"], &rows);
        out += &format!(
            "{} classes, {} witnesses, {} separated pairs, {} unresolved pairs\n",
            self.classes.len(),
            self.witnesses.len(),
            self.separators.len(),
            self.unresolved.len()
        );
        for [a, b] in &self.unresolved {
            out += &format!("unresolved: {a} | {b}\n");
        }
        out
    }
}
