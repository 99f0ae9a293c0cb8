//! Reports for each command and the end-to-end pipeline.
//!
//! Every report is a serializable struct; the text form is rendered from that
//! struct, so the JSON mirror and the human-readable output cannot disagree.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::ce::{subdga_from_characters, CharacterData, Dga, PdTypeCheck, SubDgaCheck};
use crate::decomp::{
    kernel_containment_check, split_complex_weighted, ContainmentCheck, Decomposition, Strategy, WeightSpaces,
};
use crate::error::{GermError, Result};
use crate::io::{load_algebra, AlgebraFile, SubDgaFile};
use crate::jordan::{ad_s_map, nilshadow, SolvableInput};
use crate::kuranishi::{
    default_cap, gauge_identity_check, kuranishi_series, obstruction_system, verify_degree_bound, DegreeBound,
    DegreeCount, GaugeCheck, KuranishiSeries, ObstructionSystem,
};
use crate::linalg::{unit_vec, Vector};
use crate::liealg::{presets, GradingCheck, Grading, LieAlgebra};
use crate::poly::{Monomial, MultiPoly, TermRecord};

pub const SCHEMA_VERSION: u32 = 1;

fn nums(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// `sl2`, `gl:N`, `h3`, `abelian:N`, or a path to an algebra file.
pub fn resolve_target(name: &str) -> Result<LieAlgebra> {
    let bad = |m: String| GermError::parse("--target", m);
    let size = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0).ok_or_else(|| bad(format!("`{}` is not a positive size", s)));
    match name {
        "sl2" => Ok(presets::sl2()),
        "h3" => Ok(presets::heisenberg(1)),
        _ => {
            if let Some(n) = name.strip_prefix("gl:") {
                Ok(presets::gl(size(n)?))
            } else if let Some(n) = name.strip_prefix("abelian:") {
                Ok(presets::abelian(size(n)?))
            } else {
                Ok(load_algebra(Path::new(name))?.algebra)
            }
        }
    }
}

/// Which part of `∧u*` the germ is computed on.
#[derive(Clone, Debug)]
pub enum Selection {
    Full,
    Characters(CharacterData),
    Monomials(SubDgaFile),
}

impl Selection {
    fn kind(&self) -> &'static str {
        match self {
            Selection::Full => "full",
            Selection::Characters(_) => "characters",
            Selection::Monomials(_) => "monomials",
        }
    }

    /// The selected complex, or the full one.
    pub fn base(&self, full: &Dga) -> Result<Dga> {
        match self {
            Selection::Full => Ok(full.clone()),
            Selection::Characters(c) => subdga_from_characters(full, c)?.to_dga(),
            Selection::Monomials(f) => {
                let sub = f.build(full)?;
                if let SubDgaCheck::Violation(v) = sub.verify() {
                    return Err(GermError::Precondition(format!("not a sub-DGA: {}", v)));
                }
                sub.to_dga()
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct GermOptions {
    pub strategy: Strategy,
    pub cap: Option<usize>,
    pub selection: Selection,
}

impl Default for GermOptions {
    fn default() -> Self {
        GermOptions { strategy: Strategy::Metric, cap: None, selection: Selection::Full }
    }
}

/// A grading ready for use: the algebra in a basis where the grading is
/// aligned, plus the weights.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub algebra: LieAlgebra,
    pub weights: Option<Vec<usize>>,
    pub rebased: bool,
    pub source: String,
}

/// Verifies a supplied grading or infers one, rewriting the algebra in the
/// grading's adapted basis when the layers are not spanned by basis vectors.
pub fn prepare_grading(alg: &LieAlgebra, supplied: Option<&Grading>) -> Result<GradedAlgebra> {
    let grading = match supplied {
        Some(g) => {
            if let GradingCheck::Violation(v) = alg.verify_natural_grading(g)? {
                return Err(GermError::Precondition(format!("the supplied grading is not natural: {}", v)));
            }
            Some((g.clone(), "file"))
        }
        None if alg.nilpotency_step().is_some() => alg.infer_grading_basis_aligned().map(|g| (g, "inferred")),
        None => None,
    };
    let Some((g, source)) = grading else {
        return Ok(GradedAlgebra { algebra: alg.clone(), weights: None, rebased: false, source: "none".into() });
    };
    if let Some(w) = g.aligned_weights() {
        return Ok(GradedAlgebra { algebra: alg.clone(), weights: Some(w), rebased: false, source: source.into() });
    }
    let basis = g.adapted_basis();
    let labels = basis
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            if nz.len() == 1 && v[nz[0]] == crate::Scalar::from(1) {
                alg.labels()[nz[0]].clone()
            } else {
                format!("w{}", k + 1)
            }
        })
        .collect();
    let rebased = alg.change_basis(&basis, labels)?;
    Ok(GradedAlgebra { algebra: rebased, weights: Some(g.adapted_weights()), rebased: true, source: source.into() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableEntry {
    pub name: String,
    pub form: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub monomial: String,
    pub exponents: Vec<u32>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceEntry {
    pub degree: usize,
    pub terms: Vec<SeriesTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionEntry {
    pub label: String,
    pub polynomial: String,
    pub degree: Option<usize>,
    pub terms: Vec<TermRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub nu: usize,
    pub bound: usize,
    pub max_degree: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    /// `pass`, `fail` or `skipped`
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckEntry {
    fn new(name: &str, status: &str, detail: Option<String>) -> Self {
        CheckEntry { name: name.into(), status: status.into(), detail }
    }
}

fn checks_text(checks: &[CheckEntry]) -> String {
    checks
        .iter()
        .map(|c| match &c.detail {
            Some(d) => format!("{} {} ({})", c.name, c.status, d),
            None => format!("{} {}", c.name, c.status),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermReport {
    pub schema_version: u32,
    pub kind: String,
    pub algebra: AlgebraFile,
    pub target: AlgebraFile,
    pub selection: Option<SubDgaFile>,
    pub strategy: Strategy,
    pub cap: usize,
    pub weights: Option<Vec<usize>>,
    pub nu: Option<usize>,
    pub betti: Vec<usize>,
    pub variables: Vec<VariableEntry>,
    pub series: Vec<SliceEntry>,
    pub obstructions: Vec<ObstructionEntry>,
    pub max_degree: usize,
    pub terminated: bool,
    pub validity: String,
    pub smooth: bool,
    pub degree_structure: Vec<DegreeCount>,
    pub bound: Option<BoundVerdict>,
    pub checks: Vec<CheckEntry>,
}

/// All artifacts of one germ computation.
#[derive(Clone, Debug)]
pub struct Germ {
    pub report: GermReport,
    pub decomposition: Decomposition,
    pub series: KuranishiSeries,
    pub system: ObstructionSystem,
}

fn format_monomial(vars: &[String], m: &Monomial) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { vars[i].clone() } else { format!("{}^{}", vars[i], e) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Runs decomposition, series and obstruction system on `alg` (already in
/// a basis aligned with `weights`).
pub fn compute_germ(alg: &LieAlgebra, weights: Option<Vec<usize>>, target: &LieAlgebra, opts: &GermOptions) -> Result<Germ> {
    let full = Dga::ce_complex(alg)?;
    let base = opts.selection.base(&full)?;
    let dec = split_complex_weighted(&base, opts.strategy, weights.clone())?;
    let cap = opts.cap.unwrap_or_else(|| default_cap(alg));
    let series = kuranishi_series(&dec, target, cap)?;
    let system = obstruction_system(&series, &dec)?;

    let mut checks = Vec::new();
    checks.push(match series.recursion_check(&dec) {
        Ok(()) => CheckEntry::new("recursion", "pass", None),
        Err(e) => CheckEntry::new("recursion", "fail", Some(e.to_string())),
    });
    checks.push(if series.terminated {
        match gauge_identity_check(&series, &dec)? {
            GaugeCheck::Pass => CheckEntry::new("gauge", "pass", None),
            GaugeCheck::Fail(d) => CheckEntry::new("gauge", "fail", Some(d)),
        }
    } else {
        CheckEntry::new("gauge", "skipped", Some("series truncated".into()))
    });
    let mut bound = None;
    if let Some(w) = &weights {
        let weight_ok = dec.check_weight_compatibility().and_then(|_| series.weight_check(w));
        checks.push(match weight_ok {
            Ok(()) => CheckEntry::new("weights", "pass", None),
            Err(e) => CheckEntry::new("weights", "fail", Some(e.to_string())),
        });
        if let (Some(nu), true) = (alg.nilpotency_step(), series.terminated) {
            let pass = verify_degree_bound(&system, nu) == DegreeBound::Pass;
            bound = Some(BoundVerdict { nu, bound: nu + 1, max_degree: system.max_degree, pass });
            checks.push(CheckEntry::new("degree bound", if pass { "pass" } else { "fail" }, None));
        }
    }

    let vars: &Arc<[String]> = &series.variables;
    let variables = series
        .variable_table
        .iter()
        .zip(vars.iter())
        .map(|((form, target), name)| VariableEntry { name: name.clone(), form: form.clone(), target: target.clone() })
        .collect();
    let slices = series
        .slices
        .iter()
        .enumerate()
        .map(|(r, s)| SliceEntry {
            degree: r + 1,
            terms: s
                .terms()
                .rev()
                .map(|(m, v)| SeriesTerm {
                    monomial: format_monomial(vars, m),
                    exponents: m.0.clone(),
                    value: series.dgla.format(1, v),
                })
                .collect(),
        })
        .collect();
    let obstructions = system
        .labels
        .iter()
        .zip(&system.polynomials)
        .map(|(label, p)| ObstructionEntry {
            label: label.clone(),
            polynomial: p.to_string(),
            degree: p.total_degree(),
            terms: p.to_records(),
        })
        .collect();
    let selection = match opts.selection {
        Selection::Full => None,
        _ => Some(SubDgaFile {
            monomials: (0..=base.max_degree())
                .flat_map(|p| base.basis(p).iter().copied())
                .map(|m| crate::ce::mask_indices(m).into_iter().map(|i| alg.labels()[i].clone()).collect())
                .collect(),
        }),
    };
    let report = GermReport {
        schema_version: SCHEMA_VERSION,
        kind: "germ".into(),
        algebra: AlgebraFile::from_algebra(alg),
        target: AlgebraFile::from_algebra(target),
        selection,
        strategy: opts.strategy,
        cap,
        weights,
        nu: system.nu,
        betti: dec.betti_numbers(),
        variables,
        series: slices,
        obstructions,
        max_degree: system.max_degree,
        terminated: system.terminated,
        validity: system.validity(),
        smooth: system.is_smooth(),
        degree_structure: system.degree_structure.clone(),
        bound,
        checks,
    };
    Ok(Germ { report, decomposition: dec, series, system })
}

impl GermReport {
    pub fn failed_checks(&self) -> Vec<&CheckEntry> {
        self.checks.iter().filter(|c| c.status == "fail").collect()
    }

    pub fn from_json(text: &str, source: &str) -> Result<Self> {
        let r: GermReport =
            serde_json::from_str(text).map_err(|e| GermError::parse(format!("{}:{}:{}", source, e.line(), e.column()), e.to_string()))?;
        if r.kind != "germ" {
            return Err(GermError::parse(source, format!("expected a germ file, found kind `{}`", r.kind)));
        }
        if r.schema_version != SCHEMA_VERSION {
            return Err(GermError::parse(source, format!("unsupported schema_version {}", r.schema_version)));
        }
        Ok(r)
    }

    /// Recomputes the germ described by this file and checks that the stored
    /// polynomials match.
    pub fn rebuild(&self) -> Result<Germ> {
        let alg = self.algebra.resolve()?.algebra;
        let target = self.target.resolve()?.algebra;
        let selection = match &self.selection {
            None => Selection::Full,
            Some(f) => Selection::Monomials(f.clone()),
        };
        let opts = GermOptions { strategy: self.strategy, cap: Some(self.cap), selection };
        let germ = compute_germ(&alg, self.weights.clone(), &target, &opts)?;
        let vars = germ.series.variables.clone();
        if self.obstructions.len() != germ.system.polynomials.len() {
            return Err(GermError::Invariant("germ file lists a different number of obstructions".into()));
        }
        for (stored, p) in self.obstructions.iter().zip(&germ.system.polynomials) {
            if MultiPoly::from_records(vars.clone(), &stored.terms)? != *p || stored.polynomial != p.to_string() {
                return Err(GermError::Invariant(format!("germ file obstruction `{}` does not match recomputation", stored.label)));
            }
        }
        Ok(germ)
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let base = if self.selection.is_some() { "sub-DGA of ∧" } else { "∧" };
        let _ = writeln!(s, "germ at the origin of MC({}{}* ⊗ {})", base, self.algebra.name, self.target.name);
        let _ = writeln!(s, "strategy: {}, cap: {}", self.strategy, self.cap);
        if let Some(w) = &self.weights {
            let _ = writeln!(s, "grading weights: {}", nums(w));
        }
        if let Some(nu) = self.nu {
            let _ = writeln!(s, "nilpotency step: {}", nu);
        }
        let _ = writeln!(s, "Betti numbers: {}", nums(&self.betti));
        let _ = writeln!(s, "variables ({}):", self.variables.len());
        for v in &self.variables {
            let _ = writeln!(s, "  {} = {} ⊗ {}", v.name, v.form, v.target);
        }
        let _ = writeln!(s, "series:");
        for sl in &self.series {
            if sl.terms.is_empty() {
                let _ = writeln!(s, "  φ_{} = 0", sl.degree);
                continue;
            }
            let _ = writeln!(s, "  φ_{}:", sl.degree);
            for t in &sl.terms {
                let _ = writeln!(s, "    {}: {}", t.monomial, t.value);
            }
        }
        let nonzero = self.obstructions.iter().filter(|o| o.degree.is_some()).count();
        let _ = writeln!(s, "obstructions ({} coordinates, {} nonzero, {}):", self.obstructions.len(), nonzero, self.validity);
        for o in self.obstructions.iter().filter(|o| o.degree.is_some()) {
            let _ = writeln!(s, "  [{}] {}", o.label, o.polynomial);
        }
        let _ = writeln!(s, "max degree: {}", self.max_degree);
        let _ = writeln!(s, "terminated: {}", yes(self.terminated));
        if !self.degree_structure.is_empty() {
            let parts: Vec<String> =
                self.degree_structure.iter().map(|d| format!("degree {}: {}", d.degree, d.polynomials)).collect();
            let _ = writeln!(s, "homogeneous parts: {}", parts.join(", "));
        }
        if let Some(b) = &self.bound {
            let _ = writeln!(s, "degree bound: {} ≤ {} {}", b.max_degree, b.bound, if b.pass { "pass" } else { "FAIL" });
        }
        let _ = writeln!(s, "checks: {}", checks_text(&self.checks));
        if self.smooth {
            let _ = writeln!(s, "germ is smooth at origin");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraStage {
    pub name: String,
    pub dim: usize,
    pub jacobi: String,
    pub lcs_dims: Vec<usize>,
    pub nilpotent_step: Option<usize>,
    pub unimodular: bool,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilshadowStage {
    pub name: String,
    pub brackets: Vec<String>,
    pub nilpotent_step: usize,
    pub equals_input: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingStage {
    pub source: String,
    pub weights: Option<Vec<usize>>,
    pub rebased: bool,
    pub kernel_containment: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseStage {
    pub kind: String,
    pub monomials: usize,
    pub dims: Vec<usize>,
    pub pd_type: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd_detail: Option<String>,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GermStage {
    pub target: String,
    pub strategy: Strategy,
    pub cap: usize,
    pub variables: usize,
    pub polynomials: usize,
    pub nonzero: usize,
    pub max_degree: usize,
    pub series_length: usize,
    pub terminated: bool,
    pub validity: String,
    pub smooth: bool,
    pub degree_structure: Vec<DegreeCount>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub schema_version: u32,
    pub kind: String,
    pub input: String,
    pub input_digest: String,
    pub algebra: AlgebraStage,
    pub nilshadow: NilshadowStage,
    pub grading: GradingStage,
    pub base: BaseStage,
    pub germ: GermStage,
    pub bound: Option<BoundVerdict>,
    pub checks: Vec<CheckEntry>,
}

#[derive(Clone, Debug)]
pub struct PipelineOptions {
    pub germ: GermOptions,
    pub target: LieAlgebra,
}

/// Nilpotent inputs are their own nilshadow; solvable ones need their
/// `nilradical` and `complement`.
fn solvable_input(input: &crate::io::AlgebraInput) -> Result<SolvableInput> {
    match (&input.nilradical, &input.complement) {
        (Some(n), Some(v)) => SolvableInput::new(input.algebra.clone(), n.clone(), v.clone()),
        _ if input.algebra.nilpotency_step().is_some() => SolvableInput::nilpotent(input.algebra.clone()),
        _ => Err(GermError::Precondition(
            "a non-nilpotent input needs `nilradical` and `complement` so that g = V ⊕ n".into(),
        )),
    }
}

pub fn run_pipeline(text: &str, source: &str, opts: &PipelineOptions) -> Result<PipelineReport> {
    let input = AlgebraFile::from_json(text, source)?.resolve()?;
    let g = &input.algebra;
    let solv = solvable_input(&input)?;
    let algebra = AlgebraStage {
        name: g.name().to_string(),
        dim: g.dim(),
        jacobi: "pass".into(),
        lcs_dims: g.lower_central_series().dims(),
        nilpotent_step: g.nilpotency_step(),
        unimodular: g.is_unimodular(),
        split: input.nilradical.is_some(),
    };

    let u = nilshadow(&solv)?;
    let nu = u.nilpotency_step().ok_or_else(|| GermError::Invariant("nilshadow is not nilpotent".into()))?;
    let nil_stage = NilshadowStage {
        name: u.name().to_string(),
        brackets: u.bracket_summary(),
        nilpotent_step: nu,
        equals_input: u.clone().with_name(g.name()) == *g,
    };

    // a grading in the file describes g, so it only applies when g is its own nilshadow
    let supplied = if nil_stage.equals_input { input.grading.as_ref() } else { None };
    let graded = prepare_grading(&u, supplied)?;
    let full = Dga::ce_complex(&graded.algebra)?;
    let kernel_containment = match &graded.weights {
        Some(w) => {
            let layers = weights_to_grading(w);
            Some(match kernel_containment_check(&full, &layers)? {
                ContainmentCheck::Pass => "pass".to_string(),
                ContainmentCheck::Witness { weight, cocycle } => {
                    format!("witness {} of weight {}", full.format_cochain(2, &cocycle), weight)
                }
            })
        }
        None => None,
    };
    let grading = GradingStage {
        source: graded.source.clone(),
        weights: graded.weights.clone(),
        rebased: graded.rebased,
        kernel_containment,
    };

    let base_dga = opts.germ.selection.base(&full)?;
    let pd = base_dga.pd_type_check();
    let germ = compute_germ(&graded.algebra, graded.weights.clone(), &opts.target, &opts.germ)?;
    let base = BaseStage {
        kind: opts.germ.selection.kind().into(),
        monomials: base_dga.dims().iter().sum(),
        dims: base_dga.dims(),
        pd_type: pd.passed(),
        pd_detail: match pd {
            PdTypeCheck::Pass => None,
            PdTypeCheck::Violation(v) => Some(v),
        },
        betti: germ.report.betti.clone(),
    };
    let r = &germ.report;
    let germ_stage = GermStage {
        target: opts.target.name().to_string(),
        strategy: r.strategy,
        cap: r.cap,
        variables: r.variables.len(),
        polynomials: r.obstructions.len(),
        nonzero: r.obstructions.iter().filter(|o| o.degree.is_some()).count(),
        max_degree: r.max_degree,
        series_length: germ.series.length(),
        terminated: r.terminated,
        validity: r.validity.clone(),
        smooth: r.smooth,
        degree_structure: r.degree_structure.clone(),
    };
    let mut checks = r.checks.clone();
    if let Some(k) = &grading.kernel_containment {
        checks.push(CheckEntry::new("kernel containment", if k == "pass" { "pass" } else { "fail" }, None));
    }
    Ok(PipelineReport {
        schema_version: SCHEMA_VERSION,
        kind: "pipeline".into(),
        input: source.to_string(),
        input_digest: digest(text.as_bytes()),
        algebra,
        nilshadow: nil_stage,
        grading,
        base,
        germ: germ_stage,
        bound: r.bound.clone(),
        checks,
    })
}

/// Grading whose layers are spanned by basis vectors of the given weights.
pub fn weights_to_grading(weights: &[usize]) -> Grading {
    let n = weights.len();
    let top = weights.iter().copied().max().unwrap_or(0);
    Grading {
        layers: (1..=top)
            .map(|w| {
                let vs: Vec<Vector> = (0..n).filter(|&k| weights[k] == w).map(|k| unit_vec(n, k)).collect();
                crate::linalg::Subspace::span(n, &vs)
            })
            .collect(),
    }
}

impl PipelineReport {
    pub fn failed_checks(&self) -> Vec<&CheckEntry> {
        self.checks.iter().filter(|c| c.status == "fail").collect()
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let a = &self.algebra;
        let _ = writeln!(s, "pipeline report for {} (sha256 {})", self.input, self.input_digest);
        let _ = writeln!(s, "algebra {}: dim {}, Jacobi {}", a.name, a.dim, a.jacobi);
        let _ = writeln!(s, "  lower central series dims: {}", nums(&a.lcs_dims));
        match a.nilpotent_step {
            Some(k) => {
                let _ = writeln!(s, "  nilpotent of step {}", k);
            }
            None => {
                let _ = writeln!(s, "  not nilpotent");
            }
        }
        let _ = writeln!(s, "  unimodular: {}", yes(a.unimodular));
        let _ = writeln!(s, "  split as V ⊕ n: {}", yes(a.split));
        let n = &self.nilshadow;
        let _ = writeln!(s, "nilshadow {}: step {}, equals input: {}", n.name, n.nilpotent_step, yes(n.equals_input));
        if n.brackets.is_empty() {
            let _ = writeln!(s, "  abelian");
        }
        for b in &n.brackets {
            let _ = writeln!(s, "  {}", b);
        }
        let g = &self.grading;
        match &g.weights {
            Some(w) => {
                let _ = writeln!(s, "grading ({}): weights {}{}", g.source, nums(w), if g.rebased { ", rebased" } else { "" });
            }
            None => {
                let _ = writeln!(s, "grading: none");
            }
        }
        if let Some(k) = &g.kernel_containment {
            let _ = writeln!(s, "  degree-2 cocycles within weight ν+1: {}", k);
        }
        let b = &self.base;
        let _ = writeln!(s, "base complex ({}): {} monomials, dims {}", b.kind, b.monomials, nums(&b.dims));
        let _ = writeln!(s, "  PD type: {}{}", yes(b.pd_type), b.pd_detail.as_ref().map(|d| format!(" ({})", d)).unwrap_or_default());
        let _ = writeln!(s, "  Betti numbers: {}", nums(&b.betti));
        let m = &self.germ;
        let _ = writeln!(s, "germ (target {}, strategy {}, cap {}):", m.target, m.strategy, m.cap);
        let _ = writeln!(s, "  variables: {}", m.variables);
        let _ = writeln!(s, "  obstruction polynomials: {} ({} nonzero)", m.polynomials, m.nonzero);
        let _ = writeln!(s, "  series length: {}", m.series_length);
        let _ = writeln!(s, "  max degree: {}", m.max_degree);
        let _ = writeln!(s, "  terminated: {} ({})", yes(m.terminated), m.validity);
        for d in &m.degree_structure {
            let _ = writeln!(s, "  degree {} part in {} polynomials", d.degree, d.polynomials);
        }
        if m.smooth {
            let _ = writeln!(s, "  germ is smooth at origin");
        }
        match &self.bound {
            Some(v) => {
                let _ = writeln!(s, "degree bound: {} ≤ {} {}", v.max_degree, v.bound, if v.pass { "pass" } else { "FAIL" });
            }
            None => {
                let _ = writeln!(s, "degree bound: not applicable");
            }
        }
        let _ = writeln!(s, "checks: {}", checks_text(&self.checks));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema_version: u32,
    pub kind: String,
    pub name: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub brackets: Vec<String>,
    pub jacobi: String,
    pub lcs_dims: Vec<usize>,
    pub nilpotent_step: Option<usize>,
    pub unimodular: bool,
    pub grading: Option<Vec<usize>>,
    pub grading_source: String,
    pub pd_type: bool,
    pub betti: Vec<usize>,
}

pub fn check_report(input: &crate::io::AlgebraInput) -> Result<CheckReport> {
    let alg = &input.algebra;
    let graded = prepare_grading(alg, input.grading.as_ref())?;
    let dga = Dga::ce_complex(alg)?;
    Ok(CheckReport {
        schema_version: SCHEMA_VERSION,
        kind: "check".into(),
        name: alg.name().to_string(),
        dim: alg.dim(),
        basis: alg.labels().to_vec(),
        brackets: alg.bracket_summary(),
        jacobi: "pass".into(),
        lcs_dims: alg.lower_central_series().dims(),
        nilpotent_step: alg.nilpotency_step(),
        unimodular: alg.is_unimodular(),
        grading: graded.weights,
        grading_source: if graded.rebased { "file, weights in the adapted basis".into() } else { graded.source },
        pd_type: dga.pd_type_check().passed(),
        betti: dga.betti_numbers(),
    })
}

impl CheckReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "algebra {}: dim {}, basis {}", self.name, self.dim, self.basis.join(" "));
        for b in &self.brackets {
            let _ = writeln!(s, "  {}", b);
        }
        let _ = writeln!(s, "Jacobi: {}", self.jacobi);
        let _ = writeln!(s, "lower central series dims: {}", nums(&self.lcs_dims));
        match self.nilpotent_step {
            Some(k) => {
                let _ = writeln!(s, "nilpotent of step {}", k);
            }
            None => {
                let _ = writeln!(s, "not nilpotent");
            }
        }
        let _ = writeln!(s, "unimodular: {}", yes(self.unimodular));
        match &self.grading {
            Some(w) => {
                let _ = writeln!(s, "natural grading ({}): weights {}", self.grading_source, nums(w));
            }
            None => {
                let _ = writeln!(s, "natural grading: none found");
            }
        }
        let _ = writeln!(s, "PD type: {}", yes(self.pd_type));
        let _ = writeln!(s, "Betti numbers: {}", nums(&self.betti));
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilshadowReport {
    pub schema_version: u32,
    pub kind: String,
    pub input: String,
    pub semisimple_part: Vec<String>,
    pub brackets: Vec<String>,
    pub nilpotent_step: usize,
    pub algebra: AlgebraFile,
}

pub fn nilshadow_report(input: &crate::io::AlgebraInput) -> Result<NilshadowReport> {
    let solv = solvable_input(input)?;
    let map = ad_s_map(&solv)?;
    let alg = &input.algebra;
    let mut semisimple_part = Vec::new();
    for (i, m) in map.matrices.iter().enumerate() {
        let images: Vec<String> = (0..alg.dim())
            .filter(|&j| !m.col(j).iter().all(Zero::is_zero))
            .map(|j| format!("{} ↦ {}", alg.labels()[j], alg.format_vector(&m.col(j))))
            .collect();
        if !images.is_empty() {
            semisimple_part.push(format!("ad_s({}): {}", alg.labels()[i], images.join(", ")));
        }
    }
    let u = nilshadow(&solv)?;
    Ok(NilshadowReport {
        schema_version: SCHEMA_VERSION,
        kind: "nilshadow".into(),
        input: alg.name().to_string(),
        semisimple_part,
        brackets: u.bracket_summary(),
        nilpotent_step: u.nilpotency_step().ok_or_else(|| GermError::Invariant("nilshadow is not nilpotent".into()))?,
        algebra: AlgebraFile::from_algebra(&u),
    })
}

impl NilshadowReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "nilshadow of {}", self.input);
        if self.semisimple_part.is_empty() {
            let _ = writeln!(s, "ad_s = 0");
        }
        for l in &self.semisimple_part {
            let _ = writeln!(s, "{}", l);
        }
        let _ = writeln!(s, "brackets:");
        if self.brackets.is_empty() {
            let _ = writeln!(s, "  none (abelian)");
        }
        for b in &self.brackets {
            let _ = writeln!(s, "  {}", b);
        }
        let _ = writeln!(s, "nilpotent of step {}", self.nilpotent_step);
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightRow {
    pub weight: usize,
    pub monomials: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub schema_version: u32,
    pub kind: String,
    pub algebra: String,
    pub strategy: Strategy,
    pub dims: Vec<usize>,
    pub betti: Vec<usize>,
    pub harmonic: Vec<Vec<String>>,
    pub weights: Option<Vec<usize>>,
    pub weight_table: Vec<WeightRow>,
    pub kernel_containment: Option<String>,
}

pub fn decompose_report(input: &crate::io::AlgebraInput, strategy: Strategy, selection: &Selection) -> Result<DecomposeReport> {
    let graded = prepare_grading(&input.algebra, input.grading.as_ref())?;
    let full = Dga::ce_complex(&graded.algebra)?;
    let dga = selection.base(&full)?;
    let dec = split_complex_weighted(&dga, strategy, graded.weights.clone())?;
    let harmonic =
        (0..=dga.max_degree()).map(|p| dec.harmonic_basis(p).iter().map(|v| dga.format_cochain(p, v)).collect()).collect();
    let (weight_table, kernel_containment) = match &graded.weights {
        Some(w) => {
            let ws = WeightSpaces::new(&dga, w.clone());
            let table = ws
                .degree2
                .iter()
                .map(|(k, ix)| WeightRow { weight: *k, monomials: ix.iter().map(|&i| dga.monomial_label(dga.basis(2)[i])).collect() })
                .collect();
            let kc = match kernel_containment_check(&full, &weights_to_grading(w))? {
                ContainmentCheck::Pass => "pass".to_string(),
                ContainmentCheck::Witness { weight, cocycle } => {
                    format!("witness {} of weight {}", full.format_cochain(2, &cocycle), weight)
                }
            };
            (table, Some(kc))
        }
        None => (Vec::new(), None),
    };
    Ok(DecomposeReport {
        schema_version: SCHEMA_VERSION,
        kind: "decompose".into(),
        algebra: graded.algebra.name().to_string(),
        strategy,
        dims: dga.dims(),
        betti: dec.betti_numbers(),
        harmonic,
        weights: graded.weights,
        weight_table,
        kernel_containment,
    })
}

impl DecomposeReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "decomposition of ∧{}* ({} strategy)", self.algebra, self.strategy);
        let _ = writeln!(s, "dims: {}", nums(&self.dims));
        let _ = writeln!(s, "Betti numbers: {}", nums(&self.betti));
        for (p, h) in self.harmonic.iter().enumerate() {
            let _ = writeln!(s, "  H^{}: {}", p, if h.is_empty() { "0".to_string() } else { h.join(", ") });
        }
        if let Some(w) = &self.weights {
            let _ = writeln!(s, "generator weights: {}", nums(w));
            for row in &self.weight_table {
                let _ = writeln!(s, "  W_{}: {}", row.weight, row.monomials.join(", "));
            }
        }
        if let Some(k) = &self.kernel_containment {
            let _ = writeln!(s, "degree-2 cocycles within weight ν+1: {}", k);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubDgaReport {
    pub schema_version: u32,
    pub kind: String,
    pub algebra: String,
    pub source: String,
    pub monomials: Vec<Vec<String>>,
    pub closed: String,
    pub dims: Vec<usize>,
    pub betti: Vec<usize>,
    pub pd_type: bool,
    pub selection: SubDgaFile,
}

pub fn subdga_report(input: &crate::io::AlgebraInput, selection: &Selection) -> Result<SubDgaReport> {
    let full = Dga::ce_complex(&input.algebra)?;
    let dga = selection.base(&full)?;
    let monomials =
        (0..=dga.max_degree()).map(|p| dga.basis(p).iter().map(|&m| dga.monomial_label(m)).collect()).collect();
    let selection_file = SubDgaFile {
        monomials: (0..=dga.max_degree())
            .flat_map(|p| dga.basis(p).iter().copied())
            .map(|m| crate::ce::mask_indices(m).into_iter().map(|i| input.algebra.labels()[i].clone()).collect())
            .collect(),
    };
    Ok(SubDgaReport {
        schema_version: SCHEMA_VERSION,
        kind: "subdga".into(),
        algebra: input.algebra.name().to_string(),
        source: selection.kind().into(),
        monomials,
        closed: "pass".into(),
        dims: dga.dims(),
        betti: dga.betti_numbers(),
        pd_type: dga.pd_type_check().passed(),
        selection: selection_file,
    })
}

impl SubDgaReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "sub-DGA of ∧{}* from {}", self.algebra, self.source);
        for (p, ms) in self.monomials.iter().enumerate() {
            let _ = writeln!(s, "  degree {}: {}", p, if ms.is_empty() { "-".to_string() } else { ms.join(", ") });
        }
        let _ = writeln!(s, "closed under d: {}", self.closed);
        let _ = writeln!(s, "dims: {}", nums(&self.dims));
        let _ = writeln!(s, "Betti numbers: {}", nums(&self.betti));
        let _ = writeln!(s, "PD type: {}", yes(self.pd_type));
        s
    }
}
