//! JSON file formats: algebras, sub-DGA selections and character data.
//!
//! Scalars are always strings (`"3"`, `"-1/2"`, `"1/2+3/4*i"`), so exact values
//! survive the round trip.

use std::path::Path;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::ce::{indices_mask, mask_indices, CharacterData, Dga, Mask, SubDga};
use crate::error::{GermError, Result};
use crate::linalg::{zero_vec, Subspace, Vector};
use crate::liealg::{Grading, LieAlgebra};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub coef: String,
    pub basis: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub result: Vec<Term>,
}

/// A basis label, or an explicit linear combination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Label(String),
    Combination(Vec<Term>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum Field {
    #[default]
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i)")]
    Gaussian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default)]
    pub field: Field,
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    /// Layers `a^(1), a^(2), …` of a natural grading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<Vec<Element>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilradical: Option<Vec<Element>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement: Option<Vec<Element>>,
}

/// Everything an algebra file describes, resolved against its basis.
#[derive(Clone, Debug)]
pub struct AlgebraInput {
    pub algebra: LieAlgebra,
    pub grading: Option<Grading>,
    pub nilradical: Option<Subspace>,
    pub complement: Option<Subspace>,
}

fn parse_err(location: impl Into<String>, message: impl Into<String>) -> GermError {
    GermError::parse(location, message)
}

fn json_err(source: &str, e: serde_json::Error) -> GermError {
    parse_err(format!("{}:{}:{}", source, e.line(), e.column()), e.to_string())
}

fn scalar_at(s: &str, location: &str, field: Field) -> Result<Scalar> {
    let c: Scalar = s.parse().map_err(|_| parse_err(location, format!("`{}` is not a scalar", s)))?;
    if field == Field::Rational && !c.is_real() {
        return Err(parse_err(location, format!("`{}` is not rational but the field is Q", s)));
    }
    Ok(c)
}

impl AlgebraFile {
    pub fn from_json(text: &str, source: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_err(source, e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("algebra files serialize")
    }

    fn index(&self, label: &str, location: &str) -> Result<usize> {
        self.basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| parse_err(location, format!("unknown basis label `{}`", label)))
    }

    fn terms(&self, terms: &[Term], location: &str) -> Result<Vector> {
        let mut v = zero_vec(self.basis.len());
        for (k, t) in terms.iter().enumerate() {
            let loc = format!("{}[{}]", location, k);
            let i = self.index(&t.basis, &format!("{}.basis", loc))?;
            v[i] += &scalar_at(&t.coef, &format!("{}.coef", loc), self.field)?;
        }
        Ok(v)
    }

    fn element(&self, e: &Element, location: &str) -> Result<Vector> {
        match e {
            Element::Label(l) => {
                let mut v = zero_vec(self.basis.len());
                v[self.index(l, location)?] = Scalar::from(1);
                Ok(v)
            }
            Element::Combination(ts) => self.terms(ts, location),
        }
    }

    fn subspace(&self, es: &[Element], location: &str) -> Result<Subspace> {
        let vs = es.iter().enumerate().map(|(k, e)| self.element(e, &format!("{}[{}]", location, k))).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(self.basis.len(), &vs))
    }

    pub fn resolve(&self) -> Result<AlgebraInput> {
        let n = self.basis.len();
        if let Some(d) = self.dim {
            if d != n {
                return Err(parse_err("dim", format!("dim is {} but the basis has {} labels", d, n)));
            }
        }
        for (i, b) in self.basis.iter().enumerate() {
            if b.is_empty() {
                return Err(parse_err(format!("basis[{}]", i), "empty label"));
            }
            if self.basis[..i].contains(b) {
                return Err(parse_err(format!("basis[{}]", i), format!("duplicate basis label `{}`", b)));
            }
        }
        let mut entries = Vec::new();
        for (k, br) in self.brackets.iter().enumerate() {
            let loc = format!("brackets[{}]", k);
            let i = self.index(&br.left, &format!("{}.left", loc))?;
            let j = self.index(&br.right, &format!("{}.right", loc))?;
            if i == j {
                return Err(parse_err(format!("{}.right", loc), format!("[{}, {}] must be zero", br.left, br.right)));
            }
            if entries.iter().any(|&(a, b, _)| (a, b) == (i, j) || (a, b) == (j, i)) {
                return Err(parse_err(loc, format!("[{}, {}] is given twice", br.left, br.right)));
            }
            entries.push((i, j, self.terms(&br.result, &format!("{}.result", loc))?));
        }
        let algebra = LieAlgebra::new(self.name.clone(), self.basis.clone(), entries)?;
        let grading = match &self.grading {
            None => None,
            Some(layers) => Some(Grading {
                layers: layers
                    .iter()
                    .enumerate()
                    .map(|(k, l)| self.subspace(l, &format!("grading[{}]", k)))
                    .collect::<Result<_>>()?,
            }),
        };
        let nilradical = self.nilradical.as_ref().map(|e| self.subspace(e, "nilradical")).transpose()?;
        let complement = self.complement.as_ref().map(|e| self.subspace(e, "complement")).transpose()?;
        if nilradical.is_some() != complement.is_some() {
            return Err(parse_err("nilradical", "nilradical and complement must be given together"));
        }
        Ok(AlgebraInput { algebra, grading, nilradical, complement })
    }

    /// Serializes the structure constants of `alg` (only `i < j`, nonzero).
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let field = if alg.is_rational() { Field::Rational } else { Field::Gaussian };
        let brackets = alg
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| BracketEntry {
                left: alg.labels()[i].clone(),
                right: alg.labels()[j].clone(),
                result: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| Term { coef: c.to_string(), basis: alg.labels()[k].clone() })
                    .collect(),
            })
            .collect();
        AlgebraFile {
            name: alg.name().to_string(),
            dim: Some(alg.dim()),
            field,
            basis: alg.labels().to_vec(),
            brackets,
            grading: None,
            nilradical: None,
            complement: None,
        }
    }

    pub fn with_grading(mut self, alg: &LieAlgebra, g: &Grading) -> Self {
        self.grading = Some(g.layers.iter().map(|l| l.basis().iter().map(|v| element_of(alg, v)).collect()).collect());
        self
    }
}

fn element_of(alg: &LieAlgebra, v: &[Scalar]) -> Element {
    let nz: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
    if nz.len() == 1 && v[nz[0]] == Scalar::from(1) {
        return Element::Label(alg.labels()[nz[0]].clone());
    }
    Element::Combination(nz.iter().map(|&k| Term { coef: v[k].to_string(), basis: alg.labels()[k].clone() }).collect())
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| GermError::Io(format!("{}: {}", path.display(), e)))
}

pub fn load_algebra(path: &Path) -> Result<AlgebraInput> {
    let text = read_text(path)?;
    AlgebraFile::from_json(&text, &path.display().to_string())?.resolve()
}

/// A sub-DGA given by its monomials, each a list of basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubDgaFile {
    pub monomials: Vec<Vec<String>>,
}

impl SubDgaFile {
    pub fn from_json(text: &str, source: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| json_err(source, e))
    }

    pub fn masks(&self, alg: &LieAlgebra) -> Result<Vec<Mask>> {
        self.monomials
            .iter()
            .enumerate()
            .map(|(k, mono)| {
                let mut ix = Vec::new();
                for (j, l) in mono.iter().enumerate() {
                    let loc = format!("monomials[{}][{}]", k, j);
                    let i = alg.label_index(l).ok_or_else(|| parse_err(&loc, format!("unknown basis label `{}`", l)))?;
                    if ix.contains(&i) {
                        return Err(parse_err(loc, format!("`{}` repeated in a monomial", l)));
                    }
                    ix.push(i);
                }
                Ok(indices_mask(&ix))
            })
            .collect()
    }

    pub fn from_subdga(sub: &SubDga) -> Self {
        let alg = sub.parent().algebra();
        SubDgaFile {
            monomials: sub
                .monomials()
                .map(|m| mask_indices(m).into_iter().map(|i| alg.labels()[i].clone()).collect())
                .collect(),
        }
    }

    pub fn build(&self, dga: &Dga) -> Result<SubDga> {
        SubDga::new(dga.clone(), self.masks(dga.algebra())?)
    }
}

pub fn parse_characters(text: &str, source: &str) -> Result<CharacterData> {
    serde_json::from_str(text).map_err(|e| json_err(source, e))
}

/// Parses `"t1=1,t3=-1/2"`; variables not mentioned are zero.
pub fn parse_point(text: &str, variables: &[String]) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); variables.len()];
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, value) =
            part.split_once('=').ok_or_else(|| parse_err("--point", format!("`{}` is not of the form t=value", part)))?;
        let k = variables
            .iter()
            .position(|v| v == name.trim())
            .ok_or_else(|| parse_err("--point", format!("unknown variable `{}`", name.trim())))?;
        out[k] = value.trim().parse().map_err(|_| parse_err("--point", format!("`{}` is not a scalar", value.trim())))?;
    }
    Ok(out)
}
