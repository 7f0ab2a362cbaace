//! JSON import/export. Diagrams and patterns round-trip losslessly; rational
//! values cross the boundary as strings ("3/4") so nothing is ever rounded.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diagram::Diagram;
use crate::exact::linform::LinForm;
use crate::exact::poly::{Monomial, Param, Poly};
use crate::exact::scalar::{format_scalar, parse_scalar, Scalar};
use crate::lie::LieAlgebra;
use crate::normal_form::{Coord, Pattern};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_labels: Option<Vec<String>>,
    pub brackets: Vec<BracketJson>,
}

/// One term of a linear-form label: coeff * monomial * (dual basis vector).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    /// Sorted (parameter id, exponent) pairs; empty for a constant.
    pub monomial: Vec<(u32, u32)>,
    pub dual_index: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub label: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramJson {
    pub algebra: AlgebraJson,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
}

fn linform_terms(w: &LinForm) -> Vec<TermJson> {
    let mut out = Vec::new();
    for (idx, poly) in w.iter() {
        for (m, c) in poly.terms() {
            out.push(TermJson {
                coeff: format_scalar(c),
                monomial: m.0.clone(),
                dual_index: idx,
            });
        }
    }
    out
}

fn terms_linform(dim: usize, terms: &[TermJson]) -> Result<LinForm> {
    let mut w = LinForm::zero(dim);
    for t in terms {
        if t.dual_index >= dim {
            return Err(Error::Parse(format!(
                "dual_index {} out of range (dim {dim})",
                t.dual_index
            )));
        }
        let poly = Poly::term(parse_scalar(&t.coeff)?, Monomial(t.monomial.clone()));
        w.add_term(t.dual_index, &poly);
    }
    Ok(w)
}

pub fn diagram_to_json(d: &Diagram) -> DiagramJson {
    let alg = d.algebra();
    let algebra = AlgebraJson {
        labels: alg.labels().to_vec(),
        dual_labels: Some(alg.dual_labels().to_vec()),
        brackets: alg
            .brackets()
            .iter()
            .map(|(&(i, j), v)| BracketJson {
                i,
                j,
                coeffs: v.iter().map(format_scalar).collect(),
            })
            .collect(),
    };
    let edges = d
        .edges()
        .iter()
        .map(|(&(from, to), w)| EdgeJson {
            from,
            to,
            label: linform_terms(w),
        })
        .collect();
    DiagramJson {
        algebra,
        vertices: d.vertex_labels().to_vec(),
        edges,
    }
}

pub fn diagram_from_json(j: &DiagramJson) -> Result<Diagram> {
    let dim = j.algebra.labels.len();
    let mut brackets = BTreeMap::new();
    for b in &j.algebra.brackets {
        let coeffs = b
            .coeffs
            .iter()
            .map(|s| parse_scalar(s))
            .collect::<Result<Vec<_>>>()?;
        brackets.insert((b.i, b.j), coeffs);
    }
    let algebra = match &j.algebra.dual_labels {
        Some(duals) => {
            LieAlgebra::with_dual_labels(j.algebra.labels.clone(), duals.clone(), brackets)?
        }
        None => LieAlgebra::new(j.algebra.labels.clone(), brackets)?,
    };
    let algebra = Arc::new(algebra);
    let n = j.vertices.len();
    let mut edges = BTreeMap::new();
    for e in &j.edges {
        if e.from >= n || e.to >= n {
            return Err(Error::Parse(format!(
                "edge ({}, {}) out of range ({n} vertices)",
                e.from, e.to
            )));
        }
        let w = terms_linform(dim, &e.label)?;
        if w.is_zero() {
            return Err(Error::Parse(format!(
                "edge ({}, {}) has a zero label",
                e.from, e.to
            )));
        }
        if edges.insert((e.from, e.to), w).is_some() {
            return Err(Error::Parse(format!(
                "duplicate edge ({}, {})",
                e.from, e.to
            )));
        }
    }
    Ok(Diagram::new(algebra, j.vertices.clone(), edges))
}

pub fn export_diagram(d: &Diagram) -> String {
    // Pretty output with a trailing newline: stable across runs because every
    // collection underneath is ordered.
    let mut s = serde_json::to_string_pretty(&diagram_to_json(d)).expect("serialize");
    s.push('\n');
    s
}

pub fn import_diagram(text: &str) -> Result<Diagram> {
    let j: DiagramJson = serde_json::from_str(text)?;
    diagram_from_json(&j)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoordJson {
    Zero,
    Free(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MemorizedJson {
    pub position: usize,
    pub form: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternJson {
    pub coords: Vec<CoordJson>,
    pub memorized: Vec<MemorizedJson>,
    /// Polynomials assumed nonzero, rendered canonically.
    pub conditions: Vec<String>,
    /// Polynomials required to vanish (stratified enumeration only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<String>,
}

pub fn pattern_to_json(p: &Pattern) -> PatternJson {
    PatternJson {
        coords: p
            .coords
            .iter()
            .map(|c| match c {
                Coord::Zero => CoordJson::Zero,
                Coord::Free(param) => CoordJson::Free(param.name()),
            })
            .collect(),
        memorized: p
            .memorized
            .iter()
            .map(|(position, form)| MemorizedJson {
                position: *position,
                form: linform_terms(form),
            })
            .collect(),
        conditions: p.conditions.iter().map(|c| c.to_string()).collect(),
        constraints: p.constraints.iter().map(|c| c.to_string()).collect(),
    }
}

fn parse_param(name: &str) -> Result<Param> {
    name.strip_prefix("c_")
        .and_then(|id| id.parse::<u32>().ok())
        .map(Param)
        .ok_or_else(|| Error::Parse(format!("bad parameter name: {name:?}")))
}

pub fn pattern_from_json(j: &PatternJson, algebra_dim: usize) -> Result<Pattern> {
    let coords = j
        .coords
        .iter()
        .map(|c| match c {
            CoordJson::Zero => Ok(Coord::Zero),
            CoordJson::Free(name) => Ok(Coord::Free(parse_param(name)?)),
        })
        .collect::<Result<Vec<_>>>()?;
    let memorized = j
        .memorized
        .iter()
        .map(|m| Ok((m.position, terms_linform(algebra_dim, &m.form)?)))
        .collect::<Result<Vec<_>>>()?;
    let conditions = j
        .conditions
        .iter()
        .map(|s| parse_poly(s))
        .collect::<Result<Vec<_>>>()?;
    let constraints = j
        .constraints
        .iter()
        .map(|s| parse_poly(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(Pattern {
        coords,
        memorized,
        conditions,
        constraints,
    })
}

/// Parses the canonical polynomial rendering: terms joined by " + " / " - ",
/// each term "coeff*c_1^2*c_3" with the coefficient or the power product
/// optional.
pub fn parse_poly(s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(Poly::zero());
    }
    let mut out = Poly::zero();
    // Split into signed terms; a leading '-' binds to the first term.
    let mut rest = s;
    let mut sign = 1i64;
    if let Some(r) = rest.strip_prefix('-') {
        sign = -1;
        rest = r.trim_start();
    }
    loop {
        let split = rest.find(" + ").map(|i| (i, 1i64));
        let split = match rest.find(" - ") {
            Some(i) if split.is_none() || i < split.unwrap().0 => Some((i, -1i64)),
            _ => split,
        };
        let (term, next) = match split {
            Some((i, next_sign)) => (&rest[..i], Some((&rest[i + 3..], next_sign))),
            None => (rest, None),
        };
        out = out.add(&parse_term(term.trim(), sign)?);
        match next {
            Some((r, next_sign)) => {
                rest = r;
                sign = next_sign;
            }
            None => break,
        }
    }
    Ok(out)
}

fn parse_term(term: &str, sign: i64) -> Result<Poly> {
    let mut coeff = Scalar::from_integer(sign.into());
    let mut powers: Vec<(u32, u32)> = Vec::new();
    for factor in term.split('*') {
        let factor = factor.trim();
        if let Some(param_part) = factor.strip_prefix("c_") {
            let (id, exp) = match param_part.split_once('^') {
                Some((id, exp)) => (id, exp),
                None => (param_part, "1"),
            };
            let id = id
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad factor: {factor:?}")))?;
            let exp = exp
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad exponent in: {factor:?}")))?;
            match powers.iter_mut().find(|(p, _)| *p == id) {
                Some((_, e)) => *e += exp,
                None => powers.push((id, exp)),
            }
        } else {
            coeff *= parse_scalar(factor)?;
        }
    }
    powers.sort();
    Ok(Poly::term(coeff, Monomial(powers)))
}

/// Parses a coordinate vector given as a JSON array of rational strings.
pub fn parse_vector(text: &str) -> Result<Vec<Scalar>> {
    let entries: Vec<String> = serde_json::from_str(text)?;
    entries.iter().map(|s| parse_scalar(s)).collect()
}

pub fn vector_to_json(x: &[Scalar]) -> String {
    serde_json::to_string(&x.iter().map(format_scalar).collect::<Vec<_>>()).expect("serialize")
}
