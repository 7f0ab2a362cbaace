//! Sparse linear forms on a Lie algebra, with polynomial coefficients.
//! These are the edge labels and memorized forms of the diagram method.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed};

use super::poly::Poly;
use super::scalar::{format_scalar, Scalar};
use crate::{Error, Result};

/// Element of L^*: basis index -> nonzero Poly coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinForm {
    dim: usize,
    coeffs: BTreeMap<usize, Poly>,
}

impl LinForm {
    pub fn zero(dim: usize) -> Self {
        LinForm {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    /// The form dual to basis element `index`.
    pub fn dual(dim: usize, index: usize) -> Self {
        Self::single(dim, index, Poly::one())
    }

    pub fn single(dim: usize, index: usize, coeff: Poly) -> Self {
        assert!(index < dim, "index {index} out of range for dim {dim}");
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(index, coeff);
        }
        LinForm { dim, coeffs }
    }

    pub fn from_coeffs(dim: usize, entries: impl IntoIterator<Item = (usize, Poly)>) -> Self {
        let mut f = LinForm::zero(dim);
        for (i, p) in entries {
            f.add_term(i, &p);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, index: usize) -> Poly {
        self.coeffs.get(&index).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Poly)> {
        self.coeffs.iter().map(|(&i, p)| (i, p))
    }

    pub fn add_term(&mut self, index: usize, p: &Poly) {
        assert!(index < self.dim);
        let entry = self.coeffs.entry(index).or_default();
        *entry = entry.add(p);
        if entry.is_zero() {
            self.coeffs.remove(&index);
        }
    }

    pub fn add(&self, other: &LinForm) -> Result<LinForm> {
        if self.dim != other.dim {
            return Err(Error::AlgebraMismatch(self.dim, other.dim));
        }
        let mut out = self.clone();
        for (i, p) in other.iter() {
            out.add_term(i, p);
        }
        Ok(out)
    }

    pub fn neg(&self) -> LinForm {
        LinForm {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(&i, p)| (i, p.neg())).collect(),
        }
    }

    pub fn scale(&self, p: &Poly) -> LinForm {
        if p.is_zero() {
            return LinForm::zero(self.dim);
        }
        LinForm {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|(&i, q)| (i, q.mul(p))).collect(),
        }
    }

    pub fn scale_scalar(&self, c: &Scalar) -> LinForm {
        self.scale(&Poly::constant(c.clone()))
    }

    /// Evaluates the form on an algebra element given by coordinates.
    pub fn eval(&self, l: &[Scalar]) -> Result<Poly> {
        if l.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: l.len(),
            });
        }
        let mut out = Poly::zero();
        for (i, p) in self.iter() {
            out = out.add(&p.scale(&l[i]));
        }
        Ok(out)
    }

    /// True when every coefficient is a rational constant.
    pub fn is_concrete(&self) -> bool {
        self.coeffs.values().all(|p| p.is_constant())
    }

    /// Positive gcd of the rational contents of all coefficients.
    /// Used for the characteristic-p edge-deletion rule.
    pub fn scalar_content(&self) -> Scalar {
        let mut g = Scalar::from_integer(0.into());
        for p in self.coeffs.values() {
            g = super::scalar::rational_gcd(&g, &p.content());
        }
        g
    }

    /// Renders with the given dual-basis labels, e.g. "c_1*a_23 - c_2*a_34".
    pub fn display_with(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        let mut first = true;
        for (i, p) in self.iter() {
            let lab = &labels[i];
            // Single-term coefficients render inline; general polynomials
            // get parenthesized.
            let (sign, body) = match p.as_constant() {
                Some(c) => {
                    let (s, m) = if c.is_negative() { ("-", -&c) } else { ("+", c) };
                    if m.is_one() {
                        (s, lab.clone())
                    } else {
                        (s, format!("{}*{}", format_scalar(&m), lab))
                    }
                }
                None if p.num_terms() == 1 => {
                    let (m, c) = p.terms().next().unwrap();
                    let (s, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
                    if mag.is_one() {
                        (s, format!("{m}*{lab}"))
                    } else {
                        (s, format!("{}*{m}*{lab}", format_scalar(&mag)))
                    }
                }
                None => ("+", format!("({p})*{lab}")),
            };
            if first {
                if sign == "-" {
                    out.push('-');
                }
                first = false;
            } else {
                out.push_str(&format!(" {sign} "));
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for LinForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..self.dim).map(|i| format!("a_{i}")).collect();
        write!(f, "{}", self.display_with(&labels))
    }
}
