//! Lie algebras by structure constants and representations as families of
//! exact rational matrices, one per algebra basis element.

use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;

use crate::exact::mat::Mat;
use crate::exact::scalar::Scalar;
use crate::{Error, Result};

/// Finite-dimensional Lie algebra given by an ordered basis and the bracket
/// table [e_i, e_j] for i < j; antisymmetry is implied by storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    labels: Vec<String>,
    /// Dual-basis labels, used to print linear forms on the algebra.
    dual_labels: Vec<String>,
    brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
}

impl LieAlgebra {
    /// Validates the bracket table and checks the Jacobi identity on every
    /// basis triple.
    pub fn new(
        labels: Vec<String>,
        brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
    ) -> Result<Self> {
        let dual_labels = labels.iter().map(|l| default_dual_label(l)).collect();
        Self::with_dual_labels(labels, dual_labels, brackets)
    }

    pub fn with_dual_labels(
        labels: Vec<String>,
        dual_labels: Vec<String>,
        mut brackets: BTreeMap<(usize, usize), Vec<Scalar>>,
    ) -> Result<Self> {
        let dim = labels.len();
        assert_eq!(dual_labels.len(), dim);
        // Normalize: only i < j stored, no zero vectors, indices in range.
        let mut normalized = BTreeMap::new();
        for ((i, j), v) in std::mem::take(&mut brackets) {
            if v.len() != dim {
                return Err(Error::BadBracketEntry {
                    i,
                    j,
                    got: v.len(),
                    expected: dim,
                });
            }
            if i >= dim || j >= dim {
                return Err(Error::InvalidArgument(format!(
                    "bracket index ({i}, {j}) out of range for dim {dim}"
                )));
            }
            if i == j {
                if v.iter().any(|x| !x.is_zero()) {
                    return Err(Error::InvalidArgument(format!(
                        "[e_{i}, e_{i}] must be zero"
                    )));
                }
                continue;
            }
            let (key, v) = if i < j {
                ((i, j), v)
            } else {
                ((j, i), v.iter().map(|x| -x).collect())
            };
            if v.iter().any(|x| !x.is_zero()) {
                normalized.insert(key, v);
            }
        }
        let alg = LieAlgebra {
            labels,
            dual_labels,
            brackets: normalized,
        };
        alg.check_jacobi()?;
        Ok(alg)
    }

    fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        for a in 0..dim {
            for b in (a + 1)..dim {
                for c in (b + 1)..dim {
                    // [[a,b],c] + [[b,c],a] + [[c,a],b] = 0
                    let mut acc = vec![Scalar::zero(); dim];
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let inner = self.bracket_basis(x, y);
                        let term = self.bracket_vec(&inner, &basis_vec(dim, z));
                        for (t, v) in acc.iter_mut().zip(term) {
                            *t += v;
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        return Err(Error::JacobiFailure(
                            self.labels[a].clone(),
                            self.labels[b].clone(),
                            self.labels[c].clone(),
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dual_labels(&self) -> &[String] {
        &self.dual_labels
    }

    pub fn brackets(&self) -> &BTreeMap<(usize, usize), Vec<Scalar>> {
        &self.brackets
    }

    /// [e_i, e_j] as a coordinate vector, any i, j.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Scalar> {
        let dim = self.dim();
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self
                .brackets
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| vec![Scalar::zero(); dim]),
            std::cmp::Ordering::Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|x| -x).collect())
                .unwrap_or_else(|| vec![Scalar::zero(); dim]),
            std::cmp::Ordering::Equal => vec![Scalar::zero(); dim],
        }
    }

    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let dim = self.dim();
        let mut out = vec![Scalar::zero(); dim];
        for ((i, j), v) in &self.brackets {
            let coeff = &x[*i] * &y[*j] - &x[*j] * &y[*i];
            if coeff.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(v) {
                *o += &coeff * b;
            }
        }
        out
    }

    /// Smallest c with the (c+1)-th lower central series term zero, or None
    /// when the series stabilizes above zero.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let dim = self.dim();
        // Current term as a spanning set of vectors; starts as the algebra.
        let mut current: Vec<Vec<Scalar>> = (0..dim).map(|i| basis_vec(dim, i)).collect();
        let mut class = 0;
        loop {
            if current.is_empty() {
                return Some(class);
            }
            // Next term: [L, current].
            let mut next: Vec<Vec<Scalar>> = Vec::new();
            for i in 0..dim {
                let e = basis_vec(dim, i);
                for v in &current {
                    let w = self.bracket_vec(&e, v);
                    if w.iter().any(|x| !x.is_zero()) {
                        next.push(w);
                    }
                }
            }
            let next = row_space_basis(next);
            if rank_of(&next) == rank_of(&current) && !next.is_empty() {
                return None; // stabilized above zero: not nilpotent
            }
            current = next;
            class += 1;
            if class > dim + 1 {
                return None;
            }
        }
    }
}

fn basis_vec(dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); dim];
    v[i] = Scalar::from_integer(1.into());
    v
}

/// Row-reduces a spanning set over the rationals; returns independent rows.
fn row_space_basis(mut rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    for row in rows.iter_mut() {
        let mut r = row.clone();
        for b in &out {
            let lead = b.iter().position(|x| !x.is_zero()).unwrap();
            if !r[lead].is_zero() {
                let f = &r[lead] / &b[lead];
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if r.iter().any(|x| !x.is_zero()) {
            out.push(r);
            out.sort_by_key(|v| v.iter().position(|x| !x.is_zero()).unwrap());
        }
    }
    out
}

fn rank_of(rows: &[Vec<Scalar>]) -> usize {
    row_space_basis(rows.to_vec()).len()
}

/// Representation of a Lie algebra: one matrix per algebra basis element,
/// acting on a space with its own ordered, labeled basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: Arc<LieAlgebra>,
    space_labels: Vec<String>,
    /// matrices[a] is the matrix of T(e_a) in the space basis.
    matrices: Vec<Mat>,
}

impl Representation {
    pub fn new(algebra: Arc<LieAlgebra>, space_labels: Vec<String>, matrices: Vec<Mat>) -> Self {
        let dim = space_labels.len();
        assert_eq!(matrices.len(), algebra.dim());
        for m in &matrices {
            assert_eq!((m.rows, m.cols), (dim, dim));
        }
        Representation {
            algebra,
            space_labels,
            matrices,
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn space_dim(&self) -> usize {
        self.space_labels.len()
    }

    pub fn space_labels(&self) -> &[String] {
        &self.space_labels
    }

    pub fn matrix(&self, a: usize) -> &Mat {
        &self.matrices[a]
    }

    /// Matrix of T(l) for l given by coordinates.
    pub fn act(&self, l: &[Scalar]) -> Mat {
        assert_eq!(l.len(), self.algebra.dim());
        let n = self.space_dim();
        let mut out = Mat::zeros(n, n);
        for (a, coeff) in l.iter().enumerate() {
            if !coeff.is_zero() {
                out = out.add(&self.matrices[a].scale(coeff));
            }
        }
        out
    }

    /// Checks the homomorphism property M_[a,b] = M_a M_b - M_b M_a on all
    /// basis pairs; reports the first failing pair.
    pub fn validate(&self) -> Result<()> {
        let dim = self.algebra.dim();
        for a in 0..dim {
            for b in (a + 1)..dim {
                let lhs = self.act(&self.algebra.bracket_basis(a, b));
                let rhs = self.matrices[a]
                    .mul(&self.matrices[b])
                    .sub(&self.matrices[b].mul(&self.matrices[a]));
                if lhs != rhs {
                    return Err(Error::NotRepresentation(
                        self.algebra.labels()[a].clone(),
                        self.algebra.labels()[b].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Dual representation: negated transposes, dual space labels.
    pub fn dual(&self) -> Representation {
        Representation {
            algebra: self.algebra.clone(),
            space_labels: self
                .space_labels
                .iter()
                .map(|l| default_dual_label(l))
                .collect(),
            matrices: self
                .matrices
                .iter()
                .map(|m| m.transpose().scale(&Scalar::from_integer((-1).into())))
                .collect(),
        }
    }

    /// Reorders the space basis: `perm[p]` is the old index placed at
    /// position p.
    pub fn permuted(&self, perm: &[usize]) -> Representation {
        let n = self.space_dim();
        assert_eq!(perm.len(), n);
        let labels = perm.iter().map(|&i| self.space_labels[i].clone()).collect();
        let matrices = self
            .matrices
            .iter()
            .map(|m| Mat::from_fn(n, n, |i, j| m[(perm[i], perm[j])].clone()))
            .collect();
        Representation {
            algebra: self.algebra.clone(),
            space_labels: labels,
            matrices,
        }
    }

    pub fn relabeled(&self, labels: Vec<String>) -> Representation {
        assert_eq!(labels.len(), self.space_dim());
        Representation {
            algebra: self.algebra.clone(),
            space_labels: labels,
            matrices: self.matrices.clone(),
        }
    }
}

/// Adjoint representation: T(l)e = [l, e].
pub fn adjoint(algebra: &Arc<LieAlgebra>) -> Representation {
    let dim = algebra.dim();
    let matrices = (0..dim)
        .map(|a| {
            Mat::from_fn(dim, dim, |row, col| {
                algebra.bracket_basis(a, col)[row].clone()
            })
        })
        .collect();
    Representation::new(algebra.clone(), algebra.labels().to_vec(), matrices)
}

/// Coadjoint representation: the dual of the adjoint, with the algebra's
/// dual-basis labels on the space.
pub fn coadjoint(algebra: &Arc<LieAlgebra>) -> Representation {
    adjoint(algebra)
        .dual()
        .relabeled(algebra.dual_labels().to_vec())
}

/// X -> x for purely alphabetic labels; otherwise appends/strips a star.
pub(crate) fn default_dual_label(label: &str) -> String {
    if let Some(stripped) = label.strip_suffix('*') {
        return stripped.to_string();
    }
    if !label.is_empty() && label.chars().all(|c| c.is_ascii_uppercase() || c == '_' || c == '+' || c == '-')
    {
        return label.to_lowercase();
    }
    if !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_' || c == '+' || c == '-')
    {
        return label.to_uppercase();
    }
    format!("{label}*")
}
