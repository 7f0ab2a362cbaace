//! Diagrams of representations: vertex-ordered digraphs whose edge (i, j)
//! carries the linear form l -> x_j(T(l) e_i) on the Lie algebra. The
//! diagram determines the representation and vice versa.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::exact::linform::LinForm;
use crate::exact::mat::Mat;
use crate::exact::poly::Poly;
use crate::exact::scalar::Scalar;
use crate::lie::{LieAlgebra, Representation};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    algebra: Arc<LieAlgebra>,
    vertices: Vec<String>,
    /// (from, to) -> nonzero label. At most one edge per ordered pair;
    /// loops allowed.
    edges: BTreeMap<(usize, usize), LinForm>,
}

impl Diagram {
    pub fn new(
        algebra: Arc<LieAlgebra>,
        vertices: Vec<String>,
        edges: BTreeMap<(usize, usize), LinForm>,
    ) -> Self {
        let n = vertices.len();
        for ((i, j), w) in &edges {
            assert!(*i < n && *j < n, "edge ({i}, {j}) out of range");
            assert!(!w.is_zero(), "zero edge label at ({i}, {j})");
            assert_eq!(w.dim(), algebra.dim());
        }
        Diagram {
            algebra,
            vertices,
            edges,
        }
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeMap<(usize, usize), LinForm> {
        &self.edges
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<&LinForm> {
        self.edges.get(&(i, j))
    }

    /// Out-edges of vertex i.
    pub fn out_edges(&self, i: usize) -> impl Iterator<Item = (usize, &LinForm)> {
        self.edges
            .range((i, 0)..(i + 1, 0))
            .map(|(&(_, j), w)| (j, w))
    }

    pub fn is_triangular(&self) -> bool {
        self.edges.keys().all(|&(i, j)| i <= j)
    }

    pub fn is_strictly_triangular(&self) -> bool {
        self.edges.keys().all(|&(i, j)| i < j)
    }

    /// First edge violating strict triangularity, if any.
    pub fn strictness_violation(&self) -> Option<(usize, usize)> {
        self.edges.keys().find(|&&(i, j)| i >= j).copied()
    }

    /// Number of edges in the longest directed path, or None when the
    /// underlying digraph has a directed cycle (loops count as cycles).
    pub fn longest_path(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut indeg = vec![0usize; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(i, j) in self.edges.keys() {
            if i == j {
                return None;
            }
            adj[i].push(j);
            indeg[j] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut dist = vec![0usize; n];
        let mut seen = 0;
        let mut best = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &adj[v] {
                dist[w] = dist[w].max(dist[v] + 1);
                best = best.max(dist[w]);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        (seen == n).then_some(best)
    }

    /// Nilpotency bound l(G) + 1 from the longest path, or None on a cycle.
    pub fn nilpotency_bound(&self) -> Option<usize> {
        self.longest_path().map(|l| l + 1)
    }

    /// Dual diagram: reverse every arrow and flip every sign.
    pub fn dual(&self) -> Diagram {
        let vertices = self
            .vertices
            .iter()
            .map(|l| dual_vertex_label(l))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|(&(i, j), w)| ((j, i), w.neg()))
            .collect();
        Diagram {
            algebra: self.algebra.clone(),
            vertices,
            edges,
        }
    }

    /// Induced diagram on the vertex subset J, which must be closed under
    /// outgoing edges (an invariant subspace).
    pub fn subdiagram(&self, subset: &BTreeSet<usize>) -> Result<Diagram> {
        for &(i, j) in self.edges.keys() {
            if subset.contains(&i) && !subset.contains(&j) {
                return Err(Error::ClosureViolation(i, j));
            }
        }
        Ok(self.induced(subset))
    }

    /// Induced diagram on J, which must receive no edges from outside
    /// (a quotient of the representation).
    pub fn quotient_diagram(&self, subset: &BTreeSet<usize>) -> Result<Diagram> {
        for &(i, j) in self.edges.keys() {
            if !subset.contains(&i) && subset.contains(&j) {
                return Err(Error::ClosureViolation(i, j));
            }
        }
        Ok(self.induced(subset))
    }

    /// Induced diagram on the complement of the given vertex subset.
    pub fn complement(&self, subset: &BTreeSet<usize>) -> Diagram {
        let rest: BTreeSet<usize> = (0..self.vertex_count())
            .filter(|v| !subset.contains(v))
            .collect();
        self.induced(&rest)
    }

    fn induced(&self, subset: &BTreeSet<usize>) -> Diagram {
        let order: Vec<usize> = subset.iter().copied().collect();
        let pos: BTreeMap<usize, usize> = order.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let vertices = order.iter().map(|&v| self.vertices[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(&(i, j), w)| {
                Some(((*pos.get(&i)?, *pos.get(&j)?), w.clone()))
            })
            .collect();
        Diagram {
            algebra: self.algebra.clone(),
            vertices,
            edges,
        }
    }

    /// Graphviz DOT text with deterministic vertex and edge order.
    pub fn to_dot(&self) -> String {
        let duals = self.algebra.dual_labels();
        let mut out = String::from("digraph D {\n  rankdir=LR;\n");
        for (i, label) in self.vertices.iter().enumerate() {
            out.push_str(&format!("  v{i} [label=\"{label}\"];\n"));
        }
        for ((i, j), w) in &self.edges {
            out.push_str(&format!(
                "  v{i} -> v{j} [label=\"{}\"];\n",
                w.display_with(duals)
            ));
        }
        out.push_str("}\n");
        out
    }
}

use crate::lie::default_dual_label as dual_vertex_label;

/// Builds the diagram of a representation: edge (i, j) present iff the form
/// l -> x_j(T(l) e_i) is nonzero. `ordering[p]` gives the original basis
/// index placed at position p.
pub fn build_diagram(rep: &Representation, ordering: Option<&[usize]>) -> Diagram {
    let n = rep.space_dim();
    let default: Vec<usize> = (0..n).collect();
    let order = ordering.unwrap_or(&default);
    assert_eq!(order.len(), n, "ordering must be a permutation");
    let vertices = order
        .iter()
        .map(|&i| rep.space_labels()[i].clone())
        .collect();
    let adim = rep.algebra().dim();
    let mut edges = BTreeMap::new();
    for (pi, &oi) in order.iter().enumerate() {
        for (pj, &oj) in order.iter().enumerate() {
            let mut form = LinForm::zero(adim);
            for a in 0..adim {
                let entry = &rep.matrix(a)[(oj, oi)];
                if !num::Zero::is_zero(entry) {
                    form.add_term(a, &Poly::constant(entry.clone()));
                }
            }
            if !form.is_zero() {
                edges.insert((pi, pj), form);
            }
        }
    }
    Diagram::new(rep.algebra().clone(), vertices, edges)
}

/// Reconstructs the representation: the matrix of T(e_a) is the transposed
/// weight matrix evaluated at e_a. Errors when the labels carry parameters
/// or the result is not a homomorphism.
pub fn to_representation(d: &Diagram) -> Result<Representation> {
    let n = d.vertex_count();
    let adim = d.algebra().dim();
    let mut matrices = Vec::with_capacity(adim);
    for a in 0..adim {
        let mut m = Mat::zeros(n, n);
        for (&(i, j), w) in d.edges() {
            let c = w
                .coeff(a)
                .as_constant()
                .ok_or(Error::ParameterizedInput)?;
            m[(j, i)] = c;
        }
        matrices.push(m);
    }
    let rep = Representation::new(
        d.algebra().clone(),
        d.vertex_labels().to_vec(),
        matrices,
    );
    rep.validate()?;
    Ok(rep)
}

/// Disjoint union of diagrams over the same algebra.
pub fn disjoint_union(a: &Diagram, b: &Diagram) -> Result<Diagram> {
    if a.algebra() != b.algebra() {
        return Err(Error::AlgebraMismatch(
            a.algebra().dim(),
            b.algebra().dim(),
        ));
    }
    let offset = a.vertex_count();
    let mut vertices = a.vertex_labels().to_vec();
    vertices.extend_from_slice(b.vertex_labels());
    let mut edges = a.edges().clone();
    for (&(i, j), w) in b.edges() {
        edges.insert((i + offset, j + offset), w.clone());
    }
    Ok(Diagram::new(a.algebra().clone(), vertices, edges))
}

/// Reduced Cartesian product: the tensor-product diagram. Vertices are
/// pairs in lexicographic order; coincident loops merge by summing labels
/// and are dropped when the sum is zero.
pub fn product(a: &Diagram, b: &Diagram) -> Result<Diagram> {
    if a.algebra() != b.algebra() {
        return Err(Error::AlgebraMismatch(
            a.algebra().dim(),
            b.algebra().dim(),
        ));
    }
    let (na, nb) = (a.vertex_count(), b.vertex_count());
    let idx = |i: usize, j: usize| i * nb + j;
    let mut vertices = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            vertices.push(format!(
                "({},{})",
                a.vertex_labels()[i],
                b.vertex_labels()[j]
            ));
        }
    }
    let mut edges: BTreeMap<(usize, usize), LinForm> = BTreeMap::new();
    let mut add = |from: usize, to: usize, w: &LinForm| {
        match edges.get_mut(&(from, to)) {
            Some(existing) => {
                let sum = existing.add(w).expect("same algebra");
                if sum.is_zero() {
                    edges.remove(&(from, to));
                } else {
                    *existing = sum;
                }
            }
            None => {
                edges.insert((from, to), w.clone());
            }
        }
    };
    for (&(i, i2), w) in a.edges() {
        for j in 0..nb {
            add(idx(i, j), idx(i2, j), w);
        }
    }
    for (&(j, j2), w) in b.edges() {
        for i in 0..na {
            add(idx(i, j), idx(i, j2), w);
        }
    }
    Ok(Diagram::new(a.algebra().clone(), vertices, edges))
}

/// Direct sum of representations (used to cross-check the union rule).
pub fn direct_sum(t: &Representation, u: &Representation) -> Representation {
    assert_eq!(t.algebra(), u.algebra());
    let (nt, nu) = (t.space_dim(), u.space_dim());
    let mut labels = t.space_labels().to_vec();
    labels.extend_from_slice(u.space_labels());
    let matrices = (0..t.algebra().dim())
        .map(|a| {
            Mat::from_fn(nt + nu, nt + nu, |i, j| {
                if i < nt && j < nt {
                    t.matrix(a)[(i, j)].clone()
                } else if i >= nt && j >= nt {
                    u.matrix(a)[(i - nt, j - nt)].clone()
                } else {
                    Scalar::from_integer(0.into())
                }
            })
        })
        .collect();
    Representation::new(t.algebra().clone(), labels, matrices)
}

/// Tensor product of representations (cross-check for `product`).
/// Basis v_i (x) w_j in lexicographic order.
pub fn tensor_product(t: &Representation, u: &Representation) -> Representation {
    assert_eq!(t.algebra(), u.algebra());
    let (nt, nu) = (t.space_dim(), u.space_dim());
    let mut labels = Vec::with_capacity(nt * nu);
    for i in 0..nt {
        for j in 0..nu {
            labels.push(format!(
                "({},{})",
                t.space_labels()[i],
                u.space_labels()[j]
            ));
        }
    }
    let matrices = (0..t.algebra().dim())
        .map(|a| {
            Mat::from_fn(nt * nu, nt * nu, |r, c| {
                let (ri, rj) = (r / nu, r % nu);
                let (ci, cj) = (c / nu, c % nu);
                // T(l) (x) 1 + 1 (x) U(l)
                let mut v = Scalar::from_integer(0.into());
                if rj == cj {
                    v += t.matrix(a)[(ri, ci)].clone();
                }
                if ri == ci {
                    v += u.matrix(a)[(rj, cj)].clone();
                }
                v
            })
        })
        .collect();
    Representation::new(t.algebra().clone(), labels, matrices)
}
