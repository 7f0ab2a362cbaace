//! Symmetric and exterior powers of diagrams: S^n (quotient symmetric
//! power), S_n (symmetric subrepresentation of the tensor power) and the
//! exterior power, which serves both the quotient and the subrepresentation
//! since their diagrams coincide. An optional positive characteristic
//! deletes the edges whose weight vanishes mod p.

use std::collections::BTreeMap;

use num::Integer;

use crate::diagram::Diagram;
use crate::exact::linform::LinForm;
use crate::exact::scalar::int;
use crate::{Error, Result};

/// Which multiplicity enters the weight of a non-loop edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SymKind {
    /// Multiplicity of the replaced entry in the source vertex.
    Quotient,
    /// Multiplicity of the new entry in the target vertex.
    Sub,
}

/// Diagram of the symmetric power S^n (quotient of the tensor power).
pub fn sym_power(d: &Diagram, n: usize, char_p: Option<u64>) -> Result<Diagram> {
    sym_impl(d, n, char_p, SymKind::Quotient)
}

/// Diagram of the symmetric subrepresentation S_n of the tensor power.
pub fn sym_sub(d: &Diagram, n: usize, char_p: Option<u64>) -> Result<Diagram> {
    sym_impl(d, n, char_p, SymKind::Sub)
}

fn check_degree(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "power degree must be positive".into(),
        ));
    }
    Ok(())
}

/// True when the weight is zero in characteristic p: every coefficient is
/// a rational with numerator divisible by p.
fn vanishes_mod(w: &LinForm, char_p: Option<u64>) -> bool {
    if w.is_zero() {
        return true;
    }
    match char_p {
        None => false,
        Some(p) => {
            let content = w.scalar_content();
            content.numer().is_multiple_of(&p.into())
        }
    }
}

fn weakly_increasing_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(dim: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in start..dim {
            cur.push(v);
            rec(dim, n, v, cur, out);
            cur.pop();
        }
    }
    rec(dim, n, 0, &mut cur, &mut out);
    out
}

fn strictly_increasing_tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(dim: usize, n: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in start..dim {
            cur.push(v);
            rec(dim, n, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(dim, n, 0, &mut cur, &mut out);
    out
}

/// Monomial-style label: (u, u, v) -> "u^2v".
fn monomial_label(tuple: &[usize], base: &[String]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < tuple.len() {
        let mut j = i;
        while j < tuple.len() && tuple[j] == tuple[i] {
            j += 1;
        }
        out.push_str(&base[tuple[i]]);
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

fn wedge_label(tuple: &[usize], base: &[String]) -> String {
    tuple
        .iter()
        .map(|&v| base[v].as_str())
        .collect::<Vec<_>>()
        .join("∧")
}

fn loop_weight(d: &Diagram, tuple: &[usize]) -> LinForm {
    let mut total = LinForm::zero(d.algebra().dim());
    for &v in tuple {
        if let Some(w) = d.weight(v, v) {
            total = total.add(w).expect("same algebra");
        }
    }
    total
}

fn sym_impl(d: &Diagram, n: usize, char_p: Option<u64>, kind: SymKind) -> Result<Diagram> {
    check_degree(n)?;
    let tuples = weakly_increasing_tuples(d.vertex_count(), n);
    let index: BTreeMap<Vec<usize>, usize> = tuples
        .iter()
        .enumerate()
        .map(|(p, t)| (t.clone(), p))
        .collect();
    let vertices = tuples
        .iter()
        .map(|t| monomial_label(t, d.vertex_labels()))
        .collect();
    let mut edges = BTreeMap::new();
    for (p, tuple) in tuples.iter().enumerate() {
        let loops = loop_weight(d, tuple);
        if !vanishes_mod(&loops, char_p) {
            edges.insert((p, p), loops);
        }
        // Replace one entry a by b along a base edge (a, b).
        let mut seen_sources = Vec::new();
        for &a in tuple {
            if seen_sources.contains(&a) {
                continue;
            }
            seen_sources.push(a);
            for (b, w) in d.out_edges(a) {
                if b == a {
                    continue;
                }
                let mut target = tuple.clone();
                let slot = target.iter().position(|&v| v == a).unwrap();
                target[slot] = b;
                target.sort_unstable();
                let mult = match kind {
                    SymKind::Quotient => tuple.iter().filter(|&&v| v == a).count(),
                    SymKind::Sub => target.iter().filter(|&&v| v == b).count(),
                };
                let weight = w.scale_scalar(&int(mult as i64));
                if !vanishes_mod(&weight, char_p) {
                    edges.insert((p, index[&target]), weight);
                }
            }
        }
    }
    Ok(Diagram::new(d.algebra().clone(), vertices, edges))
}

/// Diagram of the exterior power; it represents both the quotient and the
/// subrepresentation of the tensor power on the wedge basis.
pub fn ext_power(d: &Diagram, n: usize, char_p: Option<u64>) -> Result<Diagram> {
    check_degree(n)?;
    if n > d.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "exterior power degree {n} exceeds dimension {}",
            d.vertex_count()
        )));
    }
    let tuples = strictly_increasing_tuples(d.vertex_count(), n);
    let index: BTreeMap<Vec<usize>, usize> = tuples
        .iter()
        .enumerate()
        .map(|(p, t)| (t.clone(), p))
        .collect();
    let vertices = tuples
        .iter()
        .map(|t| wedge_label(t, d.vertex_labels()))
        .collect();
    let mut edges = BTreeMap::new();
    for (p, tuple) in tuples.iter().enumerate() {
        let loops = loop_weight(d, tuple);
        if !vanishes_mod(&loops, char_p) {
            edges.insert((p, p), loops);
        }
        for (i, &a) in tuple.iter().enumerate() {
            for (b, w) in d.out_edges(a) {
                if b == a || tuple.contains(&b) {
                    continue;
                }
                let mut target = tuple.clone();
                target[i] = b;
                target.sort_unstable();
                let j = target.iter().position(|&v| v == b).unwrap();
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let weight = w.scale_scalar(&int(sign));
                if !vanishes_mod(&weight, char_p) {
                    edges.insert((p, index[&target]), weight);
                }
            }
        }
    }
    Ok(Diagram::new(d.algebra().clone(), vertices, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, tensor_product, to_representation};
    use crate::exact::mat::Mat;
    use crate::exact::poly::Poly;
    use crate::exact::scalar::Scalar;
    use crate::families::sl2_standard;
    use crate::lie::{adjoint, Representation};
    use num::Zero;

    fn const_form(dim: usize, entries: &[(usize, i64)]) -> LinForm {
        LinForm::from_coeffs(
            dim,
            entries.iter().map(|&(i, v)| (i, Poly::constant(int(v)))),
        )
    }

    fn heisenberg_adjoint() -> Representation {
        adjoint(&crate::families::heisenberg())
    }

    #[test]
    fn sym_square_of_standard_module() {
        let d = build_diagram(&sl2_standard(), None);
        let s2 = sym_power(&d, 2, None).unwrap();
        assert_eq!(s2.vertex_labels(), ["u^2", "uv", "v^2"]);
        // Loops 2h, (none), -2h; arrows 2x_+, x_+, -x_-, -2x_-.
        assert_eq!(s2.weight(0, 0).unwrap(), &const_form(3, &[(2, 2)]));
        assert!(s2.weight(1, 1).is_none());
        assert_eq!(s2.weight(2, 2).unwrap(), &const_form(3, &[(2, -2)]));
        assert_eq!(s2.weight(0, 1).unwrap(), &const_form(3, &[(0, 2)]));
        assert_eq!(s2.weight(1, 2).unwrap(), &const_form(3, &[(0, 1)]));
        assert_eq!(s2.weight(1, 0).unwrap(), &const_form(3, &[(1, -1)]));
        assert_eq!(s2.weight(2, 1).unwrap(), &const_form(3, &[(1, -2)]));
        assert_eq!(s2.edges().len(), 6);
    }

    #[test]
    fn sym_cube_quotient_and_sub() {
        let d = build_diagram(&sl2_standard(), None);
        let s3 = sym_power(&d, 3, None).unwrap();
        assert_eq!(s3.vertex_labels(), ["u^3", "u^2v", "uv^2", "v^3"]);
        // Quotient arrows: 3x_+, 2x_+, x_+ forward; -x_-, -2x_-, -3x_- back.
        assert_eq!(s3.weight(0, 1).unwrap(), &const_form(3, &[(0, 3)]));
        assert_eq!(s3.weight(1, 2).unwrap(), &const_form(3, &[(0, 2)]));
        assert_eq!(s3.weight(2, 3).unwrap(), &const_form(3, &[(0, 1)]));
        assert_eq!(s3.weight(1, 0).unwrap(), &const_form(3, &[(1, -1)]));
        assert_eq!(s3.weight(2, 1).unwrap(), &const_form(3, &[(1, -2)]));
        assert_eq!(s3.weight(3, 2).unwrap(), &const_form(3, &[(1, -3)]));
        // Loops 3h, h, -h, -3h.
        assert_eq!(s3.weight(0, 0).unwrap(), &const_form(3, &[(2, 3)]));
        assert_eq!(s3.weight(1, 1).unwrap(), &const_form(3, &[(2, 1)]));

        // The subrepresentation flips the multiplicities to the target side.
        let s3s = sym_sub(&d, 3, None).unwrap();
        assert_eq!(s3s.weight(0, 1).unwrap(), &const_form(3, &[(0, 1)]));
        assert_eq!(s3s.weight(1, 2).unwrap(), &const_form(3, &[(0, 2)]));
        assert_eq!(s3s.weight(2, 3).unwrap(), &const_form(3, &[(0, 3)]));
        assert_eq!(s3s.weight(1, 0).unwrap(), &const_form(3, &[(1, -3)]));
        assert_eq!(s3s.weight(2, 1).unwrap(), &const_form(3, &[(1, -2)]));
        assert_eq!(s3s.weight(3, 2).unwrap(), &const_form(3, &[(1, -1)]));
        // Loops agree between the two constructions.
        for p in 0..4 {
            assert_eq!(s3.weight(p, p), s3s.weight(p, p));
        }
    }

    #[test]
    fn characteristic_deletes_divisible_edges() {
        let d = build_diagram(&sl2_standard(), None);
        // p = 2 on S^2: 2x_+, -2x_- and the loops 2h, -2h disappear.
        let s2 = sym_power(&d, 2, Some(2)).unwrap();
        assert!(s2.weight(0, 1).is_none());
        assert!(s2.weight(2, 1).is_none());
        assert!(s2.weight(0, 0).is_none());
        assert!(s2.weight(2, 2).is_none());
        assert_eq!(s2.edges().len(), 2);

        // p = 3: the quotient power loses the outer arrows 3x_+ and -3x_-,
        // the subrepresentation loses the mirrored inner arrows -3x_- and
        // 3x_+ — same labels, opposite directions.
        let s3 = sym_power(&d, 3, Some(3)).unwrap();
        let s3s = sym_sub(&d, 3, Some(3)).unwrap();
        assert!(s3.weight(0, 1).is_none() && s3.weight(3, 2).is_none());
        assert!(s3.weight(1, 0).is_some() && s3.weight(2, 3).is_some());
        assert!(s3s.weight(0, 1).is_some() && s3s.weight(3, 2).is_some());
        assert!(s3s.weight(1, 0).is_none() && s3s.weight(2, 3).is_none());
        // The loops 3h and -3h vanish in both.
        assert!(s3.weight(0, 0).is_none() && s3s.weight(0, 0).is_none());
        assert!(s3.weight(1, 1).is_some() && s3s.weight(1, 1).is_some());
    }

    #[test]
    fn powers_yield_valid_representations() {
        for rep in [sl2_standard(), heisenberg_adjoint()] {
            let d = build_diagram(&rep, None);
            for n in 1..=3 {
                for result in [
                    sym_power(&d, n, None),
                    sym_sub(&d, n, None),
                ] {
                    to_representation(&result.unwrap()).unwrap();
                }
                if n <= rep.space_dim() {
                    to_representation(&ext_power(&d, n, None).unwrap()).unwrap();
                }
            }
        }
    }

    /// Applies a matrix of the n-fold tensor power representation to a
    /// vector expressed in the big tensor basis.
    fn apply_tensor(rep: &Representation, a: usize, v: &[Scalar]) -> Vec<Scalar> {
        rep.matrix(a).mul_vec(v)
    }

    #[test]
    fn ext_square_agrees_with_wedge_vectors_in_tensor_square() {
        // Independent check: push wedge basis vectors through the tensor
        // square and re-express the result in wedge coordinates.
        let rep = heisenberg_adjoint();
        let n = rep.space_dim();
        let t2 = tensor_product(&rep, &rep);
        let d = build_diagram(&rep, None);
        let ext = to_representation(&ext_power(&d, 2, None).unwrap()).unwrap();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        for a in 0..rep.algebra().dim() {
            for (w_idx, &(i, j)) in pairs.iter().enumerate() {
                // e_i ^ e_j = e_i (x) e_j - e_j (x) e_i.
                let mut v = vec![Scalar::zero(); n * n];
                v[i * n + j] = int(1);
                v[j * n + i] = int(-1);
                let image = apply_tensor(&t2, a, &v);
                // Expand in wedge coordinates: coefficient of e_k ^ e_l is
                // the (k*n + l) entry, k < l.
                for (t_idx, &(k, l)) in pairs.iter().enumerate() {
                    assert_eq!(
                        image[k * n + l],
                        ext.matrix(a)[(t_idx, w_idx)],
                        "a = {a}, wedge ({i},{j}) -> ({k},{l})"
                    );
                    assert_eq!(image[k * n + l], -&image[l * n + k]);
                }
            }
        }
    }

    #[test]
    fn sym_sub_agrees_with_symmetrized_vectors_in_tensor_square() {
        let rep = heisenberg_adjoint();
        let n = rep.space_dim();
        let t2 = tensor_product(&rep, &rep);
        let d = build_diagram(&rep, None);
        let sym = to_representation(&sym_sub(&d, 2, None).unwrap()).unwrap();
        let tuples: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        let symmetrized = |i: usize, j: usize| {
            let mut v = vec![Scalar::zero(); n * n];
            v[i * n + j] += int(1);
            v[j * n + i] += int(1);
            if i == j {
                // e_i (x) e_i appears once in the symmetrized basis vector.
                v[i * n + i] = int(1);
            }
            v
        };
        for a in 0..rep.algebra().dim() {
            for (s_idx, &(i, j)) in tuples.iter().enumerate() {
                let image = apply_tensor(&t2, a, &symmetrized(i, j));
                // The image must be the claimed combination of symmetrized
                // basis vectors.
                let mut expected = vec![Scalar::zero(); n * n];
                for (t_idx, &(k, l)) in tuples.iter().enumerate() {
                    let c = sym.matrix(a)[(t_idx, s_idx)].clone();
                    if c.is_zero() {
                        continue;
                    }
                    for (pos, val) in symmetrized(k, l).into_iter().enumerate() {
                        expected[pos] += &c * val;
                    }
                }
                assert_eq!(image, expected, "a = {a}, source ({i},{j})");
            }
        }
    }

    #[test]
    fn sym_quotient_commutes_with_projection() {
        // pi(T (x) T) = (S^2 T) pi where pi maps e_i (x) e_j to the
        // monomial e_i e_j.
        let rep = heisenberg_adjoint();
        let n = rep.space_dim();
        let t2 = tensor_product(&rep, &rep);
        let d = build_diagram(&rep, None);
        let s2 = to_representation(&sym_power(&d, 2, None).unwrap()).unwrap();
        let tuples: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        let proj = {
            let mut m = Mat::zeros(tuples.len(), n * n);
            for i in 0..n {
                for j in 0..n {
                    let key = (i.min(j), i.max(j));
                    let row = tuples.iter().position(|&t| t == key).unwrap();
                    m[(row, i * n + j)] = int(1);
                }
            }
            m
        };
        for a in 0..rep.algebra().dim() {
            assert_eq!(
                proj.mul(t2.matrix(a)),
                s2.matrix(a).mul(&proj),
                "a = {a}"
            );
        }
    }

    #[test]
    fn degree_bounds_rejected() {
        let d = build_diagram(&sl2_standard(), None);
        assert!(sym_power(&d, 0, None).is_err());
        assert!(ext_power(&d, 3, None).is_err());
        // Top exterior power is one-dimensional with the trace loop.
        let top = ext_power(&d, 2, None).unwrap();
        assert_eq!(top.vertex_count(), 1);
        // h + (-h) = 0: no loop survives.
        assert!(top.edges().is_empty());
    }
}
