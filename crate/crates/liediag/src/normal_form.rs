//! Orbit normal forms for strictly triangular representations.
//!
//! The group generated by exp T(l) acts on the module; every orbit contains
//! a unique lowest point under the coordinate quasi-ordering. This module
//! checks normality of concrete vectors, reduces a vector to its normal
//! form with a transcript of group elements, constructs the parameterized
//! normal form in general position, and enumerates all normal-form
//! patterns by repeatedly zeroing the last free coordinate.

use std::collections::BTreeSet;

use num::{One, Zero};

use crate::diagram::Diagram;
use crate::exact::linalg::{solve_transversal, span_membership, SpanMode, SpanResult};
use crate::exact::linform::LinForm;
use crate::exact::mat::Mat;
use crate::exact::poly::{Param, Poly};
use crate::exact::scalar::Scalar;
use crate::{Error, Result};

/// Result of comparing two vectors in the coordinate quasi-ordering:
/// x is below y when every coordinate where x is nonzero but y vanishes is
/// preceded (weakly) by one where x vanishes but y does not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Equivalent,
    Less,
    Greater,
    Incomparable,
}

fn below(x: &[Scalar], y: &[Scalar]) -> bool {
    for j in 0..x.len() {
        if !x[j].is_zero() && y[j].is_zero() {
            let ok = (0..=j).any(|i| x[i].is_zero() && !y[i].is_zero());
            if !ok {
                return false;
            }
        }
    }
    true
}

pub fn compare(x: &[Scalar], y: &[Scalar]) -> Result<Comparison> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(match (below(x, y), below(y, x)) {
        (true, true) => Comparison::Equivalent,
        (true, false) => Comparison::Less,
        (false, true) => Comparison::Greater,
        (false, false) => Comparison::Incomparable,
    })
}

fn require_strict(d: &Diagram) -> Result<()> {
    if let Some((i, j)) = d.strictness_violation() {
        return Err(Error::NotStrictlyTriangular(i, j));
    }
    for w in d.edges().values() {
        if !w.is_concrete() {
            return Err(Error::ParameterizedInput);
        }
    }
    Ok(())
}

fn check_vector_len(d: &Diagram, len: usize) -> Result<()> {
    if len != d.vertex_count() {
        return Err(Error::DimensionMismatch {
            expected: d.vertex_count(),
            got: len,
        });
    }
    Ok(())
}

/// Incoming edges grouped by target vertex.
fn incoming(d: &Diagram) -> Vec<Vec<(usize, &LinForm)>> {
    let mut inc = vec![Vec::new(); d.vertex_count()];
    for (&(i, j), w) in d.edges() {
        inc[j].push((i, w));
    }
    inc
}

/// The linear forms l -> (T(l) x)_k for a concrete vector x:
/// (T(l) x)_k = sum over edges (i, k) of x_i w(i, k)(l).
pub fn action_forms(d: &Diagram, x: &[Scalar]) -> Result<Vec<LinForm>> {
    require_strict(d)?;
    check_vector_len(d, x.len())?;
    let adim = d.algebra().dim();
    let inc = incoming(d);
    Ok((0..x.len())
        .map(|k| {
            let mut form = LinForm::zero(adim);
            for &(i, w) in &inc[k] {
                if !x[i].is_zero() {
                    form = form.add(&w.scale_scalar(&x[i])).expect("same algebra");
                }
            }
            form
        })
        .collect())
}

/// Matrix of T(l) read off the diagram: entry (j, i) is w(i, j)(l).
pub fn action_matrix(d: &Diagram, l: &[Scalar]) -> Result<Mat> {
    require_strict(d)?;
    if l.len() != d.algebra().dim() {
        return Err(Error::DimensionMismatch {
            expected: d.algebra().dim(),
            got: l.len(),
        });
    }
    let n = d.vertex_count();
    let mut m = Mat::zeros(n, n);
    for (&(i, j), w) in d.edges() {
        m[(j, i)] = w.eval(l)?.as_constant().expect("concrete labels");
    }
    Ok(m)
}

/// exp T(tl) computed as the exponential of the nilpotent matrix t T(l).
pub fn exp_action(d: &Diagram, l: &[Scalar], t: &Scalar) -> Result<Mat> {
    let m = action_matrix(d, l)?.scale(t);
    let n = d.vertex_count();
    let mut out = Mat::identity(n);
    let mut power = Mat::identity(n);
    let mut factorial = Scalar::one();
    for q in 1..=n {
        power = power.mul(&m);
        if power.is_zero() {
            break;
        }
        factorial = factorial * Scalar::from_integer(q.into());
        out = out.add(&power.scale(&(Scalar::one() / &factorial)));
    }
    Ok(out)
}

/// Walk matrix of the diagram at t l: entry (i, j) sums t^n/n! times the
/// weight products over all length-n walks from i to j. Its transpose is
/// exp T(tl); kept as an independent route for cross-checking.
pub fn walk_matrix(d: &Diagram, l: &[Scalar], t: &Scalar) -> Result<Mat> {
    require_strict(d)?;
    let n = d.vertex_count();
    // One-step weights: step[(i, j)] = w(i, j)(l).
    let step = action_matrix(d, l)?.transpose();
    let mut out = Mat::identity(n);
    let mut walks = Mat::identity(n);
    let mut factor = Scalar::one();
    for q in 1..=n {
        walks = walks.mul(&step);
        if walks.is_zero() {
            break;
        }
        factor = factor * (t / Scalar::from_integer(q.into()));
        out = out.add(&walks.scale(&factor));
    }
    Ok(out)
}

/// Which earlier forms span the test space in the normality criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpanVariant {
    /// Forms at earlier zero coordinates only; this matches the group
    /// action, which only needs to preserve earlier zeros.
    ZeroPositions,
    /// Forms at all earlier coordinates. The two variants agree on every
    /// reachable vector; tests assert this on all instances they touch.
    #[default]
    AllEarlier,
}

#[derive(Debug, Clone)]
pub struct NormalCheck {
    pub normal: bool,
    /// First coordinate whose nonzero value can be removed.
    pub failing: Option<usize>,
}

/// Checks whether x is the lowest point of its orbit: for every k with
/// x_k != 0 the form (T(l) x)_k must lie in the span of the earlier forms.
pub fn is_normal_form(d: &Diagram, x: &[Scalar], variant: SpanVariant) -> Result<NormalCheck> {
    let forms = action_forms(d, x)?;
    for k in 0..x.len() {
        if x[k].is_zero() {
            continue;
        }
        let basis: Vec<LinForm> = (0..k)
            .filter(|&i| variant == SpanVariant::AllEarlier || x[i].is_zero())
            .map(|i| forms[i].clone())
            .collect();
        if !span_membership(&basis, &forms[k], SpanMode::Concrete)?.is_in_span() {
            return Ok(NormalCheck {
                normal: false,
                failing: Some(k),
            });
        }
    }
    Ok(NormalCheck {
        normal: true,
        failing: None,
    })
}

/// One group element of the reduction: exp T(t l).
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub l: Vec<Scalar>,
    pub t: Scalar,
    /// Coordinate the step zeroes.
    pub cleared: usize,
}

#[derive(Debug, Clone)]
pub struct Reduction {
    pub normal: Vec<Scalar>,
    pub steps: Vec<ReductionStep>,
}

impl Reduction {
    /// Re-applies the recorded group elements to `start`; the result must
    /// reproduce `normal` when `start` is the vector that was reduced.
    pub fn replay(&self, d: &Diagram, start: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut x = start.to_vec();
        for step in &self.steps {
            x = exp_action(d, &step.l, &step.t)?.mul_vec(&x);
        }
        Ok(x)
    }
}

/// Moves x to the lowest point of its orbit. Each step zeroes the first
/// removable nonzero coordinate with exp T(-x_k l) where l annihilates all
/// earlier forms and gives the form at k value 1.
pub fn reduce(d: &Diagram, x: &[Scalar]) -> Result<Reduction> {
    require_strict(d)?;
    check_vector_len(d, x.len())?;
    let mut current = x.to_vec();
    let mut steps = Vec::new();
    'outer: loop {
        let forms = action_forms(d, &current)?;
        for k in 0..current.len() {
            if current[k].is_zero() {
                continue;
            }
            let annihilate: Vec<LinForm> = forms[..k].to_vec();
            let Some(l) = solve_transversal(&annihilate, &forms[k])? else {
                continue;
            };
            // Every earlier form vanishes at l, so exp T(-x_k l) zeroes
            // exactly this coordinate and keeps everything before it.
            let t = -&current[k];
            let next = exp_action(d, &l, &t)?.mul_vec(&current);
            debug_assert!(next[k].is_zero());
            debug_assert_eq!(next[..k], current[..k]);
            steps.push(ReductionStep { l, t, cleared: k });
            current = next;
            continue 'outer;
        }
        break;
    }
    Ok(Reduction {
        normal: current,
        steps,
    })
}

/// A coordinate of a normal-form pattern: identically zero or a free
/// nonzero parameter, named after its position (c_1 for the first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coord {
    Zero,
    Free(Param),
}

/// A parameterized family of normal forms: each free coordinate ranges over
/// the nonzero field elements, subject to the recorded inequations
/// (`conditions` nonzero) and equations (`constraints` zero).
#[derive(Debug, Clone, PartialEq)]
pub struct Pattern {
    pub coords: Vec<Coord>,
    /// (position, memorized form) pairs from the construction.
    pub memorized: Vec<(usize, LinForm)>,
    /// Polynomials in the parameters assumed nonzero.
    pub conditions: Vec<Poly>,
    /// Polynomials in the parameters required to vanish (only under
    /// stratified enumeration).
    pub constraints: Vec<Poly>,
}

impl Pattern {
    pub fn free_positions(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter_map(|(p, c)| matches!(c, Coord::Free(_)).then_some(p))
            .collect()
    }

    pub fn free_mask(&self) -> BTreeSet<usize> {
        self.free_positions().into_iter().collect()
    }

    pub fn last_free(&self) -> Option<usize> {
        self.free_positions().last().copied()
    }

    pub fn is_zero_pattern(&self) -> bool {
        self.coords.iter().all(|c| matches!(c, Coord::Zero))
    }

    /// Concrete representative: `values[i]` is assigned to the i-th free
    /// coordinate (must be nonzero).
    pub fn instantiate(&self, values: &[Scalar]) -> Result<Vec<Scalar>> {
        let free = self.free_positions();
        if values.len() != free.len() {
            return Err(Error::DimensionMismatch {
                expected: free.len(),
                got: values.len(),
            });
        }
        if values.iter().any(|v| v.is_zero()) {
            return Err(Error::InvalidArgument(
                "free coordinates must be nonzero".into(),
            ));
        }
        let mut x = vec![Scalar::zero(); self.coords.len()];
        for (pos, v) in free.into_iter().zip(values) {
            x[pos] = v.clone();
        }
        Ok(x)
    }
}

fn merge_polys(into: &mut Vec<Poly>, from: &[Poly]) {
    for p in from {
        if !into.contains(p) {
            into.push(p.clone());
        }
    }
}

struct Builder {
    coords: Vec<Coord>,
    memorized: Vec<(usize, LinForm)>,
    conditions: Vec<Poly>,
    constraints: Vec<Poly>,
}

impl Builder {
    fn snapshot(&self) -> Builder {
        Builder {
            coords: self.coords.clone(),
            memorized: self.memorized.clone(),
            conditions: self.conditions.clone(),
            constraints: self.constraints.clone(),
        }
    }

    fn finish(self) -> Pattern {
        Pattern {
            coords: self.coords,
            memorized: self.memorized,
            conditions: self.conditions,
            constraints: self.constraints,
        }
    }
}

/// Runs the general-position construction from position `coords.len()` to
/// the end, honouring the decisions already in `forced` for the leading
/// positions. Returns one pattern, or several under stratification when a
/// span decision hinges on a multi-term pivot.
fn extend(
    d: &Diagram,
    inc: &[Vec<(usize, &LinForm)>],
    forced: &[Coord],
    mut b: Builder,
    stratify: bool,
    out: &mut Vec<Pattern>,
) -> Result<()> {
    let n = d.vertex_count();
    let mode = if stratify {
        SpanMode::GenericStratified
    } else {
        SpanMode::Generic
    };
    while b.coords.len() < n {
        let p = b.coords.len();
        let mut form = LinForm::zero(d.algebra().dim());
        for &(i, w) in &inc[p] {
            if let Coord::Free(param) = &b.coords[i] {
                form = form
                    .add(&w.scale(&Poly::param(*param)))
                    .expect("same algebra");
            }
        }
        let basis: Vec<LinForm> = b.memorized.iter().map(|(_, f)| f.clone()).collect();
        let decision = span_membership(&basis, &form, mode)?;
        match decision {
            SpanResult::InSpan { conditions, .. } => {
                merge_polys(&mut b.conditions, &conditions);
                match forced.get(p) {
                    Some(Coord::Zero) => b.coords.push(Coord::Zero),
                    _ => b.coords.push(Coord::Free(Param(p as u32 + 1))),
                }
            }
            SpanResult::NotInSpan { conditions, .. } => {
                debug_assert!(
                    !matches!(forced.get(p), Some(Coord::Free(_))),
                    "coordinate {p} forced free but its form left the span"
                );
                merge_polys(&mut b.conditions, &conditions);
                b.memorized.push((p, form));
                b.coords.push(Coord::Zero);
            }
            SpanResult::Conditional { pivot } => match forced.get(p) {
                Some(Coord::Zero) => {
                    merge_polys(&mut b.conditions, &[pivot]);
                    b.memorized.push((p, form));
                    b.coords.push(Coord::Zero);
                }
                Some(Coord::Free(_)) => {
                    merge_polys(&mut b.constraints, &[pivot]);
                    b.coords.push(Coord::Free(Param(p as u32 + 1)));
                }
                None => {
                    // Generic branch: the pivot is nonzero, the form is
                    // independent, the coordinate is zeroed.
                    let mut generic = b.snapshot();
                    merge_polys(&mut generic.conditions, &[pivot.clone()]);
                    generic.memorized.push((p, form.clone()));
                    generic.coords.push(Coord::Zero);
                    extend(d, inc, forced, generic, stratify, out)?;
                    // Special branch: on the vanishing locus the form is
                    // dependent and the coordinate stays free.
                    merge_polys(&mut b.constraints, &[pivot]);
                    b.coords.push(Coord::Free(Param(p as u32 + 1)));
                }
            },
        }
    }
    out.push(b.finish());
    Ok(())
}

fn run_construction(d: &Diagram, forced: &[Coord], stratify: bool) -> Result<Vec<Pattern>> {
    require_strict(d)?;
    let inc = incoming(d);
    let b = Builder {
        coords: Vec::new(),
        memorized: Vec::new(),
        conditions: Vec::new(),
        constraints: Vec::new(),
    };
    let mut out = Vec::new();
    extend(d, &inc, forced, b, stratify, &mut out)?;
    Ok(out)
}

/// The normal form in a general position: the first coordinate is free and
/// each later coordinate is zeroed (memorizing its form) exactly when the
/// form escapes the span of the memorized ones.
pub fn general_position(d: &Diagram, stratify: bool) -> Result<Vec<Pattern>> {
    run_construction(d, &[], stratify)
}

/// All normal-form patterns: starting from the general position, repeatedly
/// zero the last free coordinate of a pattern and rerun the construction on
/// the tail, keeping the memorized forms of the prefix, until the zero
/// pattern is reached.
pub fn enumerate_normal_forms(d: &Diagram, stratify: bool) -> Result<Vec<Pattern>> {
    let mut out: Vec<Pattern> = Vec::new();
    let mut seen: BTreeSet<(Vec<bool>, Vec<String>)> = BTreeSet::new();
    let mut work: Vec<Pattern> = general_position(d, stratify)?;
    while let Some(pat) = work.pop() {
        let key = (
            pat.coords
                .iter()
                .map(|c| matches!(c, Coord::Free(_)))
                .collect(),
            pat.constraints.iter().map(|p| p.to_string()).collect(),
        );
        if !seen.insert(key) {
            continue;
        }
        if let Some(k) = pat.last_free() {
            let mut forced: Vec<Coord> = pat.coords[..=k].to_vec();
            forced[k] = Coord::Zero;
            work.extend(run_construction(d, &forced, stratify)?);
        }
        out.push(pat);
    }
    // Canonical order: free masks descending lexicographically from the
    // first coordinate; the unstratified enumeration produces a chain that
    // strictly descends in this order.
    out.sort_by(|a, b| {
        let ka: Vec<bool> = a.coords.iter().map(|c| matches!(c, Coord::Free(_))).collect();
        let kb: Vec<bool> = b.coords.iter().map(|c| matches!(c, Coord::Free(_))).collect();
        kb.cmp(&ka).then_with(|| a.constraints.len().cmp(&b.constraints.len()))
    });
    Ok(out)
}
