//! Span and rank decisions over the fraction field of the parameter ring.
//!
//! Two independent routes are kept on purpose: `span_membership` works by
//! Gaussian elimination over rational functions, `generic_rank` by
//! fraction-free (Bareiss) elimination over polynomials. Pivots that are a
//! single term c*m in the parameters never vanish (parameters range over
//! nonzero field elements), so only multi-term pivots are surfaced as
//! genericity conditions.

use std::fmt;

use num::{One, Zero};

use super::linform::LinForm;
use super::poly::Poly;
use super::scalar::Scalar;
use crate::{Error, Result};

/// Quotient of two polynomials, denominator nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_scalar(c: Scalar) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc { num, den }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        // Full cancellation when the division happens to be exact.
        if let Some(q) = self.num.div_exact(&self.den) {
            return RatFunc {
                num: q,
                den: Poly::one(),
            };
        }
        // Otherwise cancel the common monomial factor and scalar content.
        let m = self.num.monomial_content().gcd(&self.den.monomial_content());
        if !m.is_one() {
            let mp = Poly::term(Scalar::one(), m);
            self.num = self.num.div_exact(&mp).unwrap();
            self.den = self.den.div_exact(&mp).unwrap();
        }
        let scale = {
            let d = self.den.primitive();
            // den = content * primitive; divide both by content.
            self.den.div_exact(&d).unwrap().as_constant().unwrap()
        };
        RatFunc {
            num: self.num.scale(&(Scalar::one() / &scale)),
            den: self.den.scale(&(Scalar::one() / &scale)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RatFunc) -> RatFunc {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Some(c) iff the value is a rational constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map_or(false, |c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpanMode {
    /// All coefficients must be rational constants.
    Concrete,
    /// Parameters treated as algebraically independent.
    Generic,
    /// As Generic, but a decision that flips across the vanishing locus of a
    /// multi-term pivot is reported as `Conditional` instead of resolved.
    GenericStratified,
}

#[derive(Debug, Clone)]
pub enum SpanResult {
    InSpan {
        /// Coefficients expressing the target in the given basis.
        certificate: Vec<RatFunc>,
        /// Multi-term pivot polynomials assumed nonzero.
        conditions: Vec<Poly>,
    },
    NotInSpan {
        /// Concrete vector annihilating the basis but not the target, when
        /// one with constant entries exists.
        witness: Option<Vec<Scalar>>,
        conditions: Vec<Poly>,
    },
    Conditional {
        /// The answer is NotInSpan for pivot != 0 and flips on pivot = 0.
        pivot: Poly,
    },
}

impl SpanResult {
    pub fn is_in_span(&self) -> bool {
        matches!(self, SpanResult::InSpan { .. })
    }
}

fn push_condition(conditions: &mut Vec<Poly>, p: &Poly) {
    let prim = p.primitive();
    if prim.is_single_term() || prim.is_constant() {
        return; // never vanishes for parameters in f*
    }
    if !conditions.contains(&prim) {
        conditions.push(prim);
    }
}

struct Echelon {
    /// Echelon rows as dense RatFunc vectors, paired with their expression
    /// in the original basis.
    rows: Vec<(Vec<RatFunc>, Vec<RatFunc>)>,
    /// (column, row index) pairs, in column order.
    pivots: Vec<(usize, usize)>,
    conditions: Vec<Poly>,
}

fn echelonize(basis: &[LinForm], dim: usize) -> Echelon {
    let nb = basis.len();
    let mut rows: Vec<(Vec<RatFunc>, Vec<RatFunc>)> = basis
        .iter()
        .enumerate()
        .map(|(r, f)| {
            let mut v = vec![RatFunc::zero(); dim];
            for (i, p) in f.iter() {
                v[i] = RatFunc::from_poly(p.clone());
            }
            let mut combo = vec![RatFunc::zero(); nb];
            combo[r] = RatFunc::from_scalar(Scalar::one());
            (v, combo)
        })
        .collect();

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut conditions = Vec::new();
    let mut is_pivot_row = vec![false; rows.len()];

    for col in 0..dim {
        // Prefer a single-term pivot so no spurious condition is recorded.
        let candidate = {
            let mut best: Option<usize> = None;
            for (r, (v, _)) in rows.iter().enumerate() {
                if is_pivot_row[r] || v[col].is_zero() {
                    continue;
                }
                if v[col].num().is_single_term() {
                    best = Some(r);
                    break;
                }
                if best.is_none() {
                    best = Some(r);
                }
            }
            best
        };
        let Some(pr) = candidate else { continue };
        push_condition(&mut conditions, rows[pr].0[col].num());
        is_pivot_row[pr] = true;
        pivots.push((col, pr));
        let pivot_row = rows[pr].clone();
        let pivot_val = pivot_row.0[col].clone();
        for (r, (v, combo)) in rows.iter_mut().enumerate() {
            if is_pivot_row[r] || v[col].is_zero() {
                continue;
            }
            let factor = v[col].div(&pivot_val);
            for c in 0..dim {
                v[c] = v[c].sub(&factor.mul(&pivot_row.0[c]));
            }
            for c in 0..combo.len() {
                combo[c] = combo[c].sub(&factor.mul(&pivot_row.1[c]));
            }
        }
    }

    Echelon {
        rows,
        pivots,
        conditions,
    }
}

/// Decides whether `target` lies in the span of `basis` over the fraction
/// field of the parameter ring.
pub fn span_membership(basis: &[LinForm], target: &LinForm, mode: SpanMode) -> Result<SpanResult> {
    let dim = target.dim();
    for f in basis {
        if f.dim() != dim {
            return Err(Error::AlgebraMismatch(f.dim(), dim));
        }
    }
    if mode == SpanMode::Concrete {
        if !target.is_concrete() || basis.iter().any(|f| !f.is_concrete()) {
            return Err(Error::ParameterizedInput);
        }
    }

    let ech = echelonize(basis, dim);
    let mut conditions = ech.conditions.clone();

    // Reduce the target against the echelon, tracking the combination.
    let mut t: Vec<RatFunc> = (0..dim)
        .map(|i| RatFunc::from_poly(target.coeff(i)))
        .collect();
    let mut cert = vec![RatFunc::zero(); basis.len()];
    for &(col, pr) in &ech.pivots {
        if t[col].is_zero() {
            continue;
        }
        let factor = t[col].div(&ech.rows[pr].0[col]);
        for c in 0..dim {
            t[c] = t[c].sub(&factor.mul(&ech.rows[pr].0[c]));
        }
        for c in 0..basis.len() {
            cert[c] = cert[c].add(&factor.mul(&ech.rows[pr].1[c]));
        }
    }

    if t.iter().all(|x| x.is_zero()) {
        return Ok(SpanResult::InSpan {
            certificate: cert,
            conditions,
        });
    }

    // Residual nonzero: generically not in span. The residual is only
    // trusted where its numerators do not vanish; multi-term numerators
    // become conditions, and under stratification they flip the answer.
    let residual_nums: Vec<Poly> = t
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| x.num().primitive())
        .collect();
    let all_multi_term = residual_nums.iter().all(|p| !p.is_single_term());
    if mode == SpanMode::GenericStratified && all_multi_term {
        return Ok(SpanResult::Conditional {
            pivot: residual_nums[0].clone(),
        });
    }
    for p in &residual_nums {
        push_condition(&mut conditions, p);
    }

    let witness = not_in_span_witness(&ech, &t, dim);
    Ok(SpanResult::NotInSpan {
        witness,
        conditions,
    })
}

/// Constructs l with basis(l) = 0 and target(l) != 0, when one with constant
/// rational entries exists: put 1 on a free column carrying residual, 0 on
/// the other free columns, and back-substitute through the pivot rows.
fn not_in_span_witness(ech: &Echelon, residual: &[RatFunc], dim: usize) -> Option<Vec<Scalar>> {
    let free_col = (0..dim).find(|&c| {
        !residual[c].is_zero() && !ech.pivots.iter().any(|&(pc, _)| pc == c)
    })?;
    let mut l = vec![RatFunc::zero(); dim];
    l[free_col] = RatFunc::from_scalar(Scalar::one());
    for &(col, pr) in ech.pivots.iter().rev() {
        let row = &ech.rows[pr].0;
        let mut s = RatFunc::zero();
        for c in (col + 1)..dim {
            if !row[c].is_zero() && !l[c].is_zero() {
                s = s.add(&row[c].mul(&l[c]));
            }
        }
        l[col] = s.neg().div(&row[col]);
    }
    l.into_iter().map(|x| x.as_constant()).collect()
}

/// Rank over the fraction field by fraction-free (Bareiss) elimination.
/// Returns the rank together with the multi-term pivot polynomials whose
/// nonvanishing the rank assumes.
pub fn generic_rank(matrix: &[Vec<Poly>]) -> (usize, Vec<Poly>) {
    let rows = matrix.len();
    if rows == 0 {
        return (0, Vec::new());
    }
    let cols = matrix[0].len();
    let mut a: Vec<Vec<Poly>> = matrix.to_vec();
    let mut conditions = Vec::new();
    let mut prev = Poly::one();
    let mut rank = 0;

    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = {
            let mut best: Option<usize> = None;
            for (r, row) in a.iter().enumerate().skip(rank) {
                if row[col].is_zero() {
                    continue;
                }
                if row[col].is_single_term() {
                    best = Some(r);
                    break;
                }
                if best.is_none() {
                    best = Some(r);
                }
            }
            best
        };
        let Some(pr) = pivot else { continue };
        a.swap(rank, pr);
        push_condition(&mut conditions, &a[rank][col]);
        let pv = a[rank][col].clone();
        for i in (rank + 1)..rows {
            let head = a[i][col].clone();
            for j in (col + 1)..cols {
                let t = pv.mul(&a[i][j]).sub(&head.mul(&a[rank][j]));
                a[i][j] = t
                    .div_exact(&prev)
                    .expect("fraction-free elimination: inexact division");
            }
            a[i][col] = Poly::zero();
        }
        prev = pv;
        rank += 1;
    }
    (rank, conditions)
}

/// Solves f(l) = 0 for every f in `annihilate` and hit(l) = 1 over exact
/// rationals. None iff hit lies in the span of the annihilated forms.
pub fn solve_transversal(annihilate: &[LinForm], hit: &LinForm) -> Result<Option<Vec<Scalar>>> {
    let dim = hit.dim();
    for f in annihilate {
        if f.dim() != dim {
            return Err(Error::AlgebraMismatch(f.dim(), dim));
        }
        if !f.is_concrete() {
            return Err(Error::ParameterizedInput);
        }
    }
    if !hit.is_concrete() {
        return Err(Error::ParameterizedInput);
    }

    let to_row = |f: &LinForm| -> Vec<Scalar> {
        (0..dim)
            .map(|i| f.coeff(i).as_constant().unwrap())
            .collect()
    };
    let mut rows: Vec<(Vec<Scalar>, Scalar)> =
        annihilate.iter().map(|f| (to_row(f), Scalar::zero())).collect();
    rows.push((to_row(hit), Scalar::one()));

    // Ordinary Gaussian elimination with the right-hand side attached.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r0 = 0;
    for col in 0..dim {
        let Some(pr) = (r0..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(r0, pr);
        let (pivot_row, pivot_rhs) = rows[r0].clone();
        let pv = pivot_row[col].clone();
        for (row, rhs) in rows.iter_mut().skip(r0 + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &pv;
            for c in col..dim {
                let d = &factor * &pivot_row[c];
                row[c] -= d;
            }
            *rhs -= &factor * &pivot_rhs;
        }
        pivots.push((col, r0));
        r0 += 1;
    }
    // Inconsistent iff a zero row has nonzero rhs; that happens exactly when
    // hit is in the span of the annihilated forms.
    for (row, rhs) in rows.iter().skip(r0) {
        debug_assert!(row.iter().all(|x| x.is_zero()));
        if !rhs.is_zero() {
            return Ok(None);
        }
    }
    // Back-substitute with free variables set to 0.
    let mut l = vec![Scalar::zero(); dim];
    for &(col, pr) in pivots.iter().rev() {
        let (row, rhs) = &rows[pr];
        let mut s = rhs.clone();
        for c in (col + 1)..dim {
            if !row[c].is_zero() {
                s -= &row[c] * &l[c];
            }
        }
        l[col] = s / &row[col];
    }
    Ok(Some(l))
}
