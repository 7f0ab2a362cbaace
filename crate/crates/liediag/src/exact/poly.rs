//! Sparse multivariate polynomials in the free parameters `c_i`.
//! Terms are kept in a map keyed by monomial under graded lexicographic
//! order, so structural equality is canonical equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::scalar::{format_scalar, rational_gcd, Scalar};

/// A free parameter ranging over the nonzero elements of the base field.
/// Displayed as `c_<id>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Param(pub u32);

impl Param {
    pub fn name(&self) -> String {
        format!("c_{}", self.0)
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c_{}", self.0)
    }
}

/// Power product of parameters, stored as sorted (param id, exponent > 0)
/// pairs. The empty monomial is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn param(p: Param) -> Self {
        Monomial(vec![(p.0, 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(ia, ea)), Some(&&(ib, eb))) => match ia.cmp(&ib) {
                    Ordering::Less => {
                        out.push((ia, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((ib, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((ia, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&t), None) => {
                    out.push(t);
                    a.next();
                }
                (None, Some(&&t)) => {
                    out.push(t);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial(out)
    }

    /// Exact division; None if some exponent of `other` exceeds ours.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::new();
        let mut mine = self.0.iter().peekable();
        for &(id, e) in &other.0 {
            loop {
                match mine.peek() {
                    Some(&&(mid, me)) if mid < id => {
                        out.push((mid, me));
                        mine.next();
                    }
                    Some(&&(mid, me)) if mid == id => {
                        if me < e {
                            return None;
                        }
                        if me > e {
                            out.push((mid, me - e));
                        }
                        mine.next();
                        break;
                    }
                    _ => return None,
                }
            }
        }
        out.extend(mine.copied());
        Some(Monomial(out))
    }

    /// Componentwise minimum (greatest common monomial divisor).
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let mut j = 0;
        for &(id, e) in &self.0 {
            while j < other.0.len() && other.0[j].0 < id {
                j += 1;
            }
            if j < other.0.len() && other.0[j].0 == id {
                out.push((id, e.min(other.0[j].1)));
            }
        }
        Monomial(out)
    }
}

// Graded lexicographic by parameter index.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| {
                // Lex on the exponent vectors: smaller param index first;
                // a higher exponent on an earlier param wins.
                let (mut a, mut b) = (self.0.iter(), other.0.iter());
                loop {
                    match (a.next(), b.next()) {
                        (Some(&(ia, ea)), Some(&(ib, eb))) => {
                            match ia.cmp(&ib) {
                                // Present earlier param beats absent one.
                                Ordering::Less => return Ordering::Greater,
                                Ordering::Greater => return Ordering::Less,
                                Ordering::Equal => match ea.cmp(&eb) {
                                    Ordering::Equal => continue,
                                    ord => return ord,
                                },
                            }
                        }
                        (Some(_), None) => return Ordering::Greater,
                        (None, Some(_)) => return Ordering::Less,
                        (None, None) => return Ordering::Equal,
                    }
                }
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(id, e)| {
                if e == 1 {
                    format!("c_{id}")
                } else {
                    format!("c_{id}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial: monomial -> nonzero rational coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn param(p: Param) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::param(p), Scalar::one());
        Poly { terms }
    }

    pub fn term(c: Scalar, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Some(c) iff the polynomial is the constant c (including 0).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// A single term c * m with c != 0. Such polynomials never vanish when
    /// the parameters range over nonzero field elements.
    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading (largest) monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = out.entry(m.clone()).or_insert_with(Scalar::zero);
            *entry += c;
            if entry.is_zero() {
                out.remove(m);
            }
        }
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = out.entry(m.clone()).or_insert_with(Scalar::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    out.remove(&m);
                }
            }
        }
        Poly { terms: out }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Exact multivariate division; None when the division is not exact.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (dlm, dlc) = d.leading()?;
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((rlm, rlc)) = r.leading() {
            let m = rlm.div(dlm)?;
            let t = Poly::term(rlc / dlc, m);
            q = q.add(&t);
            r = r.sub(&t.mul(d));
        }
        Some(q)
    }

    /// Positive gcd of all coefficients; 0 for the zero polynomial.
    pub fn content(&self) -> Scalar {
        let mut g = Scalar::zero();
        for c in self.terms.values() {
            g = rational_gcd(&g, c);
        }
        g
    }

    /// Divides out the content and fixes the leading coefficient positive.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().1.is_negative() {
            g = -g;
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c / &g))
                .collect(),
        }
    }

    /// Greatest common monomial factor of all terms (1 for zero).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let mut g = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        for m in it {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Substitutes a value for every parameter.
    pub fn eval(&self, values: &dyn Fn(Param) -> Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(id, e) in &m.0 {
                let x = values(Param(id));
                for _ in 0..e {
                    v *= &x;
                }
            }
            out += v;
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // Largest term first.
        for (m, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_one() {
                write!(f, "{}", format_scalar(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_scalar(&mag))?;
            }
        }
        Ok(())
    }
}
