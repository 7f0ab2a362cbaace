//! Built-in algebra and representation families, plus closed-form
//! predictions of the normal-form patterns for the truncated Witt
//! coadjoint modules and the tensor-density modules. The predictions are
//! what the `verify` sweeps compare the generic enumeration against.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::{One, Signed, Zero};

use crate::exact::mat::Mat;
use crate::exact::scalar::{int, parse_scalar, Scalar};
use crate::lie::{adjoint, coadjoint, LieAlgebra, Representation};
use crate::{Error, Result};

/// Heisenberg algebra: [X, Y] = Z.
pub fn heisenberg() -> Arc<LieAlgebra> {
    let mut br = BTreeMap::new();
    br.insert((0, 1), vec![int(0), int(0), int(1)]);
    Arc::new(LieAlgebra::new(vec!["X".into(), "Y".into(), "Z".into()], br).unwrap())
}

/// sl(2) with basis (X_+, X_-, H): [X_+, X_-] = H, [X_+, H] = 2 X_+,
/// [X_-, H] = -2 X_-.
pub fn sl2() -> Arc<LieAlgebra> {
    let mut br = BTreeMap::new();
    br.insert((0, 1), vec![int(0), int(0), int(1)]);
    br.insert((0, 2), vec![int(2), int(0), int(0)]);
    br.insert((1, 2), vec![int(0), int(-2), int(0)]);
    Arc::new(
        LieAlgebra::new(vec!["X_+".into(), "X_-".into(), "H".into()], br).unwrap(),
    )
}

/// The standard 2-dimensional sl(2) module on basis (u, v):
/// X_+ v = u, X_- u = -v, H = diag(1, -1).
pub fn sl2_standard() -> Representation {
    let mut xp = Mat::zeros(2, 2);
    xp[(1, 0)] = int(1);
    let mut xm = Mat::zeros(2, 2);
    xm[(0, 1)] = int(-1);
    let mut h = Mat::zeros(2, 2);
    h[(0, 0)] = int(1);
    h[(1, 1)] = int(-1);
    let rep = Representation::new(sl2(), vec!["u".into(), "v".into()], vec![xp, xm, h]);
    debug_assert!(rep.validate().is_ok());
    rep
}

fn upper_pair_label(prefix: &str, i: usize, j: usize, n: usize) -> String {
    if n < 10 {
        format!("{prefix}_{i}{j}")
    } else {
        format!("{prefix}_{i}_{j}")
    }
}

/// Ordered basis of the strictly upper triangular n x n matrices: rows from
/// the bottom up, columns ascending. For n = 4 this is
/// A_34, A_23, A_24, A_12, A_13, A_14.
fn upper_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in (1..n).rev() {
        for j in (i + 1)..=n {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Strictly upper triangular n x n matrices under the commutator, n >= 2.
pub fn upper_algebra(n: usize) -> Result<Arc<LieAlgebra>> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "upper triangular algebra needs n >= 2, got {n}"
        )));
    }
    let pairs = upper_pairs(n);
    let index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(p, &e)| (e, p)).collect();
    let dim = pairs.len();
    let mut brackets = BTreeMap::new();
    for (p, &(a, b)) in pairs.iter().enumerate() {
        for (q, &(c, d)) in pairs.iter().enumerate().skip(p + 1) {
            // [E_ab, E_cd] = d_bc E_ad - d_da E_cb
            let mut v = vec![Scalar::zero(); dim];
            if b == c {
                v[index[&(a, d)]] += Scalar::one();
            }
            if d == a {
                v[index[&(c, b)]] -= Scalar::one();
            }
            if v.iter().any(|x| !x.is_zero()) {
                brackets.insert((p, q), v);
            }
        }
    }
    let labels = pairs
        .iter()
        .map(|&(i, j)| upper_pair_label("A", i, j, n))
        .collect();
    let duals = pairs
        .iter()
        .map(|&(i, j)| upper_pair_label("a", i, j, n))
        .collect();
    Ok(Arc::new(LieAlgebra::with_dual_labels(labels, duals, brackets)?))
}

pub fn upper_adjoint(n: usize) -> Result<Representation> {
    Ok(adjoint(&upper_algebra(n)?))
}

/// Coadjoint module of the strictly upper triangular matrices with the
/// coordinates ordered as the reversal of the adjoint basis (a_1n first,
/// a_{n-1,n} last); this ordering makes the diagram strictly triangular.
pub fn upper_coadjoint(n: usize) -> Result<Representation> {
    let alg = upper_algebra(n)?;
    let dim = alg.dim();
    let perm: Vec<usize> = (0..dim).rev().collect();
    Ok(coadjoint(&alg).permuted(&perm))
}

/// Nilpotent truncation of the positive part of the Witt algebra: basis
/// l_{m+1}, ..., l_n with [l_i, l_j] = (j - i) l_{i+j}, terms above l_n
/// dropped.
pub fn witt_algebra(m: usize, n: usize) -> Result<Arc<LieAlgebra>> {
    if n < m + 1 {
        return Err(Error::InvalidArgument(format!(
            "witt truncation needs n >= m + 1, got m = {m}, n = {n}"
        )));
    }
    let lo = m + 1;
    let dim = n - m;
    let mut brackets = BTreeMap::new();
    for p in 0..dim {
        for q in (p + 1)..dim {
            let (i, j) = (lo + p, lo + q);
            if i + j <= n {
                let mut v = vec![Scalar::zero(); dim];
                v[i + j - lo] = int((j - i) as i64);
                brackets.insert((p, q), v);
            }
        }
    }
    let labels = (lo..=n).map(|i| format!("l_{i}")).collect();
    let duals = (lo..=n).map(|i| format!("y_{i}")).collect();
    Ok(Arc::new(LieAlgebra::with_dual_labels(labels, duals, brackets)?))
}

/// Coadjoint module of the truncated Witt algebra with coordinates ordered
/// y_n, y_{n-1}, ..., y_{m+1}; this ordering makes the diagram strictly
/// triangular.
pub fn witt_coadjoint(m: usize, n: usize) -> Result<Representation> {
    let alg = witt_algebra(m, n)?;
    let dim = alg.dim();
    let perm: Vec<usize> = (0..dim).rev().collect();
    Ok(coadjoint(&alg).permuted(&perm))
}

/// Formal tensor densities t^(j+mu) (dt)^(-lambda) truncated at degree
/// `cap`, as a module over the truncated Witt algebra with lowest degree
/// m + 1: l_i e_j = (j + mu - (i + 1) lambda) e_{i+j}, with e_k = 0 for
/// k > cap. Basis e_0, ..., e_cap.
pub fn tensor_field(lambda: &Scalar, mu: &Scalar, m: usize, cap: usize) -> Result<Representation> {
    let n_alg = std::cmp::max(cap, m + 1);
    let alg = witt_algebra(m, n_alg)?;
    let dim = cap + 1;
    let lo = m + 1;
    let matrices = (0..alg.dim())
        .map(|a| {
            let i = lo + a;
            Mat::from_fn(dim, dim, |row, col| {
                if row == col + i {
                    mu + int(col as i64) - lambda * int(i as i64 + 1)
                } else {
                    Scalar::zero()
                }
            })
        })
        .collect();
    let labels = (0..=cap).map(|j| format!("e_{j}")).collect();
    Ok(Representation::new(alg, labels, matrices))
}

fn power_set(opts: &[usize]) -> Vec<BTreeSet<usize>> {
    let mut out = vec![BTreeSet::new()];
    for &o in opts {
        let mut extended: Vec<BTreeSet<usize>> = out
            .iter()
            .map(|s| {
                let mut t = s.clone();
                t.insert(o);
                t
            })
            .collect();
        out.append(&mut extended);
    }
    out
}

/// Closed-form set of free-coordinate masks for the normal-form orbits of
/// the witt_coadjoint(m, n) module. Positions are 0-based in the canonical
/// order y_n, y_{n-1}, ..., y_{m+1}.
pub fn predicted_witt_patterns(m: usize, n: usize) -> BTreeSet<BTreeSet<usize>> {
    let dim = n - m;
    let pos = |deg: usize| n - deg;
    let mut out = BTreeSet::new();
    if n <= 2 * m + 2 {
        // Every vector is already a normal form.
        let all: Vec<usize> = (0..dim).collect();
        out.extend(power_set(&all));
        return out;
    }
    // Generic stratum at truncation top = 2m + 2: everything is normal.
    let low_degrees: Vec<usize> = (m + 1..=2 * m + 2).map(pos).collect();
    out.extend(power_set(&low_degrees));
    // Higher truncations contribute their general-position masks: the top
    // coordinate y_t is nonzero, y_{t-1}..y_{t-m} are optional, and y_{t/2}
    // is optional for even t.
    for t in (2 * m + 3)..=n {
        let mut opts: Vec<usize> = (t - m..t).map(pos).collect();
        if t % 2 == 0 {
            opts.push(pos(t / 2));
        }
        for mut mask in power_set(&opts) {
            mask.insert(pos(t));
            out.insert(mask);
        }
    }
    out
}

/// General-position masks for a tensor-density module whose first
/// coordinate has parameters (lambda, mu), with `room` further coordinates
/// available. Position 0 is always free.
fn tensor_gp_masks(
    lambda: &Scalar,
    mu: &Scalar,
    m: usize,
    room: usize,
) -> Vec<BTreeSet<usize>> {
    if lambda.is_zero() && mu.is_zero() {
        // The leading coordinate is a constant density killed by the whole
        // algebra; the remaining coordinates restart independently.
        let mut masks = vec![BTreeSet::from([0])];
        for start in 1..=room {
            let shifted_mu = int(start as i64);
            for tail in tensor_gp_masks(lambda, &shifted_mu, m, room - start) {
                let mut mask: BTreeSet<usize> = tail.iter().map(|p| p + start).collect();
                mask.insert(0);
                masks.push(mask);
            }
        }
        return masks;
    }
    let mut opts: Vec<usize> = (1..=m.min(room)).collect();
    if !lambda.is_zero() {
        // Resonant exception: mu = (m + k + 1) lambda frees one extra
        // coordinate at position m + k.
        let ratio = mu / lambda;
        if ratio.is_integer() && ratio.is_positive() {
            let r = ratio.to_integer();
            if r > (m as i64 + 1).into() {
                let k = (r - num::BigInt::from(m as i64 + 1))
                    .try_into()
                    .ok()
                    .and_then(|k: u64| usize::try_from(k).ok());
                if let Some(k) = k {
                    if m + k <= room {
                        opts.push(m + k);
                    }
                }
            }
        }
    }
    power_set(&opts)
        .into_iter()
        .map(|mut s| {
            s.insert(0);
            s
        })
        .collect()
}

/// Closed-form set of free-coordinate masks for the normal-form orbits of
/// tensor_field(lambda, mu, m, cap). Positions are 0-based over
/// e_0, ..., e_cap.
pub fn predicted_tensor_patterns(
    lambda: &Scalar,
    mu: &Scalar,
    m: usize,
    cap: usize,
) -> BTreeSet<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    out.insert(BTreeSet::new());
    for s in 0..=cap {
        // A vector whose first nonzero coordinate is e_s lives in the
        // shifted module with mu replaced by mu + s.
        let mu_s = mu + int(s as i64);
        for mask in tensor_gp_masks(lambda, &mu_s, m, cap - s) {
            out.insert(mask.iter().map(|p| p + s).collect());
        }
    }
    out
}

/// Built-in source selector for the command line:
/// heisenberg | sl2 | sl2std | upper:N | witt:M:N | tensor:L:MU:M:CAP.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Heisenberg,
    Sl2,
    Sl2Standard,
    Upper(usize),
    Witt { m: usize, n: usize },
    Tensor {
        lambda: Scalar,
        mu: Scalar,
        m: usize,
        cap: usize,
    },
}

impl Family {
    pub fn parse(s: &str) -> Result<Family> {
        let parts: Vec<&str> = s.split(':').collect();
        let usize_arg = |t: &str| -> Result<usize> {
            t.parse()
                .map_err(|_| Error::Parse(format!("expected an integer, got '{t}'")))
        };
        match parts.as_slice() {
            ["heisenberg"] => Ok(Family::Heisenberg),
            ["sl2"] => Ok(Family::Sl2),
            ["sl2std"] => Ok(Family::Sl2Standard),
            ["upper", n] => Ok(Family::Upper(usize_arg(n)?)),
            ["witt", m, n] => Ok(Family::Witt {
                m: usize_arg(m)?,
                n: usize_arg(n)?,
            }),
            ["tensor", l, mu, m, cap] => Ok(Family::Tensor {
                lambda: parse_scalar(l)?,
                mu: parse_scalar(mu)?,
                m: usize_arg(m)?,
                cap: usize_arg(cap)?,
            }),
            _ => Err(Error::Parse(format!(
                "unknown family '{s}'; expected heisenberg, sl2, sl2std, \
                 upper:N, witt:M:N or tensor:LAMBDA:MU:M:CAP"
            ))),
        }
    }

    /// The natural module of the family: adjoint for plain algebras (or
    /// coadjoint when `dual` is set, in the triangular coordinate order),
    /// the standard module for sl2std, the density module for tensor.
    pub fn representation(&self, dual: bool) -> Result<Representation> {
        match self {
            Family::Heisenberg => Ok(pick(&heisenberg(), dual)),
            Family::Sl2 => Ok(pick(&sl2(), dual)),
            Family::Sl2Standard => {
                let rep = sl2_standard();
                Ok(if dual { rep.dual() } else { rep })
            }
            Family::Upper(n) => {
                if dual {
                    upper_coadjoint(*n)
                } else {
                    upper_adjoint(*n)
                }
            }
            // The Witt family's module of interest is the coadjoint one
            // (quadratic differentials); the selector always means it.
            Family::Witt { m, n } => witt_coadjoint(*m, *n),
            Family::Tensor { lambda, mu, m, cap } => {
                let rep = tensor_field(lambda, mu, *m, *cap)?;
                Ok(if dual { rep.dual() } else { rep })
            }
        }
    }
}

fn pick(alg: &Arc<LieAlgebra>, dual: bool) -> Representation {
    if dual {
        coadjoint(alg)
    } else {
        adjoint(alg)
    }
}
