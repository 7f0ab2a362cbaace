//! End-to-end acceptance checks. Each test prints a single PASS/FAIL line
//! (visible with --nocapture) covering one numbered criterion, including its
//! runtime budget.

use std::collections::BTreeSet;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use liediag::diagram::{
    build_diagram, direct_sum, disjoint_union, product, tensor_product, to_representation,
    Diagram,
};
use liediag::exact::linform::LinForm;
use liediag::exact::poly::{Param, Poly};
use liediag::exact::scalar::{frac, int, Scalar};
use liediag::families::{
    heisenberg, sl2_standard, tensor_field, upper_adjoint, upper_coadjoint, witt_coadjoint,
};
use liediag::lambda::{ext_power, sym_power, sym_sub};
use liediag::lie::{adjoint, coadjoint, Representation};
use liediag::normal_form::{
    compare, enumerate_normal_forms, exp_action, general_position, is_normal_form, reduce,
    walk_matrix, Comparison, SpanVariant,
};
use liediag::verify;
use num::Zero;

/// Runs a criterion body, prints its PASS/FAIL line, and enforces the
/// runtime budget.
fn criterion<F>(number: u32, name: &str, budget_ms: u128, body: F)
where
    F: FnOnce(&mut Vec<String>),
{
    let start = Instant::now();
    let mut failures = Vec::new();
    body(&mut failures);
    let elapsed = start.elapsed();
    let ms = elapsed.as_millis();
    if ms >= budget_ms {
        failures.push(format!("over budget: {ms} ms >= {budget_ms} ms"));
    }
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {number} ({name}): {verdict} ({:.2} ms < {budget_ms} ms)",
        elapsed.as_secs_f64() * 1e3
    );
    assert!(failures.is_empty(), "criterion {number}: {failures:#?}");
}

fn expect(failures: &mut Vec<String>, ok: bool, msg: &str) {
    if !ok {
        failures.push(msg.to_string());
    }
}

fn const_form(dim: usize, entries: &[(usize, i64)]) -> LinForm {
    LinForm::from_coeffs(
        dim,
        entries.iter().map(|&(i, v)| (i, Poly::constant(int(v)))),
    )
}

fn rand_scalar(rng: &mut StdRng) -> Scalar {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn rand_nonzero(rng: &mut StdRng) -> Scalar {
    loop {
        let s = rand_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

fn rand_vector(rng: &mut StdRng, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| rand_scalar(rng)).collect()
}

/// A random product of up to `max_factors` exponentials exp T(t l).
fn random_group_action(
    d: &Diagram,
    rng: &mut StdRng,
    max_factors: usize,
    x: &[Scalar],
) -> Vec<Scalar> {
    let adim = d.algebra().dim();
    let mut y = x.to_vec();
    for _ in 0..rng.gen_range(1..=max_factors) {
        let l = rand_vector(rng, adim);
        let t = rand_nonzero(rng);
        y = exp_action(d, &l, &t).unwrap().mul_vec(&y);
    }
    y
}

#[test]
fn criterion_1_heisenberg_diagrams_and_duality() {
    criterion(1, "Heisenberg adjoint/coadjoint diagrams and duality", 1, |f| {
        let h = heisenberg();
        let (t, u) = (adjoint(&h), coadjoint(&h));
        let d_ad = build_diagram(&t, None);
        let d_co = build_diagram(&u, None);
        // Adjoint: X -> Z labeled -y, Y -> Z labeled x, nothing else.
        expect(f, d_ad.vertex_labels() == ["X", "Y", "Z"], "adjoint vertices");
        expect(f, d_ad.edges().len() == 2, "adjoint edge count");
        expect(
            f,
            d_ad.weight(0, 2) == Some(&const_form(3, &[(1, -1)])),
            "adjoint X->Z is -y",
        );
        expect(
            f,
            d_ad.weight(1, 2) == Some(&const_form(3, &[(0, 1)])),
            "adjoint Y->Z is x",
        );
        // Coadjoint: z -> x labeled y, z -> y labeled -x.
        expect(f, d_co.vertex_labels() == ["x", "y", "z"], "coadjoint vertices");
        expect(f, d_co.edges().len() == 2, "coadjoint edge count");
        expect(
            f,
            d_co.weight(2, 0) == Some(&const_form(3, &[(1, 1)])),
            "coadjoint z->x is y",
        );
        expect(
            f,
            d_co.weight(2, 1) == Some(&const_form(3, &[(0, -1)])),
            "coadjoint z->y is -x",
        );
        // Reversing arrows and negating labels maps one onto the other.
        let dual = d_ad.dual();
        expect(f, dual.edges() == d_co.edges(), "dual edges match coadjoint");
        expect(
            f,
            dual.vertex_labels() == d_co.vertex_labels(),
            "dual vertex labels match coadjoint",
        );
        expect(
            f,
            d_co.dual().edges() == d_ad.edges(),
            "duality is an involution",
        );
    });
}

#[test]
fn criterion_2_sl2_powers_and_characteristic_deletion() {
    criterion(2, "sl(2) symmetric powers and char-p deletion", 10, |f| {
        let d = build_diagram(&sl2_standard(), None);
        // S^2: vertices u^2, uv, v^2; arrows 2x_+, x_+ forward and
        // -x_-, -2x_- back; loops 2h and -2h at the ends.
        let s2 = sym_power(&d, 2, None).unwrap();
        expect(f, s2.vertex_labels() == ["u^2", "uv", "v^2"], "S^2 vertices");
        expect(f, s2.weight(0, 1) == Some(&const_form(3, &[(0, 2)])), "S^2 2x_+");
        expect(f, s2.weight(1, 2) == Some(&const_form(3, &[(0, 1)])), "S^2 x_+");
        expect(f, s2.weight(1, 0) == Some(&const_form(3, &[(1, -1)])), "S^2 -x_-");
        expect(f, s2.weight(2, 1) == Some(&const_form(3, &[(1, -2)])), "S^2 -2x_-");
        expect(f, s2.weight(0, 0) == Some(&const_form(3, &[(2, 2)])), "S^2 loop 2h");
        expect(f, s2.weight(2, 2) == Some(&const_form(3, &[(2, -2)])), "S^2 loop -2h");
        expect(f, s2.weight(1, 1).is_none() && s2.edges().len() == 6, "S^2 shape");

        // S^3: arrows 3x_+, 2x_+, x_+ / -x_-, -2x_-, -3x_-;
        // loops 3h, h, -h, -3h.
        let s3 = sym_power(&d, 3, None).unwrap();
        expect(f, s3.vertex_labels() == ["u^3", "u^2v", "uv^2", "v^3"], "S^3 vertices");
        let expect_s3: &[((usize, usize), &[(usize, i64)])] = &[
            ((0, 1), &[(0, 3)]),
            ((1, 2), &[(0, 2)]),
            ((2, 3), &[(0, 1)]),
            ((1, 0), &[(1, -1)]),
            ((2, 1), &[(1, -2)]),
            ((3, 2), &[(1, -3)]),
            ((0, 0), &[(2, 3)]),
            ((1, 1), &[(2, 1)]),
            ((2, 2), &[(2, -1)]),
            ((3, 3), &[(2, -3)]),
        ];
        for &((i, j), entries) in expect_s3 {
            expect(
                f,
                s3.weight(i, j) == Some(&const_form(3, entries)),
                &format!("S^3 edge ({i}, {j})"),
            );
        }
        expect(f, s3.edges().len() == expect_s3.len(), "S^3 edge count");

        // The sub version mirrors the multiplicities onto the target side.
        let s3s = sym_sub(&d, 3, None).unwrap();
        expect(f, s3s.weight(0, 1) == Some(&const_form(3, &[(0, 1)])), "S_3 x_+");
        expect(f, s3s.weight(2, 3) == Some(&const_form(3, &[(0, 3)])), "S_3 3x_+");
        expect(f, s3s.weight(1, 0) == Some(&const_form(3, &[(1, -3)])), "S_3 -3x_-");
        expect(f, s3s.weight(3, 2) == Some(&const_form(3, &[(1, -1)])), "S_3 -x_-");

        // p = 3 deletes exactly the +-3-labeled edges, and the deleted
        // arrows of S^3 and S_3 point in opposite directions.
        let s3p = sym_power(&d, 3, Some(3)).unwrap();
        let s3sp = sym_sub(&d, 3, Some(3)).unwrap();
        expect(
            f,
            s3p.weight(0, 1).is_none() && s3p.weight(3, 2).is_none(),
            "S^3 mod 3 loses 3x_+ (0->1) and -3x_- (3->2)",
        );
        expect(
            f,
            s3sp.weight(1, 0).is_none() && s3sp.weight(2, 3).is_none(),
            "S_3 mod 3 loses -3x_- (1->0) and 3x_+ (2->3)",
        );
        expect(
            f,
            s3p.weight(1, 0).is_some()
                && s3p.weight(2, 3).is_some()
                && s3sp.weight(0, 1).is_some()
                && s3sp.weight(3, 2).is_some(),
            "the mirrored arrows survive",
        );
        expect(
            f,
            s3p.weight(0, 0).is_none()
                && s3p.weight(3, 3).is_none()
                && s3sp.weight(0, 0).is_none()
                && s3sp.weight(3, 3).is_none(),
            "the +-3h loops vanish mod 3",
        );
    });
}

#[test]
fn criterion_3_round_trip_property_suite() {
    criterion(3, "round trips, validation, sums and products", 5_000, |f| {
        let pool: Vec<Representation> = vec![
            adjoint(&heisenberg()),
            coadjoint(&heisenberg()),
            sl2_standard(),
            upper_adjoint(3).unwrap(),
            upper_adjoint(4).unwrap(),
            upper_coadjoint(4).unwrap(),
            witt_coadjoint(0, 5).unwrap(),
            tensor_field(&int(1), &int(3), 0, 4).unwrap(),
        ];
        let cases = std::cell::Cell::new(0usize);
        let mut runner = TestRunner::new(Config {
            cases: 210,
            failure_persistence: None,
            ..Config::default()
        });
        let strategy = (0..pool.len(), 0..pool.len(), any::<u64>());
        let result = runner.run(&strategy, |(a, b, seed)| {
            cases.set(cases.get() + 1);
            let mut rng = StdRng::seed_from_u64(seed);
            let rep = &pool[a];
            let n = rep.space_dim();

            // Round trip under a random ordering: rebuilding from the
            // diagram must reproduce the permuted representation exactly.
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, rng.gen_range(0..=i));
            }
            let d = build_diagram(rep, Some(&order));
            let back = to_representation(&d)
                .map_err(|e| TestCaseError::fail(format!("round trip: {e}")))?;
            let permuted = rep.permuted(&order);
            for idx in 0..rep.algebra().dim() {
                prop_assert_eq!(back.matrix(idx), permuted.matrix(idx));
            }

            // Power constructions stay honest representations.
            if n <= 4 {
                let d0 = build_diagram(rep, None);
                let k = rng.gen_range(1..=3usize);
                for power in [sym_power(&d0, k, None), sym_sub(&d0, k, None)] {
                    let p = power.map_err(|e| TestCaseError::fail(e.to_string()))?;
                    to_representation(&p)
                        .map_err(|e| TestCaseError::fail(format!("validate: {e}")))?;
                }
                if k <= n {
                    let p = ext_power(&d0, k, None)
                        .map_err(|e| TestCaseError::fail(e.to_string()))?;
                    to_representation(&p)
                        .map_err(|e| TestCaseError::fail(format!("validate: {e}")))?;
                }
            }

            // Diagram-level sum and product agree with the constructions
            // done on the representations themselves.
            let other = &pool[b];
            if n * other.space_dim() <= 24 && rep.algebra().dim() == other.algebra().dim() {
                let (da, db) = (build_diagram(rep, None), build_diagram(other, None));
                if let (Ok(s), Ok(p)) = (disjoint_union(&da, &db), product(&da, &db)) {
                    let direct = build_diagram(&direct_sum(rep, other), None);
                    prop_assert_eq!(s.edges(), direct.edges());
                    let direct = build_diagram(&tensor_product(rep, other), None);
                    prop_assert_eq!(p.edges(), direct.edges());
                }
            }
            Ok(())
        });
        expect(f, result.is_ok(), &format!("property run: {result:?}"));
        let cases = cases.get();
        expect(f, cases >= 200, &format!("only {cases} cases run"));
    });
}

#[test]
fn criterion_4_upper4_general_position() {
    criterion(4, "4x4 triangular general-position patterns", 50, |f| {
        let d = build_diagram(&upper_adjoint(4).unwrap(), None);
        let pats = general_position(&d, false).unwrap();
        expect(f, pats.len() == 1, "adjoint: single generic pattern");
        let gp = &pats[0];
        expect(f, gp.free_positions() == vec![0, 1, 3], "adjoint free {x1,x2,x4}");
        let c = |id: u32| Poly::param(Param(id));
        // Algebra basis order A_34, A_23, A_24, A_12, A_13, A_14.
        let want: Vec<(usize, LinForm)> = vec![
            (2, LinForm::from_coeffs(6, [(1, c(1)), (0, c(2).neg())])),
            (4, LinForm::from_coeffs(6, [(3, c(2)), (1, c(4).neg())])),
            (5, LinForm::from_coeffs(6, [(4, c(1)), (2, c(4).neg())])),
        ];
        expect(
            f,
            gp.memorized == want,
            "adjoint memorized forms y_3, y_5, y_6",
        );
        let d = build_diagram(&upper_coadjoint(4).unwrap(), None);
        let pats = general_position(&d, false).unwrap();
        expect(f, pats.len() == 1, "coadjoint: single generic pattern");
        expect(
            f,
            pats[0].free_positions() == vec![0, 4],
            "coadjoint free {x1,x5}",
        );
    });
}

#[test]
fn criterion_5_upper4_coadjoint_enumeration() {
    criterion(5, "4x4 coadjoint: complete 16-pattern list", 1_000, |f| {
        let d = build_diagram(&upper_coadjoint(4).unwrap(), None);
        let pats = enumerate_normal_forms(&d, false).unwrap();
        let masks: Vec<Vec<usize>> = pats.iter().map(|p| p.free_positions()).collect();
        let want: Vec<Vec<usize>> = [
            vec![1, 5],
            vec![1],
            vec![2, 4, 6],
            vec![2, 4],
            vec![2, 6],
            vec![2],
            vec![3, 4],
            vec![3, 5, 6],
            vec![3, 5],
            vec![3, 6],
            vec![3],
            vec![4],
            vec![5, 6],
            vec![5],
            vec![6],
            vec![],
        ]
        .into_iter()
        .map(|m| m.into_iter().map(|p| p - 1).collect())
        .collect();
        expect(f, masks == want, "16 patterns in canonical descent order");
        expect(
            f,
            pats.iter().all(|p| p.conditions.is_empty() && p.constraints.is_empty()),
            "no pattern needs parameter conditions",
        );
    });
}

#[test]
fn criterion_6_determinant_condition_pointwise() {
    criterion(6, "9x9 coadjoint determinant condition", 2_000, |f| {
        let d = build_diagram(&upper_coadjoint(9).unwrap(), None);
        expect(f, d.vertex_count() == 36, "36 coordinates");
        let support = [4usize, 13, 18, 22, 27, 28, 31, 32, 33];
        let mut x = vec![Scalar::zero(); 36];
        for &p in &support {
            x[p - 1] = int(1);
        }
        let check = is_normal_form(&d, &x, SpanVariant::default()).unwrap();
        expect(f, check.normal, "all-ones vector is a normal form");
        x[28 - 1] = int(2);
        let check = is_normal_form(&d, &x, SpanVariant::default()).unwrap();
        expect(
            f,
            !check.normal && check.failing == Some(33 - 1),
            "c_28 = 2 breaks normality at x_33",
        );
        // Both span variants agree here.
        x[28 - 1] = int(1);
        let zp = is_normal_form(&d, &x, SpanVariant::ZeroPositions).unwrap();
        expect(f, zp.normal, "span variants agree on the on-locus vector");
    });
}

#[test]
fn criterion_7_witt_cross_check() {
    criterion(7, "truncated Witt coadjoint vs predictor", 30_000, |f| {
        let report = verify::verify_witt(2, 10, true).unwrap();
        expect(f, report.all_ok(), &format!("{report}"));
        // m < n <= 10 for m = 0, 1, 2.
        expect(f, report.cases.len() == 10 + 9 + 8, "case count");
    });
}

#[test]
fn criterion_8_tensor_cross_check() {
    criterion(8, "tensor-density modules vs predictor", 60_000, |f| {
        let (lambdas, mus, m_max, n_max) = verify::default_tensor_grid();
        let report = verify::verify_tensor(&lambdas, &mus, m_max, n_max, true).unwrap();
        expect(f, report.all_ok(), &format!("{report}"));
        expect(f, report.cases.len() == 5 * 7 * 2 * 8, "case count");
        // The grid really contains the resonance mu = (m+k+1) lambda and
        // the exceptional lambda = 0, mu a nonpositive integer.
        expect(
            f,
            report.cases.iter().any(|c| c.name.starts_with("tensor lambda=1 mu=3")),
            "resonant point present",
        );
        expect(
            f,
            report.cases.iter().any(|c| c.name.starts_with("tensor lambda=0 mu=0")),
            "exceptional point present",
        );
    });
}

#[test]
fn criterion_9_orbit_invariants() {
    criterion(9, "orbit invariance, replay, minimality", 60_000, |f| {
        let diagrams = vec![
            ("upper 4", build_diagram(&upper_coadjoint(4).unwrap(), None)),
            ("upper 5", build_diagram(&upper_coadjoint(5).unwrap(), None)),
            ("witt 0..6", build_diagram(&witt_coadjoint(0, 6).unwrap(), None)),
        ];
        let mut rng = StdRng::seed_from_u64(90);
        for (name, d) in &diagrams {
            let n = d.vertex_count();
            for _ in 0..100 {
                let x = rand_vector(&mut rng, n);
                let red = reduce(d, &x).unwrap();
                let check = is_normal_form(d, &red.normal, SpanVariant::default()).unwrap();
                if !check.normal {
                    f.push(format!("{name}: reduce output not normal"));
                    return;
                }
                if red.replay(d, &x).unwrap() != red.normal {
                    f.push(format!("{name}: transcript replay mismatch"));
                    return;
                }
                for _ in 0..10 {
                    let y = random_group_action(d, &mut rng, 4, &x);
                    let red_y = reduce(d, &y).unwrap();
                    if red_y.normal != red.normal {
                        f.push(format!("{name}: orbit point reduced differently"));
                        return;
                    }
                    match compare(&red.normal, &y).unwrap() {
                        Comparison::Less | Comparison::Equivalent => {}
                        other => {
                            f.push(format!("{name}: normal form not minimal: {other:?}"));
                            return;
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_10_walk_matrix_equals_exponential() {
    criterion(10, "walk matrix transposes to the exponential", 5_000, |f| {
        let diagrams = vec![
            build_diagram(&adjoint(&heisenberg()), None),
            build_diagram(&upper_adjoint(3).unwrap(), None),
            build_diagram(&upper_adjoint(4).unwrap(), None),
            build_diagram(&upper_coadjoint(4).unwrap(), None),
            build_diagram(&upper_coadjoint(5).unwrap(), None),
            build_diagram(&witt_coadjoint(0, 6).unwrap(), None),
            build_diagram(&witt_coadjoint(1, 7).unwrap(), None),
            build_diagram(&tensor_field(&int(1), &int(3), 0, 5).unwrap(), None),
            build_diagram(&tensor_field(&frac(1, 2), &int(-2), 1, 6).unwrap(), None),
        ];
        let mut rng = StdRng::seed_from_u64(100);
        for d in &diagrams {
            let adim = d.algebra().dim();
            for _ in 0..50 {
                let l = rand_vector(&mut rng, adim);
                let t = rand_scalar(&mut rng);
                let walk = walk_matrix(d, &l, &t).unwrap();
                let exp = exp_action(d, &l, &t).unwrap();
                if walk.transpose() != exp {
                    f.push("walk matrix transpose differs from exponential".into());
                    return;
                }
            }
        }
    });
}

/// Enumeration completeness at test scale: reducing many random vectors of
/// the 4x4 coadjoint module only ever lands on the 16 listed patterns, and
/// each pattern is reachable by reducing a perturbed sample from it.
#[test]
fn enumeration_completeness_spot_check() {
    let d = build_diagram(&upper_coadjoint(4).unwrap(), None);
    let pats = enumerate_normal_forms(&d, false).unwrap();
    let listed: BTreeSet<BTreeSet<usize>> = pats.iter().map(|p| p.free_mask()).collect();
    let mut rng = StdRng::seed_from_u64(7);
    let mut hit: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for _ in 0..1000 {
        let x = rand_vector(&mut rng, 6);
        let red = reduce(&d, &x).unwrap();
        let mask: BTreeSet<usize> = (0..6).filter(|&i| !red.normal[i].is_zero()).collect();
        assert!(listed.contains(&mask), "unlisted pattern {mask:?}");
        hit.insert(mask);
    }
    // Reduce a randomized orbit sample of every pattern.
    for p in &pats {
        let values: Vec<Scalar> = p.free_positions().iter().map(|_| rand_nonzero(&mut rng)).collect();
        let x = p.instantiate(&values).unwrap();
        let y = random_group_action(&d, &mut rng, 3, &x);
        let red = reduce(&d, &y).unwrap();
        let mask: BTreeSet<usize> = (0..6).filter(|&i| !red.normal[i].is_zero()).collect();
        assert_eq!(mask, p.free_mask());
        hit.insert(mask);
    }
    assert_eq!(hit, listed, "every listed pattern is reachable");
}
