//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `--nocapture`) after its assertions hold. Tolerances are
//! pinned in the assertions themselves.

mod common;

use std::collections::BTreeMap;

use common::{enumerate_gvf_extensions, feasible_boundary, random_masked_grid};
use gradvar::analysis::{max_adjacent_difference, telescoping_check, PathRecord};
use gradvar::analytic::{
    max_gradient_on_ball, max_sampled_pair_slope, prop2_ratio, AnalyticFunction, Ball,
};
use gradvar::cases::run_case;
use gradvar::domain::BoundaryData;
use gradvar::gvf::{check_feasibility, check_gvf, extend_gvf, lower_envelope, upper_envelope, ExtendMode};
use gradvar::harmonic::{exact_solve, solve_dirichlet, Method, SolverConfig};
use gradvar::{Error, GraphDomain, GridDomain, ScalarField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

fn star() -> GraphDomain {
    GraphDomain::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap()
}

fn star_boundary(leaves: [f64; 4]) -> BoundaryData {
    BoundaryData::from_pairs((1..5).map(|v| (v, leaves[v - 1])))
}

#[test]
fn criterion_01_lemma1_cross() {
    let domain = star();
    let boundary = star_boundary([1.0, 3.0, 3.0, 3.0]);

    let exact = exact_solve(&domain, &boundary).unwrap();
    assert_eq!(exact.value(0), 2.5, "exact center must be 2.5 exactly");

    for method in [Method::Jacobi, Method::GaussSeidel, Method::Sor] {
        let config = SolverConfig { method, ..SolverConfig::default() };
        let iterative = solve_dirichlet(&domain, &boundary, &config).unwrap();
        assert!(iterative.converged);
        assert!(
            (iterative.field.value(0) - 2.5).abs() <= 1e-8,
            "{method:?} center {}",
            iterative.field.value(0)
        );
    }

    let lower = lower_envelope(&domain, &boundary, 1.0).unwrap();
    let upper = upper_envelope(&domain, &boundary, 1.0).unwrap();
    assert_eq!(lower.value(0), 2.0);
    assert_eq!(upper.value(0), 2.0);

    let (max_jump, witness) = max_adjacent_difference(&exact, &domain).unwrap();
    assert_eq!(max_jump, 1.5);
    assert_eq!(witness, Some((0, 1)));

    println!("ACCEPTANCE criterion 01 (cross-lemma1: harmonic 2.5, GVF 2, jump 1.5): PASS");
}

#[test]
fn criterion_02_mirror_cross() {
    let domain = star();
    let boundary = star_boundary([3.0, 1.0, 1.0, 1.0]);

    let exact = exact_solve(&domain, &boundary).unwrap();
    assert_eq!(exact.value(0), 1.5);
    let iterative = solve_dirichlet(&domain, &boundary, &SolverConfig::default()).unwrap();
    assert!((iterative.field.value(0) - 1.5).abs() <= 1e-8);

    for mode in [ExtendMode::Lower, ExtendMode::Upper, ExtendMode::Midpoint] {
        let field = extend_gvf(&domain, &boundary, 1.0, mode).unwrap();
        assert_eq!(field.value(0), 2.0, "{mode:?}");
    }

    println!("ACCEPTANCE criterion 02 (mirror cross: harmonic 1.5, GVF 2): PASS");
}

#[test]
fn criterion_03_prop2_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(3001);
    let instances: Vec<(f64, f64, f64, f64)> = (0..1000)
        .map(|_| {
            let (a, b) = loop {
                let a = rng.random_range(-10.0..=10.0);
                let b = rng.random_range(-10.0..=10.0);
                if a != 0.0 || b != 0.0 {
                    break (a, b);
                }
            };
            let c = rng.random_range(-10.0..=10.0);
            let r = loop {
                let r: f64 = rng.random_range(0.0..=10.0);
                if r > 0.0 {
                    break r;
                }
            };
            (a, b, c, r)
        })
        .collect();

    let (max_closed, max_sampled, max_pure) = instances
        .par_iter()
        .map(|&(a, b, c, r)| {
            let f = AnalyticFunction::linear(a, b, c);
            let ball = Ball::at_origin(r);
            let closed = prop2_ratio(&f, &ball, 4).unwrap().ratio;
            let sampled = prop2_ratio(&f, &ball, 3600).unwrap().ratio;
            let pure = max_gradient_on_ball(&f, &ball)
                / max_sampled_pair_slope(&f, &ball, 3600).unwrap().slope;
            (closed, sampled, pure)
        })
        .reduce(
            || (f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
            |x, y| (x.0.max(y.0), x.1.max(y.1), x.2.max(y.2)),
        );

    assert!(max_closed <= SQRT_2 + 1e-9, "closed-form max ratio {max_closed}");
    assert!(max_sampled <= SQRT_2 * (1.0 + 2e-3), "sampled max ratio {max_sampled}");
    assert!(max_pure <= SQRT_2 * (1.0 + 2e-3), "pure-sampled max ratio {max_pure}");

    println!(
        "ACCEPTANCE criterion 03 (prop2-linear, 1000 instances: closed {max_closed:.12} <= sqrt2+1e-9, sampled n=3600 {max_pure:.12} <= sqrt2*(1+2e-3)): PASS"
    );
}

#[test]
fn criterion_04_prop2_hyperbolic() {
    let mut rng = ChaCha8Rng::seed_from_u64(3002);
    let mut max_deviation = 0.0_f64;
    for _ in 0..1000 {
        let a = loop {
            let a: f64 = rng.random_range(-10.0..=10.0);
            if a != 0.0 {
                break a;
            }
        };
        let r = loop {
            let r: f64 = rng.random_range(0.0..=10.0);
            if r > 0.0 {
                break r;
            }
        };
        let ratio = prop2_ratio(&AnalyticFunction::hyperbolic(a), &Ball::at_origin(r), 4)
            .unwrap()
            .ratio;
        max_deviation = max_deviation.max((ratio - SQRT_2).abs());
    }
    assert!(max_deviation <= 1e-9, "max |ratio - sqrt2| = {max_deviation:e}");
    println!(
        "ACCEPTANCE criterion 04 (prop2-hyperbolic, 1000 instances: ratio = sqrt2 within {max_deviation:.3e}): PASS"
    );
}

#[test]
fn criterion_05_triangle_example() {
    let f = AnalyticFunction::linear(1.0, 3.0, 0.0);
    let p1 = (0.0, 0.0);
    let p2 = (9.0, 0.0);
    let p3 = (-8.0, 4.0);
    let dist = |a: (f64, f64), b: (f64, f64)| (a.0 - b.0).hypot(a.1 - b.1);

    assert!((f.evaluate(p1) - f.evaluate(p2)).abs() <= dist(p1, p2)); // 9 <= 9
    assert_eq!(dist(p2, p3), 305.0_f64.sqrt());
    assert!((f.evaluate(p2) - f.evaluate(p3)).abs() <= dist(p2, p3)); // 5 <= sqrt(305)
    assert_eq!(dist(p1, p3), 80.0_f64.sqrt());
    assert!((f.evaluate(p1) - f.evaluate(p3)).abs() <= dist(p1, p3)); // 4 <= sqrt(80)

    let p = (0.0, 36.0 / 17.0);
    assert!((f.evaluate(p) - 108.0 / 17.0).abs() <= 1e-12);
    let ratio = (f.evaluate(p) - f.evaluate(p1)).abs() / dist(p, p1);
    assert!((ratio - 3.0).abs() <= 1e-12);
    assert!(ratio > 1.0, "the edge point must violate the unit-slope condition");

    println!(
        "ACCEPTANCE criterion 05 (triangle: vertex pairs OK, edge point f = 108/17, ratio 3): PASS"
    );
}

#[test]
fn criterion_06_envelope_bracketing_exhaustive() {
    let mut instances: u64 = 0;
    let mut extensions: u64 = 0;
    for (width, height) in
        [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 2), (2, 3), (3, 2), (3, 3)]
    {
        let cells = width * height;
        for bits in 1u32..(1 << cells) {
            let mask: Vec<bool> = (0..cells).map(|i| bits & (1 << i) != 0).collect();
            let grid = GridDomain::new(width, height, Some(mask)).unwrap();
            let gg = grid.to_graph();
            let graph = &gg.graph;
            let n = graph.vertex_count();

            let anchor_vertices: Vec<usize> = if n == 1 { vec![0] } else { vec![0, n - 1] };
            let value_grid: Vec<Vec<i64>> = if anchor_vertices.len() == 1 {
                (0..=4).map(|a| vec![a]).collect()
            } else {
                let mut combos = Vec::new();
                for a in 0..=4 {
                    for b in 0..=4 {
                        combos.push(vec![a, b]);
                    }
                }
                combos
            };

            // envelope preconditions need an anchor in every component
            let comps = gradvar::connected_components(graph);
            let mut anchored = vec![false; comps.count()];
            for &v in &anchor_vertices {
                anchored[comps.component_of(v)] = true;
            }
            let fully_anchored = anchored.iter().all(|&a| a);

            for values in &value_grid {
                instances += 1;
                let anchors: BTreeMap<usize, i64> = anchor_vertices
                    .iter()
                    .copied()
                    .zip(values.iter().copied())
                    .collect();
                let boundary =
                    BoundaryData::from_pairs(anchors.iter().map(|(&v, &x)| (v, x as f64)));

                let feasible = check_feasibility(graph, &boundary, 1.0).unwrap().feasible;

                if fully_anchored {
                    let envelopes = if feasible {
                        let lower = lower_envelope(graph, &boundary, 1.0).unwrap();
                        let upper = upper_envelope(graph, &boundary, 1.0).unwrap();
                        Some((lower, upper))
                    } else {
                        assert!(matches!(
                            lower_envelope(graph, &boundary, 1.0),
                            Err(Error::Infeasible { .. })
                        ));
                        None
                    };
                    let count = enumerate_gvf_extensions(graph, &anchors, |values| {
                        let (lower, upper) =
                            envelopes.as_ref().expect("extensions exist only when feasible");
                        for (v, value) in values.iter().enumerate() {
                            let g = value.expect("anchored everywhere") as f64;
                            assert!(
                                lower.value(v) <= g && g <= upper.value(v),
                                "{width}x{height} bits={bits} anchors={anchors:?} vertex {v}"
                            );
                        }
                    });
                    extensions += count;
                    assert_eq!(
                        feasible,
                        count > 0,
                        "{width}x{height} bits={bits} anchors={anchors:?}"
                    );
                } else {
                    // unanchored components: extendability is decided by the
                    // anchored part alone, and the envelopes must refuse
                    let count = enumerate_gvf_extensions(graph, &anchors, |_| {});
                    extensions += count;
                    assert_eq!(feasible, count > 0);
                    assert!(matches!(
                        lower_envelope(graph, &boundary, 1.0),
                        Err(Error::Infeasible { .. } | Error::UnanchoredComponent(_))
                    ));
                }
            }
        }
    }
    println!(
        "ACCEPTANCE criterion 06 (bracketing oracle: {instances} instances, {extensions} enumerated extensions, L <= g <= U and extendability == feasibility): PASS"
    );
}

#[test]
fn criterion_07_extension_soundness_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(3007);
    for instance in 0..500 {
        let grid = random_masked_grid(&mut rng, 20);
        let graph = grid.to_graph().graph;
        let boundary = feasible_boundary(&mut rng, &graph);
        for mode in [ExtendMode::Lower, ExtendMode::Upper, ExtendMode::Midpoint] {
            let field = extend_gvf(&graph, &boundary, 1.0, mode).unwrap();
            let report = check_gvf(&graph, &field).unwrap();
            assert!(
                report.is_gradually_varied(),
                "instance {instance} mode {mode:?}: {:?}",
                report.violations
            );
            for (v, x) in boundary.iter() {
                assert_eq!(field.value(v), x, "instance {instance} mode {mode:?} vertex {v}");
            }
        }
    }
    println!(
        "ACCEPTANCE criterion 07 (500 random feasible instances <= 20x20, all modes GVF and anchor-faithful): PASS"
    );
}

#[test]
fn criterion_08_solver_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3008);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let width = rng.random_range(3..=10);
        let height = rng.random_range(3..=10);
        let gg = GridDomain::new(width, height, None).unwrap().to_graph();
        let boundary = BoundaryData::from_pairs(
            (0..gg.graph.vertex_count())
                .filter(|&v| gg.graph.degree(v) < 4)
                .map(|v| (v, rng.random_range(-5.0..=5.0))),
        );
        let exact = exact_solve(&gg.graph, &boundary).unwrap();
        for method in [Method::Jacobi, Method::GaussSeidel, Method::Sor] {
            let config = SolverConfig { method, ..SolverConfig::default() };
            let result = solve_dirichlet(&gg.graph, &boundary, &config).unwrap();
            assert!(result.converged, "{method:?} on {width}x{height}");
            for (x, y) in result.field.values().iter().zip(exact.values()) {
                let err = (x - y).abs();
                worst = worst.max(err);
                assert!(err <= 1e-6, "{method:?} per-vertex error {err:e}");
            }
        }
    }
    println!(
        "ACCEPTANCE criterion 08 (Jacobi/Gauss-Seidel/SOR vs direct solve on 20 grids <= 10x10, worst error {worst:.3e} <= 1e-6): PASS"
    );
}

#[test]
fn criterion_09_telescoping_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3009);
    for _ in 0..1000 {
        let grid = random_masked_grid(&mut rng, 8);
        let graph = grid.to_graph().graph;
        let field = ScalarField::new(
            (0..graph.vertex_count())
                .map(|_| rng.random_range(-100..=100) as f64)
                .collect(),
        );
        let start = rng.random_range(0..graph.vertex_count());
        let mut walk = vec![start];
        for _ in 0..rng.random_range(0..30) {
            let v = *walk.last().unwrap();
            let neighbors = graph.neighbors(v);
            if neighbors.is_empty() {
                break;
            }
            walk.push(neighbors[rng.random_range(0..neighbors.len())]);
        }
        let path = PathRecord::new(&graph, walk).unwrap();
        let (endpoint, summed) = telescoping_check(&field, &path).unwrap();
        assert_eq!(endpoint, summed);
    }
    println!("ACCEPTANCE criterion 09 (telescoping identity exact on 1000 integer-field paths): PASS");
}

#[test]
fn criterion_10_observation_suite() {
    let a = run_case("observationA-grid").unwrap();
    assert!(a.pass, "observationA-grid: {:#?}", a.assertions);
    let b = run_case("observationB-gvf").unwrap();
    assert!(b.pass, "observationB-gvf: {:#?}", b.assertions);

    let max_of = |report: &gradvar::cases::CaseReport, name: &str| {
        report
            .values
            .iter()
            .find(|v| v.name == name)
            .map(|v| v.value)
            .unwrap()
    };
    println!(
        "ACCEPTANCE criterion 10 (observation suite: max harmonic ratio {:.4} < 2, max GVF residual {:.4} < 1): PASS",
        max_of(&a, "max_ratio"),
        max_of(&b, "max_residual"),
    );
}

#[test]
fn criterion_11_plane_renormalization() {
    let report = run_case("plane-normalize").unwrap();
    assert!(report.pass, "{:#?}", report.assertions);
    println!(
        "ACCEPTANCE criterion 11 (x + 3y - z = 0 solves to y = -(1/3)x + (1/3)z, |A|,|B| <= 1): PASS"
    );
}
