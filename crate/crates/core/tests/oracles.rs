mod common;

use rand::Rng;
use setflow::dynamics::diagnostics::{horizon_sample, lipschitz_pair};
use setflow::dynamics::example::{initial_rectangles, relax_field, square_target};
use setflow::dynamics::{
    existence_horizon, integrate, lipschitz_estimate, subtangent_feasible, Affine, IntegrateOptions,
    Method, RegularizationPolicy, Subtangent, SweepConfig,
};
use setflow::polygon::{farthest_realizer, hausdorff_exact, one_sided_distance};
use setflow::reconstruct::reconstruct_polygon;
use setflow::sampling::{random_convex_polygon, random_cone_point, stream};
use setflow::support::{hausdorff_grid, is_in_cone, support_of_polygon, SupportDelta, SupportSample};
use setflow::tolerance::{tol_cone, DRIFT_FACTOR};
use setflow::{ConvexPolygon, DirectionGrid, Execution, Vec2};

use common::{hausdorff_dense, relax_closed_form, support_direct, sup_dist};

fn verts(p: &ConvexPolygon) -> Vec<(f64, f64)> {
    p.vertices().iter().map(|v| (v.x, v.y)).collect()
}

fn grid(n: usize) -> DirectionGrid {
    DirectionGrid::new(n).unwrap()
}

fn random_pair(k: u64) -> (ConvexPolygon, ConvexPolygon) {
    let mut rng = stream(100, k);
    let ca = Vec2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
    let cb = Vec2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
    let (na, nb) = (rng.random_range(1..9), rng.random_range(1..9));
    let (ra, rb) = (rng.random_range(0.1..3.0), rng.random_range(0.1..3.0));
    (random_convex_polygon(&mut rng, ca, ra, na), random_convex_polygon(&mut rng, cb, rb, nb))
}

#[test]
fn support_matches_brute_force() {
    for k in 0..200 {
        let (p, _) = random_pair(k);
        for n in [3, 7, 64, 255] {
            let lib = support_of_polygon(&p, &grid(n));
            assert!(sup_dist(lib.values(), &support_direct(&verts(&p), n)) <= 1e-12);
        }
    }
}

#[test]
fn exact_hausdorff_matches_dense_sampling() {
    for k in 0..200 {
        let (a, b) = random_pair(k);
        let exact = hausdorff_exact(&a, &b);
        // Vertices already realize the one-sided maxima; interior boundary
        // samples never exceed them.
        assert!((exact - hausdorff_dense(&verts(&a), &verts(&b), 1)).abs() <= 1e-12);
        let dense = hausdorff_dense(&verts(&a), &verts(&b), 50);
        assert!(dense <= exact + 1e-12 && dense >= exact - 1e-12);
    }
}

#[test]
fn hausdorff_examples() {
    let q = square_target();
    let a1 = ConvexPolygon::rectangle(2.0, 3.0, 1.0, 2.0).unwrap();
    assert!((hausdorff_exact(&a1, &q) - 13f64.sqrt()).abs() < 1e-15);
    for n in [64, 256, 1024] {
        let g = grid(n);
        let est = hausdorff_grid(&support_of_polygon(&a1, &g), &support_of_polygon(&q, &g)).unwrap();
        // (-3, -2) is never a grid direction; the nearest one is at most
        // half a step away.
        let gap = 13f64.sqrt() * (1.0 - (0.5 * g.spacing()).cos());
        assert!(est <= 13f64.sqrt() && est >= 13f64.sqrt() - gap - 1e-12, "n = {n}: {est}");
    }
    let (a, b) = farthest_realizer(&q, &a1).unwrap();
    assert_eq!((a, b), (Vec2::new(-1.0, -1.0), Vec2::new(2.0, 1.0)));
    assert_eq!(one_sided_distance(&q, &a1), 13f64.sqrt());
}

#[test]
fn reconstruction_error_is_first_order_in_spacing() {
    for k in 0..100 {
        let (p, _) = random_pair(k);
        // Consecutive grid lines touch P at two vertices; their corner sits
        // over the chord between them at height at most chord * tan(spacing / 2) / 2.
        let diameter = p
            .vertices()
            .iter()
            .flat_map(|a| p.vertices().iter().map(move |b| (a - b).norm()))
            .fold(0.0, f64::max);
        for n in [16, 64, 256] {
            let g = grid(n);
            let back = reconstruct_polygon(&support_of_polygon(&p, &g)).unwrap();
            let err = hausdorff_exact(&back, &p);
            assert!(err <= 0.5 * diameter * (0.5 * g.spacing()).tan() + 1e-9, "k = {k}, n = {n}: {err}");
        }
    }
}

#[test]
fn subtangent_matches_lambda_sweep() {
    let g = grid(32);
    let lambdas: Vec<f64> = (0..=400).map(|k| k as f64 * 0.025).collect();
    let mut feasible_seen = 0;
    for k in 0..200 {
        let mut rng = stream(101, k);
        let s = random_cone_point(&mut rng, &g, 3.0);
        let v = if k % 3 == 0 {
            let other = random_cone_point(&mut rng, &g, 3.0);
            SupportDelta::between(&other, &random_cone_point(&mut rng, &g, 3.0)).unwrap()
        } else if k % 3 == 1 {
            // other - mu * s is repaired by any lambda >= mu.
            let other = random_cone_point(&mut rng, &g, 3.0);
            let mu = rng.random_range(0.0..3.0);
            SupportDelta::new(g, other.values().iter().zip(s.values()).map(|(a, b)| a - mu * b).collect()).unwrap()
        } else {
            SupportDelta::new(g, (0..32).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap()
        };
        let tol = 1e-9;
        let result = subtangent_feasible(&v, &s, tol).unwrap();
        let feasible_at = |l: f64| {
            let w: Vec<f64> = v.values().iter().zip(s.values()).map(|(a, b)| a + l * b).collect();
            is_in_cone(&w, &g, tol * 1.001).unwrap().is_inside()
        };
        let swept: Vec<f64> = lambdas.iter().copied().filter(|l| feasible_at(*l)).collect();
        match result {
            Subtangent::Feasible(iv) => {
                feasible_seen += 1;
                for l in &lambdas {
                    if iv.contains(*l) {
                        assert!(feasible_at(*l), "k = {k}: lambda {l} reported but fails");
                    }
                }
                assert!(feasible_at(iv.lo));
            }
            Subtangent::Infeasible { .. } => {
                assert!(swept.is_empty(), "k = {k}: sweep found {:?}", &swept[..swept.len().min(3)]);
            }
        }
    }
    assert!(feasible_seen > 10);
}

#[test]
fn horizon_is_the_sup_over_its_samples() {
    let g = grid(64);
    let q = support_of_polygon(&square_target(), &g);
    let f = relax_field(&g);
    let cfg = SweepConfig { samples: 300, seed: 42, execution: Execution::Sequential };
    let h = existence_horizon(&f, &q, 1.0, 4.0, &cfg).unwrap();
    let direct = (0..300)
        .map(|k| sup_dist(q.values(), horizon_sample(&q, 1.0, 4.0, 42, k).1.values()))
        .fold(0.0, f64::max);
    assert_eq!(h.c, direct);
    assert!(h.c <= 1.0 + 1e-15);
    assert_eq!(h.b, 4.0_f64.min(1.0 / h.c));
    let par = existence_horizon(&f, &q, 1.0, 4.0, &SweepConfig { execution: Execution::Parallel, ..cfg }).unwrap();
    assert_eq!(par, h);
}

#[test]
fn lipschitz_estimates() {
    let g = grid(64);
    let q = support_of_polygon(&square_target(), &g);
    let cfg = SweepConfig { samples: 400, ..SweepConfig::default() };
    let l = lipschitz_estimate(&relax_field(&g), &g, 4.0, 3.0, &cfg).unwrap();
    assert!(l <= 1.0 + 8.0 * f64::EPSILON, "{l}");
    let direct = (0..400)
        .map(|k| {
            let (a, b) = lipschitz_pair(&g, 3.0, cfg.seed, k);
            let num = a.values().iter().zip(b.values()).zip(q.values())
                .map(|((x, y), z)| ((z - x) - (z - y)).abs())
                .fold(0.0, f64::max);
            num / sup_dist(a.values(), b.values())
        })
        .fold(0.0, f64::max);
    assert_eq!(l, direct);
    let two = Affine { state_coeff: 2.0, target_coeff: -1.0, target: q };
    let l2 = lipschitz_estimate(&two, &g, 4.0, 3.0, &cfg).unwrap();
    assert!((l2 - 2.0).abs() <= 1e-12);
}

#[test]
fn relaxation_stays_in_the_cone_without_repair() {
    let g = grid(64);
    let f = relax_field(&g);
    for k in 0..20 {
        let (p, _) = random_pair(k);
        for h in [0.01, 0.005] {
            for method in [Method::Euler, Method::Rk4] {
                let opts = IntegrateOptions::new(2.0, h).method(method).policy(RegularizationPolicy::OnViolation);
                let traj = integrate(&f, &support_of_polygon(&p, &g), &opts).unwrap();
                for (s, r) in traj.samples.iter().zip(&traj.residuals) {
                    assert!(*r <= DRIFT_FACTOR * tol_cone(s.values()));
                }
                assert!(traj.regularized.iter().all(|x| !x));
            }
        }
    }
}

#[test]
fn integration_is_a_semigroup() {
    let g = grid(64);
    let f = relax_field(&g);
    let sq = support_direct(&verts(&square_target()), 64);
    for start in initial_rectangles() {
        let s0 = support_of_polygon(&start.set, &g);
        let whole = integrate(&f, &s0, &IntegrateOptions::new(2.0, 0.01)).unwrap();
        let first = integrate(&f, &s0, &IntegrateOptions::new(1.0, 0.01)).unwrap();
        let second = integrate(&f, first.last().unwrap(), &IntegrateOptions::new(2.0, 0.01).start(1.0)).unwrap();
        let exact = relax_closed_form(&support_direct(&verts(&start.set), 64), &sq, 2.0);
        let bound = sup_dist(whole.last().unwrap().values(), &exact);
        let split = sup_dist(whole.last().unwrap().values(), second.last().unwrap().values());
        assert!(split <= 2.0 * bound.max(1e-15), "{split} vs {bound}");
    }
}

#[test]
fn trajectories_contract_exponentially() {
    let g = grid(64);
    let f = relax_field(&g);
    let starts = initial_rectangles();
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        let a = integrate(&f, &support_of_polygon(&starts[i].set, &g), &IntegrateOptions::new(4.0, 0.01)).unwrap();
        let b = integrate(&f, &support_of_polygon(&starts[j].set, &g), &IntegrateOptions::new(4.0, 0.01)).unwrap();
        let d0 = hausdorff_grid(&a.samples[0], &b.samples[0]).unwrap();
        for k in 0..a.len() {
            let d = hausdorff_grid(&a.samples[k], &b.samples[k]).unwrap();
            assert!((d / d0 / (-a.times[k]).exp() - 1.0).abs() <= 1e-6);
        }
    }
}

#[test]
fn target_is_a_fixed_point_within_ulps() {
    let g = grid(64);
    let q = support_of_polygon(&square_target(), &g);
    let traj = integrate(&relax_field(&g), &q, &IntegrateOptions::new(4.0, 0.01)).unwrap();
    for s in &traj.samples {
        for (x, y) in s.values().iter().zip(q.values()) {
            assert!((x - y).abs() <= 8.0 * f64::EPSILON * y.abs().max(1.0));
        }
    }
}

#[test]
fn csv_output_is_deterministic() {
    let g = grid(32);
    let f = relax_field(&g);
    let s0 = SupportSample::disc(g, 3.0).unwrap();
    let a = integrate(&f, &s0, &IntegrateOptions::new(1.0, 0.1)).unwrap().to_csv();
    let b = integrate(&f, &s0, &IntegrateOptions::new(1.0, 0.1)).unwrap().to_csv();
    assert_eq!(a, b);
    let curve = setflow::exchange::parse_curve_csv(&setflow::exchange::curve_csv(
        &integrate(&f, &s0, &IntegrateOptions::new(1.0, 0.1)).unwrap().to_curve().unwrap(),
    ))
    .unwrap();
    assert_eq!(curve.len(), 11);
}
