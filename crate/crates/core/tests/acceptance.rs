//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use setflow::duality::{default_tol_ext, dual_representatives, semi_inner};
use setflow::dynamics::example::{closed_form_curve, initial_rectangles, relax_field, square_target};
use setflow::dynamics::{
    integrate, osl_check, subtangent_feasible, Affine, GrowthFunction, IntegrateOptions, Method,
    Subtangent,
};
use setflow::hukuhara::{classify_curve, hukuhara_difference, time_reverse, HukuharaClass, SetCurve};
use setflow::sampling::{ball_point, random_convex_polygon, random_cone_point, random_rectangle, stream};
use setflow::support::{hausdorff_grid, minkowski_add, support_of_polygon, SupportDelta, SupportSample};
use setflow::tolerance::{tol_cone, tol_geom, within_ulps};
use setflow::{ConvexPolygon, DirectionGrid, Vec2};

use common::{relax_closed_form, support_direct, sup_dist};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn verts(p: &ConvexPolygon) -> Vec<(f64, f64)> {
    p.vertices().iter().map(|v| (v.x, v.y)).collect()
}

fn grid(n: usize) -> DirectionGrid {
    DirectionGrid::new(n).unwrap()
}

fn closed_form_reproduction() -> Outcome {
    let start = Instant::now();
    let g = grid(64);
    let sq = support_direct(&verts(&square_target()), 64);
    let f = relax_field(&g);
    let mut worst = 0.0_f64;
    for s in initial_rectangles() {
        let sa = support_direct(&verts(&s.set), 64);
        let traj = integrate(&f, &support_of_polygon(&s.set, &g), &IntegrateOptions::new(4.0, 0.01)).unwrap();
        for (t, x) in traj.times.iter().zip(&traj.samples) {
            worst = worst.max(sup_dist(x.values(), &relax_closed_form(&sa, &sq, *t)));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(worst <= 1e-6 && secs < 1.0, format!("max error {worst:.3e}, {secs:.3}s"))
}

fn classification() -> Outcome {
    let g = grid(64);
    let mut found = Vec::new();
    let mut ok = true;
    for s in initial_rectangles() {
        let curve = closed_form_curve(&s.set, &g, 0.01, 400).unwrap();
        let cls = classify_curve(&curve, None);
        let interior = &cls.steps[1..cls.steps.len() - 1];
        ok &= interior.iter().all(|c| *c == Some(s.expected));
        ok &= cls.steps[0].is_none() && cls.steps.last().unwrap().is_none();
        found.push(cls.aggregate());
    }
    let expected = [HukuharaClass::FirstType, HukuharaClass::SecondType, HukuharaClass::Neither];
    ok &= found == expected;
    outcome(ok, format!("{found:?}"))
}

fn exponential_stability() -> Outcome {
    let g = grid(64);
    let f = relax_field(&g);
    let sq = support_of_polygon(&square_target(), &g);
    let mut worst = 0.0_f64;
    for s in initial_rectangles() {
        let s0 = support_of_polygon(&s.set, &g);
        let d0 = hausdorff_grid(&s0, &sq).unwrap();
        let traj = integrate(&f, &s0, &IntegrateOptions::new(4.0, 0.01)).unwrap();
        for (t, x) in traj.times.iter().zip(&traj.samples) {
            let ratio = hausdorff_grid(x, &sq).unwrap() / d0;
            worst = worst.max((ratio / (-t).exp() - 1.0).abs());
        }
    }
    outcome(worst <= 1e-6, format!("max relative error {worst:.3e}"))
}

fn convergence_order() -> Outcome {
    let g = grid(64);
    let f = relax_field(&g);
    let sq = support_direct(&verts(&square_target()), 64);
    let hs = [0.08, 0.04, 0.02, 0.01];
    let mut ok = true;
    let mut report = Vec::new();
    for (method, target) in [(Method::Euler, 1.0), (Method::Rk4, 4.0)] {
        for s in initial_rectangles() {
            let sa = support_direct(&verts(&s.set), 64);
            let exact = relax_closed_form(&sa, &sq, 1.0);
            let errors: Vec<f64> = hs
                .iter()
                .map(|h| {
                    let opts = IntegrateOptions::new(1.0, *h).method(method);
                    let traj = integrate(&f, &support_of_polygon(&s.set, &g), &opts).unwrap();
                    sup_dist(traj.last().unwrap().values(), &exact)
                })
                .collect();
            let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
            ok &= orders.iter().all(|p| (p - target).abs() <= 0.3);
            if s.name == "curve1" {
                report.push(format!("{method:?} {:.2?}", orders));
            }
        }
    }
    outcome(ok, report.join(", "))
}

fn semi_inner_oracle() -> Outcome {
    let mut exact = 0;
    let mut diagonal = 0;
    let total = 500;
    for k in 0..total {
        let mut rng = stream(5, k);
        let n = rng.random_range(3..=32);
        let g = grid(n);
        // Coarse values make plateaus and ties common.
        let draw = |rng: &mut rand_chacha::ChaCha8Rng| -> SupportDelta {
            loop {
                let v: Vec<f64> = (0..n)
                    .map(|_| if rng.random_bool(0.5) { rng.random_range(-3..=3) as f64 } else { rng.random_range(-3.0..3.0) })
                    .collect();
                if v.iter().any(|x| *x != 0.0) {
                    return SupportDelta::new(g, v).unwrap();
                }
            }
        };
        let f = draw(&mut rng);
        let h = draw(&mut rng);
        let tol = default_tol_ext(&h);
        let value = semi_inner(&f, &h, tol).unwrap();
        let reps = dual_representatives(&h, tol).unwrap();
        let best = reps.iter().map(|m| m.apply(&f)).fold(f64::INFINITY, f64::min);
        exact += usize::from(value == best);
        let diag = semi_inner(&f, &f, default_tol_ext(&f)).unwrap();
        let norm = f.norm_inf();
        diagonal += usize::from(within_ulps(diag, norm * norm, norm * norm, 8.0));
    }
    outcome(
        exact == total as usize && diagonal == total as usize,
        format!("{exact}/{total} exact, {diagonal}/{total} diagonal"),
    )
}

fn hukuhara_round_trip() -> Outcome {
    let mut exists_ok = 0;
    let mut missing_ok = 0;
    let mut exists_total = 0;
    let mut missing_total = 0;
    for k in 0..500u64 {
        let mut rng = stream(6, k);
        let n = [16, 64, 256][k as usize % 3];
        let g = grid(n);
        let a = random_rectangle(&mut rng, 3.0, 4.0);
        let av = a.vertices();
        let (aw, ah) = (av[2].x - av[0].x, av[2].y - av[0].y);
        let (bw, bh) = match k % 4 {
            0 => (rng.random_range(0.0..4.0), rng.random_range(0.0..4.0)),
            1 => (aw * rng.random_range(0.0..1.0), ah * rng.random_range(0.0..1.0)),
            2 => (aw, ah),
            _ => (aw * rng.random_range(0.0..1.0), ah + rng.random_range(0.01..1.0)),
        };
        let (x0, y0) = (rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let b = ConvexPolygon::rectangle(x0, x0 + bw, y0, y0 + bh).unwrap();
        let (sa, sb) = (support_of_polygon(&a, &g), support_of_polygon(&b, &g));
        let predicted = bw <= aw && bh <= ah;
        let diff = hukuhara_difference(&sa, &sb, tol_cone(sa.values()).max(tol_cone(sb.values()))).unwrap();
        if predicted {
            exists_total += 1;
            if let Some(c) = diff {
                let sum = minkowski_add(&sb, &c).unwrap();
                let scale = sa.norm_inf().max(sb.norm_inf());
                if sum.values().iter().zip(sa.values()).all(|(x, y)| within_ulps(*x, *y, scale, 8.0)) {
                    exists_ok += 1;
                }
            }
        } else {
            missing_total += 1;
            missing_ok += usize::from(diff.is_none());
        }
    }
    outcome(
        exists_ok == exists_total && missing_ok == missing_total,
        format!("exists {exists_ok}/{exists_total}, absent {missing_ok}/{missing_total}"),
    )
}

/// Curve mixing growing, shrinking and translating phases on random steps.
fn random_curve(k: u64) -> SetCurve {
    let mut rng = stream(7, k);
    let g = grid([8, 16, 32, 64][k as usize % 4]);
    let steps = rng.random_range(3..12);
    let base = support_of_polygon(&random_convex_polygon(&mut rng, Vec2::zeros(), 4.0, 6), &g);
    let big = SupportSample::disc(g, 20.0).unwrap();
    let mut state = minkowski_add(&base, &big).unwrap().into_values();
    let mut t = rng.random_range(-1.0..1.0);
    let mut times = vec![t];
    let mut samples = vec![SupportSample::new_unchecked(g, state.clone())];
    for _ in 0..steps {
        let dt = rng.random_range(0.01..0.5);
        let mv = random_cone_point(&mut rng, &g, 1.0);
        let sign = [1.0, -1.0, 0.0][rng.random_range(0..3)];
        let shift = Vec2::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        for (i, v) in state.iter_mut().enumerate() {
            *v += dt * (sign * mv.values()[i] + g.direction(i).dot(&shift));
        }
        t += dt;
        times.push(t);
        samples.push(SupportSample::new_unchecked(g, state.clone()));
    }
    SetCurve::new(times, samples).unwrap()
}

fn time_reversal() -> Outcome {
    let mut steps = 0;
    let mut matched = 0;
    let mut classes = [0usize; 4];
    for k in 0..100 {
        let c = random_curve(k);
        let fwd = classify_curve(&c, None).steps;
        let rev = classify_curve(&time_reverse(&c), None).steps;
        let m = fwd.len();
        for i in 0..m {
            steps += 1;
            let mirrored = fwd[i].map(HukuharaClass::mirrored);
            matched += usize::from(rev[m - 1 - i] == mirrored);
            if let Some(cl) = fwd[i] {
                classes[cl as usize] += 1;
            }
        }
    }
    outcome(
        matched == steps,
        format!("{matched}/{steps} steps; first/second/both/neither = {classes:?}"),
    )
}

fn hausdorff_consistency() -> Outcome {
    let total = 500;
    let mut close = 0;
    let mut below = 0;
    let mut monotone = 0;
    for k in 0..total {
        let mut rng = stream(8, k);
        let ca = Vec2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let cb = Vec2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
        let na = rng.random_range(1..10);
        let nb = rng.random_range(1..10);
        let (ra, rb) = (rng.random_range(0.1..3.0), rng.random_range(0.1..3.0));
        let a = random_convex_polygon(&mut rng, ca, ra, na);
        let b = random_convex_polygon(&mut rng, cb, rb, nb);
        let exact = common::hausdorff_dense(&verts(&a), &verts(&b), 1);
        let est: Vec<f64> = [64, 256, 1024]
            .iter()
            .map(|n| sup_dist(&support_direct(&verts(&a), *n), &support_direct(&verts(&b), *n)))
            .collect();
        let lib = hausdorff_grid(&support_of_polygon(&a, &grid(1024)), &support_of_polygon(&b, &grid(1024))).unwrap();
        let tol = tol_geom(a.magnitude().max(b.magnitude()));
        close += usize::from((lib - exact).abs() <= 1e-2 * (1.0 + exact) && (lib - est[2]).abs() <= 1e-12);
        below += usize::from(lib <= exact + tol);
        let lib_est: Vec<f64> = [64, 256, 1024]
            .iter()
            .map(|n| hausdorff_grid(&support_of_polygon(&a, &grid(*n)), &support_of_polygon(&b, &grid(*n))).unwrap())
            .collect();
        monotone += usize::from(lib_est[0] <= lib_est[1] && lib_est[1] <= lib_est[2]);
    }
    let total = total as usize;
    let pass = close == total && below == total && monotone as f64 >= 0.99 * total as f64;
    outcome(pass, format!("within {close}/{total}, below {below}/{total}, monotone {monotone}/{total}"))
}

fn subtangent() -> Outcome {
    let g = grid(64);
    let q = support_of_polygon(&square_target(), &g);
    let total = 1000;
    let mut ok = 0;
    for k in 0..total {
        let mut rng = stream(9, k);
        let s = if k % 2 == 0 {
            random_cone_point(&mut rng, &g, 4.0)
        } else {
            let r = rng.random_range(0.1..3.0);
            ball_point(&mut rng, &q, r)
        };
        let v = SupportDelta::between(&q, &s).unwrap();
        let tol = tol_cone(s.values()).max(tol_cone(v.values()));
        if let Subtangent::Feasible(iv) = subtangent_feasible(&v, &s, tol).unwrap() {
            ok += usize::from(iv.contains(1.0));
        }
    }
    outcome(ok == total as usize, format!("{ok}/{total} feasible with lambda = 1"))
}

fn osl_sampling() -> Outcome {
    let g = grid(64);
    let relax = relax_field(&g);
    let omega = GrowthFunction::linear(1.0);
    let total = 1000;
    let mut satisfied = 0;
    for k in 0..total {
        let mut rng = stream(10, k);
        let a = random_rectangle(&mut rng, 3.0, 4.0);
        let b = random_rectangle(&mut rng, 3.0, 4.0);
        let t = rng.random_range(0.0..4.0);
        if let Ok(r) = osl_check(&relax, &a, &b, t, &omega, &g, 1e-12) {
            satisfied += usize::from(r.satisfied);
        }
    }

    let expand = Affine { state_coeff: 1.0, target_coeff: 0.0, target: SupportSample::zero(g) };
    let zero = GrowthFunction::zero();
    let mut violated = 0;
    let mut matched = 0;
    let mut worst = 0.0_f64;
    for k in 0..total {
        let mut rng = stream(11, k);
        let a = random_rectangle(&mut rng, 3.0, 4.0);
        let b = random_rectangle(&mut rng, 3.0, 4.0);
        let Ok(r) = osl_check(&expand, &a, &b, 0.0, &zero, &g, 1e-12) else { continue };
        let Some(w) = r.witness() else { continue };
        violated += 1;
        let (sa, sb) = (support_direct(&verts(&a), 64), support_direct(&verts(&b), 64));
        let sweep = (0..64)
            .map(|i| match w.case {
                setflow::dynamics::OslCase::Forward => sa[i] - sb[i],
                setflow::dynamics::OslCase::Backward => sb[i] - sa[i],
            })
            .fold(f64::NEG_INFINITY, f64::max);
        let err = (w.gap() - sweep).abs();
        worst = worst.max(err);
        matched += usize::from(err <= 1e-9);
    }
    outcome(
        satisfied == total as usize && violated == total as usize && matched == total as usize,
        format!(
            "relaxation satisfied {satisfied}/{total}; expansion violated {violated}/{total}, sweep match {matched}/{total} (max diff {worst:.1e})"
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed-form reproduction (RK4, h = 0.01, n = 64, T = 4)", closed_form_reproduction),
        ("classification of the three example curves", classification),
        ("exponential decay of the Hausdorff distance", exponential_stability),
        ("convergence order of Euler and RK4", convergence_order),
        ("semi-inner product equals dual-representative minimum", semi_inner_oracle),
        ("Hukuhara difference round trip", hukuhara_round_trip),
        ("time reversal swaps first and second type", time_reversal),
        ("grid Hausdorff distance consistency", hausdorff_consistency),
        ("subtangent feasibility of the relaxation field", subtangent),
        ("one-sided Lipschitz sampling", osl_sampling),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {tag}: {name}: {}", i + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
