use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unibraid::henon::{
    continue_isotracal, orbit, orbit_jacobian, scatter, solve_isotracal_point, ContinuationOptions,
    HenonParams, ScatterSpec, NEWTON_TOL,
};
use twofloat::TwoFloat;
use unibraid::quad::superattracting_parameter;

/// A parameter pair with a bounded orbit, and a point on that orbit.
fn bounded_point(rng: &mut ChaCha8Rng) -> (HenonParams, (f64, f64)) {
    loop {
        let params = HenonParams::new(rng.gen_range(0.2..1.4), rng.gen_range(-0.3..0.3));
        let mut z = (rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5));
        let mut ok = true;
        for _ in 0..300 {
            z = params.step(z.0, z.1);
            if z.0.abs() > 4.0 {
                ok = false;
                break;
            }
        }
        if ok {
            return (params, z);
        }
    }
}

#[test]
fn jacobian_determinant_is_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let params = HenonParams::new(rng.gen_range(-1.0..3.0), rng.gen_range(-1.0..1.0));
        let x = rng.gen_range(-3.0..3.0);
        assert!((params.jacobian(x).determinant() - params.b).abs() < 1e-14);
    }
    for _ in 0..200 {
        let (params, z) = bounded_point(&mut rng);
        let p = rng.gen_range(1..=12);
        let (_, jac) = orbit_jacobian(params, z, p);
        let want = params.b.powi(p as i32);
        assert!((jac.determinant() - want).abs() <= 1e-9 * (1.0 + jac.norm().powi(2)));
    }
}

/// `F^p(z)` in double-double, so that differences with a tiny step keep
/// their digits.
fn orbit_end_dd(params: HenonParams, z: (TwoFloat, TwoFloat), p: usize) -> (TwoFloat, TwoFloat) {
    let (mut x, mut y) = z;
    for _ in 0..p {
        (x, y) = (params.a - x * x - y * params.b, x);
    }
    (x, y)
}

#[test]
fn orbit_jacobian_matches_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let h = 1e-12;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (params, z) = bounded_point(&mut rng);
        let p = rng.gen_range(1..=40);
        let (_, jac) = orbit_jacobian(params, z, p);
        let at = |dx: f64, dy: f64| orbit_end_dd(params, (TwoFloat::from(z.0) + dx, TwoFloat::from(z.1) + dy), p);
        let diff = |u: (TwoFloat, TwoFloat), v: (TwoFloat, TwoFloat)| {
            (f64::from(u.0 - v.0) / (2.0 * h), f64::from(u.1 - v.1) / (2.0 * h))
        };
        let dx = diff(at(h, 0.0), at(-h, 0.0));
        let dy = diff(at(0.0, h), at(0.0, -h));
        let fd = Matrix2::new(dx.0, dy.0, dx.1, dy.1);
        // Relative to 1 for contracting products.
        let rel = (fd - jac).norm() / jac.norm().max(1.0);
        worst = worst.max(rel);
    }
    assert!(worst < 1e-6, "worst relative error {worst:e}");
}

#[test]
fn zero_b_orbits_are_critical_orbits() {
    let rows = include_str!("data/parameters.csv").lines().skip(1).map(|l| {
        let f: Vec<&str> = l.split(',').collect();
        f[3].to_string()
    });
    for word in rows {
        let q = superattracting_parameter(&word.parse().unwrap()).unwrap();
        let p = q.period;
        let pt = solve_isotracal_point(p, (q.a, q.a, 0.0), 0.0).unwrap();
        assert!((pt.a - q.a).abs() < 1e-9);
        if p > 20 {
            // Longer orbits amplify the last-bit differences past 1e-8.
            assert!((pt.x - q.a).abs() < 1e-8 && pt.y.abs() < 1e-8);
            continue;
        }
        let henon = orbit(HenonParams::new(pt.a, 0.0), (pt.x, pt.y), p);
        let mut x = 0.0f64;
        for (k, z) in henon.iter().enumerate() {
            x = pt.a - x * x;
            assert!((z.0 - x).abs() < 1e-8, "{word} step {k}: {} vs {x}", z.0);
        }
    }
}

#[test]
fn continuation_samples_are_solutions() {
    let q = |w: &str| superattracting_parameter(&w.parse().unwrap()).unwrap().a;
    let (am, ap) = (q("1001010010C"), q("1001110010C"));
    let (minus, plus) = continue_isotracal(am, ap, 11, &ContinuationOptions::default()).unwrap();
    assert!(minus.met && plus.met);
    assert!((minus.samples[0].a - 1.85376146047).abs() < 1e-9);
    assert!((plus.samples[0].a - 1.86808014899).abs() < 1e-9);
    for s in minus.samples.iter().chain(&plus.samples) {
        assert!(s.res_fp < NEWTON_TOL && s.res_tr < NEWTON_TOL);
    }
    assert!(minus.samples.windows(2).all(|w| w[1].b > w[0].b));
}

#[test]
fn halving_the_step_keeps_the_branch() {
    let q = |w: &str| superattracting_parameter(&w.parse().unwrap()).unwrap().a;
    let (am, ap) = (q("1001010010C"), q("1001110010C"));
    let coarse = continue_isotracal(am, ap, 11, &ContinuationOptions::default()).unwrap();
    let opts = ContinuationOptions { initial_step: 5e-5, max_step: 5e-4, ..Default::default() };
    let fine = continue_isotracal(am, ap, 11, &opts).unwrap();
    assert!((coarse.0.meet_b.unwrap() - fine.0.meet_b.unwrap()).abs() < 1e-3);
    for (c, f) in [(&coarse.0, &fine.0), (&coarse.1, &fine.1)] {
        for s in &f.samples {
            let near = c.samples.iter().min_by(|u, v| (u.b - s.b).abs().total_cmp(&(v.b - s.b).abs())).unwrap();
            let redo = solve_isotracal_point(11, (near.a, near.x, near.y), s.b).unwrap();
            assert!((redo.a - s.a).abs() < 1e-8, "b = {}: {} vs {}", s.b, redo.a, s.a);
        }
    }
}

#[test]
fn scatter_ignores_thread_count() {
    let spec = ScatterSpec {
        a_range: (1.80, 1.90),
        b_range: (0.0, 0.02),
        a_res: 60,
        b_res: 12,
        period_min: 1,
        period_max: 16,
        ..Default::default()
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap().install(|| scatter(&spec))
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(7));
}
