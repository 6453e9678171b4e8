//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use polyquad::expansion::{default_schedule, fit_delta, mollified_limit, DeltaSample, LemmaSum};
use polyquad::fourier::{
    axis_expansion, diagonal_expansion, ft_triangle_numeric, mollified_poisson_sum, offdiagonal_scan, poisson_limit,
    Axis,
};
use polyquad::geometry::{
    boundary_lattice_count, classify_scaled_point, interior_lattice_count, pick_residual, IntPolygon, LatticePoint,
    PointClass, Triangle,
};
use polyquad::numerics::rational::{int, ratio, to_f64, ExactRational};
use polyquad::numerics::summation::log_log_slope;
use polyquad::numerics::{Poly1D, Poly2D};
use polyquad::quadrature::{
    accelerate, accelerate_1d, em1d, integrate, polynomial_expansion_residual, simpson_1d, weighted_sum, Function1D,
    Function2D,
};
use polyquad_cli::commands::cmd_appendix_example;

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn appendix_triangle() -> IntPolygon {
    IntPolygon::from_coords(&[(0, 0), (2, 1), (1, 2)]).unwrap()
}

fn pentagon() -> IntPolygon {
    IntPolygon::from_coords(&[(0, 0), (4, 0), (3, 3), (2, 1), (0, 2)]).unwrap()
}

fn x2y3() -> Poly2D {
    Poly2D::monomial(int(1), 2, 3)
}

fn appendix_reproduction() -> Verdict {
    let outcome = match cmd_appendix_example() {
        Ok(o) => o,
        Err(e) => return verdict(false, e.to_string()),
    };
    let json = &outcome.report.json;
    let rows = json["rows"].as_array().cloned().unwrap_or_default();
    let exact: Vec<String> = rows.iter().map(|r| r["exact"].as_str().unwrap_or("?").to_string()).collect();
    let points: Vec<String> = rows.iter().skip(1).map(|r| r["points"].to_string()).collect();
    let ok = outcome.violation.is_none()
        && exact == ["423/140", "54335/16384", "37295/12288"]
        && points == ["31", "21"];
    verdict(ok, format!("values {} with {} points", exact.join(", "), points.join(" and ")))
}

fn random_polygon(rng: &mut StdRng) -> IntPolygon {
    loop {
        let k = rng.random_range(3..=12);
        let center = (rng.random_range(-10..=10), rng.random_range(-10..=10));
        let mut turns: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
        turns.sort_by(f64::total_cmp);
        let pts: Vec<(i64, i64)> = turns
            .iter()
            .map(|t| {
                let r = rng.random_range(1.0..20.0f64);
                let a = t * std::f64::consts::TAU;
                let x = (center.0 as f64 + r * a.cos()).round() as i64;
                let y = (center.1 as f64 + r * a.sin()).round() as i64;
                (x.clamp(-30, 30), y.clamp(-30, 30))
            })
            .collect();
        if let Ok(p) = IntPolygon::from_coords(&pts) {
            return p;
        }
    }
}

fn pick_suite() -> Verdict {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut failures = 0;
    let mut max_vertices = 0;
    for _ in 0..500 {
        let p = random_polygon(&mut rng);
        max_vertices = max_vertices.max(p.len());
        let (x0, y0, x1, y1) = p.bounding_box();
        let (mut i, mut b) = (0u64, 0u64);
        for x in x0..=x1 {
            for y in y0..=y1 {
                match classify_scaled_point(LatticePoint::new(x, y), 1, &p) {
                    PointClass::Interior => i += 1,
                    PointClass::EdgeInterior | PointClass::Vertex(_) => b += 1,
                    PointClass::Outside => {}
                }
            }
        }
        let counts_agree = i == interior_lattice_count(&p) && b == boundary_lattice_count(&p);
        if !pick_residual(&p).is_zero() || !counts_agree {
            failures += 1;
        }
    }
    verdict(failures == 0, format!("500 polygons (up to {max_vertices} vertices), {failures} failures"))
}

fn convergence_orders() -> Verdict {
    let ns = [4u64, 8, 16, 32, 64];
    let nf = ns.map(|n| n as f64);
    let integrands: [(&str, Function2D); 2] = [("x^2 y^3", x2y3().into()), ("sin x cos y", Function2D::builtin("sinxcosy").unwrap())];
    let mut ok = true;
    let mut details = Vec::new();
    for (pname, p) in [("triangle", appendix_triangle()), ("pentagon", pentagon())] {
        for (gname, g) in &integrands {
            let exact = integrate(g, &p).0;
            let mut slopes = Vec::new();
            for (k, target, tol) in [(1usize, -2.0, 0.2), (2, -4.0, 0.3), (3, -6.0, 0.5)] {
                let errors: Vec<f64> = ns.iter().map(|&n| (accelerate(g, &p, n, k) - exact).abs()).collect();
                let s = log_log_slope(&nf, &errors);
                ok &= (s - target).abs() <= tol;
                slopes.push(format!("{s:.2}"));
            }
            details.push(format!("{pname}/{gname} [{}]", slopes.join(" ")));
        }
    }
    verdict(ok, details.join("; "))
}

fn even_power_structure() -> Verdict {
    let ns: Vec<u64> = (1..=7).map(|k| 1u64 << k).collect();
    let polys = [
        x2y3(),
        Poly2D::new([(int(1), 1, 1), (int(-2), 0, 3), (int(1), 0, 0)]),
        Poly2D::new([(ratio(1, 3), 4, 0), (int(1), 1, 2), (int(-5), 1, 0)]),
    ];
    let mut worst_odd = 0.0f64;
    for p in [appendix_triangle(), pentagon()] {
        for g in &polys {
            let g: Function2D = g.clone().into();
            let samples: Vec<DeltaSample> = ns.iter().map(|&n| (&weighted_sum(&g, &p, n)).into()).collect();
            match fit_delta(&samples, 3, true) {
                Ok(fit) => worst_odd = worst_odd.max(fit.odd_residual),
                Err(_) => worst_odd = f64::INFINITY,
            }
        }
    }
    let held_ns = [1u64, 2, 3, 4, 5, 6, 8, 11];
    let mut worst_residual = 0.0f64;
    for alpha in 0u32..=6 {
        let w = alpha.div_ceil(2);
        let g = Poly2D::new((0..=alpha).map(|i| (ratio(i as i64 + 1, 2), i, alpha - i)));
        for p in [appendix_triangle(), pentagon()] {
            match polynomial_expansion_residual(&g, &p, w, &held_ns) {
                Ok(r) => worst_residual = worst_residual.max(r.residual),
                Err(_) => worst_residual = f64::INFINITY,
            }
        }
    }
    verdict(
        worst_odd <= 1e-6 && worst_residual <= 1e-10,
        format!("max relative odd coefficient {worst_odd:.1e}, max held-out residual {worst_residual:.1e}"),
    )
}

fn lemma_identities() -> Verdict {
    let schedule = default_schedule();
    let range = -3i64..=3;
    let mut checked = 0usize;
    let mut worst_line = 0.0f64;
    let mut worst_double = 0.0f64;
    let mut record = |spec: LemmaSum, worst: &mut f64| {
        let Ok(closed) = spec.closed_form() else { return };
        let lim = mollified_limit(&spec, &schedule).expect("valid spec");
        let rel = (lim.limit - closed).abs() / closed.abs().max(lim.scale);
        *worst = worst.max(rel);
        checked += 1;
    };
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    for h in 0..=4 {
                        record(LemmaSum::Line { a, b, c, d, h }, &mut worst_line);
                    }
                    for h in 0..=4u32 {
                        for k in 0..=4 - h {
                            record(LemmaSum::Double { a, b, c, d, h, k }, &mut worst_double);
                            for e in range.clone() {
                                for f in range.clone() {
                                    record(LemmaSum::Line2 { a, b, c, d, e, f, h, k }, &mut worst_line);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let zeta = [
        (LemmaSum::Line { a: 1, b: 0, c: 0, d: 1, h: 1 }, PI.powi(2) / 3.0),
        (LemmaSum::Line { a: 1, b: 0, c: 0, d: 1, h: 3 }, PI.powi(4) / 45.0),
        (LemmaSum::Double { a: 1, b: 0, c: 0, d: 1, h: 1, k: 1 }, PI.powi(4) / 9.0),
    ];
    let zeta_err = zeta.iter().map(|(s, v)| (s.closed_form().unwrap() - v).abs()).fold(0.0, f64::max);
    verdict(
        worst_line <= 1e-6 && worst_double <= 1e-5 && zeta_err <= 1e-9,
        format!(
            "{checked} sums; worst relative gap line {worst_line:.1e}, double {worst_double:.1e}; zeta values within {zeta_err:.1e}"
        ),
    )
}

fn summation_formula() -> Verdict {
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst_em = 0.0f64;
    for _ in 0..40 {
        let degree = rng.random_range(0..=4);
        let coeffs: Vec<ExactRational> = (0..=degree).map(|_| ratio(rng.random_range(-9..=9), rng.random_range(1..=4))).collect();
        let (a, b) = (rng.random_range(-3..=0), rng.random_range(1..=3));
        let exact = to_f64(&Poly1D::new(coeffs.clone()).integrate(&int(a), &int(b)));
        let g = Function1D::polynomial(coeffs);
        for w in 0..=4 {
            for n in [1u64, 2, 7, 16] {
                let r = em1d(&g, a, b, n, w).expect("polynomials have every derivative");
                worst_em = worst_em.max((r.predicted_integral() - exact).abs());
            }
        }
    }
    let mut worst_simpson = 0.0f64;
    for name in ["exp", "sin", "cos"] {
        let g = Function1D::builtin(name).unwrap();
        for n in [1u64, 3, 8, 32] {
            worst_simpson = worst_simpson.max((accelerate_1d(&g, -1, 2, n, 2) - simpson_1d(&g, -1, 2, n)).abs());
        }
    }
    verdict(
        worst_em <= 1e-12 && worst_simpson <= 1e-12,
        format!("summation formula gap {worst_em:.1e}, Simpson gap {worst_simpson:.1e}"),
    )
}

fn simplex_expansions() -> Verdict {
    let t = Triangle::standard();
    let polys: Vec<Function2D> = vec![
        Poly2D::constant(int(1)).into(),
        Poly2D::x().into(),
        Poly2D::y().into(),
        x2y3().into(),
        Poly2D::new([(ratio(3, 2), 3, 1), (int(-1), 0, 2), (int(4), 1, 0)]).into(),
    ];
    let mut worst = 0.0f64;
    for g in &polys {
        for n in 1..=8i64 {
            for w in [1u32, 3] {
                let pairs = [
                    (diagonal_expansion(g, n, w), ft_triangle_numeric(g, &t, n, n)),
                    (axis_expansion(g, Axis::X, n, w), ft_triangle_numeric(g, &t, n, 0)),
                    (axis_expansion(g, Axis::Y, n, w), ft_triangle_numeric(g, &t, 0, n)),
                ];
                for (e, ft) in pairs {
                    worst = worst.max((e.unwrap().total() - ft.unwrap()).norm());
                }
            }
        }
    }
    let mut scans_ok = true;
    let mut worst_scan = 0.0f64;
    for g in &polys {
        let scan = offdiagonal_scan(g, 6).unwrap();
        scans_ok &= scan.bounded(2.0, 1e-12);
        worst_scan = worst_scan.max(scan.max);
    }
    verdict(
        worst <= 1e-9 && scans_ok,
        format!("expansion gap {worst:.1e}; scaled leading-order residual at most {worst_scan:.1e} over m, n in +-1..+-6"),
    )
}

fn poisson_smoke() -> Verdict {
    let (g, p) = (x2y3(), appendix_triangle());
    let target = weighted_sum(&g.clone().into(), &p, 2).value;
    let lim = poisson_limit(&g, &p, 2, &default_schedule());
    let raw = mollified_poisson_sum(&g, &p, 2, 0.05, 48);
    let gap = (lim.limit - target).abs();
    verdict(
        gap <= 1e-4,
        format!(
            "extrapolated {:.10} vs S(2) = {target:.10} (gap {gap:.1e}); single eps=0.05, M=48 sum gap {:.1e}",
            lim.limit,
            (raw - target).abs()
        ),
    )
}

fn main() {
    // libtest flags such as --nocapture are accepted and ignored
    let criteria: [(&str, fn() -> Verdict, Option<Duration>); 8] = [
        ("appendix reproduction", appendix_reproduction, Some(Duration::from_secs(1))),
        ("Pick suite", pick_suite, Some(Duration::from_secs(30))),
        ("convergence orders", convergence_orders, Some(Duration::from_secs(120))),
        ("even-power structure", even_power_structure, None),
        ("Bernoulli lattice sums", lemma_identities, None),
        ("1-D summation formula", summation_formula, None),
        ("simplex transform expansions", simplex_expansions, None),
        ("Poisson summation", poisson_smoke, None),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = check();
        let elapsed = start.elapsed();
        let in_time = budget.map_or(true, |b| elapsed <= b);
        let ok = v.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = match budget {
            Some(b) => format!("{:.2}s of {}s", elapsed.as_secs_f64(), b.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        println!("{} {}. {name}: {} [{timing}]", if ok { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
