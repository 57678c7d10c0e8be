//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::ExitCode;

use qsl_core::dirac::{negative_spinor_with, positive_spinor_with, spinor_overlap, MomentTable};
use qsl_core::landau::{
    orbital_moment, FieldConfig, LandauState, Orbital, PhysicalConstants, Spin,
};
use qsl_core::observables::{
    displacement_rel, pair_displacement_nonrel, speed_at, speed_nonrel, speed_rel,
    speed_strong_field, speed_strong_field_antiparticle, speed_strong_field_antiparticle_max,
    strong_field_moments,
};
use qsl_core::qsl::{
    qsl_time, qsl_time_strong_field, weak_field_correspondence, SuperpositionKind,
    SuperpositionSpec,
};
use qsl_core::scanner::{emit_csv, run_scan, to_csv_string, Figure, ScanRequest, Units};
use qsl_core::specfun::QuadratureConfig;

const SQRT_PI: f64 = 1.772_453_850_905_516;

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn all(parts: Vec<(bool, String)>) -> Outcome {
    let pass = parts.iter().all(|(p, _)| *p);
    let detail = parts
        .into_iter()
        .map(|(p, d)| if p { d } else { format!("[failed] {d}") })
        .collect::<Vec<_>>()
        .join("; ");
    check(pass, detail)
}

fn pp_spec(b: f64, n: u32, p0: f64) -> SuperpositionSpec {
    SuperpositionSpec::with_default_packet(
        SuperpositionKind::ParticleParticle,
        n,
        p0,
        FieldConfig::si(b).unwrap(),
    )
    .unwrap()
}

fn superluminal_threshold() -> Outcome {
    let v = speed_nonrel(&FieldConfig::si(2.774e10).unwrap()).v_bar_over_c;
    check(
        (v - 1.0).abs() <= 0.005,
        format!("v/c = {v:.6} at B = 2.774e10 T (target 1 +- 0.005)"),
    )
}

fn n0_asymptote() -> Outcome {
    let cfg = QuadratureConfig::default();
    let spec = pp_spec(1e15, 0, 0.0);
    let field = spec.field;
    let r = speed_rel(&spec, &cfg).unwrap();
    let d22 = SQRT_PI / (4.0 * field.beta()) * (1.0 + 3.0 / (2.0 * std::f64::consts::SQRT_2));
    let v_closed = d22 / (qsl_time_strong_field(0, &field) * field.constants().c);
    let rel = (r.v_bar_over_c / v_closed - 1.0).abs();
    all(vec![
        (
            (r.v_bar_over_c - 0.2407).abs() <= 1e-3,
            format!(
                "quadrature v/c = {:.6} (target 0.2407 +- 0.001)",
                r.v_bar_over_c
            ),
        ),
        (
            rel <= 5e-3,
            format!("closed form v/c = {v_closed:.6}, relative gap {rel:.2e} (limit 5e-3)"),
        ),
    ])
}

fn fig2_asymptote() -> Outcome {
    let speeds: Vec<(u32, f64)> = (0..=132)
        .step_by(2)
        .map(|n| (n, speed_strong_field(n).unwrap()))
        .collect();
    let monotone = speeds.windows(2).all(|w| w[1].1 > w[0].1);
    let tail: Vec<f64> = speeds
        .iter()
        .filter(|(n, _)| *n >= 80)
        .map(|(_, v)| *v)
        .collect();
    let max_step = tail
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .fold(0.0, f64::max);
    let spread = tail.last().unwrap() - tail.first().unwrap();
    let v132 = speeds.last().unwrap().1;
    all(vec![
        (monotone, "monotone increasing over n = 0..132".to_owned()),
        (
            max_step < 1e-4,
            format!("largest successive change over 80..132 = {max_step:.2e} (limit 1e-4; total spread {spread:.2e})"),
        ),
        ((v132 - 0.2698).abs() <= 2e-4, format!("v/c(132) = {v132:.6} (target 0.2698 +- 0.0002)")),
    ])
}

fn fig3_asymptote_literal() -> Outcome {
    let v: Vec<f64> = [80, 100, 132]
        .iter()
        .map(|&n| speed_strong_field_antiparticle(n, 1.0).unwrap())
        .collect();
    check(
        (v[2] - 0.1347).abs() <= 1e-3,
        format!(
            "v/c(80, 100, 132) = {:.5}, {:.5}, {:.5}; decays like 1/sqrt(n) (target 0.1347 +- 0.001)",
            v[0], v[1], v[2]
        ),
    )
}

fn fig3_asymptote_maximized() -> Outcome {
    let v: Vec<f64> = [80, 100, 132]
        .iter()
        .map(|&n| speed_strong_field_antiparticle_max(n).unwrap())
        .collect();
    all(vec![
        (
            v.windows(2).all(|w| w[1] > w[0]),
            "increasing in n".to_owned(),
        ),
        (
            (v[2] - 0.1347).abs() <= 1e-3,
            format!(
                "v/c(80, 100, 132) = {:.5}, {:.5}, {:.5} (target 0.1347 +- 0.001)",
                v[0], v[1], v[2]
            ),
        ),
    ])
}

fn tmin_suite() -> Outcome {
    let c = PhysicalConstants::codata();
    let mut eq12 = 0.0f64;
    for b in [1e-2, 1.0, 1e5, 1e10] {
        let spec = SuperpositionSpec::with_default_packet(
            SuperpositionKind::Nonrelativistic,
            0,
            0.0,
            FieldConfig::si(b).unwrap(),
        )
        .unwrap();
        let t = qsl_time(&spec).unwrap().t_min;
        eq12 = eq12.max((t / (std::f64::consts::PI * c.m0 / (c.e * b)) - 1.0).abs());
    }
    let ratio = weak_field_correspondence(&FieldConfig::si(1.0).unwrap()).unwrap();
    let mut shorter = true;
    for i in 0..=18 {
        let b = 10f64.powi(i);
        let field = FieldConfig::si(b).unwrap();
        let ap = SuperpositionSpec::with_default_packet(
            SuperpositionKind::AntiparticleParticle,
            0,
            0.0,
            field,
        )
        .unwrap();
        shorter &= qsl_time(&ap).unwrap().t_min < qsl_time(&pp_spec(b, 0, 0.0)).unwrap().t_min;
    }
    let field = FieldConfig::si(1e15).unwrap();
    let strong =
        (qsl_time(&pp_spec(1e15, 0, 0.0)).unwrap().t_min / qsl_time_strong_field(0, &field) - 1.0)
            .abs();
    all(vec![
        (
            eq12 <= 4.0 * f64::EPSILON,
            format!("nonrelativistic T = pi m0/(eB) to {eq12:.1e}"),
        ),
        (
            (ratio - 1.0).abs() <= 1e-6,
            format!(
                "relativistic/nonrelativistic ratio at 1 T = 1 + {:.2e}",
                ratio - 1.0
            ),
        ),
        (
            shorter,
            "antiparticle T < particle T for B = 1..1e18 T".to_owned(),
        ),
        (
            strong <= 1e-3,
            format!("strong-field T vs exact at 1e15 T: {strong:.2e}"),
        ),
    ])
}

fn oracle_equivalence() -> Outcome {
    let field = FieldConfig::new(1.0, PhysicalConstants::natural()).unwrap();
    let cfg = QuadratureConfig {
        relative_tolerance: 1e-13,
        ..QuadratureConfig::default()
    };
    let mut worst = 0.0f64;
    for n in [0u32, 2, 4] {
        let m = strong_field_moments(n).unwrap();
        let s = orbital_moment(
            Orbital::new(n, 0).unwrap(),
            Orbital::new(n + 2, 0).unwrap(),
            &field,
            1,
            &cfg,
        )
        .unwrap();
        let p = orbital_moment(
            Orbital::new(n + 1, 1).unwrap(),
            Orbital::new(n + 3, 1).unwrap(),
            &field,
            1,
            &cfg,
        )
        .unwrap();
        let quad = (s + p).abs() * field.beta();
        worst = worst.max((quad / m.scaled_displacement() - 1.0).abs());
    }
    let si = FieldConfig::si(1.0).unwrap();
    let q = orbital_moment(
        Orbital::new(0, 0).unwrap(),
        Orbital::new(2, 0).unwrap(),
        &si,
        1,
        &QuadratureConfig::default(),
    )
    .unwrap();
    let ground = (q.abs() / (SQRT_PI / (4.0 * si.beta())) - 1.0).abs();
    all(vec![
        (
            worst <= 1e-8,
            format!("closed-form sum vs quadrature, n = 0, 2, 4: {worst:.1e}"),
        ),
        (
            ground <= 1e-10,
            format!("<0,0|rho|2,0> vs sqrt(pi)/(4 beta): {ground:.1e}"),
        ),
    ])
}

fn property_suites() -> Outcome {
    let cfg = QuadratureConfig::default();
    let natural = FieldConfig::new(1.0, PhysicalConstants::natural()).unwrap();
    let mut ortho = 0.0f64;
    for m_l in -2i32..=2 {
        let orbitals: Vec<Orbital> = (0..=10).filter_map(|n| Orbital::new(n, m_l).ok()).collect();
        for a in &orbitals {
            for b in &orbitals {
                let v = orbital_moment(*a, *b, &natural, 0, &cfg).unwrap();
                ortho = ortho.max((v - if a == b { 1.0 } else { 0.0 }).abs());
            }
        }
    }
    let mut norm = 0.0f64;
    for b in [1.0, 1e6, 1e12] {
        let field = FieldConfig::si(b).unwrap();
        let table = MomentTable::new(&field, &cfg);
        for p in [0.0, field.momentum_scale(), 10.0 * field.momentum_scale()] {
            for n in [0u32, 2, 4] {
                for s in [
                    positive_spinor_with(n, p, &table).unwrap(),
                    negative_spinor_with(n, p, &table).unwrap(),
                ] {
                    norm = norm.max((spinor_overlap(&s, &s, &table).unwrap().re - 1.0).abs());
                }
            }
        }
    }
    let si = FieldConfig::si(1.0).unwrap();
    let up = |n, m| LandauState::new(n, m, Spin::Up, 0.0).unwrap();
    let down = LandauState::new(2, 0, Spin::Down, 0.0).unwrap();
    let zeros = pair_displacement_nonrel(&up(0, 0), &up(3, 1), &si, &cfg).unwrap() == 0.0
        && pair_displacement_nonrel(&up(0, 0), &down, &si, &cfg).unwrap() == 0.0
        && pair_displacement_nonrel(&up(1, -1), &up(4, 0), &si, &cfg).unwrap() == 0.0;
    let mut anti_zero = true;
    for b in [1e9, 1e12, 1e15] {
        let field = FieldConfig::si(b).unwrap();
        let spec = SuperpositionSpec::with_default_packet(
            SuperpositionKind::AntiparticleParticle,
            0,
            0.0,
            field,
        )
        .unwrap();
        anti_zero &= displacement_rel(&spec, &cfg).unwrap() == 0.0;
    }
    let (shape, shape_detail) = fig4_shape(&cfg);
    all(vec![
        (
            ortho <= 1e-8,
            format!("orthonormality n <= 10: {ortho:.1e}"),
        ),
        (norm <= 1e-10, format!("spinor norms: {norm:.1e}")),
        (zeros, "m_l / m_s selection zeros exact".to_owned()),
        (
            anti_zero,
            "antiparticle displacement at p0 = 0 exactly 0".to_owned(),
        ),
        (shape, shape_detail),
    ])
}

fn fig4_shape(cfg: &QuadratureConfig) -> (bool, String) {
    let mut ok = true;
    let mut peaks = Vec::new();
    for b in [1e10, 1e11, 1e12] {
        let field = FieldConfig::si(b).unwrap();
        let qs: Vec<f64> = (0..=40)
            .map(|i| f64::from(i) * 0.25)
            .chain([20.0, 40.0])
            .collect();
        let v = |kind, q| speed_at(kind, 0, &field, q, cfg).unwrap().v_bar_over_c;
        let ap: Vec<f64> = qs
            .iter()
            .map(|&q| v(SuperpositionKind::AntiparticleParticle, q))
            .collect();
        let pp: Vec<f64> = qs
            .iter()
            .map(|&q| v(SuperpositionKind::ParticleParticle, q))
            .collect();
        let (imax, vmax) =
            ap.iter().enumerate().fold(
                (0, f64::MIN),
                |acc, (i, &x)| if x > acc.1 { (i, x) } else { acc },
            );
        let q_peak = qs[imax];
        ok &= ap[0] == 0.0;
        ok &= q_peak > 0.5 && q_peak < 5.0 && vmax > ap[40];
        let tail = qs.iter().position(|&q| q >= 6.0).unwrap();
        ok &= ap[tail..].windows(2).all(|w| w[1] < w[0])
            && pp[tail..].windows(2).all(|w| w[1] < w[0]);
        ok &= ap.iter().zip(&pp).all(|(a, p)| a < p);
        peaks.push(format!("{b:e} T: peak at p0 = {q_peak} beta hbar"));
    }
    (ok, format!("fig4 preset shape (zero at origin, interior peak, decay, antiparticle below particle): {}", peaks.join(", ")))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut req = ScanRequest::preset(Figure::Fig1, Units::Si);
    let first = run_scan(&req).unwrap();
    let second = run_scan(&req).unwrap();
    req.serial = true;
    let serial = run_scan(&req).unwrap();
    let paths: Vec<_> = ["a.csv", "b.csv", "serial.csv"]
        .iter()
        .map(|f| dir.path().join(f))
        .collect();
    for (table, path) in [&first, &second, &serial].iter().zip(&paths) {
        emit_csv(table, path).unwrap();
    }
    let bytes: Vec<Vec<u8>> = paths.iter().map(|p| std::fs::read(p).unwrap()).collect();
    let same = bytes[0] == bytes[1] && bytes[0] == bytes[2];
    let rows = first.rows.len();
    check(
        same && to_csv_string(&first).as_bytes() == bytes[0].as_slice() && rows == 120,
        format!("fig1 preset ({rows} rows) byte-identical across two runs and serial/parallel"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1  superluminal threshold", superluminal_threshold),
        ("2  n = 0 relativistic asymptote", n0_asymptote),
        ("3  strong-field particle asymptote (fig2)", fig2_asymptote),
        (
            "4  strong-field antiparticle asymptote (fig3), p0 = beta hbar",
            fig3_asymptote_literal,
        ),
        (
            "4b strong-field antiparticle asymptote (fig3), speed-maximizing p0",
            fig3_asymptote_maximized,
        ),
        ("5  T_min formula suite", tmin_suite),
        ("6  oracle equivalence", oracle_equivalence),
        ("7  property suites", property_suites),
        ("8  determinism", determinism),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = std::time::Instant::now();
        let outcome = run();
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} criterion {name}: {} [{:.2?}]",
            outcome.detail,
            start.elapsed()
        );
        failed += usize::from(!outcome.pass);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
