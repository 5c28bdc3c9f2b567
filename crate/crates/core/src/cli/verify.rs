//! Field-scoped verification suite behind `killing verify`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{num, Report};
use super::CliError;
use crate::linalg::vector;
use crate::{
    classify, flow, roundness_test, shape_operator, sym_eigendecompose, tangency_defect,
    EuclideanKillingField, LocusKind, Tolerances,
};

const RANDOM_POINTS: usize = 500;
const LOCUS_POINTS: usize = 50;
const ROUNDNESS_SAMPLES: usize = 10_000;
const SEED: u64 = 0;

struct Check {
    name: &'static str,
    passed: bool,
    value: f64,
}

/// Runs every applicable check; returns the report and whether all passed.
pub fn verify(
    field: &EuclideanKillingField<f64>,
    length: f64,
    tol: &Tolerances,
) -> Result<(Report, bool), CliError> {
    let m = field.dim();
    let frame = field.canonicalize(tol)?;
    let locus = classify(&frame, length, tol)?;
    let mut checks = Vec::new();

    // reconstruction
    let back = frame.reconstruct();
    let rt = relative_error(
        back.skew().sub(field.skew())?.frobenius_norm(),
        field.skew().frobenius_norm(),
    )
    .max(relative_error(
        vector::distance(back.translation(), field.translation()),
        vector::norm(field.translation()),
    ));
    checks.push(Check {
        name: "round_trip",
        passed: rt <= 1e-8,
        value: rt,
    });

    // frequencies against the spectrum of -R^2
    let s = field.skew().transpose().matmul(field.skew())?;
    let eig = sym_eigendecompose(&s, tol)?;
    let mut expected: Vec<f64> = eig
        .values
        .iter()
        .take(2 * frame.rotation_count())
        .copied()
        .collect();
    expected.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut got: Vec<f64> = frame
        .frequencies()
        .iter()
        .flat_map(|w| [w * w, w * w])
        .collect();
    got.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let lmax = eig
        .values
        .first()
        .copied()
        .unwrap_or(0.0)
        .max(f64::MIN_POSITIVE);
    let freq_err = expected
        .iter()
        .zip(&got)
        .map(|(a, b)| (a - b).abs() / lmax)
        .fold(0.0, f64::max);
    checks.push(Check {
        name: "frequencies",
        passed: freq_err <= 1e-9,
        value: freq_err,
    });

    // speed closed form and tangency at random ambient points
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut speed_err: f64 = 0.0;
    let mut tangency: f64 = 0.0;
    for _ in 0..RANDOM_POINTS {
        let p: Vec<f64> = frame
            .center()
            .iter()
            .map(|c| c + rng.random_range(-2.0..2.0))
            .collect();
        let x = field.evaluate(&p)?;
        let direct = vector::norm_squared(&x);
        let closed = frame.speed_squared(&p)?;
        speed_err = speed_err.max((direct - closed).abs() / direct.max(1.0));
        let g = frame.speed_gradient(&p)?;
        let scale = (vector::norm(&g) * vector::norm(&x)).max(1.0);
        tangency = tangency.max(tangency_defect(&frame, &p)?.abs() / scale);
    }
    checks.push(Check {
        name: "speed_formula",
        passed: speed_err <= 1e-9,
        value: speed_err,
    });
    checks.push(Check {
        name: "tangency",
        passed: tangency <= 1e-8,
        value: tangency,
    });

    // flow stays on the locus
    if locus.kind() != LocusKind::Empty {
        let band = 1e-9 * (length * length).max(1.0);
        let mut worst: f64 = 0.0;
        for p in locus.sample(LOCUS_POINTS, SEED, 1.0)? {
            for step in 1..=20 {
                let q = flow(&frame, &p, 0.5 * step as f64)?;
                worst = worst.max(locus.contains(&q, tol)?.defect);
            }
        }
        checks.push(Check {
            name: "flow_invariance",
            passed: worst <= band,
            value: worst,
        });
    }

    if locus.is_compact() {
        let n = frame.rotation_count();
        let mut rank_ok = true;
        let mut max_curvature = f64::NEG_INFINITY;
        for p in locus.sample(LOCUS_POINTS, SEED, 1.0)? {
            let r = shape_operator(&locus, &p, tol)?;
            rank_ok &= r.rank == 2 * n - 1;
            max_curvature = max_curvature.max(r.principal_curvatures[0]);
        }
        checks.push(Check {
            name: "shape_rank",
            passed: rank_ok,
            value: (2 * n - 1) as f64,
        });
        checks.push(Check {
            name: "definiteness",
            passed: max_curvature < -1e-6,
            value: max_curvature,
        });

        let rt = roundness_test(&locus, ROUNDNESS_SAMPLES, SEED, 1e-9)?;
        let r2 = locus.radius_squared().expect("compact locus has a radius");
        let (passed, value) = if rt.is_round {
            (
                rt.axixi_std <= 1e-10 * rt.axixi_max.abs().max(1.0),
                rt.axixi_std,
            )
        } else {
            (
                rt.axixi_spread >= 0.5 * rt.omega_spread * r2,
                rt.axixi_spread,
            )
        };
        checks.push(Check {
            name: "dichotomy",
            passed,
            value,
        });
    }

    let mut report = Report::new("verify");
    report
        .int("ambient_dim", m)
        .num("length", length)
        .text("variant", locus.kind().to_string())
        .flag("compact", locus.is_compact());
    let mut all = true;
    for c in &checks {
        all &= c.passed;
        let status = if c.passed { "pass" } else { "fail" };
        report.text(
            &format!("check.{}", c.name),
            format!("{status} {}", num(c.value)),
        );
    }
    report.text("result", if all { "pass" } else { "fail" });
    Ok((report, all))
}

/// `err / scale`, or `err` itself when `scale` is zero.
fn relative_error(err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}
