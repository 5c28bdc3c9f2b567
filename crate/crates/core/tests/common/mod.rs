#![allow(dead_code)]

use killing_rigidity::linalg::vector;
use killing_rigidity::{classify, CanonicalFrame, KillingField, Locus, Mat, Tolerances};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> Tolerances {
    Tolerances::default()
}

pub fn gaussian_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn uniform_vec(rng: &mut ChaCha8Rng, n: usize, half_width: f64) -> Vec<f64> {
    (0..n)
        .map(|_| rng.random_range(-half_width..half_width))
        .collect()
}

/// Haar-ish orthogonal matrix: Gram–Schmidt on Gaussian columns.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, m: usize) -> Mat {
    let mut cols: Vec<Vec<f64>> = Vec::new();
    while cols.len() < m {
        let mut v = gaussian_vec(rng, m);
        for _ in 0..2 {
            for c in &cols {
                let d = vector::dot(&v, c);
                vector::axpy(-d, c, &mut v);
            }
        }
        let n = vector::norm(&v);
        if n > 1e-3 {
            cols.push(vector::scaled(&v, 1.0 / n));
        }
    }
    Mat::from_columns(&cols, m)
}

pub fn random_skew(rng: &mut ChaCha8Rng, m: usize) -> Mat {
    let a = Mat::from_row_major(m, m, gaussian_vec(rng, m * m)).unwrap();
    a.sub(&a.transpose()).unwrap().scale(0.5)
}

/// `Q diag(blocks w_j) Q^T` with the given frequencies and kernel dimension.
pub fn skew_with_frequencies(rng: &mut ChaCha8Rng, freqs: &[f64], k: usize) -> Mat {
    let r = CanonicalFrame::standard(freqs.to_vec(), k, vec![0.0; k])
        .unwrap()
        .reconstruct();
    let q = random_orthogonal(rng, 2 * freqs.len() + k);
    q.matmul(r.skew()).unwrap().matmul(&q.transpose()).unwrap()
}

/// Field `X(p) = R (p - c) + v_ker` with `R` conjugated into a random frame; the kernel
/// translation has coordinates uniform in `[-v_ker_scale, v_ker_scale]`.
pub fn field_from(
    rng: &mut ChaCha8Rng,
    freqs: &[f64],
    k: usize,
    center: &[f64],
    v_ker_scale: f64,
) -> KillingField {
    let a: Vec<f64> = (0..k)
        .map(|_| v_ker_scale * rng.random_range(-1.0..1.0))
        .collect();
    field_from_parts(rng, freqs, center, &a)
}

/// As [`field_from`] with explicit kernel coordinates `a` of the translation (so `||v_ker|| = ||a||`).
pub fn field_from_parts(
    rng: &mut ChaCha8Rng,
    freqs: &[f64],
    center: &[f64],
    a: &[f64],
) -> KillingField {
    let n = freqs.len();
    let m = 2 * n + a.len();
    let q = random_orthogonal(rng, m);
    let std = CanonicalFrame::standard(freqs.to_vec(), a.len(), vec![0.0; a.len()])
        .unwrap()
        .reconstruct();
    let r = q
        .matmul(std.skew())
        .unwrap()
        .matmul(&q.transpose())
        .unwrap();
    let mut v: Vec<f64> = r.mul_vec(center).unwrap().iter().map(|x| -x).collect();
    for (i, ai) in a.iter().enumerate() {
        vector::axpy(*ai, &q.col(2 * n + i), &mut v);
    }
    KillingField::new(r, v).unwrap()
}

/// Random compact locus: `N` frequencies in `[0.5, 3]`, `k = 0`, random frame and center.
pub fn random_compact_locus(rng: &mut ChaCha8Rng, n: usize) -> (KillingField, Locus) {
    let freqs: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..3.0)).collect();
    let center = uniform_vec(rng, 2 * n, 1.0);
    let field = field_from(rng, &freqs, 0, &center, 0.0);
    let frame = field.canonicalize(&tol()).unwrap();
    let length = rng.random_range(0.5..2.0);
    let locus = classify(&frame, length, &tol()).unwrap();
    assert!(locus.is_compact());
    (field, locus)
}

// --- oracles computed from (R, v) alone, never through a canonical frame ---

/// `-R X(q)`, half the gradient of `||X||^2`: the raw normal of the level set.
pub fn oracle_raw_normal(field: &KillingField, q: &[f64]) -> Vec<f64> {
    let x = field.evaluate(q).unwrap();
    field
        .skew()
        .mul_vec(&x)
        .unwrap()
        .iter()
        .map(|v| -v)
        .collect()
}

pub fn oracle_unit_normal(field: &KillingField, q: &[f64]) -> Vec<f64> {
    let n = oracle_raw_normal(field, q);
    vector::scaled(&n, 1.0 / vector::norm(&n))
}

/// Newton projection of `q` onto `||X||^2 = L^2` along the gradient.
pub fn oracle_retract(field: &KillingField, q: &[f64], length: f64) -> Vec<f64> {
    let mut p = q.to_vec();
    for _ in 0..50 {
        let f = vector::norm_squared(&field.evaluate(&p).unwrap()) - length * length;
        let g = vector::scaled(&oracle_raw_normal(field, &p), 2.0);
        let g2 = vector::norm_squared(&g);
        let step = f / g2;
        vector::axpy(-step, &g, &mut p);
        if step.abs() * g2.sqrt() < 1e-17 * (1.0 + vector::norm(&p)) {
            break;
        }
    }
    p
}

/// `D_t nu` by central differences of the unit normal along the locus curve
/// `s -> retract(p + s t)`.
pub fn oracle_unit_normal_derivative(
    field: &KillingField,
    p: &[f64],
    t: &[f64],
    length: f64,
    h: f64,
) -> Vec<f64> {
    let fwd = oracle_retract(field, &vector::add(p, &vector::scaled(t, h)), length);
    let bwd = oracle_retract(field, &vector::sub(p, &vector::scaled(t, h)), length);
    let d = vector::sub(
        &oracle_unit_normal(field, &fwd),
        &oracle_unit_normal(field, &bwd),
    );
    vector::scaled(&d, 1.0 / (2.0 * h))
}

/// `-<D_t nu, t>`
pub fn oracle_ii_unit(field: &KillingField, p: &[f64], t: &[f64], length: f64, h: f64) -> f64 {
    -vector::dot(&oracle_unit_normal_derivative(field, p, t, length, h), t)
}

/// `-<D_t n, t>` for the raw normal, by central differences in the ambient space.
pub fn oracle_ii_raw(field: &KillingField, p: &[f64], t: &[f64], h: f64) -> f64 {
    let fwd = oracle_raw_normal(field, &vector::add(p, &vector::scaled(t, h)));
    let bwd = oracle_raw_normal(field, &vector::sub(p, &vector::scaled(t, h)));
    -vector::dot(
        &vector::scaled(&vector::sub(&fwd, &bwd), 1.0 / (2.0 * h)),
        t,
    )
}

/// Random unit tangent vector at a point with unit normal `nu`.
pub fn random_tangent(rng: &mut ChaCha8Rng, nu: &[f64]) -> Vec<f64> {
    let mut t = gaussian_vec(rng, nu.len());
    let d = vector::dot(&t, nu);
    vector::axpy(-d, nu, &mut t);
    let n = vector::norm(&t);
    vector::scaled(&t, 1.0 / n)
}

/// Least-squares residual of the planar Killing basis `{(-y, x), (1, 0), (0, 1)}` fitted to
/// the samples, by 3x3 normal equations and Cramer's rule.
pub fn oracle_planar_killing_rms(points: &[Vec<f64>], vectors: &[Vec<f64>]) -> f64 {
    let basis = |p: &[f64]| [[-p[1], p[0]], [1.0, 0.0], [0.0, 1.0]];
    let mut g = [[0.0f64; 3]; 3];
    let mut rhs = [0.0f64; 3];
    for (p, xi) in points.iter().zip(vectors) {
        let b = basis(p);
        for i in 0..3 {
            for j in 0..3 {
                g[i][j] += b[i][0] * b[j][0] + b[i][1] * b[j][1];
            }
            rhs[i] += b[i][0] * xi[0] + b[i][1] * xi[1];
        }
    }
    let det3 = |m: &[[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det3(&g);
    let mut coef = [0.0; 3];
    for c in 0..3 {
        let mut m = g;
        for r in 0..3 {
            m[r][c] = rhs[r];
        }
        coef[c] = det3(&m) / d;
    }
    let mut ss = 0.0;
    for (p, xi) in points.iter().zip(vectors) {
        let b = basis(p);
        let fx = coef[0] * b[0][0] + coef[1] * b[1][0] + coef[2] * b[2][0];
        let fy = coef[0] * b[0][1] + coef[1] * b[1][1] + coef[2] * b[2][1];
        ss += (fx - xi[0]).powi(2) + (fy - xi[1]).powi(2);
    }
    (ss / points.len() as f64).sqrt()
}

/// Equally spaced points on the unit circle and the non-Killing tangent field `(2 + x)(-y, x)`.
pub fn non_killing_circle(n: usize) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let pts: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / n as f64;
            vec![a.cos(), a.sin()]
        })
        .collect();
    let vecs = pts
        .iter()
        .map(|p| vec![-(2.0 + p[0]) * p[1], (2.0 + p[0]) * p[0]])
        .collect();
    (pts, vecs)
}
