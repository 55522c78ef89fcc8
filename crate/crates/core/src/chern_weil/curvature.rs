//! Curvature of the glued connection on the overlap, as a matrix of
//! 2-forms on `(α, β, r, h)`, and its determinant by two routes.
//!
//! With `τ = ρ^{−k} d(ρ^k)` and the partition profile `f = f₂(h)`,
//! `Ω = df∧τ + (f² − f) τ∧τ`. For `k = 1` its determinant reduces to
//! `4(f − 1)²f² dz∧dz̄∧dw∧dw̄ − (f − 1)f df∧A`.

use super::algebra::{mat_add, mat_mul, mat_scale, mat_sub, Cx, Mat2, C64};
use super::charts::ChartMap;
use super::forms::{a_on, partials, Derivatives};
use super::profile::PartitionProfile;
use super::ChernWeilError;

fn check_domain(point: [f64; 4]) -> Result<(), ChernWeilError> {
    let [a, b, r, h] = point;
    let inside = a.is_finite()
        && (0.0..=std::f64::consts::PI).contains(&b)
        && (0.0..=1.0).contains(&r)
        && (-1.0..=1.0).contains(&h);
    if inside {
        Ok(())
    } else {
        Err(ChernWeilError::OutsideChart(point.to_vec()))
    }
}

fn shifted(p: [f64; 3], x: [f64; 4], t: f64) -> [f64; 3] {
    [p[0] + t * x[0], p[1] + t * x[1], p[2] + t * x[2]]
}

/// `D_X(ρ^k)` by central differences with one Richardson step.
fn directional(rho: &dyn ChartMap, k: i64, p: [f64; 3], x: [f64; 4], step: f64) -> Mat2 {
    let diff = |h: f64| {
        let plus = rho.value(shifted(p, x, h)).pow(k).to_matrix();
        let minus = rho.value(shifted(p, x, -h)).pow(k).to_matrix();
        mat_scale(&mat_sub(&plus, &minus), 0.5 / h)
    };
    mat_scale(&mat_sub(&mat_scale(&diff(step / 2.0), 4.0), &diff(step)), 1.0 / 3.0)
}

/// `Ω(X, Y)` at `point = (α, β, r, h)` for the bundle with cocycle `ρ^k`.
pub fn curvature_local_form(
    rho: &dyn ChartMap,
    k: i64,
    f2: &PartitionProfile,
    point: [f64; 4],
    x: [f64; 4],
    y: [f64; 4],
    step: f64,
) -> Result<Mat2, ChernWeilError> {
    check_domain(point)?;
    let p = [point[0], point[1], point[2]];
    let (f, df) = (f2.value(point[3]), f2.derivative(point[3]));
    let inv = rho.value(p).pow(-k).to_matrix();
    let tau_x = mat_mul(&inv, &directional(rho, k, p, x, step));
    let tau_y = mat_mul(&inv, &directional(rho, k, p, y, step));
    let linear = mat_sub(&mat_scale(&tau_y, df * x[3]), &mat_scale(&tau_x, df * y[3]));
    let bracket = mat_sub(&mat_mul(&tau_x, &tau_y), &mat_mul(&tau_y, &tau_x));
    Ok(mat_add(&linear, &mat_scale(&bracket, f * f - f)))
}

fn det4(m: [[C64; 4]; 4]) -> C64 {
    let minor = |skip: usize| {
        let rows: Vec<[C64; 3]> =
            (1..4).map(|r| [0, 1, 2, 3].into_iter().filter(|&c| c != skip).map(|c| m[r][c]).collect::<Vec<_>>())
                .map(|v| [v[0], v[1], v[2]])
                .collect();
        super::forms::det3(rows[0], rows[1], rows[2])
    };
    (0..4).fold(C64::zero(), |acc, c| {
        let t = m[0][c] * minor(c);
        if c % 2 == 0 {
            acc + t
        } else {
            acc - t
        }
    })
}

/// `det Ω` on a frame through the closed-form reduction, for `k = 1`.
pub fn det_curvature_su2(
    rho: &dyn ChartMap,
    f2: &PartitionProfile,
    point: [f64; 4],
    frame: [[f64; 4]; 4],
    mode: Derivatives,
) -> Result<C64, ChernWeilError> {
    check_domain(point)?;
    let d = partials(rho, [point[0], point[1], point[2]], mode)?;
    let (f, df) = (f2.value(point[3]), f2.derivative(point[3]));
    let along = |grad: &[C64; 3], x: &[f64; 4]| grad[0] * x[0] + grad[1] * x[1] + grad[2] * x[2];
    let dz = frame.map(|x| along(&d.dz, &x));
    let dw = frame.map(|x| along(&d.dw, &x));
    let volume = det4([dz, dz.map(Cx::conj), dw, dw.map(Cx::conj)]);
    let mut df_a = C64::zero();
    for j in 0..4 {
        let rest: Vec<usize> = (0..4).filter(|&i| i != j).collect();
        let pick = |v: &[C64; 4]| [v[rest[0]], v[rest[1]], v[rest[2]]];
        let term = a_on(d.value.z, d.value.w, pick(&dz), pick(&dw)) * (df * frame[j][3]);
        df_a = if j % 2 == 0 { df_a + term } else { df_a - term };
    }
    Ok(volume * (4.0 * (f - 1.0) * (f - 1.0) * f * f) - df_a * ((f - 1.0) * f))
}

/// `(α∧β)(X₀, X₁, X₂, X₃)` for 2-forms given by their values on pairs.
fn wedge2(a: &[[C64; 4]; 4], b: &[[C64; 4]; 4]) -> C64 {
    a[0][1] * b[2][3] - a[0][2] * b[1][3] + a[0][3] * b[1][2] + a[1][2] * b[0][3] - a[1][3] * b[0][2]
        + a[2][3] * b[0][1]
}

/// `det Ω = Ω₁₁∧Ω₂₂ − Ω₁₂∧Ω₂₁` from the curvature matrix itself.
pub fn det_curvature_direct(
    rho: &dyn ChartMap,
    f2: &PartitionProfile,
    point: [f64; 4],
    frame: [[f64; 4]; 4],
    step: f64,
) -> Result<C64, ChernWeilError> {
    let mut entries = [[[[C64::zero(); 4]; 4]; 2]; 2];
    for a in 0..4 {
        for b in a + 1..4 {
            let omega = curvature_local_form(rho, 1, f2, point, frame[a], frame[b], step)?;
            for (i, row) in omega.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    entries[i][j][a][b] = v;
                    entries[i][j][b][a] = -v;
                }
            }
        }
    }
    Ok(wedge2(&entries[0][0], &entries[1][1]) - wedge2(&entries[0][1], &entries[1][0]))
}
