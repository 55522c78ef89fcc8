//! The pulled-back 3-forms on the chart box and the Chern number integral.
//!
//! For a clutching function `φ = (z, w)` the Chern-Simons type 3-form is
//!
//! ```text
//! A = 2( z̄ dz∧dw∧dw̄ + w̄ dz∧dz̄∧dw − 2(z dz̄∧dw∧dw̄ + w dz∧dz̄∧dw̄) )
//! ```
//!
//! and `c₂ = (∫_{D₋} A − ∫_{D₊} A) / 24π²`. Writing `z = x + iy`,
//! `w = u + iv`, the real forms `J₁ = (y dx − x dy)∧du∧dv` and
//! `J₂ = (v du − u dv)∧dx∧dy` give the second route `∫_{D₊}(J₁ + J₂) = π² c₂`,
//! valid when the lower chart is `(z, w̄)` of the upper one.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::algebra::{Cx, SU2Matrix, C64};
use super::charts::{analytic, ChartMap, ClutchingFunction, Example, Hemisphere};
use super::quadrature::{GridSize, QuadratureGrid};
use super::ChernWeilError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Derivatives {
    /// Central differences with one Richardson step.
    Central { step: f64 },
    /// Forward-mode jets; only for charts with closed forms.
    Analytic,
}

impl Default for Derivatives {
    fn default() -> Self {
        Derivatives::Central { step: 1e-5 }
    }
}

/// A chart value with its partials in `(α, β, r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Partials {
    pub value: SU2Matrix,
    pub dz: [C64; 3],
    pub dw: [C64; 3],
}

fn central(chart: &dyn ChartMap, p: [f64; 3], axis: usize, h: f64) -> (C64, C64) {
    let (mut pp, mut pm) = (p, p);
    pp[axis] += h;
    pm[axis] -= h;
    let (a, b) = (chart.value(pp), chart.value(pm));
    ((a.z - b.z) * (0.5 / h), (a.w - b.w) * (0.5 / h))
}

pub fn partials(chart: &dyn ChartMap, p: [f64; 3], mode: Derivatives) -> Result<Partials, ChernWeilError> {
    match mode {
        Derivatives::Analytic => {
            let j = chart.jet(p).ok_or(ChernWeilError::NoAnalyticDerivative)?;
            let d = |c: Cx<super::Jet>, i: usize| Cx::new(c.re.d[i], c.im.d[i]);
            Ok(Partials {
                value: j.value(),
                dz: [0, 1, 2].map(|i| d(j.z, i)),
                dw: [0, 1, 2].map(|i| d(j.w, i)),
            })
        }
        Derivatives::Central { step } => {
            let mut dz = [C64::zero(); 3];
            let mut dw = [C64::zero(); 3];
            for axis in 0..3 {
                let (z1, w1) = central(chart, p, axis, step);
                let (z2, w2) = central(chart, p, axis, step / 2.0);
                dz[axis] = (z2 * 4.0 - z1) * (1.0 / 3.0);
                dw[axis] = (w2 * 4.0 - w1) * (1.0 / 3.0);
            }
            Ok(Partials { value: chart.value(p), dz, dw })
        }
    }
}

/// `(a∧b∧c)(v₀, v₁, v₂)` for 1-forms given by their values on three vectors.
pub(crate) fn det3(a: [C64; 3], b: [C64; 3], c: [C64; 3]) -> C64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// `A` evaluated on three vectors, given `z`, `w` and the values of `dz`
/// and `dw` on them.
pub(crate) fn a_on(z: C64, w: C64, dz: [C64; 3], dw: [C64; 3]) -> C64 {
    let dzb = dz.map(Cx::conj);
    let dwb = dw.map(Cx::conj);
    let first = z.conj() * det3(dz, dw, dwb) + w.conj() * det3(dz, dzb, dw);
    let second = z * det3(dzb, dw, dwb) + w * det3(dz, dzb, dwb);
    (first - second * 2.0) * 2.0
}

/// `A(∂α, ∂β, ∂r)`.
pub fn a_form(p: &Partials) -> C64 {
    a_on(p.value.z, p.value.w, p.dz, p.dw)
}

/// `(J₁ + J₂)(∂α, ∂β, ∂r)`.
pub fn j_form(p: &Partials) -> f64 {
    let (x, y, u, v) = (p.value.z.re, p.value.z.im, p.value.w.re, p.value.w.im);
    let dx = p.dz.map(|c| c.re);
    let dy = p.dz.map(|c| c.im);
    let du = p.dw.map(|c| c.re);
    let dv = p.dw.map(|c| c.im);
    let theta1 = [0, 1, 2].map(|i| y * dx[i] - x * dy[i]);
    let theta2 = [0, 1, 2].map(|i| v * du[i] - u * dv[i]);
    let real = |a: [f64; 3]| a.map(Cx::real);
    (det3(real(theta1), real(du), real(dv)) + det3(real(theta2), real(dx), real(dy))).re
}

/// Both routes to the second Chern number at one grid size.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Chern2 {
    pub c2: f64,
    pub integral_upper: C64,
    pub integral_lower: C64,
    /// `∫_{D₊}(J₁ + J₂)`.
    pub integral_j: f64,
}

impl Chern2 {
    pub fn c2_from_j(&self) -> f64 {
        self.integral_j / (PI * PI)
    }
}

fn checked(chart: &'static str, point: [f64; 3], xs: &[f64]) -> Result<(), ChernWeilError> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(ChernWeilError::NonFinite { chart, point })
    }
}

fn add5(a: [f64; 5], b: [f64; 5]) -> [f64; 5] {
    [0, 1, 2, 3, 4].map(|i| a[i] + b[i])
}

pub fn chern2(phi: &ClutchingFunction, grid: &QuadratureGrid, mode: Derivatives) -> Result<Chern2, ChernWeilError> {
    let [ur, ui, lr, li, j] = grid.integrate(
        |p| {
            let up = partials(phi.upper.as_ref(), p, mode)?;
            let lo = partials(phi.lower.as_ref(), p, mode)?;
            let (a_up, a_lo, j) = (a_form(&up), a_form(&lo), j_form(&up));
            checked("upper", p, &[a_up.re, a_up.im, j])?;
            checked("lower", p, &[a_lo.re, a_lo.im])?;
            Ok([a_up.re, a_up.im, a_lo.re, a_lo.im, j])
        },
        [0.0; 5],
        add5,
        |v, w| v.map(|x| x * w),
    )?;
    Ok(Chern2 {
        c2: (lr - ur) / (24.0 * PI * PI),
        integral_upper: Cx::new(ur, ui),
        integral_lower: Cx::new(lr, li),
        integral_j: j,
    })
}

fn as_vec4(z: C64, w: C64) -> [f64; 4] {
    [z.re, z.im, w.re, w.im]
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let mut a = m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).expect("rows left");
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

/// Topological degree of `φ: S³ → S³`, by integrating the pulled-back
/// volume form over both hemispheres. Each chart is weighted by the
/// orientation sign of its hemisphere embedding.
pub fn mapping_degree(phi: &ClutchingFunction, grid: &QuadratureGrid, mode: Derivatives) -> Result<f64, ChernWeilError> {
    let charts: [(&'static str, &dyn ChartMap, bool); 2] =
        [("upper", phi.upper.as_ref(), true), ("lower", phi.lower.as_ref(), false)];
    let mut total = 0.0;
    for (name, chart, upper) in charts {
        let domain = analytic(Hemisphere { upper });
        total += grid.integrate(
            |p| {
                let q = partials(domain.as_ref(), p, Derivatives::Analytic)?;
                let f = partials(chart, p, mode)?;
                let rows = |x: &Partials| {
                    [as_vec4(x.value.z, x.value.w)]
                        .into_iter()
                        .chain((0..3).map(|i| as_vec4(x.dz[i], x.dw[i])))
                        .collect::<Vec<_>>()
                        .try_into()
                        .expect("four rows")
                };
                let s = det4(rows(&q)).signum();
                let v = s * det4(rows(&f));
                checked(name, p, &[v])?;
                Ok(v)
            },
            0.0,
            |a, b| a + b,
            |v, w| v * w,
        )?;
    }
    Ok(total / (2.0 * PI * PI))
}

/// The record written by the `chern2` command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Chern2Report {
    pub example: String,
    pub grid: GridSize,
    #[serde(rename = "integral_J1_plus_J2")]
    pub integral_j1_plus_j2: f64,
    pub c2: f64,
    pub reference: Option<f64>,
    /// Whether `c₂` moved by less than `1e-3` when the grid was halved.
    pub converged: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2_half_grid: Option<f64>,
}

impl Chern2Report {
    pub const CONVERGENCE_TOLERANCE: f64 = 1e-3;

    /// Computes `c₂` at `size` and at half of it.
    pub fn compute(example: Example, size: GridSize, mode: Derivatives) -> Result<Self, ChernWeilError> {
        let phi = example.clutching()?;
        let fine = chern2(&phi, &QuadratureGrid::new(size)?, mode)?;
        let coarse = chern2(&phi, &QuadratureGrid::new(size.halved())?, mode)?;
        Ok(Chern2Report {
            example: example.to_string(),
            grid: size,
            integral_j1_plus_j2: fine.integral_j,
            c2: fine.c2,
            reference: example.reference(),
            converged: (fine.c2 - coarse.c2).abs() < Self::CONVERGENCE_TOLERANCE,
            c2_half_grid: Some(coarse.c2),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chern_weil::charts::{build_clutching_pair, build_example_cocycles, build_raw_example_cocycles};

    fn grid(n: usize) -> QuadratureGrid {
        QuadratureGrid::cube(n).unwrap()
    }

    #[test]
    fn example_has_c2_minus_one() {
        let (_, e_inv) = build_clutching_pair(&build_example_cocycles()).unwrap();
        let r = chern2(&e_inv, &grid(32), Derivatives::Analytic).unwrap();
        assert!((r.c2 + 1.0).abs() < 1e-8, "{r:?}");
        assert!((r.integral_j + PI * PI).abs() < 1e-6, "{r:?}");
        assert!(r.integral_upper.im.abs() < 1e-8 && r.integral_lower.im.abs() < 1e-8);
    }

    #[test]
    fn central_and_analytic_agree() {
        let (_, e_inv) = build_clutching_pair(&build_example_cocycles()).unwrap();
        let a = chern2(&e_inv, &grid(16), Derivatives::Analytic).unwrap();
        let c = chern2(&e_inv, &grid(16), Derivatives::default()).unwrap();
        assert!((a.c2 - c.c2).abs() < 1e-8);
        let p = [0.3, 2.0, 0.7];
        let pa = partials(e_inv.upper.as_ref(), p, Derivatives::Analytic).unwrap();
        let pc = partials(e_inv.upper.as_ref(), p, Derivatives::default()).unwrap();
        for i in 0..3 {
            assert!((pa.dz[i] - pc.dz[i]).abs() < 1e-9);
            assert!((pa.dw[i] - pc.dw[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn trivial_bundle_and_constant() {
        let (e, _) = build_clutching_pair(&build_example_cocycles()).unwrap();
        let r = chern2(&e, &grid(32), Derivatives::Analytic).unwrap();
        assert!(r.c2.abs() < 1e-8);
        let r = chern2(&ClutchingFunction::constant(), &grid(8), Derivatives::default()).unwrap();
        assert_eq!(r.c2, 0.0);
        assert_eq!(r.integral_j, 0.0);
    }

    #[test]
    fn raw_formulas_give_the_same_number() {
        let (_, e_inv) = build_clutching_pair(&build_raw_example_cocycles()).unwrap();
        let r = chern2(&e_inv, &grid(48), Derivatives::Analytic).unwrap();
        assert!((r.c2 + 1.0).abs() < 1e-3, "{r:?}");
    }

    #[test]
    fn quaternion_powers_match_degree() {
        for d in [-2i64, -1, 1, 2, 3] {
            let q = ClutchingFunction::quaternion_power(d);
            let g = grid(32);
            let deg = mapping_degree(&q, &g, Derivatives::Analytic).unwrap();
            assert!((deg - d as f64).abs() < 1e-6, "d = {d}: degree {deg}");
            let c = chern2(&q, &g, Derivatives::Analytic).unwrap();
            assert!((c.c2 + deg).abs() < 1e-6, "d = {d}: c2 {}", c.c2);
        }
    }

    #[test]
    fn swapping_hemispheres_negates() {
        let (_, e_inv) = build_clutching_pair(&build_example_cocycles()).unwrap();
        let g = grid(16);
        let a = chern2(&e_inv, &g, Derivatives::Analytic).unwrap();
        let b = chern2(&e_inv.swapped(), &g, Derivatives::Analytic).unwrap();
        assert!((a.c2 + b.c2).abs() < 1e-12);
    }

    #[test]
    fn j_form_on_a_hand_example() {
        // z = cos r, w = i sin r · e^{iα}: only ∂r and ∂α are nonzero, so
        // every 3-form on (∂α, ∂β, ∂r) vanishes.
        let p = Partials {
            value: SU2Matrix::identity(),
            dz: [C64::zero(), C64::zero(), Cx::real(-1.0)],
            dw: [Cx::new(0.0, 1.0), C64::zero(), C64::zero()],
        };
        assert_eq!(j_form(&p), 0.0);
        assert_eq!(a_form(&p), C64::zero());
    }

    #[test]
    fn identical_across_worker_counts() {
        let (_, e_inv) = build_clutching_pair(&build_example_cocycles()).unwrap();
        let g = grid(16);
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| chern2(&e_inv, &g, Derivatives::default()).unwrap())
        };
        let one = run(1);
        for threads in [2, 3, 8] {
            let other = run(threads);
            assert_eq!(one.c2.to_bits(), other.c2.to_bits());
            assert_eq!(one.integral_j.to_bits(), other.integral_j.to_bits());
        }
    }

    #[test]
    fn degree_of_constant_and_identity() {
        let g = grid(16);
        let c = mapping_degree(&ClutchingFunction::constant(), &g, Derivatives::default()).unwrap();
        assert!(c.abs() < 1e-12);
        let id = ClutchingFunction {
            upper: analytic(Hemisphere { upper: true }),
            lower: analytic(Hemisphere { upper: false }),
        };
        let d = mapping_degree(&id, &g, Derivatives::default()).unwrap();
        assert!((d - 1.0).abs() < 1e-8, "{d}");
    }

    #[test]
    fn missing_jets_reported() {
        let chart = crate::chern_weil::charts::FnChart(|_| SU2Matrix::identity());
        assert!(matches!(
            partials(&chart, [0.0, 1.0, 0.5], Derivatives::Analytic),
            Err(ChernWeilError::NoAnalyticDerivative)
        ));
    }

    #[test]
    fn non_finite_samples_reported() {
        let bad = ClutchingFunction {
            upper: std::sync::Arc::new(crate::chern_weil::charts::FnChart(|p: [f64; 3]| {
                SU2Matrix::new(Cx::real(p[2].ln() * 0.0 / 0.0), C64::zero())
            })),
            lower: ClutchingFunction::constant().lower,
        };
        assert!(matches!(
            chern2(&bad, &grid(8), Derivatives::default()),
            Err(ChernWeilError::NonFinite { chart: "upper", .. })
        ));
    }

    #[test]
    fn determinant() {
        let m = [[2.0, 0.0, 0.0, 0.0], [0.0, 0.0, 3.0, 0.0], [0.0, 1.0, 0.0, 0.0], [1.0, 0.0, 0.0, 1.0]];
        assert_eq!(det4(m), -6.0);
    }

    #[test]
    fn report_json_shape() {
        let r = Chern2Report::compute(Example::Paper, GridSize::cube(16), Derivatives::Analytic).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in ["example", "grid", "integral_J1_plus_J2", "c2", "reference", "converged"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["grid"]["alpha"], 16);
        assert_eq!(v["reference"], -1.0);
    }
}
