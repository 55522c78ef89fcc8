//! The partition-of-unity profile `f₂` as a function of the height `h`.

use std::sync::Arc;

use super::quadrature::Axis;
use super::ChernWeilError;

/// Ends of the transition band.
pub const BAND: (f64, f64) = (-1.0 / 3.0, 1.0 / 3.0);

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A validated profile: constant 1 below the band and 0 above it
/// (falling), or the mirror image (rising), monotone in between.
#[derive(Clone)]
pub struct PartitionProfile {
    f: ScalarFn,
    df: ScalarFn,
    rising: bool,
}

impl std::fmt::Debug for PartitionProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PartitionProfile").field("rising", &self.rising).finish_non_exhaustive()
    }
}

fn psi(t: f64) -> f64 {
    if t > 0.0 {
        (-1.0 / t).exp()
    } else {
        0.0
    }
}

fn dpsi(t: f64) -> f64 {
    if t > 0.0 {
        psi(t) / (t * t)
    } else {
        0.0
    }
}

/// The `C^∞` step `S(t) = ψ(t) / (ψ(t) + ψ(1 − t))`, `ψ(t) = e^{−1/t}`.
fn step(t: f64) -> f64 {
    let (a, b) = (psi(t), psi(1.0 - t));
    a / (a + b)
}

fn dstep(t: f64) -> f64 {
    let (a, b) = (psi(t), psi(1.0 - t));
    let (da, db) = (dpsi(t), -dpsi(1.0 - t));
    (da * b - a * db) / ((a + b) * (a + b))
}

impl PartitionProfile {
    /// The smooth falling profile used by the examples.
    pub fn smooth() -> Self {
        let width = BAND.1 - BAND.0;
        PartitionProfile {
            f: Arc::new(move |h| 1.0 - step((h - BAND.0) / width)),
            df: Arc::new(move |h| -dstep((h - BAND.0) / width) / width),
            rising: false,
        }
    }

    /// `1 − f₂`: the same profile traversed the other way.
    pub fn reversed(&self) -> Self {
        let (f, df) = (self.f.clone(), self.df.clone());
        PartitionProfile { f: Arc::new(move |h| 1.0 - f(h)), df: Arc::new(move |h| -df(h)), rising: !self.rising }
    }

    /// A caller-supplied profile with its derivative, checked on a fine
    /// sample: the end values, monotonicity, and agreement of `df` with
    /// finite differences of `f`.
    pub fn from_fn(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        df: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, ChernWeilError> {
        let (lo, hi) = (f(-1.0), f(1.0));
        let rising = match (lo, hi) {
            (l, h) if l == 1.0 && h == 0.0 => false,
            (l, h) if l == 0.0 && h == 1.0 => true,
            _ => return Err(ChernWeilError::BadProfile(format!("end values {lo} and {hi} are not 1 and 0"))),
        };
        let p = PartitionProfile { f: Arc::new(f), df: Arc::new(df), rising };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), ChernWeilError> {
        let (outer, inner) = if self.rising { (0.0, 1.0) } else { (1.0, 0.0) };
        let samples = 4000;
        let h_fd = 1e-6;
        let mut prev = self.value(-1.0);
        for i in 0..=samples {
            let h = -1.0 + 2.0 * i as f64 / samples as f64;
            let v = self.value(h);
            if h <= BAND.0 && v != outer || h >= BAND.1 && v != inner {
                return Err(ChernWeilError::BadProfile(format!("not constant outside the band at h = {h}")));
            }
            let going_wrong_way = if self.rising { v < prev - 1e-15 } else { v > prev + 1e-15 };
            if going_wrong_way {
                return Err(ChernWeilError::BadProfile(format!("not monotone at h = {h}")));
            }
            prev = v;
            if h > -1.0 + h_fd && h < 1.0 - h_fd {
                let fd = (self.value(h + h_fd) - self.value(h - h_fd)) / (2.0 * h_fd);
                if (fd - self.derivative(h)).abs() > 1e-4 * (1.0 + fd.abs()) {
                    return Err(ChernWeilError::BadProfile(format!("derivative mismatch at h = {h}")));
                }
            }
        }
        Ok(())
    }

    pub fn value(&self, h: f64) -> f64 {
        (self.f)(h)
    }

    pub fn derivative(&self, h: f64) -> f64 {
        (self.df)(h)
    }

    pub fn is_rising(&self) -> bool {
        self.rising
    }
}

/// `∫_{−1}^{1} (1 − f₂) f₂ f₂′ dh`, which is `−1/6` for a falling profile
/// and `+1/6` for a rising one.
pub fn f2_moment(profile: &PartitionProfile, nodes_per_panel: usize) -> Result<f64, ChernWeilError> {
    let panels = 16;
    let breaks: Vec<f64> =
        (0..=panels).map(|i| BAND.0 + (BAND.1 - BAND.0) * i as f64 / panels as f64).collect();
    let axis = Axis::panels(&breaks, panels * nodes_per_panel)?;
    Ok(axis.integrate(|h| {
        let f = profile.value(h);
        (1.0 - f) * f * profile.derivative(h)
    }))
}
