//! `SU(2)`-valued maps on the chart box `(α, β, r)`: the example cocycles,
//! clutching functions built from them, and the built-in registry.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use super::algebra::{Cx, Jet, Real, Su2, SU2Matrix};
use super::{ChernWeilError, COLLAR_RADIUS};

/// A map from chart coordinates `[α, β, r]` into `SU(2)`.
pub trait ChartMap: Send + Sync {
    fn value(&self, p: [f64; 3]) -> SU2Matrix;

    /// Value and partials in `(α, β, r)`, when available in closed form.
    fn jet(&self, _p: [f64; 3]) -> Option<Su2<Jet>> {
        None
    }
}

pub type Chart = Arc<dyn ChartMap>;

/// A chart written once over [`Real`], so the same code yields values and
/// exact partials.
pub trait Su2Formula: Send + Sync {
    fn eval<T: Real>(&self, p: [T; 3]) -> Su2<T>;
}

pub struct Analytic<F>(pub F);

impl<F: Su2Formula> ChartMap for Analytic<F> {
    fn value(&self, p: [f64; 3]) -> SU2Matrix {
        self.0.eval(p)
    }

    fn jet(&self, p: [f64; 3]) -> Option<Su2<Jet>> {
        Some(self.0.eval([Jet::variable(p[0], 0), Jet::variable(p[1], 1), Jet::variable(p[2], 2)]))
    }
}

pub fn analytic<F: Su2Formula + 'static>(f: F) -> Chart {
    Arc::new(Analytic(f))
}

/// A value-only chart from a closure; derivatives come from differences.
pub struct FnChart<F>(pub F);

impl<F: Fn([f64; 3]) -> SU2Matrix + Send + Sync> ChartMap for FnChart<F> {
    fn value(&self, p: [f64; 3]) -> SU2Matrix {
        (self.0)(p)
    }
}

/// Pointwise product of charts, each optionally inverted.
pub struct Product(pub Vec<(Chart, bool)>);

impl ChartMap for Product {
    fn value(&self, p: [f64; 3]) -> SU2Matrix {
        self.0.iter().fold(SU2Matrix::identity(), |acc, (c, inv)| {
            let v = c.value(p);
            acc.mul(if *inv { v.inv() } else { v })
        })
    }

    fn jet(&self, p: [f64; 3]) -> Option<Su2<Jet>> {
        let mut acc = Su2::identity();
        for (c, inv) in &self.0 {
            let v = c.jet(p)?;
            acc = acc.mul(if *inv { v.inv() } else { v });
        }
        Some(acc)
    }
}

/// `ρ^k` pointwise: the cocycle of the k-th associated bundle.
pub struct Power {
    pub base: Chart,
    pub k: i64,
}

impl ChartMap for Power {
    fn value(&self, p: [f64; 3]) -> SU2Matrix {
        self.base.value(p).pow(self.k)
    }

    fn jet(&self, p: [f64; 3]) -> Option<Su2<Jet>> {
        Some(self.base.jet(p)?.pow(self.k))
    }
}

/// Smooth radial reparametrization that is constant 1 from the collar
/// radius outward, making the example cocycles radially independent on
/// the overlap.
pub fn collar<T: Real>(r: T) -> T {
    if r.value() < COLLAR_RADIUS {
        (r * (PI / (2.0 * COLLAR_RADIUS))).sin()
    } else {
        T::cst(1.0)
    }
}

/// The first example cocycle:
/// `(sin(πr/2) e^{iα}, cos(πr/2))` for `β ≤ π/2` and
/// `(sin(rβ) e^{iα}, cos(rβ))` otherwise.
pub struct ExampleRho1 {
    pub collared: bool,
}

impl Su2Formula for ExampleRho1 {
    fn eval<T: Real>(&self, [a, b, r]: [T; 3]) -> Su2<T> {
        let r = if self.collared { collar(r) } else { r };
        let angle = if b.value() <= PI / 2.0 { r * (PI / 2.0) } else { r * b };
        Su2::new(Cx::cis(a).scale(angle.sin()), Cx::real(angle.cos()))
    }
}

/// The second example cocycle:
/// `(−cos(πr) e^{2iβ}, sin(πr))` for `β ≤ π/2` and `(cos(πr), sin(πr))`
/// otherwise.
pub struct ExampleRho2 {
    pub collared: bool,
}

impl Su2Formula for ExampleRho2 {
    fn eval<T: Real>(&self, [_, b, r]: [T; 3]) -> Su2<T> {
        let r = if self.collared { collar(r) } else { r };
        let t = r * PI;
        let z = if b.value() <= PI / 2.0 { -Cx::cis(b * 2.0).scale(t.cos()) } else { Cx::real(t.cos()) };
        Su2::new(z, Cx::real(t.sin()))
    }
}

pub struct Identity;

impl Su2Formula for Identity {
    fn eval<T: Real>(&self, _: [T; 3]) -> Su2<T> {
        Su2::identity()
    }
}

/// The hemisphere of `S³ ⊂ ℍ` with `q₃ ≥ 0` (upper) or `q₃ ≤ 0`, as the
/// image of the unit ball in spherical coordinates with `t = πr/2`:
/// `q = (sin t sin β cos α, sin t sin β sin α, sin t cos β, ±cos t)`,
/// read as `(z, w) = (q₀ + i q₁, q₂ + i q₃)`.
pub struct Hemisphere {
    pub upper: bool,
}

impl Su2Formula for Hemisphere {
    fn eval<T: Real>(&self, [a, b, r]: [T; 3]) -> Su2<T> {
        let t = r * (PI / 2.0);
        let s = t.sin();
        let c = if self.upper { t.cos() } else { -t.cos() };
        Su2::new(Cx::cis(a).scale(s * b.sin()), Cx::new(s * b.cos(), c))
    }
}

/// `q ↦ q^d` on a hemisphere chart.
pub struct QuaternionPower {
    pub upper: bool,
    pub d: i64,
}

impl Su2Formula for QuaternionPower {
    fn eval<T: Real>(&self, p: [T; 3]) -> Su2<T> {
        Hemisphere { upper: self.upper }.eval(p).pow(self.d)
    }
}

/// The pair `(ρ₁, ρ₂)` on the disk `D₃`.
#[derive(Clone)]
pub struct CocyclePair {
    pub rho1: Chart,
    pub rho2: Chart,
}

/// Worst values of the two cocycle invariants on a sample of the overlap.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CocycleCheck {
    /// Largest `|∂ρ/∂r|` on `V`.
    pub radial_derivative: f64,
    /// Largest `‖ρ₁ρ₂ − ρ₂ρ₁‖` on the closure of `V`.
    pub commutator: f64,
}

impl CocycleCheck {
    pub const RADIAL_TOLERANCE: f64 = 1e-6;
    pub const COMMUTATOR_TOLERANCE: f64 = 1e-10;

    pub fn holds(&self) -> bool {
        self.radial_derivative <= Self::RADIAL_TOLERANCE && self.commutator <= Self::COMMUTATOR_TOLERANCE
    }
}

impl CocyclePair {
    /// Samples `n³` points of `V = {r > r_V}` (and its closure for the
    /// commutator) with `α` and `β` covering their full ranges.
    pub fn check(&self, n: usize) -> CocycleCheck {
        let h = 1e-7;
        let mut radial: f64 = 0.0;
        let mut comm: f64 = 0.0;
        for i in 0..n {
            let a = 2.0 * PI * i as f64 / n as f64;
            for j in 0..n {
                let b = PI * j as f64 / (n - 1).max(1) as f64;
                for k in 0..n {
                    let closed = COLLAR_RADIUS + (1.0 - COLLAR_RADIUS) * k as f64 / (n - 1).max(1) as f64;
                    let open = COLLAR_RADIUS + (1.0 - COLLAR_RADIUS) * (k as f64 + 0.5) / n as f64;
                    for rho in [&self.rho1, &self.rho2] {
                        let d = rho.value([a, b, open + h]).distance(rho.value([a, b, open - h])) / (2.0 * h);
                        radial = radial.max(d);
                    }
                    let p = [a, b, closed];
                    comm = comm.max(self.rho1.value(p).commutator_norm(self.rho2.value(p)));
                }
            }
        }
        CocycleCheck { radial_derivative: radial, commutator: comm }
    }
}

/// The example pair with the radial collar applied, so that both cocycle
/// invariants hold.
pub fn build_example_cocycles() -> CocyclePair {
    CocyclePair {
        rho1: analytic(ExampleRho1 { collared: true }),
        rho2: analytic(ExampleRho2 { collared: true }),
    }
}

/// The example formulas verbatim, without the collar. They depend on `r`
/// all the way to the boundary.
pub fn build_raw_example_cocycles() -> CocyclePair {
    CocyclePair {
        rho1: analytic(ExampleRho1 { collared: false }),
        rho2: analytic(ExampleRho2 { collared: false }),
    }
}

/// Maps for the two hemispheres `D₊` (upper) and `D₋` (lower) of `S³`,
/// both parametrized by the chart box and glued along `r = 1`.
#[derive(Clone)]
pub struct ClutchingFunction {
    pub upper: Chart,
    pub lower: Chart,
}

impl ClutchingFunction {
    pub fn constant() -> Self {
        ClutchingFunction { upper: analytic(Identity), lower: analytic(Identity) }
    }

    pub fn quaternion_power(d: i64) -> Self {
        ClutchingFunction {
            upper: analytic(QuaternionPower { upper: true, d }),
            lower: analytic(QuaternionPower { upper: false, d }),
        }
    }

    /// The same map with the hemisphere labels exchanged.
    pub fn swapped(&self) -> Self {
        ClutchingFunction { upper: self.lower.clone(), lower: self.upper.clone() }
    }

    /// Largest distance between the two charts on the gluing sphere `r = 1`.
    pub fn boundary_mismatch(&self, n: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let p = [2.0 * PI * i as f64 / n as f64, PI * j as f64 / (n - 1).max(1) as f64, 1.0];
                worst = worst.max(self.upper.value(p).distance(self.lower.value(p)));
            }
        }
        worst
    }
}

/// `φ_E = ρ₁ρ₂` on both hemispheres, and `φ_{E⁻¹}` with `ρ₁⁻¹ρ₂⁻¹` on the
/// upper and `ρ₂⁻¹ρ₁⁻¹` on the lower hemisphere. The second is well defined
/// only where the cocycles commute on the gluing sphere, which is checked.
pub fn build_clutching_pair(pair: &CocyclePair) -> Result<(ClutchingFunction, ClutchingFunction), ChernWeilError> {
    let n = 64;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let p = [2.0 * PI * i as f64 / n as f64, PI * j as f64 / (n - 1) as f64, 1.0];
            worst = worst.max(pair.rho1.value(p).commutator_norm(pair.rho2.value(p)));
        }
    }
    if worst > CocycleCheck::COMMUTATOR_TOLERANCE {
        return Err(ChernWeilError::NotCommuting(worst));
    }
    let (r1, r2) = (pair.rho1.clone(), pair.rho2.clone());
    let e: Chart = Arc::new(Product(vec![(r1.clone(), false), (r2.clone(), false)]));
    let phi_e = ClutchingFunction { upper: e.clone(), lower: e };
    let phi_e_inv = ClutchingFunction {
        upper: Arc::new(Product(vec![(r1.clone(), true), (r2.clone(), true)])),
        lower: Arc::new(Product(vec![(r2, true), (r1, true)])),
    };
    Ok((phi_e, phi_e_inv))
}

/// Names accepted by [`example_clutching`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Example {
    /// `φ_{E⁻¹}` of the collared example pair.
    Paper,
    /// `φ_E` of the collared example pair.
    PaperTrivial,
    Constant,
    QuaternionPower(i64),
}

impl Example {
    pub fn parse(name: &str) -> Result<Self, ChernWeilError> {
        match name {
            "paper" => Ok(Example::Paper),
            "paper-trivial" => Ok(Example::PaperTrivial),
            "constant" => Ok(Example::Constant),
            _ => name
                .strip_prefix("qpow:")
                .and_then(|d| d.parse().ok())
                .map(Example::QuaternionPower)
                .ok_or_else(|| ChernWeilError::UnknownExample(name.to_string())),
        }
    }

    /// The known second Chern number, where one is known independently of
    /// the quadrature.
    pub fn reference(self) -> Option<f64> {
        match self {
            Example::Paper => Some(-1.0),
            Example::PaperTrivial | Example::Constant => Some(0.0),
            Example::QuaternionPower(_) => None,
        }
    }

    pub fn clutching(self) -> Result<ClutchingFunction, ChernWeilError> {
        Ok(match self {
            Example::Paper => build_clutching_pair(&build_example_cocycles())?.1,
            Example::PaperTrivial => build_clutching_pair(&build_example_cocycles())?.0,
            Example::Constant => ClutchingFunction::constant(),
            Example::QuaternionPower(d) => ClutchingFunction::quaternion_power(d),
        })
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Example::Paper => write!(f, "paper"),
            Example::PaperTrivial => write!(f, "paper-trivial"),
            Example::Constant => write!(f, "constant"),
            Example::QuaternionPower(d) => write!(f, "qpow:{d}"),
        }
    }
}

pub fn example_clutching(name: &str) -> Result<ClutchingFunction, ChernWeilError> {
    Example::parse(name)?.clutching()
}
