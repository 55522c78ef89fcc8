//! Scalars with first-order derivatives, complex numbers over them, and
//! `SU(2)` in the `(z, w)` presentation `[[z, −w̄], [w, z̄]]`.
//!
//! Chart formulas are written once over [`Real`] and evaluated either on
//! `f64` or on [`Jet`], which carries the three partials in `(α, β, r)`.

use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Real:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + Send
    + Sync
{
    fn cst(c: f64) -> Self;
    fn value(self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sqrt(self) -> Self;
}

impl Real for f64 {
    fn cst(c: f64) -> Self {
        c
    }
    fn value(self) -> f64 {
        self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

/// A value with its gradient in three coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub v: f64,
    pub d: [f64; 3],
}

impl Jet {
    pub fn variable(v: f64, axis: usize) -> Self {
        let mut d = [0.0; 3];
        d[axis] = 1.0;
        Jet { v, d }
    }

    fn chain(self, v: f64, dv: f64) -> Self {
        Jet { v, d: self.d.map(|x| x * dv) }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, d: [self.d[0] + o.d[0], self.d[1] + o.d[1], self.d[2] + o.d[2]] }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, d: [self.d[0] - o.d[0], self.d[1] - o.d[1], self.d[2] - o.d[2]] }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let d = [0, 1, 2].map(|i| self.d[i] * o.v + self.v * o.d[i]);
        Jet { v: self.v * o.v, d }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let q = self.v / o.v;
        let d = [0, 1, 2].map(|i| (self.d[i] - q * o.d[i]) / o.v);
        Jet { v: q, d }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet { v: -self.v, d: self.d.map(|x| -x) }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, c: f64) -> Jet {
        Jet { v: self.v * c, d: self.d.map(|x| x * c) }
    }
}

impl Real for Jet {
    fn cst(c: f64) -> Self {
        Jet { v: c, d: [0.0; 3] }
    }
    fn value(self) -> f64 {
        self.v
    }
    fn sin(self) -> Self {
        self.chain(self.v.sin(), self.v.cos())
    }
    fn cos(self) -> Self {
        self.chain(self.v.cos(), -self.v.sin())
    }
    fn sqrt(self) -> Self {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s)
    }
}

/// `re + i·im` over any [`Real`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cx<T> {
    pub re: T,
    pub im: T,
}

pub type C64 = Cx<f64>;

impl<T: Real> Cx<T> {
    pub fn new(re: T, im: T) -> Self {
        Cx { re, im }
    }

    pub fn real(re: T) -> Self {
        Cx { re, im: T::cst(0.0) }
    }

    pub fn zero() -> Self {
        Self::real(T::cst(0.0))
    }

    pub fn one() -> Self {
        Self::real(T::cst(1.0))
    }

    /// `e^{iθ}`.
    pub fn cis(theta: T) -> Self {
        Cx { re: theta.cos(), im: theta.sin() }
    }

    pub fn conj(self) -> Self {
        Cx { re: self.re, im: -self.im }
    }

    pub fn scale(self, s: T) -> Self {
        Cx { re: self.re * s, im: self.im * s }
    }

    pub fn norm_sqr(self) -> T {
        self.re * self.re + self.im * self.im
    }

    pub fn value(self) -> C64 {
        Cx { re: self.re.value(), im: self.im.value() }
    }
}

impl C64 {
    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl<T: Real> Add for Cx<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Cx { re: self.re + o.re, im: self.im + o.im }
    }
}

impl<T: Real> Sub for Cx<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Cx { re: self.re - o.re, im: self.im - o.im }
    }
}

impl<T: Real> Mul for Cx<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Cx { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl<T: Real> Neg for Cx<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Cx { re: -self.re, im: -self.im }
    }
}

impl<T: Real> Mul<f64> for Cx<T> {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        Cx { re: self.re * c, im: self.im * c }
    }
}

/// The matrix `[[z, −w̄], [w, z̄]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Su2<T> {
    pub z: Cx<T>,
    pub w: Cx<T>,
}

pub type SU2Matrix = Su2<f64>;

const DRIFT_TOLERANCE: f64 = 1e-13;

impl<T: Real> Su2<T> {
    pub fn new(z: Cx<T>, w: Cx<T>) -> Self {
        Su2 { z, w }
    }

    pub fn identity() -> Self {
        Su2 { z: Cx::one(), w: Cx::zero() }
    }

    /// `(a, b)(c, d) = (ac − b̄d, bc + ād)`.
    pub fn mul(self, o: Self) -> Self {
        Su2 { z: self.z * o.z - self.w.conj() * o.w, w: self.w * o.z + self.z.conj() * o.w }
    }

    /// For unit elements the inverse is the adjoint `(z̄, −w)`.
    pub fn inv(self) -> Self {
        Su2 { z: self.z.conj(), w: -self.w }
    }

    /// Repeated squaring; negative powers go through the inverse.
    /// Long chains are renormalized onto the unit sphere.
    pub fn pow(self, k: i64) -> Self {
        let mut base = if k < 0 { self.inv() } else { self };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity();
        let mut steps = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
                steps += 1;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(base);
                steps += 1;
            }
            if steps > 8 {
                acc = acc.renormalized();
                base = base.renormalized();
                steps = 0;
            }
        }
        acc
    }

    pub fn norm_sqr(self) -> T {
        self.z.norm_sqr() + self.w.norm_sqr()
    }

    /// Rescales to `|z|² + |w|² = 1` when the drift exceeds `1e-13`.
    pub fn renormalized(self) -> Self {
        let n2 = self.norm_sqr();
        if (n2.value() - 1.0).abs() <= DRIFT_TOLERANCE {
            return self;
        }
        let s = T::cst(1.0) / n2.sqrt();
        Su2 { z: self.z.scale(s), w: self.w.scale(s) }
    }

    pub fn value(self) -> SU2Matrix {
        Su2 { z: self.z.value(), w: self.w.value() }
    }
}

impl SU2Matrix {
    pub fn unit_defect(self) -> f64 {
        (self.norm_sqr() - 1.0).abs()
    }

    /// Frobenius distance between two elements.
    pub fn distance(self, o: Self) -> f64 {
        // both columns of the matrix carry (z, w) up to conjugation
        (2.0 * ((self.z - o.z).norm_sqr() + (self.w - o.w).norm_sqr())).sqrt()
    }

    /// `‖ab − ba‖_F`.
    pub fn commutator_norm(self, o: Self) -> f64 {
        self.mul(o).distance(o.mul(self))
    }

    pub fn to_matrix(self) -> Mat2 {
        [[self.z, -self.w.conj()], [self.w, self.z.conj()]]
    }
}

/// A general complex 2×2 matrix, row major.
pub type Mat2 = [[C64; 2]; 2];

pub fn mat_zero() -> Mat2 {
    [[C64::zero(); 2]; 2]
}

pub fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = mat_zero();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_add(a: &Mat2, b: &Mat2) -> Mat2 {
    [[a[0][0] + b[0][0], a[0][1] + b[0][1]], [a[1][0] + b[1][0], a[1][1] + b[1][1]]]
}

pub fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    [[a[0][0] - b[0][0], a[0][1] - b[0][1]], [a[1][0] - b[1][0], a[1][1] - b[1][1]]]
}

pub fn mat_scale(a: &Mat2, s: f64) -> Mat2 {
    [[a[0][0] * s, a[0][1] * s], [a[1][0] * s, a[1][1] * s]]
}

pub fn mat_max_abs(a: &Mat2) -> f64 {
    a.iter().flatten().map(|c| c.abs()).fold(0.0, f64::max)
}
