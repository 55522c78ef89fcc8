//! Composite Gauss-Legendre rules on the chart box `[0,2π]×[0,π]×[0,1]`
//! and a summation order that does not depend on the worker count.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ChernWeilError, COLLAR_RADIUS};

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (x * p1 - p0) / (x * x - 1.0))
}

/// A one-dimensional open rule: Gauss-Legendre on each panel.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Axis {
    /// `n` nodes spread evenly over the panels `[breaks[i], breaks[i+1]]`.
    pub fn panels(breaks: &[f64], n: usize) -> Result<Self, ChernWeilError> {
        let panels = breaks.len().saturating_sub(1);
        if panels == 0 || n == 0 || n % panels != 0 {
            return Err(ChernWeilError::BadGrid(format!("{n} nodes cannot fill {panels} panels evenly")));
        }
        let (x, w) = gauss_legendre(n / panels);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for pair in breaks.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let half = 0.5 * (b - a);
            for (xi, wi) in x.iter().zip(&w) {
                nodes.push(a + half * (xi + 1.0));
                weights.push(half * wi);
            }
        }
        Ok(Axis { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        tree_sum(&self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).collect::<Vec<_>>())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSize {
    pub alpha: usize,
    pub beta: usize,
    pub r: usize,
}

impl GridSize {
    pub fn cube(n: usize) -> Self {
        GridSize { alpha: n, beta: n, r: n }
    }

    pub fn halved(self) -> Self {
        GridSize { alpha: self.alpha / 2, beta: self.beta / 2, r: self.r / 2 }
    }
}

/// Tensor rule on the chart box. The β-axis is split at `π/2` where the
/// example formulas change branch, and the r-axis at the collar radius
/// where the radial reparametrization stops.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureGrid {
    pub size: GridSize,
    pub alpha: Axis,
    pub beta: Axis,
    pub r: Axis,
}

impl QuadratureGrid {
    pub fn new(size: GridSize) -> Result<Self, ChernWeilError> {
        if size.beta % 2 != 0 || size.r % 2 != 0 {
            return Err(ChernWeilError::BadGrid("β and r node counts must be even".into()));
        }
        Ok(QuadratureGrid {
            size,
            alpha: Axis::panels(&[0.0, 2.0 * PI], size.alpha)?,
            beta: Axis::panels(&[0.0, PI / 2.0, PI], size.beta)?,
            r: Axis::panels(&[0.0, COLLAR_RADIUS, 1.0], size.r)?,
        })
    }

    pub fn cube(n: usize) -> Result<Self, ChernWeilError> {
        Self::new(GridSize::cube(n))
    }

    /// `Σ w f(node)` over the box. Each α-slab is summed in index order and
    /// the slab totals are combined pairwise, so the result is the same for
    /// any number of worker threads. The first error in slab order wins.
    pub fn integrate<T, E>(
        &self,
        f: impl Fn([f64; 3]) -> Result<T, E> + Sync,
        zero: T,
        add: impl Fn(T, T) -> T + Sync,
        scale: impl Fn(T, f64) -> T + Sync,
    ) -> Result<T, E>
    where
        T: Clone + Send + Sync,
        E: Send,
    {
        let slabs: Vec<Result<T, E>> = (0..self.alpha.len())
            .into_par_iter()
            .map(|i| {
                let a = self.alpha.nodes[i];
                let wa = self.alpha.weights[i];
                let mut acc = zero.clone();
                for (j, &b) in self.beta.nodes.iter().enumerate() {
                    let wb = wa * self.beta.weights[j];
                    for (k, &r) in self.r.nodes.iter().enumerate() {
                        let v = f([a, b, r])?;
                        acc = add(acc, scale(v, wb * self.r.weights[k]));
                    }
                }
                Ok(acc)
            })
            .collect();
        let mut values = Vec::with_capacity(slabs.len());
        for s in slabs {
            values.push(s?);
        }
        Ok(tree_reduce(values, zero, &add))
    }
}

/// Pairwise summation in index order.
pub fn tree_sum(xs: &[f64]) -> f64 {
    tree_reduce(xs.to_vec(), 0.0, &|a, b| a + b)
}

fn tree_reduce<T: Clone>(mut xs: Vec<T>, zero: T, add: &impl Fn(T, T) -> T) -> T {
    if xs.is_empty() {
        return zero;
    }
    while xs.len() > 1 {
        let mut next = Vec::with_capacity(xs.len().div_ceil(2));
        let mut it = xs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(add(a, b)),
                None => next.push(a),
            }
        }
        xs = next;
    }
    xs.pop().expect("one element left")
}
