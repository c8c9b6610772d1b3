//! Closed-form function families on balls.
//!
//! Three families cover the continuous side of the analysis: linear
//! `ax + by + c`, quadratic `ax^2 + by^2 + cxy` (harmonic iff `a = -b`),
//! and the hyperbolic harmonic `a(x^2 - y^2)`. For linear and hyperbolic
//! functions the gradient maximum over a ball and the boundary pair slopes
//! have exact closed forms, and the ratio between them stays below sqrt(2):
//!
//! * linear: `max |grad| = sqrt(a^2 + b^2)`, while the axis diameter pairs
//!   already realize slopes `|a|` and `|b|`;
//! * hyperbolic on a ball at the origin: `max |grad| = 2|a|r`, while the
//!   pair `(0, r), (r, 0)` realizes slope `sqrt(2) |a| r`, giving the
//!   ratio `sqrt(2)` exactly.
//!
//! General quadratics and off-center hyperbolic balls fall back to dense
//! boundary sampling.

use crate::error::{Error, Result};

/// Samples used when no closed form applies.
const FALLBACK_GRADIENT_SAMPLES: usize = 4096;

/// Tolerance for treating coefficients or centers as exactly zero.
const COEFF_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalyticFunction {
    /// `a x + b y + c`
    Linear { a: f64, b: f64, c: f64 },
    /// `a x^2 + b y^2 + c x y`
    Quadratic { a: f64, b: f64, c: f64 },
    /// `a (x^2 - y^2)`
    Hyperbolic { a: f64 },
}

impl AnalyticFunction {
    pub fn linear(a: f64, b: f64, c: f64) -> Self {
        Self::Linear { a, b, c }
    }

    pub fn quadratic(a: f64, b: f64, c: f64) -> Self {
        Self::Quadratic { a, b, c }
    }

    pub fn hyperbolic(a: f64) -> Self {
        Self::Hyperbolic { a }
    }

    pub fn evaluate(&self, p: (f64, f64)) -> f64 {
        let (x, y) = p;
        match *self {
            Self::Linear { a, b, c } => a * x + b * y + c,
            Self::Quadratic { a, b, c } => a * x * x + b * y * y + c * x * y,
            Self::Hyperbolic { a } => a * (x * x - y * y),
        }
    }

    /// Exact gradient `(df/dx, df/dy)`.
    pub fn gradient(&self, p: (f64, f64)) -> (f64, f64) {
        let (x, y) = p;
        match *self {
            Self::Linear { a, b, .. } => (a, b),
            Self::Quadratic { a, b, c } => (2.0 * a * x + c * y, 2.0 * b * y + c * x),
            Self::Hyperbolic { a } => (2.0 * a * x, -2.0 * a * y),
        }
    }

    pub fn gradient_magnitude(&self, p: (f64, f64)) -> f64 {
        let (gx, gy) = self.gradient(p);
        gx.hypot(gy)
    }

    /// Whether the function is constant everywhere.
    pub fn is_constant(&self) -> bool {
        match *self {
            Self::Linear { a, b, .. } => a == 0.0 && b == 0.0,
            Self::Quadratic { a, b, c } => a == 0.0 && b == 0.0 && c == 0.0,
            Self::Hyperbolic { a } => a == 0.0,
        }
    }
}

/// `a x^2 + b y^2 + c xy` is harmonic exactly when its Laplacian
/// `2a + 2b` vanishes.
pub fn is_harmonic_quadratic(a: f64, b: f64, _c: f64) -> bool {
    (a + b).abs() <= COEFF_EPS
}

/// Closed disk with positive radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ball {
    pub center: (f64, f64),
    pub radius: f64,
}

impl Ball {
    pub fn new(center: (f64, f64), radius: f64) -> Self {
        assert!(
            radius > 0.0 && radius.is_finite(),
            "ball radius must be positive, got {radius}"
        );
        Self { center, radius }
    }

    pub fn unit() -> Self {
        Self::new((0.0, 0.0), 1.0)
    }

    pub fn at_origin(radius: f64) -> Self {
        Self::new((0.0, 0.0), radius)
    }

    fn is_origin_centered(&self) -> bool {
        self.center.0.abs() <= COEFF_EPS && self.center.1.abs() <= COEFF_EPS
    }

    /// Point on the boundary circle at angle `theta`.
    fn boundary_point(&self, theta: f64) -> (f64, f64) {
        (
            self.center.0 + self.radius * theta.cos(),
            self.center.1 + self.radius * theta.sin(),
        )
    }
}

/// Largest gradient magnitude over the ball.
///
/// Linear functions and origin-centered hyperbolic balls use the closed
/// forms `sqrt(a^2 + b^2)` and `2|a|r`; every other combination samples the
/// boundary circle, which is where the maximum lives for these families
/// (the squared gradient is a convex quadratic of position).
pub fn max_gradient_on_ball(f: &AnalyticFunction, ball: &Ball) -> f64 {
    match *f {
        AnalyticFunction::Linear { a, b, .. } => a.hypot(b),
        AnalyticFunction::Hyperbolic { a } if ball.is_origin_centered() => {
            2.0 * a.abs() * ball.radius
        }
        _ => (0..FALLBACK_GRADIENT_SAMPLES)
            .map(|i| {
                let theta = 2.0 * std::f64::consts::PI * i as f64
                    / FALLBACK_GRADIENT_SAMPLES as f64;
                f.gradient_magnitude(ball.boundary_point(theta))
            })
            .fold(0.0, f64::max),
    }
}

/// A boundary pair together with its chord slope `|u(p) - u(q)| / |p - q|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSlope {
    pub slope: f64,
    pub pair: ((f64, f64), (f64, f64)),
}

fn chord_slope(f: &AnalyticFunction, p: (f64, f64), q: (f64, f64)) -> f64 {
    let du = (f.evaluate(p) - f.evaluate(q)).abs();
    let dd = (p.0 - q.0).hypot(p.1 - q.1);
    du / dd
}

/// The fixed pairs that realize the closed-form slopes: the two axis
/// diameters and the quarter-turn diagonal, all relative to the ball
/// center.
pub fn designated_pairs(ball: &Ball) -> [((f64, f64), (f64, f64)); 3] {
    let (cx, cy) = ball.center;
    let r = ball.radius;
    [
        ((cx - r, cy), (cx + r, cy)),
        ((cx, cy - r), (cx, cy + r)),
        ((cx, cy + r), (cx + r, cy)),
    ]
}

/// Largest chord slope among `n_samples` equally spaced boundary points,
/// without the designated pairs. Sample sets nest under doubling of
/// `n_samples`, so refining by doubling can only increase the result.
pub fn max_sampled_pair_slope(
    f: &AnalyticFunction,
    ball: &Ball,
    n_samples: usize,
) -> Result<PairSlope> {
    if n_samples < 4 {
        return Err(Error::TooFewSamples(n_samples));
    }
    let points: Vec<(f64, f64)> = (0..n_samples)
        .map(|i| ball.boundary_point(2.0 * std::f64::consts::PI * i as f64 / n_samples as f64))
        .collect();
    let values: Vec<f64> = points.iter().map(|&p| f.evaluate(p)).collect();
    // chord length between samples i and j depends only on |i - j|
    let chord_sq: Vec<f64> = (0..n_samples)
        .map(|k| {
            let half = std::f64::consts::PI * k as f64 / n_samples as f64;
            let c = 2.0 * ball.radius * half.sin();
            c * c
        })
        .collect();
    let mut best = (0usize, 1usize);
    let mut best_du_sq = (values[0] - values[1]) * (values[0] - values[1]);
    let mut best_dd_sq = chord_sq[1];
    for i in 0..n_samples {
        for j in i + 1..n_samples {
            let du = values[i] - values[j];
            let du_sq = du * du;
            let dd_sq = chord_sq[j - i];
            // compare du_sq / dd_sq against the incumbent without dividing
            if du_sq * best_dd_sq > best_du_sq * dd_sq {
                best = (i, j);
                best_du_sq = du_sq;
                best_dd_sq = dd_sq;
            }
        }
    }
    let pair = (points[best.0], points[best.1]);
    Ok(PairSlope {
        slope: chord_slope(f, pair.0, pair.1),
        pair,
    })
}

/// Largest chord slope over `n_samples` equally spaced boundary points
/// augmented with the designated pairs, so the closed-form pairs are
/// always exercised exactly regardless of the sampling resolution.
pub fn max_boundary_pair_slope(
    f: &AnalyticFunction,
    ball: &Ball,
    n_samples: usize,
) -> Result<PairSlope> {
    let mut best = max_sampled_pair_slope(f, ball, n_samples)?;
    for (p, q) in designated_pairs(ball) {
        let slope = chord_slope(f, p, q);
        if slope > best.slope {
            best = PairSlope { slope, pair: (p, q) };
        }
    }
    Ok(best)
}

/// Gradient maximum, boundary pair slope maximum, and their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientSlopeRatio {
    pub max_gradient: f64,
    pub max_pair_slope: f64,
    pub ratio: f64,
}

/// Ratio of the gradient maximum over the ball to the boundary pair slope
/// maximum. For non-constant linear and origin-centered hyperbolic
/// functions this never exceeds sqrt(2); the hyperbolic ratio equals
/// sqrt(2) exactly when the designated pairs dominate the samples.
pub fn prop2_ratio(
    f: &AnalyticFunction,
    ball: &Ball,
    n_samples: usize,
) -> Result<GradientSlopeRatio> {
    if f.is_constant() {
        return Err(Error::ConstantFunction);
    }
    let max_gradient = max_gradient_on_ball(f, ball);
    let pair = max_boundary_pair_slope(f, ball, n_samples)?;
    Ok(GradientSlopeRatio {
        max_gradient,
        max_pair_slope: pair.slope,
        ratio: max_gradient / pair.slope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn name(&self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

/// The plane `a x + b y + c z + d = 0` solved for its dominant axis:
/// `solved = coef_a * first_remaining + coef_b * second_remaining + coef_d`,
/// with the remaining axes kept in `x < y < z` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneSolution {
    pub solved_axis: Axis,
    pub coef_a: f64,
    pub coef_b: f64,
    pub coef_d: f64,
}

impl PlaneSolution {
    /// The two axes the solved axis is expressed in.
    pub fn remaining_axes(&self) -> (Axis, Axis) {
        match self.solved_axis {
            Axis::X => (Axis::Y, Axis::Z),
            Axis::Y => (Axis::X, Axis::Z),
            Axis::Z => (Axis::X, Axis::Y),
        }
    }

    /// Value of the solved axis for given values of the remaining axes.
    pub fn solve(&self, first: f64, second: f64) -> f64 {
        self.coef_a * first + self.coef_b * second + self.coef_d
    }
}

/// Rewrites `a x + b y + c z + d = 0` by solving for the variable with the
/// largest absolute coefficient (ties go to the earlier axis), which caps
/// both remaining coefficients at absolute value 1.
pub fn normalize_plane(a: f64, b: f64, c: f64, d: f64) -> Result<PlaneSolution> {
    let coefficients = [a, b, c];
    if coefficients.iter().all(|&x| x == 0.0) {
        return Err(Error::DegeneratePlane);
    }
    let mut solved = 0;
    for i in 1..3 {
        if coefficients[i].abs() > coefficients[solved].abs() {
            solved = i;
        }
    }
    let pivot = coefficients[solved];
    let remaining: Vec<f64> = (0..3).filter(|&i| i != solved).map(|i| coefficients[i]).collect();
    Ok(PlaneSolution {
        solved_axis: match solved {
            0 => Axis::X,
            1 => Axis::Y,
            _ => Axis::Z,
        },
        coef_a: -remaining[0] / pivot,
        coef_b: -remaining[1] / pivot,
        coef_d: -d / pivot,
    })
}

/// `(|df/dx|^k + |df/dy|^k)^(1/k)`; the Euclidean gradient magnitude at
/// `k = 2`.
pub fn k_norm_gradient(f: &AnalyticFunction, p: (f64, f64), k: f64) -> Result<f64> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidNormExponent(k));
    }
    let (gx, gy) = f.gradient(p);
    Ok((gx.abs().powf(k) + gy.abs().powf(k)).powf(1.0 / k))
}
