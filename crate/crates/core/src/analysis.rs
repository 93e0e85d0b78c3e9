//! Quadrature on the fundamental triangle, interpolation error tables,
//! eigenfunction checks and boundary error profiles.
//!
//! Integrals over `F = {0 ≤ y ≤ x ≤ 1}` use the midpoint rule on an `R × R`
//! grid of cells over the unit square. Row sums run in parallel; the row
//! totals are added sequentially so the result does not depend on the thread count.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::basis::{diagonal_weight, BasisFamily, FrequencyPair, Point2, Symmetry};
use crate::cosine::{amdct, smdct, CosineNodeSet, CosineSampleSet, CosineVariant};
use crate::error::{Error, Result};
use crate::grids::{GridKind, GridSpec};
use crate::interpolation::{interp_anti, interp_sym};
use crate::transforms::SampleSet;

const CENTER: (f64, f64) = (0.707, 0.293);

fn radius_squared(pt: Point2) -> f64 {
    let (dx, dy) = (pt.x - CENTER.0, pt.y - CENTER.1);
    dx * dx + dy * dy
}

/// Gaussian bump `exp(-r²/(2σ²))` centred at `(0.707, 0.293)` with `σ = 0.079`.
pub fn gaussian_model(pt: Point2) -> f64 {
    let sigma = 0.079;
    (-radius_squared(pt) / (2.0 * sigma * sigma)).exp()
}

/// Radial ripple `cos(40 r) / 15` centred at `(0.707, 0.293)`.
pub fn ripple_model(pt: Point2) -> f64 {
    (40.0 * radius_squared(pt).sqrt()).cos() / 15.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    Gaussian,
    Ripple,
}

impl Model {
    pub fn eval(self, pt: Point2) -> f64 {
        match self {
            Model::Gaussian => gaussian_model(pt),
            Model::Ripple => ripple_model(pt),
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            Model::Gaussian => "gaussian",
            Model::Ripple => "ripple",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "gaussian" => Ok(Model::Gaussian),
            "ripple" => Ok(Model::Ripple),
            _ => Err(format!("unknown model '{s}' (expected gaussian or ripple)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// Cells strictly below the diagonal count twice, diagonal cells once, total halved.
    /// Exact bookkeeping for swap-symmetric integrands; only `x ≥ y` is ever evaluated.
    HalfSquare,
    /// Only cells whose centre has `x > y`.
    TriangleFilter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub resolution: usize,
    pub reduction: Reduction,
}

impl QuadratureSpec {
    pub fn new(resolution: usize, reduction: Reduction) -> Result<Self> {
        let q = QuadratureSpec { resolution, reduction };
        q.validate()?;
        Ok(q)
    }

    pub fn half_square(resolution: usize) -> Result<Self> {
        QuadratureSpec::new(resolution, Reduction::HalfSquare)
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::QuadratureResolution(self.resolution));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            resolution: 1000,
            reduction: Reduction::HalfSquare,
        }
    }
}

/// Midpoint-rule integral of `g` over the fundamental triangle.
pub fn integrate_fundamental<V, G>(g: G, q: &QuadratureSpec) -> Result<V>
where
    V: Zero + Add<Output = V> + Mul<f64, Output = V> + Send,
    G: Fn(Point2) -> V + Sync,
{
    q.validate()?;
    let r = q.resolution;
    let h = 1.0 / r as f64;
    let rows: Vec<V> = (0..r)
        .into_par_iter()
        .map(|i| {
            let x = (i as f64 + 0.5) * h;
            let mut below = V::zero();
            for j in 0..i {
                below = below + g(Point2::new(x, (j as f64 + 0.5) * h));
            }
            match q.reduction {
                Reduction::HalfSquare => below * 2.0 + g(Point2::new(x, x)),
                Reduction::TriangleFilter => below,
            }
        })
        .collect();
    let total = rows.into_iter().fold(V::zero(), |acc, v| acc + v);
    let scale = match q.reduction {
        Reduction::HalfSquare => h * h / 2.0,
        Reduction::TriangleFilter => h * h,
    };
    Ok(total * scale)
}

/// Inverse squared norm printed for each family: 1, `G⁻¹`, 4, `4 G⁻¹`.
///
/// For the cosine families these constants hold when `l ≥ 1`. With `l = 0` the
/// squared norm on the triangle is twice as large (four times for `k = l = 0`
/// symmetric); [`basis_norm_squared`] gives the actual value.
pub fn family_normalization(family: BasisFamily, p: FrequencyPair) -> f64 {
    let g = diagonal_weight(p.k, p.l);
    match family {
        BasisFamily::ExpAnti => 1.0,
        BasisFamily::ExpSym => 1.0 / g,
        BasisFamily::CosAnti => 4.0,
        BasisFamily::CosSym => 4.0 / g,
    }
}

/// Expansion coefficient `norm · ∫_F f · conj(φ_p)`.
pub fn continuous_coefficient<F>(f: F, family: BasisFamily, p: FrequencyPair, q: &QuadratureSpec) -> Result<Complex64>
where
    F: Fn(Point2) -> Complex64 + Sync,
{
    let integral: Complex64 = integrate_fundamental(|pt| f(pt) * family.eval(p, pt).conj(), q)?;
    Ok(integral * family_normalization(family, p))
}

/// `∫_F |φ_p|²` by quadrature.
pub fn basis_norm_squared(family: BasisFamily, p: FrequencyPair, q: &QuadratureSpec) -> Result<f64> {
    integrate_fundamental(|pt| family.eval(p, pt).norm_sqr(), q)
}

/// Normalized Gram matrix `norm_q ∫_F φ_p conj(φ_q)` over the given labels, in one pass.
pub fn orthogonality_matrix(family: BasisFamily, pairs: &[FrequencyPair], q: &QuadratureSpec) -> Result<Vec<Vec<Complex64>>> {
    let n = pairs.len();
    let flat: GramAccumulator = integrate_fundamental(
        |pt| {
            let vals: Vec<Complex64> = pairs.iter().map(|&p| family.eval(p, pt)).collect();
            GramAccumulator(
                vals.iter()
                    .flat_map(|a| vals.iter().map(move |b| a * b.conj()))
                    .collect(),
            )
        },
        q,
    )?;
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| flat.0.get(i * n + j).copied().unwrap_or_default() * family_normalization(family, pairs[j]))
                .collect()
        })
        .collect())
}

#[derive(Clone, Debug, Default)]
struct GramAccumulator(Vec<Complex64>);

impl Add for GramAccumulator {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.0.is_empty() {
            return rhs;
        }
        if rhs.0.is_empty() {
            return self;
        }
        GramAccumulator(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Mul<f64> for GramAccumulator {
    type Output = Self;

    fn mul(self, s: f64) -> Self {
        GramAccumulator(self.0.into_iter().map(|v| v * s).collect())
    }
}

impl Zero for GramAccumulator {
    fn zero() -> Self {
        GramAccumulator(Vec::new())
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }
}

/// `∫_F |ψ − f|²`.
pub fn l2_error<P, F>(psi: P, reference: F, q: &QuadratureSpec) -> Result<f64>
where
    P: Fn(Point2) -> Complex64 + Sync,
    F: Fn(Point2) -> Complex64 + Sync,
{
    integrate_fundamental(|pt| (psi(pt) - reference(pt)).norm_sqr(), q)
}

/// Finite-difference check of the Laplace and mixed fourth-derivative eigen-equations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplaceCheck {
    pub value: Complex64,
    pub laplacian: Complex64,
    pub eigenvalue: f64,
    /// `|Δφ − λφ|`.
    pub residual: f64,
    pub mixed: Complex64,
    pub mixed_eigenvalue: f64,
    /// `|∂⁴φ/∂x²∂y² − μφ|`.
    pub mixed_residual: f64,
}

impl LaplaceCheck {
    /// Both residuals within `1e-4 (1 + |eigenvalue|)`.
    pub fn within_budget(&self) -> bool {
        self.residual <= 1e-4 * (1.0 + self.eigenvalue.abs())
            && self.mixed_residual <= 1e-4 * (1.0 + self.mixed_eigenvalue.abs())
    }
}

/// The Laplacian uses the 5-point stencil with step `h`; the mixed derivative
/// `∂⁴/∂x²∂y²` uses the 9-point stencil at steps `5h` and `10h`, extrapolated.
pub fn laplace_residual(family: BasisFamily, p: FrequencyPair, pt: Point2, h: f64) -> LaplaceCheck {
    let f = |dx: f64, dy: f64| family.eval(p, Point2::new(pt.x + dx, pt.y + dy));
    let c = f(0.0, 0.0);
    let d2x = |dy: f64, h: f64| (f(h, dy) - f(0.0, dy) * 2.0 + f(-h, dy)) / (h * h);
    let laplacian = d2x(0.0, h) + (f(0.0, h) - c * 2.0 + f(0.0, -h)) / (h * h);
    let d4 = |h: f64| (d2x(h, h) - d2x(0.0, h) * 2.0 + d2x(-h, h)) / (h * h);
    // The fourth difference loses ~ε/h⁴ to cancellation, so it uses wider steps
    // and one Richardson step.
    let mixed = (d4(5.0 * h) * 4.0 - d4(10.0 * h)) / 3.0;
    let eigenvalue = family.laplace_eigenvalue(p);
    let mixed_eigenvalue = family.mixed_eigenvalue(p);
    LaplaceCheck {
        value: c,
        laplacian,
        eigenvalue,
        residual: (laplacian - c * eigenvalue).norm(),
        mixed,
        mixed_eigenvalue,
        mixed_residual: (mixed - c * mixed_eigenvalue).norm(),
    }
}

/// One row of the interpolation error table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorTableRow {
    pub n: usize,
    pub exp_anti: f64,
    pub exp_sym: f64,
    pub cos2_anti: f64,
    pub cos2_sym: f64,
}

impl ErrorTableRow {
    pub fn values(&self) -> [f64; 4] {
        [self.exp_anti, self.exp_sym, self.cos2_anti, self.cos2_sym]
    }
}

/// `L²` errors on `F` of the four interpolants of `model` for each `N`.
///
/// The exponential interpolants use `L^∓_(0,½,N,1)`; the cosine ones use the
/// variant-II node sets with `M = N`, which coincide with the same grids.
pub fn error_table(model: Model, ns: &[usize], q: &QuadratureSpec) -> Result<Vec<ErrorTableRow>> {
    q.validate()?;
    let f = move |pt: Point2| Complex64::from(model.eval(pt));
    ns.iter()
        .map(|&n| {
            let spec = GridSpec::centered(n)?;
            let anti = interp_anti(&SampleSet::from_fn(spec, GridKind::Anti, f)?)?.expand();
            let sym = interp_sym(&SampleSet::from_fn(spec, GridKind::Sym, f)?)?.expand();
            let ca = amdct(&CosineSampleSet::from_fn(
                CosineNodeSet::new(CosineVariant::II, Symmetry::Anti, n)?,
                |pt| model.eval(pt),
            ))?;
            let cs = smdct(&CosineSampleSet::from_fn(
                CosineNodeSet::new(CosineVariant::II, Symmetry::Sym, n)?,
                |pt| model.eval(pt),
            ))?;
            Ok(ErrorTableRow {
                n,
                exp_anti: l2_error(|pt| anti.eval(pt), f, q)?,
                exp_sym: l2_error(|pt| sym.eval(pt), f, q)?,
                cos2_anti: l2_error(|pt| ca.eval(pt).into(), f, q)?,
                cos2_sym: l2_error(|pt| cs.eval(pt).into(), f, q)?,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Edge {
    /// `y = 0`.
    Bottom,
    /// `x = 1`.
    Right,
    /// `x = y`.
    Diagonal,
}

/// Points of the closed triangle within `width` of the selected edges.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryStrip {
    pub edges: Vec<Edge>,
    pub width: f64,
    /// Samples along each edge.
    pub along: usize,
    /// Samples across the strip, including the edge itself.
    pub across: usize,
}

impl BoundaryStrip {
    pub fn new(edges: Vec<Edge>, width: f64) -> Self {
        BoundaryStrip {
            edges,
            width,
            along: 401,
            across: 5,
        }
    }

    /// The outer edges `y = 0` and `x = 1` with width 0.02.
    pub fn outer() -> Self {
        BoundaryStrip::new(vec![Edge::Bottom, Edge::Right], 0.02)
    }

    pub fn points(&self) -> Vec<Point2> {
        let lin = |count: usize, hi: f64| -> Vec<f64> {
            if count <= 1 {
                vec![0.0]
            } else {
                (0..count).map(|i| hi * i as f64 / (count - 1) as f64).collect()
            }
        };
        let ts = lin(self.along, 1.0);
        let ws = lin(self.across, self.width);
        let mut pts = Vec::new();
        for edge in &self.edges {
            for &t in &ts {
                for &w in &ws {
                    let pt = match edge {
                        Edge::Bottom => Point2::new(t, w),
                        Edge::Right => Point2::new(1.0 - w, t),
                        Edge::Diagonal => Point2::new(t + w, t),
                    };
                    if pt.x >= pt.y && pt.x <= 1.0 && pt.y >= 0.0 {
                        pts.push(pt);
                    }
                }
            }
        }
        pts
    }
}

/// `max |ψ − f|` over the strip's sample points.
pub fn gibbs_profile<P, F>(psi: P, reference: F, strip: &BoundaryStrip) -> f64
where
    P: Fn(Point2) -> f64 + Sync,
    F: Fn(Point2) -> f64 + Sync,
{
    strip
        .points()
        .par_iter()
        .map(|&pt| (psi(pt) - reference(pt)).abs())
        .reduce(|| 0.0, f64::max)
}
