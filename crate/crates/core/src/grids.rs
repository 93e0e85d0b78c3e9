//! Sampling lattices inside the square `K = [a, a+T]²`.
//!
//! Grid points are `(x_m, y_n) = (a + (m+b)T/N, a + (n+b)T/N)` for
//! `m, n = 0..N`. The three kinds select all points, the strict lower triangle
//! `m > n`, or the closed lower triangle `m ≥ n`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::basis::{Point2, Symmetry};
use crate::error::{Error, Result};

/// `true` iff `0 < y < x < 1`.
pub fn fundamental_domain_contains(pt: Point2) -> bool {
    0.0 < pt.y && pt.y < pt.x && pt.x < 1.0
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// Shift of the square's lower-left corner along the diagonal.
    pub a: f64,
    /// Sub-cell shift of the points, in `[0, 1]`.
    pub b: f64,
    /// Number of points per side.
    pub n: usize,
    /// Side length of the square.
    pub t: f64,
}

impl GridSpec {
    pub fn new(a: f64, b: f64, n: usize, t: f64) -> Result<Self> {
        let spec = GridSpec { a, b, n, t };
        spec.validate()?;
        Ok(spec)
    }

    /// `a = 0`, `b = ½`, `T = 1`.
    pub fn centered(n: usize) -> Result<Self> {
        GridSpec::new(0.0, 0.5, n, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidGrid("N must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.b) {
            return Err(Error::InvalidGrid(format!("b = {} is outside [0, 1]", self.b)));
        }
        if !(self.t.is_finite() && self.t > 0.0) {
            return Err(Error::InvalidGrid(format!("T = {} must be positive", self.t)));
        }
        if !self.a.is_finite() {
            return Err(Error::InvalidGrid(format!("a = {} must be finite", self.a)));
        }
        Ok(())
    }

    pub fn coordinate(&self, index: usize) -> f64 {
        self.a + (index as f64 + self.b) * self.t / self.n as f64
    }

    pub fn location(&self, m: usize, n: usize) -> Point2 {
        Point2::new(self.coordinate(m), self.coordinate(n))
    }

    /// The same grid after the rescaling `(x, y) → (x/T, y/T)`.
    pub fn normalized(&self) -> GridSpec {
        GridSpec {
            a: self.a / self.t,
            b: self.b,
            n: self.n,
            t: 1.0,
        }
    }

    /// Grid coordinate on the unit-side grid, `a/T + (m+b)/N`.
    pub fn unit_coordinate(&self, index: usize) -> f64 {
        self.a / self.t + (index as f64 + self.b) / self.n as f64
    }

    pub fn unit_location(&self, m: usize, n: usize) -> Point2 {
        Point2::new(self.unit_coordinate(m), self.unit_coordinate(n))
    }

    /// `τ_N = e^{2πi(Na + b)}` of the normalized grid.
    pub fn tau(&self) -> Complex64 {
        let turns = self.n as f64 * self.a / self.t + self.b;
        Complex64::from_polar(1.0, 2.0 * PI * turns)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GridKind {
    Full,
    Anti,
    Sym,
}

impl GridKind {
    pub const fn includes(self, m: usize, n: usize) -> bool {
        match self {
            GridKind::Full => true,
            GridKind::Anti => m > n,
            GridKind::Sym => m >= n,
        }
    }

    pub const fn cardinality(self, n: usize) -> usize {
        match self {
            GridKind::Full => n * n,
            GridKind::Anti => n * (n.saturating_sub(1)) / 2,
            GridKind::Sym => n * (n + 1) / 2,
        }
    }

    pub const fn name(self) -> &'static str {
        match self {
            GridKind::Full => "full",
            GridKind::Anti => "anti",
            GridKind::Sym => "sym",
        }
    }
}

impl From<Symmetry> for GridKind {
    fn from(s: Symmetry) -> Self {
        match s {
            Symmetry::Anti => GridKind::Anti,
            Symmetry::Sym => GridKind::Sym,
        }
    }
}

impl fmt::Display for GridKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridPoint {
    pub m: usize,
    pub n: usize,
    pub location: Point2,
}

/// Index pairs of a grid kind, `m` ascending then `n` ascending.
pub fn grid_indices(n: usize, kind: GridKind) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |m| (0..n).filter(move |&j| kind.includes(m, j)).map(move |j| (m, j)))
}

pub fn make_grid(spec: &GridSpec, kind: GridKind) -> Vec<GridPoint> {
    grid_indices(spec.n, kind)
        .map(|(m, n)| GridPoint {
            m,
            n,
            location: spec.location(m, n),
        })
        .collect()
}
