//! Pointwise evaluation of the four function families.
//!
//! With `e(t) = exp(2πi t)` the exponential families are the 2×2 determinant and
//! permanent
//!
//! ```text
//! E⁻_(k,l)(x,y) = e(kx + ly) − e(ky + lx)
//! E⁺_(k,l)(x,y) = e(kx + ly) + e(ky + lx)
//! ```
//!
//! and the cosine families use the half argument `π`:
//!
//! ```text
//! cos⁻_(k,l)(x,y) = cos(πkx)cos(πly) − cos(πlx)cos(πky)
//! cos⁺_(k,l)(x,y) = cos(πkx)cos(πly) + cos(πlx)cos(πky)
//! ```
//!
//! The evaluators accept any label, dominant or not, so that the label and
//! argument symmetries can be checked from outside the dominant cone.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

/// A frequency that is an integer or an integer plus one half.
///
/// Stored as a count of halves, so `3/2` is `Freq(3)` and `2` is `Freq(4)`.
/// Comparisons and arithmetic on labels are therefore exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Freq(i32);

impl Freq {
    pub const ZERO: Freq = Freq(0);

    pub const fn int(k: i32) -> Self {
        Freq(2 * k)
    }

    /// The half-integer `k + ½`.
    pub const fn half_shifted(k: i32) -> Self {
        Freq(2 * k + 1)
    }

    pub const fn from_halves(halves: i32) -> Self {
        Freq(halves)
    }

    pub const fn halves(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer value, if this is an integer frequency.
    pub const fn as_int(self) -> Option<i32> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) * 0.5
    }

    pub const fn neg(self) -> Self {
        Freq(-self.0)
    }
}

impl From<i32> for Freq {
    fn from(k: i32) -> Self {
        Freq::int(k)
    }
}

impl fmt::Display for Freq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_int() {
            Some(k) => write!(f, "{k}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid frequency {0:?}: expected an integer or a fraction with denominator 2")]
pub struct ParseFreqError(String);

impl FromStr for Freq {
    type Err = ParseFreqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseFreqError(s.to_owned());
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i32>().map(Freq::int).map_err(|_| err()),
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| err())?;
                match den.trim() {
                    "1" => Ok(Freq::int(num)),
                    "2" => Ok(Freq(num)),
                    _ => Err(err()),
                }
            }
        }
    }
}

/// A label `(k, l)` of a basis function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrequencyPair {
    pub k: Freq,
    pub l: Freq,
}

impl FrequencyPair {
    pub const fn new(k: Freq, l: Freq) -> Self {
        FrequencyPair { k, l }
    }

    /// An integer pair.
    pub const fn int(k: i32, l: i32) -> Self {
        FrequencyPair {
            k: Freq::int(k),
            l: Freq::int(l),
        }
    }

    /// The pair `(k + ½, l + ½)` used by the type III and IV cosine transforms.
    pub const fn half_shifted(k: i32, l: i32) -> Self {
        FrequencyPair {
            k: Freq::half_shifted(k),
            l: Freq::half_shifted(l),
        }
    }

    pub const fn swap(self) -> Self {
        FrequencyPair {
            k: self.l,
            l: self.k,
        }
    }

    pub fn is_strictly_dominant(self) -> bool {
        self.k > self.l
    }

    pub fn is_dominant(self) -> bool {
        self.k >= self.l
    }

    /// Integer components, if both are integers.
    pub fn as_int(self) -> Option<(i32, i32)> {
        Some((self.k.as_int()?, self.l.as_int()?))
    }
}

impl fmt::Display for FrequencyPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub const fn swap(self) -> Self {
        Point2 {
            x: self.y,
            y: self.x,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        Point2::new(self.x * factor, self.y * factor)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Point2 { x, y }
    }
}

/// Behaviour under the swap `(x, y) → (y, x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Anti,
    Sym,
}

impl Symmetry {
    pub const fn sign(self) -> f64 {
        match self {
            Symmetry::Anti => -1.0,
            Symmetry::Sym => 1.0,
        }
    }

    /// Whether `k ≥ l` (symmetric) or `k > l` (antisymmetric) holds.
    pub fn admits<T: PartialOrd>(self, k: T, l: T) -> bool {
        match self {
            Symmetry::Anti => k > l,
            Symmetry::Sym => k >= l,
        }
    }

    pub fn admits_pair(self, p: FrequencyPair) -> bool {
        self.admits(p.k, p.l)
    }
}

/// The diagonal weight `G_kl`: 2 on the diagonal, 1 elsewhere.
pub fn diagonal_weight<T: PartialEq>(k: T, l: T) -> f64 {
    if k == l {
        2.0
    } else {
        1.0
    }
}

#[inline]
fn unit_phase(turns: f64) -> Complex64 {
    let theta = 2.0 * PI * turns;
    Complex64::new(theta.cos(), theta.sin())
}

/// `E⁻_(k,l)(x,y) = e^{2πi(kx+ly)} − e^{2πi(ky+lx)}`.
pub fn exp_anti(p: FrequencyPair, pt: Point2) -> Complex64 {
    let (k, l) = (p.k.value(), p.l.value());
    unit_phase(k * pt.x + l * pt.y) - unit_phase(k * pt.y + l * pt.x)
}

/// `E⁺_(k,l)(x,y) = e^{2πi(kx+ly)} + e^{2πi(ky+lx)}`.
pub fn exp_sym(p: FrequencyPair, pt: Point2) -> Complex64 {
    let (k, l) = (p.k.value(), p.l.value());
    unit_phase(k * pt.x + l * pt.y) + unit_phase(k * pt.y + l * pt.x)
}

/// `cos⁻_(k,l)(x,y) = cos(πkx)cos(πly) − cos(πlx)cos(πky)`.
pub fn cos_anti(p: FrequencyPair, pt: Point2) -> f64 {
    let (k, l) = (p.k.value(), p.l.value());
    (PI * k * pt.x).cos() * (PI * l * pt.y).cos() - (PI * l * pt.x).cos() * (PI * k * pt.y).cos()
}

/// `cos⁺_(k,l)(x,y) = cos(πkx)cos(πly) + cos(πlx)cos(πky)`.
pub fn cos_sym(p: FrequencyPair, pt: Point2) -> f64 {
    let (k, l) = (p.k.value(), p.l.value());
    (PI * k * pt.x).cos() * (PI * l * pt.y).cos() + (PI * l * pt.x).cos() * (PI * k * pt.y).cos()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisFamily {
    ExpAnti,
    ExpSym,
    CosAnti,
    CosSym,
}

impl BasisFamily {
    pub const ALL: [BasisFamily; 4] = [
        BasisFamily::ExpAnti,
        BasisFamily::ExpSym,
        BasisFamily::CosAnti,
        BasisFamily::CosSym,
    ];

    pub const fn symmetry(self) -> Symmetry {
        match self {
            BasisFamily::ExpAnti | BasisFamily::CosAnti => Symmetry::Anti,
            BasisFamily::ExpSym | BasisFamily::CosSym => Symmetry::Sym,
        }
    }

    pub const fn is_cosine(self) -> bool {
        matches!(self, BasisFamily::CosAnti | BasisFamily::CosSym)
    }

    pub const fn name(self) -> &'static str {
        match self {
            BasisFamily::ExpAnti => "exp-anti",
            BasisFamily::ExpSym => "exp-sym",
            BasisFamily::CosAnti => "cos-anti",
            BasisFamily::CosSym => "cos-sym",
        }
    }

    pub fn eval(self, p: FrequencyPair, pt: Point2) -> Complex64 {
        match self {
            BasisFamily::ExpAnti => exp_anti(p, pt),
            BasisFamily::ExpSym => exp_sym(p, pt),
            BasisFamily::CosAnti => cos_anti(p, pt).into(),
            BasisFamily::CosSym => cos_sym(p, pt).into(),
        }
    }

    /// Eigenvalue of the Laplacian: `−4π²(k²+l²)` for exponentials, `−π²(k²+l²)` for cosines.
    pub fn laplace_eigenvalue(self, p: FrequencyPair) -> f64 {
        let (k, l) = (p.k.value(), p.l.value());
        let scale = if self.is_cosine() { PI * PI } else { 4.0 * PI * PI };
        -scale * (k * k + l * l)
    }

    /// Eigenvalue of `∂²ₓ∂²ᵧ`: `16π⁴k²l²` for exponentials, `π⁴k²l²` for cosines.
    pub fn mixed_eigenvalue(self, p: FrequencyPair) -> f64 {
        let (k, l) = (p.k.value(), p.l.value());
        let pi4 = PI.powi(4);
        let scale = if self.is_cosine() { pi4 } else { 16.0 * pi4 };
        scale * k * k * l * l
    }

    /// Periodicity lattice of integer-labelled members: 1 for exponentials, 2 for cosines.
    pub const fn period(self) -> f64 {
        if self.is_cosine() {
            2.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BasisFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= TOL
    }

    #[test]
    fn equal_labels_vanish() {
        let pt = Point2::new(0.31, 0.77);
        for k in -3..=3 {
            assert_eq!(exp_anti(FrequencyPair::int(k, k), pt), Complex64::new(0.0, 0.0));
            assert_eq!(cos_anti(FrequencyPair::int(k, k), pt), 0.0);
        }
    }

    #[test]
    fn exp_anti_examples() {
        let p = FrequencyPair::int(1, 0);
        for t in [-0.4, 0.0, 0.25, 0.9] {
            assert_eq!(exp_anti(p, Point2::new(t, t)), Complex64::new(0.0, 0.0));
        }
        assert!(close(exp_anti(p, Point2::new(0.5, 0.0)), Complex64::new(-2.0, 0.0)));
    }

    #[test]
    fn exp_sym_examples() {
        let pt = Point2::new(0.13, -0.6);
        assert!(close(exp_sym(FrequencyPair::int(0, 0), pt), Complex64::new(2.0, 0.0)));
        let p = FrequencyPair::int(1, 0);
        assert!(close(exp_sym(p, Point2::new(0.5, 0.0)), Complex64::new(0.0, 0.0)));
        assert!(close(exp_sym(p, pt), exp_sym(p, pt.swap())));
    }

    #[test]
    fn cosine_examples() {
        let p = FrequencyPair::int(1, 0);
        assert!((cos_anti(p, Point2::new(1.0, 0.0)) + 2.0).abs() < TOL);
        assert!(cos_sym(p, Point2::new(1.0, 0.0)).abs() < TOL);
        assert!((cos_sym(FrequencyPair::int(0, 0), Point2::new(0.3, 0.4)) - 2.0).abs() < TOL);

        let half = FrequencyPair::half_shifted(1, 0);
        let pt = Point2::new(0.42, 0.17);
        assert!((cos_anti(half, pt) - cos_anti(half, Point2::new(-pt.x, pt.y))).abs() < TOL);

        let p21 = FrequencyPair::int(2, 1);
        assert!((cos_sym(p21, pt) - cos_sym(p21, pt.swap())).abs() < TOL);
    }

    #[test]
    fn freq_display_and_parse() {
        assert_eq!(Freq::half_shifted(1).to_string(), "3/2");
        assert_eq!(Freq::int(-2).to_string(), "-2");
        assert_eq!("3/2".parse::<Freq>().unwrap(), Freq::half_shifted(1));
        assert_eq!("-1/2".parse::<Freq>().unwrap(), Freq::from_halves(-1));
        assert_eq!("4".parse::<Freq>().unwrap(), Freq::int(4));
        assert_eq!("6/1".parse::<Freq>().unwrap(), Freq::int(6));
        assert!("1/3".parse::<Freq>().is_err());
        assert!("x".parse::<Freq>().is_err());
    }

    #[test]
    fn eigenvalues() {
        let p = FrequencyPair::int(2, 1);
        let pi2 = PI * PI;
        assert!((BasisFamily::ExpAnti.laplace_eigenvalue(p) + 20.0 * pi2).abs() < 1e-9);
        assert!((BasisFamily::CosSym.laplace_eigenvalue(p) + 5.0 * pi2).abs() < 1e-9);
        assert!((BasisFamily::ExpSym.mixed_eigenvalue(p) - 64.0 * pi2 * pi2).abs() < 1e-6);
        assert_eq!(BasisFamily::CosSym.laplace_eigenvalue(FrequencyPair::int(0, 0)), 0.0);
    }

    fn small_pair() -> impl Strategy<Value = FrequencyPair> {
        (-4i32..=4, -4i32..=4).prop_map(|(k, l)| FrequencyPair::int(k, l))
    }

    fn any_pair() -> impl Strategy<Value = FrequencyPair> {
        (-9i32..=9, -9i32..=9).prop_map(|(k, l)| FrequencyPair::new(Freq(k), Freq(l)))
    }

    fn point() -> impl Strategy<Value = Point2> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(x, y)| Point2::new(x, y))
    }

    proptest! {
        #[test]
        fn argument_swap(p in any_pair(), pt in point()) {
            prop_assert!(close(exp_anti(p, pt.swap()), -exp_anti(p, pt)));
            prop_assert!(close(exp_sym(p, pt.swap()), exp_sym(p, pt)));
            prop_assert!((cos_anti(p, pt.swap()) + cos_anti(p, pt)).abs() < TOL);
            prop_assert!((cos_sym(p, pt.swap()) - cos_sym(p, pt)).abs() < TOL);
        }

        #[test]
        fn label_swap(p in any_pair(), pt in point()) {
            prop_assert!(close(exp_anti(p.swap(), pt), -exp_anti(p, pt)));
            prop_assert!(close(exp_sym(p.swap(), pt), exp_sym(p, pt)));
            prop_assert!((cos_anti(p.swap(), pt) + cos_anti(p, pt)).abs() < TOL);
            prop_assert!((cos_sym(p.swap(), pt) - cos_sym(p, pt)).abs() < TOL);
        }

        #[test]
        fn periodicity(p in small_pair(), pt in point(), r in -3i32..=3, s in -3i32..=3) {
            let (r, s) = (f64::from(r), f64::from(s));
            let shifted = Point2::new(pt.x + r, pt.y + s);
            prop_assert!((exp_anti(p, shifted) - exp_anti(p, pt)).norm() < 1e-10);
            prop_assert!((exp_sym(p, shifted) - exp_sym(p, pt)).norm() < 1e-10);
            let shifted2 = Point2::new(pt.x + 2.0 * r, pt.y + 2.0 * s);
            prop_assert!((cos_anti(p, shifted2) - cos_anti(p, pt)).abs() < 1e-10);
            prop_assert!((cos_sym(p, shifted2) - cos_sym(p, pt)).abs() < 1e-10);
        }

        #[test]
        fn diagonal_shift(p in small_pair(), pt in point(), a in -2.0f64..2.0) {
            let (k, l) = p.as_int().unwrap();
            let phase = unit_phase(f64::from(k + l) * a);
            let shifted = Point2::new(pt.x + a, pt.y + a);
            prop_assert!((exp_anti(p, shifted) - phase * exp_anti(p, pt)).norm() < TOL);
            prop_assert!((exp_sym(p, shifted) - phase * exp_sym(p, pt)).norm() < TOL);
        }

        #[test]
        fn cosine_sign_invariance(p in any_pair(), pt in point()) {
            let flips = [
                Point2::new(-pt.x, pt.y),
                Point2::new(pt.x, -pt.y),
                Point2::new(-pt.x, -pt.y),
            ];
            for q in flips {
                prop_assert!((cos_anti(p, q) - cos_anti(p, pt)).abs() < TOL);
                prop_assert!((cos_sym(p, q) - cos_sym(p, pt)).abs() < TOL);
            }
            let labels = [
                FrequencyPair::new(p.k.neg(), p.l),
                FrequencyPair::new(p.k, p.l.neg()),
                FrequencyPair::new(p.k.neg(), p.l.neg()),
            ];
            for q in labels {
                prop_assert!((cos_anti(q, pt) - cos_anti(p, pt)).abs() < TOL);
                prop_assert!((cos_sym(q, pt) - cos_sym(p, pt)).abs() < TOL);
            }
        }

        #[test]
        fn antisymmetric_families_vanish_on_diagonal(p in any_pair(), t in -2.0f64..2.0) {
            let pt = Point2::new(t, t);
            prop_assert_eq!(exp_anti(p, pt), Complex64::new(0.0, 0.0));
            prop_assert_eq!(cos_anti(p, pt), 0.0);
        }

        #[test]
        fn freq_text_round_trip(h in -1000i32..1000) {
            let f = Freq(h);
            prop_assert_eq!(f.to_string().parse::<Freq>().unwrap(), f);
        }
    }
}
