//! Trigonometric interpolation on full, antisymmetric and symmetric grids.
//!
//! For `N = 2M+1` the interpolant uses every frequency in `{-M..M}²`. For
//! `N = 2M` the same range carries `4M+1` superfluous plane waves; they are
//! tied to the free ones through the grid phase `τ_N`:
//!
//! ```text
//! c_(k,-M) = τ c_(k,M),   c_(-M,l) = τ c_(M,l),   c_(-M,-M) = τ² c_(M,M)
//! ```
//!
//! Free coefficients are the ones with both labels in `{-M..M}` (odd) or
//! `{-M+1..M}` (even). Only those are stored; the rest are rebuilt on demand
//! by [`InterpCoefficients::expand`].

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::basis::{diagonal_weight, FrequencyPair, Point2, Symmetry};
use crate::error::{Error, Result};
use crate::grids::{GridKind, GridSpec};
use crate::transforms::{node_weight, projection, SampleSet, Spectrum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InterpFamily {
    Full,
    Anti,
    Sym,
}

impl InterpFamily {
    pub const fn name(self) -> &'static str {
        match self {
            InterpFamily::Full => "full",
            InterpFamily::Anti => "exp-anti",
            InterpFamily::Sym => "exp-sym",
        }
    }

    pub const fn grid_kind(self) -> GridKind {
        match self {
            InterpFamily::Full => GridKind::Full,
            InterpFamily::Anti => GridKind::Anti,
            InterpFamily::Sym => GridKind::Sym,
        }
    }

    fn admits(self, k: i32, l: i32) -> bool {
        match self {
            InterpFamily::Full => true,
            InterpFamily::Anti => k > l,
            InterpFamily::Sym => k >= l,
        }
    }
}

impl From<Symmetry> for InterpFamily {
    fn from(s: Symmetry) -> Self {
        match s {
            Symmetry::Anti => InterpFamily::Anti,
            Symmetry::Sym => InterpFamily::Sym,
        }
    }
}

impl fmt::Display for InterpFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub const fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `M` with `N = 2M+1` or `N = 2M`.
pub const fn half_order(n: usize) -> usize {
    n / 2
}

/// `g_(k,M)`: ½ when `N` is even and `|k| = M`, otherwise 1.
pub fn edge_factor(k: i32, n: usize) -> f64 {
    if n % 2 == 0 && k.unsigned_abs() as usize == half_order(n) {
        0.5
    } else {
        1.0
    }
}

fn free_range(n: usize) -> std::ops::RangeInclusive<i32> {
    let m = half_order(n) as i32;
    match Parity::of(n) {
        Parity::Odd => -m..=m,
        Parity::Even => -m + 1..=m,
    }
}

/// Free labels of a family, ordered by `(k, l)`.
pub fn free_pairs(family: InterpFamily, n: usize) -> Vec<FrequencyPair> {
    let range = free_range(n);
    range
        .clone()
        .flat_map(|k| range.clone().filter(move |&l| family.admits(k, l)).map(move |l| FrequencyPair::int(k, l)))
        .collect()
}

/// Coefficients of a trigonometric interpolant, free labels only.
#[derive(Clone, Debug, PartialEq)]
pub struct InterpCoefficients {
    pub family: InterpFamily,
    pub spec: GridSpec,
    pub m: usize,
    pub parity: Parity,
    pub tau: Complex64,
    pub coeffs: BTreeMap<FrequencyPair, Complex64>,
}

/// Plane-wave expansion `ψ(x,y) = Σ P_kl e^{2πi(kx+ly)}` over `k, l ∈ {-M..M}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWaves {
    pub family: InterpFamily,
    pub m: i32,
    /// Side of the square the interpolant lives on.
    pub t: f64,
    data: Vec<Complex64>,
}

impl PlaneWaves {
    fn zeros(family: InterpFamily, m: i32, t: f64) -> Self {
        let side = (2 * m + 1) as usize;
        PlaneWaves {
            family,
            m,
            t,
            data: vec![Complex64::zero(); side * side],
        }
    }

    fn index(&self, k: i32, l: i32) -> usize {
        let side = 2 * self.m + 1;
        ((k + self.m) * side + (l + self.m)) as usize
    }

    /// `P_kl`, zero outside `{-M..M}²`.
    pub fn get(&self, k: i32, l: i32) -> Complex64 {
        if k.abs() > self.m || l.abs() > self.m {
            return Complex64::zero();
        }
        self.data[self.index(k, l)]
    }

    fn set(&mut self, k: i32, l: i32, v: Complex64) {
        let i = self.index(k, l);
        self.data[i] = v;
    }

    /// Evaluates at a point of the square of side `T`.
    pub fn eval(&self, pt: Point2) -> Complex64 {
        let m = self.m;
        let phases = |x: f64| -> Vec<Complex64> {
            (-m..=m).map(|j| Complex64::from_polar(1.0, 2.0 * PI * f64::from(j) * x / self.t)).collect()
        };
        let ex = phases(pt.x);
        let ey = phases(pt.y);
        let at = |j: i32| (j + m) as usize;
        let mut total = Complex64::zero();
        match self.family {
            InterpFamily::Full => {
                for k in -m..=m {
                    for l in -m..=m {
                        total += self.get(k, l) * ex[at(k)] * ey[at(l)];
                    }
                }
            }
            InterpFamily::Anti => {
                for k in -m..=m {
                    for l in -m..k {
                        total += self.get(k, l) * (ex[at(k)] * ey[at(l)] - ex[at(l)] * ey[at(k)]);
                    }
                }
            }
            InterpFamily::Sym => {
                for k in -m..=m {
                    for l in -m..k {
                        total += self.get(k, l) * (ex[at(k)] * ey[at(l)] + ex[at(l)] * ey[at(k)]);
                    }
                    total += self.get(k, k) * ex[at(k)] * ey[at(k)];
                }
            }
        }
        total
    }
}

impl InterpCoefficients {
    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// Expands to the full plane-wave matrix, closing the `-M` row and column for even `N`.
    pub fn expand(&self) -> PlaneWaves {
        let m = self.m as i32;
        let mut p = PlaneWaves::zeros(self.family, m, self.spec.t);
        for (&pair, &c) in &self.coeffs {
            let (k, l) = pair.as_int().expect("interpolation labels are integers");
            match self.family {
                InterpFamily::Full => p.set(k, l, c),
                InterpFamily::Anti => {
                    p.set(k, l, c);
                    p.set(l, k, -c);
                }
                InterpFamily::Sym => {
                    let v = c * diagonal_weight(k, l);
                    p.set(k, l, v);
                    p.set(l, k, v);
                }
            }
        }
        if self.parity == Parity::Even && m > 0 {
            let tau = self.tau;
            for j in -m + 1..=m {
                let row = tau * p.get(m, j);
                p.set(-m, j, row);
                let col = tau * p.get(j, m);
                p.set(j, -m, col);
            }
            let corner = tau * tau * p.get(m, m);
            p.set(-m, -m, corner);
        }
        p
    }

    /// Coefficient of any integer label in `{-M..M}²`, constrained ones included.
    ///
    /// Non-dominant labels follow `c_lk = ∓c_kl`; the antisymmetric diagonal is zero.
    pub fn get(&self, pair: FrequencyPair) -> Option<Complex64> {
        let (k, l) = pair.as_int()?;
        let m = self.m as i32;
        if k.abs() > m || l.abs() > m {
            return None;
        }
        let v = self.expand().get(k, l);
        Some(match self.family {
            InterpFamily::Sym => v / diagonal_weight(k, l),
            _ => v,
        })
    }

    pub fn eval(&self, pt: Point2) -> Complex64 {
        self.expand().eval(pt)
    }
}

fn plane_wave(p: FrequencyPair, pt: Point2) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (p.k.value() * pt.x + p.l.value() * pt.y))
}

fn interpolate(s: &SampleSet, family: InterpFamily) -> Result<InterpCoefficients> {
    s.require_kind(family.grid_kind())?;
    let n = s.spec.n;
    let nodes = s.unit_nodes();
    let n2 = (n * n) as f64;
    let pairs = free_pairs(family, n);
    let values: Vec<Complex64> = pairs
        .par_iter()
        .map(|&p| {
            let (k, l) = p.as_int().expect("integer label");
            let g = edge_factor(k, n) * edge_factor(l, n);
            let sum = match family {
                InterpFamily::Full => nodes.iter().map(|&(_, _, pt, v)| v * plane_wave(p, pt).conj()).sum(),
                InterpFamily::Anti => projection(Symmetry::Anti, &nodes, p),
                InterpFamily::Sym => projection(Symmetry::Sym, &nodes, p) / diagonal_weight(k, l),
            };
            sum * g / n2
        })
        .collect();
    Ok(InterpCoefficients {
        family,
        spec: s.spec,
        m: half_order(n),
        parity: Parity::of(n),
        tau: s.spec.tau(),
        coeffs: pairs.into_iter().zip(values).collect(),
    })
}

/// Interpolates samples on the full grid `L`.
pub fn interp_full(s: &SampleSet) -> Result<InterpCoefficients> {
    interpolate(s, InterpFamily::Full)
}

/// Interpolates samples on `L⁻` by a combination of `E⁻` functions.
pub fn interp_anti(s: &SampleSet) -> Result<InterpCoefficients> {
    interpolate(s, InterpFamily::Anti)
}

/// Interpolates samples on `L⁺` by a combination of `E⁺` functions.
pub fn interp_sym(s: &SampleSet) -> Result<InterpCoefficients> {
    interpolate(s, InterpFamily::Sym)
}

/// Converts a discrete transform to interpolation coefficients.
///
/// A negative label `j` is read as `N+j` and contributes one factor `τ_N`;
/// pairs that leave the dominant cone are swapped back with the family sign.
/// Even `N` also picks up `g_(k,M) g_(l,M)`.
pub fn beta_to_c(sp: &Spectrum) -> InterpCoefficients {
    let n = sp.spec.n;
    let family = InterpFamily::from(sp.symmetry);
    let tau = sp.spec.tau();
    let coeffs = free_pairs(family, n)
        .into_iter()
        .map(|p| {
            let (k, l) = p.as_int().expect("integer label");
            let wrap = |j: i32| if j < 0 { j + n as i32 } else { j };
            let negatives = i32::from(k < 0) + i32::from(l < 0);
            let beta = sp
                .coefficient(FrequencyPair::int(wrap(k), wrap(l)))
                .expect("wrapped labels lie in 0..N");
            let g = edge_factor(k, n) * edge_factor(l, n);
            (p, beta * tau.powi(negatives) * g)
        })
        .collect();
    InterpCoefficients {
        family,
        spec: sp.spec,
        m: half_order(n),
        parity: Parity::of(n),
        tau,
        coeffs,
    }
}

pub fn eval_interpolant(c: &InterpCoefficients, pt: Point2) -> Complex64 {
    c.eval(pt)
}

/// Evaluates an interpolant at many points in parallel.
pub fn eval_interpolant_many(c: &InterpCoefficients, pts: &[Point2]) -> Vec<Complex64> {
    let p = c.expand();
    pts.par_iter().map(|&pt| p.eval(pt)).collect()
}

/// `A, B, C, D` of one label pair of the real trigonometric form.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrigTerm {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

/// The interpolant written with sines and cosines over `0 ≤ l ≤ k ≤ M`.
///
/// ```text
/// ψ(x,y) = Σ w_kl [ A (cos 2πkx cos 2πly ± cos 2πlx cos 2πky)
///                 + B (sin 2πkx cos 2πly ± cos 2πlx sin 2πky)
///                 + C (cos 2πkx sin 2πly ± sin 2πlx cos 2πky)
///                 + D (sin 2πkx sin 2πly ± sin 2πlx sin 2πky) ]
/// ```
///
/// with `w_kl = h_k h_l / G_kl` (antisymmetric) or `h_k h_l` (symmetric),
/// `h_0 = ½` and `h_k = 1` otherwise. Antisymmetric diagonal terms carry only `B` and `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigFormCoefficients {
    pub family: Symmetry,
    pub spec: GridSpec,
    pub m: usize,
    pub terms: BTreeMap<(usize, usize), TrigTerm>,
}

/// `h_k`: ½ for `k = 0`, otherwise 1.
pub fn zero_factor(k: usize) -> f64 {
    if k == 0 {
        0.5
    } else {
        1.0
    }
}

struct TrigBasis {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

fn trig_basis(sign: f64, k: usize, l: usize, pt: Point2) -> TrigBasis {
    let w = |j: usize, t: f64| {
        let th = 2.0 * PI * j as f64 * t;
        (th.cos(), th.sin())
    };
    let (ckx, skx) = w(k, pt.x);
    let (cly, sly) = w(l, pt.y);
    let (clx, slx) = w(l, pt.x);
    let (cky, sky) = w(k, pt.y);
    TrigBasis {
        a: ckx * cly + sign * clx * cky,
        b: skx * cly + sign * clx * sky,
        c: ckx * sly + sign * slx * cky,
        d: skx * sly + sign * slx * sky,
    }
}

impl TrigFormCoefficients {
    fn weight(&self, k: usize, l: usize) -> f64 {
        let h = zero_factor(k) * zero_factor(l);
        match self.family {
            Symmetry::Anti => h / diagonal_weight(k, l),
            Symmetry::Sym => h,
        }
    }

    /// Evaluates at a point of the square of side `T`.
    pub fn eval(&self, pt: Point2) -> Complex64 {
        let pt = pt.scale(1.0 / self.spec.t);
        let sign = self.family.sign();
        self.terms
            .iter()
            .map(|(&(k, l), term)| {
                let e = trig_basis(sign, k, l, pt);
                (term.a * e.a + term.b * e.b + term.c * e.c + term.d * e.d) * self.weight(k, l)
            })
            .sum()
    }

    /// Largest imaginary part over all four arrays.
    pub fn max_imaginary(&self) -> f64 {
        self.terms
            .values()
            .flat_map(|t| [t.a, t.b, t.c, t.d])
            .map(|z| z.im.abs())
            .fold(0.0, f64::max)
    }
}

/// Real trigonometric form computed directly from samples on `L⁻` or `L⁺`.
///
/// ```text
/// A⁻_kl = (2/N)² g g Σ_{m>n} f (cos 2πkx cos 2πly − cos 2πlx cos 2πky)
/// A⁺_kl = 4/(G_kl N²) g g Σ_{m≥n} G_mn⁻¹ f (cos 2πkx cos 2πly + cos 2πlx cos 2πky)
/// ```
///
/// and likewise for `B, C, D` with the matching sine products.
pub fn trig_form(s: &SampleSet) -> Result<TrigFormCoefficients> {
    let family = match s.kind {
        GridKind::Anti => Symmetry::Anti,
        GridKind::Sym => Symmetry::Sym,
        GridKind::Full => {
            return Err(Error::KindMismatch {
                expected: GridKind::Anti,
                found: GridKind::Full,
            })
        }
    };
    let n = s.spec.n;
    let m = half_order(n);
    let nodes = s.unit_nodes();
    let sign = family.sign();
    let pairs: Vec<(usize, usize)> = (0..=m).flat_map(|k| (0..=k).map(move |l| (k, l))).collect();
    let terms: Vec<TrigTerm> = pairs
        .par_iter()
        .map(|&(k, l)| {
            let g = edge_factor(k as i32, n) * edge_factor(l as i32, n);
            let norm = match family {
                Symmetry::Anti => 4.0 * g / (n * n) as f64,
                Symmetry::Sym => 4.0 * g / (diagonal_weight(k, l) * (n * n) as f64),
            };
            let mut t = TrigTerm::default();
            for &(i, j, pt, v) in &nodes {
                let e = trig_basis(sign, k, l, pt);
                let v = v * node_weight(family, i, j);
                t.a += v * e.a;
                t.b += v * e.b;
                t.c += v * e.c;
                t.d += v * e.d;
            }
            TrigTerm {
                a: t.a * norm,
                b: t.b * norm,
                c: t.c * norm,
                d: t.d * norm,
            }
        })
        .collect();
    Ok(TrigFormCoefficients {
        family,
        spec: s.spec,
        m,
        terms: pairs.into_iter().zip(terms).collect(),
    })
}

/// `Af(x,y)`: `f(x,y)` below the diagonal, 0 on it, `-f(y,x)` above.
pub fn antisym_extend<F, V>(f: F) -> impl Fn(Point2) -> V
where
    F: Fn(Point2) -> V,
    V: std::ops::Neg<Output = V> + Zero,
{
    move |pt: Point2| {
        if pt.x > pt.y {
            f(pt)
        } else if pt.x == pt.y {
            V::zero()
        } else {
            -f(pt.swap())
        }
    }
}

/// `Sf(x,y)`: `f(x,y)` on or below the diagonal, `f(y,x)` above.
pub fn sym_extend<F, V>(f: F) -> impl Fn(Point2) -> V
where
    F: Fn(Point2) -> V,
{
    move |pt: Point2| if pt.x >= pt.y { f(pt) } else { f(pt.swap()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{exp_anti, exp_sym};
    use crate::transforms::{adft_forward, sdft_forward};
    use nalgebra::DMatrix;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gaussian(p: Point2) -> f64 {
        let (dx, dy) = (p.x - 0.707, p.y - 0.293);
        (-(dx * dx + dy * dy) / (2.0 * 0.079 * 0.079)).exp()
    }

    fn random_set(rng: &mut ChaCha8Rng, spec: GridSpec, kind: GridKind) -> SampleSet {
        let values = (0..kind.cardinality(spec.n))
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        SampleSet::new(spec, kind, values).unwrap()
    }

    fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> GridSpec {
        GridSpec::new(rng.random_range(-1.0..1.0), rng.random_range(0.0..=1.0), n, 1.0).unwrap()
    }

    fn node_error(c: &InterpCoefficients, s: &SampleSet) -> f64 {
        s.iter().map(|(_, _, pt, v)| (c.eval(pt) - v).norm()).fold(0.0, f64::max)
    }

    fn interp_for(kind: GridKind) -> fn(&SampleSet) -> Result<InterpCoefficients> {
        match kind {
            GridKind::Full => interp_full,
            GridKind::Anti => interp_anti,
            GridKind::Sym => interp_sym,
        }
    }

    #[test]
    fn free_counts_match_sample_counts() {
        for n in 1..12 {
            for (family, kind) in [
                (InterpFamily::Full, GridKind::Full),
                (InterpFamily::Anti, GridKind::Anti),
                (InterpFamily::Sym, GridKind::Sym),
            ] {
                assert_eq!(free_pairs(family, n).len(), kind.cardinality(n), "{family} {n}");
            }
        }
        // Removing 4M+1, 2M, 2M+1 constrained labels from the full even range.
        let m = 3;
        let side = 2 * m + 1;
        assert_eq!(side * side - (4 * m + 1), 36);
        assert_eq!(side * (side - 1) / 2 - 2 * m, 15);
        assert_eq!(side * (side + 1) / 2 - (2 * m + 1), 21);
    }

    #[test]
    fn full_plane_wave_gives_delta() {
        let spec = GridSpec::new(0.21, 0.4, 5, 1.0).unwrap();
        for k0 in -2..=2 {
            for l0 in -2..=2 {
                let p0 = FrequencyPair::int(k0, l0);
                let s = SampleSet::from_fn(spec, GridKind::Full, |pt| plane_wave(p0, pt)).unwrap();
                let c = interp_full(&s).unwrap();
                for (&p, &v) in &c.coeffs {
                    let want = if p == p0 { 1.0 } else { 0.0 };
                    assert!((v - want).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn constants() {
        let spec = GridSpec::new(0.0, 0.5, 4, 1.0).unwrap();
        let one = SampleSet::from_real_fn(spec, GridKind::Full, |_| 1.0).unwrap();
        let c = interp_full(&one).unwrap();
        for (&p, &v) in &c.coeffs {
            let want = if p == FrequencyPair::int(0, 0) { 1.0 } else { 0.0 };
            assert!((v - want).norm() < 1e-12);
        }
        let k = Complex64::new(2.0, -1.0);
        let s = SampleSet::from_fn(spec, GridKind::Sym, |_| k).unwrap();
        let c = interp_sym(&s).unwrap();
        for (&p, &v) in &c.coeffs {
            let want = if p == FrequencyPair::int(0, 0) { k / 2.0 } else { Complex64::zero() };
            assert!((v - want).norm() < 1e-12);
        }
        let zero = SampleSet::from_real_fn(spec, GridKind::Anti, |_| 0.0).unwrap();
        assert!(interp_anti(&zero).unwrap().coeffs.values().all(|v| v.is_zero()));
    }

    #[test]
    fn basis_samples_give_delta() {
        let spec = GridSpec::new(-0.3, 0.8, 7, 1.0).unwrap();
        for k0 in 0..=3 {
            for l0 in 0..=k0 {
                let p0 = FrequencyPair::int(k0, l0);
                if l0 < k0 {
                    let s = SampleSet::from_fn(spec, GridKind::Anti, |pt| exp_anti(p0, pt)).unwrap();
                    let c = interp_anti(&s).unwrap();
                    for (&p, &v) in &c.coeffs {
                        assert!((v - if p == p0 { 1.0 } else { 0.0 }).norm() < 1e-12);
                    }
                }
                let s = SampleSet::from_fn(spec, GridKind::Sym, |pt| exp_sym(p0, pt)).unwrap();
                let c = interp_sym(&s).unwrap();
                for (&p, &v) in &c.coeffs {
                    assert!((v - if p == p0 { 1.0 } else { 0.0 }).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn basis_interpolant_matches_basis_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let spec = GridSpec::new(0.1, 0.5, 5, 1.0).unwrap();
        let p0 = FrequencyPair::int(2, -1);
        let s = SampleSet::from_fn(spec, GridKind::Anti, |pt| exp_anti(p0, pt)).unwrap();
        let c = interp_anti(&s).unwrap();
        for _ in 0..100 {
            let pt = Point2::new(rng.random(), rng.random());
            assert!((c.eval(pt) - exp_anti(p0, pt)).norm() < 1e-12);
        }
    }

    #[test]
    fn node_coincidence_all_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for n in 1..=8 {
            let spec = random_spec(&mut rng, n);
            for kind in [GridKind::Full, GridKind::Anti, GridKind::Sym] {
                let s = random_set(&mut rng, spec, kind);
                let c = interp_for(kind)(&s).unwrap();
                assert!(node_error(&c, &s) < 1e-10, "{kind} N={n}: {}", node_error(&c, &s));
            }
        }
    }

    #[test]
    fn gaussian_anti_seven() {
        let spec = GridSpec::centered(7).unwrap();
        let s = SampleSet::from_real_fn(spec, GridKind::Anti, gaussian).unwrap();
        let c = interp_anti(&s).unwrap();
        assert!(node_error(&c, &s) < 1e-9);
    }

    #[test]
    fn anti_interpolant_vanishes_on_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in [4, 5] {
            let spec = random_spec(&mut rng, n);
            let s = random_set(&mut rng, spec, GridKind::Anti);
            let c = interp_anti(&s).unwrap();
            for _ in 0..20 {
                let t: f64 = rng.random_range(-2.0..2.0);
                assert_eq!(c.eval(Point2::new(t, t)), Complex64::zero());
            }
        }
    }

    #[test]
    fn even_constraints_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [2usize, 4, 6] {
            let m = (n / 2) as i32;
            let spec = random_spec(&mut rng, n);
            let tau = spec.tau();
            let close = |a: Complex64, b: Complex64| assert!((a - b).norm() < 1e-13, "{a} vs {b}");

            let c = interp_full(&random_set(&mut rng, spec, GridKind::Full)).unwrap();
            let at = |k, l| c.get(FrequencyPair::int(k, l)).unwrap();
            for j in -m + 1..=m {
                close(at(j, -m), tau * at(j, m));
                close(at(-m, j), tau * at(m, j));
            }
            close(at(-m, -m), tau * tau * at(m, m));

            let c = interp_anti(&random_set(&mut rng, spec, GridKind::Anti)).unwrap();
            let at = |k, l| c.get(FrequencyPair::int(k, l)).unwrap();
            for l in -m + 1..m {
                close(at(l, -m), -tau * at(m, l));
            }
            close(at(m, -m), Complex64::zero());

            let c = interp_sym(&random_set(&mut rng, spec, GridKind::Sym)).unwrap();
            let at = |k, l| c.get(FrequencyPair::int(k, l)).unwrap();
            for l in -m + 1..=m {
                let ratio = diagonal_weight(m, l) / diagonal_weight(l, -m);
                close(at(l, -m), tau * ratio * at(m, l));
            }
            close(at(-m, -m), tau * tau * at(m, m));
        }
    }

    #[test]
    fn constrained_values_agree_with_closed_form() {
        // The closed-form sum evaluated at a constrained label equals the closure value.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let n = 6;
        let m = 3;
        let spec = random_spec(&mut rng, n);
        let s = random_set(&mut rng, spec, GridKind::Sym);
        let c = interp_sym(&s).unwrap();
        let nodes = s.unit_nodes();
        for l in -m..=m {
            let p = FrequencyPair::int(l, -m);
            let (k, l) = (p.k.as_int().unwrap(), p.l.as_int().unwrap());
            let g = edge_factor(k, n) * edge_factor(l, n);
            let direct = projection(Symmetry::Sym, &nodes, p) * g / (diagonal_weight(k, l) * 36.0);
            assert!((c.get(p).unwrap() - direct).norm() < 1e-12);
        }
    }

    fn dense_system(c: &InterpCoefficients, s: &SampleSet) -> DMatrix<Complex64> {
        let pairs: Vec<_> = c.coeffs.keys().copied().collect();
        let pts: Vec<_> = s.iter().map(|(_, _, pt, _)| pt).collect();
        let mut cols = Vec::new();
        for &p in &pairs {
            let mut unit = c.clone();
            unit.coeffs.values_mut().for_each(|v| *v = Complex64::zero());
            unit.coeffs.insert(p, Complex64::new(1.0, 0.0));
            let e = unit.expand();
            cols.push(pts.iter().map(|&pt| e.eval(pt)).collect::<Vec<_>>());
        }
        DMatrix::from_fn(pts.len(), pairs.len(), |i, j| cols[j][i])
    }

    #[test]
    fn dense_solve_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for n in 2..=5 {
            for kind in [GridKind::Full, GridKind::Anti, GridKind::Sym] {
                let spec = random_spec(&mut rng, n);
                let s = random_set(&mut rng, spec, kind);
                let c = interp_for(kind)(&s).unwrap();
                let a = dense_system(&c, &s);
                assert!(a.clone().determinant().norm() > 1e-8, "{kind} N={n} singular");
                let rhs = nalgebra::DVector::from_vec(s.values.clone());
                let solved = a.lu().solve(&rhs).unwrap();
                for (j, v) in c.coeffs.values().enumerate() {
                    assert!((v - solved[j]).norm() < 1e-8, "{kind} N={n}");
                }
            }
        }
    }

    #[test]
    fn beta_to_c_matches_direct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1, 2, 3, 4, 5, 6] {
            let spec = random_spec(&mut rng, n);
            let s = random_set(&mut rng, spec, GridKind::Anti);
            let via = beta_to_c(&adft_forward(&s).unwrap());
            let direct = interp_anti(&s).unwrap();
            for (p, v) in &direct.coeffs {
                assert!((via.coeffs[p] - v).norm() < 1e-10, "anti N={n} {p}");
            }
            let s = random_set(&mut rng, spec, GridKind::Sym);
            let via = beta_to_c(&sdft_forward(&s).unwrap());
            let direct = interp_sym(&s).unwrap();
            for (p, v) in &direct.coeffs {
                assert!((via.coeffs[p] - v).norm() < 1e-10, "sym N={n} {p}");
            }
        }
    }

    #[test]
    fn beta_to_c_index_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let n = 5;
        let spec = random_spec(&mut rng, n);
        let tau = spec.tau();
        let sp = adft_forward(&random_set(&mut rng, spec, GridKind::Anti)).unwrap();
        let c = beta_to_c(&sp);
        let beta = |k, l| sp.coeffs[&FrequencyPair::int(k, l)];
        let cc = |k, l| c.coeffs[&FrequencyPair::int(k, l)];
        // Unchanged inside the first quadrant.
        for k in 0..=2 {
            for l in 0..k {
                assert_eq!(cc(k, l), beta(k, l));
            }
        }
        // c⁻_(k,-l) = -τ β⁻_(N-l,k) and c⁻_(-l,-k) = τ² β⁻_(N-l,N-k).
        for k in 0..=2 {
            for l in 1..=2 {
                assert!((cc(k, -l) + tau * beta(5 - l, k)).norm() < 1e-14);
            }
        }
        for l in 1..=2 {
            for k in l + 1..=2 {
                assert!((cc(-l, -k) - tau * tau * beta(5 - l, 5 - k)).norm() < 1e-14);
            }
        }
        let zero = beta_to_c(&Spectrum::zeros(Symmetry::Sym, spec).unwrap());
        assert!(zero.coeffs.values().all(|v| v.is_zero()));
    }

    #[test]
    fn extension_equivalence() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = |p: Point2| Complex64::new(gaussian(p) + 0.3 * p.x * p.y, (2.0 * p.x).sin() * p.y);
        for n in 2..=7 {
            let spec = random_spec(&mut rng, n);
            let full_a = interp_full(&SampleSet::from_fn(spec, GridKind::Full, antisym_extend(f)).unwrap()).unwrap();
            let anti = interp_anti(&SampleSet::from_fn(spec, GridKind::Anti, f).unwrap()).unwrap();
            for (p, v) in &anti.coeffs {
                assert!((full_a.coeffs[p] - v).norm() < 1e-10);
            }
            // (Ac)_kl = -(Ac)_lk, so the diagonal vanishes.
            let pw = full_a.expand();
            let m = pw.m;
            for k in -m..=m {
                for l in -m..=m {
                    assert!((pw.get(k, l) + pw.get(l, k)).norm() < 1e-10);
                }
            }
            let full_s = interp_full(&SampleSet::from_fn(spec, GridKind::Full, sym_extend(f)).unwrap()).unwrap();
            let sym = interp_sym(&SampleSet::from_fn(spec, GridKind::Sym, f).unwrap()).unwrap();
            for (p, v) in &sym.coeffs {
                let (k, l) = p.as_int().unwrap();
                assert!((full_s.coeffs[p] - v * diagonal_weight(k, l)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn rescaling_side() {
        let f = |p: Point2| Complex64::new(gaussian(p), p.x - p.y);
        let t = 2.5;
        for n in [4, 5] {
            let unit = GridSpec::new(0.1, 0.3, n, 1.0).unwrap();
            let wide = GridSpec::new(0.1 * t, 0.3, n, t).unwrap();
            for kind in [GridKind::Full, GridKind::Anti, GridKind::Sym] {
                let c1 = interp_for(kind)(&SampleSet::from_fn(unit, kind, f).unwrap()).unwrap();
                let ct = interp_for(kind)(&SampleSet::from_fn(wide, kind, |p| f(p.scale(1.0 / t))).unwrap()).unwrap();
                for pt in [Point2::new(0.3, 0.1), Point2::new(0.77, 0.5), Point2::new(-0.2, 1.3)] {
                    assert!((ct.eval(pt.scale(t)) - c1.eval(pt)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn degenerate_orders() {
        let spec = GridSpec::new(0.2, 0.3, 1, 1.0).unwrap();
        let v = Complex64::new(0.7, 0.1);
        let c = interp_full(&SampleSet::from_fn(spec, GridKind::Full, |_| v).unwrap()).unwrap();
        assert_eq!(c.coeffs.len(), 1);
        assert!((c.coeffs[&FrequencyPair::int(0, 0)] - v).norm() < 1e-15);
        let c = interp_anti(&SampleSet::new(spec, GridKind::Anti, vec![]).unwrap()).unwrap();
        assert!(c.coeffs.is_empty());
        assert_eq!(c.eval(Point2::new(0.3, 0.1)), Complex64::zero());
        let c = interp_sym(&SampleSet::from_fn(spec, GridKind::Sym, |_| v).unwrap()).unwrap();
        assert!((c.coeffs[&FrequencyPair::int(0, 0)] - v / 2.0).norm() < 1e-15);

        let spec2 = GridSpec::centered(2).unwrap();
        let c = interp_anti(&SampleSet::from_fn(spec2, GridKind::Anti, |_| v).unwrap()).unwrap();
        assert_eq!(c.coeffs.keys().copied().collect::<Vec<_>>(), vec![FrequencyPair::int(1, 0)]);
    }

    #[test]
    fn kind_mismatch_rejected() {
        let spec = GridSpec::centered(3).unwrap();
        let s = SampleSet::from_real_fn(spec, GridKind::Sym, |_| 1.0).unwrap();
        assert!(interp_anti(&s).is_err());
        assert!(interp_full(&s).is_err());
        let full = SampleSet::from_real_fn(spec, GridKind::Full, |_| 1.0).unwrap();
        assert!(trig_form(&full).is_err());
    }

    fn assembled_trig_form(c: &InterpCoefficients) -> BTreeMap<(usize, usize), TrigTerm> {
        let pw = c.expand();
        let i = Complex64::i();
        let m = c.m;
        let mut out = BTreeMap::new();
        for k in 0..=m {
            for l in 0..=k {
                let mut t = TrigTerm::default();
                for s in [-1i32, 1] {
                    for u in [-1i32, 1] {
                        let v = pw.get(s * k as i32, u * l as i32);
                        t.a += v;
                        t.b += i * f64::from(s) * v;
                        t.c += i * f64::from(u) * v;
                        t.d -= f64::from(s * u) * v;
                    }
                }
                if c.family == InterpFamily::Sym {
                    let g = diagonal_weight(k, l);
                    t = TrigTerm {
                        a: t.a / g,
                        b: t.b / g,
                        c: t.c / g,
                        d: t.d / g,
                    };
                }
                out.insert((k, l), t);
            }
        }
        out
    }

    #[test]
    fn trig_form_matches_assembly_and_interpolant() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let f = |p: Point2| gaussian(p) + 0.3 * p.x * p.y * p.y;
        for n in 2..=8 {
            let spec = random_spec(&mut rng, n);
            for kind in [GridKind::Anti, GridKind::Sym] {
                let s = SampleSet::from_real_fn(spec, kind, f).unwrap();
                let tf = trig_form(&s).unwrap();
                assert!(tf.max_imaginary() < 1e-10);
                let c = interp_for(kind)(&s).unwrap();
                let assembled = assembled_trig_form(&c);
                for (key, t) in &tf.terms {
                    let o = assembled[key];
                    for (x, y) in [(t.a, o.a), (t.b, o.b), (t.c, o.c), (t.d, o.d)] {
                        assert!((x - y).norm() < 1e-10, "{kind} N={n} {key:?}: {x} vs {y}");
                    }
                }
                for _ in 0..500 {
                    let pt = Point2::new(rng.random(), rng.random());
                    assert!((tf.eval(pt) - c.eval(pt)).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn trig_form_of_zero() {
        let spec = GridSpec::centered(5).unwrap();
        let s = SampleSet::from_real_fn(spec, GridKind::Sym, |_| 0.0).unwrap();
        let tf = trig_form(&s).unwrap();
        assert!(tf.terms.values().all(|t| *t == TrigTerm::default()));
    }

    #[test]
    fn extension_examples() {
        let f = |p: Point2| p.x + 2.0 * p.y;
        let a = antisym_extend(f);
        assert_eq!(a(Point2::new(0.4, 0.4)), 0.0);
        assert_eq!(a(Point2::new(0.3, 0.7)), -f(Point2::new(0.7, 0.3)));
        assert_eq!(a(Point2::new(0.7, 0.3)), f(Point2::new(0.7, 0.3)));
        let s = sym_extend(f);
        assert_eq!(s(Point2::new(0.3, 0.7)), f(Point2::new(0.7, 0.3)));
        assert_eq!(s(Point2::new(0.5, 0.5)), f(Point2::new(0.5, 0.5)));
    }

    proptest! {
        #[test]
        fn sym_extension_swap_invariant(x in -2.0f64..2.0, y in -2.0f64..2.0) {
            let s = sym_extend(|p: Point2| p.x * p.x - 3.0 * p.y);
            prop_assert_eq!(s(Point2::new(x, y)), s(Point2::new(y, x)));
        }

        #[test]
        fn antisym_extension_swap_odd(x in -2.0f64..2.0, y in -2.0f64..2.0) {
            let a = antisym_extend(|p: Point2| p.x * p.x - 3.0 * p.y);
            prop_assert_eq!(a(Point2::new(x, y)), -a(Point2::new(y, x)));
        }

        #[test]
        fn interpolants_hit_nodes(n in 1usize..9, a in -1.0f64..1.0, b in 0.0f64..=1.0, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = GridSpec::new(a, b, n, 1.0).unwrap();
            for kind in [GridKind::Full, GridKind::Anti, GridKind::Sym] {
                let s = random_set(&mut rng, spec, kind);
                let c = interp_for(kind)(&s).unwrap();
                prop_assert!(node_error(&c, &s) < 1e-9);
            }
        }

        #[test]
        fn interpolant_symmetry(n in 2usize..8, x in 0.0f64..1.0, y in 0.0f64..1.0, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let spec = random_spec(&mut rng, n);
            let ca = interp_anti(&random_set(&mut rng, spec, GridKind::Anti)).unwrap();
            let cs = interp_sym(&random_set(&mut rng, spec, GridKind::Sym)).unwrap();
            let (p, q) = (Point2::new(x, y), Point2::new(y, x));
            prop_assert!((ca.eval(p) + ca.eval(q)).norm() < 1e-10);
            prop_assert!((cs.eval(p) - cs.eval(q)).norm() < 1e-10);
        }
    }
}
