//! The discrete antisymmetric and symmetric cosine transforms AMDCT/SMDCT I–IV.
//!
//! | variant | nodes `x_m` | node range | frequencies       |
//! |---------|-------------|------------|-------------------|
//! | I       | `m/M`       | `0..=M`    | `(k, l)`          |
//! | II      | `(m+½)/M`   | `0..M`     | `(k, l)`          |
//! | III     | `m/M`       | `0..M`     | `(k+½, l+½)`      |
//! | IV      | `(m+½)/M`   | `0..M`     | `(k+½, l+½)`      |
//!
//! Label indices run over the same range as node indices. Coefficients are
//!
//! ```text
//! c_kl = pre_kl Σ w_mn f(x_m, y_n) cos^±_(k,l)(x_m, y_n)
//! ```
//!
//! with `pre_kl = 4 d_k d_l / (M² G_kl)` for I/II and `4 / (M² G_kl)` for III/IV,
//! and `w_mn = d_m d_n / G_mn` for I/III and `1 / G_mn` for II/IV. Here
//! `d_(k,M)` is ½ for `k ∈ {0, M}` and 1 otherwise; the `G` factors only apply to
//! the symmetric family.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;

use crate::basis::{cos_anti, cos_sym, diagonal_weight, FrequencyPair, Point2, Symmetry};
use crate::error::{Error, Result};
use crate::grids::{grid_indices, GridKind, GridPoint, GridSpec};
use crate::interpolation::{trig_form, zero_factor};
use crate::transforms::SampleSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CosineVariant {
    I,
    II,
    III,
    IV,
}

impl CosineVariant {
    pub const ALL: [CosineVariant; 4] = [CosineVariant::I, CosineVariant::II, CosineVariant::III, CosineVariant::IV];

    pub const fn name(self) -> &'static str {
        match self {
            CosineVariant::I => "I",
            CosineVariant::II => "II",
            CosineVariant::III => "III",
            CosineVariant::IV => "IV",
        }
    }

    /// Nodes sit at cell midpoints (II, IV) rather than cell corners (I, III).
    pub const fn shifted_nodes(self) -> bool {
        matches!(self, CosineVariant::II | CosineVariant::IV)
    }

    pub const fn half_frequencies(self) -> bool {
        matches!(self, CosineVariant::III | CosineVariant::IV)
    }

    /// Largest node and label index.
    pub const fn top(self, m: usize) -> usize {
        match self {
            CosineVariant::I => m,
            _ => m - 1,
        }
    }

    /// Frequency carried by index pair `(k, l)`.
    pub const fn label(self, k: usize, l: usize) -> FrequencyPair {
        if self.half_frequencies() {
            FrequencyPair::half_shifted(k as i32, l as i32)
        } else {
            FrequencyPair::int(k as i32, l as i32)
        }
    }

    /// Inverse of [`CosineVariant::label`].
    pub fn index_of(self, p: FrequencyPair) -> Option<(usize, usize)> {
        let (hk, hl) = (p.k.halves(), p.l.halves());
        let off = i32::from(self.half_frequencies());
        if hk < 0 || hl < 0 || (hk - off) % 2 != 0 || (hl - off) % 2 != 0 {
            return None;
        }
        Some((((hk - off) / 2) as usize, ((hl - off) / 2) as usize))
    }

    fn coordinate(self, i: usize, m: usize) -> f64 {
        let shift = if self.shifted_nodes() { 0.5 } else { 0.0 };
        (i as f64 + shift) / m as f64
    }
}

impl fmt::Display for CosineVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CosineVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "1" => Ok(CosineVariant::I),
            "II" | "2" => Ok(CosineVariant::II),
            "III" | "3" => Ok(CosineVariant::III),
            "IV" | "4" => Ok(CosineVariant::IV),
            _ => Err(format!("unknown cosine variant '{s}'")),
        }
    }
}

/// `d_(k,M)`: ½ for `k ∈ {0, M}`, otherwise 1.
pub fn boundary_factor(k: usize, m: usize) -> f64 {
    if k == 0 || k == m {
        0.5
    } else {
        1.0
    }
}

pub fn cosine_family_name(symmetry: Symmetry) -> &'static str {
    match symmetry {
        Symmetry::Anti => "cos-anti",
        Symmetry::Sym => "cos-sym",
    }
}

fn cos_basis(symmetry: Symmetry) -> fn(FrequencyPair, Point2) -> f64 {
    match symmetry {
        Symmetry::Anti => cos_anti,
        Symmetry::Sym => cos_sym,
    }
}

/// Nodes of one cosine transform, in `m`-then-`n` order.
#[derive(Clone, Debug, PartialEq)]
pub struct CosineNodeSet {
    pub variant: CosineVariant,
    pub symmetry: Symmetry,
    pub m: usize,
    pub nodes: Vec<GridPoint>,
}

impl CosineNodeSet {
    pub fn new(variant: CosineVariant, symmetry: Symmetry, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGrid("M must be at least 1".into()));
        }
        let kind = GridKind::from(symmetry);
        let nodes = grid_indices(variant.top(m) + 1, kind)
            .map(|(i, j)| GridPoint {
                m: i,
                n: j,
                location: Point2::new(variant.coordinate(i, m), variant.coordinate(j, m)),
            })
            .collect();
        Ok(CosineNodeSet {
            variant,
            symmetry,
            m,
            nodes,
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Summation weight `w_mn` of node `(i, j)`.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        let d = if self.variant.shifted_nodes() {
            1.0
        } else {
            boundary_factor(i, self.m) * boundary_factor(j, self.m)
        };
        match self.symmetry {
            Symmetry::Anti => d,
            Symmetry::Sym => d / diagonal_weight(i, j),
        }
    }

    /// Index pairs `(k, l)` of the coefficients, ordered by `(k, l)`.
    pub fn index_pairs(&self) -> Vec<(usize, usize)> {
        grid_indices(self.variant.top(self.m) + 1, GridKind::from(self.symmetry)).collect()
    }

    /// Normalization `pre_kl` in front of the weighted sum.
    pub fn prefactor(&self, k: usize, l: usize) -> f64 {
        let d = if self.variant.half_frequencies() {
            1.0
        } else {
            boundary_factor(k, self.m) * boundary_factor(l, self.m)
        };
        let g = match self.symmetry {
            Symmetry::Anti => 1.0,
            Symmetry::Sym => diagonal_weight(k, l),
        };
        4.0 * d / ((self.m * self.m) as f64 * g)
    }
}

/// Real samples on a [`CosineNodeSet`].
#[derive(Clone, Debug, PartialEq)]
pub struct CosineSampleSet {
    pub nodes: CosineNodeSet,
    pub values: Vec<f64>,
}

impl CosineSampleSet {
    pub fn new(nodes: CosineNodeSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != nodes.len() {
            return Err(Error::LengthMismatch {
                expected: nodes.len(),
                found: values.len(),
            });
        }
        Ok(CosineSampleSet { nodes, values })
    }

    pub fn from_fn<F: Fn(Point2) -> f64>(nodes: CosineNodeSet, f: F) -> Self {
        let values = nodes.nodes.iter().map(|p| f(p.location)).collect();
        CosineSampleSet { nodes, values }
    }
}

/// Coefficients keyed by frequency, `(k+½, l+½)` for variants III and IV.
#[derive(Clone, Debug, PartialEq)]
pub struct CosineSpectrum {
    pub symmetry: Symmetry,
    pub variant: CosineVariant,
    pub m: usize,
    pub coeffs: BTreeMap<FrequencyPair, f64>,
}

impl CosineSpectrum {
    pub fn zeros(symmetry: Symmetry, variant: CosineVariant, m: usize) -> Result<Self> {
        let nodes = CosineNodeSet::new(variant, symmetry, m)?;
        let coeffs = nodes
            .index_pairs()
            .into_iter()
            .map(|(k, l)| (variant.label(k, l), 0.0))
            .collect();
        Ok(CosineSpectrum {
            symmetry,
            variant,
            m,
            coeffs,
        })
    }

    pub fn from_coeffs<I>(symmetry: Symmetry, variant: CosineVariant, m: usize, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FrequencyPair, f64)>,
    {
        let mut sp = CosineSpectrum::zeros(symmetry, variant, m)?;
        for (p, c) in coeffs {
            match sp.coeffs.get_mut(&p) {
                Some(slot) => *slot = c,
                None => return Err(Error::PairOutOfRange(p.to_string())),
            }
        }
        Ok(sp)
    }

    pub fn family_name(&self) -> &'static str {
        cosine_family_name(self.symmetry)
    }

    pub fn eval(&self, pt: Point2) -> f64 {
        let top = self.coeffs.keys().map(|p| p.k.halves().max(p.l.halves())).max().unwrap_or(0).max(0) as usize;
        let table = |t: f64| -> Vec<f64> { (0..=top).map(|h| (PI * (h as f64 * 0.5) * t).cos()).collect() };
        let (cx, cy) = (table(pt.x), table(pt.y));
        let sign = self.symmetry.sign();
        self.coeffs
            .iter()
            .map(|(&p, &c)| {
                let (k, l) = (p.k.halves() as usize, p.l.halves() as usize);
                c * (cx[k] * cy[l] + sign * (cx[l] * cy[k]))
            })
            .sum()
    }
}

fn cosine_transform(s: &CosineSampleSet, symmetry: Symmetry) -> Result<CosineSpectrum> {
    let set = &s.nodes;
    if set.symmetry != symmetry {
        return Err(Error::FamilyMismatch {
            expected: cosine_family_name(symmetry),
            found: cosine_family_name(set.symmetry),
        });
    }
    let basis = cos_basis(symmetry);
    let pairs = set.index_pairs();
    let weighted: Vec<(Point2, f64)> = set
        .nodes
        .iter()
        .zip(&s.values)
        .map(|(p, &v)| (p.location, v * set.weight(p.m, p.n)))
        .collect();
    let values: Vec<f64> = pairs
        .par_iter()
        .map(|&(k, l)| {
            let label = set.variant.label(k, l);
            let sum: f64 = weighted.iter().map(|&(pt, v)| v * basis(label, pt)).sum();
            set.prefactor(k, l) * sum
        })
        .collect();
    Ok(CosineSpectrum {
        symmetry,
        variant: set.variant,
        m: set.m,
        coeffs: pairs
            .into_iter()
            .map(|(k, l)| set.variant.label(k, l))
            .zip(values)
            .collect(),
    })
}

/// Antisymmetric multivariate discrete cosine transform.
pub fn amdct(s: &CosineSampleSet) -> Result<CosineSpectrum> {
    cosine_transform(s, Symmetry::Anti)
}

/// Symmetric multivariate discrete cosine transform.
pub fn smdct(s: &CosineSampleSet) -> Result<CosineSpectrum> {
    cosine_transform(s, Symmetry::Sym)
}

pub fn eval_cosine_interpolant(sp: &CosineSpectrum, pt: Point2) -> f64 {
    sp.eval(pt)
}

/// `E_L f(x, y) = f(|x|, |y|)` on `[-L, L]²`: the even reflection in both axes.
pub fn extend_even<F, V>(f: F) -> impl Fn(Point2) -> V
where
    F: Fn(Point2) -> V,
{
    move |pt: Point2| f(Point2::new(pt.x.abs(), pt.y.abs()))
}

/// `R f` on `[0, 2]²`: odd reflection about `x = 1` and about `y = 1`.
pub fn extend_r<F, V>(f: F) -> impl Fn(Point2) -> V
where
    F: Fn(Point2) -> V,
    V: std::ops::Neg<Output = V>,
{
    move |pt: Point2| {
        let (x, sx) = if pt.x > 1.0 { (2.0 - pt.x, true) } else { (pt.x, false) };
        let (y, sy) = if pt.y > 1.0 { (2.0 - pt.y, true) } else { (pt.y, false) };
        let v = f(Point2::new(x, y));
        if sx != sy {
            -v
        } else {
            v
        }
    }
}

/// Value of the (anti)symmetrically extended, reflected `f` at lattice point `(u, v)`
/// in units of `1/(2M)`. Integer arithmetic keeps the diagonal test exact.
fn extended_lattice_value<F: Fn(Point2) -> f64>(
    f: &F,
    symmetry: Symmetry,
    reflect_about_one: bool,
    m: i64,
    u: i64,
    v: i64,
) -> f64 {
    let (mut u, mut v) = (u.abs(), v.abs());
    let mut sign = 1.0;
    if reflect_about_one {
        if u > 2 * m {
            u = 4 * m - u;
            sign = -sign;
        }
        if v > 2 * m {
            v = 4 * m - v;
            sign = -sign;
        }
    }
    let unit = 1.0 / (2 * m) as f64;
    let at = |a: i64, b: i64| f(Point2::new(a as f64 * unit, b as f64 * unit));
    let value = match (u.cmp(&v), symmetry) {
        (std::cmp::Ordering::Greater, _) => at(u, v),
        (std::cmp::Ordering::Equal, Symmetry::Anti) => 0.0,
        (std::cmp::Ordering::Equal, Symmetry::Sym) => at(u, v),
        (std::cmp::Ordering::Less, Symmetry::Anti) => -at(v, u),
        (std::cmp::Ordering::Less, Symmetry::Sym) => at(v, u),
    };
    sign * value
}

/// Computes a cosine spectrum through the exponential trigonometric form.
///
/// `f` is extended (anti)symmetrically across `x = y`, then evenly across both
/// axes (I, II: `N = 2M`, `T = 2`) or oddly about 1 and then evenly
/// (III, IV: `N = 4M`, `T = 4`). The extension is sampled on the grid with
/// `a = -T/2` and `b = 1` (I, III) or `b = ½` (II, IV) and its trigonometric form
/// is computed. `B`, `C`, `D` must vanish up to `1e-9` times the largest sample;
/// the cosine coefficients are then read off `A`.
pub fn derive_from_trig<F>(f: F, variant: CosineVariant, symmetry: Symmetry, m: usize) -> Result<CosineSpectrum>
where
    F: Fn(Point2) -> f64,
{
    let nodes = CosineNodeSet::new(variant, symmetry, m)?;
    let reflect = variant.half_frequencies();
    let (n, t) = if reflect { (4 * m, 4.0) } else { (2 * m, 2.0) };
    let b = if variant.shifted_nodes() { 0.5 } else { 1.0 };
    let spec = GridSpec::new(-t / 2.0, b, n, t)?;
    let kind = GridKind::from(symmetry);
    let two_b: i64 = if variant.shifted_nodes() { 1 } else { 2 };
    // x_i = a + (i+b)T/N = (2i + 2b - N) / (2M) in both cases.
    let lattice = |i: usize| 2 * i as i64 + two_b - n as i64;
    let values: Vec<Complex64> = grid_indices(n, kind)
        .map(|(i, j)| extended_lattice_value(&f, symmetry, reflect, m as i64, lattice(i), lattice(j)).into())
        .collect();
    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let form = trig_form(&SampleSet::new(spec, kind, values)?)?;
    let residual = form
        .terms
        .values()
        .flat_map(|t| [t.b, t.c, t.d])
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if residual > 1e-9 * scale {
        return Err(Error::ExtensionSymmetry(residual));
    }
    let coeffs = nodes.index_pairs().into_iter().map(|(k, l)| {
        let (kk, ll) = if reflect { (2 * k + 1, 2 * l + 1) } else { (k, l) };
        let a = form.terms.get(&(kk, ll)).map_or(Complex64::zero(), |t| t.a);
        (variant.label(k, l), zero_factor(kk) * zero_factor(ll) * a.re)
    });
    CosineSpectrum::from_coeffs(symmetry, variant, m, coeffs)
}
