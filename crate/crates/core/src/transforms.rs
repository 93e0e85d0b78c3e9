//! Antisymmetric and symmetric discrete Fourier transforms over `L⁻` and `L⁺`.
//!
//! ```text
//! β⁻_kl = 1/N² Σ_{m>n} f(x_m,y_n) conj(E⁻_(k,l)(x_m,y_n)),            k > l
//! β⁺_kl = 1/(G_kl N²) Σ_{m≥n} G_mn⁻¹ f(x_m,y_n) conj(E⁺_(k,l)(x_m,y_n)), k ≥ l
//! ```
//!
//! with `k, l = 0..N`. Grids of side `T ≠ 1` are rescaled to the unit square
//! before the basis functions are evaluated. Sums are direct, `O(N⁴)` per
//! transform; output coefficients are computed in parallel.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{diagonal_weight, exp_anti, exp_sym, FrequencyPair, Point2, Symmetry};
use crate::error::{Error, Result};
use crate::grids::{grid_indices, GridKind, GridSpec};

/// Complex samples on a grid, in `make_grid` order.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub spec: GridSpec,
    pub kind: GridKind,
    pub values: Vec<Complex64>,
}

impl SampleSet {
    pub fn new(spec: GridSpec, kind: GridKind, values: Vec<Complex64>) -> Result<Self> {
        spec.validate()?;
        let expected = kind.cardinality(spec.n);
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: values.len(),
            });
        }
        Ok(SampleSet { spec, kind, values })
    }

    /// Samples `f` at the grid locations (in the coordinates of the square of side `T`).
    pub fn from_fn<F>(spec: GridSpec, kind: GridKind, f: F) -> Result<Self>
    where
        F: Fn(Point2) -> Complex64,
    {
        spec.validate()?;
        let values = grid_indices(spec.n, kind).map(|(m, n)| f(spec.location(m, n))).collect();
        Ok(SampleSet { spec, kind, values })
    }

    pub fn from_real_fn<F>(spec: GridSpec, kind: GridKind, f: F) -> Result<Self>
    where
        F: Fn(Point2) -> f64,
    {
        SampleSet::from_fn(spec, kind, |p| f(p).into())
    }

    pub fn indices(&self) -> impl Iterator<Item = (usize, usize)> {
        grid_indices(self.spec.n, self.kind)
    }

    /// `(m, n, location, value)` for every sample.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Point2, Complex64)> + '_ {
        self.indices()
            .zip(&self.values)
            .map(|((m, n), &v)| (m, n, self.spec.location(m, n), v))
    }

    pub(crate) fn unit_nodes(&self) -> Vec<(usize, usize, Point2, Complex64)> {
        self.indices()
            .zip(&self.values)
            .map(|((m, n), &v)| (m, n, self.spec.unit_location(m, n), v))
            .collect()
    }

    pub(crate) fn require_kind(&self, expected: GridKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                expected,
                found: self.kind,
            })
        }
    }
}

/// Coefficients of a discrete transform over the dominant pairs `0 ≤ l (<|≤) k < N`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub symmetry: Symmetry,
    pub spec: GridSpec,
    pub coeffs: BTreeMap<FrequencyPair, Complex64>,
}

pub fn family_name(symmetry: Symmetry) -> &'static str {
    match symmetry {
        Symmetry::Anti => "exp-anti",
        Symmetry::Sym => "exp-sym",
    }
}

/// Dominant integer pairs with both labels in `0..n`, ordered by `(k, l)`.
pub fn dominant_pairs(n: usize, symmetry: Symmetry) -> Vec<FrequencyPair> {
    let n = n as i32;
    (0..n)
        .flat_map(|k| (0..n).filter(move |&l| symmetry.admits(k, l)).map(move |l| FrequencyPair::int(k, l)))
        .collect()
}

impl Spectrum {
    /// A spectrum with every coefficient zero.
    pub fn zeros(symmetry: Symmetry, spec: GridSpec) -> Result<Self> {
        spec.validate()?;
        let coeffs = dominant_pairs(spec.n, symmetry)
            .into_iter()
            .map(|p| (p, Complex64::new(0.0, 0.0)))
            .collect();
        Ok(Spectrum {
            symmetry,
            spec,
            coeffs,
        })
    }

    /// Builds a spectrum from explicit coefficients; every pair must be dominant and in range,
    /// and missing pairs are zero.
    pub fn from_coeffs<I>(symmetry: Symmetry, spec: GridSpec, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (FrequencyPair, Complex64)>,
    {
        let mut sp = Spectrum::zeros(symmetry, spec)?;
        for (p, c) in coeffs {
            match sp.coeffs.get_mut(&p) {
                Some(slot) => *slot = c,
                None => return Err(Error::PairOutOfRange(p.to_string())),
            }
        }
        Ok(sp)
    }

    pub fn family_name(&self) -> &'static str {
        family_name(self.symmetry)
    }

    /// Coefficient of any pair in range; non-dominant pairs are answered through the
    /// label symmetry `β_lk = ∓β_kl`.
    pub fn get(&self, p: FrequencyPair) -> Option<Complex64> {
        if let Some(&c) = self.coeffs.get(&p) {
            return Some(c);
        }
        let swapped = self.coeffs.get(&p.swap()).copied()?;
        Some(match self.symmetry {
            Symmetry::Sym => swapped,
            Symmetry::Anti => -swapped,
        })
    }

    /// Like [`Spectrum::get`] but also answers `β_kk = 0` for antisymmetric spectra.
    pub fn coefficient(&self, p: FrequencyPair) -> Option<Complex64> {
        if self.symmetry == Symmetry::Anti && p.k == p.l {
            let (k, _) = p.as_int()?;
            return (0..self.spec.n as i32).contains(&k).then(|| Complex64::new(0.0, 0.0));
        }
        self.get(p)
    }

    pub(crate) fn require(&self, expected: Symmetry) -> Result<()> {
        if self.symmetry == expected {
            Ok(())
        } else {
            Err(Error::FamilyMismatch {
                expected: family_name(expected),
                found: self.family_name(),
            })
        }
    }
}

fn basis_fn(symmetry: Symmetry) -> fn(FrequencyPair, Point2) -> Complex64 {
    match symmetry {
        Symmetry::Anti => exp_anti,
        Symmetry::Sym => exp_sym,
    }
}

/// `1/G_mn` for symmetric sums, 1 for antisymmetric ones.
pub(crate) fn node_weight(symmetry: Symmetry, m: usize, n: usize) -> f64 {
    match symmetry {
        Symmetry::Anti => 1.0,
        Symmetry::Sym => 1.0 / diagonal_weight(m, n),
    }
}

pub(crate) fn label_weight(symmetry: Symmetry, p: FrequencyPair) -> f64 {
    match symmetry {
        Symmetry::Anti => 1.0,
        Symmetry::Sym => diagonal_weight(p.k, p.l),
    }
}

/// `Σ G_mn⁻¹ f(x_m,y_n) conj(E^±_p(x_m,y_n))` over the grid nodes.
pub(crate) fn projection(symmetry: Symmetry, nodes: &[(usize, usize, Point2, Complex64)], p: FrequencyPair) -> Complex64 {
    let basis = basis_fn(symmetry);
    nodes
        .iter()
        .map(|&(m, n, pt, v)| v * basis(p, pt).conj() * node_weight(symmetry, m, n))
        .sum()
}

fn forward(s: &SampleSet, symmetry: Symmetry) -> Result<Spectrum> {
    s.require_kind(symmetry.into())?;
    let nodes = s.unit_nodes();
    let n2 = (s.spec.n * s.spec.n) as f64;
    let pairs = dominant_pairs(s.spec.n, symmetry);
    let values: Vec<Complex64> = pairs
        .par_iter()
        .map(|&p| projection(symmetry, &nodes, p) / (label_weight(symmetry, p) * n2))
        .collect();
    Ok(Spectrum {
        symmetry,
        spec: s.spec,
        coeffs: pairs.into_iter().zip(values).collect(),
    })
}

fn inverse(sp: &Spectrum, symmetry: Symmetry) -> Result<SampleSet> {
    sp.require(symmetry)?;
    let basis = basis_fn(symmetry);
    let spec = sp.spec;
    let idx: Vec<_> = grid_indices(spec.n, symmetry.into()).collect();
    let values = idx
        .par_iter()
        .map(|&(m, n)| {
            let pt = spec.unit_location(m, n);
            sp.coeffs.iter().map(|(&p, &c)| c * basis(p, pt)).sum()
        })
        .collect();
    SampleSet::new(spec, symmetry.into(), values)
}

/// Antisymmetric discrete Fourier transform of samples on `L⁻`.
pub fn adft_forward(s: &SampleSet) -> Result<Spectrum> {
    forward(s, Symmetry::Anti)
}

/// Synthesizes samples on `L⁻` from `β⁻`.
pub fn adft_inverse(sp: &Spectrum) -> Result<SampleSet> {
    inverse(sp, Symmetry::Anti)
}

/// Symmetric discrete Fourier transform of samples on `L⁺`.
pub fn sdft_forward(s: &SampleSet) -> Result<Spectrum> {
    forward(s, Symmetry::Sym)
}

/// Synthesizes samples on `L⁺` from `β⁺`.
pub fn sdft_inverse(sp: &Spectrum) -> Result<SampleSet> {
    inverse(sp, Symmetry::Sym)
}

fn pair_in_range(symmetry: Symmetry, n: usize, p: FrequencyPair) -> bool {
    let Some((k, l)) = p.as_int() else {
        return false;
    };
    if !symmetry.admits(k, l) {
        return false;
    }
    let n = n as i32;
    let natural = (0..n).contains(&k) && (0..n).contains(&l);
    let half = n / 2;
    let centered = n % 2 == 1 && (-half..=half).contains(&k) && (-half..=half).contains(&l);
    natural || centered
}

/// The discrete inner product `Σ G_mn⁻¹ E_p conj(E_q)` over `L^∓_{a,b,N,T}`.
///
/// Equals `N² δ_pq` (antisymmetric) or `G_p N² δ_pq` (symmetric) for labels in
/// `0..N`, and for odd `N = 2M+1` also for labels in `-M..=M`.
pub fn check_discrete_orthogonality(
    symmetry: Symmetry,
    spec: &GridSpec,
    p: FrequencyPair,
    q: FrequencyPair,
) -> Result<Complex64> {
    spec.validate()?;
    for pair in [p, q] {
        if !pair_in_range(symmetry, spec.n, pair) {
            return Err(Error::PairOutOfRange(pair.to_string()));
        }
    }
    let basis = basis_fn(symmetry);
    Ok(grid_indices(spec.n, symmetry.into())
        .map(|(m, n)| {
            let pt = spec.unit_location(m, n);
            basis(p, pt) * basis(q, pt).conj() * node_weight(symmetry, m, n)
        })
        .sum())
}
