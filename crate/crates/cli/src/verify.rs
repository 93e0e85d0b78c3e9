//! Self-checks run by `symtrig2d verify`.

use std::io::Write;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symtrig2d::analysis::{
    gaussian_model, gibbs_profile, laplace_residual, orthogonality_matrix, ripple_model, BoundaryStrip, Edge,
    QuadratureSpec,
};
use symtrig2d::basis::diagonal_weight;
use symtrig2d::cosine::{amdct, derive_from_trig, smdct, CosineNodeSet, CosineSampleSet, CosineVariant};
use symtrig2d::interpolation::{antisym_extend, beta_to_c, interp_anti, interp_full, interp_sym, sym_extend, InterpCoefficients};
use symtrig2d::transforms::{
    adft_forward, adft_inverse, check_discrete_orthogonality, dominant_pairs, sdft_forward, sdft_inverse, SampleSet,
};
use symtrig2d::{BasisFamily, Complex64, FrequencyPair, GridKind, GridSpec, Point2, Symmetry};

use crate::error::{CliError, CliResult};

const SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub ns: Vec<usize>,
    pub resolution: usize,
    pub inject_fault: bool,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: impl Into<String>, value: f64, limit: f64) -> Check {
    Check {
        name: name.into(),
        passed: value <= limit,
        detail: format!("{value:.3e} (limit {limit:.0e})"),
    }
}

fn random_values(rng: &mut ChaCha8Rng, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

fn random_spec(rng: &mut ChaCha8Rng, n: usize) -> CliResult<GridSpec> {
    Ok(GridSpec::new(rng.random_range(-1.5..1.5), rng.random_range(0.0..=1.0), n, 1.0)?)
}

fn interpolate(kind: GridKind, s: &SampleSet) -> CliResult<InterpCoefficients> {
    Ok(match kind {
        GridKind::Full => interp_full(s)?,
        GridKind::Anti => interp_anti(s)?,
        GridKind::Sym => interp_sym(s)?,
    })
}

fn orthogonality(n: usize) -> CliResult<f64> {
    let mut worst: f64 = 0.0;
    for spec in [GridSpec::centered(n)?, GridSpec::new(0.3, 0.25, n, 2.0)?] {
        for symmetry in [Symmetry::Anti, Symmetry::Sym] {
            let pairs = dominant_pairs(n, symmetry);
            for &p in &pairs {
                for &q in &pairs {
                    let got = check_discrete_orthogonality(symmetry, &spec, p, q)?;
                    let want = if p == q {
                        let g = if symmetry == Symmetry::Sym { diagonal_weight(p.k, p.l) } else { 1.0 };
                        g * (n * n) as f64
                    } else {
                        0.0
                    };
                    worst = worst.max((got - want).norm() / (n * n) as f64);
                }
            }
        }
    }
    Ok(worst)
}

fn round_trip(n: usize, rng: &mut ChaCha8Rng, fault: bool) -> CliResult<f64> {
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let spec = random_spec(rng, n)?;
        for symmetry in [Symmetry::Anti, Symmetry::Sym] {
            let kind = GridKind::from(symmetry);
            let s = SampleSet::new(spec, kind, random_values(rng, kind.cardinality(n)))?;
            let (forward, inverse): (fn(&SampleSet) -> _, fn(&_) -> _) = match symmetry {
                Symmetry::Anti => (adft_forward, adft_inverse),
                Symmetry::Sym => (sdft_forward, sdft_inverse),
            };
            let mut sp = forward(&s)?;
            if fault {
                if let Some(c) = sp.coeffs.values_mut().next() {
                    *c += 1e-3;
                }
            }
            let back = inverse(&sp)?;
            for (x, y) in s.values.iter().zip(&back.values) {
                worst = worst.max((x - y).norm());
            }
        }
    }
    Ok(worst)
}

/// Columns of the interpolation system, one per free coefficient.
fn dense_system(c: &InterpCoefficients, s: &SampleSet) -> DMatrix<Complex64> {
    let pts: Vec<Point2> = s.iter().map(|(_, _, pt, _)| pt).collect();
    let keys: Vec<FrequencyPair> = c.coeffs.keys().copied().collect();
    let cols: Vec<Vec<Complex64>> = keys
        .iter()
        .map(|&p| {
            let mut unit = c.clone();
            for (q, v) in unit.coeffs.iter_mut() {
                *v = if *q == p { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            }
            let e = unit.expand();
            pts.iter().map(|&pt| e.eval(pt)).collect()
        })
        .collect();
    DMatrix::from_fn(pts.len(), keys.len(), |i, j| cols[j][i])
}

/// Deviation of the closed-form coefficients from a dense solve, the smallest
/// determinant seen and the interpolation error at the nodes.
fn dense_solve(n: usize, rng: &mut ChaCha8Rng) -> CliResult<(f64, f64, f64)> {
    let (mut dev, mut det, mut node): (f64, f64, f64) = (0.0, f64::INFINITY, 0.0);
    for kind in [GridKind::Full, GridKind::Anti, GridKind::Sym] {
        let spec = random_spec(rng, n)?;
        let s = SampleSet::new(spec, kind, random_values(rng, kind.cardinality(n)))?;
        let c = interpolate(kind, &s)?;
        for (_, _, pt, v) in s.iter() {
            node = node.max((c.eval(pt) - v).norm());
        }
        if n > 6 {
            continue;
        }
        let a = dense_system(&c, &s);
        det = det.min(a.clone().determinant().norm());
        match a.lu().solve(&DVector::from_vec(s.values.clone())) {
            Some(x) => {
                for (j, v) in c.coeffs.values().enumerate() {
                    dev = dev.max((v - x[j]).norm());
                }
            }
            None => det = 0.0,
        }
    }
    Ok((dev, det, node))
}

fn triple_path(n: usize, rng: &mut ChaCha8Rng) -> CliResult<f64> {
    let spec = random_spec(rng, n)?;
    let (c0, c1): (f64, f64) = (rng.random(), rng.random());
    let f = move |p: Point2| Complex64::new(gaussian_model(p) + c0 * p.x * p.y, (c1 * 5.0 * p.x).sin() - p.y);
    let mut worst: f64 = 0.0;

    let direct = interp_anti(&SampleSet::from_fn(spec, GridKind::Anti, f)?)?;
    let via_beta = beta_to_c(&adft_forward(&SampleSet::from_fn(spec, GridKind::Anti, f)?)?);
    let via_full = interp_full(&SampleSet::from_fn(spec, GridKind::Full, antisym_extend(f))?)?;
    for (p, v) in &direct.coeffs {
        worst = worst.max((via_beta.coeffs[p] - v).norm());
        worst = worst.max((via_full.coeffs[p] - v).norm());
    }

    let direct = interp_sym(&SampleSet::from_fn(spec, GridKind::Sym, f)?)?;
    let via_beta = beta_to_c(&sdft_forward(&SampleSet::from_fn(spec, GridKind::Sym, f)?)?);
    let via_full = interp_full(&SampleSet::from_fn(spec, GridKind::Full, sym_extend(f))?)?;
    for (p, v) in &direct.coeffs {
        worst = worst.max((via_beta.coeffs[p] - v).norm());
        worst = worst.max((via_full.coeffs[p] / diagonal_weight(p.k, p.l) - v).norm());
    }
    Ok(worst)
}

/// Gram deviation, node error and dual-path deviation over all eight cosine transforms.
fn cosine(m: usize) -> CliResult<(f64, f64, f64)> {
    let f = |p: Point2| gaussian_model(p) + 0.2 * p.x + 0.1 * p.y * p.y;
    let (mut gram, mut node, mut dual): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for variant in CosineVariant::ALL {
        for (symmetry, family) in [(Symmetry::Anti, BasisFamily::CosAnti), (Symmetry::Sym, BasisFamily::CosSym)] {
            let set = CosineNodeSet::new(variant, symmetry, m)?;
            let pairs = set.index_pairs();
            for &(k, l) in &pairs {
                for &(k2, l2) in &pairs {
                    let (p, q) = (variant.label(k, l), variant.label(k2, l2));
                    let g: f64 = set
                        .nodes
                        .iter()
                        .map(|n| set.weight(n.m, n.n) * family.eval(p, n.location).re * family.eval(q, n.location).re)
                        .sum();
                    let want = if (k, l) == (k2, l2) { 1.0 / set.prefactor(k, l) } else { 0.0 };
                    gram = gram.max((g - want).abs());
                }
            }
            let s = CosineSampleSet::from_fn(set.clone(), f);
            let sp = match symmetry {
                Symmetry::Anti => amdct(&s)?,
                Symmetry::Sym => smdct(&s)?,
            };
            for (n, v) in set.nodes.iter().zip(&s.values) {
                node = node.max((sp.eval(n.location) - v).abs());
            }
            let derived = derive_from_trig(f, variant, symmetry, m)?;
            for (p, c) in &sp.coeffs {
                dual = dual.max((derived.coeffs[p] - c).abs());
            }
        }
    }
    Ok((gram, node, dual))
}

/// Largest frequency covered by the finite-difference budget at `h = 1e-3`.
const LAPLACE_TOP: i32 = 3;

/// Worst Laplace or mixed-derivative residual relative to its budget.
fn laplace(n: usize, rng: &mut ChaCha8Rng) -> f64 {
    let top = (n as i32 / 2 + 1).min(LAPLACE_TOP);
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let pt = Point2::new(rng.random_range(0.05..0.95), rng.random_range(0.05..0.95));
        for family in BasisFamily::ALL {
            for k in -top..=top {
                for l in -top..=top {
                    let c = laplace_residual(family, FrequencyPair::int(k, l), pt, 1e-3);
                    worst = worst
                        .max(c.residual / (1e-4 * (1.0 + c.eigenvalue.abs())))
                        .max(c.mixed_residual / (1e-4 * (1.0 + c.mixed_eigenvalue.abs())));
                }
            }
        }
    }
    worst
}

fn continuous_orthogonality(resolution: usize) -> CliResult<f64> {
    let q = QuadratureSpec::half_square(resolution).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut worst: f64 = 0.0;
    for family in [BasisFamily::ExpAnti, BasisFamily::ExpSym] {
        let pairs: Vec<FrequencyPair> = (0..=3)
            .flat_map(|k| (0..=3).map(move |l| FrequencyPair::int(k, l)))
            .filter(|p| family.symmetry().admits_pair(*p))
            .collect();
        for (i, row) in orthogonality_matrix(family, &pairs, &q)?.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                worst = worst.max((v - if i == j { 1.0 } else { 0.0 }).norm());
            }
        }
    }
    Ok(worst)
}

fn gibbs() -> CliResult<Vec<Check>> {
    let strip = BoundaryStrip::outer();
    let mut maxima = Vec::new();
    for m in [12usize, 16, 20] {
        let sp = smdct(&CosineSampleSet::from_fn(CosineNodeSet::new(CosineVariant::II, Symmetry::Sym, m)?, ripple_model))?;
        maxima.push(gibbs_profile(|pt| sp.eval(pt), ripple_model, &strip));
    }
    let decreasing = maxima.windows(2).all(|w| w[1] < w[0]);

    let diagonal = BoundaryStrip::new(vec![Edge::Diagonal], 0.0);
    let mut exact = true;
    for n in 4..=8usize {
        let c = interp_anti(&SampleSet::from_real_fn(GridSpec::centered(n)?, GridKind::Anti, gaussian_model)?)?.expand();
        exact &= diagonal.points().iter().all(|&pt| c.eval(pt) == Complex64::new(0.0, 0.0));
    }
    Ok(vec![
        Check {
            name: "gibbs: ripple strip error decreases with M".into(),
            passed: decreasing,
            detail: format!("M=12,16,20: {:.4}, {:.4}, {:.4}", maxima[0], maxima[1], maxima[2]),
        },
        Check {
            name: "gibbs: antisymmetric interpolant vanishes on x=y".into(),
            passed: exact,
            detail: format!("{exact}"),
        },
    ])
}

pub fn run(cfg: &VerifyConfig) -> CliResult<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checks = Vec::new();
    for &n in &cfg.ns {
        checks.push(check(format!("N={n} discrete orthogonality"), orthogonality(n)?, 1e-10));
        checks.push(check(format!("N={n} transform round trip"), round_trip(n, &mut rng, cfg.inject_fault)?, 1e-10));
        let (dev, det, node) = dense_solve(n, &mut rng)?;
        if n <= 6 {
            checks.push(check(format!("N={n} dense solve agreement"), dev, 1e-8));
            checks.push(Check {
                name: format!("N={n} interpolation system nonsingular"),
                passed: det > 0.0,
                detail: format!("min |det| {det:.3e}"),
            });
        }
        checks.push(check(format!("N={n} node coincidence"), node, 1e-9));
        checks.push(check(format!("N={n} three coefficient paths agree"), triple_path(n, &mut rng)?, 1e-9));
        let (gram, node, dual) = cosine(n)?;
        checks.push(check(format!("M={n} cosine discrete orthogonality"), gram, 1e-9));
        checks.push(check(format!("M={n} cosine node coincidence"), node, 1e-9));
        checks.push(check(format!("M={n} cosine dual path"), dual, 1e-9));
        checks.push(check(format!("N={n} eigenfunction residual / budget"), laplace(n, &mut rng), 1.0));
    }
    checks.push(check(
        format!("continuous orthogonality (R={})", cfg.resolution),
        continuous_orthogonality(cfg.resolution)?,
        1e-3,
    ));
    checks.extend(gibbs()?);
    Ok(checks)
}

pub fn report(checks: &[Check], out: &mut dyn Write) -> CliResult<usize> {
    let mut failed = 0;
    for c in checks {
        if !c.passed {
            failed += 1;
        }
        writeln!(out, "{}  {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
    }
    writeln!(out, "{} of {} checks passed", checks.len() - failed, checks.len())?;
    Ok(failed)
}
