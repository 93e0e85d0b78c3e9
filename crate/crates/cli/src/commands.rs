use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use symtrig2d::analysis::{error_table, Model, QuadratureSpec};
use symtrig2d::cosine::{amdct, smdct, CosineNodeSet, CosineSampleSet, CosineSpectrum, CosineVariant};
use symtrig2d::interpolation::{interp_anti, interp_sym};
use symtrig2d::transforms::{adft_forward, adft_inverse, sdft_forward, sdft_inverse, SampleSet, Spectrum};
use symtrig2d::{BasisFamily, Complex64, GridKind, GridSpec, Point2, Symmetry};

use crate::error::{CliError, CliResult};
use crate::formats::{
    read_samples, write_raster, write_samples, write_table, CoeffEntry, SampleRow, SpectrumFile,
};
use crate::layout::{variant_number, Layout};

pub fn open_input(path: &Path) -> CliResult<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))
}

/// Writes through `emit` to `path`, or to stdout when no path is given.
pub fn with_output<F>(path: Option<&PathBuf>, emit: F) -> CliResult<()>
where
    F: FnOnce(&mut dyn Write) -> CliResult<()>,
{
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            emit(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            emit(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Parses `4..12` (inclusive), `4,6,8` or a single value.
pub fn parse_ns(s: &str) -> Result<Vec<usize>, String> {
    let bad = || format!("invalid N list '{s}'");
    let ns: Vec<usize> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        (lo..=hi).collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if ns.is_empty() || ns.contains(&0) {
        return Err(bad());
    }
    Ok(ns)
}

pub fn sample(layout: &Layout, model: Model) -> Vec<SampleRow> {
    layout
        .nodes()
        .iter()
        .map(|p| SampleRow {
            m: p.m,
            n: p.n,
            location: p.location,
            value: model.eval(p.location).into(),
        })
        .collect()
}

fn exp_samples(symmetry: Symmetry, spec: GridSpec, rows: &[SampleRow]) -> CliResult<SampleSet> {
    Ok(SampleSet::new(spec, GridKind::from(symmetry), rows.iter().map(|r| r.value).collect())?)
}

fn cosine_samples(set: &CosineNodeSet, rows: &[SampleRow]) -> CliResult<CosineSampleSet> {
    if let Some(r) = rows.iter().find(|r| r.value.im != 0.0) {
        return Err(CliError::Format(format!(
            "cosine samples must be real, node ({}, {}) has im = {}",
            r.m, r.n, r.value.im
        )));
    }
    Ok(CosineSampleSet::new(set.clone(), rows.iter().map(|r| r.value.re).collect())?)
}

pub fn read_checked_samples<R: Read>(layout: &Layout, input: R) -> CliResult<Vec<SampleRow>> {
    let rows = read_samples(input)?;
    layout.check_rows(&rows)?;
    Ok(rows)
}

pub fn transform(layout: &Layout, rows: &[SampleRow]) -> CliResult<SpectrumFile> {
    match layout {
        Layout::Exp { symmetry, spec } => {
            let s = exp_samples(*symmetry, *spec, rows)?;
            let sp = match symmetry {
                Symmetry::Anti => adft_forward(&s)?,
                Symmetry::Sym => sdft_forward(&s)?,
            };
            Ok(SpectrumFile {
                family: exp_family(*symmetry).name().into(),
                variant: None,
                n: spec.n,
                a: spec.a,
                b: spec.b,
                t: spec.t,
                coeffs: sp.coeffs.iter().map(|(&p, &c)| CoeffEntry::new(p, c)).collect(),
            })
        }
        Layout::Cosine { set } => {
            let s = cosine_samples(set, rows)?;
            let sp = match set.symmetry {
                Symmetry::Anti => amdct(&s)?,
                Symmetry::Sym => smdct(&s)?,
            };
            Ok(SpectrumFile {
                family: cosine_family(set.symmetry).name().into(),
                variant: Some(variant_number(set.variant)),
                n: set.m,
                a: 0.0,
                b: if set.variant.shifted_nodes() { 0.5 } else { 0.0 },
                t: 1.0,
                coeffs: sp.coeffs.iter().map(|(&p, &c)| CoeffEntry::new(p, c.into())).collect(),
            })
        }
    }
}

fn exp_family(symmetry: Symmetry) -> BasisFamily {
    match symmetry {
        Symmetry::Anti => BasisFamily::ExpAnti,
        Symmetry::Sym => BasisFamily::ExpSym,
    }
}

fn cosine_family(symmetry: Symmetry) -> BasisFamily {
    match symmetry {
        Symmetry::Anti => BasisFamily::CosAnti,
        Symmetry::Sym => BasisFamily::CosSym,
    }
}

/// A spectrum read back from its JSON form.
pub enum LoadedSpectrum {
    Exp(Spectrum),
    Cosine(CosineSpectrum),
}

pub fn load_spectrum(file: &SpectrumFile) -> CliResult<LoadedSpectrum> {
    let family: BasisFamily = file.family.parse().map_err(CliError::Format)?;
    let symmetry = family.symmetry();
    if family.is_cosine() {
        let number = file
            .variant
            .ok_or_else(|| CliError::Format("cosine spectrum without a variant".into()))?;
        let variant: CosineVariant = number.to_string().parse().map_err(CliError::Format)?;
        let coeffs = file
            .coeffs
            .iter()
            .map(|e| {
                if e.im != 0.0 {
                    return Err(CliError::Format("cosine coefficients must be real".into()));
                }
                Ok((e.pair()?, e.re))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(LoadedSpectrum::Cosine(CosineSpectrum::from_coeffs(symmetry, variant, file.n, coeffs)?))
    } else {
        if file.variant.is_some() {
            return Err(CliError::Format("exponential spectrum with a variant".into()));
        }
        let spec = GridSpec::new(file.a, file.b, file.n, file.t)?;
        let coeffs = file
            .coeffs
            .iter()
            .map(|e| Ok((e.pair()?, e.value())))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(LoadedSpectrum::Exp(Spectrum::from_coeffs(symmetry, spec, coeffs)?))
    }
}

pub fn synthesize(file: &SpectrumFile) -> CliResult<Vec<SampleRow>> {
    match load_spectrum(file)? {
        LoadedSpectrum::Exp(sp) => {
            let s = match sp.symmetry {
                Symmetry::Anti => adft_inverse(&sp)?,
                Symmetry::Sym => sdft_inverse(&sp)?,
            };
            Ok(s.iter()
                .map(|(m, n, location, value)| SampleRow { m, n, location, value })
                .collect())
        }
        LoadedSpectrum::Cosine(sp) => {
            let set = CosineNodeSet::new(sp.variant, sp.symmetry, sp.m)?;
            Ok(set
                .nodes
                .iter()
                .map(|p| SampleRow {
                    m: p.m,
                    n: p.n,
                    location: p.location,
                    value: sp.eval(p.location).into(),
                })
                .collect())
        }
    }
}

pub fn interpolate(layout: &Layout, rows: &[SampleRow], resolution: usize) -> CliResult<Vec<(Point2, Complex64)>> {
    if resolution == 0 {
        return Err(CliError::Usage("resolution must be at least 1".into()));
    }
    let pts = layout.raster(resolution);
    let values: Vec<Complex64> = match layout {
        Layout::Exp { symmetry, spec } => {
            let s = exp_samples(*symmetry, *spec, rows)?;
            let c = match symmetry {
                Symmetry::Anti => interp_anti(&s)?,
                Symmetry::Sym => interp_sym(&s)?,
            };
            let waves = c.expand();
            pts.par_iter().map(|&pt| waves.eval(pt)).collect()
        }
        Layout::Cosine { set } => {
            let s = cosine_samples(set, rows)?;
            let sp = match set.symmetry {
                Symmetry::Anti => amdct(&s)?,
                Symmetry::Sym => smdct(&s)?,
            };
            pts.par_iter().map(|&pt| sp.eval(pt).into()).collect()
        }
    };
    Ok(pts.into_iter().zip(values).collect())
}

pub fn table(model: Model, ns: &[usize], resolution: usize, out: &mut dyn Write) -> CliResult<()> {
    let q = QuadratureSpec::half_square(resolution).map_err(|e| CliError::Usage(e.to_string()))?;
    write_table(out, &error_table(model, ns, &q)?)
}

pub fn emit_samples(rows: &[SampleRow], out: &mut dyn Write) -> CliResult<()> {
    write_samples(out, rows)
}

pub fn emit_raster(rows: &[(Point2, Complex64)], out: &mut dyn Write) -> CliResult<()> {
    write_raster(out, rows)
}
