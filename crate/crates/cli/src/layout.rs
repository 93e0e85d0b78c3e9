use clap::Args;
use symtrig2d::cosine::{CosineNodeSet, CosineVariant};
use symtrig2d::grids::make_grid;
use symtrig2d::{BasisFamily, GridKind, GridPoint, GridSpec, Point2, Symmetry};

use crate::error::{CliError, CliResult};
use crate::formats::SampleRow;

/// Tolerance for matching sample coordinates against the configured grid.
const LOCATION_TOL: f64 = 1e-9;

#[derive(Args, Clone, Debug)]
pub struct GridArgs {
    /// Function family: exp-anti, exp-sym, cos-anti or cos-sym.
    #[arg(long, default_value = "exp-anti")]
    pub family: BasisFamily,
    /// Points per side of the grid.
    #[arg(long)]
    pub n: Option<usize>,
    /// Node-set parameter of the cosine transforms (defaults to --n).
    #[arg(long)]
    pub m: Option<usize>,
    /// Cosine transform variant, 1 to 4 (cosine families only, default 2).
    #[arg(long)]
    pub variant: Option<CosineVariant>,
    /// Grid shift along the diagonal (exponential families only, default 0).
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Sub-cell shift in [0, 1] (exponential families only, default 0.5).
    #[arg(long)]
    pub b: Option<f64>,
    /// Side of the square (exponential families only, default 1).
    #[arg(long)]
    pub t: Option<f64>,
}

/// A fully resolved sampling layout.
#[derive(Clone, Debug)]
pub enum Layout {
    Exp { symmetry: Symmetry, spec: GridSpec },
    Cosine { set: CosineNodeSet },
}

pub fn variant_number(v: CosineVariant) -> u8 {
    match v {
        CosineVariant::I => 1,
        CosineVariant::II => 2,
        CosineVariant::III => 3,
        CosineVariant::IV => 4,
    }
}

impl GridArgs {
    pub fn layout(&self) -> CliResult<Layout> {
        let symmetry = self.family.symmetry();
        if self.family.is_cosine() {
            if self.a.is_some() || self.b.is_some() || self.t.is_some() {
                return Err(CliError::Usage("--a, --b and --t apply to exponential families only".into()));
            }
            let m = self
                .m
                .or(self.n)
                .ok_or_else(|| CliError::Usage("--m (or --n) is required".into()))?;
            if m == 0 {
                return Err(CliError::Usage("M must be at least 1".into()));
            }
            let variant = self.variant.unwrap_or(CosineVariant::II);
            let set = CosineNodeSet::new(variant, symmetry, m).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Layout::Cosine { set })
        } else {
            if self.variant.is_some() {
                return Err(CliError::Usage("--variant applies to cosine families only".into()));
            }
            if self.m.is_some() {
                return Err(CliError::Usage("--m applies to cosine families only".into()));
            }
            let n = self.n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
            let spec = GridSpec::new(self.a.unwrap_or(0.0), self.b.unwrap_or(0.5), n, self.t.unwrap_or(1.0))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Layout::Exp { symmetry, spec })
        }
    }
}

impl Layout {
    pub fn nodes(&self) -> Vec<GridPoint> {
        match self {
            Layout::Exp { symmetry, spec } => make_grid(spec, GridKind::from(*symmetry)),
            Layout::Cosine { set } => set.nodes.clone(),
        }
    }

    /// Lower corner and side of the square the layout lives on.
    pub fn square(&self) -> (f64, f64) {
        match self {
            Layout::Exp { spec, .. } => (spec.a, spec.t),
            Layout::Cosine { .. } => (0.0, 1.0),
        }
    }

    /// Cell centres `a + (i+½)T/R` of an `R × R` raster with `x ≥ y`.
    pub fn raster(&self, resolution: usize) -> Vec<Point2> {
        let (a, t) = self.square();
        let coord = |i: usize| a + (i as f64 + 0.5) * t / resolution as f64;
        (0..resolution)
            .flat_map(|i| (0..=i).map(move |j| Point2::new(coord(i), coord(j))))
            .collect()
    }

    /// Checks that `rows` enumerate exactly the layout's nodes, in order.
    pub fn check_rows(&self, rows: &[SampleRow]) -> CliResult<()> {
        let nodes = self.nodes();
        if rows.len() != nodes.len() {
            return Err(CliError::Format(format!(
                "expected {} samples for this grid, found {}",
                nodes.len(),
                rows.len()
            )));
        }
        for (i, (row, node)) in rows.iter().zip(&nodes).enumerate() {
            if (row.m, row.n) != (node.m, node.n) {
                return Err(CliError::Format(format!(
                    "row {}: expected node ({}, {}), found ({}, {})",
                    i + 1,
                    node.m,
                    node.n,
                    row.m,
                    row.n
                )));
            }
            let dx = (row.location.x - node.location.x).abs();
            let dy = (row.location.y - node.location.y).abs();
            if dx.max(dy) > LOCATION_TOL {
                return Err(CliError::Format(format!(
                    "row {}: location ({}, {}) does not match grid node ({}, {})",
                    i + 1,
                    row.location.x,
                    row.location.y,
                    node.location.x,
                    node.location.y
                )));
            }
        }
        Ok(())
    }
}
