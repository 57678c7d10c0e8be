//! Parameter scans reproducing the four figures, plus custom scans, and
//! their CSV and SVG output.

mod csv;
mod grid;
mod svg;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;

pub use self::csv::{format_number, parse_csv, round_to_csv, to_csv_string, HEADER};
pub use self::grid::{Grid, Spacing, MAX_GRID_POINTS};
pub use self::svg::to_svg_string;

use crate::error::Error;
use crate::landau::{FieldConfig, PacketSpec, PhysicalConstants, DEFAULT_WIDTH_OVER_INV_BETA};
use crate::observables::{
    displacement_strong_field_antiparticle, displacement_strong_field_closed_form,
    optimal_antiparticle_momentum, speed_nonrel, speed_rel, SpeedResult,
};
use crate::qsl::{
    qsl_time_strong_field, qsl_time_strong_field_antiparticle, SuperpositionKind, SuperpositionSpec,
};
use crate::specfun::QuadratureConfig;

/// Largest `n` accepted on an `n` axis.
pub const MAX_SCAN_N: u32 = 1000;

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

impl ScanError {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Parse { .. } => 1,
            Self::Io { .. } => 3,
        }
    }
}

impl From<Error> for ScanError {
    fn from(e: Error) -> Self {
        Self::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Custom,
}

impl Figure {
    pub fn label(self) -> &'static str {
        match self {
            Self::Fig1 => "fig1",
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Fig4 => "fig4",
            Self::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    B,
    N,
    P0,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Self::B => "B",
            Self::N => "n",
            Self::P0 => "p0",
        }
    }
}

impl FromStr for Axis {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, ScanError> {
        match s {
            "B" | "b" => Ok(Self::B),
            "n" => Ok(Self::N),
            "p0" => Ok(Self::P0),
            other => Err(ScanError::Usage(format!(
                "unknown axis {other:?}; expected B, n or p0"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Units {
    #[default]
    Si,
    /// `e = m0 = hbar = c = 1`; fields in units of `m0^2 c^2 / (e hbar)`.
    Natural,
}

impl Units {
    pub fn label(self) -> &'static str {
        match self {
            Self::Si => "si",
            Self::Natural => "natural",
        }
    }

    pub fn constants(self) -> PhysicalConstants {
        match self {
            Self::Si => PhysicalConstants::codata(),
            Self::Natural => PhysicalConstants::natural(),
        }
    }

    /// Converts a field given in tesla into these units.
    pub fn field_from_tesla(self, b: f64) -> f64 {
        match self {
            Self::Si => b,
            Self::Natural => {
                let c = PhysicalConstants::codata();
                b * c.e * c.hbar / (c.m0 * c.c).powi(2)
            }
        }
    }
}

impl FromStr for Units {
    type Err = ScanError;

    fn from_str(s: &str) -> Result<Self, ScanError> {
        match s {
            "si" => Ok(Self::Si),
            "natural" => Ok(Self::Natural),
            other => Err(ScanError::Usage(format!(
                "unknown unit system {other:?}; expected si or natural"
            ))),
        }
    }
}

/// Parameters held fixed during a scan.
#[derive(Debug, Clone, PartialEq)]
pub struct FixedParams {
    /// Field values; each gives a separate series unless `B` is the axis.
    pub b: Vec<f64>,
    pub n: u32,
    pub p0_over_beta_hbar: f64,
    pub d_over_inv_beta: f64,
    pub kinds: Vec<SuperpositionKind>,
    /// Use the speed-maximizing momentum (strong-field antiparticle scans).
    pub maximize_p0: bool,
    /// Evaluate the `B -> inf` closed forms; `b` then only sets the scale
    /// of `t_min` and the displacement.
    pub strong_field: bool,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            b: vec![1e15],
            n: 0,
            p0_over_beta_hbar: 0.0,
            d_over_inv_beta: DEFAULT_WIDTH_OVER_INV_BETA,
            kinds: vec![SuperpositionKind::ParticleParticle],
            maximize_p0: false,
            strong_field: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRequest {
    pub figure: Figure,
    pub axis: Axis,
    pub grid: Grid,
    pub fixed: FixedParams,
    pub units: Units,
    pub quadrature: QuadratureConfig,
    /// Evaluate rows on the calling thread only.
    pub serial: bool,
}

impl ScanRequest {
    /// The preset for a figure; `Custom` starts from a `B` scan with default
    /// parameters.
    pub fn preset(figure: Figure, units: Units) -> Self {
        use SuperpositionKind::*;
        let t = |b: f64| units.field_from_tesla(b);
        let mut fixed = FixedParams {
            b: vec![t(1e15)],
            ..FixedParams::default()
        };
        let (axis, grid) = match figure {
            Figure::Fig1 => {
                fixed.kinds = vec![Nonrelativistic, ParticleParticle];
                (Axis::B, Grid::log(t(1e8), t(1e13), 60))
            }
            Figure::Fig2 => {
                fixed.strong_field = true;
                (Axis::N, Grid::linear(0.0, 132.0, 67))
            }
            Figure::Fig3 => {
                fixed.strong_field = true;
                fixed.kinds = vec![AntiparticleParticle];
                fixed.p0_over_beta_hbar = 1.0;
                (Axis::N, Grid::linear(0.0, 132.0, 67))
            }
            Figure::Fig4 => {
                fixed.kinds = vec![ParticleParticle, AntiparticleParticle];
                fixed.b = vec![t(1e10), t(1e11), t(1e12)];
                (Axis::P0, Grid::linear(0.0, 10.0, 41))
            }
            Figure::Custom => (Axis::B, Grid::log(t(1e8), t(1e13), 11)),
        };
        Self {
            figure,
            axis,
            grid,
            fixed,
            units,
            quadrature: QuadratureConfig::default(),
            serial: false,
        }
    }

    pub fn validate(&self) -> Result<Vec<f64>, ScanError> {
        self.quadrature.validate()?;
        let values = self.grid.values()?;
        let f = &self.fixed;
        if f.kinds.is_empty() {
            return Err(ScanError::Usage(
                "at least one superposition kind is required".into(),
            ));
        }
        if f.b.is_empty() || f.b.iter().any(|b| !(*b > 0.0 && b.is_finite())) {
            return Err(ScanError::Usage(
                "field values must be positive and finite".into(),
            ));
        }
        if !(f.d_over_inv_beta > 0.0 && f.d_over_inv_beta.is_finite()) {
            return Err(ScanError::Usage(
                "packet width must be positive and finite".into(),
            ));
        }
        if !f.p0_over_beta_hbar.is_finite() {
            return Err(ScanError::Usage("p0 must be finite".into()));
        }
        if f.n % 2 != 0 || f.n > MAX_SCAN_N {
            return Err(ScanError::Usage(format!(
                "n must be even and at most {MAX_SCAN_N}, got {}",
                f.n
            )));
        }
        match self.axis {
            Axis::B if values.iter().any(|b| *b <= 0.0) => {
                return Err(ScanError::Usage(
                    "field grid values must be positive".into(),
                ))
            }
            Axis::N
                if values.iter().any(|n| {
                    n.fract() != 0.0 || *n < 0.0 || *n > f64::from(MAX_SCAN_N) || n % 2.0 != 0.0
                }) =>
            {
                return Err(ScanError::Usage(format!(
                    "n grid values must be even integers in 0..={MAX_SCAN_N}"
                )))
            }
            _ => {}
        }
        if f.strong_field {
            if self.axis == Axis::B {
                return Err(ScanError::Usage(
                    "strong-field scans do not depend on B; scan n or p0".into(),
                ));
            }
            if f.kinds.contains(&SuperpositionKind::Nonrelativistic) {
                return Err(ScanError::Usage(
                    "strong-field scans are relativistic".into(),
                ));
            }
        }
        if f.maximize_p0 {
            if !(f.strong_field && f.kinds == [SuperpositionKind::AntiparticleParticle]) {
                return Err(ScanError::Usage(
                    "--maximize-p0 applies to strong-field antiparticle_particle scans only".into(),
                ));
            }
            if self.axis == Axis::P0 {
                return Err(ScanError::Usage(
                    "--maximize-p0 conflicts with a p0 axis".into(),
                ));
            }
        }
        Ok(values)
    }

    /// Self-describing `key=value` pairs written into the CSV.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let f = &self.fixed;
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x:e}"))
                .collect::<Vec<_>>()
                .join(";")
        };
        let kinds = f
            .kinds
            .iter()
            .map(|k| k.label())
            .collect::<Vec<_>>()
            .join(";");
        let mut m = vec![
            ("figure", self.figure.label().to_owned()),
            ("axis", self.axis.label().to_owned()),
            ("grid", self.grid.to_string()),
            ("units", self.units.label().to_owned()),
            ("kinds", kinds),
            (
                "B",
                if self.axis == Axis::B {
                    "axis".to_owned()
                } else {
                    list(&f.b)
                },
            ),
            ("n", f.n.to_string()),
            (
                "p0_over_beta_hbar",
                if f.maximize_p0 {
                    "maximized".to_owned()
                } else {
                    format!("{:e}", f.p0_over_beta_hbar)
                },
            ),
            ("d_over_inv_beta", format!("{:e}", f.d_over_inv_beta)),
            ("strong_field", f.strong_field.to_string()),
            ("tol", format!("{:e}", self.quadrature.relative_tolerance)),
            (
                "momentum_nodes",
                self.quadrature.momentum_node_count.to_string(),
            ),
            (
                "max_subdivisions",
                self.quadrature.max_subdivisions.to_string(),
            ),
            (
                "radial_cutoff_factor",
                format!("{:e}", self.quadrature.radial_cutoff_factor),
            ),
        ];
        if f.strong_field {
            m.push((
                "note",
                "t_min and displacement at the reference field B".to_owned(),
            ));
        }
        m.into_iter().map(|(k, v)| (k.to_owned(), v)).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Ok,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub axis_value: f64,
    pub t_min: f64,
    pub displacement: f64,
    pub v_bar_over_c: f64,
    pub kind: String,
    pub status: RowStatus,
}

impl Row {
    pub fn is_ok(&self) -> bool {
        self.status == RowStatus::Ok
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<Row>,
}

impl ScanTable {
    pub fn all_failed(&self) -> bool {
        !self.rows.is_empty() && self.rows.iter().all(|r| !r.is_ok())
    }
}

struct Point {
    axis_value: f64,
    b: f64,
    n: u32,
    q: f64,
    kind: SuperpositionKind,
    label: String,
}

fn points(req: &ScanRequest, values: &[f64]) -> Vec<Point> {
    let f = &req.fixed;
    let series: Vec<Option<f64>> = if req.axis == Axis::B {
        vec![None]
    } else {
        f.b.iter().copied().map(Some).collect()
    };
    let tag_b = series.len() > 1;
    let mut out = Vec::new();
    for b in &series {
        for &x in values {
            for &kind in &f.kinds {
                let (b, n, q) = match req.axis {
                    Axis::B => (x, f.n, f.p0_over_beta_hbar),
                    Axis::N => (b.expect("series field"), x as u32, f.p0_over_beta_hbar),
                    Axis::P0 => (b.expect("series field"), f.n, x),
                };
                let label = if tag_b {
                    format!("{}@B={b:e}", kind.label())
                } else {
                    kind.label().to_owned()
                };
                out.push(Point {
                    axis_value: x,
                    b,
                    n,
                    q,
                    kind,
                    label,
                });
            }
        }
    }
    out
}

fn evaluate(req: &ScanRequest, pt: &Point) -> crate::error::Result<SpeedResult> {
    let f = &req.fixed;
    let field = FieldConfig::new(pt.b, req.units.constants())?;
    let p0 = pt.q * field.momentum_scale();
    let packet = PacketSpec::new(p0, f.d_over_inv_beta / field.beta(), field.constants())?;
    let spec = SuperpositionSpec::new(pt.kind, pt.n, packet, field)?;
    if f.strong_field {
        return Ok(match pt.kind {
            SuperpositionKind::AntiparticleParticle => {
                let q = if f.maximize_p0 {
                    optimal_antiparticle_momentum(pt.n)
                } else {
                    pt.q
                };
                let t = qsl_time_strong_field_antiparticle(pt.n, q, &field);
                SpeedResult::new(
                    t,
                    displacement_strong_field_antiparticle(pt.n, q, &field)?,
                    spec,
                )
            }
            _ => {
                let t = qsl_time_strong_field(pt.n, &field);
                SpeedResult::new(
                    t,
                    displacement_strong_field_closed_form(pt.n, &field)?,
                    spec,
                )
            }
        });
    }
    if pt.kind == SuperpositionKind::Nonrelativistic && pt.n == 0 {
        return Ok(SpeedResult {
            scenario: spec,
            ..speed_nonrel(&field)
        });
    }
    speed_rel(&spec, &req.quadrature)
}

fn row_for(req: &ScanRequest, pt: &Point) -> Row {
    match evaluate(req, pt) {
        Ok(r) => Row {
            axis_value: pt.axis_value,
            t_min: r.t_min,
            displacement: r.displacement,
            v_bar_over_c: r.v_bar_over_c,
            kind: pt.label.clone(),
            status: RowStatus::Ok,
        },
        Err(e) => Row {
            axis_value: pt.axis_value,
            t_min: f64::NAN,
            displacement: f64::NAN,
            v_bar_over_c: f64::NAN,
            kind: pt.label.clone(),
            status: RowStatus::Failed(e.to_string()),
        },
    }
}

/// Evaluates every grid point; rows follow grid order whatever the
/// evaluation order, and failures are recorded per row.
pub fn run_scan(req: &ScanRequest) -> Result<ScanTable, ScanError> {
    let values = req.validate()?;
    let pts = points(req, &values);
    let rows = if req.serial {
        pts.iter().map(|p| row_for(req, p)).collect()
    } else {
        pts.par_iter().map(|p| row_for(req, p)).collect()
    };
    Ok(ScanTable {
        metadata: req.metadata(),
        rows,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), ScanError> {
    std::fs::write(path, contents).map_err(|e| ScanError::Io {
        path: path.to_owned(),
        message: e.to_string(),
    })
}

pub fn emit_csv(table: &ScanTable, path: &Path) -> Result<(), ScanError> {
    write(path, &to_csv_string(table))
}

pub fn emit_svg(table: &ScanTable, path: &Path) -> Result<(), ScanError> {
    write(path, &to_svg_string(table)?)
}

pub fn read_csv(path: &Path) -> Result<ScanTable, ScanError> {
    let text = std::fs::read_to_string(path).map_err(|e| ScanError::Io {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    parse_csv(&text)
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_fig1() -> ScanRequest {
        let mut req = ScanRequest::preset(Figure::Fig1, Units::Si);
        req.grid = Grid::log(1e9, 1e12, 4);
        req
    }

    #[test]
    fn fig1_rows_and_crossing() {
        let mut req = ScanRequest::preset(Figure::Fig1, Units::Si);
        req.grid = Grid::Explicit(vec![2.77e10]);
        let table = run_scan(&req).unwrap();
        assert_eq!(table.rows.len(), 2);
        assert_eq!(table.rows[0].kind, "nonrelativistic");
        assert!((table.rows[0].v_bar_over_c - 1.0).abs() < 5e-3);
        assert!(table.rows[1].v_bar_over_c < 0.5);
    }

    #[test]
    fn serial_and_parallel_agree_bytewise() {
        let mut req = small_fig1();
        let a = to_csv_string(&run_scan(&req).unwrap());
        req.serial = true;
        let b = to_csv_string(&run_scan(&req).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn fig2_first_row() {
        let mut req = ScanRequest::preset(Figure::Fig2, Units::Si);
        req.grid = Grid::linear(0.0, 4.0, 3);
        let t = run_scan(&req).unwrap();
        assert!((t.rows[0].v_bar_over_c - 0.2407).abs() < 5e-4);
        assert!(t
            .rows
            .windows(2)
            .all(|w| w[0].v_bar_over_c < w[1].v_bar_over_c));
    }

    #[test]
    fn fig3_maximized_momentum() {
        let mut req = ScanRequest::preset(Figure::Fig3, Units::Si);
        req.grid = Grid::Explicit(vec![132.0]);
        let literal = run_scan(&req).unwrap().rows[0].v_bar_over_c;
        req.fixed.maximize_p0 = true;
        let best = run_scan(&req).unwrap().rows[0].v_bar_over_c;
        assert!(literal < best);
        assert!((best - 0.1347).abs() < 1e-3);
    }

    #[test]
    fn fig4_labels_carry_the_field() {
        let mut req = ScanRequest::preset(Figure::Fig4, Units::Si);
        req.grid = Grid::Explicit(vec![0.0, 1.0]);
        let t = run_scan(&req).unwrap();
        assert_eq!(t.rows.len(), 12);
        assert_eq!(t.rows[1].kind, "antiparticle_particle@B=1e10");
        assert_eq!(t.rows[1].v_bar_over_c, 0.0);
    }

    #[test]
    fn natural_units_reproduce_si_speeds() {
        let mut si = ScanRequest::preset(Figure::Fig1, Units::Si);
        si.grid = Grid::Explicit(vec![1e10]);
        let mut nat = ScanRequest::preset(Figure::Fig1, Units::Natural);
        nat.grid = Grid::Explicit(vec![Units::Natural.field_from_tesla(1e10)]);
        let (a, b) = (run_scan(&si).unwrap(), run_scan(&nat).unwrap());
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert!((x.v_bar_over_c / y.v_bar_over_c - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn invalid_combinations_are_usage_errors() {
        let mut req = ScanRequest::preset(Figure::Custom, Units::Si);
        req.grid = Grid::Explicit(vec![]);
        assert!(matches!(run_scan(&req), Err(ScanError::Usage(_))));
        let mut req = ScanRequest::preset(Figure::Fig2, Units::Si);
        req.grid = Grid::Explicit(vec![1.0]);
        assert!(matches!(run_scan(&req), Err(ScanError::Usage(_))));
        let mut req = ScanRequest::preset(Figure::Fig1, Units::Si);
        req.fixed.maximize_p0 = true;
        assert!(matches!(run_scan(&req), Err(ScanError::Usage(_))));
        let mut req = ScanRequest::preset(Figure::Fig1, Units::Si);
        req.fixed.kinds.clear();
        assert!(run_scan(&req).is_err());
    }

    #[test]
    fn failing_rows_are_recorded() {
        let mut req = ScanRequest::preset(Figure::Custom, Units::Si);
        req.axis = Axis::N;
        req.grid = Grid::Explicit(vec![0.0, 2.0]);
        req.fixed.b = vec![1e12];
        req.quadrature.max_subdivisions = 1;
        let t = run_scan(&req).unwrap();
        assert!(t.all_failed());
        assert!(matches!(&t.rows[0].status, RowStatus::Failed(m) if m.contains("quadrature")));
    }

    #[test]
    fn svg_round_trip_through_csv() {
        let table = run_scan(&small_fig1()).unwrap();
        let svg = to_svg_string(&table).unwrap();
        let reloaded = parse_csv(&to_csv_string(&table)).unwrap();
        assert_eq!(to_svg_string(&reloaded).unwrap(), svg);
        assert!(svg.starts_with("<svg") && svg.contains("v / c"));
        let empty = ScanTable {
            metadata: vec![],
            rows: vec![],
        };
        assert!(to_svg_string(&empty).is_err());
    }
}
