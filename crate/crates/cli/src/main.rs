//! `qsl-scan`: reproduces the figure scans of the quantum-speed-limit
//! library as CSV and SVG files.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qsl_core::qsl::SuperpositionKind;
use qsl_core::scanner::{
    emit_csv, emit_svg, read_csv, run_scan, to_csv_string, Axis, Figure, Grid, ScanError,
    ScanRequest, Units,
};

#[derive(Parser, Debug)]
#[command(
    name = "qsl-scan",
    version,
    about = "Average radial speed scans for an electron in a uniform magnetic field"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// v/c against B for the non-relativistic and particle-particle cases
    Fig1(ScanArgs),
    /// strong-field particle-particle v/c against n
    Fig2(ScanArgs),
    /// strong-field antiparticle-particle v/c against n
    Fig3(ScanArgs),
    /// v/c against p0 for both relativistic cases at three fields
    Fig4(ScanArgs),
    /// a scan over any axis with explicit parameters
    Custom(ScanArgs),
    /// redraw the SVG of a previously written CSV
    Replot {
        /// CSV written by one of the scan commands
        input: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// field values (comma separated); one series each unless B is the axis
    #[arg(long = "B", value_delimiter = ',', allow_negative_numbers = true)]
    b: Option<Vec<f64>>,
    /// lower radial quantum number of the superposition (even)
    #[arg(long)]
    n: Option<u32>,
    /// axial momentum centre in units of beta hbar
    #[arg(long, allow_negative_numbers = true)]
    p0_over_beta_hbar: Option<f64>,
    /// packet width in units of 1/beta
    #[arg(long)]
    d_over_inv_beta: Option<f64>,
    /// scan grid, min:max:count:lin|log or a comma-separated list
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// scan axis for custom scans: B, n or p0
    #[arg(long)]
    axis: Option<String>,
    /// superposition kinds (comma separated): nonrelativistic, particle_particle, antiparticle_particle
    #[arg(long, value_delimiter = ',')]
    kind: Option<Vec<String>>,
    /// use the B -> infinity closed forms (custom scans)
    #[arg(long)]
    strong_field: bool,
    /// evaluate strong-field antiparticle rows at their speed-maximizing p0
    #[arg(long)]
    maximize_p0: bool,
    /// write the table here instead of standard output
    #[arg(long)]
    csv: Option<PathBuf>,
    /// also draw the table as SVG
    #[arg(long)]
    svg: Option<PathBuf>,
    /// relative quadrature tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Gauss-Hermite nodes for the momentum average
    #[arg(long)]
    momentum_nodes: Option<usize>,
    /// cap on adaptive radial subdivisions
    #[arg(long)]
    max_subdivisions: Option<usize>,
    /// si or natural (e = m0 = hbar = c = 1)
    #[arg(long, default_value = "si")]
    units: String,
    /// evaluate rows on one thread
    #[arg(long)]
    serial: bool,
}

fn build_request(figure: Figure, args: &ScanArgs) -> Result<ScanRequest, ScanError> {
    let units: Units = args.units.parse()?;
    let mut req = ScanRequest::preset(figure, units);
    if let Some(axis) = &args.axis {
        if figure != Figure::Custom {
            return Err(ScanError::Usage(format!(
                "--axis only applies to custom scans; {figure} fixes its axis"
            )));
        }
        req.axis = axis.parse::<Axis>()?;
        if args.grid.is_none() {
            return Err(ScanError::Usage("a custom axis needs --grid".into()));
        }
    }
    if args.strong_field {
        if figure != Figure::Custom {
            return Err(ScanError::Usage(
                "--strong-field only applies to custom scans".into(),
            ));
        }
        req.fixed.strong_field = true;
    }
    if let Some(grid) = &args.grid {
        req.grid = grid.parse::<Grid>()?;
    }
    if let Some(b) = &args.b {
        req.fixed.b = b.clone();
    }
    if let Some(n) = args.n {
        req.fixed.n = n;
    }
    if let Some(p0) = args.p0_over_beta_hbar {
        req.fixed.p0_over_beta_hbar = p0;
    }
    if let Some(d) = args.d_over_inv_beta {
        req.fixed.d_over_inv_beta = d;
    }
    if let Some(kinds) = &args.kind {
        req.fixed.kinds = kinds
            .iter()
            .map(|k| k.parse::<SuperpositionKind>())
            .collect::<Result<Vec<_>, _>>()?;
    }
    if let Some(tol) = args.tol {
        req.quadrature.relative_tolerance = tol;
    }
    if let Some(nodes) = args.momentum_nodes {
        req.quadrature.momentum_node_count = nodes;
    }
    if let Some(m) = args.max_subdivisions {
        req.quadrature.max_subdivisions = m;
    }
    req.fixed.maximize_p0 = args.maximize_p0;
    req.serial = args.serial;
    Ok(req)
}

fn scan(figure: Figure, args: &ScanArgs) -> Result<ExitCode, ScanError> {
    let req = build_request(figure, args)?;
    let table = run_scan(&req)?;
    match &args.csv {
        Some(path) => emit_csv(&table, path)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(to_csv_string(&table).as_bytes())
                .map_err(|e| ScanError::Io {
                    path: "<stdout>".into(),
                    message: e.to_string(),
                })?;
        }
    }
    let failed = table.rows.iter().filter(|r| !r.is_ok()).count();
    if let Some(path) = &args.svg {
        if failed < table.rows.len() {
            emit_svg(&table, path)?;
        }
    }
    if failed > 0 {
        eprintln!("qsl-scan: {failed} of {} rows failed", table.rows.len());
    }
    Ok(if table.all_failed() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Fig1(a) => scan(Figure::Fig1, a),
        Command::Fig2(a) => scan(Figure::Fig2, a),
        Command::Fig3(a) => scan(Figure::Fig3, a),
        Command::Fig4(a) => scan(Figure::Fig4, a),
        Command::Custom(a) => scan(Figure::Custom, a),
        Command::Replot { input, svg } => read_csv(input)
            .and_then(|t| emit_svg(&t, svg))
            .map(|()| ExitCode::SUCCESS),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qsl-scan: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
