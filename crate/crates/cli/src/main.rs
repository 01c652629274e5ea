use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use octonion_kernels::monogenic::{bergman_kernel, cauchy_kernel, szego_kernel, BergmanBallVariant, Domain};
use octonion_kernels::octonion::IMAGINARY_TABLE;
use octonion_kernels::slice_kernels::{slice_bergman, slice_cauchy_kernel, slice_szego};
use octonion_kernels::verify::{run_suite, Suite, VerificationReport, VerifyConfig};
use octonion_kernels::{Error, Octonion};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "octonion-verify", version, about = "Verify and evaluate octonionic reproducing kernels")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and stream one report per check.
    Verify(VerifyArgs),
    /// Evaluate a kernel at a pair of points.
    Eval(EvalArgs),
    /// Print the signed multiplication table of the imaginary units.
    Table(OutputArgs),
}

#[derive(Args, Clone, Copy)]
struct OutputArgs {
    /// JSON output (the default for `verify`).
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// CSV output.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct KernelArgs {
    /// Strip width.
    #[arg(long = "d", default_value_t = 1.0)]
    width: f64,
    /// Terms on each side of the symmetric strip sums.
    #[arg(long = "N", default_value_t = 50)]
    terms: usize,
    /// Unit-ball Bergman kernel factor.
    #[arg(long, value_enum, default_value_t = Variant::Scalar)]
    variant: Variant,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Monte Carlo samples per estimate.
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
    /// Degree of the random power series.
    #[arg(long, default_value_t = 32)]
    trunc: usize,
    /// Tolerance of the deterministic checks.
    #[arg(long)]
    tol: Option<f64>,
    /// Circle quadrature nodes of the slice products.
    #[arg(long = "circle-nodes")]
    circle_nodes: Option<usize>,
    /// Radial Gauss-Legendre order of the slice disk product.
    #[arg(long = "disk-order")]
    disk_order: Option<usize>,
    #[command(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long, value_enum, default_value_t = Setting::Monogenic)]
    setting: Setting,
    #[arg(long, value_enum, default_value_t = DomainArg::Ball)]
    domain: DomainArg,
    /// First argument, `c0,...,c7`.
    #[arg(long, allow_hyphen_values = true)]
    x: Octonion,
    /// Second argument, `c0,...,c7`.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0,0,0,0,0,0,0")]
    y: Octonion,
    #[command(flatten)]
    kernel: KernelArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    Scalar,
    Octonion,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    /// Cauchy kernel; the domain is ignored.
    Cauchy,
    #[value(alias = "szegő")]
    Szego,
    Bergman,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Setting {
    Monogenic,
    Slice,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum DomainArg {
    Ball,
    Halfspace,
    Strip,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl KernelArgs {
    fn variant(&self) -> BergmanBallVariant {
        match self.variant {
            Variant::Scalar => BergmanBallVariant::ScalarFactor,
            Variant::Octonion => BergmanBallVariant::OctonionFactor,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify(args),
        Command::Eval(args) => eval(args),
        Command::Table(out) => table(out),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

fn verify(args: VerifyArgs) -> Result<u8, Failure> {
    let cfg = VerifyConfig {
        seed: args.seed,
        samples: args.samples,
        trunc: args.trunc,
        tol: args.tol,
        strip_width: args.kernel.width,
        strip_terms: args.kernel.terms,
        variant: args.kernel.variant(),
        circle_nodes: args.circle_nodes,
        disk_order: args.disk_order,
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;

    let stdout = io::stdout().lock();
    let mut sink: Box<dyn ReportSink> = if args.output.csv {
        Box::new(CsvSink(csv::Writer::from_writer(stdout)))
    } else {
        Box::new(JsonSink(stdout))
    };
    let mut failed = None;
    let summary = run_suite(args.suite, &cfg, &mut |report| {
        if let Err(e) = sink.write(report) {
            failed.get_or_insert(e);
        }
    })
    .map_err(|e| Failure::Usage(e.to_string()))?;
    if let Some(e) = failed {
        return Err(e);
    }
    sink.finish()?;
    eprintln!("{} checks, {} failed", summary.checks, summary.failures);
    Ok(summary.exit_code() as u8)
}

trait ReportSink {
    fn write(&mut self, report: &VerificationReport) -> Result<(), Failure>;
    fn finish(&mut self) -> Result<(), Failure>;
}

struct JsonSink<W: Write>(W);

impl<W: Write> ReportSink for JsonSink<W> {
    fn write(&mut self, report: &VerificationReport) -> Result<(), Failure> {
        writeln!(self.0, "{}", report.to_json_line())?;
        // partial runs stay readable
        self.0.flush()?;
        Ok(())
    }

    fn finish(&mut self) -> Result<(), Failure> {
        Ok(self.0.flush()?)
    }
}

struct CsvSink<W: Write>(csv::Writer<W>);

impl<W: Write> ReportSink for CsvSink<W> {
    fn write(&mut self, report: &VerificationReport) -> Result<(), Failure> {
        self.0.serialize(report)?;
        self.0.flush()?;
        Ok(())
    }

    fn finish(&mut self) -> Result<(), Failure> {
        Ok(self.0.flush()?)
    }
}

fn evaluate(args: &EvalArgs) -> octonion_kernels::Result<Octonion> {
    let dom = match args.domain {
        DomainArg::Ball => Domain::UnitBall,
        DomainArg::Halfspace => Domain::RightHalfSpace,
        DomainArg::Strip => Domain::strip(args.kernel.width, args.kernel.terms)?,
    };
    let (x, y) = (args.x, args.y);
    match (args.setting, args.family) {
        (Setting::Monogenic, Family::Cauchy) => cauchy_kernel(x - y),
        (Setting::Monogenic, Family::Szego) => szego_kernel(&dom, x, y),
        (Setting::Monogenic, Family::Bergman) => bergman_kernel(&dom, x, y, args.kernel.variant()),
        (Setting::Slice, Family::Cauchy) => slice_cauchy_kernel(x, y),
        (Setting::Slice, Family::Szego) => slice_szego(&dom, x, y),
        (Setting::Slice, Family::Bergman) => slice_bergman(&dom, x, y),
    }
}

#[derive(Serialize)]
struct EvalRecord {
    family: Family,
    setting: Setting,
    domain: DomainArg,
    x: String,
    y: String,
    value: [f64; 8],
}

fn eval(args: EvalArgs) -> Result<u8, Failure> {
    let value = evaluate(&args).map_err(|e| match e {
        Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
        _ => Failure::Run(e.to_string()),
    })?;
    let mut out = io::stdout().lock();
    if args.output.csv {
        let mut w = csv::Writer::from_writer(out);
        let mut row = vec![args.x.to_string(), args.y.to_string()];
        row.extend(value.0.iter().map(|c| (c + 0.0).to_string()));
        w.write_record(&row)?;
        w.flush()?;
    } else if args.output.json {
        let record = EvalRecord {
            family: args.family,
            setting: args.setting,
            domain: args.domain,
            x: args.x.to_string(),
            y: args.y.to_string(),
            value: value.0,
        };
        writeln!(out, "{}", serde_json::to_string(&record).expect("record serializes"))?;
    } else {
        writeln!(out, "{value}")?;
    }
    Ok(0)
}

/// `e_i e_j` as `e7`, `-e7`, `1` or `-1`.
fn table_entry(i: usize, j: usize) -> String {
    let (s, k) = IMAGINARY_TABLE[i][j];
    let sign = if s < 0 { "-" } else { "" };
    if k == 0 {
        format!("{sign}1")
    } else {
        format!("{sign}e{k}")
    }
}

fn table(out: OutputArgs) -> Result<u8, Failure> {
    let labels: Vec<String> = (1..8).map(|i| format!("e{i}")).collect();
    let rows: Vec<Vec<String>> = (0..7).map(|i| (0..7).map(|j| table_entry(i, j)).collect()).collect();
    let mut stdout = io::stdout().lock();
    if out.csv {
        let mut w = csv::Writer::from_writer(stdout);
        w.write_record(std::iter::once("").chain(labels.iter().map(String::as_str)))?;
        for (label, row) in labels.iter().zip(&rows) {
            w.write_record(std::iter::once(label).chain(row))?;
        }
        w.flush()?;
    } else if out.json {
        let map: serde_json::Map<String, serde_json::Value> = labels
            .iter()
            .zip(&rows)
            .map(|(label, row)| {
                let cols = labels.iter().cloned().zip(row.iter().cloned().map(serde_json::Value::from));
                (label.clone(), serde_json::Value::Object(cols.collect()))
            })
            .collect();
        writeln!(stdout, "{}", serde_json::Value::Object(map))?;
    } else {
        write!(stdout, "{:>4}", "")?;
        for l in &labels {
            write!(stdout, "{l:>5}")?;
        }
        writeln!(stdout)?;
        for (label, row) in labels.iter().zip(&rows) {
            write!(stdout, "{label:>4}")?;
            for entry in row {
                write!(stdout, "{entry:>5}")?;
            }
            writeln!(stdout)?;
        }
    }
    Ok(0)
}
