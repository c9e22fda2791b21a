mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mulcube::arith::parse_rational;
use mulcube::automata::{trace_words, MulRule, RationalMultiplier, DEFAULT_TRACE_LIMIT};
use mulcube::config::{ConfigRecord, DigitConfig};
use mulcube::conjugacy::{conj, fact};
use mulcube::cube::TileSet;
use mulcube::error::Error;
use mulcube::lattice::Point;
use mulcube::macro_micro::{derived_prebasis, macrotile, microtile, MacroMatrix};
use mulcube::mixed_base::Prebasis;
use mulcube::tessellation::{path_integral, LatticePath, Patch, Tessellation};

use render::RenderSpec;

#[derive(Parser)]
#[command(
    name = "mulcube",
    version,
    about = "Multiplication cubes, tessellations and automata"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Draw the full tile set of a prebasis.
    Tiles {
        #[arg(long)]
        prebasis: Prebasis,
        #[command(flatten)]
        out: Output,
    },
    /// Extract a box of a tessellation.
    Patch {
        #[command(flatten)]
        source: Source,
        #[arg(long = "box", allow_hyphen_values = true)]
        bbox: BoxSpec,
        #[command(flatten)]
        out: Output,
    },
    /// Check a patch file for face mismatches.
    Verify { patch: PathBuf },
    /// Integrate a patch along a path.
    Integrate {
        patch: PathBuf,
        path: PathBuf,
        #[arg(long)]
        expect_zero: bool,
    },
    /// Macrotile a tessellation and extract a box of the result.
    Macro {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        matrix: String,
        #[arg(long = "box", allow_hyphen_values = true)]
        bbox: BoxSpec,
        #[command(flatten)]
        out: Output,
    },
    /// Microtile a tessellation over the derived prebasis of `--prebasis`
    /// and `--matrix`.
    Micro {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        matrix: String,
        #[arg(long = "box", allow_hyphen_values = true)]
        bbox: BoxSpec,
        #[command(flatten)]
        out: Output,
    },
    /// Run a multiplication automaton and print its space-time table.
    CaRun {
        #[arg(long)]
        rule: RationalMultiplier,
        #[arg(long, conflicts_with = "rational")]
        config: Option<PathBuf>,
        #[arg(long)]
        rational: Option<String>,
        #[arg(long)]
        steps: usize,
        /// Digit indices shown, as "lo..hi".
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Re-encode a configuration in another base.
    Convert {
        #[arg(long, conflicts_with = "rational")]
        config: Option<PathBuf>,
        #[arg(long, requires = "base")]
        rational: Option<String>,
        #[arg(long)]
        base: Option<u64>,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the trace words of a one-digit rule.
    Trace {
        /// "p@N"
        #[arg(long)]
        rule: String,
        #[arg(long)]
        width: usize,
        #[arg(long)]
        horizon: usize,
        #[arg(long, default_value_t = DEFAULT_TRACE_LIMIT)]
        limit: u64,
    },
}

#[derive(Args)]
struct Source {
    #[arg(long)]
    prebasis: Prebasis,
    #[arg(
        long,
        conflicts_with = "diagonal",
        required_unless_present = "diagonal"
    )]
    rational: Option<String>,
    /// Configuration file for the diagonal.
    #[arg(long)]
    diagonal: Option<PathBuf>,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 48)]
    cell: i64,
    #[arg(long)]
    no_edge_labels: bool,
    #[arg(long)]
    no_origin: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Svg,
    Ascii,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Conj,
    Fact,
}

/// Inclusive ranges, one per axis: "x0..x1,y0..y1".
#[derive(Clone, Debug)]
struct BoxSpec {
    lo: Point,
    hi: Point,
}

impl std::str::FromStr for BoxSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let (lo, hi): (Vec<i64>, Vec<i64>) = s
            .split(',')
            .map(parse_range)
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .unzip();
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Parse(format!("degenerate box {s:?}")));
        }
        Ok(BoxSpec {
            lo: Point(lo),
            hi: Point(hi),
        })
    }
}

fn parse_range(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Parse(format!("expected \"a..b\", got {s:?}"));
    let (a, b) = s.trim().split_once("..").ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Failure with its exit code: 1 for a semantic failure, 2 for bad input.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(2, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure(2, format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(2, format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(2, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_config(path: &Path) -> Result<DigitConfig, Failure> {
    let rec: ConfigRecord = read_json(path)?;
    Ok(DigitConfig::try_from(rec)?)
}

fn load_matrix(s: &str) -> Result<MacroMatrix, Failure> {
    let p = Path::new(s);
    if p.is_file() {
        return read_json(p);
    }
    Ok(s.parse()?)
}

impl Source {
    fn diagonal_or_real(&self, base: u64) -> Result<DigitConfig, Failure> {
        match (&self.rational, &self.diagonal) {
            (Some(r), _) => Ok(DigitConfig::from_real(&parse_rational(r)?, base)?),
            (None, Some(path)) => read_config(path),
            (None, None) => Err(Failure(
                2,
                "one of --rational or --diagonal is required".into(),
            )),
        }
    }

    fn tessellation(&self, prebasis: &Prebasis) -> Result<Tessellation, Failure> {
        let x = self.diagonal_or_real(prebasis.product()?)?;
        Ok(Tessellation::new(prebasis.clone(), x)?)
    }
}

impl Output {
    fn spec(&self) -> Result<RenderSpec, Failure> {
        if self.cell <= 0 {
            return Err(Failure(
                2,
                format!("cell size must be positive, got {}", self.cell),
            ));
        }
        Ok(RenderSpec {
            cell: self.cell,
            edge_labels: !self.no_edge_labels,
            origin: !self.no_origin,
        })
    }

    fn patch(&self, patch: &Patch) -> CmdResult {
        let text = match self.format {
            Format::Json => to_json(patch),
            Format::Ascii => render::patch_ascii(patch)?,
            Format::Svg => render::patch_svg(patch, &self.spec()?)?,
        };
        emit(self.out.as_deref(), &text)?;
        Ok(0)
    }
}

fn check_box(b: &BoxSpec, d: usize) -> Result<(), Failure> {
    if b.lo.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            actual: b.lo.dim(),
        }
        .into());
    }
    Ok(())
}

fn run(cmd: Cmd) -> CmdResult {
    match cmd {
        Cmd::Tiles { prebasis, out } => {
            let tiles = TileSet::new(&prebasis)?;
            let text = match out.format {
                Format::Json => to_json(&tiles.to_record()),
                Format::Ascii => render::tiles_ascii(tiles.cubes())?,
                Format::Svg => render::tiles_svg(tiles.cubes(), &out.spec()?)?,
            };
            emit(out.out.as_deref(), &text)?;
            Ok(0)
        }
        Cmd::Patch { source, bbox, out } => {
            let f = source.tessellation(&source.prebasis)?;
            check_box(&bbox, f.dim())?;
            out.patch(&f.extract_patch(&bbox.lo, &bbox.hi)?)
        }
        Cmd::Verify { patch } => {
            let patch: Patch = read_json(&patch)?;
            let report = patch.validity();
            if report.valid {
                println!("valid ({} cells)", patch.len());
                return Ok(0);
            }
            println!("invalid: {} violations", report.violations.len());
            for (z, axis) in &report.violations {
                println!("  {z} axis {axis}");
            }
            Ok(1)
        }
        Cmd::Integrate {
            patch,
            path,
            expect_zero,
        } => {
            let patch: Patch = read_json(&patch)?;
            let path: LatticePath = read_json(&path)?;
            let value = path_integral(&patch, &path)?;
            println!("{value}");
            Ok(if expect_zero && *value.numer() != 0.into() {
                1
            } else {
                0
            })
        }
        Cmd::Macro {
            source,
            matrix,
            bbox,
            out,
        } => {
            let a = load_matrix(&matrix)?;
            let f = source.tessellation(&source.prebasis)?;
            let g = macrotile(&f, &a)?;
            check_box(&bbox, g.dim())?;
            out.patch(&g.extract_patch(&bbox.lo, &bbox.hi)?)
        }
        Cmd::Micro {
            source,
            matrix,
            bbox,
            out,
        } => {
            let a = load_matrix(&matrix)?;
            let big = derived_prebasis(&source.prebasis, &a)?;
            let g = source.tessellation(&big)?;
            let f = microtile(&g, &a, &source.prebasis)?;
            check_box(&bbox, f.dim())?;
            out.patch(&f.extract_patch(&bbox.lo, &bbox.hi)?)
        }
        Cmd::CaRun {
            rule,
            config,
            rational,
            steps,
            window,
            out,
        } => {
            let x0 = match (config, rational) {
                (Some(p), _) => read_config(&p)?,
                (None, Some(r)) => DigitConfig::from_real(&parse_rational(&r)?, rule.base())?,
                (None, None) => {
                    return Err(Failure(
                        2,
                        "one of --config or --rational is required".into(),
                    ))
                }
            };
            if x0.base() != rule.base() {
                return Err(Error::BaseMismatch {
                    expected: rule.base(),
                    actual: x0.base(),
                }
                .into());
            }
            let mut rows = vec![x0];
            for _ in 0..steps {
                let next = rule.apply(rows.last().expect("nonempty"))?;
                rows.push(next);
            }
            let text = match out.format {
                Format::Json => {
                    let recs: Vec<ConfigRecord> =
                        rows.into_iter().map(ConfigRecord::from).collect();
                    to_json(&recs)
                }
                fmt => {
                    let (lo, hi) = match window {
                        Some(w) => parse_range(&w)?,
                        None => default_window(&rows),
                    };
                    if fmt == Format::Ascii {
                        render::spacetime_ascii(&rows, lo, hi)
                    } else {
                        render::spacetime_svg(&rows, lo, hi, &out.spec()?)
                    }
                }
            };
            emit(out.out.as_deref(), &text)?;
            Ok(0)
        }
        Cmd::Convert {
            config,
            rational,
            base,
            to,
            mode,
            out,
        } => {
            let x = match (config, rational, base) {
                (Some(p), _, _) => read_config(&p)?,
                (None, Some(r), Some(b)) => DigitConfig::from_real(&parse_rational(&r)?, b)?,
                _ => {
                    return Err(Failure(
                        2,
                        "need --config, or --rational with --base".into(),
                    ))
                }
            };
            let y = match mode {
                Mode::Conj => conj(&x, to)?,
                Mode::Fact => fact(&x, to)?,
            };
            emit(out.as_deref(), &to_json(&ConfigRecord::from(y)))?;
            Ok(0)
        }
        Cmd::Trace {
            rule,
            width,
            horizon,
            limit,
        } => {
            let (p, n) = rule
                .split_once('@')
                .ok_or_else(|| Error::Parse(format!("expected \"p@N\", got {rule:?}")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("{s:?} in rule: {e}")))
            };
            let rule = MulRule::new(parse(p)?, parse(n)?)?;
            let mut text = String::new();
            for word in trace_words(&rule, width, horizon, limit)? {
                let rows: Vec<String> = word
                    .iter()
                    .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                text.push_str(&rows.join(" "));
                text.push('\n');
            }
            emit(None, &text)?;
            Ok(0)
        }
    }
}

/// Every digit that differs from the tail of some row, plus one period.
fn default_window(rows: &[DigitConfig]) -> (i64, i64) {
    use mulcube::config::Tail;
    let lo = rows
        .iter()
        .map(DigitConfig::start)
        .min()
        .unwrap_or(0)
        .min(0);
    let hi = rows
        .iter()
        .map(|x| match x.tail() {
            Tail::Zeros => x.tail_start() - 1,
            Tail::Periodic(w) => x.tail_start() + w.len() as i64 - 1,
        })
        .max()
        .unwrap_or(0)
        .max(lo);
    (lo, hi)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
