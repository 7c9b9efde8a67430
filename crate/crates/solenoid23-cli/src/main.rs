//! Command-line front end: every library operation behind a subcommand,
//! with JSON/CSV reports and SVG figures.
//!
//! Exit codes: 0 success, 2 bad arguments, 3 precondition violation,
//! 4 resource cap exhausted.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use solenoid23::partition::{generator_profile, markov_check, orbit_join, orbit_report};
use solenoid23::render::{render_boxset, render_cone_gallery, render_partition, Projection, RenderSpec};
use solenoid23::solenoid::wilson_backward;
use solenoid23::{
    classify, entropy, height, reduce_to_fundamental, transition_matrix, xi, zeta_series,
    AdeleTriple, Error, Rational, Region, SolenoidPoint, WilsonTrace,
};

#[derive(Parser)]
#[command(name = "sol23", version, about = "Exact computations on the x2,x3 solenoid")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Output format (data commands: json or csv; figures: svg)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Atom/word cap for refinement-style computations
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProjectionArg {
    Isometric,
    ThreeFaces,
}

impl From<ProjectionArg> for Projection {
    fn from(p: ProjectionArg) -> Projection {
        match p {
            ProjectionArg::Isometric => Projection::Isometric,
            ProjectionArg::ThreeFaces => Projection::ThreeFaces,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a rational triple to its fundamental-domain representative
    Reduce {
        /// Triple "real,two,three" of rationals n/d
        #[arg(long)]
        point: String,
    },
    /// Add two points of the solenoid
    Add {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Apply the automorphism 2^a 3^b to a point
    Act {
        #[arg(long)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Bounded-search quotient distance between two points
    Distance {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value_t = 3)]
        denom_bound: u32,
        #[arg(long, default_value_t = 3)]
        height_bound: u32,
    },
    /// Image of a box set under the automorphism
    Image {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// Use atom J of the interval partition as the input set
        #[arg(long, conflicts_with = "input")]
        atom: Option<usize>,
        /// Read the input set from a box-set JSON file
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// The interval partition for a direction
    Partition {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Orbit refinement report (join of iterate images to a depth)
    Refine {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long)]
        depth: u32,
        /// Include the refined atoms in the JSON output
        #[arg(long)]
        emit_atoms: bool,
    },
    /// Finite-depth Markov condition and transition matrix
    MarkovCheck {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long)]
        depth: u32,
    },
    /// Generating-trend profile over increasing depths
    GeneratorCheck {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long)]
        depth: u32,
    },
    /// Stability signature, cone and expansiveness of a direction
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Naive height and entropy of a direction
    Entropy {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Periodic-point counts and zeta series
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long)]
        order: u32,
    },
    /// Projective-limit coordinates: forward from a point, or backward
    /// from a list of levels
    Wilson {
        #[arg(long, conflicts_with = "levels", requires = "depth")]
        point: Option<String>,
        #[arg(long)]
        depth: Option<u32>,
        /// Comma-separated circle coordinates "z0,z1,..."
        #[arg(long)]
        levels: Option<String>,
    },
    /// Render a box set or partition as an SVG cuboid figure
    Render {
        #[arg(long, allow_hyphen_values = true)]
        a: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<i64>,
        /// Read the set from a box-set JSON file instead
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        /// Restrict to atom J of the partition
        #[arg(long)]
        atom: Option<usize>,
        /// Apply the (a, b) automorphism before rendering
        #[arg(long)]
        map: bool,
        /// Highlight one atom and dim the others
        #[arg(long)]
        shade: Option<usize>,
        #[arg(long, value_enum, default_value_t = ProjectionArg::Isometric)]
        projection: ProjectionArg,
        #[arg(long, default_value_t = 4)]
        depth2: u32,
        #[arg(long, default_value_t = 3)]
        depth3: u32,
        #[arg(long, default_value_t = 420)]
        width: u32,
        #[arg(long, default_value_t = 360)]
        height: u32,
    },
    /// Figure-seven style gallery of expansive-cone shapes
    Gallery {
        /// Semicolon-separated directions "a,b;a,b;..."
        #[arg(long, default_value = "")]
        directions: String,
        #[arg(long, value_enum, default_value_t = ProjectionArg::Isometric)]
        projection: ProjectionArg,
        #[arg(long, default_value_t = 4)]
        depth2: u32,
        #[arg(long, default_value_t = 3)]
        depth3: u32,
        #[arg(long, default_value_t = 300)]
        width: u32,
        #[arg(long, default_value_t = 260)]
        height: u32,
    },
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(e) => match e {
                Error::ParseRational { .. }
                | Error::ZeroDenominator
                | Error::JsonNumberOverflow => 2,
                Error::ResourceCap { .. } => 4,
                _ => 3,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim()).map_err(CliError::Lib)
}

fn parse_triple(s: &str) -> Result<AdeleTriple, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "expected \"real,two,three\", got {s:?}"
        )));
    }
    Ok(AdeleTriple::new(
        parse_rational(parts[0])?,
        parse_rational(parts[1])?,
        parse_rational(parts[2])?,
    ))
}

fn parse_point(s: &str) -> Result<SolenoidPoint, CliError> {
    let t = parse_triple(s)?;
    SolenoidPoint::new(t.real, t.two, t.three).map_err(CliError::Lib)
}

fn parse_directions(s: &str) -> Result<Vec<(i64, i64)>, CliError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|pair| {
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| CliError::Usage(format!("bad direction {pair:?}")))?;
            let a = a.trim().parse::<i64>();
            let b = b.trim().parse::<i64>();
            match (a, b) {
                (Ok(a), Ok(b)) => Ok((a, b)),
                _ => Err(CliError::Usage(format!("bad direction {pair:?}"))),
            }
        })
        .collect()
}

fn read_region(path: &PathBuf) -> Result<Region, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse box set: {e}")))
}

/// Refinement-style commands refuse directions whose alphabet already
/// exceeds the cap.
fn guard_height(a: i64, b: i64, cap: u64) -> Result<(), CliError> {
    let h = height(a, b)?;
    if h > num_bigint_from(cap) {
        return Err(CliError::Lib(Error::ResourceCap {
            cap,
            during: "building the interval partition",
        }));
    }
    Ok(())
}

fn num_bigint_from(v: u64) -> num_bigint::BigUint {
    num_bigint::BigUint::from(v)
}

struct Rendered {
    text: String,
}

fn run(cli: &Cli) -> Result<Rendered, CliError> {
    let format = cli.format;
    let data_format = |default: Format| format.unwrap_or(default);
    let json_out = |v: serde_json::Value| -> Rendered {
        Rendered {
            text: format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable")),
        }
    };
    let require_json = |name: &str| -> Result<(), CliError> {
        match data_format(Format::Json) {
            Format::Json => Ok(()),
            other => Err(CliError::Usage(format!(
                "{name} only supports --format json, got {other:?}"
            ))),
        }
    };

    match &cli.command {
        Command::Reduce { point } => {
            require_json("reduce")?;
            let triple = parse_triple(point)?;
            let (p, translate) = reduce_to_fundamental(&triple);
            Ok(json_out(json!({ "point": p, "translate": translate })))
        }
        Command::Add { lhs, rhs } => {
            require_json("add")?;
            let x = parse_point(lhs)?;
            let y = parse_point(rhs)?;
            Ok(json_out(json!({ "sum": x.add(&y) })))
        }
        Command::Act { point, a, b } => {
            require_json("act")?;
            let x = parse_point(point)?;
            Ok(json_out(json!({ "image": x.act(*a, *b) })))
        }
        Command::Distance { lhs, rhs, denom_bound, height_bound } => {
            require_json("distance")?;
            let x = parse_point(lhs)?;
            let y = parse_point(rhs)?;
            let d = x.distance(&y, *denom_bound, *height_bound);
            Ok(json_out(json!({
                "distance": d,
                "denom_bound": denom_bound,
                "height_bound": height_bound,
                "note": "upper bound from a bounded search over diagonal translates",
            })))
        }
        Command::Image { a, b, atom, input } => {
            require_json("image")?;
            guard_height(*a, *b, cli.cap)?;
            let set = match (atom, input) {
                (Some(_), Some(_)) => unreachable!("clap conflicts_with"),
                (None, Some(path)) => read_region(path)?,
                (Some(j), None) => {
                    let base = xi(*a, *b)?;
                    base.atoms()
                        .get(*j)
                        .cloned()
                        .ok_or(Error::IndexOutOfRange {
                            index: *j as i64,
                            size: base.len() as u64,
                        })?
                }
                (None, None) => {
                    return Err(CliError::Usage(
                        "image needs --atom J or --in FILE".to_string(),
                    ))
                }
            };
            Ok(json_out(serde_json::to_value(set.image(*a, *b)).expect("serializable")))
        }
        Command::Partition { a, b } => {
            require_json("partition")?;
            guard_height(*a, *b, cli.cap)?;
            let p = xi(*a, *b)?;
            Ok(json_out(json!({ "a": a, "b": b, "atoms": p.atoms() })))
        }
        Command::Refine { a, b, depth, emit_atoms } => {
            if *depth == 0 {
                return Err(CliError::Lib(Error::BadDepth { min: 1, got: 0 }));
            }
            guard_height(*a, *b, cli.cap)?;
            let (j_min, j_max) = (-i64::from(*depth), i64::from(*depth));
            if *emit_atoms {
                require_json("refine --emit-atoms")?;
                let (p, report) = orbit_join(*a, *b, j_min, j_max, cli.cap)?;
                return Ok(json_out(json!({
                    "a": a, "b": b, "report": report, "atoms": p.atoms(),
                })));
            }
            let report = orbit_report(*a, *b, j_min, j_max, cli.cap)?;
            match data_format(Format::Json) {
                Format::Json => Ok(json_out(json!({ "a": a, "b": b, "report": report }))),
                Format::Csv => Ok(Rendered {
                    text: format!(
                        "depth,atom_count,real_diam_max,two_exp_min,three_exp_min,all_rectangles\n\
                         {},{},{},{},{},{}\n",
                        report.depth,
                        report.atom_count,
                        report.real_diam_max,
                        report.two_exp_min,
                        report.three_exp_min,
                        report.all_rectangles
                    ),
                }),
                Format::Svg => Err(CliError::Usage("refine does not emit svg".to_string())),
            }
        }
        Command::MarkovCheck { a, b, depth } => {
            guard_height(*a, *b, cli.cap)?;
            let report = markov_check(*a, *b, *depth, cli.cap)?;
            let matrix = transition_matrix(*a, *b)?;
            match data_format(Format::Json) {
                Format::Json => Ok(json_out(json!({
                    "markov": report,
                    "transition_matrix": matrix,
                }))),
                Format::Csv => Ok(Rendered { text: matrix.to_csv() }),
                Format::Svg => Err(CliError::Usage("markov-check does not emit svg".to_string())),
            }
        }
        Command::GeneratorCheck { a, b, depth } => {
            guard_height(*a, *b, cli.cap)?;
            let profile = generator_profile(*a, *b, *depth, cli.cap)?;
            match data_format(Format::Json) {
                Format::Json => {
                    Ok(json_out(serde_json::to_value(&profile).expect("serializable")))
                }
                Format::Csv => {
                    let mut text = String::from(
                        "depth,atom_count,real_diam_max,two_exp_min,three_exp_min,all_rectangles\n",
                    );
                    for r in &profile.reports {
                        text.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            r.depth,
                            r.atom_count,
                            r.real_diam_max,
                            r.two_exp_min,
                            r.three_exp_min,
                            r.all_rectangles
                        ));
                    }
                    Ok(Rendered { text })
                }
                Format::Svg => {
                    Err(CliError::Usage("generator-check does not emit svg".to_string()))
                }
            }
        }
        Command::Classify { a, b } => {
            require_json("classify")?;
            Ok(json_out(serde_json::to_value(classify(*a, *b)).expect("serializable")))
        }
        Command::Entropy { a, b } => {
            require_json("entropy")?;
            let e = entropy(*a, *b)?;
            Ok(json_out(json!({
                "a": a, "b": b, "height": e.base, "entropy": e.to_string(),
            })))
        }
        Command::Zeta { a, b, order } => {
            let z = zeta_series(*a, *b, *order)?;
            match data_format(Format::Json) {
                Format::Json => Ok(json_out(serde_json::to_value(&z).expect("serializable"))),
                Format::Csv => {
                    let mut text =
                        String::from("n,count,series_coeff,cover_coeff,closed_form_coeff\n");
                    for n in 0..z.series.len() {
                        let count = if n == 0 {
                            String::new()
                        } else {
                            z.counts[n - 1].to_string()
                        };
                        let cf = z
                            .closed_form
                            .as_ref()
                            .map(|c| c.series[n].to_string())
                            .unwrap_or_default();
                        text.push_str(&format!(
                            "{n},{count},{},{},{cf}\n",
                            z.series[n], z.cover_series[n]
                        ));
                    }
                    Ok(Rendered { text })
                }
                Format::Svg => Err(CliError::Usage("zeta does not emit svg".to_string())),
            }
        }
        Command::Wilson { point, depth, levels } => {
            require_json("wilson")?;
            match (point, levels) {
                (Some(p), None) => {
                    let depth = depth.ok_or_else(|| {
                        CliError::Usage("wilson --point needs --depth".to_string())
                    })?;
                    let x = parse_point(p)?;
                    let trace = x.wilson_forward(depth);
                    Ok(json_out(serde_json::to_value(&trace).expect("serializable")))
                }
                (None, Some(ls)) => {
                    let levels: Vec<Rational> = ls
                        .split(',')
                        .map(|z| parse_rational(z))
                        .collect::<Result<_, _>>()?;
                    let trace = WilsonTrace::new(levels)?;
                    let pre = wilson_backward(&trace)?;
                    Ok(json_out(json!({
                        "real": pre.real,
                        "two_residue": pre.two_residue.to_string(),
                        "three_residue": pre.three_residue.to_string(),
                        "depth": pre.depth,
                    })))
                }
                _ => Err(CliError::Usage(
                    "wilson needs either --point with --depth, or --levels".to_string(),
                )),
            }
        }
        Command::Render {
            a,
            b,
            input,
            atom,
            map,
            shade,
            projection,
            depth2,
            depth3,
            width,
            height,
        } => {
            if let Some(f) = format {
                if f != Format::Svg {
                    return Err(CliError::Usage("render emits svg only".to_string()));
                }
            }
            let spec = RenderSpec {
                projection: (*projection).into(),
                monna_depth_2: *depth2,
                monna_depth_3: *depth3,
                width: *width,
                height: *height,
                shaded_atom: *shade,
            };
            let svg = match (input, a, b) {
                (Some(path), None, None) => {
                    let set = read_region(path)?;
                    render_boxset(&set, &spec)?
                }
                (Some(_), _, _) => {
                    return Err(CliError::Usage(
                        "render takes either --in or --a/--b, not both".to_string(),
                    ))
                }
                (None, Some(a), Some(b)) => {
                    guard_height(*a, *b, cli.cap)?;
                    match atom {
                        Some(j) => {
                            let base = xi(*a, *b)?;
                            let set =
                                base.atoms().get(*j).cloned().ok_or(Error::IndexOutOfRange {
                                    index: *j as i64,
                                    size: base.len() as u64,
                                })?;
                            let set = if *map { set.image(*a, *b) } else { set };
                            render_boxset(&set, &spec)?
                        }
                        None => {
                            let base = xi(*a, *b)?;
                            let p = if *map { base.image(*a, *b) } else { base };
                            render_partition(&p, &spec)?
                        }
                    }
                }
                _ => {
                    return Err(CliError::Usage(
                        "render needs --in FILE or both --a and --b".to_string(),
                    ))
                }
            };
            Ok(Rendered { text: svg })
        }
        Command::Gallery { directions, projection, depth2, depth3, width, height } => {
            if let Some(f) = format {
                if f != Format::Svg {
                    return Err(CliError::Usage("gallery emits svg only".to_string()));
                }
            }
            let dirs = parse_directions(directions)?;
            let spec = RenderSpec {
                projection: (*projection).into(),
                monna_depth_2: *depth2,
                monna_depth_3: *depth3,
                width: *width,
                height: *height,
                shaded_atom: None,
            };
            let svg = render_cone_gallery(&dirs, &spec)?;
            Ok(Rendered { text: svg })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rendered) => {
            match &cli.out {
                Some(path) => {
                    if let Err(e) = fs::write(path, rendered.text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{}", rendered.text),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
