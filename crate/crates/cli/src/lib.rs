//! `tiltmut`: batch driver for tilting mutation of weakly symmetric algebras.
//! The binary is a thin wrapper around [`run`].

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use clap::error::ErrorKind;
use serde_json::json;

use tiltmut_core::grammar::{parse_field, parse_presentation, print_presentation};
use tiltmut_core::json::{BrickSystemJson, ErrorJson, MutationResultJson, PresentationJson};
use tiltmut_core::msob::parse_system;
use tiltmut_core::mutation::{cross_validate, resolution_prefix, MutationResult};
use tiltmut_core::{Error, FdAlgebra, Presentation};
use tiltmut_gateway::ops::{self, MutateOptions, Side};

#[derive(Parser)]
#[command(name = "tiltmut", version, about = "Tilting mutation of weakly symmetric algebras")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Replace the field of the input, e.g. `Q` or `F 3`.
    #[arg(long, global = true)]
    field: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check admissibility, finite dimension and weak symmetry.
    Validate { file: PathBuf },
    /// Mutate at a vertex and print the resulting presentation.
    Mutate {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
        /// Keep the unreduced presentation.
        #[arg(long)]
        no_reduce: bool,
        /// Skip the comparison with the endomorphism algebra.
        #[arg(long)]
        unchecked: bool,
    },
    /// Compare the combinatorial mutation with the endomorphism algebra.
    Compare {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Images of the simples of the mutated algebra.
    Simples {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Start of a projective resolution of a simple of the mutated algebra.
    Resolve {
        file: PathBuf,
        #[arg(long)]
        vertex: String,
        /// Vertex of the simple.
        #[arg(long)]
        j: String,
    },
    /// Mutate a system of orthogonal bricks listed in vertex order.
    Msob {
        file: PathBuf,
        system: PathBuf,
        #[arg(long)]
        vertex: String,
        #[arg(long, value_enum, default_value_t = SideArg::Left)]
        side: SideArg,
    },
    /// Graphviz rendering of the quiver; with `--vertex`, of the raw
    /// mutated quiver with provenance tags.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        vertex: Option<String>,
    },
    /// Run the HTTP gateway.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

/// Output and exit status of a successful command.
struct Outcome {
    text: String,
    ok: bool,
    warnings: Option<String>,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true, warnings: None }
    }

    fn checked(text: String, ok: bool) -> Self {
        Outcome { text, ok, warnings: None }
    }
}

fn load(path: &PathBuf, field: &Option<String>) -> Result<Presentation, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    let p = parse_presentation(&text)?;
    match field {
        None => Ok(p),
        Some(f) => {
            let mut j = PresentationJson::from_presentation(&p);
            j.field = parse_field(f, 0, 0)?.to_string();
            j.to_presentation()
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn dot(p: &Presentation, tags: Option<&MutationResult>) -> String {
    let q = &p.quiver;
    let mut out = String::from("digraph quiver {\n");
    for v in &q.vertices {
        let _ = writeln!(out, "  \"{v}\";");
    }
    for a in 0..q.num_arrows() {
        let mut label = q.label(a).to_string();
        if let Some(r) = tags {
            if let Some(pa) = r.arrows.iter().find(|x| x.label == label) {
                label = format!("{label} [{:?}]", pa.tag);
            }
        }
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", q.vertex_name(q.source(a)), q.vertex_name(q.target(a)), label);
    }
    out.push_str("}\n");
    out
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let fmt = cli.format;
    match &cli.command {
        Command::Validate { file } => {
            let p = load(file, &cli.field)?;
            let report = FdAlgebra::validate(&p);
            let text = match fmt {
                Format::Json => pretty(&report),
                Format::Dot => dot(&p, None),
                Format::Text => report.to_string(),
            };
            Ok(Outcome::checked(text, report.problems.is_empty()))
        }
        Command::Mutate { file, vertex, side, no_reduce, unchecked } => {
            let p = load(file, &cli.field)?;
            let opts = MutateOptions { side: (*side).into(), reduce: !no_reduce, checked: !unchecked };
            let r = ops::mutate(&p, vertex, &opts)?;
            let warnings: String = r.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
            let mut out = Outcome::ok(match fmt {
                Format::Text => print_presentation(&r.reduced),
                Format::Json => {
                    let mut j = MutationResultJson::from_result(&r);
                    if opts.side == Side::Left {
                        j.simple_images = Some(ops::simple_images(&p, vertex)?);
                    }
                    pretty(&j)
                }
                Format::Dot => dot(&r.reduced, Some(&r)),
            });
            out.warnings = (!warnings.is_empty()).then_some(warnings);
            Ok(out)
        }
        Command::Compare { file, vertex } => {
            let p = load(file, &cli.field)?;
            let alg = FdAlgebra::new(&p)?;
            let (_, report) = cross_validate(&alg, ops::vertex(&alg, vertex)?)?;
            let text = match fmt {
                Format::Json => pretty(&report),
                _ => {
                    let mut t = String::new();
                    let _ = writeln!(t, "surjective: {}", report.surjective);
                    let _ = writeln!(t, "dimensions: raw {} reduced {} oracle {}", report.raw_dim, report.reduced_dim, report.oracle_dim);
                    let _ = writeln!(t, "relations outside the kernel: {}", report.relations_outside_kernel.len());
                    for r in &report.relations_outside_kernel {
                        let _ = writeln!(t, "  {r}");
                    }
                    let _ = writeln!(t, "kernel elements outside the ideal: {}", report.kernel_outside_ideal.len());
                    for r in &report.kernel_outside_ideal {
                        let _ = writeln!(t, "  {r}");
                    }
                    let _ = writeln!(t, "reduced presentations isomorphic: {}", report.reduced_iso);
                    let _ = writeln!(t, "{}", if report.passed { "PASS" } else { "FAIL" });
                    t
                }
            };
            Ok(Outcome::checked(text, report.passed))
        }
        Command::Simples { file, vertex } => {
            let p = load(file, &cli.field)?;
            let images = ops::simple_images(&p, vertex)?;
            Ok(Outcome::ok(match fmt {
                Format::Json => pretty(&images),
                _ => images
                    .iter()
                    .map(|s| {
                        let dims: Vec<String> = s.dims.iter().map(usize::to_string).collect();
                        format!("S{}: ({})  {}\n", s.vertex, dims.join(","), s.layers)
                    })
                    .collect(),
            }))
        }
        Command::Resolve { file, vertex, j } => {
            let p = load(file, &cli.field)?;
            let r = ops::mutate(&p, vertex, &MutateOptions { checked: false, ..Default::default() })?;
            let q = &r.raw.quiver;
            let jj = q.vertex_index(j).ok_or_else(|| Error::UnknownVertex(j.clone()))?;
            let pre = resolution_prefix(&r, jj);
            let b = FdAlgebra::general(&r.raw)?;
            let (complex, top, middle) = pre.check(&b);
            let upper_left = pre.upper_left_zero(&r);
            let name = |v: usize| q.vertex_name(v).to_string();
            let text = match fmt {
                Format::Json => pretty(&json!({
                    "vertex": j,
                    "middle": pre.middle.iter().map(|&v| name(v)).collect::<Vec<_>>(),
                    "arrows": pre.arrows.iter().map(|&a| q.label(a)).collect::<Vec<_>>(),
                    "left": pre.left.iter().map(|&v| name(v)).collect::<Vec<_>>(),
                    "relations": pre.relations.iter().map(|&k| r.raw.relations[k].display(q)).collect::<Vec<_>>(),
                    "phi": pre.phi.iter().map(|row| row.iter().map(|x| x.display(q)).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "complex": complex, "exactAtTop": top, "exactAtMiddle": middle, "upperLeftZero": upper_left,
                })),
                _ => {
                    let mut t = String::new();
                    let terms = |vs: &[usize]| vs.iter().map(|&v| format!("P'{}", name(v))).collect::<Vec<_>>().join(" ⊕ ");
                    let _ = writeln!(t, "P'{} <- {} <- {}", j, terms(&pre.middle), terms(&pre.left));
                    let arrows: Vec<&str> = pre.arrows.iter().map(|&a| q.label(a)).collect();
                    let _ = writeln!(t, "d1 = [{}]", arrows.join(", "));
                    let _ = writeln!(t, "d2 =");
                    for row in &pre.phi {
                        let cells: Vec<String> = row.iter().map(|x| x.display(q)).collect();
                        let _ = writeln!(t, "  [{}]", cells.join(", "));
                    }
                    let _ = writeln!(t, "complex: {complex}; exact at P'{j}: {top}; exact in the middle: {middle}; upper-left block zero: {upper_left}");
                    t
                }
            };
            Ok(Outcome::checked(text, complex && top && middle))
        }
        Command::Msob { file, system, vertex, side } => {
            let p = load(file, &cli.field)?;
            let alg = FdAlgebra::new(&p)?;
            let text = std::fs::read_to_string(system).map_err(|e| Error::Invalid(format!("{}: {e}", system.display())))?;
            let bricks = parse_system(&alg, &text)?;
            let out: BrickSystemJson = ops::msob_mutate(&p, &bricks, vertex, (*side).into())?;
            Ok(Outcome::ok(match fmt {
                Format::Text => {
                    let mut t = String::new();
                    for (k, b) in out.bricks.iter().enumerate() {
                        let dims: Vec<String> = b.dims.iter().map(usize::to_string).collect();
                        let _ = writeln!(t, "brick {}: ({})", k + 1, dims.join(","));
                    }
                    let _ = writeln!(t, "axioms: orthobrick {} no2periodic {} maximality {:?}", out.flags.orthobrick, out.flags.no2periodic, out.flags.maximality);
                    if let Some(m) = &out.multiplicities {
                        let _ = writeln!(t, "multiplicities: {m:?}");
                    }
                    t
                }
                _ => pretty(&out),
            }))
        }
        Command::ExportDot { file, vertex } => {
            let p = load(file, &cli.field)?;
            match vertex {
                None => Ok(Outcome::ok(dot(&p, None))),
                Some(v) => {
                    let r = ops::mutate(&p, v, &MutateOptions { checked: false, ..Default::default() })?;
                    Ok(Outcome::ok(dot(&r.raw, Some(&r))))
                }
            }
        }
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new().map_err(|e| Error::Invalid(e.to_string()))?;
            eprintln!("listening on http://127.0.0.1:{port}");
            rt.block_on(tiltmut_gateway::serve(*port)).map_err(|e| Error::Invalid(e.to_string()))?;
            Ok(Outcome::ok(String::new()))
        }
    }
}

/// What a command invocation printed and its exit status.
#[derive(Debug, PartialEq)]
pub struct Run {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (without the program name).
pub fn run<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("tiltmut")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) { 0 } else { 2 };
            let text = e.render().to_string();
            return if code == 0 {
                Run { code, stdout: text, stderr: String::new() }
            } else {
                Run { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut stderr = String::new();
    match execute(&cli) {
        Ok(out) => {
            if let Some(w) = out.warnings {
                stderr.push_str(&w);
            }
            Run { code: if out.ok { 0 } else { 1 }, stdout: out.text, stderr }
        }
        Err(e) => {
            if cli.format == Format::Json {
                Run { code: 1, stdout: pretty(&ErrorJson::from(&e)), stderr }
            } else {
                Run { code: 1, stdout: String::new(), stderr: format!("error[{}]: {e}\n", e.code()) }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tiltmut_core::fixtures;

    #[test]
    fn dot_lists_every_arrow() {
        let d = dot(&fixtures::e2(), None);
        assert_eq!(d.matches(" -> ").count(), 6);
        assert!(d.contains("\"1\" -> \"2\" [label=\"a1\"]"));
    }

    #[test]
    fn usage_and_help() {
        assert_eq!(run(["mutate"]).code, 2);
        let help = run(["--help"]);
        assert_eq!(help.code, 0);
        assert!(help.stdout.contains("mutate"));
    }

    #[test]
    fn missing_file_is_a_domain_error() {
        let out = run(["validate", "/nonexistent.alg"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.starts_with("error[Invalid]"));
    }
}
