use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fanotope::catalog::{all_passed, format_outcomes, verify_builtin, CheckStatus};
use fanotope::io::{parse_polytopes, scan, Layout};
use fanotope::lattice::{ehrhart_polynomial, lattice_sum_polynomial};
use fanotope::report::analyze_labeled;
use fanotope::roots::{demazure_roots, is_reductive, nill_pairing_criterion};
use fanotope::stability::{
    chow_condition_asymptotic, chow_condition_fixed, ding_invariant, parse_piecewise_linear,
};
use fanotope::{Error, LatticePolytope, LatticeTag};

/// Exact stability invariants of toric Fano varieties from lattice polytopes.
#[derive(Parser)]
#[command(name = "fanotope", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeArg {
    Fan,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Which lattice the file's vertices live in.
    #[arg(long, value_enum, default_value = "fan")]
    lattice: LatticeArg,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Force coordinate-major (transposed) reading of the vertex matrix.
    #[arg(long)]
    transpose: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full stability report for every polytope in a file.
    Analyze {
        path: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Demazure roots and reductivity of the automorphism group.
    Roots {
        path: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ding invariant of a piecewise linear convex function.
    Ding {
        path: PathBuf,
        /// Piece file: one `a_1 .. a_n c` line per affine piece.
        #[arg(long)]
        pl: PathBuf,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Chow necessary condition, at one level or asymptotically.
    Chow {
        path: PathBuf,
        /// Fixed level i (any integer); omitted = asymptotic verdict.
        #[arg(long)]
        level: Option<i64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Analyze a multi-polytope database file and aggregate the verdicts.
    Scan {
        path: PathBuf,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Recompute the built-in catalog expectations and report each one.
    VerifyBuiltin {
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
}

impl CommonArgs {
    fn tag(&self) -> LatticeTag {
        match self.lattice {
            LatticeArg::Fan => LatticeTag::Fan,
            LatticeArg::Dual => LatticeTag::Dual,
        }
    }

    fn layout(&self) -> Layout {
        if self.transpose {
            Layout::Transposed
        } else {
            Layout::Auto
        }
    }
}

fn load_polytopes(
    path: &PathBuf,
    common: &CommonArgs,
) -> anyhow::Result<Vec<(LatticePolytope, Option<String>)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
    let parsed = parse_polytopes(&text, common.layout())?;
    let mut out = Vec::new();
    for p in parsed {
        let label = p.label.clone();
        out.push((p.into_polytope(common.tag())?, label));
    }
    if out.is_empty() {
        anyhow::bail!("{} contains no polytopes", path.display());
    }
    Ok(out)
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version are not errors; anything else is input error 1
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            e.print().expect("stderr is writable");
            return Ok(if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    };
    match cli.command {
        Command::Analyze { path, common } => {
            let polys = load_polytopes(&path, &common)?;
            let mut json_parts = Vec::new();
            for (i, (p, label)) in polys.iter().enumerate() {
                let label = label.clone().unwrap_or_else(|| format!("entry {}", i + 1));
                let report = analyze_labeled(p, Some(label))?;
                match common.format {
                    FormatArg::Text => print!("{}", report.to_text()),
                    FormatArg::Json => json_parts.push(report.to_json()),
                }
            }
            if let FormatArg::Json = common.format {
                if json_parts.len() == 1 {
                    println!("{}", json_parts[0]);
                } else {
                    println!("[{}]", json_parts.join(","));
                }
            }
        }
        Command::Roots { path, common } => {
            for (i, (p, label)) in load_polytopes(&path, &common)?.iter().enumerate() {
                let fan = match p.tag() {
                    LatticeTag::Fan => p.clone(),
                    LatticeTag::Dual => p
                        .dual_polytope()?
                        .1
                        .ok_or(Error::NotReflexive)?,
                };
                let rs = demazure_roots(&fan)?;
                let name = label.clone().unwrap_or_else(|| format!("entry {}", i + 1));
                match common.format {
                    FormatArg::Text => {
                        println!("{name}: {} roots, reductive: {}", rs.roots.len(), is_reductive(&rs));
                        for (m, tag) in rs
                            .semisimple
                            .iter()
                            .map(|m| (m, 'S'))
                            .chain(rs.unipotent.iter().map(|m| (m, 'U')))
                        {
                            println!("  {} {}", fanotope::arith::format_int_vector(m), tag);
                        }
                        println!(
                            "  pairing criterion with {}: {}",
                            fanotope::arith::format_vector(fan.moment()),
                            nill_pairing_criterion(fan.moment(), &rs)
                        );
                    }
                    FormatArg::Json => {
                        let roots: Vec<String> = rs
                            .roots
                            .iter()
                            .map(|m| {
                                let is_s = rs.semisimple.contains(m);
                                format!(
                                    "{{\"root\":{:?},\"class\":\"{}\"}}",
                                    m.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                                    if is_s { "S" } else { "U" }
                                )
                            })
                            .collect();
                        println!(
                            "{{\"label\":\"{name}\",\"reductive\":{},\"roots\":[{}]}}",
                            is_reductive(&rs),
                            roots.join(",")
                        );
                    }
                }
            }
        }
        Command::Ding { path, pl, common } => {
            let polys = load_polytopes(&path, &common)?;
            let pl_text = std::fs::read_to_string(&pl)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", pl.display()))?;
            for (p, _) in &polys {
                let delta = match p.tag() {
                    LatticeTag::Dual => p.clone(),
                    LatticeTag::Fan => p.dual_polytope()?.1.ok_or(Error::NotReflexive)?,
                };
                let u = parse_piecewise_linear(&pl_text, delta.dim())?;
                let value = ding_invariant(&delta, &u)?;
                match common.format {
                    FormatArg::Text => println!("{}", fanotope::arith::format_rational(&value)),
                    FormatArg::Json => println!(
                        "{{\"ding_invariant\":\"{}\"}}",
                        fanotope::arith::format_rational(&value)
                    ),
                }
            }
        }
        Command::Chow { path, level, common } => {
            for (p, _) in &load_polytopes(&path, &common)? {
                let delta = match p.tag() {
                    LatticeTag::Dual => p.clone(),
                    LatticeTag::Fan => p.dual_polytope()?.1.ok_or(Error::NotReflexive)?,
                };
                let e = ehrhart_polynomial(&delta)?;
                let s = lattice_sum_polynomial(&delta)?;
                let b = delta.barycenter();
                match level {
                    Some(i) => {
                        let ok = chow_condition_fixed(&e, &s, b, i);
                        let lhs = s.eval_int(i);
                        let rhs: Vec<_> = b
                            .iter()
                            .map(|x| x * e.eval_int(i))
                            .collect();
                        match common.format {
                            FormatArg::Text => println!(
                                "level {i}: {ok}   s({i}) = {}   E({i})*b = {}",
                                fanotope::arith::format_vector(&lhs),
                                fanotope::arith::format_vector(&rhs)
                            ),
                            FormatArg::Json => println!(
                                "{{\"level\":{i},\"holds\":{ok},\"lhs\":\"{}\",\"rhs\":\"{}\"}}",
                                fanotope::arith::format_vector(&lhs),
                                fanotope::arith::format_vector(&rhs)
                            ),
                        }
                    }
                    None => {
                        let ok = chow_condition_asymptotic(&e, &s, b);
                        match common.format {
                            FormatArg::Text => println!("asymptotic: {ok}"),
                            FormatArg::Json => {
                                println!("{{\"level\":\"asymptotic\",\"holds\":{ok}}}")
                            }
                        }
                    }
                }
            }
        }
        Command::Scan { path, jobs, common } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| anyhow::anyhow!("cannot read {}: {e}", path.display()))?;
            let summary = scan(&text, common.tag(), common.layout(), jobs)?;
            match common.format {
                FormatArg::Text => print!("{}", summary.to_text()),
                FormatArg::Json => println!("{}", summary.to_json()),
            }
        }
        Command::VerifyBuiltin { format } => {
            let outcomes = verify_builtin();
            match format {
                FormatArg::Text => print!("{}", format_outcomes(&outcomes)),
                FormatArg::Json => {
                    let parts: Vec<String> = outcomes
                        .iter()
                        .map(|o| {
                            format!(
                                "{{\"entry\":\"{}\",\"check\":{},\"status\":\"{}\",\"detail\":{}}}",
                                o.entry,
                                serde_escape(&o.check),
                                match o.status {
                                    CheckStatus::Pass => "pass",
                                    CheckStatus::Fail => "fail",
                                    CheckStatus::Flagged => "flagged",
                                    CheckStatus::Skipped => "skipped",
                                },
                                serde_escape(&o.detail)
                            )
                        })
                        .collect();
                    println!("[{}]", parts.join(","));
                }
            }
            if !all_passed(&outcomes) {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn serde_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = err
                .downcast_ref::<Error>()
                .map(|e| e.exit_code())
                .unwrap_or(1);
            ExitCode::from(code as u8)
        }
    }
}
