//! Subcommand definitions and their execution.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use fpforge_core::constructions::{build_cover, nlcp_repair_m, sphere_link};
use fpforge_core::enumeration::rset::{r_set_report, Budgets};
use fpforge_core::enumeration::{todd_coxeter, witness_nontrivial, TcOutcome};
use fpforge_core::homology::{homology, reduced_homology, Ring};
use fpforge_core::iso::{are_isomorphic, IsoOutcome};
use fpforge_core::presentation::{
    bb_presentation, edge_path_presentation, g_empty_presentation, presentation_2complex, HeightSet,
};
use fpforge_core::random::DEFAULT_SEED;
use fpforge_core::{ComplexFile, Presentation, Word};

use crate::inputs::{self, AnyComplex};
use crate::{corpus_files, verify};

#[derive(Parser, Debug)]
#[command(name = "fpforge", version, about = "Flag complexes, presentations P_L(Γ,S) and R-set enumeration")]
pub struct Cli {
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Simplicial complex operations.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Presentations built from complexes.
    #[command(subcommand)]
    Present(PresentCmd),
    /// Coset enumeration, finite quotients and R-sets.
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Generate or check the bundled corpus.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand, Debug)]
pub enum ComplexCmd {
    Validate { input: PathBuf },
    Flag { input: PathBuf },
    Nlcp { input: PathBuf },
    Homology {
        input: PathBuf,
        /// Z, Q or F<p>.
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long)]
        unreduced: bool,
    },
    /// Barycentric subdivision; polygonal complexes are first cut into triangles.
    Subdivide { input: PathBuf },
    SphereLink { input: PathBuf },
    #[command(name = "repair-M")]
    RepairM { input: PathBuf },
    Cover {
        input: PathBuf,
        #[arg(long)]
        voltage: PathBuf,
    },
    Iso { input: PathBuf, other: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum PresentCmd {
    Bb {
        #[arg(long)]
        complex: PathBuf,
        /// `boundary`, `none`, or a JSON file of vertex label loops.
        #[arg(long, default_value = "none")]
        loops: String,
        #[arg(long, default_value = "0")]
        heights: String,
        /// Keep edge generator names instead of renaming to a, b, c, ….
        #[arg(long)]
        edge_names: bool,
        #[arg(long)]
        json: bool,
    },
    EdgePath {
        #[arg(long)]
        complex: PathBuf,
        /// Base vertex label; defaults to the first vertex.
        #[arg(long)]
        base: Option<String>,
        /// Skip the Tietze cleanup.
        #[arg(long)]
        raw: bool,
        #[arg(long)]
        json: bool,
    },
    Abelianize {
        #[arg(long)]
        presentation: PathBuf,
    },
    GEmpty {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        deck: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
        #[arg(long)]
        json: bool,
    },
    TwoComplex {
        #[arg(long)]
        presentation: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum EnumerateCmd {
    Tc {
        #[arg(long)]
        presentation: PathBuf,
        /// Comma-separated subgroup generators.
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    Witness {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 5)]
        degree: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    Rset {
        #[arg(long)]
        presentation: PathBuf,
        /// Comma-separated words g₁,…,g_l.
        #[arg(long)]
        tuple: String,
        /// Largest |n| considered.
        #[arg(long, default_value_t = 5)]
        budget: usize,
        #[arg(long, default_value_t = 5)]
        degree: usize,
        #[arg(long, default_value_t = 1.0)]
        budget_scale: f64,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub budget_scale: f64,
    /// Criterion name or number, or a check id prefix.
    #[arg(long)]
    pub only: Option<String>,
    /// Print the JSON report instead of the summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum CorpusCmd {
    Generate {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
    Check {
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Text to emit and the process exit code: 0 on success or inconclusive,
/// 1 when a check fails.
#[derive(Debug)]
pub struct Response {
    pub text: String,
    pub code: u8,
}

impl Response {
    fn ok(text: impl Into<String>) -> Self {
        Response { text: text.into(), code: 0 }
    }

    fn check(text: impl Into<String>, passed: bool) -> Self {
        Response { text: text.into(), code: if passed { 0 } else { 1 } }
    }

    fn json(value: &impl Serialize) -> Result<Self> {
        Ok(Self::ok(to_json(value)?))
    }
}

fn to_json(value: &impl Serialize) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn presentation_out(p: &Presentation, json: bool) -> Result<Response> {
    if json {
        Response::json(p)
    } else {
        Ok(Response::ok(format!("{p}\n")))
    }
}

fn words(p: &Presentation, list: &str) -> Result<Vec<Word>> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|w| Ok(p.parse_word(w)?)).collect()
}

pub fn run(cli: &Cli) -> Result<Response> {
    match &cli.command {
        Command::Complex(c) => complex(c),
        Command::Present(c) => present(c),
        Command::Enumerate(c) => enumerate(c),
        Command::Verify(a) => run_verify(a, cli.output.as_deref()),
        Command::Corpus(c) => corpus(c),
    }
}

fn complex(cmd: &ComplexCmd) -> Result<Response> {
    match cmd {
        ComplexCmd::Validate { input } => {
            let file: ComplexFile = inputs::read_json(input)?;
            let report = file.validate();
            let mut out = json!({"valid": report.is_empty(), "issues": report.issues});
            if report.is_empty() {
                let c = inputs::read_complex(input)?;
                out["f_vector"] = json!(c.f_vector());
                out["dimension"] = json!(c.dimension());
            }
            Ok(Response::check(to_json(&out)?, report.is_empty()))
        }
        ComplexCmd::Flag { input } => {
            let flag = inputs::read_complex(input)?.is_flag();
            Ok(Response::check(to_json(&json!({"flag": flag}))?, flag))
        }
        ComplexCmd::Nlcp { input } => {
            let nlcp = inputs::read_complex(input)?.has_nlcp()?;
            Ok(Response::check(to_json(&json!({"nlcp": nlcp}))?, nlcp))
        }
        ComplexCmd::Homology { input, ring, unreduced } => {
            let ring: Ring = ring.parse()?;
            let c = inputs::read_complex(input)?;
            let h = if *unreduced { homology(&c, ring) } else { reduced_homology(&c, ring) };
            Response::json(&json!({"summary": h.to_string(), "reduced": !unreduced, "profile": h}))
        }
        ComplexCmd::Subdivide { input } => {
            let sd = match inputs::read_any_complex(input)? {
                AnyComplex::Simplicial(c) => c.barycentric_subdivision(),
                AnyComplex::Polygonal(p) => p.subdivide()?.barycentric_subdivision()?,
            };
            Response::json(&sd.to_file())
        }
        ComplexCmd::SphereLink { input } => Response::json(&sphere_link(&inputs::read_complex(input)?).to_file()),
        ComplexCmd::RepairM { input } => Response::json(&nlcp_repair_m(&inputs::read_complex(input)?)?.complex.to_file()),
        ComplexCmd::Cover { input, voltage } => {
            let l = inputs::read_complex(input)?;
            let rho = inputs::read_voltage(voltage, &l)?;
            Response::json(&build_cover(&l, &rho)?.to_file(&l))
        }
        ComplexCmd::Iso { input, other } => {
            let (a, b) = (inputs::read_complex(input)?, inputs::read_complex(other)?);
            Ok(match are_isomorphic(&a, &b) {
                IsoOutcome::Found(map) => {
                    let pairs: Vec<(&str, &str)> = map.iter().enumerate().map(|(v, &w)| (a.label(v), b.label(w))).collect();
                    Response::check(to_json(&json!({"status": "isomorphic", "map": pairs}))?, true)
                }
                IsoOutcome::NotIsomorphic => Response::check(to_json(&json!({"status": "not_isomorphic"}))?, false),
                IsoOutcome::OutOfBudget(n) => Response::ok(to_json(&json!({"status": "inconclusive", "nodes": n}))?),
            })
        }
    }
}

fn present(cmd: &PresentCmd) -> Result<Response> {
    match cmd {
        PresentCmd::Bb { complex, loops, heights, edge_names, json } => {
            let l = inputs::read_complex(complex)?;
            let gamma = inputs::read_loops(loops, &l)?;
            let bb = bb_presentation(&l, &gamma, &HeightSet::parse(heights)?)?;
            let p = if *edge_names { bb.presentation } else { bb.presentation.with_letter_names() };
            presentation_out(&p, *json)
        }
        PresentCmd::EdgePath { complex, base, raw, json } => {
            let c = inputs::read_complex(complex)?;
            let base = match base {
                Some(b) => b.clone(),
                None => c.labels().first().context("empty complex")?.clone(),
            };
            let ep = edge_path_presentation(&c, &base)?;
            let p = if *raw { ep.presentation } else { ep.presentation.simplify().presentation };
            presentation_out(&p.with_letter_names(), *json)
        }
        PresentCmd::Abelianize { presentation } => {
            let ab = inputs::read_presentation(presentation)?.abelianization();
            Ok(Response::ok(format!("{ab}\n")))
        }
        PresentCmd::GEmpty { complex, cover, deck, max_cosets, json } => {
            let l = inputs::read_complex(complex)?;
            let cover = inputs::read_cover(cover, &l)?;
            let deck = inputs::read_deck(deck, &cover.complex)?;
            let g = g_empty_presentation(&l, &cover, &deck, *max_cosets)?;
            presentation_out(&g.presentation, *json)
        }
        PresentCmd::TwoComplex { presentation } => {
            let (pc, h) = presentation_2complex(&inputs::read_presentation(presentation)?);
            Response::json(&json!({"complex": pc.to_file(), "homology": h.to_string(), "profile": h}))
        }
    }
}

fn enumerate(cmd: &EnumerateCmd) -> Result<Response> {
    match cmd {
        EnumerateCmd::Tc { presentation, subgroup, max_cosets } => {
            let p = inputs::read_presentation(presentation)?;
            let h = words(&p, subgroup)?;
            let out = match todd_coxeter(&p, &h, *max_cosets) {
                TcOutcome::Complete(t) => {
                    json!({"status": "complete", "cosets": t.num_cosets(), "verified": t.verify(&p, &h), "table": t.table})
                }
                TcOutcome::OutOfBudget { live, defined } => {
                    json!({"status": "inconclusive", "live": live, "defined": defined, "max_cosets": max_cosets})
                }
            };
            Response::json(&out)
        }
        EnumerateCmd::Witness { presentation, word, degree, budget } => {
            let p = inputs::read_presentation(presentation)?;
            let w = p.parse_word(word)?;
            let outcome = witness_nontrivial(&p, &w, *degree, *budget);
            let verified = outcome.witness().map(|x| x.verify(&p, &w));
            Response::json(&json!({"outcome": outcome, "verified": verified}))
        }
        EnumerateCmd::Rset { presentation, tuple, budget, degree, budget_scale } => {
            let p = inputs::read_presentation(presentation)?;
            let g = words(&p, tuple)?;
            if g.is_empty() {
                bail!("--tuple needs at least one word");
            }
            let r = r_set_report(&p, &g, *budget, *degree, Budgets::default().scaled(*budget_scale))?;
            let out = json!({
                "positives": r.positive_set(),
                "negatives": r.negative_set(),
                "unknown": r.unknown,
                "verified": r.verify(&p),
                "report": r,
            });
            Response::json(&out)
        }
    }
}

fn run_verify(a: &VerifyArgs, output: Option<&Path>) -> Result<Response> {
    let opts = verify::VerifyOptions { seed: a.seed, budget_scale: a.budget_scale, only: a.only.clone() };
    let report = verify::run(&opts);
    if report.checks.is_empty() {
        bail!("--only {} matches no check", a.only.as_deref().unwrap_or(""));
    }
    let json = to_json(&report)?;
    if let Some(path) = output {
        std::fs::write(path, &json).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let text = if a.json && output.is_none() { json } else { report.summary() };
    Ok(Response::check(text, !report.any_failed()))
}

fn corpus(cmd: &CorpusCmd) -> Result<Response> {
    match cmd {
        CorpusCmd::Generate { dir } => {
            let dir = dir.clone().unwrap_or_else(inputs::corpus_dir);
            let n = corpus_files::generate(&dir)?;
            Ok(Response::ok(format!("wrote {n} files and {} to {}\n", corpus_files::MANIFEST, dir.display())))
        }
        CorpusCmd::Check { dir } => {
            let dir = dir.clone().unwrap_or_else(inputs::corpus_dir);
            let check = corpus_files::check(&dir)?;
            Ok(Response::check(to_json(&check)?, check.ok()))
        }
    }
}
