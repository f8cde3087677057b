//! Command-line front end.
//!
//! Exit codes: 0 ok, 2 parse error, 3 invariant violation, 4 hypothesis
//! violated, 5 bad class, 6 internal check failure.
//!
//! Structured output is single-line JSON; scalar output is a plain decimal
//! integer. Mapping words compose right to left.

pub mod document;
pub mod syntax;

use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::curves::{build_slice, verify_proper_coloring, CurveShadow, Orientation, SliceGraph};
use crate::engine::{dual_basis, factor, h1_rank, pairing_matrix, phi, project_to_a};
use crate::error::{Error, Result};
use crate::homology::{class_of_partition, EndPartition, SeparatingClass};
use crate::surface::{EndRef, Genus, SurfaceSpec};

pub use document::{parse_surface, SurfaceDocument};
pub use syntax::{format_word, parse_word, parse_word_on};

#[derive(Debug, Parser)]
#[command(
    name = "sepflux",
    version,
    about = "Flux homomorphisms on pure mapping class groups of infinite-genus surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SurfaceArg {
    /// Surface document (JSON); `-` reads standard input.
    pub surface: String,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ClassArg {
    /// Class coordinates over v1..v(n-1), comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Option<String>,
    /// End identifiers on the positive side, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub partition: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the classification quadruple.
    Classify(SurfaceArg),
    /// Print the rank of H^1(PMap(S); Z).
    Rank(SurfaceArg),
    /// Evaluate the flux homomorphism of a class on a word.
    Eval {
        #[command(flatten)]
        surface: SurfaceArg,
        #[command(flatten)]
        class: ClassArg,
        /// Mapping-class word, e.g. `S(2,1)^3*T(P={e1}; l=2; h=0)`
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Print the pairing of the basis classes with the dual handle shifts.
    Pair(SurfaceArg),
    /// Split a word into a dual-basis part and a flux-free residual.
    Factor {
        #[command(flatten)]
        surface: SurfaceArg,
        /// Mapping-class word to factor
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Write a colored slice of the curve graph of a class.
    Slice {
        #[command(flatten)]
        surface: SurfaceArg,
        /// End identifiers on the positive side, comma separated
        #[arg(long, allow_hyphen_values = true)]
        partition: String,
        /// Truncation depth m of the slice
        #[arg(long)]
        depth: u64,
        /// Path of the graph file to write
        #[arg(long)]
        out: PathBuf,
    },
}

fn read_surface(arg: &SurfaceArg, stdin: &mut dyn Read) -> Result<SurfaceSpec> {
    let text = if arg.surface == "-" {
        let mut buf = String::new();
        stdin
            .read_to_string(&mut buf)
            .map_err(|e| parse_failure("surface document on standard input", e))?;
        buf
    } else {
        fs::read_to_string(&arg.surface).map_err(|e| parse_failure("readable surface file", e))?
    };
    parse_surface(&text)
}

fn parse_failure(expected: &str, found: impl ToString) -> Error {
    Error::Parse {
        position: 0,
        expected: expected.into(),
        found: found.to_string(),
    }
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

fn parse_coords(text: &str) -> Result<Vec<i64>> {
    let mut pos = 0;
    let mut out = Vec::new();
    for part in text.split(',') {
        let trimmed = part.trim();
        if !trimmed.is_empty() {
            out.push(trimmed.parse().map_err(|_| Error::Parse {
                position: pos,
                expected: "integer coordinate".into(),
                found: format!("`{trimmed}`"),
            })?);
        }
        pos += part.len() + 1;
    }
    Ok(out)
}

fn partition_of(surface: &SurfaceSpec, ids: &str) -> Result<EndPartition> {
    EndPartition::from_ids(surface, split_list(ids))
}

fn class_from_args(surface: &SurfaceSpec, arg: &ClassArg) -> Result<SeparatingClass> {
    match (&arg.class, &arg.partition) {
        (Some(coords), _) => SeparatingClass::new(surface.arm_count(), parse_coords(coords)?),
        (None, Some(ids)) => class_of_partition(surface, &partition_of(surface, ids)?),
        (None, None) => Err(parse_failure("--class or --partition", "neither")),
    }
}

/// Run one command, writing its normal output to `stdout`.
pub fn run(cli: &Cli, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<()> {
    let out = |stdout: &mut dyn Write, line: String| {
        writeln!(stdout, "{line}").map_err(|e| Error::InternalCheck(format!("write failed: {e}")))
    };
    match &cli.command {
        Command::Classify(arg) => {
            let q = read_surface(arg, stdin)?.classify();
            let genus = match q.genus {
                Genus::Infinite => json!("inf"),
                Genus::Finite(g) => json!(g),
            };
            let record = json!({
                "genus": genus,
                "boundary": q.boundary_count,
                "ends": q.end_count,
                "genus_ends": q.genus_end_count,
            });
            out(stdout, record.to_string())
        }
        Command::Rank(arg) => {
            let s = read_surface(arg, stdin)?;
            out(stdout, h1_rank(&s)?.to_string())
        }
        Command::Eval { surface, class, word } => {
            let s = read_surface(surface, stdin)?;
            let w = parse_word_on(&s, word)?;
            let v = class_from_args(&s, class)?;
            out(stdout, phi(&s, &v, &w)?.to_string())
        }
        Command::Pair(arg) => {
            let s = read_surface(arg, stdin)?;
            let basis = dual_basis(&s)?;
            let n = s.arm_count();
            let classes: Vec<_> = (0..n - 1).map(|i| SeparatingClass::basis(n, i)).collect();
            let m = pairing_matrix(&s, &classes, &basis.words())?;
            let identity = m
                .iter()
                .enumerate()
                .all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)));
            out(stdout, json!(m).to_string())?;
            if identity {
                Ok(())
            } else {
                Err(Error::InternalCheck("pairing matrix is not the identity".into()))
            }
        }
        Command::Factor { surface, word } => {
            let s = read_surface(surface, stdin)?;
            let w = parse_word_on(&s, word)?;
            let f = factor(&s, &w)?;
            let residual_flux = project_to_a(&s, &f.residual)?;
            if !residual_flux.is_zero() {
                return Err(Error::InternalCheck(format!(
                    "residual has nonzero flux {residual_flux}"
                )));
            }
            let record = json!({
                "kappa": format_word(&s, &f.kappa),
                "residual": format_word(&s, &f.residual),
                "residual_reduced": format_word(&s, &f.residual.reduce()),
                "flux": f.flux.values(),
            });
            out(stdout, record.to_string())
        }
        Command::Slice {
            surface,
            partition,
            depth,
            out: path,
        } => {
            let s = read_surface(surface, stdin)?;
            let p = partition_of(&s, partition)?;
            let v = class_of_partition(&s, &p)?;
            if v.is_zero() {
                return Err(Error::ZeroClass);
            }
            let punctures = split_list(partition)
                .filter_map(|id| match s.resolve_end(id) {
                    Ok(EndRef::Puncture(i)) => Some(i),
                    _ => None,
                })
                .collect();
            let gamma = CurveShadow::new(
                &s,
                p.positive().iter().map(|&a| (a, 0)).collect(),
                0,
                punctures,
                Default::default(),
                Orientation::Positive,
            )?;
            let slice = build_slice(&s, &v, *depth, &gamma)?;
            let report = verify_proper_coloring(&slice);
            let graph = SliceGraph {
                slice: &slice,
                surface: &s,
            }
            .to_string();
            fs::write(path, graph)
                .map_err(|e| Error::InternalCheck(format!("cannot write {}: {e}", path.display())))?;
            let record = json!({
                "vertices": slice.vertices.len(),
                "edges": slice.edges.len(),
                "proper": report.proper,
            });
            out(stdout, record.to_string())
        }
    }
}
