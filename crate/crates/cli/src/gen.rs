use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Subcommand};

use isosat::dimacs::write_dimacs;
use isosat::eclause::write_generators;
use isosat::generators::{gen_pythagorean, gen_vdw, pyth_generators, vdw_generators, PythParams, VdwParams};
use isosat::sidecar::write_sidecar;

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Output path stem; `.cnf`, `.meta` and `.gens` are appended.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Van der Waerden: no j-progression of one color, no k-progression of
    /// the other, over 1..=n.
    Waerden {
        #[arg(short)]
        j: u32,
        #[arg(short)]
        k: u32,
        #[arg(short)]
        n: u32,
    },
    /// Boolean Pythagorean triples over 1..=n.
    Pythagorean {
        #[arg(short)]
        n: u32,
    },
}

pub fn run(args: GenArgs) -> Result<()> {
    let (default_stem, f, gens) = match args.family {
        Family::Waerden { j, k, n } => {
            let p = VdwParams::new(j, k, n)?;
            (format!("vdw_{j}_{k}_{n}"), gen_vdw(p), vdw_generators(p))
        }
        Family::Pythagorean { n } => {
            let p = PythParams::new(n)?;
            (format!("pyth_{n}"), gen_pythagorean(p), pyth_generators(p))
        }
    };
    let stem = args.output.unwrap_or_else(|| PathBuf::from(default_stem));
    let with_ext = |ext: &str| {
        let mut s = stem.clone().into_os_string();
        s.push(ext);
        PathBuf::from(s)
    };
    for (path, text) in [
        (with_ext(".cnf"), write_dimacs(&f)),
        (with_ext(".meta"), write_sidecar(&f)),
        (with_ext(".gens"), write_generators(&gens)),
    ] {
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        println!("wrote {}", path.display());
    }
    println!("variables={} clauses={}", f.num_vars(), f.len());
    Ok(())
}
