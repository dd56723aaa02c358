use clap::Subcommand;
use manin_core::delpezzo::{
    blow_down_reduction, crepant_rank_drop, enumerate_classes, CurveClass, DPLattice,
};
use manin_core::{Error, Result};

use super::Context;
use crate::output::Rendering;

#[derive(Subcommand)]
pub enum DelpezzoCmd {
    /// Enumerate all (−1)-classes of Z^{1,n}.
    MinusOne { n: usize },
    /// Enumerate all roots (both signs) of Z^{1,n}.
    MinusTwo { n: usize },
    /// Contract a (−1)-class, printing the Weyl reduction to e_n.
    BlowDown {
        #[arg(long)]
        n: usize,
        /// Comma-separated integer coordinates `a,c1,...,cn`.
        #[arg(long)]
        class: String,
    },
    /// Picard-rank drop of the crepant contraction of a set of roots.
    RankDrop {
        #[arg(long)]
        n: usize,
        /// Semicolon-separated roots, each a comma-separated vector.
        #[arg(long)]
        roots: String,
    },
}

fn parse_class(lat: &DPLattice, s: &str) -> Result<CurveClass> {
    let coords: Vec<i64> = s
        .split(',')
        .map(|v| {
            v.trim()
                .parse()
                .map_err(|_| Error::Input(format!("bad integer coordinate {v:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    CurveClass::classify(lat, coords)
}

pub fn run(ctx: &Context, cmd: DelpezzoCmd) -> Result<bool> {
    let mut out = Rendering::new();
    let margin = ctx.bound.unwrap_or(1) as i64;
    match cmd {
        DelpezzoCmd::MinusOne { n } => {
            let lat = DPLattice::new(n)?;
            let classes = enumerate_classes(&lat, -1, -1, margin);
            out.push("lattice", format!("Z^{{1,{n}}}"));
            out.push("degree", lat.degree());
            out.push("count", classes.len() as u64);
            out.push(
                "classes",
                classes.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            );
        }
        DelpezzoCmd::MinusTwo { n } => {
            let lat = DPLattice::new(n)?;
            let roots = enumerate_classes(&lat, -2, 0, margin);
            out.push("lattice", format!("Z^{{1,{n}}}"));
            out.push("count", roots.len() as u64);
            out.push(
                "classes",
                roots.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            );
        }
        DelpezzoCmd::BlowDown { n, class } => {
            let lat = DPLattice::new(n)?;
            let c = parse_class(&lat, &class)?;
            let history = blow_down_reduction(&lat, &c)?;
            let down = DPLattice::new(n - 1)?;
            out.push("contracted", c.to_string());
            out.push(
                "reduction",
                history.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
            );
            out.push("new_n", down.n() as u64);
            out.push("new_degree", down.degree());
        }
        DelpezzoCmd::RankDrop { n, roots } => {
            let lat = DPLattice::new(n)?;
            let roots = roots
                .split(';')
                .map(|r| parse_class(&lat, r))
                .collect::<Result<Vec<_>>>()?;
            let drop = crepant_rank_drop(&lat, &roots)?;
            out.push("roots", roots.iter().map(|r| r.to_string()).collect::<Vec<_>>());
            out.push("rank_drop", drop as u64);
        }
    }
    out.print(ctx.format);
    Ok(true)
}
