use clap::Subcommand;
use manin_core::Result;

use super::{cone_fields, parse_vector, Context};
use crate::output::Rendering;

#[derive(Subcommand)]
pub enum ConeCmd {
    /// Canonicalize a cone from a dataset: generators and facets.
    Build {
        /// Cone reference: `pseff:<space>`, `nef:<space>` or a cone name.
        #[arg(long)]
        cone: String,
    },
    /// Dual cone under the dataset pairing.
    Dual {
        #[arg(long)]
        cone: String,
    },
    /// Exact membership test.
    Contains {
        #[arg(long)]
        cone: String,
        /// Comma-separated rational coordinates, e.g. `1,0,-1/2`.
        #[arg(long)]
        vector: String,
    },
    /// Minimal supported face containing a vector, with its codimension.
    Face {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        vector: String,
    },
}

pub fn run(ctx: &Context, cmd: ConeCmd) -> Result<bool> {
    let cs = ctx.dataset()?;
    let mut out = Rendering::new();
    match cmd {
        ConeCmd::Build { cone } => {
            let c = cs.resolve_cone(&cone)?;
            let (gens, facets) = cone_fields(c);
            out.push("cone", cone.as_str());
            out.push("ambient_dim", c.ambient_dim());
            out.push("generators", gens);
            out.push("facets", facets);
        }
        ConeCmd::Dual { cone } => {
            let d = cs.resolve_cone(&cone)?.dual()?;
            let (gens, facets) = cone_fields(&d);
            out.push("dual_of", cone.as_str());
            out.push("generators", gens);
            out.push("facets", facets);
        }
        ConeCmd::Contains { cone, vector } => {
            let c = cs.resolve_cone(&cone)?;
            let x = parse_vector(&vector)?;
            out.push("cone", cone.as_str());
            out.push("vector", x.to_strings().join(","));
            out.push("contains", c.contains(&x)?);
        }
        ConeCmd::Face { cone, vector } => {
            let c = cs.resolve_cone(&cone)?;
            let x = parse_vector(&vector)?;
            let (face, codim) = c.minimal_supported_face(&x)?;
            let (gens, _) = cone_fields(&face);
            out.push("cone", cone.as_str());
            out.push("vector", x.to_strings().join(","));
            out.push("codim", codim);
            out.push("face_generators", gens);
        }
    }
    out.print(ctx.format);
    Ok(true)
}
