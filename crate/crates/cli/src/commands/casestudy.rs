use clap::Subcommand;
use manin_core::casestudy::{
    bundled_names, check_table_consistency, verify_case_study, SCHEMA_NOTES,
};
use manin_core::Result;

use super::Context;
use crate::output::{Format, Rendering};

#[derive(Subcommand)]
pub enum CasestudyCmd {
    /// Bundled dataset names and the dataset file schema.
    List,
    /// Load and validate a dataset, printing a summary.
    Load { name: String },
    /// Recompute every expected quantity; exit 1 on any mismatch.
    Verify { name: String },
    /// Re-derive the intersection tables from the declared relations.
    Tables { name: String },
}

pub fn run(ctx: &Context, cmd: CasestudyCmd) -> Result<bool> {
    match cmd {
        CasestudyCmd::List => {
            let mut out = Rendering::new();
            out.push(
                "bundled",
                bundled_names()
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>(),
            );
            out.push("schema", SCHEMA_NOTES);
            out.print(ctx.format);
            Ok(true)
        }
        CasestudyCmd::Load { name } => {
            let ctx2 = Context {
                format: ctx.format,
                dataset: Some(name),
                bound: ctx.bound,
            };
            let cs = ctx2.dataset()?;
            let mut out = Rendering::new();
            out.push("name", cs.name.as_str());
            out.push("spaces", cs.spaces.keys().cloned().collect::<Vec<_>>());
            out.push("lattices", cs.lattices.keys().cloned().collect::<Vec<_>>());
            out.push("cones", cs.cones.keys().cloned().collect::<Vec<_>>());
            out.push("pairings", cs.pairings.keys().cloned().collect::<Vec<_>>());
            out.push("actions", cs.actions.keys().cloned().collect::<Vec<_>>());
            out.push("expected_quantities", cs.expected.len() as u64);
            out.push("notes", cs.notes.as_str());
            out.print(ctx.format);
            Ok(true)
        }
        CasestudyCmd::Verify { name } => {
            let ctx2 = Context {
                format: ctx.format,
                dataset: Some(name),
                bound: ctx.bound,
            };
            let cs = ctx2.dataset()?;
            let report = verify_case_study(&cs)?;
            match ctx.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Structured => println!("{}", report.to_structured()),
            }
            Ok(report.all_pass())
        }
        CasestudyCmd::Tables { name } => {
            let ctx2 = Context {
                format: ctx.format,
                dataset: Some(name),
                bound: ctx.bound,
            };
            let cs = ctx2.dataset()?;
            let report = check_table_consistency(&cs)?;
            match ctx.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Structured => println!("{}", report.to_structured()),
            }
            Ok(report.all_pass())
        }
    }
}
