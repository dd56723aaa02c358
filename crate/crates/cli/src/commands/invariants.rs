use clap::Subcommand;
use manin_core::casestudy::{projective_space_model, quadric_model};
use manin_core::invariants::{ab_result, balanced_verdict, compare_lex, AbPair};
use manin_core::rat::{format_rat, parse_rat};
use manin_core::{Error, Result};

use super::{parse_vector, Context};
use crate::output::Rendering;

#[derive(Subcommand)]
pub enum InvariantsCmd {
    /// a(X,L), adjoint class, tight facets and b for a space.
    Compute {
        /// Space name in the dataset, or a builtin family `pn` / `quadric`.
        #[arg(long)]
        space: String,
        /// Parameter for the builtin families.
        #[arg(long)]
        n: Option<u32>,
        /// Override the polarization with comma-separated coordinates.
        #[arg(long, name = "l")]
        with_l: Option<String>,
    },
    /// Galois-equivariant b-value of a named action.
    Equivariant {
        #[arg(long)]
        action: String,
    },
    /// Lexicographic comparison and balanced verdict of two (a, b) pairs.
    Compare {
        /// Base pair `a,b`, e.g. `1,3`.
        #[arg(long)]
        base: String,
        /// Cover/subvariety pair `a,b`.
        #[arg(long)]
        other: String,
        /// Assert that the pullback of L is not big.
        #[arg(long, default_value_t = false)]
        pullback_not_big: bool,
    },
}

fn parse_pair(s: &str) -> Result<AbPair> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Input(format!("pair must be `a,b`, got {s:?}")))?;
    Ok(AbPair::new(
        parse_rat(a.trim())?,
        b.trim()
            .parse()
            .map_err(|_| Error::Input(format!("b must be a nonnegative integer, got {b:?}")))?,
    ))
}

pub fn run(ctx: &Context, cmd: InvariantsCmd) -> Result<bool> {
    let mut out = Rendering::new();
    match cmd {
        InvariantsCmd::Compute { space, n, with_l } => {
            let model = match (space.as_str(), n) {
                ("pn", Some(n)) => projective_space_model(n)?,
                ("quadric", Some(n)) => quadric_model(n)?,
                ("pn" | "quadric", None) => {
                    return Err(Error::Input(format!("builtin space {space:?} needs --n")))
                }
                _ => ctx.dataset()?.space(&space)?.clone(),
            };
            let model = match with_l {
                Some(l) => model.with_polarization(parse_vector(&l)?)?,
                None => model,
            };
            let res = ab_result(&model)?;
            out.push("space", model.name());
            out.push("rank", model.rank());
            out.push("a", format_rat(&res.a));
            out.push("b", res.b as u64);
            out.push("adjoint_class", res.adjoint_class.to_strings().join(","));
            out.push(
                "tight_facets",
                res.tight_facets
                    .iter()
                    .map(|f| f.to_strings().join(","))
                    .collect::<Vec<_>>(),
            );
        }
        InvariantsCmd::Equivariant { action } => {
            let cs = ctx.dataset()?;
            let b = cs.equivariant_b(&action)?;
            out.push("action", action.as_str());
            out.push("b_equivariant", b as u64);
        }
        InvariantsCmd::Compare {
            base,
            other,
            pullback_not_big,
        } => {
            let base = parse_pair(&base)?;
            let other = parse_pair(&other)?;
            let order = match compare_lex(&other, &base) {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            let verdict = balanced_verdict(&base, &other, !pullback_not_big);
            out.push("base", base.to_string());
            out.push("other", other.to_string());
            out.push("other_vs_base", order);
            out.push("verdict", verdict.as_str());
        }
    }
    out.print(ctx.format);
    Ok(true)
}
