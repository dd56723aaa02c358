use clap::Subcommand;
use manin_core::fujita::{
    adjoint_hilbert_check, bigness_criterion, bigness_dim3_improved, rigid_surface_volume_check,
    surface_cover_a_bound, surface_rational_curve_criterion, weak_dp_cover_b_bound,
    BignessStatus, GeometricWitness, RigidVolumeStatus, Verdict,
};
use manin_core::rat::{format_rat, parse_rat};
use manin_core::{Error, Result};

use super::Context;
use crate::output::Rendering;

#[derive(Subcommand)]
pub enum FujitaCmd {
    /// Dimension-dependent bigness of K_X + L from volume and degree data.
    Bigness {
        #[arg(long)]
        dim: u8,
        #[arg(long)]
        vol: String,
        /// Infimum of L·C over curves through a general point.
        #[arg(long)]
        min_curve: Option<String>,
        /// Infimum of L²·S over surfaces through a general point (dim 3).
        #[arg(long)]
        min_surface: Option<String>,
    },
    /// Threefold criterion with rational curves only: Vol > 64, L·C > 3.
    Improved3 {
        #[arg(long)]
        vol: String,
        #[arg(long)]
        min_rational_curve: String,
    },
    /// Surface criterion: L·C > 3 for every rational curve.
    SurfaceCurve {
        #[arg(long)]
        min_rational_curve: String,
    },
    /// Rigid-adjoint volume bound a²·Vol ≤ 9 for surfaces.
    RigidVolume {
        #[arg(long)]
        a: String,
        #[arg(long)]
        vol: String,
    },
    /// Cover bound on a²: a(Y, π*L)² ≤ 9/(d·e).
    CoverABound {
        /// Degree of the weak del Pezzo base.
        #[arg(long)]
        degree: u64,
        /// Degree of the generically finite cover.
        #[arg(long)]
        cover_degree: u64,
    },
    /// Degree bookkeeping d·e ≤ 9 and b(Y) ≤ 10 − d·e for rigid covers.
    CoverBBound {
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        cover_degree: u64,
    },
    /// Interpolate adjoint section counts and read off the top intersection.
    Hilbert {
        #[arg(long)]
        n: usize,
        /// Comma-separated section counts at r = 1..n+1, e.g. `0,1,4`.
        #[arg(long)]
        values: String,
    },
}

fn push_verdict(out: &mut Rendering, v: &Verdict) {
    out.push(
        "status",
        match v.status {
            BignessStatus::ImpliesBig => "implies_big",
            BignessStatus::Inconclusive => "inconclusive",
        },
    );
    out.push("cited_rule", v.cited_rule.as_str());
}

pub fn run(ctx: &Context, cmd: FujitaCmd) -> Result<bool> {
    let mut out = Rendering::new();
    match cmd {
        FujitaCmd::Bigness {
            dim,
            vol,
            min_curve,
            min_surface,
        } => {
            let mut w = GeometricWitness::new(dim, parse_rat(&vol)?)?;
            if let Some(c) = min_curve {
                w = w.with_min_curve_deg(parse_rat(&c)?)?;
            }
            if let Some(s) = min_surface {
                w = w.with_min_surface_vol(parse_rat(&s)?)?;
            }
            let v = bigness_criterion(&w)?;
            out.push("dim", dim as u64);
            push_verdict(&mut out, &v);
        }
        FujitaCmd::Improved3 {
            vol,
            min_rational_curve,
        } => {
            let w = GeometricWitness::new(3, parse_rat(&vol)?)?
                .with_min_rational_curve_deg(parse_rat(&min_rational_curve)?)?;
            let v = bigness_dim3_improved(&w)?;
            push_verdict(&mut out, &v);
        }
        FujitaCmd::SurfaceCurve { min_rational_curve } => {
            let v = surface_rational_curve_criterion(&parse_rat(&min_rational_curve)?)?;
            push_verdict(&mut out, &v);
        }
        FujitaCmd::RigidVolume { a, vol } => {
            let status = rigid_surface_volume_check(&parse_rat(&a)?, &parse_rat(&vol)?)?;
            out.push(
                "status",
                match status {
                    RigidVolumeStatus::Consistent => "consistent",
                    RigidVolumeStatus::Violates => "violates",
                },
            );
            out.push("cited_rule", "rigid adjoint on a surface forces Vol(L) <= 9/a(X,L)^2");
        }
        FujitaCmd::CoverABound {
            degree,
            cover_degree,
        } => {
            let r = surface_cover_a_bound(degree, cover_degree)?;
            out.push("bound_sq", format_rat(&r.bound_sq));
            out.push(
                "strongly_a_unbalanced_excluded",
                r.strongly_a_unbalanced_excluded,
            );
        }
        FujitaCmd::CoverBBound {
            degree,
            cover_degree,
        } => {
            let r = weak_dp_cover_b_bound(degree, cover_degree)?;
            out.push("feasible", r.feasible);
            match r.b_upper {
                Some(b) => out.push("b_upper", b),
                None => out.push("b_upper", "none"),
            }
            out.push("balanced_forced", r.balanced_forced);
        }
        FujitaCmd::Hilbert { n, values } => {
            let values: Vec<u64> = values
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse()
                        .map_err(|_| Error::Input(format!("bad section count {v:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let r = adjoint_hilbert_check(n, &values)?;
            out.push("top_intersection", format_rat(&r.top_intersection));
            out.push("matches_projective", r.matches_projective);
            out.push("matches_quadric", r.matches_quadric);
        }
    }
    out.print(ctx.format);
    Ok(true)
}
