//! Explicit Fujita-type numerical criteria and cover bounds.
//!
//! All criteria are one-directional certificates: they answer `implies_big`
//! or `inconclusive`, never "not big", because the underlying statements
//! are sufficient conditions only. Every inequality is strict and compared
//! exactly; boundary values are inconclusive. Square-root bounds are
//! handled on squares so no irrational arithmetic is needed.

use num_traits::{One, Signed};

use crate::rat::{rat, ratio, Rat};
use crate::{Error, Result};

/// Numerical witness data for the bigness criteria: the volume of `L` and
/// the asserted infima of curve/surface degrees through a general point.
/// The geometric truth of the infima is the caller's responsibility; this
/// module only does the exact arithmetic.
#[derive(Clone, Debug)]
pub struct GeometricWitness {
    dim: u8,
    vol: Rat,
    min_curve_deg: Option<Rat>,
    min_rational_curve_deg: Option<Rat>,
    min_surface_vol: Option<Rat>,
}

impl GeometricWitness {
    pub fn new(dim: u8, vol: Rat) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Input(format!("dimension {dim} not in 1..=3")));
        }
        require_positive(&vol, "Vol(L)")?;
        Ok(GeometricWitness {
            dim,
            vol,
            min_curve_deg: None,
            min_rational_curve_deg: None,
            min_surface_vol: None,
        })
    }

    pub fn with_min_curve_deg(mut self, v: Rat) -> Result<Self> {
        require_positive(&v, "L·C")?;
        self.min_curve_deg = Some(v);
        Ok(self)
    }

    pub fn with_min_rational_curve_deg(mut self, v: Rat) -> Result<Self> {
        require_positive(&v, "L·C (rational curves)")?;
        self.min_rational_curve_deg = Some(v);
        Ok(self)
    }

    pub fn with_min_surface_vol(mut self, v: Rat) -> Result<Self> {
        require_positive(&v, "L²·S")?;
        self.min_surface_vol = Some(v);
        Ok(self)
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn vol(&self) -> &Rat {
        &self.vol
    }
}

fn require_positive(v: &Rat, what: &str) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::Input(format!("{what} must be positive")))
    }
}

fn missing(what: &str, dim: u8) -> Error {
    Error::Input(format!("dimension {dim} criterion needs {what}"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BignessStatus {
    ImpliesBig,
    Inconclusive,
}

/// Outcome of a bigness criterion together with the rule that was applied.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: BignessStatus,
    pub cited_rule: String,
}

impl Verdict {
    fn of(implies: bool, rule: &str) -> Verdict {
        Verdict {
            status: if implies {
                BignessStatus::ImpliesBig
            } else {
                BignessStatus::Inconclusive
            },
            cited_rule: rule.to_string(),
        }
    }

    pub fn implies_big(&self) -> bool {
        self.status == BignessStatus::ImpliesBig
    }
}

/// Dimension-dependent bigness of `K_X + L`:
/// curves need `Vol(L) > 2`; surfaces `Vol(L) > 9` and `L·C > 2` for curves
/// through a general point; threefolds `Vol(L) > 64`, `L²·S > 9` and
/// `L·C > 2`. The threefold volume constant 64 comes from the
/// Namikawa–Prokhorov degree bounds for terminal Fano threefolds.
pub fn bigness_criterion(w: &GeometricWitness) -> Result<Verdict> {
    match w.dim {
        1 => Ok(Verdict::of(
            w.vol > rat(2),
            "dim 1: Vol(L) > 2 implies K_X + L big",
        )),
        2 => {
            let c = w.min_curve_deg.as_ref().ok_or(missing("L·C", 2))?;
            Ok(Verdict::of(
                w.vol > rat(9) && *c > rat(2),
                "dim 2: Vol(L) > 9 and L·C > 2 through a general point imply K_X + L big",
            ))
        }
        3 => {
            let c = w.min_curve_deg.as_ref().ok_or(missing("L·C", 3))?;
            let s = w.min_surface_vol.as_ref().ok_or(missing("L²·S", 3))?;
            Ok(Verdict::of(
                w.vol > rat(64) && *s > rat(9) && *c > rat(2),
                "dim 3: Vol(L) > 64, L²·S > 9 and L·C > 2 through a general point imply K_X + L big",
            ))
        }
        _ => unreachable!("dimension validated at construction"),
    }
}

/// Threefold variant using only rational curves: `Vol(L) > 64` and
/// `L·C > 3` for every rational curve through a general point.
pub fn bigness_dim3_improved(w: &GeometricWitness) -> Result<Verdict> {
    if w.dim != 3 {
        return Err(Error::Input(format!(
            "rational-curve threefold criterion needs dim 3, got {}",
            w.dim
        )));
    }
    let c = w
        .min_rational_curve_deg
        .as_ref()
        .ok_or(missing("L·C over rational curves", 3))?;
    Ok(Verdict::of(
        w.vol > rat(64) && *c > rat(3),
        "dim 3: Vol(L) > 64 and L·C > 3 for every rational curve imply K_X + L big",
    ))
}

/// Surface criterion in Reider style: `L·C > 3` for every rational curve
/// through a general point implies `K_X + L` big.
pub fn surface_rational_curve_criterion(min_rational_curve_deg: &Rat) -> Result<Verdict> {
    require_positive(min_rational_curve_deg, "L·C")?;
    Ok(Verdict::of(
        *min_rational_curve_deg > rat(3),
        "dim 2: L·C > 3 for every rational curve through a general point implies K_X + L big",
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RigidVolumeStatus {
    Consistent,
    Violates,
}

/// Rigid-adjoint volume bound for surfaces: `Vol(L) ≤ 9 / a(X,L)²`,
/// compared exactly as `a²·Vol ≤ 9`. A violation certifies that the adjoint
/// divisor is not rigid.
pub fn rigid_surface_volume_check(a: &Rat, vol: &Rat) -> Result<RigidVolumeStatus> {
    require_positive(a, "a(X,L)")?;
    require_positive(vol, "Vol(L)")?;
    Ok(if a * a * vol <= rat(9) {
        RigidVolumeStatus::Consistent
    } else {
        RigidVolumeStatus::Violates
    })
}

/// Bound on `a(Y, π*L)²` for adjoint-rigid covers of a degree-`d` weak del
/// Pezzo surface by a degree-`e` cover: `Vol(π*L) = d·e` forces
/// `a² ≤ 9/(d·e)`. The comparison is kept on squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverABound {
    pub bound_sq: Rat,
    /// True when the bound forces `a(Y) < 1 = a(S, −K_S)`, so no
    /// adjoint-rigid cover preserving the `a`-value exists.
    pub strongly_a_unbalanced_excluded: bool,
}

pub fn surface_cover_a_bound(d: u64, e: u64) -> Result<CoverABound> {
    if d == 0 || e == 0 {
        return Err(Error::Input("degrees must be positive".into()));
    }
    let bound_sq = ratio(9, (d * e) as i64);
    let excluded = bound_sq < Rat::one();
    Ok(CoverABound {
        bound_sq,
        strongly_a_unbalanced_excluded: excluded,
    })
}

/// Degree bookkeeping for rigid covers of weak del Pezzo surfaces:
/// a degree-`e` cover of a degree-`d` surface contracts to a weak del Pezzo
/// of degree `d' ≥ d·e`, so `d·e ≤ 9` is necessary, and then
/// `b(Y, f*L) = ρ(Y') = 10 − d' ≤ 10 − d·e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverBBound {
    pub feasible: bool,
    pub b_upper: Option<u64>,
    /// True when `e ≥ 2` already forces `b(Y) < ρ(S)`, hence balance.
    pub balanced_forced: bool,
}

pub fn weak_dp_cover_b_bound(d: u64, e: u64) -> Result<CoverBBound> {
    if !(1..=9).contains(&d) {
        return Err(Error::Input(format!(
            "weak del Pezzo degree {d} outside 1..=9"
        )));
    }
    if e == 0 {
        return Err(Error::Input("cover degree must be positive".into()));
    }
    if d * e > 9 {
        return Ok(CoverBBound {
            feasible: false,
            b_upper: None,
            balanced_forced: false,
        });
    }
    let b_upper = 10 - d * e;
    Ok(CoverBBound {
        feasible: true,
        b_upper: Some(b_upper),
        balanced_forced: e >= 2 && b_upper < 10 - d,
    })
}

/// Result of the adjoint Hilbert-polynomial check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertCheck {
    /// `n!` times the leading coefficient of the degree-`≤ n` interpolant,
    /// i.e. the top self-intersection predicted by Riemann–Roch.
    pub top_intersection: Rat,
    pub matches_projective: bool,
    pub matches_quadric: bool,
}

/// Interpolates the unique polynomial of degree `≤ n` through
/// `(r, values[r−1])` for `r = 1..n+1` and reads off `n!` times the leading
/// coefficient as the `n`-th finite difference. The projective-space
/// pattern `(0,…,0,1)` has top intersection 1; the quadric pattern
/// `(0,…,0,1,n+2)` has top intersection 2.
pub fn adjoint_hilbert_check(n: usize, values: &[u64]) -> Result<HilbertCheck> {
    if n == 0 {
        return Err(Error::Input("dimension n must be positive".into()));
    }
    if values.len() != n + 1 {
        return Err(Error::Input(format!(
            "need exactly {} values at r = 1..{}, got {}",
            n + 1,
            n + 1,
            values.len()
        )));
    }
    let mut diff: Vec<Rat> = values.iter().map(|&v| rat(v as i64)).collect();
    for _ in 0..n {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    let top = diff[0].clone();
    let mut projective = vec![0u64; n + 1];
    projective[n] = 1;
    let mut quadric = vec![0u64; n + 1];
    quadric[n - 1] = 1;
    quadric[n] = (n as u64) + 2;
    Ok(HilbertCheck {
        top_intersection: top,
        matches_projective: values == projective,
        matches_quadric: values == quadric,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness(dim: u8, vol: i64) -> GeometricWitness {
        GeometricWitness::new(dim, rat(vol)).unwrap()
    }

    #[test]
    fn curve_boundary_is_strict() {
        assert!(!bigness_criterion(&witness(1, 2)).unwrap().implies_big());
        assert!(bigness_criterion(&witness(1, 3)).unwrap().implies_big());
    }

    #[test]
    fn surface_criterion() {
        let w = witness(2, 10).with_min_curve_deg(rat(3)).unwrap();
        assert!(bigness_criterion(&w).unwrap().implies_big());
        let w = witness(2, 9).with_min_curve_deg(rat(3)).unwrap();
        assert!(!bigness_criterion(&w).unwrap().implies_big());
        let w = witness(2, 10).with_min_curve_deg(rat(2)).unwrap();
        assert!(!bigness_criterion(&w).unwrap().implies_big());
        assert!(bigness_criterion(&witness(2, 10)).is_err());
    }

    #[test]
    fn threefold_criterion() {
        let w = witness(3, 65)
            .with_min_surface_vol(rat(10))
            .unwrap()
            .with_min_curve_deg(rat(3))
            .unwrap();
        assert!(bigness_criterion(&w).unwrap().implies_big());
        let w = witness(3, 64)
            .with_min_surface_vol(rat(10))
            .unwrap()
            .with_min_curve_deg(rat(3))
            .unwrap();
        assert!(!bigness_criterion(&w).unwrap().implies_big());
    }

    #[test]
    fn threefold_rational_curve_variant() {
        let w = witness(3, 65).with_min_rational_curve_deg(rat(4)).unwrap();
        assert!(bigness_dim3_improved(&w).unwrap().implies_big());
        let w = witness(3, 64).with_min_rational_curve_deg(rat(10)).unwrap();
        assert!(!bigness_dim3_improved(&w).unwrap().implies_big());
        let w = witness(3, 100).with_min_rational_curve_deg(rat(3)).unwrap();
        assert!(!bigness_dim3_improved(&w).unwrap().implies_big());
    }

    #[test]
    fn surface_rational_curves() {
        assert!(surface_rational_curve_criterion(&rat(4)).unwrap().implies_big());
        assert!(!surface_rational_curve_criterion(&rat(3)).unwrap().implies_big());
        assert!(surface_rational_curve_criterion(&ratio(7, 2))
            .unwrap()
            .implies_big());
    }

    #[test]
    fn rigid_volume_equalities() {
        assert_eq!(
            rigid_surface_volume_check(&rat(1), &rat(9)).unwrap(),
            RigidVolumeStatus::Consistent
        );
        assert_eq!(
            rigid_surface_volume_check(&rat(3), &rat(1)).unwrap(),
            RigidVolumeStatus::Consistent
        );
        assert_eq!(
            rigid_surface_volume_check(&rat(2), &rat(3)).unwrap(),
            RigidVolumeStatus::Violates
        );
    }

    #[test]
    fn cover_a_bound() {
        let r = surface_cover_a_bound(5, 2).unwrap();
        assert_eq!(r.bound_sq, ratio(9, 10));
        assert!(r.strongly_a_unbalanced_excluded);
        let r = surface_cover_a_bound(9, 1).unwrap();
        assert_eq!(r.bound_sq, rat(1));
        assert!(!r.strongly_a_unbalanced_excluded);
        let r = surface_cover_a_bound(1, 2).unwrap();
        assert_eq!(r.bound_sq, ratio(9, 2));
        assert!(!r.strongly_a_unbalanced_excluded);
    }

    #[test]
    fn cover_b_bound() {
        let r = weak_dp_cover_b_bound(4, 2).unwrap();
        assert!(r.feasible);
        assert_eq!(r.b_upper, Some(2));
        assert!(r.balanced_forced);
        let r = weak_dp_cover_b_bound(8, 2).unwrap();
        assert!(!r.feasible);
        let r = weak_dp_cover_b_bound(3, 1).unwrap();
        assert_eq!(r.b_upper, Some(7));
        assert!(!r.balanced_forced);
        assert!(weak_dp_cover_b_bound(10, 1).is_err());
    }

    #[test]
    fn hilbert_patterns() {
        let r = adjoint_hilbert_check(2, &[0, 0, 1]).unwrap();
        assert_eq!(r.top_intersection, rat(1));
        assert!(r.matches_projective && !r.matches_quadric);
        let r = adjoint_hilbert_check(2, &[0, 1, 4]).unwrap();
        assert_eq!(r.top_intersection, rat(2));
        assert!(r.matches_quadric && !r.matches_projective);
        let r = adjoint_hilbert_check(1, &[0, 1]).unwrap();
        assert_eq!(r.top_intersection, rat(1));
        assert!(r.matches_projective);
        assert!(adjoint_hilbert_check(2, &[0, 1]).is_err());
    }

    #[test]
    fn verdicts_are_monotone() {
        // increasing any witness value never flips implies_big back to
        // inconclusive
        let grid: Vec<Rat> = (1..=14).map(rat).collect();
        let mut last_implied = false;
        for v in &grid {
            let implied = bigness_criterion(&GeometricWitness::new(1, v.clone()).unwrap())
                .unwrap()
                .implies_big();
            assert!(implied || !last_implied);
            last_implied = implied;
        }
        for vol in &grid {
            let mut last = false;
            for c in &grid {
                let w = GeometricWitness::new(2, vol.clone())
                    .unwrap()
                    .with_min_curve_deg(c.clone())
                    .unwrap();
                let implied = bigness_criterion(&w).unwrap().implies_big();
                assert!(implied || !last, "vol={vol} c={c}");
                last = implied;
            }
        }
        let mut last = false;
        for c in &grid {
            let implied = surface_rational_curve_criterion(c).unwrap().implies_big();
            assert!(implied || !last);
            last = implied;
        }
    }

    #[test]
    fn cover_a_bound_composes() {
        for d in 1..=9u64 {
            assert_eq!(surface_cover_a_bound(d, 1).unwrap().bound_sq, ratio(9, d as i64));
            for e1 in 1..=4u64 {
                for e2 in 1..=4u64 {
                    assert_eq!(
                        surface_cover_a_bound(d, e1 * e2).unwrap().bound_sq,
                        surface_cover_a_bound(d * e1, e2).unwrap().bound_sq
                    );
                }
            }
        }
    }

    #[test]
    fn cover_b_bound_bookkeeping() {
        // b_upper + d·e = 10 whenever feasible
        for d in 1..=9u64 {
            for e in 1..=9u64 {
                let r = weak_dp_cover_b_bound(d, e).unwrap();
                if let Some(b) = r.b_upper {
                    assert!(r.feasible);
                    assert_eq!(b + d * e, 10);
                } else {
                    assert!(!r.feasible);
                }
            }
        }
    }

    #[test]
    fn binomial_samples_have_top_one() {
        // P(r) = C(r-1, n) sampled at r = 1..n+1 gives top intersection 1
        for n in 1..=6usize {
            let choose = |r: u64, k: u64| -> u64 {
                if r < k {
                    return 0;
                }
                (0..k).fold(1u64, |acc, i| acc * (r - i) / (i + 1))
            };
            let values: Vec<u64> = (1..=(n as u64 + 1))
                .map(|r| choose(r - 1, n as u64))
                .collect();
            let res = adjoint_hilbert_check(n, &values).unwrap();
            assert_eq!(res.top_intersection, rat(1));
            assert!(res.matches_projective);
        }
    }
}
