//! The Fujita invariant `a(X, L)`, the adjoint class, geometric and
//! Galois-equivariant `b`-invariants, and balanced-property comparisons.
//!
//! A [`PolarizedSpace`] is a Néron–Severi lattice model: a pseudo-effective
//! cone, a canonical class `K` and a big polarization `L`. Because the cone
//! is rational polyhedral, `a(X, L) = min { t : t·L + K ∈ Λ_eff }` has the
//! closed form `max_v (−v·K)/(v·L)` over the facet normals `v`, and is
//! always rational. The `b`-invariant is the codimension of the minimal
//! supported face of `Λ_eff` containing the adjoint class `a·L + K`.
//!
//! Over a non-closed ground field the `b`-invariant is modeled through a
//! finite [`GroupAction`] on the geometric lattice:
//! `b = dim N¹(X̄)^G − dim (N¹(X̄)^G ∩ span(rigid components))`,
//! valid when the adjoint divisor is rigid.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::cone::PolyCone;
use crate::matrix::{intersection_dim, Mat};
use crate::rat::{rat, Rat, RatVec};
use crate::{Error, Result};

/// An NS-lattice model: rank, pseudo-effective cone, canonical class,
/// polarization, optional nef cone, optional adjoint-rigidity assertion.
#[derive(Clone, Debug)]
pub struct PolarizedSpace {
    name: String,
    basis_labels: Vec<String>,
    pseff: PolyCone,
    k: RatVec,
    l: RatVec,
    nef: Option<PolyCone>,
    adjoint_rigid: Option<bool>,
}

impl PolarizedSpace {
    /// Validates and builds a polarized space. `L` must be big, i.e. pair
    /// strictly positively with every facet normal of the pseudo-effective
    /// cone; a nef cone, when given, must sit inside the pseudo-effective
    /// cone.
    pub fn new(
        name: impl Into<String>,
        basis_labels: Vec<String>,
        pseff: PolyCone,
        k: RatVec,
        l: RatVec,
        nef: Option<PolyCone>,
        adjoint_rigid: Option<bool>,
    ) -> Result<Self> {
        let name = name.into();
        let rank = pseff.ambient_dim();
        if !basis_labels.is_empty() && basis_labels.len() != rank {
            return Err(Error::Dimension(format!(
                "space {name}: {} basis labels for rank {rank}",
                basis_labels.len()
            )));
        }
        k.expect_dim(rank, "canonical class")?;
        l.expect_dim(rank, "polarization")?;
        if !is_big(&pseff, &l) {
            return Err(Error::PolarizationNotBig);
        }
        if let Some(nef) = &nef {
            if nef.ambient_dim() != rank {
                return Err(Error::Dimension(format!(
                    "space {name}: nef cone dimension {} != rank {rank}",
                    nef.ambient_dim()
                )));
            }
            for g in nef.generators() {
                if !pseff.contains(g)? {
                    return Err(Error::Input(format!(
                        "space {name}: nef generator {g} is not pseudo-effective"
                    )));
                }
            }
        }
        Ok(PolarizedSpace {
            name,
            basis_labels,
            pseff,
            k,
            l,
            nef,
            adjoint_rigid,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rank(&self) -> usize {
        self.pseff.ambient_dim()
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn pseff(&self) -> &PolyCone {
        &self.pseff
    }

    pub fn canonical_class(&self) -> &RatVec {
        &self.k
    }

    pub fn polarization(&self) -> &RatVec {
        &self.l
    }

    pub fn nef(&self) -> Option<&PolyCone> {
        self.nef.as_ref()
    }

    pub fn adjoint_rigid(&self) -> Option<bool> {
        self.adjoint_rigid
    }

    /// Same space with a different big polarization.
    pub fn with_polarization(&self, l: RatVec) -> Result<Self> {
        PolarizedSpace::new(
            self.name.clone(),
            self.basis_labels.clone(),
            self.pseff.clone(),
            self.k.clone(),
            l,
            self.nef.clone(),
            self.adjoint_rigid,
        )
    }
}

/// Interior membership: strictly positive against every facet normal.
fn is_big(pseff: &PolyCone, l: &RatVec) -> bool {
    l.dim() == pseff.ambient_dim()
        && pseff
            .facets()
            .iter()
            .all(|f| pseff.pairing().eval(f, l).is_positive())
}

/// The Fujita invariant: the least `t` with `t·L + K` pseudo-effective,
/// computed in closed form as the maximum of `(−v·K)/(v·L)` over facet
/// normals `v`. The polarization is big, so every `v·L` is positive and the
/// maximum is attained; `t·L + K` is then boundary-tight.
pub fn a_invariant(space: &PolarizedSpace) -> Result<Rat> {
    let pseff = space.pseff();
    let pairing = pseff.pairing();
    let mut best: Option<Rat> = None;
    for v in pseff.facets() {
        let vk = pairing.eval(v, space.canonical_class());
        let vl = pairing.eval(v, space.polarization());
        debug_assert!(vl.is_positive(), "L validated big at construction");
        let t = -vk / vl;
        best = Some(match best {
            Some(b) if b >= t => b,
            _ => t,
        });
    }
    best.ok_or(Error::PolarizationNotBig)
}

/// The adjoint class `a(X, L)·L + K`, a boundary point of the
/// pseudo-effective cone.
pub fn adjoint_class(space: &PolarizedSpace) -> Result<RatVec> {
    let a = a_invariant(space)?;
    Ok(space.polarization().scaled(&a).add(space.canonical_class()))
}

/// The codimension of the minimal supported face of the pseudo-effective
/// cone containing the adjoint class. Equals the rank when the adjoint
/// class is zero.
pub fn b_invariant(space: &PolarizedSpace) -> Result<usize> {
    let adjoint = adjoint_class(space)?;
    let (_, codim) = space.pseff().minimal_supported_face(&adjoint)?;
    Ok(codim)
}

/// The `(a, b)` pair compared in the lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbPair {
    pub a: Rat,
    pub b: usize,
}

impl AbPair {
    pub fn new(a: Rat, b: usize) -> Self {
        AbPair { a, b }
    }
}

impl fmt::Display for AbPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", crate::rat::format_rat(&self.a), self.b)
    }
}

/// Full result of the `a`/`b` computation on a polarized space.
#[derive(Clone, Debug)]
pub struct ABResult {
    pub a: Rat,
    pub b: usize,
    pub adjoint_class: RatVec,
    pub tight_facets: Vec<RatVec>,
}

impl ABResult {
    pub fn pair(&self) -> AbPair {
        AbPair::new(self.a.clone(), self.b)
    }
}

/// Computes `a`, the adjoint class, its tight facets and `b` in one pass.
pub fn ab_result(space: &PolarizedSpace) -> Result<ABResult> {
    let a = a_invariant(space)?;
    let adjoint = space.polarization().scaled(&a).add(space.canonical_class());
    let tight = space.pseff().tight_facets(&adjoint);
    debug_assert!(!tight.is_empty(), "adjoint class is boundary-tight");
    let (_, b) = space.pseff().minimal_supported_face(&adjoint)?;
    Ok(ABResult {
        a,
        b,
        adjoint_class: adjoint,
        tight_facets: tight,
    })
}

/// Lexicographic comparison of `(a, b)` pairs.
pub fn compare_lex(left: &AbPair, right: &AbPair) -> Ordering {
    left.a.cmp(&right.a).then(left.b.cmp(&right.b))
}

/// Verdict of the balanced-property comparison for a cover or subvariety
/// `other` against the ambient `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BalancedVerdict {
    Balanced,
    WeaklyBalancedOnly,
    NotWeaklyBalanced,
    PullbackNotBig,
}

impl BalancedVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            BalancedVerdict::Balanced => "balanced",
            BalancedVerdict::WeaklyBalancedOnly => "weakly_balanced_only",
            BalancedVerdict::NotWeaklyBalanced => "not_weakly_balanced",
            BalancedVerdict::PullbackNotBig => "pullback_not_big",
        }
    }
}

impl fmt::Display for BalancedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The balanced property holds when the cover's pair is strictly smaller;
/// equality is only weak balance; a bigger pair breaks even weak balance.
pub fn balanced_verdict(base: &AbPair, other: &AbPair, pullback_big: bool) -> BalancedVerdict {
    if !pullback_big {
        return BalancedVerdict::PullbackNotBig;
    }
    match compare_lex(other, base) {
        Ordering::Less => BalancedVerdict::Balanced,
        Ordering::Equal => BalancedVerdict::WeaklyBalancedOnly,
        Ordering::Greater => BalancedVerdict::NotWeaklyBalanced,
    }
}

/// Square integer matrix acting on the lattice (entries stay small; group
/// elements are signed permutation-like matrices in all our models).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Input("group generator must be square".into()));
        }
        Ok(IntMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix {
            rows: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.size();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| self.rows[i][k] * other.rows[k][j]).sum())
                    .collect()
            })
            .collect();
        IntMatrix { rows }
    }

    pub fn apply(&self, v: &RatVec) -> RatVec {
        RatVec::new(
            self.rows
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(v.iter())
                        .map(|(c, x)| rat(*c) * x)
                        .sum::<Rat>()
                })
                .collect(),
        )
    }

    fn to_mat(&self) -> Mat {
        Mat::from_rows(
            self.rows.iter().map(|r| RatVec::from_ints(r)).collect(),
            self.size(),
        )
    }
}

/// Default cap on group-closure enumeration. Exceeding the cap is an error,
/// never a silent truncation.
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// A finite matrix group acting on the geometric Néron–Severi lattice,
/// together with the classes of the geometric components of the rigid
/// effective divisor numerically equivalent to the adjoint class.
#[derive(Clone, Debug)]
pub struct GroupAction {
    generators: Vec<IntMatrix>,
    rigid_components: Vec<RatVec>,
    closure_bound: usize,
}

impl GroupAction {
    pub fn new(generators: Vec<IntMatrix>, rigid_components: Vec<RatVec>) -> Self {
        GroupAction {
            generators,
            rigid_components,
            closure_bound: DEFAULT_CLOSURE_BOUND,
        }
    }

    pub fn with_closure_bound(mut self, bound: usize) -> Self {
        self.closure_bound = bound;
        self
    }

    pub fn generators(&self) -> &[IntMatrix] {
        &self.generators
    }

    pub fn rigid_components(&self) -> &[RatVec] {
        &self.rigid_components
    }

    pub fn closure_bound(&self) -> usize {
        self.closure_bound
    }

    /// Enumerates the generated group; errors when the closure exceeds the
    /// configured bound (so an accidentally infinite group cannot loop).
    pub fn group_order(&self, rank: usize) -> Result<usize> {
        let mut seen: HashSet<IntMatrix> = HashSet::new();
        let identity = IntMatrix::identity(rank);
        seen.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(g) = frontier.pop() {
            for m in &self.generators {
                let next = m.mul(&g);
                if seen.insert(next.clone()) {
                    if seen.len() > self.closure_bound {
                        return Err(Error::ClosureExceeded {
                            bound: self.closure_bound,
                        });
                    }
                    frontier.push(next);
                }
            }
        }
        Ok(seen.len())
    }

    /// Validates the action against a lattice model: square matrices of the
    /// right size, invertible, fixing `K` and `L`, permuting the canonical
    /// pseudo-effective generators (when a cone is available) and permuting
    /// the rigid components as a set; the generated group must be finite
    /// within the closure bound.
    pub fn validate(
        &self,
        rank: usize,
        k: &RatVec,
        l: &RatVec,
        pseff_generators: Option<&[RatVec]>,
    ) -> Result<usize> {
        for m in &self.generators {
            if m.size() != rank {
                return Err(Error::Action(format!(
                    "generator is {}x{}, expected {rank}x{rank}",
                    m.size(),
                    m.size()
                )));
            }
            if m.to_mat().inverse().is_none() {
                return Err(Error::Action("generator matrix is singular".into()));
            }
            if m.apply(k) != *k {
                return Err(Error::Action(format!(
                    "generator does not fix the canonical class {k}"
                )));
            }
            if m.apply(l) != *l {
                return Err(Error::Action(format!(
                    "generator does not fix the polarization {l}"
                )));
            }
            if let Some(gens) = pseff_generators {
                let mut image: Vec<RatVec> =
                    gens.iter().map(|g| m.apply(g).primitive_ray()).collect();
                image.sort();
                let mut expect = gens.to_vec();
                expect.sort();
                if image != expect {
                    return Err(Error::Action(
                        "generator does not permute the pseudo-effective generators".into(),
                    ));
                }
            }
            let mut image: Vec<RatVec> = self
                .rigid_components
                .iter()
                .map(|c| m.apply(c).primitive_ray())
                .collect();
            image.sort();
            let mut expect: Vec<RatVec> = self
                .rigid_components
                .iter()
                .map(|c| c.primitive_ray())
                .collect();
            expect.sort();
            if image != expect {
                return Err(Error::Action(
                    "generator does not permute the rigid components".into(),
                ));
            }
        }
        for c in &self.rigid_components {
            c.expect_dim(rank, "rigid component")?;
        }
        self.group_order(rank)
    }

    /// Basis of the `G`-fixed subspace: the rational solution space of
    /// `(M − I) x = 0` over all generator matrices `M`.
    pub fn fixed_subspace(&self, rank: usize) -> Vec<RatVec> {
        let mut rows: Vec<RatVec> = Vec::new();
        for m in &self.generators {
            for (i, row) in m.rows().iter().enumerate() {
                let delta: Vec<Rat> = row
                    .iter()
                    .enumerate()
                    .map(|(j, c)| rat(*c) - if i == j { rat(1) } else { Rat::zero() })
                    .collect();
                rows.push(RatVec::new(delta));
            }
        }
        if rows.is_empty() {
            return Mat::identity(rank).rows().to_vec();
        }
        Mat::from_rows(rows, rank).nullspace()
    }

    /// `dim Fix(G) − dim (Fix(G) ∩ span(rigid components))`, the equivariant
    /// `b`-value. No validation; callers go through [`b_equivariant`] or
    /// validate separately.
    pub fn equivariant_b_value(&self, rank: usize) -> usize {
        let fix = self.fixed_subspace(rank);
        let overlap = intersection_dim(&fix, &self.rigid_components, rank);
        fix.len() - overlap
    }
}

/// Galois-equivariant `b`-invariant of a polarized space under a finite
/// action. Requires the adjoint-rigid flag: the formula
/// `dim N¹(X̄)^G − dim (N¹(X̄)^G ∩ span V')` is only valid in the rigid case.
pub fn b_equivariant(space: &PolarizedSpace, action: &GroupAction) -> Result<usize> {
    if space.adjoint_rigid() != Some(true) {
        return Err(Error::AdjointNotRigid);
    }
    action.validate(
        space.rank(),
        space.canonical_class(),
        space.polarization(),
        Some(space.pseff().generators()),
    )?;
    Ok(action.equivariant_b_value(space.rank()))
}
