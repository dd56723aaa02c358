//! Finitely generated rational convex cones with synchronized generator (V)
//! and facet (H) representations, converted exactly by the double
//! description method.
//!
//! A [`PolyCone`] lives in the column space of its [`PairingForm`]; its facet
//! normals live in the row space. Both representations are stored in
//! canonical primitive form (integer entries, gcd 1, positive ray scaling)
//! and sorted lexicographically, so equal cones compare bit-identically.
//!
//! Cones with lineality are rejected: every stored cone is pointed. Cones
//! need not be full-dimensional; for a cone spanning a proper subspace the
//! facet list carries `±n` pairs cutting out the span, which keeps
//! [`PolyCone::contains`] a plain sign check.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::matrix::{span_rank, Mat};
use crate::rat::{Rat, RatVec};
use crate::{Error, Result};

/// Exact bilinear pairing between two (possibly equal) class spaces.
///
/// `matrix[i][j]` is the intersection number of the `i`-th row-basis class
/// with the `j`-th column-basis class.
#[derive(Clone, PartialEq, Eq)]
pub struct PairingForm {
    matrix: Mat,
}

impl PairingForm {
    pub fn new(rows: Vec<RatVec>, cols: usize) -> Result<Self> {
        if rows.is_empty() || cols == 0 {
            return Err(Error::Input("pairing must have positive dimensions".into()));
        }
        for r in &rows {
            r.expect_dim(cols, "pairing row")?;
        }
        Ok(PairingForm {
            matrix: Mat::from_rows(rows, cols),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows[0].len();
        PairingForm::new(rows.iter().map(|r| RatVec::from_ints(r)).collect(), cols)
            .expect("integer pairing literals are well-formed")
    }

    pub fn identity(n: usize) -> Self {
        PairingForm {
            matrix: Mat::identity(n),
        }
    }

    pub fn row_dim(&self) -> usize {
        self.matrix.n_rows()
    }

    pub fn col_dim(&self) -> usize {
        self.matrix.n_cols()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// `facet . matrix . gen`, the number a facet normal assigns a generator.
    pub fn eval(&self, facet: &RatVec, gen: &RatVec) -> Rat {
        debug_assert_eq!(facet.dim(), self.row_dim());
        debug_assert_eq!(gen.dim(), self.col_dim());
        facet.dot(&self.matrix.mul_vec(gen))
    }

    /// The facet functional `x ↦ eval(facet, x)` as a column-space covector.
    pub fn functional(&self, facet: &RatVec) -> RatVec {
        self.matrix.transpose().mul_vec(facet)
    }

    /// The generator functional `u ↦ eval(u, gen)` as a row-space covector.
    pub fn cofunctional(&self, gen: &RatVec) -> RatVec {
        self.matrix.mul_vec(gen)
    }

    pub fn transpose(&self) -> PairingForm {
        PairingForm {
            matrix: self.matrix.transpose(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.row_dim() == self.col_dim() && self.matrix == self.matrix.transpose()
    }

    /// A pairing is perfect when it is square and invertible; cone duality
    /// is only defined against a perfect pairing.
    pub fn require_perfect(&self) -> Result<()> {
        if self.row_dim() != self.col_dim() {
            return Err(Error::Pairing(format!(
                "{}x{} pairing is not square",
                self.row_dim(),
                self.col_dim()
            )));
        }
        if self.matrix.rank() != self.col_dim() {
            return Err(Error::Pairing("pairing matrix is singular".into()));
        }
        Ok(())
    }
}

impl fmt::Debug for PairingForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PairingForm({}x{})", self.row_dim(), self.col_dim())
    }
}

/// Pointed rational polyhedral cone with both representations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyCone {
    generators: Vec<RatVec>,
    facets: Vec<RatVec>,
    pairing: PairingForm,
}

impl PolyCone {
    /// Builds a cone from generators, computing the facet representation,
    /// removing redundant generators and canonicalizing both sides.
    pub fn from_generators(gens: &[RatVec], pairing: PairingForm) -> Result<PolyCone> {
        pairing.require_perfect()?;
        let dim = pairing.col_dim();
        if gens.is_empty() {
            return Err(Error::Input(
                "no generators; use PolyCone::zero for the zero cone".into(),
            ));
        }
        let mut prim: Vec<RatVec> = Vec::new();
        for g in gens {
            g.expect_dim(dim, "cone generator")?;
            let p = g.primitive_ray();
            if !p.is_zero() {
                prim.push(p);
            }
        }
        prim.sort();
        prim.dedup();
        if prim.is_empty() {
            return PolyCone::zero(pairing);
        }
        for g in &prim {
            let neg = g.scaled(&-Rat::from_integer(1.into())).primitive_ray();
            if prim.binary_search(&neg).is_ok() {
                return Err(Error::Lineality(format!(
                    "generators contain the opposite pair ±{g}"
                )));
            }
        }

        // H-representation: extremal rays of {u : eval(u, g) >= 0 for all g},
        // plus ± pairs spanning its lineality (the annihilator of span(gens)).
        let constraints: Vec<RatVec> = prim.iter().map(|g| pairing.cofunctional(g)).collect();
        let (dual_rays, lineality) = extreme_rays(&constraints, pairing.row_dim());
        let mut facets = dual_rays;
        for n in lineality {
            facets.push(n.primitive_ray());
            facets.push(n.scaled(&-Rat::from_integer(1.into())).primitive_ray());
        }
        facets.sort();
        facets.dedup();

        // Pointedness: the facet functionals must span the column space.
        let functionals: Vec<RatVec> = facets.iter().map(|f| pairing.functional(f)).collect();
        if span_rank(&functionals, dim) != dim {
            return Err(Error::Lineality(
                "generators span a cone containing a line".into(),
            ));
        }

        // V-representation: extremal rays of {x : all facet functionals >= 0}.
        // This removes redundant input generators.
        let (generators, lin) = extreme_rays(&functionals, dim);
        debug_assert!(lin.is_empty());
        debug_assert!(generators
            .iter()
            .all(|g| facets.iter().all(|f| !pairing.eval(f, g).is_negative())));

        Ok(PolyCone {
            generators,
            facets,
            pairing,
        })
    }

    /// The zero cone `{0}`: no generators, facets `±` the pulled-back dual
    /// basis so that membership still reads off the facet signs.
    pub fn zero(pairing: PairingForm) -> Result<PolyCone> {
        pairing.require_perfect()?;
        let inv_t = pairing
            .matrix()
            .transpose()
            .inverse()
            .expect("perfect pairing is invertible");
        let mut facets = Vec::new();
        for col in inv_t.transpose().rows() {
            facets.push(col.primitive_ray());
            facets.push(col.scaled(&-Rat::from_integer(1.into())).primitive_ray());
        }
        facets.sort();
        facets.dedup();
        Ok(PolyCone {
            generators: Vec::new(),
            facets,
            pairing,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.pairing.col_dim()
    }

    pub fn generators(&self) -> &[RatVec] {
        &self.generators
    }

    pub fn facets(&self) -> &[RatVec] {
        &self.facets
    }

    pub fn pairing(&self) -> &PairingForm {
        &self.pairing
    }

    pub fn is_zero_cone(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        span_rank(&self.generators, self.ambient_dim()) == self.ambient_dim()
    }

    /// The dual cone: all row-space vectors pairing `>= 0` with every
    /// generator, as a cone against the transposed pairing. Requires a
    /// full-dimensional cone (otherwise the dual contains a line).
    pub fn dual(&self) -> Result<PolyCone> {
        if !self.is_full_dimensional() {
            return Err(Error::Lineality(
                "dual of a non-full-dimensional cone contains a line".into(),
            ));
        }
        // The stored facets are exactly the extremal rays of the dual, and
        // the extremal generators are exactly the dual's facets.
        let dual = PolyCone {
            generators: self.facets.clone(),
            facets: self.generators.clone(),
            pairing: self.pairing.transpose(),
        };
        debug_assert!(dual
            .generators
            .iter()
            .all(|g| dual.facets.iter().all(|f| !dual.pairing.eval(f, g).is_negative())));
        Ok(dual)
    }

    /// Exact membership: `x` evaluates `>= 0` against all facet normals.
    pub fn contains(&self, x: &RatVec) -> Result<bool> {
        x.expect_dim(self.ambient_dim(), "membership query")?;
        Ok(self
            .facets
            .iter()
            .all(|f| !self.pairing.eval(f, x).is_negative()))
    }

    /// Facet normals vanishing on `x` (callers ensure membership).
    pub fn tight_facets(&self, x: &RatVec) -> Vec<RatVec> {
        self.facets
            .iter()
            .filter(|f| self.pairing.eval(f, x).is_zero())
            .cloned()
            .collect()
    }

    /// The minimal supported face containing `x`, together with its
    /// codimension (the rank of the tight facet normals in the ambient
    /// dual space). `x` must lie in the cone.
    pub fn minimal_supported_face(&self, x: &RatVec) -> Result<(PolyCone, usize)> {
        if !self.contains(x)? {
            return Err(Error::NotInCone);
        }
        let tight = self.tight_facets(x);
        let codim = span_rank(&tight, self.pairing.row_dim());
        if tight.is_empty() {
            return Ok((self.clone(), 0));
        }
        let face_gens: Vec<RatVec> = self
            .generators
            .iter()
            .filter(|g| tight.iter().all(|t| self.pairing.eval(t, g).is_zero()))
            .cloned()
            .collect();
        let face = if face_gens.is_empty() {
            assert!(x.is_zero(), "nonzero member of a face with no generators");
            PolyCone::zero(self.pairing.clone())?
        } else {
            PolyCone::from_generators(&face_gens, self.pairing.clone())?
        };
        Ok((face, codim))
    }
}

/// Extremal rays of `{x : c . x >= 0 for all c}` by double description.
///
/// Returns the rays of the pointed part together with a basis of the
/// system's lineality space (nonempty exactly when the constraints do not
/// span). The union of rays, negated lineality and lineality generates the
/// full solution set.
fn extreme_rays(constraints: &[RatVec], dim: usize) -> (Vec<RatVec>, Vec<RatVec>) {
    let mut cons: Vec<RatVec> = constraints.iter().map(|c| c.primitive_ray()).collect();
    cons.sort();
    cons.dedup();
    cons.retain(|c| !c.is_zero());
    let a = Mat::from_rows(cons.clone(), dim);
    let lineality = a.nullspace();
    if lineality.is_empty() {
        return (dd_pointed(&cons, dim), lineality);
    }
    // Quotient by the lineality: the row space of A is a complement of its
    // nullspace over Q, so we run the pointed DD there and lift back.
    let mut rref = a.clone();
    rref.rref();
    let basis: Vec<RatVec> = rref
        .rows()
        .iter()
        .filter(|r| !r.is_zero())
        .cloned()
        .collect();
    let r = basis.len();
    let reduced: Vec<RatVec> = cons
        .iter()
        .map(|c| RatVec::new(basis.iter().map(|b| c.dot(b)).collect()))
        .collect();
    let rays = dd_pointed(&reduced, r)
        .into_iter()
        .map(|y| {
            let mut x = RatVec::zero(dim);
            for (c, b) in y.iter().zip(basis.iter()) {
                x = x.add_scaled(c, b);
            }
            x.primitive_ray()
        })
        .collect::<Vec<_>>();
    let mut rays = rays;
    rays.sort();
    rays.dedup();
    (rays, lineality)
}

/// Tight-constraint index set of a ray, as a growable bitset.
#[derive(Clone)]
struct TightSet(Vec<u64>);

impl TightSet {
    fn of(ray: &RatVec, cons: &[RatVec], upto: usize) -> TightSet {
        let mut bits = vec![0u64; upto.div_ceil(64)];
        for (i, c) in cons[..upto].iter().enumerate() {
            if c.dot(ray).is_zero() {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        TightSet(bits)
    }

    fn intersect(&self, other: &TightSet) -> TightSet {
        TightSet(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a & b)
                .collect(),
        )
    }

    fn is_subset_of(&self, other: &TightSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }
}

/// Motzkin double description for a pointed system (`nullspace = 0`).
fn dd_pointed(cons: &[RatVec], dim: usize) -> Vec<RatVec> {
    if dim == 0 {
        return Vec::new();
    }
    // Initial simplicial cone from `dim` independent constraints; its rays
    // are the columns of the inverse of that square block.
    let mut chosen: Vec<usize> = Vec::new();
    let mut picked: Vec<RatVec> = Vec::new();
    for (i, c) in cons.iter().enumerate() {
        picked.push(c.clone());
        if span_rank(&picked, dim) > chosen.len() {
            chosen.push(i);
        } else {
            picked.pop();
        }
        if chosen.len() == dim {
            break;
        }
    }
    assert_eq!(chosen.len(), dim, "pointed system must have full rank");
    let block = Mat::from_rows(picked, dim);
    let inv = block.inverse().expect("independent rows form an invertible block");
    let inv_t = inv.transpose();
    let mut order: Vec<usize> = chosen.clone();
    order.extend((0..cons.len()).filter(|i| !chosen.contains(i)));
    let ordered: Vec<RatVec> = order.iter().map(|&i| cons[i].clone()).collect();

    let mut rays: Vec<RatVec> = inv_t
        .rows()
        .iter()
        .map(|r| r.primitive_ray())
        .collect();
    let mut tight: Vec<TightSet> = rays
        .iter()
        .map(|r| TightSet::of(r, &ordered, dim))
        .collect();

    for k in dim..ordered.len() {
        let c = &ordered[k];
        let vals: Vec<Rat> = rays.iter().map(|r| c.dot(r)).collect();
        if vals.iter().all(|v| !v.is_negative()) {
            for (r, t) in rays.iter().zip(tight.iter_mut()) {
                *t = TightSet::of(r, &ordered, k + 1);
            }
            continue;
        }
        let mut new_rays: Vec<RatVec> = Vec::new();
        for (ip, vp) in vals.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (in_, vn) in vals.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                let common = tight[ip].intersect(&tight[in_]);
                let adjacent = rays.iter().enumerate().all(|(io, _)| {
                    io == ip || io == in_ || !common.is_subset_of(&tight[io])
                });
                if !adjacent {
                    continue;
                }
                // vp * neg - vn * pos has both coefficients positive
                let w = rays[in_]
                    .scaled(vp)
                    .add_scaled(&-vn.clone(), &rays[ip])
                    .primitive_ray();
                new_rays.push(w);
            }
        }
        let mut kept: Vec<RatVec> = rays
            .into_iter()
            .zip(vals.iter())
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r)
            .collect();
        kept.extend(new_rays);
        kept.sort();
        kept.dedup();
        rays = kept;
        tight = rays
            .iter()
            .map(|r| TightSet::of(r, &ordered, k + 1))
            .collect();
    }
    rays.sort();
    rays.dedup();
    rays
}
