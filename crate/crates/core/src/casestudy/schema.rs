//! JSON schema of case-study datasets and its validation into the model.
//!
//! Rationals on the wire are strings in the bit-exact syntax: optional
//! sign, integer, optional `/` followed by a positive integer, no
//! whitespace. Unknown fields are rejected, and every validation error
//! names the offending field.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::{
    AbPairSource, ActionModel, CaseStudy, CitedFact, Comparison, CurveTable, Expected,
    HilbertInput, LatticeModel, ModelRef, NamedPairing,
};
use crate::cone::{PairingForm, PolyCone};
use crate::invariants::{AbPair, GroupAction, IntMatrix, PolarizedSpace, DEFAULT_CLOSURE_BOUND};
use crate::rat::{parse_rat, RatVec};
use crate::{Error, Result};

/// One-paragraph summary of the dataset file format, shown by the CLI.
pub const SCHEMA_NOTES: &str = "Datasets are JSON objects with fields: name, notes, \
pairings {name: {row_basis, col_basis, matrix, symmetric}}, cones {name: {pairing, side, \
generators}}, spaces {name: {basis, pairing, side, pseff, nef?, K, L, adjoint_rigid?}}, \
lattices {name: {basis, K, L, adjoint_rigid?}}, actions {name: {model, generators, \
rigid_components, closure_bound?}}, comparisons, cited, hilbert_checks, curve_table and \
expected [{id, value, cite}]. All rationals are strings like \"-3\" or \"9/10\".";

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCaseStudy {
    name: String,
    #[serde(default)]
    notes: String,
    #[serde(default)]
    pairings: BTreeMap<String, RawPairing>,
    #[serde(default)]
    cones: BTreeMap<String, RawCone>,
    #[serde(default)]
    spaces: BTreeMap<String, RawSpace>,
    #[serde(default)]
    lattices: BTreeMap<String, RawLattice>,
    #[serde(default)]
    actions: BTreeMap<String, RawAction>,
    #[serde(default)]
    comparisons: BTreeMap<String, RawComparison>,
    #[serde(default)]
    cited: BTreeMap<String, RawCited>,
    #[serde(default)]
    hilbert_checks: BTreeMap<String, RawHilbert>,
    #[serde(default)]
    curve_table: Option<RawCurveTable>,
    #[serde(default)]
    expected: Vec<RawExpected>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPairing {
    row_basis: Vec<String>,
    col_basis: Vec<String>,
    matrix: Vec<Vec<String>>,
    #[serde(default)]
    symmetric: bool,
}

/// Which side of the pairing the generators of a cone live on.
#[derive(Deserialize, Clone, Copy, PartialEq)]
#[serde(rename_all = "lowercase")]
enum Side {
    Rows,
    Cols,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCone {
    pairing: String,
    #[serde(default = "default_side")]
    side: Side,
    generators: Vec<Vec<String>>,
}

fn default_side() -> Side {
    Side::Cols
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    rank: usize,
    #[serde(default)]
    basis: Vec<String>,
    pairing: String,
    #[serde(default = "default_side")]
    side: Side,
    pseff: Vec<Vec<String>>,
    #[serde(default)]
    nef: Option<Vec<Vec<String>>>,
    #[serde(rename = "K")]
    k: Vec<String>,
    #[serde(rename = "L")]
    l: Vec<String>,
    #[serde(default)]
    adjoint_rigid: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    rank: usize,
    #[serde(default)]
    basis: Vec<String>,
    #[serde(rename = "K")]
    k: Vec<String>,
    #[serde(rename = "L")]
    l: Vec<String>,
    #[serde(default)]
    adjoint_rigid: Option<bool>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAction {
    model: String,
    generators: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    rigid_components: Vec<Vec<String>>,
    #[serde(default)]
    closure_bound: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComparison {
    base: RawPairSource,
    other: RawPairSource,
    pullback_big: bool,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawPairSource {
    Space { space: String },
    Pair { a: String, b: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCited {
    value: String,
    cite: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHilbert {
    n: usize,
    values: Vec<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurveTable {
    pairing: String,
    divisor_order: Vec<String>,
    divisors: BTreeMap<String, Vec<String>>,
    basis_order: Vec<String>,
    row_order: Vec<String>,
    rows: BTreeMap<String, Vec<String>>,
    relations: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExpected {
    id: String,
    value: serde_json::Value,
    #[serde(default)]
    cite: String,
}

fn parse_vec(path: &str, entries: &[String]) -> Result<RatVec> {
    RatVec::parse(entries).map_err(|e| Error::Schema(format!("{path}: {e}")))
}

fn parse_vecs(path: &str, rows: &[Vec<String>]) -> Result<Vec<RatVec>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| parse_vec(&format!("{path}[{i}]"), r))
        .collect()
}

/// Parses and validates a dataset, with an optional override of all
/// group-closure bounds. Every type invariant (cone pointedness, bigness of
/// `L`, nef ⊆ pseff, action finiteness and equivariance) is checked here,
/// so a loaded [`CaseStudy`] is fully trustworthy.
pub fn parse_with(text: &str, closure_bound: Option<usize>) -> Result<CaseStudy> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let raw: RawCaseStudy = serde_path_to_error::deserialize(de)
        .map_err(|e| Error::Schema(format!("{} (at {})", e.inner(), e.path())))?;
    build(raw, closure_bound)
}

fn build(raw: RawCaseStudy, closure_override: Option<usize>) -> Result<CaseStudy> {
    let mut pairings = BTreeMap::new();
    for (name, p) in raw.pairings {
        let path = format!("pairings.{name}");
        let cols = p.col_basis.len();
        let rows = parse_vecs(&format!("{path}.matrix"), &p.matrix)?;
        if rows.len() != p.row_basis.len() {
            return Err(Error::Schema(format!(
                "{path}: {} matrix rows for {} row-basis labels",
                rows.len(),
                p.row_basis.len()
            )));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.dim() != cols {
                return Err(Error::Schema(format!(
                    "{path}.matrix[{i}]: {} entries for {} col-basis labels",
                    r.dim(),
                    cols
                )));
            }
        }
        let form = PairingForm::new(rows, cols).map_err(|e| Error::Schema(format!("{path}: {e}")))?;
        if p.symmetric && !form.is_symmetric() {
            return Err(Error::Schema(format!(
                "{path}: declared symmetric but the matrix is not"
            )));
        }
        pairings.insert(
            name,
            NamedPairing {
                row_basis: p.row_basis,
                col_basis: p.col_basis,
                form,
                symmetric: p.symmetric,
            },
        );
    }

    let oriented = |path: &str, pairing: &str, side: Side| -> Result<PairingForm> {
        let named = pairings
            .get(pairing)
            .ok_or_else(|| Error::Schema(format!("{path}: unknown pairing {pairing:?}")))?;
        Ok(match side {
            Side::Cols => named.form.clone(),
            Side::Rows => named.form.transpose(),
        })
    };

    let mut cones = BTreeMap::new();
    for (name, c) in raw.cones {
        let path = format!("cones.{name}");
        let form = oriented(&path, &c.pairing, c.side)?;
        let gens = parse_vecs(&format!("{path}.generators"), &c.generators)?;
        let cone = PolyCone::from_generators(&gens, form)
            .map_err(|e| Error::Schema(format!("{path}: {e}")))?;
        cones.insert(name, cone);
    }

    let mut spaces = BTreeMap::new();
    for (name, s) in raw.spaces {
        let path = format!("spaces.{name}");
        let form = oriented(&path, &s.pairing, s.side)?;
        if form.col_dim() != s.rank {
            return Err(Error::Schema(format!(
                "{path}.rank: declared {} but the pairing gives rank {}",
                s.rank,
                form.col_dim()
            )));
        }
        let gens = parse_vecs(&format!("{path}.pseff"), &s.pseff)?;
        let pseff = PolyCone::from_generators(&gens, form.clone())
            .map_err(|e| Error::Schema(format!("{path}.pseff: {e}")))?;
        let nef = match &s.nef {
            None => None,
            Some(rows) => {
                let gens = parse_vecs(&format!("{path}.nef"), rows)?;
                Some(
                    PolyCone::from_generators(&gens, form)
                        .map_err(|e| Error::Schema(format!("{path}.nef: {e}")))?,
                )
            }
        };
        let k = parse_vec(&format!("{path}.K"), &s.k)?;
        let l = parse_vec(&format!("{path}.L"), &s.l)?;
        let space = PolarizedSpace::new(name.clone(), s.basis, pseff, k, l, nef, s.adjoint_rigid)
            .map_err(|e| Error::Schema(format!("{path}: {e}")))?;
        spaces.insert(name, space);
    }

    let mut lattices = BTreeMap::new();
    for (name, lat) in raw.lattices {
        let path = format!("lattices.{name}");
        let k = parse_vec(&format!("{path}.K"), &lat.k)?;
        let l = parse_vec(&format!("{path}.L"), &lat.l)?;
        if k.dim() != lat.rank || l.dim() != lat.rank {
            return Err(Error::Schema(format!(
                "{path}: K and L must have {} coordinates",
                lat.rank
            )));
        }
        if !lat.basis.is_empty() && lat.basis.len() != lat.rank {
            return Err(Error::Schema(format!(
                "{path}: {} basis labels for rank {}",
                lat.basis.len(),
                lat.rank
            )));
        }
        lattices.insert(
            name,
            LatticeModel {
                rank: lat.rank,
                basis: lat.basis,
                k,
                l,
                adjoint_rigid: lat.adjoint_rigid,
            },
        );
    }

    let mut actions = BTreeMap::new();
    for (name, a) in raw.actions {
        let path = format!("actions.{name}");
        let generators = a
            .generators
            .into_iter()
            .enumerate()
            .map(|(i, rows)| {
                IntMatrix::new(rows)
                    .map_err(|e| Error::Schema(format!("{path}.generators[{i}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let rigid = parse_vecs(&format!("{path}.rigid_components"), &a.rigid_components)?;
        let bound = closure_override
            .or(a.closure_bound)
            .unwrap_or(DEFAULT_CLOSURE_BOUND);
        let action = GroupAction::new(generators, rigid).with_closure_bound(bound);
        let model = if spaces.contains_key(&a.model) {
            ModelRef::Space(a.model.clone())
        } else if lattices.contains_key(&a.model) {
            ModelRef::Lattice(a.model.clone())
        } else {
            return Err(Error::Schema(format!(
                "{path}.model: unknown model {:?}",
                a.model
            )));
        };
        // validate now so a loaded dataset has only lawful actions
        match &model {
            ModelRef::Space(s) => {
                let space = &spaces[s];
                action
                    .validate(
                        space.rank(),
                        space.canonical_class(),
                        space.polarization(),
                        Some(space.pseff().generators()),
                    )
                    .map_err(|e| Error::Schema(format!("{path}: {e}")))?;
            }
            ModelRef::Lattice(l) => {
                let lat = &lattices[l];
                action
                    .validate(lat.rank, &lat.k, &lat.l, None)
                    .map_err(|e| Error::Schema(format!("{path}: {e}")))?;
            }
        }
        actions.insert(name, ActionModel { model, action });
    }

    let mut comparisons = BTreeMap::new();
    for (name, c) in raw.comparisons {
        let path = format!("comparisons.{name}");
        let side = |which: &str, s: RawPairSource| -> Result<AbPairSource> {
            Ok(match s {
                RawPairSource::Space { space } => {
                    if !spaces.contains_key(&space) {
                        return Err(Error::Schema(format!(
                            "{path}.{which}: unknown space {space:?}"
                        )));
                    }
                    AbPairSource::Space(space)
                }
                RawPairSource::Pair { a, b } => AbPairSource::Pair(AbPair::new(
                    parse_rat(&a).map_err(|e| Error::Schema(format!("{path}.{which}: {e}")))?,
                    b,
                )),
            })
        };
        let base = side("base", c.base)?;
        let other = side("other", c.other)?;
        comparisons.insert(
            name,
            Comparison {
                base,
                other,
                pullback_big: c.pullback_big,
            },
        );
    }

    let cited = raw
        .cited
        .into_iter()
        .map(|(k, v)| {
            (
                k,
                CitedFact {
                    value: v.value,
                    cite: v.cite,
                },
            )
        })
        .collect();

    let hilbert_checks = raw
        .hilbert_checks
        .into_iter()
        .map(|(k, v)| {
            (
                k,
                HilbertInput {
                    n: v.n,
                    values: v.values,
                },
            )
        })
        .collect();

    let curve_table = match raw.curve_table {
        None => None,
        Some(t) => {
            let path = "curve_table";
            if !pairings.contains_key(&t.pairing) {
                return Err(Error::Schema(format!(
                    "{path}.pairing: unknown pairing {:?}",
                    t.pairing
                )));
            }
            let m = t.divisor_order.len();
            let mut divisors = BTreeMap::new();
            for (label, coords) in &t.divisors {
                divisors.insert(
                    label.clone(),
                    parse_vec(&format!("{path}.divisors.{label}"), coords)?,
                );
            }
            let mut rows = BTreeMap::new();
            for (label, entries) in &t.rows {
                let v = parse_vec(&format!("{path}.rows.{label}"), entries)?;
                if v.dim() != m {
                    return Err(Error::Schema(format!(
                        "{path}.rows.{label}: {} entries for {m} divisor columns",
                        v.dim()
                    )));
                }
                rows.insert(label.clone(), v.coords().to_vec());
            }
            let mut relations = BTreeMap::new();
            for (label, coords) in &t.relations {
                let v = parse_vec(&format!("{path}.relations.{label}"), coords)?;
                if v.dim() != t.basis_order.len() {
                    return Err(Error::Schema(format!(
                        "{path}.relations.{label}: {} coefficients for {} basis curves",
                        v.dim(),
                        t.basis_order.len()
                    )));
                }
                relations.insert(label.clone(), v);
            }
            for label in t.row_order.iter().chain(t.basis_order.iter()) {
                if !rows.contains_key(label) {
                    return Err(Error::Schema(format!("{path}.rows: missing row {label:?}")));
                }
            }
            Some(CurveTable {
                pairing: t.pairing,
                divisor_order: t.divisor_order,
                divisors,
                basis_order: t.basis_order,
                row_order: t.row_order,
                rows,
                relations,
            })
        }
    };

    let expected = raw
        .expected
        .into_iter()
        .map(|e| Expected {
            id: e.id,
            value: e.value,
            cite: e.cite,
        })
        .collect();

    Ok(CaseStudy {
        name: raw.name,
        notes: raw.notes,
        pairings,
        cones,
        spaces,
        lattices,
        actions,
        comparisons,
        cited,
        hilbert_checks,
        curve_table,
        expected,
    })
}
