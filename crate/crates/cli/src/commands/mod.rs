pub mod casestudy;
pub mod cone;
pub mod delpezzo;
pub mod fujita;
pub mod invariants;

use manin_core::casestudy::{load_case_study_with_bound, CaseStudy};
use manin_core::rat::{parse_rat, RatVec};
use manin_core::{Error, PolyCone, Result};

use crate::output::Format;

pub struct Context {
    pub format: Format,
    pub dataset: Option<String>,
    pub bound: Option<usize>,
}

impl Context {
    pub fn dataset(&self) -> Result<CaseStudy> {
        let name = self
            .dataset
            .as_deref()
            .ok_or_else(|| Error::Input("--dataset <path-or-bundled-name> required".into()))?;
        load_case_study_with_bound(name, self.bound)
    }
}

/// Parses a comma-separated vector of wire-syntax rationals.
pub fn parse_vector(s: &str) -> Result<RatVec> {
    let parts: Vec<&str> = s.split(',').collect();
    parts
        .iter()
        .map(|p| parse_rat(p.trim()))
        .collect::<Result<Vec<_>>>()
        .map(RatVec::new)
}

/// Cone contents as string vectors, for both output modes.
pub fn cone_fields(cone: &PolyCone) -> (Vec<String>, Vec<String>) {
    let gens = cone
        .generators()
        .iter()
        .map(|g| g.to_strings().join(","))
        .collect();
    let facets = cone
        .facets()
        .iter()
        .map(|f| f.to_strings().join(","))
        .collect();
    (gens, facets)
}
