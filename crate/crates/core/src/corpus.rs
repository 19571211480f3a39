//! Built-in measures used by the acceptance suite and the command line.

use crate::error::{Error, Result};
use crate::measures::Measure;

const SOURCES: [(&str, &str); 6] = [
    ("lebesgue", include_str!("../corpus/lebesgue.json")),
    ("half_lebesgue_atoms", include_str!("../corpus/half_lebesgue_atoms.json")),
    ("boundary_comb", include_str!("../corpus/boundary_comb.json")),
    ("interior_cloud", include_str!("../corpus/interior_cloud.json")),
    ("half_circle", include_str!("../corpus/half_circle.json")),
    ("mixed", include_str!("../corpus/mixed.json")),
];

/// Names of the built-in measures.
pub fn names() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(name, _)| *name)
}

/// The JSON document of a built-in measure.
pub fn source(name: &str) -> Option<&'static str> {
    let key = name.replace('-', "_");
    SOURCES.iter().find(|(n, _)| *n == key).map(|(_, s)| *s)
}

/// A built-in measure by name; `-` and `_` are interchangeable.
pub fn builtin(name: &str) -> Result<Measure> {
    let text = source(name).ok_or_else(|| {
        Error::param(format!(
            "unknown corpus measure `{name}` (known: {})",
            names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    Measure::from_json_str(text)
}

/// Every built-in measure with its name.
pub fn all() -> Vec<(&'static str, Measure)> {
    names()
        .map(|n| (n, builtin(n).expect("shipped corpus parses")))
        .collect()
}
