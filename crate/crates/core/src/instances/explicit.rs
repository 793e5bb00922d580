use std::collections::BTreeSet;

use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Largest ground set for which the exchange axiom is verified (and hence
/// the largest explicit matroid accepted).
pub const EXPLICIT_CAP: usize = 12;

/// A matroid given by the list of its bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitBases {
    pub ground: Vec<String>,
    pub bases: Vec<Vec<String>>,
}

impl ExplicitBases {
    /// Ground set is the union of the bases, in order of first appearance.
    pub fn from_bases(bases: &[&[&str]]) -> Self {
        let mut ground: Vec<String> = Vec::new();
        for b in bases {
            for e in *b {
                if !ground.iter().any(|g| g == e) {
                    ground.push(e.to_string());
                }
            }
        }
        ExplicitBases {
            ground,
            bases: bases
                .iter()
                .map(|b| b.iter().map(|e| e.to_string()).collect())
                .collect(),
        }
    }
}

pub fn explicit(spec: &ExplicitBases) -> Result<Matroid> {
    if spec.ground.len() > EXPLICIT_CAP {
        return Err(Error::CapExceeded {
            size: spec.ground.len(),
            cap: EXPLICIT_CAP,
        });
    }
    if spec.bases.is_empty() {
        return Err(Error::Construction("no bases given".into()));
    }
    // resolve labels through a throwaway free matroid so that duplicate and
    // unknown labels are reported uniformly
    let names = Matroid::new(spec.ground.clone(), |_: &ElementSet| true)?;
    let mut bases = BTreeSet::new();
    for b in &spec.bases {
        let set = names.elements(b.iter().map(String::as_str))?;
        if set.len() != b.len() {
            return Err(Error::Construction(format!(
                "basis {{{}}} repeats an element",
                b.join(",")
            )));
        }
        bases.insert(set);
    }
    let size = bases.first().map(ElementSet::len).unwrap_or(0);
    if let Some(odd) = bases.iter().find(|b| b.len() != size) {
        return Err(Error::Construction(format!(
            "bases have different sizes ({} and {})",
            size,
            odd.len()
        )));
    }
    for a in &bases {
        for b in &bases {
            for out in a.difference(b).iter() {
                let exchangeable = b
                    .difference(a)
                    .iter()
                    .any(|inc| bases.contains(&a.exchange(out, inc)));
                if !exchangeable {
                    return Err(Error::Construction(format!(
                        "basis exchange fails for {{{}}} and {{{}}}: no element of the second can replace `{}`",
                        names.labels_of(a).join(","),
                        names.labels_of(b).join(","),
                        names.label(out)
                    )));
                }
            }
        }
    }
    let bases: Vec<ElementSet> = bases.into_iter().collect();
    Matroid::new(spec.ground.clone(), move |s: &ElementSet| {
        bases.iter().any(|b| s.is_subset(b))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_like_bases_are_valid() {
        let m = explicit(&ExplicitBases::from_bases(&[&["a", "b"], &["b", "c"]])).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.is_independent(&m.elements(["a", "b"]).unwrap()).unwrap());
        assert!(!m.is_independent(&m.elements(["a", "c"]).unwrap()).unwrap());
    }

    #[test]
    fn exchange_violation_is_reported() {
        let err = explicit(&ExplicitBases::from_bases(&[&["a", "b"], &["c", "d"]])).unwrap_err();
        let Error::Construction(msg) = err else { panic!("{err:?}") };
        assert!(msg.contains("{a,b}") && msg.contains("{c,d}"), "{msg}");
    }

    #[test]
    fn empty_basis_gives_rank_zero_with_loops() {
        let spec = ExplicitBases {
            ground: vec!["a".into(), "b".into()],
            bases: vec![vec![]],
        };
        let m = explicit(&spec).unwrap();
        assert_eq!(m.rank(), 0);
        assert!(m.assert_loopless().is_err());
    }

    #[test]
    fn bad_inputs() {
        assert!(explicit(&ExplicitBases { ground: vec!["a".into()], bases: vec![] }).is_err());
        assert!(explicit(&ExplicitBases::from_bases(&[&["a"], &["a", "b"]])).is_err());
        let unknown = ExplicitBases { ground: vec!["a".into()], bases: vec![vec!["z".into()]] };
        assert_eq!(explicit(&unknown).unwrap_err(), Error::UnknownElement("z".into()));
        let big = ExplicitBases {
            ground: (0..13).map(|i| format!("e{i}")).collect(),
            bases: vec![vec![]],
        };
        assert!(matches!(explicit(&big), Err(Error::CapExceeded { .. })));
    }
}
