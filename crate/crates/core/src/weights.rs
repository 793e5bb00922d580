use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rational::Rational;

/// Exact rational weight per ground element.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Weighting {
    weights: BTreeMap<ElementId, Rational>,
}

impl Weighting {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `values` to the ground elements of `m` in ascending id order.
    pub fn for_ground(m: &Matroid, values: impl IntoIterator<Item = Rational>) -> Result<Self> {
        let weights: BTreeMap<_, _> = m.ground().iter().zip(values).collect();
        let w = Weighting { weights };
        w.check_total(m)?;
        Ok(w)
    }

    pub fn from_labels<'a, I>(m: &Matroid, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Rational)>,
    {
        let mut w = Weighting::new();
        for (label, value) in pairs {
            w.set(m.element(label)?, value);
        }
        Ok(w)
    }

    pub fn set(&mut self, e: ElementId, value: Rational) {
        self.weights.insert(e, value);
    }

    /// Copy with `e` reweighted.
    pub fn with(&self, e: ElementId, value: Rational) -> Self {
        let mut w = self.clone();
        w.set(e, value);
        w
    }

    pub fn get(&self, e: ElementId) -> Option<&Rational> {
        self.weights.get(&e)
    }

    /// Weight of an element known to be covered (see [`Weighting::check_total`]).
    pub(crate) fn of(&self, e: ElementId) -> &Rational {
        &self.weights[&e]
    }

    pub fn iter(&self) -> impl Iterator<Item = (ElementId, &Rational)> {
        self.weights.iter().map(|(&e, w)| (e, w))
    }

    /// Every ground element of `m` must carry a weight. Weights on elements
    /// outside the ground set (e.g. removed by a minor) are ignored.
    pub fn check_total(&self, m: &Matroid) -> Result<()> {
        match m.ground().iter().find(|e| !self.weights.contains_key(e)) {
            Some(e) => Err(Error::MissingWeight(m.label(e).to_string())),
            None => Ok(()),
        }
    }

    /// `x(F)`; panics if some element of `set` has no weight.
    pub fn total(&self, set: &ElementSet) -> Rational {
        set.iter().fold(Rational::zero(), |acc, e| acc + self.of(e))
    }

    pub fn is_nonnegative_on(&self, set: &ElementSet) -> bool {
        set.iter().all(|e| !self.of(e).is_negative())
    }

    /// True when no two elements of `set` share a weight.
    pub fn is_injective_on(&self, set: &ElementSet) -> bool {
        let mut seen: Vec<&Rational> = set.iter().map(|e| self.of(e)).collect();
        seen.sort();
        seen.windows(2).all(|w| w[0] != w[1])
    }
}
