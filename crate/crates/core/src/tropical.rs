//! Minimum-weight bases, min-max and bottleneck weights, next-best bases.
//!
//! Min-max weights are read off one greedy optimum: for an element outside
//! the optimal basis it is the weight of the first basis element (in
//! ascending weight order) whose prefix becomes dependent together with the
//! element; for a basis element it is the lightest weight in its
//! fundamental cut. No circuit is ever enumerated here.

use std::cmp::Reverse;

use num_traits::Signed;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{Basis, Matroid};
use crate::rational::Rational;
use crate::weights::Weighting;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptResult {
    pub basis: Basis,
    pub value: Rational,
}

/// `μ_e(x)`, `b_e(x)` and `α_x(e)` for one element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementAnalysis {
    pub element: ElementId,
    pub weight: Rational,
    pub minmax: Rational,
    pub bottleneck: Rational,
    pub tolerance: Rational,
}

/// Ground elements in greedy order: ascending weight, then ascending id.
fn greedy_order(m: &Matroid, x: &Weighting) -> Vec<ElementId> {
    let mut order: Vec<ElementId> = m.ground().iter().collect();
    order.sort_by(|&a, &b| x.of(a).cmp(x.of(b)).then(a.cmp(&b)));
    order
}

/// Greedy minimum-weight basis of any matroid, loops and coloops included.
pub fn greedy_basis(m: &Matroid, x: &Weighting) -> Result<OptResult> {
    x.check_total(m)?;
    let mut basis = ElementSet::new();
    for e in greedy_order(m, x) {
        if basis.len() == m.rank() {
            break;
        }
        let grown = basis.with(e);
        if m.independent(&grown) {
            basis = grown;
        }
    }
    let value = x.total(&basis);
    Ok(OptResult {
        basis: Basis::new_unchecked(basis),
        value,
    })
}

/// Minimum-weight basis of a loopless matroid.
pub fn min_weight_basis(m: &Matroid, x: &Weighting) -> Result<OptResult> {
    Ok(Optimum::new(m, x)?.result)
}

/// A solved instance: one x-optimal basis from which every per-element
/// quantity is derived.
#[derive(Debug, Clone)]
pub struct Optimum<'a> {
    matroid: &'a Matroid,
    weights: &'a Weighting,
    // basis elements, lightest first
    sorted: Vec<ElementId>,
    result: OptResult,
}

impl<'a> Optimum<'a> {
    /// Checks looplessness and weight coverage, then runs the greedy.
    pub fn new(matroid: &'a Matroid, weights: &'a Weighting) -> Result<Self> {
        matroid.assert_loopless()?;
        let result = greedy_basis(matroid, weights)?;
        let sorted = greedy_order(matroid, weights)
            .into_iter()
            .filter(|&e| result.basis.contains(e))
            .collect();
        Ok(Optimum {
            matroid,
            weights,
            sorted,
            result,
        })
    }

    pub fn matroid(&self) -> &'a Matroid {
        self.matroid
    }

    pub fn weights(&self) -> &'a Weighting {
        self.weights
    }

    pub fn result(&self) -> &OptResult {
        &self.result
    }

    pub fn basis(&self) -> &Basis {
        &self.result.basis
    }

    pub fn value(&self) -> &Rational {
        &self.result.value
    }

    pub fn weight(&self, e: ElementId) -> &Rational {
        self.weights.of(e)
    }

    /// Lightest element of `Cut(e, B)` (smallest id among ties) for a basis
    /// element `e`.
    pub fn lightest_in_cut(&self, e: ElementId) -> Result<ElementId> {
        self.matroid.check_element(e)?;
        let basis = self.basis().elements();
        if !basis.contains(e) {
            return Err(Error::Precondition(format!(
                "`{}` is not in the optimal basis",
                self.matroid.label(e)
            )));
        }
        let cut = self.matroid.cut_unchecked(basis, e);
        cut.iter()
            .min_by(|&a, &b| self.weight(a).cmp(self.weight(b)).then(a.cmp(&b)))
            .ok_or_else(|| {
                Error::Internal(format!("empty fundamental cut for `{}`", self.matroid.label(e)))
            })
    }

    /// Heaviest element of `Path(e, B)` (smallest id among ties) for a
    /// non-basis element `e`.
    pub fn heaviest_in_path(&self, e: ElementId) -> Result<ElementId> {
        self.matroid.check_element(e)?;
        let basis = self.basis().elements();
        if basis.contains(e) {
            return Err(Error::Precondition(format!(
                "`{}` is in the optimal basis",
                self.matroid.label(e)
            )));
        }
        let path = self.matroid.path_unchecked(basis, e);
        path.iter()
            .min_by_key(|&f| (Reverse(self.weight(f)), f))
            .ok_or_else(|| {
                Error::Internal(format!("empty fundamental path for `{}`", self.matroid.label(e)))
            })
    }

    /// `μ_e(x)`: the minimum over circuits through `e` of the heaviest
    /// weight among the circuit's other elements.
    pub fn minmax(&self, e: ElementId) -> Result<Rational> {
        self.matroid.check_element(e)?;
        if self.basis().contains(e) {
            return Ok(self.weight(self.lightest_in_cut(e)?).clone());
        }
        let mut prefix = ElementSet::singleton(e);
        for &f in &self.sorted {
            prefix.insert(f);
            if !self.matroid.independent(&prefix) {
                return Ok(self.weight(f).clone());
            }
        }
        Err(Error::Internal(format!(
            "`{}` is independent of the whole optimal basis",
            self.matroid.label(e)
        )))
    }

    /// `b_e(x) = min(x(e), μ_e(x))`
    pub fn bottleneck(&self, e: ElementId) -> Result<Rational> {
        let mu = self.minmax(e)?;
        Ok(mu.min(self.weight(e).clone()))
    }

    pub fn analysis(&self, e: ElementId) -> Result<ElementAnalysis> {
        let minmax = self.minmax(e)?;
        let weight = self.weight(e).clone();
        Ok(ElementAnalysis {
            element: e,
            bottleneck: minmax.clone().min(weight.clone()),
            tolerance: (&minmax - &weight).abs(),
            weight,
            minmax,
        })
    }

    /// Lightest basis avoiding `e`: `B - e + f` for `f` lightest in the cut,
    /// or the optimum itself when it already avoids `e`.
    pub fn next_best_avoiding(&self, e: ElementId) -> Result<OptResult> {
        self.matroid.check_element(e)?;
        if !self.basis().contains(e) {
            return Ok(self.result.clone());
        }
        let f = self.lightest_in_cut(e)?;
        let basis = self.basis().elements().exchange(e, f);
        let value = self.value() - self.weight(e) + self.weight(f);
        Ok(OptResult {
            basis: Basis::new_unchecked(basis),
            value,
        })
    }

    /// Lightest basis containing `e`: `B - p + e` for `p` heaviest on the
    /// fundamental path, or the optimum itself when it already contains `e`.
    pub fn next_best_containing(&self, e: ElementId) -> Result<OptResult> {
        self.matroid.check_element(e)?;
        if self.basis().contains(e) {
            return Ok(self.result.clone());
        }
        let p = self.heaviest_in_path(e)?;
        let basis = self.basis().elements().exchange(p, e);
        let value = self.value() - self.weight(p) + self.weight(e);
        Ok(OptResult {
            basis: Basis::new_unchecked(basis),
            value,
        })
    }
}

pub fn minmax_weight(m: &Matroid, x: &Weighting, e: ElementId) -> Result<Rational> {
    Optimum::new(m, x)?.minmax(e)
}

pub fn bottleneck_weight(m: &Matroid, x: &Weighting, e: ElementId) -> Result<Rational> {
    Optimum::new(m, x)?.bottleneck(e)
}

pub fn next_best_avoiding(m: &Matroid, x: &Weighting, e: ElementId) -> Result<OptResult> {
    Optimum::new(m, x)?.next_best_avoiding(e)
}

pub fn next_best_containing(m: &Matroid, x: &Weighting, e: ElementId) -> Result<OptResult> {
    Optimum::new(m, x)?.next_best_containing(e)
}

pub fn element_analysis(m: &Matroid, x: &Weighting, e: ElementId) -> Result<ElementAnalysis> {
    Optimum::new(m, x)?.analysis(e)
}
