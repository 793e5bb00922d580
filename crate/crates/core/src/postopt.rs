//! Postoptimality analysis driven by min-max weights.
//!
//! All quantities here come from closed formulas over one greedy optimum.
//! Minors are never re-solved in this module.

use num_traits::{Signed, Zero};

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{Basis, Matroid};
use crate::oracle::{BruteForce, EnumerationCap};
use crate::rational::{abs, integer, Rational};
use crate::tropical::{greedy_basis, OptResult, Optimum};
use crate::weights::Weighting;

/// Optimal values of `M`, `M / e` and `M \ e` under one weighting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirchhoffValues {
    pub element: ElementId,
    pub base_value: Rational,
    pub contract_value: Rational,
    pub delete_value: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Persistency {
    /// in every optimal basis
    All,
    /// in no optimal basis
    None,
    /// in some but not all optimal bases
    Some,
}

impl Persistency {
    pub fn as_str(self) -> &'static str {
        match self {
            Persistency::All => "all",
            Persistency::None => "none",
            Persistency::Some => "some",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PersistencyPartition {
    pub all: ElementSet,
    pub none: ElementSet,
    pub some: ElementSet,
}

impl PersistencyPartition {
    pub fn class_of(&self, e: ElementId) -> Option<Persistency> {
        if self.all.contains(e) {
            Some(Persistency::All)
        } else if self.none.contains(e) {
            Some(Persistency::None)
        } else if self.some.contains(e) {
            Some(Persistency::Some)
        } else {
            None
        }
    }
}

/// Outcome of a single-element reweighting check on an optimal basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSensitivity {
    pub element: ElementId,
    pub minmax: Rational,
    pub in_basis: bool,
    /// whether the basis stays optimal under the new weight
    pub preserves_optimality: bool,
    /// `|new - old| <= α`, which alone already guarantees optimality
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementDelta {
    pub element: ElementId,
    pub delta: Rational,
    pub half_tolerance: Rational,
    pub within: bool,
}

/// Result of testing an optimal basis against a simultaneous reweighting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerturbationReport {
    pub old: Weighting,
    pub new: Weighting,
    pub basis: Basis,
    pub deltas: Vec<ElementDelta>,
    /// every delta within half the element's tolerance
    pub safe: bool,
    /// whether `basis` is optimal under `new`; decided by re-solving when not `safe`
    pub basis_optimal: bool,
    /// strictly lighter basis under `new`, when `basis` is beaten
    pub witness: Option<OptResult>,
}

/// The weighting from the tightness construction together with the pair
/// that was pushed together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversarialPerturbation {
    pub weights: Weighting,
    /// basis element made heavier
    pub raised: ElementId,
    /// cut element made lighter
    pub lowered: ElementId,
    /// the common tolerance of both elements
    pub tolerance: Rational,
}

impl Optimum<'_> {
    /// `M/e` and `M\e` optimal values via `b_e` and `μ_e`.
    pub fn kirchhoff(&self, e: ElementId) -> Result<KirchhoffValues> {
        let mu = self.minmax(e)?;
        let b = mu.clone().min(self.weight(e).clone());
        let base = self.value().clone();
        let contract = &base - &b;
        Ok(KirchhoffValues {
            element: e,
            delete_value: &contract + &mu,
            contract_value: contract,
            base_value: base,
        })
    }

    /// Optimal value after giving `e` the weight `new_weight`.
    pub fn postopt_value(&self, e: ElementId, new_weight: &Rational) -> Result<Rational> {
        let mu = self.minmax(e)?;
        let old_b = mu.clone().min(self.weight(e).clone());
        let new_b = mu.min(new_weight.clone());
        Ok(self.value() + new_b - old_b)
    }

    /// Fails unless `basis` is a basis of weight `M(M, x)`.
    pub fn check_optimal(&self, basis: &Basis) -> Result<Basis> {
        let basis = self.matroid().check_basis(basis.elements())?;
        let weight = self.weights().total(basis.elements());
        if &weight != self.value() {
            return Err(Error::Precondition(format!(
                "basis {{{}}} has weight {} but the optimum is {}",
                self.matroid().labels_of(basis.elements()).join(","),
                weight,
                self.value()
            )));
        }
        Ok(basis)
    }

    pub fn local_sensitivity(
        &self,
        basis: &Basis,
        e: ElementId,
        new_weight: &Rational,
    ) -> Result<LocalSensitivity> {
        let basis = self.check_optimal(basis)?;
        let mu = self.minmax(e)?;
        let in_basis = basis.contains(e);
        let preserves_optimality = if in_basis {
            new_weight <= &mu
        } else {
            new_weight >= &mu
        };
        let tolerance = abs(&(&mu - self.weight(e)));
        let within_tolerance = abs(&(new_weight - self.weight(e))) <= tolerance;
        Ok(LocalSensitivity {
            element: e,
            minmax: mu,
            in_basis,
            preserves_optimality,
            within_tolerance,
        })
    }

    pub fn global_sensitivity(&self, basis: &Basis, new: &Weighting) -> Result<PerturbationReport> {
        let basis = self.check_optimal(basis)?;
        let m = self.matroid();
        new.check_total(m)?;
        let two = integer(2);
        let mut deltas = Vec::with_capacity(m.len());
        for e in m.ground() {
            let tolerance = self.analysis(e)?.tolerance;
            let delta = new.of(e) - self.weight(e);
            let half_tolerance = tolerance / &two;
            deltas.push(ElementDelta {
                element: e,
                within: abs(&delta) <= half_tolerance,
                delta,
                half_tolerance,
            });
        }
        let safe = deltas.iter().all(|d| d.within);
        let (basis_optimal, witness) = if safe {
            (true, None)
        } else {
            let best = greedy_basis(m, new)?;
            if best.value < new.total(basis.elements()) {
                (false, Some(best))
            } else {
                (true, None)
            }
        };
        Ok(PerturbationReport {
            old: self.weights().clone(),
            new: new.clone(),
            basis,
            deltas,
            safe,
            basis_optimal,
            witness,
        })
    }

    /// Pushes the closest exchange pair `(e, f)`, `e` in the basis and `f`
    /// in `Cut(e, B)`, past each other by `t/2 + ε` on both sides.
    pub fn adversarial_perturbation(
        &self,
        basis: &Basis,
        epsilon: &Rational,
    ) -> Result<AdversarialPerturbation> {
        if !epsilon.is_positive() {
            return Err(Error::Precondition(format!("epsilon must be positive, got {epsilon}")));
        }
        let basis = self.check_optimal(basis)?;
        let m = self.matroid();
        let mut best: Option<(Rational, ElementId, ElementId)> = None;
        for e in basis.iter() {
            for f in &m.cut_unchecked(basis.elements(), e) {
                let gap = self.weight(f) - self.weight(e);
                if best.as_ref().is_none_or(|(g, _, _)| gap < *g) {
                    best = Some((gap, e, f));
                }
            }
        }
        let (gap, e, f) = best.ok_or_else(|| {
            Error::Precondition("the basis admits no exchange (rank zero)".into())
        })?;
        let shift = &gap / integer(2) + epsilon;
        let mut weights = self.weights().clone();
        weights.set(e, self.weight(e) + &shift);
        weights.set(f, self.weight(f) - &shift);
        Ok(AdversarialPerturbation {
            weights,
            raised: e,
            lowered: f,
            tolerance: gap,
        })
    }

    /// Classifies every element by the sign of `μ_e(x) - x(e)`.
    pub fn persistency(&self) -> Result<PersistencyPartition> {
        let m = self.matroid();
        let mut part = PersistencyPartition::default();
        for e in m.ground() {
            let mu = self.minmax(e)?;
            match mu.cmp(self.weight(e)) {
                std::cmp::Ordering::Greater => part.all.insert(e),
                std::cmp::Ordering::Less => part.none.insert(e),
                std::cmp::Ordering::Equal => part.some.insert(e),
            };
        }
        if self.weights().is_injective_on(m.ground()) && &part.all != self.basis().elements() {
            return Err(Error::Internal(format!(
                "distinct weights but persistent set {{{}}} differs from the optimal basis {{{}}}",
                m.labels_of(&part.all).join(","),
                m.labels_of(self.basis().elements()).join(",")
            )));
        }
        Ok(part)
    }
}

pub fn kirchhoff(m: &Matroid, x: &Weighting, e: ElementId) -> Result<KirchhoffValues> {
    Optimum::new(m, x)?.kirchhoff(e)
}

pub fn postopt_value(m: &Matroid, x: &Weighting, e: ElementId, new_weight: &Rational) -> Result<Rational> {
    Optimum::new(m, x)?.postopt_value(e, new_weight)
}

/// Sums bottleneck weights of the elements of `basis` while zeroing them one
/// by one (ascending id order). Equals `M(M, x)` for nonnegative `x`.
pub fn telescoping_value(m: &Matroid, x: &Weighting, basis: &Basis) -> Result<Rational> {
    x.check_total(m)?;
    if !x.is_nonnegative_on(m.ground()) {
        return Err(Error::Precondition("telescoping needs nonnegative weights".into()));
    }
    let basis = m.check_basis(basis.elements())?;
    m.assert_loopless()?;
    let mut current = x.clone();
    let mut total = Rational::zero();
    for e in basis.iter() {
        total += Optimum::new(m, &current)?.bottleneck(e)?;
        current.set(e, Rational::zero());
    }
    Ok(total)
}

pub fn local_sensitivity(
    m: &Matroid,
    x: &Weighting,
    basis: &Basis,
    e: ElementId,
    new_weight: &Rational,
) -> Result<bool> {
    Ok(Optimum::new(m, x)?
        .local_sensitivity(basis, e, new_weight)?
        .preserves_optimality)
}

pub fn global_sensitivity_safe(
    m: &Matroid,
    x: &Weighting,
    basis: &Basis,
    new: &Weighting,
) -> Result<PerturbationReport> {
    Optimum::new(m, x)?.global_sensitivity(basis, new)
}

pub fn adversarial_perturbation(
    m: &Matroid,
    x: &Weighting,
    basis: &Basis,
    epsilon: &Rational,
) -> Result<AdversarialPerturbation> {
    Optimum::new(m, x)?.adversarial_perturbation(basis, epsilon)
}

pub fn persistency(m: &Matroid, x: &Weighting) -> Result<PersistencyPartition> {
    Optimum::new(m, x)?.persistency()
}

/// `max over e-cocircuits D of min over D - e of x`, by enumerating
/// cocircuits as minimal sets meeting every basis.
pub fn maxmin_cocircuit(m: &Matroid, x: &Weighting, e: ElementId, cap: EnumerationCap) -> Result<Rational> {
    m.check_element(e)?;
    m.assert_loopless()?;
    x.check_total(m)?;
    BruteForce::new(m, cap)?.maxmin(x, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{graphic, uniform, GraphDescription, UniformParams};
    use crate::rational::rational;

    fn k3() -> (Matroid, Weighting) {
        let m = graphic(&GraphDescription::new(3, [("a", 0, 1), ("b", 1, 2), ("c", 0, 2)])).unwrap();
        let x = Weighting::for_ground(&m, [1, 2, 3].map(integer)).unwrap();
        (m, x)
    }

    fn u24() -> (Matroid, Weighting) {
        let m = uniform(&UniformParams::new(2, ["e1", "e2", "e3", "e4"])).unwrap();
        let x = Weighting::for_ground(&m, [1, 2, 3, 4].map(integer)).unwrap();
        (m, x)
    }

    fn id(m: &Matroid, l: &str) -> ElementId {
        m.element(l).unwrap()
    }

    fn basis(m: &Matroid, labels: &[&str]) -> Basis {
        m.check_basis(&m.elements(labels.iter().copied()).unwrap()).unwrap()
    }

    fn values(k: KirchhoffValues) -> (Rational, Rational, Rational) {
        (k.base_value, k.contract_value, k.delete_value)
    }

    #[test]
    fn kirchhoff_examples() {
        let (m, x) = k3();
        assert_eq!(values(kirchhoff(&m, &x, id(&m, "c")).unwrap()), (integer(3), integer(1), integer(3)));
        assert_eq!(values(kirchhoff(&m, &x, id(&m, "a")).unwrap()), (integer(3), integer(2), integer(5)));
        let (u, ux) = u24();
        assert_eq!(values(kirchhoff(&u, &ux, id(&u, "e1")).unwrap()), (integer(3), integer(2), integer(5)));
    }

    #[test]
    fn postopt_examples() {
        let (m, x) = k3();
        let c = id(&m, "c");
        assert_eq!(postopt_value(&m, &x, c, &rational(3, 2)).unwrap(), rational(5, 2));
        assert_eq!(postopt_value(&m, &x, c, &integer(10)).unwrap(), integer(3));
        // dropping to zero removes exactly the bottleneck weight
        for e in m.ground() {
            let b = crate::tropical::bottleneck_weight(&m, &x, e).unwrap();
            assert_eq!(postopt_value(&m, &x, e, &integer(0)).unwrap(), integer(3) - b);
        }
    }

    #[test]
    fn telescoping_examples() {
        let (m, x) = k3();
        assert_eq!(telescoping_value(&m, &x, &basis(&m, &["a", "b"])).unwrap(), integer(3));
        assert_eq!(telescoping_value(&m, &x, &basis(&m, &["b", "c"])).unwrap(), integer(3));
        let zero = Weighting::for_ground(&m, [0, 0, 0].map(integer)).unwrap();
        assert_eq!(telescoping_value(&m, &zero, &basis(&m, &["a", "c"])).unwrap(), integer(0));
        let negative = x.with(id(&m, "a"), integer(-1));
        assert!(matches!(
            telescoping_value(&m, &negative, &basis(&m, &["a", "b"])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn local_sensitivity_examples() {
        let (m, x) = k3();
        let b = basis(&m, &["a", "b"]);
        assert!(local_sensitivity(&m, &x, &b, id(&m, "b"), &integer(3)).unwrap());
        assert!(!local_sensitivity(&m, &x, &b, id(&m, "b"), &rational(7, 2)).unwrap());
        assert!(local_sensitivity(&m, &x, &b, id(&m, "c"), &integer(2)).unwrap());
        let not_optimal = basis(&m, &["b", "c"]);
        assert!(matches!(
            local_sensitivity(&m, &x, &not_optimal, id(&m, "b"), &integer(3)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn global_sensitivity_examples() {
        let (m, x) = k3();
        let b = basis(&m, &["a", "b"]);
        let shifted = Weighting::for_ground(&m, [integer(2), rational(5, 2), rational(5, 2)]).unwrap();
        let report = global_sensitivity_safe(&m, &x, &b, &shifted).unwrap();
        assert!(report.safe && report.basis_optimal && report.witness.is_none());
        let halves: Vec<_> = report.deltas.iter().map(|d| d.half_tolerance.clone()).collect();
        assert_eq!(halves, [integer(1), rational(1, 2), rational(1, 2)]);

        let same = global_sensitivity_safe(&m, &x, &b, &x).unwrap();
        assert!(same.safe);

        let adv = adversarial_perturbation(&m, &x, &b, &rational(1, 4)).unwrap();
        let report = global_sensitivity_safe(&m, &x, &b, &adv.weights).unwrap();
        assert!(!report.safe && !report.basis_optimal);
        let witness = report.witness.unwrap();
        assert!(witness.value < adv.weights.total(b.elements()));
    }

    #[test]
    fn adversarial_examples() {
        let (m, x) = k3();
        let adv = adversarial_perturbation(&m, &x, &basis(&m, &["a", "b"]), &rational(1, 4)).unwrap();
        assert_eq!((adv.raised, adv.lowered, adv.tolerance.clone()), (id(&m, "b"), id(&m, "c"), integer(1)));
        let w: Vec<_> = m.ground().iter().map(|e| adv.weights.get(e).unwrap().clone()).collect();
        assert_eq!(w, [integer(1), rational(11, 4), rational(9, 4)]);

        let (u, ux) = u24();
        let adv = adversarial_perturbation(&u, &ux, &basis(&u, &["e1", "e2"]), &integer(1)).unwrap();
        assert_eq!((adv.raised, adv.lowered), (id(&u, "e2"), id(&u, "e3")));
        assert_eq!(adv.tolerance, integer(1));
        assert_eq!(adv.weights.get(id(&u, "e2")), Some(&rational(7, 2)));
        assert_eq!(adv.weights.get(id(&u, "e3")), Some(&rational(3, 2)));

        assert!(adversarial_perturbation(&u, &ux, &basis(&u, &["e1", "e2"]), &integer(0)).is_err());
    }

    #[test]
    fn persistency_examples() {
        let (m, x) = k3();
        let p = persistency(&m, &x).unwrap();
        assert_eq!(p.all, m.elements(["a", "b"]).unwrap());
        assert_eq!(p.none, m.elements(["c"]).unwrap());
        assert!(p.some.is_empty());

        let ones = Weighting::for_ground(&m, [1, 1, 1].map(integer)).unwrap();
        let p = persistency(&m, &ones).unwrap();
        assert_eq!(p.some, m.ground().clone());

        let (u, ux) = u24();
        let p = persistency(&u, &ux).unwrap();
        assert_eq!(p.all, u.elements(["e1", "e2"]).unwrap());
        assert_eq!(p.none, u.elements(["e3", "e4"]).unwrap());
    }

    #[test]
    fn maxmin_examples() {
        let (m, x) = k3();
        let cap = EnumerationCap::default();
        assert_eq!(maxmin_cocircuit(&m, &x, id(&m, "a"), cap).unwrap(), integer(3));
        assert_eq!(maxmin_cocircuit(&m, &x, id(&m, "c"), cap).unwrap(), integer(2));
        let (u, ux) = u24();
        assert_eq!(maxmin_cocircuit(&u, &ux, id(&u, "e1"), cap).unwrap(), integer(3));
        assert!(matches!(
            maxmin_cocircuit(&u, &ux, id(&u, "e1"), EnumerationCap::uniform(3)),
            Err(Error::CapExceeded { .. })
        ));
    }
}
