//! Matroids seen through an independence oracle.
//!
//! Everything else (rank, bases, fundamental circuits and cuts, loops and
//! coloops, minors) is derived from independence queries. Minors are lazy
//! views over the root oracle: contracted elements are added to every query
//! and deleted elements are dropped from the ground set, so element ids keep
//! their meaning across any sequence of minor operations.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::element::{ElementId, ElementSet};
use crate::error::{DefectKind, Error, Result};

/// Independence predicate of a concrete matroid.
///
/// Queries only ever contain elements of the instance's own ground set.
/// Implementations must be deterministic and safe to call concurrently.
pub trait IndependenceOracle: Send + Sync {
    fn is_independent(&self, set: &ElementSet) -> bool;
}

impl<F> IndependenceOracle for F
where
    F: Fn(&ElementSet) -> bool + Send + Sync,
{
    fn is_independent(&self, set: &ElementSet) -> bool {
        self(set)
    }
}

#[derive(Debug)]
struct Labels {
    names: Vec<String>,
    lookup: HashMap<String, ElementId>,
}

/// A matroid (or a minor of one) over labelled ground elements.
#[derive(Clone)]
pub struct Matroid {
    oracle: Arc<dyn IndependenceOracle>,
    labels: Arc<Labels>,
    ground: ElementSet,
    // independent in the root matroid
    contracted: ElementSet,
    rank: usize,
    queries: Arc<AtomicU64>,
}

impl Matroid {
    /// Builds a matroid whose ground elements are `labels`, in order; the
    /// `i`-th label gets `ElementId::new(i)`.
    pub fn new<O>(labels: Vec<String>, oracle: O) -> Result<Self>
    where
        O: IndependenceOracle + 'static,
    {
        let mut lookup = HashMap::with_capacity(labels.len());
        for (i, name) in labels.iter().enumerate() {
            if lookup.insert(name.clone(), ElementId::new(i)).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let ground: ElementSet = (0..labels.len()).map(ElementId::new).collect();
        let mut m = Matroid {
            oracle: Arc::new(oracle),
            labels: Arc::new(Labels { names: labels, lookup }),
            ground,
            contracted: ElementSet::new(),
            rank: 0,
            queries: Arc::new(AtomicU64::new(0)),
        };
        if !m.independent(&ElementSet::new()) {
            return Err(Error::Construction("the empty set is dependent".into()));
        }
        m.rank = m.greedy_rank(&m.ground.clone());
        Ok(m)
    }

    pub fn ground(&self) -> &ElementSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    /// Rank of the whole ground set, i.e. the size of every basis.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Elements contracted on the way from the root matroid to this one.
    pub fn contracted(&self) -> &ElementSet {
        &self.contracted
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.labels.names[e.index()]
    }

    pub fn labels_of(&self, set: &ElementSet) -> Vec<String> {
        set.iter().map(|e| self.label(e).to_string()).collect()
    }

    /// Looks up a ground element of this matroid by label.
    pub fn element(&self, label: &str) -> Result<ElementId> {
        match self.labels.lookup.get(label) {
            Some(&e) if self.ground.contains(e) => Ok(e),
            _ => Err(Error::UnknownElement(label.to_string())),
        }
    }

    pub fn elements<'a, I>(&self, labels: I) -> Result<ElementSet>
    where
        I: IntoIterator<Item = &'a str>,
    {
        labels.into_iter().map(|l| self.element(l)).collect()
    }

    pub fn check_element(&self, e: ElementId) -> Result<()> {
        if self.ground.contains(e) {
            Ok(())
        } else {
            Err(Error::UnknownElement(self.describe(e)))
        }
    }

    pub fn check_subset(&self, set: &ElementSet) -> Result<()> {
        match set.difference(&self.ground).first() {
            None => Ok(()),
            Some(e) => Err(Error::UnknownElement(self.describe(e))),
        }
    }

    fn describe(&self, e: ElementId) -> String {
        self.labels
            .names
            .get(e.index())
            .cloned()
            .unwrap_or_else(|| e.to_string())
    }

    /// Number of independence queries answered through this matroid value
    /// and its clones.
    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// Unchecked independence query; `set` must lie within the ground set.
    pub(crate) fn independent(&self, set: &ElementSet) -> bool {
        self.queries.fetch_add(1, Ordering::Relaxed);
        if self.contracted.is_empty() {
            self.oracle.is_independent(set)
        } else {
            self.oracle.is_independent(&set.union(&self.contracted))
        }
    }

    pub fn is_independent(&self, set: &ElementSet) -> Result<bool> {
        self.check_subset(set)?;
        Ok(self.independent(set))
    }

    fn greedy_rank(&self, set: &ElementSet) -> usize {
        let mut acc = ElementSet::new();
        for e in set {
            let grown = acc.with(e);
            if self.independent(&grown) {
                acc = grown;
            }
        }
        acc.len()
    }

    /// Size of a maximal independent subset of `set`.
    pub fn rank_of(&self, set: &ElementSet) -> Result<usize> {
        self.check_subset(set)?;
        Ok(self.greedy_rank(set))
    }

    /// Validates that `set` is a basis of this matroid.
    pub fn check_basis(&self, set: &ElementSet) -> Result<Basis> {
        self.check_subset(set)?;
        if set.len() != self.rank || !self.independent(set) {
            return Err(Error::Precondition(format!(
                "{{{}}} is not a basis",
                self.labels_of(set).join(",")
            )));
        }
        Ok(Basis(set.clone()))
    }

    /// The unique circuit contained in `basis + e`, for `e` outside the basis.
    pub fn fundamental_circuit(&self, basis: &Basis, e: ElementId) -> Result<Circuit> {
        let mut circuit = self.fundamental_path(basis, e)?;
        circuit.insert(e);
        Ok(Circuit(circuit))
    }

    /// `Circ(e, B) - e`: the basis elements `f` for which `B - f + e` is a basis.
    pub fn fundamental_path(&self, basis: &Basis, e: ElementId) -> Result<ElementSet> {
        self.check_element(e)?;
        let basis = self.check_basis(basis.elements())?;
        if basis.contains(e) {
            return Err(Error::Precondition(format!(
                "`{}` belongs to the basis; fundamental circuits need an outside element",
                self.label(e)
            )));
        }
        Ok(self.path_unchecked(basis.elements(), e))
    }

    pub(crate) fn path_unchecked(&self, basis: &ElementSet, e: ElementId) -> ElementSet {
        basis
            .iter()
            .filter(|&f| self.independent(&basis.exchange(f, e)))
            .collect()
    }

    /// `Cut(e, B)`: the non-basis elements `f` for which `B - e + f` is a basis.
    pub fn fundamental_cut(&self, basis: &Basis, e: ElementId) -> Result<ElementSet> {
        self.check_element(e)?;
        let basis = self.check_basis(basis.elements())?;
        if !basis.contains(e) {
            return Err(Error::Precondition(format!(
                "`{}` is not in the basis; fundamental cuts need a basis element",
                self.label(e)
            )));
        }
        Ok(self.cut_unchecked(basis.elements(), e))
    }

    pub(crate) fn cut_unchecked(&self, basis: &ElementSet, e: ElementId) -> ElementSet {
        self.ground
            .difference(basis)
            .iter()
            .filter(|&f| self.independent(&basis.exchange(e, f)))
            .collect()
    }

    /// Returns `(loops, coloops)`.
    pub fn loops_and_coloops(&self) -> (ElementSet, ElementSet) {
        let loops = self
            .ground
            .iter()
            .filter(|&e| !self.independent(&ElementSet::singleton(e)))
            .collect();
        let coloops = self
            .ground
            .iter()
            .filter(|&e| self.greedy_rank(&self.ground.without(e)) < self.rank)
            .collect();
        (loops, coloops)
    }

    /// Fails with every loop and coloop listed by label.
    pub fn assert_loopless(&self) -> Result<()> {
        let (loops, coloops) = self.loops_and_coloops();
        if loops.is_empty() && coloops.is_empty() {
            return Ok(());
        }
        let mut defects: Vec<(ElementId, DefectKind)> = loops
            .iter()
            .map(|e| (e, DefectKind::Loop))
            .chain(coloops.iter().map(|e| (e, DefectKind::Coloop)))
            .collect();
        defects.sort_by_key(|&(e, _)| e);
        Err(Error::NotLoopless(
            defects
                .into_iter()
                .map(|(e, kind)| (self.label(e).to_string(), kind))
                .collect(),
        ))
    }

    /// Contracts and deletes the elements named in `spec`.
    ///
    /// Contraction and deletion of disjoint sets commute; contractions are
    /// applied in ascending id order and each must hit a non-loop of the
    /// matroid reached so far.
    pub fn minor(&self, spec: &MinorSpec) -> Result<Matroid> {
        self.check_subset(&spec.contracted)?;
        self.check_subset(&spec.deleted)?;
        if !spec.contracted.is_disjoint(&spec.deleted) {
            return Err(Error::Precondition(format!(
                "elements {{{}}} are both contracted and deleted",
                self.labels_of(&spec.contracted.intersection(&spec.deleted))
                    .join(",")
            )));
        }
        let mut acc = ElementSet::new();
        for c in &spec.contracted {
            let grown = acc.with(c);
            if !self.independent(&grown) {
                return Err(Error::ContractLoop(self.label(c).to_string()));
            }
            acc = grown;
        }
        let mut m = Matroid {
            oracle: Arc::clone(&self.oracle),
            labels: Arc::clone(&self.labels),
            ground: self
                .ground
                .difference(&spec.contracted)
                .difference(&spec.deleted),
            contracted: self.contracted.union(&spec.contracted),
            rank: 0,
            queries: Arc::new(AtomicU64::new(0)),
        };
        m.rank = m.greedy_rank(&m.ground.clone());
        Ok(m)
    }

    /// `M / e`
    pub fn contract(&self, e: ElementId) -> Result<Matroid> {
        self.minor(&MinorSpec::contract(e))
    }

    /// `M \ e`
    pub fn delete(&self, e: ElementId) -> Result<Matroid> {
        self.minor(&MinorSpec::delete(e))
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("ground", &self.labels_of(&self.ground))
            .field("contracted", &self.labels_of(&self.contracted))
            .field("rank", &self.rank)
            .finish()
    }
}

/// A basis of some matroid. Obtained from [`Matroid::check_basis`] or from
/// an optimizer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis(ElementSet);

impl Basis {
    pub(crate) fn new_unchecked(set: ElementSet) -> Self {
        Basis(set)
    }

    pub fn elements(&self) -> &ElementSet {
        &self.0
    }

    pub fn contains(&self, e: ElementId) -> bool {
        self.0.contains(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> crate::element::Iter<'_> {
        self.0.iter()
    }

    pub fn into_set(self) -> ElementSet {
        self.0
    }
}

/// A minimal dependent set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit(ElementSet);

impl Circuit {
    pub(crate) fn new_unchecked(set: ElementSet) -> Self {
        Circuit(set)
    }

    pub fn elements(&self) -> &ElementSet {
        &self.0
    }

    pub fn into_set(self) -> ElementSet {
        self.0
    }
}

/// Elements to contract and to delete; the two sets must be disjoint.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MinorSpec {
    pub contracted: ElementSet,
    pub deleted: ElementSet,
}

impl MinorSpec {
    pub fn new(contracted: ElementSet, deleted: ElementSet) -> Self {
        MinorSpec { contracted, deleted }
    }

    pub fn contract(e: ElementId) -> Self {
        MinorSpec::new(ElementSet::singleton(e), ElementSet::new())
    }

    pub fn delete(e: ElementId) -> Self {
        MinorSpec::new(ElementSet::new(), ElementSet::singleton(e))
    }

    /// The minor equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &MinorSpec) -> MinorSpec {
        MinorSpec {
            contracted: self.contracted.union(&next.contracted),
            deleted: self.deleted.union(&next.deleted),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{graphic, uniform, GraphDescription, UniformParams};

    fn k3() -> Matroid {
        graphic(&GraphDescription::new(3, [("a", 0, 1), ("b", 1, 2), ("c", 0, 2)])).unwrap()
    }

    fn u24() -> Matroid {
        uniform(&UniformParams::new(2, ["e1", "e2", "e3", "e4"])).unwrap()
    }

    fn set(m: &Matroid, labels: &[&str]) -> ElementSet {
        m.elements(labels.iter().copied()).unwrap()
    }

    fn basis(m: &Matroid, labels: &[&str]) -> Basis {
        m.check_basis(&set(m, labels)).unwrap()
    }

    #[test]
    fn independence_on_triangle() {
        let m = k3();
        assert!(m.is_independent(&ElementSet::new()).unwrap());
        assert!(!m.is_independent(&set(&m, &["a", "b", "c"])).unwrap());
        assert!(m.is_independent(&set(&m, &["a", "b"])).unwrap());
        let stranger = ElementSet::singleton(ElementId::new(9));
        assert!(matches!(m.is_independent(&stranger), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn ranks() {
        let m = k3();
        assert_eq!(m.rank_of(&ElementSet::new()).unwrap(), 0);
        assert_eq!(m.rank_of(m.ground()).unwrap(), 2);
        let u = u24();
        assert_eq!(u.rank_of(&set(&u, &["e1", "e2", "e3"])).unwrap(), 2);
        assert_eq!(u.rank(), 2);
    }

    #[test]
    fn fundamental_circuits_and_paths() {
        let m = k3();
        let b = basis(&m, &["a", "b"]);
        let c = m.element("c").unwrap();
        assert_eq!(m.fundamental_circuit(&b, c).unwrap().into_set(), set(&m, &["a", "b", "c"]));
        assert_eq!(m.fundamental_path(&b, c).unwrap(), set(&m, &["a", "b"]));
        let a = m.element("a").unwrap();
        assert!(matches!(m.fundamental_circuit(&b, a), Err(Error::Precondition(_))));

        let u = u24();
        let ub = basis(&u, &["e1", "e2"]);
        let e3 = u.element("e3").unwrap();
        let e4 = u.element("e4").unwrap();
        assert_eq!(u.fundamental_circuit(&ub, e3).unwrap().into_set(), set(&u, &["e1", "e2", "e3"]));
        assert_eq!(u.fundamental_path(&ub, e4).unwrap(), set(&u, &["e1", "e2"]));
    }

    #[test]
    fn fundamental_path_in_four_cycle() {
        let m = graphic(&GraphDescription::new(
            4,
            [("p", 0, 1), ("q", 1, 2), ("r", 2, 3), ("s", 3, 0)],
        ))
        .unwrap();
        let b = basis(&m, &["p", "q", "r"]);
        let s = m.element("s").unwrap();
        assert_eq!(m.fundamental_path(&b, s).unwrap(), set(&m, &["p", "q", "r"]));
    }

    #[test]
    fn fundamental_cuts() {
        let m = k3();
        let b = basis(&m, &["a", "b"]);
        let a = m.element("a").unwrap();
        assert_eq!(m.fundamental_cut(&b, a).unwrap(), set(&m, &["c"]));
        let c = m.element("c").unwrap();
        assert!(matches!(m.fundamental_cut(&b, c), Err(Error::Precondition(_))));

        let u = u24();
        let ub = basis(&u, &["e1", "e2"]);
        let e1 = u.element("e1").unwrap();
        assert_eq!(u.fundamental_cut(&ub, e1).unwrap(), set(&u, &["e3", "e4"]));
    }

    #[test]
    fn not_a_basis_is_rejected() {
        let m = k3();
        let fake = Basis::new_unchecked(set(&m, &["a"]));
        let c = m.element("c").unwrap();
        assert!(matches!(m.fundamental_circuit(&fake, c), Err(Error::Precondition(_))));
    }

    #[test]
    fn contraction_of_triangle_edge_gives_parallel_pair() {
        let m = k3();
        let mc = m.contract(m.element("c").unwrap()).unwrap();
        assert_eq!(mc.rank(), 1);
        assert_eq!(mc.labels_of(mc.ground()), ["a", "b"]);
        assert!(mc.is_independent(&set(&m, &["a"])).unwrap());
        assert!(mc.is_independent(&set(&m, &["b"])).unwrap());
        assert!(!mc.is_independent(&set(&m, &["a", "b"])).unwrap());
        // ids survive the minor
        assert_eq!(mc.element("a").unwrap(), m.element("a").unwrap());
        assert!(mc.element("c").is_err());
    }

    #[test]
    fn deletion_of_triangle_edge_gives_free_pair() {
        let m = k3();
        let md = m.delete(m.element("c").unwrap()).unwrap();
        assert_eq!(md.rank(), 2);
        assert!(md.is_independent(&set(&m, &["a", "b"])).unwrap());
        let (_, coloops) = md.loops_and_coloops();
        assert_eq!(coloops, set(&m, &["a", "b"]));
    }

    #[test]
    fn empty_minor_is_identity() {
        let m = k3();
        let same = m.minor(&MinorSpec::default()).unwrap();
        assert_eq!(same.ground(), m.ground());
        assert_eq!(same.rank(), m.rank());
    }

    #[test]
    fn minor_spec_errors() {
        let m = graphic(&GraphDescription::new(2, [("l", 0, 0), ("p", 0, 1), ("q", 0, 1)])).unwrap();
        let l = m.element("l").unwrap();
        assert_eq!(m.contract(l).unwrap_err(), Error::ContractLoop("l".into()));
        let p = m.element("p").unwrap();
        let q = m.element("q").unwrap();
        // q becomes a loop once p is contracted
        let both = MinorSpec::new(set(&m, &["p", "q"]), ElementSet::new());
        assert_eq!(m.minor(&both).unwrap_err(), Error::ContractLoop("q".into()));
        let overlap = MinorSpec::new(ElementSet::singleton(p), ElementSet::singleton(p));
        assert!(matches!(m.minor(&overlap), Err(Error::Precondition(_))));
        let _ = q;
    }

    #[test]
    fn loops_and_coloops_detection() {
        let m = k3();
        assert_eq!(m.loops_and_coloops(), (ElementSet::new(), ElementSet::new()));
        m.assert_loopless().unwrap();

        let path = graphic(&GraphDescription::new(3, [("x", 0, 1), ("y", 1, 2)])).unwrap();
        let (loops, coloops) = path.loops_and_coloops();
        assert!(loops.is_empty());
        assert_eq!(coloops, path.ground().clone());
        assert_eq!(
            path.assert_loopless().unwrap_err(),
            Error::NotLoopless(vec![
                ("x".into(), DefectKind::Coloop),
                ("y".into(), DefectKind::Coloop)
            ])
        );

        let selfloop = graphic(&GraphDescription::new(1, [("l", 0, 0)])).unwrap();
        assert_eq!(
            selfloop.assert_loopless().unwrap_err(),
            Error::NotLoopless(vec![("l".into(), DefectKind::Loop)])
        );
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let err = Matroid::new(vec!["a".into(), "a".into()], |_: &ElementSet| true).unwrap_err();
        assert_eq!(err, Error::DuplicateElement("a".into()));
    }

    #[test]
    fn queries_are_counted() {
        let m = k3();
        let before = m.query_count();
        m.is_independent(&set(&m, &["a"])).unwrap();
        assert_eq!(m.query_count(), before + 1);
    }
}
