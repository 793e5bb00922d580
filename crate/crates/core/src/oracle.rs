//! Exhaustive ground truth for small matroids.
//!
//! Everything here is computed from a full table of independence answers
//! over all subsets of the ground set, evaluating the defining formulas
//! directly. Nothing is shared with the optimizer in [`crate::tropical`];
//! the only contact point is the independence predicate.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::element::{ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::matroid::{Basis, Circuit, Matroid};
use crate::rational::Rational;
use crate::tropical::OptResult;
use crate::weights::Weighting;

/// Size limits for exponential walks, checked before any enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationCap {
    /// Ground-set bound for subset enumeration (bases, cocircuits, optima).
    pub subsets: usize,
    /// Ground-set bound for circuit enumeration.
    pub circuits: usize,
}

impl Default for EnumerationCap {
    fn default() -> Self {
        EnumerationCap {
            subsets: 16,
            circuits: 12,
        }
    }
}

impl EnumerationCap {
    pub fn uniform(limit: usize) -> Self {
        EnumerationCap {
            subsets: limit,
            circuits: limit,
        }
    }
}

/// Hard ceiling independent of any configured cap; masks are `u32`.
const MAX_BITS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NextBestMode {
    Avoiding,
    Containing,
}

/// Independence table of a small matroid.
pub struct BruteForce<'a> {
    matroid: &'a Matroid,
    elements: Vec<ElementId>,
    independent: Vec<bool>,
    cap: EnumerationCap,
}

impl<'a> BruteForce<'a> {
    pub fn new(matroid: &'a Matroid, cap: EnumerationCap) -> Result<Self> {
        let n = matroid.len();
        let limit = cap.subsets.min(MAX_BITS);
        if n > limit {
            return Err(Error::CapExceeded { size: n, cap: limit });
        }
        let elements: Vec<ElementId> = matroid.ground().iter().collect();
        let mut brute = BruteForce {
            matroid,
            elements,
            independent: Vec::new(),
            cap,
        };
        brute.independent = (0..1u32 << n)
            .map(|mask| matroid.independent(&brute.set(mask)))
            .collect();
        Ok(brute)
    }

    pub fn matroid(&self) -> &'a Matroid {
        self.matroid
    }

    fn set(&self, mask: u32) -> ElementSet {
        self.elements
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect()
    }

    fn mask(&self, set: &ElementSet) -> Result<u32> {
        let mut mask = 0;
        for e in set {
            let i = self
                .elements
                .iter()
                .position(|&g| g == e)
                .ok_or_else(|| Error::UnknownElement(e.to_string()))?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    fn bit(&self, e: ElementId) -> Result<u32> {
        self.mask(&ElementSet::singleton(e))
    }

    fn full(&self) -> u32 {
        ((1u64 << self.elements.len()) - 1) as u32
    }

    fn masks(&self) -> impl Iterator<Item = u32> {
        0..=self.full()
    }

    /// Sorts masks into the lexicographic order of their sorted element ids.
    fn sorted_sets(&self, masks: impl Iterator<Item = u32>) -> Vec<ElementSet> {
        let mut sets: Vec<ElementSet> = masks.map(|m| self.set(m)).collect();
        sets.sort();
        sets
    }

    pub fn rank(&self) -> usize {
        self.masks()
            .filter(|&m| self.independent[m as usize])
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    fn basis_masks(&self) -> Vec<u32> {
        let r = self.rank() as u32;
        self.masks()
            .filter(|&m| self.independent[m as usize] && m.count_ones() == r)
            .collect()
    }

    pub fn bases(&self) -> Vec<Basis> {
        self.sorted_sets(self.basis_masks().into_iter())
            .into_iter()
            .map(Basis::new_unchecked)
            .collect()
    }

    fn circuit_masks(&self) -> Result<Vec<u32>> {
        let n = self.elements.len();
        if n > self.cap.circuits {
            return Err(Error::CapExceeded {
                size: n,
                cap: self.cap.circuits,
            });
        }
        Ok(self
            .masks()
            .filter(|&m| {
                !self.independent[m as usize]
                    && (0..n)
                        .filter(|i| m & (1 << i) != 0)
                        .all(|i| self.independent[(m & !(1 << i)) as usize])
            })
            .collect())
    }

    /// All minimal dependent sets.
    pub fn circuits(&self) -> Result<Vec<Circuit>> {
        Ok(self
            .sorted_sets(self.circuit_masks()?.into_iter())
            .into_iter()
            .map(Circuit::new_unchecked)
            .collect())
    }

    fn cocircuit_masks(&self) -> Vec<u32> {
        let bases = self.basis_masks();
        let n = self.elements.len();
        // codependent: meets every basis (no basis inside the complement)
        let codependent = |m: u32| bases.iter().all(|&b| b & m != 0);
        self.masks()
            .filter(|&m| {
                codependent(m)
                    && (0..n)
                        .filter(|i| m & (1 << i) != 0)
                        .all(|i| !codependent(m & !(1 << i)))
            })
            .collect()
    }

    /// All minimal sets meeting every basis, i.e. circuits of the dual,
    /// whose bases are the complements of the bases.
    pub fn cocircuits(&self) -> Vec<ElementSet> {
        self.sorted_sets(self.cocircuit_masks().into_iter())
    }

    fn weight_of(&self, x: &Weighting, mask: u32) -> Result<Rational> {
        let mut total = Rational::zero();
        for (i, &e) in self.elements.iter().enumerate() {
            if mask & (1 << i) != 0 {
                let w = x
                    .get(e)
                    .ok_or_else(|| Error::MissingWeight(self.matroid.label(e).to_string()))?;
                total += w;
            }
        }
        Ok(total)
    }

    fn weighted_bases(&self, x: &Weighting) -> Result<Vec<(ElementSet, Rational)>> {
        let mut out = Vec::new();
        for b in self.basis_masks() {
            out.push((self.set(b), self.weight_of(x, b)?));
        }
        out.sort();
        Ok(out)
    }

    /// Minimum over all bases; among ties the lexicographically first basis.
    pub fn optimum(&self, x: &Weighting) -> Result<OptResult> {
        lightest(self.weighted_bases(x)?.into_iter())
            .ok_or_else(|| Error::Internal("matroid without bases".into()))
    }

    pub fn all_optimal_bases(&self, x: &Weighting) -> Result<Vec<Basis>> {
        let weighted = self.weighted_bases(x)?;
        let best = weighted.iter().map(|(_, w)| w).min().cloned();
        Ok(weighted
            .into_iter()
            .filter(|(_, w)| Some(w) == best.as_ref())
            .map(|(b, _)| Basis::new_unchecked(b))
            .collect())
    }

    /// `min over e-circuits C of max over C - e of x`.
    pub fn minmax(&self, x: &Weighting, e: ElementId) -> Result<Rational> {
        let bit = self.bit(e)?;
        let mut best: Option<Rational> = None;
        for c in self.circuit_masks()? {
            if c & bit == 0 {
                continue;
            }
            let rest = c & !bit;
            if rest == 0 {
                return Err(self.degenerate(e, crate::error::DefectKind::Loop));
            }
            let heaviest = self
                .elements
                .iter()
                .enumerate()
                .filter(|&(i, _)| rest & (1 << i) != 0)
                .map(|(_, &f)| x.get(f).cloned().ok_or_else(|| self.missing(f)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .max()
                .expect("nonempty");
            if best.as_ref().is_none_or(|b| heaviest < *b) {
                best = Some(heaviest);
            }
        }
        best.ok_or_else(|| self.degenerate(e, crate::error::DefectKind::Coloop))
    }

    /// `max over e-cocircuits D of min over D - e of x`.
    pub fn maxmin(&self, x: &Weighting, e: ElementId) -> Result<Rational> {
        let bit = self.bit(e)?;
        let mut best: Option<Rational> = None;
        for d in self.cocircuit_masks() {
            if d & bit == 0 {
                continue;
            }
            let rest = d & !bit;
            if rest == 0 {
                return Err(self.degenerate(e, crate::error::DefectKind::Coloop));
            }
            let lightest = self
                .elements
                .iter()
                .enumerate()
                .filter(|&(i, _)| rest & (1 << i) != 0)
                .map(|(_, &f)| x.get(f).cloned().ok_or_else(|| self.missing(f)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .min()
                .expect("nonempty");
            if best.as_ref().is_none_or(|b| lightest > *b) {
                best = Some(lightest);
            }
        }
        best.ok_or_else(|| self.degenerate(e, crate::error::DefectKind::Loop))
    }

    /// Lightest basis avoiding or containing `e`.
    pub fn next_best(&self, x: &Weighting, e: ElementId, mode: NextBestMode) -> Result<OptResult> {
        self.bit(e)?;
        let family = self.weighted_bases(x)?.into_iter().filter(|(b, _)| match mode {
            NextBestMode::Avoiding => !b.contains(e),
            NextBestMode::Containing => b.contains(e),
        });
        lightest(family).ok_or_else(|| match mode {
            NextBestMode::Avoiding => self.degenerate(e, crate::error::DefectKind::Coloop),
            NextBestMode::Containing => self.degenerate(e, crate::error::DefectKind::Loop),
        })
    }

    /// Splits the ground set into elements in all, none, or some optimal bases.
    pub fn persistency_classes(&self, x: &Weighting) -> Result<[ElementSet; 3]> {
        let optimal = self.all_optimal_bases(x)?;
        let (mut all, mut none, mut some) = (ElementSet::new(), ElementSet::new(), ElementSet::new());
        for &e in &self.elements {
            let hits = optimal.iter().filter(|b| b.contains(e)).count();
            if hits == optimal.len() {
                all.insert(e);
            } else if hits == 0 {
                none.insert(e);
            } else {
                some.insert(e);
            }
        }
        Ok([all, none, some])
    }

    /// A bijection `φ: A → B` with `A - a + φ(a)` a basis for every `a`,
    /// found as a perfect matching in the admissible-exchange graph.
    pub fn exchange_bijection(&self, a: &Basis, b: &Basis) -> Result<BTreeMap<ElementId, ElementId>> {
        let (ma, mb) = (self.mask(a.elements())?, self.mask(b.elements())?);
        let r = self.rank() as u32;
        for (name, m) in [("first", ma), ("second", mb)] {
            if !self.independent[m as usize] || m.count_ones() != r {
                return Err(Error::Precondition(format!("{name} set is not a basis")));
            }
        }
        let left: Vec<usize> = (0..self.elements.len()).filter(|i| ma & (1 << i) != 0).collect();
        let right: Vec<usize> = (0..self.elements.len()).filter(|i| mb & (1 << i) != 0).collect();
        let admissible: Vec<Vec<usize>> = left
            .iter()
            .map(|&i| {
                (0..right.len())
                    .filter(|&j| {
                        let swapped = (ma & !(1 << i)) | (1 << right[j]);
                        swapped.count_ones() == r && self.independent[swapped as usize]
                    })
                    .collect()
            })
            .collect();
        let mut owner: Vec<Option<usize>> = vec![None; right.len()];
        for l in 0..left.len() {
            let mut seen = vec![false; right.len()];
            if !augment(l, &admissible, &mut owner, &mut seen) {
                return Err(Error::Internal(
                    "no perfect exchange matching between two bases".into(),
                ));
            }
        }
        Ok(owner
            .iter()
            .enumerate()
            .map(|(j, l)| {
                let l = l.expect("perfect matching");
                (self.elements[left[l]], self.elements[right[j]])
            })
            .collect())
    }

    /// Verifies nonemptiness, downward closure and augmentation on the
    /// stored table. Returns a description of the first violation.
    pub fn check_axioms(&self) -> Result<()> {
        let n = self.elements.len();
        if !self.independent[0] {
            return Err(Error::Construction("empty set is dependent".into()));
        }
        let independent: Vec<u32> = self.masks().filter(|&m| self.independent[m as usize]).collect();
        for &m in &independent {
            for i in (0..n).filter(|i| m & (1 << i) != 0) {
                if !self.independent[(m & !(1 << i)) as usize] {
                    return Err(Error::Construction(format!(
                        "downward closure fails: {:?} independent but {:?} is not",
                        self.set(m),
                        self.set(m & !(1 << i))
                    )));
                }
            }
        }
        // with downward closure, augmenting from |J| = |I| + 1 suffices
        for &i_mask in &independent {
            for &j_mask in &independent {
                if j_mask.count_ones() != i_mask.count_ones() + 1 {
                    continue;
                }
                let candidates = j_mask & !i_mask;
                let augments = (0..n)
                    .filter(|k| candidates & (1 << k) != 0)
                    .any(|k| self.independent[(i_mask | (1 << k)) as usize]);
                if !augments {
                    return Err(Error::Construction(format!(
                        "augmentation fails for {:?} from {:?}",
                        self.set(i_mask),
                        self.set(j_mask)
                    )));
                }
            }
        }
        Ok(())
    }

    fn degenerate(&self, e: ElementId, kind: crate::error::DefectKind) -> Error {
        Error::Degenerate {
            element: self.matroid.label(e).to_string(),
            kind,
            context: "the requested family is empty",
        }
    }

    fn missing(&self, e: ElementId) -> Error {
        Error::MissingWeight(self.matroid.label(e).to_string())
    }
}

fn lightest(family: impl Iterator<Item = (ElementSet, Rational)>) -> Option<OptResult> {
    let mut best: Option<(ElementSet, Rational)> = None;
    for (b, w) in family {
        if best.as_ref().is_none_or(|(_, bw)| w < *bw) {
            best = Some((b, w));
        }
    }
    best.map(|(b, value)| OptResult {
        basis: Basis::new_unchecked(b),
        value,
    })
}

fn augment(l: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &j in &adj[l] {
        if seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|other| augment(other, adj, owner, seen)) {
            owner[j] = Some(l);
            return true;
        }
    }
    false
}

pub fn enumerate_bases(m: &Matroid, cap: EnumerationCap) -> Result<Vec<Basis>> {
    Ok(BruteForce::new(m, cap)?.bases())
}

pub fn enumerate_circuits(m: &Matroid, cap: EnumerationCap) -> Result<Vec<Circuit>> {
    BruteForce::new(m, cap)?.circuits()
}

pub fn enumerate_cocircuits(m: &Matroid, cap: EnumerationCap) -> Result<Vec<ElementSet>> {
    Ok(BruteForce::new(m, cap)?.cocircuits())
}

pub fn brute_minmax(m: &Matroid, x: &Weighting, e: ElementId) -> Result<Rational> {
    BruteForce::new(m, EnumerationCap::default())?.minmax(x, e)
}

pub fn brute_optimum(m: &Matroid, x: &Weighting) -> Result<OptResult> {
    BruteForce::new(m, EnumerationCap::default())?.optimum(x)
}

pub fn all_optimal_bases(m: &Matroid, x: &Weighting) -> Result<Vec<Basis>> {
    BruteForce::new(m, EnumerationCap::default())?.all_optimal_bases(x)
}

pub fn brute_next_best(m: &Matroid, x: &Weighting, e: ElementId, mode: NextBestMode) -> Result<OptResult> {
    BruteForce::new(m, EnumerationCap::default())?.next_best(x, e, mode)
}

pub fn find_exchange_bijection(m: &Matroid, a: &Basis, b: &Basis) -> Result<BTreeMap<ElementId, ElementId>> {
    BruteForce::new(m, EnumerationCap::default())?.exchange_bijection(a, b)
}

/// Independent reimplementations of the instance-family predicates.
pub mod reference {
    use crate::rational::Rational;
    use num_traits::Zero;

    /// Forest test by component counting: `|S| = |V| - components(V, S)`.
    pub fn is_forest(vertices: usize, edges: &[(usize, usize)]) -> bool {
        let mut adjacency = vec![Vec::new(); vertices];
        for &(u, v) in edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut seen = vec![false; vertices];
        let mut components = 0;
        for start in 0..vertices {
            if seen[start] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        edges.len() == vertices - components
    }

    /// Laplace expansion along the first row.
    pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
        let n = matrix.len();
        if n == 0 {
            return Rational::from_integer(1.into());
        }
        let mut total = Rational::zero();
        for col in 0..n {
            if matrix[0][col].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = matrix[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != col)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &matrix[0][col] * determinant(&minor);
            if col % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// Columns are independent iff some maximal square minor is nonsingular.
    pub fn columns_independent(rows: &[Vec<Rational>], columns: &[usize]) -> bool {
        let k = columns.len();
        if k == 0 {
            return true;
        }
        if k > rows.len() {
            return false;
        }
        row_subsets(rows.len(), k).into_iter().any(|chosen| {
            let square: Vec<Vec<Rational>> = chosen
                .iter()
                .map(|&r| columns.iter().map(|&c| rows[r][c].clone()).collect())
                .collect();
            !determinant(&square).is_zero()
        })
    }

    fn row_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect())
            .collect()
    }
}
