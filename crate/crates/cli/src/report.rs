//! The `analyze` report and its consistency checks.

use anyhow::{bail, ensure};
use serde::{Deserialize, Serialize};

use tropmat::tropical::greedy_basis;
use tropmat::{format_rational, parse_rational, BruteForce, EnumerationCap, Optimum, Rational};

use crate::instance::Instance;
use crate::table::Table;

pub const SCHEMA: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PersistencySets {
    pub all: Vec<String>,
    pub none: Vec<String>,
    pub some: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub id: String,
    pub weight: String,
    pub in_basis: bool,
    pub minmax: String,
    pub bottleneck: String,
    pub tolerance: String,
    pub persistency: String,
    pub contract_value: String,
    pub delete_value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub tool_version: String,
    pub instance_digest: String,
    pub optimal_value: String,
    pub optimal_basis: Vec<String>,
    pub persistency: PersistencySets,
    pub elements: Vec<ElementRecord>,
}

fn q(s: &str) -> anyhow::Result<Rational> {
    Ok(parse_rational(s)?)
}

impl AnalysisReport {
    pub fn build(inst: &Instance) -> anyhow::Result<Self> {
        let m = &inst.matroid;
        let opt = Optimum::new(m, &inst.weights)?;
        let part = opt.persistency()?;
        let mut elements = Vec::with_capacity(m.len());
        for e in m.ground() {
            let a = opt.analysis(e)?;
            let k = opt.kirchhoff(e)?;
            elements.push(ElementRecord {
                id: m.label(e).to_string(),
                weight: format_rational(&a.weight),
                in_basis: opt.basis().contains(e),
                minmax: format_rational(&a.minmax),
                bottleneck: format_rational(&a.bottleneck),
                tolerance: format_rational(&a.tolerance),
                persistency: part.class_of(e).expect("partition covers E").as_str().to_string(),
                contract_value: format_rational(&k.contract_value),
                delete_value: format_rational(&k.delete_value),
            });
        }
        let report = AnalysisReport {
            schema: SCHEMA,
            tool_version: TOOL_VERSION.to_string(),
            instance_digest: inst.digest(),
            optimal_value: format_rational(opt.value()),
            optimal_basis: m.labels_of(opt.basis().elements()),
            persistency: PersistencySets {
                all: m.labels_of(&part.all),
                none: m.labels_of(&part.none),
                some: m.labels_of(&part.some),
            },
            elements,
        };
        report.validate()?;
        Ok(report)
    }

    /// Checks the records against each other: bottleneck, tolerance and
    /// Kirchhoff values follow from weight, min-max weight and the optimum;
    /// persistency follows from the sign of `minmax - weight`.
    pub fn validate(&self) -> anyhow::Result<()> {
        ensure!(self.schema == SCHEMA, "unsupported schema {}", self.schema);
        let total = q(&self.optimal_value)?;
        let mut basis_weight = Rational::from_integer(0.into());
        for r in &self.elements {
            let (w, mu) = (q(&r.weight)?, q(&r.minmax)?);
            let b = w.clone().min(mu.clone());
            let alpha = if mu > w { &mu - &w } else { &w - &mu };
            let class = match mu.cmp(&w) {
                std::cmp::Ordering::Greater => "all",
                std::cmp::Ordering::Less => "none",
                std::cmp::Ordering::Equal => "some",
            };
            let checks = [
                ("bottleneck", q(&r.bottleneck)? == b),
                ("tolerance", q(&r.tolerance)? == alpha),
                ("contract_value", q(&r.contract_value)? == &total - &b),
                ("delete_value", q(&r.delete_value)? == &total - &b + &mu),
                ("persistency", r.persistency == class),
                ("in_basis", r.in_basis == self.optimal_basis.contains(&r.id)),
            ];
            for (field, ok) in checks {
                if !ok {
                    bail!("inconsistent {field} for element `{}`", r.id);
                }
            }
            let listed = match class {
                "all" => &self.persistency.all,
                "none" => &self.persistency.none,
                _ => &self.persistency.some,
            };
            ensure!(listed.contains(&r.id), "element `{}` missing from persistency class {class}", r.id);
            if r.in_basis {
                basis_weight += w;
            }
        }
        ensure!(
            basis_weight == total,
            "optimal basis weighs {basis_weight}, report says {total}"
        );
        Ok(())
    }

    /// Recomputes every value independently: brute-force enumeration for
    /// the optimum, min-max weights and persistency (when within `cap`),
    /// and fresh greedy solves of each contraction and deletion.
    pub fn verify(&self, inst: &Instance, cap: EnumerationCap) -> anyhow::Result<Vec<String>> {
        let m = &inst.matroid;
        let x = &inst.weights;
        let mut notes = Vec::new();
        let mismatch = |what: String, reported: &str, fresh: &Rational| -> anyhow::Result<()> {
            if q(reported)? != *fresh {
                bail!("verify: {what} reported {reported}, recomputed {fresh}");
            }
            Ok(())
        };
        for (e, r) in m.ground().iter().zip(&self.elements) {
            ensure!(r.id == m.label(e), "verify: record order differs from ground order");
            let contracted = greedy_basis(&m.contract(e)?, x)?.value;
            mismatch(format!("contract value of `{}`", r.id), &r.contract_value, &contracted)?;
            let deleted = greedy_basis(&m.delete(e)?, x)?.value;
            mismatch(format!("delete value of `{}`", r.id), &r.delete_value, &deleted)?;
        }
        match BruteForce::new(m, cap) {
            Ok(brute) => {
                let best = brute.optimum(x)?;
                mismatch("optimal value".into(), &self.optimal_value, &best.value)?;
                for (e, r) in m.ground().iter().zip(&self.elements) {
                    mismatch(format!("min-max weight of `{}`", r.id), &r.minmax, &brute.minmax(x, e)?)?;
                }
                let [all, none, some] = brute.persistency_classes(x)?;
                let sets = PersistencySets {
                    all: m.labels_of(&all),
                    none: m.labels_of(&none),
                    some: m.labels_of(&some),
                };
                ensure!(
                    sets == self.persistency,
                    "verify: persistency classes differ from enumeration: {sets:?}"
                );
            }
            Err(tropmat::Error::CapExceeded { size, cap }) => notes.push(format!(
                "verify: {size} elements exceed the enumeration cap {cap}; brute-force checks skipped"
            )),
            Err(e) => return Err(e.into()),
        }
        Ok(notes)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "optimal value: {}\noptimal basis: {{{}}}\ndigest: {}\n\n",
            self.optimal_value,
            self.optimal_basis.join(", "),
            self.instance_digest
        );
        let mut t = Table::new([
            "element", "weight", "basis", "minmax", "bottleneck", "tolerance", "persistency",
            "contract", "delete",
        ]);
        for r in &self.elements {
            t.row([
                r.id.as_str(),
                &r.weight,
                if r.in_basis { "yes" } else { "no" },
                &r.minmax,
                &r.bottleneck,
                &r.tolerance,
                &r.persistency,
                &r.contract_value,
                &r.delete_value,
            ]);
        }
        out.push_str(&t.render());
        out
    }
}
