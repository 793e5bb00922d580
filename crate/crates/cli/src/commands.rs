use std::collections::BTreeSet;
use std::path::Path;

use anyhow::{bail, ensure};
use serde::Serialize;

use tropmat::oracle::BruteForce;
use tropmat::rational::integer;
use tropmat::tropical::greedy_basis;
use tropmat::{format_rational, Basis, ElementSet, EnumerationCap, Matroid, Optimum, Rational};

use crate::args::{Cli, Command, Family, Format};
use crate::instance::{Instance, InstanceFile};
use crate::report::{AnalysisReport, SCHEMA};
use crate::table::Table;

/// What a command prints: the JSON and text renderings of one result, plus
/// diagnostics for stderr.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: String,
    pub text: String,
    pub notes: Vec<String>,
}

impl Output {
    fn new<T: Serialize>(value: &T, text: String) -> Self {
        let mut json = serde_json::to_string_pretty(value).expect("plain data serializes");
        json.push('\n');
        Output {
            json,
            text,
            notes: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> &str {
        match format {
            Format::Json => &self.json,
            Format::Text => &self.text,
        }
    }
}

struct Ctx {
    verify: bool,
    cap: EnumerationCap,
}

pub fn run(cli: &Cli) -> anyhow::Result<Output> {
    let ctx = Ctx {
        verify: cli.verify,
        cap: cli
            .cap
            .map(|n| EnumerationCap::uniform(n as usize))
            .unwrap_or_default(),
    };
    match &cli.command {
        Command::Solve(input) => solve(&load(&input.file)?, &ctx),
        Command::Analyze(input) => analyze(&load(&input.file)?, &ctx),
        Command::Postopt {
            input,
            element,
            new_weight,
        } => postopt(&load(&input.file)?, element, new_weight, &ctx),
        Command::Sensitivity {
            input,
            basis,
            changes,
        } => sensitivity(&load(&input.file)?, basis.as_deref(), changes, &ctx),
        Command::Perturb {
            input,
            basis,
            epsilon,
        } => perturb(&load(&input.file)?, basis.as_deref(), epsilon, &ctx),
        Command::Oracle { input, family } => oracle(&load(&input.file)?, *family, &ctx),
    }
}

fn load(path: &Path) -> anyhow::Result<Instance> {
    InstanceFile::load(path)
}

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

fn skipped(size: usize, cap: usize) -> String {
    format!("verify: {size} elements exceed the enumeration cap {cap}; brute-force check skipped")
}

/// Brute-force optimum when the instance is small enough, else a note.
fn brute_value(m: &Matroid, inst: &Instance, cap: EnumerationCap, notes: &mut Vec<String>) -> anyhow::Result<Option<Rational>> {
    match BruteForce::new(m, cap) {
        Ok(b) => Ok(Some(b.optimum(&inst.weights)?.value)),
        Err(tropmat::Error::CapExceeded { size, cap }) => {
            notes.push(skipped(size, cap));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn chosen_basis(m: &Matroid, opt: &Optimum, labels: Option<&[String]>) -> anyhow::Result<Basis> {
    let Some(labels) = labels else {
        return Ok(opt.basis().clone());
    };
    let set = m.elements(labels.iter().map(String::as_str))?;
    ensure!(set.len() == labels.len(), "basis lists an element twice");
    let basis = m.check_basis(&set)?;
    Ok(opt.check_optimal(&basis)?)
}

#[derive(Serialize)]
struct SolveOutput {
    schema: u32,
    instance_digest: String,
    optimal_value: String,
    optimal_basis: Vec<String>,
}

fn solve(inst: &Instance, ctx: &Ctx) -> anyhow::Result<Output> {
    let m = &inst.matroid;
    let opt = Optimum::new(m, &inst.weights)?;
    let mut notes = Vec::new();
    if ctx.verify {
        if let Some(v) = brute_value(m, inst, ctx.cap, &mut notes)? {
            ensure!(&v == opt.value(), "verify: optimal value {} but enumeration gives {v}", opt.value());
        }
    }
    let out = SolveOutput {
        schema: SCHEMA,
        instance_digest: inst.digest(),
        optimal_value: format_rational(opt.value()),
        optimal_basis: m.labels_of(opt.basis().elements()),
    };
    let text = format!(
        "optimal value: {}\noptimal basis: {}\n",
        out.optimal_value,
        braces(&out.optimal_basis)
    );
    let mut o = Output::new(&out, text);
    o.notes = notes;
    Ok(o)
}

fn analyze(inst: &Instance, ctx: &Ctx) -> anyhow::Result<Output> {
    let report = AnalysisReport::build(inst)?;
    let notes = if ctx.verify {
        report.verify(inst, ctx.cap)?
    } else {
        Vec::new()
    };
    let mut o = Output::new(&report, report.to_text());
    o.notes = notes;
    Ok(o)
}

#[derive(Serialize)]
struct PostoptOutput {
    schema: u32,
    element: String,
    old_weight: String,
    new_weight: String,
    minmax: String,
    old_value: String,
    new_value: String,
}

fn postopt(inst: &Instance, label: &str, theta: &Rational, ctx: &Ctx) -> anyhow::Result<Output> {
    let m = &inst.matroid;
    let e = m.element(label)?;
    let opt = Optimum::new(m, &inst.weights)?;
    let value = opt.postopt_value(e, theta)?;
    let mut notes = Vec::new();
    if ctx.verify {
        let moved = inst.weights.with(e, theta.clone());
        let fresh = greedy_basis(m, &moved)?.value;
        ensure!(fresh == value, "verify: new value {value} but re-solving gives {fresh}");
        let reweighted = Instance {
            weights: moved,
            ..inst.clone()
        };
        if let Some(v) = brute_value(m, &reweighted, ctx.cap, &mut notes)? {
            ensure!(v == value, "verify: new value {value} but enumeration gives {v}");
        }
    }
    let out = PostoptOutput {
        schema: SCHEMA,
        element: label.to_string(),
        old_weight: format_rational(opt.weight(e)),
        new_weight: format_rational(theta),
        minmax: format_rational(&opt.minmax(e)?),
        old_value: format_rational(opt.value()),
        new_value: format_rational(&value),
    };
    let text = format!(
        "element {}: weight {} -> {} (minmax {})\noptimal value: {} -> {}\n",
        out.element, out.old_weight, out.new_weight, out.minmax, out.old_value, out.new_value
    );
    let mut o = Output::new(&out, text);
    o.notes = notes;
    Ok(o)
}

#[derive(Serialize)]
struct LocalVerdict {
    element: String,
    old_weight: String,
    new_weight: String,
    in_basis: bool,
    minmax: String,
    within_tolerance: bool,
    preserves_optimality: bool,
}

#[derive(Serialize)]
struct BoxDelta {
    element: String,
    delta: String,
    half_tolerance: String,
    within: bool,
}

#[derive(Serialize)]
struct Witness {
    basis: Vec<String>,
    value: String,
}

#[derive(Serialize)]
struct SensitivityOutput {
    schema: u32,
    basis: Vec<String>,
    local: Vec<LocalVerdict>,
    deltas: Vec<BoxDelta>,
    within_half_tolerance_box: bool,
    basis_remains_optimal: bool,
    basis_new_value: String,
    witness: Option<Witness>,
}

fn sensitivity(
    inst: &Instance,
    basis: Option<&[String]>,
    changes: &[(String, Rational)],
    ctx: &Ctx,
) -> anyhow::Result<Output> {
    let m = &inst.matroid;
    let opt = Optimum::new(m, &inst.weights)?;
    let basis = chosen_basis(m, &opt, basis)?;
    let mut seen = BTreeSet::new();
    let mut new = inst.weights.clone();
    let mut local = Vec::with_capacity(changes.len());
    for (label, theta) in changes {
        let e = m.element(label)?;
        if !seen.insert(e) {
            bail!("element `{label}` is changed twice");
        }
        new.set(e, theta.clone());
        let v = opt.local_sensitivity(&basis, e, theta)?;
        if ctx.verify {
            let moved = inst.weights.with(e, theta.clone());
            let fresh = greedy_basis(m, &moved)?.value == moved.total(basis.elements());
            ensure!(
                fresh == v.preserves_optimality,
                "verify: single change of `{label}` reported preserves_optimality={} but re-solving says {fresh}",
                v.preserves_optimality
            );
        }
        local.push(LocalVerdict {
            element: label.clone(),
            old_weight: format_rational(opt.weight(e)),
            new_weight: format_rational(theta),
            in_basis: v.in_basis,
            minmax: format_rational(&v.minmax),
            within_tolerance: v.within_tolerance,
            preserves_optimality: v.preserves_optimality,
        });
    }
    let report = opt.global_sensitivity(&basis, &new)?;
    if ctx.verify {
        let fresh = greedy_basis(m, &new)?.value == new.total(basis.elements());
        ensure!(
            fresh == report.basis_optimal,
            "verify: reported basis_remains_optimal={} but re-solving says {fresh}",
            report.basis_optimal
        );
    }
    let zero = integer(0);
    let out = SensitivityOutput {
        schema: SCHEMA,
        basis: m.labels_of(basis.elements()),
        local,
        deltas: report
            .deltas
            .iter()
            .filter(|d| d.delta != zero)
            .map(|d| BoxDelta {
                element: m.label(d.element).to_string(),
                delta: format_rational(&d.delta),
                half_tolerance: format_rational(&d.half_tolerance),
                within: d.within,
            })
            .collect(),
        within_half_tolerance_box: report.safe,
        basis_remains_optimal: report.basis_optimal,
        basis_new_value: format_rational(&new.total(basis.elements())),
        witness: report.witness.as_ref().map(|w| Witness {
            basis: m.labels_of(w.basis.elements()),
            value: format_rational(&w.value),
        }),
    };
    let mut text = format!("basis: {}\n\n", braces(&out.basis));
    let mut t = Table::new(["element", "old", "new", "basis", "minmax", "tolerance", "optimal"]);
    for v in &out.local {
        t.row([
            v.element.as_str(),
            &v.old_weight,
            &v.new_weight,
            if v.in_basis { "yes" } else { "no" },
            &v.minmax,
            if v.within_tolerance { "within" } else { "outside" },
            if v.preserves_optimality { "yes" } else { "no" },
        ]);
    }
    text.push_str(&t.render());
    text.push_str(&format!(
        "\nall changes within half tolerance: {}\nbasis remains optimal: {} (new value {})\n",
        if out.within_half_tolerance_box { "yes" } else { "no" },
        if out.basis_remains_optimal { "yes" } else { "no" },
        out.basis_new_value
    ));
    if let Some(w) = &out.witness {
        text.push_str(&format!("better basis: {} with value {}\n", braces(&w.basis), w.value));
    }
    Ok(Output::new(&out, text))
}

#[derive(Serialize)]
struct WeightChange {
    element: String,
    old: String,
    new: String,
    delta: String,
    bound: String,
}

#[derive(Serialize)]
struct PerturbOutput {
    schema: u32,
    basis: Vec<String>,
    epsilon: String,
    raised: String,
    lowered: String,
    exchange_gap: String,
    weights: Vec<WeightChange>,
    basis_old_value: String,
    basis_new_value: String,
    new_optimal_value: String,
    new_optimal_basis: Vec<String>,
}

fn perturb(inst: &Instance, basis: Option<&[String]>, epsilon: &Rational, ctx: &Ctx) -> anyhow::Result<Output> {
    let m = &inst.matroid;
    let x = &inst.weights;
    let opt = Optimum::new(m, x)?;
    let basis = chosen_basis(m, &opt, basis)?;
    let adv = opt.adversarial_perturbation(&basis, epsilon)?;
    let best = greedy_basis(m, &adv.weights)?;
    let new_value = adv.weights.total(basis.elements());
    let two = integer(2);
    let mut weights = Vec::with_capacity(m.len());
    for e in m.ground() {
        let bound = opt.analysis(e)?.tolerance / &two + epsilon;
        let new = adv.weights.get(e).expect("total weighting");
        let delta = new - opt.weight(e);
        if ctx.verify {
            ensure!(
                delta <= bound && -&delta <= bound,
                "verify: change of `{}` exceeds half tolerance plus epsilon",
                m.label(e)
            );
        }
        weights.push(WeightChange {
            element: m.label(e).to_string(),
            old: format_rational(opt.weight(e)),
            new: format_rational(new),
            delta: format_rational(&delta),
            bound: format_rational(&bound),
        });
    }
    if ctx.verify {
        ensure!(
            best.value < new_value,
            "verify: perturbed weighting leaves the basis optimal"
        );
    }
    let out = PerturbOutput {
        schema: SCHEMA,
        basis: m.labels_of(basis.elements()),
        epsilon: format_rational(epsilon),
        raised: m.label(adv.raised).to_string(),
        lowered: m.label(adv.lowered).to_string(),
        exchange_gap: format_rational(&adv.tolerance),
        weights,
        basis_old_value: format_rational(opt.value()),
        basis_new_value: format_rational(&new_value),
        new_optimal_value: format_rational(&best.value),
        new_optimal_basis: m.labels_of(best.basis.elements()),
    };
    let mut text = format!(
        "basis: {}\nraise `{}`, lower `{}` (gap {}, epsilon {})\n\n",
        braces(&out.basis),
        out.raised,
        out.lowered,
        out.exchange_gap,
        out.epsilon
    );
    let mut t = Table::new(["element", "old", "new", "delta", "bound"]);
    for w in &out.weights {
        t.row([w.element.as_str(), &w.old, &w.new, &w.delta, &w.bound]);
    }
    text.push_str(&t.render());
    text.push_str(&format!(
        "\nbasis value: {} -> {}\nnew optimum: {} with value {}\n",
        out.basis_old_value,
        out.basis_new_value,
        braces(&out.new_optimal_basis),
        out.new_optimal_value
    ));
    Ok(Output::new(&out, text))
}

#[derive(Serialize)]
struct OracleOutput {
    schema: u32,
    family: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimal_value: Option<String>,
    count: usize,
    sets: Vec<Vec<String>>,
}

fn oracle(inst: &Instance, family: Family, ctx: &Ctx) -> anyhow::Result<Output> {
    let m = &inst.matroid;
    let brute = BruteForce::new(m, ctx.cap)?;
    if ctx.verify {
        brute.check_axioms()?;
    }
    let labels = |s: &ElementSet| m.labels_of(s);
    let (name, optimal_value, sets): (_, _, Vec<Vec<String>>) = match family {
        Family::Bases => ("bases", None, brute.bases().iter().map(|b| labels(b.elements())).collect()),
        Family::Circuits => (
            "circuits",
            None,
            brute.circuits()?.iter().map(|c| labels(c.elements())).collect(),
        ),
        Family::Cocircuits => ("cocircuits", None, brute.cocircuits().iter().map(labels).collect()),
        Family::Optima => {
            let value = brute.optimum(&inst.weights)?.value;
            let bases = brute.all_optimal_bases(&inst.weights)?;
            (
                "optima",
                Some(format_rational(&value)),
                bases.iter().map(|b| labels(b.elements())).collect(),
            )
        }
    };
    let out = OracleOutput {
        schema: SCHEMA,
        family: name,
        optimal_value,
        count: sets.len(),
        sets,
    };
    let mut text = format!("{} {}\n", out.count, out.family);
    if let Some(v) = &out.optimal_value {
        text.push_str(&format!("optimal value: {v}\n"));
    }
    for s in &out.sets {
        text.push_str(&braces(s));
        text.push('\n');
    }
    Ok(Output::new(&out, text))
}
