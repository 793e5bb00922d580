//! Seeded random loopless matroid instances for differential testing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropmat::instances::{
    graphic, linear, uniform, GraphDescription, GraphEdge, RationalMatrix, UniformParams,
};
use tropmat::rational::{integer, rational};
use tropmat::{Matroid, Rational, Weighting};

pub use rand_chacha::ChaCha8Rng as Rng8;

/// Where an instance came from, kept for reference-predicate checks.
#[derive(Debug, Clone)]
pub enum Source {
    Graphic(GraphDescription),
    Uniform(UniformParams),
    Linear(RationalMatrix),
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub source: Source,
    pub matroid: Matroid,
    pub weights: Weighting,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightStyle {
    /// integers in 0..=3, lots of ties
    TiedSmall,
    /// signed fractions with denominators up to 4
    Fractional,
    /// pairwise distinct
    Distinct,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    rational(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

pub fn random_weights<R: Rng>(rng: &mut R, m: &Matroid, style: WeightStyle) -> Weighting {
    let n = m.len() as i64;
    let values: Vec<Rational> = match style {
        WeightStyle::TiedSmall => (0..n).map(|_| integer(rng.gen_range(0..=3))).collect(),
        WeightStyle::Fractional => (0..n).map(|_| random_rational(rng)).collect(),
        WeightStyle::Distinct => {
            let mut v: Vec<i64> = (0..n).map(|i| 3 * i - n).collect();
            v.shuffle(rng);
            let den = rng.gen_range(1..=3);
            v.into_iter().map(|k| rational(k, den)).collect()
        }
    };
    Weighting::for_ground(m, values).expect("one weight per element")
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn loopless(m: &Matroid) -> bool {
    m.assert_loopless().is_ok()
}

/// Loopless multigraph on at most `max_vertices` vertices and at most
/// `max_edges` edges.
pub fn random_graphic<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> (GraphDescription, Matroid) {
    loop {
        let vertices = rng.gen_range(2..=max_vertices);
        let edges = rng.gen_range(vertices.min(max_edges)..=max_edges);
        let g = GraphDescription {
            vertices,
            edges: labels("g", edges)
                .into_iter()
                .map(|id| {
                    let u = rng.gen_range(0..vertices);
                    let mut v = rng.gen_range(0..vertices - 1);
                    if v >= u {
                        v += 1;
                    }
                    GraphEdge { id, u, v }
                })
                .collect(),
        };
        let m = graphic(&g).expect("well-formed graph");
        if loopless(&m) && m.rank() > 0 {
            return (g, m);
        }
    }
}

pub fn random_uniform<R: Rng>(rng: &mut R, max_n: usize) -> (UniformParams, Matroid) {
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(1..n);
    let p = UniformParams { k, ground: labels("u", n) };
    let m = uniform(&p).expect("k <= n");
    (p, m)
}

pub fn random_linear<R: Rng>(rng: &mut R, max_columns: usize) -> (RationalMatrix, Matroid) {
    loop {
        let rows = rng.gen_range(1..=4usize);
        let columns = rng.gen_range((rows + 1).min(max_columns)..=max_columns);
        let entry = |rng: &mut R| {
            if rng.gen_bool(0.2) {
                rational(rng.gen_range(-3..=3), rng.gen_range(1..=3))
            } else {
                integer(rng.gen_range(-1..=1))
            }
        };
        let matrix = RationalMatrix {
            columns: labels("v", columns),
            rows: (0..rows).map(|_| (0..columns).map(|_| entry(rng)).collect()).collect(),
        };
        let m = linear(&matrix).expect("rectangular");
        if loopless(&m) && m.rank() > 0 {
            return (matrix, m);
        }
    }
}

/// Instance `index` of the standard corpus: graphic (at most 7 vertices,
/// 10 edges), uniform (n at most 8) and linear (at most 8 columns), in
/// rotation, with rotating weight styles.
pub fn corpus_instance(seed: u64, index: usize) -> Instance {
    let mut rng = rng(seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let style = [WeightStyle::TiedSmall, WeightStyle::Fractional, WeightStyle::Distinct][(index / 3) % 3];
    let (source, matroid) = match index % 3 {
        0 => {
            let (g, m) = random_graphic(&mut rng, 7, 10);
            (Source::Graphic(g), m)
        }
        1 => {
            let (p, m) = random_uniform(&mut rng, 8);
            (Source::Uniform(p), m)
        }
        _ => {
            let (a, m) = random_linear(&mut rng, 8);
            (Source::Linear(a), m)
        }
    };
    let weights = random_weights(&mut rng, &matroid, style);
    let kind = match source {
        Source::Graphic(_) => "graphic",
        Source::Uniform(_) => "uniform",
        Source::Linear(_) => "linear",
    };
    Instance {
        name: format!("{kind}#{index} ({style:?}, |E|={}, r={})", matroid.len(), matroid.rank()),
        source,
        matroid,
        weights,
    }
}

pub fn corpus(seed: u64, count: usize) -> Vec<Instance> {
    (0..count).map(|i| corpus_instance(seed, i)).collect()
}

/// The triangle `K3` with edges a=01, b=12, c=02 weighted 1, 2, 3.
pub fn triangle() -> (Matroid, Weighting) {
    let m = graphic(&GraphDescription::new(3, [("a", 0, 1), ("b", 1, 2), ("c", 0, 2)])).unwrap();
    let x = Weighting::for_ground(&m, [1, 2, 3].map(integer)).unwrap();
    (m, x)
}

/// `U(2,4)` on e1..e4 weighted 1, 2, 3, 4.
pub fn u24() -> (Matroid, Weighting) {
    let m = uniform(&UniformParams::new(2, ["e1", "e2", "e3", "e4"])).unwrap();
    let x = Weighting::for_ground(&m, [1, 2, 3, 4].map(integer)).unwrap();
    (m, x)
}
