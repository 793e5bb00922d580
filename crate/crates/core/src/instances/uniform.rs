use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// `U(k, n)` over the given labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformParams {
    pub k: usize,
    pub ground: Vec<String>,
}

impl UniformParams {
    pub fn new<'a, I: IntoIterator<Item = &'a str>>(k: usize, ground: I) -> Self {
        UniformParams {
            k,
            ground: ground.into_iter().map(str::to_string).collect(),
        }
    }
}

/// Independent sets are the sets of size at most `k`.
pub fn uniform(p: &UniformParams) -> Result<Matroid> {
    if p.k > p.ground.len() {
        return Err(Error::Construction(format!(
            "uniform rank {} exceeds ground size {}",
            p.k,
            p.ground.len()
        )));
    }
    let k = p.k;
    Matroid::new(p.ground.clone(), move |s: &ElementSet| s.len() <= k)
}
