use num_traits::Zero;

use crate::element::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rational::Rational;

/// A matrix over the rationals with one labelled column per ground element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Rational>>,
}

/// Rank of the chosen columns, by exact Gaussian elimination.
pub fn column_rank(rows: &[Vec<Rational>], columns: &[usize]) -> usize {
    // work on the transpose: one vector per selected column
    let mut vectors: Vec<Vec<Rational>> = columns
        .iter()
        .map(|&c| rows.iter().map(|row| row[c].clone()).collect())
        .collect();
    let width = rows.len();
    let mut rank = 0;
    for pivot_col in 0..width {
        let Some(pivot) = (rank..vectors.len()).find(|&i| !vectors[i][pivot_col].is_zero()) else {
            continue;
        };
        vectors.swap(rank, pivot);
        let head = vectors[rank].clone();
        for v in vectors.iter_mut().skip(rank + 1) {
            if v[pivot_col].is_zero() {
                continue;
            }
            let factor = &v[pivot_col] / &head[pivot_col];
            for (x, h) in v.iter_mut().zip(&head).skip(pivot_col) {
                *x -= &factor * h;
            }
        }
        rank += 1;
    }
    rank
}

/// Column matroid of a rational matrix.
pub fn linear(m: &RationalMatrix) -> Result<Matroid> {
    for (i, row) in m.rows.iter().enumerate() {
        if row.len() != m.columns.len() {
            return Err(Error::Construction(format!(
                "row {i} has {} entries, expected {}",
                row.len(),
                m.columns.len()
            )));
        }
    }
    let rows = m.rows.clone();
    let independent = move |set: &ElementSet| {
        let cols: Vec<usize> = set.iter().map(|e| e.index()).collect();
        cols.len() <= rows.len() && column_rank(&rows, &cols) == cols.len()
    };
    Matroid::new(m.columns.clone(), independent)
}
