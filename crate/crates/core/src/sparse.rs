//! Incremental sparse Gaussian elimination, used for nullspaces of the
//! large but very sparse linear systems arising from invariant equations.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

pub type SparseRow = Vec<(usize, Scalar)>;

fn axpy(row: &SparseRow, factor: &Scalar, pivot: &SparseRow) -> SparseRow {
    // row - factor * pivot, both sorted by column.
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(factor * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - &(factor * &pivot[j].1);
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row space of a sparse matrix in echelon form; each stored row has a
/// distinct leading column and leading coefficient one.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    cols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl SparseEchelon {
    pub fn new(cols: usize) -> Self {
        SparseEchelon { cols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored rows; returns whether it was new.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|(_, c)| !c.is_zero());
        row.sort_by_key(|(c, _)| *c);
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(p) => row = axpy(&row, &coeff, p),
                None => {
                    let inv = coeff.inv();
                    let normalized = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    self.rows.insert(lead, normalized);
                    return true;
                }
            }
        }
    }

    /// Basis of `{v : M v = 0}` for the matrix whose rows were inserted.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        // Back-substitute to reduced row echelon form.
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&lead, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            loop {
                let next = r.iter().skip(1).find(|(c, _)| reduced.contains_key(c)).cloned();
                match next {
                    Some((c, v)) => r = axpy(&r, &v, &reduced[&c]),
                    None => break,
                }
            }
            reduced.insert(lead, r);
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !reduced.contains_key(c)) {
            let mut v = vec![Scalar::ZERO; self.cols];
            v[free] = Scalar::ONE;
            for (&lead, row) in &reduced {
                if let Some((_, c)) = row.iter().find(|(c, _)| *c == free) {
                    v[lead] = -c;
                }
            }
            basis.push(v);
        }
        basis
    }
}
