//! Exact Smith normal form.
//!
//! Elimination works on a sparse copy of the matrix with `BigInt` entries.
//! Each pivot is a nonzero entry of least absolute value, ties broken by the
//! smallest Markowitz count `(row nnz - 1) * (col nnz - 1)` and then by
//! position. The pivot's column and row are reduced by Euclidean division; a
//! nonzero remainder becomes the next, strictly smaller, pivot. Once the pivot
//! is alone in its row and column it is recorded and both are dropped. The
//! recorded diagonal is finally normalised into a divisibility chain.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive invariant factors `d1 | d2 | ..`, one per unit of rank.
    pub invariant_factors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> impl Iterator<Item = &BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one())
    }
}

struct Sparse {
    rows: Vec<BTreeMap<usize, BigInt>>,
    cols: Vec<BTreeSet<usize>>,
}

impl Sparse {
    fn new(m: &IntMatrix) -> Self {
        let mut cols = vec![BTreeSet::new(); m.cols()];
        let rows = m.clone().into_rows();
        for (i, row) in rows.iter().enumerate() {
            for &j in row.keys() {
                cols[j].insert(i);
            }
        }
        Self { rows, cols }
    }

    fn pick_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(&BigInt, usize, usize, usize)> = None;
        for (i, row) in self.rows.iter().enumerate() {
            let row_cost = row.len().saturating_sub(1);
            for (&j, x) in row {
                let cost = row_cost * self.cols[j].len().saturating_sub(1);
                let better = match best {
                    None => true,
                    Some((b, bc, ..)) => match x.magnitude().cmp(b.magnitude()) {
                        std::cmp::Ordering::Less => true,
                        std::cmp::Ordering::Equal => cost < bc,
                        std::cmp::Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((x, cost, i, j));
                }
            }
        }
        best.map(|(_, _, i, j)| (i, j))
    }

    /// `row[target] -= q * row[source]`.
    fn row_axpy(&mut self, target: usize, source: usize, q: &BigInt) {
        let source_row: Vec<(usize, BigInt)> =
            self.rows[source].iter().map(|(&j, x)| (j, x.clone())).collect();
        for (j, x) in source_row {
            let entry = self.rows[target].entry(j).or_default();
            *entry -= q * x;
            if entry.is_zero() {
                self.rows[target].remove(&j);
                self.cols[j].remove(&target);
            } else {
                self.cols[j].insert(target);
            }
        }
    }

    fn smallest_in_column(&self, j: usize) -> usize {
        *self.cols[j]
            .iter()
            .min_by(|&&a, &&b| {
                self.rows[a][&j]
                    .magnitude()
                    .cmp(self.rows[b][&j].magnitude())
                    .then(a.cmp(&b))
            })
            .expect("column has entries")
    }

    fn smallest_in_row(&self, i: usize) -> usize {
        *self.rows[i]
            .iter()
            .min_by(|a, b| a.1.magnitude().cmp(b.1.magnitude()).then(a.0.cmp(b.0)))
            .expect("row has entries")
            .0
    }

    /// Clears the row and column of the pivot; returns the final pivot value.
    fn eliminate(&mut self, mut r: usize, mut c: usize) -> BigInt {
        loop {
            let p = self.rows[r][&c].clone();
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
            for i in others {
                let q = self.rows[i][&c].div_floor(&p);
                self.row_axpy(i, r, &q);
            }
            if self.cols[c].len() > 1 {
                r = self.smallest_in_column(c);
                continue;
            }
            // Column ops only touch the pivot row: column `c` is clear elsewhere.
            let others: Vec<usize> = self.rows[r].keys().copied().filter(|&j| j != c).collect();
            for j in others {
                let x = self.rows[r].get_mut(&j).expect("entry present");
                *x = x.mod_floor(&p);
                if x.is_zero() {
                    self.rows[r].remove(&j);
                    self.cols[j].remove(&r);
                }
            }
            if self.rows[r].len() > 1 {
                c = self.smallest_in_row(r);
                continue;
            }
            self.rows[r].clear();
            self.cols[c].clear();
            return p.abs();
        }
    }
}

/// Turns a diagonal into its invariant-factor chain.
fn normalize(mut diagonal: Vec<BigInt>) -> Vec<BigInt> {
    diagonal.sort();
    let n = diagonal.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = diagonal[i].gcd(&diagonal[j]);
            if g != diagonal[i] {
                let l = diagonal[i].lcm(&diagonal[j]);
                diagonal[i] = g;
                diagonal[j] = l;
            }
        }
    }
    diagonal.sort();
    diagonal
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut work = Sparse::new(m);
    let mut diagonal = Vec::new();
    while let Some((r, c)) = work.pick_pivot() {
        diagonal.push(work.eliminate(r, c));
    }
    let invariant_factors = normalize(diagonal);
    SmithForm {
        rank: invariant_factors.len(),
        invariant_factors,
    }
}
