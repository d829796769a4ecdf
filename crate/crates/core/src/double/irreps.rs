//! Irreps of `D(G)`, their characters, and tensor product decomposition.
//!
//! The product of two representations is `(tau_1 (x) tau_2) . Delta`; on a
//! basis element `Delta(d_a x d_b) = sum_{a1 a2 = a} (d_a1 x d_b) (x) (d_a2 x d_b)`,
//! so its character is `chi_12(a, b) = sum_{a1 a2 = a} chi_1(a1, b) chi_2(a2, b)`.
//! Multiplicities come from a least-squares fit against the irreducible
//! characters, which are linearly independent functionals.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::double_action;
use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::linalg::{kron, CMat};
use crate::reps::{all_irreps_with_seed, InducedIrrep};

const DEFAULT_SEED: u64 = 0x7a0;
const RESIDUAL_TOLERANCE: f64 = 1e-8;

/// `(A, alpha)`: conjugacy class index and irrep label of its centralizer.
/// Written `A:alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DoubleLabel {
    pub class: usize,
    pub alpha: usize,
}

impl fmt::Display for DoubleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.class, self.alpha)
    }
}

impl FromStr for DoubleLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(s.to_string());
        let (a, b) = s.split_once(':').ok_or_else(bad)?;
        Ok(Self {
            class: a.trim().parse().map_err(|_| bad())?,
            alpha: b.trim().parse().map_err(|_| bad())?,
        })
    }
}

#[derive(Debug, Clone)]
pub struct DoubleIrrep {
    pub label: DoubleLabel,
    /// Representative of the conjugacy class `A`.
    pub class_representative: usize,
    pub rep: InducedIrrep,
}

impl DoubleIrrep {
    pub fn dimension(&self) -> usize {
        self.rep.dimension()
    }

    pub fn character(&self) -> Vec<Complex64> {
        self.rep.character()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.rep.action().group()
    }
}

pub fn double_irreps(group: &Arc<FiniteGroup>) -> Result<Vec<DoubleIrrep>> {
    double_irreps_with_seed(group, DEFAULT_SEED)
}

/// One irrep per (class, centralizer irrep), classes ordered by smallest member.
pub fn double_irreps_with_seed(group: &Arc<FiniteGroup>, seed: u64) -> Result<Vec<DoubleIrrep>> {
    let action = double_action(group);
    Ok(all_irreps_with_seed(&action, seed)?
        .into_iter()
        .map(|rep| DoubleIrrep {
            label: DoubleLabel {
                class: rep.orbit().index,
                alpha: rep.alpha().label(),
            },
            class_representative: rep.orbit().base_point,
            rep,
        })
        .collect())
}

fn check_same_group(a: &DoubleIrrep, b: &DoubleIrrep) -> Result<()> {
    if a.group().same_table(b.group()) {
        Ok(())
    } else {
        Err(Error::ActionMismatch)
    }
}

/// `chi_12(a, b) = sum_{a1 a2 = a} chi_1(a1, b) chi_2(a2, b)`, indexed `a |G| + b`.
pub fn product_rep_character(rep1: &DoubleIrrep, rep2: &DoubleIrrep) -> Result<Vec<Complex64>> {
    check_same_group(rep1, rep2)?;
    let g = rep1.group();
    let n = g.order();
    let (c1, c2) = (rep1.character(), rep2.character());
    Ok((0..n * n)
        .map(|s| {
            let (a, b) = (s / n, s % n);
            (0..n)
                .map(|a1| c1[a1 * n + b] * c2[g.mul(g.inv(a1), a) * n + b])
                .sum()
        })
        .collect())
}

/// `(tau_1 (x) tau_2)(Delta(d_a x d_b))` as an explicit Kronecker sum.
pub fn product_rep_matrix(
    rep1: &DoubleIrrep,
    rep2: &DoubleIrrep,
    a: usize,
    b: usize,
) -> Result<CMat> {
    check_same_group(rep1, rep2)?;
    let g = rep1.group();
    let d = rep1.dimension() * rep2.dimension();
    let mut out = CMat::zeros(d, d);
    for a1 in g.elements() {
        let a2 = g.mul(g.inv(a1), a);
        out += kron(&rep1.rep.basis_matrix(a1, b), &rep2.rep.basis_matrix(a2, b));
    }
    Ok(out)
}

/// Multiplicities of the irreducible constituents of `rep1 (x) rep2`, listed
/// in the order of `irreps`; zero multiplicities are omitted.
pub fn tensor_decompose(
    rep1: &DoubleIrrep,
    rep2: &DoubleIrrep,
    irreps: &[DoubleIrrep],
) -> Result<Vec<(DoubleLabel, usize)>> {
    let target = product_rep_character(rep1, rep2)?;
    let rows = target.len();
    let cols = irreps.len();
    for r in irreps {
        check_same_group(rep1, r)?;
    }
    let chars: Vec<Vec<Complex64>> = irreps.iter().map(|r| r.character()).collect();
    let a = DMatrix::from_fn(rows, cols, |i, k| chars[k][i]);
    let b = DVector::from_column_slice(&target);
    let solution = a
        .clone()
        .svd(true, true)
        .solve(&b, 1e-12)
        .map_err(|_| Error::DecompositionResidual(f64::INFINITY))?;

    let mut worst_rounding = 0.0f64;
    let mut counts = Vec::with_capacity(cols);
    for m in solution.iter() {
        let rounded = m.re.round();
        worst_rounding = worst_rounding.max((m - Complex64::new(rounded, 0.0)).norm());
        if rounded < 0.0 {
            return Err(Error::DecompositionResidual(-rounded));
        }
        counts.push(rounded as usize);
    }
    if worst_rounding > 1e-6 {
        return Err(Error::DecompositionResidual(worst_rounding));
    }
    let residual = (0..rows)
        .map(|i| {
            let fit: Complex64 = (0..cols).map(|k| chars[k][i] * counts[k] as f64).sum();
            (fit - target[i]).norm()
        })
        .fold(0.0, f64::max);
    if residual > RESIDUAL_TOLERANCE {
        return Err(Error::DecompositionResidual(residual));
    }
    let total: usize = counts
        .iter()
        .zip(irreps)
        .map(|(m, r)| m * r.dimension())
        .sum();
    if total != rep1.dimension() * rep2.dimension() {
        return Err(Error::DecompositionResidual(
            (total as f64 - (rep1.dimension() * rep2.dimension()) as f64).abs(),
        ));
    }
    Ok(irreps
        .iter()
        .zip(counts)
        .filter(|(_, m)| *m > 0)
        .map(|(r, m)| (r.label, m))
        .collect())
}
