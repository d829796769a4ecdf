//! Character tables by Burnside's class-matrix method.
//!
//! For class sums `K_i K_j = sum_l c_ijl K_l`, the central character
//! `w_i = |C_i| chi(g_i) / chi(1)` of every irrep satisfies
//! `w_i w_j = sum_l c_ijl w_l`, so each irrep gives a common eigenvector of
//! the matrices `(M_i)_jl = c_ijl`. A random real combination of the `M_i`
//! has simple spectrum with probability one; its eigenvectors are the `w`.

use std::cmp::Ordering;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{class_index, ConjugacyClass, FiniteGroup};
use crate::error::{Error, Result};
use crate::linalg::{min_singular_vector, CMat};

/// Largest group order accepted by [`character_table`].
pub const MAX_CHARACTER_TABLE_ORDER: usize = 256;

const RETRIES: usize = 12;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterTable {
    pub group_order: usize,
    pub classes: Vec<ConjugacyClass>,
    /// `rows[k][c]` = value of the k-th irreducible character on class `c`.
    pub rows: Vec<Vec<Complex64>>,
}

impl CharacterTable {
    pub fn degrees(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].re.round() as usize).collect()
    }

    /// `<chi, psi> = (1/|G|) sum_c |C_c| chi(c) conj(psi(c))`.
    pub fn inner_product(&self, chi: &[Complex64], psi: &[Complex64]) -> Complex64 {
        let s: Complex64 = self
            .classes
            .iter()
            .zip(chi.iter().zip(psi))
            .map(|(c, (a, b))| a * b.conj() * c.size() as f64)
            .sum();
        s / self.group_order as f64
    }

    /// Largest deviation of the row Gram matrix from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((self.inner_product(a, b) - target).norm());
            }
        }
        worst
    }

    /// Row whose values match `chi` (per class) to within `tol`.
    pub fn find_row(&self, chi: &[Complex64], tol: f64) -> Option<usize> {
        self.rows
            .iter()
            .position(|row| row.iter().zip(chi).all(|(a, b)| (a - b).norm() <= tol))
    }
}

/// Canonical ordering of characters: by degree, then class by class by the
/// argument of the value in `[0, 2pi)`, then by modulus.
pub(crate) fn compare_characters(a: &[Complex64], b: &[Complex64]) -> Ordering {
    const TOL: f64 = 1e-6;
    let arg = |z: &Complex64| {
        if z.norm() < 1e-9 {
            return 0.0;
        }
        let t = z.arg().rem_euclid(std::f64::consts::TAU);
        if std::f64::consts::TAU - t < 1e-7 {
            0.0
        } else {
            t
        }
    };
    let cmp = |x: f64, y: f64| {
        if (x - y).abs() <= TOL {
            Ordering::Equal
        } else if x < y {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    };
    let by_degree = cmp(a[0].re, b[0].re);
    if by_degree != Ordering::Equal {
        return by_degree;
    }
    for (x, y) in a.iter().zip(b) {
        let o = cmp(arg(x), arg(y)).then(cmp(x.norm(), y.norm()));
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    character_table_with_seed(g, 0x5eed)
}

pub fn character_table_with_seed(g: &FiniteGroup, seed: u64) -> Result<CharacterTable> {
    let n = g.order();
    if n > MAX_CHARACTER_TABLE_ORDER {
        return Err(Error::UnsupportedParams(format!(
            "character tables are limited to order {MAX_CHARACTER_TABLE_ORDER}, got {n}"
        )));
    }
    let classes = g.conjugacy_classes();
    let k = classes.len();
    let idx = class_index(&classes, n);
    let id_class = idx[g.identity()];

    // c[i][j][l] = #{(x, y) in C_i x C_j : x y = g_l}
    let mut structure = vec![vec![vec![0.0f64; k]; k]; k];
    for (i, ci) in classes.iter().enumerate() {
        for (l, cl) in classes.iter().enumerate() {
            for &x in &ci.members {
                let y = g.mul(g.inv(x), cl.representative);
                structure[i][idx[y]][l] += 1.0;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RETRIES {
        let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let m = DMatrix::from_fn(k, k, |j, l| {
            (0..k).map(|i| weights[i] * structure[i][j][l]).sum::<f64>()
        });
        let eigenvalues: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
        let scale = eigenvalues.iter().fold(1.0f64, |s, z| s.max(z.norm()));
        let separated = eigenvalues.iter().enumerate().all(|(a, x)| {
            eigenvalues[a + 1..]
                .iter()
                .all(|y| (x - y).norm() > 1e-8 * scale)
        });
        if !separated {
            continue;
        }
        let mc: CMat = m.map(|v| Complex64::new(v, 0.0));
        let mut rows = Vec::with_capacity(k);
        let mut ok = true;
        for lambda in &eigenvalues {
            let shifted = &mc - CMat::identity(k, k) * *lambda;
            let (sigma, v) = min_singular_vector(&shifted);
            if sigma > 1e-6 * scale {
                ok = false;
                break;
            }
            let pivot = v[id_class];
            if pivot.norm() < 1e-12 {
                ok = false;
                break;
            }
            let omega: Vec<Complex64> = v.iter().map(|z| z / pivot).collect();
            let norm: f64 = omega
                .iter()
                .zip(&classes)
                .map(|(w, c)| w.norm_sqr() / c.size() as f64)
                .sum();
            let degree = (n as f64 / norm).sqrt();
            if (degree - degree.round()).abs() > 1e-6 {
                ok = false;
                break;
            }
            let degree = degree.round();
            rows.push(
                omega
                    .iter()
                    .zip(&classes)
                    .map(|(w, c)| w * degree / c.size() as f64)
                    .collect::<Vec<_>>(),
            );
        }
        if !ok {
            continue;
        }
        rows.sort_by(|a, b| compare_characters(a, b));
        return Ok(CharacterTable {
            group_order: n,
            classes,
            rows,
        });
    }
    Err(Error::ConvergenceFailure(RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{builtin, Builtin};

    #[test]
    fn trivial_group() {
        let t = character_table(&builtin(&Builtin::Cyclic(1)).unwrap()).unwrap();
        assert_eq!(t.rows.len(), 1);
        assert!((t.rows[0][0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn z4_matches_analytic_characters() {
        let t = character_table(&builtin(&Builtin::Cyclic(4)).unwrap()).unwrap();
        // chi_k(m) = i^(k m); canonical ordering sorts by the argument of chi(1).
        let i = Complex64::new(0.0, 1.0);
        for (k, row) in t.rows.iter().enumerate() {
            for (m, v) in row.iter().enumerate() {
                assert!((v - i.powu((k * m) as u32)).norm() < 1e-10, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn s3_degrees() {
        let t = character_table(&builtin(&Builtin::Symmetric(3)).unwrap()).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 2]);
    }

    #[test]
    fn orthogonality_and_dimension_count() {
        for name in ["Z6", "D4", "Q8", "S3", "S4", "D6", "Z2xZ2", "Z3xS3", "D12"] {
            let g = builtin(&name.parse().unwrap()).unwrap();
            let t = character_table(&g).unwrap();
            assert_eq!(t.rows.len(), t.classes.len(), "{name}");
            assert!(t.orthogonality_defect() < 1e-10, "{name}");
            let sum: usize = t.degrees().iter().map(|d| d * d).sum();
            assert_eq!(sum, g.order(), "{name}");
        }
    }

    #[test]
    fn table_is_seed_independent() {
        let g = builtin(&Builtin::Symmetric(4)).unwrap();
        let a = character_table_with_seed(&g, 1).unwrap();
        let b = character_table_with_seed(&g, 99).unwrap();
        for (ra, rb) in a.rows.iter().zip(&b.rows) {
            for (x, y) in ra.iter().zip(rb) {
                assert!((x - y).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn order_bound_is_enforced() {
        let g = builtin(&"S5xZ3".parse().unwrap()).unwrap();
        assert!(matches!(
            character_table(&g),
            Err(Error::UnsupportedParams(_))
        ));
    }
}
