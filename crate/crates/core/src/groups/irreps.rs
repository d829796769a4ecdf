//! Explicit unitary irreducible representations of finite groups.
//!
//! Non-abelian groups: randomized invariant-subspace splitting of the regular
//! representation. Averaging a random Hermitian `H` over the group gives a
//! Hermitian operator commuting with the representation; its eigenspaces are
//! invariant subspaces. Recurse until the character norm is one, then keep one
//! representative per character.
//!
//! Abelian groups: exact one-dimensional characters, built by extending
//! characters one cyclic layer at a time with exponents in `Z/|G|`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::characters::character_table;
use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eigen, random_hermitian, CMat};

/// Relative eigenvalue clustering tolerance for subspace splitting.
pub const CLUSTER_RTOL: f64 = 1e-8;

const SPLIT_RETRIES: usize = 8;
const DEFAULT_SEED: u64 = 0x1223;

#[derive(Debug, Clone)]
pub struct GroupIrrep {
    group: Arc<FiniteGroup>,
    label: usize,
    degree: usize,
    matrices: Vec<CMat>,
}

/// `{ "group", "label", "degree", "matrices": [element][row][col] = [re, im] }`
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepJson {
    pub group: String,
    pub label: usize,
    pub degree: usize,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
}

impl GroupIrrep {
    /// Wraps explicit matrices (indexed by element) as a representation.
    /// Used for external input and for tests; no irreducibility check.
    pub fn from_matrices(
        group: Arc<FiniteGroup>,
        label: usize,
        matrices: Vec<CMat>,
    ) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch(matrices.len(), group.order()));
        }
        let degree = matrices[0].nrows();
        if matrices.iter().any(|m| m.shape() != (degree, degree)) {
            return Err(Error::InvalidTable(
                "irrep matrices have inconsistent shapes".into(),
            ));
        }
        Ok(Self {
            group,
            label,
            degree,
            matrices,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn label(&self) -> usize {
        self.label
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    /// Trace per element.
    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// `max |rho(g) rho(h) - rho(gh)|` over all pairs.
    pub fn homomorphism_defect(&self) -> f64 {
        let g = &self.group;
        let mut worst = 0.0f64;
        for a in g.elements() {
            for b in g.elements() {
                let lhs = &self.matrices[a] * &self.matrices[b];
                worst = worst.max(linalg::max_abs_diff(&lhs, &self.matrices[g.mul(a, b)]));
            }
        }
        worst
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.matrices
            .iter()
            .map(linalg::unitarity_defect)
            .fold(0.0, f64::max)
    }

    pub fn commutant_dimension(&self) -> usize {
        let gens: Vec<CMat> = self
            .group
            .generators()
            .into_iter()
            .map(|g| self.matrices[g].clone())
            .collect();
        if gens.is_empty() {
            // trivial group: only the identity matrix
            return self.degree * self.degree;
        }
        linalg::commutant_dimension(&gens)
    }

    pub fn to_json(&self) -> IrrepJson {
        IrrepJson {
            group: self.group.name().to_string(),
            label: self.label,
            degree: self.degree,
            matrices: self
                .matrices
                .iter()
                .map(|m| {
                    (0..m.nrows())
                        .map(|r| {
                            (0..m.ncols())
                                .map(|c| [m[(r, c)].re, m[(r, c)].im])
                                .collect()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(group: Arc<FiniteGroup>, json: &IrrepJson) -> Result<Self> {
        let matrices = json
            .matrices
            .iter()
            .map(|rows| {
                let d = rows.len();
                CMat::from_fn(d, d, |r, c| {
                    let [re, im] = rows[r].get(c).copied().unwrap_or([f64::NAN, f64::NAN]);
                    Complex64::new(re, im)
                })
            })
            .collect();
        let irrep = Self::from_matrices(group, json.label, matrices)?;
        if irrep.degree != json.degree {
            return Err(Error::DimensionMismatch(irrep.degree, json.degree));
        }
        Ok(irrep)
    }
}

pub fn irreps(g: &Arc<FiniteGroup>) -> Result<Vec<GroupIrrep>> {
    irreps_with_seed(g, DEFAULT_SEED)
}

/// One unitary irrep per equivalence class, labelled (and ordered) by the
/// matching row of [`character_table`].
pub fn irreps_with_seed(g: &Arc<FiniteGroup>, seed: u64) -> Result<Vec<GroupIrrep>> {
    let table = character_table(g)?;
    let raw: Vec<Vec<CMat>> = if g.is_abelian() {
        abelian_irreps(g)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        split_regular(g, &mut rng)?
    };

    let mut out: Vec<GroupIrrep> = Vec::with_capacity(raw.len());
    for matrices in raw {
        let chi: Vec<Complex64> = table
            .classes
            .iter()
            .map(|c| matrices[c.representative].trace())
            .collect();
        let label = table
            .find_row(&chi, 1e-6)
            .ok_or(Error::SplittingFailure(SPLIT_RETRIES))?;
        out.push(GroupIrrep {
            group: Arc::clone(g),
            label,
            degree: matrices[0].nrows(),
            matrices,
        });
    }
    out.sort_by_key(|r| r.label);
    if out.len() != table.rows.len() || out.iter().enumerate().any(|(i, r)| r.label != i) {
        return Err(Error::SplittingFailure(SPLIT_RETRIES));
    }
    Ok(out)
}

fn abelian_irreps(g: &FiniteGroup) -> Vec<Vec<CMat>> {
    let n = g.order();
    // characters as exponent tables: chi(x) = exp(2 pi i k(x) / n)
    let mut members = vec![g.identity()];
    let mut in_span = vec![false; n];
    in_span[g.identity()] = true;
    let mut chars: Vec<Vec<Option<usize>>> = vec![{
        let mut c = vec![None; n];
        c[g.identity()] = Some(0);
        c
    }];
    while members.len() < n {
        let x = (0..n).find(|&y| !in_span[y]).unwrap();
        // smallest m > 0 with x^m in the current subgroup
        let mut m = 1;
        let mut xm = x;
        while !in_span[xm] {
            xm = g.mul(xm, x);
            m += 1;
        }
        let mut powers = vec![g.identity()];
        for _ in 1..m {
            powers.push(g.mul(*powers.last().unwrap(), x));
        }
        let mut next = Vec::with_capacity(chars.len() * m);
        for chi in &chars {
            let target = chi[xm].unwrap();
            for root in (0..n).filter(|r| (m * r) % n == target) {
                let mut ext = vec![None; n];
                for (k, &p) in powers.iter().enumerate() {
                    for &h in &members {
                        ext[g.mul(p, h)] = Some((chi[h].unwrap() + k * root) % n);
                    }
                }
                next.push(ext);
            }
        }
        let mut grown = Vec::with_capacity(members.len() * m);
        for &p in &powers {
            for &h in &members {
                grown.push(g.mul(p, h));
            }
        }
        for &y in &grown {
            in_span[y] = true;
        }
        members = grown;
        chars = next;
    }
    chars
        .into_iter()
        .map(|chi| {
            chi.into_iter()
                .map(|k| {
                    let angle = std::f64::consts::TAU * k.unwrap() as f64 / n as f64;
                    CMat::from_element(1, 1, Complex64::from_polar(1.0, angle))
                })
                .collect()
        })
        .collect()
}

fn character_norm(mats: &[CMat]) -> f64 {
    mats.iter().map(|m| m.trace().norm_sqr()).sum::<f64>() / mats.len() as f64
}

/// Groups sorted eigenvalues into clusters; returns index ranges.
fn clusters(values: &[f64]) -> Vec<std::ops::Range<usize>> {
    let scale = values.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > CLUSTER_RTOL * scale {
            out.push(start..i);
            start = i;
        }
    }
    out
}

struct Collector {
    order: usize,
    found: Vec<Vec<CMat>>,
    characters: Vec<Vec<Complex64>>,
    covered: usize,
}

impl Collector {
    fn done(&self) -> bool {
        self.covered == self.order
    }

    fn offer(&mut self, mats: Vec<CMat>) {
        let chi: Vec<Complex64> = mats.iter().map(|m| m.trace()).collect();
        let duplicate = self
            .characters
            .iter()
            .any(|c| c.iter().zip(&chi).all(|(a, b)| (a - b).norm() <= 1e-6));
        if !duplicate {
            let d = mats[0].nrows();
            self.covered += d * d;
            self.found.push(mats);
            self.characters.push(chi);
        }
    }
}

fn split_regular(g: &FiniteGroup, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<CMat>>> {
    let n = g.order();
    let mut collector = Collector {
        order: n,
        found: Vec::new(),
        characters: Vec::new(),
        covered: 0,
    };
    let mut attempt = 0;
    loop {
        if attempt == SPLIT_RETRIES {
            return Err(Error::SplittingFailure(SPLIT_RETRIES));
        }
        attempt += 1;
        // (rho(g) H rho(g)^dagger)_{ab} = H_{g^-1 a, g^-1 b} for the regular rep.
        let h = random_hermitian(n, rng);
        let mut avg = CMat::zeros(n, n);
        for x in g.elements() {
            let xi = g.inv(x);
            for a in 0..n {
                let ia = g.mul(xi, a);
                for b in 0..n {
                    avg[(a, b)] += h[(ia, g.mul(xi, b))];
                }
            }
        }
        avg /= Complex64::new(n as f64, 0.0);
        let (values, vectors) = hermitian_eigen(&avg);
        let parts = clusters(&values);
        if parts.len() < 2 && n > 1 {
            continue;
        }
        for range in parts {
            if collector.done() {
                break;
            }
            let v = vectors.columns(range.start, range.len()).into_owned();
            // (rho(x) V)[x a, :] = V[a, :]
            let sub: Vec<CMat> = g
                .elements()
                .map(|x| {
                    let mut moved = CMat::zeros(n, v.ncols());
                    for a in 0..n {
                        moved.set_row(g.mul(x, a), &v.row(a));
                    }
                    v.adjoint() * moved
                })
                .collect();
            decompose(sub, rng, &mut collector)?;
        }
        return Ok(collector.found);
    }
}

fn decompose(rep: Vec<CMat>, rng: &mut ChaCha8Rng, collector: &mut Collector) -> Result<()> {
    if collector.done() {
        return Ok(());
    }
    if (character_norm(&rep) - 1.0).abs() < 1e-6 {
        collector.offer(rep);
        return Ok(());
    }
    let d = rep[0].nrows();
    for _ in 0..SPLIT_RETRIES {
        let h = random_hermitian(d, rng);
        let mut avg = CMat::zeros(d, d);
        for m in &rep {
            avg += m * &h * m.adjoint();
        }
        avg /= Complex64::new(rep.len() as f64, 0.0);
        let (values, vectors) = hermitian_eigen(&avg);
        let parts = clusters(&values);
        if parts.len() < 2 {
            continue;
        }
        for range in parts {
            let v = vectors.columns(range.start, range.len()).into_owned();
            let sub = rep.iter().map(|m| v.adjoint() * m * &v).collect();
            decompose(sub, rng, collector)?;
        }
        return Ok(());
    }
    Err(Error::SplittingFailure(SPLIT_RETRIES))
}

/// Sorts characters canonically (used by tests comparing seeds).
#[cfg(test)]
fn sorted_characters(reps: &[GroupIrrep]) -> Vec<Vec<Complex64>> {
    use super::characters::compare_characters;
    let mut chars: Vec<Vec<Complex64>> = reps.iter().map(|r| r.character()).collect();
    chars.sort_by(|a, b| compare_characters(a, b));
    chars
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(builtin(&name.parse().unwrap()).unwrap())
    }

    #[test]
    fn z2_trivial_and_sign() {
        let reps = irreps(&group("Z2")).unwrap();
        assert_eq!(reps.len(), 2);
        assert!((reps[0].matrix(1)[(0, 0)] - 1.0).norm() < 1e-15);
        assert!((reps[1].matrix(1)[(0, 0)] + 1.0).norm() < 1e-15);
    }

    #[test]
    fn s3_degrees_and_irreducibility() {
        let reps = irreps(&group("S3")).unwrap();
        let degrees: Vec<usize> = reps.iter().map(|r| r.degree()).collect();
        assert_eq!(degrees, vec![1, 1, 2]);
        let two = &reps[2];
        assert!(two.unitarity_defect() < 1e-12);
        assert!(two.homomorphism_defect() < 1e-12);
        assert_eq!(two.commutant_dimension(), 1);
    }

    #[test]
    fn q8_degrees() {
        let reps = irreps(&group("Q8")).unwrap();
        let degrees: Vec<usize> = reps.iter().map(|r| r.degree()).collect();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
        assert_eq!(degrees.iter().map(|d| d * d).sum::<usize>(), 8);
    }

    #[test]
    fn invariants_on_builtin_groups() {
        for name in [
            "trivial", "Z5", "Z2xZ2", "D4", "Q8", "S3", "D5", "S4", "Z2xS3", "Z3xZ3",
        ] {
            let g = group(name);
            let reps = irreps(&g).unwrap();
            let sum: usize = reps.iter().map(|r| r.degree() * r.degree()).sum();
            assert_eq!(sum, g.order(), "{name}");
            for r in &reps {
                assert!(
                    r.homomorphism_defect() < 1e-12,
                    "{name} label {}",
                    r.label()
                );
                assert!(r.unitarity_defect() < 1e-12, "{name} label {}", r.label());
                assert_eq!(r.commutant_dimension(), 1, "{name}");
            }
            for (i, a) in reps.iter().enumerate() {
                for b in &reps[i + 1..] {
                    let diff = a
                        .character()
                        .iter()
                        .zip(b.character())
                        .fold(0.0f64, |m, (x, y)| m.max((x - y).norm()));
                    assert!(diff > 1e-6, "{name}");
                }
            }
        }
    }

    #[test]
    fn seed_independence() {
        let g = group("S4");
        let a = irreps_with_seed(&g, 3).unwrap();
        let b = irreps_with_seed(&g, 4242).unwrap();
        let (ca, cb) = (sorted_characters(&a), sorted_characters(&b));
        for (x, y) in ca.iter().zip(&cb) {
            for (p, q) in x.iter().zip(y) {
                assert!((p - q).norm() < 1e-9);
            }
        }
        let da: Vec<usize> = a.iter().map(|r| r.degree()).collect();
        let db: Vec<usize> = b.iter().map(|r| r.degree()).collect();
        assert_eq!(da, db);
    }

    #[test]
    fn json_round_trip() {
        let g = group("S3");
        let r = &irreps(&g).unwrap()[2];
        let text = serde_json::to_string(&r.to_json()).unwrap();
        let back =
            GroupIrrep::from_json(Arc::clone(&g), &serde_json::from_str(&text).unwrap()).unwrap();
        for x in g.elements() {
            assert!(linalg::max_abs_diff(back.matrix(x), r.matrix(x)) == 0.0);
        }
    }
}
