//! Irreducible *-representations of `C(X x G)` induced from orbit stabilizers.
//!
//! For an orbit `A` with base point `xi_A`, stabilizer `N_A` and an irrep
//! `alpha` of `N_A`, the carrier is the space of functions `phi: G -> V`
//! with `phi(x n) = alpha(n^-1) phi(x)`, and
//!
//! ```text
//! (tau(F) phi)(x) = sum_z F(x xi_A, z) phi(z^-1 x).
//! ```
//!
//! Such `phi` is determined by its values on left coset representatives
//! `s_0 = e, s_1, ...`, so the carrier is `C^k (x) V` with `k = [G : N_A]`.
//! For `F = delta_xi (x) delta_g` the only nonzero block is `(i, j)` with
//! `s_i xi_A = xi` and `g^-1 s_i = s_j n`, and it equals `alpha(n^-1)`.
//!
//! The section model uses functions on the orbit instead:
//! `(tau(F) phi)(xi) = sum_z F(xi, z) alpha(s(xi)^-1 z s(z^-1 xi)) phi(z^-1 xi)`.
//! Both models share one sparse storage: every `(g, block row)` pair maps to
//! exactly one block column and one element of `N_A`.

use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{
    coset_decomposition, irreps_with_seed, left_coset_section, FiniteGroup, GroupIrrep,
};
use crate::linalg::{
    self, intertwiner_basis, max_abs_diff, polar_unitary, random_complex, CMat, ONE, ZERO,
};
use crate::tga::{AlgElement, GAction, Orbit};

const DEFAULT_SEED: u64 = 0x7a0;

/// Which carrier the block structure refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Carrier {
    /// Equivariant functions on `G`, blocks indexed by left cosets of `N_A`.
    Equivariant,
    /// Functions on the orbit, blocks indexed by orbit points.
    Section,
}

#[derive(Debug, Clone)]
pub struct InducedIrrep {
    action: Arc<GAction>,
    orbit: Orbit,
    alpha: GroupIrrep,
    carrier: Carrier,
    /// Group elements labelling the blocks (coset representatives or `s(xi)`).
    reps: Vec<usize>,
    /// Orbit point `reps[i] xi_A` of each block.
    points: Vec<usize>,
    /// `moves[g * k + i] = (j, m)`: block `(i, j)` of `tau(1 (x) delta_g)`
    /// restricted to row `i` is `alpha(m)`, `m` a local index in `N_A`.
    moves: Vec<(usize, usize)>,
}

/// Stabilizer of an orbit as a standalone group on local indices.
pub fn stabilizer_group(orbit: &Orbit) -> Arc<FiniteGroup> {
    Arc::new(orbit.stabilizer.as_group().clone())
}

fn check_alpha(orbit: &Orbit, alpha: &GroupIrrep) -> Result<()> {
    if alpha.group().same_table(orbit.stabilizer.as_group()) {
        Ok(())
    } else {
        Err(Error::NotStabilizerIrrep(format!(
            "alpha is defined on a group of order {}, stabilizer of {} has order {}",
            alpha.group().order(),
            orbit.base_point,
            orbit.stabilizer.order()
        )))
    }
}

/// `tau^A_alpha` on equivariant functions, blocks in coset-section order.
pub fn induce(action: &Arc<GAction>, orbit: &Orbit, alpha: &GroupIrrep) -> Result<InducedIrrep> {
    check_alpha(orbit, alpha)?;
    let g = action.group();
    let stab = &orbit.stabilizer;
    let reps = left_coset_section(stab);
    let decomp = coset_decomposition(stab, &reps);
    let k = reps.len();
    let mut moves = Vec::with_capacity(g.order() * k);
    for h in g.elements() {
        let hi = g.inv(h);
        for &s in &reps {
            // h^-1 s_i = s_j n contributes alpha(n^-1)
            let (j, n) = decomp[g.mul(hi, s)];
            let m = stab
                .local_index(g.inv(n))
                .expect("coset decomposition lies in N_A");
            moves.push((j, m));
        }
    }
    let points = reps
        .iter()
        .map(|&s| action.act(s, orbit.base_point))
        .collect();
    Ok(InducedIrrep {
        action: Arc::clone(action),
        orbit: orbit.clone(),
        alpha: alpha.clone(),
        carrier: Carrier::Equivariant,
        reps,
        points,
        moves,
    })
}

/// `tau^A_alpha` on functions `O_A -> V` through the orbit section.
pub fn section_form(
    action: &Arc<GAction>,
    orbit: &Orbit,
    alpha: &GroupIrrep,
) -> Result<InducedIrrep> {
    check_alpha(orbit, alpha)?;
    let g = action.group();
    let k = orbit.size();
    let mut moves = Vec::with_capacity(g.order() * k);
    for h in g.elements() {
        let hi = g.inv(h);
        for (p, &xi) in orbit.members.iter().enumerate() {
            let target = action.act(hi, xi);
            let q = orbit.position(target).expect("orbit is invariant");
            // alpha(s(xi)^-1 h s(h^-1 xi))
            let twist = g.mul(g.mul(g.inv(orbit.section[p]), h), orbit.section[q]);
            let m = orbit
                .stabilizer
                .local_index(twist)
                .expect("section twist lies in the stabilizer");
            moves.push((q, m));
        }
    }
    Ok(InducedIrrep {
        action: Arc::clone(action),
        orbit: orbit.clone(),
        alpha: alpha.clone(),
        carrier: Carrier::Section,
        reps: orbit.section.clone(),
        points: orbit.members.clone(),
        moves,
    })
}

impl InducedIrrep {
    pub fn action(&self) -> &Arc<GAction> {
        &self.action
    }

    pub fn orbit(&self) -> &Orbit {
        &self.orbit
    }

    pub fn alpha(&self) -> &GroupIrrep {
        &self.alpha
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    /// `[G : N_A] deg(alpha)`.
    pub fn dimension(&self) -> usize {
        self.points.len() * self.alpha.degree()
    }

    /// Ordered `(block, alpha-vector index)` pairs labelling the basis.
    pub fn carrier_basis(&self) -> Vec<(usize, usize)> {
        let d = self.alpha.degree();
        (0..self.points.len())
            .flat_map(|i| (0..d).map(move |a| (i, a)))
            .collect()
    }

    /// Group elements labelling the blocks.
    pub fn block_representatives(&self) -> &[usize] {
        &self.reps
    }

    /// Orbit point of each block.
    pub fn block_points(&self) -> &[usize] {
        &self.points
    }

    fn block_of(&self, xi: usize) -> Option<usize> {
        self.points.iter().position(|&p| p == xi)
    }

    fn add_block(&self, out: &mut CMat, i: usize, j: usize, m: usize, c: Complex64) {
        let d = self.alpha.degree();
        let a = self.alpha.matrix(m);
        for r in 0..d {
            for s in 0..d {
                out[(i * d + r, j * d + s)] += c * a[(r, s)];
            }
        }
    }

    /// Matrix of `delta_xi (x) delta_g`.
    pub fn basis_matrix(&self, xi: usize, g: usize) -> CMat {
        let dim = self.dimension();
        let mut out = CMat::zeros(dim, dim);
        if let Some(i) = self.block_of(xi) {
            let (j, m) = self.moves[g * self.points.len() + i];
            self.add_block(&mut out, i, j, m, ONE);
        }
        out
    }

    /// All basis matrices, indexed by `xi * |G| + g`.
    pub fn basis_matrices(&self) -> Vec<CMat> {
        let n = self.action.group().order();
        (0..self.action.dimension())
            .map(|b| self.basis_matrix(b / n, b % n))
            .collect()
    }

    /// `tau(F) = sum F(xi, g) tau(delta_xi (x) delta_g)`.
    pub fn apply(&self, f: &AlgElement) -> Result<CMat> {
        if !f.action().same_as(&self.action) {
            return Err(Error::ActionMismatch);
        }
        let dim = self.dimension();
        let k = self.points.len();
        let mut out = CMat::zeros(dim, dim);
        for g in self.action.group().elements() {
            for (i, &xi) in self.points.iter().enumerate() {
                let c = f.get(xi, g);
                if c != ZERO {
                    let (j, m) = self.moves[g * k + i];
                    self.add_block(&mut out, i, j, m, c);
                }
            }
        }
        Ok(out)
    }

    /// `chi(xi, g) = tr tau(delta_xi (x) delta_g)`, indexed `xi * |G| + g`.
    pub fn character(&self) -> Vec<Complex64> {
        let n = self.action.group().order();
        let k = self.points.len();
        let mut chi = vec![ZERO; self.action.dimension()];
        for g in 0..n {
            for (i, &xi) in self.points.iter().enumerate() {
                let (j, m) = self.moves[g * k + i];
                if j == i {
                    chi[xi * n + g] = self.alpha.matrix(m).trace();
                }
            }
        }
        chi
    }

    /// `tau(1 (x) delta_g) = sum_xi tau(delta_xi (x) delta_g)`: a unitary.
    pub fn group_matrix(&self, g: usize) -> CMat {
        let dim = self.dimension();
        let k = self.points.len();
        let mut out = CMat::zeros(dim, dim);
        for i in 0..k {
            let (j, m) = self.moves[g * k + i];
            self.add_block(&mut out, i, j, m, ONE);
        }
        out
    }

    /// Images of a generating set of the algebra: `sum_xi (xi + 1) delta_xi`
    /// (distinct weights separate the orbit projections) and `1 (x) g` for
    /// group generators `g`.
    pub fn generator_images(&self) -> Vec<CMat> {
        let d = self.alpha.degree();
        let weights = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.dimension(),
            self.points
                .iter()
                .flat_map(|&p| std::iter::repeat_n(Complex64::new(p as f64 + 1.0, 0.0), d)),
        ));
        let mut out = vec![weights];
        out.extend(
            self.action
                .group()
                .generators()
                .into_iter()
                .map(|g| self.group_matrix(g)),
        );
        out
    }

    pub fn commutant_dimension(&self) -> usize {
        linalg::commutant_dimension(&self.generator_images())
    }

    /// `max |tau(B1 B2) - tau(B1) tau(B2)|` over all basis pairs.
    pub fn homomorphism_defect_exhaustive(&self) -> f64 {
        let act = &self.action;
        let n = act.group().order();
        let mats = self.basis_matrices();
        let mut worst = 0.0f64;
        for a in 0..act.dimension() {
            for b in 0..act.dimension() {
                let prod = AlgElement::basis(act, a / n, a % n)
                    .multiply(&AlgElement::basis(act, b / n, b % n))
                    .expect("same action");
                let lhs = self.apply(&prod).expect("same action");
                worst = worst.max(max_abs_diff(&lhs, &(&mats[a] * &mats[b])));
            }
        }
        worst
    }

    /// Homomorphism and star defects on random elements.
    pub fn random_defects<R: Rng + ?Sized>(&self, samples: usize, rng: &mut R) -> (f64, f64) {
        let (mut hom, mut star) = (0.0f64, 0.0f64);
        for _ in 0..samples {
            let f1 = AlgElement::random(&self.action, rng);
            let f2 = AlgElement::random(&self.action, rng);
            let (m1, m2) = (self.apply(&f1).unwrap(), self.apply(&f2).unwrap());
            let m12 = self.apply(&f1.multiply(&f2).unwrap()).unwrap();
            hom = hom.max(max_abs_diff(&m12, &(&m1 * &m2)));
            star = star.max(max_abs_diff(
                &self.apply(&f1.star()).unwrap(),
                &m1.adjoint(),
            ));
        }
        (hom, star)
    }

    pub fn table_entry(&self, with_matrices: bool) -> IrrepTableEntry {
        IrrepTableEntry {
            orbit_representative: self.orbit.base_point,
            orbit_size: self.orbit.size(),
            centralizer_order: self.orbit.stabilizer.order(),
            alpha_label: self.alpha.label(),
            alpha_degree: self.alpha.degree(),
            dimension: self.dimension(),
            basis_matrices: with_matrices.then(|| {
                self.basis_matrices()
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
                    .collect()
            }),
        }
    }
}

/// Unitary intertwiner from the equivariant to the section carrier of the
/// same `(A, alpha)`: the block labelled by coset `s_i N_A` is sent to the
/// block of the orbit point `s_i xi_A`, twisted by `alpha(s(s_i xi_A)^-1 s_i)`.
pub fn section_intertwiner(induced: &InducedIrrep, section: &InducedIrrep) -> Result<CMat> {
    if induced.carrier != Carrier::Equivariant || section.carrier != Carrier::Section {
        return Err(Error::UnsupportedParams(
            "expected an equivariant and a section carrier".into(),
        ));
    }
    if induced.dimension() != section.dimension() {
        return Err(Error::DimensionMismatch(
            induced.dimension(),
            section.dimension(),
        ));
    }
    let g = induced.action.group();
    let dim = induced.dimension();
    let mut t = CMat::zeros(dim, dim);
    for (i, &s) in induced.reps.iter().enumerate() {
        let xi = induced.points[i];
        let p = section.orbit.position(xi).expect("same orbit");
        // phi(s_i) = alpha(n^-1) phi(s(xi)) with s_i = s(xi) n
        let n = g.mul(g.inv(section.orbit.section[p]), s);
        let m = section.orbit.stabilizer.local_index(n).expect("same coset");
        section.add_block(&mut t, p, i, m, ONE);
    }
    Ok(t)
}

/// A unitary `T` with `T tau_1(F) = tau_2(F) T` for all `F`, if one exists.
pub fn are_equivalent(rep1: &InducedIrrep, rep2: &InducedIrrep) -> Option<CMat> {
    if rep1.dimension() != rep2.dimension() || !rep1.action.same_as(&rep2.action) {
        return None;
    }
    let (a, b) = (rep1.generator_images(), rep2.generator_images());
    equivalence_of_images(&a, &b)
}

/// Intertwiner search on explicit generator images (`T A_k = B_k T`).
pub fn equivalence_of_images(a: &[CMat], b: &[CMat]) -> Option<CMat> {
    let basis = intertwiner_basis(a, b);
    if basis.is_empty() {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let dim = basis[0].nrows();
    for _ in 0..4 {
        let mut t = CMat::zeros(dim, basis[0].ncols());
        for m in &basis {
            t += m * random_complex(&mut rng);
        }
        let Some(u) = polar_unitary(&t) else { continue };
        let defect = a
            .iter()
            .zip(b)
            .map(|(x, y)| max_abs_diff(&(&u * x), &(y * &u)))
            .fold(0.0, f64::max);
        let scale = a.iter().map(linalg::max_abs).fold(1.0, f64::max);
        if defect <= 1e-8 * scale {
            return Some(u);
        }
    }
    None
}

/// One representation per orbit and per irrep of its stabilizer.
pub fn all_irreps(action: &Arc<GAction>) -> Result<Vec<InducedIrrep>> {
    all_irreps_with_seed(action, DEFAULT_SEED)
}

pub fn all_irreps_with_seed(action: &Arc<GAction>, seed: u64) -> Result<Vec<InducedIrrep>> {
    let mut out = Vec::new();
    for orbit in action.orbits() {
        for alpha in irreps_with_seed(&stabilizer_group(&orbit), seed)? {
            out.push(induce(action, &orbit, &alpha)?);
        }
    }
    Ok(out)
}

/// One row of the irrep table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IrrepTableEntry {
    pub orbit_representative: usize,
    pub orbit_size: usize,
    pub centralizer_order: usize,
    pub alpha_label: usize,
    pub alpha_degree: usize,
    pub dimension: usize,
    /// `[basis element xi * |G| + g][row][col] = [re, im]`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_matrices: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{builtin, Builtin};
    use crate::linalg::{block_diag, operator_norm, unitarity_defect};
    use crate::tga::{conjugation_action, left_multiplication_action, natural_action};

    fn conj(name: &str) -> Arc<GAction> {
        let g = Arc::new(builtin(&name.parse().unwrap()).unwrap());
        Arc::new(conjugation_action(&g))
    }

    /// Orbit of the transposition swapping the last two points of S3.
    fn s3_transposition_orbit(act: &GAction) -> Orbit {
        act.orbits().into_iter().find(|o| o.size() == 3).unwrap()
    }

    /// Brute-force commutant dimension from *all* basis matrices.
    fn commutant_oracle(mats: &[CMat]) -> usize {
        linalg::commutant_dimension(mats)
    }

    fn sign_of_order_two(orbit: &Orbit) -> GroupIrrep {
        let stab = stabilizer_group(orbit);
        let e = stab.identity();
        let mats = stab
            .elements()
            .map(|x| CMat::from_element(1, 1, Complex64::new(if x == e { 1.0 } else { -1.0 }, 0.0)))
            .collect();
        GroupIrrep::from_matrices(stab, 1, mats).unwrap()
    }

    #[test]
    fn point_with_whole_group_gives_group_sum() {
        let g = Arc::new(builtin(&Builtin::Symmetric(3)).unwrap());
        let act = Arc::new(GAction::new("point", Arc::clone(&g), vec![vec![0]; 6]).unwrap());
        let orbit = act.orbits().remove(0);
        let trivial =
            GroupIrrep::from_matrices(stabilizer_group(&orbit), 0, vec![linalg::identity(1); 6])
                .unwrap();
        let rep = induce(&act, &orbit, &trivial).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = AlgElement::random(&act, &mut rng);
        let sum: Complex64 = (0..6).map(|z| f.get(0, z)).sum();
        assert!((rep.apply(&f).unwrap()[(0, 0)] - sum).norm() < 1e-14);
    }

    #[test]
    fn s3_transposition_sign_is_three_dimensional_irrep() {
        let act = conj("S3");
        let orbit = s3_transposition_orbit(&act);
        assert_eq!(orbit.stabilizer.order(), 2);
        let rep = induce(&act, &orbit, &sign_of_order_two(&orbit)).unwrap();
        assert_eq!(rep.dimension(), 3);
        assert!(rep.homomorphism_defect_exhaustive() < 1e-12);
        let mats = rep.basis_matrices();
        for (b, m) in mats.iter().enumerate() {
            let star = AlgElement::basis(&act, b / 6, b % 6).star();
            assert!(max_abs_diff(&rep.apply(&star).unwrap(), &m.adjoint()) < 1e-14);
        }
        assert_eq!(commutant_oracle(&mats), 1);
        assert_eq!(rep.commutant_dimension(), 1);
    }

    #[test]
    fn unit_and_group_matrices() {
        let act = conj("D4");
        for rep in all_irreps(&act).unwrap() {
            let one = rep.apply(&AlgElement::unit(&act)).unwrap();
            assert!(max_abs_diff(&one, &linalg::identity(rep.dimension())) < 1e-14);
            for g in act.group().elements() {
                assert!(unitarity_defect(&rep.group_matrix(g)) < 1e-12);
            }
        }
    }

    #[test]
    fn wrong_alpha_is_rejected() {
        let act = conj("S3");
        let orbits = act.orbits();
        let z2 = sign_of_order_two(&orbits[1]);
        assert!(matches!(
            induce(&act, &orbits[2], &z2),
            Err(Error::NotStabilizerIrrep(_))
        ));
        assert!(matches!(
            section_form(&act, &orbits[0], &z2),
            Err(Error::NotStabilizerIrrep(_))
        ));
    }

    #[test]
    fn apply_rejects_foreign_element() {
        let rep = all_irreps(&conj("S3")).unwrap().remove(0);
        let other = AlgElement::unit(&conj("Z3"));
        assert_eq!(rep.apply(&other).unwrap_err(), Error::ActionMismatch);
    }

    #[test]
    fn operator_norm_bounded_by_l1() {
        let act = conj("S3");
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let reps = all_irreps(&act).unwrap();
        for _ in 0..100 {
            let f = AlgElement::random(&act, &mut rng);
            for rep in &reps {
                assert!(operator_norm(&rep.apply(&f).unwrap()) <= f.norm1() * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn singleton_section_form_is_alpha() {
        let act = conj("S3");
        let orbit = act.orbits().remove(0);
        for alpha in irreps_with_seed(&stabilizer_group(&orbit), 1).unwrap() {
            let rep = section_form(&act, &orbit, &alpha).unwrap();
            for z in act.group().elements() {
                let m = rep.basis_matrix(orbit.base_point, z);
                assert!(max_abs_diff(&m, alpha.matrix(z)) < 1e-14);
            }
        }
    }

    #[test]
    fn section_form_is_equivalent_to_induced() {
        for act in [
            conj("S3"),
            conj("D4"),
            conj("Q8"),
            Arc::new(natural_action(&Builtin::Symmetric(4)).unwrap()),
        ] {
            for orbit in act.orbits() {
                for alpha in irreps_with_seed(&stabilizer_group(&orbit), 3).unwrap() {
                    let a = induce(&act, &orbit, &alpha).unwrap();
                    let b = section_form(&act, &orbit, &alpha).unwrap();
                    assert_eq!(a.dimension(), b.dimension());
                    let t = section_intertwiner(&a, &b).unwrap();
                    assert!(unitarity_defect(&t) < 1e-12);
                    let n = act.group().order();
                    for idx in 0..act.dimension() {
                        let (xi, g) = (idx / n, idx % n);
                        let lhs = &t * a.basis_matrix(xi, g);
                        let rhs = b.basis_matrix(xi, g) * &t;
                        assert!(max_abs_diff(&lhs, &rhs) < 1e-12);
                    }
                    assert!(are_equivalent(&a, &b).is_some());
                }
            }
        }
    }

    #[test]
    fn equivalence_self_and_distinct() {
        let act = conj("S3");
        let reps = all_irreps(&act).unwrap();
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                let eq = are_equivalent(a, b);
                assert_eq!(eq.is_some(), i == j, "pair ({i}, {j})");
                if let Some(u) = eq {
                    assert!(unitarity_defect(&u) < 1e-10);
                    // Schur: self-intertwiner is a phase times the identity.
                    let phase = u[(0, 0)];
                    assert!(max_abs_diff(&u, &(linalg::identity(a.dimension()) * phase)) < 1e-8);
                    assert!((phase.norm() - 1.0).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn commutant_of_direct_sums() {
        let act = conj("S3");
        let reps = all_irreps(&act).unwrap();
        let (a, b) = (&reps[5], &reps[6]);
        let mats_a = a.basis_matrices();
        let mats_b = b.basis_matrices();
        let sum_distinct: Vec<CMat> = mats_a
            .iter()
            .zip(&mats_b)
            .map(|(x, y)| block_diag(&[x, y]))
            .collect();
        assert_eq!(commutant_oracle(&sum_distinct), 2);
        let sum_same: Vec<CMat> = mats_a.iter().map(|x| block_diag(&[x, x])).collect();
        assert_eq!(commutant_oracle(&sum_same), 4);
    }

    #[test]
    fn z2_conjugation_has_four_characters() {
        let act = conj("Z2");
        let reps = all_irreps(&act).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(reps.iter().all(|r| r.dimension() == 1));
    }

    #[test]
    fn s3_conjugation_degrees() {
        let reps = all_irreps(&conj("S3")).unwrap();
        let mut dims: Vec<usize> = reps.iter().map(|r| r.dimension()).collect();
        let total: usize = dims.iter().map(|d| d * d).sum();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2, 2, 2, 2, 3, 3]);
        assert_eq!(total, 36);
    }

    #[test]
    fn free_transitive_action_has_regular_irrep() {
        let g = Arc::new(builtin(&Builtin::Dihedral(3)).unwrap());
        let act = Arc::new(left_multiplication_action(&g));
        let reps = all_irreps(&act).unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].dimension(), 6);
        assert_eq!(reps[0].commutant_dimension(), 1);
    }

    #[test]
    fn generator_commutant_matches_full_commutant() {
        for act in [
            conj("Q8"),
            Arc::new(natural_action(&Builtin::Dihedral(4)).unwrap()),
        ] {
            for rep in all_irreps(&act).unwrap() {
                assert_eq!(
                    rep.commutant_dimension(),
                    commutant_oracle(&rep.basis_matrices())
                );
            }
        }
    }

    #[test]
    fn table_entry_json() {
        let rep = all_irreps(&conj("S3")).unwrap().remove(7);
        let entry = rep.table_entry(false);
        let text = serde_json::to_string(&entry).unwrap();
        assert!(!text.contains("basis_matrices"));
        let full = rep.table_entry(true);
        assert_eq!(full.basis_matrices.unwrap().len(), 36);
    }
}
