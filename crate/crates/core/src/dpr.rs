//! Representations of `D(G)` by algebraic induction from `B_A = C(G) (x) C[N_A]`.
//!
//! `B_A` acts on `V_alpha` by `Pi_alpha(f (x) n) v = f(g_A) alpha(n) v`. The
//! induced module `D(G) (x)_{B_A} V_alpha` is identified with
//! `C[G] (x)_alpha V_alpha`, where `x h (x) v = x (x) alpha(h) v` for `h` in
//! `N_A`; a basis is `s_i (x) e_k` over left coset representatives `s_i`.
//! On it
//!
//! ```text
//! Pi(1 (x) y)(x (x) v) = y x (x) v
//! Pi(f (x) e)(x (x) v) = f(x g_A x^-1) x (x) v
//! ```
//!
//! and `x (x) v  ->  w(.) = (1/|N_A|) sum_n delta_{x n^-1}(.) alpha(n) v`
//! maps it onto the equivariant-function carrier, with inverse
//! `w -> sum_x x (x) w(x)`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::double::double_action;
use crate::error::{Error, Result};
use crate::groups::{coset_decomposition, irreps, left_coset_section, FiniteGroup, GroupIrrep};
use crate::linalg::{identity, max_abs_diff, random_complex, unitarity_defect, CMat, ONE, ZERO};
use crate::report::{MaxDeviation, Report, EXACT_TOLERANCE};
use crate::reps::{induce, stabilizer_group, Carrier, InducedIrrep};
use crate::tga::{AlgElement, GAction, Orbit};

fn check_alpha(orbit: &Orbit, alpha: &GroupIrrep) -> Result<()> {
    if alpha.group().same_table(orbit.stabilizer.as_group()) {
        Ok(())
    } else {
        Err(Error::NotCentralizerIrrep(format!(
            "alpha has order-{} domain, centralizer of {} has order {}",
            alpha.group().order(),
            orbit.base_point,
            orbit.stabilizer.order()
        )))
    }
}

/// `Pi_alpha` on `V_alpha`.
#[derive(Debug, Clone)]
pub struct SubalgebraRep {
    group: Arc<FiniteGroup>,
    orbit: Orbit,
    alpha: GroupIrrep,
}

pub fn subalgebra_rep(
    action: &GAction,
    orbit: &Orbit,
    alpha: &GroupIrrep,
) -> Result<SubalgebraRep> {
    check_alpha(orbit, alpha)?;
    Ok(SubalgebraRep {
        group: Arc::clone(action.group()),
        orbit: orbit.clone(),
        alpha: alpha.clone(),
    })
}

impl SubalgebraRep {
    /// `Pi_alpha(f (x) n) = f(g_A) alpha(n)` for `f` a function on `G`, `n` in `N_A`.
    pub fn apply(&self, f: &[Complex64], n: usize) -> Result<CMat> {
        let local = self.orbit.stabilizer.local_index(n).ok_or_else(|| {
            Error::NotCentralizerIrrep(format!(
                "{n} is not in the centralizer of {}",
                self.orbit.base_point
            ))
        })?;
        Ok(self.alpha.matrix(local) * f[self.orbit.base_point])
    }

    /// `(f1 (x) n1)(f2 (x) n2) = f1(.) f2(n1^-1 . n1) (x) n1 n2`.
    pub fn product(
        &self,
        f1: &[Complex64],
        n1: usize,
        f2: &[Complex64],
        n2: usize,
    ) -> (Vec<Complex64>, usize) {
        let g = &self.group;
        let n1i = g.inv(n1);
        let f = g
            .elements()
            .map(|x| f1[x] * f2[g.mul(g.mul(n1i, x), n1)])
            .collect();
        (f, g.mul(n1, n2))
    }
}

/// `Pi^A_alpha` on the coset basis `s_i (x) e_k`.
#[derive(Debug, Clone)]
pub struct DprRep {
    action: Arc<GAction>,
    orbit: Orbit,
    alpha: GroupIrrep,
    reps: Vec<usize>,
    /// `x = s_i n` for every `x`, as `(i, n)`.
    decomp: Vec<(usize, usize)>,
}

/// Induces `Pi_alpha` from `B_A` to `D(G)`; `action` must be a conjugation action.
pub fn induce_dpr(action: &Arc<GAction>, orbit: &Orbit, alpha: &GroupIrrep) -> Result<DprRep> {
    check_alpha(orbit, alpha)?;
    let reps = left_coset_section(&orbit.stabilizer);
    let decomp = coset_decomposition(&orbit.stabilizer, &reps);
    Ok(DprRep {
        action: Arc::clone(action),
        orbit: orbit.clone(),
        alpha: alpha.clone(),
        reps,
        decomp,
    })
}

impl DprRep {
    pub fn dimension(&self) -> usize {
        self.reps.len() * self.alpha.degree()
    }

    pub fn orbit(&self) -> &Orbit {
        &self.orbit
    }

    pub fn alpha(&self) -> &GroupIrrep {
        &self.alpha
    }

    pub fn coset_representatives(&self) -> &[usize] {
        &self.reps
    }

    fn local(&self, n: usize) -> usize {
        self.orbit
            .stabilizer
            .local_index(n)
            .expect("element of N_A")
    }

    /// `x (x) v` with `x = s_i n` rewritten as `s_i (x) alpha(n) v`, added into column `col`.
    fn add_vector(
        &self,
        out: &mut CMat,
        col: usize,
        x: usize,
        v: &nalgebra::DVector<Complex64>,
        c: Complex64,
    ) {
        let d = self.alpha.degree();
        let (i, n) = self.decomp[x];
        let moved = self.alpha.matrix(self.local(n)) * v;
        for r in 0..d {
            out[(i * d + r, col)] += c * moved[r];
        }
    }

    /// `Pi(1 (x) y)`: the representation of `G` induced from `alpha`.
    pub fn group_matrix(&self, y: usize) -> CMat {
        let g = self.action.group();
        let d = self.alpha.degree();
        let dim = self.dimension();
        let mut out = CMat::zeros(dim, dim);
        for (j, &s) in self.reps.iter().enumerate() {
            for k in 0..d {
                let e_k = nalgebra::DVector::from_fn(d, |r, _| if r == k { ONE } else { ZERO });
                self.add_vector(&mut out, j * d + k, g.mul(y, s), &e_k, ONE);
            }
        }
        out
    }

    /// `Pi(f (x) e)`: diagonal with `f(s_i g_A s_i^-1)` on block `i`.
    pub fn function_matrix(&self, f: &[Complex64]) -> CMat {
        let d = self.alpha.degree();
        let dim = self.dimension();
        let mut out = CMat::zeros(dim, dim);
        for (i, &s) in self.reps.iter().enumerate() {
            let value = f[self.action.act(s, self.orbit.base_point)];
            for r in 0..d {
                out[(i * d + r, i * d + r)] = value;
            }
        }
        out
    }

    /// `Pi(delta_xi (x) delta_g) = Pi(delta_xi (x) e) Pi(1 (x) g)`.
    pub fn basis_matrix(&self, xi: usize, g: usize) -> CMat {
        let n = self.action.group().order();
        let delta: Vec<Complex64> = (0..n).map(|x| if x == xi { ONE } else { ZERO }).collect();
        self.function_matrix(&delta) * self.group_matrix(g)
    }

    pub fn apply(&self, f: &AlgElement) -> Result<CMat> {
        if !f.action().same_as(&self.action) {
            return Err(Error::ActionMismatch);
        }
        let n = self.action.group().order();
        let dim = self.dimension();
        let mut out = CMat::zeros(dim, dim);
        for g in 0..n {
            let column: Vec<Complex64> =
                (0..self.action.set_size()).map(|xi| f.get(xi, g)).collect();
            if column.iter().all(|c| *c == ZERO) {
                continue;
            }
            out += self.function_matrix(&column) * self.group_matrix(g);
        }
        Ok(out)
    }
}

fn check_labels(dpr: &DprRep, ind: &InducedIrrep) -> Result<()> {
    let same = ind.carrier() == Carrier::Equivariant
        && dpr.action.same_as(ind.action())
        && dpr.orbit.base_point == ind.orbit().base_point
        && dpr.alpha.label() == ind.alpha().label()
        && dpr.alpha.degree() == ind.alpha().degree()
        && dpr
            .alpha
            .matrices()
            .iter()
            .zip(ind.alpha().matrices())
            .all(|(a, b)| max_abs_diff(a, b) == 0.0);
    if same {
        Ok(())
    } else {
        Err(Error::LabelMismatch(format!(
            "DPR rep ({}, {}) vs induced rep ({}, {})",
            dpr.orbit.base_point,
            dpr.alpha.label(),
            ind.orbit().base_point,
            ind.alpha().label()
        )))
    }
}

/// Matrix of `x (x) v -> (1/|N_A|) sum_n delta_{x n^-1}(.) alpha(n) v`,
/// with the image read off at the induced carrier's block representatives.
pub fn intertwiner_to_induced(dpr: &DprRep, ind: &InducedIrrep) -> Result<CMat> {
    check_labels(dpr, ind)?;
    let g = dpr.action.group();
    let d = dpr.alpha.degree();
    let dim = dpr.dimension();
    let norm = dpr.orbit.stabilizer.order() as f64;
    let targets = ind.block_representatives();
    let mut t = CMat::zeros(dim, dim);
    for (i, &x) in dpr.reps.iter().enumerate() {
        for &n in dpr.orbit.stabilizer.members() {
            let y = g.mul(x, g.inv(n));
            let Some(j) = targets.iter().position(|&s| s == y) else {
                continue;
            };
            let a = dpr.alpha.matrix(dpr.local(n));
            for r in 0..d {
                for k in 0..d {
                    t[(j * d + r, i * d + k)] += a[(r, k)] / norm;
                }
            }
        }
    }
    Ok(t)
}

/// Matrix of `w -> sum_x x (x) w(x)`, the inverse of [`intertwiner_to_induced`].
pub fn intertwiner_from_induced(dpr: &DprRep, ind: &InducedIrrep) -> Result<CMat> {
    check_labels(dpr, ind)?;
    let g = dpr.action.group();
    let d = dpr.alpha.degree();
    let dim = dpr.dimension();
    let mut t = CMat::zeros(dim, dim);
    for (j, &s) in ind.block_representatives().iter().enumerate() {
        for k in 0..d {
            // w(s n) = alpha(n^-1) e_k on the coset s N_A, zero elsewhere
            for &n in dpr.orbit.stabilizer.members() {
                let w = dpr.alpha.matrix(dpr.local(g.inv(n))).column(k).into_owned();
                dpr.add_vector(&mut t, j * d + k, g.mul(s, n), &w, ONE);
            }
        }
    }
    Ok(t)
}

/// Checks, for every `(A, alpha)` of `D(G)`, that the explicit map intertwines
/// `Pi^A_alpha` with the induced representation on every basis element.
pub fn verify_dpr_equivalence(group: &Arc<FiniteGroup>, seed: u64) -> Result<Report> {
    let action = double_action(group);
    let n = group.order();
    let tol = EXACT_TOLERANCE;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut intertwining = MaxDeviation::default();
    let mut inverse = MaxDeviation::default();
    let mut unitary = MaxDeviation::default();
    let mut group_hom = MaxDeviation::default();
    let mut subalgebra = MaxDeviation::default();
    let mut proportional = MaxDeviation::default();
    for orbit in action.orbits() {
        for alpha in irreps(&stabilizer_group(&orbit))? {
            let dpr = induce_dpr(&action, &orbit, &alpha)?;
            let ind = induce(&action, &orbit, &alpha)?;
            let t = intertwiner_to_induced(&dpr, &ind)?;
            let t_inv = intertwiner_from_induced(&dpr, &ind)?;
            let dim = dpr.dimension();
            inverse.record(max_abs_diff(&(&t_inv * &t), &identity(dim)));
            inverse.record(max_abs_diff(&(&t * &t_inv), &identity(dim)));
            for xi in 0..n {
                for g in 0..n {
                    let lhs = &t * dpr.basis_matrix(xi, g);
                    let rhs = ind.basis_matrix(xi, g) * &t;
                    intertwining.record(max_abs_diff(&lhs, &rhs));
                }
            }
            for x in 0..n {
                let ux = dpr.group_matrix(x);
                unitary.record(unitarity_defect(&ux));
                for y in 0..n {
                    group_hom.record(max_abs_diff(
                        &(&ux * dpr.group_matrix(y)),
                        &dpr.group_matrix(group.mul(x, y)),
                    ));
                }
            }
            // T^dagger T is a positive multiple of the identity
            let gram = t.adjoint() * &t;
            let scale = gram[(0, 0)];
            proportional.record(max_abs_diff(&gram, &(identity(dim) * scale)));

            let sub = subalgebra_rep(&action, &orbit, &alpha)?;
            let members = orbit.stabilizer.members();
            for _ in 0..8 {
                let f1: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
                let f2: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
                let n1 = members[rand::Rng::gen_range(&mut rng, 0..members.len())];
                let n2 = members[rand::Rng::gen_range(&mut rng, 0..members.len())];
                let (f, m) = sub.product(&f1, n1, &f2, n2);
                let lhs = sub.apply(&f1, n1)? * sub.apply(&f2, n2)?;
                subalgebra.record(max_abs_diff(&lhs, &sub.apply(&f, m)?));
            }
        }
    }
    let mut report = Report::new("dpr", group.name());
    report.push("intertwiner_residual", intertwining.value(), tol);
    report.push("intertwiner_inverse", inverse.value(), tol);
    report.push(
        "intertwiner_proportional_to_unitary",
        proportional.value(),
        tol,
    );
    report.push("group_part_unitary", unitary.value(), tol);
    report.push("group_part_homomorphism", group_hom.value(), tol);
    report.push("subalgebra_homomorphism", subalgebra.value(), 1e-12);
    Ok(report)
}
