//! Hopf, quasitriangularity and star identities of `D(G)`, checked on basis
//! elements: every pair for `|G| <= 8`, seeded random samples above.
//!
//! Basis inputs make every intermediate coefficient a small integer, so the
//! identities hold exactly in floating point; deviations are still reported.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    coproduct_leg, counit, counit_leg, double_action, multiply_legs, r_matrix, star_legs,
    tensor_multiply, unit_times, HopfStructure, Legs, TensorElement,
};
use crate::groups::FiniteGroup;
use crate::linalg::ONE;
use crate::report::{MaxDeviation, Report, EXACT_TOLERANCE};
use crate::tga::AlgElement;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random basis elements (or pairs) drawn when not exhaustive.
    pub samples: usize,
    /// Dense random elements for the star/antihomomorphism check.
    pub random_elements: usize,
    pub tolerance: f64,
    /// Largest group order checked on every basis element.
    pub exhaustive_limit: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 48,
            random_elements: 100,
            tolerance: EXACT_TOLERANCE,
            exhaustive_limit: 8,
        }
    }
}

impl VerifyOptions {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            seed,
            ..Self::default()
        }
    }

    fn basis_elements(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
        if n <= self.exhaustive_limit {
            (0..n * n).map(|s| (s / n, s % n)).collect()
        } else {
            (0..self.samples)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect()
        }
    }

    fn basis_pairs(&self, n: usize, rng: &mut ChaCha8Rng) -> Vec<((usize, usize), (usize, usize))> {
        if n <= self.exhaustive_limit {
            let all: Vec<(usize, usize)> = (0..n * n).map(|s| (s / n, s % n)).collect();
            all.iter()
                .flat_map(|&p| all.iter().map(move |&q| (p, q)))
                .collect()
        } else {
            (0..self.samples)
                .map(|_| {
                    (
                        (rng.gen_range(0..n), rng.gen_range(0..n)),
                        (rng.gen_range(0..n), rng.gen_range(0..n)),
                    )
                })
                .collect()
        }
    }
}

fn basis(g: &Arc<FiniteGroup>, p: (usize, usize)) -> TensorElement {
    TensorElement::basis(g, &[p]).expect("rank 1")
}

fn scalar_dev(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm()
}

pub fn verify_hopf(group: &Arc<FiniteGroup>, opts: &VerifyOptions) -> Report {
    verify_hopf_with(&HopfStructure::new(group), opts)
}

/// Coassociativity, counit, antipode and compatibility of `Delta`, `eps`,
/// `S` with the product and star.
pub fn verify_hopf_with(hopf: &HopfStructure, opts: &VerifyOptions) -> Report {
    let g = hopf.group();
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let act = double_action(g);
    let tol = opts.tolerance;

    let mut coassoc = MaxDeviation::default();
    let (mut counit_l, mut counit_r) = (MaxDeviation::default(), MaxDeviation::default());
    let (mut anti_l, mut anti_r) = (MaxDeviation::default(), MaxDeviation::default());
    let mut delta_star = MaxDeviation::default();
    for p in opts.basis_elements(n, &mut rng) {
        let f = basis(g, p);
        let d = coproduct_leg(&f, 0).expect("rank 1");
        let left = coproduct_leg(&d, 0).expect("rank 2");
        let right = coproduct_leg(&d, 1).expect("rank 2");
        coassoc.record(left.max_abs_diff(&right));
        counit_l.record(counit_leg(&d, 0).expect("rank 2").max_abs_diff(&f));
        counit_r.record(counit_leg(&d, 1).expect("rank 2").max_abs_diff(&f));
        let eps = if p.0 == g.identity() {
            ONE
        } else {
            Complex64::new(0.0, 0.0)
        };
        let target = unit_times(g, eps);
        let sl = multiply_legs(&hopf.antipode_leg(&d, 0), 0).expect("rank 2");
        let sr = multiply_legs(&hopf.antipode_leg(&d, 1), 0).expect("rank 2");
        anti_l.record(sl.max_abs_diff(&target));
        anti_r.record(sr.max_abs_diff(&target));
        let fs = star_legs(&f);
        delta_star.record(
            coproduct_leg(&fs, 0)
                .expect("rank 1")
                .max_abs_diff(&star_legs(&d)),
        );
    }

    let (mut delta_mult, mut eps_mult, mut s_anti) = (
        MaxDeviation::default(),
        MaxDeviation::default(),
        MaxDeviation::default(),
    );
    for (p, q) in opts.basis_pairs(n, &mut rng) {
        let (f1, f2) = (basis(g, p), basis(g, q));
        let prod = tensor_multiply(&f1, &f2).expect("rank 1");
        let lhs = coproduct_leg(&prod, 0).expect("rank 1");
        let rhs = tensor_multiply(
            &coproduct_leg(&f1, 0).unwrap(),
            &coproduct_leg(&f2, 0).unwrap(),
        )
        .unwrap();
        delta_mult.record(lhs.max_abs_diff(&rhs));
        let eps = |t: &TensorElement| counit(&t.to_element(&act).expect("rank 1"));
        eps_mult.record(scalar_dev(eps(&prod), eps(&f1) * eps(&f2)));
        let s_prod = hopf.antipode_leg(&prod, 0);
        let s_rev =
            tensor_multiply(&hopf.antipode_leg(&f2, 0), &hopf.antipode_leg(&f1, 0)).unwrap();
        s_anti.record(s_prod.max_abs_diff(&s_rev));
    }

    let one = TensorElement::unit(g, 1).expect("rank 1");
    let mut unit_dev = MaxDeviation::default();
    unit_dev.record(
        coproduct_leg(&one, 0)
            .unwrap()
            .max_abs_diff(&TensorElement::unit(g, 2).unwrap()),
    );
    unit_dev.record(scalar_dev(counit(&AlgElement::unit(&act)), ONE));
    unit_dev.record(hopf.antipode_leg(&one, 0).max_abs_diff(&one));

    let mut report = Report::new("hopf", g.name());
    report.push("coassociativity", coassoc.value(), tol);
    report.push("counit_left", counit_l.value(), tol);
    report.push("counit_right", counit_r.value(), tol);
    report.push("antipode_left", anti_l.value(), tol);
    report.push("antipode_right", anti_r.value(), tol);
    report.push("coproduct_multiplicative", delta_mult.value(), tol);
    report.push("counit_multiplicative", eps_mult.value(), tol);
    report.push("antipode_antimultiplicative", s_anti.value(), tol);
    report.push("coproduct_star", delta_star.value(), tol);
    report.push("unit_preserved", unit_dev.value(), tol);
    report
}

pub fn verify_quasitriangular(group: &Arc<FiniteGroup>, opts: &VerifyOptions) -> Report {
    verify_quasitriangular_with(group, &r_matrix(group), opts)
}

/// `R Delta = Delta^op R`, the two factorization axioms, Yang-Baxter and
/// invertibility of `R` via `(S (x) id) R`, for a supplied candidate `R`.
pub fn verify_quasitriangular_with(
    group: &Arc<FiniteGroup>,
    r: &TensorElement,
    opts: &VerifyOptions,
) -> Report {
    let g = group;
    let n = g.order();
    let tol = opts.tolerance;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37);

    let mut intertwines = MaxDeviation::default();
    for p in opts.basis_elements(n, &mut rng) {
        let d = coproduct_leg(&basis(g, p), 0).expect("rank 1");
        let lhs = tensor_multiply(r, &d).expect("rank 2");
        let rhs = tensor_multiply(&d.flip().expect("rank 2"), r).expect("rank 2");
        intertwines.record(lhs.max_abs_diff(&rhs));
    }

    let r12 = r.embed(Legs::L12).expect("rank 2");
    let r13 = r.embed(Legs::L13).expect("rank 2");
    let r23 = r.embed(Legs::L23).expect("rank 2");
    let mul = |a: &TensorElement, b: &TensorElement| tensor_multiply(a, b).expect("rank 3");

    let delta_first = coproduct_leg(r, 0)
        .expect("rank 2")
        .max_abs_diff(&mul(&r13, &r23));
    let delta_second = coproduct_leg(r, 1)
        .expect("rank 2")
        .max_abs_diff(&mul(&r13, &r12));
    let ybe = mul(&mul(&r12, &r13), &r23).max_abs_diff(&mul(&mul(&r23, &r13), &r12));
    let r_inv = HopfStructure::new(g).antipode_leg(r, 0);
    let unit2 = TensorElement::unit(g, 2).expect("rank 2");
    let mut inverse = MaxDeviation::default();
    inverse.record(tensor_multiply(r, &r_inv).unwrap().max_abs_diff(&unit2));
    inverse.record(tensor_multiply(&r_inv, r).unwrap().max_abs_diff(&unit2));

    let mut report = Report::new("quasitriangular", g.name());
    report.push("r_intertwines_coproduct", intertwines.value(), tol);
    report.push("coproduct_first_leg_of_r", delta_first, tol);
    report.push("coproduct_second_leg_of_r", delta_second, tol);
    report.push("yang_baxter", ybe, tol);
    report.push("r_invertible", inverse.value(), tol);
    report
}

/// `(F1 F2)* = F2* F1*` on basis pairs and random elements, the pointwise
/// star formula, and involutivity.
pub fn verify_star(group: &Arc<FiniteGroup>, opts: &VerifyOptions) -> Report {
    let g = group;
    let n = g.order();
    let act = double_action(g);
    let tol = opts.tolerance;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x57a2);

    let mut anti_basis = MaxDeviation::default();
    for (p, q) in opts.basis_pairs(n, &mut rng) {
        let (f1, f2) = (basis(g, p), basis(g, q));
        let lhs = star_legs(&tensor_multiply(&f1, &f2).unwrap());
        let rhs = tensor_multiply(&star_legs(&f2), &star_legs(&f1)).unwrap();
        anti_basis.record(lhs.max_abs_diff(&rhs));
    }

    let mut anti_random = MaxDeviation::default();
    let mut formula = MaxDeviation::default();
    let mut involution = MaxDeviation::default();
    for _ in 0..opts.random_elements {
        let f1 = AlgElement::random(&act, &mut rng);
        let f2 = AlgElement::random(&act, &mut rng);
        let lhs = f1.multiply(&f2).unwrap().star();
        let rhs = f2.star().multiply(&f1.star()).unwrap();
        anti_random.record(lhs.max_abs_diff(&rhs));
        let s = f1.star();
        for x in 0..n {
            for y in 0..n {
                let yi = g.inv(y);
                let expected = f1.get(g.mul(g.mul(yi, x), y), yi).conj();
                formula.record((s.get(x, y) - expected).norm());
            }
        }
        involution.record(s.star().max_abs_diff(&f1));
    }

    let mut report = Report::new("star", g.name());
    report.push("star_antimultiplicative_basis", anti_basis.value(), tol);
    report.push("star_antimultiplicative_random", anti_random.value(), tol);
    report.push("star_pointwise_formula", formula.value(), tol);
    report.push("star_involutive", involution.value(), tol);
    report
}
