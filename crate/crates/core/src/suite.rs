//! Property suite for a transformation group algebra and its irreps.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::double::VerifyOptions;
use crate::linalg::operator_norm;
use crate::report::{MaxDeviation, Report};
use crate::reps::{all_irreps_with_seed, are_equivalent};
use crate::tga::{based_ring_violations, AlgElement, GAction};
use crate::Result;

/// Largest `|X|·|G|` for which the based-ring property is checked on all basis pairs.
pub const BASED_RING_LIMIT: usize = 256;

/// Tolerance for representation identities on dense random elements.
pub const REP_TOLERANCE: f64 = 1e-10;

/// Check ids: `associativity`, `star_antimultiplicative`, `star_involutive`,
/// `norm_submultiplicative`, `inner_product_adjoint`, `based_ring` (only when
/// `|X|·|G| ≤ 256`), `completeness`, `irreducibility`, `inequivalence`,
/// `rep_homomorphism`, `rep_star`, `norm_decreasing`.
///
/// Integer-valued checks (`based_ring`, `completeness`, `irreducibility`,
/// `inequivalence`) report a count or an integer gap with tolerance 0.
pub fn verify_tga(action: &Arc<GAction>, opts: &VerifyOptions) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = Report::new("tga", action.name());
    let tol = opts.tolerance;

    let mut assoc = MaxDeviation::default();
    let mut star_anti = MaxDeviation::default();
    let mut star_inv = MaxDeviation::default();
    let mut submult = MaxDeviation::default();
    let mut adjoint = MaxDeviation::default();
    let mut samples = Vec::with_capacity(opts.random_elements);
    for _ in 0..opts.random_elements {
        let a = AlgElement::random(action, &mut rng);
        let b = AlgElement::random(action, &mut rng);
        let c = AlgElement::random(action, &mut rng);
        let ab = a.multiply(&b)?;
        let lhs = ab.multiply(&c)?;
        let rhs = a.multiply(&b.multiply(&c)?)?;
        // relative to the size of the triple product, which grows with |X|·|G|
        let scale = lhs.coeffs().iter().map(|z| z.norm()).fold(1.0, f64::max);
        assoc.record(lhs.max_abs_diff(&rhs) / scale);
        star_anti.record(ab.star().max_abs_diff(&b.star().multiply(&a.star())?));
        star_inv.record(a.star().star().max_abs_diff(&a));
        submult.record((ab.norm1() - a.norm1() * b.norm1()).max(0.0));
        let l = ab.inner_product(&c)?;
        let r = b.inner_product(&a.star().multiply(&c)?)?;
        adjoint.record((l - r).norm());
        samples.push(a);
    }
    report.push("associativity", assoc.value(), tol);
    report.push("star_antimultiplicative", star_anti.value(), tol);
    report.push("star_involutive", star_inv.value(), tol);
    report.push("norm_submultiplicative", submult.value(), tol);
    report.push("inner_product_adjoint", adjoint.value(), tol);

    if action.dimension() <= BASED_RING_LIMIT {
        report.push("based_ring", based_ring_violations(action) as f64, 0.0);
    }

    let irreps = all_irreps_with_seed(action, opts.seed)?;
    let total: usize = irreps.iter().map(|r| r.dimension() * r.dimension()).sum();
    report.push(
        "completeness",
        total.abs_diff(action.dimension()) as f64,
        0.0,
    );
    let irreducible = irreps
        .iter()
        .map(|r| r.commutant_dimension().abs_diff(1))
        .max()
        .unwrap_or(0);
    report.push("irreducibility", irreducible as f64, 0.0);
    let mut equivalent_pairs = 0usize;
    for i in 0..irreps.len() {
        for j in (i + 1)..irreps.len() {
            if are_equivalent(&irreps[i], &irreps[j]).is_some() {
                equivalent_pairs += 1;
            }
        }
    }
    report.push("inequivalence", equivalent_pairs as f64, 0.0);

    let mut hom = MaxDeviation::default();
    let mut star = MaxDeviation::default();
    let mut norm = MaxDeviation::default();
    for rep in &irreps {
        let (h, s) = rep.random_defects(opts.random_elements, &mut rng);
        hom.record(h);
        star.record(s);
        for f in &samples {
            norm.record((operator_norm(&rep.apply(f)?) - f.norm1()).max(0.0));
        }
    }
    report.push("rep_homomorphism", hom.value(), REP_TOLERANCE);
    report.push("rep_star", star.value(), REP_TOLERANCE);
    report.push("norm_decreasing", norm.value(), REP_TOLERANCE);
    Ok(report)
}
