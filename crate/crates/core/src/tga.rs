//! The finite transformation group algebra `C(X x G)`.
//!
//! For a finite `G`-set `X` the product and involution are
//!
//! ```text
//! (F1 . F2)(xi, y) = sum_z F1(xi, z) F2(z^-1 xi, z^-1 y)
//! F*(xi, y)        = conj F(y^-1 xi, y^-1)
//! ```
//!
//! Haar measure is counting measure with no `1/|G|` factor and the modular
//! function is identically one. On the basis `delta_eta (x) delta_g` this is a
//! based ring: `(d_eta x d_g)(d_eta' x d_g') = [eta = g eta'] d_eta x d_gg'`.

use std::fmt;
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{left_coset_section, permutations, Builtin, FiniteGroup, Subgroup};
use crate::linalg::{random_complex, ZERO};

/// A finite `G`-set: `act(g, xi) = g xi`.
#[derive(Clone, PartialEq, Eq)]
pub struct GAction {
    name: String,
    group: Arc<FiniteGroup>,
    set_size: usize,
    act: Vec<usize>,
}

impl fmt::Debug for GAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GAction")
            .field("name", &self.name)
            .field("group", &self.group.name())
            .field("set_size", &self.set_size)
            .finish_non_exhaustive()
    }
}

/// `{ "name", "set_size", "act": [g][xi] }`; the group is supplied separately.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionJson {
    pub name: String,
    pub set_size: usize,
    pub act: Vec<Vec<usize>>,
}

impl GAction {
    /// Validates `act[g][xi]`: the identity fixes every point and
    /// `act(gh, xi) = act(g, act(h, xi))`.
    pub fn new(name: &str, group: Arc<FiniteGroup>, act: Vec<Vec<usize>>) -> Result<Self> {
        let n = group.order();
        if act.len() != n {
            return Err(Error::InvalidAction(format!(
                "expected {n} rows (one per group element), got {}",
                act.len()
            )));
        }
        let m = act[0].len();
        if m == 0
            || act
                .iter()
                .any(|row| row.len() != m || row.iter().any(|&x| x >= m))
        {
            return Err(Error::InvalidAction(
                "rows must be permutations of 0..m".into(),
            ));
        }
        let flat: Vec<usize> = act.into_iter().flatten().collect();
        let at = |g: usize, x: usize| flat[g * m + x];
        let e = group.identity();
        if let Some(x) = (0..m).find(|&x| at(e, x) != x) {
            return Err(Error::InvalidAction(format!("identity moves point {x}")));
        }
        for g in 0..n {
            for h in 0..n {
                let gh = group.mul(g, h);
                if let Some(x) = (0..m).find(|&x| at(gh, x) != at(g, at(h, x))) {
                    return Err(Error::InvalidAction(format!(
                        "act({g}*{h}, {x}) != act({g}, act({h}, {x}))"
                    )));
                }
            }
        }
        Ok(Self {
            name: name.to_string(),
            group,
            set_size: m,
            act: flat,
        })
    }

    pub fn from_json(group: Arc<FiniteGroup>, json: &ActionJson) -> Result<Self> {
        let action = Self::new(&json.name, group, json.act.clone())?;
        if action.set_size != json.set_size {
            return Err(Error::InvalidAction(format!(
                "declared set_size {} but rows have length {}",
                json.set_size, action.set_size
            )));
        }
        Ok(action)
    }

    pub fn to_json(&self) -> ActionJson {
        ActionJson {
            name: self.name.clone(),
            set_size: self.set_size,
            act: self.act.chunks(self.set_size).map(|r| r.to_vec()).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    /// Number of basis elements `|X| |G|`.
    pub fn dimension(&self) -> usize {
        self.set_size * self.group.order()
    }

    #[inline]
    pub fn act(&self, g: usize, xi: usize) -> usize {
        self.act[g * self.set_size + xi]
    }

    pub fn same_as(&self, other: &GAction) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    pub fn orbits(&self) -> Vec<Orbit> {
        orbits(self)
    }
}

/// `act[g][x] = g x g^-1`; the action underlying the quantum double.
pub fn conjugation_action(group: &Arc<FiniteGroup>) -> GAction {
    let n = group.order();
    let act = (0..n)
        .map(|g| (0..n).map(|x| group.conj(g, x)).collect())
        .collect();
    GAction::new(
        &format!("conjugation on {}", group.name()),
        Arc::clone(group),
        act,
    )
    .expect("conjugation is an action")
}

/// Left multiplication of `G` on itself: transitive with trivial stabilizers.
pub fn left_multiplication_action(group: &Arc<FiniteGroup>) -> GAction {
    let n = group.order();
    let act = (0..n)
        .map(|g| (0..n).map(|x| group.mul(g, x)).collect())
        .collect();
    GAction::new(
        &format!("left multiplication on {}", group.name()),
        Arc::clone(group),
        act,
    )
    .expect("left multiplication is an action")
}

/// The defining action of a built-in family on points: `S_n` on `n` points,
/// `D_n` on the `n` vertices of a polygon (`r: v -> v+1`, `s: v -> -v`).
pub fn natural_action(spec: &Builtin) -> Result<GAction> {
    let group = Arc::new(crate::groups::builtin(spec)?);
    let act: Vec<Vec<usize>> = match spec {
        Builtin::Symmetric(n) => permutations(*n),
        Builtin::Dihedral(n) => {
            let n = *n;
            (0..2 * n)
                .map(|x| {
                    let (k, f) = (x % n, x / n);
                    (0..n)
                        .map(|v| if f == 0 { (k + v) % n } else { (k + n - v) % n })
                        .collect()
                })
                .collect()
        }
        other => {
            return Err(Error::UnsupportedParams(format!(
                "{other} has no natural action on points"
            )))
        }
    };
    GAction::new(&format!("{} on points", group.name()), group, act)
}

/// A `G`-orbit with base point, stabilizer and a section `s(xi) xi_A = xi`.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub index: usize,
    /// Sorted ascending; `members[0]` is the base point.
    pub members: Vec<usize>,
    pub base_point: usize,
    pub stabilizer: Subgroup,
    /// `section[k]` maps the base point to `members[k]`; `section[0] = e`.
    pub section: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn position(&self, xi: usize) -> Option<usize> {
        self.position[xi]
    }

    pub fn contains(&self, xi: usize) -> bool {
        self.position[xi].is_some()
    }

    /// `s(xi)` for a member `xi`.
    pub fn section_of(&self, xi: usize) -> Option<usize> {
        self.position[xi].map(|k| self.section[k])
    }
}

/// Orbits sorted by base point (smallest member).
///
/// The section picks, for each point, the left coset representative of the
/// stabilizer mapping the base point there (coset of `N_A` itself gives `e`).
pub fn orbits(action: &GAction) -> Vec<Orbit> {
    let group = action.group();
    let m = action.set_size();
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for base in 0..m {
        if seen[base] {
            continue;
        }
        let stab: Vec<usize> = group
            .elements()
            .filter(|&g| action.act(g, base) == base)
            .collect();
        let stabilizer = Subgroup::new(Arc::clone(group), stab).expect("stabilizer is a subgroup");
        let reps = left_coset_section(&stabilizer);
        let mut pairs: Vec<(usize, usize)> =
            reps.iter().map(|&s| (action.act(s, base), s)).collect();
        pairs.sort_unstable();
        let mut position = vec![None; m];
        for (k, &(xi, _)) in pairs.iter().enumerate() {
            seen[xi] = true;
            position[xi] = Some(k);
        }
        assert_eq!(
            pairs.len() * stabilizer.order(),
            group.order(),
            "orbit-stabilizer violated at base point {base}"
        );
        out.push(Orbit {
            index: out.len(),
            members: pairs.iter().map(|p| p.0).collect(),
            base_point: base,
            stabilizer,
            section: pairs.iter().map(|p| p.1).collect(),
            position,
        });
    }
    out
}

/// An element of `C(X x G)`, stored densely as `coeffs[xi * |G| + g]`.
#[derive(Clone)]
pub struct AlgElement {
    action: Arc<GAction>,
    coeffs: Vec<Complex64>,
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AlgElement")
            .field("action", &self.action.name())
            .field(
                "nonzero",
                &self.coeffs.iter().filter(|c| **c != ZERO).count(),
            )
            .finish()
    }
}

/// `{ "action": name, "coeffs": [[xi, g, re, im], ...] }`, nonzero entries only.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgElementJson {
    pub action: String,
    pub coeffs: Vec<(usize, usize, f64, f64)>,
}

impl AlgElement {
    pub fn zero(action: &Arc<GAction>) -> Self {
        Self {
            action: Arc::clone(action),
            coeffs: vec![ZERO; action.dimension()],
        }
    }

    pub fn from_fn(action: &Arc<GAction>, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let n = action.group().order();
        let coeffs = (0..action.dimension()).map(|i| f(i / n, i % n)).collect();
        Self {
            action: Arc::clone(action),
            coeffs,
        }
    }

    /// `delta_xi (x) delta_g`
    pub fn basis(action: &Arc<GAction>, xi: usize, g: usize) -> Self {
        let mut out = Self::zero(action);
        out.coeffs[xi * action.group().order() + g] = Complex64::new(1.0, 0.0);
        out
    }

    /// `1 = sum_xi delta_xi (x) delta_e`
    pub fn unit(action: &Arc<GAction>) -> Self {
        let e = action.group().identity();
        Self::from_fn(action, |_, g| {
            if g == e {
                Complex64::new(1.0, 0.0)
            } else {
                ZERO
            }
        })
    }

    /// Entries uniform in the unit square of the complex plane.
    pub fn random<R: Rng + ?Sized>(action: &Arc<GAction>, rng: &mut R) -> Self {
        let coeffs = (0..action.dimension())
            .map(|_| random_complex(rng))
            .collect();
        Self {
            action: Arc::clone(action),
            coeffs,
        }
    }

    pub fn action(&self) -> &Arc<GAction> {
        &self.action
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    #[inline]
    pub fn get(&self, xi: usize, g: usize) -> Complex64 {
        self.coeffs[xi * self.action.group().order() + g]
    }

    pub fn set(&mut self, xi: usize, g: usize, value: Complex64) {
        let n = self.action.group().order();
        self.coeffs[xi * n + g] = value;
    }

    /// Nonzero entries as `(xi, g, value)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        let n = self.action.group().order();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != ZERO)
            .map(move |(i, c)| (i / n, i % n, *c))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.action.same_as(&other.action) {
            Ok(())
        } else {
            Err(Error::ActionMismatch)
        }
    }

    /// `(F1 . F2)(xi, y) = sum_z F1(xi, z) F2(z^-1 xi, z^-1 y)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let act = &self.action;
        let g = act.group();
        let n = g.order();
        let mut out = Self::zero(act);
        for xi in 0..act.set_size() {
            for z in 0..n {
                let c = self.coeffs[xi * n + z];
                if c == ZERO {
                    continue;
                }
                let moved = act.act(g.inv(z), xi);
                let row = &other.coeffs[moved * n..(moved + 1) * n];
                for (w, &v) in row.iter().enumerate() {
                    if v != ZERO {
                        out.coeffs[xi * n + g.mul(z, w)] += c * v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `F*(xi, y) = conj F(y^-1 xi, y^-1)`.
    pub fn star(&self) -> Self {
        let act = &self.action;
        let g = act.group();
        Self::from_fn(act, |xi, y| {
            let yi = g.inv(y);
            self.get(act.act(yi, xi), yi).conj()
        })
    }

    /// `||F||_1 = sum_z max_xi |F(xi, z)|`.
    pub fn norm1(&self) -> f64 {
        let n = self.action.group().order();
        (0..n)
            .map(|z| {
                (0..self.action.set_size())
                    .map(|xi| self.coeffs[xi * n + z].norm())
                    .fold(0.0, f64::max)
            })
            .sum()
    }

    /// `<F1, F2> = sum F1(xi, z) conj F2(xi, z)`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        self.check_same(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b.conj())
            .sum())
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            action: Arc::clone(&self.action),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }

    pub fn to_json(&self) -> AlgElementJson {
        AlgElementJson {
            action: self.action.name().to_string(),
            coeffs: self.support().map(|(x, g, c)| (x, g, c.re, c.im)).collect(),
        }
    }

    pub fn from_json(action: &Arc<GAction>, json: &AlgElementJson) -> Result<Self> {
        if json.action != action.name() {
            return Err(Error::ActionMismatch);
        }
        let mut out = Self::zero(action);
        let (m, n) = (action.set_size(), action.group().order());
        for &(x, g, re, im) in &json.coeffs {
            if x >= m || g >= n {
                return Err(Error::InvalidAction(format!(
                    "coefficient index ({x}, {g}) out of range"
                )));
            }
            out.set(x, g, Complex64::new(re, im));
        }
        Ok(out)
    }
}

impl Add for &AlgElement {
    type Output = AlgElement;

    fn add(self, rhs: &AlgElement) -> AlgElement {
        assert!(
            self.action.same_as(&rhs.action),
            "adding elements of different algebras"
        );
        AlgElement {
            action: Arc::clone(&self.action),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &AlgElement {
    type Output = AlgElement;

    fn sub(self, rhs: &AlgElement) -> AlgElement {
        assert!(
            self.action.same_as(&rhs.action),
            "subtracting elements of different algebras"
        );
        AlgElement {
            action: Arc::clone(&self.action),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Checks the based-ring property on every pair of basis elements: each
/// product is zero or a single basis element with coefficient one, and star
/// permutes the basis. Returns the number of pairs that violate it.
pub fn based_ring_violations(action: &Arc<GAction>) -> usize {
    let (m, n) = (action.set_size(), action.group().order());
    let basis: Vec<AlgElement> = (0..m * n)
        .map(|i| AlgElement::basis(action, i / n, i % n))
        .collect();
    let is_basis_or_zero = |f: &AlgElement| {
        let nz: Vec<Complex64> = f.coeffs.iter().copied().filter(|c| *c != ZERO).collect();
        nz.is_empty() || (nz.len() == 1 && nz[0] == Complex64::new(1.0, 0.0))
    };
    let mut bad = 0;
    let mut star_images = vec![false; m * n];
    for a in &basis {
        let s = a.star();
        if !is_basis_or_zero(&s) || s.support().count() != 1 {
            bad += 1;
        } else if let Some((x, g, _)) = s.support().next() {
            star_images[x * n + g] = true;
        }
        for b in &basis {
            if !is_basis_or_zero(&a.multiply(b).expect("same action")) {
                bad += 1;
            }
        }
    }
    bad + star_images.iter().filter(|hit| !**hit).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::builtin;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn conj(name: &str) -> Arc<GAction> {
        let g = Arc::new(builtin(&name.parse().unwrap()).unwrap());
        Arc::new(conjugation_action(&g))
    }

    /// Direct double-sum oracle for the product, written from the formula.
    fn product_oracle(a: &AlgElement, b: &AlgElement) -> AlgElement {
        let act = a.action();
        let g = act.group();
        AlgElement::from_fn(act, |xi, y| {
            g.elements()
                .map(|z| a.get(xi, z) * b.get(act.act(g.inv(z), xi), g.mul(g.inv(z), y)))
                .sum()
        })
    }

    #[test]
    fn conjugation_orbits_match_classes() {
        for name in ["Z4", "S3", "Q8", "D4"] {
            let act = conj(name);
            let orbits = act.orbits();
            let classes = act.group().conjugacy_classes();
            assert_eq!(orbits.len(), classes.len());
            for (o, c) in orbits.iter().zip(&classes) {
                assert_eq!(o.base_point, c.representative);
                assert_eq!(o.members, c.members);
            }
        }
        let sizes: Vec<usize> = conj("S3").orbits().iter().map(|o| o.size()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
    }

    #[test]
    fn section_property() {
        for act in [
            conj("S4"),
            Arc::new(natural_action(&Builtin::Dihedral(5)).unwrap()),
        ] {
            for o in act.orbits() {
                assert_eq!(o.section[0], act.group().identity());
                assert_eq!(o.members[0], o.base_point);
                for (k, &xi) in o.members.iter().enumerate() {
                    assert_eq!(act.act(o.section[k], o.base_point), xi);
                }
                assert_eq!(o.size() * o.stabilizer.order(), act.group().order());
            }
        }
    }

    #[test]
    fn transitive_action_has_one_orbit() {
        let g = Arc::new(builtin(&Builtin::Symmetric(3)).unwrap());
        assert_eq!(left_multiplication_action(&g).orbits().len(), 1);
        assert_eq!(
            natural_action(&Builtin::Symmetric(3))
                .unwrap()
                .orbits()
                .len(),
            1
        );
    }

    #[test]
    fn abelian_conjugation_is_trivial() {
        let act = conj("Z5");
        assert!((0..5).all(|g| (0..5).all(|x| act.act(g, x) == x)));
        assert_eq!(act.orbits().len(), 5);
    }

    #[test]
    fn basis_product_law() {
        let act = conj("S3");
        let g = act.group();
        for eta in 0..6 {
            for a in 0..6 {
                for eta2 in 0..6 {
                    for b in 0..6 {
                        let p = AlgElement::basis(&act, eta, a)
                            .multiply(&AlgElement::basis(&act, eta2, b))
                            .unwrap();
                        let expected = if eta == act.act(a, eta2) {
                            AlgElement::basis(&act, eta, g.mul(a, b))
                        } else {
                            AlgElement::zero(&act)
                        };
                        assert_eq!(p.max_abs_diff(&expected), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn basis_star_law() {
        let act = conj("D4");
        let g = act.group();
        for eta in 0..8 {
            for x in 0..8 {
                let s = AlgElement::basis(&act, eta, x).star();
                let xi = g.inv(x);
                let expected = AlgElement::basis(&act, act.act(xi, eta), xi);
                assert_eq!(s.max_abs_diff(&expected), 0.0);
            }
        }
    }

    #[test]
    fn unit_and_norm() {
        let act = Arc::new(natural_action(&Builtin::Symmetric(3)).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = AlgElement::random(&act, &mut rng);
        let one = AlgElement::unit(&act);
        assert!(one.multiply(&f).unwrap().max_abs_diff(&f) < 1e-15);
        assert!(f.multiply(&one).unwrap().max_abs_diff(&f) < 1e-15);
        assert_eq!(one.star().max_abs_diff(&one), 0.0);
        assert_eq!(AlgElement::zero(&act).norm1(), 0.0);
        assert_eq!(AlgElement::basis(&act, 2, 4).norm1(), 1.0);
    }

    #[test]
    fn basis_is_orthonormal() {
        let act = conj("S3");
        for i in 0..36 {
            for j in 0..36 {
                let a = AlgElement::basis(&act, i / 6, i % 6);
                let b = AlgElement::basis(&act, j / 6, j % 6);
                let ip = a.inner_product(&b).unwrap();
                assert_eq!(ip, Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0));
            }
        }
    }

    #[test]
    fn action_mismatch() {
        let a = AlgElement::unit(&conj("S3"));
        let b = AlgElement::unit(&conj("Z3"));
        assert_eq!(a.multiply(&b).unwrap_err(), Error::ActionMismatch);
        assert_eq!(a.inner_product(&b).unwrap_err(), Error::ActionMismatch);
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let g = Arc::new(builtin(&Builtin::Cyclic(2)).unwrap());
        // identity must fix points
        assert!(GAction::new("bad", Arc::clone(&g), vec![vec![1, 0], vec![1, 0]]).is_err());
        // the generator of Z2 cannot act as a 3-cycle
        assert!(GAction::new("bad", Arc::clone(&g), vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
        assert!(GAction::new("ok", g, vec![vec![0, 1, 2], vec![1, 0, 2]]).is_ok());
    }

    #[test]
    fn based_ring_property_exhaustive() {
        assert_eq!(based_ring_violations(&conj("S3")), 0);
        assert_eq!(
            based_ring_violations(&Arc::new(natural_action(&Builtin::Dihedral(4)).unwrap())),
            0
        );
    }

    #[test]
    fn element_json_round_trip() {
        let act = conj("Q8");
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = AlgElement::random(&act, &mut rng);
        let text = serde_json::to_string(&f.to_json()).unwrap();
        let back = AlgElement::from_json(&act, &serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.max_abs_diff(&f), 0.0);
    }

    fn random_pair_strategy() -> impl Strategy<Value = u64> {
        any::<u64>()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn product_matches_oracle_and_is_associative(seed in random_pair_strategy()) {
            let act = Arc::new(natural_action(&Builtin::Dihedral(4)).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (a, b, c) = (
                AlgElement::random(&act, &mut rng),
                AlgElement::random(&act, &mut rng),
                AlgElement::random(&act, &mut rng),
            );
            let ab = a.multiply(&b).unwrap();
            prop_assert!(ab.max_abs_diff(&product_oracle(&a, &b)) < 1e-12);
            let left = ab.multiply(&c).unwrap();
            let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert!(left.max_abs_diff(&right) < 1e-11);
        }

        #[test]
        fn star_is_antimultiplicative_involution(seed in random_pair_strategy()) {
            let act = conj("S3");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = AlgElement::random(&act, &mut rng);
            let b = AlgElement::random(&act, &mut rng);
            prop_assert_eq!(a.star().star().max_abs_diff(&a), 0.0);
            let lhs = a.multiply(&b).unwrap().star();
            let rhs = b.star().multiply(&a.star()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }

        #[test]
        fn norm_is_submultiplicative(seed in random_pair_strategy()) {
            let act = conj("Q8");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = AlgElement::random(&act, &mut rng);
            let b = AlgElement::random(&act, &mut rng);
            prop_assert!(a.multiply(&b).unwrap().norm1() <= a.norm1() * b.norm1() * (1.0 + 1e-12));
        }

        #[test]
        fn inner_product_adjoint_relation(seed in random_pair_strategy()) {
            let act = Arc::new(natural_action(&Builtin::Symmetric(3)).unwrap());
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = AlgElement::random(&act, &mut rng);
            let f1 = AlgElement::random(&act, &mut rng);
            let f2 = AlgElement::random(&act, &mut rng);
            let lhs = f.multiply(&f1).unwrap().inner_product(&f2).unwrap();
            let rhs = f1.inner_product(&f.star().multiply(&f2).unwrap()).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!(f.inner_product(&f).unwrap().re > 0.0);
        }

        #[test]
        fn multiply_is_bilinear_star_conjugate_linear(seed in random_pair_strategy(), re in -2.0f64..2.0, im in -2.0f64..2.0) {
            let act = conj("S3");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = AlgElement::random(&act, &mut rng);
            let b = AlgElement::random(&act, &mut rng);
            let c = AlgElement::random(&act, &mut rng);
            let s = Complex64::new(re, im);
            let lhs = (&a.scale(s) + &b).multiply(&c).unwrap();
            let rhs = &a.multiply(&c).unwrap().scale(s) + &b.multiply(&c).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
            let star_lhs = a.scale(s).star();
            let star_rhs = a.star().scale(s.conj());
            prop_assert!(star_lhs.max_abs_diff(&star_rhs) < 1e-14);
        }
    }
}
