//! Torsion-product and level-structure identities, checked exactly over
//! finite-field specializations.
//!
//! Every check here compares two conventional polynomials coefficient by
//! coefficient: an expansion of `psi_a` on one side and a product over
//! enumerated torsion points on the other.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::drinfeld::{characteristic_prime_to, make_module, psi_of, torsion, torsion_seeded, twist};
use crate::drinfeld::{DrinfeldModule, TorsionModule};
use crate::error::{Error, Result};
use crate::ff::{construct_field, prime_power, FieldDesc, FieldElem};
use crate::moore::moore_det;
use crate::poly::{min_irreducible, operator_field, DensePoly, OperatorPoly};
use crate::skew::{eval_same_field, skew_to_poly};

/// `prod (X - x)` over `roots`, by a balanced product tree.
fn product_of_linears(roots: &[FieldElem], field: &FieldDesc) -> DensePoly {
    match roots.len() {
        0 => DensePoly::one(field),
        1 => DensePoly::new(field, vec![-&roots[0], field.one()]),
        n => {
            let (a, b) = roots.split_at(n / 2);
            product_of_linears(a, field).mul(&product_of_linears(b, field))
        }
    }
}

/// `c * X * prod_{w} (1 - X / w)` over the nonzero `w` in `points`.
///
/// `prod (1 - X/w) = prod(-1/w) * prod (X - w)`, so only one inversion is
/// needed.
pub fn divisor_product(c: &FieldElem, points: &[FieldElem]) -> Result<DensePoly> {
    let field = c.field();
    let nonzero: Vec<FieldElem> = points.iter().filter(|w| !w.is_zero()).cloned().collect();
    let mut norm = field.one();
    for w in &nonzero {
        norm = &norm * &-w;
    }
    let scale = c * &norm.inv()?;
    let prod = product_of_linears(&nonzero, field);
    Ok(prod.mul(&DensePoly::monomial(scale, 1)))
}

fn t_times(n: &OperatorPoly) -> OperatorPoly {
    OperatorPoly::var(n.field()).mul(n)
}

fn require_prime_to_tn(psi: &DrinfeldModule, n: &OperatorPoly) -> Result<OperatorPoly> {
    let tn = t_times(n);
    if !characteristic_prime_to(psi, &tn)? {
        return Err(Error::BadCharacteristic(format!("theta * n(theta) = 0 for n = {n}")));
    }
    Ok(tn)
}

/// `psi_a` as a conventional polynomial over `field`.
fn expanded(psi: &DrinfeldModule, a: &OperatorPoly, field: &FieldDesc) -> Result<DensePoly> {
    skew_to_poly(&psi_of(psi, a)?.lift_to(field)?)
}

/// Outcome of [`verify_torsion_product`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCheck {
    pub holds: bool,
    pub points: usize,
    pub ext_degree: usize,
}

/// `psi_{tn}(X) = tn(theta) X prod_{w in psi[tn], w != 0} (1 - X/w)`.
pub fn verify_torsion_product(psi: &DrinfeldModule, n: &OperatorPoly) -> Result<ProductCheck> {
    let tn = require_prime_to_tn(psi, n)?;
    let tors = torsion(psi, &tn, None)?;
    let ambient = tors.ambient();
    let lhs = expanded(psi, &tn, ambient)?;
    let c = crate::ff::embed(&psi.eval_operator(&tn)?, ambient)?;
    let rhs = divisor_product(&c, tors.points())?;
    Ok(ProductCheck { holds: lhs == rhs, points: tors.points().len(), ext_degree: tors.ext_degree() })
}

/// A basis `(w_i)` of `psi[tn]` with `v_i = psi_n(w_i)` a basis of `psi[t]`,
/// and the induced map `mu` from the free model `(A/tnA)^r` onto `psi[tn]`.
#[derive(Clone)]
pub struct LevelStructure {
    module: DrinfeldModule,
    n: OperatorPoly,
    tn: OperatorPoly,
    torsion: TorsionModule,
    v: Vec<FieldElem>,
}

impl std::fmt::Debug for LevelStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "level {} structure, w = {:?}, v = {:?}", self.tn, self.torsion.basis(), self.v)
    }
}

pub fn level_structure(psi: &DrinfeldModule, n: &OperatorPoly, seed: u64) -> Result<LevelStructure> {
    let tn = require_prime_to_tn(psi, n)?;
    let tors = torsion_seeded(psi, &tn, None, seed)?;
    let v: Vec<FieldElem> = tors.basis().iter().map(|w| tors.act(n, w)).collect();
    let level = LevelStructure { module: psi.clone(), n: n.clone(), tn, torsion: tors, v };
    level.check_v_basis()?;
    Ok(level)
}

impl LevelStructure {
    pub fn module(&self) -> &DrinfeldModule {
        &self.module
    }

    pub fn n(&self) -> &OperatorPoly {
        &self.n
    }

    pub fn torsion(&self) -> &TorsionModule {
        &self.torsion
    }

    pub fn w(&self) -> &[FieldElem] {
        self.torsion.basis()
    }

    pub fn v(&self) -> &[FieldElem] {
        &self.v
    }

    fn check_v_basis(&self) -> Result<()> {
        for v in &self.v {
            if !self.torsion.apply_t(v).is_zero() {
                return Err(Error::InternalInvariantViolation("psi_n(w_i) is not t-torsion".into()));
            }
        }
        if moore_det(&self.v, self.module.q())?.is_zero() {
            return Err(Error::InternalInvariantViolation("psi_n(w_i) are dependent".into()));
        }
        Ok(())
    }

    /// `mu(b) = sum_i psi_{b_i}(w_i)`.
    pub fn mu(&self, b: &[OperatorPoly]) -> Result<FieldElem> {
        self.torsion.combine(b)
    }

    /// All elements of the model `(A/tnA)^r`, in base-`q^{deg tn}` order.
    pub fn model(&self) -> Vec<Vec<OperatorPoly>> {
        let fq = self.module.operator_field();
        let d = self.tn.deg0();
        let per = (self.module.q() as u128).pow(d as u32);
        let r = self.module.rank();
        let total = per.pow(r as u32);
        (0..total)
            .map(|idx| {
                let mut rest = idx;
                (0..r)
                    .map(|_| {
                        let c = rest % per;
                        rest /= per;
                        DensePoly::from_index(&fq, c, d)
                    })
                    .collect()
            })
            .collect()
    }

    /// The sub-model `n (A/tnA)^r`, whose image is `psi[t]`.
    pub fn t_model(&self) -> Vec<Vec<OperatorPoly>> {
        let fq = self.module.operator_field();
        let q = self.module.q() as u128;
        let r = self.module.rank();
        (0..q.pow(r as u32))
            .map(|idx| {
                let mut rest = idx;
                (0..r)
                    .map(|_| {
                        let c = fq.from_index(rest % q);
                        rest /= q;
                        self.n.scale(&c)
                    })
                    .collect()
            })
            .collect()
    }

    /// `mu` on every model element.
    pub fn mu_image(&self) -> Result<Vec<FieldElem>> {
        self.model().iter().map(|b| self.mu(b)).collect()
    }

    /// `mu` is a bijection from the model onto `psi[tn]`.
    pub fn is_bijective(&self) -> Result<bool> {
        let mut img = self.mu_image()?;
        img.sort();
        Ok(img == self.torsion.points())
    }

    /// `mu(t b) = psi_t(mu(b))` and `mu(c b) = c mu(b)` for `c` in `F_q`, for
    /// every model element `b`.
    pub fn is_a_linear(&self) -> Result<bool> {
        let fq = self.module.operator_field();
        let t = OperatorPoly::var(&fq);
        let gen = OperatorPoly::constant(fq.generator());
        for b in self.model() {
            let x = self.mu(&b)?;
            let tb: Vec<OperatorPoly> = b.iter().map(|bi| t.mul(bi)).collect();
            if self.mu(&tb)? != self.torsion.apply_t(&x) {
                return Ok(false);
            }
            let cb: Vec<OperatorPoly> = b.iter().map(|bi| gen.mul(bi)).collect();
            if self.mu(&cb)? != &self.torsion.scalar(&fq.generator()) * &x {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `psi_{tn}(X) = tn(theta) X prod_{w in W'} (1 - X / mu(w))`.
    pub fn divisor_equality(&self) -> Result<bool> {
        let ambient = self.torsion.ambient();
        let lhs = expanded(&self.module, &self.tn, ambient)?;
        let c = crate::ff::embed(&self.module.eval_operator(&self.tn)?, ambient)?;
        Ok(lhs == divisor_product(&c, &self.mu_image()?)?)
    }
}

/// Result of [`normalize`].
#[derive(Debug, Clone)]
pub struct Normalized {
    /// `mu(v_1)^{-1} psi mu(v_1)`, over the ambient field of the level.
    pub module: DrinfeldModule,
    /// The image of `v_1` under the rescaled `mu`; always `1`.
    pub v1_image: FieldElem,
    /// `psi'_t(X) = theta X prod_{v in V'} (1 - mu(v_1) X / mu(v))`.
    pub t_formula: bool,
    /// `psi'_{tn}(X) = tn(theta) X prod_{w in W'} (1 - mu(v_1) X / mu(w))`.
    pub tn_formula: bool,
    /// The rescaled points are torsion of `psi'`.
    pub points_scale: bool,
}

impl Normalized {
    pub fn holds(&self) -> bool {
        self.v1_image.is_one() && self.t_formula && self.tn_formula && self.points_scale
    }
}

/// Twist by `mu(v_1)` so that the rescaled level structure sends `v_1` to 1.
pub fn normalize(psi: &DrinfeldModule, level: &LevelStructure) -> Result<Normalized> {
    let tors = level.torsion();
    let ambient = tors.ambient();
    let c = level.v[0].clone();
    let c_inv = c.inv()?;
    let psi2 = twist(psi, &c)?;
    let rescale = |pts: Vec<FieldElem>| -> Vec<FieldElem> { pts.iter().map(|x| x * &c_inv).collect() };
    let v_points = rescale(level.t_model().iter().map(|b| level.mu(b)).collect::<Result<_>>()?);
    let w_points = rescale(level.mu_image()?);

    let t = OperatorPoly::var(&psi.operator_field());
    let theta = crate::ff::embed(&psi.theta(), ambient)?;
    let t_formula = expanded(&psi2, &t, ambient)? == divisor_product(&theta, &v_points)?;
    let tn_value = crate::ff::embed(&psi.eval_operator(&level.tn)?, ambient)?;
    let tn_formula = expanded(&psi2, &level.tn, ambient)? == divisor_product(&tn_value, &w_points)?;

    let psi2_t = psi2.t_image().lift_to(ambient)?;
    let psi2_tn = psi_of(&psi2, &level.tn)?.lift_to(ambient)?;
    let points_scale = v_points.iter().all(|x| eval_same_field(&psi2_t, x).is_zero())
        && w_points.iter().all(|x| eval_same_field(&psi2_tn, x).is_zero());

    Ok(Normalized {
        module: psi2,
        v1_image: &level.v[0] * &c_inv,
        t_formula,
        tn_formula,
        points_scale,
    })
}

/// `v_1^{q^r - 1} = theta prod_{v in psi[t], v != 0} v_1 / v` for a module
/// with `a_r = 1`, at one nonzero `v_1` chosen from `seed`.
pub fn leading_identity(psi: &DrinfeldModule, seed: u64) -> Result<bool> {
    let (tors, nonzero) = leading_setup(psi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let v1 = &nonzero[rng.gen_range(0..nonzero.len())];
    Ok(leading_holds(psi, &tors, v1, &nonzero))
}

/// [`leading_identity`] for every nonzero choice of `v_1`.
pub fn leading_identity_all(psi: &DrinfeldModule) -> Result<bool> {
    let (tors, nonzero) = leading_setup(psi)?;
    Ok(nonzero.iter().all(|v1| leading_holds(psi, &tors, v1, &nonzero)))
}

fn leading_setup(psi: &DrinfeldModule) -> Result<(TorsionModule, Vec<FieldElem>)> {
    if !psi.a(psi.rank()).is_one() {
        return Err(Error::Precondition("leading identity needs a_r = 1".into()));
    }
    let t = OperatorPoly::var(&psi.operator_field());
    if !characteristic_prime_to(psi, &t)? {
        return Err(Error::BadCharacteristic("theta = 0".into()));
    }
    let tors = torsion(psi, &t, None)?;
    let nonzero = tors.points().iter().filter(|x| !x.is_zero()).cloned().collect();
    Ok((tors, nonzero))
}

fn leading_holds(psi: &DrinfeldModule, tors: &TorsionModule, v1: &FieldElem, nonzero: &[FieldElem]) -> bool {
    let ambient = tors.ambient();
    let qr = (psi.q() as u128).pow(psi.rank() as u32);
    let lhs = v1.pow(qr - 1);
    let mut rhs = crate::ff::embed(&psi.theta(), ambient).expect("ambient extends base");
    for v in nonzero {
        rhs = &rhs * &(v1 * &v.inv().expect("nonzero"));
    }
    lhs == rhs
}

// ---------------------------------------------------------------------------
// Verification suites

/// One grid case in a suite report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteCase {
    pub q: u64,
    pub r: usize,
    pub n: String,
    pub seed: u64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// `{"suite": ..., "cases": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<SuiteCase>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.pass).count()
    }
}

/// Levels of the standard grid: `1, t+1, t^2` and the minimal irreducible
/// quadratic.
pub fn grid_levels(q: u64) -> Result<Vec<OperatorPoly>> {
    let fq = operator_field(q)?;
    Ok(vec![
        DensePoly::from_ints(&fq, &[1]),
        DensePoly::from_ints(&fq, &[1, 1]),
        DensePoly::from_ints(&fq, &[0, 0, 1]),
        min_irreducible(q, 2)?,
    ])
}

/// A random rank-`r` module over the smallest `F_{q^m}` that has some `theta`
/// with `theta n(theta) != 0`. With `abhyankar_form` the top coefficient is 1,
/// otherwise it is a random unit.
pub fn grid_module(q: u64, r: usize, n: &OperatorPoly, seed: u64, abhyankar_form: bool) -> Result<DrinfeldModule> {
    let (p, f) = prime_power(q)?;
    let tn = t_times(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in 1.. {
        let field = construct_field(p, f * m)?;
        let probe = |theta: &FieldElem| -> Result<bool> {
            let psi = make_module(&field, q, 1, &[theta.clone(), field.one()])?;
            characteristic_prime_to(&psi, &tn)
        };
        let size = field.size().ok_or_else(|| Error::CapExceeded("field too large".into()))?;
        let good: Vec<FieldElem> =
            (0..size).map(|i| field.from_index(i)).filter(|x| probe(x).unwrap_or(false)).collect();
        if good.is_empty() {
            continue;
        }
        let theta = good[rng.gen_range(0..good.len())].clone();
        let mut image = vec![theta];
        for _ in 1..r {
            image.push(field.random(&mut rng));
        }
        let top = if abhyankar_form {
            field.one()
        } else {
            loop {
                let x = field.random(&mut rng);
                if !x.is_zero() {
                    break x;
                }
            }
        };
        image.push(top);
        return make_module(&field, q, r, &image);
    }
    unreachable!("some extension has a good theta")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::abhyankar;

    fn f2() -> FieldDesc {
        construct_field(2, 1).unwrap()
    }

    fn op(q: u64, c: &[u64]) -> OperatorPoly {
        DensePoly::from_ints(&operator_field(q).unwrap(), c)
    }

    fn carlitz() -> DrinfeldModule {
        make_module(&f2(), 2, 1, &[f2().one(), f2().one()]).unwrap()
    }

    #[test]
    fn product_formula_examples() {
        let c = verify_torsion_product(&carlitz(), &op(2, &[0, 1])).unwrap();
        assert!(c.holds);
        assert_eq!(c.points, 4);
        assert!(verify_torsion_product(&carlitz(), &op(2, &[1])).unwrap().holds);
        let psi = abhyankar(&f2(), 2, &f2().one(), &[f2().one()]).unwrap();
        assert!(verify_torsion_product(&psi, &op(2, &[1])).unwrap().holds);
    }

    #[test]
    fn level_structure_carlitz() {
        let level = level_structure(&carlitz(), &op(2, &[0, 1]), 0).unwrap();
        let f4 = construct_field(2, 2).unwrap();
        assert!(level.v()[0].is_one());
        // w + w^2 = 1 has the two roots w, w + 1 in F_4
        let w = &level.w()[0];
        assert_eq!(w.field(), &f4);
        assert!((w + &w.square()).is_one());
        assert!(level.is_bijective().unwrap());
        assert!(level.is_a_linear().unwrap());
        assert!(level.divisor_equality().unwrap());

        let trivial = level_structure(&carlitz(), &op(2, &[1]), 0).unwrap();
        assert_eq!(trivial.w(), trivial.v());

        let bad = make_module(&f2(), 2, 1, &[f2().zero(), f2().one()]).unwrap();
        assert!(matches!(level_structure(&bad, &op(2, &[0, 1]), 0), Err(Error::BadCharacteristic(_))));
    }

    #[test]
    fn normalization_example() {
        let psi = abhyankar(&f2(), 2, &f2().one(), &[f2().one()]).unwrap();
        let level = level_structure(&psi, &op(2, &[1]), 0).unwrap();
        let norm = normalize(&psi, &level).unwrap();
        assert!(norm.holds());
        let c = &level.v()[0];
        assert_eq!(norm.module.a(1), c.clone());
        assert_eq!(norm.module.a(2), c.pow(3));

        let unit = normalize(&carlitz(), &level_structure(&carlitz(), &op(2, &[1]), 0).unwrap()).unwrap();
        assert_eq!(unit.module, carlitz());
    }

    #[test]
    fn leading_identity_examples() {
        let psi = abhyankar(&f2(), 2, &f2().one(), &[f2().one()]).unwrap();
        assert!(leading_identity_all(&psi).unwrap());
        let f4 = construct_field(2, 2).unwrap();
        let c = make_module(&f4, 2, 1, &[f4.generator(), f4.one()]).unwrap();
        assert!(leading_identity_all(&c).unwrap());
        let not_one = make_module(&f4, 2, 1, &[f4.one(), f4.generator()]).unwrap();
        assert!(matches!(leading_identity(&not_one, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn grid_module_picks_smallest_field() {
        let psi = grid_module(2, 2, &op(2, &[1, 1]), 0, true).unwrap();
        assert_eq!(psi.m(), 2);
        let psi = grid_module(3, 1, &op(3, &[1, 1]), 0, false).unwrap();
        assert_eq!(psi.m(), 1);
    }

    #[test]
    fn divisor_product_small() {
        // X * prod_{w in F_4^*} (1 - X/w) = X + X^4
        let f4 = construct_field(2, 2).unwrap();
        let pts: Vec<FieldElem> = f4.elements().collect();
        let got = divisor_product(&f4.one(), &pts).unwrap();
        assert_eq!(got, DensePoly::from_ints(&f4, &[0, 1, 0, 0, 1]));
    }
}
