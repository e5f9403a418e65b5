//! Drinfeld `F_q[t]`-modules over finite fields.
//!
//! A module over `F_{q^m}` is fixed by the image of `t`,
//! `psi_t = theta X + a_1 X^q + ... + a_r X^{q^r}` with `a_r != 0`.
//! Torsion is found by linear algebra over `F_p` in a growing tower of
//! extensions of the base field.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{construct_field, embed, extension, prime_power, FieldDesc, FieldElem};
use crate::linalg::FpMatrix;
use crate::poly::{operator_field, OperatorPoly};
use crate::skew::{eval_same_field, skew_add, skew_mul, AdditivePoly};

/// Ceiling on the extension degree searched by [`torsion`].
pub const TORSION_DEGREE_CEILING: usize = 10_000;
/// Largest torsion module that is enumerated point by point.
pub const MAX_TORSION_POINTS: u128 = 1 << 22;
/// Random candidate tuples tried by [`module_basis`] before the greedy scan.
pub const BASIS_RETRIES: usize = 64;

#[derive(Clone, PartialEq, Eq)]
pub struct DrinfeldModule {
    field: FieldDesc,
    q: u64,
    r: usize,
    t_image: AdditivePoly,
    /// Image of the power-basis generator of `F_q` in `field`. Scalars of
    /// `A` always pass through this element, so base changes stay coherent.
    scalar_gen: FieldElem,
}

impl std::fmt::Debug for DrinfeldModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "psi_t = {} over {:?}", self.t_image.display(), self.field)
    }
}

/// Validate and build a module from `(theta, a_1, ..., a_r)`.
pub fn make_module(field: &FieldDesc, q: u64, r: usize, t_image: &[FieldElem]) -> Result<DrinfeldModule> {
    if r == 0 || t_image.len() != r + 1 {
        return Err(Error::RankMismatch { expected: r, actual: t_image.len().saturating_sub(1) });
    }
    if t_image[r].is_zero() {
        return Err(Error::TopCoefficientZero);
    }
    let fq = operator_field(q)?;
    let image = AdditivePoly::new(field, q, t_image.to_vec())?;
    let scalar_gen = embed(&fq.generator(), field)?;
    Ok(DrinfeldModule { field: field.clone(), q, r, t_image: image, scalar_gen })
}

/// The module `theta X + a_1 X^q + ... + a_{r-1} X^{q^{r-1}} + X^{q^r}`.
pub fn abhyankar(field: &FieldDesc, q: u64, theta: &FieldElem, a: &[FieldElem]) -> Result<DrinfeldModule> {
    let mut image = vec![theta.clone()];
    image.extend_from_slice(a);
    image.push(field.one());
    make_module(field, q, a.len() + 1, &image)
}

impl DrinfeldModule {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// Degree of the base field over `F_q`.
    pub fn m(&self) -> usize {
        let f = prime_power(self.q).map(|(_, f)| f).unwrap_or(1);
        self.field.e() / f
    }

    pub fn t_image(&self) -> &AdditivePoly {
        &self.t_image
    }

    pub fn theta(&self) -> FieldElem {
        self.t_image.coeff(0)
    }

    /// `a_i` for `1 <= i <= r`.
    pub fn a(&self, i: usize) -> FieldElem {
        self.t_image.coeff(i)
    }

    pub fn operator_field(&self) -> FieldDesc {
        operator_field(self.q).expect("validated at construction")
    }

    /// Image of an element of `F_q` in the base field.
    pub fn scalar(&self, c: &FieldElem) -> Result<FieldElem> {
        if c.field() != &self.operator_field() {
            return Err(Error::FieldMismatch(format!("{:?} is not F_{}", c.field(), self.q)));
        }
        Ok(scalar_image(c, &self.scalar_gen))
    }

    pub(crate) fn scalar_gen(&self) -> &FieldElem {
        &self.scalar_gen
    }

    /// `a(theta)`, the image of `a` in the base field.
    pub fn eval_operator(&self, a: &OperatorPoly) -> Result<FieldElem> {
        let theta = self.theta();
        let mut acc = self.field.zero();
        for c in a.coeffs().iter().rev() {
            acc = &(&acc * &theta) + &self.scalar(c)?;
        }
        Ok(acc)
    }

    /// The same module over an extension of the base field.
    pub fn base_change(&self, target: &FieldDesc) -> Result<DrinfeldModule> {
        if target == &self.field {
            return Ok(self.clone());
        }
        Ok(DrinfeldModule {
            field: target.clone(),
            q: self.q,
            r: self.r,
            t_image: self.t_image.lift_to(target)?,
            scalar_gen: embed(&self.scalar_gen, target)?,
        })
    }

    pub fn to_record(&self) -> ModuleRecord {
        ModuleRecord {
            q: self.q,
            m: self.m(),
            r: self.r,
            t_image: (0..=self.r).map(|i| self.t_image.coeff(i).coords().to_vec()).collect(),
        }
    }

    pub fn from_record(rec: &ModuleRecord) -> Result<Self> {
        let (p, f) = prime_power(rec.q)?;
        let field = construct_field(p, f * rec.m)?;
        let image = rec.t_image.iter().map(|c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        make_module(&field, rec.q, rec.r, &image)
    }
}

fn scalar_image(c: &FieldElem, gen: &FieldElem) -> FieldElem {
    let field = gen.field();
    let mut acc = field.zero();
    let mut power = field.one();
    for (l, &coord) in c.coords().iter().enumerate() {
        if l > 0 {
            power = &power * gen;
        }
        if coord != 0 {
            acc = &acc + &(&power * &field.from_int(coord as u64));
        }
    }
    acc
}

/// Serialized module: `{"q", "m", "r", "t_image": [[coords], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleRecord {
    pub q: u64,
    pub m: usize,
    pub r: usize,
    pub t_image: Vec<Vec<u32>>,
}

/// `psi_a`, by Horner's rule in `psi_t`.
pub fn psi_of(psi: &DrinfeldModule, a: &OperatorPoly) -> Result<AdditivePoly> {
    let mut acc = AdditivePoly::zero(&psi.field, psi.q)?;
    for c in a.coeffs().iter().rev() {
        acc = skew_mul(&acc, &psi.t_image)?;
        acc = skew_add(&acc, &AdditivePoly::constant(&psi.scalar(c)?, psi.q)?)?;
    }
    Ok(acc)
}

/// Whether `a(theta) != 0`.
pub fn characteristic_prime_to(psi: &DrinfeldModule, a: &OperatorPoly) -> Result<bool> {
    Ok(!psi.eval_operator(a)?.is_zero())
}

/// `c^{-1} psi c`: `a_i -> c^{q^i - 1} a_i`. If `c` lies in an extension, the
/// module is base-changed first.
pub fn twist(psi: &DrinfeldModule, c: &FieldElem) -> Result<DrinfeldModule> {
    if c.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let (psi, c) = if c.field() == psi.field() {
        (psi.clone(), c.clone())
    } else if c.field().e().is_multiple_of(psi.field().e()) {
        (psi.base_change(c.field())?, c.clone())
    } else {
        (psi.clone(), embed(c, psi.field())?)
    };
    let c_inv = c.inv()?;
    let mut image = vec![psi.theta()];
    let mut c_pow = c.clone();
    for i in 1..=psi.r {
        c_pow = c_pow.pow(psi.q as u128);
        image.push(&(&c_pow * &c_inv) * &psi.a(i));
    }
    Ok(DrinfeldModule {
        t_image: AdditivePoly::new(&psi.field, psi.q, image)?,
        ..psi
    })
}

/// `J_i = a_i^{(q^r-1)/d_i} / a_r^{(q^i-1)/d_i}` with `d_i = gcd(q^i-1, q^r-1)`.
/// Empty for rank 1.
pub fn j_invariants(psi: &DrinfeldModule) -> Result<Vec<FieldElem>> {
    let q = psi.q as u128;
    let r = psi.r as u32;
    let overflow = || Error::OverflowGuard { degree: u128::MAX, cap: u128::MAX };
    let qr = q.checked_pow(r).ok_or_else(overflow)? - 1;
    let ar_inv = psi.a(psi.r).inv()?;
    (1..psi.r)
        .map(|i| {
            let qi = q.checked_pow(i as u32).ok_or_else(overflow)? - 1;
            let d = gcd(qi, qr);
            Ok(&psi.a(i).pow(qr / d) * &ar_inv.pow(qi / d))
        })
        .collect()
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The rank-one determinant module `rho_t = theta X - (-1)^r a_r X^q`.
pub fn det_module(psi: &DrinfeldModule) -> DrinfeldModule {
    let top = if psi.r.is_multiple_of(2) { -&psi.a(psi.r) } else { psi.a(psi.r) };
    DrinfeldModule {
        t_image: AdditivePoly::new(&psi.field, psi.q, vec![psi.theta(), top])
            .expect("same field and twist"),
        r: 1,
        ..psi.clone()
    }
}

// ---------------------------------------------------------------------------
// Torsion

/// The `n`-torsion `psi[n]`, enumerated in an extension that contains it,
/// together with a free `A/nA`-basis.
#[derive(Clone)]
pub struct TorsionModule {
    module: DrinfeldModule,
    n: OperatorPoly,
    ambient: FieldDesc,
    ext_degree: usize,
    /// `psi_t` with coefficients in the ambient field.
    t_lifted: AdditivePoly,
    /// `F_p`-basis `g^l` of the image of `F_q` in the ambient field.
    zetas: Vec<FieldElem>,
    points: Vec<FieldElem>,
    basis: Vec<FieldElem>,
    /// `zeta_l * psi_{t^j}(w_i)` ordered by `(i, j, l)`.
    span: Vec<FieldElem>,
    span_matrix: FpMatrix,
}

impl std::fmt::Debug for TorsionModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "psi[{}]: {} points over {:?}, basis {:?}",
            self.n,
            self.points.len(),
            self.ambient,
            self.basis
        )
    }
}

/// Compute `psi[n]`.
///
/// Searches `m' = 1, 2, ...` for the first extension `F_{q^{m m'}}` in which
/// `psi_n` has a kernel of `F_q`-dimension `r deg n`. `cap` bounds `m'`; the
/// default is the order of `GL_r(A/nA)`, clipped to [`TORSION_DEGREE_CEILING`].
pub fn torsion(psi: &DrinfeldModule, n: &OperatorPoly, cap: Option<usize>) -> Result<TorsionModule> {
    torsion_seeded(psi, n, cap, 0)
}

pub fn torsion_seeded(psi: &DrinfeldModule, n: &OperatorPoly, cap: Option<usize>, seed: u64) -> Result<TorsionModule> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !n.is_monic() {
        return Err(Error::Precondition("torsion level must be monic".into()));
    }
    if !characteristic_prime_to(psi, n)? {
        return Err(Error::BadCharacteristic(format!("n = {n} vanishes at theta")));
    }
    let (_, f) = prime_power(psi.q)?;
    let target_dim = f * psi.r * n.deg0();
    let p = psi.field.p();
    let point_count = (p as u128).checked_pow(target_dim as u32).filter(|&c| c <= MAX_TORSION_POINTS);
    let Some(point_count) = point_count else {
        return Err(Error::CapExceeded(format!("psi[{n}] has p^{target_dim} points")));
    };
    let cap = cap.unwrap_or_else(|| {
        crate::groups::gl_order(psi.q, psi.r, n)
            .ok()
            .and_then(|o| usize::try_from(o).ok())
            .unwrap_or(TORSION_DEGREE_CEILING)
    });
    let cap = cap.clamp(1, TORSION_DEGREE_CEILING);
    let psi_n = psi_of(psi, n)?;
    for ext in 1..=cap {
        let ambient = if ext == 1 { psi.field.clone() } else { extension(&psi.field, ext)? };
        let lifted = psi_n.lift_to(&ambient)?;
        let columns: Vec<Vec<u32>> = (0..ambient.e())
            .map(|i| {
                let x = ambient.basis_elem(i).expect("i < e");
                eval_same_field(&lifted, &x).coords().to_vec()
            })
            .collect();
        let kernel = FpMatrix::from_columns(p, ambient.e(), &columns).kernel();
        if kernel.len() < target_dim {
            continue;
        }
        if kernel.len() > target_dim {
            return Err(Error::InternalInvariantViolation(format!(
                "psi[{n}] has F_p-dimension {} > {target_dim}",
                kernel.len()
            )));
        }
        let kernel: Vec<FieldElem> = kernel.iter().map(|v| ambient.elem(v)).collect::<Result<_>>()?;
        let points = enumerate_span(&ambient, &kernel, point_count);
        let lifted_module = psi.base_change(&ambient)?;
        let zetas = {
            let gen = lifted_module.scalar_gen().clone();
            let mut z = vec![ambient.one()];
            for _ in 1..f {
                let next = z.last().unwrap() * &gen;
                z.push(next);
            }
            z
        };
        let mut t = TorsionModule {
            module: psi.clone(),
            n: n.clone(),
            t_lifted: lifted_module.t_image.clone(),
            ambient,
            ext_degree: ext,
            zetas,
            points,
            basis: Vec::new(),
            span: Vec::new(),
            span_matrix: FpMatrix::zeros(p, 0, 0),
        };
        let basis = module_basis(&t, seed)?;
        t.install_basis(basis)?;
        return Ok(t);
    }
    Err(Error::CapExceeded(format!("psi[{n}] not split within extension degree {cap}")))
}

/// All `F_p`-combinations of `gens`, sorted in coordinate order.
fn enumerate_span(field: &FieldDesc, gens: &[FieldElem], count: u128) -> Vec<FieldElem> {
    let p = field.p() as u128;
    let mut points = Vec::with_capacity(count as usize);
    for idx in 0..count {
        let mut x = field.zero();
        let mut rest = idx;
        for g in gens {
            let c = (rest % p) as u64;
            rest /= p;
            if c != 0 {
                x = &x + &(g * &field.from_int(c));
            }
        }
        points.push(x);
    }
    points.sort();
    points
}

/// Tunables for [`module_basis_with`].
#[derive(Debug, Clone, Copy)]
pub struct BasisSearch {
    pub retries: usize,
    pub greedy_fallback: bool,
}

impl Default for BasisSearch {
    fn default() -> Self {
        BasisSearch { retries: BASIS_RETRIES, greedy_fallback: true }
    }
}

/// A free `A/nA`-basis of the torsion, chosen deterministically from `seed`.
pub fn module_basis(t: &TorsionModule, seed: u64) -> Result<Vec<FieldElem>> {
    module_basis_with(t, seed, BasisSearch::default())
}

pub fn module_basis_with(t: &TorsionModule, seed: u64, cfg: BasisSearch) -> Result<Vec<FieldElem>> {
    let r = t.module.r;
    let step = t.zetas.len() * t.n.deg0();
    if step == 0 {
        return Ok(vec![t.ambient.zero(); r]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cfg.retries {
        let cand: Vec<FieldElem> =
            (0..r).map(|_| t.points[rng.gen_range(0..t.points.len())].clone()).collect();
        if t.span_rank(&cand) == r * step {
            return Ok(cand);
        }
    }
    if !cfg.greedy_fallback {
        return Err(Error::BasisSearchExhausted(cfg.retries));
    }
    // A free submodule of (A/nA)^r is a direct summand, so the greedy scan
    // always extends a partial basis.
    let mut chosen: Vec<FieldElem> = Vec::new();
    for w in &t.points {
        if chosen.len() == r {
            break;
        }
        chosen.push(w.clone());
        if t.span_rank(&chosen) != chosen.len() * step {
            chosen.pop();
        }
    }
    if chosen.len() == r {
        Ok(chosen)
    } else {
        Err(Error::InternalInvariantViolation(format!(
            "greedy scan found only {} of {r} free generators",
            chosen.len()
        )))
    }
}

impl TorsionModule {
    pub fn module(&self) -> &DrinfeldModule {
        &self.module
    }

    pub fn n(&self) -> &OperatorPoly {
        &self.n
    }

    pub fn ambient(&self) -> &FieldDesc {
        &self.ambient
    }

    /// The `m'` with `psi[n]` inside `F_{q^{m m'}}`, minimal.
    pub fn ext_degree(&self) -> usize {
        self.ext_degree
    }

    pub fn points(&self) -> &[FieldElem] {
        &self.points
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    /// `psi_t` over the ambient field.
    pub fn t_action(&self) -> &AdditivePoly {
        &self.t_lifted
    }

    /// `psi_t(x)` in the ambient field.
    pub fn apply_t(&self, x: &FieldElem) -> FieldElem {
        eval_same_field(&self.t_lifted, x)
    }

    /// Image of an element of `F_q` in the ambient field.
    pub fn scalar(&self, c: &FieldElem) -> FieldElem {
        let mut acc = self.ambient.zero();
        for (z, &coord) in self.zetas.iter().zip(c.coords()) {
            if coord != 0 {
                acc = &acc + &(z * &self.ambient.from_int(coord as u64));
            }
        }
        acc
    }

    /// `psi_a(x)` for a point `x` of the ambient field.
    pub fn act(&self, a: &OperatorPoly, x: &FieldElem) -> FieldElem {
        let mut acc = self.ambient.zero();
        let mut y = x.clone();
        for (j, c) in a.coeffs().iter().enumerate() {
            if j > 0 {
                y = self.apply_t(&y);
            }
            if !c.is_zero() {
                acc = &acc + &(&self.scalar(c) * &y);
            }
        }
        acc
    }

    fn spanning_vectors(&self, tuple: &[FieldElem]) -> Vec<FieldElem> {
        let mut out = Vec::new();
        for w in tuple {
            let mut y = w.clone();
            for j in 0..self.n.deg0() {
                if j > 0 {
                    y = self.apply_t(&y);
                }
                for z in &self.zetas {
                    out.push(z * &y);
                }
            }
        }
        out
    }

    /// `F_p`-rank of `{zeta_l psi_{t^j}(w_i)}`; equals `f r deg n` exactly for
    /// a free basis.
    pub fn span_rank(&self, tuple: &[FieldElem]) -> usize {
        let cols: Vec<Vec<u32>> =
            self.spanning_vectors(tuple).iter().map(|v| v.coords().to_vec()).collect();
        FpMatrix::from_columns(self.ambient.p(), self.ambient.e(), &cols).rank()
    }

    fn install_basis(&mut self, basis: Vec<FieldElem>) -> Result<()> {
        let step = self.zetas.len() * self.n.deg0();
        if basis.len() != self.module.r || self.span_rank(&basis) != self.module.r * step {
            return Err(Error::DependentBasis);
        }
        self.span = self.spanning_vectors(&basis);
        let cols: Vec<Vec<u32>> = self.span.iter().map(|v| v.coords().to_vec()).collect();
        self.span_matrix = FpMatrix::from_columns(self.ambient.p(), self.ambient.e(), &cols);
        self.basis = basis;
        Ok(())
    }

    /// The same torsion with a caller-supplied basis; errors with
    /// `DependentBasis` if it is not free.
    pub fn with_basis(&self, basis: &[FieldElem]) -> Result<TorsionModule> {
        if let Some(w) = basis.iter().find(|w| w.field() != &self.ambient) {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", w.field(), self.ambient)));
        }
        let mut t = self.clone();
        t.install_basis(basis.to_vec())?;
        Ok(t)
    }

    /// The same torsion with a basis drawn from another seed.
    pub fn reseeded(&self, seed: u64) -> Result<TorsionModule> {
        let basis = module_basis(self, seed)?;
        self.with_basis(&basis)
    }

    /// `sum_i psi_{b_i}(w_i)`; each `b_i` is read modulo `n`.
    pub fn combine(&self, b: &[OperatorPoly]) -> Result<FieldElem> {
        if b.len() != self.module.r {
            return Err(Error::RankMismatch { expected: self.module.r, actual: b.len() });
        }
        let mut acc = self.ambient.zero();
        for (bi, w) in b.iter().zip(&self.basis) {
            let bi = bi.rem(&self.n)?;
            acc = &acc + &self.act(&bi, w);
        }
        Ok(acc)
    }

    /// The unique `(b_1, ..., b_r)`, `deg b_i < deg n`, with
    /// `x = sum psi_{b_i}(w_i)`.
    pub fn coordinates(&self, x: &FieldElem) -> Result<Vec<OperatorPoly>> {
        if x.field() != &self.ambient {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", x.field(), self.ambient)));
        }
        let fq = self.module.operator_field();
        let d = self.n.deg0();
        if d == 0 {
            return if x.is_zero() {
                Ok(vec![OperatorPoly::zero(&fq); self.module.r])
            } else {
                Err(Error::NotTorsion)
            };
        }
        let sol = self.span_matrix.solve(x.coords()).ok_or(Error::NotTorsion)?;
        let f = self.zetas.len();
        Ok((0..self.module.r)
            .map(|i| {
                let coeffs = (0..d)
                    .map(|j| {
                        let start = (i * d + j) * f;
                        fq.elem(&sol[start..start + f]).expect("coordinates in range")
                    })
                    .collect();
                OperatorPoly::new(&fq, coeffs)
            })
            .collect())
    }

    pub fn is_point(&self, x: &FieldElem) -> bool {
        self.points.binary_search(x).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::DensePoly;

    fn f2() -> FieldDesc {
        construct_field(2, 1).unwrap()
    }

    fn t(q: u64) -> OperatorPoly {
        OperatorPoly::var(&operator_field(q).unwrap())
    }

    fn example() -> DrinfeldModule {
        abhyankar(&f2(), 2, &f2().one(), &[f2().one()]).unwrap()
    }

    #[test]
    fn abhyankar_example_t_image() {
        let psi = example();
        assert_eq!(psi.t_image().coeffs(), &[f2().one(), f2().one(), f2().one()]);
        assert_eq!(psi.rank(), 2);
        let bad = make_module(&f2(), 2, 2, &[f2().one(), f2().one(), f2().zero()]);
        assert_eq!(bad.unwrap_err(), Error::TopCoefficientZero);
        let short = make_module(&f2(), 2, 2, &[f2().one(), f2().one()]);
        assert!(matches!(short, Err(Error::RankMismatch { .. })));
    }

    #[test]
    fn psi_of_small_operators() {
        let psi = example();
        let fq = operator_field(2).unwrap();
        assert_eq!(psi_of(&psi, &OperatorPoly::one(&fq)).unwrap(), AdditivePoly::identity(&f2(), 2).unwrap());
        let t1 = DensePoly::from_ints(&fq, &[1, 1]);
        let expect = skew_add(psi.t_image(), &AdditivePoly::identity(&f2(), 2).unwrap()).unwrap();
        assert_eq!(psi_of(&psi, &t1).unwrap(), expect);
    }

    #[test]
    fn carlitz_t_squared_over_f4() {
        let f4 = construct_field(2, 2).unwrap();
        let w = f4.generator();
        let c = make_module(&f4, 2, 1, &[w.clone(), f4.one()]).unwrap();
        let t2 = DensePoly::from_ints(&operator_field(2).unwrap(), &[0, 0, 1]);
        let got = psi_of(&c, &t2).unwrap();
        assert_eq!(got.coeffs(), &[w.square(), &w.square() + &w, f4.one()]);
    }

    #[test]
    fn characteristic_examples() {
        let fq = operator_field(2).unwrap();
        let carlitz0 = make_module(&f2(), 2, 1, &[f2().zero(), f2().one()]).unwrap();
        assert!(characteristic_prime_to(&example(), &t(2)).unwrap());
        assert!(!characteristic_prime_to(&carlitz0, &t(2)).unwrap());
        let f4 = construct_field(2, 2).unwrap();
        let m = make_module(&f4, 2, 1, &[f4.generator(), f4.one()]).unwrap();
        let n = DensePoly::from_ints(&fq, &[1, 1, 1]);
        assert!(!characteristic_prime_to(&m, &n).unwrap());
    }

    #[test]
    fn torsion_examples() {
        let carlitz = make_module(&f2(), 2, 1, &[f2().one(), f2().one()]).unwrap();
        let tt = torsion(&carlitz, &t(2), None).unwrap();
        assert_eq!(tt.ext_degree(), 1);
        assert_eq!(tt.points(), &[f2().zero(), f2().one()]);
        assert_eq!(tt.basis(), &[f2().one()]);

        let tt = torsion(&example(), &t(2), None).unwrap();
        assert_eq!(tt.ext_degree(), 3);
        let f8 = construct_field(2, 3).unwrap();
        let a = f8.generator();
        let mut expect = [f8.zero(), a.clone(), a.square(), a.pow(4)];
        expect.sort();
        assert_eq!(tt.points(), &expect[..]);
        assert!(tt.with_basis(&[a.clone(), a.square()]).is_ok());
        assert_eq!(tt.with_basis(&[a.clone(), f8.zero()]).unwrap_err(), Error::DependentBasis);

        let t2 = DensePoly::from_ints(&operator_field(2).unwrap(), &[0, 0, 1]);
        let tt = torsion(&carlitz, &t2, None).unwrap();
        assert_eq!(tt.ext_degree(), 2);
        let f4 = construct_field(2, 2).unwrap();
        assert_eq!(tt.points(), &f4.elements().collect::<Vec<_>>()[..]);
    }

    #[test]
    fn torsion_rejects_bad_characteristic() {
        let carlitz0 = make_module(&f2(), 2, 1, &[f2().zero(), f2().one()]).unwrap();
        assert!(matches!(torsion(&carlitz0, &t(2), None), Err(Error::BadCharacteristic(_))));
    }

    #[test]
    fn coordinates_roundtrip() {
        let fq = operator_field(3).unwrap();
        let f3 = construct_field(3, 1).unwrap();
        let psi = abhyankar(&f3, 3, &f3.one(), &[f3.from_int(2)]).unwrap();
        let n = DensePoly::from_ints(&fq, &[0, 1, 1]);
        let tt = torsion(&psi, &n, None).unwrap();
        assert_eq!(tt.points().len(), 81);
        for x in tt.points() {
            let b = tt.coordinates(x).unwrap();
            assert_eq!(&tt.combine(&b).unwrap(), x);
        }
    }

    #[test]
    fn twist_and_invariants() {
        let f8 = construct_field(2, 3).unwrap();
        let a = f8.generator();
        let psi = abhyankar(&f8, 2, &f8.one(), std::slice::from_ref(&a)).unwrap();
        let c = &a + &f8.one();
        let tw = twist(&psi, &c).unwrap();
        assert_eq!(tw.a(1), &c * &a);
        assert_eq!(tw.a(2), c.pow(3));
        let back = twist(&tw, &c.inv().unwrap()).unwrap();
        assert_eq!(back, psi);
        assert_eq!(twist(&psi, &f8.one()).unwrap(), psi);
        assert_eq!(twist(&psi, &f8.zero()).unwrap_err(), Error::ZeroTwist);
        assert_eq!(j_invariants(&tw).unwrap(), j_invariants(&psi).unwrap());
        assert_eq!(j_invariants(&example()).unwrap(), vec![f2().one()]);
        let a0 = abhyankar(&f2(), 2, &f2().one(), &[f2().zero()]).unwrap();
        assert!(j_invariants(&a0).unwrap()[0].is_zero());
        let carlitz = make_module(&f2(), 2, 1, &[f2().one(), f2().one()]).unwrap();
        assert!(j_invariants(&carlitz).unwrap().is_empty());
    }

    #[test]
    fn determinant_module_signs() {
        let f3 = construct_field(3, 1).unwrap();
        let psi = abhyankar(&f3, 3, &f3.one(), &[f3.one()]).unwrap();
        assert_eq!(det_module(&psi).t_image().coeffs(), &[f3.one(), f3.from_int(2)]);
        let psi3 = abhyankar(&f3, 3, &f3.one(), &[f3.one(), f3.one()]).unwrap();
        assert_eq!(det_module(&psi3).t_image().coeffs(), &[f3.one(), f3.one()]);
        assert_eq!(det_module(&example()).t_image().coeffs(), &[f2().one(), f2().one()]);
    }

    #[test]
    fn record_roundtrip() {
        let f4 = construct_field(2, 2).unwrap();
        let psi = abhyankar(&f4, 2, &f4.generator(), &[f4.one()]).unwrap();
        let rec = psi.to_record();
        assert_eq!(rec.m, 2);
        assert_eq!(DrinfeldModule::from_record(&rec).unwrap(), psi);
    }
}
