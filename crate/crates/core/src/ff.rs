//! Finite fields `F_{p^e}` in a power basis over the prime field.
//!
//! A field is identified by `(p, e, modulus)`, where the modulus is the monic
//! irreducible of degree `e` whose lower coefficients are smallest when read as
//! a base-`p` number (constant term least significant). Construction is cached,
//! so two calls with the same `(p, e)` share one descriptor.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::fpoly;

struct FieldInner {
    p: u32,
    e: usize,
    modulus: Vec<u32>,
    /// `(j, p - m_j)` for the nonzero lower coefficients `m_j` of the modulus.
    tail: Vec<(usize, u64)>,
}

/// Descriptor of a finite field. Cheap to clone.
#[derive(Clone)]
pub struct FieldDesc {
    inner: Arc<FieldInner>,
    base: Option<Arc<(FieldDesc, usize)>>,
}

/// Split a prime power `q = p^f` into `(p, f)`.
pub fn prime_power(q: u64) -> Result<(u64, usize)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2u64;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut f = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        f += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, f))
}

fn field_cache() -> &'static Mutex<HashMap<(u32, usize), FieldDesc>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), FieldDesc>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build `F_{p^e}` with the deterministic minimal modulus.
pub fn construct_field(p: u64, e: usize) -> Result<FieldDesc> {
    if !fpoly::is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p >= 1 << 31 {
        return Err(Error::Precondition(format!("prime {p} exceeds 31 bits")));
    }
    if e < 1 {
        return Err(Error::DegreeZero);
    }
    let p = p as u32;
    if let Some(f) = field_cache().lock().unwrap().get(&(p, e)) {
        return Ok(f.clone());
    }
    // computed outside the lock; a racing thread produces the identical value
    let modulus = fpoly::min_irreducible(p, e);
    let tail = modulus[..e]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, (p - c) as u64))
        .collect();
    let desc = FieldDesc {
        inner: Arc::new(FieldInner { p, e, modulus, tail }),
        base: None,
    };
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry((p, e)).or_insert(desc).clone())
}

/// Build the degree-`m` extension of `base`, remembering the tower link.
pub fn extension(base: &FieldDesc, m: usize) -> Result<FieldDesc> {
    if m < 1 {
        return Err(Error::DegreeZero);
    }
    let mut f = construct_field(base.p() as u64, base.e() * m)?;
    f.base = Some(Arc::new((base.clone(), m)));
    Ok(f)
}

impl FieldDesc {
    pub fn p(&self) -> u32 {
        self.inner.p
    }

    /// Degree over the prime field.
    pub fn e(&self) -> usize {
        self.inner.e
    }

    /// Monic modulus, low degree first (length `e + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn base(&self) -> Option<(&FieldDesc, usize)> {
        self.base.as_deref().map(|(b, m)| (b, *m))
    }

    /// Number of elements, if it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        (self.p() as u128).checked_pow(self.e() as u32)
    }

    pub fn is_prime_field(&self) -> bool {
        self.e() == 1
    }

    /// Whether `F_{q}` (with `q` a power of `p`) is a subfield.
    pub fn has_subfield_of_size(&self, q: u64) -> bool {
        match prime_power(q) {
            Ok((p, f)) => p == self.p() as u64 && self.e().is_multiple_of(f),
            Err(_) => false,
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem { field: self.clone(), coords: vec![0; self.e()] }
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    /// Image of an integer under `Z -> F_p -> F`.
    pub fn from_int(&self, v: u64) -> FieldElem {
        let mut z = self.zero();
        z.coords[0] = (v % self.p() as u64) as u32;
        z
    }

    /// The class of `t` in `F_p[t]/(modulus)`.
    pub fn generator(&self) -> FieldElem {
        self.basis_elem(1 % self.e().max(1)).unwrap_or_else(|| self.one())
    }

    /// The power-basis element `t^i`, `i < e`.
    pub fn basis_elem(&self, i: usize) -> Option<FieldElem> {
        if self.e() == 1 {
            // prime field: t reduces to 0 mod t, so the only basis element is 1
            return (i == 0).then(|| self.one());
        }
        (i < self.e()).then(|| {
            let mut z = self.zero();
            z.coords[i] = 1;
            z
        })
    }

    pub fn elem(&self, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() > self.e() {
            return Err(Error::FieldMismatch(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                self.e()
            )));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.p()) {
            return Err(Error::Parse(format!("coordinate {c} not in [0, {})", self.p())));
        }
        let mut v = coords.to_vec();
        v.resize(self.e(), 0);
        Ok(FieldElem { field: self.clone(), coords: v })
    }

    /// Element whose coordinates are the base-`p` digits of `idx`.
    pub fn from_index(&self, mut idx: u128) -> FieldElem {
        let mut z = self.zero();
        for c in z.coords.iter_mut() {
            *c = (idx % self.p() as u128) as u32;
            idx /= self.p() as u128;
        }
        z
    }

    /// All elements in coordinate order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let size = self.size().expect("field too large to enumerate");
        (0..size).map(move |i| self.from_index(i))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        let p = self.p();
        FieldElem {
            field: self.clone(),
            coords: (0..self.e()).map(|_| rng.gen_range(0..p)).collect(),
        }
    }

    pub(crate) fn mul_raw(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let e = self.e();
        let p = self.p() as u64;
        if e == 1 {
            return vec![(a[0] as u64 * b[0] as u64 % p) as u32];
        }
        let mut acc = vec![0u64; 2 * e - 1];
        if p < 1 << 16 {
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let x = x as u64;
                for (slot, &y) in acc[i..i + e].iter_mut().zip(b) {
                    *slot += x * y as u64;
                }
            }
            for k in (e..2 * e - 1).rev() {
                let c = acc[k] % p;
                if c == 0 {
                    continue;
                }
                for &(j, mj) in &self.inner.tail {
                    acc[k - e + j] += c * mj;
                }
            }
        } else {
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p;
                }
            }
            for k in (e..2 * e - 1).rev() {
                let c = acc[k] % p;
                if c == 0 {
                    continue;
                }
                for &(j, mj) in &self.inner.tail {
                    acc[k - e + j] = (acc[k - e + j] + c * mj) % p;
                }
            }
        }
        acc.truncate(e);
        acc.into_iter().map(|v| (v % p) as u32).collect()
    }

    fn same(&self, other: &FieldDesc) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self == other
    }
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.p() == other.p() && self.e() == other.e() && self.modulus() == other.modulus())
    }
}

impl Eq for FieldDesc {}

impl Hash for FieldDesc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.e().hash(state);
    }
}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p(), self.e(), self.modulus())
    }
}

/// An element of a finite field, as power-basis coordinates over `F_p`.
#[derive(Clone)]
pub struct FieldElem {
    field: FieldDesc,
    coords: Vec<u32>,
}

impl FieldElem {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&c| c == 0)
    }

    /// Base-`p` integer of the coordinates (`c_0` least significant).
    pub fn index(&self) -> u128 {
        self.coords
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.field.p() as u128 + c as u128)
    }

    fn check(&self, other: &FieldElem) {
        assert!(
            self.field.same(&other.field),
            "field mismatch: {:?} vs {:?}",
            self.field,
            other.field
        );
    }

    pub fn square(&self) -> FieldElem {
        self * self
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.field.p();
        if self.field.e() == 1 {
            return Ok(self.field.from_int(fpoly::inv_mod(self.coords[0], p) as u64));
        }
        let mut a = self.coords.clone();
        fpoly::trim(&mut a);
        let (g, s) = fpoly::ext_gcd_left(&a, self.field.modulus(), p);
        if g != [1] {
            return Err(Error::InternalInvariantViolation("modulus not irreducible".into()));
        }
        self.field.elem(&s)
    }

    pub fn pow(&self, mut exp: u128) -> FieldElem {
        let mut result = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = &result * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.square();
            }
        }
        result
    }

    pub fn pow_big(&self, exp: &BigUint) -> FieldElem {
        let mut result = self.field.one();
        for i in (0..exp.bits()).rev() {
            result = result.square();
            if exp.bit(i) {
                result = &result * self;
            }
        }
        result
    }

    /// `x^{q^k}`; `q` must be the size of a subfield.
    pub fn frobenius_power(&self, q: u64, k: usize) -> Result<FieldElem> {
        if !self.field.has_subfield_of_size(q) {
            return Err(Error::NotASubfield(format!("F_{q} in {:?}", self.field)));
        }
        let mut x = self.clone();
        // x^{q^k} only depends on k mod e/f
        let (_, f) = prime_power(q)?;
        let period = self.field.e() / f;
        for _ in 0..k % period {
            x = x.pow(q as u128);
        }
        Ok(x)
    }

    /// Multiplicative order, by factoring `|F| - 1` with trial division.
    pub fn multiplicative_order(&self) -> Option<u128> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.size()? - 1;
        let mut order = n;
        let mut rest = n;
        let mut d = 2u128;
        let mut primes = Vec::new();
        while d * d <= rest {
            if rest % d == 0 {
                primes.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += 1;
        }
        if rest > 1 {
            primes.push(rest);
        }
        for ell in primes {
            while order % ell == 0 && self.pow(order / ell).is_one() {
                order /= ell;
            }
        }
        Some(order)
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.field == other.field
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

/// Coordinate order: compare as base-`p` integers.
impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords
            .iter()
            .rev()
            .cmp(other.coords.iter().rev())
            .then_with(|| self.coords.len().cmp(&other.coords.len()))
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        let p = self.field.p();
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(&a, &b)| {
                let s = a + b;
                if s >= p {
                    s - p
                } else {
                    s
                }
            })
            .collect();
        FieldElem { field: self.field.clone(), coords }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        let p = self.field.p();
        let coords = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(&a, &b)| if a >= b { a - b } else { a + p - b })
            .collect();
        FieldElem { field: self.field.clone(), coords }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.check(rhs);
        FieldElem { field: self.field.clone(), coords: self.field.mul_raw(&self.coords, &rhs.coords) }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        let p = self.field.p();
        let coords = self.coords.iter().map(|&a| if a == 0 { 0 } else { p - a }).collect();
        FieldElem { field: self.field.clone(), coords }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

// ---------------------------------------------------------------------------
// Embeddings

/// `(p, source degree, target degree)` to the images of the source power basis.
type EmbedCache = Mutex<HashMap<(u32, usize, usize), Arc<Vec<FieldElem>>>>;

fn embed_cache() -> &'static EmbedCache {
    static CACHE: OnceLock<EmbedCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Powers `beta^0, ..., beta^{e-1}` of the chosen root of the source modulus
/// inside the target field.
fn embedding_powers(src: &FieldDesc, target: &FieldDesc) -> Result<Arc<Vec<FieldElem>>> {
    let key = (src.p(), src.e(), target.e());
    if let Some(v) = embed_cache().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let beta = embedding_root(src, target)?;
    let mut powers = Vec::with_capacity(src.e());
    let mut cur = target.one();
    for _ in 0..src.e() {
        powers.push(cur.clone());
        cur = &cur * &beta;
    }
    let powers = Arc::new(powers);
    embed_cache().lock().unwrap().insert(key, powers.clone());
    Ok(powers)
}

/// The minimal (coordinate order) root of `src.modulus()` in `target`.
pub fn embedding_root(src: &FieldDesc, target: &FieldDesc) -> Result<FieldElem> {
    check_subfield(src, target)?;
    if src.e() == 1 {
        // modulus t: the root is 0, but the embedding is fixed by 1 -> 1
        return Ok(target.zero());
    }
    let g = crate::poly::DensePoly::new(
        target,
        src.modulus().iter().map(|&c| target.from_int(c as u64)).collect(),
    );
    let seed = (src.e() as u64) << 32 ^ target.e() as u64 ^ (src.p() as u64) << 48;
    let root = g.find_root(seed)?;
    // the other roots are the p-power conjugates
    let mut best = root.clone();
    let mut cur = root;
    for _ in 1..src.e() {
        cur = cur.pow(src.p() as u128);
        if cur < best {
            best = cur.clone();
        }
    }
    Ok(best)
}

fn check_subfield(src: &FieldDesc, target: &FieldDesc) -> Result<()> {
    if src.p() != target.p() || !target.e().is_multiple_of(src.e()) {
        return Err(Error::NotASubfield(format!("{src:?} is not a subfield of {target:?}")));
    }
    Ok(())
}

/// Embed `x` into an extension of its field.
pub fn embed(x: &FieldElem, target: &FieldDesc) -> Result<FieldElem> {
    if x.field.same(target) {
        return Ok(x.clone());
    }
    check_subfield(&x.field, target)?;
    if x.field.e() == 1 {
        return Ok(target.from_int(x.coords[0] as u64));
    }
    let powers = embedding_powers(&x.field, target)?;
    let mut out = target.zero();
    let p = target.p();
    for (&c, bp) in x.coords.iter().zip(powers.iter()) {
        if c == 0 {
            continue;
        }
        for (o, &b) in out.coords.iter_mut().zip(&bp.coords) {
            *o = ((*o as u64 + c as u64 * b as u64) % p as u64) as u32;
        }
    }
    Ok(out)
}

/// Operations accepted by [`elem_arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
    Pow,
}

/// Second operand of [`elem_arithmetic`].
#[derive(Debug, Clone)]
pub enum Operand {
    Elem(FieldElem),
    Int(u128),
    None,
}

/// Checked arithmetic with implicit embedding of a subfield operand.
pub fn elem_arithmetic(op: ArithOp, x: &FieldElem, y: &Operand) -> Result<FieldElem> {
    let lift = |a: &FieldElem, b: &FieldElem| -> Result<(FieldElem, FieldElem)> {
        if a.field.same(&b.field) {
            Ok((a.clone(), b.clone()))
        } else if b.field.e().is_multiple_of(a.field.e()) && a.field.p() == b.field.p() {
            Ok((embed(a, &b.field)?, b.clone()))
        } else if a.field.e().is_multiple_of(b.field.e()) && a.field.p() == b.field.p() {
            Ok((a.clone(), embed(b, &a.field)?))
        } else {
            Err(Error::FieldMismatch(format!("{:?} vs {:?}", a.field, b.field)))
        }
    };
    match (op, y) {
        (ArithOp::Add, Operand::Elem(y)) => lift(x, y).map(|(a, b)| &a + &b),
        (ArithOp::Mul, Operand::Elem(y)) => lift(x, y).map(|(a, b)| &a * &b),
        (ArithOp::Neg, _) => Ok(-x),
        (ArithOp::Inv, _) => x.inv(),
        (ArithOp::Pow, Operand::Int(k)) => Ok(x.pow(*k)),
        _ => Err(Error::Precondition(format!("bad operand for {op:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FieldDesc {
        construct_field(2, 2).unwrap()
    }

    #[test]
    fn construct_small_fields() {
        assert_eq!(construct_field(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(construct_field(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(construct_field(4, 1).unwrap_err(), Error::NonPrime(4));
        assert_eq!(construct_field(2, 0).unwrap_err(), Error::DegreeZero);
    }

    #[test]
    fn construction_is_cached_and_pure() {
        let a = construct_field(3, 5).unwrap();
        let b = construct_field(3, 5).unwrap();
        assert!(Arc::ptr_eq(&a.inner, &b.inner));
    }

    #[test]
    fn omega_squared() {
        let w = f4().generator();
        assert_eq!((&w * &w).coords(), &[1, 1]);
        assert_eq!(w.frobenius_power(2, 1).unwrap().coords(), &[1, 1]);
        assert_eq!(w.frobenius_power(2, 2).unwrap(), w);
    }

    #[test]
    fn f8_generator_has_order_seven() {
        let a = construct_field(2, 3).unwrap().generator();
        assert!(a.pow(7).is_one());
        assert_eq!(a.multiplicative_order(), Some(7));
        assert!(f4().one().inv().unwrap().is_one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(f4().zero().inv().unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn inverse_roundtrip_exhaustive_f27() {
        let f = construct_field(3, 3).unwrap();
        for x in f.elements().skip(1) {
            assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn frobenius_rejects_non_subfield() {
        let w = f4().generator();
        assert!(matches!(w.frobenius_power(8, 1), Err(Error::NotASubfield(_))));
        assert!(matches!(w.frobenius_power(3, 1), Err(Error::NotASubfield(_))));
    }

    #[test]
    fn embed_prime_and_zero() {
        let f2 = construct_field(2, 1).unwrap();
        let f16 = construct_field(2, 4).unwrap();
        assert!(embed(&f2.one(), &f4()).unwrap().is_one());
        assert!(embed(&f4().zero(), &f16).unwrap().is_zero());
        let f8 = construct_field(2, 3).unwrap();
        assert!(matches!(embed(&f4().one(), &f8), Err(Error::NotASubfield(_))));
    }

    #[test]
    fn elem_arithmetic_embeds_subfield_operand() {
        let f16 = construct_field(2, 4).unwrap();
        let w = f4().generator();
        let x = f16.generator();
        let s = elem_arithmetic(ArithOp::Add, &w, &Operand::Elem(x.clone())).unwrap();
        assert_eq!(s, &embed(&w, &f16).unwrap() + &x);
        let f8 = construct_field(2, 3).unwrap();
        assert!(matches!(
            elem_arithmetic(ArithOp::Mul, &w, &Operand::Elem(f8.one())),
            Err(Error::FieldMismatch(_))
        ));
        assert!(matches!(
            elem_arithmetic(ArithOp::Inv, &f4().zero(), &Operand::None),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(2).unwrap(), (2, 1));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
    }
}
