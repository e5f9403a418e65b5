//! Dense univariate polynomials over a finite field.
//!
//! The same type serves two roles: conventional polynomials in `X` over some
//! `F_{q^m}` (e.g. the expansion of an additive polynomial), and elements of
//! the operator ring `A = F_q[t]`, for which [`OperatorPoly`] is an alias.
//! Residues in `A/nA` are just remainders of degree `< deg n`.

use std::cmp::Ordering;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ff::{construct_field, embed, prime_power, FieldDesc, FieldElem};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    field: FieldDesc,
    coeffs: Vec<FieldElem>,
}

/// An element of `A = F_q[t]`.
pub type OperatorPoly = DensePoly;

impl DensePoly {
    pub fn new(field: &FieldDesc, coeffs: Vec<FieldElem>) -> Self {
        let mut p = DensePoly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    /// Build from small integers, each read as a field index (see
    /// [`FieldDesc::from_index`]).
    pub fn from_ints(field: &FieldDesc, coeffs: &[u64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_index(c as u128)).collect())
    }

    pub fn zero(field: &FieldDesc) -> Self {
        DensePoly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &FieldDesc) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElem) -> Self {
        let field = c.field().clone();
        Self::new(&field, vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: FieldElem, k: usize) -> Self {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(&field, coeffs)
    }

    /// The variable (`t` or `X` depending on role).
    pub fn var(field: &FieldDesc) -> Self {
        Self::monomial(field.one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial counted as degree 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn lead(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other).expect("polynomial field mismatch");
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other).expect("polynomial field mismatch");
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other).expect("polynomial field mismatch");
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        Self::new(&self.field, karatsuba(&self.coeffs, &other.coeffs, &self.field))
    }

    /// Quotient and remainder with `deg rem < deg g`.
    pub fn divmod(&self, g: &Self) -> Result<(Self, Self)> {
        self.check(g)?;
        let Some(dg) = g.degree() else {
            return Err(Error::DivisionByZero);
        };
        if self.coeffs.len() <= dg {
            return Ok((Self::zero(&self.field), self.clone()));
        }
        let lead_inv = g.coeffs[dg].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len() - dg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dg] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, gj) in g.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * gj);
            }
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(&self.field, quot), Self::new(&self.field, rem)))
    }

    /// Canonical representative modulo `n`.
    pub fn rem(&self, n: &Self) -> Result<Self> {
        Ok(self.divmod(n)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, u)` with `s*self + u*other = g`, `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut u0, mut u1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            let u2 = u0.sub(&q.mul(&u1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        match r0.lead().cloned() {
            None => (r0, s0, u0),
            Some(l) => {
                let li = l.inv().expect("nonzero");
                (r0.scale(&li), s0.scale(&li), u0.scale(&li))
            }
        }
    }

    /// Evaluate at `x`, which may live in an extension of the coefficient field.
    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        let target = x.field();
        let mut acc = target.zero();
        for c in self.coeffs.iter().rev() {
            let c = embed(c, target)?;
            acc = &(&acc * x) + &c;
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.from_int(i as u64))
            .collect();
        Self::new(&self.field, coeffs)
    }

    pub fn mulmod(&self, other: &Self, m: &Self) -> Self {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut result = Self::one(&self.field).rem(m).expect("nonzero modulus");
        let mut b = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                result = result.mulmod(&b, m);
            }
            e >>= 1;
            if e > 0 {
                b = b.mulmod(&b, m);
            }
        }
        result
    }

    /// `self^{|F|^k} mod m`, by `k * e` successive `p`-th powers.
    fn frobenius_mod(&self, k: usize, m: &Self) -> Self {
        let p = self.field.p() as u128;
        let mut h = self.rem(m).expect("nonzero modulus");
        for _ in 0..k * self.field.e() {
            h = h.powmod(p, m);
        }
        h
    }

    /// Base-`|F|` index of the coefficient sequence, constant term least
    /// significant. Only meaningful for small fields and degrees.
    pub fn index(&self) -> u128 {
        let q = self.field.size().expect("small field");
        self.coeffs.iter().rev().fold(0u128, |acc, c| acc * q + c.index())
    }

    pub fn from_index(field: &FieldDesc, mut idx: u128, len: usize) -> Self {
        let q = field.size().expect("small field");
        let coeffs = (0..len)
            .map(|_| {
                let c = field.from_index(idx % q);
                idx /= q;
                c
            })
            .collect();
        Self::new(field, coeffs)
    }

    /// Render with the given variable name, e.g. `t^2+t+1`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.index().to_string();
            let t = match (i, c.is_one()) {
                (0, _) => cs,
                (1, true) => var.to_string(),
                (1, false) => format!("{cs}{var}"),
                (_, true) => format!("{var}^{i}"),
                (_, false) => format!("{cs}{var}^{i}"),
            };
            terms.push(t);
        }
        terms.join("+")
    }

    // -----------------------------------------------------------------------
    // Factorization

    /// Squarefree decomposition of a monic polynomial: `(g_i, i)` with
    /// `self = prod g_i^i`, each `g_i` squarefree.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let f = &self.field;
        let mut out = Vec::new();
        if self.deg0() == 0 {
            return out;
        }
        let d = self.derivative();
        let mut c = self.gcd(&d);
        let mut w = self.divmod(&c).expect("nonzero").0;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.divmod(&y).expect("nonzero").0;
            if !z.is_one() {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.divmod(&w).expect("nonzero").0;
        }
        if !c.is_one() {
            // c is a p-th power: take p-th roots of coefficients
            let p = f.p() as usize;
            let coeffs = (0..=c.deg0() / p)
                .map(|k| {
                    let mut x = c.coeff(k * p);
                    for _ in 1..f.e() {
                        x = x.pow(p as u128);
                    }
                    x
                })
                .collect();
            let root = Self::new(f, coeffs);
            for (g, m) in root.squarefree_decomposition() {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self) -> Vec<(Self, usize)> {
        let f = &self.field;
        let x = Self::var(f);
        let mut g = self.clone();
        let mut h = x.clone();
        let mut out = Vec::new();
        let mut i = 1;
        while g.deg0() >= 2 * i {
            h = h.frobenius_mod(1, &g);
            let d = g.gcd(&h.sub(&x));
            if !d.is_one() {
                g = g.divmod(&d).expect("nonzero").0;
                h = h.rem(&g).expect("nonzero");
                out.push((d, i));
            }
            i += 1;
        }
        if g.deg0() > 0 {
            let deg = g.deg0();
            out.push((g, deg));
        }
        out
    }

    /// Split a monic squarefree product of irreducibles of degree `d`.
    pub fn equal_degree<R: Rng>(&self, d: usize, rng: &mut R) -> Vec<Self> {
        let n = self.deg0();
        if n == d {
            return vec![self.clone()];
        }
        let f = &self.field;
        let p = f.p();
        loop {
            let a = Self::new(f, (0..n).map(|_| f.random(rng)).collect());
            if a.deg0() == 0 {
                continue;
            }
            let k = f.e() * d;
            let b = if p == 2 {
                // absolute trace to F_2
                let mut t = a.rem(self).expect("nonzero");
                let mut acc = t.clone();
                for _ in 1..k {
                    t = t.mulmod(&t, self);
                    acc = acc.add(&t);
                }
                acc
            } else {
                // a^{(p^k - 1)/2} = prod_j (a^{(p-1)/2})^{p^j}
                let mut u = a.powmod(((p - 1) / 2) as u128, self);
                let mut acc = u.clone();
                for _ in 1..k {
                    u = u.powmod(p as u128, self);
                    acc = acc.mulmod(&u, self);
                }
                acc.sub(&Self::one(f))
            };
            let g = self.gcd(&b);
            let dg = g.deg0();
            if dg > 0 && dg < n {
                let other = self.divmod(&g).expect("nonzero").0;
                let mut out = g.equal_degree(d, rng);
                out.extend(other.equal_degree(d, rng));
                return out;
            }
        }
    }

    fn seed_from_coeffs(&self, salt: u64) -> u64 {
        // FNV-1a over the coordinates
        let mut h: u64 = 0xcbf29ce484222325 ^ salt;
        for c in &self.coeffs {
            for &x in c.coords() {
                h ^= x as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
            h ^= 0xff;
            h = h.wrapping_mul(0x100000001b3);
        }
        h
    }

    /// Full factorization of a monic polynomial into monic irreducibles,
    /// sorted by degree then coefficient order. Deterministic.
    pub fn factor(&self) -> Result<Vec<(Self, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !self.is_monic() {
            return Err(Error::Precondition("factorization input must be monic".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed_from_coeffs(0));
        let mut out: Vec<(Self, usize)> = Vec::new();
        for (g, mult) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree(d, &mut rng) {
                    out.push((irr, mult));
                }
            }
        }
        out.sort_by(|a, b| poly_order(&a.0, &b.0));
        // merge equal factors (possible when p-th powers are split off)
        let mut merged: Vec<(Self, usize)> = Vec::new();
        for (g, m) in out {
            match merged.last_mut() {
                Some((h, k)) if *h == g => *k += m,
                _ => merged.push((g, m)),
            }
        }
        Ok(merged)
    }

    pub fn is_irreducible(&self) -> bool {
        let n = self.deg0();
        if n == 0 {
            return false;
        }
        let f = self.monic();
        let x = Self::var(&self.field);
        let mut h = x.clone();
        for _ in 0..n / 2 {
            h = h.frobenius_mod(1, &f);
            if !f.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }

    /// All roots in the coefficient field, in coordinate order.
    pub fn roots(&self) -> Vec<FieldElem> {
        if self.deg0() == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let x = Self::var(&self.field);
        let split = f.gcd(&x.frobenius_mod(1, &f).sub(&x));
        if split.deg0() == 0 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed_from_coeffs(1));
        let mut roots: Vec<FieldElem> = split
            .equal_degree(1, &mut rng)
            .into_iter()
            .map(|lin| -&lin.coeff(0))
            .collect();
        roots.sort();
        roots
    }

    /// Some root of a polynomial known to have one in its coefficient field.
    pub(crate) fn find_root(&self, seed: u64) -> Result<FieldElem> {
        let f = self.monic();
        let x = Self::var(&self.field);
        let split = f.gcd(&x.frobenius_mod(1, &f).sub(&x));
        if split.deg0() == 0 {
            return Err(Error::NotASubfield("no root of the subfield modulus".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lin = split.equal_degree(1, &mut rng).into_iter().min_by(poly_order).expect("root");
        Ok(-&lin.coeff(0))
    }
}

const KARATSUBA_CUTOFF: usize = 24;

fn schoolbook(a: &[FieldElem], b: &[FieldElem], field: &FieldDesc) -> Vec<FieldElem> {
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

/// Product of two nonempty coefficient slices.
fn karatsuba(a: &[FieldElem], b: &[FieldElem], field: &FieldDesc) -> Vec<FieldElem> {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return schoolbook(a, b, field);
    }
    let half = a.len().max(b.len()) / 2;
    let split = |v: &[FieldElem]| -> (Vec<FieldElem>, Vec<FieldElem>) {
        if v.len() <= half {
            (v.to_vec(), vec![field.zero()])
        } else {
            (v[..half].to_vec(), v[half..].to_vec())
        }
    };
    let (a0, a1) = split(a);
    let (b0, b1) = split(b);
    let add = |x: &[FieldElem], y: &[FieldElem]| -> Vec<FieldElem> {
        (0..x.len().max(y.len()))
            .map(|i| match (x.get(i), y.get(i)) {
                (Some(u), Some(v)) => u + v,
                (Some(u), None) | (None, Some(u)) => u.clone(),
                (None, None) => unreachable!(),
            })
            .collect()
    };
    let low = karatsuba(&a0, &b0, field);
    let high = karatsuba(&a1, &b1, field);
    let mid = karatsuba(&add(&a0, &a1), &add(&b0, &b1), field);
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, c) in low.iter().enumerate() {
        out[i] = &out[i] + c;
        out[i + half] = &out[i + half] - c;
    }
    for (i, c) in high.iter().enumerate() {
        if i + 2 * half < out.len() {
            out[i + 2 * half] = &out[i + 2 * half] + c;
        }
        if i + half < out.len() {
            out[i + half] = &out[i + half] - c;
        }
    }
    for (i, c) in mid.iter().enumerate() {
        if i + half < out.len() {
            out[i + half] = &out[i + half] + c;
        }
    }
    out
}

/// Degree first, then coefficients from the top down (coordinate order).
pub fn poly_order(a: &DensePoly, b: &DensePoly) -> Ordering {
    a.coeffs
        .len()
        .cmp(&b.coeffs.len())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("t"))
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("t"))
    }
}

/// `F_q` for a prime power `q`.
pub fn operator_field(q: u64) -> Result<FieldDesc> {
    let (p, f) = prime_power(q)?;
    construct_field(p, f)
}

/// Factor a monic `n` in `F_q[t]`.
pub fn factor_operator(n: &OperatorPoly) -> Result<Vec<(OperatorPoly, usize)>> {
    n.factor()
}

/// The minimal monic irreducible of degree `d` over `F_q`, in the same order
/// used for field moduli.
pub fn min_irreducible(q: u64, d: usize) -> Result<OperatorPoly> {
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    let fq = operator_field(q)?;
    let mut idx: u128 = 0;
    loop {
        let mut g = DensePoly::from_index(&fq, idx, d).coeffs;
        g.resize(d, fq.zero());
        g.push(fq.one());
        let cand = DensePoly::new(&fq, g);
        if cand.is_irreducible() {
            return Ok(cand);
        }
        idx += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldDesc {
        operator_field(2).unwrap()
    }

    fn p(field: &FieldDesc, c: &[u64]) -> DensePoly {
        DensePoly::from_ints(field, c)
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f9 = operator_field(9).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (la, lb) in [(30, 30), (100, 37), (25, 130), (64, 65)] {
            let a: Vec<FieldElem> = (0..la).map(|_| f9.random(&mut rng)).collect();
            let b: Vec<FieldElem> = (0..lb).map(|_| f9.random(&mut rng)).collect();
            assert_eq!(karatsuba(&a, &b, &f9), schoolbook(&a, &b, &f9));
        }
    }

    #[test]
    fn gcd_mod_eval() {
        let f = f2();
        assert_eq!(p(&f, &[0, 1, 1]).gcd(&p(&f, &[0, 1])), p(&f, &[0, 1]));
        assert_eq!(p(&f, &[0, 0, 1]).rem(&p(&f, &[1, 1, 1])).unwrap(), p(&f, &[1, 1]));
        assert!(p(&f, &[1, 1, 0, 1]).eval(&f.one()).unwrap().is_one());
    }

    #[test]
    fn divmod_by_zero() {
        let f = f2();
        assert_eq!(p(&f, &[1, 1]).divmod(&DensePoly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn factor_examples() {
        let f = f2();
        assert_eq!(
            factor_operator(&p(&f, &[0, 1, 1])).unwrap(),
            vec![(p(&f, &[0, 1]), 1), (p(&f, &[1, 1]), 1)]
        );
        assert_eq!(factor_operator(&p(&f, &[1, 1, 1])).unwrap(), vec![(p(&f, &[1, 1, 1]), 1)]);
        let f3 = operator_field(3).unwrap();
        assert_eq!(factor_operator(&p(&f3, &[0, 0, 1])).unwrap(), vec![(p(&f3, &[0, 1]), 2)]);
        assert_eq!(factor_operator(&DensePoly::zero(&f)).unwrap_err(), Error::ZeroInput);
    }

    #[test]
    fn factor_with_pth_powers() {
        // (t^2+t+1)^2 (t+1)^3 t over F_2
        let f = f2();
        let a = p(&f, &[1, 1, 1]);
        let b = p(&f, &[1, 1]);
        let t = p(&f, &[0, 1]);
        let n = a.mul(&a).mul(&b).mul(&b).mul(&b).mul(&t);
        assert_eq!(n.factor().unwrap(), vec![(t, 1), (b, 3), (a, 2)]);
    }

    #[test]
    fn min_irreducible_examples() {
        let f = f2();
        assert_eq!(min_irreducible(2, 2).unwrap(), p(&f, &[1, 1, 1]));
        assert_eq!(min_irreducible(3, 1).unwrap(), p(&operator_field(3).unwrap(), &[0, 1]));
        assert_eq!(min_irreducible(2, 3).unwrap(), p(&f, &[1, 1, 0, 1]));
        assert_eq!(min_irreducible(3, 2).unwrap(), p(&operator_field(3).unwrap(), &[1, 0, 1]));
    }

    #[test]
    fn roots_over_f4() {
        let f4 = operator_field(4).unwrap();
        // x^2 + x + 1 splits over F_4 with roots w, w+1
        let g = p(&f4, &[1, 1, 1]);
        let r = g.roots();
        assert_eq!(r.len(), 2);
        for x in &r {
            assert!(g.eval(x).unwrap().is_zero());
        }
    }

    #[test]
    fn display() {
        let f3 = operator_field(3).unwrap();
        assert_eq!(p(&f3, &[1, 2, 1]).to_string(), "t^2+2t+1");
        assert_eq!(p(&f3, &[0, 0, 2]).to_string(), "2t^2");
        assert_eq!(DensePoly::zero(&f3).to_string(), "0");
    }
}
