//! Additive polynomials `X -> sum c_i X^{q^i}`, i.e. the twisted ring `K{tau}`
//! with `tau c = c^q tau`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{embed, FieldDesc, FieldElem};
use crate::poly::DensePoly;

/// Default cap on the conventional degree `q^d` produced by [`skew_to_poly`].
pub const DEFAULT_DEGREE_CAP: u128 = 1 << 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AdditivePoly {
    field: FieldDesc,
    q: u64,
    coeffs: Vec<FieldElem>,
}

impl AdditivePoly {
    pub fn new(field: &FieldDesc, q: u64, coeffs: Vec<FieldElem>) -> Result<Self> {
        if !field.has_subfield_of_size(q) {
            return Err(Error::NotASubfield(format!("F_{q} in {field:?}")));
        }
        if let Some(c) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(format!("coefficient in {:?}, expected {field:?}", c.field())));
        }
        let mut f = AdditivePoly { field: field.clone(), q, coeffs };
        f.trim();
        Ok(f)
    }

    pub fn zero(field: &FieldDesc, q: u64) -> Result<Self> {
        Self::new(field, q, Vec::new())
    }

    /// The identity map `X`.
    pub fn identity(field: &FieldDesc, q: u64) -> Result<Self> {
        Self::new(field, q, vec![field.one()])
    }

    /// Multiplication by `c`.
    pub fn constant(c: &FieldElem, q: u64) -> Result<Self> {
        Self::new(c.field(), q, vec![c.clone()])
    }

    /// The Frobenius `X^q`.
    pub fn tau(field: &FieldDesc, q: u64) -> Result<Self> {
        Self::new(field, q, vec![field.zero(), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `tau`-degree; `None` for the zero map.
    pub fn tau_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The same map with coefficients embedded into an extension field.
    pub fn lift_to(&self, target: &FieldDesc) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|c| embed(c, target)).collect::<Result<Vec<_>>>()?;
        Self::new(target, self.q, coeffs)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.q != other.q {
            return Err(Error::TwistMismatch { left: self.q, right: other.q });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{:?} vs {:?}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn to_record(&self) -> AdditivePolyRecord {
        AdditivePolyRecord {
            q: self.q,
            coeffs: self.coeffs.iter().map(|c| c.coords().to_vec()).collect(),
        }
    }

    pub fn from_record(field: &FieldDesc, rec: &AdditivePolyRecord) -> Result<Self> {
        let coeffs = rec.coeffs.iter().map(|c| field.elem(c)).collect::<Result<Vec<_>>>()?;
        Self::new(field, rec.q, coeffs)
    }

    /// Render as `c0*X + c1*X^q + ...` with coordinate-vector coefficients.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => "X".to_string(),
                1 => format!("X^{}", self.q),
                _ => format!("X^({}^{i})", self.q),
            };
            if c.is_one() {
                terms.push(mono);
            } else {
                terms.push(format!("{c}*{mono}"));
            }
        }
        terms.reverse();
        terms.join(" + ")
    }
}

impl std::fmt::Debug for AdditivePoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Serialized form: `{"q": int, "coeffs": [[c0,c1,...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditivePolyRecord {
    pub q: u64,
    pub coeffs: Vec<Vec<u32>>,
}

pub fn skew_add(f: &AdditivePoly, g: &AdditivePoly) -> Result<AdditivePoly> {
    f.check(g)?;
    let n = f.coeffs.len().max(g.coeffs.len());
    let coeffs = (0..n).map(|i| &f.coeff(i) + &g.coeff(i)).collect();
    AdditivePoly::new(&f.field, f.q, coeffs)
}

pub fn skew_neg(f: &AdditivePoly) -> AdditivePoly {
    AdditivePoly { field: f.field.clone(), q: f.q, coeffs: f.coeffs.iter().map(|c| -c).collect() }
}

pub fn skew_sub(f: &AdditivePoly, g: &AdditivePoly) -> Result<AdditivePoly> {
    skew_add(f, &skew_neg(g))
}

/// Composition `f o g`: `(f o g)_k = sum_{i+j=k} f_i * g_j^{q^i}`.
pub fn skew_mul(f: &AdditivePoly, g: &AdditivePoly) -> Result<AdditivePoly> {
    f.check(g)?;
    if f.is_zero() || g.is_zero() {
        return AdditivePoly::zero(&f.field, f.q);
    }
    let mut out = vec![f.field.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    // twisted holds g_j^{q^i} for the current i
    let mut twisted = g.coeffs.clone();
    for (i, fi) in f.coeffs.iter().enumerate() {
        if i > 0 {
            for c in twisted.iter_mut() {
                *c = c.pow(f.q as u128);
            }
        }
        if fi.is_zero() {
            continue;
        }
        for (j, gj) in twisted.iter().enumerate() {
            out[i + j] = &out[i + j] + &(fi * gj);
        }
    }
    AdditivePoly::new(&f.field, f.q, out)
}

/// `sum c_i x^{q^i}` by iterated Frobenius; `x` may lie in an extension.
pub fn skew_eval(f: &AdditivePoly, x: &FieldElem) -> Result<FieldElem> {
    if x.field() == &f.field {
        return Ok(eval_same_field(f, x));
    }
    if !x.field().has_subfield_of_size(f.q) || !x.field().e().is_multiple_of(f.field.e()) {
        return Err(Error::FieldMismatch(format!("{:?} does not extend {:?}", x.field(), f.field)));
    }
    Ok(eval_same_field(&f.lift_to(x.field())?, x))
}

pub(crate) fn eval_same_field(f: &AdditivePoly, x: &FieldElem) -> FieldElem {
    let mut acc = x.field().zero();
    let mut y = x.clone();
    for (i, c) in f.coeffs.iter().enumerate() {
        if i > 0 {
            y = y.pow(f.q as u128);
        }
        if !c.is_zero() {
            acc = &acc + &(c * &y);
        }
    }
    acc
}

/// Expand to a conventional polynomial in `X` of degree `q^d`.
pub fn skew_to_poly(f: &AdditivePoly) -> Result<DensePoly> {
    skew_to_poly_capped(f, DEFAULT_DEGREE_CAP)
}

pub fn skew_to_poly_capped(f: &AdditivePoly, cap: u128) -> Result<DensePoly> {
    let Some(d) = f.tau_degree() else {
        return Ok(DensePoly::zero(&f.field));
    };
    let degree = (f.q as u128)
        .checked_pow(d as u32)
        .filter(|&deg| deg <= cap)
        .ok_or(Error::OverflowGuard { degree: (f.q as u128).saturating_pow(d as u32), cap })?;
    let mut coeffs = vec![f.field.zero(); degree as usize + 1];
    let mut exp = 1usize;
    for (i, c) in f.coeffs.iter().enumerate() {
        if i > 0 {
            exp *= f.q as usize;
        }
        coeffs[exp] = c.clone();
    }
    Ok(DensePoly::new(&f.field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::construct_field;

    #[test]
    fn tau_times_constant_twists() {
        let f4 = construct_field(2, 2).unwrap();
        let w = f4.generator();
        let tau = AdditivePoly::tau(&f4, 2).unwrap();
        let c = AdditivePoly::constant(&w, 2).unwrap();
        let prod = skew_mul(&tau, &c).unwrap();
        assert_eq!(prod.coeffs(), &[f4.zero(), w.square()]);
        // w is not in F_2, so tau and w do not commute
        assert_ne!(prod, skew_mul(&c, &tau).unwrap());
        let id = AdditivePoly::identity(&f4, 2).unwrap();
        assert_eq!(skew_mul(&prod, &id).unwrap(), prod);
    }

    #[test]
    fn carlitz_square_with_t_specialized() {
        // (tX + X^2) o (tX + X^2) = t^2 X + (t^2 + t) X^2 + X^4, here at t = w in F_4
        let f4 = construct_field(2, 2).unwrap();
        let w = f4.generator();
        let f = AdditivePoly::new(&f4, 2, vec![w.clone(), f4.one()]).unwrap();
        let sq = skew_mul(&f, &f).unwrap();
        assert_eq!(sq.coeffs(), &[w.square(), &w.square() + &w, f4.one()]);
        let poly = skew_to_poly(&sq).unwrap();
        assert_eq!(poly.degree(), Some(4));
        assert_eq!(poly.coeff(2), &w.square() + &w);
        assert_eq!(poly.coeff(1), w.square());
    }

    #[test]
    fn addition_cases() {
        let f2 = construct_field(2, 1).unwrap();
        let f = AdditivePoly::new(&f2, 2, vec![f2.one(), f2.one()]).unwrap();
        assert!(skew_add(&f, &f).unwrap().is_zero());
        let z = AdditivePoly::zero(&f2, 2).unwrap();
        assert_eq!(skew_add(&f, &z).unwrap(), f);
        assert!(skew_eval(&f, &f2.one()).unwrap().is_zero());
        assert!(skew_eval(&f, &f2.zero()).unwrap().is_zero());
    }

    #[test]
    fn twist_mismatch_is_an_error() {
        let f4 = construct_field(2, 2).unwrap();
        let a = AdditivePoly::identity(&f4, 2).unwrap();
        let b = AdditivePoly::identity(&f4, 4).unwrap();
        assert_eq!(skew_mul(&a, &b).unwrap_err(), Error::TwistMismatch { left: 2, right: 4 });
        assert!(matches!(AdditivePoly::identity(&f4, 8), Err(Error::NotASubfield(_))));
    }

    #[test]
    fn eval_in_extension() {
        let f2 = construct_field(2, 1).unwrap();
        let f8 = construct_field(2, 3).unwrap();
        // X^4 + X^2 + X kills the F_2-span of alpha and alpha^2
        let f = AdditivePoly::new(&f2, 2, vec![f2.one(), f2.one(), f2.one()]).unwrap();
        let a = f8.generator();
        assert!(skew_eval(&f, &a).unwrap().is_zero());
        assert!(skew_eval(&f, &a.square()).unwrap().is_zero());
        assert!(!skew_eval(&f, &f8.one()).unwrap().is_zero());
    }

    #[test]
    fn conventional_degree_guard() {
        let f2 = construct_field(2, 1).unwrap();
        let mut coeffs = vec![f2.zero(); 21];
        coeffs.push(f2.one());
        let f = AdditivePoly::new(&f2, 2, coeffs).unwrap();
        assert!(matches!(skew_to_poly(&f), Err(Error::OverflowGuard { .. })));
        assert!(skew_to_poly(&AdditivePoly::zero(&f2, 2).unwrap()).unwrap().is_zero());
    }
}
