//! Moore determinants `M(x_1, ..., x_k) = det(x_j^{q^i})`.

use crate::drinfeld::{det_module, DrinfeldModule};
use crate::error::{Error, Result};
use crate::ff::{embed, FieldDesc, FieldElem};
use crate::skew::{skew_eval, AdditivePoly};

/// Rows `x^{q^0}, ..., x^{q^{rows-1}}`, by iterated Frobenius.
fn moore_rows(xs: &[FieldElem], q: u64, rows: usize) -> Vec<Vec<FieldElem>> {
    let mut out = Vec::with_capacity(rows);
    let mut row = xs.to_vec();
    for i in 0..rows {
        if i > 0 {
            row = row.iter().map(|x| x.pow(q as u128)).collect();
        }
        out.push(row.clone());
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination.
fn bareiss(mut a: Vec<Vec<FieldElem>>, field: &FieldDesc) -> FieldElem {
    let k = a.len();
    let mut sign_flip = false;
    let mut prev = field.one();
    for c in 0..k {
        let Some(piv) = (c..k).find(|&i| !a[i][c].is_zero()) else {
            return field.zero();
        };
        if piv != c {
            a.swap(piv, c);
            sign_flip = !sign_flip;
        }
        let prev_inv = prev.inv().expect("pivots are nonzero");
        for i in c + 1..k {
            for j in c + 1..k {
                let v = &(&a[c][c] * &a[i][j]) - &(&a[i][c] * &a[c][j]);
                a[i][j] = &v * &prev_inv;
            }
        }
        prev = a[c][c].clone();
    }
    if sign_flip {
        -&prev
    } else {
        prev
    }
}

fn common_field(xs: &[FieldElem], q: u64) -> Result<FieldDesc> {
    let field = xs.first().ok_or(Error::EmptyTuple)?.field().clone();
    if let Some(x) = xs.iter().find(|x| x.field() != &field) {
        return Err(Error::FieldMismatch(format!("{:?} vs {field:?}", x.field())));
    }
    if !field.has_subfield_of_size(q) {
        return Err(Error::NotASubfield(format!("F_{q} in {field:?}")));
    }
    Ok(field)
}

/// `M(x_1, ..., x_k)`; nonzero exactly when the `x_j` are `F_q`-independent.
pub fn moore_det(xs: &[FieldElem], q: u64) -> Result<FieldElem> {
    let field = common_field(xs, q)?;
    Ok(bareiss(moore_rows(xs, q, xs.len()), &field))
}

/// The monic additive polynomial `M(v_1, ..., v_r, X) / M(v_1, ..., v_r)`,
/// whose kernel is the `F_q`-span of the `v_i`.
pub fn moore_interpolate(basis: &[FieldElem], q: u64) -> Result<AdditivePoly> {
    let field = common_field(basis, q)?;
    let r = basis.len();
    let rows = moore_rows(basis, q, r + 1);
    let denom = bareiss(rows[..r].to_vec(), &field);
    if denom.is_zero() {
        return Err(Error::DependentBasis);
    }
    let denom_inv = denom.inv()?;
    // expand along the last column (X, X^q, ..., X^{q^r})
    let coeffs = (0..=r)
        .map(|i| {
            let minor: Vec<Vec<FieldElem>> =
                rows.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, row)| row.clone()).collect();
            let c = &bareiss(minor, &field) * &denom_inv;
            if (r + i).is_multiple_of(2) {
                c
            } else {
                -&c
            }
        })
        .collect();
    AdditivePoly::new(&field, q, coeffs)
}

/// The `t`-torsion pairing: `M(x_1, ..., x_r)` for points of `psi[t]`.
///
/// Checks that the value is killed by the determinant module and, when the
/// points form a basis, that `theta = (-1)^r a_r M^{q-1}`.
pub fn weil_t(psi: &DrinfeldModule, xs: &[FieldElem]) -> Result<FieldElem> {
    if xs.len() != psi.rank() {
        return Err(Error::RankMismatch { expected: psi.rank(), actual: xs.len() });
    }
    let field = common_field(xs, psi.q())?;
    for x in xs {
        if !skew_eval(psi.t_image(), x)?.is_zero() {
            return Err(Error::NotTorsion);
        }
    }
    let value = moore_det(xs, psi.q())?;
    let rho = det_module(psi);
    if !skew_eval(rho.t_image(), &value)?.is_zero() {
        return Err(Error::InternalInvariantViolation("Moore determinant outside rho[t]".into()));
    }
    if !value.is_zero() {
        let theta = embed(&psi.theta(), &field)?;
        let a_r = embed(&psi.a(psi.rank()), &field)?;
        let mut rhs = &a_r * &value.pow(psi.q() as u128 - 1);
        if psi.rank() % 2 == 1 {
            rhs = -&rhs;
        }
        if rhs != theta {
            return Err(Error::InternalInvariantViolation("X-coefficient identity failed".into()));
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drinfeld::abhyankar;
    use crate::ff::construct_field;

    #[test]
    fn small_determinants() {
        let f8 = construct_field(2, 3).unwrap();
        let a = f8.generator();
        assert_eq!(moore_det(std::slice::from_ref(&a), 2).unwrap(), a);
        assert!(moore_det(&[a.clone(), a.clone()], 2).unwrap().is_zero());
        assert!(moore_det(&[a.clone(), a.square()], 2).unwrap().is_one());
        assert_eq!(moore_det(&[], 2).unwrap_err(), Error::EmptyTuple);
    }

    #[test]
    fn interpolation_examples() {
        let f8 = construct_field(2, 3).unwrap();
        let a = f8.generator();
        let psi = moore_interpolate(&[a.clone(), a.square()], 2).unwrap();
        assert_eq!(psi.coeffs(), &[f8.one(), f8.one(), f8.one()]);
        let f2 = construct_field(2, 1).unwrap();
        let carlitz = moore_interpolate(&[f2.one()], 2).unwrap();
        assert_eq!(carlitz.coeffs(), &[f2.one(), f2.one()]);
        let f9 = construct_field(3, 2).unwrap();
        let x = f9.generator();
        let dep = moore_interpolate(&[x.clone(), &x * &f9.from_int(2)], 3);
        assert_eq!(dep.unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn pairing_on_the_f8_example() {
        let f2 = construct_field(2, 1).unwrap();
        let f8 = construct_field(2, 3).unwrap();
        let psi = abhyankar(&f2, 2, &f2.one(), &[f2.one()]).unwrap();
        let a = f8.generator();
        assert!(weil_t(&psi, &[a.clone(), a.square()]).unwrap().is_one());
        assert!(weil_t(&psi, &[a.clone(), f8.zero()]).unwrap().is_zero());
        assert_eq!(weil_t(&psi, &[a.clone(), f8.one()]).unwrap_err(), Error::NotTorsion);
    }

    #[test]
    fn bareiss_matches_cofactor_expansion_3x3() {
        let f9 = construct_field(3, 2).unwrap();
        let els: Vec<FieldElem> = f9.elements().collect();
        for s in 0..40usize {
            let m: Vec<Vec<FieldElem>> = (0..3)
                .map(|i| (0..3).map(|j| els[(s * 7 + i * 5 + j * 3 + i * j * s) % 9].clone()).collect())
                .collect();
            let cof = &(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
                - &(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0])));
            let cof = &cof + &(&m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0])));
            assert_eq!(bareiss(m, &f9), cof);
        }
    }
}
