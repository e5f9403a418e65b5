//! Text input formats shared by the CLI and JSON reports.
//!
//! Operator polynomials: `poly := term ('+' term)*`,
//! `term := coeff | coeff? VAR ('^' uint)?`, whitespace ignored. A coefficient
//! is an integer in `[0, q)`, read as a field index (base-`p` digits are the
//! power-basis coordinates; for prime `q` this is the usual residue).
//!
//! Field elements: `[c0,c1,...]` coordinates low degree first, or a bare
//! integer index.

use crate::error::{Error, Result};
use crate::ff::{FieldDesc, FieldElem};
use crate::poly::DensePoly;

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Parse a polynomial in the variable `var` with coefficients in `field`.
pub fn parse_poly_in(s: &str, field: &FieldDesc, var: char) -> Result<DensePoly> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(perr("empty polynomial"));
    }
    let q = field.size().ok_or_else(|| perr("coefficient field too large"))?;
    let mut coeffs: Vec<FieldElem> = Vec::new();
    for term in s.split('+') {
        if term.is_empty() {
            return Err(perr(format!("empty term in '{s}'")));
        }
        let (coeff_str, rest) = match term.find(var) {
            Some(pos) => (&term[..pos], Some(&term[pos + var.len_utf8()..])),
            None => (term, None),
        };
        let coeff = if coeff_str.is_empty() {
            if rest.is_none() {
                return Err(perr(format!("bad term '{term}'")));
            }
            1u128
        } else {
            let c: u128 = coeff_str
                .parse()
                .map_err(|_| perr(format!("bad coefficient '{coeff_str}'")))?;
            if c >= q {
                return Err(perr(format!("coefficient {c} not in [0, {q})")));
            }
            c
        };
        let exp = match rest {
            None => 0usize,
            Some("") => 1,
            Some(r) => {
                let e = r
                    .strip_prefix('^')
                    .ok_or_else(|| perr(format!("bad exponent in '{term}'")))?;
                e.parse().map_err(|_| perr(format!("bad exponent '{e}'")))?
            }
        };
        if exp > 1 << 20 {
            return Err(perr(format!("exponent {exp} too large")));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, field.zero());
        }
        coeffs[exp] = &coeffs[exp] + &field.from_index(coeff);
    }
    Ok(DensePoly::new(field, coeffs))
}

/// Parse an element of `A = F_q[t]`.
pub fn parse_operator(s: &str, fq: &FieldDesc) -> Result<DensePoly> {
    parse_poly_in(s, fq, 't')
}

/// Parse a field element: `[c0,c1,...]` or a bare index.
pub fn parse_elem(s: &str, field: &FieldDesc) -> Result<FieldElem> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let coords = inner
            .split(',')
            .map(|c| c.trim())
            .filter(|c| !c.is_empty())
            .map(|c| c.parse::<u32>().map_err(|_| perr(format!("bad coordinate '{c}'"))))
            .collect::<Result<Vec<_>>>()?;
        return field.elem(&coords);
    }
    let idx: u128 = s.parse().map_err(|_| perr(format!("bad element '{s}'")))?;
    match field.size() {
        Some(size) if idx < size => Ok(field.from_index(idx)),
        _ => Err(perr(format!("element index {idx} out of range"))),
    }
}

/// Parse a comma-separated list of elements; commas inside brackets do not
/// split.
pub fn parse_elem_list(s: &str, field: &FieldDesc) -> Result<Vec<FieldElem>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if c == ',' && depth == 0 {
            out.push(parse_elem(&cur, field)?);
            cur.clear();
            continue;
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(perr(format!("unbalanced brackets in '{s}'")));
    }
    if !cur.trim().is_empty() {
        out.push(parse_elem(&cur, field)?);
    }
    Ok(out)
}
