//! Seeded verification suites behind `dmod verify`.
//!
//! Each suite runs one check per grid case `(q, r, n, seed)` and reports
//! pass/fail; errors count as failures and are kept in the case detail.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::drinfeld::{j_invariants, psi_of, torsion, torsion_seeded, twist, DrinfeldModule};
use crate::error::{Error, Result};
use crate::ff::{embed, extension, FieldElem};
use crate::groups::{
    abelianization_order, general_linear, gl_order, kernel_factorization_check, kernel_subgroup, KernelKind,
    ResidueMatrix, ResidueRing, DEFAULT_GROUP_CAP,
};
use crate::modring::{
    grid_levels, grid_module, leading_identity, level_structure, normalize, verify_torsion_product, SuiteCase,
    SuiteReport,
};
use crate::moore::{moore_det, moore_interpolate, weil_t};
use crate::poly::OperatorPoly;
use crate::skew::{eval_same_field, AdditivePoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Prop1,
    Level,
    Moore,
    Leading,
    Jinv,
    Groups,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Prop1, Suite::Level, Suite::Moore, Suite::Leading, Suite::Jinv, Suite::Groups];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop1 => "prop1",
            Suite::Level => "level",
            Suite::Moore => "moore",
            Suite::Leading => "leading",
            Suite::Jinv => "jinv",
            Suite::Groups => "groups",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Run one case of `suite`.
pub fn run_case(suite: Suite, q: u64, r: usize, n: &OperatorPoly, seed: u64) -> SuiteCase {
    let outcome = match suite {
        Suite::Prop1 => grid_module(q, r, n, seed, false).and_then(|psi| Ok(verify_torsion_product(&psi, n)?.holds)),
        Suite::Level => grid_module(q, r, n, seed, false).and_then(|psi| level_case(&psi, n, seed)),
        Suite::Moore => grid_module(q, r, n, seed, false).and_then(|psi| moore_case(&psi, seed)),
        Suite::Leading => grid_module(q, r, n, seed, true).and_then(|psi| leading_identity(&psi, seed)),
        Suite::Jinv => grid_module(q, r, n, seed, false).and_then(|psi| jinv_case(&psi, n, seed)),
        Suite::Groups => groups_case(q, r, n),
    };
    let (pass, detail) = match outcome {
        Ok(p) => (p, None),
        Err(e) => (false, Some(format!("{}: {e}", e.code()))),
    };
    SuiteCase { q, r, n: n.to_string(), seed, pass, detail }
}

/// `q in {2,3}`, `r in {1,2}`, the four grid levels, seeds `0..seeds`.
pub fn run_grid(suite: Suite, seeds: u64) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    for q in [2u64, 3] {
        for r in [1usize, 2] {
            for n in grid_levels(q)? {
                for seed in 0..seeds {
                    cases.push(run_case(suite, q, r, &n, seed));
                }
            }
        }
    }
    Ok(SuiteReport { suite: suite.name().into(), cases })
}

fn level_case(psi: &DrinfeldModule, n: &OperatorPoly, seed: u64) -> Result<bool> {
    let level = level_structure(psi, n, seed)?;
    let norm = normalize(psi, &level)?;
    Ok(level.is_bijective()? && level.is_a_linear()? && level.divisor_equality()? && norm.holds())
}

/// Images of `xs` under a matrix over `F_q`, given as codes of `A/tA`:
/// `y_j = sum_i s_{ij} x_i`.
pub fn act_on_tuple(
    tors: &crate::drinfeld::TorsionModule,
    s: &ResidueMatrix,
    xs: &[FieldElem],
) -> Vec<FieldElem> {
    let r = xs.len();
    let ring = s.ring();
    (0..r)
        .map(|j| {
            let mut acc = tors.ambient().zero();
            for (i, x) in xs.iter().enumerate() {
                let c = ring.elem(s.get(i, j)).coeff(0);
                acc = &acc + &(&tors.scalar(&c) * x);
            }
            acc
        })
        .collect()
}

/// Moore checks on `psi[t]`: reconstruction of `psi_t`, the pairing landing in
/// `rho[t]`, bilinearity on random points and `GL_r(F_q)`-equivariance.
pub fn moore_case(psi: &DrinfeldModule, seed: u64) -> Result<bool> {
    let q = psi.q();
    let r = psi.rank();
    let t = OperatorPoly::var(&psi.operator_field());
    let tors = torsion_seeded(psi, &t, None, seed)?;
    let ambient = tors.ambient();
    let basis = tors.basis();

    let lifted = psi.base_change(ambient)?;
    let top_inv = lifted.a(r).inv()?;
    let monic: Vec<FieldElem> = lifted.t_image().coeffs().iter().map(|c| c * &top_inv).collect();
    if moore_interpolate(basis, q)? != AdditivePoly::new(ambient, q, monic)? {
        return Ok(false);
    }
    if weil_t(psi, basis)?.is_zero() {
        return Ok(false);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d6f_6f72);
    let pts = tors.points();
    let pick = |rng: &mut ChaCha8Rng| pts[rng.gen_range(0..pts.len())].clone();
    for _ in 0..20 {
        let mut xs: Vec<FieldElem> = (0..r).map(|_| pick(&mut rng)).collect();
        let base = weil_t(psi, &xs)?;
        let y = pick(&mut rng);
        let k = rng.gen_range(0..r);
        let mut ys = xs.clone();
        ys[k] = y.clone();
        let mut sum = xs.clone();
        sum[k] = &xs[k] + &y;
        if weil_t(psi, &sum)? != &base + &weil_t(psi, &ys)? {
            return Ok(false);
        }
        if r >= 2 {
            xs[1] = xs[0].clone();
            if !moore_det(&xs, q)?.is_zero() {
                return Ok(false);
            }
        }
    }

    let ring = ResidueRing::new(q, &t)?;
    let m = moore_det(basis, q)?;
    for _ in 0..10 {
        let codes: Vec<u32> = (0..r * r).map(|_| rng.gen_range(0..q as u32)).collect();
        let s = ResidueMatrix::from_codes(&ring, r, codes)?;
        let det = tors.scalar(&ring.elem(s.det()).coeff(0));
        if moore_det(&act_on_tuple(&tors, &s, basis), q)? != &det * &m {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Twist invariance of the `J_i` and twist covariance of `psi[n]`.
pub fn jinv_case(psi: &DrinfeldModule, n: &OperatorPoly, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6a69_6e76);
    let big = extension(psi.field(), 2)?;
    let c = loop {
        let c = big.random(&mut rng);
        if !c.is_zero() {
            break c;
        }
    };
    let tw = twist(psi, &c)?;
    let j0: Vec<FieldElem> = j_invariants(psi)?.iter().map(|x| embed(x, &big)).collect::<Result<_>>()?;
    if j_invariants(&tw)? != j0 {
        return Ok(false);
    }
    if j0.len() != psi.rank() - 1 {
        return Ok(false);
    }
    twist_covariance(psi, &c, n)
}

/// `psi'[n] = c^{-1} psi[n]` for `psi' = twist(psi, c)`.
///
/// Checked inside the ambient field of `psi'[n]`: every `c y` is killed by
/// `psi_n`, and both torsion modules have the same size. Working in one
/// field keeps every coefficient on a single chain of embeddings.
pub fn twist_covariance(psi: &DrinfeldModule, c: &FieldElem, n: &OperatorPoly) -> Result<bool> {
    let tw = twist(psi, c)?;
    let own = torsion(psi, n, None)?;
    let twisted = torsion(&tw, n, None)?;
    let ambient = twisted.ambient();
    let psi_n = psi_of(&psi.base_change(tw.field())?, n)?.lift_to(ambient)?;
    let c = embed(c, ambient)?;
    let killed = twisted.points().iter().all(|y| eval_same_field(&psi_n, &(&c * y)).is_zero());
    Ok(killed && own.points().len() == twisted.points().len())
}

/// Order formula against enumeration, kernel bookkeeping and, in rank two,
/// the abelianization of `S_2(n)` being a `p`-group.
pub fn groups_case(q: u64, r: usize, n: &OperatorPoly) -> Result<bool> {
    let order = gl_order(q, r, n)?;
    if order <= 5_000 {
        let g = general_linear(q, r, n, DEFAULT_GROUP_CAP)?;
        if g.order() as u128 != order {
            return Ok(false);
        }
    }
    if !kernel_factorization_check(q, r, n)?.holds {
        return Ok(false);
    }
    if r == 2 && n.deg0() > 0 {
        let s = kernel_subgroup(KernelKind::S, q, r, n, DEFAULT_GROUP_CAP)?;
        let ab = abelianization_order(&s)?;
        let (p, _) = crate::ff::prime_power(q)?;
        if !is_power_of(ab, p as u128) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_power_of(mut x: u128, p: u128) -> bool {
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::construct_field;
    use crate::poly::operator_field;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn one_case_per_suite() {
        let t = OperatorPoly::var(&operator_field(2).unwrap());
        for s in Suite::ALL {
            let c = run_case(s, 2, 2, &t, 1);
            assert!(c.pass, "{s:?}: {c:?}");
        }
    }

    #[test]
    fn moore_case_f8_example() {
        let f2 = construct_field(2, 1).unwrap();
        let psi = crate::drinfeld::abhyankar(&f2, 2, &f2.one(), &[f2.one()]).unwrap();
        for seed in 0..4 {
            assert!(moore_case(&psi, seed).unwrap());
        }
    }

    #[test]
    fn power_check() {
        assert!(is_power_of(1, 2));
        assert!(is_power_of(27, 3));
        assert!(!is_power_of(6, 2));
    }
}
