//! Frobenius sampling over specializations of the Abhyankar module, and
//! certification that the mod-`n` Galois image is all of `GL_r(A/nA)`.
//!
//! A specialization over `F_{q^m}` gives a Frobenius element `x -> x^{q^m}`
//! acting `A/nA`-linearly on `psi[n]`. Its matrix depends on the torsion
//! basis, so only its conjugacy class is meaningful. The certifier in
//! [`crate::groups`] decides whether any proper subgroup of `GL_r(A/nA)`
//! meets all of the sampled classes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::drinfeld::{abhyankar, characteristic_prime_to, det_module, torsion_seeded, DrinfeldModule, TorsionModule};
use crate::error::{Error, ErrorClass, Result};
use crate::ff::{construct_field, prime_power, FieldDesc, FieldElem};
use crate::groups::{gl_order, Certifier, Method, ResidueMatrix, ResidueRing, Verdict};
use crate::moore::moore_det;
use crate::poly::{operator_field, OperatorPoly};

/// Random candidates tried before scanning the whole field for `theta`.
const THETA_TRIES: usize = 64;
pub const DEFAULT_BUDGET: usize = 64;

/// The data that determines a sampled module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Specialization {
    pub q: u64,
    pub r: usize,
    pub m: usize,
    pub theta: FieldElem,
    /// `a_1, ..., a_{r-1}`; `a_r = 1`.
    pub a: Vec<FieldElem>,
}

fn good_theta(field: &FieldDesc, q: u64, tn: &OperatorPoly, theta: &FieldElem) -> Result<bool> {
    let probe = abhyankar(field, q, theta, &[])?;
    characteristic_prime_to(&probe, tn)
}

/// A random Abhyankar-form module over `F_{q^m}` with `theta n(theta) != 0`.
pub fn specialize<R: Rng + ?Sized>(
    q: u64,
    r: usize,
    n: &OperatorPoly,
    m: usize,
    rng: &mut R,
) -> Result<(DrinfeldModule, Specialization)> {
    if r == 0 {
        return Err(Error::RankMismatch { expected: 1, actual: 0 });
    }
    let (p, f) = prime_power(q)?;
    let field = construct_field(p, f * m)?;
    let tn = OperatorPoly::var(n.field()).mul(n);
    let mut theta = None;
    for _ in 0..THETA_TRIES {
        let x = field.random(rng);
        if good_theta(&field, q, &tn, &x)? {
            theta = Some(x);
            break;
        }
    }
    if theta.is_none() {
        let size = field.size().unwrap_or(u128::MAX);
        let good: Vec<FieldElem> =
            field.elements().filter(|x| good_theta(&field, q, &tn, x).unwrap_or(false)).collect();
        if good.is_empty() {
            return Err(Error::NoGoodTheta { size });
        }
        theta = Some(good[rng.gen_range(0..good.len())].clone());
    }
    let theta = theta.expect("set above");
    let a: Vec<FieldElem> = (1..r).map(|_| field.random(rng)).collect();
    let psi = abhyankar(&field, q, &theta, &a)?;
    Ok((psi, Specialization { q, r, m, theta, a }))
}

/// The matrix of `x -> x^{q^m}` on a basis of `psi[n]`, with its invariants.
#[derive(Debug, Clone)]
pub struct FrobeniusSample {
    pub m: usize,
    pub theta: FieldElem,
    pub a: Vec<FieldElem>,
    /// Column `i` holds the `A/nA`-coordinates of `sigma(w_i)`.
    pub matrix: ResidueMatrix,
    pub charpoly: Vec<u32>,
    pub order: u64,
    /// Extension degree over `F_{q^m}` in which `psi[n]` splits.
    pub splitting_degree: usize,
}

fn frobenius(x: &FieldElem, base_size: u128) -> FieldElem {
    x.pow(base_size)
}

/// Frobenius sample for `psi` at level `n`, using the torsion basis chosen by
/// `seed`.
pub fn frobenius_matrix(psi: &DrinfeldModule, n: &OperatorPoly, seed: u64) -> Result<FrobeniusSample> {
    let tors = torsion_seeded(psi, n, None, seed)?;
    frobenius_on(&tors)
}

/// As [`frobenius_matrix`], on an already computed torsion module.
pub fn frobenius_on(tors: &TorsionModule) -> Result<FrobeniusSample> {
    let psi = tors.module();
    let n = tors.n();
    let r = psi.rank();
    let base_size = psi.field().size().ok_or_else(|| Error::CapExceeded("base field too large".into()))?;
    let ring = ResidueRing::new(psi.q(), n)?;
    let images: Vec<FieldElem> = tors.basis().iter().map(|w| frobenius(w, base_size)).collect();
    for (w, s) in tors.basis().iter().zip(&images) {
        if frobenius(&tors.apply_t(w), base_size) != tors.apply_t(s) {
            return Err(Error::InternalInvariantViolation("Frobenius does not commute with psi_t".into()));
        }
    }
    let columns: Vec<Vec<OperatorPoly>> = images.iter().map(|x| tors.coordinates(x)).collect::<Result<_>>()?;
    let rows: Vec<Vec<OperatorPoly>> = (0..r).map(|j| (0..r).map(|i| columns[i][j].clone()).collect()).collect();
    let matrix = ResidueMatrix::from_polys(&ring, &rows)?;
    if !matrix.is_invertible() {
        return Err(Error::InternalInvariantViolation("Frobenius matrix is singular".into()));
    }
    let cap = u64::try_from(gl_order(psi.q(), r, n)?).unwrap_or(u64::MAX);
    let order = matrix
        .order(cap)
        .ok_or_else(|| Error::InternalInvariantViolation("Frobenius order exceeds |GL_r|".into()))?;
    let a = (1..r).map(|i| psi.a(i)).collect();
    Ok(FrobeniusSample {
        m: psi.m(),
        theta: psi.theta(),
        a,
        charpoly: matrix.charpoly(),
        matrix,
        order,
        splitting_degree: tors.ext_degree(),
    })
}

/// Order of the Frobenius matrix, checked against the torsion search.
pub fn splitting_degree(psi: &DrinfeldModule, n: &OperatorPoly) -> Result<usize> {
    let s = frobenius_matrix(psi, n, 0)?;
    if s.order as usize != s.splitting_degree {
        return Err(Error::InternalInvariantViolation(format!(
            "Frobenius order {} but psi[n] splits in degree {}",
            s.order, s.splitting_degree
        )));
    }
    Ok(s.splitting_degree)
}

/// Outcome of [`det_compatibility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetCompatibility {
    /// `det` of the rank-`r` Frobenius matrix, as a residue code mod `t`.
    pub det: u32,
    /// The 1x1 Frobenius matrix of the determinant module on `rho[t]`.
    pub rho_multiplier: u32,
    /// `sigma(M(w)) = det(sigma) M(w)` for the Moore determinant of the basis.
    pub moore_equivariant: bool,
}

impl DetCompatibility {
    pub fn holds(&self) -> bool {
        self.det == self.rho_multiplier && self.moore_equivariant
    }
}

/// Compare `det` of the level-`t` Frobenius matrix with the Frobenius of the
/// determinant module, computed from its own torsion.
pub fn det_compatibility(psi: &DrinfeldModule, seed: u64) -> Result<DetCompatibility> {
    let fq = psi.operator_field();
    let t = OperatorPoly::var(&fq);
    let tors = torsion_seeded(psi, &t, None, seed)?;
    let sample = frobenius_on(&tors)?;
    let det = sample.matrix.det();
    let rho = det_module(psi);
    let rho_sample = frobenius_matrix(&rho, &t, seed)?;
    let rho_multiplier = rho_sample.matrix.get(0, 0);

    let base_size = psi.field().size().ok_or_else(|| Error::CapExceeded("base field too large".into()))?;
    let value = moore_det(tors.basis(), psi.q())?;
    let det_scalar = sample.matrix.entry(0, 0).field().clone();
    let det_elem = sample.matrix.ring().elem(det).coeff(0);
    debug_assert_eq!(det_elem.field(), &det_scalar);
    let moore_equivariant = frobenius(&value, base_size) == &tors.scalar(&det_elem) * &value;
    Ok(DetCompatibility { det, rho_multiplier, moore_equivariant })
}

/// One sample as it appears in a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub m: usize,
    pub theta: String,
    pub a: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub charpoly: Vec<String>,
    pub order: u64,
    pub splitting_degree: usize,
}

impl SampleRecord {
    pub fn from_sample(s: &FrobeniusSample) -> Self {
        let ring = s.matrix.ring();
        SampleRecord {
            m: s.m,
            theta: s.theta.to_string(),
            a: s.a.iter().map(|x| x.to_string()).collect(),
            matrix: s.matrix.to_strings(),
            charpoly: s.charpoly.iter().map(|&c| ring.display(c)).collect(),
            order: s.order,
            splitting_degree: s.splitting_degree,
        }
    }

    /// Re-read the matrix over `ring`.
    pub fn to_matrix(&self, ring: &std::sync::Arc<ResidueRing>) -> Result<ResidueMatrix> {
        let rows: Vec<Vec<OperatorPoly>> = self
            .matrix
            .iter()
            .map(|row| row.iter().map(|s| crate::parse::parse_operator(s, ring.field())).collect())
            .collect::<Result<_>>()?;
        ResidueMatrix::from_polys(ring, &rows)
    }
}

/// Result of [`certify`]. Wall time is left to the caller so that reports
/// with equal inputs are byte-identical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub q: u64,
    pub r: usize,
    pub n: String,
    pub group_order: u128,
    pub method: Method,
    pub verdict: Verdict,
    pub samples: Vec<SampleRecord>,
    pub budget: usize,
    pub seed: u64,
    /// Specializations drawn, including ones that were skipped.
    pub drawn: usize,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl CertificationReport {
    pub fn certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Sample up to `budget` specializations (`m = 1, 2, 3, 1, ...`) and feed
/// their Frobenius classes to the certifier, stopping once certified.
///
/// Sample `i` draws from stream `i` of a ChaCha8 generator seeded with
/// `seed`, so every sample is reproducible on its own.
pub fn certify(q: u64, r: usize, n: &OperatorPoly, budget: usize, seed: u64) -> Result<CertificationReport> {
    if !n.is_monic() {
        return Err(Error::Precondition("level must be monic".into()));
    }
    let mut report = CertificationReport {
        q,
        r,
        n: n.to_string(),
        group_order: gl_order(q, r, n)?,
        method: Method::GeneratedSubgroupHeuristic,
        verdict: Verdict::Inconclusive,
        samples: Vec::new(),
        budget,
        seed,
        drawn: 0,
        note: String::new(),
    };
    let mut certifier = match Certifier::new(q, r, n) {
        Ok(c) => c,
        Err(e) if e.class() == ErrorClass::Inconclusive => {
            report.note = e.to_string();
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    report.method = certifier.method();
    report.verdict = certifier.verdict();
    let mut skipped = 0usize;
    for i in 0..budget {
        if certifier.verdict() == Verdict::Certified {
            break;
        }
        report.drawn += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let m = 1 + i % 3;
        let psi = match specialize(q, r, n, m, &mut rng) {
            Ok((psi, _)) => psi,
            Err(Error::NoGoodTheta { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let sample = match frobenius_matrix(&psi, n, rng.gen()) {
            Ok(s) => s,
            Err(e) if e.class() == ErrorClass::Inconclusive => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        if sample.order as usize != sample.splitting_degree {
            return Err(Error::InternalInvariantViolation(format!(
                "sample {i}: Frobenius order {} but splitting degree {}",
                sample.order, sample.splitting_degree
            )));
        }
        report.verdict = certifier.add(&sample.matrix)?;
        report.samples.push(SampleRecord::from_sample(&sample));
    }
    let mut notes = Vec::new();
    if !certifier.note().is_empty() {
        notes.push(certifier.note().to_string());
    }
    if skipped > 0 {
        notes.push(format!("{skipped} specializations skipped"));
    }
    if report.verdict == Verdict::Inconclusive && certifier.method() == Method::SubgroupLattice {
        notes.push(format!("{} proper subgroups meet every sampled class", certifier.obstructions()));
    }
    report.note = notes.join("; ");
    Ok(report)
}

/// [`certify`] in rank one, against the unit group `(A/nA)^*`.
pub fn certify_rank1(q: u64, n: &OperatorPoly, budget: usize, seed: u64) -> Result<CertificationReport> {
    certify(q, 1, n, budget, seed)
}

/// Parse the level `n` over `F_q` and certify.
pub fn certify_str(q: u64, r: usize, n: &str, budget: usize, seed: u64) -> Result<CertificationReport> {
    let fq = operator_field(q)?;
    certify(q, r, &crate::parse::parse_operator(n, &fq)?, budget, seed)
}
