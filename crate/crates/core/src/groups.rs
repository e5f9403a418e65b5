//! Matrix groups over `A/nA`, `A = F_q[t]`.
//!
//! Residues are encoded as integers: the base-`q` index of the canonical
//! remainder (see [`DensePoly::index`]). Small rings get full addition and
//! multiplication tables.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::FieldDesc;
use crate::poly::{operator_field, DensePoly, OperatorPoly};

/// Rings up to this size get precomputed tables.
const TABLE_LIMIT: u64 = 256;
/// Largest ring handled at all.
const RING_LIMIT: u64 = 1 << 20;
/// Default enumeration cap for kernels and closures.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;
/// Largest group whose full subgroup lattice is enumerated.
pub const LATTICE_CAP: u128 = 1_000;
/// Groups up to this order take the derived subgroup from all commutators.
const ALL_COMMUTATORS_LIMIT: usize = 1024;

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    inv: Vec<Option<u32>>,
}

/// The ring `A/nA` with integer-coded elements.
pub struct ResidueRing {
    q: u64,
    fq: FieldDesc,
    n: OperatorPoly,
    size: u64,
    tables: Option<Tables>,
}

impl fmt::Debug for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[t]/({})", self.q, self.n)
    }
}

impl PartialEq for ResidueRing {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n
    }
}

impl Eq for ResidueRing {}

impl ResidueRing {
    pub fn new(q: u64, n: &OperatorPoly) -> Result<Arc<ResidueRing>> {
        let fq = operator_field(q)?;
        if n.field() != &fq {
            return Err(Error::FieldMismatch(format!("modulus over {:?}, expected F_{q}", n.field())));
        }
        if n.is_zero() {
            return Err(Error::ZeroInput);
        }
        if !n.is_monic() {
            return Err(Error::Precondition("modulus must be monic".into()));
        }
        let size = q
            .checked_pow(n.deg0() as u32)
            .filter(|&s| s <= RING_LIMIT)
            .ok_or_else(|| Error::CapExceeded(format!("F_{q}[t]/({n}) is too large")))?;
        let mut ring = ResidueRing { q, fq, n: n.clone(), size, tables: None };
        if size <= TABLE_LIMIT {
            let s = size as u32;
            let mut add = vec![0; (s * s) as usize];
            let mut mul = vec![0; (s * s) as usize];
            for a in 0..s {
                for b in 0..s {
                    add[(a * s + b) as usize] = ring.slow_add(a, b);
                    mul[(a * s + b) as usize] = ring.slow_mul(a, b);
                }
            }
            let one = ring.one();
            let inv = (0..s)
                .map(|a| (0..s).find(|&b| mul[(a * s + b) as usize] == one))
                .collect();
            ring.tables = Some(Tables { add, mul, inv });
        }
        Ok(Arc::new(ring))
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &OperatorPoly {
        &self.n
    }

    pub fn field(&self) -> &FieldDesc {
        &self.fq
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        if self.size == 1 {
            0
        } else {
            1
        }
    }

    /// The residue as a polynomial of degree `< deg n`.
    pub fn elem(&self, code: u32) -> OperatorPoly {
        DensePoly::from_index(&self.fq, code as u128, self.n.deg0())
    }

    /// Canonical code of `a mod n`.
    pub fn code(&self, a: &OperatorPoly) -> Result<u32> {
        if a.field() != &self.fq {
            return Err(Error::FieldMismatch(format!("{:?} vs F_{}", a.field(), self.q)));
        }
        Ok(a.rem(&self.n)?.index() as u32)
    }

    pub fn display(&self, code: u32) -> String {
        self.elem(code).to_string()
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        self.elem(a).add(&self.elem(b)).index() as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        self.elem(a).mulmod(&self.elem(b), &self.n).index() as u32
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[(a as u64 * self.size + b as u64) as usize],
            None => self.slow_add(a, b),
        }
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a as u64 * self.size + b as u64) as usize],
            None => self.slow_mul(a, b),
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.elem(a).neg().index() as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if let Some(t) = &self.tables {
            return t.inv[a as usize];
        }
        let (g, s, _) = self.elem(a).ext_gcd(&self.n);
        if !g.is_one() {
            return None;
        }
        Some(s.rem(&self.n).ok()?.index() as u32)
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.inv(a).is_some()
    }
}

/// An `r x r` matrix over `A/nA`, entries row-major.
#[derive(Clone)]
pub struct ResidueMatrix {
    ring: Arc<ResidueRing>,
    r: usize,
    entries: Vec<u32>,
}

impl PartialEq for ResidueMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.entries == other.entries && *self.ring == *other.ring
    }
}

impl Eq for ResidueMatrix {}

impl std::hash::Hash for ResidueMatrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl fmt::Debug for ResidueMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_strings())
    }
}

impl ResidueMatrix {
    pub fn identity(ring: &Arc<ResidueRing>, r: usize) -> Self {
        let mut entries = vec![0; r * r];
        for i in 0..r {
            entries[i * r + i] = ring.one();
        }
        ResidueMatrix { ring: ring.clone(), r, entries }
    }

    pub fn from_codes(ring: &Arc<ResidueRing>, r: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != r * r {
            return Err(Error::Precondition(format!("{} entries for a {r}x{r} matrix", entries.len())));
        }
        if entries.iter().any(|&c| c as u64 >= ring.size()) {
            return Err(Error::Precondition("entry code out of range".into()));
        }
        Ok(ResidueMatrix { ring: ring.clone(), r, entries })
    }

    /// Build from rows of polynomials, reducing each entry mod `n`.
    pub fn from_polys(ring: &Arc<ResidueRing>, rows: &[Vec<OperatorPoly>]) -> Result<Self> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * r);
        for row in rows {
            if row.len() != r {
                return Err(Error::Precondition("matrix must be square".into()));
            }
            for a in row {
                entries.push(ring.code(a)?);
            }
        }
        Ok(ResidueMatrix { ring: ring.clone(), r, entries })
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn codes(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.r + j]
    }

    pub fn entry(&self, i: usize, j: usize) -> OperatorPoly {
        self.ring.elem(self.get(i, j))
    }

    /// Row-major residue strings, e.g. `[["0","1"],["1","t+1"]]`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.r)
            .map(|i| (0..self.r).map(|j| self.ring.display(self.get(i, j))).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ring, self.r)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.r != other.r || *self.ring != *other.ring {
            return Err(Error::Precondition(format!(
                "matrices over {:?} ({}x{}) and {:?} ({}x{})",
                self.ring, self.r, self.r, other.ring, other.r, other.r
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let r = self.r;
        let ring = &self.ring;
        let mut entries = vec![0; r * r];
        for i in 0..r {
            for j in 0..r {
                let mut acc = 0;
                for k in 0..r {
                    acc = ring.add(acc, ring.mul(self.get(i, k), other.get(k, j)));
                }
                entries[i * r + j] = acc;
            }
        }
        ResidueMatrix { ring: ring.clone(), r, entries }
    }

    /// Determinant of the submatrix on `rows x cols` by cofactor expansion.
    fn minor(&self, rows: &[usize], cols: &[usize]) -> u32 {
        let ring = &self.ring;
        match rows.len() {
            0 => ring.one(),
            1 => self.get(rows[0], cols[0]),
            2 => ring.sub(
                ring.mul(self.get(rows[0], cols[0]), self.get(rows[1], cols[1])),
                ring.mul(self.get(rows[0], cols[1]), self.get(rows[1], cols[0])),
            ),
            _ => {
                let mut acc = 0;
                for (k, &c) in cols.iter().enumerate() {
                    let a = self.get(rows[0], c);
                    if a == 0 {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = ring.mul(a, self.minor(&rows[1..], &sub_cols));
                    acc = if k % 2 == 0 { ring.add(acc, term) } else { ring.sub(acc, term) };
                }
                acc
            }
        }
    }

    pub fn det(&self) -> u32 {
        let idx: Vec<usize> = (0..self.r).collect();
        self.minor(&idx, &idx)
    }

    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(self.det())
    }

    /// Inverse via the adjugate.
    pub fn inv(&self) -> Result<Self> {
        let d_inv = self.ring.inv(self.det()).ok_or(Error::NotInvertible)?;
        let r = self.r;
        let ring = &self.ring;
        let mut entries = vec![0; r * r];
        for i in 0..r {
            for j in 0..r {
                let rows: Vec<usize> = (0..r).filter(|&x| x != j).collect();
                let cols: Vec<usize> = (0..r).filter(|&x| x != i).collect();
                let c = self.minor(&rows, &cols);
                let c = if (i + j) % 2 == 0 { c } else { ring.neg(c) };
                entries[i * r + j] = ring.mul(c, d_inv);
            }
        }
        Ok(ResidueMatrix { ring: ring.clone(), r, entries })
    }

    pub fn pow(&self, mut k: u128) -> Self {
        let mut result = Self::identity(&self.ring, self.r);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Coefficients of `det(xI - M)`, low degree first (monic, length `r+1`),
    /// from sums of principal minors.
    pub fn charpoly(&self) -> Vec<u32> {
        let r = self.r;
        let ring = &self.ring;
        let mut out = vec![0; r + 1];
        out[r] = ring.one();
        for k in 1..=r {
            let mut sum = 0;
            for subset in subsets(r, k) {
                sum = ring.add(sum, self.minor(&subset, &subset));
            }
            out[r - k] = if k % 2 == 0 { sum } else { ring.neg(sum) };
        }
        out
    }

    /// Multiplicative order, if at most `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let id = Self::identity(&self.ring, self.r);
        let mut x = self.clone();
        for k in 1..=cap {
            if x == id {
                return Some(k);
            }
            x = x.mul_unchecked(self);
        }
        None
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `|GL_r(A/nA)| = prod_{P^a || n} q^{deg P (a-1) r^2} prod_{i<r} (Q^r - Q^i)`,
/// `Q = q^{deg P}`.
pub fn gl_order(q: u64, r: usize, n: &OperatorPoly) -> Result<u128> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let overflow = || Error::OverflowGuard { degree: u128::MAX, cap: u128::MAX };
    let mut total: u128 = 1;
    if n.deg0() == 0 {
        return Ok(1);
    }
    for (pp, a) in n.factor()? {
        let d = pp.deg0() as u32;
        let big_q = (q as u128).checked_pow(d).ok_or_else(overflow)?;
        let r32 = r as u32;
        let unipotent = (q as u128)
            .checked_pow(d * (a as u32 - 1) * r32 * r32)
            .ok_or_else(overflow)?;
        let mut gl = unipotent;
        let qr = big_q.checked_pow(r32).ok_or_else(overflow)?;
        for i in 0..r32 {
            gl = gl.checked_mul(qr - big_q.pow(i)).ok_or_else(overflow)?;
        }
        total = total.checked_mul(gl).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// A finite matrix group, enumerated explicitly.
#[derive(Clone)]
pub struct GroupClosure {
    ring: Arc<ResidueRing>,
    r: usize,
    generators: Vec<ResidueMatrix>,
    elements: Vec<ResidueMatrix>,
    index: HashMap<Vec<u32>, usize>,
    cap_hit: bool,
}

impl fmt::Debug for GroupClosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "group of order {}{} in GL_{}({:?})",
            self.elements.len(),
            if self.cap_hit { "+ (cap hit)" } else { "" },
            self.r,
            self.ring
        )
    }
}

impl GroupClosure {
    fn from_elements(ring: &Arc<ResidueRing>, r: usize, generators: Vec<ResidueMatrix>, elements: Vec<ResidueMatrix>) -> Self {
        let index = elements.iter().enumerate().map(|(i, m)| (m.entries.clone(), i)).collect();
        GroupClosure { ring: ring.clone(), r, generators, elements, index, cap_hit: false }
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.r
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ResidueMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[ResidueMatrix] {
        &self.generators
    }

    pub fn cap_hit(&self) -> bool {
        self.cap_hit
    }

    pub fn contains(&self, m: &ResidueMatrix) -> bool {
        self.index.contains_key(&m.entries)
    }

    /// Whether this is all of `GL_r(A/nA)`; `None` if the closure was cut off.
    pub fn is_full(&self) -> Option<bool> {
        if self.cap_hit {
            return None;
        }
        let full = gl_order(self.ring.q, self.r, &self.ring.n).ok()?;
        Some(self.elements.len() as u128 == full)
    }

    /// Element set as sorted code vectors, for order-independent comparison.
    pub fn element_keys(&self) -> Vec<Vec<u32>> {
        let mut keys: Vec<Vec<u32>> = self.elements.iter().map(|m| m.entries.clone()).collect();
        keys.sort();
        keys
    }

    fn require_complete(&self) -> Result<()> {
        if self.cap_hit {
            return Err(Error::CapExceeded(format!("group closure stopped at {} elements", self.order())));
        }
        Ok(())
    }
}

/// Breadth-first closure of `gens` under multiplication. If more than `cap`
/// elements appear, the partial set is returned with `cap_hit` set.
pub fn closure(ring: &Arc<ResidueRing>, r: usize, gens: &[ResidueMatrix], cap: usize) -> Result<GroupClosure> {
    for g in gens {
        if g.r != r || *g.ring != **ring {
            return Err(Error::Precondition("generator over a different ring or size".into()));
        }
        if !g.is_invertible() {
            return Err(Error::NotInvertible);
        }
    }
    let id = ResidueMatrix::identity(ring, r);
    let mut out = GroupClosure::from_elements(ring, r, gens.to_vec(), vec![id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul_unchecked(g);
            if out.index.contains_key(&y.entries) {
                continue;
            }
            if out.elements.len() >= cap {
                out.cap_hit = true;
                return Ok(out);
            }
            out.index.insert(y.entries.clone(), out.elements.len());
            out.elements.push(y.clone());
            queue.push_back(y);
        }
    }
    Ok(out)
}

fn enumerate_matrices(
    ring: &Arc<ResidueRing>,
    r: usize,
    cap: usize,
    keep: impl Fn(&ResidueMatrix) -> bool,
) -> Result<GroupClosure> {
    let s = ring.size() as u128;
    let total = s
        .checked_pow((r * r) as u32)
        .filter(|&t| t <= cap as u128)
        .ok_or_else(|| Error::CapExceeded(format!("{}^{} candidate matrices", s, r * r)))?;
    let mut elements = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let entries = (0..r * r)
            .map(|_| {
                let c = (rest % s) as u32;
                rest /= s;
                c
            })
            .collect();
        let m = ResidueMatrix { ring: ring.clone(), r, entries };
        if keep(&m) {
            elements.push(m);
        }
    }
    Ok(GroupClosure::from_elements(ring, r, Vec::new(), elements))
}

/// `GL_r(A/nA)` by enumeration.
pub fn general_linear(q: u64, r: usize, n: &OperatorPoly, cap: usize) -> Result<GroupClosure> {
    let ring = ResidueRing::new(q, n)?;
    enumerate_matrices(&ring, r, cap, |m| m.is_invertible())
}

/// `SL_r(A/nA)` by enumeration.
pub fn special_linear(q: u64, r: usize, n: &OperatorPoly, cap: usize) -> Result<GroupClosure> {
    let ring = ResidueRing::new(q, n)?;
    let one = ring.one();
    enumerate_matrices(&ring, r, cap, |m| m.det() == one)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelKind {
    /// `G_r(n) = ker(GL_r(A/tnA) -> GL_r(A/tA))`.
    G,
    /// `S_r(n) = ker(SL_r(A/tnA) -> SL_r(A/tA))`.
    S,
}

/// The kernel of reduction mod `t`, enumerated as `{I + t X}` over `A/tnA`.
pub fn kernel_subgroup(kind: KernelKind, q: u64, r: usize, n: &OperatorPoly, cap: usize) -> Result<GroupClosure> {
    let fq = operator_field(q)?;
    let tn = OperatorPoly::var(&fq).mul(n);
    let ring = ResidueRing::new(q, &tn)?;
    let small = ResidueRing::new(q, n)?;
    let s = small.size() as u128;
    let total = s
        .checked_pow((r * r) as u32)
        .filter(|&t| t <= cap as u128)
        .ok_or_else(|| Error::CapExceeded(format!("{}^{} kernel candidates", s, r * r)))?;
    let t = OperatorPoly::var(&fq);
    let lift: Vec<u32> = (0..s as u32)
        .map(|c| ring.code(&t.mul(&small.elem(c))))
        .collect::<Result<_>>()?;
    let id = ResidueMatrix::identity(&ring, r);
    let one = ring.one();
    let mut elements = Vec::new();
    for idx in 0..total {
        let mut rest = idx;
        let mut m = id.clone();
        for e in m.entries.iter_mut() {
            let c = (rest % s) as usize;
            rest /= s;
            *e = ring.add(*e, lift[c]);
        }
        let det = m.det();
        let keep = match kind {
            KernelKind::G => ring.is_unit(det),
            KernelKind::S => det == one,
        };
        if keep {
            elements.push(m);
        }
    }
    Ok(GroupClosure::from_elements(&ring, r, Vec::new(), elements))
}

fn commutator(a: &ResidueMatrix, a_inv: &ResidueMatrix, b: &ResidueMatrix, b_inv: &ResidueMatrix) -> ResidueMatrix {
    a_inv.mul_unchecked(b_inv).mul_unchecked(a).mul_unchecked(b)
}

/// The derived subgroup `[G, G]`.
pub fn derived_subgroup(g: &GroupClosure) -> Result<GroupClosure> {
    g.require_complete()?;
    if g.order() <= ALL_COMMUTATORS_LIMIT {
        let inv: Vec<ResidueMatrix> = g.elements.iter().map(|x| x.inv()).collect::<Result<_>>()?;
        let mut seen = HashSet::new();
        let mut gens = Vec::new();
        for (a, ai) in g.elements.iter().zip(&inv) {
            for (b, bi) in g.elements.iter().zip(&inv) {
                let c = commutator(a, ai, b, bi);
                if !c.is_identity() && seen.insert(c.entries.clone()) {
                    gens.push(c);
                }
            }
        }
        return closure(&g.ring, g.r, &gens, g.order());
    }
    if g.generators.is_empty() || g.generators.len() > 64 {
        return Err(Error::CapExceeded(format!(
            "derived subgroup of an enumerated group of order {} without a small generating set",
            g.order()
        )));
    }
    // normal closure of the generator commutators
    let gi: Vec<ResidueMatrix> = g.generators.iter().map(|x| x.inv()).collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for (a, ai) in g.generators.iter().zip(&gi) {
        for (b, bi) in g.generators.iter().zip(&gi) {
            let c = commutator(a, ai, b, bi);
            if !c.is_identity() {
                gens.push(c);
            }
        }
    }
    let mut d = closure(&g.ring, g.r, &gens, g.order())?;
    loop {
        let mut added = false;
        for (x, xi) in g.generators.iter().zip(&gi) {
            for s in d.generators.clone() {
                let conj = xi.mul_unchecked(&s).mul_unchecked(x);
                if !d.contains(&conj) {
                    gens.push(conj);
                    added = true;
                }
            }
        }
        if !added {
            return Ok(d);
        }
        d = closure(&g.ring, g.r, &gens, g.order())?;
    }
}

/// `|G / [G, G]|`.
pub fn abelianization_order(g: &GroupClosure) -> Result<u128> {
    let d = derived_subgroup(g)?;
    d.require_complete()?;
    Ok(g.order() as u128 / d.order() as u128)
}

// ---------------------------------------------------------------------------
// Subgroup lattice and certification

type Bits = Vec<u64>;

fn bit_get(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn bits_meet(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

struct Subgroup {
    bits: Bits,
    gens: Vec<u16>,
    order: usize,
}

/// All subgroups of a group of order at most [`LATTICE_CAP`], found as joins
/// of cyclic subgroups iterated to a fixpoint.
pub struct SubgroupLattice {
    group: GroupClosure,
    table: Vec<u16>,
    inverse: Vec<u16>,
    subgroups: Vec<Subgroup>,
}

impl SubgroupLattice {
    pub fn new(group: GroupClosure) -> Result<Self> {
        group.require_complete()?;
        let n = group.order();
        if n as u128 > LATTICE_CAP {
            return Err(Error::CapExceeded(format!("subgroup lattice of a group of order {n}")));
        }
        let mut table = vec![0u16; n * n];
        for (i, a) in group.elements.iter().enumerate() {
            for (j, b) in group.elements.iter().enumerate() {
                let c = a.mul_unchecked(b);
                let k = *group.index.get(&c.entries).ok_or_else(|| {
                    Error::InternalInvariantViolation("element set is not closed".into())
                })?;
                table[i * n + j] = k as u16;
            }
        }
        let id_idx = *group
            .index
            .get(&ResidueMatrix::identity(&group.ring, group.r).entries)
            .ok_or_else(|| Error::InternalInvariantViolation("identity missing".into()))?;
        let inverse = (0..n)
            .map(|i| (0..n).find(|&j| table[i * n + j] as usize == id_idx).map(|j| j as u16))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InternalInvariantViolation("element without inverse".into()))?;
        let mut lattice = SubgroupLattice { group, table, inverse, subgroups: Vec::new() };
        lattice.build(id_idx);
        Ok(lattice)
    }

    fn words(&self) -> usize {
        self.group.order().div_ceil(64)
    }

    fn close(&self, gens: &[u16], id_idx: usize) -> Bits {
        let n = self.group.order();
        let mut bits = vec![0u64; self.words()];
        bit_set(&mut bits, id_idx);
        let mut queue = VecDeque::from([id_idx]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x * n + g as usize] as usize;
                if !bit_get(&bits, y) {
                    bit_set(&mut bits, y);
                    queue.push_back(y);
                }
            }
        }
        bits
    }

    fn build(&mut self, id_idx: usize) {
        let n = self.group.order();
        let mut seen: HashMap<Bits, usize> = HashMap::new();
        let mut cyclic: Vec<u16> = Vec::new();
        for g in 0..n {
            let bits = self.close(&[g as u16], id_idx);
            if !seen.contains_key(&bits) {
                seen.insert(bits.clone(), self.subgroups.len());
                let order = bits.iter().map(|w| w.count_ones() as usize).sum();
                let gens = if g == id_idx { Vec::new() } else { vec![g as u16] };
                self.subgroups.push(Subgroup { bits, gens, order });
                if g != id_idx {
                    cyclic.push(g as u16);
                }
            }
        }
        let mut next = 0;
        while next < self.subgroups.len() {
            for &c in &cyclic {
                if bit_get(&self.subgroups[next].bits, c as usize) {
                    continue;
                }
                let mut gens = self.subgroups[next].gens.clone();
                gens.push(c);
                let bits = self.close(&gens, id_idx);
                if !seen.contains_key(&bits) {
                    seen.insert(bits.clone(), self.subgroups.len());
                    let order = bits.iter().map(|w| w.count_ones() as usize).sum();
                    self.subgroups.push(Subgroup { bits, gens, order });
                }
            }
            next += 1;
        }
    }

    pub fn group(&self) -> &GroupClosure {
        &self.group
    }

    /// Number of subgroups, including the trivial and the whole group.
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Subgroup orders, sorted.
    pub fn orders(&self) -> Vec<usize> {
        let mut o: Vec<usize> = self.subgroups.iter().map(|s| s.order).collect();
        o.sort_unstable();
        o
    }

    /// Conjugacy class of `x` as a bitset.
    fn class_of(&self, x: usize) -> Bits {
        let n = self.group.order();
        let mut bits = vec![0u64; self.words()];
        for g in 0..n {
            let gx = self.table[g * n + x] as usize;
            let y = self.table[gx * n + self.inverse[g] as usize] as usize;
            bit_set(&mut bits, y);
        }
        bits
    }
}

/// How a certification verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "subgroup-lattice")]
    SubgroupLattice,
    #[serde(rename = "abelian-shortcut")]
    AbelianShortcut,
    #[serde(rename = "generated-subgroup-heuristic")]
    GeneratedSubgroupHeuristic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Certified,
    Inconclusive,
}

/// Incremental certification against `GL_r(A/nA)`: feed Frobenius class
/// representatives one at a time and ask whether any proper subgroup still
/// meets every class seen.
pub struct Certifier {
    ring: Arc<ResidueRing>,
    r: usize,
    full_order: u128,
    method: Method,
    lattice: Option<SubgroupLattice>,
    /// For each subgroup index: proper and meeting every class so far.
    alive: Vec<bool>,
    classes: Vec<Bits>,
    reps: Vec<ResidueMatrix>,
    verdict: Verdict,
    note: String,
}

impl Certifier {
    pub fn new(q: u64, r: usize, n: &OperatorPoly) -> Result<Self> {
        let ring = ResidueRing::new(q, n)?;
        let full_order = gl_order(q, r, n)?;
        let mut c = Certifier {
            ring,
            r,
            full_order,
            method: Method::GeneratedSubgroupHeuristic,
            lattice: None,
            alive: Vec::new(),
            classes: Vec::new(),
            reps: Vec::new(),
            verdict: Verdict::Inconclusive,
            note: String::new(),
        };
        if full_order == 1 {
            c.method = if r == 1 { Method::AbelianShortcut } else { Method::SubgroupLattice };
            c.verdict = Verdict::Certified;
            c.note = "trivial group".into();
        } else if r == 1 {
            c.method = Method::AbelianShortcut;
        } else if full_order <= LATTICE_CAP {
            let g = general_linear(q, r, n, DEFAULT_GROUP_CAP)?;
            if g.order() as u128 != full_order {
                return Err(Error::InternalInvariantViolation(format!(
                    "enumerated {} elements, order formula gives {full_order}",
                    g.order()
                )));
            }
            let lattice = SubgroupLattice::new(g)?;
            c.alive = lattice.subgroups.iter().map(|s| (s.order as u128) < full_order).collect();
            c.lattice = Some(lattice);
            c.method = Method::SubgroupLattice;
        } else {
            c.note = format!("|GL_{r}| = {full_order} exceeds the lattice cap {LATTICE_CAP}");
        }
        Ok(c)
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    pub fn group_order(&self) -> u128 {
        self.full_order
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn note(&self) -> &str {
        &self.note
    }

    /// Number of distinct conjugacy classes (or, for rank one, distinct
    /// elements) fed so far.
    pub fn class_count(&self) -> usize {
        match self.lattice {
            Some(_) => self.classes.len(),
            None => self.reps.len(),
        }
    }

    /// Proper subgroups still meeting every class (lattice method only).
    pub fn obstructions(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    pub fn add(&mut self, rep: &ResidueMatrix) -> Result<Verdict> {
        if rep.r != self.r || *rep.ring != *self.ring {
            return Err(Error::Precondition("representative over a different ring or size".into()));
        }
        if !rep.is_invertible() {
            return Err(Error::NotInvertible);
        }
        if self.verdict == Verdict::Certified {
            return Ok(self.verdict);
        }
        match &self.lattice {
            Some(lattice) => {
                let x = *lattice.group.index.get(&rep.entries).ok_or_else(|| {
                    Error::InternalInvariantViolation("invertible matrix missing from GL".into())
                })?;
                let class = lattice.class_of(x);
                if self.classes.contains(&class) {
                    return Ok(self.verdict);
                }
                for (alive, s) in self.alive.iter_mut().zip(&lattice.subgroups) {
                    if *alive && !bits_meet(&s.bits, &class) {
                        *alive = false;
                    }
                }
                self.classes.push(class);
                if !self.alive.contains(&true) {
                    self.verdict = Verdict::Certified;
                }
            }
            None => {
                if self.reps.contains(rep) {
                    return Ok(self.verdict);
                }
                self.reps.push(rep.clone());
                let g = closure(&self.ring, self.r, &self.reps, DEFAULT_GROUP_CAP)?;
                self.note = format!("generated subgroup of order {}", g.order());
                // conjugacy is trivial only in rank one
                if self.r == 1 && !g.cap_hit && g.order() as u128 == self.full_order {
                    self.verdict = Verdict::Certified;
                }
            }
        }
        Ok(self.verdict)
    }
}

/// Outcome of [`conjugacy_certify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOutcome {
    pub verdict: Verdict,
    pub method: Method,
    pub group_order: u128,
}

/// Certified iff no proper subgroup of `GL_r(A/nA)` meets the conjugacy class
/// of every representative.
pub fn conjugacy_certify(reps: &[ResidueMatrix], q: u64, r: usize, n: &OperatorPoly) -> Result<CertifyOutcome> {
    let mut c = Certifier::new(q, r, n)?;
    for rep in reps {
        c.add(rep)?;
    }
    Ok(CertifyOutcome { verdict: c.verdict(), method: c.method(), group_order: c.group_order() })
}

/// Bookkeeping for `|G_r(n)| = |S_r(n)| |G_1(n)|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelFactorization {
    pub g_order: u128,
    pub s_order: u128,
    pub g1_order: u128,
    pub gl_t_order: u128,
    pub gl_tn_order: u128,
    /// `det(G_r(n)) = G_1(n)`.
    pub det_onto: bool,
    /// `ker(det) = S_r(n)`.
    pub det_kernel: bool,
    pub holds: bool,
}

pub fn kernel_factorization_check(q: u64, r: usize, n: &OperatorPoly) -> Result<KernelFactorization> {
    let g = kernel_subgroup(KernelKind::G, q, r, n, DEFAULT_GROUP_CAP)?;
    let s = kernel_subgroup(KernelKind::S, q, r, n, DEFAULT_GROUP_CAP)?;
    let g1 = kernel_subgroup(KernelKind::G, q, 1, n, DEFAULT_GROUP_CAP)?;
    let fq = operator_field(q)?;
    let t = OperatorPoly::var(&fq);
    let gl_t_order = gl_order(q, r, &t)?;
    let gl_tn_order = gl_order(q, r, &t.mul(n))?;
    let one = g.ring.one();
    let dets: HashSet<u32> = g.elements.iter().map(|m| m.det()).collect();
    let g1_set: HashSet<u32> = g1.elements.iter().map(|m| m.get(0, 0)).collect();
    let det_onto = dets == g1_set;
    let mut kernel: Vec<Vec<u32>> =
        g.elements.iter().filter(|m| m.det() == one).map(|m| m.entries.clone()).collect();
    kernel.sort();
    let det_kernel = kernel == s.element_keys();
    let (go, so, g1o) = (g.order() as u128, s.order() as u128, g1.order() as u128);
    let holds = det_onto && det_kernel && go == so * g1o && go * gl_t_order == gl_tn_order;
    Ok(KernelFactorization {
        g_order: go,
        s_order: so,
        g1_order: g1o,
        gl_t_order,
        gl_tn_order,
        det_onto,
        det_kernel,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(q: u64, c: &[u64]) -> OperatorPoly {
        DensePoly::from_ints(&operator_field(q).unwrap(), c)
    }

    fn mat(ring: &Arc<ResidueRing>, rows: &[&[u32]]) -> ResidueMatrix {
        let r = rows.len();
        ResidueMatrix::from_codes(ring, r, rows.iter().flat_map(|x| x.iter().copied()).collect()).unwrap()
    }

    #[test]
    fn matrix_arithmetic_examples() {
        let ring = ResidueRing::new(2, &op(2, &[0, 1])).unwrap();
        assert_eq!(ResidueMatrix::identity(&ring, 2).det(), 1);
        let m = mat(&ring, &[&[0, 1], &[1, 1]]);
        assert_eq!(m.inv().unwrap(), mat(&ring, &[&[1, 1], &[1, 0]]));
        assert_eq!(m.order(100), Some(3));
        assert_eq!(m.charpoly(), vec![1, 1, 1]);
        let singular = mat(&ring, &[&[1, 1], &[1, 1]]);
        assert_eq!(singular.inv().unwrap_err(), Error::NotInvertible);

        let ring = ResidueRing::new(2, &op(2, &[0, 0, 1])).unwrap();
        let t1 = ring.code(&op(2, &[1, 1])).unwrap();
        let d = ResidueMatrix::from_codes(&ring, 2, vec![t1, 0, 0, 1]).unwrap().det();
        assert_eq!(ring.elem(d), op(2, &[1, 1]));
        assert!(ring.is_unit(d));
    }

    #[test]
    fn gl_order_examples() {
        assert_eq!(gl_order(2, 2, &op(2, &[0, 1])).unwrap(), 6);
        assert_eq!(gl_order(3, 2, &op(3, &[0, 1])).unwrap(), 48);
        assert_eq!(gl_order(2, 2, &op(2, &[0, 0, 1])).unwrap(), 96);
        assert_eq!(gl_order(2, 3, &op(2, &[0, 1])).unwrap(), 168);
        assert_eq!(gl_order(2, 2, &op(2, &[1, 1, 1])).unwrap(), 180);
        assert_eq!(gl_order(2, 2, &op(2, &[1])).unwrap(), 1);
    }

    #[test]
    fn kernel_examples() {
        let t = op(2, &[0, 1]);
        assert_eq!(kernel_subgroup(KernelKind::G, 2, 2, &t, DEFAULT_GROUP_CAP).unwrap().order(), 16);
        assert_eq!(kernel_subgroup(KernelKind::S, 2, 2, &t, DEFAULT_GROUP_CAP).unwrap().order(), 8);
        assert_eq!(kernel_subgroup(KernelKind::G, 2, 2, &op(2, &[1]), DEFAULT_GROUP_CAP).unwrap().order(), 1);
        let t3 = op(3, &[0, 1]);
        assert_eq!(kernel_subgroup(KernelKind::G, 3, 2, &t3, DEFAULT_GROUP_CAP).unwrap().order(), 81);
        assert_eq!(kernel_subgroup(KernelKind::S, 3, 2, &t3, DEFAULT_GROUP_CAP).unwrap().order(), 27);
        assert_eq!(kernel_subgroup(KernelKind::G, 3, 1, &t3, DEFAULT_GROUP_CAP).unwrap().order(), 3);
    }

    #[test]
    fn closure_examples() {
        let ring = ResidueRing::new(2, &op(2, &[0, 1])).unwrap();
        let id = ResidueMatrix::identity(&ring, 2);
        assert_eq!(closure(&ring, 2, &[id], 100).unwrap().order(), 1);
        let a = mat(&ring, &[&[0, 1], &[1, 1]]);
        let b = mat(&ring, &[&[0, 1], &[1, 0]]);
        assert_eq!(closure(&ring, 2, std::slice::from_ref(&a), 100).unwrap().order(), 3);
        let g = closure(&ring, 2, &[a.clone(), b.clone()], 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.is_full(), Some(true));
        let g2 = closure(&ring, 2, &[b, a], 100).unwrap();
        assert_eq!(g.element_keys(), g2.element_keys());
        let capped = closure(&ring, 2, g.generators(), 4).unwrap();
        assert!(capped.cap_hit());
        assert!(abelianization_order(&capped).is_err());
    }

    #[test]
    fn abelianization_of_small_special_linear_groups() {
        let t2 = op(2, &[0, 1]);
        let sl = special_linear(2, 2, &t2, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(abelianization_order(&sl).unwrap(), 2);
        let sl = special_linear(3, 2, &op(3, &[0, 1]), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(sl.order(), 24);
        assert_eq!(abelianization_order(&sl).unwrap(), 3);
        let sl = special_linear(4, 2, &op(4, &[0, 1]), DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(sl.order(), 60);
        assert_eq!(abelianization_order(&sl).unwrap(), 1);
    }

    #[test]
    fn normal_closure_route_agrees() {
        let ring = ResidueRing::new(3, &op(3, &[0, 1])).unwrap();
        // SL_2(F_3) from two elementary matrices
        let gens = vec![mat(&ring, &[&[1, 1], &[0, 1]]), mat(&ring, &[&[1, 0], &[1, 1]])];
        let g = closure(&ring, 2, &gens, 1000).unwrap();
        assert_eq!(g.order(), 24);
        let direct = derived_subgroup(&g).unwrap();
        let mut g_big = g.clone();
        // force the generator route
        g_big.elements.extend(std::iter::repeat_n(g.elements[0].clone(), ALL_COMMUTATORS_LIMIT));
        let via_gens = derived_subgroup(&g_big).unwrap();
        assert_eq!(direct.element_keys(), via_gens.element_keys());
        assert_eq!(direct.order(), 8);
    }

    #[test]
    fn lattice_of_s3() {
        let g = general_linear(2, 2, &op(2, &[0, 1]), 100).unwrap();
        let lat = SubgroupLattice::new(g).unwrap();
        assert_eq!(lat.orders(), vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn certification_on_s3() {
        let t = op(2, &[0, 1]);
        let ring = ResidueRing::new(2, &t).unwrap();
        let three = mat(&ring, &[&[0, 1], &[1, 1]]);
        let two = mat(&ring, &[&[0, 1], &[1, 0]]);
        let both = conjugacy_certify(&[three.clone(), two], 2, 2, &t).unwrap();
        assert_eq!(both.verdict, Verdict::Certified);
        assert_eq!(both.method, Method::SubgroupLattice);
        let one = conjugacy_certify(&[three], 2, 2, &t).unwrap();
        assert_eq!(one.verdict, Verdict::Inconclusive);
        let trivial_ring = ResidueRing::new(2, &op(2, &[1])).unwrap();
        let id = ResidueMatrix::identity(&trivial_ring, 2);
        assert_eq!(conjugacy_certify(&[id], 2, 2, &op(2, &[1])).unwrap().verdict, Verdict::Certified);
    }

    #[test]
    fn kernel_factorization_examples() {
        let k = kernel_factorization_check(2, 2, &op(2, &[0, 1])).unwrap();
        assert_eq!((k.g_order, k.s_order, k.g1_order, k.gl_t_order, k.gl_tn_order), (16, 8, 2, 6, 96));
        assert!(k.holds);
        let k = kernel_factorization_check(2, 2, &op(2, &[1])).unwrap();
        assert_eq!((k.g_order, k.s_order, k.g1_order), (1, 1, 1));
        assert!(k.holds);
        let k = kernel_factorization_check(3, 2, &op(3, &[0, 1])).unwrap();
        assert_eq!((k.g_order, k.s_order, k.g1_order), (81, 27, 3));
        assert!(k.holds);
    }
}
