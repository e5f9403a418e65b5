//! Bare polynomial arithmetic over a prime field, on `Vec<u32>` coefficient
//! vectors (low degree first, no trailing zeros).
//!
//! This is the layer underneath [`crate::ff`]: modulus search, irreducibility
//! testing and inversion in extension fields all happen here.

pub(crate) fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n)
        .map(|i| {
            let x = *a.get(i).unwrap_or(&0) as u64 + p as u64 - *b.get(i).unwrap_or(&0) as u64;
            (x % p as u64) as u32
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let p64 = p as u64;
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p64;
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|v| v as u32).collect();
    trim(&mut out);
    out
}

/// Division with remainder; `b` must be nonzero.
pub(crate) fn divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let p64 = p as u64;
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p) as u64;
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let mut q = vec![0u32; a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db] % p64 * lead_inv % p64;
        q[k] = c as u32;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + (p64 - c) * bj as u64) % p64;
        }
    }
    let mut rem: Vec<u32> = r.into_iter().take(db).map(|v| v as u32).collect();
    trim(&mut rem);
    trim(&mut q);
    (q, rem)
}

pub(crate) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    divrem(a, b, p).1
}

pub(crate) fn make_monic(a: &[u32], p: u32) -> Vec<u32> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let li = inv_mod(l, p) as u64;
            a.iter().map(|&x| (x as u64 * li % p as u64) as u32).collect()
        }
    }
}

/// Monic gcd.
pub(crate) fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&x, p)
}

/// Returns `(g, s)` with `s * a = g (mod m)`, `g` monic gcd.
pub(crate) fn ext_gcd_left(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r0 = m.to_vec();
    let mut r1 = a.to_vec();
    let mut s0: Vec<u32> = Vec::new();
    let mut s1: Vec<u32> = vec![1];
    trim(&mut r1);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.is_empty() {
        return (r0, s0);
    }
    let li = inv_mod(*r0.last().unwrap(), p) as u64;
    let scale = |v: &[u32]| -> Vec<u32> {
        let mut out: Vec<u32> = v.iter().map(|&x| (x as u64 * li % p as u64) as u32).collect();
        trim(&mut out);
        out
    };
    (scale(&r0), scale(&s0))
}

pub(crate) fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(base: &[u32], mut e: u128, m: &[u32], p: u32) -> Vec<u32> {
    let mut result = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(&result, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// Ben-Or irreducibility test for a polynomial of degree >= 1.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = x.clone();
    for _ in 0..deg / 2 {
        h = powmod(&h, p as u128, f, p);
        let g = gcd(f, &sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The monic irreducible of degree `e` whose lower coefficients, read as a
/// base-`p` integer with `c_0` least significant, are minimal.
pub(crate) fn min_irreducible(p: u32, e: usize) -> Vec<u32> {
    let mut digits = vec![0u32; e];
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment the base-p counter
        let mut i = 0;
        loop {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
            assert!(i < e, "no irreducible polynomial found");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_irreducible_small_cases() {
        assert_eq!(min_irreducible(2, 1), vec![0, 1]);
        assert_eq!(min_irreducible(2, 2), vec![1, 1, 1]);
        assert_eq!(min_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(min_irreducible(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(min_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn irreducibility_matches_root_check_for_cubics() {
        for p in [2u32, 3, 5] {
            for c0 in 0..p {
                for c1 in 0..p {
                    for c2 in 0..p {
                        let f = vec![c0, c1, c2, 1];
                        let has_root = (0..p as u64).any(|x| {
                            let v = (c0 as u64 + c1 as u64 * x + c2 as u64 * x * x + x * x * x)
                                % p as u64;
                            v == 0
                        });
                        assert_eq!(is_irreducible(&f, p), !has_root, "{f:?} mod {p}");
                    }
                }
            }
        }
    }

    #[test]
    fn ext_gcd_gives_inverse() {
        let m = vec![1, 1, 0, 1];
        let a = vec![0, 1, 1];
        let (g, s) = ext_gcd_left(&a, &m, 2);
        assert_eq!(g, vec![1]);
        assert_eq!(mulmod(&a, &s, &m, 2), vec![1]);
    }
}
