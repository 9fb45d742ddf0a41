//! The prime-power base field GF(q), q ≤ 256, held as full lookup tables.

use crate::error::{Error, Result};

pub const MAX_BASE_ORDER: usize = 256;

/// GF(q) for a prime power q ≤ 256.
///
/// Elements are `u8` values in `0..q`. For prime q they are residues mod q;
/// for q = p^e they pack the base-p digits of a polynomial over GF(p) taken
/// modulo a fixed irreducible of degree e (the lexicographically smallest one).
#[derive(Clone)]
pub struct BaseField {
    q: usize,
    p: usize,
    degree: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl std::fmt::Debug for BaseField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q
    }
}

impl Eq for BaseField {}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

impl BaseField {
    pub fn new(q: usize) -> Result<Self> {
        if q > MAX_BASE_ORDER {
            return Err(Error::InvalidField(format!("q = {q} exceeds {MAX_BASE_ORDER}")));
        }
        let (p, degree) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("q = {q} is not a prime power")))?;

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let reducer = if degree > 1 {
            Some(smallest_irreducible_gfp(p, degree))
        } else {
            None
        };
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = digit_add(a, b, p, degree) as u8;
                mul[a * q + b] = match &reducer {
                    None => ((a * b) % p) as u8,
                    Some(f) => packed_poly_mul(a, b, p, degree, f) as u8,
                };
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8;
            if a != 0 {
                inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
            }
        }
        Ok(Self {
            q,
            p,
            degree,
            add,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> usize {
        self.p
    }

    /// Degree of GF(q) over its prime field.
    #[inline]
    pub fn prime_degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        if self.p == 2 {
            a ^ b
        } else {
            self.add[a as usize * self.q + b as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// Multiplicative inverse. Zero maps to zero; use [`BaseField::checked_inv`]
    /// where zero must be rejected.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn checked_inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.inv(a))
        }
    }

    /// `acc[i] += c * src[i]` over the whole slice.
    #[inline]
    pub fn axpy(&self, acc: &mut [u8], c: u8, src: &[u8]) {
        if c == 0 {
            return;
        }
        if self.p == 2 && c == 1 {
            for (a, s) in acc.iter_mut().zip(src) {
                *a ^= *s;
            }
            return;
        }
        let row = &self.mul[c as usize * self.q..(c as usize + 1) * self.q];
        for (a, s) in acc.iter_mut().zip(src) {
            *a = self.add(*a, row[*s as usize]);
        }
    }

    pub fn contains(&self, v: u64) -> bool {
        (v as usize) < self.q
    }
}

fn digit_add(mut a: usize, mut b: usize, p: usize, degree: usize) -> usize {
    let mut out = 0;
    let mut scale = 1;
    for _ in 0..degree {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    out
}

fn unpack(mut v: usize, p: usize, len: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(len);
    for _ in 0..len {
        d.push(v % p);
        v /= p;
    }
    d
}

fn pack(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// Product of packed polynomials `a`, `b` over GF(p) modulo the monic `f` (low first).
fn packed_poly_mul(a: usize, b: usize, p: usize, degree: usize, f: &[usize]) -> usize {
    let da = unpack(a, p, degree);
    let db = unpack(b, p, degree);
    let mut prod = vec![0usize; 2 * degree];
    for (i, x) in da.iter().enumerate() {
        for (j, y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (degree..2 * degree).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (i, fi) in f.iter().enumerate().take(degree) {
            let idx = top - degree + i;
            prod[idx] = (prod[idx] + p * p - c * fi % p) % p;
        }
        prod[top] = 0;
    }
    pack(&prod[..degree], p)
}

/// Remainder of `a` modulo `b` over GF(p), both low-first, `b` nonzero.
pub(crate) fn gfp_poly_rem(a: &[usize], b: &[usize], p: usize) -> Vec<usize> {
    let mut r: Vec<usize> = a.to_vec();
    let db = b.iter().rposition(|&c| c != 0).expect("nonzero divisor");
    let lead_inv = (1..p).find(|&x| x * b[db] % p == 1).unwrap();
    loop {
        let Some(dr) = r.iter().rposition(|&c| c != 0) else {
            return r;
        };
        if dr < db {
            return r;
        }
        let c = r[dr] * lead_inv % p;
        for (i, bi) in b.iter().enumerate().take(db + 1) {
            let idx = dr - db + i;
            r[idx] = (r[idx] + p * p - c * bi % p) % p;
        }
    }
}

/// Smallest monic irreducible of degree `e` over GF(p), low first with the leading 1.
fn smallest_irreducible_gfp(p: usize, e: usize) -> Vec<usize> {
    let count = p.pow(e as u32);
    for low in 0..count {
        let mut f = unpack(low, p, e);
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        if is_irreducible_gfp(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible_gfp(f: &[usize], p: usize) -> bool {
    let e = f.len() - 1;
    for d in 1..=e / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = unpack(low, p, d);
            g.push(1);
            if gfp_poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
