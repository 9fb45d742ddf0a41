//! GF(q^m) as an m-dimensional vector space over GF(q), with elements stored
//! as coordinate vectors in the polynomial basis {1, x, ..., x^(m-1)}.

use std::fmt;

use super::base::{gfp_poly_rem, BaseField};
use super::moduli;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 16;

/// Log/antilog tables are built for fields with at most this many elements.
pub const TABLE_LIMIT: u128 = 1 << 20;

/// An element of GF(q^m). Byte `i` holds the GF(q) coordinate of `x^i`;
/// bytes at positions `>= m` are always zero, so equality is coordinate-wise.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElement(u128);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn coeff(self, i: usize) -> u8 {
        (self.0 >> (8 * i)) as u8
    }

    #[inline]
    fn with_coeff(self, i: usize, c: u8) -> Self {
        let mask = !(0xffu128 << (8 * i));
        FieldElement((self.0 & mask) | ((c as u128) << (8 * i)))
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Raw packed representation (one byte per coordinate).
    #[inline]
    pub fn to_bits(self) -> u128 {
        self.0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({:#x})", self.0)
    }
}

/// Parameters for an extension field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub q: usize,
    pub m: usize,
    /// Monic modulus of degree m over GF(q), low degree first (length m + 1).
    pub modulus: Vec<u8>,
    /// Report elements as powers `w^k` of the class of x (requires x primitive).
    pub primitive_reporting: bool,
}

impl FieldSpec {
    pub fn new(q: usize, m: usize, modulus: Vec<u8>) -> Self {
        Self {
            q,
            m,
            modulus,
            primitive_reporting: false,
        }
    }

    /// Built-in modulus for `(q, m)`; primitive reporting enabled when x is primitive.
    pub fn default_for(q: usize, m: usize) -> Result<Self> {
        let base = BaseField::new(q)?;
        let modulus = moduli::default_modulus(&base, m)?;
        Ok(Self {
            q,
            m,
            modulus,
            primitive_reporting: true,
        })
    }

    /// Parses `q=`, `m=`, `modulus=` lines. A missing modulus selects the built-in one.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut q, mut m, mut modulus) = (None, None, None);
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: idx + 1, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| perr(format!("expected key=value, got {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "q" => q = Some(value.parse().map_err(|_| perr(format!("bad q {value:?}")))?),
                "m" => m = Some(value.parse().map_err(|_| perr(format!("bad m {value:?}")))?),
                "modulus" => {
                    modulus = Some(parse_coefficient_list(value).map_err(perr)?);
                }
                other => return Err(perr(format!("unknown key {other:?}"))),
            }
        }
        let q = q.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing q".into(),
        })?;
        let m = m.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "missing m".into(),
        })?;
        match modulus {
            Some(modulus) => Ok(Self {
                q,
                m,
                modulus,
                primitive_reporting: true,
            }),
            None => Self::default_for(q, m),
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "q={}\nm={}\nmodulus={}\n",
            self.q,
            self.m,
            format_coefficient_list(&self.modulus)
        )
    }
}

pub(crate) fn parse_coefficient_list(value: &str) -> std::result::Result<Vec<u8>, String> {
    value
        .split(',')
        .map(|t| t.trim().parse::<u8>().map_err(|_| format!("bad coefficient {t:?}")))
        .collect()
}

pub(crate) fn format_coefficient_list(c: &[u8]) -> String {
    c.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

struct LogTables {
    /// `exp[k] = g^k` for `0 <= k < order - 1`.
    exp: Vec<FieldElement>,
    /// `log[index(a)]`, undefined at index 0.
    log: Vec<u32>,
}

/// Arithmetic context for GF(q^m). Immutable after construction.
pub struct Field {
    base: BaseField,
    m: usize,
    modulus: Vec<u8>,
    order: u128,
    tables: Option<LogTables>,
    generator: Option<FieldElement>,
    x_primitive: bool,
    reporting: bool,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.base.order(), self.m)
    }
}

impl Field {
    /// Builds the field, verifying the modulus is irreducible.
    pub fn new(spec: &FieldSpec) -> Result<Self> {
        Self::with_base(BaseField::new(spec.q)?, spec, true)
    }

    /// Whether `modulus` is irreducible with x primitive; `None` when reducible.
    pub(crate) fn probe_modulus(base: &BaseField, modulus: &[u8]) -> Option<bool> {
        let spec = FieldSpec::new(base.order(), modulus.len() - 1, modulus.to_vec());
        Self::with_base(base.clone(), &spec, false).ok().map(|f| f.x_primitive)
    }

    fn with_base(base: BaseField, spec: &FieldSpec, tables: bool) -> Result<Self> {
        let m = spec.m;
        if m == 0 || m > MAX_DEGREE {
            return Err(Error::InvalidField(format!("m = {m} outside 1..={MAX_DEGREE}")));
        }
        if spec.modulus.len() != m + 1 {
            return Err(Error::InvalidField(format!(
                "modulus has degree {}, expected {m}",
                spec.modulus.len() as isize - 1
            )));
        }
        if spec.modulus[m] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if let Some(&c) = spec.modulus.iter().find(|&&c| c as usize >= spec.q) {
            return Err(Error::CoordinateOutOfRange {
                value: c as u64,
                q: spec.q,
            });
        }
        let order = (spec.q as u128)
            .checked_pow(m as u32)
            .ok_or_else(|| Error::InvalidField("field order overflows u128".into()))?;
        let mut field = Field {
            base,
            m,
            modulus: spec.modulus.clone(),
            order,
            tables: None,
            generator: None,
            x_primitive: false,
            reporting: false,
        };
        if !field.modulus_is_irreducible() {
            return Err(Error::NotIrreducible);
        }
        field.find_generator()?;
        if tables && order <= TABLE_LIMIT {
            field.build_tables();
        }
        if spec.primitive_reporting {
            if !field.x_primitive {
                return Err(Error::NotPrimitive);
            }
            field.reporting = field.tables.is_some();
        }
        Ok(field)
    }

    /// Convenience constructor using the built-in modulus table.
    pub fn with_default_modulus(q: usize, m: usize) -> Result<Self> {
        Self::new(&FieldSpec::default_for(q, m)?)
    }

    #[inline]
    pub fn base(&self) -> &BaseField {
        &self.base
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.base.order()
    }

    /// Extension degree m.
    #[inline]
    pub fn degree(&self) -> usize {
        self.m
    }

    /// Number of elements q^m.
    #[inline]
    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            q: self.q(),
            m: self.m,
            modulus: self.modulus.clone(),
            primitive_reporting: self.reporting,
        }
    }

    /// Whether the residue class of x generates the multiplicative group.
    pub fn x_is_primitive(&self) -> bool {
        self.x_primitive
    }

    pub fn reports_powers(&self) -> bool {
        self.reporting
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The residue class of x.
    pub fn x(&self) -> FieldElement {
        if self.m == 1 {
            FieldElement(self.base.neg(self.modulus[0]) as u128)
        } else {
            FieldElement::ZERO.with_coeff(1, 1)
        }
    }

    /// A fixed generator of the multiplicative group: x when x is primitive.
    pub fn primitive_element(&self) -> Result<FieldElement> {
        self.generator
            .ok_or_else(|| Error::InvalidField("no primitive element known for this field".into()))
    }

    /// Embeds a GF(q) scalar.
    pub fn scalar(&self, c: u8) -> FieldElement {
        FieldElement(c as u128)
    }

    pub fn from_coords(&self, coords: &[u8]) -> Result<FieldElement> {
        if coords.len() != self.m {
            return Err(crate::error::shape_err(self.m, coords.len()));
        }
        let mut out = FieldElement::ZERO;
        for (i, &c) in coords.iter().enumerate() {
            if c as usize >= self.q() {
                return Err(Error::CoordinateOutOfRange {
                    value: c as u64,
                    q: self.q(),
                });
            }
            out = out.with_coeff(i, c);
        }
        Ok(out)
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u8> {
        (0..self.m).map(|i| a.coeff(i)).collect()
    }

    /// Packs the coordinates as the integer Σ c_i q^i.
    pub fn index(&self, a: FieldElement) -> u128 {
        let q = self.q() as u128;
        (0..self.m).rev().fold(0u128, |acc, i| acc * q + a.coeff(i) as u128)
    }

    pub fn from_index(&self, mut idx: u128) -> FieldElement {
        let q = self.q() as u128;
        let mut out = FieldElement::ZERO;
        for i in 0..self.m {
            out = out.with_coeff(i, (idx % q) as u8);
            idx /= q;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.base.characteristic() == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let mut out = FieldElement::ZERO;
        for i in 0..self.m {
            out = out.with_coeff(i, self.base.add(a.coeff(i), b.coeff(i)));
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.base.characteristic() == 2 {
            return a;
        }
        let mut out = FieldElement::ZERO;
        for i in 0..self.m {
            out = out.with_coeff(i, self.base.neg(a.coeff(i)));
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Multiplication by a GF(q) scalar.
    pub fn scale(&self, c: u8, a: FieldElement) -> FieldElement {
        let mut out = FieldElement::ZERO;
        for i in 0..self.m {
            out = out.with_coeff(i, self.base.mul(c, a.coeff(i)));
        }
        out
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let n = t.exp.len();
                let la = t.log[self.index(a) as usize] as usize;
                let lb = t.log[self.index(b) as usize] as usize;
                t.exp[(la + lb) % n]
            }
            None => self.mul_schoolbook(a, b),
        }
    }

    /// Polynomial product reduced by the modulus; valid for any monic modulus.
    fn mul_schoolbook(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let m = self.m;
        let base = &self.base;
        let mut prod = [0u8; 2 * MAX_DEGREE];
        for i in 0..m {
            let ai = a.coeff(i);
            if ai == 0 {
                continue;
            }
            for j in 0..m {
                let t = base.mul(ai, b.coeff(j));
                prod[i + j] = base.add(prod[i + j], t);
            }
        }
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let t = base.mul(c, self.modulus[i]);
                prod[top - m + i] = base.sub(prod[top - m + i], t);
            }
            prod[top] = 0;
        }
        let mut out = FieldElement::ZERO;
        for (i, &c) in prod.iter().enumerate().take(m) {
            out = out.with_coeff(i, c);
        }
        out
    }

    pub fn pow(&self, a: FieldElement, e: u128) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = t.exp.len() as u128;
            let la = t.log[self.index(a) as usize] as u128;
            return t.exp[(la * (e % n) % n) as usize];
        }
        self.pow_schoolbook(a, e)
    }

    fn pow_schoolbook(&self, mut a: FieldElement, mut e: u128) -> FieldElement {
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_schoolbook(acc, a);
            }
            a = self.mul_schoolbook(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The Frobenius power x ↦ x^(q^e).
    pub fn frobenius(&self, a: FieldElement, e: usize) -> FieldElement {
        let e = e % self.m;
        if e == 0 || a.is_zero() {
            return a;
        }
        if let Some(t) = &self.tables {
            let n = t.exp.len() as u128;
            let shift = mod_pow(self.q() as u128, e as u128, n);
            let la = t.log[self.index(a) as usize] as u128;
            return t.exp[(la * shift % n) as usize];
        }
        let mut out = a;
        for _ in 0..e {
            out = self.pow_schoolbook(out, self.q() as u128);
        }
        out
    }

    /// Discrete log base x; defined only when x is primitive and tables exist.
    pub fn log_x(&self, a: FieldElement) -> Option<u64> {
        if a.is_zero() || !self.x_primitive {
            return None;
        }
        self.tables.as_ref().map(|t| t.log[self.index(a) as usize] as u64)
    }

    /// `w^k`, the k-th power of the class of x.
    pub fn x_pow(&self, k: u128) -> FieldElement {
        self.pow(self.x(), k)
    }

    /// Formats an element as `w^k` (or `0`) when reporting powers, else as
    /// the coordinate string `c0c1...c(m-1)` (dot-separated when q > 10).
    pub fn format(&self, a: FieldElement) -> String {
        if self.reporting {
            return match self.log_x(a) {
                None => "0".to_string(),
                Some(k) => format!("w^{k}"),
            };
        }
        self.format_coords(a)
    }

    pub fn format_coords(&self, a: FieldElement) -> String {
        let sep = if self.q() > 10 { "." } else { "" };
        self.coords(a).iter().map(u8::to_string).collect::<Vec<_>>().join(sep)
    }

    /// Parses `0`, `1`, `w`, `w^k`, or a coordinate string.
    pub fn parse_element(&self, text: &str) -> std::result::Result<FieldElement, String> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('w') {
            let k: u128 = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .and_then(|e| e.parse().ok())
                    .ok_or_else(|| format!("bad power {t:?}"))?
            };
            if !self.x_primitive {
                return Err("w^k notation requires a primitive modulus".into());
            }
            return Ok(self.x_pow(k));
        }
        if t == "0" {
            return Ok(FieldElement::ZERO);
        }
        if t == "1" && self.m > 1 {
            return Ok(FieldElement::ONE);
        }
        let digits: Vec<u8> = if t.contains('.') || self.q() > 10 {
            t.split('.')
                .map(|d| d.parse::<u8>().map_err(|_| format!("bad coordinate in {t:?}")))
                .collect::<std::result::Result<_, _>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| format!("bad coordinate in {t:?}"))
                })
                .collect::<std::result::Result<_, _>>()?
        };
        self.from_coords(&digits).map_err(|e| e.to_string())
    }

    fn modulus_is_irreducible(&self) -> bool {
        // Ben-Or: f is irreducible iff gcd(x^(q^i) - x, f) = 1 for 1 <= i <= m/2.
        let x = self.x();
        let mut h = x;
        let f: Vec<u8> = self.modulus.clone();
        for _ in 1..=self.m / 2 {
            h = self.pow_schoolbook(h, self.q() as u128);
            let diff = self.sub(h, x);
            let g = poly_gcd(&self.base, &self.coords(diff), &f);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }

    fn find_generator(&mut self) -> Result<()> {
        let n = self.order - 1;
        let Some(factors) = prime_factors(n) else {
            return Ok(());
        };
        let is_generator = |g: FieldElement| -> bool {
            !g.is_zero()
                && factors
                    .iter()
                    .all(|&p| self.pow_schoolbook(g, n / p) != FieldElement::ONE)
        };
        let x = self.x();
        if is_generator(x) {
            self.x_primitive = true;
            self.generator = Some(x);
            return Ok(());
        }
        let limit = self.order.min(1 << 16);
        self.generator = (2..limit).map(|i| self.from_index(i)).find(|&g| is_generator(g));
        Ok(())
    }

    fn build_tables(&mut self) {
        let Some(g) = self.generator else {
            return;
        };
        let n = (self.order - 1) as usize;
        let mut exp = Vec::with_capacity(n);
        let mut log = vec![0u32; self.order as usize];
        let mut cur = FieldElement::ONE;
        for k in 0..n {
            exp.push(cur);
            log[self.index(cur) as usize] = k as u32;
            cur = self.mul_schoolbook(cur, g);
        }
        self.tables = Some(LogTables { exp, log });
    }
}

fn mod_pow(mut b: u128, mut e: u128, n: u128) -> u128 {
    let mut acc = 1 % n;
    b %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % n;
        }
        b = b * b % n;
        e >>= 1;
    }
    acc
}

/// Distinct prime factors by trial division, exact for n < 2^48.
pub(crate) fn prime_factors(mut n: u128) -> Option<Vec<u128>> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n && d < (1 << 24) {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        if d * d <= n {
            return None;
        }
        out.push(n);
    }
    Some(out)
}

/// Monic gcd over GF(q), returned low first without trailing zeros.
fn poly_gcd(base: &BaseField, a: &[u8], b: &[u8]) -> Vec<u8> {
    let trim = |v: &mut Vec<u8>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(base, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = base.inv(lead);
        for c in a.iter_mut() {
            *c = base.mul(*c, li);
        }
    }
    a
}

fn poly_rem(base: &BaseField, a: &[u8], b: &[u8]) -> Vec<u8> {
    if base.prime_degree() == 1 {
        let p = base.characteristic();
        let a: Vec<usize> = a.iter().map(|&c| c as usize).collect();
        let b: Vec<usize> = b.iter().map(|&c| c as usize).collect();
        let mut r: Vec<u8> = gfp_poly_rem(&a, &b, p).into_iter().map(|c| c as u8).collect();
        while r.last() == Some(&0) {
            r.pop();
        }
        return r;
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let li = base.inv(b[db]);
    while r.len() > db {
        let top = r.len() - 1;
        let c = base.mul(r[top], li);
        for (i, &bi) in b.iter().enumerate() {
            let t = base.mul(c, bi);
            r[top - db + i] = base.sub(r[top - db + i], t);
        }
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r
}
