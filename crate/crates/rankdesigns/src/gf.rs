//! Exact arithmetic in prime-power fields `F_q` (q = p^e) and in extensions
//! `F_{q^m}`, including the trace map and trace-dual bases.
//!
//! Elements are encoded as canonical integers: an element with polynomial-basis
//! coordinates `(c_0, ..., c_{e-1})` over `F_p` is stored as the base-p packing
//! `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`. The encoding is bijective, `0` is the
//! additive identity and `1` the multiplicative identity. Extension elements
//! pack their coordinate vector over `F_q` in base q the same way.

use std::sync::Arc;

use thiserror::Error;

/// Canonical integer encoding of a field element, in `[0, q)`.
pub type FqElem = u64;

/// Canonical integer encoding of an extension-field element, in `[0, q^m)`.
pub type ExtElem = u64;

/// Multiplication switches from log/antilog tables to polynomial arithmetic
/// above this field order.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus has degree {got}, expected {want}")]
    BadModulusDegree { got: usize, want: usize },
    #[error("modulus is not monic")]
    NotMonic,
    #[error("modulus is reducible")]
    ReducibleModulus,
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("element {0} out of range for field of order {1}")]
    OutOfRange(u64, u64),
    #[error("the given elements do not form a basis of the extension")]
    NotABasis,
    #[error("extension degree must be at least 2")]
    DegreeTooSmall,
    #[error("field order {0} exceeds the supported limit 2^20")]
    OrderTooLarge(u64),
}

/// Common surface of `F_p`, `F_q` and `F_{q^m}` contexts, on canonically
/// encoded elements. All operations are pure; contexts are immutable after
/// construction and safe to share across threads.
pub trait FiniteField {
    fn order(&self) -> u64;
    fn add(&self, a: u64, b: u64) -> u64;
    fn neg(&self, a: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> Result<u64, GfError>;

    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The prime field F_p with arithmetic mod p. Internal building block for
/// `Field`; the public entry point for prime fields is `Field::new(p, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PrimeField {
    p: u64,
}

impl FiniteField for PrimeField {
    fn order(&self) -> u64 {
        self.p
    }
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: u64) -> Result<u64, GfError> {
        if a % self.p == 0 {
            return Err(GfError::ZeroInverse);
        }
        Ok(self.pow(a, self.p - 2))
    }
}

// ---- polynomial helpers over an arbitrary coefficient field ----
//
// Polynomials are coefficient vectors with the constant term first. They are
// kept trimmed (no trailing zeros) except where a fixed length is stated.

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_trim(out)
}

/// Remainder of `a` modulo `b`; `b` must be nonzero.
fn poly_rem<F: FiniteField>(f: &F, a: &[u64], b: &[u64]) -> Vec<u64> {
    let b = poly_trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let lead_inv = f.inv(*b.last().unwrap()).expect("nonzero leading coefficient");
    let mut r = poly_trim(a.to_vec());
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = f.mul(*r.last().unwrap(), lead_inv);
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bc));
        }
        r = poly_trim(r);
    }
    r
}

/// Irreducibility over the coefficient field by trial division against every
/// monic polynomial of degree 1..=deg/2.
fn poly_is_irreducible<F: FiniteField>(f: &F, m: &[u64]) -> bool {
    let m = poly_trim(m.to_vec());
    let deg = m.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    if m[0] == 0 {
        return false; // divisible by x
    }
    let q = f.order();
    for d in 1..=deg / 2 {
        // monic divisor candidates: x^d + sum c_i x^i, coefficients packed base q
        let count = q.pow(d as u32);
        for packed in 0..count {
            let mut cand = unpack_digits(packed, q, d);
            cand.push(1);
            if poly_rem(f, &m, &cand).is_empty() {
                return false;
            }
        }
    }
    true
}

fn pack_digits(digits: &[u64], base: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * base + d)
}

fn unpack_digits(mut v: u64, base: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0; len];
    for slot in out.iter_mut() {
        *slot = v % base;
        v /= base;
    }
    out
}

/// Lexicographically smallest monic irreducible of degree `deg` over `f`,
/// ordered by the canonical packing of the low coefficients. Deterministic, so
/// encodings are reproducible across runs.
fn smallest_irreducible<F: FiniteField>(f: &F, deg: usize) -> Vec<u64> {
    let q = f.order();
    let count = q.pow(deg as u32);
    for packed in 0..count {
        let mut cand = unpack_digits(packed, q, deg);
        cand.push(1);
        if poly_is_irreducible(f, &cand) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

/// Conway polynomials for small (p, e), constant term first. Used as default
/// moduli so element encodings match the usual references.
fn conway_modulus(p: u64, e: u32) -> Option<Vec<u64>> {
    let m: &[u64] = match (p, e) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (5, 2) => &[2, 4, 1],
        (7, 2) => &[3, 6, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

/// Find a generator of the multiplicative group and build log/antilog tables.
/// `mul` is the slow (polynomial) multiplication used only during setup.
fn build_log_tables(order: u64, mul: impl Fn(u64, u64) -> u64) -> (Vec<u64>, Vec<u64>) {
    let group = order - 1;
    let factors = prime_factors(group);
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let mut generator = 1;
    for cand in 1..order {
        if factors.iter().all(|&l| pow(cand, group / l) != 1) {
            generator = cand;
            break;
        }
    }
    let mut exp = vec![0; group as usize];
    let mut log = vec![0; order as usize];
    let mut cur = 1u64;
    for i in 0..group {
        exp[i as usize] = cur;
        log[cur as usize] = i;
        cur = mul(cur, generator);
    }
    debug_assert_eq!(cur, 1, "generator order mismatch");
    (exp, log)
}

/// An exact arithmetic context for `F_q` with q = p^e.
#[derive(Debug, Clone)]
pub struct Field {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    prime: PrimeField,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for Field {}

impl Field {
    /// Construct `F_{p^e}` with the built-in modulus (Conway polynomial where
    /// tabulated, otherwise the smallest monic irreducible).
    pub fn new(p: u64, e: u32) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if e == 0 {
            return Err(GfError::BadModulusDegree { got: 0, want: 1 });
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            match conway_modulus(p, e) {
                Some(m) => m,
                None => smallest_irreducible(&PrimeField { p }, e as usize),
            }
        };
        Field::with_modulus(p, e, modulus)
    }

    /// Construct `F_{p^e}` with an explicit monic irreducible modulus of degree
    /// e over `F_p`, constant term first.
    pub fn with_modulus(p: u64, e: u32, modulus: Vec<u64>) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        let prime = PrimeField { p };
        if modulus.len() != e as usize + 1 {
            return Err(GfError::BadModulusDegree {
                got: modulus.len().saturating_sub(1),
                want: e as usize,
            });
        }
        if modulus[e as usize] != 1 {
            return Err(GfError::NotMonic);
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(GfError::OutOfRange(*modulus.iter().max().unwrap(), p));
        }
        if e > 1 && !poly_is_irreducible(&prime, &modulus) {
            return Err(GfError::ReducibleModulus);
        }
        let q = p.checked_pow(e).filter(|&q| q <= 1 << 20).ok_or_else(|| {
            GfError::OrderTooLarge(p.saturating_pow(e))
        })?;
        let mut field = Field {
            p,
            e,
            q,
            modulus,
            prime,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            let (exp, log) = build_log_tables(q, |a, b| field.mul_slow(a, b));
            field.exp = exp;
            field.log = log;
        }
        Ok(field)
    }

    /// Construct the field of the given order, factoring `q = p^e`.
    pub fn of_order(q: u64) -> Result<Field, GfError> {
        let factors = prime_factors(q);
        if factors.len() != 1 || q < 2 {
            return Err(GfError::NotPrimePower(q));
        }
        let p = factors[0];
        let mut e = 0;
        let mut r = q;
        while r > 1 {
            if r % p != 0 {
                return Err(GfError::NotPrimePower(q));
            }
            r /= p;
            e += 1;
        }
        Field::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Polynomial-basis coordinates of an element over `F_p`, length e.
    pub fn coords(&self, a: FqElem) -> Vec<u64> {
        unpack_digits(a, self.p, self.e as usize)
    }

    pub fn from_coords(&self, coords: &[u64]) -> FqElem {
        pack_digits(coords, self.p)
    }

    pub fn contains(&self, a: FqElem) -> bool {
        a < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        0..self.q
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let pa = unpack_digits(a, self.p, self.e as usize);
        let pb = unpack_digits(b, self.p, self.e as usize);
        let prod = poly_mul(&self.prime, &pa, &pb);
        let r = poly_rem(&self.prime, &prod, &self.modulus);
        pack_digits(&r, self.p)
    }
}

impl FiniteField for Field {
    fn order(&self) -> u64 {
        self.q
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let pa = unpack_digits(a, self.p, self.e as usize);
        let pb = unpack_digits(b, self.p, self.e as usize);
        let sum: Vec<u64> = pa
            .iter()
            .zip(&pb)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        pack_digits(&sum, self.p)
    }

    fn neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        let pa = unpack_digits(a, self.p, self.e as usize);
        let n: Vec<u64> = pa.iter().map(|&x| (self.p - x) % self.p).collect();
        pack_digits(&n, self.p)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let s = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
            return self.exp[s as usize];
        }
        self.mul_slow(a, b)
    }

    fn inv(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        if !self.exp.is_empty() {
            let s = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
            return Ok(self.exp[s as usize]);
        }
        Ok(self.pow(a, self.q - 2))
    }
}

/// An exact arithmetic context for `F_{q^m}` over a base field `F_q`.
///
/// Extension elements are coefficient vectors of length m over the base,
/// packed base-q into a single integer.
#[derive(Debug, Clone)]
pub struct ExtField {
    base: Arc<Field>,
    m: u32,
    modulus: Vec<FqElem>,
    order: u64,
    exp: Vec<u64>,
    log: Vec<u64>,
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.m == other.m && self.modulus == other.modulus
    }
}
impl Eq for ExtField {}

impl ExtField {
    /// Construct `F_{q^m}` with the smallest monic irreducible modulus of
    /// degree m over the base.
    pub fn new(base: Arc<Field>, m: u32) -> Result<ExtField, GfError> {
        if m < 2 {
            return Err(GfError::DegreeTooSmall);
        }
        let modulus = smallest_irreducible(base.as_ref(), m as usize);
        ExtField::with_modulus(base, m, modulus)
    }

    /// Construct `F_{q^m}` with an explicit monic irreducible modulus of
    /// degree m over the base, constant term first.
    pub fn with_modulus(base: Arc<Field>, m: u32, modulus: Vec<FqElem>) -> Result<ExtField, GfError> {
        if m < 2 {
            return Err(GfError::DegreeTooSmall);
        }
        if modulus.len() != m as usize + 1 {
            return Err(GfError::BadModulusDegree {
                got: modulus.len().saturating_sub(1),
                want: m as usize,
            });
        }
        if modulus[m as usize] != 1 {
            return Err(GfError::NotMonic);
        }
        if let Some(&c) = modulus.iter().find(|&&c| !base.contains(c)) {
            return Err(GfError::OutOfRange(c, base.order()));
        }
        if !poly_is_irreducible(base.as_ref(), &modulus) {
            return Err(GfError::ReducibleModulus);
        }
        let order = base
            .order()
            .checked_pow(m)
            .filter(|&o| o <= 1 << 20)
            .ok_or_else(|| GfError::OrderTooLarge(base.order().saturating_pow(m)))?;
        let mut ext = ExtField {
            base,
            m,
            modulus,
            order,
            exp: Vec::new(),
            log: Vec::new(),
        };
        if order <= TABLE_LIMIT {
            let (exp, log) = build_log_tables(order, |a, b| ext.mul_slow(a, b));
            ext.exp = exp;
            ext.log = log;
        }
        Ok(ext)
    }

    pub fn base(&self) -> &Arc<Field> {
        &self.base
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[FqElem] {
        &self.modulus
    }

    pub fn contains(&self, a: ExtElem) -> bool {
        a < self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> {
        0..self.order
    }

    /// Coordinates of an element with respect to the polynomial basis
    /// `1, t, ..., t^{m-1}`, length m over the base field.
    pub fn coords(&self, a: ExtElem) -> Vec<FqElem> {
        unpack_digits(a, self.base.order(), self.m as usize)
    }

    pub fn from_coords(&self, coords: &[FqElem]) -> ExtElem {
        pack_digits(coords, self.base.order())
    }

    /// Embed a base-field element into the extension.
    pub fn embed(&self, c: FqElem) -> ExtElem {
        debug_assert!(self.base.contains(c));
        c
    }

    /// The polynomial basis `1, t, ..., t^{m-1}` of the extension.
    pub fn polynomial_basis(&self) -> Vec<ExtElem> {
        (0..self.m as u64).map(|i| self.base.order().pow(i as u32)).collect()
    }

    /// The Frobenius endomorphism `x -> x^q`.
    pub fn frobenius(&self, a: ExtElem) -> ExtElem {
        self.pow(a, self.base.order())
    }

    /// The trace onto the base field: `Tr(x) = x + x^q + ... + x^{q^{m-1}}`.
    pub fn trace(&self, a: ExtElem) -> FqElem {
        let mut acc = 0;
        let mut cur = a;
        for _ in 0..self.m {
            acc = self.add(acc, cur);
            cur = self.frobenius(cur);
        }
        let coords = self.coords(acc);
        debug_assert!(coords[1..].iter().all(|&c| c == 0), "trace not in base field");
        coords[0]
    }

    /// Whether the given m elements are F_q-linearly independent.
    pub fn is_basis(&self, gamma: &[ExtElem]) -> bool {
        if gamma.len() != self.m as usize {
            return false;
        }
        // coordinate matrix over the base field, eliminated in place
        let mut rows: Vec<Vec<FqElem>> = gamma.iter().map(|&g| self.coords(g)).collect();
        let mut rank = 0;
        for col in 0..self.m as usize {
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let inv = self.base.inv(rows[rank][col]).unwrap();
            for r in 0..rows.len() {
                if r != rank && rows[r][col] != 0 {
                    let factor = self.base.mul(rows[r][col], inv);
                    for c in 0..self.m as usize {
                        let sub = self.base.mul(factor, rows[rank][c]);
                        rows[r][c] = self.base.sub(rows[r][c], sub);
                    }
                }
            }
            rank += 1;
        }
        rank == self.m as usize
    }

    /// The trace-dual basis of `gamma`: the unique basis with
    /// `Tr(gamma_i * dual_j) = delta_ij`, obtained by inverting the Gram
    /// matrix `[Tr(gamma_i gamma_j)]` over the base field.
    pub fn trace_dual_basis(&self, gamma: &[ExtElem]) -> Result<Vec<ExtElem>, GfError> {
        let m = self.m as usize;
        if gamma.len() != m {
            return Err(GfError::NotABasis);
        }
        let mut aug: Vec<Vec<FqElem>> = (0..m)
            .map(|i| {
                let mut row: Vec<FqElem> = (0..m)
                    .map(|j| self.trace(self.mul(gamma[i], gamma[j])))
                    .collect();
                row.extend((0..m).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        // Gauss-Jordan on [G | I]; a singular Gram matrix means gamma is not a basis.
        for col in 0..m {
            let Some(pivot) = (col..m).find(|&r| aug[r][col] != 0) else {
                return Err(GfError::NotABasis);
            };
            aug.swap(col, pivot);
            let inv = self.base.inv(aug[col][col]).unwrap();
            for c in 0..2 * m {
                aug[col][c] = self.base.mul(aug[col][c], inv);
            }
            for r in 0..m {
                if r != col && aug[r][col] != 0 {
                    let factor = aug[r][col];
                    for c in 0..2 * m {
                        let sub = self.base.mul(factor, aug[col][c]);
                        aug[r][c] = self.base.sub(aug[r][c], sub);
                    }
                }
            }
        }
        // dual_j = sum_i (G^{-1})_{ji} gamma_i
        let dual = (0..m)
            .map(|j| {
                let mut acc = 0;
                for i in 0..m {
                    let term = self.mul(self.embed(aug[j][m + i]), gamma[i]);
                    acc = self.add(acc, term);
                }
                acc
            })
            .collect();
        Ok(dual)
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let q = self.base.order();
        let pa = unpack_digits(a, q, self.m as usize);
        let pb = unpack_digits(b, q, self.m as usize);
        let prod = poly_mul(self.base.as_ref(), &pa, &pb);
        let r = poly_rem(self.base.as_ref(), &prod, &self.modulus);
        pack_digits(&r, q)
    }
}

impl FiniteField for ExtField {
    fn order(&self) -> u64 {
        self.order
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.base.p() == 2 {
            return a ^ b;
        }
        let q = self.base.order();
        let pa = unpack_digits(a, q, self.m as usize);
        let pb = unpack_digits(b, q, self.m as usize);
        let sum: Vec<u64> = pa
            .iter()
            .zip(&pb)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect();
        pack_digits(&sum, q)
    }

    fn neg(&self, a: u64) -> u64 {
        if self.base.p() == 2 {
            return a;
        }
        let q = self.base.order();
        let pa = unpack_digits(a, q, self.m as usize);
        let n: Vec<u64> = pa.iter().map(|&x| self.base.neg(x)).collect();
        pack_digits(&n, q)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let s = (self.log[a as usize] + self.log[b as usize]) % (self.order - 1);
            return self.exp[s as usize];
        }
        self.mul_slow(a, b)
    }

    fn inv(&self, a: u64) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::ZeroInverse);
        }
        if !self.exp.is_empty() {
            let s = (self.order - 1 - self.log[a as usize]) % (self.order - 1);
            return Ok(self.exp[s as usize]);
        }
        Ok(self.pow(a, self.order - 2))
    }
}
