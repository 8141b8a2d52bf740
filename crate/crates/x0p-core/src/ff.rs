//! Arithmetic in F_p, in the quadratic extension F_p^2 = F_p(sqrt(nu)),
//! and on dense univariate polynomials over F_p.
//!
//! Elements carry their modulus so mixed-modulus arithmetic is caught in
//! debug builds. Products are taken through `u128`, which is exact for any
//! modulus below 2^64, so no coefficient ever sees floating point or
//! unchecked wraparound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic primality test by trial division; adequate for the desk
/// scale moduli this crate accepts.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    if n % 3 == 0 {
        return n == 3;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u128, p: u64) -> u64 {
    if p == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        exp >>= 1;
        if exp > 0 {
            base = mulmod(base, base, p);
        }
    }
    acc
}

/// An element of the prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpElement {
    value: u64,
    modulus: u64,
}

impl FpElement {
    pub fn new(value: u64, modulus: u64) -> Self {
        debug_assert!(modulus > 1);
        FpElement {
            value: value % modulus,
            modulus,
        }
    }

    /// Builds an element from a signed integer, folding negatives into
    /// canonical residues.
    pub fn from_signed(value: i64, modulus: u64) -> Self {
        let m = modulus as i64;
        debug_assert!(m > 1);
        let r = value.rem_euclid(m) as u64;
        FpElement {
            value: r,
            modulus,
        }
    }

    pub fn zero(modulus: u64) -> Self {
        Self::new(0, modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Self::new(1, modulus)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, exp: u128) -> Self {
        FpElement {
            value: powmod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero(self.modulus));
        }
        // Fermat: p is prime throughout this crate, so a^(p-2) inverts a.
        Ok(self.pow(self.modulus as u128 - 2))
    }

    /// Legendre symbol as -1, 0, or 1 via Euler's criterion.
    pub fn legendre(&self) -> i32 {
        if self.value == 0 {
            return 0;
        }
        let e = self.pow((self.modulus as u128 - 1) / 2);
        if e.value == 1 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for FpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElement {
    type Output = FpElement;
    fn add(self, rhs: FpElement) -> FpElement {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let mut v = self.value + rhs.value;
        if v >= self.modulus {
            v -= self.modulus;
        }
        FpElement {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Sub for FpElement {
    type Output = FpElement;
    fn sub(self, rhs: FpElement) -> FpElement {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = if self.value >= rhs.value {
            self.value - rhs.value
        } else {
            self.value + self.modulus - rhs.value
        };
        FpElement {
            value: v,
            modulus: self.modulus,
        }
    }
}

impl Mul for FpElement {
    type Output = FpElement;
    fn mul(self, rhs: FpElement) -> FpElement {
        debug_assert_eq!(self.modulus, rhs.modulus);
        FpElement {
            value: mulmod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for FpElement {
    type Output = FpElement;
    fn neg(self) -> FpElement {
        FpElement {
            value: if self.value == 0 {
                0
            } else {
                self.modulus - self.value
            },
            modulus: self.modulus,
        }
    }
}

/// Smallest quadratic nonresidue of F_p, p an odd prime.
pub fn quad_nonresidue(p: u64) -> Result<FpElement> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::PrimeTooSmall(2));
    }
    for nu in 2..p {
        let el = FpElement::new(nu, p);
        if el.legendre() == -1 {
            return Ok(el);
        }
    }
    // Half of F_p* is nonsquare for every odd prime, so the loop returns.
    Err(Error::Internal(format!("no nonresidue found mod {p}")))
}

/// Square root in F_p by Tonelli-Shanks, with the p = 3 mod 4 shortcut.
/// Returns `None` when the argument is a nonresidue.
pub fn fp_sqrt(a: FpElement) -> Option<FpElement> {
    let p = a.modulus();
    if a.is_zero() {
        return Some(a);
    }
    if a.legendre() != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(a.pow((p as u128 + 1) / 4));
    }
    // p = 1 mod 4: full Tonelli-Shanks.
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = quad_nonresidue(p).expect("odd prime modulus");
    let mut m = s;
    let mut c = z.pow(q as u128);
    let mut t = a.pow(q as u128);
    let mut r = a.pow((q as u128 + 1) / 2);
    while !t.is_zero() && t.value() != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2.value() != 1 {
            t2 = t2 * t2;
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.pow(1u128 << (m - i - 1));
        m = i;
        c = b * b;
        t = t * c;
        r = r * b;
    }
    Some(r)
}

/// An element a + b sqrt(nu) of F_p^2, for nu a fixed nonresidue of F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp2Element {
    a: FpElement,
    b: FpElement,
    nu: u64,
}

impl Fp2Element {
    pub fn new(a: FpElement, b: FpElement, nu: u64) -> Self {
        debug_assert_eq!(a.modulus(), b.modulus());
        Fp2Element { a, b, nu }
    }

    pub fn from_fp(a: FpElement, nu: u64) -> Self {
        Fp2Element {
            a,
            b: FpElement::zero(a.modulus()),
            nu,
        }
    }

    pub fn from_parts(a: u64, b: u64, p: u64, nu: u64) -> Self {
        Fp2Element {
            a: FpElement::new(a, p),
            b: FpElement::new(b, p),
            nu,
        }
    }

    pub fn zero(p: u64, nu: u64) -> Self {
        Self::from_parts(0, 0, p, nu)
    }

    pub fn one(p: u64, nu: u64) -> Self {
        Self::from_parts(1, 0, p, nu)
    }

    pub fn modulus(&self) -> u64 {
        self.a.modulus()
    }

    pub fn nu(&self) -> u64 {
        self.nu
    }

    /// The coefficient pair (a, b) with respect to the basis {1, sqrt(nu)}.
    pub fn parts(&self) -> (u64, u64) {
        (self.a.value(), self.b.value())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the element lies in the prime subfield.
    pub fn is_in_base(&self) -> bool {
        self.b.is_zero()
    }

    pub fn pow(&self, mut exp: u128) -> Self {
        let mut acc = Fp2Element::one(self.modulus(), self.nu);
        let mut base = *self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            exp >>= 1;
            if exp > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Multiplicative inverse via the norm a^2 - nu b^2.
    pub fn inv(&self) -> Result<Self> {
        let p = self.modulus();
        let nu = FpElement::new(self.nu, p);
        let norm = self.a * self.a - nu * (self.b * self.b);
        if norm.is_zero() {
            return Err(Error::DivisionByZero(p));
        }
        let ninv = norm.inv()?;
        Ok(Fp2Element {
            a: self.a * ninv,
            b: -(self.b * ninv),
            nu: self.nu,
        })
    }
}

impl fmt::Display for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*s", self.a, self.b)
        }
    }
}

impl Add for Fp2Element {
    type Output = Fp2Element;
    fn add(self, rhs: Fp2Element) -> Fp2Element {
        debug_assert_eq!(self.nu, rhs.nu);
        Fp2Element {
            a: self.a + rhs.a,
            b: self.b + rhs.b,
            nu: self.nu,
        }
    }
}

impl Sub for Fp2Element {
    type Output = Fp2Element;
    fn sub(self, rhs: Fp2Element) -> Fp2Element {
        debug_assert_eq!(self.nu, rhs.nu);
        Fp2Element {
            a: self.a - rhs.a,
            b: self.b - rhs.b,
            nu: self.nu,
        }
    }
}

impl Mul for Fp2Element {
    type Output = Fp2Element;
    fn mul(self, rhs: Fp2Element) -> Fp2Element {
        debug_assert_eq!(self.nu, rhs.nu);
        let nu = FpElement::new(self.nu, self.modulus());
        // (a + b s)(c + d s) = (ac + nu bd) + (ad + bc) s, s^2 = nu.
        Fp2Element {
            a: self.a * rhs.a + nu * (self.b * rhs.b),
            b: self.a * rhs.b + self.b * rhs.a,
            nu: self.nu,
        }
    }
}

impl Neg for Fp2Element {
    type Output = Fp2Element;
    fn neg(self) -> Fp2Element {
        Fp2Element {
            a: -self.a,
            b: -self.b,
            nu: self.nu,
        }
    }
}

/// The p-power Frobenius on F_p^2: fixes the base field and negates the
/// sqrt(nu) coordinate.
pub fn fp2_frobenius(x: Fp2Element) -> Fp2Element {
    Fp2Element {
        a: x.a,
        b: -x.b,
        nu: x.nu,
    }
}

/// Dense polynomial over F_p, coefficients lowest degree first, always
/// trimmed of leading zeros. The zero polynomial has an empty coefficient
/// vector and no degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFp {
    coeffs: Vec<u64>,
    p: u64,
}

impl PolyFp {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        debug_assert!(p > 1);
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        let mut poly = PolyFp { coeffs, p };
        poly.trim();
        poly
    }

    pub fn from_signed(coeffs: &[i64], p: u64) -> Self {
        let v = coeffs
            .iter()
            .map(|&c| FpElement::from_signed(c, p).value())
            .collect();
        PolyFp::new(v, p)
    }

    pub fn zero(p: u64) -> Self {
        PolyFp { coeffs: vec![], p }
    }

    pub fn one(p: u64) -> Self {
        PolyFp::new(vec![1], p)
    }

    pub fn constant(c: u64, p: u64) -> Self {
        PolyFp::new(vec![c], p)
    }

    /// The monomial x.
    pub fn x(p: u64) -> Self {
        PolyFp::new(vec![0, 1], p)
    }

    /// The monic linear polynomial x - r.
    pub fn linear_root(r: u64, p: u64) -> Self {
        let neg = FpElement::new(r, p);
        PolyFp::new(vec![(-neg).value(), 1], p)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    pub fn eval(&self, x: FpElement) -> FpElement {
        debug_assert_eq!(x.modulus(), self.p);
        let mut acc = FpElement::zero(self.p);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + FpElement::new(c, self.p);
        }
        acc
    }

    pub fn add(&self, rhs: &PolyFp) -> PolyFp {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = FpElement::new(self.coeff(i), self.p);
            let b = FpElement::new(rhs.coeff(i), self.p);
            out.push((a + b).value());
        }
        PolyFp::new(out, self.p)
    }

    pub fn sub(&self, rhs: &PolyFp) -> PolyFp {
        debug_assert_eq!(self.p, rhs.p);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = FpElement::new(self.coeff(i), self.p);
            let b = FpElement::new(rhs.coeff(i), self.p);
            out.push((a - b).value());
        }
        PolyFp::new(out, self.p)
    }

    pub fn mul(&self, rhs: &PolyFp) -> PolyFp {
        debug_assert_eq!(self.p, rhs.p);
        if self.is_zero() || rhs.is_zero() {
            return PolyFp::zero(self.p);
        }
        let n = self.coeffs.len() + rhs.coeffs.len() - 1;
        let mut out = vec![0u64; n];
        let p128 = self.p as u128;
        if self.p < (1 << 32) {
            // Every product fits in a u64 and a u128 accumulator absorbs
            // 2^64 of them, far more terms than any polynomial has room
            // for, so one reduction per output coefficient is exact.
            for (k, o) in out.iter_mut().enumerate() {
                let lo = (k + 1).saturating_sub(rhs.coeffs.len());
                let hi = k.min(self.coeffs.len() - 1);
                let mut acc: u128 = 0;
                for i in lo..=hi {
                    acc += (self.coeffs[i] * rhs.coeffs[k - i]) as u128;
                }
                *o = (acc % p128) as u64;
            }
        } else {
            for (i, &a) in self.coeffs.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    let prod = (a as u128 * b as u128) % p128;
                    out[i + j] = ((out[i + j] as u128 + prod) % p128) as u64;
                }
            }
        }
        PolyFp::new(out, self.p)
    }

    pub fn mul_scalar(&self, s: FpElement) -> PolyFp {
        debug_assert_eq!(s.modulus(), self.p);
        let out = self
            .coeffs
            .iter()
            .map(|&c| mulmod(c, s.value(), self.p))
            .collect();
        PolyFp::new(out, self.p)
    }

    /// Euclidean division: returns (quotient, remainder) with
    /// deg rem < deg divisor.
    pub fn divrem(&self, divisor: &PolyFp) -> Result<(PolyFp, PolyFp)> {
        debug_assert_eq!(self.p, divisor.p);
        let d_deg = divisor
            .degree()
            .ok_or(Error::ZeroPolynomialDivisor(self.p))?;
        let n_deg = match self.degree() {
            Some(n) if n >= d_deg => n,
            _ => return Ok((PolyFp::zero(self.p), self.clone())),
        };
        let lead_inv = FpElement::new(divisor.leading().unwrap(), self.p).inv()?;
        let mut quot = vec![0u64; n_deg - d_deg + 1];
        if self.p < (1 << 32) {
            // Keep working coefficients as lazily reduced u128 residues and
            // only subtract by adding c*(p - d_i) == -c*d_i (mod p). Each
            // addition stays below 2^64, so u128 entries cannot overflow
            // within any representable quotient length; positions are
            // reduced exactly once, when they drive a quotient step or
            // enter the final remainder.
            let p = self.p;
            let p128 = p as u128;
            let mut rem: Vec<u128> = self.coeffs.iter().map(|&c| c as u128).collect();
            for k in (d_deg..=n_deg).rev() {
                let c = mulmod((rem[k] % p128) as u64, lead_inv.value(), p);
                quot[k - d_deg] = c;
                if c == 0 {
                    continue;
                }
                for (i, &dc) in divisor.coeffs.iter().enumerate().take(d_deg) {
                    rem[k - d_deg + i] += (c * (p - dc % p)) as u128;
                }
            }
            let low: Vec<u64> = rem[..d_deg].iter().map(|&v| (v % p128) as u64).collect();
            return Ok((PolyFp::new(quot, p), PolyFp::new(low, p)));
        }
        let mut rem = self.coeffs.clone();
        for k in (d_deg..=n_deg).rev() {
            let c = FpElement::new(rem[k], self.p) * lead_inv;
            quot[k - d_deg] = c.value();
            if c.is_zero() {
                continue;
            }
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let cur = FpElement::new(rem[k - d_deg + i], self.p);
                let sub = c * FpElement::new(dc, self.p);
                rem[k - d_deg + i] = (cur - sub).value();
            }
        }
        Ok((PolyFp::new(quot, self.p), PolyFp::new(rem, self.p)))
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &PolyFp) -> PolyFp {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> PolyFp {
        match self.leading() {
            None => self.clone(),
            Some(1) => self.clone(),
            Some(l) => {
                let inv = FpElement::new(l, self.p).inv().expect("nonzero leading");
                self.mul_scalar(inv)
            }
        }
    }

    pub fn derivative(&self) -> PolyFp {
        if self.coeffs.len() <= 1 {
            return PolyFp::zero(self.p);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
            .collect();
        PolyFp::new(out, self.p)
    }
}

impl PartialOrd for PolyFp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PolyFp {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// g^e mod f by square and multiply. The modulus must have positive degree.
pub fn poly_powmod(g: &PolyFp, mut exp: u128, f: &PolyFp) -> Result<PolyFp> {
    match f.degree() {
        None | Some(0) => return Err(Error::BadReductionModulus),
        _ => {}
    }
    let p = f.modulus();
    let mut base = g.divrem(f)?.1;
    let mut acc = PolyFp::one(p).divrem(f)?.1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul(&base).divrem(f)?.1;
        }
        exp >>= 1;
        if exp > 0 {
            base = base.mul(&base).divrem(f)?.1;
        }
    }
    Ok(acc)
}

/// The Frobenius power pair (x^p mod f, x^(p^2) mod f). Computing the
/// second power from the first costs one extra square and multiply chain
/// rather than two, and callers that need several gcds against these
/// powers can share one computation.
pub fn frobenius_powers(f: &PolyFp) -> Result<(PolyFp, PolyFp)> {
    let p = f.modulus();
    let x = PolyFp::x(p);
    let xp = poly_powmod(&x, p as u128, f)?;
    let xp2 = poly_powmod(&xp, p as u128, f)?;
    Ok((xp, xp2))
}

/// Distinct roots of f over F_p together with the number of distinct roots
/// that live in F_p^2 but outside F_p.
///
/// The F_p roots come from gcd(f, x^p - x); the quadratic count is
/// deg gcd(f, x^(p^2) - x) minus the number of F_p roots. Both gcds split
/// into distinct linear factors over their field, so degrees count roots
/// exactly, with multiplicities in f collapsed.
pub fn distinct_roots(f: &PolyFp) -> Result<(Vec<FpElement>, usize)> {
    let p = f.modulus();
    if f.is_zero() {
        return Err(Error::ZeroPolynomialDivisor(p));
    }
    if f.degree() == Some(0) {
        return Ok((vec![], 0));
    }
    let (xp, xp2) = frobenius_powers(f)?;
    distinct_roots_with(f, &xp, &xp2)
}

/// `distinct_roots` with the Frobenius powers of `frobenius_powers(f)`
/// supplied by the caller.
pub fn distinct_roots_with(
    f: &PolyFp,
    xp: &PolyFp,
    xp2: &PolyFp,
) -> Result<(Vec<FpElement>, usize)> {
    let p = f.modulus();
    if f.is_zero() {
        return Err(Error::ZeroPolynomialDivisor(p));
    }
    if f.degree() == Some(0) {
        return Ok((vec![], 0));
    }
    let x = PolyFp::x(p);
    let g1 = f.gcd(&xp.sub(&x));
    let mut roots = Vec::new();
    if g1.degree().map_or(false, |d| d >= 1) {
        for a in 0..p {
            let el = FpElement::new(a, p);
            if g1.eval(el).is_zero() {
                roots.push(el);
            }
        }
        if roots.len() != g1.degree().unwrap() {
            return Err(Error::Internal(format!(
                "gcd(f, x^p - x) of degree {} yielded {} rational roots mod {}",
                g1.degree().unwrap(),
                roots.len(),
                p
            )));
        }
    }
    let g2 = f.gcd(&xp2.sub(&x));
    let total_fp2 = g2.degree().unwrap_or(0);
    if total_fp2 < roots.len() {
        return Err(Error::Internal(format!(
            "x^(p^2) - x gcd degree {} below rational root count {} mod {}",
            total_fp2,
            roots.len(),
            p
        )));
    }
    let rational = roots.len();
    Ok((roots, total_fp2 - rational))
}
