//! Supersingular point enumeration for X_0(p) in characteristic p >= 5.
//!
//! The census walks the Legendre lambda line: the supersingular lambda
//! values are exactly the roots of the degree (p-1)/2 polynomial
//! H_p(t) = sum_i binom(m, i)^2 t^i with m = (p-1)/2, all of which live in
//! F_p^2. Mapping them through the sextic lambda -> j cover and removing
//! duplicates yields the supersingular j invariants, split into F_p
//! rational ones and Frobenius conjugate pairs.
//!
//! Two further predicates decide supersingularity of a single curve by
//! unrelated means, so the census can be audited point by point: the
//! classical coefficient criterion on (x^3 + a4 x + a6)^((p-1)/2), and a
//! literal point count over F_p.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{
    distinct_roots_with, fp2_frobenius, fp_sqrt, frobenius_powers, is_prime, poly_powmod,
    quad_nonresidue, Fp2Element,
    FpElement, PolyFp,
};

/// The polynomial H_p(t) = sum_{i=0}^{m} binom(m, i)^2 t^i over F_p, with
/// m = (p-1)/2. Its roots in F_p^2 are the supersingular Legendre
/// parameters.
pub fn deuring_polynomial(p: u64) -> Result<PolyFp> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    let m = (p - 1) / 2;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut c = FpElement::one(p);
    coeffs.push(1u64);
    for i in 1..=m {
        // binom(m, i) = binom(m, i-1) (m - i + 1) / i; every i < p is a
        // unit mod p, so the quotient is exact in F_p.
        c = c * FpElement::new(m - i + 1, p) * FpElement::new(i, p).inv()?;
        coeffs.push((c * c).value());
    }
    Ok(PolyFp::new(coeffs, p))
}

/// The sextic cover from the lambda line to the j line:
/// j = 256 (l^2 - l + 1)^3 / (l^2 (l - 1)^2). Errors on l in {0, 1}.
pub fn lambda_to_j(lambda: Fp2Element) -> Result<Fp2Element> {
    let p = lambda.modulus();
    let nu = lambda.nu();
    let lsq = lambda * lambda;
    let den = lsq - lambda;
    if den.is_zero() {
        return Err(Error::DegenerateLambda(lambda.parts().0));
    }
    let num = lsq - lambda + Fp2Element::one(p, nu);
    let c256 = Fp2Element::from_parts(256 % p, 0, p, nu);
    let inv = (den * den).inv().expect("nonzero denominator");
    Ok(c256 * num * num * num * inv)
}

/// Splits a squarefree product of monic irreducible quadratics over F_p
/// into its factors, given `frob` = x^p modulo (a multiple of) `f`.
///
/// On each quadratic factor with roots a, a-bar, the Frobenius image
/// sends x to the conjugate root, so the trace map x^p + x and the norm
/// map x^p * x are constants, namely the factor's trace and norm in F_p.
/// For successive shifts c, the direct gcd with trace + c (resp. norm + c)
/// captures exactly the factors of that trace (resp. norm), and the
/// Legendre power (trace + c)^((p-1)/2) splits factors by residue class
/// of the shifted trace. Distinct monic quadratics differ in trace or
/// norm, so scanning c over F_p on both maps provably separates any two
/// factors: the search is deterministic and cannot stall. Blocks inherit
/// the Frobenius image by reduction, never by repowering.
fn split_into_quadratics(f: &PolyFp, frob: &PolyFp) -> Result<Vec<PolyFp>> {
    let p = f.modulus();
    let half = (p as u128 - 1) / 2;
    let x = PolyFp::x(p);
    let one = PolyFp::one(p);
    let h0 = f.monic();
    let r0 = frob.divrem(&h0)?.1;
    let mut stack = vec![(h0, r0)];
    let mut out = Vec::new();
    while let Some((h, r)) = stack.pop() {
        match h.degree() {
            None => {
                return Err(Error::Internal(
                    "zero polynomial reached the quadratic splitter".into(),
                ))
            }
            Some(0) => continue,
            Some(2) => {
                out.push(h);
                continue;
            }
            Some(d) if d % 2 == 1 => {
                return Err(Error::Internal(format!(
                    "odd degree {d} block in the quadratic splitter mod {p}"
                )))
            }
            Some(_) => {}
        }
        let deg_h = h.degree().unwrap();
        let trace = r.add(&x);
        let norm = r.mul(&x).divrem(&h)?.1;
        let is_proper = |d: &PolyFp| d.degree().map_or(false, |dd| dd > 0 && dd < deg_h);
        let mut found = None;
        'scan: for c in 0..p {
            let shift = PolyFp::constant(c, p);
            for base in [&trace, &norm] {
                let shifted = base.add(&shift);
                // Legendre probe first: whenever two factors see shifted
                // values in different residue classes, this gcd is proper,
                // which is the overwhelmingly common outcome.
                let w = poly_powmod(&shifted, half, &h)?;
                let d = h.gcd(&w.sub(&one));
                if is_proper(&d) {
                    found = Some(d);
                    break 'scan;
                }
                // The power probe is blind to factors where the shifted
                // value vanishes; a direct gcd catches those. If every
                // factor landed in the +1 class (gcd was all of h) the
                // value vanishes nowhere and the direct check is skipped.
                if d.degree() != Some(deg_h) {
                    let direct = h.gcd(&shifted);
                    if is_proper(&direct) {
                        found = Some(direct);
                        break 'scan;
                    }
                }
            }
        }
        let d = found.ok_or_else(|| {
            Error::Internal(format!("equal degree splitting stalled mod {p}"))
        })?;
        let (q, rem) = h.divrem(&d)?;
        if !rem.is_zero() {
            return Err(Error::Internal(
                "splitter gcd does not divide its block".into(),
            ));
        }
        let rd = r.divrem(&d)?.1;
        let rq = r.divrem(&q)?.1;
        stack.push((d, rd));
        stack.push((q, rq));
    }
    out.sort();
    Ok(out)
}

/// The distinct roots of `f` lying in F_p^2 outside F_p, given the
/// Frobenius powers x^p and x^(p^2) modulo `f` and the already known
/// rational roots. Each irreducible quadratic x^2 + q1 x + q0 found in
/// the splitting kernel is solved explicitly as a +- b sqrt(nu).
fn quadratic_lambda_roots(
    f: &PolyFp,
    xp: &PolyFp,
    xp2: &PolyFp,
    fp_roots: &[FpElement],
    nu: u64,
) -> Result<Vec<Fp2Element>> {
    let p = f.modulus();
    let x = PolyFp::x(p);
    let mut g = f.gcd(&xp2.sub(&x));
    for r in fp_roots {
        let (q, rem) = g.divrem(&PolyFp::linear_root(r.value(), p))?;
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "rational root {} missing from the F_p^2 splitting kernel mod {p}",
                r.value()
            )));
        }
        g = q;
    }
    if g.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    let quads = split_into_quadratics(&g, xp)?;
    let inv2 = FpElement::new(2, p).inv()?;
    let nu_inv = FpElement::new(nu, p).inv()?;
    let mut out = Vec::with_capacity(2 * quads.len());
    for q in &quads {
        let q1 = FpElement::new(q.coeff(1), p);
        let q0 = FpElement::new(q.coeff(0), p);
        let a = -q1 * inv2;
        let disc = a * a - q0;
        // Irreducibility forces disc to be a nonresidue, so disc/nu has a
        // square root and the roots are a +- b sqrt(nu) with b != 0.
        let b = fp_sqrt(disc * nu_inv).ok_or_else(|| {
            Error::Internal(format!(
                "reducible quadratic {q:?} escaped the splitter mod {p}"
            ))
        })?;
        if b.is_zero() {
            return Err(Error::Internal(format!(
                "repeated root in squarefree splitting kernel mod {p}"
            )));
        }
        out.push(Fp2Element::new(a, b, nu));
        out.push(Fp2Element::new(a, -b, nu));
    }
    out.sort();
    Ok(out)
}

/// The supersingular locus of the j line in characteristic p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersingularCensus {
    pub p: u64,
    /// The nonresidue generating F_p^2 = F_p(sqrt(nu)).
    pub nu: u64,
    /// All supersingular j invariants, sorted, each exactly once.
    pub j_invariants: Vec<Fp2Element>,
    /// Number of distinct supersingular Legendre parameters in F_p^2.
    pub lambda_count: usize,
    /// Count of j invariants rational over F_p.
    pub h: usize,
    /// Count of Frobenius conjugate pairs outside F_p.
    pub pairs: usize,
}

impl SupersingularCensus {
    pub fn total(&self) -> usize {
        self.j_invariants.len()
    }

    pub fn has_j0(&self) -> bool {
        self.j_invariants
            .iter()
            .any(|j| j.is_zero())
    }

    pub fn has_j1728(&self) -> bool {
        let target = Fp2Element::from_parts(1728 % self.p, 0, self.p, self.nu);
        self.j_invariants.binary_search(&target).is_ok()
    }

    /// Membership test for a rational j value.
    pub fn contains_fp_j(&self, j: u64) -> bool {
        let target = Fp2Element::from_parts(j, 0, self.p, self.nu);
        self.j_invariants.binary_search(&target).is_ok()
    }
}

/// Enumerates the supersingular j invariants of characteristic p.
///
/// The lambda roots are counted twice over (degree bookkeeping during
/// root isolation, then explicit extraction), the j set is checked for
/// closure under Frobenius, and at least one rational j must appear;
/// any discrepancy is a hard error, never a silently adjusted count.
pub fn census(p: u64) -> Result<SupersingularCensus> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    let nu = quad_nonresidue(p)?.value();
    let h_poly = deuring_polynomial(p)?;
    let (xp, xp2) = frobenius_powers(&h_poly)?;
    let (fp_lambda, quad_count) = distinct_roots_with(&h_poly, &xp, &xp2)?;
    let quad_lambda = quadratic_lambda_roots(&h_poly, &xp, &xp2, &fp_lambda, nu)?;
    if quad_lambda.len() != quad_count {
        return Err(Error::CensusInconsistent {
            p,
            reason: format!(
                "explicit extraction found {} quadratic lambda roots, degree count promised {}",
                quad_lambda.len(),
                quad_count
            ),
        });
    }
    let lambda_count = fp_lambda.len() + quad_lambda.len();

    let mut jset = BTreeSet::new();
    for r in &fp_lambda {
        jset.insert(lambda_to_j(Fp2Element::from_fp(*r, nu))?);
    }
    for l in &quad_lambda {
        jset.insert(lambda_to_j(*l)?);
    }
    let j_invariants: Vec<Fp2Element> = jset.into_iter().collect();

    let h = j_invariants.iter().filter(|j| j.is_in_base()).count();
    let nonrational = j_invariants.len() - h;
    for j in &j_invariants {
        if !j.is_in_base() && j_invariants.binary_search(&fp2_frobenius(*j)).is_err() {
            return Err(Error::CensusInconsistent {
                p,
                reason: format!("j = {j} lacks its Frobenius conjugate"),
            });
        }
    }
    if nonrational % 2 != 0 {
        return Err(Error::CensusInconsistent {
            p,
            reason: "odd number of non rational j invariants".into(),
        });
    }
    if h == 0 {
        return Err(Error::CensusInconsistent {
            p,
            reason: "no F_p rational supersingular j invariant".into(),
        });
    }
    Ok(SupersingularCensus {
        p,
        nu,
        j_invariants,
        lambda_count,
        h,
        pairs: nonrational / 2,
    })
}

/// A short Weierstrass model y^2 = x^3 + a4 x + a6 with the requested j
/// invariant: (0, 1) for j = 0, (1, 0) for j = 1728, else
/// (3k, 2k) with k = j / (1728 - j).
pub fn curve_for_j(j: Fp2Element) -> (Fp2Element, Fp2Element) {
    let p = j.modulus();
    let nu = j.nu();
    let zero = Fp2Element::zero(p, nu);
    let one = Fp2Element::one(p, nu);
    let j1728 = Fp2Element::from_parts(1728 % p, 0, p, nu);
    if j.is_zero() {
        return (zero, one);
    }
    if (j - j1728).is_zero() {
        return (one, zero);
    }
    let k = j * (j1728 - j).inv().expect("j != 1728 on this branch");
    let three = Fp2Element::from_parts(3, 0, p, nu);
    let two = Fp2Element::from_parts(2, 0, p, nu);
    (three * k, two * k)
}

fn fp2_mul_trunc(a: &[Fp2Element], b: &[Fp2Element], cap: usize, zero: Fp2Element) -> Vec<Fp2Element> {
    let full = a.len() + b.len();
    let n = full.saturating_sub(1).min(cap);
    let mut out = vec![zero; n];
    for (i, &x) in a.iter().enumerate() {
        if i >= cap {
            break;
        }
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j >= cap {
                break;
            }
            if !y.is_zero() {
                out[i + j] = out[i + j] + x * y;
            }
        }
    }
    out
}

fn fp2_pow_trunc(base: &[Fp2Element], mut exp: u64, cap: usize, one: Fp2Element) -> Vec<Fp2Element> {
    let mut acc = vec![one];
    let mut b: Vec<Fp2Element> = base.iter().copied().take(cap).collect();
    let zero = one - one;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp2_mul_trunc(&acc, &b, cap, zero);
        }
        exp >>= 1;
        if exp > 0 {
            b = fp2_mul_trunc(&b, &b, cap, zero);
        }
    }
    acc
}

/// Coefficient criterion for supersingularity: y^2 = x^3 + a4 x + a6 is
/// supersingular over F_p^2 exactly when the coefficient of x^(p-1) in
/// (x^3 + a4 x + a6)^((p-1)/2) vanishes. Products are truncated at degree
/// p - 1 throughout, so the power never materializes in full.
pub fn is_ss_hasse(a4: Fp2Element, a6: Fp2Element) -> Result<bool> {
    let p = a4.modulus();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    let nu = a4.nu();
    let four = Fp2Element::from_parts(4, 0, p, nu);
    let c27 = Fp2Element::from_parts(27, 0, p, nu);
    if (four * a4 * a4 * a4 + c27 * a6 * a6).is_zero() {
        return Err(Error::SingularCurve);
    }
    let zero = Fp2Element::zero(p, nu);
    let one = Fp2Element::one(p, nu);
    let f = [a6, a4, zero, one];
    let power = fp2_pow_trunc(&f, (p - 1) / 2, p as usize, one);
    Ok(power.get(p as usize - 1).map_or(true, |c| c.is_zero()))
}

/// Supersingularity by literal point counting: a model with the given
/// rational j invariant is counted over F_p through the quadratic
/// character, and the curve is supersingular exactly when the character
/// sum vanishes (the trace is a multiple of p below the Weil bound).
pub fn is_ss_pointcount(j: FpElement) -> Result<bool> {
    let p = j.modulus();
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::PrimeTooSmall(p));
    }
    let (a4, a6) = rational_curve_for_j(j)?;
    let mut sum: i64 = 0;
    for x in 0..p {
        let xe = FpElement::new(x, p);
        let val = xe * xe * xe + a4 * xe + a6;
        sum += val.legendre() as i64;
    }
    Ok(sum == 0)
}

fn rational_curve_for_j(j: FpElement) -> Result<(FpElement, FpElement)> {
    let p = j.modulus();
    let zero = FpElement::zero(p);
    let one = FpElement::one(p);
    let j1728 = FpElement::new(1728 % p, p);
    if j.is_zero() {
        return Ok((zero, one));
    }
    if j == j1728 {
        return Ok((one, zero));
    }
    let k = j * (j1728 - j).inv()?;
    Ok((FpElement::new(3, p) * k, FpElement::new(2, p) * k))
}

/// Wire form of a census for caching and emission.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub p: u64,
    pub nu: u64,
    /// Coefficient pairs (a, b) of j = a + b sqrt(nu), sorted.
    pub j_invariants: Vec<(u64, u64)>,
    pub lambda_count: u64,
    pub h: u64,
    pub pairs: u64,
}

impl From<&SupersingularCensus> for CensusRecord {
    fn from(c: &SupersingularCensus) -> Self {
        CensusRecord {
            p: c.p,
            nu: c.nu,
            j_invariants: c.j_invariants.iter().map(|j| j.parts()).collect(),
            lambda_count: c.lambda_count as u64,
            h: c.h as u64,
            pairs: c.pairs as u64,
        }
    }
}

impl TryFrom<CensusRecord> for SupersingularCensus {
    type Error = Error;

    /// Rebuilds a census from its wire form, re-deriving and re-checking
    /// every redundant field so a corrupted record cannot slip through.
    fn try_from(rec: CensusRecord) -> Result<Self> {
        let p = rec.p;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p < 5 {
            return Err(Error::PrimeTooSmall(p));
        }
        let bad = |reason: &str| Error::CensusInconsistent {
            p,
            reason: reason.to_string(),
        };
        if FpElement::new(rec.nu, p).legendre() != -1 || rec.nu >= p {
            return Err(bad("stored nu is not a nonresidue"));
        }
        let j_invariants: Vec<Fp2Element> = rec
            .j_invariants
            .iter()
            .map(|&(a, b)| Fp2Element::from_parts(a, b, p, rec.nu))
            .collect();
        for w in j_invariants.windows(2) {
            if w[0] >= w[1] {
                return Err(bad("j invariants not sorted and distinct"));
            }
        }
        for (stored, rebuilt) in rec.j_invariants.iter().zip(&j_invariants) {
            if *stored != rebuilt.parts() {
                return Err(bad("j invariant out of canonical range"));
            }
        }
        let h = j_invariants.iter().filter(|j| j.is_in_base()).count();
        let nonrational = j_invariants.len() - h;
        for j in &j_invariants {
            if !j.is_in_base() && j_invariants.binary_search(&fp2_frobenius(*j)).is_err() {
                return Err(bad("j set not closed under Frobenius"));
            }
        }
        if nonrational % 2 != 0 || h as u64 != rec.h || (nonrational / 2) as u64 != rec.pairs {
            return Err(bad("stored h or pairs disagree with the j set"));
        }
        if h == 0 {
            return Err(bad("no F_p rational supersingular j invariant"));
        }
        if rec.lambda_count > (p - 1) / 2 {
            return Err(bad("lambda count exceeds the Legendre root bound"));
        }
        Ok(SupersingularCensus {
            p,
            nu: rec.nu,
            j_invariants,
            lambda_count: rec.lambda_count as usize,
            h,
            pairs: nonrational / 2,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deuring_coefficients_small_primes() {
        assert_eq!(deuring_polynomial(5).unwrap().coeffs(), &[1, 4, 1]);
        assert_eq!(deuring_polynomial(7).unwrap().coeffs(), &[1, 2, 2, 1]);
        assert_eq!(
            deuring_polynomial(11).unwrap().coeffs(),
            &[1, 3, 1, 1, 3, 1]
        );
        assert!(deuring_polynomial(9).is_err());
        assert!(deuring_polynomial(3).is_err());
    }

    #[test]
    fn deuring_degree_is_half_p_minus_one() {
        for p in [13u64, 17, 19, 23, 101] {
            assert_eq!(
                deuring_polynomial(p).unwrap().degree(),
                Some(((p - 1) / 2) as usize)
            );
        }
    }

    #[test]
    fn lambda_to_j_rational_values() {
        // Over F_11 the rational supersingular lambdas 2, 6, 10 all map to
        // j = 1, and the pair 6 +- sqrt(2) kills l^2 - l + 1, so j = 0.
        let p = 11;
        let nu = 2;
        for l in [2u64, 6, 10] {
            let j = lambda_to_j(Fp2Element::from_parts(l, 0, p, nu)).unwrap();
            assert_eq!(j.parts(), (1, 0), "lambda = {l}");
        }
        let j = lambda_to_j(Fp2Element::from_parts(6, 1, p, nu)).unwrap();
        assert_eq!(j.parts(), (0, 0));
    }

    #[test]
    fn lambda_to_j_rejects_degenerate_parameters() {
        for l in [0u64, 1] {
            let r = lambda_to_j(Fp2Element::from_parts(l, 0, 13, 2));
            assert_eq!(r, Err(Error::DegenerateLambda(l)));
        }
    }

    #[test]
    fn census_p5_single_j0() {
        let c = census(5).unwrap();
        assert_eq!(c.total(), 1);
        assert_eq!(c.h, 1);
        assert_eq!(c.pairs, 0);
        assert_eq!(c.lambda_count, 2);
        assert!(c.has_j0());
        assert!(!c.has_j1728());
        assert_eq!(c.j_invariants[0].parts(), (0, 0));
    }

    #[test]
    fn census_p7_single_j1728() {
        let c = census(7).unwrap();
        assert_eq!(c.total(), 1);
        assert_eq!(c.h, 1);
        assert_eq!(c.pairs, 0);
        assert_eq!(c.lambda_count, 3);
        assert!(c.has_j1728());
        assert_eq!(c.j_invariants[0].parts(), (1728 % 7, 0));
    }

    #[test]
    fn census_p11_j0_and_j1() {
        let c = census(11).unwrap();
        assert_eq!(c.total(), 2);
        assert_eq!(c.h, 2);
        assert_eq!(c.pairs, 0);
        assert_eq!(c.lambda_count, 5);
        let parts: Vec<(u64, u64)> = c.j_invariants.iter().map(|j| j.parts()).collect();
        assert_eq!(parts, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn census_p13_single_j5() {
        let c = census(13).unwrap();
        assert_eq!(c.total(), 1);
        assert_eq!(c.h, 1);
        assert_eq!(c.pairs, 0);
        assert_eq!(c.j_invariants[0].parts(), (5, 0));
        assert!(!c.has_j0());
        assert!(!c.has_j1728());
    }

    #[test]
    fn census_p23_three_rational() {
        let c = census(23).unwrap();
        assert_eq!((c.total(), c.h, c.pairs), (3, 3, 0));
        assert!(c.has_j0(), "23 = 2 mod 3");
        assert!(c.has_j1728(), "23 = 3 mod 4");
    }

    #[test]
    fn census_p37_one_conjugate_pair() {
        let c = census(37).unwrap();
        assert_eq!((c.total(), c.h, c.pairs), (3, 1, 1));
        let conj: Vec<_> = c
            .j_invariants
            .iter()
            .filter(|j| !j.is_in_base())
            .collect();
        assert_eq!(conj.len(), 2);
        assert_eq!(fp2_frobenius(*conj[0]), *conj[1]);
    }

    #[test]
    fn census_rejects_bad_characteristic() {
        assert_eq!(census(4), Err(Error::NotPrime(4)));
        assert_eq!(census(3), Err(Error::PrimeTooSmall(3)));
        assert_eq!(census(0), Err(Error::NotPrime(0)));
    }

    #[test]
    fn hasse_known_curves() {
        let p = 11;
        let nu = 2;
        let e = |a, b| Fp2Element::from_parts(a, b, p, nu);
        // j = 0 and j = 1728 are both supersingular mod 11.
        assert!(is_ss_hasse(e(0, 0), e(1, 0)).unwrap());
        assert!(is_ss_hasse(e(1, 0), e(0, 0)).unwrap());
        // j = 0 is ordinary mod 13 since 13 = 1 mod 3.
        let f = |a, b| Fp2Element::from_parts(a, b, 13, 2);
        assert!(!is_ss_hasse(f(0, 0), f(1, 0)).unwrap());
        // Singular input is rejected, not classified.
        assert_eq!(is_ss_hasse(e(0, 0), e(0, 0)), Err(Error::SingularCurve));
    }

    #[test]
    fn pointcount_on_known_j_values() {
        assert!(is_ss_pointcount(FpElement::new(0, 11)).unwrap());
        assert!(is_ss_pointcount(FpElement::new(1, 11)).unwrap());
        assert!(!is_ss_pointcount(FpElement::new(2, 11)).unwrap());
        assert!(is_ss_pointcount(FpElement::new(5, 13)).unwrap());
        assert!(!is_ss_pointcount(FpElement::new(0, 13)).unwrap());
        assert!(is_ss_pointcount(FpElement::new(0, 5)).unwrap());
        assert!(is_ss_pointcount(FpElement::new(1728 % 7, 7)).unwrap());
        assert!(is_ss_pointcount(FpElement::new(3, 23)).unwrap());
    }

    #[test]
    fn oracles_agree_on_the_whole_rational_j_line() {
        for p in [5u64, 7, 11, 13, 17, 19] {
            let nu = quad_nonresidue(p).unwrap().value();
            let c = census(p).unwrap();
            for j in 0..p {
                let by_count = is_ss_pointcount(FpElement::new(j, p)).unwrap();
                let (a4, a6) = curve_for_j(Fp2Element::from_parts(j, 0, p, nu));
                let by_hasse = is_ss_hasse(a4, a6).unwrap();
                assert_eq!(by_count, by_hasse, "p = {p}, j = {j}");
                assert_eq!(by_count, c.contains_fp_j(j), "census vs count p = {p}, j = {j}");
            }
        }
    }

    #[test]
    fn census_record_roundtrip_and_validation() {
        let c = census(37).unwrap();
        let rec = CensusRecord::from(&c);
        let back = SupersingularCensus::try_from(rec.clone()).unwrap();
        assert_eq!(back, c);

        let mut broken = rec.clone();
        broken.h += 1;
        assert!(SupersingularCensus::try_from(broken).is_err());

        let mut broken = rec.clone();
        broken.j_invariants.reverse();
        assert!(SupersingularCensus::try_from(broken).is_err());

        let mut broken = rec;
        broken.j_invariants.pop();
        assert!(SupersingularCensus::try_from(broken).is_err());
    }

    #[test]
    fn curve_models_have_requested_j() {
        // j(E) for y^2 = x^3 + ax + b is 1728 * 4a^3 / (4a^3 + 27b^2);
        // recompute it for every rational j mod 13 and 17.
        for p in [13u64, 17] {
            let nu = quad_nonresidue(p).unwrap().value();
            for jv in 0..p {
                let j = Fp2Element::from_parts(jv, 0, p, nu);
                let (a4, a6) = curve_for_j(j);
                let four = Fp2Element::from_parts(4, 0, p, nu);
                let c27 = Fp2Element::from_parts(27, 0, p, nu);
                let c1728 = Fp2Element::from_parts(1728 % p, 0, p, nu);
                let num = four * a4 * a4 * a4;
                let den = num + c27 * a6 * a6;
                let back = c1728 * num * den.inv().unwrap();
                assert_eq!(back, j, "p = {p}, j = {jv}");
            }
        }
    }
}
