//! Acceptance suite: every guaranteed behavior of the calculator is
//! exercised here at full advertised scale, one test per criterion, each
//! ending in a single PASS line. All comparisons are exact.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use x0p_core::dualgraph::{build_graph, component_group, ArithGraph, Edge};
use x0p_core::ff::{quad_nonresidue, Fp2Element, FpElement};
use x0p_core::invariants::{
    assemble_with_census, elliptic_ram_part, KodairaType,
};
use x0p_core::ssenum::{census, curve_for_j, is_ss_hasse, is_ss_pointcount, SupersingularCensus};
use x0p_core::zlinalg::{
    cokernel, det_bareiss, rational_rank, snf, AbGroup, IntMatrix,
};
use x0p_core::{eisenstein_number, genus_x0, primes_between, Pi1Report};

const SWEEP_MIN: u64 = 5;
const SWEEP_MAX: u64 = 499;

struct Sweep {
    censuses: Vec<SupersingularCensus>,
    reports: Vec<Pi1Report>,
    elapsed: Duration,
}

/// One sequential census + assembly pass over every prime in [5, 499],
/// shared by all criteria. The wall time of this single threaded pass is
/// what the runtime budget criterion measures.
fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let mut censuses = Vec::new();
        let mut reports = Vec::new();
        for p in primes_between(SWEEP_MIN, SWEEP_MAX) {
            let c = census(p).expect("census");
            let r = assemble_with_census(&c).expect("assemble");
            censuses.push(c);
            reports.push(r);
        }
        Sweep {
            censuses,
            reports,
            elapsed: start.elapsed(),
        }
    })
}

fn report_for(p: u64) -> &'static Pi1Report {
    sweep()
        .reports
        .iter()
        .find(|r| r.p == p)
        .expect("prime inside sweep range")
}

#[test]
fn acceptance_1_torsion_reproduction() {
    let s = sweep();
    assert_eq!(s.reports.len(), 93);
    for r in &s.reports {
        let n = eisenstein_number(r.p).unwrap();
        assert_eq!(
            r.torsion,
            AbGroup::cyclic(n).unwrap(),
            "torsion at p = {}",
            r.p
        );
        assert!(r.checks.phi_order_vs_eisenstein, "p = {}", r.p);
        assert!(r.checks.phi_cyclic, "p = {}", r.p);
    }
    assert!(
        s.elapsed < Duration::from_secs(60),
        "single threaded sweep took {:?}",
        s.elapsed
    );
    println!(
        "[PASS] criterion 1: torsion Z/numerator((p-1)/12) reproduced for all 93 primes in [5, 499] in {:?}",
        s.elapsed
    );
}

#[test]
fn acceptance_2_rank_reproduction() {
    for r in &sweep().reports {
        let g = genus_x0(r.p).unwrap();
        let h = r.census.h;
        assert_eq!((g + h - 1) % 2, 0, "parity at p = {}", r.p);
        let expected = (g + h - 1) / 2;
        assert_eq!(r.rank, expected, "rank at p = {}", r.p);
        assert_eq!(
            r.coinvariants,
            AbGroup::free(expected as usize),
            "coinvariants at p = {}",
            r.p
        );
        assert!(r.checks.rank_formula && r.checks.coinvariants_free, "p = {}", r.p);
    }
    println!("[PASS] criterion 2: free rank (g + h - 1)/2 reproduced for all primes in [5, 499]");
}

#[test]
fn acceptance_3_census_identities() {
    for (c, r) in sweep().censuses.iter().zip(&sweep().reports) {
        let g = genus_x0(c.p).unwrap() as usize;
        assert_eq!(c.total(), g + 1, "total vs genus at p = {}", c.p);
        assert_eq!(
            c.total(),
            c.h + 2 * c.pairs,
            "total vs h + 2 pairs at p = {}",
            c.p
        );
        assert!(r.checks.genus_vs_census, "p = {}", c.p);
    }
    println!("[PASS] criterion 3: census identities total = g + 1 = h + 2 pairs for all primes in [5, 499]");
}

#[test]
fn acceptance_4_oracle_equivalence() {
    let start = Instant::now();
    // Coefficient criterion confirms every census point up to 199.
    for c in &sweep().censuses {
        if c.p > 199 {
            continue;
        }
        for &j in &c.j_invariants {
            let (a4, a6) = curve_for_j(j);
            assert!(
                is_ss_hasse(a4, a6).unwrap(),
                "census j = {j} fails the coefficient criterion at p = {}",
                c.p
            );
        }
    }
    // Point counting agrees with census membership on the whole rational
    // j line up to 101.
    for c in &sweep().censuses {
        if c.p > 101 {
            continue;
        }
        for j in 0..c.p {
            assert_eq!(
                is_ss_pointcount(FpElement::new(j, c.p)).unwrap(),
                c.contains_fp_j(j),
                "point count vs census at p = {}, j = {j}",
                c.p
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed < Duration::from_secs(120),
        "oracle pass took {elapsed:?}"
    );
    println!(
        "[PASS] criterion 4: coefficient oracle (p <= 199) and point count oracle (p <= 101) agree with the census in {elapsed:?}"
    );
}

#[test]
fn acceptance_5_spot_values() {
    let cases: [(u64, Option<u64>, u64); 4] = [
        (11, Some(5), 1),
        (13, None, 0),
        (23, Some(11), 2),
        (37, Some(3), 1),
    ];
    for (p, torsion, rank) in cases {
        let r = report_for(p);
        let expected = match torsion {
            Some(n) => AbGroup::cyclic(n).unwrap(),
            None => AbGroup::trivial(),
        };
        assert_eq!(r.torsion, expected, "torsion at p = {p}");
        assert_eq!(r.rank, rank, "rank at p = {p}");
        assert!(r.checks.all(), "checks at p = {p}");
    }
    println!("[PASS] criterion 5: spot values at p = 11, 13, 23, 37 match the published structure");
}

#[test]
fn acceptance_6_injectivity_divisibility() {
    for r in &sweep().reports {
        let n = BigUint::from(r.eisenstein_number);
        let order = r.torsion.order().expect("finite component group");
        assert!(
            (&order % &n).is_zero(),
            "Eisenstein number does not divide |Phi| at p = {}",
            r.p
        );
        assert_eq!(
            order.gcd(&BigUint::from(r.p)),
            BigUint::one(),
            "component group order not coprime to p at p = {}",
            r.p
        );
        assert!(r.checks.injectivity_divisibility, "p = {}", r.p);
    }
    println!("[PASS] criterion 6: cuspidal order divides |Phi| and is prime to p for all primes in [5, 499]");
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    fn in_range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

#[test]
fn acceptance_7a_smith_normal_form_properties() {
    let mut rng = XorShift(0x5eed_cafe_f00d_1234);
    let mut checked = 0usize;
    while checked < 200 {
        let rows = rng.in_range(1, 6) as usize;
        let cols = rng.in_range(1, 6) as usize;
        let entries: Vec<i64> = (0..rows * cols).map(|_| rng.in_range(-9, 9)).collect();
        let a = IntMatrix::from_i64(rows, cols, &entries).unwrap();
        let s = snf(&a);

        let uav = s.u.mul(&a).unwrap().mul(&s.v).unwrap();
        assert_eq!(uav, s.d, "u a v != d");
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(s.d[(i, j)].is_zero(), "off diagonal entry");
                }
            }
        }
        let diag = s.d.diagonal();
        for w in diag.windows(2) {
            assert!(!w[0].is_negative() && !w[1].is_negative());
            if !w[1].is_zero() {
                assert!(!w[0].is_zero(), "zero before nonzero");
                assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            }
        }
        assert_eq!(det_bareiss(&s.u).unwrap().abs(), BigInt::one());
        assert_eq!(det_bareiss(&s.v).unwrap().abs(), BigInt::one());
        assert_eq!(
            s.v.mul(&s.v_inv).unwrap(),
            IntMatrix::identity(cols),
            "v_inv is not the inverse of v"
        );
        assert_eq!(s.rank(), rational_rank(&a), "rank disagrees with fraction free elimination");

        let gcd_all = entries
            .iter()
            .fold(BigInt::zero(), |acc, &e| acc.gcd(&BigInt::from(e)));
        if !gcd_all.is_zero() {
            assert_eq!(diag[0], gcd_all, "first invariant factor is the entry gcd");
        }
        if rows == cols {
            let prod = diag.iter().fold(BigInt::one(), |acc, d| acc * d);
            assert_eq!(prod, det_bareiss(&a).unwrap().abs(), "diagonal product vs determinant");
        }
        checked += 1;
    }
    println!("[PASS] criterion 7a: Smith normal form contract held on {checked} random matrices");
}

/// Critical group of the multigraph obtained by subdividing each weighted
/// edge into unit edges: the cokernel of the reduced Laplacian. This is a
/// wholly separate route to the component group that never sees the cycle
/// basis or the Gram pairing.
fn subdivided_critical_group(g: &ArithGraph) -> AbGroup {
    let mut n = g.n_vertices;
    let mut unit_edges: Vec<(usize, usize)> = Vec::new();
    for e in &g.edges {
        let mut prev = e.tail;
        for _ in 1..e.length {
            unit_edges.push((prev, n));
            prev = n;
            n += 1;
        }
        unit_edges.push((prev, e.head));
    }
    let mut lap = IntMatrix::zero(n, n);
    for &(a, b) in &unit_edges {
        lap[(a, a)] += 1;
        lap[(b, b)] += 1;
        lap[(a, b)] -= 1;
        lap[(b, a)] -= 1;
    }
    let reduced = lap.submatrix(1..n, 1..n);
    cokernel(&reduced)
}

#[test]
fn acceptance_7b_subdivision_invariance() {
    for c in &sweep().censuses {
        let g = build_graph(c).unwrap();
        let phi = component_group(&g).unwrap();
        let sandpile = subdivided_critical_group(&g);
        assert_eq!(phi, sandpile, "subdivision oracle disagrees at p = {}", c.p);
    }
    // Synthetic weight patterns beyond what a census can produce.
    let nu = quad_nonresidue(13).unwrap().value();
    for weights in [vec![2u64, 2], vec![5, 4, 3], vec![1, 2, 3, 4], vec![7]] {
        let edges: Vec<Edge> = weights
            .iter()
            .enumerate()
            .map(|(i, &length)| Edge {
                tail: 0,
                head: 1,
                length,
                label: Fp2Element::from_parts(i as u64, 0, 13, nu),
            })
            .collect();
        let count = edges.len();
        let g = ArithGraph {
            p: 13,
            nu,
            n_vertices: 2,
            edges,
            frobenius: (0..count).collect(),
        };
        assert_eq!(
            component_group(&g).unwrap(),
            subdivided_critical_group(&g),
            "subdivision oracle disagrees on weights {weights:?}"
        );
    }
    println!("[PASS] criterion 7b: monodromy cokernel equals the subdivided sandpile group for all primes in [5, 499]");
}

#[test]
fn acceptance_7c_lambda_fiber_identity() {
    for c in &sweep().censuses {
        let special = usize::from(c.has_j0()) + usize::from(c.has_j1728());
        let generic = c.total() - special;
        let expected =
            6 * generic + 3 * usize::from(c.has_j1728()) + 2 * usize::from(c.has_j0());
        assert_eq!(
            c.lambda_count,
            expected,
            "lambda fiber identity fails at p = {}",
            c.p
        );
        assert_eq!(c.lambda_count as u64, (c.p - 1) / 2, "p = {}", c.p);
    }
    println!("[PASS] criterion 7c: (p-1)/2 = 6s + 3[1728] + 2[0] fiber identity for all primes in [5, 499]");
}

#[test]
fn acceptance_7d_cm_congruences() {
    for c in &sweep().censuses {
        assert_eq!(
            c.has_j0(),
            c.p % 3 == 2,
            "j = 0 supersingularity congruence at p = {}",
            c.p
        );
        assert_eq!(
            c.has_j1728(),
            c.p % 4 == 3,
            "j = 1728 supersingularity congruence at p = {}",
            c.p
        );
    }
    println!("[PASS] criterion 7d: CM congruences (j = 0 iff p = 2 mod 3, j = 1728 iff p = 3 mod 4) for all primes in [5, 499]");
}

#[test]
fn acceptance_8_kodaira_table() {
    use KodairaType::*;
    // The reference table is frozen here, independently of the library's
    // own encoding: reduction type -> invariant factors of the geometric
    // component group.
    let table: Vec<(KodairaType, Vec<u64>)> = vec![
        (I0, vec![]),
        (II, vec![]),
        (III, vec![2]),
        (IV, vec![3]),
        (I0Star, vec![2, 2]),
        (InStar(1), vec![4]),
        (InStar(2), vec![2, 2]),
        (InStar(3), vec![4]),
        (InStar(4), vec![2, 2]),
        (IVStar, vec![3]),
        (IIIStar, vec![2]),
        (IIStar, vec![]),
    ];
    for q in [4u64, 5, 7, 9, 25] {
        for (t, factors) in &table {
            let expected_factors: Vec<BigUint> = factors
                .iter()
                .map(|&d| BigUint::from(d.gcd(&(q - 1))))
                .filter(|d| *d > BigUint::one())
                .collect();
            let expected = AbGroup::new(0, expected_factors).unwrap();
            let got = elliptic_ram_part(*t, q).unwrap();
            assert_eq!(got, expected, "type {t:?} at q = {q}");
            // Order sanity: prod gcd(d_i, q - 1).
            let order: u64 = factors.iter().map(|&d| d.gcd(&(q - 1))).product();
            assert_eq!(got.order(), Some(BigUint::from(order)), "order of {t:?} at q = {q}");
        }
    }
    for s in ["I1", "I2", "I9"] {
        assert!(
            matches!(
                s.parse::<KodairaType>(),
                Err(x0p_core::Error::MultiplicativeReduction(_))
            ),
            "{s} must be rejected as multiplicative"
        );
    }
    println!("[PASS] criterion 8: Kodaira component group table verified for q in {{4, 5, 7, 9, 25}}, multiplicative types rejected");
}
