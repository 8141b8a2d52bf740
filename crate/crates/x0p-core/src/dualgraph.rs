//! The dual graph of the special fiber of X_0(p) over Z_p, its cycle
//! lattice, the weighted monodromy pairing, and the Frobenius action.
//!
//! The special fiber is two projective lines crossing at the supersingular
//! points, so the graph has two vertices joined by one edge per
//! supersingular j invariant. An edge is weighted by half the automorphism
//! count of its point: 3 at j = 0, 2 at j = 1728, 1 otherwise. Frobenius
//! fixes both vertices and permutes edges by conjugating their labels.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{fp2_frobenius, Fp2Element};
use crate::ssenum::SupersingularCensus;
use crate::zlinalg::{cokernel, snf, snf_with, AbGroup, IntMatrix};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// An edge of the special fiber dual graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    /// Monodromy weight: half the automorphism count of the crossing.
    pub length: u64,
    /// The supersingular j invariant the edge sits over.
    pub label: Fp2Element,
}

/// Dual graph with Frobenius edge action.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArithGraph {
    pub p: u64,
    pub nu: u64,
    pub n_vertices: usize,
    pub edges: Vec<Edge>,
    /// frobenius[e] is the index of the edge carrying label[e]^p.
    pub frobenius: Vec<usize>,
}

/// Builds the dual graph from a census. Edges appear in the census order
/// of their labels, so the construction is deterministic.
pub fn build_graph(census: &SupersingularCensus) -> Result<ArithGraph> {
    let p = census.p;
    let j1728 = Fp2Element::from_parts(1728 % p, 0, p, census.nu);
    let edges: Vec<Edge> = census
        .j_invariants
        .iter()
        .map(|&j| {
            let length = if j.is_zero() {
                3
            } else if j == j1728 {
                2
            } else {
                1
            };
            Edge {
                tail: 0,
                head: 1,
                length,
                label: j,
            }
        })
        .collect();
    let mut frobenius = Vec::with_capacity(edges.len());
    for e in &edges {
        let conj = fp2_frobenius(e.label);
        let idx = census
            .j_invariants
            .binary_search(&conj)
            .map_err(|_| Error::CensusInconsistent {
                p,
                reason: format!("Frobenius image of j = {} is not a census point", e.label),
            })?;
        frobenius.push(idx);
    }
    Ok(ArithGraph {
        p,
        nu: census.nu,
        n_vertices: 2,
        edges,
        frobenius,
    })
}

fn boundary_matrix(g: &ArithGraph) -> IntMatrix {
    IntMatrix::from_fn(g.n_vertices, g.edges.len(), |v, e| {
        let mut val = BigInt::zero();
        if g.edges[e].head == v {
            val += 1;
        }
        if g.edges[e].tail == v {
            val -= 1;
        }
        val
    })
}

/// A basis of the cycle lattice H_1(graph, Z) = ker(boundary), one cycle
/// per row, in edge coordinates. The basis is saturated: it spans the
/// full integral kernel, not a finite index sublattice.
pub fn cycle_lattice(g: &ArithGraph) -> IntMatrix {
    let e = g.edges.len();
    // When every edge runs between the same two vertices in the same
    // direction, all boundary columns are equal, so the kernel is exactly
    // the zero-sum vectors and consecutive differences e_i - e_{i+1} are a
    // saturated basis (any zero-sum vector telescopes into them). This
    // basis keeps the Gram matrix of the pairing tridiagonal, where the
    // generic kernel basis below would make it dense.
    let parallel = e > 0
        && g.edges[0].tail != g.edges[0].head
        && g
            .edges
            .iter()
            .all(|ed| ed.tail == g.edges[0].tail && ed.head == g.edges[0].head);
    if parallel {
        return IntMatrix::from_fn(e - 1, e, |i, j| {
            if j == i {
                BigInt::one()
            } else if j == i + 1 {
                -BigInt::one()
            } else {
                BigInt::zero()
            }
        });
    }
    let b = boundary_matrix(g);
    let s = snf(&b);
    let r = s.rank();
    // Columns r.. of v map to zero columns of d, hence span ker(b).
    IntMatrix::from_fn(e - r, e, |i, j| s.v[(j, r + i)].clone())
}

/// Gram matrix of the length weighted intersection pairing on the rows of
/// `basis`: gram[i][j] = sum_e basis[i][e] basis[j][e] length[e].
///
/// Accumulated edge by edge over the rows supported on that edge, so a
/// sparse basis costs the sum of squared supports rather than rows^2 *
/// edges; machine arithmetic is used when the entries fit, with checked
/// overflow falling back to the dense bigint sum.
fn weighted_gram(basis: &IntMatrix, g: &ArithGraph) -> IntMatrix {
    let n = basis.rows();
    if let Some(out) = weighted_gram_fast(basis, g) {
        return out;
    }
    IntMatrix::from_fn(n, n, |i, j| {
        let mut acc = BigInt::zero();
        for e in 0..g.edges.len() {
            acc += &basis[(i, e)] * &basis[(j, e)] * BigInt::from(g.edges[e].length);
        }
        acc
    })
}

fn weighted_gram_fast(basis: &IntMatrix, g: &ArithGraph) -> Option<IntMatrix> {
    use num_traits::ToPrimitive;
    let n = basis.rows();
    let e_count = g.edges.len();
    let mut support: Vec<Vec<(usize, i64)>> = vec![Vec::new(); e_count];
    for i in 0..n {
        for e in 0..e_count {
            let v = &basis[(i, e)];
            if !v.is_zero() {
                support[e].push((i, v.to_i64()?));
            }
        }
    }
    let mut acc = vec![0i128; n * n];
    for (e, rows) in support.iter().enumerate() {
        let len = i128::from(g.edges[e].length);
        for &(i, vi) in rows {
            for &(j, vj) in rows {
                let term = (vi as i128).checked_mul(vj as i128)?.checked_mul(len)?;
                acc[i * n + j] = acc[i * n + j].checked_add(term)?;
            }
        }
    }
    let mut out = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            if acc[i * n + j] != 0 {
                out[(i, j)] = BigInt::from(acc[i * n + j]);
            }
        }
    }
    Some(out)
}

/// Component group of the Neron model of the Jacobian: the cokernel of
/// the monodromy pairing on the cycle lattice. The pairing of a connected
/// graph with positive lengths is definite, so a zero elementary divisor
/// is reported as an error rather than a free summand.
pub fn component_group(g: &ArithGraph) -> Result<AbGroup> {
    let basis = cycle_lattice(g);
    if basis.rows() == 0 {
        return Ok(AbGroup::trivial());
    }
    let gram = weighted_gram(&basis, g);
    let s = snf_with(&gram, false);
    if s.d.diagonal().iter().any(|d| d.is_zero()) {
        return Err(Error::DegeneratePairing(g.p));
    }
    AbGroup::new(0, s.invariant_factors())
}

/// Frobenius coinvariants H_1 / (F - 1) H_1 of the cycle lattice.
///
/// The kernel basis is read off from the boundary SNF, Frobenius is
/// rewritten in that basis through v_inv (erroring if the permuted basis
/// leaves the kernel, which would mean the graph data is corrupt), and
/// the coinvariants are the cokernel of the induced map minus identity.
pub fn frobenius_coinvariants(g: &ArithGraph) -> Result<AbGroup> {
    let b = boundary_matrix(g);
    let s = snf(&b);
    let r = s.rank();
    let e = g.edges.len();
    let rank_h1 = e - r;
    if rank_h1 == 0 {
        return Ok(AbGroup::trivial());
    }
    // F sends edge i to edge frobenius[i]; columns of fk are the images
    // of the kernel basis vectors v[:, r..].
    let mut fk = IntMatrix::zero(e, rank_h1);
    for i in 0..e {
        let si = g.frobenius[i];
        for c in 0..rank_h1 {
            fk[(si, c)] = s.v[(i, r + c)].clone();
        }
    }
    let w = s.v_inv.mul(&fk)?;
    for i in 0..r {
        for c in 0..rank_h1 {
            if !w[(i, c)].is_zero() {
                return Err(Error::LatticeNotPreserved(g.p));
            }
        }
    }
    let m = w.submatrix(r..e, 0..rank_h1);
    let m_minus_one = m.sub(&IntMatrix::identity(rank_h1))?;
    Ok(cokernel(&m_minus_one))
}

/// Wire form of the graph for emission.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub p: u64,
    pub nu: u64,
    pub n_vertices: u64,
    pub edges: Vec<EdgeRecord>,
    pub frobenius: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub tail: u64,
    pub head: u64,
    pub length: u64,
    /// Coefficients (a, b) of the label j = a + b sqrt(nu).
    pub j: (u64, u64),
}

impl From<&ArithGraph> for GraphRecord {
    fn from(g: &ArithGraph) -> Self {
        GraphRecord {
            p: g.p,
            nu: g.nu,
            n_vertices: g.n_vertices as u64,
            edges: g
                .edges
                .iter()
                .map(|e| EdgeRecord {
                    tail: e.tail as u64,
                    head: e.head as u64,
                    length: e.length,
                    j: e.label.parts(),
                })
                .collect(),
            frobenius: g.frobenius.iter().map(|&i| i as u64).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ssenum::census;
    use num_bigint::BigUint;

    fn banana(p: u64, lengths: &[u64], frobenius: Vec<usize>) -> ArithGraph {
        let edges = lengths
            .iter()
            .enumerate()
            .map(|(i, &l)| Edge {
                tail: 0,
                head: 1,
                length: l,
                label: Fp2Element::from_parts(i as u64, 0, p, 2),
            })
            .collect();
        ArithGraph {
            p,
            nu: 2,
            n_vertices: 2,
            edges,
            frobenius,
        }
    }

    #[test]
    fn graph_for_p11_has_weighted_edges() {
        let g = build_graph(&census(11).unwrap()).unwrap();
        assert_eq!(g.n_vertices, 2);
        let lengths: Vec<u64> = g.edges.iter().map(|e| e.length).collect();
        // j = 0 carries weight 3; 1728 = 1 mod 11 carries weight 2.
        assert_eq!(lengths, vec![3, 2]);
        assert_eq!(g.frobenius, vec![0, 1]);
    }

    #[test]
    fn cycle_lattice_rank_is_edges_minus_one() {
        for p in [11u64, 23, 37, 41] {
            let g = build_graph(&census(p).unwrap()).unwrap();
            let k = cycle_lattice(&g);
            assert_eq!(k.rows(), g.edges.len() - 1);
            // Every row really is a cycle: entries of each row sum to zero.
            for i in 0..k.rows() {
                let mut sum = BigInt::zero();
                for j in 0..k.cols() {
                    sum += &k[(i, j)];
                }
                assert!(sum.is_zero());
            }
        }
    }

    #[test]
    fn component_groups_of_known_primes() {
        let cases = [
            (11u64, 5u64),
            (13, 1),
            (23, 11),
            (37, 3),
            (101, 25),
        ];
        for (p, order) in cases {
            let g = build_graph(&census(p).unwrap()).unwrap();
            let phi = component_group(&g).unwrap();
            assert_eq!(
                phi.order(),
                Some(BigUint::from(order)),
                "component group order at p = {p}"
            );
            assert!(phi.is_cyclic(), "component group at p = {p}");
        }
    }

    #[test]
    fn component_group_is_weighted_tree_count() {
        // For two vertices and parallel edges of lengths l_i, the group
        // order is sum_i prod_{j != i} l_j.
        let g = banana(11, &[3, 2], vec![0, 1]);
        assert_eq!(
            component_group(&g).unwrap().order(),
            Some(BigUint::from(5u32))
        );
        let g = banana(23, &[3, 2, 1], vec![0, 1, 2]);
        assert_eq!(
            component_group(&g).unwrap().order(),
            Some(BigUint::from(11u32))
        );
        let g = banana(7, &[1, 1, 1, 1, 1], vec![0, 1, 2, 3, 4]);
        assert_eq!(
            component_group(&g).unwrap().order(),
            Some(BigUint::from(5u32))
        );
    }

    #[test]
    fn coinvariants_with_identity_frobenius_are_free_of_full_rank() {
        let g = banana(23, &[3, 2, 1], vec![0, 1, 2]);
        assert_eq!(frobenius_coinvariants(&g).unwrap(), AbGroup::free(2));
        let g = build_graph(&census(23).unwrap()).unwrap();
        assert_eq!(frobenius_coinvariants(&g).unwrap(), AbGroup::free(2));
    }

    #[test]
    fn coinvariants_drop_one_rank_per_swapped_pair() {
        // One fixed edge and two swapped pairs: rank 4 lattice, image of
        // F - 1 is a saturated rank 2 sublattice, so the quotient is Z^2.
        let g = banana(13, &[1, 1, 1, 1, 1], vec![0, 2, 1, 4, 3]);
        assert_eq!(frobenius_coinvariants(&g).unwrap(), AbGroup::free(2));
        // The real p = 37 graph has one pair: rank 2 drops to 1.
        let g = build_graph(&census(37).unwrap()).unwrap();
        assert_eq!(frobenius_coinvariants(&g).unwrap(), AbGroup::free(1));
    }

    #[test]
    fn coinvariants_can_have_torsion_without_a_fixed_edge() {
        // Two swapped pairs and no fixed edge: (F - 1) H_1 has index two
        // in its saturation, so honest torsion Z/2 appears. The census
        // always supplies a rational point, which rules this shape out of
        // the real pipeline; the computation must still report it.
        let g = banana(13, &[1, 1, 1, 1], vec![1, 0, 3, 2]);
        let got = frobenius_coinvariants(&g).unwrap();
        assert_eq!(got.free_rank(), 1);
        assert_eq!(got.invariant_factors(), &[BigUint::from(2u32)]);
    }

    #[test]
    fn trivial_cases_single_edge() {
        let g = build_graph(&census(13).unwrap()).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert!(component_group(&g).unwrap().is_trivial());
        assert!(frobenius_coinvariants(&g).unwrap().is_trivial());
    }

    #[test]
    fn graph_record_reflects_graph() {
        let g = build_graph(&census(37).unwrap()).unwrap();
        let rec = GraphRecord::from(&g);
        assert_eq!(rec.p, 37);
        assert_eq!(rec.n_vertices, 2);
        assert_eq!(rec.edges.len(), 3);
        assert_eq!(rec.frobenius.len(), 3);
        let json = serde_json::to_string(&rec).unwrap();
        let back: GraphRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
    }
}
