//! Primitive collections and relations of a simplicial face fan: minimal
//! non-faces, the focus cone, coefficients and degree, plus the existence
//! and non-cone criteria used as verifiable invariants.

use std::collections::HashSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{solve_integer_system, Matrix, Vector};
use crate::polytope::LatticePolytope;
use crate::scalar::Scalar;

/// A minimal non-face of the facet complex: the set spans no cone, every
/// proper subset does.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveCollection {
    /// Sorted vertex indices.
    pub indices: Vec<usize>,
}

/// The relation `Σ_{x∈𝒫} x = Σ bᵢ yᵢ` with `yᵢ` spanning the minimal cone
/// containing the vertex sum of 𝒫.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveRelation<S: Scalar> {
    pub collection: PrimitiveCollection,
    /// Sorted vertex indices generating the focus cone σ(𝒫); empty iff the
    /// vertex sum of the collection is zero.
    pub focus: Vec<usize>,
    /// Positive integer coefficients, aligned with `focus`.
    pub coefficients: Vec<S>,
    /// `|𝒫| − Σ bᵢ`; strictly positive on Fano inputs.
    pub degree: i64,
}

/// Every face of the simplicial facet complex, as sorted index sets
/// (including the empty face).
fn face_set<S: Scalar>(p: &LatticePolytope<S>) -> Result<HashSet<Vec<usize>>> {
    if !p.is_simplicial()? {
        return Err(Error::NotSimplicial);
    }
    let mut faces: HashSet<Vec<usize>> = HashSet::new();
    for f in p.facets()? {
        let k = f.vertex_indices.len();
        for mask in 0u32..(1 << k) {
            let sub: Vec<usize> = (0..k)
                .filter(|&j| mask & (1 << j) != 0)
                .map(|j| f.vertex_indices[j])
                .collect();
            faces.insert(sub);
        }
    }
    Ok(faces)
}

/// All minimal non-faces, found by extending each face by one vertex and
/// keeping the candidates all of whose proper subsets are faces.
pub fn primitive_collections<S: Scalar>(
    p: &LatticePolytope<S>,
) -> Result<Vec<PrimitiveCollection>> {
    let faces = face_set(p)?;
    let m = p.vertex_count();
    let mut out: HashSet<Vec<usize>> = HashSet::new();
    for face in &faces {
        for v in 0..m {
            if face.binary_search(&v).is_ok() {
                continue;
            }
            let mut cand = face.clone();
            let pos = cand.partition_point(|&x| x < v);
            cand.insert(pos, v);
            if faces.contains(&cand) || out.contains(&cand) {
                continue;
            }
            let minimal = (0..cand.len()).all(|i| {
                let mut sub = cand.clone();
                sub.remove(i);
                faces.contains(&sub)
            });
            if minimal {
                out.insert(cand);
            }
        }
    }
    let mut list: Vec<PrimitiveCollection> = out
        .into_iter()
        .map(|indices| PrimitiveCollection { indices })
        .collect();
    list.sort();
    Ok(list)
}

/// Expands one collection into its primitive relation. The vertex sum is
/// located in a facet cone, expressed in that facet's vertex basis, and the
/// strictly positive coefficients form the focus; they must come out as
/// positive integers on smooth inputs.
pub fn primitive_relation<S: Scalar>(
    p: &LatticePolytope<S>,
    c: &PrimitiveCollection,
) -> Result<PrimitiveRelation<S>> {
    for &i in &c.indices {
        if i >= p.vertex_count() {
            return Err(Error::InvalidInput(format!("vertex index {i} out of range")));
        }
    }
    let mut sum = Vector::<S>::zeros(p.dim());
    for &i in &c.indices {
        sum = sum.add(p.vertex(i));
    }
    if sum.is_zero() {
        return Ok(PrimitiveRelation {
            collection: c.clone(),
            focus: Vec::new(),
            coefficients: Vec::new(),
            degree: c.indices.len() as i64,
        });
    }
    for f in p.facets()? {
        if f.vertex_indices.len() != p.dim() {
            return Err(Error::NotSimplicial);
        }
        let cols: Vec<Vector<S>> = f
            .vertex_indices
            .iter()
            .map(|&i| p.vertex(i).clone())
            .collect();
        let basis = Matrix::from_col_vectors(&cols);
        let Some(coords) = solve_integer_system(&basis, &sum) else {
            continue;
        };
        if coords.iter().any(|x| x < &num_rational::Ratio::zero()) {
            continue;
        }
        // Minimal cone: drop the zero coefficients.
        let mut focus = Vec::new();
        let mut coefficients = Vec::new();
        let mut total = 0i64;
        for (j, x) in coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if !x.is_integer() {
                return Err(Error::InvariantViolation(format!(
                    "non-integral focus coefficient {x} — input is not smooth"
                )));
            }
            let b = x.numer().clone();
            total += i64::try_from(&b.to_bigint()).map_err(|_| {
                Error::InvariantViolation("focus coefficient out of range".into())
            })?;
            focus.push(f.vertex_indices[j]);
            coefficients.push(b);
        }
        let order: Vec<usize> = {
            let mut idx: Vec<usize> = (0..focus.len()).collect();
            idx.sort_by_key(|&i| focus[i]);
            idx
        };
        let focus: Vec<usize> = order.iter().map(|&i| focus[i]).collect();
        let coefficients: Vec<S> = order.iter().map(|&i| coefficients[i].clone()).collect();
        return Ok(PrimitiveRelation {
            collection: c.clone(),
            focus,
            coefficients,
            degree: c.indices.len() as i64 - total,
        });
    }
    Err(Error::InvariantViolation(
        "vertex sum lies in no facet cone — fan is not complete".into(),
    ))
}

/// All primitive relations of `p`.
pub fn primitive_relations<S: Scalar>(
    p: &LatticePolytope<S>,
) -> Result<Vec<PrimitiveRelation<S>>> {
    primitive_collections(p)?
        .iter()
        .map(|c| primitive_relation(p, c))
        .collect()
}

/// The collections whose focus is empty (vertex sum zero). Guaranteed
/// non-empty for smooth Fano polytopes; emptiness is reported loudly as an
/// invariant violation rather than an empty list.
pub fn trivial_focus_collections<S: Scalar>(
    p: &LatticePolytope<S>,
) -> Result<Vec<PrimitiveCollection>> {
    let mut out = Vec::new();
    for c in primitive_collections(p)? {
        let mut sum = Vector::<S>::zeros(p.dim());
        for &i in &c.indices {
            sum = sum.add(p.vertex(i));
        }
        if sum.is_zero() {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(Error::InvariantViolation(
            "no primitive collection with trivial focus — existence theorem violated".into(),
        ));
    }
    Ok(out)
}

/// Checks the non-cone criterion for an exact relation
/// `Σ aᵢ·x_{lhs[i]} = Σ bⱼ·y_{rhs[j]}` with positive coefficients and
/// `Σaᵢ ≥ Σbⱼ`: returns true when the left support spans a cone, which the
/// criterion asserts cannot happen (so `true` means violation).
pub fn violates_cone_condition<S: Scalar>(
    p: &LatticePolytope<S>,
    lhs: &[usize],
    lhs_coeffs: &[S],
    rhs: &[usize],
    rhs_coeffs: &[S],
) -> Result<bool> {
    if lhs.len() != lhs_coeffs.len() || rhs.len() != rhs_coeffs.len() {
        return Err(Error::InvalidInput("coefficient count mismatch".into()));
    }
    if lhs_coeffs.iter().chain(rhs_coeffs).any(|a| a <= &S::zero()) {
        return Err(Error::InvalidInput("coefficients must be positive".into()));
    }
    let weigh = |ids: &[usize], coeffs: &[S]| -> Vector<S> {
        let mut acc = Vector::<S>::zeros(p.dim());
        for (&i, a) in ids.iter().zip(coeffs) {
            acc = acc.add(&p.vertex(i).scaled(a));
        }
        acc
    };
    if weigh(lhs, lhs_coeffs) != weigh(rhs, rhs_coeffs) {
        return Err(Error::InvalidInput("relation does not hold exactly".into()));
    }
    let lhs_total = lhs_coeffs.iter().fold(S::zero(), |a, b| a + b.clone());
    let rhs_total = rhs_coeffs.iter().fold(S::zero(), |a, b| a + b.clone());
    if lhs_total < rhs_total {
        return Err(Error::InvalidInput(
            "left coefficient sum must dominate the right".into(),
        ));
    }
    p.spans_face(lhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LatticePolytope<BigInt>;

    fn p2() -> P {
        P::from_coords(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn cross2() -> P {
        P::from_coords(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap()
    }

    // A=(1,0) B=(0,1) C=(-1,-1) D=(1,1)
    fn bl1_p2() -> P {
        P::from_coords(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]).unwrap()
    }

    fn hexagon() -> P {
        P::from_coords(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]).unwrap()
    }

    fn collections_of(p: &P) -> Vec<Vec<usize>> {
        primitive_collections(p)
            .unwrap()
            .into_iter()
            .map(|c| c.indices)
            .collect()
    }

    #[test]
    fn collections_of_p2_is_the_whole_vertex_set() {
        assert_eq!(collections_of(&p2()), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn collections_of_cross_are_antipodal_pairs() {
        assert_eq!(collections_of(&cross2()), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn collections_of_blowup() {
        assert_eq!(collections_of(&bl1_p2()), vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn collections_reject_non_simplicial() {
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for x in [-1i64, 1] {
            for y in [-1i64, 1] {
                for z in [-1i64, 1] {
                    rows.push(vec![x, y, z]);
                }
            }
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let cube = P::from_coords(&refs).unwrap();
        assert_eq!(
            primitive_collections(&cube).unwrap_err(),
            Error::NotSimplicial
        );
    }

    #[test]
    fn relation_on_p2_has_trivial_focus_and_degree_three() {
        let p = p2();
        let c = PrimitiveCollection {
            indices: vec![0, 1, 2],
        };
        let r = primitive_relation(&p, &c).unwrap();
        assert!(r.focus.is_empty());
        assert_eq!(r.degree, 3);
    }

    #[test]
    fn relation_on_blowup_ab_equals_d() {
        let p = bl1_p2();
        let r = primitive_relation(
            &p,
            &PrimitiveCollection {
                indices: vec![0, 1],
            },
        )
        .unwrap();
        assert_eq!(r.focus, vec![3]);
        assert_eq!(r.coefficients, vec![BigInt::from(1)]);
        assert_eq!(r.degree, 1);
    }

    #[test]
    fn relation_on_blowup_cd_is_trivial() {
        let p = bl1_p2();
        let r = primitive_relation(
            &p,
            &PrimitiveCollection {
                indices: vec![2, 3],
            },
        )
        .unwrap();
        assert!(r.focus.is_empty());
        assert_eq!(r.degree, 2);
    }

    #[test]
    fn relation_identity_reconstructs_exactly() {
        for p in [p2(), cross2(), bl1_p2(), hexagon()] {
            for r in primitive_relations(&p).unwrap() {
                let mut lhs = Vector::<BigInt>::zeros(p.dim());
                for &i in &r.collection.indices {
                    lhs = lhs.add(p.vertex(i));
                }
                let mut rhs = Vector::<BigInt>::zeros(p.dim());
                for (&i, b) in r.focus.iter().zip(&r.coefficients) {
                    rhs = rhs.add(&p.vertex(i).scaled(b));
                }
                assert_eq!(lhs, rhs, "relation mismatch on {:?}", r.collection);
            }
        }
    }

    #[test]
    fn degrees_are_positive_on_fano_examples() {
        for p in [p2(), cross2(), bl1_p2(), hexagon()] {
            for r in primitive_relations(&p).unwrap() {
                assert!(r.degree > 0, "non-positive degree for {:?}", r.collection);
            }
        }
    }

    #[test]
    fn collections_are_minimal_non_faces_post_hoc() {
        for p in [p2(), cross2(), bl1_p2(), hexagon()] {
            for c in primitive_collections(&p).unwrap() {
                assert!(!p.spans_face(&c.indices).unwrap());
                for i in 0..c.indices.len() {
                    let mut sub = c.indices.clone();
                    sub.remove(i);
                    assert!(p.spans_face(&sub).unwrap());
                }
            }
        }
    }

    #[test]
    fn trivial_focus_on_blowup_is_cd_only() {
        let list = trivial_focus_collections(&bl1_p2()).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list[0].indices, vec![2, 3]);
    }

    #[test]
    fn trivial_focus_on_product_of_lines_is_three_pairs() {
        let p = P::from_coords(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ])
        .unwrap();
        let list = trivial_focus_collections(&p).unwrap();
        assert_eq!(
            list.into_iter().map(|c| c.indices).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![2, 3], vec![4, 5]]
        );
    }

    #[test]
    fn cone_condition_consistent_on_examples() {
        let one = BigInt::from(1);
        // C + D = 0 on the blow-up: {C, D} spans no cone.
        assert!(!violates_cone_condition(
            &bl1_p2(),
            &[2, 3],
            &[one.clone(), one.clone()],
            &[],
            &[]
        )
        .unwrap());
        // x0 + x1 + x2 = 0 on the triangle.
        assert!(!violates_cone_condition(
            &p2(),
            &[0, 1, 2],
            &[one.clone(), one.clone(), one.clone()],
            &[],
            &[]
        )
        .unwrap());
        // A + B = D holds but coefficient sums 2 >= 1: {A, B} spans no cone.
        assert!(!violates_cone_condition(
            &bl1_p2(),
            &[0, 1],
            &[one.clone(), one.clone()],
            &[3],
            &[one.clone()]
        )
        .unwrap());
    }

    #[test]
    fn cone_condition_rejects_false_relations() {
        let one = BigInt::from(1);
        let err = violates_cone_condition(&p2(), &[0, 1], &[one.clone(), one], &[], &[]);
        assert!(err.is_err());
    }
}
