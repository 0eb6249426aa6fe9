//! Constructors for the named polytope families used to label
//! classification rows: projective spaces, products (free sums of fan
//! polytopes), the even-dimensional del Pezzo family, and weighted
//! projective spaces realized in an honest lattice basis.


use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::polytope::LatticePolytope;
use crate::scalar::Scalar;

/// A named construction of one polytope.
#[derive(Clone, Debug)]
pub struct CatalogEntry<S: Scalar> {
    pub name: String,
    pub polytope: LatticePolytope<S>,
}

/// `conv{e_1, …, e_n, −(e_1+…+e_n)}`, the fan polytope of ℙⁿ.
pub fn projective_space<S: Scalar>(n: usize) -> Result<LatticePolytope<S>> {
    if n < 1 {
        return Err(Error::InvalidInput("projective space needs n >= 1".into()));
    }
    let mut vertices: Vec<Vector<S>> = (0..n).map(|i| Vector::basis(n, i)).collect();
    vertices.push(Vector::new(vec![S::from_i64(-1); n]));
    LatticePolytope::new(vertices)
}

/// Free sum of fan polytopes: `conv(V(p)⊕0 ∪ 0⊕V(q))`, the fan polytope of
/// the product variety.
pub fn product<S: Scalar>(
    p: &LatticePolytope<S>,
    q: &LatticePolytope<S>,
) -> Result<LatticePolytope<S>> {
    let (dp, dq) = (p.dim(), q.dim());
    let mut vertices = Vec::with_capacity(p.vertex_count() + q.vertex_count());
    for v in p.vertices() {
        let mut coords = v.as_slice().to_vec();
        coords.extend(std::iter::repeat_with(S::zero).take(dq));
        vertices.push(Vector::new(coords));
    }
    for w in q.vertices() {
        let mut coords = vec![S::zero(); dp];
        coords.extend(w.as_slice().iter().cloned());
        vertices.push(Vector::new(coords));
    }
    LatticePolytope::new(vertices)
}

/// `conv{±e_1, …, ±e_d, ±(e_1+…+e_d)}` for even `d`: the del Pezzo family
/// with `2d + 2` vertices.
pub fn del_pezzo_polytope<S: Scalar>(d: usize) -> Result<LatticePolytope<S>> {
    if d < 2 || d % 2 != 0 {
        return Err(Error::InvalidInput(
            "del Pezzo polytopes are defined for even d >= 2".into(),
        ));
    }
    let mut vertices = Vec::with_capacity(2 * d + 2);
    for i in 0..d {
        vertices.push(Vector::basis(d, i));
        vertices.push(Vector::basis(d, i).neg());
    }
    let ones = Vector::new(vec![S::from_i64(1); d]);
    vertices.push(ones.clone());
    vertices.push(ones.neg());
    LatticePolytope::new(vertices)
}

/// Fan polytope of the weighted projective space ℙ(q₀,…,q_n): rays `v_i`
/// with `Σ q_i·v_i = 0` in the quotient lattice `ℤ^{n+1}/ℤ·q`, re-expressed
/// in a ℤ-basis via the Hermite normal form (deterministic basis choice).
///
/// Weights must be well formed: positive, and every `n`-subset coprime.
pub fn weighted_projective<S: Scalar>(weights: &[i64]) -> Result<LatticePolytope<S>> {
    let n = weights.len().saturating_sub(1);
    if n < 1 {
        return Err(Error::InvalidInput("need at least two weights".into()));
    }
    if weights.iter().any(|&q| q < 1) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    for skip in 0..weights.len() {
        let g = weights
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(0i64, |acc, (_, &q)| num_integer::gcd(acc, q));
        if g != 1 {
            return Err(Error::InvalidInput(format!(
                "weights are not well formed: dropping position {skip} leaves gcd {g}"
            )));
        }
    }
    // U·q = (1, 0, …, 0)ᵀ; the quotient by ℤ·q is then "drop the first
    // coordinate of U·x", and the rays are the images of the basis vectors.
    let q_col = Matrix::from_fn(weights.len(), 1, |i, _| S::from_i64(weights[i]));
    let (h, u) = q_col.hermite_normal_form();
    debug_assert!(h.get(0, 0).is_one());
    let vertices: Vec<Vector<S>> = (0..weights.len())
        .map(|i| Vector::new((1..weights.len()).map(|r| u.get(r, i).clone()).collect()))
        .collect();
    LatticePolytope::new(vertices)
}

/// Every catalog construction of dimension `d`: products over all factor
/// multisets of projective spaces and del Pezzo polytopes. Used to attach
/// names to classification rows.
pub fn dimension_catalog<S: Scalar>(d: usize) -> Result<Vec<CatalogEntry<S>>> {
    let mut atom_pairs: Vec<(usize, String)> = Vec::new();
    for k in 1..=d {
        atom_pairs.push((k, format!("P^{k}")));
        if k >= 2 && k % 2 == 0 {
            atom_pairs.push((k, format!("V_{k}")));
        }
    }
    let build_atom = |name: &str| -> Result<LatticePolytope<S>> {
        if let Some(k) = name.strip_prefix("P^") {
            projective_space(k.parse().unwrap())
        } else {
            del_pezzo_polytope(name.strip_prefix("V_").unwrap().parse().unwrap())
        }
    };
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn search(
        atoms: &[(usize, String)],
        start: usize,
        remaining: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining == 0 {
            out.push(stack.clone());
            return;
        }
        for i in start..atoms.len() {
            if atoms[i].0 <= remaining {
                stack.push(i);
                search(atoms, i, remaining - atoms[i].0, stack, out);
                stack.pop();
            }
        }
    }
    let mut combos = Vec::new();
    search(&atom_pairs, 0, d, &mut stack, &mut combos);
    for combo in combos {
        let names: Vec<&str> = combo.iter().map(|&i| atom_pairs[i].1.as_str()).collect();
        let mut polytope = build_atom(names[0])?;
        for name in &names[1..] {
            polytope = product(&polytope, &build_atom(name)?)?;
        }
        out.push(CatalogEntry {
            name: format_product_name(&names),
            polytope,
        });
    }
    Ok(out)
}

/// "A", "A x A", or "(A)^k" per maximal run of equal factors.
fn format_product_name(names: &[&str]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < names.len() {
        let mut j = i;
        while j < names.len() && names[j] == names[i] {
            j += 1;
        }
        let run = j - i;
        match run {
            1 => parts.push(names[i].to_string()),
            2 => parts.push(format!("{} x {}", names[i], names[i])),
            _ => parts.push(format!("({})^{run}", names[i])),
        }
        i = j;
    }
    parts.join(" x ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kstability::k_stability;
    use crate::symmetry::{automorphism_group, is_fibre_like, orbit_data};
    use crate::toric::{is_reflexive, is_smooth, is_terminal, picard_rank, profile};
    use num_bigint::BigInt;

    type P = LatticePolytope<BigInt>;

    #[test]
    fn projective_space_examples() {
        let p1: P = projective_space(1).unwrap();
        assert_eq!(p1.vertex_count(), 2);
        let p2: P = projective_space(2).unwrap();
        assert_eq!(p2.vertex_count(), 3);
        assert!(is_smooth(&p2).unwrap());
        assert_eq!(picard_rank(&p2).unwrap(), 1);
        assert!(is_fibre_like(&p2).unwrap());
        let p4: P = projective_space(4).unwrap();
        assert_eq!(p4.vertex_count(), 5);
        assert!(is_fibre_like(&p4).unwrap());
        assert!(projective_space::<BigInt>(0).is_err());
    }

    #[test]
    fn product_of_lines_is_the_cross_polytope() {
        let p1: P = projective_space(1).unwrap();
        let sq = product(&p1, &p1).unwrap();
        let mut verts: Vec<Vec<i64>> = sq
            .vertices()
            .iter()
            .map(|v| v.iter().map(|e| i64::try_from(e).unwrap()).collect())
            .collect();
        verts.sort();
        assert_eq!(
            verts,
            vec![vec![-1, 0], vec![0, -1], vec![0, 1], vec![1, 0]]
        );
    }

    #[test]
    fn product_of_planes_is_fibre_like() {
        let p2: P = projective_space(2).unwrap();
        let prod = product(&p2, &p2).unwrap();
        assert_eq!((prod.dim(), prod.vertex_count()), (4, 6));
        assert!(is_smooth(&prod).unwrap());
        assert!(is_fibre_like(&prod).unwrap());
    }

    #[test]
    fn del_pezzo_two_is_the_hexagon() {
        let v2: P = del_pezzo_polytope(2).unwrap();
        assert_eq!(v2.vertex_count(), 6);
        assert!(is_smooth(&v2).unwrap());
        assert!(is_fibre_like(&v2).unwrap());
        assert!(del_pezzo_polytope::<BigInt>(3).is_err());
        assert!(del_pezzo_polytope::<BigInt>(0).is_err());
    }

    #[test]
    fn del_pezzo_four_is_smooth_transitive_fibre_like() {
        let v4: P = del_pezzo_polytope(4).unwrap();
        assert_eq!(v4.vertex_count(), 10);
        assert!(is_smooth(&v4).unwrap());
        let g = automorphism_group(&v4).unwrap();
        let d = orbit_data(&v4, &g);
        assert_eq!((d.t, d.k), (1, 0));
        assert!(is_fibre_like(&v4).unwrap());
    }

    #[test]
    fn weighted_projective_equal_weights_is_smooth() {
        let p: P = weighted_projective(&[1, 1, 1]).unwrap();
        assert_eq!((p.dim(), p.vertex_count()), (2, 3));
        assert!(is_smooth(&p).unwrap());
        assert_eq!(picard_rank(&p).unwrap(), 1);
    }

    #[test]
    fn weighted_projective_11112_properties() {
        let p: P = weighted_projective(&[1, 1, 1, 1, 2]).unwrap();
        let t = profile(&p).unwrap();
        assert!(t.is_reflexive && t.is_terminal && t.is_simplicial);
        assert!(!t.is_smooth);
        let v = k_stability(&p).unwrap();
        assert!(v.applicable && !v.is_zero);
        let d = orbit_data(&p, &automorphism_group(&p).unwrap());
        assert_eq!((d.t, d.k, d.invariant_ns_dim), (2, 1, 1));
    }

    #[test]
    fn weighted_projective_112_is_reflexive_not_smooth() {
        let p: P = weighted_projective(&[1, 1, 2]).unwrap();
        assert!(is_reflexive(&p).unwrap());
        assert!(!is_smooth(&p).unwrap());
        // The quadric cone's edge through the singular ray has a lattice
        // midpoint, so the polytope is not terminal (in dimension two,
        // terminal would mean smooth).
        assert!(!is_terminal(&p).unwrap());
    }

    #[test]
    fn weighted_projective_rejects_ill_formed_weights() {
        assert!(weighted_projective::<BigInt>(&[2, 2]).is_err());
        assert!(weighted_projective::<BigInt>(&[2, 3, 4]).is_err());
        assert!(weighted_projective::<BigInt>(&[0, 1]).is_err());
        assert!(weighted_projective::<BigInt>(&[1]).is_err());
    }

    #[test]
    fn weighted_relation_holds_in_the_realized_lattice() {
        let weights = [1i64, 1, 1, 1, 2];
        let p: P = weighted_projective(&weights).unwrap();
        let mut acc = Vector::<BigInt>::zeros(p.dim());
        for (v, &q) in p.vertices().iter().zip(&weights) {
            acc = acc.add(&v.scaled(&BigInt::from(q)));
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn dimension_catalog_dim_two() {
        let entries: Vec<CatalogEntry<BigInt>> = dimension_catalog(2).unwrap();
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        assert!(names.contains(&"P^1 x P^1"));
        assert!(names.contains(&"P^2"));
        assert!(names.contains(&"V_2"));
        assert_eq!(entries.len(), 3);
    }

    #[test]
    fn dimension_catalog_dim_four_contains_table_names() {
        let entries: Vec<CatalogEntry<BigInt>> = dimension_catalog(4).unwrap();
        let names: Vec<&str> = entries.iter().map(|e| e.name.as_str()).collect();
        for expect in ["V_4", "V_2 x V_2", "(P^1)^4", "P^2 x P^2", "P^4"] {
            assert!(names.contains(&expect), "missing {expect} in {names:?}");
        }
        for e in &entries {
            assert_eq!(e.polytope.dim(), 4);
            e.polytope.validate().unwrap();
        }
    }

    #[test]
    fn product_name_formatting() {
        assert_eq!(format_product_name(&["P^1", "P^1", "P^1"]), "(P^1)^3");
        assert_eq!(format_product_name(&["P^2", "P^2"]), "P^2 x P^2");
        assert_eq!(format_product_name(&["P^1", "P^2"]), "P^1 x P^2");
        assert_eq!(
            format_product_name(&["P^1", "P^1", "V_2"]),
            "P^1 x P^1 x V_2"
        );
    }
}
