//! The lattice automorphism group of a polytope — the unimodular matrices
//! permuting the vertex set — together with its orbit statistics: orbit
//! count `t`, fixed-subspace dimension `k`, the invariant Picard-group
//! dimension `t − k`, and the fibre-likeness verdict `t − k == 1`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{inverse_rational, Matrix, Vector};
use crate::polytope::LatticePolytope;
use crate::primitive::trivial_focus_collections;
use crate::scalar::Scalar;
use crate::toric::is_smooth;

/// One automorphism: a unimodular matrix and the vertex permutation it
/// induces (`vertex_perm[i]` is the index of the image of vertex `i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement<S: Scalar> {
    pub matrix: Matrix<S>,
    pub vertex_perm: Vec<usize>,
}

/// The full group `{W ∈ GL(n,ℤ) : W·V(Δ) = V(Δ)}`, stored element-wise;
/// desk-scale orders stay within a few tens of thousands.
#[derive(Clone, Debug)]
pub struct LatticeAutGroup<S: Scalar> {
    elements: Vec<GroupElement<S>>,
}

impl<S: Scalar> LatticeAutGroup<S> {
    /// Wraps an explicit element list (used for subgroup diagnostics).
    pub fn from_elements(elements: Vec<GroupElement<S>>) -> Self {
        LatticeAutGroup { elements }
    }

    /// The one-element subgroup, for diagnostic orbit data.
    pub fn trivial(p: &LatticePolytope<S>) -> Self {
        LatticeAutGroup {
            elements: vec![GroupElement {
                matrix: Matrix::identity(p.dim()),
                vertex_perm: (0..p.vertex_count()).collect(),
            }],
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement<S>] {
        &self.elements
    }
}

/// Orbit statistics of a group action on the vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitData {
    /// Sorted orbits of sorted vertex indices.
    pub orbit_partition: Vec<Vec<usize>>,
    /// Number of orbits.
    pub t: usize,
    /// Dimension of the subspace fixed by every group matrix.
    pub k: usize,
    /// `t − k`, the dimension of the invariant part of the Picard group.
    pub invariant_ns_dim: i64,
}

///// Multiset (sorted list) of pairings `<u_F, v_i>` over all facet normals:
/// a cheap unimodular invariant separating vertices in different orbits.
pub fn vertex_fingerprint<S: Scalar>(p: &LatticePolytope<S>, i: usize) -> Result<Vec<S>> {
    if i >= p.vertex_count() {
        return Err(Error::InvalidInput(format!("vertex index {i} out of range")));
    }
    let mut fp: Vec<S> = p
        .facets()?
        .iter()
        .map(|f| f.normal.dot(p.vertex(i)))
        .collect();
    fp.sort();
    Ok(fp)
}

/// Computes the full automorphism group.
///
/// A linearly independent vertex tuple `B` is fixed inside the first facet
/// (facets are sorted by normal, so the choice is deterministic). Every
/// group element is the unique solution of `W·B = image` for exactly one
/// ordered tuple of vertices of one facet, so scanning all fingerprint-
/// compatible tuples and keeping the integral unimodular solutions that
/// permute the vertex set finds each element exactly once.
pub fn automorphism_group<S: Scalar>(p: &LatticePolytope<S>) -> Result<LatticeAutGroup<S>> {
    let facets = p.facets()?;
    let dim = p.dim();
    let m = p.vertex_count();
    let fingerprints: Vec<Vec<S>> = (0..m)
        .map(|i| vertex_fingerprint(p, i))
        .collect::<Result<_>>()?;
    // Greedy linearly independent base tuple from the first facet (its
    // vertices span linearly because the facet misses the origin).
    let mut base: Vec<usize> = Vec::with_capacity(dim);
    for &i in &facets[0].vertex_indices {
        let mut probe: Vec<Vector<S>> = base.iter().map(|&b| p.vertex(b).clone()).collect();
        probe.push(p.vertex(i).clone());
        if Matrix::from_row_vectors(&probe).rank() == probe.len() {
            base.push(i);
        }
        if base.len() == dim {
            break;
        }
    }
    if base.len() != dim {
        return Err(Error::Degenerate {
            rank: base.len(),
            dim,
        });
    }
    let b_cols: Vec<Vector<S>> = base.iter().map(|&i| p.vertex(i).clone()).collect();
    let b_inv = inverse_rational(&Matrix::from_col_vectors(&b_cols))
        .expect("base tuple is linearly independent");
    let lookup: HashMap<Vector<S>, usize> = p
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let base_fps: Vec<&Vec<S>> = base.iter().map(|&i| &fingerprints[i]).collect();

    let mut elements: Vec<GroupElement<S>> = facets
        .par_iter()
        .map(|facet| {
            let mut found = Vec::new();
            let mut chosen: Vec<usize> = Vec::with_capacity(dim);
            extend_tuples(
                p,
                &facet.vertex_indices,
                &fingerprints,
                &base_fps,
                &b_inv,
                &lookup,
                &mut chosen,
                &mut found,
            );
            found
        })
        .flatten()
        .collect();
    elements.sort_by(|a, b| a.vertex_perm.cmp(&b.vertex_perm));
    elements.dedup_by(|a, b| a.vertex_perm == b.vertex_perm);
    Ok(LatticeAutGroup { elements })
}

#[allow(clippy::too_many_arguments)]
fn extend_tuples<S: Scalar>(
    p: &LatticePolytope<S>,
    facet_vertices: &[usize],
    fingerprints: &[Vec<S>],
    base_fps: &[&Vec<S>],
    b_inv: &Matrix<num_rational::Ratio<S>>,
    lookup: &HashMap<Vector<S>, usize>,
    chosen: &mut Vec<usize>,
    found: &mut Vec<GroupElement<S>>,
) {
    let dim = p.dim();
    if chosen.len() == dim {
        let img_cols: Vec<Vector<S>> = chosen.iter().map(|&i| p.vertex(i).clone()).collect();
        let w_rat = Matrix::from_col_vectors(&img_cols).to_rational().mul(b_inv);
        let mut w = Matrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let e = w_rat.get(i, j);
                if !e.is_integer() {
                    return;
                }
                w.set(i, j, e.numer().clone());
            }
        }
        if !w.is_unimodular().unwrap_or(false) {
            return;
        }
        let m = p.vertex_count();
        let mut perm = vec![usize::MAX; m];
        let mut hit = vec![false; m];
        for (j, v) in p.vertices().iter().enumerate() {
            let Some(&target) = lookup.get(&w.mul_vec(v)) else {
                return;
            };
            if hit[target] {
                return;
            }
            hit[target] = true;
            perm[j] = target;
        }
        found.push(GroupElement {
            matrix: w,
            vertex_perm: perm,
        });
        return;
    }
    let pos = chosen.len();
    for &cand in facet_vertices {
        if chosen.contains(&cand) || &fingerprints[cand] != base_fps[pos] {
            continue;
        }
        chosen.push(cand);
        extend_tuples(
            p,
            facet_vertices,
            fingerprints,
            base_fps,
            b_inv,
            lookup,
            chosen,
            found,
        );
        chosen.pop();
    }
}

/// Fixed-space dimension of a set of matrices, maintained incrementally as
/// an integer column basis (cheap when most elements leave it unchanged).
fn incremental_fixed_dim<'a, S: Scalar>(
    mats: impl Iterator<Item = &'a Matrix<S>>,
    dim: usize,
) -> usize {
    let mut basis = Matrix::<S>::identity(dim);
    let mut k = dim;
    for w in mats {
        if k == 0 {
            break;
        }
        let wb = w.mul(&basis);
        let diff = Matrix::from_fn(dim, k, |i, j| wb.get(i, j).clone() - basis.get(i, j).clone());
        if (0..dim).all(|i| (0..k).all(|j| diff.get(i, j).is_zero())) {
            continue;
        }
        let kernel = diff.nullspace_primitive();
        if kernel.is_empty() {
            return 0;
        }
        basis = basis.mul(&Matrix::from_col_vectors(&kernel));
        k = kernel.len();
    }
    k
}

/// Orbit statistics for any subgroup acting on `p`'s vertices.
pub fn orbit_data<S: Scalar>(p: &LatticePolytope<S>, g: &LatticeAutGroup<S>) -> OrbitData {
    let m = p.vertex_count();
    let mut uf: Vec<usize> = (0..m).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for e in &g.elements {
        for (i, &j) in e.vertex_perm.iter().enumerate() {
            let (a, b) = (find(&mut uf, i), find(&mut uf, j));
            if a != b {
                uf[a] = b;
            }
        }
    }
    let mut orbits: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..m {
        let root = find(&mut uf, i);
        orbits.entry(root).or_default().push(i);
    }
    let mut orbit_partition: Vec<Vec<usize>> = orbits.into_values().collect();
    orbit_partition.iter_mut().for_each(|o| o.sort());
    orbit_partition.sort();
    let t = orbit_partition.len();
    let k = incremental_fixed_dim(g.elements.iter().map(|e| &e.matrix), p.dim());
    OrbitData {
        t,
        k,
        invariant_ns_dim: t as i64 - k as i64,
        orbit_partition,
    }
}

/// Verifies the two averaging identities on the stored element list:
/// `t == (Σ_g #fixed vertices)/|G|` and `k == (Σ_g trace W_g)/|G|`.
pub fn burnside_check<S: Scalar>(g: &LatticeAutGroup<S>) -> bool {
    let Some(first) = g.elements.first() else {
        return false;
    };
    let m = first.vertex_perm.len();
    let dim = first.matrix.nrows();
    let order = S::from_i64(g.elements.len() as i64);
    let mut fixed_sum = S::zero();
    let mut trace_sum = S::zero();
    for e in &g.elements {
        for (i, &j) in e.vertex_perm.iter().enumerate() {
            if i == j {
                fixed_sum = fixed_sum + S::one();
            }
        }
        for i in 0..dim {
            trace_sum = trace_sum + e.matrix.get(i, i).clone();
        }
    }
    // Orbit count over the permutations alone.
    let mut uf: Vec<usize> = (0..m).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for e in &g.elements {
        for (i, &j) in e.vertex_perm.iter().enumerate() {
            let (a, b) = (find(&mut uf, i), find(&mut uf, j));
            if a != b {
                uf[a] = b;
            }
        }
    }
    let t = (0..m)
        .map(|i| find(&mut uf, i))
        .collect::<std::collections::HashSet<_>>()
        .len();
    let k = incremental_fixed_dim(g.elements.iter().map(|e| &e.matrix), dim);
    fixed_sum == S::from_i64(t as i64) * order.clone()
        && trace_sum == S::from_i64(k as i64) * order
}

/// Fibre-likeness: `t − k == 1` for the full automorphism group. Restricted
/// to smooth inputs because the underlying characterization leans on
/// rigidity of smooth toric Fanos; use `orbit_data` directly for raw
/// diagnostics on singular inputs.
pub fn is_fibre_like<S: Scalar>(p: &LatticePolytope<S>) -> Result<bool> {
    if !is_smooth(p)? {
        return Err(Error::NotSmooth(
            "fibre-likeness via t − k = 1 requires a smooth polytope (rigidity hypothesis)"
                .into(),
        ));
    }
    let g = automorphism_group(p)?;
    Ok(orbit_data(p, &g).invariant_ns_dim == 1)
}

/// Constructive structure check for fibre-like polytopes: some trivial-focus
/// primitive collection has an automorphism orbit that partitions the vertex
/// set (pairwise disjoint, union everything).
pub fn orbit_collection_cover<S: Scalar>(
    p: &LatticePolytope<S>,
    g: &LatticeAutGroup<S>,
) -> Result<bool> {
    let m = p.vertex_count();
    'next: for c in trivial_focus_collections(p)? {
        let mut images: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for e in g.elements() {
            let mut img: Vec<usize> = c.indices.iter().map(|&i| e.vertex_perm[i]).collect();
            img.sort();
            images.insert(img);
        }
        let mut covered = vec![false; m];
        for img in &images {
            for &i in img {
                if covered[i] {
                    continue 'next;
                }
                covered[i] = true;
            }
        }
        if covered.iter().all(|&c| c) {
            return Ok(true);
        }
    }
    Ok(false)
}
