//! Full-dimensional lattice polytopes with the origin in the interior:
//! exact facet enumeration, faces, polar dual, lattice points, centroid.
//!
//! Facet enumeration runs in integer homogeneous coordinates so the same
//! fraction-free path serves lattice polytopes and rational polytopes (polar
//! duals). Small dimensions use the exhaustive subset scan; from dimension 4
//! on, a ridge-pivot search walks the boundary and falls back to the scan if
//! a non-simplicial facet appears.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_rational::Ratio;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// A facet `{x : <normal, x> = offset}` of a polytope, with
/// `<normal, w> < offset` strictly for every non-incident vertex `w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet<S: Scalar> {
    /// Sorted indices of the incident vertices.
    pub vertex_indices: Vec<usize>,
    /// Primitive outward normal.
    pub normal: Vector<S>,
    /// Positive offset; 1 on every facet exactly when the polytope is reflexive.
    pub offset: Ratio<S>,
}

/// Lattice polytope: distinct primitive integer vertices spanning `Q^dim`,
/// with the origin strictly interior (verified on first facet computation).
pub struct LatticePolytope<S: Scalar> {
    dim: usize,
    vertices: Vec<Vector<S>>,
    facet_cache: OnceLock<Result<Vec<Facet<S>>>>,
}

impl<S: Scalar> Clone for LatticePolytope<S> {
    fn clone(&self) -> Self {
        LatticePolytope {
            dim: self.dim,
            vertices: self.vertices.clone(),
            facet_cache: self.facet_cache.clone(),
        }
    }
}

impl<S: Scalar> std::fmt::Debug for LatticePolytope<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("dim", &self.dim)
            .field("vertices", &self.vertices)
            .finish()
    }
}

impl<S: Scalar> PartialEq for LatticePolytope<S> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.vertices == other.vertices
    }
}

impl<S: Scalar> Eq for LatticePolytope<S> {}

impl<S: Scalar> std::hash::Hash for LatticePolytope<S> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.dim.hash(state);
        self.vertices.hash(state);
    }
}

impl<S: Scalar> LatticePolytope<S> {
    /// Validates distinctness, primitivity and full-dimensionality.
    /// Interiority of the origin is checked on first facet access.
    pub fn new(vertices: Vec<Vector<S>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput("polytope needs at least one vertex".into()));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(Error::InvalidInput("ambient dimension must be positive".into()));
        }
        let mut seen = HashSet::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {i} has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            if !v.is_primitive() {
                return Err(Error::NonPrimitiveVertex(i));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateVertex(i));
            }
        }
        let rank = Matrix::from_row_vectors(&vertices).rank();
        if rank < dim {
            return Err(Error::Degenerate { rank, dim });
        }
        Ok(LatticePolytope {
            dim,
            vertices,
            facet_cache: OnceLock::new(),
        })
    }

    /// Convenience constructor from machine-integer coordinates.
    pub fn from_coords(rows: &[&[i64]]) -> Result<Self> {
        LatticePolytope::new(
            rows.iter()
                .map(|r| Vector::new(r.iter().map(|&v| S::from_i64(v)).collect()))
                .collect(),
        )
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vector<S>] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vector<S> {
        &self.vertices[i]
    }

    /// Complete facet list, cached after the first computation.
    /// Fails when the origin is not strictly interior or some input point
    /// is not actually a vertex of the hull.
    pub fn facets(&self) -> Result<&[Facet<S>]> {
        let computed = self.facet_cache.get_or_init(|| {
            let pts: Vec<(Vector<S>, S)> = self
                .vertices
                .iter()
                .map(|v| (v.clone(), S::one()))
                .collect();
            let facets = hull_facets(&pts, self.dim)?;
            for f in &facets {
                if !f.offset.is_positive() {
                    return Err(Error::OriginNotInterior);
                }
            }
            Ok(facets)
        });
        match computed {
            Ok(v) => Ok(v.as_slice()),
            Err(e) => Err(e.clone()),
        }
    }

    /// Forces every deferred invariant (facets, interiority, vertex status).
    pub fn validate(&self) -> Result<()> {
        self.facets().map(|_| ())
    }

    /// True when every facet has exactly `dim` incident vertices.
    pub fn is_simplicial(&self) -> Result<bool> {
        Ok(self.facets()?.iter().all(|f| f.vertex_indices.len() == self.dim))
    }

    /// True iff the vertex set `s` spans a cone of the face fan, i.e. lies in
    /// a common facet. Defined for simplicial polytopes only.
    pub fn spans_face(&self, s: &[usize]) -> Result<bool> {
        if !self.is_simplicial()? {
            return Err(Error::NotSimplicial);
        }
        for &i in s {
            if i >= self.vertices.len() {
                return Err(Error::InvalidInput(format!("vertex index {i} out of range")));
            }
        }
        Ok(self
            .facets()?
            .iter()
            .any(|f| s.iter().all(|i| f.vertex_indices.binary_search(i).is_ok())))
    }

    /// Polar dual `{y : <y, x> <= 1 on p}`; vertices are `normal/offset`
    /// per facet of `p`.
    pub fn polar_dual(&self) -> Result<RationalPolytope<S>> {
        let facets = self.facets()?;
        let vertices = facets
            .iter()
            .map(|f| {
                f.normal
                    .map(|e| Ratio::from_integer(e.clone()) / f.offset.clone())
            })
            .collect();
        Ok(RationalPolytope {
            dim: self.dim,
            vertices,
        })
    }

    /// All integer points of the polytope, by a facet-pruned box scan.
    pub fn lattice_points(&self) -> Result<Vec<Vector<S>>> {
        let facets = self.facets()?;
        // Scaled inequalities <u, x> * denom <= numer to stay in integers.
        let ineqs: Vec<(Vector<S>, S)> = facets
            .iter()
            .map(|f| {
                (
                    f.normal.scaled(f.offset.denom()),
                    f.offset.numer().clone(),
                )
            })
            .collect();
        let mut lo = vec![S::zero(); self.dim];
        let mut hi = vec![S::zero(); self.dim];
        for v in &self.vertices {
            for j in 0..self.dim {
                if v[j] < lo[j] {
                    lo[j] = v[j].clone();
                }
                if v[j] > hi[j] {
                    hi[j] = v[j].clone();
                }
            }
        }
        let mut out = Vec::new();
        let mut partial: Vec<S> = Vec::with_capacity(self.dim);
        // Running pairing value per inequality for the fixed prefix.
        let mut acc: Vec<S> = ineqs.iter().map(|_| S::zero()).collect();
        scan_box(&ineqs, &lo, &hi, &mut partial, &mut acc, &mut out);
        out.sort();
        Ok(out)
    }

    /// Coordinate-wise sum of all vertices.
    pub fn vertex_sum(&self) -> Vector<S> {
        let mut acc = Vector::zeros(self.dim);
        for v in &self.vertices {
            acc = acc.add(v);
        }
        acc
    }

    /// Exact volume centroid, via the cone-over-facet-triangulations
    /// decomposition. Independent of the triangulation anchor.
    pub fn centroid(&self) -> Result<Vector<Ratio<S>>> {
        self.centroid_with(Anchor::Least)
    }

    /// Centroid with an explicit triangulation anchor; both anchors must give
    /// the same result, which the test suite exploits.
    pub fn centroid_with(&self, anchor: Anchor) -> Result<Vector<Ratio<S>>> {
        let facets = self.facets()?;
        let mut total = S::zero();
        let mut weighted = Vector::<S>::zeros(self.dim);
        for f in facets {
            for simplex in self.triangulate_facet(f, anchor)? {
                let mat = Matrix::from_row_vectors(
                    &simplex.iter().map(|&i| self.vertices[i].clone()).collect::<Vec<_>>(),
                );
                let vol = mat.determinant()?.abs();
                if vol.is_zero() {
                    continue;
                }
                let mut vsum = Vector::<S>::zeros(self.dim);
                for &i in &simplex {
                    vsum = vsum.add(&self.vertices[i]);
                }
                weighted = weighted.add(&vsum.scaled(&vol));
                total = total + vol;
            }
        }
        // centroid of each simplex conv{0, v_1..v_d} is vsum/(d+1), weight vol.
        let denom = total * S::from_i64(self.dim as i64 + 1);
        Ok(weighted.map(|w| Ratio::new(w.clone(), denom.clone())))
    }

    /// Splits a facet into `dim`-element index sets, each a simplex together
    /// with the origin.
    fn triangulate_facet(&self, facet: &Facet<S>, anchor: Anchor) -> Result<Vec<Vec<usize>>> {
        if facet.vertex_indices.len() == self.dim {
            return Ok(vec![facet.vertex_indices.clone()]);
        }
        let pts: Vec<(Vector<S>, S)> = facet
            .vertex_indices
            .iter()
            .map(|&i| (self.vertices[i].clone(), S::one()))
            .collect();
        let local = triangulate_affine(&pts, self.dim - 1, anchor)?;
        Ok(local
            .into_iter()
            .map(|simplex| simplex.into_iter().map(|k| facet.vertex_indices[k]).collect())
            .collect())
    }

    /// Image under a unimodular transform.
    pub fn transformed(&self, w: &Matrix<S>) -> Result<Self> {
        if !w.is_unimodular()? {
            return Err(Error::InvalidInput("transform is not unimodular".into()));
        }
        LatticePolytope::new(self.vertices.iter().map(|v| w.mul_vec(v)).collect())
    }
}

/// Triangulation anchor choice; both must yield identical centroids.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Anchor {
    Least,
    Greatest,
}

/// Full-dimensional polytope with rational vertices (polar duals live here).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope<S: Scalar> {
    dim: usize,
    vertices: Vec<Vector<Ratio<S>>>,
}

impl<S: Scalar> RationalPolytope<S> {
    pub fn new(vertices: Vec<Vector<Ratio<S>>>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(Error::InvalidInput("polytope needs at least one vertex".into()));
        };
        let dim = first.len();
        let mut seen = HashSet::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "vertex {i} has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateVertex(i));
            }
        }
        Ok(RationalPolytope { dim, vertices })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector<Ratio<S>>] {
        &self.vertices
    }

    /// All vertices integral: reinterpret as a lattice polytope.
    pub fn to_lattice(&self) -> Option<LatticePolytope<S>> {
        let ints: Option<Vec<Vector<S>>> = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .map(|e| e.is_integer().then(|| e.numer().clone()))
                    .collect::<Option<Vec<S>>>()
                    .map(Vector::new)
            })
            .collect();
        LatticePolytope::new(ints?).ok()
    }

    pub fn facets(&self) -> Result<Vec<Facet<S>>> {
        hull_facets(&homogenize(&self.vertices), self.dim)
    }

    pub fn polar_dual(&self) -> Result<RationalPolytope<S>> {
        let facets = self.facets()?;
        for f in &facets {
            if !f.offset.is_positive() {
                return Err(Error::OriginNotInterior);
            }
        }
        RationalPolytope::new(
            facets
                .iter()
                .map(|f| {
                    f.normal
                        .map(|e| Ratio::from_integer(e.clone()) / f.offset.clone())
                })
                .collect(),
        )
    }
}

/// Rational points as integer numerator vectors with positive denominators.
fn homogenize<S: Scalar>(vertices: &[Vector<Ratio<S>>]) -> Vec<(Vector<S>, S)> {
    vertices
        .iter()
        .map(|v| {
            let mut den = S::one();
            for e in v.iter() {
                den = den.lcm(e.denom());
            }
            let nums = v.map(|e| e.numer().clone() * (den.clone() / e.denom().clone()));
            (nums, den)
        })
        .collect()
}

fn scan_box<S: Scalar>(
    ineqs: &[(Vector<S>, S)],
    lo: &[S],
    hi: &[S],
    partial: &mut Vec<S>,
    acc: &mut [S],
    out: &mut Vec<Vector<S>>,
) {
    let j = partial.len();
    let dim = lo.len();
    if j == dim {
        out.push(Vector::new(partial.clone()));
        return;
    }
    // Narrow the coordinate range using each inequality: remaining
    // coordinates contribute at least their box minimum.
    let mut x_lo = lo[j].clone();
    let mut x_hi = hi[j].clone();
    for (idx, (u, bound)) in ineqs.iter().enumerate() {
        let mut rest_min = S::zero();
        for k in j + 1..dim {
            let c = &u.as_slice()[k];
            let contrib = if c.is_negative() {
                c.clone() * hi[k].clone()
            } else {
                c.clone() * lo[k].clone()
            };
            rest_min = rest_min + contrib;
        }
        let slack = bound.clone() - acc[idx].clone() - rest_min;
        let uj = &u.as_slice()[j];
        if uj.is_positive() {
            // uj * x_j <= slack
            let cap = slack.div_floor(uj);
            if cap < x_hi {
                x_hi = cap;
            }
        } else if uj.is_negative() {
            // Dividing by a negative flips the inequality: x_j >= slack / uj.
            let cap = slack.div_ceil(uj);
            if cap > x_lo {
                x_lo = cap;
            }
        } else if slack.is_negative() {
            return;
        }
    }
    let mut x = x_lo.clone();
    while x <= x_hi {
        for (idx, (u, _)) in ineqs.iter().enumerate() {
            acc[idx] = acc[idx].clone() + u.as_slice()[j].clone() * x.clone();
        }
        partial.push(x.clone());
        scan_box(ineqs, lo, hi, partial, acc, out);
        partial.pop();
        for (idx, (u, _)) in ineqs.iter().enumerate() {
            acc[idx] = acc[idx].clone() - u.as_slice()[j].clone() * x.clone();
        }
        x = x + S::one();
    }
}

/// The affine hyperplane through the given points, as a primitive integer
/// functional: `(u, c)` with `<u, p> = c` on every point. `None` when the
/// points do not span a unique hyperplane.
fn hyperplane_through<S: Scalar>(
    pts: &[(Vector<S>, S)],
    subset: &[usize],
    dim: usize,
) -> Option<(Vector<S>, S)> {
    let rows: Vec<Vec<S>> = subset
        .iter()
        .map(|&i| {
            let (q, den) = &pts[i];
            let mut row: Vec<S> = q.as_slice().to_vec();
            row.push(-den.clone());
            row
        })
        .collect();
    let kernel = Matrix::from_rows(rows).nullspace_primitive();
    if kernel.len() != 1 {
        return None;
    }
    let k = &kernel[0];
    let u = Vector::new(k.as_slice()[..dim].to_vec());
    let c = k.as_slice()[dim].clone();
    if u.is_zero() {
        return None;
    }
    Some((u, c))
}

/// Validates a candidate hyperplane against all points: returns the oriented
/// `(u, c)` and incidence list when it supports the hull, `None` otherwise.
fn try_facet<S: Scalar>(
    pts: &[(Vector<S>, S)],
    u: Vector<S>,
    c: S,
) -> Option<(Vector<S>, S, Vec<usize>)> {
    let mut any_below = false;
    let mut any_above = false;
    let mut incident = Vec::new();
    let mut pairings = Vec::with_capacity(pts.len());
    for (i, (q, den)) in pts.iter().enumerate() {
        let lhs = u.dot(q);
        let rhs = c.clone() * den.clone();
        let ord = lhs.cmp(&rhs);
        pairings.push(ord);
        match ord {
            std::cmp::Ordering::Less => any_below = true,
            std::cmp::Ordering::Greater => any_above = true,
            std::cmp::Ordering::Equal => incident.push(i),
        }
    }
    if any_below && any_above {
        return None;
    }
    if !any_below && !any_above {
        // Everything on the hyperplane: degenerate input.
        return None;
    }
    if any_above {
        return Some((u.neg(), -c, incident));
    }
    Some((u, c, incident))
}

/// Complete facet enumeration for full-dimensional point sets given in
/// integer homogeneous form. Errors when the input is degenerate or some
/// point is not a vertex.
fn hull_facets<S: Scalar>(pts: &[(Vector<S>, S)], dim: usize) -> Result<Vec<Facet<S>>> {
    let m = pts.len();
    if m < dim + 1 {
        return Err(Error::Degenerate {
            rank: affine_rank(pts),
            dim,
        });
    }
    let rank = affine_rank(pts);
    if rank < dim {
        return Err(Error::Degenerate { rank, dim });
    }
    let raw = if dim <= 3 {
        brute_force_facets(pts, dim)
    } else {
        match pivot_facets(pts, dim) {
            Some(f) => f,
            None => brute_force_facets(pts, dim),
        }
    };
    let mut facets: Vec<Facet<S>> = raw
        .into_iter()
        .map(|(u, c, incident)| {
            let g = u.content();
            let normal = u.primitivized();
            let offset = Ratio::new(c, g);
            Facet {
                vertex_indices: incident,
                normal,
                offset,
            }
        })
        .collect();
    facets.sort_by(|a, b| a.normal.cmp(&b.normal));
    // Each input point must be a vertex: incident to at least dim facets.
    let mut counts = vec![0usize; m];
    for f in &facets {
        for &i in &f.vertex_indices {
            counts[i] += 1;
        }
    }
    if let Some(bad) = counts.iter().position(|&c| c < dim) {
        return Err(Error::NotVertex(bad));
    }
    Ok(facets)
}

fn affine_rank<S: Scalar>(pts: &[(Vector<S>, S)]) -> usize {
    if pts.len() < 2 {
        return 0;
    }
    let (q0, d0) = &pts[0];
    let rows: Vec<Vec<S>> = pts[1..]
        .iter()
        .map(|(q, d)| {
            q.as_slice()
                .iter()
                .zip(q0.as_slice())
                .map(|(a, b)| a.clone() * d0.clone() - b.clone() * d.clone())
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).rank()
}

type RawFacet<S> = (Vector<S>, S, Vec<usize>);

fn brute_force_facets<S: Scalar>(pts: &[(Vector<S>, S)], dim: usize) -> Vec<RawFacet<S>> {
    let m = pts.len();
    let mut found: HashMap<Vector<S>, RawFacet<S>> = HashMap::new();
    let mut masks: Vec<u128> = Vec::new();
    let mut subset: Vec<usize> = (0..dim).collect();
    loop {
        let mask: u128 = subset.iter().fold(0, |acc, &i| acc | (1u128 << (i % 128)));
        let covered = m <= 128 && masks.iter().any(|fm| fm & mask == mask);
        if !covered {
            if let Some((u, c)) = hyperplane_through(pts, &subset, dim) {
                if let Some((u, c, incident)) = try_facet(pts, u, c) {
                    if !found.contains_key(&u) {
                        if m <= 128 {
                            masks.push(incident.iter().fold(0, |acc, &i| acc | (1u128 << i)));
                        }
                        found.insert(u.clone(), (u, c, incident));
                    }
                }
            }
        }
        // Advance the sorted index combination.
        let mut i = dim;
        loop {
            if i == 0 {
                return found.into_values().collect();
            }
            i -= 1;
            if subset[i] != i + m - dim {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Ridge-pivot facet walk; requires every facet simplicial, else `None`.
fn pivot_facets<S: Scalar>(pts: &[(Vector<S>, S)], dim: usize) -> Option<Vec<RawFacet<S>>> {
    let m = pts.len();
    // Seed: first valid facet in subset order.
    let mut seed: Option<RawFacet<S>> = None;
    let mut subset: Vec<usize> = (0..dim).collect();
    'outer: loop {
        if let Some((u, c)) = hyperplane_through(pts, &subset, dim) {
            if let Some(f) = try_facet(pts, u, c) {
                seed = Some(f);
                break 'outer;
            }
        }
        let mut i = dim;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            if subset[i] != i + m - dim {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
    let seed = seed?;
    if seed.2.len() != dim {
        return None;
    }
    let mut found: HashMap<Vector<S>, RawFacet<S>> = HashMap::new();
    let mut queue = VecDeque::new();
    found.insert(seed.0.clone(), seed.clone());
    queue.push_back(seed);
    let mut visited_ridges: HashSet<Vec<usize>> = HashSet::new();
    while let Some((u_cur, _, incident)) = queue.pop_front() {
        for drop_pos in 0..incident.len() {
            let mut ridge = incident.clone();
            ridge.remove(drop_pos);
            if !visited_ridges.insert(ridge.clone()) {
                continue;
            }
            // Rotate around the ridge: the neighbor is the unique supporting
            // hyperplane through the ridge other than the current facet
            // (whose own dropped vertex would otherwise recreate it).
            let mut neighbor: Option<RawFacet<S>> = None;
            for cand in 0..m {
                if ridge.contains(&cand) {
                    continue;
                }
                let mut sub = ridge.clone();
                sub.push(cand);
                let Some((u, c)) = hyperplane_through(pts, &sub, dim) else {
                    continue;
                };
                if let Some(f) = try_facet(pts, u, c) {
                    if f.0 == u_cur {
                        continue;
                    }
                    neighbor = Some(f);
                    break;
                }
            }
            let neighbor = neighbor?;
            if neighbor.2.len() != dim {
                return None;
            }
            if !found.contains_key(&neighbor.0) {
                found.insert(neighbor.0.clone(), neighbor.clone());
                queue.push_back(neighbor);
            }
        }
    }
    Some(found.into_values().collect())
}

/// Triangulates a point set spanning a `k`-dimensional affine flat inside a
/// higher-dimensional ambient space, returning `(k+1)`-element index sets.
/// The flat is projected onto `k` independent coordinates (an affine
/// bijection, so faces and triangulations correspond exactly), then split by
/// coning the anchor vertex over the non-incident facets.
fn triangulate_affine<S: Scalar>(
    pts: &[(Vector<S>, S)],
    k: usize,
    anchor: Anchor,
) -> Result<Vec<Vec<usize>>> {
    if pts.len() == k + 1 {
        return Ok(vec![(0..=k).collect()]);
    }
    // Scaled differences against the first point; column rank is unaffected.
    let (q0, d0) = &pts[0];
    let diffs: Vec<Vec<S>> = pts[1..]
        .iter()
        .map(|(q, d)| {
            q.as_slice()
                .iter()
                .zip(q0.as_slice())
                .map(|(a, b)| a.clone() * d0.clone() - b.clone() * d.clone())
                .collect()
        })
        .collect();
    let mut rat = Matrix::from_rows(diffs).to_rational();
    let pivots = crate::linalg::gaussian_pivots(&mut rat);
    if pivots.len() != k {
        return Err(Error::Degenerate {
            rank: pivots.len(),
            dim: k,
        });
    }
    let cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let projected: Vec<(Vector<S>, S)> = pts
        .iter()
        .map(|(q, d)| {
            (
                Vector::new(cols.iter().map(|&c| q.as_slice()[c].clone()).collect()),
                d.clone(),
            )
        })
        .collect();
    let facets = hull_facets(&projected, k)?;
    let a = match anchor {
        Anchor::Least => 0,
        Anchor::Greatest => pts.len() - 1,
    };
    let mut simplices = Vec::new();
    for f in &facets {
        if f.vertex_indices.contains(&a) {
            continue;
        }
        let sub: Vec<(Vector<S>, S)> = f
            .vertex_indices
            .iter()
            .map(|&i| projected[i].clone())
            .collect();
        for local in triangulate_affine(&sub, k - 1, anchor)? {
            let mut simplex: Vec<usize> =
                local.into_iter().map(|j| f.vertex_indices[j]).collect();
            simplex.push(a);
            simplex.sort();
            simplices.push(simplex);
        }
    }
    Ok(simplices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = LatticePolytope<BigInt>;

    fn p2() -> P {
        P::from_coords(&[&[1, 0], &[0, 1], &[-1, -1]]).unwrap()
    }

    fn bl1_p2() -> P {
        P::from_coords(&[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]]).unwrap()
    }

    fn cross2() -> P {
        P::from_coords(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]).unwrap()
    }

    fn hexagon() -> P {
        P::from_coords(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]).unwrap()
    }

    fn normals_of(p: &P) -> Vec<Vec<i64>> {
        p.facets()
            .unwrap()
            .iter()
            .map(|f| f.normal.iter().map(|e| i64::try_from(e).unwrap()).collect())
            .collect()
    }

    #[test]
    fn constructor_rejects_duplicates() {
        let err = P::from_coords(&[&[1, 0], &[1, 0], &[0, 1]]).unwrap_err();
        assert_eq!(err, Error::DuplicateVertex(1));
    }

    #[test]
    fn constructor_rejects_non_primitive() {
        let err = P::from_coords(&[&[2, 0], &[0, 1], &[-1, -1]]).unwrap_err();
        assert_eq!(err, Error::NonPrimitiveVertex(0));
    }

    #[test]
    fn constructor_rejects_degenerate() {
        let err = P::from_coords(&[&[1, 0], &[-1, 0]]).unwrap_err();
        assert!(matches!(err, Error::Degenerate { .. }));
    }

    #[test]
    fn facets_of_p2_triangle() {
        let mut normals = normals_of(&p2());
        normals.sort();
        assert_eq!(normals, vec![vec![-2, 1], vec![1, -2], vec![1, 1]]);
        assert!(p2()
            .facets()
            .unwrap()
            .iter()
            .all(|f| f.offset == Ratio::from_integer(BigInt::from(1))));
    }

    #[test]
    fn facets_of_cross_polytope() {
        let mut normals = normals_of(&cross2());
        normals.sort();
        assert_eq!(
            normals,
            vec![vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]]
        );
    }

    #[test]
    fn facets_of_blowup_pair_structure() {
        // A=(1,0) B=(0,1) C=(-1,-1) D=(1,1): facets {A,D},{D,B},{B,C},{C,A}.
        let p = bl1_p2();
        let mut pairs: Vec<Vec<usize>> = p
            .facets()
            .unwrap()
            .iter()
            .map(|f| f.vertex_indices.clone())
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn facets_reject_origin_on_boundary() {
        let p = P::from_coords(&[&[0, 1], &[0, -1], &[1, 0], &[1, 1]]).unwrap();
        assert_eq!(p.facets().unwrap_err(), Error::OriginNotInterior);
    }

    #[test]
    fn facets_reject_non_vertex_point() {
        // (0,1) is inside conv{(2,1),(-1,1),(1,-1),(-1,-1)}... use a point on an edge.
        let p = P::from_coords(&[&[1, 1], &[-1, 1], &[0, 1], &[0, -1]]).unwrap();
        assert_eq!(p.facets().unwrap_err(), Error::NotVertex(2));
    }

    #[test]
    fn spans_face_on_triangle() {
        let p = p2();
        assert!(p.spans_face(&[0, 1]).unwrap());
        assert!(!p.spans_face(&[0, 1, 2]).unwrap());
    }

    #[test]
    fn spans_face_blowup_diagonal_pair() {
        // Indices: A=0 B=1; {A,B} spans no cone in the blown-up fan.
        assert!(!bl1_p2().spans_face(&[0, 1]).unwrap());
    }

    #[test]
    fn polar_dual_of_cross_is_square() {
        let dual = cross2().polar_dual().unwrap();
        let mut verts: Vec<Vec<BigInt>> = dual
            .vertices()
            .iter()
            .map(|v| v.iter().map(|e| e.numer().clone()).collect())
            .collect();
        assert!(dual.vertices().iter().all(|v| v.iter().all(|e| e.is_integer())));
        verts.sort();
        let expect: Vec<Vec<BigInt>> = vec![
            vec![(-1).into(), (-1).into()],
            vec![(-1).into(), 1.into()],
            vec![1.into(), (-1).into()],
            vec![1.into(), 1.into()],
        ];
        assert_eq!(verts, expect);
    }

    #[test]
    fn polar_dual_is_involution_on_lattice_examples() {
        for p in [p2(), cross2(), hexagon(), bl1_p2()] {
            let dd = p.polar_dual().unwrap().polar_dual().unwrap();
            let mut original: Vec<_> = p.vertices().iter().map(|v| v.to_rational()).collect();
            let mut round: Vec<_> = dd.vertices().to_vec();
            original.sort();
            round.sort();
            assert_eq!(original, round);
        }
    }

    #[test]
    fn lattice_points_of_p2() {
        let pts = p2().lattice_points().unwrap();
        assert_eq!(pts.len(), 4);
    }

    #[test]
    fn lattice_points_of_cross() {
        assert_eq!(cross2().lattice_points().unwrap().len(), 5);
    }

    #[test]
    fn centroid_of_p2_is_origin() {
        assert!(p2().centroid().unwrap().is_zero());
    }

    #[test]
    fn centroid_of_blowup_is_one_sixth() {
        let c = bl1_p2().centroid().unwrap();
        let sixth = Ratio::new(BigInt::from(1), BigInt::from(6));
        assert_eq!(c.as_slice(), &[sixth.clone(), sixth]);
    }

    #[test]
    fn centroid_of_hexagon_is_origin() {
        assert!(hexagon().centroid().unwrap().is_zero());
    }

    #[test]
    fn centroid_independent_of_anchor() {
        for p in [p2(), bl1_p2(), hexagon()] {
            assert_eq!(
                p.centroid_with(Anchor::Least).unwrap(),
                p.centroid_with(Anchor::Greatest).unwrap()
            );
        }
    }

    #[test]
    fn vertex_sums() {
        assert!(p2().vertex_sum().is_zero());
        let s = bl1_p2().vertex_sum();
        assert_eq!(s.as_slice(), &[BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn three_dimensional_cube_is_handled_by_subset_scan() {
        // Vertices of [-1,1]^3: a valid Fano polytope that is not simplicial.
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
        let facets = cube.facets().unwrap();
        assert_eq!(facets.len(), 6);
        assert!(facets.iter().all(|f| f.vertex_indices.len() == 4));
        assert!(!cube.is_simplicial().unwrap());
        assert!(cube.spans_face(&[0, 1]).is_err());
        assert!(cube.centroid().unwrap().is_zero());
        assert_eq!(cube.lattice_points().unwrap().len(), 27);
    }

    #[test]
    fn pivot_walk_matches_brute_force_in_dim_four() {
        // Cross-polytope in dim 4 exercises the ridge pivot.
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for j in 0..4 {
            for s in [1i64, -1] {
                let mut r = vec![0i64; 4];
                r[j] = s;
                rows.push(r);
            }
        }
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let p = P::from_coords(&refs).unwrap();
        let facets = p.facets().unwrap();
        assert_eq!(facets.len(), 16);
        assert!(p.is_simplicial().unwrap());
        assert!(p.centroid().unwrap().is_zero());
    }
}
