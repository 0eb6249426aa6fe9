//! The fan dictionary: face fan of a Fano polytope plus the standard
//! predicates (smooth, reflexive, terminal) and the Picard rank.


use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polytope::LatticePolytope;
use crate::scalar::Scalar;

/// The face fan: one maximal cone per facet, generated by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceFan<S: Scalar> {
    polytope: LatticePolytope<S>,
    max_cones: Vec<Vec<usize>>,
}

impl<S: Scalar> FaceFan<S> {
    pub fn polytope(&self) -> &LatticePolytope<S> {
        &self.polytope
    }

    /// Sorted vertex-index sets, one per facet.
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }
}

/// Summary of the standard toric predicates for one polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricProfile {
    pub is_fano_polytope: bool,
    pub is_simplicial: bool,
    pub is_smooth: bool,
    pub is_reflexive: bool,
    pub is_terminal: bool,
    /// `|V| - n`; absent for non-simplicial inputs.
    pub picard_rank: Option<usize>,
}

pub fn face_fan<S: Scalar>(p: &LatticePolytope<S>) -> Result<FaceFan<S>> {
    let max_cones = p
        .facets()?
        .iter()
        .map(|f| f.vertex_indices.clone())
        .collect();
    Ok(FaceFan {
        polytope: p.clone(),
        max_cones,
    })
}

/// Every maximal cone is generated by a lattice basis: exactly `n` vertices
/// per facet with a unimodular vertex matrix.
pub fn is_smooth<S: Scalar>(p: &LatticePolytope<S>) -> Result<bool> {
    let n = p.dim();
    for f in p.facets()? {
        if f.vertex_indices.len() != n {
            return Ok(false);
        }
        let rows: Vec<_> = f
            .vertex_indices
            .iter()
            .map(|&i| p.vertex(i).clone())
            .collect();
        if !Matrix::from_row_vectors(&rows).is_unimodular()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All facet offsets equal 1, i.e. the polar dual is a lattice polytope.
pub fn is_reflexive<S: Scalar>(p: &LatticePolytope<S>) -> Result<bool> {
    let one = num_rational::Ratio::from_integer(S::one());
    Ok(p.facets()?.iter().all(|f| f.offset == one))
}

/// The only lattice points are the vertices and the origin.
pub fn is_terminal<S: Scalar>(p: &LatticePolytope<S>) -> Result<bool> {
    Ok(p.lattice_points()?.len() == p.vertex_count() + 1)
}

/// `|V(Δ)| − n` for simplicial (ℚ-factorial) complete fans.
pub fn picard_rank<S: Scalar>(p: &LatticePolytope<S>) -> Result<usize> {
    if !p.is_simplicial()? {
        return Err(Error::NotSimplicial);
    }
    Ok(p.vertex_count() - p.dim())
}

pub fn profile<S: Scalar>(p: &LatticePolytope<S>) -> Result<ToricProfile> {
    p.validate()?;
    let is_simplicial = p.is_simplicial()?;
    Ok(ToricProfile {
        is_fano_polytope: true,
        is_simplicial,
        is_smooth: is_smooth(p)?,
        is_reflexive: is_reflexive(p)?,
        is_terminal: is_terminal(p)?,
        picard_rank: is_simplicial.then(|| p.vertex_count() - p.dim()),
    })
}
