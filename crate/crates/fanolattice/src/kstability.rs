//! The barycentre criterion: a Gorenstein (reflexive) toric Fano is K-stable
//! exactly when the volume centroid of its polytope is the origin, plus the
//! combined fibre-like ⇒ barycentre-zero check.

use num_rational::Ratio;

use crate::error::Result;
use crate::linalg::Vector;
use crate::polytope::LatticePolytope;
use crate::scalar::Scalar;
use crate::symmetry::is_fibre_like;
use crate::toric::is_reflexive;

/// Outcome of the barycentre criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KStabilityVerdict<S: Scalar> {
    /// Exact volume centroid of the polytope.
    pub barycentre: Vector<Ratio<S>>,
    /// Whether the barycentre is exactly the origin.
    pub is_zero: bool,
    /// The criterion applies to reflexive (Gorenstein) inputs only.
    pub applicable: bool,
}

/// Evaluates the barycentre criterion. For non-reflexive inputs the
/// barycentre is still reported but `applicable` is false and the verdict
/// carries no K-stability meaning.
pub fn k_stability<S: Scalar>(p: &LatticePolytope<S>) -> Result<KStabilityVerdict<S>> {
    let barycentre = p.centroid()?;
    Ok(KStabilityVerdict {
        is_zero: barycentre.is_zero(),
        applicable: is_reflexive(p)?,
        barycentre,
    })
}

/// `fibre-like ⇒ barycentre = 0`, evaluated on one smooth Fano polytope.
/// Always true if the underlying theorem holds; a false return is a
/// falsification event and callers are expected to report the polytope.
pub fn main_theorem_check<S: Scalar>(p: &LatticePolytope<S>) -> Result<bool> {
    if !is_fibre_like(p)? {
        return Ok(true);
    }
    Ok(p.centroid()?.is_zero())
}
