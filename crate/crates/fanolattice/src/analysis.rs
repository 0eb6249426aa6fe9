//! One-stop aggregation of everything the library can say about a single
//! Fano polytope: geometric profile, symmetry data, fibre-likeness, and the
//! barycentre (K-stability) verdict.

use num_rational::Ratio;

use crate::error::Result;
use crate::kstability::k_stability;
use crate::linalg::Vector;
use crate::polytope::LatticePolytope;
use crate::scalar::Scalar;
use crate::symmetry::{automorphism_group, orbit_data};
use crate::toric::profile;

#[derive(Clone, Debug)]
pub struct AnalysisReport<S: Scalar> {
    pub dim: usize,
    pub vertex_count: usize,
    pub is_simplicial: bool,
    pub is_smooth: bool,
    pub is_reflexive: bool,
    pub is_terminal: bool,
    /// `|V| − dim`; absent for non-simplicial inputs.
    pub picard_rank: Option<usize>,
    pub aut_order: usize,
    /// Number of vertex orbits under the lattice automorphism group.
    pub t: usize,
    /// Dimension of the subspace fixed by the whole group.
    pub k: usize,
    /// `t − k == 1`; absent for non-smooth inputs, where the orbit
    /// criterion does not decide fibre-likeness.
    pub fibre_like: Option<bool>,
    pub barycentre: Vector<Ratio<S>>,
    pub barycentre_is_zero: bool,
    /// Barycentre criterion verdict; absent for non-reflexive inputs,
    /// where the criterion does not apply.
    pub k_stable: Option<bool>,
}

pub fn analyze<S: Scalar>(p: &LatticePolytope<S>) -> Result<AnalysisReport<S>> {
    let prof = profile(p)?;
    let group = automorphism_group(p)?;
    let orbits = orbit_data(p, &group);
    let verdict = k_stability(p)?;
    Ok(AnalysisReport {
        dim: p.dim(),
        vertex_count: p.vertex_count(),
        is_simplicial: prof.is_simplicial,
        is_smooth: prof.is_smooth,
        is_reflexive: prof.is_reflexive,
        is_terminal: prof.is_terminal,
        picard_rank: prof.picard_rank,
        aut_order: group.order(),
        t: orbits.t,
        k: orbits.k,
        fibre_like: prof.is_smooth.then_some(orbits.invariant_ns_dim == 1),
        barycentre: verdict.barycentre,
        barycentre_is_zero: verdict.is_zero,
        k_stable: verdict.applicable.then_some(verdict.is_zero),
    })
}
