//! Deterministic choice of a big cell around a target vector.
//!
//! A target on a wall lies in the closure of several big cells. The cell is
//! fixed by an infinitesimal perturbation `a + ε d_1 + ε² d_2 + …`, decided
//! exactly: a coordinate of the perturbed point is positive iff the first
//! nonzero entry of its sequence of coordinates is positive. The canonical
//! sequence is `ρ = Σ α` followed by every vector of the configuration in
//! order; the tail guarantees the perturbed point avoids every wall, since a
//! wall containing all of `Δ` cannot exist.

use num_traits::{Signed, Zero};

use crate::config::VectorConfig;
use crate::error::{Error, Result};
use crate::linalg::{BasisSolver, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum ChamberPolicy {
    /// Perturb towards `ρ`, then along each vector in order.
    #[default]
    Canonical,
    /// Perturb along these directions first, then canonically.
    Toward(Vec<Vec<Rational>>),
}

/// The perturbed point `base + ε d_1 + ε² d_2 + …` that names a big cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChamberCertificate {
    pub base: Vec<Rational>,
    pub directions: Vec<Vec<Rational>>,
}

impl ChamberCertificate {
    pub fn new(config: &VectorConfig, base: Vec<Rational>, policy: &ChamberPolicy) -> Result<Self> {
        let span = config.span();
        let mut directions = Vec::new();
        if let ChamberPolicy::Toward(ds) = policy {
            for d in ds {
                if d.len() != config.ambient_dim() || !span.contains(d) {
                    return Err(Error::OutsideSpan);
                }
                directions.push(d.clone());
            }
        }
        directions.extend(canonical_directions(config));
        Ok(ChamberCertificate { base, directions })
    }

    /// Base point followed by the perturbation directions.
    pub fn sequence(&self) -> impl Iterator<Item = &[Rational]> {
        std::iter::once(self.base.as_slice()).chain(self.directions.iter().map(|d| d.as_slice()))
    }

    /// Whether the perturbed point lies in the open simplicial cone spanned
    /// by the solver's basis. `None` if some point of the sequence is outside
    /// the basis span.
    pub fn in_open_cone(&self, solver: &BasisSolver) -> Option<bool> {
        let coords: Vec<Vec<Rational>> = self
            .sequence()
            .map(|p| solver.coordinates(p))
            .collect::<Option<_>>()?;
        Some((0..solver.len()).all(|i| lex_positive(coords.iter().map(|c| &c[i]))))
    }
}

/// Whether `a` lies in the closed cone spanned by the configuration, tested
/// on the closed n.b.c. cones, which cover it.
pub fn in_closed_cone(config: &VectorConfig, a: &[Rational]) -> Result<bool> {
    if a.len() != config.ambient_dim() {
        return Err(Error::DimensionMismatch {
            index: 0,
            found: a.len(),
            expected: config.ambient_dim(),
        });
    }
    if !config.span().contains(a) {
        return Err(Error::OutsideSpan);
    }
    Ok(crate::arrangement::nbc_bases(config).iter().any(|b| {
        crate::arrangement::cone_coordinates(config, b.indices(), a)
            .is_ok_and(|c| c.iter().all(|x| !x.is_negative()))
    }))
}

/// `ρ = Σ α`, then each vector in configuration order.
pub fn canonical_directions(config: &VectorConfig) -> Vec<Vec<Rational>> {
    let dim = config.ambient_dim();
    let mut rho = vec![Rational::zero(); dim];
    for i in 0..config.len() {
        for (x, y) in rho.iter_mut().zip(config.rational(i)) {
            *x += y;
        }
    }
    let mut out = vec![rho];
    out.extend((0..config.len()).map(|i| config.rational(i).to_vec()));
    out
}

/// First nonzero entry is positive; an all-zero sequence is not positive.
pub fn lex_positive<'a>(seq: impl IntoIterator<Item = &'a Rational>) -> bool {
    seq.into_iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_positive())
}
