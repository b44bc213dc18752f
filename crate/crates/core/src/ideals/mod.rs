//! Ideals attached to a hypersurface germ at the origin: the jacobian ideal,
//! its Frobenius bracket powers, and local lengths and membership in the
//! local ring at the origin.
//!
//! Ideals of the quotient ring `F_p[x]/(f)` are presented by polynomial-ring
//! generators that include `f` itself, so a single engine serves both.

mod oracle;

use std::sync::Arc;

pub use oracle::{degree_cap_for, truncation_length_oracle, OracleOutcome};

use crate::error::{Error, Result};
use crate::gbasis::{complete_basis_with, EngineConfig, Length, StandardBasis};
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, Ring};

/// A finite, nonempty generator list in one ambient ring. The zero ideal is `{0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

impl IdealPresentation {
    pub fn new(gens: Vec<Polynomial>) -> Result<Self> {
        let ring = gens
            .first()
            .ok_or_else(|| Error::Usage("an ideal needs at least one generator".into()))?
            .ring()
            .clone();
        if gens.iter().any(|g| !g.ring().same_variables(&ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(IdealPresentation { ring, gens })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        IdealPresentation {
            ring: ring.clone(),
            gens: vec![Polynomial::zero(ring)],
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// The ideal with one more generator.
    pub fn with_generator(&self, g: Polynomial) -> Result<Self> {
        let mut gens = self.gens.clone();
        gens.push(g);
        IdealPresentation::new(gens)
    }

    /// Applies a variable permutation to every generator.
    pub fn renamed(&self, perm: &[usize]) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute_rename(perm))
            .collect::<Result<Vec<_>>>()?;
        IdealPresentation::new(gens)
    }
}

/// A hypersurface `f = 0` through the origin of affine n-space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceGerm {
    f: Polynomial,
}

impl HypersurfaceGerm {
    pub fn new(f: Polynomial) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::Usage(
                "the zero polynomial does not define a hypersurface".into(),
            ));
        }
        if !f.vanishes_at_origin() {
            return Err(Error::Usage(format!("{f} does not vanish at the origin")));
        }
        Ok(HypersurfaceGerm { f })
    }

    pub fn equation(&self) -> &Polynomial {
        &self.f
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.f.ring()
    }

    pub fn nvars(&self) -> usize {
        self.f.ring().nvars()
    }

    /// Dimension of the hypersurface, `n - 1`.
    pub fn dim(&self) -> u32 {
        self.nvars() as u32 - 1
    }

    /// All partial derivatives, in variable order.
    pub fn partials(&self) -> Vec<Polynomial> {
        (0..self.nvars())
            .map(|i| self.f.derivative(i).expect("index in range"))
            .collect()
    }
}

/// `(df/dx_1, ..., df/dx_n, f)`.
pub fn jacobian_ideal(germ: &HypersurfaceGerm) -> IdealPresentation {
    let mut gens = germ.partials();
    gens.push(germ.f.clone());
    IdealPresentation {
        ring: germ.ring().clone(),
        gens,
    }
}

/// The bracket ideal `I^[p]` of `I/(f)` in the quotient ring, presented as
/// `(g_1^p, ..., g_k^p, f)` where `g_i` are the generators of `I` other than `f`.
pub fn bracket_ideal(
    ideal: &IdealPresentation,
    germ: &HypersurfaceGerm,
) -> Result<IdealPresentation> {
    bracket_ideal_power(ideal, germ, 1, &EngineConfig::default())
}

/// The `p^e`-th bracket power.
pub fn bracket_ideal_power(
    ideal: &IdealPresentation,
    germ: &HypersurfaceGerm,
    e: u32,
    cfg: &EngineConfig,
) -> Result<IdealPresentation> {
    if !ideal.ring.same_variables(germ.ring()) {
        return Err(Error::RingMismatch);
    }
    let f = germ.equation();
    if !contains_with(ideal, f, cfg)? {
        return Err(Error::Usage(format!(
            "{f} is not in the ideal, so it does not present an ideal of the quotient ring"
        )));
    }
    let mut gens = Vec::with_capacity(ideal.gens.len() + 1);
    for g in ideal.gens.iter().filter(|g| *g != f) {
        gens.push(g.frobenius_power(e)?);
    }
    gens.push(f.clone());
    Ok(IdealPresentation {
        ring: ideal.ring.clone(),
        gens,
    })
}

/// Standard basis of the ideal's extension to the local ring at the origin.
pub fn local_basis(ideal: &IdealPresentation, cfg: &EngineConfig) -> Result<StandardBasis> {
    complete_basis_with(&ideal.gens, MonomialOrder::LocalNegDegRevLex, cfg)
}

/// Length of `O/I*O` for the local ring `O` at the origin.
pub fn local_length(ideal: &IdealPresentation) -> Result<Length> {
    local_length_with(ideal, &EngineConfig::default())
}

pub fn local_length_with(ideal: &IdealPresentation, cfg: &EngineConfig) -> Result<Length> {
    if ideal.gens.iter().any(|g| !g.vanishes_at_origin()) {
        return Ok(Length::Finite(0));
    }
    Ok(local_basis(ideal, cfg)?.standard_monomial_count())
}

/// Membership of `g` in the ideal extended to the local ring at the origin.
pub fn contains(ideal: &IdealPresentation, g: &Polynomial) -> Result<bool> {
    contains_with(ideal, g, &EngineConfig::default())
}

pub fn contains_with(
    ideal: &IdealPresentation,
    g: &Polynomial,
    cfg: &EngineConfig,
) -> Result<bool> {
    if g.is_zero() {
        return Ok(true);
    }
    if !g.ring().same_variables(&ideal.ring) {
        return Err(Error::RingMismatch);
    }
    local_basis(ideal, cfg)?.contains_with(g, cfg)
}

/// True iff the local quotient has finite positive length, i.e. the ideal
/// is primary to the maximal ideal at the origin.
pub fn is_parameter_ideal(ideal: &IdealPresentation) -> Result<bool> {
    is_parameter_ideal_with(ideal, &EngineConfig::default())
}

pub fn is_parameter_ideal_with(ideal: &IdealPresentation, cfg: &EngineConfig) -> Result<bool> {
    Ok(matches!(local_length_with(ideal, cfg)?, Length::Finite(n) if n > 0))
}
