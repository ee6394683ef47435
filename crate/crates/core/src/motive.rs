//! The partition-indexed decomposition of the Hilbert scheme of points.
//!
//! For a smooth surface `X`, the motive of the Hilbert scheme `X^[n]` splits
//! into one summand per partition `ν` of `n`: the motive of the product of
//! symmetric powers `X^(ν) = X^(a_1) × ⋯ × X^(a_n)` (where `a_m` counts the
//! parts of size `m`), Tate-twisted `n − l(ν)` times and shifted by twice
//! that.  Everything downstream — Poincaré polynomials, Hodge numbers, Chow
//! ranks, Euler characteristics — is obtained by specializing the summands.

use crate::error::Result;
use crate::graded::{BiGradedDimension, GradedDimension};
use crate::partition::{partition_count, MultiplicityVector, Partition};
use crate::surface::SurfaceDescriptor;

/// One summand of the decomposition of `X^[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotiveTerm {
    pub nu: Partition,
    /// Multiplicities `a_m`: the summand is a product of factors `X^(a_m)`.
    pub factors: MultiplicityVector,
    /// Number of Tate twists, `n − l(ν)`.
    pub twist: usize,
    /// Cohomological shift, `2 (n − l(ν))`.
    pub shift: usize,
}

impl MotiveTerm {
    /// Human-readable product of symmetric-power factors, e.g. `X^(2)×X`.
    pub fn factors_display(&self) -> String {
        if self.nu.is_empty() {
            return "pt".into();
        }
        let mut pieces = Vec::new();
        for (_, a) in self.factors.iter() {
            if a == 1 {
                pieces.push("X".to_string());
            } else {
                pieces.push(format!("X^({a})"));
            }
        }
        pieces.join("×")
    }
}

/// The full decomposition for a given number of points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MotiveDecomposition {
    pub n: usize,
    /// Terms in the canonical partition order.
    pub terms: Vec<MotiveTerm>,
}

/// The decomposition of `X^[n]`, one term per partition of `n`.
pub fn hilb_decomposition(n: usize) -> MotiveDecomposition {
    let terms = Partition::enumerate(n)
        .into_iter()
        .map(|nu| {
            let twist = n - nu.len();
            MotiveTerm {
                factors: nu.multiplicities(),
                twist,
                shift: 2 * twist,
                nu,
            }
        })
        .collect();
    MotiveDecomposition { n, terms }
}

/// Betti data of the product `X^(a_1) × X^(a_2) × ⋯` described by `factors`.
fn poincare_sym_product(surface: &SurfaceDescriptor, factors: &MultiplicityVector) -> GradedDimension {
    let base = surface.poincare();
    let mut out = GradedDimension::unit();
    for (_, a) in factors.iter() {
        out = out.tensor(&base.sym_power_signed(a as usize));
    }
    out
}

/// Hodge data of the product of symmetric powers described by `factors`.
fn hodge_sym_product(
    base: &BiGradedDimension,
    factors: &MultiplicityVector,
) -> BiGradedDimension {
    let mut out = BiGradedDimension::unit();
    for (_, a) in factors.iter() {
        out = out.tensor(&base.sym_power_bigraded(a as usize));
    }
    out
}

/// Chow ranks of the product of symmetric powers described by `factors`,
/// graded by cycle dimension.  Requires a cellular surface.
pub fn chow_sym_product(
    surface: &SurfaceDescriptor,
    factors: &MultiplicityVector,
) -> Result<GradedDimension> {
    let base = surface.chow()?;
    let mut out = GradedDimension::unit();
    for (_, a) in factors.iter() {
        out = out.tensor(&base.sym_power_unsigned(a as usize));
    }
    Ok(out)
}

/// Betti numbers of `X^[n]`: each term contributes its product of signed
/// symmetric powers, shifted up by `2 (n − l(ν))` for the Tate twists.
pub fn poincare_hilb(surface: &SurfaceDescriptor, n: usize) -> GradedDimension {
    let mut out = GradedDimension::zero();
    for term in hilb_decomposition(n).terms {
        out = out.sum(&poincare_sym_product(surface, &term.factors).shifted(term.shift));
    }
    out
}

/// Hodge numbers of `X^[n]`; a Tate twist raises both `p` and `q` by one.
pub fn hodge_hilb(surface: &SurfaceDescriptor, n: usize) -> Result<BiGradedDimension> {
    let base = surface.hodge_dims()?;
    let mut out = BiGradedDimension::zero();
    for term in hilb_decomposition(n).terms {
        out = out.sum(&hodge_sym_product(&base, &term.factors).twisted(term.twist));
    }
    Ok(out)
}

/// Ranks of the Chow groups of `X^[n]` by cycle dimension; a Tate twist
/// raises the dimension by one.  No signs enter: the symmetric powers are
/// the unsigned ones.  Rejects non-cellular surfaces, for which Chow groups
/// of products are not rank computations.
pub fn chow_dims_hilb(surface: &SurfaceDescriptor, n: usize) -> Result<GradedDimension> {
    let mut out = GradedDimension::zero();
    for term in hilb_decomposition(n).terms {
        out = out.sum(&chow_sym_product(surface, &term.factors)?.shifted(term.twist));
    }
    Ok(out)
}

/// Total rank of the Chow groups of the punctual fiber: the number of
/// partitions of `n`, one class per irreducible component stratum.
pub fn punctual_chow_total(n: usize) -> u64 {
    partition_count(n)
}

/// Topological Euler characteristic of `X^[n]`.
pub fn euler_hilb(surface: &SurfaceDescriptor, n: usize) -> i64 {
    poincare_hilb(surface, n).euler()
}
