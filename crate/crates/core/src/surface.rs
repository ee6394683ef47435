//! Numerical descriptors of smooth surfaces.
//!
//! The engine never sees an actual variety, only the dimension data attached
//! to one: Betti numbers, optionally Hodge numbers, and optionally the ranks
//! of the Chow groups.  The `cellular` flag asserts that the surface is built
//! from affine cells, which is what makes Chow groups of products and
//! symmetric products computable from the ranks alone; quasi-projective
//! descriptors are allowed (with `projective` unset the duality checks are
//! skipped) so that cell counts like the affine plane's can be fed through
//! the Chow pipeline.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{BiGradedDimension, GradedDimension};

/// Hodge numbers `h^{p,q}` for `0 ≤ p, q ≤ 2`, indexed `hodge[p][q]`.
pub type HodgeNumbers = [[u64; 3]; 3];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub name: String,
    /// Betti numbers `b_0 … b_4`.
    pub betti: [u64; 5],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hodge: Option<HodgeNumbers>,
    /// Ranks of `A_0, A_1, A_2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chow_ranks: Option<[u64; 3]>,
    #[serde(default)]
    pub projective: bool,
    #[serde(default)]
    pub cellular: bool,
}

impl SurfaceDescriptor {
    /// Checks the internal consistency of the descriptor.
    // indexing h[p][q] mirrors the h^{p,q} notation
    #[allow(clippy::needless_range_loop)]
    pub fn validate(&self) -> Result<()> {
        let fail = |reason: String| {
            Err(Error::InvalidSurface { name: self.name.clone(), reason })
        };
        if let Some(h) = &self.hodge {
            for p in 0..3 {
                for q in 0..3 {
                    if h[p][q] != h[q][p] {
                        return fail(format!(
                            "Hodge numbers are not symmetric: h^{{{p},{q}}} = {} but h^{{{q},{p}}} = {}",
                            h[p][q], h[q][p]
                        ));
                    }
                }
            }
            for i in 0..=4 {
                let row: u64 = (0..3)
                    .filter(|&p| i >= p && i - p < 3)
                    .map(|p| h[p][i - p])
                    .sum();
                if row != self.betti[i] {
                    return fail(format!(
                        "Hodge numbers along p+q={i} sum to {row}, expected b_{i} = {}",
                        self.betti[i]
                    ));
                }
            }
        }
        if self.cellular {
            if self.betti[1] != 0 || self.betti[3] != 0 {
                return fail("cellular surfaces have b_1 = b_3 = 0".into());
            }
            if self.chow_ranks.is_none() {
                return fail("cellular surfaces must list their Chow ranks".into());
            }
        }
        if self.projective {
            for i in 0..=4 {
                if self.betti[i] != self.betti[4 - i] {
                    return fail(format!(
                        "projective surfaces satisfy b_{i} = b_{}, got {} and {}",
                        4 - i,
                        self.betti[i],
                        self.betti[4 - i]
                    ));
                }
            }
            if let Some(h) = &self.hodge {
                for p in 0..3 {
                    for q in 0..3 {
                        if h[p][q] != h[2 - p][2 - q] {
                            return fail(format!(
                                "projective surfaces satisfy h^{{{p},{q}}} = h^{{{},{}}}",
                                2 - p,
                                2 - q
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Betti numbers as a graded dimension vector.
    pub fn poincare(&self) -> GradedDimension {
        let pairs: Vec<(usize, u64)> = self
            .betti
            .iter()
            .enumerate()
            .map(|(i, &b)| (i, b))
            .collect();
        GradedDimension::from_pairs(&pairs)
    }

    /// Hodge numbers as a bigraded dimension vector.
    pub fn hodge_dims(&self) -> Result<BiGradedDimension> {
        let h = self
            .hodge
            .as_ref()
            .ok_or_else(|| Error::MissingHodge(self.name.clone()))?;
        let mut out = BiGradedDimension::zero();
        for (p, row) in h.iter().enumerate() {
            for (q, &count) in row.iter().enumerate() {
                out.add(p, q, count);
            }
        }
        Ok(out)
    }

    /// Chow ranks as a graded dimension vector indexed by cycle dimension.
    /// Requires the cellular flag: without a cell structure the ranks of a
    /// product are not determined by the ranks of the factors.
    pub fn chow(&self) -> Result<GradedDimension> {
        if !self.cellular {
            return Err(Error::NotCellular(
                self.name.clone(),
                "Chow computations need a cell structure".into(),
            ));
        }
        let ranks = self.chow_ranks.expect("validated cellular descriptor");
        Ok(GradedDimension::from_pairs(&[
            (0, ranks[0]),
            (1, ranks[1]),
            (2, ranks[2]),
        ]))
    }

    /// The built-in surface with the given name, if any.
    pub fn builtin(name: &str) -> Option<SurfaceDescriptor> {
        match name {
            "p2" => Some(Self::p2()),
            "p1xp1" => Some(Self::p1xp1()),
            "k3" => Some(Self::k3()),
            "abelian" => Some(Self::abelian()),
            _ => None,
        }
    }

    pub const BUILTIN_NAMES: [&'static str; 4] = ["p2", "p1xp1", "k3", "abelian"];

    /// The projective plane.
    pub fn p2() -> SurfaceDescriptor {
        SurfaceDescriptor {
            name: "p2".into(),
            betti: [1, 0, 1, 0, 1],
            hodge: Some([[1, 0, 0], [0, 1, 0], [0, 0, 1]]),
            chow_ranks: Some([1, 1, 1]),
            projective: true,
            cellular: true,
        }
    }

    /// The quadric `P1 × P1`.
    pub fn p1xp1() -> SurfaceDescriptor {
        SurfaceDescriptor {
            name: "p1xp1".into(),
            betti: [1, 0, 2, 0, 1],
            hodge: Some([[1, 0, 0], [0, 2, 0], [0, 0, 1]]),
            chow_ranks: Some([1, 2, 1]),
            projective: true,
            cellular: true,
        }
    }

    /// A K3 surface: no odd cohomology, 22-dimensional middle.
    pub fn k3() -> SurfaceDescriptor {
        SurfaceDescriptor {
            name: "k3".into(),
            betti: [1, 0, 22, 0, 1],
            hodge: Some([[1, 0, 1], [0, 20, 0], [1, 0, 1]]),
            chow_ranks: None,
            projective: true,
            cellular: false,
        }
    }

    /// An abelian surface: odd cohomology in every degree.
    pub fn abelian() -> SurfaceDescriptor {
        SurfaceDescriptor {
            name: "abelian".into(),
            betti: [1, 4, 6, 4, 1],
            hodge: Some([[1, 2, 1], [2, 4, 2], [1, 2, 1]]),
            chow_ranks: None,
            projective: true,
            cellular: false,
        }
    }
}
