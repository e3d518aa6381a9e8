//! Resource bounds shared by every search in the crate.
//!
//! Exceeding any bound is reported as [`Error::ResourceLimit`](crate::Error::ResourceLimit);
//! no search truncates silently.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Maximum group order for element enumeration (intersections, conjugacy searches).
    pub elements: u64,
    /// Maximum group order for conjugacy-class-of-subgroups enumeration.
    pub subgroups: u64,
    /// Maximum group order for normal-subgroup enumeration.
    pub normal_subgroups: u64,
    /// Maximum number of points in a coset action.
    pub points: u64,
    /// Maximum number of s-arcs enumerated by the direct verifier.
    pub arcs: u64,
    /// Below this order, abstract isomorphism is certified by an explicit map.
    pub iso_certify: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::desk()
    }
}

impl Bounds {
    pub const fn desk() -> Self {
        Bounds {
            elements: 1_000_000,
            subgroups: 2_000,
            normal_subgroups: 100_000,
            points: 100_000,
            arcs: 10_000_000,
            iso_certify: 500,
        }
    }

    pub const fn extended() -> Self {
        Bounds {
            elements: 20_000_000,
            subgroups: 20_000,
            normal_subgroups: 1_000_000,
            points: 1_000_000,
            arcs: 200_000_000,
            iso_certify: 2_000,
        }
    }

    /// Resolve a profile name (`desk` or `extended`).
    pub fn profile(name: &str) -> Option<Self> {
        match name.trim().to_ascii_lowercase().as_str() {
            "desk" => Some(Bounds::desk()),
            "extended" => Some(Bounds::extended()),
            _ => None,
        }
    }
}
