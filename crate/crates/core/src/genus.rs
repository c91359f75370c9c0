use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Curve genus, validated to the range where the fixed-locus formulas are
/// non-degenerate (g >= 2) and group elements fit a 64-bit vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Genus(u32);

impl Genus {
    pub const MIN: u32 = 2;
    pub const MAX: u32 = 32;

    pub fn new(g: u32) -> Result<Self> {
        if g < Self::MIN {
            Err(Error::GenusTooSmall(g))
        } else if g > Self::MAX {
            Err(Error::GenusTooLarge {
                got: g,
                max: Self::MAX,
            })
        } else {
            Ok(Genus(g))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// 2g - 2, the exponent that recurs in every formula.
    pub fn two_g_minus_two(self) -> u32 {
        2 * self.0 - 2
    }

    /// Rank of Γ = (Z/2)^{2g} as a vector space over F_2.
    pub fn group_rank(self) -> u32 {
        2 * self.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Which of the two non-abelian Hodge incarnations a formula refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Dolbeault,
    Betti,
}

impl Side {
    pub const ALL: [Side; 2] = [Side::Dolbeault, Side::Betti];

    pub fn name(self) -> &'static str {
        match self {
            Side::Dolbeault => "dolbeault",
            Side::Betti => "betti",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dolbeault" | "dol" => Ok(Side::Dolbeault),
            "betti" | "b" => Ok(Side::Betti),
            other => Err(format!(
                "unknown side `{other}` (expected dolbeault or betti)"
            )),
        }
    }
}
