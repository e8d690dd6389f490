use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The six diagram kinds a [`crate::Manager`] can host.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiagramKind {
    Sdd,
    Zsdd,
    /// Node-based standard TSDD.
    Nstsdd,
    /// Node-based zero-suppressed TSDD.
    Nztsdd,
    /// Edge-based standard TSDD.
    Estsdd,
    /// Edge-based zero-suppressed TSDD.
    Eztsdd,
}

/// How variables between two vtrees are filled in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Padding {
    /// Variables are absent from every combination (`{∅}`).
    Zero,
    /// Variables are unconstrained (universe set).
    Free,
}

/// The compression/trimming rule family used by a kind.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RuleSystem {
    S,
    Z,
    ST,
    ZT,
}

impl fmt::Display for RuleSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleSystem::S => "S",
            RuleSystem::Z => "Z",
            RuleSystem::ST => "ST",
            RuleSystem::ZT => "ZT",
        })
    }
}

impl DiagramKind {
    pub const ALL: [DiagramKind; 6] = [
        DiagramKind::Sdd,
        DiagramKind::Zsdd,
        DiagramKind::Nstsdd,
        DiagramKind::Nztsdd,
        DiagramKind::Estsdd,
        DiagramKind::Eztsdd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DiagramKind::Sdd => "sdd",
            DiagramKind::Zsdd => "zsdd",
            DiagramKind::Nstsdd => "nstsdd",
            DiagramKind::Nztsdd => "nztsdd",
            DiagramKind::Estsdd => "estsdd",
            DiagramKind::Eztsdd => "eztsdd",
        }
    }

    /// Tagged kinds carry a primary and a secondary vtree.
    pub fn is_tagged(self) -> bool {
        !matches!(self, DiagramKind::Sdd | DiagramKind::Zsdd)
    }

    pub fn is_edge_based(self) -> bool {
        matches!(self, DiagramKind::Estsdd | DiagramKind::Eztsdd)
    }

    pub fn rules(self) -> RuleSystem {
        match self {
            DiagramKind::Sdd => RuleSystem::S,
            DiagramKind::Zsdd => RuleSystem::Z,
            DiagramKind::Nstsdd | DiagramKind::Estsdd => RuleSystem::ST,
            DiagramKind::Nztsdd | DiagramKind::Eztsdd => RuleSystem::ZT,
        }
    }

    /// Padding for variables of an enclosing region that lie outside a
    /// diagram's primary vtree.
    pub fn outer_padding(self) -> Padding {
        match self.rules() {
            RuleSystem::S | RuleSystem::ZT => Padding::Free,
            RuleSystem::Z | RuleSystem::ST => Padding::Zero,
        }
    }

    /// Padding for variables in the primary but not the secondary vtree.
    /// Untagged kinds have a single vtree, so the value only matters for
    /// tagged kinds.
    pub fn inner_padding(self) -> Padding {
        match self.rules() {
            RuleSystem::ST => Padding::Free,
            RuleSystem::ZT => Padding::Zero,
            RuleSystem::S => Padding::Free,
            RuleSystem::Z => Padding::Zero,
        }
    }
}

impl fmt::Display for DiagramKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown diagram kind `{0}` (expected one of sdd, zsdd, nstsdd, nztsdd, estsdd, eztsdd)")]
pub struct UnknownKind(pub String);

impl FromStr for DiagramKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DiagramKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownKind(s.to_owned()))
    }
}
