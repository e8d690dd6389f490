//! Plain node vocabulary shared by the manager, the rewrite engine and the oracle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::vtree::VtreeId;

/// Terminal symbols: 𝟏, 𝟎, ε and ¬ε.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Terminal {
    One,
    Zero,
    Eps,
    NegEps,
}

impl Terminal {
    pub fn symbol(self) -> &'static str {
        match self {
            Terminal::One => "1",
            Terminal::Zero => "0",
            Terminal::Eps => "ε",
            Terminal::NegEps => "¬ε",
        }
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An explicit, unshared extended diagram `(primary, secondary, body)`.
///
/// This is the exchange format between a [`crate::Manager`] and the oracle
/// evaluators; it owns its children and is only meant for small diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Esdd {
    pub primary: VtreeId,
    pub secondary: VtreeId,
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Body {
    Terminal(Terminal),
    Decomposition(Vec<(Esdd, Esdd)>),
}

impl Esdd {
    pub fn terminal(primary: VtreeId, secondary: VtreeId, t: Terminal) -> Esdd {
        Esdd {
            primary,
            secondary,
            body: Body::Terminal(t),
        }
    }

    pub fn decomposition(
        primary: VtreeId,
        secondary: VtreeId,
        elements: Vec<(Esdd, Esdd)>,
    ) -> Esdd {
        Esdd {
            primary,
            secondary,
            body: Body::Decomposition(elements),
        }
    }

    pub fn size(&self) -> usize {
        match &self.body {
            Body::Terminal(_) => 0,
            Body::Decomposition(es) => {
                es.len() + es.iter().map(|(p, s)| p.size() + s.size()).sum::<usize>()
            }
        }
    }
}
