use std::str::FromStr;
use std::time::Duration;

use serde::Serialize;

use crate::kind::DiagramKind;
use crate::manager::{Dd, Manager};

/// Summary of one compiled diagram.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub kind: DiagramKind,
    pub node_count: usize,
    pub size: usize,
    pub bytes: usize,
    pub model_count: serde_json::Number,
    pub wall_ms: u64,
}

impl Stats {
    pub fn collect(m: &Manager, d: Dd, wall: Option<Duration>) -> Stats {
        let models = m.count_models(d).to_string();
        Stats {
            kind: m.kind(),
            node_count: m.node_count(d),
            size: m.size(d),
            bytes: m.memory_bytes(d),
            model_count: serde_json::Number::from_str(&models).expect("decimal integer"),
            wall_ms: wall.map_or(0, |w| w.as_millis() as u64),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("stats serialize");
        s.push('\n');
        s
    }
}
