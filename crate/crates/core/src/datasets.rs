// SPDX-License-Identifier: Apache-2.0

//! Small real-world networks shipped with the crate.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dataset {
    /// Zachary's karate club, nodes `1..=34`.
    Karate,
    /// Padgett's Florentine families (marital ties), including isolated Pucci.
    Florentine,
    /// Taro gift exchange among 22 households, nodes `1..=22`.
    Gift,
}

impl Dataset {
    pub const ALL: [Dataset; 3] = [Dataset::Karate, Dataset::Florentine, Dataset::Gift];

    pub fn name(self) -> &'static str {
        match self {
            Dataset::Karate => "karate",
            Dataset::Florentine => "florentine",
            Dataset::Gift => "gift",
        }
    }

    pub fn edge_list(self) -> &'static str {
        match self {
            Dataset::Karate => include_str!("../data/karate.edges"),
            Dataset::Florentine => include_str!("../data/florentine.edges"),
            Dataset::Gift => include_str!("../data/gift.edges"),
        }
    }

    pub fn load(self) -> Graph {
        Graph::parse_edge_list(self.edge_list()).expect("bundled dataset parses")
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "karate" | "zachary" => Ok(Dataset::Karate),
            "florentine" | "padgett" => Ok(Dataset::Florentine),
            "gift" | "taro" | "gift-giving" => Ok(Dataset::Gift),
            other => Err(Error::domain(format!(
                "unknown dataset '{other}' (expected karate, florentine or gift)"
            ))),
        }
    }
}
