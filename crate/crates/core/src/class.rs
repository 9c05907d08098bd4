use std::fmt;
use std::str::FromStr;

use crate::interval::IntervalMode;

/// The target graph classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GraphClass {
    Interval,
    ProperInterval,
    TriviallyPerfect,
    CircularArc,
    Permutation,
    Threshold,
}

impl GraphClass {
    pub const ALL: [GraphClass; 6] = [
        GraphClass::Interval,
        GraphClass::ProperInterval,
        GraphClass::TriviallyPerfect,
        GraphClass::CircularArc,
        GraphClass::Permutation,
        GraphClass::Threshold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GraphClass::Interval => "interval",
            GraphClass::ProperInterval => "proper-interval",
            GraphClass::TriviallyPerfect => "trivially-perfect",
            GraphClass::CircularArc => "circular-arc",
            GraphClass::Permutation => "permutation",
            GraphClass::Threshold => "threshold",
        }
    }

    /// The interval-family mode solving this class, if any.
    pub fn interval_mode(self) -> Option<IntervalMode> {
        match self {
            GraphClass::Interval => Some(IntervalMode::Interval),
            GraphClass::ProperInterval => Some(IntervalMode::Proper),
            GraphClass::TriviallyPerfect => Some(IntervalMode::Nested),
            GraphClass::CircularArc => Some(IntervalMode::Circular),
            GraphClass::Permutation | GraphClass::Threshold => None,
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "interval" => Ok(GraphClass::Interval),
            "proper-interval" | "proper" => Ok(GraphClass::ProperInterval),
            "trivially-perfect" | "nested" => Ok(GraphClass::TriviallyPerfect),
            "circular-arc" | "circular" => Ok(GraphClass::CircularArc),
            "permutation" => Ok(GraphClass::Permutation),
            "threshold" => Ok(GraphClass::Threshold),
            _ => Err(format!(
                "unknown class {s:?} (expected interval, proper-interval, trivially-perfect, circular-arc, permutation or threshold)"
            )),
        }
    }
}
