use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::PixelCoord;

/// Semantic role of a click. Each variant corresponds to one learned prompt
/// embedding on the model side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptRole {
    Positive,
    Negative,
    #[serde(rename = "box_a")]
    BoxCornerA,
    #[serde(rename = "box_b")]
    BoxCornerB,
    Top,
    Bottom,
    Left,
    Right,
    Major,
    Minor,
}

impl PromptRole {
    pub const ALL: [PromptRole; 10] = [
        PromptRole::Positive,
        PromptRole::Negative,
        PromptRole::BoxCornerA,
        PromptRole::BoxCornerB,
        PromptRole::Top,
        PromptRole::Bottom,
        PromptRole::Left,
        PromptRole::Right,
        PromptRole::Major,
        PromptRole::Minor,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PromptRole::Positive => "positive",
            PromptRole::Negative => "negative",
            PromptRole::BoxCornerA => "box_a",
            PromptRole::BoxCornerB => "box_b",
            PromptRole::Top => "top",
            PromptRole::Bottom => "bottom",
            PromptRole::Left => "left",
            PromptRole::Right => "right",
            PromptRole::Major => "major",
            PromptRole::Minor => "minor",
        }
    }

    pub fn is_refinement(self) -> bool {
        matches!(self, PromptRole::Positive | PromptRole::Negative)
    }
}

impl fmt::Display for PromptRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PromptPoint {
    #[serde(flatten)]
    pub coord: PixelCoord,
    pub role: PromptRole,
}

impl PromptPoint {
    pub fn new(x: u32, y: u32, role: PromptRole) -> Self {
        Self { coord: PixelCoord::new(x, y), role }
    }
}

/// Initial prompt strategy of a [`PromptSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Extreme,
    MajorMinor,
    Box,
    RegionClick,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Extreme => "extreme",
            Strategy::MajorMinor => "major_minor",
            Strategy::Box => "box",
            Strategy::RegionClick => "region_click",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An ordered group of clicks produced by one strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptSet {
    pub strategy: Strategy,
    pub seed: u64,
    pub deterministic: bool,
    pub points: Vec<PromptPoint>,
}

impl PromptSet {
    pub fn role(&self, role: PromptRole) -> Option<PixelCoord> {
        self.points.iter().find(|p| p.role == role).map(|p| p.coord)
    }

    pub fn coords_with_role(&self, role: PromptRole) -> Vec<PixelCoord> {
        self.points.iter().filter(|p| p.role == role).map(|p| p.coord).collect()
    }

    /// Checks that the role multiset matches the strategy.
    pub fn validate(&self) -> Result<()> {
        let count = |r: PromptRole| self.points.iter().filter(|p| p.role == r).count();
        let bad = |msg: String| Err(Error::InvalidParams(format!("{} prompt set: {msg}", self.strategy)));
        match self.strategy {
            Strategy::Extreme => {
                let ok = self.points.len() == 4
                    && [PromptRole::Top, PromptRole::Bottom, PromptRole::Left, PromptRole::Right].iter().all(|&r| count(r) == 1);
                if !ok {
                    return bad("needs exactly one each of top, bottom, left, right".into());
                }
            }
            Strategy::MajorMinor => {
                if self.points.len() != 4 || count(PromptRole::Major) != 2 || count(PromptRole::Minor) != 2 {
                    return bad("needs exactly two major and two minor points".into());
                }
            }
            Strategy::Box => {
                let roles: Vec<_> = self.points.iter().map(|p| p.role).collect();
                if roles != [PromptRole::BoxCornerA, PromptRole::BoxCornerB] {
                    return bad("needs box_a followed by box_b".into());
                }
                let (a, b) = (self.points[0].coord, self.points[1].coord);
                if a.x > b.x || a.y > b.y {
                    return bad(format!("corner a ({}, {}) exceeds corner b ({}, {})", a.x, a.y, b.x, b.y));
                }
            }
            Strategy::RegionClick => {
                if self.points.is_empty() || !self.points.iter().all(|p| p.role.is_refinement()) {
                    return bad("needs one or more positive/negative clicks".into());
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn role_spellings() {
        for role in PromptRole::ALL {
            let json = serde_json::to_string(&role).unwrap();
            assert_eq!(json, format!("\"{}\"", role.as_str()));
            assert_eq!(serde_json::from_str::<PromptRole>(&json).unwrap(), role);
        }
        assert!(serde_json::from_str::<PromptRole>("\"majorr\"").is_err());
    }

    #[test]
    fn point_wire_shape() {
        let p = PromptPoint::new(3, 4, PromptRole::BoxCornerA);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"x":3,"y":4,"role":"box_a"}"#);
    }

    #[test]
    fn box_validation() {
        let mut ps = PromptSet {
            strategy: Strategy::Box,
            seed: 0,
            deterministic: true,
            points: vec![PromptPoint::new(1, 1, PromptRole::BoxCornerA), PromptPoint::new(3, 4, PromptRole::BoxCornerB)],
        };
        assert!(ps.validate().is_ok());
        ps.points.swap(0, 1);
        assert!(ps.validate().is_err());
        ps.points = vec![PromptPoint::new(5, 1, PromptRole::BoxCornerA), PromptPoint::new(3, 4, PromptRole::BoxCornerB)];
        assert!(ps.validate().is_err());
    }

    #[test]
    fn extreme_validation_rejects_duplicate_role() {
        let ps = PromptSet {
            strategy: Strategy::Extreme,
            seed: 0,
            deterministic: true,
            points: vec![
                PromptPoint::new(1, 0, PromptRole::Top),
                PromptPoint::new(1, 9, PromptRole::Top),
                PromptPoint::new(0, 4, PromptRole::Left),
                PromptPoint::new(9, 4, PromptRole::Right),
            ],
        };
        assert!(ps.validate().is_err());
    }
}
