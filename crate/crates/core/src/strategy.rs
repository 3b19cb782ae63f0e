//! Agent profiles: the public attribute type and the private two-dimensional
//! strategy fixed at initialization.

use serde::{Deserialize, Serialize};

use crate::graph::AgentId;

/// Categorical agent attribute. Only the two values `0` and `1` are used;
/// the newtype leaves room for a wider domain later.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AttributeType(pub u8);

impl AttributeType {
    pub const COUNT: usize = 2;

    pub fn new(tag: u8) -> Option<Self> {
        (tag < Self::COUNT as u8).then_some(AttributeType(tag))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Attribute-dimension strategy: which neighbor types yield payoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttributeDim {
    /// Payoff from neighbors sharing one's own type.
    Homophily,
    /// Payoff from neighbors of a different type.
    Heterophily,
}

/// Structure-dimension strategy: which local topology yields payoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureDim {
    /// Payoff from triangles through oneself.
    Embedded,
    /// Payoff from pairwise-disconnected neighbors (brokerage).
    SocialCapital,
}

/// One agent's pure strategy; both dimensions are always set, even under
/// ablations that zero one payoff component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strategy {
    pub attribute: AttributeDim,
    pub structure: StructureDim,
}

impl Strategy {
    pub fn new(attribute: AttributeDim, structure: StructureDim) -> Self {
        Strategy { attribute, structure }
    }
}

/// Immutable per-agent state assigned at t = 0. The type is public
/// information; the strategy is private to the agent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentProfile {
    pub id: AgentId,
    pub attr_type: AttributeType,
    pub strategy: Strategy,
}
