use serde::{Deserialize, Serialize};

use super::question::Variant;
use crate::condition::Condition;

use Condition::{Baseline as B, DynamicContext as DC, MiniMap as MM};
use Variant::{V0, V1, V2};

/// Task sequences for the six order indices. Every sequence uses each variant
/// once; across the six, each (condition, variant) pair appears twice.
pub const COUNTERBALANCING: [[(Condition, Variant); 3]; 6] = [
    [(B, V0), (DC, V1), (MM, V2)],
    [(DC, V0), (MM, V1), (B, V2)],
    [(MM, V0), (B, V1), (DC, V2)],
    [(MM, V2), (DC, V1), (B, V0)],
    [(DC, V2), (B, V1), (MM, V0)],
    [(B, V2), (MM, V1), (DC, V0)],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionAssignment {
    pub order_index: usize,
    pub sequence: [(Condition, Variant); 3],
}

pub fn assign_order(participant_index: usize) -> ConditionAssignment {
    let order_index = participant_index % COUNTERBALANCING.len();
    ConditionAssignment {
        order_index,
        sequence: COUNTERBALANCING[order_index],
    }
}
