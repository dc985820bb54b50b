use serde::{Deserialize, Serialize};

/// Resource limits shared by the enumeration routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Maximum number of candidate words examined when enumerating a ball.
    pub ball: u64,
    /// Maximum group order for exhaustive element scans.
    pub scan: u64,
    /// Cap on repeated multiplication in `element_order`.
    pub order_cap: u64,
    /// Maximum number of generator-image tuples tried per target group.
    pub homs: u64,
    /// Groups up to this order get a full multiplication table.
    pub table: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            ball: 1_000_000,
            scan: 1_000_000,
            order_cap: 1_000_000,
            homs: 50_000_000,
            table: 2048,
        }
    }
}
