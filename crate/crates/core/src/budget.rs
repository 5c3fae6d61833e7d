use crate::error::{Error, Result};

/// Node budget for the exhaustive enumerations. Exceeding it turns a
/// blow-up into a reported resource error instead of nontermination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
    used: u64,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, used: 0 }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn charge(&mut self, nodes: u64) -> Result<()> {
        self.used = self.used.saturating_add(nodes);
        if self.used > self.limit {
            Err(Error::Budget { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::new(DEFAULT_BUDGET)
    }
}
