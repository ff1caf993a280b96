use crate::{Error, Result};

/// Upper limit on the number of items an exhaustive enumeration may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    /// Name of the environment variable that overrides [`Budget::DEFAULT`].
    pub const ENV_VAR: &'static str = "BH_BUDGET";

    /// Reads `BH_BUDGET`, falling back to the default when unset.
    pub fn from_env() -> Result<Budget> {
        match std::env::var(Self::ENV_VAR) {
            Ok(raw) => {
                raw.trim().parse::<u64>().map(Budget).map_err(|_| {
                    Error::invalid(format!("{} must be a nonnegative integer, got {raw:?}", Self::ENV_VAR))
                })
            }
            Err(_) => Ok(Self::DEFAULT),
        }
    }

    pub fn check(self, required: u128) -> Result<()> {
        if required > self.0 as u128 {
            Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::DEFAULT
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_is_inclusive() {
        assert!(Budget(10).check(10).is_ok());
        assert_eq!(
            Budget(10).check(11),
            Err(Error::BudgetExceeded {
                required: 11,
                budget: 10
            })
        );
    }
}
