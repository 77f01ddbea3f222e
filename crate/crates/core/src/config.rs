//! The one place where caps and defaults live. Values come from the
//! defaults below, can be overridden by `TUNNELKIT_`-prefixed
//! environment variables, and finally by CLI flags.

use crate::dyck::DEFAULT_ENUMERATION_CAP;
use crate::perm::DEFAULT_PERM_CAP;

/// Default truncation order for multivariate series runs; coefficient
/// blowup, not time, is the binding constraint.
pub const DEFAULT_ORDER: usize = 8;

/// Environment variable prefix for overrides.
pub const ENV_PREFIX: &str = "TUNNELKIT_";

/// Resolved limits for a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest semilength [`crate::dyck::enumerate_paths`] will accept.
    pub enumeration_cap: usize,
    /// Largest size the permutation generators will accept.
    pub perm_cap: usize,
    /// Series truncation order.
    pub order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            perm_cap: DEFAULT_PERM_CAP,
            order: DEFAULT_ORDER,
        }
    }
}

impl Caps {
    /// Defaults overlaid with any `TUNNELKIT_ENUM_CAP`,
    /// `TUNNELKIT_PERM_CAP`, or `TUNNELKIT_ORDER` environment variables.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = read_env("ENUM_CAP") {
            caps.enumeration_cap = v;
        }
        if let Some(v) = read_env("PERM_CAP") {
            caps.perm_cap = v;
        }
        if let Some(v) = read_env("ORDER") {
            caps.order = v;
        }
        caps
    }
}

fn read_env(name: &str) -> Option<usize> {
    std::env::var(format!("{ENV_PREFIX}{name}"))
        .ok()
        .and_then(|v| v.parse().ok())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let caps = Caps::default();
        assert_eq!(caps.enumeration_cap, 16);
        assert_eq!(caps.perm_cap, 10);
        assert_eq!(caps.order, 8);
    }
}
