use std::env;

/// Resource limits shared by the solver and the cover searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Search nodes before aborting with [`crate::Error::NodeBudget`].
    pub node_budget: u64,
    /// Cap on the sum of list sizes of an enumerated cover.
    pub max_list_sum: usize,
    /// Cap on the number of cross-edge graphs allowed for a single vertex pair.
    pub max_pair_choices: u128,
}

pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000_000;
pub const DEFAULT_MAX_LIST_SUM: usize = 24;
pub const DEFAULT_MAX_PAIR_CHOICES: u128 = 10_000_000;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: DEFAULT_NODE_BUDGET,
            max_list_sum: DEFAULT_MAX_LIST_SUM,
            max_pair_choices: DEFAULT_MAX_PAIR_CHOICES,
        }
    }
}

impl Limits {
    /// Defaults overridden by `DPCOLOR_NODE_BUDGET`, `DPCOLOR_MAX_LIST_SUM`
    /// and `DPCOLOR_MAX_PAIR_CHOICES` when set to positive integers.
    pub fn from_env() -> Self {
        let mut l = Limits::default();
        if let Some(v) = env_positive("DPCOLOR_NODE_BUDGET") {
            l.node_budget = v as u64;
        }
        if let Some(v) = env_positive("DPCOLOR_MAX_LIST_SUM") {
            l.max_list_sum = v as usize;
        }
        if let Some(v) = env_positive("DPCOLOR_MAX_PAIR_CHOICES") {
            l.max_pair_choices = v;
        }
        l
    }
}

pub(crate) fn env_positive(name: &str) -> Option<u128> {
    env::var(name).ok()?.trim().parse::<u128>().ok().filter(|&v| v > 0)
}
