use gassmann_core::obstruction::Limits;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

/// Limits, worker count and output mode for one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub limits: Limits,
    pub workers: Option<usize>,
    pub output: OutputMode,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let l = &self.limits;
        if l.max_cosets == 0
            || l.max_group_order == 0
            || l.max_subgroup_enum_order == 0
            || l.max_hom_index == 0
            || l.hom_node_budget == 0
            || self.workers == Some(0)
        {
            return Err(CliError::Input("limits and worker count must be positive".into()));
        }
        Ok(())
    }
}
