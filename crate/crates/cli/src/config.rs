use std::path::Path;

use rfgrowth_core::Budgets;
use serde::Deserialize;

use crate::output::Format;
use crate::CliError;

/// Settings read from a TOML file. Every key is optional; command-line
/// flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub class: Option<String>,
    pub limit: Option<u64>,
    pub radius: Option<usize>,
    pub kmax: Option<usize>,
    pub jmax: Option<usize>,
    #[serde(default)]
    pub budgets: BudgetFile,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetFile {
    pub ball: Option<u64>,
    pub scan: Option<u64>,
    pub order_cap: Option<u64>,
    pub homs: Option<u64>,
    pub table: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Budget flags, each overriding the file and then the defaults.
#[derive(Debug, Default, Clone, clap::Args)]
pub struct BudgetArgs {
    /// Maximum candidate words in a ball enumeration.
    #[arg(long, global = true)]
    pub ball_budget: Option<u64>,
    /// Maximum group order for exhaustive element scans.
    #[arg(long, global = true)]
    pub scan_budget: Option<u64>,
    /// Maximum generator-image tuples per target group.
    #[arg(long, global = true)]
    pub hom_budget: Option<u64>,
    /// Largest group order that gets a multiplication table.
    #[arg(long, global = true)]
    pub table_budget: Option<u64>,
    /// Cap on repeated multiplication when computing element orders.
    #[arg(long, global = true)]
    pub order_cap: Option<u64>,
}

impl BudgetArgs {
    pub fn resolve(&self, file: &BudgetFile) -> Result<Budgets, CliError> {
        let d = Budgets::default();
        let b = Budgets {
            ball: self.ball_budget.or(file.ball).unwrap_or(d.ball),
            scan: self.scan_budget.or(file.scan).unwrap_or(d.scan),
            order_cap: self.order_cap.or(file.order_cap).unwrap_or(d.order_cap),
            homs: self.hom_budget.or(file.homs).unwrap_or(d.homs),
            table: self.table_budget.or(file.table).unwrap_or(d.table),
        };
        if [b.ball, b.scan, b.order_cap, b.homs, b.table].contains(&0) {
            return Err(CliError::Config("budgets must be positive".into()));
        }
        Ok(b)
    }
}
