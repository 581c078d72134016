use std::collections::BTreeSet;
use std::path::PathBuf;
use std::str::FromStr;

use curlcurl_core::MassQuadrature;

use crate::error::{CliError, Result};

/// Output groups the driver can produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Emit {
    Table1,
    Fig2,
    Fig3,
    Matrices,
}

impl FromStr for Emit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "table1" => Ok(Emit::Table1),
            "fig2" => Ok(Emit::Fig2),
            "fig3" => Ok(Emit::Fig3),
            "matrices" => Ok(Emit::Matrices),
            other => Err(format!(
                "unknown output '{other}' (expected table1, fig2, fig3 or matrices)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub max_degree: usize,
    /// Gauss points beyond `N` used for error norms and boundary data.
    pub quadrature_boost: usize,
    pub output_dir: PathBuf,
    pub emit: BTreeSet<Emit>,
    /// Points per direction of the interior comparison grid.
    pub grid_size: usize,
    pub mass_quadrature: MassQuadrature,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            max_degree: 9,
            quadrature_boost: 15,
            output_dir: PathBuf::from("out"),
            emit: [Emit::Table1, Emit::Fig2, Emit::Fig3].into_iter().collect(),
            grid_size: 30,
            mass_quadrature: MassQuadrature::Lobatto,
        }
    }
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_degree < 1 {
            return Err(CliError::InvalidConfig("max degree must be at least 1".into()));
        }
        if self.grid_size < 2 {
            return Err(CliError::InvalidConfig("grid size must be at least 2".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_emit() {
        assert_eq!("fig3".parse::<Emit>(), Ok(Emit::Fig3));
        assert_eq!(" matrices".parse::<Emit>(), Ok(Emit::Matrices));
        assert!("fig4".parse::<Emit>().is_err());
    }

    #[test]
    fn validation() {
        assert!(StudyConfig::default().validate().is_ok());
        let bad = StudyConfig { max_degree: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = StudyConfig { grid_size: 1, ..Default::default() };
        assert!(bad.validate().is_err());
    }
}
