//! Resource limits shared by group enumeration and order construction.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_BUDGET: usize = 10_000_000;

/// Environment variable overriding [`DEFAULT_ELEMENT_BUDGET`].
pub const ELEMENT_BUDGET_ENV: &str = "RSPERNER_ELEMENT_BUDGET";
/// Environment variable holding a wall-clock limit in seconds.
pub const TIME_BUDGET_ENV: &str = "RSPERNER_TIME_BUDGET";

#[derive(Debug, Clone)]
pub struct Budget {
    pub max_elements: usize,
    deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_elements: DEFAULT_ELEMENT_BUDGET,
            deadline: None,
        }
    }
}

impl Budget {
    pub fn new(max_elements: usize) -> Self {
        Self {
            max_elements,
            deadline: None,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    /// Reads both budgets from the environment, falling back to the defaults.
    pub fn from_env() -> Result<Self> {
        let mut budget = Self::default();
        if let Ok(v) = std::env::var(ELEMENT_BUDGET_ENV) {
            budget.max_elements = v.trim().parse().map_err(|_| {
                Error::Parameter(format!("{ELEMENT_BUDGET_ENV}={v:?} is not an integer"))
            })?;
        }
        if let Ok(v) = std::env::var(TIME_BUDGET_ENV) {
            let secs: f64 = v.trim().parse().map_err(|_| {
                Error::Parameter(format!("{TIME_BUDGET_ENV}={v:?} is not a number of seconds"))
            })?;
            budget = budget.with_time_limit(Duration::from_secs_f64(secs));
        }
        Ok(budget)
    }

    pub fn check_elements(&self, what: &str, count: u128) -> Result<()> {
        if count > self.max_elements as u128 {
            return Err(Error::Resource(format!(
                "{what} needs {count} elements, element budget is {}",
                self.max_elements
            )));
        }
        Ok(())
    }

    pub fn check_time(&self, what: &str) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => {
                Err(Error::Resource(format!("time budget exhausted during {what}")))
            }
            _ => Ok(()),
        }
    }
}
