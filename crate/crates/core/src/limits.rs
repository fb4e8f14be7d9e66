//! Process-wide size caps. Every enumeration checks against these before
//! allocating.

use std::sync::RwLock;

use crate::error::{Error, Result};

/// Hard upper bound on the number of polynomial variables.
pub const MAX_VARS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_vars: usize,
    pub max_lambda_length: usize,
    pub max_lambda_weight: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 70,
            max_vars: 5,
            max_lambda_length: 7,
            max_lambda_weight: 70,
        }
    }
}

static LIMITS: RwLock<Limits> = RwLock::new(Limits {
    max_degree: 70,
    max_vars: 5,
    max_lambda_length: 7,
    max_lambda_weight: 70,
});

pub fn limits() -> Limits {
    *LIMITS.read().expect("limits lock poisoned")
}

pub fn set_limits(l: Limits) -> Result<()> {
    if l.max_vars > MAX_VARS {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_VARS} variables are supported"
        )));
    }
    *LIMITS.write().expect("limits lock poisoned") = l;
    Ok(())
}

pub(crate) fn check_degree(d: u32) -> Result<()> {
    let cap = limits().max_degree;
    if d > cap {
        return Err(Error::CapExceeded {
            what: "degree",
            value: d as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}

pub(crate) fn check_vars(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one variable".into()));
    }
    let cap = limits().max_vars;
    if k > cap {
        return Err(Error::CapExceeded {
            what: "variables",
            value: k as u64,
            cap: cap as u64,
        });
    }
    Ok(())
}

pub(crate) fn check_lambda(s: usize, w: u32) -> Result<()> {
    let l = limits();
    if s > l.max_lambda_length {
        return Err(Error::CapExceeded {
            what: "lambda length",
            value: s as u64,
            cap: l.max_lambda_length as u64,
        });
    }
    if w > l.max_lambda_weight {
        return Err(Error::CapExceeded {
            what: "lambda weight",
            value: w as u64,
            cap: l.max_lambda_weight as u64,
        });
    }
    Ok(())
}
