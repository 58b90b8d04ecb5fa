//! Exact multivariate polynomial arithmetic over the rationals.
//!
//! Everything downstream (orders, centers, charts) consumes the types here:
//! [`Ring`] fixes a variable list and an optional jet truncation, [`Poly`] is
//! a sparse polynomial with `BigRational` coefficients, and [`PolyMap`] is a
//! ring homomorphism given by variable images.
//!
//! No floating point is used anywhere: valuations and orders are discrete and
//! any rounding would corrupt them.

pub mod parser;
pub mod poly;
pub mod polymap;

pub use poly::{Mono, OrdVal, Poly};
pub use polymap::PolyMap;

use crate::error::{Error, Result};
use num::BigRational;
use std::fmt;
use std::sync::Arc;

/// Exact rational scalar used for every coefficient in the crate.
pub type Rat = BigRational;

/// Parse a rational from `p` or `p/q` text.
pub fn rat_from_str(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<num::BigInt> {
        t.trim()
            .parse::<num::BigInt>()
            .map_err(|_| Error::Input(format!("invalid rational `{s}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let den = parse_int(q)?;
            if den == num::BigInt::from(0) {
                return Err(Error::Input(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(p)?, den))
        }
    }
}

/// Render a rational as `p` or `p/q` (reduced, denominator positive).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &num::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A polynomial ring over the rationals with a fixed, ordered variable list.
///
/// `truncation = Some(n)` makes this a jet ring: every operation discards
/// terms of total degree above `n` and the affected polynomials record the
/// degree up to which they are still trustworthy (see [`Poly::prec`]).
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    vars: Vec<String>,
    truncation: Option<u32>,
}

impl Ring {
    /// Exact ring with the given variable names (validated, order preserved).
    pub fn new(vars: &[&str]) -> Result<Arc<Ring>> {
        Self::with_truncation(vars.iter().map(|s| s.to_string()).collect(), None)
    }

    /// Ring with an explicit jet truncation bound.
    pub fn with_truncation(vars: Vec<String>, truncation: Option<u32>) -> Result<Arc<Ring>> {
        if vars.is_empty() {
            return Err(Error::Input("ring needs at least one variable".into()));
        }
        for v in &vars {
            if !is_valid_var_name(v) {
                return Err(Error::Input(format!("invalid variable name `{v}`")));
            }
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars, truncation }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    pub fn is_jet(&self) -> bool {
        self.truncation.is_some()
    }

    /// Same variables, jet truncation set to `n`.
    pub fn jet(&self, n: u32) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            truncation: Some(n),
        })
    }

    /// Same variables, exact (no truncation).
    pub fn exact(&self) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            truncation: None,
        })
    }

    /// Ring with variable `i` removed; used when restricting to a
    /// coordinate hyperplane.
    pub fn removing(&self, i: usize) -> Result<Arc<Ring>> {
        if self.vars.len() == 1 {
            return Err(Error::Unsupported(
                "cannot remove the last ring variable".into(),
            ));
        }
        let mut vars = self.vars.clone();
        vars.remove(i);
        Ok(Arc::new(Ring {
            vars,
            truncation: self.truncation,
        }))
    }

    /// Ring with the given names (used by blowup charts to rename
    /// coordinates while keeping positions).
    pub fn renamed(&self, names: Vec<String>) -> Result<Arc<Ring>> {
        Self::with_truncation(names, self.truncation)
    }

    /// Ring with one extra variable `name` prepended (re-embedding).
    pub fn prepending(&self, name: &str) -> Result<Arc<Ring>> {
        let mut vars = vec![name.to_string()];
        vars.extend(self.vars.iter().cloned());
        Self::with_truncation(vars, self.truncation)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.vars.join(","))?;
        if let Some(n) = self.truncation {
            write!(f, " mod degree {}", n + 1)?;
        }
        Ok(())
    }
}

/// Identifier grammar: `[a-zA-Z_][a-zA-Z0-9_']*`.
pub fn is_valid_var_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Two rings are compatible when they agree on variables and truncation.
pub fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}
