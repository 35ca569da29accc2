//! Ordered variable contexts.

use std::fmt;
use std::sync::Arc;

/// An ordered list of variable names, optionally with one of them
/// distinguished as the deformation parameter.
///
/// The order is fixed for the lifetime of every value built over the
/// context; the prefix `(x_1, ..., x_i)` of the list is what towers and
/// pseudopolynomials refer to as the first `i` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarContext {
    vars: Vec<String>,
    param: Option<usize>,
}

/// Shared handle; values over a context clone this cheaply.
pub type Ctx = Arc<VarContext>;

impl VarContext {
    pub fn new(vars: Vec<String>, param: Option<usize>) -> crate::error::Result<Ctx> {
        if vars.is_empty() {
            return Err(crate::Error::Invalid("context needs at least one variable".into()));
        }
        let mut seen = vars.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != vars.len() {
            return Err(crate::Error::Invalid("duplicate variable name".into()));
        }
        if let Some(p) = param {
            if p >= vars.len() {
                return Err(crate::Error::Invalid("parameter index out of range".into()));
            }
        }
        Ok(Arc::new(VarContext { vars, param }))
    }

    /// Context with variables named `x1..xn`, no parameter.
    pub fn xs(n: usize) -> Ctx {
        let vars = (1..=n).map(|i| format!("x{i}")).collect();
        VarContext::new(vars, None).expect("nonempty")
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, idx: usize) -> &str {
        &self.vars[idx]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn param(&self) -> Option<usize> {
        self.param
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.vars.join(", "))?;
        if let Some(p) = self.param {
            write!(f, " param {}", self.vars[p])?;
        }
        Ok(())
    }
}

/// True when two handles denote the same context (fast pointer check first).
pub fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
