//! Growth-function expressions over a single variable `n`.
//!
//! A [`GrowthExpr`] is an immutable syntax tree. It is produced by [`parse`],
//! by the builder helpers on the type, or by the `std::ops` operator impls,
//! and it renders back to parseable text through `Display`.
//!
//! ```
//! use almost::expr::{parse, GrowthExpr};
//!
//! let e = parse("n^2 * log2(n)").unwrap();
//! assert_eq!(e, GrowthExpr::n().pow(2.0) * GrowthExpr::log2(GrowthExpr::n()));
//! assert_eq!(parse(&e.to_string()).unwrap(), e);
//! ```

mod eval;
mod parse;

use std::fmt;
use std::ops;

pub use eval::{EvalError, Magnitude, Sign};
pub use parse::{parse, ParseError, ParseErrorKind};

/// Abstract syntax tree of a univariate growth function `f(n)`.
///
/// Exponents of [`GrowthExpr::Pow`] and the bases of [`GrowthExpr::Exp`] and
/// [`GrowthExpr::Log`] are numeric literals; exponential and logarithm bases
/// are strictly greater than one.
#[derive(Debug, Clone, PartialEq)]
pub enum GrowthExpr {
    Const(f64),
    Var,
    Add(Box<GrowthExpr>, Box<GrowthExpr>),
    Sub(Box<GrowthExpr>, Box<GrowthExpr>),
    Mul(Box<GrowthExpr>, Box<GrowthExpr>),
    Div(Box<GrowthExpr>, Box<GrowthExpr>),
    Pow(Box<GrowthExpr>, f64),
    /// `base^arg`.
    Exp { base: f64, arg: Box<GrowthExpr> },
    /// Logarithm of `arg` in `base`.
    Log { base: f64, arg: Box<GrowthExpr> },
    Sin(Box<GrowthExpr>),
}

impl GrowthExpr {
    pub fn n() -> Self {
        GrowthExpr::Var
    }

    pub fn constant(value: f64) -> Self {
        GrowthExpr::Const(value)
    }

    pub fn pow(self, exponent: f64) -> Self {
        GrowthExpr::Pow(Box::new(self), exponent)
    }

    /// `base^arg`. Panics if `base <= 1`; use [`parse`] for fallible input.
    pub fn exp_b(base: f64, arg: GrowthExpr) -> Self {
        assert!(base > 1.0, "exponential base must exceed 1, got {base}");
        GrowthExpr::Exp {
            base,
            arg: Box::new(arg),
        }
    }

    /// Logarithm in `base`. Panics if `base <= 1`.
    pub fn log_b(base: f64, arg: GrowthExpr) -> Self {
        assert!(base > 1.0, "logarithm base must exceed 1, got {base}");
        GrowthExpr::Log {
            base,
            arg: Box::new(arg),
        }
    }

    pub fn log2(arg: GrowthExpr) -> Self {
        Self::log_b(2.0, arg)
    }

    pub fn ln(arg: GrowthExpr) -> Self {
        Self::log_b(std::f64::consts::E, arg)
    }

    pub fn sin(arg: GrowthExpr) -> Self {
        GrowthExpr::Sin(Box::new(arg))
    }

    /// True if the tree contains a `Sin` node anywhere.
    pub fn contains_sin(&self) -> bool {
        match self {
            GrowthExpr::Const(_) | GrowthExpr::Var => false,
            GrowthExpr::Sin(_) => true,
            GrowthExpr::Add(a, b)
            | GrowthExpr::Sub(a, b)
            | GrowthExpr::Mul(a, b)
            | GrowthExpr::Div(a, b) => a.contains_sin() || b.contains_sin(),
            GrowthExpr::Pow(a, _) => a.contains_sin(),
            GrowthExpr::Exp { arg, .. } | GrowthExpr::Log { arg, .. } => arg.contains_sin(),
        }
    }

    /// Evaluate at `n` (see [`eval`](self) for the overflow rules).
    pub fn evaluate(&self, n: u64) -> Result<f64, EvalError> {
        eval::evaluate(self, n)
    }

    /// Evaluate at `n` as a signed log-magnitude, which never overflows for
    /// poly-log-exp subtrees.
    pub fn magnitude(&self, n: u64) -> Result<Magnitude, EvalError> {
        eval::magnitude(self, n)
    }

    fn precedence(&self) -> u8 {
        match self {
            GrowthExpr::Add(..) | GrowthExpr::Sub(..) => 1,
            GrowthExpr::Mul(..) | GrowthExpr::Div(..) => 2,
            GrowthExpr::Pow(..) => 3,
            // negative constants render parenthesized, so they are atoms too
            _ => 4,
        }
    }
}

/// Evaluate `f` at `n`. Free-function form of [`GrowthExpr::evaluate`].
pub fn evaluate(f: &GrowthExpr, n: u64) -> Result<f64, EvalError> {
    eval::evaluate(f, n)
}

fn fmt_number(value: f64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if value.is_sign_negative() {
        write!(f, "(-{})", -value)
    } else {
        write!(f, "{value}")
    }
}

fn fmt_child(child: &GrowthExpr, min_prec: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if child.precedence() < min_prec {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for GrowthExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthExpr::Const(c) => fmt_number(*c, f),
            GrowthExpr::Var => f.write_str("n"),
            GrowthExpr::Add(a, b) => {
                fmt_child(a, 1, f)?;
                f.write_str(" + ")?;
                fmt_child(b, 2, f)
            }
            GrowthExpr::Sub(a, b) => {
                fmt_child(a, 1, f)?;
                f.write_str(" - ")?;
                fmt_child(b, 2, f)
            }
            GrowthExpr::Mul(a, b) => {
                fmt_child(a, 2, f)?;
                f.write_str(" * ")?;
                fmt_child(b, 3, f)
            }
            GrowthExpr::Div(a, b) => {
                fmt_child(a, 2, f)?;
                f.write_str(" / ")?;
                fmt_child(b, 3, f)
            }
            GrowthExpr::Pow(a, p) => {
                fmt_child(a, 4, f)?;
                f.write_str("^")?;
                fmt_number(*p, f)
            }
            GrowthExpr::Exp { base, arg } => write!(f, "exp_b({base}, {arg})"),
            GrowthExpr::Log { base, arg } => {
                if *base == 2.0 {
                    write!(f, "log2({arg})")
                } else if *base == 10.0 {
                    write!(f, "log10({arg})")
                } else if *base == std::f64::consts::E {
                    write!(f, "ln({arg})")
                } else {
                    write!(f, "log_b({base}, {arg})")
                }
            }
            GrowthExpr::Sin(arg) => write!(f, "sin({arg})"),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl ops::$trait for GrowthExpr {
            type Output = GrowthExpr;
            fn $method(self, rhs: GrowthExpr) -> GrowthExpr {
                GrowthExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }

        impl ops::$trait<f64> for GrowthExpr {
            type Output = GrowthExpr;
            fn $method(self, rhs: f64) -> GrowthExpr {
                GrowthExpr::$variant(Box::new(self), Box::new(GrowthExpr::Const(rhs)))
            }
        }

        impl ops::$trait<GrowthExpr> for f64 {
            type Output = GrowthExpr;
            fn $method(self, rhs: GrowthExpr) -> GrowthExpr {
                GrowthExpr::$variant(Box::new(GrowthExpr::Const(self)), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_with_minimal_parentheses() {
        let n = GrowthExpr::n;
        assert_eq!((n() - (n() + 1.0)).to_string(), "n - (n + 1)");
        assert_eq!(((n() - n()) + 1.0).to_string(), "n - n + 1");
        assert_eq!((n() / (n() * 2.0)).to_string(), "n / (n * 2)");
        assert_eq!((n() + 1.0).pow(2.0).to_string(), "(n + 1)^2");
        assert_eq!(n().pow(-0.5).to_string(), "n^(-0.5)");
        assert_eq!(GrowthExpr::Const(-3.0).pow(2.0).to_string(), "(-3)^2");
        assert_eq!(
            GrowthExpr::exp_b(2.0, n()).to_string(),
            "exp_b(2, n)"
        );
        assert_eq!(GrowthExpr::log_b(3.0, n()).to_string(), "log_b(3, n)");
        assert_eq!(GrowthExpr::ln(n()).to_string(), "ln(n)");
    }

    #[test]
    fn contains_sin_looks_through_every_node() {
        assert!(parse("log2(1 + sin(n))").unwrap().contains_sin());
        assert!(!parse("n^2 * log2(n)").unwrap().contains_sin());
    }

    #[test]
    #[should_panic]
    fn builder_rejects_unit_log_base() {
        let _ = GrowthExpr::log_b(1.0, GrowthExpr::n());
    }
}
