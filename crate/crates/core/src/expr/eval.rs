//! Point evaluation.
//!
//! Two evaluators share one tree walk shape. The direct evaluator uses plain
//! `f64` arithmetic and is what [`evaluate`] returns whenever its result is
//! finite. The magnitude evaluator carries every value as a sign plus
//! `ln |x|`, so products, powers and constant-base exponentials stay
//! representable far beyond `f64::MAX`; [`evaluate`] falls back to it when the
//! direct result overflows, saturating to `±inf` only at the root.

use super::GrowthExpr;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("division by zero at n = {n}")]
    DivisionByZero { n: u64 },
    #[error("logarithm of a non-positive value at n = {n}")]
    LogOfNonPositive { n: u64 },
    #[error("non-integer power of a negative value at n = {n}")]
    NegativeBase { n: u64 },
    #[error("expression is undefined (NaN) at n = {n}")]
    NotANumber { n: u64 },
    #[error("expression must be evaluated at n >= 1")]
    NonPositiveN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// A real number stored as `sign * exp(ln_abs)`.
///
/// `ln_abs` is meaningless when `sign` is [`Sign::Zero`] and is kept at
/// `-inf` in that case. `ln_abs = +inf` encodes an overflow even in the log
/// domain (for example an exponential of an exponential).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magnitude {
    pub sign: Sign,
    pub ln_abs: f64,
}

impl Magnitude {
    pub const ZERO: Magnitude = Magnitude {
        sign: Sign::Zero,
        ln_abs: f64::NEG_INFINITY,
    };

    pub fn from_f64(x: f64) -> Magnitude {
        if x == 0.0 {
            Magnitude::ZERO
        } else {
            Magnitude {
                sign: if x > 0.0 { Sign::Positive } else { Sign::Negative },
                ln_abs: x.abs().ln(),
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    /// Convert back, saturating to `±inf`.
    pub fn to_f64(self) -> f64 {
        match self.sign {
            Sign::Zero => 0.0,
            Sign::Positive => self.ln_abs.exp(),
            Sign::Negative => -self.ln_abs.exp(),
        }
    }

    pub fn negated(self) -> Magnitude {
        Magnitude {
            sign: self.sign.flip(),
            ..self
        }
    }

    pub fn plus(self, other: Magnitude) -> Magnitude {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.ln_abs >= other.ln_abs {
            (self, other)
        } else {
            (other, self)
        };
        if big.ln_abs == f64::INFINITY {
            if small.ln_abs == f64::INFINITY && small.sign != big.sign {
                // inf - inf
                return Magnitude {
                    sign: big.sign,
                    ln_abs: f64::NAN,
                };
            }
            return big;
        }
        let d = (small.ln_abs - big.ln_abs).exp();
        if big.sign == small.sign {
            Magnitude {
                sign: big.sign,
                ln_abs: big.ln_abs + d.ln_1p(),
            }
        } else if d == 1.0 {
            Magnitude::ZERO
        } else {
            Magnitude {
                sign: big.sign,
                ln_abs: big.ln_abs + (-d).ln_1p(),
            }
        }
    }

    pub fn times(self, other: Magnitude) -> Magnitude {
        let sign = self.sign.times(other.sign);
        if sign == Sign::Zero {
            return Magnitude::ZERO;
        }
        Magnitude {
            sign,
            ln_abs: self.ln_abs + other.ln_abs,
        }
    }

    pub fn recip(self) -> Magnitude {
        Magnitude {
            sign: self.sign,
            ln_abs: -self.ln_abs,
        }
    }
}

fn is_integer(x: f64) -> bool {
    x.is_finite() && x.fract() == 0.0
}

fn direct(e: &GrowthExpr, n: u64) -> Result<f64, EvalError> {
    Ok(match e {
        GrowthExpr::Const(c) => *c,
        GrowthExpr::Var => n as f64,
        GrowthExpr::Add(a, b) => direct(a, n)? + direct(b, n)?,
        GrowthExpr::Sub(a, b) => direct(a, n)? - direct(b, n)?,
        GrowthExpr::Mul(a, b) => direct(a, n)? * direct(b, n)?,
        GrowthExpr::Div(a, b) => {
            let den = direct(b, n)?;
            if den == 0.0 {
                return Err(EvalError::DivisionByZero { n });
            }
            direct(a, n)? / den
        }
        GrowthExpr::Pow(a, p) => {
            let base = direct(a, n)?;
            if base < 0.0 && !is_integer(*p) {
                return Err(EvalError::NegativeBase { n });
            }
            if base == 0.0 && *p < 0.0 {
                return Err(EvalError::DivisionByZero { n });
            }
            base.powf(*p)
        }
        GrowthExpr::Exp { base, arg } => base.powf(direct(arg, n)?),
        GrowthExpr::Log { base, arg } => {
            let x = direct(arg, n)?;
            if x <= 0.0 {
                return Err(EvalError::LogOfNonPositive { n });
            }
            x.ln() / base.ln()
        }
        GrowthExpr::Sin(arg) => direct(arg, n)?.sin(),
    })
}

/// Plain value of a subtree, exact where `f64` allows, for arguments of
/// `sin` and `exp_b`.
fn scalar(e: &GrowthExpr, n: u64) -> Result<f64, EvalError> {
    let x = direct(e, n)?;
    if x.is_finite() {
        Ok(x)
    } else {
        Ok(log_domain(e, n)?.to_f64())
    }
}

fn log_domain(e: &GrowthExpr, n: u64) -> Result<Magnitude, EvalError> {
    Ok(match e {
        GrowthExpr::Const(c) => Magnitude::from_f64(*c),
        GrowthExpr::Var => Magnitude::from_f64(n as f64),
        GrowthExpr::Add(a, b) => log_domain(a, n)?.plus(log_domain(b, n)?),
        GrowthExpr::Sub(a, b) => log_domain(a, n)?.plus(log_domain(b, n)?.negated()),
        GrowthExpr::Mul(a, b) => log_domain(a, n)?.times(log_domain(b, n)?),
        GrowthExpr::Div(a, b) => {
            let den = log_domain(b, n)?;
            if den.is_zero() {
                return Err(EvalError::DivisionByZero { n });
            }
            log_domain(a, n)?.times(den.recip())
        }
        GrowthExpr::Pow(a, p) => {
            let base = log_domain(a, n)?;
            match base.sign {
                Sign::Zero if *p < 0.0 => return Err(EvalError::DivisionByZero { n }),
                Sign::Zero if *p == 0.0 => Magnitude::from_f64(1.0),
                Sign::Zero => Magnitude::ZERO,
                Sign::Negative if !is_integer(*p) => return Err(EvalError::NegativeBase { n }),
                Sign::Negative => Magnitude {
                    sign: if p.rem_euclid(2.0) == 0.0 {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    },
                    ln_abs: base.ln_abs * p,
                },
                Sign::Positive => Magnitude {
                    sign: Sign::Positive,
                    ln_abs: if *p == 0.0 { 0.0 } else { base.ln_abs * p },
                },
            }
        }
        GrowthExpr::Exp { base, arg } => {
            let x = scalar(arg, n)?;
            if x == f64::NEG_INFINITY {
                Magnitude::ZERO
            } else {
                Magnitude {
                    sign: Sign::Positive,
                    ln_abs: x * base.ln(),
                }
            }
        }
        GrowthExpr::Log { base, arg } => {
            let x = log_domain(arg, n)?;
            if x.sign != Sign::Positive {
                return Err(EvalError::LogOfNonPositive { n });
            }
            Magnitude::from_f64(x.ln_abs / base.ln())
        }
        GrowthExpr::Sin(arg) => Magnitude::from_f64(scalar(arg, n)?.sin()),
    })
}

pub(super) fn magnitude(e: &GrowthExpr, n: u64) -> Result<Magnitude, EvalError> {
    if n == 0 {
        return Err(EvalError::NonPositiveN);
    }
    let m = log_domain(e, n)?;
    if m.ln_abs.is_nan() {
        return Err(EvalError::NotANumber { n });
    }
    Ok(m)
}

pub(super) fn evaluate(e: &GrowthExpr, n: u64) -> Result<f64, EvalError> {
    if n == 0 {
        return Err(EvalError::NonPositiveN);
    }
    let x = direct(e, n)?;
    if x.is_finite() {
        return Ok(x);
    }
    let v = magnitude(e, n)?.to_f64();
    if v.is_nan() {
        return Err(EvalError::NotANumber { n });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn eval(text: &str, n: u64) -> Result<f64, EvalError> {
        parse(text).unwrap().evaluate(n)
    }

    #[test]
    fn direct_arithmetic() {
        assert_eq!(eval("n^2", 10).unwrap(), 100.0);
        assert_eq!(eval("n*log2(n)", 8).unwrap(), 24.0);
        assert_eq!(eval("(n+1)*(n-1)", 5).unwrap(), 24.0);
    }

    #[test]
    fn oscillation_stays_in_band() {
        let f = parse("2 - sin(n)").unwrap();
        for n in 1..2000 {
            let v = f.evaluate(n).unwrap();
            assert!((1.0..=3.0).contains(&v), "f({n}) = {v}");
        }
    }

    #[test]
    fn overflow_recovers_ratio_through_log_domain() {
        // each side overflows f64 on its own
        let v = eval("exp_b(2, n) / exp_b(2, n - 1)", 5000).unwrap();
        assert!((v - 2.0).abs() < 1e-9, "{v}");
        assert_eq!(eval("exp_b(2, n)", 5000).unwrap(), f64::INFINITY);
        assert_eq!(eval("0 - exp_b(2, n)", 5000).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn magnitude_of_huge_products() {
        let m = parse("exp_b(3, n) * n^2").unwrap().magnitude(1 << 40).unwrap();
        let n = (1u64 << 40) as f64;
        let expected = n * 3f64.ln() + 2.0 * n.ln();
        assert_eq!(m.sign, Sign::Positive);
        assert!((m.ln_abs - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn magnitude_agrees_with_direct_on_small_values() {
        for text in ["n^3 - 7*n + 2", "(n - 4)^3", "2 - sin(n)", "n / (n + 3) - 0.5", "log10(n) * n^1.5"] {
            let e = parse(text).unwrap();
            for n in 1..60 {
                let d = e.evaluate(n).unwrap();
                let m = e.magnitude(n).unwrap().to_f64();
                assert!((d - m).abs() <= 1e-12 * d.abs().max(1.0), "{text} at {n}: {d} vs {m}");
            }
        }
    }

    #[test]
    fn evaluation_errors() {
        assert_eq!(
            eval("1 / (n - 3)", 3),
            Err(EvalError::DivisionByZero { n: 3 })
        );
        assert_eq!(
            eval("log2(n - 5)", 2),
            Err(EvalError::LogOfNonPositive { n: 2 })
        );
        assert_eq!(
            eval("(n - 5)^0.5", 2),
            Err(EvalError::NegativeBase { n: 2 })
        );
        assert_eq!(eval("n", 0), Err(EvalError::NonPositiveN));
        // inf - inf has no value in either domain
        assert_eq!(
            eval("exp_b(2, exp_b(2, n)) - exp_b(3, exp_b(2, n))", 2000),
            Err(EvalError::NotANumber { n: 2000 })
        );
    }

    #[test]
    fn negative_intermediates_are_allowed() {
        assert_eq!(eval("n - 10", 3).unwrap(), -7.0);
        assert_eq!(eval("(n - 10)^3", 3).unwrap(), -343.0);
        let m = parse("(n - 10)^3").unwrap().magnitude(3).unwrap();
        assert_eq!(m.sign, Sign::Negative);
    }
}
