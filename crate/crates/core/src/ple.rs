//! Poly-log-exp normal form.
//!
//! A growth function in this family is a finite sum of terms
//! `c * b^n * n^p * (ln n)^q` with `b >= 1`, real `p` and integer `q >= 0`.
//! Terms are ordered by their [`DominanceKey`] `(b, p, q)`: for two terms the
//! one with the lexicographically larger key eventually dominates, which is
//! what makes ratio limits between normal forms exact.
//!
//! Logarithms of any base fold into the natural-log power with a constant
//! coefficient, so `log2(n)` normalizes to `(1/ln 2) * (ln n)^1`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::expr::{GrowthExpr, Magnitude};

/// Expansion size limits; larger inputs are left to the numeric path.
const MAX_TERMS: usize = 512;
const MAX_INTEGER_POWER: f64 = 64.0;
/// Relative size below which a merged coefficient counts as cancelled.
const CANCEL_TOL: f64 = 1e-12;

/// Growth ordering key of a single term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceKey {
    pub exp_base: f64,
    pub poly_degree: f64,
    pub log_degree: u32,
}

impl DominanceKey {
    pub const CONSTANT: DominanceKey = DominanceKey {
        exp_base: 1.0,
        poly_degree: 0.0,
        log_degree: 0,
    };

    fn times(self, other: DominanceKey) -> DominanceKey {
        DominanceKey {
            exp_base: snap(self.exp_base * other.exp_base),
            poly_degree: snap(self.poly_degree + other.poly_degree),
            log_degree: self.log_degree + other.log_degree,
        }
    }
}

impl Eq for DominanceKey {}

impl PartialOrd for DominanceKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DominanceKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exp_base
            .total_cmp(&other.exp_base)
            .then(self.poly_degree.total_cmp(&other.poly_degree))
            .then(self.log_degree.cmp(&other.log_degree))
    }
}

/// Round away float noise from key arithmetic (`0.1 + 0.2`, `1.1 * 1.1`) so
/// that like terms still merge.
fn snap(x: f64) -> f64 {
    let r = (x * 1e9).round() / 1e9;
    if (x - r).abs() <= 1e-12 * x.abs().max(1.0) {
        r
    } else {
        x
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PleTerm {
    pub coefficient: f64,
    pub key: DominanceKey,
}

impl PleTerm {
    /// Signed log-magnitude of the term at `n`.
    pub fn magnitude(&self, n: u64) -> Magnitude {
        let ln_n = (n as f64).ln();
        let mut ln_abs = self.coefficient.abs().ln();
        if self.key.exp_base != 1.0 {
            ln_abs += n as f64 * self.key.exp_base.ln();
        }
        if self.key.poly_degree != 0.0 {
            ln_abs += self.key.poly_degree * ln_n;
        }
        if self.key.log_degree > 0 {
            if ln_n == 0.0 {
                return Magnitude::ZERO;
            }
            ln_abs += self.key.log_degree as f64 * ln_n.ln();
        }
        let m = Magnitude::from_f64(self.coefficient.signum());
        Magnitude { ln_abs, ..m }
    }
}

/// Non-empty list of terms with pairwise distinct keys, sorted by descending
/// dominance.
#[derive(Debug, Clone, PartialEq)]
pub struct PleNormalForm {
    terms: Vec<PleTerm>,
}

impl PleNormalForm {
    pub fn terms(&self) -> &[PleTerm] {
        &self.terms
    }

    /// The eventually dominant term.
    pub fn leading(&self) -> &PleTerm {
        &self.terms[0]
    }

    /// `(coefficient, exp_base, poly_degree, log_degree)` per term.
    pub fn to_tuples(&self) -> Vec<(f64, f64, f64, u32)> {
        self.terms
            .iter()
            .map(|t| {
                (
                    t.coefficient,
                    t.key.exp_base,
                    t.key.poly_degree,
                    t.key.log_degree,
                )
            })
            .collect()
    }

    pub fn magnitude(&self, n: u64) -> Magnitude {
        self.terms
            .iter()
            .fold(Magnitude::ZERO, |acc, t| acc.plus(t.magnitude(n)))
    }

    /// Value of the normal form at `n`, saturating to `±inf`.
    pub fn evaluate(&self, n: u64) -> f64 {
        self.magnitude(n).to_f64()
    }

    fn from_sum(sum: Sum) -> Option<PleNormalForm> {
        let mut terms: Vec<PleTerm> = sum
            .0
            .into_iter()
            .map(|(key, coefficient)| PleTerm { coefficient, key })
            .collect();
        if terms.is_empty() || terms.iter().any(|t| !t.coefficient.is_finite()) {
            return None;
        }
        terms.reverse();
        Some(PleNormalForm { terms })
    }
}

/// Free-function form of [`PleNormalForm::evaluate`].
pub fn evaluate_normal_form(form: &PleNormalForm, n: u64) -> f64 {
    form.evaluate(n)
}

impl fmt::Display for PleNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            let c = if i == 0 {
                t.coefficient
            } else {
                f.write_str(if t.coefficient < 0.0 { " - " } else { " + " })?;
                t.coefficient.abs()
            };
            let mut factors = Vec::new();
            if t.key.exp_base != 1.0 {
                factors.push(format!("{}^n", t.key.exp_base));
            }
            match t.key.poly_degree {
                0.0 => {}
                1.0 => factors.push("n".to_string()),
                p => factors.push(format!("n^{p}")),
            }
            match t.key.log_degree {
                0 => {}
                1 => factors.push("ln(n)".to_string()),
                q => factors.push(format!("ln(n)^{q}")),
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else {
                if c != 1.0 {
                    write!(f, "{c}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Working representation: merged coefficients keyed by dominance.
#[derive(Debug, Clone, Default)]
struct Sum(BTreeMap<DominanceKey, f64>);

impl Sum {
    fn single(coefficient: f64, key: DominanceKey) -> Sum {
        let mut s = Sum::default();
        s.insert(key, coefficient);
        s
    }

    fn constant(c: f64) -> Sum {
        Sum::single(c, DominanceKey::CONSTANT)
    }

    fn insert(&mut self, key: DominanceKey, c: f64) {
        if c == 0.0 {
            return;
        }
        match self.0.get(&key).copied() {
            None => {
                self.0.insert(key, c);
            }
            Some(prev) => {
                let merged = prev + c;
                if merged.abs() <= CANCEL_TOL * prev.abs().max(c.abs()) {
                    self.0.remove(&key);
                } else {
                    self.0.insert(key, merged);
                }
            }
        }
    }

    fn plus(mut self, other: Sum) -> Sum {
        for (k, c) in other.0 {
            self.insert(k, c);
        }
        self
    }

    fn scaled(self, factor: f64) -> Sum {
        let mut out = Sum::default();
        for (k, c) in self.0 {
            out.insert(k, c * factor);
        }
        out
    }

    fn times(&self, other: &Sum) -> Option<Sum> {
        if self.0.len() * other.0.len() > MAX_TERMS * 4 {
            return None;
        }
        let mut out = Sum::default();
        for (ka, ca) in &self.0 {
            for (kb, cb) in &other.0 {
                out.insert(ka.times(*kb), ca * cb);
            }
        }
        (out.0.len() <= MAX_TERMS).then_some(out)
    }

    /// The single term, if there is exactly one.
    fn monomial(&self) -> Option<(DominanceKey, f64)> {
        if self.0.len() == 1 {
            self.0.iter().next().map(|(k, c)| (*k, *c))
        } else {
            None
        }
    }

    fn as_constant(&self) -> Option<f64> {
        if self.0.is_empty() {
            return Some(0.0);
        }
        match self.monomial() {
            Some((k, c)) if k == DominanceKey::CONSTANT => Some(c),
            _ => None,
        }
    }

    fn powi(&self, p: f64) -> Option<Sum> {
        // p is a non-negative integer here
        let mut acc = Sum::constant(1.0);
        for _ in 0..(p as u32) {
            acc = acc.times(self)?;
        }
        Some(acc)
    }
}

fn is_integer(x: f64) -> bool {
    x.is_finite() && x.fract() == 0.0
}

fn power(base: &Sum, p: f64) -> Option<Sum> {
    if p == 0.0 {
        return Some(Sum::constant(1.0));
    }
    if let Some((key, c)) = base.monomial() {
        if c < 0.0 && !is_integer(p) {
            return None;
        }
        let log_degree = key.log_degree as f64 * p;
        if !is_integer(log_degree) || log_degree < 0.0 {
            return None;
        }
        let exp_base = snap(key.exp_base.powf(p));
        if exp_base < 1.0 {
            return None;
        }
        let key = DominanceKey {
            exp_base,
            poly_degree: snap(key.poly_degree * p),
            log_degree: log_degree as u32,
        };
        return Some(Sum::single(c.powf(p), key));
    }
    if is_integer(p) && p > 0.0 && p <= MAX_INTEGER_POWER {
        base.powi(p)
    } else {
        None
    }
}

fn normalize(e: &GrowthExpr) -> Option<Sum> {
    Some(match e {
        GrowthExpr::Const(c) => Sum::constant(*c),
        GrowthExpr::Var => Sum::single(
            1.0,
            DominanceKey {
                poly_degree: 1.0,
                ..DominanceKey::CONSTANT
            },
        ),
        GrowthExpr::Add(a, b) => normalize(a)?.plus(normalize(b)?),
        GrowthExpr::Sub(a, b) => normalize(a)?.plus(normalize(b)?.scaled(-1.0)),
        GrowthExpr::Mul(a, b) => normalize(a)?.times(&normalize(b)?)?,
        GrowthExpr::Div(a, b) => {
            let d = normalize(b)?.as_constant()?;
            if d == 0.0 {
                return None;
            }
            normalize(a)?.scaled(1.0 / d)
        }
        GrowthExpr::Pow(a, p) => power(&normalize(a)?, *p)?,
        GrowthExpr::Exp { base, arg } => {
            // base^(slope*n + offset) = base^offset * (base^slope)^n
            let arg = normalize(arg)?;
            let mut slope = 0.0;
            let mut offset = 0.0;
            for (k, c) in &arg.0 {
                match (k.exp_base, k.poly_degree, k.log_degree) {
                    (b, p, 0) if b == 1.0 && p == 0.0 => offset = *c,
                    (b, p, 0) if b == 1.0 && p == 1.0 => slope = *c,
                    _ => return None,
                }
            }
            let exp_base = snap(base.powf(slope));
            if exp_base < 1.0 || !exp_base.is_finite() {
                return None;
            }
            Sum::single(
                base.powf(offset),
                DominanceKey {
                    exp_base,
                    ..DominanceKey::CONSTANT
                },
            )
        }
        GrowthExpr::Log { base, arg } => {
            // ln(c * b^n * n^p) = ln c + n ln b + p ln n
            let (key, c) = normalize(arg)?.monomial()?;
            if c <= 0.0 || key.log_degree != 0 {
                return None;
            }
            let ln_base = base.ln();
            let mut out = Sum::constant(c.ln() / ln_base);
            out.insert(
                DominanceKey {
                    poly_degree: 1.0,
                    ..DominanceKey::CONSTANT
                },
                key.exp_base.ln() / ln_base,
            );
            out.insert(
                DominanceKey {
                    log_degree: 1,
                    ..DominanceKey::CONSTANT
                },
                key.poly_degree / ln_base,
            );
            out
        }
        GrowthExpr::Sin(_) => return None,
    })
}

/// Normal form of `f`, or `None` if `f` is outside the poly-log-exp family
/// (contains `sin`, divides by a non-constant, takes a fractional power of a
/// sum, ...) or is identically zero.
pub fn normalize_ple(f: &GrowthExpr) -> Option<PleNormalForm> {
    PleNormalForm::from_sum(normalize(f)?)
}
