//! Generators shared by the property tests and the acceptance suite.
#![allow(dead_code)]

use almost::GrowthExpr;
use rand::seq::SliceRandom;
use rand::Rng;

/// One PLE term `c * b^n * n^p * log2(n)^q`, built as a plain expression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Term {
    pub c: f64,
    pub b: f64,
    pub p: f64,
    pub q: u32,
}

impl Term {
    pub fn expr(&self) -> GrowthExpr {
        let n = GrowthExpr::n;
        let mut e = GrowthExpr::constant(self.c);
        if self.b > 1.0 {
            e = e * GrowthExpr::exp_b(self.b, n());
        }
        if self.p != 0.0 {
            e = e * if self.p == 1.0 { n() } else { n().pow(self.p) };
        }
        if self.q > 0 {
            let l = GrowthExpr::log2(n());
            e = e * if self.q == 1 { l } else { l.pow(self.q as f64) };
        }
        e
    }
}

pub fn sum(terms: &[Term]) -> GrowthExpr {
    let mut it = terms.iter();
    let first = it.next().expect("at least one term").expr();
    it.fold(first, |acc, t| {
        if t.c < 0.0 {
            acc - Term { c: -t.c, ..*t }.expr()
        } else {
            acc + t.expr()
        }
    })
}

const BASES: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
const DEGREES: [f64; 7] = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0];

/// A leading key `(b, p, q)` with a positive coefficient in `[0.1, 100]`.
pub fn leading<R: Rng>(rng: &mut R) -> Term {
    Term {
        c: rng.gen_range(0.1..100.0),
        b: *BASES.choose(rng).unwrap(),
        p: *DEGREES.choose(rng).unwrap(),
        q: rng.gen_range(0..3),
    }
}

/// Up to three terms strictly below `lead`: same exponential base, at least
/// one polynomial degree lower, log power 0 or 1.
pub fn lower_terms<R: Rng>(rng: &mut R, lead: &Term) -> Vec<Term> {
    let count = rng.gen_range(0..=3);
    let mut out = Vec::new();
    for _ in 0..count {
        let p = lead.p - rng.gen_range(1..=3) as f64;
        if p < -1.0 {
            continue;
        }
        out.push(Term {
            c: rng.gen_range(-5.0..5.0),
            b: lead.b,
            p,
            q: rng.gen_range(0..2),
        });
    }
    out
}

/// A random PLE expression whose head is `lead`.
pub fn with_head<R: Rng>(rng: &mut R, lead: Term) -> GrowthExpr {
    let mut terms = vec![lead];
    terms.extend(lower_terms(rng, &lead));
    sum(&terms)
}

pub fn random_ple<R: Rng>(rng: &mut R) -> GrowthExpr {
    let lead = leading(rng);
    with_head(rng, lead)
}

/// Same key as `lead`, fresh coefficient.
pub fn same_key<R: Rng>(rng: &mut R, lead: &Term) -> Term {
    Term {
        c: rng.gen_range(0.1..100.0),
        ..*lead
    }
}

/// A leading term whose key is either identical to `lead` or separated from
/// it clearly enough to be visible on the default sampling schedule:
/// a different exponential base, or at least two polynomial degrees.
pub fn separated_key<R: Rng>(rng: &mut R, lead: &Term) -> Term {
    loop {
        let t = leading(rng);
        if t.b != lead.b || (t.p - lead.p).abs() >= 2.0 {
            return t;
        }
    }
}

/// A pair for comparing the numeric and symbolic paths.
pub fn agreement_pair<R: Rng>(rng: &mut R) -> (GrowthExpr, GrowthExpr) {
    let a = leading(rng);
    let b = if rng.gen_bool(0.5) {
        same_key(rng, &a)
    } else {
        separated_key(rng, &a)
    };
    (with_head(rng, a), with_head(rng, b))
}
