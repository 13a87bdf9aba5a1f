//! Reduce expressions to sums of `c * b^n * n^p * ln(n)^q`, leading term first.

use almost::ple::normalize_ple;
use almost::parse;

fn main() {
    for text in [
        "(n + 1) * (n - 1)",
        "3*n^3 + 2*n^2 + n",
        "n * log2(n) + log10(n^2)",
        "exp_b(2, n + 3) / 8 + n^50",
        "(n^2 + n)^(0.5)",
        "2 - sin(n)",
    ] {
        let e = parse(text).unwrap();
        match normalize_ple(&e) {
            Some(form) => {
                println!("{text}\n    = {form}");
                let lead = form.leading();
                println!(
                    "    leading key (b, p, q) = ({}, {}, {})",
                    lead.key.exp_base, lead.key.poly_degree, lead.key.log_degree
                );
            }
            None => println!("{text}\n    has no normal form; only sampling can judge it"),
        }
    }
}
