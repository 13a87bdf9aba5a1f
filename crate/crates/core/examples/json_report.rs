//! Drive the command-line front end in-process and read its JSON back.

use almost::cli::{run_from, Report};

fn main() {
    let out = run_from(["almost", "relate", "n^2 + n", "n^2", "--json"]);
    print!("{}", out.stdout);
    let report = Report::from_json(out.stdout.trim_end()).unwrap();
    if let Report::Relate(r) = &report {
        println!("theta = {}, almost_K = {:?}", r.relations.theta, r.relations.almost_k);
    }
    assert_eq!(report.to_json(), out.stdout.trim_end());
    println!("exit code {}", out.exit_code);
}
