//! `a(K, g)` composes: if f ∈ a(K1, g) and g ∈ a(K2, h) then f ∈ a(K1*K2, h).

use almost::{check_almost, parse};

fn main() {
    let f = parse("6*n^2*log2(n) + n^2").unwrap();
    let g = parse("2*n^2*ln(n) - 40*n").unwrap();
    let h = parse("n^2*log10(n)").unwrap();

    let k1 = check_almost(&f, &g).unwrap().unwrap();
    let k2 = check_almost(&g, &h).unwrap().unwrap();
    let k3 = check_almost(&f, &h).unwrap().unwrap();
    println!("f ∈ a({k1:.6}, g)");
    println!("g ∈ a({k2:.6}, h)");
    println!("f ∈ a({k3:.6}, h)   K1*K2 = {:.6}", k1 * k2);

    let back = check_almost(&g, &f).unwrap().unwrap();
    println!("g ∈ a({back:.6}, f)   1/K1 = {:.6}", 1.0 / k1);
}
