//! Exact polynomial arithmetic: parse, differentiate, evaluate, print.

use num_complex::Complex64;
use peddeg::poly::{parse_polynomial, GaussianRational};

fn main() {
    let vars = ["x0", "x1", "x2"];
    let f = parse_polynomial("x0^2*x1 - (x1 - i*x2)^2*x2", &vars).expect("valid input");
    let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();

    println!("F        = {}", f.display_with(&names));
    println!("degree   = {:?}, homogeneous = {}", f.total_degree(), f.is_homogeneous());
    for (k, d) in f.gradient().iter().enumerate() {
        println!("dF/d{}    = {}", vars[k], d.display_with(&names));
    }

    // Euler: sum x_i dF/dx_i = deg(F) F, checked exactly.
    let euler = (0..3).fold(f.scale(&GaussianRational::ratio(-3, 1)), |acc, k| {
        let xk = peddeg::poly::ExactPolynomial::variable(3, k);
        acc.add(&xk.mul(&f.partial_derivative(k).unwrap()))
    });
    println!("Euler identity holds: {}", euler.is_zero());

    let node = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, -1.0)];
    println!("F(0:1:-i) = {}", f.evaluate(&node).unwrap());
}
