//! Exact sparse polynomial arithmetic over the rationals: parsing, ring
//! operations, graded reverse lexicographic leading terms, derivatives,
//! and evaluation.

use nuclear_ideals::poly::{parse_polynomial, MonomialOrder};
use nuclear_ideals::index::{MultiIndex, TensorShape};

fn main() {
    let shape = TensorShape::new(vec![2, 2]).unwrap();

    let f = parse_polynomial("x[1,1]^2 + x[1,2]^2 + x[2,1]^2 + x[2,2]^2 - 1", &shape).unwrap();
    let g = parse_polynomial("x[1,2]*x[2,1] - x[1,1]*x[2,2]", &shape).unwrap();
    println!("f = {f}");
    println!("g = {g}");

    let sum = f.add(&g).unwrap();
    let product = f.mul(&g).unwrap();
    println!("f + g = {sum}");
    println!("f * g = {product}");
    println!("f * g has {} terms, total degree {:?}", product.num_terms(), product.total_degree());

    let order = MonomialOrder::Grevlex;
    let (lm, lc) = f.leading_term(&order).unwrap();
    println!("leading term of f: coefficient {lc}, monomial exponents {:?}", lm);

    let a = MultiIndex::new(vec![2, 1]).unwrap();
    println!("df/dx(2,1) = {}", f.partial_derivative(&a).unwrap());

    // evaluate f at the rational point (3/5, 0, 4/5, 0), which lies on the
    // unit sphere, so f vanishes exactly
    let vals: Vec<_> = ["3/5", "0", "4/5", "0"].iter().map(|t| t.parse().unwrap()).collect();
    println!("f(3/5, 0, 4/5, 0) = {}", f.evaluate_at(&vals).unwrap());
    println!("g(3/5, 0, 4/5, 0) = {}", g.evaluate_at(&vals).unwrap());
}
