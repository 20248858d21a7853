//! Arithmetic in GF(4) and GF(16), Frobenius maps and the subfield lattice.

use linbase::gf::{field_arith, fixed_subfield, make_field, subfield_lattice, ArithOp, FieldAutomorphism, FieldElement};

fn main() -> linbase::Result<()> {
    let f4 = make_field(2, 2)?;
    let a = FieldElement::new(&f4, 2)?;
    let sq = field_arith(&a, &a, ArithOp::Mul)?;
    println!("GF(4), modulus {:?}: a * a = {:?} (coefficients)", f4.modulus(), sq.coefficients());

    let f16 = make_field(2, 4)?;
    for e in 0..4 {
        let sigma = FieldAutomorphism::new(&f16, e)?;
        let fixed = fixed_subfield(&sigma);
        println!("x -> x^(2^{e}) fixes GF({}) = {:?}", fixed.order(), fixed.elements());
    }
    for s in subfield_lattice(&f16) {
        println!("subfield of degree {}: {} elements", s.degree(), s.order());
    }
    Ok(())
}
