//! Arithmetic in GF(9) and an inner product over GF(4)^3.
use ramsey_core::FiniteField;

fn main() -> ramsey_core::Result<()> {
    let f = FiniteField::with_order(9)?;
    println!("GF(9) reduction polynomial (low degree first): {:?}", f.reduction());
    for a in 1..f.order() {
        let inv = f.inv(a).expect("nonzero");
        println!("{a} * {inv} = {}", f.mul(a, inv));
    }

    let g = FiniteField::with_order(4)?;
    let u = g.vector(vec![1, 2, 3])?;
    let v = g.vector(vec![3, 1, 1])?;
    println!("<u, v> over GF(4) = {}", g.inner_product(&u, &v)?);
    Ok(())
}
