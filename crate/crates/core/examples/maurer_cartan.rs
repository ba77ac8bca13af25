//! Maurer–Cartan traces `tr((X⁻¹dX)ⁿ)` of generic matrices: `β³` of a
//! generic 2×2 matrix and `β⁵` of a generic symmetric 3×3 matrix, both
//! multiples of `Ω/det²`.

use graphforms::forms::maurer_cartan_trace;
use graphforms::polyring::{MultiPoly, PolyMatrix};

fn report(name: &str, x: &PolyMatrix, n: usize) -> graphforms::Result<()> {
    let beta = maurer_cartan_trace(x, n)?;
    let det = x.det()?;
    match beta.ratio_to_omega() {
        Some(r) => println!("{name}: β^{n} = ({}) / det^{} · Ω,  det = {det}", r.numerator, r.exponent),
        None => println!("{name}: β^{n} =\n{}", beta.to_text()),
    }
    Ok(())
}

fn main() -> graphforms::Result<()> {
    let v = |n, i| MultiPoly::var(n, i);
    let generic = PolyMatrix::from_fn(2, 2, 4, |i, j| v(4, [[0, 2], [3, 1]][i][j]));
    report("generic 2×2", &generic, 3)?;
    let symmetric = PolyMatrix::from_fn(3, 3, 6, |i, j| v(6, [[0, 3, 4], [3, 1, 5], [4, 5, 2]][i][j]));
    report("symmetric 3×3", &symmetric, 5)?;
    println!("symmetric 3×3: β³ = 0: {}", maurer_cartan_trace(&symmetric, 3)?.is_zero());
    println!("generic 2×2: β² = 0: {}", maurer_cartan_trace(&generic, 2)?.is_zero());
    Ok(())
}
