//! The Kirchhoff polynomial of the wheel with three spokes, computed from
//! spanning trees and as determinants of the graph Laplacian and the graph
//! matrix, together with a Dodgson polynomial.

use graphforms::graphs::fixture;
use graphforms::laplacian::{dodgson, graph_matrix, graph_polynomial, laplacian};

fn main() -> graphforms::Result<()> {
    let w3 = fixture("wheel3")?;
    let psi = graph_polynomial(&w3)?;
    println!("Ψ = {psi}\n({} monomials)", psi.len());
    let bundle = laplacian(&w3)?;
    println!("\nΛ =\n{}", bundle.lambda.to_text());
    println!("det Λ = Ψ: {}", bundle.determinant()? == psi);
    println!("det M = Ψ: {}", graph_matrix(&w3)?.det()? == psi);
    let d11 = dodgson(&w3, &[0], &[0])?;
    println!("\nΨ^{{1,1}} = {d11}");
    println!("Ψ^{{1,1}} = ∂Ψ/∂x1: {}", d11 == psi.derivative(0));
    println!("Ψ^{{1,2}} = {}", dodgson(&w3, &[0], &[1])?);
    Ok(())
}
