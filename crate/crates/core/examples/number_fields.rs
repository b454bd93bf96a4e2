//! Factorization over Q and arithmetic in Q[u]/(p), the tools behind exact
//! Laurent coefficients.

use heightzeta::ratfunc_q::{complex_roots, q_int, qpoly_factor, NumberFieldElem, QPoly};

fn main() -> heightzeta::Result<()> {
    // (1 + u)(1 - 5u)(1 + 5u^4)
    let p = &(&QPoly::from_ints(&[1, 1]) * &QPoly::from_ints(&[1, -5])) * &QPoly::from_ints(&[1, 0, 0, 0, 5]);
    let fac = qpoly_factor(&p)?;
    for (f, k) in &fac.factors {
        let roots = complex_roots(f);
        println!("{} (multiplicity {k}), |roots| = {:.6}", f.to_string().replace('w', "u"), roots[0].norm());
    }

    let m = QPoly::from_ints(&[1, 0, 0, 0, 5]);
    let u = NumberFieldElem::generator(&m);
    let x = &u.pow(-1)? + &NumberFieldElem::from_q(&m, q_int(3));
    println!("in Q[u]/(1 + 5u^4): 1/u + 3 = {}", x.rep().to_string().replace('w', "u"));
    println!("  trace {}, inverse {}", x.trace(), x.inv()?.rep().to_string().replace('w', "u"));
    Ok(())
}
