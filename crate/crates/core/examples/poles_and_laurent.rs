//! Poles of Z(phi, s) with Re(s) >= 0 and exact Laurent coefficients in the
//! number field cut out by each denominator factor.

use heightzeta::asymptotics::analyze;
use heightzeta::zeta::{assemble_zeta, BadPlaceData, ProblemSpec};

fn main() -> heightzeta::Result<()> {
    // y^2 = t^3 + 3 over F_5, where t is inert
    let spec = ProblemSpec::new(5, 1, 0, 2, vec![BadPlaceData { f_v: 2, vf: 1 }])?;
    let z = assemble_zeta(&spec)?.combined;
    let rep = analyze(&z)?;
    let var = rep.normalized.var();
    println!("u = alpha^(-s), alpha = {}^({}/{})", var.q, var.e, var.d);
    for r in &rep.pole_records {
        println!("factor {} of order {}", r.factor.to_string().replace('w', "u"), r.order);
        for (re, im) in &r.numeric_poles {
            println!("  s = {re:.6} + {im:.6} i");
        }
        for (n, c) in r.laurent.iter().enumerate() {
            println!("  c_{} = {}   (trace {})", n + 1, c.rep().to_string().replace('w', "u"), c.trace());
        }
    }
    println!("holomorphic remainder G(u) = {}", rep.remainder.to_string().replace('w', "u"));
    Ok(())
}
