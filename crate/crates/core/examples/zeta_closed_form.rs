//! Closed forms of the height zeta function and their series, which count
//! points of each canonical height.

use heightzeta::gf::{Fq, PolyFq};
use heightzeta::ratfunc_q::q_to_string;
use heightzeta::zeta::{assemble_zeta, decomposition_check, BadPlaceData, ProblemSpec};

fn show(name: &str, spec: &ProblemSpec) -> heightzeta::Result<()> {
    let zc = assemble_zeta(spec)?;
    println!("{name}  ({})", spec.var().describe());
    println!("  Z = {}", zc.combined);
    println!("  main = {}", zc.main_term);
    println!("  correction = {}", zc.correction_term);
    let a: Vec<String> = zc.combined.series_coefficients(10)?.iter().map(q_to_string).collect();
    println!("  a_0..a_10 = {}", a.join(", "));
    println!("  region decomposition holds: {}", decomposition_check(spec)?.holds);
    Ok(())
}

fn main() -> heightzeta::Result<()> {
    let f5 = Fq::prime(5)?;
    show("z^2 + 1/t over F_5(t)", &ProblemSpec::from_phi(&f5, &PolyFq::t(), 2)?)?;
    let f3 = Fq::prime(3)?;
    show("z^3 + 1/(t^2+1) over F_3(t)", &ProblemSpec::from_phi(&f3, &PolyFq::parse("t^2+1", &f3)?, 3)?)?;
    // genus 1 needs only the residue data of the bad places
    let split = ProblemSpec::new(5, 1, 0, 2, vec![BadPlaceData { f_v: 1, vf: 1 }; 2])?;
    show("z^2 + 1/t over F_5(t, sqrt(t^3+1))", &split)?;
    Ok(())
}
