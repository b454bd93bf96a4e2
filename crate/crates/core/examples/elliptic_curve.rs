//! Genus-1 inputs: point counts, Frobenius traces, and how t splits in
//! F_q(t, sqrt(h)).

use heightzeta::curve::{affine_point_count, build_genus1_spec, frobenius_trace, splitting_type};
use heightzeta::gf::{Fq, PolyFq};

fn main() -> heightzeta::Result<()> {
    let fq = Fq::prime(5)?;
    for h in ["t^3+3", "t^3+1", "t^3+2t+1", "t^3+t"] {
        let hp = PolyFq::parse(h, &fq)?;
        let n = affine_point_count(&hp, &fq)?;
        let a = frobenius_trace(5, n)?;
        let split = splitting_type(&hp, &PolyFq::t(), &fq)?;
        print!("y^2 = {h}: {n} affine points, trace {a}, t is {split:?}");
        match build_genus1_spec(&fq, &hp, &PolyFq::t(), 2) {
            Ok(spec) => println!(", bad places {:?}", spec.bad_places),
            Err(e) => println!(", rejected: {e}"),
        }
    }
    Ok(())
}
