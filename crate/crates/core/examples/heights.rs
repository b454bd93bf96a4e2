//! Valuations, the standard height, and the canonical height of
//! phi(z) = z^d + 1/f on F_q(t).

use heightzeta::gf::{Fq, PolyFq, RatFuncFq};
use heightzeta::places::{canonical_height_exp, standard_height_exp, validate_phi, valuation, Place};

fn main() -> heightzeta::Result<()> {
    let fq = Fq::prime(5)?;
    let f = PolyFq::parse("t^2 + t", &fq)?;
    let phi = validate_phi(&f, 3, &fq)?;
    println!("bad places of z^3 + 1/({}):", f.display(&fq, 't'));
    for bp in &phi.bad_places {
        let name = match &bp.place {
            Place::Finite(p) => p.display(&fq, 't'),
            Place::Infinite => "infinity".into(),
        };
        println!("  {name}: residue degree {}, v(f) = {}", bp.residue_degree, bp.vf);
    }

    let x = RatFuncFq::new(PolyFq::parse("t^2 + 1", &fq)?, PolyFq::parse("t + 4", &fq)?, &fq)?;
    println!("x = {}", x.display(&fq));
    println!("  v_t(x) = {:?}, v_inf(x) = {:?}", valuation(&x, &Place::Finite(PolyFq::t()), &fq), valuation(&x, &Place::Infinite, &fq));

    // heights are q^(m/d); the exponent m doubles as d-fold under phi
    let mut y = x;
    for _ in 0..3 {
        let h = canonical_height_exp(&y, &phi, &fq).0;
        println!("  standard exponent {}, canonical exponent {h}", standard_height_exp(&y));
        y = phi.apply(&y, &fq);
    }
    Ok(())
}
