//! Arithmetic in F_q and F_q[t]: field tables, factorization, and the
//! irreducible counts behind the places of F_q(t).

use heightzeta::gf::{factor, irreducibles_up_to, necklace_count, Fq, PolyFq};

fn main() -> heightzeta::Result<()> {
    let f5 = Fq::prime(5)?;
    let f = PolyFq::parse("t^8 + 4t^5 + t^4 + 4t", &f5)?;
    let fac = factor(&f, &f5)?;
    println!("over F_5: {} =", f.display(&f5, 't'));
    for (p, k) in &fac.factors {
        println!("  ({})^{k}", p.display(&f5, 't'));
    }
    assert_eq!(fac.expand(&f5), f);

    // F_9 = F_3[y]/(y^2 + 1); elements print as indices
    let f9 = Fq::from_parts(9, Some("y^2+1"))?;
    let g = PolyFq::parse("t^4 + 1", &f9)?;
    let fac = factor(&g, &f9)?;
    println!("over F_9: t^4 + 1 splits into {} factors", fac.factors.len());

    for k in 1..=4 {
        let found = irreducibles_up_to(k, &f5).iter().filter(|p| p.deg0() == k).count();
        println!("monic irreducibles of degree {k} over F_5: {found} (necklace formula {})", necklace_count(5, k as u32));
    }
    Ok(())
}
