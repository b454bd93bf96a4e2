//! The main term of N(B) = #{x : H(x) <= B} from the poles, against a
//! brute-force count.

use heightzeta::asymptotics::{analyze, main_term, remainder_check};
use heightzeta::gf::{Fq, PolyFq};
use heightzeta::oracle::{count_canonical_heights, DEFAULT_BUDGET};
use heightzeta::ratfunc_q::{q_int, q_to_string};
use heightzeta::zeta::{assemble_zeta, ProblemSpec};

fn main() -> heightzeta::Result<()> {
    let fq = Fq::prime(3)?;
    let f = PolyFq::parse("t^2 + t", &fq)?;
    let spec = ProblemSpec::from_phi(&fq, &f, 2)?;
    let rep = analyze(&assemble_zeta(&spec)?.combined)?;
    let chk = remainder_check(&rep, 60)?;
    println!("a_m minus pole predictions is the remainder's series: {}", chk.holds());

    let k_max = 11;
    let counts = count_canonical_heights(&fq, spec.source.as_ref().unwrap(), k_max, DEFAULT_BUDGET)?;
    let mut n = 0;
    println!("{:>3} {:>12} {:>10} {:>10}", "k", "main term", "N(B)", "diff");
    for k in 0..=k_max {
        n += counts.get(k);
        let mt = main_term(&rep, k)?;
        println!("{k:>3} {:>12} {n:>10} {:>10}", q_to_string(&mt), q_to_string(&(q_int(n as i64) - &mt)));
    }
    Ok(())
}
