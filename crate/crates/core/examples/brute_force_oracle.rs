//! Enumerate F_q(t) by standard height and tabulate canonical heights,
//! split by which bad places are integral. Set HEIGHTZETA_THREADS to cap
//! the worker pool.

use heightzeta::gf::{Fq, PolyFq};
use heightzeta::oracle::{element_count, region_histogram, DEFAULT_BUDGET};
use heightzeta::zeta::{partial_zeta_dt, ProblemSpec};

fn main() -> heightzeta::Result<()> {
    let fq = Fq::prime(5)?;
    let spec = ProblemSpec::from_phi(&fq, &PolyFq::parse("t^2 + t", &fq)?, 2)?;
    let phi = spec.source.clone().unwrap();
    let n = 4;
    println!("enumerating {} elements of height <= 5^{n}", element_count(5, n));
    let hist = region_histogram(&fq, &phi, n, DEFAULT_BUDGET)?;
    for t in 0..spec.subset_count() {
        let counts = hist.region_counts(t as usize);
        let series = partial_zeta_dt(&spec, t)?.series_coefficients(2 * n as usize)?;
        let predicted: Vec<String> = series.iter().step_by(2).map(|c| c.to_string()).collect();
        println!("T = {t:02b}: counts {counts:?}, closed form {predicted:?}");
    }
    let table = hist.canonical_counts(&phi, 5, 2 * n as u64 + 1);
    println!("canonical height counts a_0..: {:?}", table.counts);
    Ok(())
}
