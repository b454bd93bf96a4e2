//! Factorization over `F_q`: squarefree decomposition, distinct-degree and
//! equal-degree (Cantor-Zassenhaus) splitting.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::field::{Fq, FqElem};
use crate::gf::poly::PolyFq;

/// `f = unit * prod(factor^multiplicity)` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(PolyFq, u32)>,
}

impl Factorization {
    pub fn expand(&self, fq: &Fq) -> PolyFq {
        self.factors
            .iter()
            .fold(PolyFq::constant(self.unit), |acc, (f, m)| acc.mul(&f.pow(*m, fq), fq))
    }
}

fn pth_root_poly(f: &PolyFq, fq: &Fq) -> PolyFq {
    let p = fq.characteristic() as usize;
    PolyFq::new(f.coeffs().iter().step_by(p).map(|&c| fq.pth_root(c)).collect())
}

/// Squarefree decomposition of a monic polynomial: pairwise coprime
/// squarefree parts with their multiplicities.
pub fn squarefree_decomposition(f: &PolyFq, fq: &Fq) -> Vec<(PolyFq, u32)> {
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let p = fq.characteristic();
    let df = f.derivative(fq);
    if df.is_zero() {
        for (g, m) in squarefree_decomposition(&pth_root_poly(f, fq), fq) {
            out.push((g, m * p));
        }
        return out;
    }
    let mut c = f.gcd(&df, fq);
    let mut w = f.exact_div(&c, fq).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c, fq);
        let fac = w.exact_div(&y, fq).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        i += 1;
        c = c.exact_div(&y, fq).expect("gcd divides");
        w = y;
    }
    if !c.is_one() {
        for (g, m) in squarefree_decomposition(&pth_root_poly(&c, fq), fq) {
            out.push((g, m * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: `(product, degree)`.
pub fn distinct_degree(f: &PolyFq, fq: &Fq) -> Vec<(PolyFq, usize)> {
    let mut out = Vec::new();
    let q = BigUint::from(fq.order());
    let t = PolyFq::t();
    let mut rest = f.clone();
    let mut h = t.rem(&rest, fq).expect("nonzero");
    let mut i = 1;
    while rest.deg0() >= 2 * i {
        h = h.pow_mod(&q, &rest, fq);
        let g = h.sub(&t, fq).gcd(&rest, fq);
        if !g.is_one() {
            rest = rest.exact_div(&g, fq).expect("gcd divides");
            h = h.rem(&rest, fq).expect("nonzero");
            out.push((g, i));
        }
        i += 1;
    }
    if rest.deg0() > 0 {
        let d = rest.deg0();
        out.push((rest, d));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of distinct irreducibles of
/// degree `d`.
pub fn equal_degree(f: &PolyFq, d: usize, fq: &Fq, rng: &mut ChaCha8Rng) -> Vec<PolyFq> {
    let n = f.deg0();
    if n == d {
        return vec![f.clone()];
    }
    let q = BigUint::from(fq.order());
    let odd = fq.characteristic() != 2;
    let exponent = (q.pow(d as u32) - 1u32) >> 1;
    loop {
        let a = PolyFq::new((0..n).map(|_| FqElem(rng.gen_range(0..fq.order() as u32))).collect());
        if a.deg0() == 0 {
            continue;
        }
        let b = if odd {
            a.pow_mod(&exponent, f, fq).sub(&PolyFq::one(), fq)
        } else {
            // absolute trace to F_2
            let k = fq.degree() as usize * d;
            let two = BigUint::from(2u32);
            let mut term = a.rem(f, fq).expect("nonzero");
            let mut acc = term.clone();
            for _ in 1..k {
                term = term.pow_mod(&two, f, fq);
                acc = acc.add(&term, fq);
            }
            acc
        };
        let g = b.gcd(f, fq);
        let dg = g.deg0();
        if dg > 0 && dg < n {
            let h = f.exact_div(&g, fq).expect("gcd divides");
            let mut out = equal_degree(&g, d, fq, rng);
            out.extend(equal_degree(&h, d, fq, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities.
pub fn factor(f: &PolyFq, fq: &Fq) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = f.leading();
    let monic = f.monic(fq);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ monic.deg0() as u64);
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(&monic, fq) {
        for (block, d) in distinct_degree(&part, fq) {
            for g in equal_degree(&block, d, fq, &mut rng) {
                factors.push((g.monic(fq), mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.deg0().cmp(&b.deg0()).then_with(|| a.cmp(b)));
    Ok(Factorization { unit, factors })
}

/// Monic irreducibles of degree `1..=n`, by degree then coefficient order.
pub fn irreducibles_up_to(n: usize, fq: &Fq) -> Vec<PolyFq> {
    let q = fq.order();
    let mut out = Vec::new();
    for k in 1..=n {
        let count = q.pow(k as u32);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut r = idx;
            for _ in 0..k {
                coeffs.push(FqElem((r % q) as u32));
                r /= q;
            }
            coeffs.push(FqElem::ONE);
            let p = PolyFq::new(coeffs);
            if k == 1 || p.is_irreducible(fq) {
                out.push(p);
            }
        }
    }
    out
}

/// Number of monic irreducibles of degree `k` over `F_q` (necklace count).
pub fn necklace_count(q: u64, k: u32) -> u64 {
    let mut total: i128 = 0;
    for d in 1..=k {
        if k % d == 0 {
            total += mobius(k / d) as i128 * (q as i128).pow(d);
        }
    }
    (total / k as i128) as u64
}

fn mobius(mut n: u32) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Class of `h mod pi` in the residue field `F_q[t]/(pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareClass {
    Zero,
    Square,
    Nonsquare,
}

/// Euler's criterion in `F_q[t]/(pi)`: `h^((q^deg(pi) - 1)/2)`.
pub fn residue_square_class(h: &PolyFq, pi: &PolyFq, fq: &Fq) -> Result<SquareClass> {
    if fq.characteristic() == 2 {
        return Err(Error::CharTwoUnsupported);
    }
    let r = h.rem(pi, fq)?;
    if r.is_zero() {
        return Ok(SquareClass::Zero);
    }
    let exponent = (BigUint::from(fq.order()).pow(pi.deg0() as u32) - 1u32) >> 1;
    if r.pow_mod(&exponent, pi, fq).is_one() {
        Ok(SquareClass::Square)
    } else {
        Ok(SquareClass::Nonsquare)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str, fq: &Fq) -> PolyFq {
        PolyFq::parse(text, fq).unwrap()
    }

    #[test]
    fn factor_examples() {
        let f5 = Fq::prime(5).unwrap();
        let fac = factor(&poly("t^2+2t", &f5), &f5).unwrap();
        assert_eq!(fac.factors, vec![(poly("t", &f5), 1), (poly("t+2", &f5), 1)]);
        let fac = factor(&poly("t^2", &f5), &f5).unwrap();
        assert_eq!(fac.factors, vec![(poly("t", &f5), 2)]);
        let f3 = Fq::prime(3).unwrap();
        let fac = factor(&poly("t^2+1", &f3), &f3).unwrap();
        assert_eq!(fac.factors, vec![(poly("t^2+1", &f3), 1)]);
        assert_eq!(factor(&PolyFq::zero(), &f3), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn t2_plus_1_has_no_root_mod_3() {
        let f3 = Fq::prime(3).unwrap();
        let p = poly("t^2+1", &f3);
        assert!(f3.elements().all(|x| !p.eval(x, &f3).is_zero()));
    }

    #[test]
    fn factor_inseparable_and_char_two() {
        let f2 = Fq::prime(2).unwrap();
        // (t^2+t+1)^2 (t+1)^3 t
        let f = poly("t^2+t+1", &f2)
            .pow(2, &f2)
            .mul(&poly("t+1", &f2).pow(3, &f2), &f2)
            .mul(&PolyFq::t(), &f2);
        let fac = factor(&f, &f2).unwrap();
        assert_eq!(fac.expand(&f2), f);
        assert_eq!(fac.factors.len(), 3);
        let f3 = Fq::prime(3).unwrap();
        let g = poly("t^3+2", &f3).mul(&poly("t^2+1", &f3), &f3);
        let fac = factor(&g, &f3).unwrap();
        assert_eq!(fac.factors, vec![(poly("t+2", &f3), 3), (poly("t^2+1", &f3), 1)]);
    }

    #[test]
    fn irreducible_lists() {
        let f5 = Fq::prime(5).unwrap();
        assert_eq!(irreducibles_up_to(1, &f5).len(), 5);
        let f2 = Fq::prime(2).unwrap();
        let list: Vec<String> = irreducibles_up_to(2, &f2).iter().map(|p| p.display(&f2, 't')).collect();
        assert_eq!(list, vec!["t", "t+1", "t^2+t+1"]);
        let f3 = Fq::prime(3).unwrap();
        assert_eq!(irreducibles_up_to(2, &f3).iter().filter(|p| p.deg0() == 2).count(), 3);
    }

    #[test]
    fn square_classes() {
        let f5 = Fq::prime(5).unwrap();
        let t = PolyFq::t();
        assert_eq!(residue_square_class(&poly("t^3+3", &f5), &t, &f5), Ok(SquareClass::Nonsquare));
        assert_eq!(residue_square_class(&poly("t^3+1", &f5), &t, &f5), Ok(SquareClass::Square));
        assert_eq!(residue_square_class(&poly("t^3+t", &f5), &t, &f5), Ok(SquareClass::Zero));
        let f2 = Fq::prime(2).unwrap();
        assert_eq!(
            residue_square_class(&PolyFq::one(), &t, &f2),
            Err(Error::CharTwoUnsupported)
        );
    }

    #[test]
    fn necklace_values() {
        assert_eq!(necklace_count(3, 2), 3);
        assert_eq!(necklace_count(2, 4), 3);
        assert_eq!(necklace_count(5, 1), 5);
    }
}
