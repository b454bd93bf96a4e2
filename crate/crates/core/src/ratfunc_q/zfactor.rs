//! Factorization over `Q`: squarefree split, then Zassenhaus (factor mod a
//! small prime, Hensel-lift, recombine subsets).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf::{factor, Fq, PolyFq};
use crate::ratfunc_q::qpoly::{QPoly, Q};

/// `p = unit * prod(factor^mult)`; factors are primitive integer polynomials
/// with positive constant term (or `u` itself), sorted by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QFactorization {
    pub unit: Q,
    pub factors: Vec<(QPoly, u32)>,
}

impl QFactorization {
    pub fn expand(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

pub fn qpoly_factor(p: &QPoly) -> Result<QFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut factors: Vec<(QPoly, u32)> = Vec::new();
    let low = p.lowest().map(|(k, _)| k).unwrap_or(0);
    if low > 0 {
        factors.push((QPoly::var(), low as u32));
    }
    let body = QPoly::new(p.coeffs()[low..].to_vec());
    for (part, mult) in squarefree_q(&body) {
        for g in factor_squarefree_z(&part.primitive()) {
            factors.push((g.primitive_low_positive(), mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| {
        a.deg0().cmp(&b.deg0()).then_with(|| cmp_coeffs(a, b))
    });
    let prod = factors.iter().fold(QPoly::one(), |acc, (f, m)| &acc * &f.pow(*m));
    let unit = p.leading() / prod.leading();
    Ok(QFactorization { unit, factors })
}

fn cmp_coeffs(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.coeffs().iter().rev().cmp(b.coeffs().iter().rev())
}

/// Yun's squarefree decomposition over `Q` (characteristic zero).
fn squarefree_q(f: &QPoly) -> Vec<(QPoly, u32)> {
    let mut out = Vec::new();
    if f.deg0() == 0 {
        return out;
    }
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).expect("gcd divides");
    let mut c = df.exact_div(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.deg0() > 0 {
        let a = b.gcd(&d);
        if a.deg0() > 0 {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).expect("gcd divides");
        c = d.exact_div(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

const PRIMES: [u32; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

fn to_fp(f: &[BigInt], fq: &Fq, p: u32) -> PolyFq {
    let pb = BigInt::from(p);
    PolyFq::new(f.iter().map(|c| fq.from_i64(c.mod_floor(&pb).to_i64().unwrap())).collect())
}

fn from_fp(f: &PolyFq) -> Vec<BigInt> {
    f.coeffs().iter().map(|c| BigInt::from(c.index())).collect()
}

/// Factors a squarefree primitive integer polynomial into irreducibles over `Z`.
fn factor_squarefree_z(f: &QPoly) -> Vec<QPoly> {
    let n = f.deg0();
    if n <= 1 {
        return vec![f.clone()];
    }
    let fz = f.to_bigints().expect("primitive integer polynomial");
    let lc = fz[n].clone();

    // pick the prime giving the fewest modular factors among a few candidates
    let mut best: Option<(u32, Vec<PolyFq>)> = None;
    let mut tried = 0;
    for &p in &PRIMES {
        if (&lc % p).is_zero() {
            continue;
        }
        let fq = Fq::prime(p).expect("small prime");
        let fp = to_fp(&fz, &fq, p);
        if !fp.gcd(&fp.derivative(&fq), &fq).is_one() {
            continue;
        }
        let fac = factor(&fp, &fq).expect("nonzero");
        let locals: Vec<PolyFq> = fac.factors.into_iter().map(|(g, _)| g).collect();
        if locals.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| locals.len() < b.len()) {
            best = Some((p, locals));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, locals) = best.expect("some prime keeps f squarefree");

    // coefficient bound for any factor scaled to leading coefficient lc
    let norm2: BigInt = fz.iter().map(|c| c * c).sum();
    let bound = (norm2.sqrt() + 1u32) * lc.abs() * (BigInt::one() << n);
    let pb = BigInt::from(p);
    let mut modulus = pb.clone();
    let mut k = 1u32;
    while modulus <= &bound * 2u32 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(&fz, &locals, p, k);
    recombine(&fz, lifted, &modulus)
}

fn poly_mul_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn reduce_mod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    a.iter().map(|c| c.mod_floor(m)).collect()
}

/// Linear multifactor lifting of `f = lc * prod(g_i) (mod p)` to `mod p^k`.
/// Returned factors are monic with coefficients in `[0, p^k)`.
fn hensel_lift(f: &[BigInt], locals: &[PolyFq], p: u32, k: u32) -> Vec<Vec<BigInt>> {
    let fq = Fq::prime(p).expect("small prime");
    let lc = f.last().unwrap().clone();
    let lc_inv = fq.inv(fq.from_i64(lc.mod_floor(&BigInt::from(p)).to_i64().unwrap())).unwrap();
    // sigma_i = (prod_{l != i} g_l)^(-1) mod g_i
    let sigmas: Vec<PolyFq> = (0..locals.len())
        .map(|i| {
            let others = locals
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != i)
                .fold(PolyFq::one(), |acc, (_, g)| acc.mul(g, &fq));
            others.inv_mod(&locals[i], &fq).expect("coprime modular factors")
        })
        .collect();
    let mut gs: Vec<Vec<BigInt>> = locals.iter().map(from_fp).collect();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let prod = gs.iter().fold(vec![lc.clone()], |acc, g| poly_mul_z(&acc, g));
        let err: Vec<BigInt> = (0..f.len())
            .map(|i| {
                let diff = &f[i] - prod.get(i).cloned().unwrap_or_default();
                debug_assert!((&diff % &pj).is_zero());
                diff / &pj
            })
            .collect();
        let e = to_fp(&err, &fq, p).scale(lc_inv, &fq);
        let next = &pj * &pb;
        for (i, g) in gs.iter_mut().enumerate() {
            let delta = e.mul(&sigmas[i], &fq).rem(&locals[i], &fq).unwrap();
            for (j, c) in from_fp(&delta).into_iter().enumerate() {
                g[j] += c * &pj;
            }
            *g = reduce_mod(g, &next);
        }
        pj = next;
    }
    gs
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn divides_z(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = QPoly::from_bigints(f).divrem(&QPoly::from_bigints(g)).ok()?;
    if !r.is_zero() {
        return None;
    }
    q.to_bigints()
}

/// Subset recombination of lifted factors.
fn recombine(f: &[BigInt], mut lifted: Vec<Vec<BigInt>>, modulus: &BigInt) -> Vec<QPoly> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        let lc = f.last().unwrap().clone();
        for subset in subsets(lifted.len(), size) {
            let cand = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| poly_mul_z(&acc, &lifted[i]));
            let cand = QPoly::from_bigints(&symmetric(&cand, modulus)).primitive();
            let cz = cand.to_bigints().unwrap();
            if let Some(quot) = divides_z(&f, &cz) {
                out.push(cand);
                f = QPoly::from_bigints(&quot).primitive().to_bigints().unwrap();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push(QPoly::from_bigints(&f));
    out
}

/// Increasing index subsets of `0..n` of the given size, lexicographic.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - size + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Irreducibility over `Q`, via factorization.
pub fn is_irreducible_q(p: &QPoly) -> bool {
    p.deg0() >= 1
        && qpoly_factor(p).is_ok_and(|f| f.factors.len() == 1 && f.factors[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factors_of(p: &QPoly) -> Vec<(QPoly, u32)> {
        qpoly_factor(p).unwrap().factors
    }

    #[test]
    fn difference_of_squares() {
        let fac = qpoly_factor(&QPoly::from_ints(&[1, 0, -25])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(QPoly::from_ints(&[1, -5]), 1), (QPoly::from_ints(&[1, 5]), 1)]
        );
        assert_eq!(fac.expand(), QPoly::from_ints(&[1, 0, -25]));
    }

    #[test]
    fn quartic_denominator_recovered() {
        let a = QPoly::from_ints(&[1, 1]);
        let b = QPoly::from_ints(&[1, -5]);
        let c = QPoly::from_ints(&[1, 0, 0, 0, 5]);
        let prod = &(&a * &b) * &c;
        let fac = qpoly_factor(&prod.scale(&Q::new(3.into(), 7.into()))).unwrap();
        assert_eq!(fac.factors, vec![(b, 1), (a, 1), (c.clone(), 1)]);
        assert!(is_irreducible_q(&c));
    }

    #[test]
    fn swinnerton_dyer_like_splitting() {
        // x^4 + 1 splits mod every prime but is irreducible over Q
        assert!(is_irreducible_q(&QPoly::from_ints(&[1, 0, 0, 0, 1])));
        // x^4 - 10x^2 + 1 likewise
        assert!(is_irreducible_q(&QPoly::from_ints(&[1, 0, -10, 0, 1])));
    }

    #[test]
    fn multiplicities_and_monomials() {
        let a = QPoly::from_ints(&[2, -3]);
        let b = QPoly::from_ints(&[1, 0, 5]);
        let p = &(&QPoly::monomial(Q::one(), 2) * &a.pow(3)) * &b.pow(2);
        let fac = qpoly_factor(&p).unwrap();
        assert_eq!(
            fac.factors,
            vec![(a, 3), (QPoly::var(), 2), (b, 2)]
        );
        assert_eq!(fac.expand(), p);
    }

    #[test]
    fn nonmonic_leading_coefficient() {
        // (6x+1)(10x^2-3)(15x^3+2)
        let parts = [
            QPoly::from_ints(&[1, 6]),
            QPoly::from_ints(&[-3, 0, 10]),
            QPoly::from_ints(&[2, 0, 0, 15]),
        ];
        let p = parts.iter().fold(QPoly::one(), |acc, f| &acc * f);
        let got = factors_of(&p);
        assert_eq!(got.len(), 3);
        assert_eq!(qpoly_factor(&p).unwrap().expand(), p);
        for f in parts {
            let norm = f.primitive_low_positive();
            assert!(got.iter().any(|(g, m)| *g == norm && *m == 1));
        }
    }

    #[test]
    fn cyclotomic_product() {
        // u^12 - 1 = product of cyclotomic polynomials for 1,2,3,4,6,12
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let fac = qpoly_factor(&QPoly::from_ints(&c)).unwrap();
        let degs: Vec<usize> = fac.factors.iter().map(|(f, _)| f.deg0()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
    }
}
