//! Brute-force ground truth over `F_q(t)`: enumerate every element of bounded
//! height and tabulate canonical heights.
//!
//! An element is a pair `(N, D)` with `D` monic, `gcd(N, D) = 1` and
//! `max(deg N, deg D) <= n`; there are exactly `q^(2n+1)` of them. Since the
//! pair is coprime, `v_pi(x) >= 0` iff `pi` does not divide `D`, so the
//! histogram only needs `(h, mask of bad places not dividing D)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Fq, FqElem, PolyFq, RatFuncFq};
use crate::places::{Place, PhiSpec};

pub const DEFAULT_BUDGET: u128 = 100_000_000;
/// Environment variable capping the oracle's worker threads.
pub const THREADS_ENV: &str = "HEIGHTZETA_THREADS";

/// Largest height exponent the kernel's fixed-size buffers support.
const MAX_DEG: usize = 30;

/// `a_m = #{x : canonical height exponent = m}` for `m <= max_m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub d: u32,
    pub q: u64,
    pub counts: Vec<u64>,
    pub max_m: u64,
}

impl CountTable {
    pub fn get(&self, m: u64) -> u64 {
        self.counts.get(m as usize).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Element counts keyed by standard height exponent `h` and by the mask of
/// bad places where `v(x) >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionHistogram {
    pub max_h: u32,
    /// `counts[h][mask]`.
    pub counts: Vec<Vec<u64>>,
}

/// `q^(2n+1)`, the number of elements with `H(x) <= q^n`.
pub fn element_count(q: u64, n: u32) -> u128 {
    (q as u128).saturating_pow(2 * n + 1)
}

fn check_budget(q: u64, n: u32, budget: u128) -> Result<()> {
    let estimated = element_count(q, n);
    if estimated > budget || n as usize > MAX_DEG {
        return Err(Error::BudgetExceeded { estimated, budget });
    }
    Ok(())
}

fn poly_from_index(mut idx: u64, len: usize, q: u64, monic: bool) -> PolyFq {
    let mut c = Vec::with_capacity(len + 1);
    for _ in 0..len {
        c.push(FqElem((idx % q) as u32));
        idx /= q;
    }
    if monic {
        c.push(FqElem::ONE);
    }
    PolyFq::new(c)
}

/// Every `x` with `H(x) <= q^n`, once each, ordered by denominator degree and
/// then numerator index.
pub fn enumerate_elements(fq: &Fq, n: u32, budget: u128) -> Result<impl Iterator<Item = RatFuncFq> + '_> {
    check_budget(fq.order(), n, budget)?;
    let q = fq.order();
    let n = n as usize;
    let dens = (0..=n).flat_map(move |k| (0..q.pow(k as u32)).map(move |i| poly_from_index(i, k, q, true)));
    Ok(dens.flat_map(move |den| {
        (0..q.pow(n as u32 + 1)).filter_map(move |i| {
            let num = poly_from_index(i, n + 1, q, false);
            if num.gcd(&den, fq).is_one() || (num.is_zero() && den.is_one()) {
                Some(RatFuncFq::new(num, den.clone(), fq).expect("monic denominator"))
            } else {
                None
            }
        })
    }))
}

/// Field arithmetic for the kernel, specialized for prime fields.
trait Arith: Sync {
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    fn inv(&self, a: u32) -> u32;
}

struct PrimeArith {
    p: u32,
    inverses: Vec<u32>,
}

impl PrimeArith {
    fn new(p: u32) -> PrimeArith {
        let mut inverses = vec![0; p as usize];
        for a in 1..p {
            inverses[a as usize] = (1..p).find(|b| (a as u64 * *b as u64) % p as u64 == 1).unwrap();
        }
        PrimeArith { p, inverses }
    }
}

impl Arith for PrimeArith {
    fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b { a - b } else { a + self.p - b }
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> u32 {
        self.inverses[a as usize]
    }
}

struct FieldArith<'a>(&'a Fq);

impl Arith for FieldArith<'_> {
    fn sub(&self, a: u32, b: u32) -> u32 {
        self.0.sub(FqElem(a), FqElem(b)).0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul(FqElem(a), FqElem(b)).0
    }
    fn inv(&self, a: u32) -> u32 {
        self.0.inv(FqElem(a)).expect("nonzero").0
    }
}

fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Whether `gcd(a, b)` is a nonzero constant; `a` is nonconstant.
fn coprime<A: Arith>(ar: &A, a: &[u32], b: &[u32]) -> bool {
    let mut x = [0u32; MAX_DEG + 2];
    let mut y = [0u32; MAX_DEG + 2];
    x[..a.len()].copy_from_slice(a);
    y[..b.len()].copy_from_slice(b);
    let (mut x, mut y) = (&mut x, &mut y);
    let Some(mut dx) = degree(a) else { return false };
    let Some(mut dy) = degree(b) else { return dx == 0 };
    loop {
        if dy == 0 {
            return true;
        }
        // x <- x mod y
        let inv = ar.inv(y[dy]);
        loop {
            let c = ar.mul(x[dx], inv);
            let shift = dx - dy;
            for i in 0..dy {
                if y[i] != 0 {
                    x[i + shift] = ar.sub(x[i + shift], ar.mul(c, y[i]));
                }
            }
            x[dx] = 0;
            match x[..dx].iter().rposition(|&v| v != 0) {
                None => return false, // y divides x and y is nonconstant
                Some(d) => dx = d,
            }
            if dx < dy {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
        std::mem::swap(&mut dx, &mut dy);
    }
}

fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    match std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        Some(n) if n >= 1 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

/// Counts every `x` with `H(x) <= q^n` by `(h, mask)`.
pub fn region_histogram(fq: &Fq, phi: &PhiSpec, n: u32, budget: u128) -> Result<RegionHistogram> {
    check_budget(fq.order(), n, budget)?;
    if fq.degree() == 1 {
        histogram_with(&PrimeArith::new(fq.characteristic()), fq, phi, n)
    } else {
        histogram_with(&FieldArith(fq), fq, phi, n)
    }
}

fn histogram_with<A: Arith>(ar: &A, fq: &Fq, phi: &PhiSpec, n: u32) -> Result<RegionHistogram> {
    let q = fq.order();
    let nu = n as usize;
    let masks = 1usize << phi.bad_places.len();
    let pis: Vec<PolyFq> = phi
        .bad_places
        .iter()
        .map(|bp| match &bp.place {
            Place::Finite(pi) => pi.clone(),
            Place::Infinite => unreachable!("f is a polynomial"),
        })
        .collect();
    let full_mask = masks - 1;
    let den_jobs: Vec<(usize, u64)> = (0..=nu).flat_map(|k| (0..q.pow(k as u32)).map(move |i| (k, i))).collect();
    let merged = with_pool(|| {
        den_jobs
            .par_iter()
            .fold(
                || vec![vec![0u64; masks]; nu + 1],
                |mut hist, &(k, idx)| {
                    let den = poly_from_index(idx, k, q, true);
                    let mut mask = full_mask;
                    for (b, pi) in pis.iter().enumerate() {
                        if den.rem(pi, fq).expect("nonzero").is_zero() {
                            mask &= !(1 << b);
                        }
                    }
                    let dc: Vec<u32> = den.coeffs().iter().map(|c| c.0).collect();
                    // gcd(r + D*Q, D) = gcd(r, D): test residues r mod D, then
                    // each coprime r stands for the numerators r + D*Q
                    let coprime_residues = if k == 0 {
                        1
                    } else {
                        let mut r = [0u32; MAX_DEG + 1];
                        let mut c = 0u64;
                        for _ in 1..q.pow(k as u32) {
                            let mut j = 0;
                            loop {
                                r[j] += 1;
                                if r[j] as u64 == q {
                                    r[j] = 0;
                                    j += 1;
                                } else {
                                    break;
                                }
                            }
                            if coprime(ar, &dc, &r[..k]) {
                                c += 1;
                            }
                        }
                        c
                    };
                    // Q = 0 or deg Q = 0 both give h = k
                    hist[k][mask] += coprime_residues * q;
                    let mut scale = (q - 1) * q;
                    for h in k + 1..=nu {
                        hist[h][mask] += coprime_residues * scale;
                        scale *= q;
                    }
                    hist
                },
            )
            .reduce(
                || vec![vec![0u64; masks]; nu + 1],
                |mut a, b| {
                    for (ra, rb) in a.iter_mut().zip(b) {
                        for (x, y) in ra.iter_mut().zip(rb) {
                            *x += y;
                        }
                    }
                    a
                },
            )
    });
    Ok(RegionHistogram { max_h: n, counts: merged })
}

fn correction_of_mask(phi: &PhiSpec, mask: usize) -> u64 {
    phi.bad_places
        .iter()
        .enumerate()
        .filter(|(b, _)| mask >> b & 1 == 1)
        .map(|(_, bp)| bp.residue_degree as u64 * bp.vf as u64)
        .sum()
}

impl RegionHistogram {
    /// Canonical-height counts for `m <= max_m`; needs `max_h >= max_m / d`.
    pub fn canonical_counts(&self, phi: &PhiSpec, q: u64, max_m: u64) -> CountTable {
        let mut counts = vec![0u64; max_m as usize + 1];
        for (h, row) in self.counts.iter().enumerate() {
            for (mask, &c) in row.iter().enumerate() {
                let m = phi.d as u64 * h as u64 + correction_of_mask(phi, mask);
                if m <= max_m {
                    counts[m as usize] += c;
                }
            }
        }
        CountTable { d: phi.d, q, counts, max_m }
    }

    /// Standard-height counts on `D_T`: exactly the places in `t_mask` have
    /// `v(x) >= 0`.
    pub fn region_counts(&self, t_mask: usize) -> Vec<u64> {
        self.counts.iter().map(|row| row.get(t_mask).copied().unwrap_or(0)).collect()
    }

    /// Standard-height counts over all of `K`.
    pub fn standard_counts(&self) -> Vec<u64> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }
}

/// `a_m` for `m <= max_m`, by enumerating every `x` with `H(x) <= q^(max_m/d)`.
pub fn count_canonical_heights(fq: &Fq, phi: &PhiSpec, max_m: u64, budget: u128) -> Result<CountTable> {
    let n = (max_m / phi.d as u64) as u32;
    Ok(region_histogram(fq, phi, n, budget)?.canonical_counts(phi, fq.order(), max_m))
}

/// Standard-height counts on `D_T` for `h <= max_h`.
pub fn count_region(fq: &Fq, phi: &PhiSpec, t_mask: usize, max_h: u32, budget: u128) -> Result<Vec<u64>> {
    if t_mask >> phi.bad_places.len() != 0 {
        return Err(Error::Validation(format!("place subset {t_mask:#b} is not within the bad set")));
    }
    Ok(region_histogram(fq, phi, max_h, budget)?.region_counts(t_mask))
}

/// `N(B)` for `B = q^(k/d)`: elements with canonical height exponent `<= k`.
pub fn cumulative_count(fq: &Fq, phi: &PhiSpec, k: u64, budget: u128) -> Result<u64> {
    Ok(count_canonical_heights(fq, phi, k, budget)?.total())
}

/// Largest `n` with `q^(2n+1)` within budget.
pub fn max_height_within(q: u64, budget: u128) -> u32 {
    let mut n = 0;
    while n < MAX_DEG as u32 && element_count(q, n + 1) <= budget {
        n += 1;
    }
    n
}

/// Slow reference path: canonical heights straight from valuations, for
/// cross-checking the kernel.
pub fn count_canonical_heights_slow(fq: &Fq, phi: &PhiSpec, max_m: u64, budget: u128) -> Result<BTreeMap<u64, u64>> {
    let n = (max_m / phi.d as u64) as u32;
    let mut out = BTreeMap::new();
    for x in enumerate_elements(fq, n, budget)? {
        let m = crate::places::canonical_height_exp(&x, phi, fq).0;
        if m <= max_m {
            *out.entry(m).or_insert(0) += 1;
        }
    }
    Ok(out)
}
