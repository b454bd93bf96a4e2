//! Exact asymptotics of `N(B) = #{x : H(x) <= B}` from the poles of a
//! rational height zeta function, plus the Stirling/Bernoulli identities the
//! derivation rests on.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratfunc_q::poles::{orbit_contribution, principal_part_remainder, unit_disk_poles, with_laurent};
use crate::ratfunc_q::{complex_roots, q_int, q_to_f64, PoleRecord, QRatFunc, Q};

pub const MAX_TABLE_N: u32 = 64;

/// Stirling numbers of the second kind and Bernoulli numbers (`B_1 = -1/2`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatoricsTables {
    /// `stirling2[n][k]` for `k <= n`.
    pub stirling2: Vec<Vec<BigUint>>,
    pub bernoulli: Vec<Q>,
}

impl CombinatoricsTables {
    pub fn new(n_max: u32) -> Result<CombinatoricsTables> {
        if n_max > MAX_TABLE_N {
            return Err(Error::Validation(format!("table size {n_max} exceeds {MAX_TABLE_N}")));
        }
        let n = n_max as usize;
        let mut s = vec![vec![BigUint::zero()]; 1];
        s[0][0] = BigUint::one();
        for i in 1..=n {
            let mut row = vec![BigUint::zero(); i + 1];
            for k in 1..=i {
                let prev = &s[i - 1];
                let same = prev.get(k).cloned().unwrap_or_default() * BigUint::from(k);
                row[k] = same + &prev[k - 1];
            }
            s.push(row);
        }
        Ok(CombinatoricsTables { stirling2: s, bernoulli: bernoulli_table(n) })
    }
}

/// `{n k}` from `{n k} = k {n-1 k} + {n-1 k-1}`, `{0 0} = 1`.
pub fn stirling2(n: u32, k: u32) -> Result<BigUint> {
    if k > n || n > MAX_TABLE_N {
        return Err(Error::Validation(format!("stirling2({n}, {k}) out of range")));
    }
    Ok(CombinatoricsTables::new(n)?.stirling2[n as usize][k as usize].clone())
}

/// Taylor coefficients of `x/(e^x - 1)`, inverted from `(e^x - 1)/x`.
fn bernoulli_table(n: usize) -> Vec<Q> {
    // (e^x - 1)/x = sum x^j/(j+1)!
    let mut fact = vec![BigInt::one()];
    for j in 1..=n + 1 {
        fact.push(&fact[j - 1] * BigInt::from(j));
    }
    let e: Vec<Q> = (0..=n).map(|j| Q::new(BigInt::one(), fact[j + 1].clone())).collect();
    let inv = series_inverse(&e, n + 1);
    inv.into_iter().enumerate().map(|(k, c)| c * Q::from_integer(fact[k].clone())).collect()
}

pub fn bernoulli(n: u32) -> Result<Q> {
    if n > MAX_TABLE_N {
        return Err(Error::Validation(format!("bernoulli({n}) out of range")));
    }
    Ok(bernoulli_table(n as usize)[n as usize].clone())
}

fn series_mul(a: &[Q], b: &[Q], len: usize) -> Vec<Q> {
    (0..len)
        .map(|k| {
            (0..=k)
                .filter_map(|i| Some(a.get(i)? * b.get(k - i)?))
                .fold(Q::zero(), |acc, x| acc + x)
        })
        .collect()
}

fn series_inverse(a: &[Q], len: usize) -> Vec<Q> {
    let inv0 = a[0].recip();
    let mut out = vec![inv0.clone()];
    for k in 1..len {
        let s = (1..=k).filter_map(|i| Some(a.get(i)? * &out[k - i])).fold(Q::zero(), |acc, x| acc + x);
        out.push(-s * &inv0);
    }
    out
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Compares, coefficient by coefficient up to `x^m`, the two Laurent
/// expansions
///
/// `sum_k (-1)^(n+k) (k-1)!/(n-1)! {n k} (1 - e^(-x))^(-k)`
///
/// and `x^(-n) - 1/(n-1)! sum_j B_(j+n)/(j+n) (-x)^j/j!`.
///
/// Returns the first mismatching exponent, if any.
pub fn stirling_bernoulli_mismatch(n: u32, m: u32) -> Result<Option<i64>> {
    if n == 0 || n + m > MAX_TABLE_N {
        return Err(Error::Validation(format!("need 1 <= n and n + M <= {MAX_TABLE_N}")));
    }
    let tables = CombinatoricsTables::new(n + m)?;
    let (n_us, m_us) = (n as usize, m as usize);
    // coefficient of x^j sits at index j + n
    let len = n_us + m_us + 1;
    let mut lhs = vec![Q::zero(); len];
    // 1 - e^(-x) = x * E(x), E = sum (-1)^j x^j/(j+1)!
    let e: Vec<Q> = (0..len)
        .map(|j| {
            let c = Q::new(BigInt::one(), factorial(j as u32 + 1));
            if j % 2 == 0 { c } else { -c }
        })
        .collect();
    let e_inv = series_inverse(&e, len);
    let mut e_inv_k = vec![Q::one()];
    let nf = factorial(n - 1);
    for k in 1..=n_us {
        e_inv_k = series_mul(&e_inv_k, &e_inv, len);
        let mut w = Q::new(factorial(k as u32 - 1), nf.clone())
            * Q::from_integer(BigInt::from(tables.stirling2[n_us][k].clone()));
        if (n_us + k) % 2 == 1 {
            w = -w;
        }
        // x^(-k) * E^(-k): x^j coefficient is e_inv_k[j + k]
        for (idx, slot) in lhs.iter_mut().enumerate() {
            let j = idx as i64 - n as i64;
            let src = j + k as i64;
            if src >= 0 && (src as usize) < e_inv_k.len() {
                *slot += &w * &e_inv_k[src as usize];
            }
        }
    }
    let mut rhs = vec![Q::zero(); len];
    rhs[0] = Q::one();
    for j in 0..=m_us {
        let b = &tables.bernoulli[j + n_us];
        let mut c = b / q_int((j + n_us) as i64) / Q::from_integer(factorial(j as u32)) / Q::from_integer(nf.clone());
        if j % 2 == 1 {
            c = -c;
        }
        rhs[j + n_us] -= c;
    }
    Ok(lhs.iter().zip(&rhs).position(|(a, b)| a != b).map(|i| i as i64 - n as i64))
}

pub fn stirling_bernoulli_check(n: u32, m: u32) -> Result<bool> {
    Ok(stirling_bernoulli_mismatch(n, m)?.is_none())
}

/// `x^n = sum_k (-1)^(n-k) {n k} (x)_k` with the rising factorial, for every
/// integer `x` in `0..=xmax`.
pub fn stirling_pochhammer_check(n: u32, xmax: u32) -> Result<bool> {
    if n > 12 {
        return Err(Error::Validation("n must be at most 12".into()));
    }
    let tables = CombinatoricsTables::new(n)?;
    for x in 0..=xmax {
        let xb = BigInt::from(x);
        let mut rising = BigInt::one();
        let mut sum = BigInt::zero();
        for k in 0..=n {
            if k > 0 {
                rising *= &xb + BigInt::from(k - 1);
            }
            let term = BigInt::from(tables.stirling2[n as usize][k as usize].clone()) * &rising;
            if (n - k) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        if sum != xb.pow(n) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Pole data of `Z` in the normalized variable `u = alpha^(-s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticReport {
    /// `alpha = q^(e/d)`.
    pub alpha_exponent: u32,
    /// `Z` in `u = w^e`.
    pub normalized: QRatFunc,
    pub pole_records: Vec<PoleRecord>,
    /// `G = Z - sum of principal parts`.
    pub remainder: QRatFunc,
    /// Upper bound `r < 1` on the decay rate of `G`'s coefficients
    /// (0 when `G` is a polynomial).
    pub decay_base: f64,
}

/// Inflation applied to the numerically computed decay rate.
const DECAY_MARGIN: f64 = 1e-9;

pub fn analyze(z: &QRatFunc) -> Result<AsymptoticReport> {
    if z.is_zero() {
        return Err(Error::Validation("zero zeta function has no poles".into()));
    }
    let (e, normalized) = z.exponent_gcd_normalize();
    let recs = with_laurent(&normalized, unit_disk_poles(&normalized)?)?;
    let remainder = principal_part_remainder(&normalized, &recs)?;
    let decay_base = if remainder.den().is_constant() {
        0.0
    } else {
        let den = remainder.den();
        let squarefree = den.exact_div(&den.gcd(&den.derivative()))?;
        let min_mod = complex_roots(&squarefree).iter().map(|r| r.norm()).fold(f64::INFINITY, f64::min);
        (1.0 / min_mod) * (1.0 + DECAY_MARGIN)
    };
    if decay_base >= 1.0 {
        return Err(Error::Internal(format!("remainder decay rate {decay_base} is not below 1")));
    }
    Ok(AsymptoticReport { alpha_exponent: e, normalized, pole_records: recs, remainder, decay_base })
}

/// `p_m`, the exact contribution of all poles with `Re(a) >= 0` to the
/// coefficient of `u^m`.
pub fn predicted_coefficient(report: &AsymptoticReport, m: u64) -> Result<Q> {
    report
        .pole_records
        .iter()
        .try_fold(Q::zero(), |acc, rec| Ok(acc + orbit_contribution(rec, m)?))
}

/// Main term for `B = q^(k/d)`: the sum of `p_m` over `alpha^m <= B`, that is
/// over `m <= floor(k/e)`.
pub fn main_term(report: &AsymptoticReport, k: u64) -> Result<Q> {
    let top = k / report.alpha_exponent as u64;
    (0..=top).try_fold(Q::zero(), |acc, m| Ok(acc + predicted_coefficient(report, m)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RemainderCheck {
    /// `a_m - p_m`, which must equal the coefficients of `G`.
    pub differences: Vec<Q>,
    /// `a_m - p_m` agreed with the coefficients of `G` for every `m`.
    pub matches_remainder: bool,
    /// `|a_m - p_m| <= C rho^m` for all `m`, with `rho = (1 + r)/2` and `C`
    /// fitted on the first half of the range.
    pub decays: bool,
    /// `max |a_m - p_m|` over the range.
    pub max_abs: f64,
}

impl RemainderCheck {
    pub fn holds(&self) -> bool {
        self.matches_remainder && self.decays
    }
}

pub fn remainder_check(report: &AsymptoticReport, m_max: usize) -> Result<RemainderCheck> {
    if m_max > 200 {
        return Err(Error::Validation("remainder check is limited to M <= 200".into()));
    }
    let a = report.normalized.series_coefficients(m_max)?;
    let g = report.remainder.series_coefficients(m_max)?;
    let mut differences = Vec::with_capacity(m_max + 1);
    for (m, am) in a.iter().enumerate() {
        differences.push(am - predicted_coefficient(report, m as u64)?);
    }
    let matches_remainder = differences == g;
    let mags: Vec<f64> = differences.iter().map(|d| q_to_f64(&d.abs())).collect();
    let rho = (1.0 + report.decay_base) / 2.0;
    let fit_upto = (m_max / 2).max(report.remainder.num().deg0().saturating_sub(report.remainder.den().deg0()) + 1);
    let c = mags
        .iter()
        .enumerate()
        .take(fit_upto + 1)
        .map(|(m, x)| x / rho.powi(m as i32))
        .fold(0.0, f64::max);
    let decays = mags.iter().enumerate().all(|(m, x)| *x <= c * rho.powi(m as i32) * (1.0 + 1e-12));
    let max_abs = mags.iter().cloned().fold(0.0, f64::max);
    Ok(RemainderCheck { differences, matches_remainder, decays, max_abs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc_q::{q_frac, QPoly, Var};

    fn rf(num: &[i64], den: &[i64], var: Var) -> QRatFunc {
        QRatFunc::new(QPoly::from_ints(num), QPoly::from_ints(den), var).unwrap()
    }

    #[test]
    fn stirling_values() {
        for n in 0..=10 {
            assert_eq!(stirling2(n, n).unwrap(), BigUint::one());
        }
        for n in 1..=10 {
            assert!(stirling2(n, 0).unwrap().is_zero());
        }
        assert_eq!(stirling2(4, 2).unwrap(), BigUint::from(7u32));
        assert!(stirling2(3, 4).is_err());
        assert!(stirling2(65, 1).is_err());
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0).unwrap(), q_int(1));
        assert_eq!(bernoulli(1).unwrap(), q_frac(-1, 2));
        assert_eq!(bernoulli(2).unwrap(), q_frac(1, 6));
        assert_eq!(bernoulli(12).unwrap(), q_frac(-691, 2730));
        let t = CombinatoricsTables::new(40).unwrap();
        for n in (3..=40).step_by(2) {
            assert!(t.bernoulli[n].is_zero());
        }
        // sum_{k<=n} C(n+1,k) B_k = 0
        for n in 1..40usize {
            let mut binom = BigInt::one();
            let mut s = Q::zero();
            for k in 0..=n {
                s += Q::from_integer(binom.clone()) * &t.bernoulli[k];
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            assert!(s.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn stirling_bernoulli_identity() {
        assert!(stirling_bernoulli_check(1, 6).unwrap());
        assert!(stirling_bernoulli_check(2, 10).unwrap());
        assert!(stirling_bernoulli_check(5, 20).unwrap());
        for n in 1..=8 {
            assert!(stirling_bernoulli_check(n, 20).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn pochhammer_identity() {
        assert!(stirling_pochhammer_check(1, 5).unwrap());
        assert!(stirling_pochhammer_check(3, 2).unwrap());
        for n in 1..=10 {
            assert!(stirling_pochhammer_check(n, 20).unwrap());
        }
    }

    #[test]
    fn genus0_report() {
        let z = rf(&[0, 5, -5], &[1, -5], Var::new(5, 2));
        let rep = analyze(&z).unwrap();
        assert_eq!(rep.alpha_exponent, 1);
        assert_eq!(rep.decay_base, 0.0);
        for m in 0..8u32 {
            assert_eq!(predicted_coefficient(&rep, m as u64).unwrap(), q_int(4) * q_int(5).pow(m as i32) / q_int(5));
        }
        assert_eq!(main_term(&rep, 6).unwrap(), q_frac(5i64.pow(7) - 1, 5));
        assert_eq!(main_term(&rep, 0).unwrap(), q_frac(4, 5));
        let chk = remainder_check(&rep, 20).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.differences[..3], [q_frac(-4, 5), q_int(1), q_int(0)]);
    }

    #[test]
    fn trivial_pole() {
        let rep = analyze(&rf(&[1], &[1, -1], Var::new(2, 1))).unwrap();
        assert_eq!(predicted_coefficient(&rep, 7).unwrap(), q_int(1));
        assert!(remainder_check(&rep, 30).unwrap().differences.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn double_pole_and_outer_poles() {
        // 1/((1-5w)^2 (1-w/3))
        let den = &QPoly::from_ints(&[1, -5]).pow(2) * &QPoly::from_ints(&[3, -1]);
        let z = QRatFunc::new(QPoly::from_ints(&[3]), den, Var::new(5, 1)).unwrap();
        let rep = analyze(&z).unwrap();
        assert_eq!(rep.pole_records.len(), 1);
        assert_eq!(rep.pole_records[0].order, 2);
        assert!((rep.decay_base - 1.0 / 3.0).abs() < 1e-9);
        let chk = remainder_check(&rep, 40).unwrap();
        assert!(chk.holds(), "{chk:?}");
    }
}
