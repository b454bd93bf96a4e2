//! Poles of `Z(u)` with `|u_0| <= 1` (that is `Re(a) >= 0`), their Laurent
//! coefficients in `s`, and the exact orbit sums they contribute.
//!
//! Near `s = a` we write `u = u_0 * exp(-tau)` with `tau = (s - a) log alpha`,
//! so `c_n` is the coefficient of `tau^(-n)` and `log alpha` never appears as
//! a number.

use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ratfunc_q::number_field::NumberFieldElem;
use crate::ratfunc_q::qpoly::{q_int, q_to_f64, QPoly, Q};
use crate::ratfunc_q::qratfunc::{QRatFunc, Var};
use crate::ratfunc_q::roots::complex_roots;
use crate::ratfunc_q::zfactor::qpoly_factor;

/// Relative tolerance when checking that a factor's roots share one modulus.
pub const EQUAL_MODULUS_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct PoleRecord {
    /// Irreducible denominator factor `p(u)`, primitive with `p(0) > 0`.
    pub factor: QPoly,
    /// Pole order `N`.
    pub order: u32,
    /// Common modulus of the roots of `p`.
    pub modulus: f64,
    /// `c_1..c_N` in `Q[u]/(p)`; empty until filled.
    pub laurent: Vec<NumberFieldElem>,
    /// `alpha = q^(e/d)`.
    pub alpha_exponent: u32,
    pub var: Var,
    /// `(Re a, Im a)` for each root, with `0 <= Im a < 2 pi / log alpha`.
    pub numeric_poles: Vec<(f64, f64)>,
}

impl PoleRecord {
    /// Real part shared by every pole of the record.
    pub fn real_part(&self) -> f64 {
        -self.modulus.ln() / self.var.log_alpha()
    }

    pub fn field_generator(&self) -> NumberFieldElem {
        NumberFieldElem::generator(&self.factor)
    }
}

/// Strip representative of `a` with `alpha^(-a) = u0`.
pub fn pole_location(u0: num_complex::Complex64, log_alpha: f64) -> (f64, f64) {
    let mut theta = u0.arg();
    if theta > 0.0 {
        theta -= 2.0 * PI;
    }
    let re = -u0.norm().ln() / log_alpha;
    let im = -theta / log_alpha;
    // -0.0 reads badly in reports
    (re + 0.0, im + 0.0)
}

/// Checks that every root of `p` has modulus `|c_0/c_k|^(1/k)`.
fn common_modulus(p: &QPoly) -> Result<f64> {
    let k = p.deg0();
    let ratio = (p.coeff(0) / p.leading()).abs();
    let expected = q_to_f64(&ratio).powf(1.0 / k as f64);
    for z in complex_roots(p) {
        if (z.norm() - expected).abs() > EQUAL_MODULUS_TOL * expected.max(1.0) {
            return Err(Error::MixedModulus(format!(
                "factor {p} has a root of modulus {:.12} but |c0/ck|^(1/k) = {expected:.12}",
                z.norm()
            )));
        }
    }
    Ok(expected)
}

/// Denominator factors whose roots lie in the closed unit disk, without
/// Laurent coefficients.
pub fn unit_disk_poles(z: &QRatFunc) -> Result<Vec<PoleRecord>> {
    let var = z.var();
    let den = z.den();
    if den.coeff(0).is_zero() {
        return Err(Error::Validation("denominator vanishes at w = 0".into()));
    }
    if den.is_constant() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (p, mult) in qpoly_factor(den)?.factors {
        let modulus = common_modulus(&p)?;
        let k = p.deg0();
        // exact: modulus <= 1 iff |c0| <= |ck|
        if p.coeff(0).abs() > p.coeff(k).abs() {
            continue;
        }
        let mut numeric_poles: Vec<(f64, f64)> =
            complex_roots(&p).into_iter().map(|u0| pole_location(u0, var.log_alpha())).collect();
        numeric_poles.sort_by(|a, b| a.1.total_cmp(&b.1));
        out.push(PoleRecord {
            factor: p,
            order: mult,
            modulus,
            laurent: Vec::new(),
            alpha_exponent: var.e,
            var,
            numeric_poles,
        });
    }
    // dominant poles (largest Re a) first
    out.sort_by(|a, b| a.modulus.total_cmp(&b.modulus).then(a.factor.deg0().cmp(&b.factor.deg0())));
    Ok(out)
}

type Series = Vec<NumberFieldElem>;

fn series_mul(a: &Series, b: &Series, len: usize, zero: &NumberFieldElem) -> Series {
    (0..len)
        .map(|k| {
            (0..=k).fold(zero.clone(), |acc, i| match (a.get(i), b.get(k - i)) {
                (Some(x), Some(y)) => &acc + &(x * y),
                _ => acc,
            })
        })
        .collect()
}

fn series_inv(a: &Series, len: usize, zero: &NumberFieldElem) -> Result<Series> {
    let inv0 = a[0].inv().map_err(|_| Error::Internal("series inverse at a pole".into()))?;
    let mut out: Series = vec![inv0.clone()];
    for k in 1..len {
        let mut s = zero.clone();
        for i in 1..=k {
            if let Some(ai) = a.get(i) {
                s = &s + &(ai * &out[k - i]);
            }
        }
        out.push(-&(&s * &inv0));
    }
    Ok(out)
}

/// `P(u_0 exp(-tau))` as a power series in `tau` with `len` terms.
fn substituted_series(p: &QPoly, u0_pows: &[NumberFieldElem], len: usize, zero: &NumberFieldElem) -> Series {
    let mut out = Vec::with_capacity(len);
    let mut fact = Q::one();
    for j in 0..len {
        if j > 0 {
            fact *= q_int(j as i64);
        }
        let mut acc = zero.clone();
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = c * q_int(-(k as i64)).pow(j as i32) / &fact;
            acc = &acc + &u0_pows[k].scale(&w);
        }
        out.push(acc);
    }
    out
}

/// `c_1..c_N` for the poles of `rec.factor`.
pub fn laurent_at_pole(z: &QRatFunc, rec: &PoleRecord) -> Result<Vec<NumberFieldElem>> {
    let p = &rec.factor;
    let n = rec.order as usize;
    let mut rest = z.den().clone();
    for _ in 0..n {
        rest = rest
            .exact_div(p)
            .map_err(|_| Error::Internal(format!("{p} does not divide the denominator {n} times")))?;
    }
    if rest.rem(p)?.is_zero() {
        return Err(Error::Internal(format!("{p} divides the denominator more than {n} times")));
    }
    let zero = NumberFieldElem::zero(p);
    let u0 = NumberFieldElem::generator(p);
    let top = z.num().deg0().max(rest.deg0()).max(p.deg0());
    let mut pows = vec![NumberFieldElem::from_q(p, Q::one())];
    for k in 1..=top {
        pows.push(&pows[k - 1] * &u0);
    }
    let pser = substituted_series(p, &pows, n + 1, &zero);
    if !pser[0].is_zero() {
        return Err(Error::Internal("generator is not a root of its modulus".into()));
    }
    let p1: Series = pser[1..].to_vec();
    let mut den_ser = substituted_series(&rest, &pows, n, &zero);
    for _ in 0..n {
        den_ser = series_mul(&den_ser, &p1, n, &zero);
    }
    let num_ser = substituted_series(z.num(), &pows, n, &zero);
    let q = series_mul(&num_ser, &series_inv(&den_ser, n, &zero)?, n, &zero);
    Ok((1..=n).map(|k| q[n - k].clone()).collect())
}

/// Fills the Laurent coefficients of every record.
pub fn with_laurent(z: &QRatFunc, recs: Vec<PoleRecord>) -> Result<Vec<PoleRecord>> {
    recs.into_iter()
        .map(|mut r| {
            r.laurent = laurent_at_pole(z, &r)?;
            Ok(r)
        })
        .collect()
}

/// `Tr_{F/Q}(u^(-m) * sum_n c_n m^(n-1)/(n-1)!)`: the exact sum of
/// `alpha^(am) * (...)` over the conjugate poles of the record.
pub fn orbit_contribution(rec: &PoleRecord, m: u64) -> Result<Q> {
    if rec.factor.coeff(0).is_zero() {
        return Err(Error::Validation("factor vanishes at u = 0; u is not invertible".into()));
    }
    if rec.laurent.is_empty() {
        return Err(Error::Validation("Laurent coefficients not filled".into()));
    }
    let p = &rec.factor;
    let mq = q_int(m as i64);
    let mut weight = Q::one(); // m^(n-1)/(n-1)!, with 0^0 = 1
    let mut inner = NumberFieldElem::zero(p);
    for (i, c) in rec.laurent.iter().enumerate() {
        if i > 0 {
            weight = weight * &mq / q_int(i as i64);
        }
        inner = &inner + &c.scale(&weight);
    }
    let u_inv_m = rec.field_generator().pow(-(m as i64))?;
    Ok((&u_inv_m * &inner).trace())
}

/// The principal part of a record as a rational function of `u`: the
/// generating function of its orbit contributions.
pub fn principal_part(rec: &PoleRecord) -> Result<QRatFunc> {
    let pn = rec.factor.pow(rec.order);
    let len = pn.deg0();
    let mut series = Vec::with_capacity(len);
    for m in 0..len {
        series.push(orbit_contribution(rec, m as u64)?);
    }
    let numer = (&QPoly::new(series) * &pn).truncate(len);
    QRatFunc::new(numer, pn, rec.var)
}

/// `G = Z - sum of principal parts`; its denominator must be coprime to every
/// retained factor.
pub fn principal_part_remainder(z: &QRatFunc, recs: &[PoleRecord]) -> Result<QRatFunc> {
    let mut g = z.clone();
    for rec in recs {
        g = g.sub(&principal_part(rec)?);
    }
    for rec in recs {
        if g.den().gcd(&rec.factor).deg0() > 0 {
            return Err(Error::Internal(format!(
                "remainder still has a pole on the factor {}",
                rec.factor
            )));
        }
    }
    Ok(g)
}
