//! The dynamical height zeta function of `z^d + 1/f` and the partial zeta
//! functions of the regions it decomposes into, all as exact rational
//! functions of `w = q^(-s/d)`.
//!
//! Throughout, `x = q^(-s) = w^d` and, at a place `v` of residue degree
//! `f_v`, `u_v = q_v^(-s/d) = w^(f_v)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::field::prime_power;
use crate::gf::Fq;
use crate::places::{validate_phi, PhiSpec};
use crate::ratfunc_q::{QPoly, QRatFunc, Var, Q};

/// `(f_v, v(f))` for one bad place.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BadPlaceData {
    pub f_v: u32,
    pub vf: u32,
}

/// Everything the closed form depends on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    pub q: u64,
    pub genus: u32,
    /// Trace of Frobenius `a`, with `#E(F_q) = q + 1 - a`; zero in genus 0.
    pub frobenius_trace: i64,
    pub d: u32,
    pub bad_places: Vec<BadPlaceData>,
    /// The map itself, when known (genus 0 only).
    pub source: Option<PhiSpec>,
}

impl ProblemSpec {
    pub fn new(q: u64, genus: u32, frobenius_trace: i64, d: u32, bad_places: Vec<BadPlaceData>) -> Result<ProblemSpec> {
        let spec = ProblemSpec { q, genus, frobenius_trace, d, bad_places, source: None };
        spec.validate()?;
        Ok(spec)
    }

    /// Genus-0 spec read off from `f`.
    pub fn from_phi(fq: &Fq, f: &crate::gf::PolyFq, d: u32) -> Result<ProblemSpec> {
        let phi = validate_phi(f, d, fq)?;
        let bad_places = phi
            .bad_places
            .iter()
            .map(|bp| BadPlaceData { f_v: bp.residue_degree, vf: bp.vf })
            .collect();
        let spec = ProblemSpec {
            q: fq.order(),
            genus: 0,
            frobenius_trace: 0,
            d,
            bad_places,
            source: Some(phi),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q < 2 || prime_power(self.q).is_none() {
            return Err(Error::Validation(format!("q = {} is not a prime power", self.q)));
        }
        if self.genus > 1 {
            return Err(Error::Validation(format!("genus {} unsupported (only 0 and 1)", self.genus)));
        }
        if self.d < 2 {
            return Err(Error::Validation(format!("map degree d = {} must be at least 2", self.d)));
        }
        if self.genus == 0 && self.frobenius_trace != 0 {
            return Err(Error::Validation("frobenius_trace must be 0 in genus 0".into()));
        }
        let a = self.frobenius_trace as i128;
        if a * a > 4 * self.q as i128 {
            return Err(Error::Validation(format!(
                "Hasse bound violated: |{}| > 2*sqrt({})",
                self.frobenius_trace, self.q
            )));
        }
        if self.bad_places.len() > 30 {
            return Err(Error::Validation("more than 30 bad places".into()));
        }
        for bp in &self.bad_places {
            if bp.f_v == 0 {
                return Err(Error::Validation("residue degree f_v must be positive".into()));
            }
            if bp.vf == 0 || bp.vf >= self.d {
                return Err(Error::Validation(format!(
                    "v(f) < d violated: v(f) = {}, d = {}",
                    bp.vf, self.d
                )));
            }
        }
        Ok(())
    }

    /// The variable `w = q^(-s/d)`.
    pub fn var(&self) -> Var {
        Var::new(self.q, self.d)
    }

    /// `c(g)`: 0 in genus 0, `q - 1` in genus 1.
    pub fn c_genus(&self) -> Q {
        if self.genus == 0 {
            Q::zero()
        } else {
            q_u(self.q) - Q::one()
        }
    }

    fn qv(&self, bp: &BadPlaceData) -> Q {
        Q::from_integer(BigInt::from(self.q).pow(bp.f_v))
    }

    /// Number of subsets of the bad set.
    pub fn subset_count(&self) -> u64 {
        1u64 << self.bad_places.len()
    }
}

fn q_u(n: u64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// `main_term + correction_term = combined`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaClosedForm {
    pub main_term: QRatFunc,
    pub correction_term: QRatFunc,
    pub combined: QRatFunc,
}

fn poly(terms: &[(Q, usize)]) -> QPoly {
    terms.iter().fold(QPoly::zero(), |acc, (c, k)| &acc + &QPoly::monomial(c.clone(), *k))
}

/// `zeta_K` in `x = q^(-s)`: `L(x)/((1-x)(1-qx))` with `L = 1` in genus 0 and
/// `L = 1 - a x + q x^2` in genus 1.
pub fn dedekind_zeta(genus: u32, q: u64, trace: i64) -> Result<QRatFunc> {
    let qq = q_u(q);
    let numer = match genus {
        0 => QPoly::one(),
        1 => poly(&[(Q::one(), 0), (-Q::from_integer(trace.into()), 1), (qq.clone(), 2)]),
        g => return Err(Error::Validation(format!("genus {g} unsupported (only 0 and 1)"))),
    };
    let den = &QPoly::from_ints(&[1, -1]) * &poly(&[(Q::one(), 0), (-qq, 1)]);
    QRatFunc::new(numer, den, Var::new(q, 1))
}

/// `(u^vf + (q_v-1) u^d - q_v u^(d+vf)) / (1 - u^d)` as polynomials in `u`.
fn local_bad_parts(qv: &Q, vf: u32, d: u32) -> (QPoly, QPoly) {
    let (vf, d) = (vf as usize, d as usize);
    let num = poly(&[(Q::one(), vf), (qv - Q::one(), d), (-qv.clone(), d + vf)]);
    let den = poly(&[(Q::one(), 0), (-Q::one(), d)]);
    (num, den)
}

/// The local factor at a bad place, in `u_v = q_v^(-s/d)`.
pub fn local_bad_factor(qv: u64, vf: u32, d: u32) -> Result<QRatFunc> {
    if vf == 0 || vf >= d {
        return Err(Error::Validation(format!("v(f) < d violated: v(f) = {vf}, d = {d}")));
    }
    let (num, den) = local_bad_parts(&q_u(qv), vf, d);
    QRatFunc::new(num, den, Var::new(qv, d))
}

/// `q^(1-g) zeta(s-1)/zeta(s)` in `w`.
fn zeta_ratio(spec: &ProblemSpec) -> Result<QRatFunc> {
    let z = dedekind_zeta(spec.genus, spec.q, spec.frobenius_trace)?;
    let shifted = z.scale_var(&q_u(spec.q));
    let mut r = shifted.checked_div(&z)?;
    if spec.genus == 0 {
        r = r.scale(&q_u(spec.q));
    }
    Ok(r.stretch(spec.d))
}

fn from_parts(num: QPoly, den: QPoly, f_v: u32, var: Var) -> QRatFunc {
    QRatFunc::new(num.stretch(f_v as usize), den.stretch(f_v as usize), var).expect("nonzero denominator")
}

/// `q^(1-g) zeta(s-1)/zeta(s) * prod over bad places of the local factor`.
pub fn adelic_integral(spec: &ProblemSpec) -> Result<QRatFunc> {
    spec.validate()?;
    let var = spec.var();
    let mut acc = zeta_ratio(spec)?;
    for bp in &spec.bad_places {
        let (num, den) = local_bad_parts(&spec.qv(bp), bp.vf, spec.d);
        acc = acc.mul(&from_parts(num, den, bp.f_v, var));
    }
    Ok(acc)
}

/// `c(g)/zeta(s) * prod (u_v^vf - u_v^d)/(1 - u_v^d)`.
pub fn correction_term(spec: &ProblemSpec) -> Result<QRatFunc> {
    spec.validate()?;
    let var = spec.var();
    let c = spec.c_genus();
    if c.is_zero() {
        return Ok(QRatFunc::zero(var));
    }
    let inv_zeta = dedekind_zeta(spec.genus, spec.q, spec.frobenius_trace)?.recip()?.stretch(spec.d);
    let mut acc = inv_zeta.scale(&c);
    let d = spec.d as usize;
    for bp in &spec.bad_places {
        let num = poly(&[(Q::one(), bp.vf as usize), (-Q::one(), d)]);
        let den = poly(&[(Q::one(), 0), (-Q::one(), d)]);
        acc = acc.mul(&from_parts(num, den, bp.f_v, var));
    }
    Ok(acc)
}

pub fn assemble_zeta(spec: &ProblemSpec) -> Result<ZetaClosedForm> {
    let main_term = adelic_integral(spec)?;
    let correction_term = correction_term(spec)?;
    let combined = main_term.add(&correction_term);
    Ok(ZetaClosedForm { main_term, correction_term, combined })
}

/// Bit `i` of a mask selects `spec.bad_places[i]`.
fn selected(spec: &ProblemSpec, mask: u64) -> impl Iterator<Item = &BadPlaceData> {
    spec.bad_places.iter().enumerate().filter(move |(i, _)| mask >> i & 1 == 1).map(|(_, bp)| bp)
}

fn check_mask(spec: &ProblemSpec, mask: u64) -> Result<()> {
    if mask >= spec.subset_count() {
        return Err(Error::Validation(format!("place subset {mask:#b} is not within the bad set")));
    }
    Ok(())
}

/// Height zeta of `D(U) = {x : v(x) >= 0 for v in U}` for the standard height,
/// in `w` (so `H(x)^(-s) = w^(d h)`).
pub fn partial_zeta_du(spec: &ProblemSpec, u_mask: u64) -> Result<QRatFunc> {
    spec.validate()?;
    check_mask(spec, u_mask)?;
    let var = spec.var();
    let d = spec.d as usize;
    let mut main = zeta_ratio(spec)?;
    let mut prod_den = QRatFunc::one(var);
    for bp in selected(spec, u_mask) {
        // (1 - q_v x_v)/(1 - x_v) with x_v = w^(d f_v)
        let one_minus = poly(&[(Q::one(), 0), (-Q::one(), d)]);
        let num = poly(&[(Q::one(), 0), (-spec.qv(bp), d)]);
        main = main.mul(&from_parts(num, one_minus.clone(), bp.f_v, var));
        prod_den = prod_den.mul(&from_parts(one_minus, QPoly::one(), bp.f_v, var));
    }
    let c = spec.c_genus();
    if c.is_zero() {
        return Ok(main);
    }
    let zeta = dedekind_zeta(spec.genus, spec.q, spec.frobenius_trace)?.stretch(spec.d);
    let corr = QRatFunc::constant(c, var).checked_div(&zeta.mul(&prod_den))?;
    Ok(main.add(&corr))
}

/// Height zeta of `D_T = {x : v(x) >= 0 on T, v(x) < 0 on S \ T}`, by
/// inclusion-exclusion over [`partial_zeta_du`].
pub fn partial_zeta_dt(spec: &ProblemSpec, t_mask: u64) -> Result<QRatFunc> {
    check_mask(spec, t_mask)?;
    let rest = (spec.subset_count() - 1) & !t_mask;
    let mut acc = QRatFunc::zero(spec.var());
    // iterate over all submasks v of rest
    let mut v = rest;
    loop {
        let w = partial_zeta_du(spec, t_mask | v)?;
        acc = if v.count_ones() % 2 == 0 { acc.add(&w) } else { acc.sub(&w) };
        if v == 0 {
            break;
        }
        v = (v - 1) & rest;
    }
    Ok(acc)
}

/// `rho_T^(-s) = w^(sum over T of f_v v(f))`.
pub fn rho_exponent(spec: &ProblemSpec, t_mask: u64) -> u64 {
    selected(spec, t_mask).map(|bp| bp.f_v as u64 * bp.vf as u64).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionCheck {
    pub holds: bool,
    /// The assembled closed form.
    pub closed_form: QRatFunc,
    /// `sum over T of rho_T^(-s) W(D_T, s)`.
    pub region_sum: QRatFunc,
}

impl DecompositionCheck {
    /// `closed_form - region_sum`, zero when the check holds.
    pub fn diff(&self) -> QRatFunc {
        self.closed_form.sub(&self.region_sum)
    }
}

/// Checks `Z = sum over T of rho_T^(-s) W(D_T, s)` as rational functions.
pub fn decomposition_check(spec: &ProblemSpec) -> Result<DecompositionCheck> {
    let closed_form = assemble_zeta(spec)?.combined;
    let var = spec.var();
    let mut region_sum = QRatFunc::zero(var);
    for t in 0..spec.subset_count() {
        let shift = QRatFunc::from_poly(QPoly::monomial(Q::one(), rho_exponent(spec, t) as usize), var);
        region_sum = region_sum.add(&shift.mul(&partial_zeta_dt(spec, t)?));
    }
    Ok(DecompositionCheck { holds: closed_form == region_sum, closed_form, region_sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PolyFq;
    use crate::ratfunc_q::q_int;

    fn rf(num: &[i64], den: &[i64], var: Var) -> QRatFunc {
        QRatFunc::new(QPoly::from_ints(num), QPoly::from_ints(den), var).unwrap()
    }

    fn series(z: &QRatFunc, m: usize) -> Vec<Q> {
        z.series_coefficients(m).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q_int(x)).collect()
    }

    fn genus0_t(q: u32, d: u32) -> ProblemSpec {
        let fq = Fq::prime(q).unwrap();
        ProblemSpec::from_phi(&fq, &PolyFq::t(), d).unwrap()
    }

    fn example61() -> ProblemSpec {
        ProblemSpec::new(5, 1, 0, 2, vec![BadPlaceData { f_v: 2, vf: 1 }]).unwrap()
    }

    fn example62() -> ProblemSpec {
        ProblemSpec::new(5, 1, 0, 2, vec![BadPlaceData { f_v: 1, vf: 1 }; 2]).unwrap()
    }

    #[test]
    fn dedekind_examples() {
        let z = dedekind_zeta(1, 5, 0).unwrap();
        assert_eq!(z, rf(&[1, 0, 5], &[1, -6, 5], Var::new(5, 1)));
        let z = dedekind_zeta(0, 5, 0).unwrap();
        let s = series(&z, 4);
        for (n, c) in s.iter().enumerate() {
            assert_eq!(*c, q_int((5i64.pow(n as u32 + 1) - 1) / 4));
        }
        assert_eq!(series(&dedekind_zeta(0, 2, 0).unwrap(), 1)[1], q_int(3));
        assert!(dedekind_zeta(2, 5, 0).is_err());
    }

    #[test]
    fn local_factor_examples() {
        assert_eq!(local_bad_factor(5, 1, 2).unwrap(), rf(&[0, 1, 5], &[1, 1], Var::new(5, 2)));
        assert_eq!(local_bad_factor(25, 1, 2).unwrap(), rf(&[0, 1, 25], &[1, 1], Var::new(25, 2)));
        assert_eq!(local_bad_factor(2, 1, 2).unwrap(), rf(&[0, 1, 2], &[1, 1], Var::new(2, 2)));
        assert!(local_bad_factor(5, 2, 2).is_err());
    }

    #[test]
    fn adelic_integral_without_bad_places() {
        let spec = ProblemSpec::new(5, 0, 0, 2, vec![]).unwrap();
        let z = adelic_integral(&spec).unwrap();
        assert_eq!(z, rf(&[5, 0, -5], &[1, 0, -25], Var::new(5, 2)));
        assert_eq!(series(&z, 4), ints(&[5, 0, 120, 0, 3000]));
    }

    #[test]
    fn genus0_f_t_closed_form() {
        let zc = assemble_zeta(&genus0_t(5, 2)).unwrap();
        assert_eq!(zc.combined, rf(&[0, 5, -5], &[1, -5], Var::new(5, 2)));
        assert!(zc.correction_term.is_zero());
    }

    #[test]
    fn example61_first_term() {
        // 5^{-s}(1-5^{-s})(1+5^{2-s})(1+5^{3-2s}) / ((1+5^{-s})(1-5^{2-s})(1+5^{1-2s}))
        let v = Var::new(5, 2);
        let x = |c: i64, k: usize| QRatFunc::one_minus(q_int(-c), k, v); // 1 + c w^k
        let num = QRatFunc::from_poly(QPoly::monomial(Q::one(), 2), v)
            .mul(&x(-1, 2))
            .mul(&x(25, 2))
            .mul(&x(125, 4));
        let den = x(1, 2).mul(&x(-25, 2)).mul(&x(5, 4));
        let expected = num.checked_div(&den).unwrap();
        let zc = assemble_zeta(&example61()).unwrap();
        assert_eq!(zc.main_term, expected);
        // second term: 4 w^2 (1 - w^2)(1 - 5 w^2) / ((1 + w^2)(1 + 5 w^4))
        let second = QRatFunc::from_poly(QPoly::monomial(q_int(4), 2), v)
            .mul(&x(-1, 2))
            .mul(&x(-5, 2))
            .checked_div(&x(1, 2).mul(&x(5, 4)))
            .unwrap();
        assert_eq!(zc.correction_term, second);
    }

    #[test]
    fn example62_matches_displayed_form() {
        let v = Var::new(5, 2);
        let x = |c: i64, k: usize| QRatFunc::one_minus(q_int(-c), k, v);
        let w2 = QRatFunc::from_poly(QPoly::monomial(Q::one(), 2), v);
        let first = w2
            .mul(&x(-1, 1))
            .mul(&x(5, 1))
            .mul(&x(125, 4))
            .checked_div(&x(1, 1).mul(&x(-5, 1)).mul(&x(5, 4)))
            .unwrap();
        let second = w2
            .scale(&q_int(4))
            .mul(&x(-1, 1))
            .mul(&x(-5, 2))
            .checked_div(&x(1, 1).mul(&x(5, 4)))
            .unwrap();
        let zc = assemble_zeta(&example62()).unwrap();
        assert_eq!(zc.main_term, first);
        assert_eq!(zc.correction_term, second);
        let s = series(&zc.combined, 9);
        assert_eq!(s, ints(&[0, 0, 5, 0, 20, 200, 900, 5200, 24700, 124200]));
    }

    #[test]
    fn partial_zetas_genus0() {
        let spec = genus0_t(5, 2);
        let du = partial_zeta_du(&spec, 1).unwrap();
        assert_eq!(du, rf(&[5, 0, -25], &[1, 0, -25], Var::new(5, 2)));
        assert_eq!(series(&du, 2), ints(&[5, 0, 100]));
        assert_eq!(partial_zeta_du(&spec, 0).unwrap(), rf(&[5, 0, -5], &[1, 0, -25], Var::new(5, 2)));
        let dt = partial_zeta_dt(&spec, 0).unwrap();
        assert_eq!(dt, rf(&[0, 0, 20], &[1, 0, -25], Var::new(5, 2)));
        assert_eq!(series(&dt, 4), ints(&[0, 0, 20, 0, 500]));
        assert_eq!(partial_zeta_dt(&spec, 1).unwrap(), du);
        assert!(partial_zeta_du(&spec, 2).is_err());
    }

    #[test]
    fn partial_zeta_genus1_correction() {
        let spec = example61();
        let v = spec.var();
        let du = partial_zeta_du(&spec, 1).unwrap();
        let zeta = dedekind_zeta(1, 5, 0).unwrap().stretch(2);
        let added = QRatFunc::constant(q_int(4), v)
            .checked_div(&zeta.mul(&QRatFunc::one_minus(Q::one(), 4, v)))
            .unwrap();
        let main = zeta_ratio(&spec)
            .unwrap()
            .mul(&QRatFunc::one_minus(q_int(25), 4, v))
            .checked_div(&QRatFunc::one_minus(Q::one(), 4, v))
            .unwrap();
        assert_eq!(du, main.add(&added));
    }

    /// Closed form of `W(D_T)` written out directly, independent of the
    /// inclusion-exclusion route.
    fn dt_closed(spec: &ProblemSpec, t: u64) -> QRatFunc {
        let v = spec.var();
        let d = spec.d as usize;
        let mut main = zeta_ratio(spec).unwrap();
        let mut corr_num = QRatFunc::constant(spec.c_genus(), v);
        let mut all_den = QRatFunc::one(v);
        for (i, bp) in spec.bad_places.iter().enumerate() {
            let k = d * bp.f_v as usize;
            let qv = spec.qv(bp);
            let one_minus_x = QRatFunc::one_minus(Q::one(), k, v);
            let xv = QRatFunc::from_poly(QPoly::monomial(Q::one(), k), v);
            all_den = all_den.mul(&one_minus_x);
            if t >> i & 1 == 1 {
                main = main.mul(&QRatFunc::one_minus(qv, k, v)).checked_div(&one_minus_x).unwrap();
            } else {
                main = main.mul(&xv.scale(&(qv - Q::one()))).checked_div(&one_minus_x).unwrap();
                corr_num = corr_num.mul(&xv.neg());
            }
        }
        let zeta = dedekind_zeta(spec.genus, spec.q, spec.frobenius_trace).unwrap().stretch(spec.d);
        main.add(&corr_num.checked_div(&zeta.mul(&all_den)).unwrap())
    }

    #[test]
    fn dt_matches_direct_formula() {
        let fq3 = Fq::prime(3).unwrap();
        let two_places = ProblemSpec::from_phi(&fq3, &PolyFq::parse("t^2+t", &fq3).unwrap(), 3).unwrap();
        for spec in [example61(), example62(), genus0_t(5, 2), two_places] {
            for t in 0..spec.subset_count() {
                assert_eq!(partial_zeta_dt(&spec, t).unwrap(), dt_closed(&spec, t), "T = {t:#b}");
            }
        }
    }

    #[test]
    fn decomposition_holds() {
        let fq5 = Fq::prime(5).unwrap();
        let mixed = ProblemSpec::from_phi(&fq5, &PolyFq::parse("t^3+t", &fq5).unwrap(), 3).unwrap();
        for spec in [genus0_t(5, 2), example61(), example62(), mixed, ProblemSpec::new(5, 0, 0, 2, vec![]).unwrap()] {
            let chk = decomposition_check(&spec).unwrap();
            assert!(chk.holds, "{:?}", chk.diff());
            assert!(chk.diff().is_zero());
        }
    }

    #[test]
    fn validation_rules() {
        assert!(ProblemSpec::new(5, 1, 5, 2, vec![]).is_err());
        assert!(ProblemSpec::new(5, 1, 4, 2, vec![]).is_ok());
        assert!(ProblemSpec::new(5, 0, 1, 2, vec![]).is_err());
        assert!(ProblemSpec::new(6, 0, 0, 2, vec![]).is_err());
        assert!(ProblemSpec::new(5, 2, 0, 2, vec![]).is_err());
        assert!(ProblemSpec::new(5, 0, 0, 2, vec![BadPlaceData { f_v: 1, vf: 2 }]).is_err());
        assert!(ProblemSpec::new(5, 0, 0, 1, vec![]).is_err());
    }

    #[test]
    fn constant_term_rule() {
        assert_eq!(series(&assemble_zeta(&genus0_t(3, 3)).unwrap().combined, 0), vec![Q::zero()]);
        let empty = ProblemSpec::new(3, 0, 0, 3, vec![]).unwrap();
        assert_eq!(series(&assemble_zeta(&empty).unwrap().combined, 0), vec![q_int(3)]);
    }
}
