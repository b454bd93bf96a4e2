//! Places of `K = F_q(t)`, valuations, the standard height, and the closed-form
//! canonical height for `phi(z) = z^d + 1/f`.
//!
//! Heights are kept as integer exponents: `H_K(x) = q^h` and
//! `Ĥ_phi(x) = q^(m/d)`.

use crate::error::{Error, Result};
use crate::gf::{factor, Fq, PolyFq, RatFuncFq};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    /// The place of a monic irreducible polynomial.
    Finite(PolyFq),
    /// The degree valuation.
    Infinite,
}

impl Place {
    /// Residue degree `f_v`, so that `q_v = q^f_v`.
    pub fn residue_degree(&self) -> u32 {
        match self {
            Place::Finite(pi) => pi.deg0() as u32,
            Place::Infinite => 1,
        }
    }
}

/// `v(x)`, with `v(0) = +inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_nonnegative(self) -> bool {
        self >= Valuation::Finite(0)
    }
}

pub fn valuation(x: &RatFuncFq, v: &Place, fq: &Fq) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinity;
    }
    match v {
        Place::Finite(pi) => {
            let a = x.num().order_at(pi, fq).unwrap_or(0) as i64;
            let b = x.den().order_at(pi, fq).unwrap_or(0) as i64;
            Valuation::Finite(a - b)
        }
        Place::Infinite => Valuation::Finite(x.den().deg0() as i64 - x.num().deg0() as i64),
    }
}

/// `h` with `H_K(x) = q^h`.
pub fn standard_height_exp(x: &RatFuncFq) -> u64 {
    x.num().deg0().max(x.den().deg0()) as u64
}

/// A place where `phi` has bad reduction, with `q_v = q^residue_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPlace {
    pub place: Place,
    pub residue_degree: u32,
    /// `v(f)`, always in `1..d`.
    pub vf: u32,
}

/// A validated map `phi(z) = z^d + 1/f` over `F_q(t)` with polynomial `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiSpec {
    pub d: u32,
    pub f: PolyFq,
    pub bad_places: Vec<BadPlace>,
}

/// `Ĥ_phi(x) = q^(m/d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeightExponent(pub u64);

pub fn validate_phi(f: &PolyFq, d: u32, fq: &Fq) -> Result<PhiSpec> {
    if d < 2 {
        return Err(Error::Validation(format!("map degree d = {d} must be at least 2")));
    }
    let fac = factor(f, fq).map_err(|_| Error::Validation("f must be nonzero".into()))?;
    let mut bad_places = Vec::with_capacity(fac.factors.len());
    for (pi, mult) in fac.factors {
        if mult >= d {
            return Err(Error::Validation(format!(
                "v(f) < d violated at {}",
                pi.display(fq, 't')
            )));
        }
        bad_places.push(BadPlace {
            residue_degree: pi.deg0() as u32,
            place: Place::Finite(pi),
            vf: mult,
        });
    }
    Ok(PhiSpec { d, f: f.clone(), bad_places })
}

/// `d * (λ̂_v(x) - λ_v(x)) / log q` as an integer: `f_v * v(f)` when
/// `v(x) >= 0`, else 0.
pub fn local_correction_num(x: &RatFuncFq, bp: &BadPlace, fq: &Fq) -> u64 {
    if valuation(x, &bp.place, fq).is_nonnegative() {
        bp.residue_degree as u64 * bp.vf as u64
    } else {
        0
    }
}

pub fn canonical_height_exp(x: &RatFuncFq, spec: &PhiSpec, fq: &Fq) -> HeightExponent {
    let corrections: u64 = spec.bad_places.iter().map(|bp| local_correction_num(x, bp, fq)).sum();
    HeightExponent(spec.d as u64 * standard_height_exp(x) + corrections)
}

impl PhiSpec {
    /// `phi(x) = x^d + 1/f`.
    pub fn apply(&self, x: &RatFuncFq, fq: &Fq) -> RatFuncFq {
        let inv_f = RatFuncFq::from_poly(self.f.clone()).recip(fq).expect("f is nonzero");
        x.pow(self.d, fq).add(&inv_f, fq)
    }

    pub fn is_good_everywhere(&self) -> bool {
        self.bad_places.is_empty()
    }
}

/// Sum of `f_v * v(x)` over every place, which vanishes for `x != 0`.
pub fn product_formula_sum(x: &RatFuncFq, fq: &Fq) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut places: Vec<Place> = Vec::new();
    for p in [x.num(), x.den()] {
        if p.deg0() > 0 {
            places.extend(factor(p, fq)?.factors.into_iter().map(|(pi, _)| Place::Finite(pi)));
        }
    }
    places.push(Place::Infinite);
    Ok(places
        .iter()
        .map(|v| match valuation(x, v, fq) {
            Valuation::Finite(k) => v.residue_degree() as i64 * k,
            Valuation::Infinity => unreachable!("x is nonzero"),
        })
        .sum())
}
