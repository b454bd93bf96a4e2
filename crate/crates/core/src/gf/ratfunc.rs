use crate::error::{Error, Result};
use crate::gf::field::Fq;
use crate::gf::poly::PolyFq;

/// An element of `F_q(t)` in canonical form: coprime numerator and monic
/// denominator. Zero is `0/1`, so structural equality is field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFuncFq {
    num: PolyFq,
    den: PolyFq,
}

impl RatFuncFq {
    /// Cancels the gcd and normalizes the denominator to be monic.
    pub fn new(num: PolyFq, den: PolyFq, fq: &Fq) -> Result<RatFuncFq> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if num.is_zero() {
            return Ok(RatFuncFq::zero());
        }
        let g = num.gcd(&den, fq);
        let (num, den) = (num.exact_div(&g, fq)?, den.exact_div(&g, fq)?);
        let inv = fq.inv(den.leading())?;
        Ok(RatFuncFq {
            num: num.scale(inv, fq),
            den: den.scale(inv, fq),
        })
    }

    pub fn zero() -> RatFuncFq {
        RatFuncFq { num: PolyFq::zero(), den: PolyFq::one() }
    }

    pub fn from_poly(p: PolyFq) -> RatFuncFq {
        RatFuncFq { num: p, den: PolyFq::one() }
    }

    pub fn num(&self) -> &PolyFq {
        &self.num
    }

    pub fn den(&self) -> &PolyFq {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.deg0() == 0 && self.den.deg0() == 0
    }

    pub fn add(&self, other: &RatFuncFq, fq: &Fq) -> RatFuncFq {
        let num = self.num.mul(&other.den, fq).add(&other.num.mul(&self.den, fq), fq);
        RatFuncFq::new(num, self.den.mul(&other.den, fq), fq).expect("nonzero denominator")
    }

    pub fn neg(&self, fq: &Fq) -> RatFuncFq {
        RatFuncFq { num: self.num.neg(fq), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RatFuncFq, fq: &Fq) -> RatFuncFq {
        self.add(&other.neg(fq), fq)
    }

    pub fn mul(&self, other: &RatFuncFq, fq: &Fq) -> RatFuncFq {
        RatFuncFq::new(self.num.mul(&other.num, fq), self.den.mul(&other.den, fq), fq)
            .expect("nonzero denominator")
    }

    pub fn recip(&self, fq: &Fq) -> Result<RatFuncFq> {
        RatFuncFq::new(self.den.clone(), self.num.clone(), fq)
    }

    pub fn div(&self, other: &RatFuncFq, fq: &Fq) -> Result<RatFuncFq> {
        Ok(self.mul(&other.recip(fq)?, fq))
    }

    pub fn pow(&self, n: u32, fq: &Fq) -> RatFuncFq {
        // coprime parts stay coprime under powers
        RatFuncFq { num: self.num.pow(n, fq), den: self.den.pow(n, fq) }
    }

    /// `self(inner)`: substitutes `t -> inner`.
    pub fn compose(&self, inner: &RatFuncFq, fq: &Fq) -> Result<RatFuncFq> {
        let eval = |p: &PolyFq| {
            p.coeffs().iter().rev().fold(RatFuncFq::zero(), |acc, &c| {
                acc.mul(inner, fq).add(&RatFuncFq::from_poly(PolyFq::constant(c)), fq)
            })
        };
        eval(&self.num).div(&eval(&self.den), fq)
    }

    pub fn display(&self, fq: &Fq) -> String {
        if self.den.is_one() {
            self.num.display(fq, 't')
        } else {
            format!("({})/({})", self.num.display(fq, 't'), self.den.display(fq, 't'))
        }
    }
}

/// Canonical form of `num/den` (the `ratfunc_canonical` contract).
pub fn ratfunc_canonical(num: &PolyFq, den: &PolyFq, fq: &Fq) -> Result<RatFuncFq> {
    RatFuncFq::new(num.clone(), den.clone(), fq)
}
