use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratfunc_q::qpoly::{q_int, QPoly, Q};

/// An element of `F = Q[u]/(p)`, stored as its reduced representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberFieldElem {
    min_poly: QPoly,
    rep: QPoly,
}

impl NumberFieldElem {
    /// Reduces `rep` modulo `min_poly`, which should be irreducible over `Q`.
    pub fn new(min_poly: &QPoly, rep: QPoly) -> NumberFieldElem {
        assert!(min_poly.deg0() >= 1, "modulus must have positive degree");
        let rep = rep.rem(min_poly).expect("nonzero modulus");
        NumberFieldElem { min_poly: min_poly.clone(), rep }
    }

    pub fn from_q(min_poly: &QPoly, c: Q) -> NumberFieldElem {
        NumberFieldElem::new(min_poly, QPoly::constant(c))
    }

    /// The class of `u`.
    pub fn generator(min_poly: &QPoly) -> NumberFieldElem {
        NumberFieldElem::new(min_poly, QPoly::var())
    }

    pub fn zero(min_poly: &QPoly) -> NumberFieldElem {
        NumberFieldElem { min_poly: min_poly.clone(), rep: QPoly::zero() }
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn rep(&self) -> &QPoly {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    /// `Some(c)` when the element is the rational `c`.
    pub fn as_rational(&self) -> Option<Q> {
        self.rep.is_constant().then(|| self.rep.coeff(0))
    }

    pub fn scale(&self, c: &Q) -> NumberFieldElem {
        NumberFieldElem { min_poly: self.min_poly.clone(), rep: self.rep.scale(c) }
    }

    pub fn inv(&self) -> Result<NumberFieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let (g, s, _) = self.rep.ext_gcd(&self.min_poly);
        if !g.is_one() {
            return Err(Error::Internal("modulus of number field is reducible".into()));
        }
        Ok(NumberFieldElem::new(&self.min_poly, s))
    }

    pub fn pow(&self, n: i64) -> Result<NumberFieldElem> {
        let mut base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = NumberFieldElem::from_q(&self.min_poly, Q::one());
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        Ok(acc)
    }

    /// `Tr_{F/Q}`, from the Newton power sums of the roots of the modulus.
    pub fn trace(&self) -> Q {
        let sums = power_sums(&self.min_poly, self.rep.deg0());
        self.rep.coeffs().iter().zip(&sums).map(|(c, s)| c * s).sum()
    }

    fn check(&self, other: &NumberFieldElem) {
        assert_eq!(self.min_poly, other.min_poly, "elements of different number fields");
    }
}

/// `s_k = sum of root^k` for `k = 0..=n`, over the roots of `p`.
pub fn power_sums(p: &QPoly, n: usize) -> Vec<Q> {
    let monic = p.monic();
    let deg = monic.deg0();
    // monic = u^deg + e_1' u^(deg-1) + ..., with e_i' = coefficient of u^(deg-i)
    let a = |i: usize| if i <= deg { monic.coeff(deg - i) } else { Q::zero() };
    let mut s = vec![q_int(deg as i64)];
    for k in 1..=n {
        let mut v = if k <= deg { -(a(k) * q_int(k as i64)) } else { Q::zero() };
        for i in 1..=(k - 1).min(deg) {
            v -= a(i) * &s[k - i];
        }
        s.push(v);
    }
    s
}

impl Add for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn add(self, other: &NumberFieldElem) -> NumberFieldElem {
        self.check(other);
        NumberFieldElem { min_poly: self.min_poly.clone(), rep: &self.rep + &other.rep }
    }
}

impl Sub for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn sub(self, other: &NumberFieldElem) -> NumberFieldElem {
        self.check(other);
        NumberFieldElem { min_poly: self.min_poly.clone(), rep: &self.rep - &other.rep }
    }
}

impl Mul for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn mul(self, other: &NumberFieldElem) -> NumberFieldElem {
        self.check(other);
        NumberFieldElem::new(&self.min_poly, &self.rep * &other.rep)
    }
}

impl Neg for &NumberFieldElem {
    type Output = NumberFieldElem;
    fn neg(self) -> NumberFieldElem {
        NumberFieldElem { min_poly: self.min_poly.clone(), rep: -&self.rep }
    }
}
