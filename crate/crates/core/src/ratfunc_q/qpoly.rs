use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial over `Q`, ascending, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> QPoly {
        QPoly::constant(Q::one())
    }

    /// The variable itself.
    pub fn var() -> QPoly {
        QPoly::monomial(Q::one(), 1)
    }

    pub fn constant(c: Q) -> QPoly {
        QPoly::new(vec![c])
    }

    pub fn monomial(c: Q, k: usize) -> QPoly {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        QPoly::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| q_int(c)).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> QPoly {
        QPoly::new(coeffs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Index and value of the lowest nonzero coefficient.
    pub fn lowest(&self) -> Option<(usize, &Q)> {
        self.coeffs.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Q) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn pow(&self, n: u32) -> QPoly {
        let (mut base, mut acc, mut n) = (self.clone(), QPoly::one(), n);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn divrem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = divisor.degree().ok_or(Error::ZeroDivisor)?;
        if self.coeffs.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] * &lead_inv;
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] -= &c * b;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    pub fn rem(&self, divisor: &QPoly) -> Result<QPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact division over Q".into()))
        }
    }

    /// Monic gcd, computed on primitive parts to keep coefficients small.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor").primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (QPoly::one(), QPoly::zero());
        let (mut t0, mut t1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * q_int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + q_to_f64(c))
    }

    /// Substitutes `w -> w^k`.
    pub fn stretch(&self, k: usize) -> QPoly {
        assert!(k >= 1);
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        QPoly::new(out)
    }

    /// Inverse of [`QPoly::stretch`]; every exponent in use must be a multiple of `k`.
    pub fn shrink(&self, k: usize) -> Option<QPoly> {
        if self.support().any(|i| i % k != 0) {
            return None;
        }
        Some(QPoly::new(self.coeffs.iter().step_by(k).cloned().collect()))
    }

    /// Substitutes `w -> c*w`.
    pub fn scale_var(&self, c: &Q) -> QPoly {
        let mut pw = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pw);
            pw *= c;
        }
        QPoly::new(out)
    }

    /// Exponents carrying a nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    /// `(content, primitive integer coefficients)` with `self = content * primitive`
    /// and positive leading coefficient in the primitive part.
    pub fn content_primitive(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let den_lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den_lcm).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Q::new(g, den_lcm), prim)
    }

    /// Primitive integer polynomial as a `QPoly` (positive leading coefficient).
    pub fn primitive(&self) -> QPoly {
        QPoly::from_bigints(&self.content_primitive().1)
    }

    /// Scales so the lowest nonzero coefficient is 1.
    pub fn low_normalized(&self) -> QPoly {
        match self.lowest() {
            Some((_, c)) => self.scale(&c.recip()),
            None => QPoly::zero(),
        }
    }

    /// Primitive integer form with positive lowest nonzero coefficient.
    pub fn primitive_low_positive(&self) -> QPoly {
        let p = self.primitive();
        match p.lowest() {
            Some((_, c)) if c.is_negative() => -&p,
            _ => p,
        }
    }

    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    /// Truncates to degree `< n`.
    pub fn truncate(&self, n: usize) -> QPoly {
        QPoly::new(self.coeffs.iter().take(n).cloned().collect())
    }
}

pub fn q_to_f64(c: &Q) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // numerator and denominator both overflow f64; scale down by bits
        let shift = c.numer().bits().max(c.denom().bits()).saturating_sub(1000) as usize;
        let n = (c.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (c.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn q_to_string(c: &Q) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn q_parse(s: &str) -> Result<Q> {
    let err = || Error::Parse(format!("bad rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, other: QPoly) -> QPoly {
        &self + &other
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, other: QPoly) -> QPoly {
        &self - &other
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, other: QPoly) -> QPoly {
        &self * &other
    }
}

impl fmt::Display for QPoly {
    /// Ascending, in the variable `w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{}", q_to_string(&mag))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}w", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}w^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}
