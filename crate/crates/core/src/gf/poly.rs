use std::fmt::Write as _;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::gf::field::{Fq, FqElem};

/// A univariate polynomial over `F_q`, ascending coefficients with trailing
/// zeros stripped; the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFq {
    coeffs: Vec<FqElem>,
}

impl PolyFq {
    pub fn new(mut coeffs: Vec<FqElem>) -> PolyFq {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyFq { coeffs }
    }

    pub fn zero() -> PolyFq {
        PolyFq { coeffs: Vec::new() }
    }

    pub fn one() -> PolyFq {
        PolyFq { coeffs: vec![FqElem::ONE] }
    }

    /// The polynomial `t`.
    pub fn t() -> PolyFq {
        PolyFq::monomial(FqElem::ONE, 1)
    }

    pub fn constant(c: FqElem) -> PolyFq {
        PolyFq::new(vec![c])
    }

    pub fn monomial(c: FqElem, k: usize) -> PolyFq {
        let mut coeffs = vec![FqElem::ZERO; k + 1];
        coeffs[k] = c;
        PolyFq::new(coeffs)
    }

    /// Builds from `F_p` integers (reduced mod p).
    pub fn from_ints(fq: &Fq, coeffs: &[i64]) -> PolyFq {
        PolyFq::new(coeffs.iter().map(|&c| fq.from_i64(c)).collect())
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FqElem {
        self.coeffs.get(k).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with `deg 0 = 0`, for height computations.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    pub fn add(&self, other: &PolyFq, fq: &Fq) -> PolyFq {
        let n = self.coeffs.len().max(other.coeffs.len());
        PolyFq::new((0..n).map(|k| fq.add(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn neg(&self, fq: &Fq) -> PolyFq {
        PolyFq::new(self.coeffs.iter().map(|&c| fq.neg(c)).collect())
    }

    pub fn sub(&self, other: &PolyFq, fq: &Fq) -> PolyFq {
        self.add(&other.neg(fq), fq)
    }

    pub fn scale(&self, c: FqElem, fq: &Fq) -> PolyFq {
        PolyFq::new(self.coeffs.iter().map(|&a| fq.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &PolyFq, fq: &Fq) -> PolyFq {
        if self.is_zero() || other.is_zero() {
            return PolyFq::zero();
        }
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = fq.add(out[i + j], fq.mul(a, b));
            }
        }
        PolyFq::new(out)
    }

    pub fn pow(&self, n: u32, fq: &Fq) -> PolyFq {
        (0..n).fold(PolyFq::one(), |acc, _| acc.mul(self, fq))
    }

    pub fn monic(&self, fq: &Fq) -> PolyFq {
        match fq.inv(self.leading()) {
            Ok(inv) => self.scale(inv, fq),
            Err(_) => PolyFq::zero(),
        }
    }

    pub fn divrem(&self, divisor: &PolyFq, fq: &Fq) -> Result<(PolyFq, PolyFq)> {
        let dd = divisor.degree().ok_or(Error::ZeroDivisor)?;
        let lead_inv = fq.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((PolyFq::zero(), self.clone()));
        }
        let mut quot = vec![FqElem::ZERO; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = fq.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (i, &b) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + i] = fq.sub(rem[k - dd + i], fq.mul(c, b));
            }
        }
        rem.truncate(dd);
        Ok((PolyFq::new(quot), PolyFq::new(rem)))
    }

    pub fn rem(&self, divisor: &PolyFq, fq: &Fq) -> Result<PolyFq> {
        Ok(self.divrem(divisor, fq)?.1)
    }

    /// Exact quotient; errors if `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &PolyFq, fq: &Fq) -> Result<PolyFq> {
        let (q, r) = self.divrem(divisor, fq)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal("inexact polynomial division".into()))
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &PolyFq, fq: &Fq) -> PolyFq {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, fq).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic(fq)
    }

    /// `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &PolyFq, fq: &Fq) -> (PolyFq, PolyFq, PolyFq) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (PolyFq::one(), PolyFq::zero());
        let (mut t0, mut t1) = (PolyFq::zero(), PolyFq::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, fq).expect("nonzero divisor");
            let s = s0.sub(&q.mul(&s1, fq), fq);
            let t = t0.sub(&q.mul(&t1, fq), fq);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = fq.inv(r0.leading()).expect("nonzero");
        (r0.scale(inv, fq), s0.scale(inv, fq), t0.scale(inv, fq))
    }

    /// Inverse of `self` modulo `modulus`, when it exists.
    pub fn inv_mod(&self, modulus: &PolyFq, fq: &Fq) -> Result<PolyFq> {
        let (g, s, _) = self.ext_gcd(modulus, fq);
        if g.is_one() {
            s.rem(modulus, fq)
        } else {
            Err(Error::ZeroDivisor)
        }
    }

    pub fn derivative(&self, fq: &Fq) -> PolyFq {
        PolyFq::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| fq.mul(fq.from_u64(k as u64), c))
                .collect(),
        )
    }

    pub fn eval(&self, x: FqElem, fq: &Fq) -> FqElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| fq.add(fq.mul(acc, x), c))
    }

    pub fn mul_mod(&self, other: &PolyFq, modulus: &PolyFq, fq: &Fq) -> PolyFq {
        self.mul(other, fq).rem(modulus, fq).expect("nonzero modulus")
    }

    /// `self^n mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, n: &BigUint, modulus: &PolyFq, fq: &Fq) -> PolyFq {
        let mut acc = PolyFq::one().rem(modulus, fq).expect("nonzero modulus");
        let base = self.rem(modulus, fq).expect("nonzero modulus");
        for i in (0..n.bits()).rev() {
            acc = acc.mul_mod(&acc, modulus, fq);
            if n.bit(i) {
                acc = acc.mul_mod(&base, modulus, fq);
            }
        }
        acc
    }

    /// Multiplicity of the irreducible `pi` in `self` (`None` for zero).
    pub fn order_at(&self, pi: &PolyFq, fq: &Fq) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(pi, fq).expect("nonzero divisor");
            if !r.is_zero() {
                return Some(k);
            }
            cur = q;
            k += 1;
        }
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self, fq: &Fq) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic(fq);
        let q = BigUint::from(fq.order());
        let t = PolyFq::t();
        let frob = |k: usize| t.pow_mod(&q.pow(k as u32), &f, fq);
        if frob(n) != t.rem(&f, fq).expect("nonzero") {
            return false;
        }
        prime_divisors(n)
            .into_iter()
            .all(|r| f.gcd(&frob(n / r).sub(&t, fq), fq).is_one())
    }

    /// Parses text in variable `t`, e.g. `t^3+3` or `2*t^2 - t + 1`.
    pub fn parse(text: &str, fq: &Fq) -> Result<PolyFq> {
        PolyFq::parse_in(text, fq, 't')
    }

    pub fn parse_in(text: &str, fq: &Fq, var: char) -> Result<PolyFq> {
        let err = |msg: &str| Error::Parse(format!("{msg} in polynomial {text:?}"));
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let mut acc = PolyFq::zero();
        let chars: Vec<char> = s.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let mut negative = false;
            if chars[i] == '+' || chars[i] == '-' {
                negative = chars[i] == '-';
                i += 1;
            } else if i > 0 {
                return Err(err("expected '+' or '-'"));
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let coeff = if i > start {
                let n: u64 = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| err("coefficient too large"))?;
                if fq.degree() == 1 {
                    fq.from_u64(n)
                } else {
                    fq.elem(u32::try_from(n).map_err(|_| err("coefficient too large"))?)?
                }
            } else {
                FqElem::ONE
            };
            let had_coeff = i > start;
            if i < chars.len() && chars[i] == '*' {
                if !had_coeff {
                    return Err(err("dangling '*'"));
                }
                i += 1;
                if i >= chars.len() || chars[i] != var {
                    return Err(err("expected variable after '*'"));
                }
            }
            let mut exp = 0usize;
            if i < chars.len() && chars[i] == var {
                i += 1;
                exp = 1;
                if i < chars.len() && chars[i] == '^' {
                    i += 1;
                    let es = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if es == i {
                        return Err(err("missing exponent"));
                    }
                    exp = chars[es..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| err("bad exponent"))?;
                    if exp > 4096 {
                        return Err(err("exponent too large"));
                    }
                }
            } else if !had_coeff {
                return Err(err("expected a term"));
            }
            let c = if negative { fq.neg(coeff) } else { coeff };
            acc = acc.add(&PolyFq::monomial(c, exp), fq);
        }
        Ok(acc)
    }

    /// Canonical text: descending powers, no zero terms, no unary plus.
    pub fn display(&self, _fq: &Fq, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            match (k, c.0) {
                (0, v) => write!(out, "{v}").unwrap(),
                (_, 1) => out.push(var),
                (_, v) => write!(out, "{v}{var}").unwrap(),
            }
            if k > 1 {
                write!(out, "^{k}").unwrap();
            }
        }
        out
    }
}

pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            out.push(k);
            while n % k == 0 {
                n /= k;
            }
        }
        k += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
