use std::fmt;

use crate::error::{Error, Result};
use crate::gf::poly::PolyFq;

/// Largest field order handled at desk scale.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of `F_q`, stored as the integer `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
/// where `c_0 + c_1 y + ...` is its residue class in `F_p[y]/(modulus)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Field operation selector for [`Fq::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FqOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// The finite field `F_q`, `q = p^e`.
///
/// For `e > 1` the field is `F_p[y]/(modulus)` with an explicitly supplied
/// irreducible modulus; multiplication goes through discrete log tables.
#[derive(Clone, PartialEq, Eq)]
pub struct Fq {
    p: u32,
    e: u32,
    q: u32,
    /// Monic, ascending over `F_p`. `[0, 1]` (the polynomial `y`) when `e == 1`.
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Fq")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl Fq {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Fq> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p as u64 > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!("p = {p} exceeds 2^20")));
        }
        Ok(Fq {
            p,
            e: 1,
            q: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
        })
    }

    /// `F_{p^e}` as `F_p[y]/(modulus)`; `modulus` is ascending and must be
    /// irreducible of degree `e` over `F_p`.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Fq> {
        let base = Fq::prime(p)?;
        let m = PolyFq::new(modulus.iter().map(|&c| base.from_u64(c as u64)).collect());
        let e = match m.degree() {
            Some(e) if e >= 1 => e as u32,
            _ => return Err(Error::InvalidField("modulus must have degree >= 1".into())),
        };
        if e == 1 {
            return Ok(base);
        }
        let q = (p as u64).checked_pow(e).filter(|&q| q <= MAX_FIELD_ORDER);
        let q = q.ok_or_else(|| Error::InvalidField(format!("{p}^{e} exceeds 2^20")))? as u32;
        if !m.is_irreducible(&base) {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible over F_{p}",
                m.display(&base, 'y')
            )));
        }
        let m = m.monic(&base);
        let mut field = Fq {
            p,
            e,
            q,
            modulus: m.coeffs().iter().map(|c| c.0).collect(),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_log_tables();
        Ok(field)
    }

    /// Parses `p` or `p^e` with an optional modulus in the variable `y`.
    pub fn from_parts(q: u64, base_modulus: Option<&str>) -> Result<Fq> {
        match base_modulus {
            None => {
                if !is_prime(q) {
                    return Err(Error::InvalidField(format!(
                        "q = {q} is not prime; supply a base modulus"
                    )));
                }
                Fq::prime(q as u32)
            }
            Some(text) => {
                let (p, _) = prime_power(q)
                    .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
                let base = Fq::prime(p as u32)?;
                let m = PolyFq::parse_in(text, &base, 'y')?;
                let field = Fq::new(p as u32, &m.coeffs().iter().map(|c| c.0).collect::<Vec<_>>())?;
                if field.order() != q {
                    return Err(Error::InvalidField(format!(
                        "modulus degree does not match q = {q}"
                    )));
                }
                Ok(field)
            }
        }
    }

    fn build_log_tables(&mut self) {
        let n = self.q as usize - 1;
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(n);
            let mut x = 1u32;
            let mut order = 0;
            loop {
                exp.push(x);
                x = self.raw_mul(x, g);
                order += 1;
                if x == 1 || order > n {
                    break;
                }
            }
            if order == n {
                let mut log = vec![0u32; self.q as usize];
                for (i, &v) in exp.iter().enumerate() {
                    log[v as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.e as usize];
        for d in out.iter_mut() {
            *d = a % self.p;
            a /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        let (p, e) = (self.p as u64, self.e as usize);
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * e - 1];
        for i in 0..e {
            for j in 0..e {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (e..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for (i, &m) in self.modulus.iter().enumerate().take(e) {
                    prod[k - e + i] = (prod[k - e + i] + (p - c) * m as u64) % p;
                }
            }
        }
        self.undigits(&prod[..e].iter().map(|&c| c as u32).collect::<Vec<_>>())
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    /// Defining modulus over `F_p`, ascending; `[0, 1]` for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elem(&self, index: u32) -> Result<FqElem> {
        if index < self.q {
            Ok(FqElem(index))
        } else {
            Err(Error::InvalidField(format!("{index} is not an element index of F_{}", self.q)))
        }
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_i64(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_u64(&self, n: u64) -> FqElem {
        FqElem((n % self.p as u64) as u32)
    }

    /// Coefficient vector over `F_p` (length `e`).
    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        self.digits(a.0)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e == 1 {
            let s = a.0 + b.0;
            FqElem(if s >= self.p { s - self.p } else { s })
        } else if self.p == 2 {
            FqElem(a.0 ^ b.0)
        } else {
            let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0, 1);
            while x > 0 || y > 0 {
                out += ((x % self.p + y % self.p) % self.p) * scale;
                x /= self.p;
                y /= self.p;
                scale *= self.p;
            }
            FqElem(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.e == 1 {
            FqElem(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            let (mut x, mut out, mut scale) = (a.0, 0, 1);
            while x > 0 {
                out += ((self.p - x % self.p) % self.p) * scale;
                x /= self.p;
                scale *= self.p;
            }
            FqElem(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.e == 1 {
            FqElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32)
        } else if a.0 == 0 || b.0 == 0 {
            FqElem(0)
        } else {
            let n = self.q - 1;
            let l = self.log[a.0 as usize] + self.log[b.0 as usize];
            FqElem(self.exp[(if l >= n { l - n } else { l }) as usize])
        }
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.e == 1 {
            Ok(self.pow_unsigned(a, (self.p - 2) as u64))
        } else {
            let n = self.q - 1;
            Ok(FqElem(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
        }
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    fn pow_unsigned(&self, a: FqElem, mut n: u64) -> FqElem {
        let (mut base, mut acc) = (a, FqElem::ONE);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// Square-and-multiply; negative exponents invert first.
    pub fn pow(&self, a: FqElem, n: i64) -> Result<FqElem> {
        if n < 0 {
            Ok(self.pow_unsigned(self.inv(a)?, n.unsigned_abs()))
        } else {
            Ok(self.pow_unsigned(a, n as u64))
        }
    }

    pub fn arith(&self, a: FqElem, b: FqElem, op: FqOp) -> Result<FqElem> {
        Ok(match op {
            FqOp::Add => self.add(a, b),
            FqOp::Sub => self.sub(a, b),
            FqOp::Mul => self.mul(a, b),
            FqOp::Div => self.div(a, b)?,
        })
    }

    /// The unique `b` with `b^p = a`.
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        self.pow_unsigned(a, self.q as u64 / self.p as u64)
    }
}

/// `Some((p, e))` when `n = p^e` with `p` prime.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let (mut m, mut e) = (n, 0);
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    (m == 1).then_some((p, e))
}
