use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gf::field::prime_power;
use crate::ratfunc_q::qpoly::{QPoly, Q};

/// Meaning of the formal variable: `w = q^(-s*e/d)`, i.e. `w = alpha^(-s)`
/// with `alpha = q^(e/d)`.
#[derive(Clone, Copy, Debug, Eq)]
pub struct Var {
    pub q: u64,
    pub e: u32,
    pub d: u32,
}

impl Var {
    /// `w = q^(-s/d)`.
    pub fn new(q: u64, d: u32) -> Var {
        Var { q, e: 1, d }
    }

    /// `log alpha`, as a float, for numeric pole locations only.
    pub fn log_alpha(&self) -> f64 {
        (self.q as f64).ln() * self.e as f64 / self.d as f64
    }

    pub fn alpha(&self) -> f64 {
        self.log_alpha().exp()
    }

    /// Variable after `w -> w^k` (the new `w` is a `k`-th root of the old one).
    pub fn root(self, k: u32) -> Var {
        Var { d: self.d * k, ..self }
    }

    /// Variable after grouping: the new variable is `w^k`.
    pub fn power(self, k: u32) -> Var {
        Var { e: self.e * k, ..self }
    }

    /// `alpha` as `p^(num/den)` in lowest terms.
    fn canonical(&self) -> (u64, u64, u64) {
        let (p, k) = prime_power(self.q).unwrap_or((self.q, 1));
        let num = k as u64 * self.e as u64;
        let den = self.d as u64;
        let g = num.gcd(&den);
        (p, num / g, den / g)
    }

    pub fn describe(&self) -> String {
        if self.e == 1 {
            format!("w = {}^(-s/{})", self.q, self.d)
        } else {
            format!("w = {}^(-{}s/{})", self.q, self.e, self.d)
        }
    }
}

/// Two tags agree when they name the same `alpha`.
impl PartialEq for Var {
    fn eq(&self, other: &Var) -> bool {
        self.canonical() == other.canonical()
    }
}

impl std::hash::Hash for Var {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical().hash(state);
    }
}

/// Exact rational function of `w` over `Q`.
///
/// Canonical form: coprime numerator and denominator, denominator scaled so
/// its lowest nonzero coefficient is 1 (for `den(0) != 0` this means
/// `den(0) = 1`). Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QRatFunc {
    num: QPoly,
    den: QPoly,
    var: Var,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl QRatFunc {
    pub fn new(num: QPoly, den: QPoly, var: Var) -> Result<QRatFunc> {
        if den.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if num.is_zero() {
            return Ok(QRatFunc::zero(var));
        }
        let g = num.gcd(&den);
        let (num, den) = (num.exact_div(&g)?, den.exact_div(&g)?);
        let (_, low) = den.lowest().expect("nonzero");
        let inv = low.recip();
        Ok(QRatFunc { num: num.scale(&inv), den: den.scale(&inv), var })
    }

    pub fn zero(var: Var) -> QRatFunc {
        QRatFunc { num: QPoly::zero(), den: QPoly::one(), var }
    }

    pub fn one(var: Var) -> QRatFunc {
        QRatFunc::from_poly(QPoly::one(), var)
    }

    pub fn constant(c: Q, var: Var) -> QRatFunc {
        QRatFunc::from_poly(QPoly::constant(c), var)
    }

    pub fn from_poly(p: QPoly, var: Var) -> QRatFunc {
        QRatFunc { num: p, den: QPoly::one(), var }
    }

    /// The variable `w` itself.
    pub fn w(var: Var) -> QRatFunc {
        QRatFunc::from_poly(QPoly::var(), var)
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn same_var(&self, other: &QRatFunc) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VariableMismatch(format!(
                "{} vs {}",
                self.var.describe(),
                other.var.describe()
            )))
        }
    }

    fn assert_var(&self, other: &QRatFunc) {
        if let Err(e) = self.same_var(other) {
            panic!("{e}");
        }
    }

    /// Panics on a variable mismatch; see [`qratfunc_arith`] for the checked form.
    pub fn add(&self, other: &QRatFunc) -> QRatFunc {
        self.assert_var(other);
        if self.den == other.den {
            return QRatFunc::new(&self.num + &other.num, self.den.clone(), self.var).unwrap();
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        QRatFunc::new(num, &self.den * &other.den, self.var).expect("nonzero denominator")
    }

    pub fn neg(&self) -> QRatFunc {
        QRatFunc { num: -&self.num, den: self.den.clone(), var: self.var }
    }

    pub fn sub(&self, other: &QRatFunc) -> QRatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &QRatFunc) -> QRatFunc {
        self.assert_var(other);
        QRatFunc::new(&self.num * &other.num, &self.den * &other.den, self.var)
            .expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Q) -> QRatFunc {
        QRatFunc::new(self.num.scale(c), self.den.clone(), self.var).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<QRatFunc> {
        QRatFunc::new(self.den.clone(), self.num.clone(), self.var)
    }

    pub fn checked_div(&self, other: &QRatFunc) -> Result<QRatFunc> {
        self.same_var(other)?;
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, n: u32) -> QRatFunc {
        QRatFunc { num: self.num.pow(n), den: self.den.pow(n), var: self.var }
    }

    /// Taylor coefficients `a_0..=a_m` at `w = 0`.
    pub fn series_coefficients(&self, m: usize) -> Result<Vec<Q>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Validation("pole at w = 0: no power series expansion".into()));
        }
        let inv0 = d0.recip();
        let mut a: Vec<Q> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut v = self.num.coeff(k);
            for (j, dj) in self.den.coeffs().iter().enumerate().skip(1).take(k) {
                if !dj.is_zero() {
                    v -= dj * &a[k - j];
                }
            }
            a.push(v * &inv0);
        }
        Ok(a)
    }

    /// `w -> w^k`; the result lives in the variable `w^(1/k)`.
    pub fn stretch(&self, k: u32) -> QRatFunc {
        QRatFunc {
            num: self.num.stretch(k as usize),
            den: self.den.stretch(k as usize),
            var: self.var.root(k),
        }
    }

    /// `w -> c*w` in the same variable.
    pub fn scale_var(&self, c: &Q) -> QRatFunc {
        QRatFunc::new(self.num.scale_var(c), self.den.scale_var(c), self.var)
            .expect("nonzero denominator")
    }

    /// Re-tags the variable without touching coefficients.
    pub fn with_var(&self, var: Var) -> QRatFunc {
        QRatFunc { var, ..self.clone() }
    }

    /// `(e, Z~)`: `e` is the gcd of every exponent carrying a nonzero
    /// coefficient and `Z~(w^e) = Z(w)`. Constants give `e = 1`.
    pub fn exponent_gcd_normalize(&self) -> (u32, QRatFunc) {
        let g = self.num.support().chain(self.den.support()).fold(0usize, |g, k| g.gcd(&k));
        if g <= 1 {
            return (1, self.clone());
        }
        let z = QRatFunc {
            num: self.num.shrink(g).expect("gcd divides"),
            den: self.den.shrink(g).expect("gcd divides"),
            var: self.var.power(g as u32),
        };
        (g as u32, z)
    }

    pub fn eval(&self, w: &Q) -> Result<Q> {
        let d = self.den.eval(w);
        if d.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.num.eval(w) / d)
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

pub fn qratfunc_arith(a: &QRatFunc, b: &QRatFunc, op: ArithOp) -> Result<QRatFunc> {
    a.same_var(b)?;
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.checked_div(b)?,
    })
}

impl fmt::Display for QRatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Product of a list, starting from 1.
pub fn product<'a>(items: impl IntoIterator<Item = &'a QRatFunc>, var: Var) -> QRatFunc {
    items.into_iter().fold(QRatFunc::one(var), |acc, x| acc.mul(x))
}

impl QRatFunc {
    /// `1 - c*w^k`.
    pub fn one_minus(c: Q, k: usize, var: Var) -> QRatFunc {
        QRatFunc::from_poly(&QPoly::one() - &QPoly::monomial(c, k), var)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn lowest_den_is_one(&self) -> bool {
        self.den.lowest().is_some_and(|(_, c)| c.is_one())
    }
}
