//! Genus-1 data for `K = F_q(t)(sqrt(h))` with `h` a squarefree cubic: point
//! counts, the Frobenius trace, and how places of `F_q(t)` split in `K`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{factor, residue_square_class, Fq, PolyFq, SquareClass};
use crate::zeta::{BadPlaceData, ProblemSpec};

fn require_odd(fq: &Fq) -> Result<()> {
    if fq.characteristic() == 2 {
        Err(Error::CharTwoUnsupported)
    } else {
        Ok(())
    }
}

fn require_smooth_cubic(h: &PolyFq, fq: &Fq) -> Result<()> {
    if h.degree() != Some(3) {
        return Err(Error::Validation(format!("h = {} is not a cubic", h.display(fq, 't'))));
    }
    if !h.gcd(&h.derivative(fq), fq).is_one() {
        return Err(Error::Validation(format!(
            "y^2 = {} is singular (zero discriminant)",
            h.display(fq, 't')
        )));
    }
    Ok(())
}

/// `#{(x, y) in F_q^2 : y^2 = h(x)}`, by trying every pair.
pub fn affine_point_count(h: &PolyFq, fq: &Fq) -> Result<u64> {
    require_odd(fq)?;
    if h.degree() != Some(3) {
        return Err(Error::Validation(format!("h = {} is not a cubic", h.display(fq, 't'))));
    }
    let mut count = 0;
    for x in fq.elements() {
        let hx = h.eval(x, fq);
        count += fq.elements().filter(|&y| fq.mul(y, y) == hx).count() as u64;
    }
    Ok(count)
}

/// `a = q + 1 - #E(F_q)` with `#E = affine_count + 1`, checked against
/// `|a| <= 2 sqrt(q)`.
pub fn frobenius_trace(q: u64, affine_count: u64) -> Result<i64> {
    let a = q as i64 - affine_count as i64;
    if (a as i128) * (a as i128) > 4 * q as i128 {
        return Err(Error::Validation(format!(
            "Hasse bound violated: trace {a} with q = {q} (singular curve or miscount)"
        )));
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplittingType {
    Split,
    Inert,
    Ramified,
}

impl SplittingType {
    /// `(f_v, e)` for each place above `pi` (`f_v` over `F_q`).
    pub fn places(self, deg_pi: u32) -> Vec<(u32, u32)> {
        match self {
            SplittingType::Split => vec![(deg_pi, 1), (deg_pi, 1)],
            SplittingType::Inert => vec![(2 * deg_pi, 1)],
            SplittingType::Ramified => vec![(deg_pi, 2)],
        }
    }
}

/// How the place `pi` of `F_q(t)` behaves in `F_q(t)(sqrt(h))`.
pub fn splitting_type(h: &PolyFq, pi: &PolyFq, fq: &Fq) -> Result<SplittingType> {
    require_odd(fq)?;
    Ok(match residue_square_class(h, pi, fq)? {
        SquareClass::Square => SplittingType::Split,
        SquareClass::Nonsquare => SplittingType::Inert,
        SquareClass::Zero => SplittingType::Ramified,
    })
}

/// The genus-1 problem for `z^d + 1/f` over `F_q(t)(sqrt(h))`.
pub fn build_genus1_spec(fq: &Fq, h: &PolyFq, f: &PolyFq, d: u32) -> Result<ProblemSpec> {
    require_odd(fq)?;
    require_smooth_cubic(h, fq)?;
    if f.deg0() == 0 {
        return Err(Error::Validation("f must be nonconstant".into()));
    }
    let trace = frobenius_trace(fq.order(), affine_point_count(h, fq)?)?;
    let mut bad = Vec::new();
    for (pi, k) in factor(f, fq)?.factors {
        let split = splitting_type(h, &pi, fq)?;
        for (f_v, e) in split.places(pi.deg0() as u32) {
            let vf = e * k;
            if vf >= d {
                return Err(Error::Validation(format!(
                    "v(f) < d violated: v(f) = {vf} at the place above {} ({split:?}), d = {d}",
                    pi.display(fq, 't')
                )));
            }
            bad.push(BadPlaceData { f_v, vf });
        }
    }
    ProblemSpec::new(fq.order(), 1, trace, d, bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str, fq: &Fq) -> PolyFq {
        PolyFq::parse(text, fq).unwrap()
    }

    #[test]
    fn point_counts() {
        let f5 = Fq::prime(5).unwrap();
        assert_eq!(affine_point_count(&poly("t^3+3", &f5), &f5), Ok(5));
        assert_eq!(affine_point_count(&poly("t^3+1", &f5), &f5), Ok(5));
        let f3 = Fq::prime(3).unwrap();
        assert_eq!(affine_point_count(&poly("t^3+1", &f3), &f3), Ok(3));
        let f2 = Fq::prime(2).unwrap();
        assert_eq!(affine_point_count(&poly("t^3+1", &f2), &f2), Err(Error::CharTwoUnsupported));
    }

    #[test]
    fn traces() {
        assert_eq!(frobenius_trace(5, 5), Ok(0));
        assert_eq!(frobenius_trace(5, 9), Ok(-4));
        assert!(frobenius_trace(5, 0).is_err());
    }

    #[test]
    fn splitting_examples() {
        let f5 = Fq::prime(5).unwrap();
        let t = PolyFq::t();
        assert_eq!(splitting_type(&poly("t^3+3", &f5), &t, &f5), Ok(SplittingType::Inert));
        assert_eq!(splitting_type(&poly("t^3+1", &f5), &t, &f5), Ok(SplittingType::Split));
        assert_eq!(splitting_type(&poly("t^3+t", &f5), &t, &f5), Ok(SplittingType::Ramified));
    }

    #[test]
    fn splitting_agrees_with_square_search() {
        let f5 = Fq::prime(5).unwrap();
        let h = poly("t^3+2t+1", &f5);
        for pi in crate::gf::irreducibles_up_to(2, &f5) {
            let r = h.rem(&pi, &f5).unwrap();
            // search every residue for a square root of h mod pi
            let k = pi.deg0();
            let has_root = (0..5u64.pow(k as u32)).any(|i| {
                let s = PolyFq::new(
                    (0..k).map(|j| f5.from_u64(i / 5u64.pow(j as u32) % 5)).collect(),
                );
                s.mul(&s, &f5).rem(&pi, &f5).unwrap() == r
            });
            let expected = if r.is_zero() {
                SplittingType::Ramified
            } else if has_root {
                SplittingType::Split
            } else {
                SplittingType::Inert
            };
            assert_eq!(splitting_type(&h, &pi, &f5).unwrap(), expected);
        }
    }

    #[test]
    fn split_frequencies_match_point_count() {
        let f5 = Fq::prime(5).unwrap();
        for h in ["t^3+3", "t^3+1", "t^3+2t+1", "t^3+t+2"] {
            let h = poly(h, &f5);
            let mut from_places = 0;
            for c in f5.elements() {
                let pi = PolyFq::new(vec![f5.neg(c), crate::gf::FqElem::ONE]);
                from_places += match splitting_type(&h, &pi, &f5).unwrap() {
                    SplittingType::Split => 2,
                    SplittingType::Ramified => 1,
                    SplittingType::Inert => 0,
                };
            }
            let n = affine_point_count(&h, &f5).unwrap();
            assert_eq!(from_places, n);
            assert!(frobenius_trace(5, n).is_ok());
        }
    }

    #[test]
    fn genus1_specs() {
        let f5 = Fq::prime(5).unwrap();
        let t = PolyFq::t();
        let s = build_genus1_spec(&f5, &poly("t^3+3", &f5), &t, 2).unwrap();
        assert_eq!((s.genus, s.frobenius_trace), (1, 0));
        assert_eq!(s.bad_places, vec![BadPlaceData { f_v: 2, vf: 1 }]);
        let s = build_genus1_spec(&f5, &poly("t^3+1", &f5), &t, 2).unwrap();
        assert_eq!(s.bad_places, vec![BadPlaceData { f_v: 1, vf: 1 }; 2]);
        let err = build_genus1_spec(&f5, &poly("t^3+t", &f5), &t, 2).unwrap_err();
        assert!(err.to_string().contains("v(f) < d"));
        // singular cubic
        assert!(build_genus1_spec(&f5, &poly("t^3", &f5), &t, 2).is_err());
    }
}
