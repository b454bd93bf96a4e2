//! Numeric complex roots, used only for reporting pole locations and for the
//! equal-modulus check. Exact decisions never depend on these.

use num_complex::Complex64;

use crate::ratfunc_q::qpoly::{q_to_f64, QPoly};

/// All complex roots of a squarefree polynomial (Aberth-Ehrlich).
pub fn complex_roots(p: &QPoly) -> Vec<Complex64> {
    let n = p.deg0();
    if n == 0 {
        return Vec::new();
    }
    let c: Vec<f64> = p.coeffs().iter().map(q_to_f64).collect();
    let lead = c[n];
    let a: Vec<Complex64> = c.iter().map(|x| Complex64::new(x / lead, 0.0)).collect();
    if n == 1 {
        return vec![-a[0]];
    }
    let eval = |z: Complex64| {
        let mut v = Complex64::new(1.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for k in (0..n).rev() {
            dv = dv * z + v;
            v = v * z + a[k];
        }
        (v, dv)
    };
    // Cauchy bound for the starting circle
    let radius = 1.0 + a[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let geo = a[0].norm().powf(1.0 / n as f64).max(1e-3).min(radius);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(geo, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, dv) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let step = ratio / (1.0 - ratio * s);
            z[i] -= step;
            moved = moved.max(step.norm() / z[i].norm().max(1e-300));
        }
        if moved < 1e-16 {
            break;
        }
    }
    // a few Newton polishing steps
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = eval(*zi);
            if dv.norm() > 0.0 {
                *zi -= v / dv;
            }
        }
    }
    z.sort_by(|x, y| x.arg().total_cmp(&y.arg()));
    z
}
