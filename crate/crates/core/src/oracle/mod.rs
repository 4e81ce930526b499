//! Reference computations independent of the transform solver.

mod crank_nicolson;
mod trilinear;

use std::sync::Arc;

use num_complex::Complex64 as C64;

pub use crank_nicolson::{crank_nicolson_ibvp, FDGrid};
pub use trilinear::{brute_force_trilinear_norm, product_path_trilinear, trilinear_convolution, TrilinearNorm};

use crate::fokas::ProblemData;

/// A solution of `iu_t + Δu = 0` on all of ℝⁿ, as a function of (x, t).
pub type WholeSpaceSolution = Arc<dyn Fn(&[f64], f64) -> C64 + Send + Sync>;

/// `Π_j (1+4it)^{−1/2} e^{−x_j²/(1+4it)}`, principal branch.
pub fn gaussian_free_solution(x: &[f64], t: f64) -> C64 {
    let a = C64::new(1.0, 4.0 * t);
    let r2: f64 = x.iter().map(|v| v * v).sum();
    (-r2 / a).exp() / a.sqrt().powi(x.len() as i32)
}

/// Free evolution of `A Π_j exp(−(x_j−c_j)²/w² + i k_j (x_j−c_j))`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianPacket {
    pub amplitude: C64,
    pub center: Vec<f64>,
    pub width: f64,
    pub momentum: Vec<f64>,
}

impl GaussianPacket {
    pub fn centered(n: usize) -> Self {
        Self { amplitude: C64::new(1.0, 0.0), center: vec![0.0; n], width: 1.0, momentum: vec![0.0; n] }
    }

    pub fn eval(&self, x: &[f64], t: f64) -> C64 {
        let a = 1.0 / (self.width * self.width);
        let denom = C64::new(1.0, 4.0 * a * t);
        let mut v = self.amplitude;
        for ((&xj, &cj), &kj) in x.iter().zip(&self.center).zip(&self.momentum) {
            let y = xj - cj;
            let num = C64::new(-a * y * y, kj * y - kj * kj * t);
            v *= (num / denom).exp() / denom.sqrt();
        }
        v
    }

    pub fn solution(&self) -> WholeSpaceSolution {
        let p = self.clone();
        Arc::new(move |x, t| p.eval(x, t))
    }
}

/// Sum of whole-space solutions.
pub fn superpose(parts: Vec<WholeSpaceSolution>) -> WholeSpaceSolution {
    Arc::new(move |x, t| parts.iter().map(|u| u(x, t)).sum())
}

/// Initial data `U(·,0)` on x_n > 0 and boundary data `U|_{x_n=0}`, no forcing.
pub fn whole_space_restriction_data(u: WholeSpaceSolution, n: usize, length: f64, time: f64) -> ProblemData {
    let ui = u.clone();
    let u0 = Arc::new(move |xp: &[f64], xn: f64| {
        let mut p = xp.to_vec();
        p.push(xn);
        ui(&p, 0.0)
    });
    let g0 = Arc::new(move |xp: &[f64], t: f64| {
        let mut p = xp.to_vec();
        p.push(0.0);
        u(&p, t)
    });
    ProblemData::new(n, u0, g0, length, time)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn residual(u: &dyn Fn(&[f64], f64) -> C64, x: &[f64], t: f64, h: f64) -> C64 {
        // Sixth-order central differences.
        let d1 = |f: &dyn Fn(f64) -> C64| {
            ((f(h) - f(-h)) * 0.75 - (f(2.0 * h) - f(-2.0 * h)) * 0.15 + (f(3.0 * h) - f(-3.0 * h)) / 60.0) / h
        };
        let d2 = |f: &dyn Fn(f64) -> C64| {
            ((f(h) + f(-h)) * 1.5 - (f(2.0 * h) + f(-2.0 * h)) * 0.15 + (f(3.0 * h) + f(-3.0 * h)) / 90.0
                - f(0.0) * (49.0 / 18.0))
                / (h * h)
        };
        let ut = d1(&|s| u(x, t + s));
        let mut lap = C64::new(0.0, 0.0);
        for j in 0..x.len() {
            lap += d2(&|s| {
                let mut p = x.to_vec();
                p[j] += s;
                u(&p, t)
            });
        }
        C64::new(0.0, 1.0) * ut + lap
    }

    #[test]
    fn gaussian_values() {
        assert!((gaussian_free_solution(&[0.3, -1.0], 0.0) - C64::new((-1.09f64).exp(), 0.0)).norm() < 1e-15);
        let v = gaussian_free_solution(&[0.0], 1.0);
        assert!((v - C64::new(0.38817467359946195, -0.3030776267101947)).norm() < 1e-14);
    }

    #[test]
    fn free_solutions_satisfy_the_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let packet = GaussianPacket {
            amplitude: C64::new(0.7, -0.2),
            center: vec![0.4, 1.1],
            width: 0.8,
            momentum: vec![1.5, -0.7],
        };
        for _ in 0..10 {
            let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let t = rng.gen_range(0.05..0.45);
            let r = residual(&gaussian_free_solution, &x, t, 3e-3);
            assert!(r.norm() < 1e-10, "gaussian residual {r}");
            let r = residual(&|p, s| packet.eval(p, s), &x, t, 3e-3);
            assert!(r.norm() < 1e-9, "packet residual {r}");
        }
    }

    #[test]
    fn centred_packet_is_the_standard_gaussian() {
        let p = GaussianPacket::centered(2);
        assert!((p.eval(&[0.3, 0.9], 0.2) - gaussian_free_solution(&[0.3, 0.9], 0.2)).norm() < 1e-15);
    }

    #[test]
    fn mass_is_conserved() {
        let rule = crate::quadrature::CompositeRule::gauss_panels(-40.0, 40.0, 320, 8);
        let mass = |t: f64| -> f64 { rule.integrate(|x| C64::new(gaussian_free_solution(&[x], t).norm_sqr(), 0.0)).re };
        let m0 = mass(0.0);
        assert!((m0 - (std::f64::consts::PI / 2.0).sqrt()).abs() < 1e-12);
        for t in [0.1, 0.4, 1.0] {
            assert!((mass(t) - m0).abs() < 1e-12);
        }
    }

    #[test]
    fn restriction_data_is_compatible_and_linear() {
        let a = GaussianPacket::centered(1).solution();
        let b = GaussianPacket { center: vec![1.5], ..GaussianPacket::centered(1) }.solution();
        for u in [a.clone(), b.clone()] {
            let d = whole_space_restriction_data(u, 1, 8.0, 0.4);
            assert!(((d.u0)(&[], 0.0) - (d.g0)(&[], 0.0)).norm() < 1e-12);
        }
        let sum = whole_space_restriction_data(superpose(vec![a.clone(), b.clone()]), 1, 8.0, 0.4);
        let da = whole_space_restriction_data(a, 1, 8.0, 0.4);
        let db = whole_space_restriction_data(b, 1, 8.0, 0.4);
        let v = (sum.g0)(&[], 0.3) - (da.g0)(&[], 0.3) - (db.g0)(&[], 0.3);
        assert!(v.norm() < 1e-15);
    }
}
