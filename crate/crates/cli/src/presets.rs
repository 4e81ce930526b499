//! Analytic data sets, so runs need no external input.

use std::sync::Arc;

use fokas_core::cutoffs::psi;
use fokas_core::fokas::ProblemData;
use fokas_core::oracle::{whole_space_restriction_data, GaussianPacket, WholeSpaceSolution};
use fokas_core::C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// All data zero.
    Zero,
    /// The free Gaussian e^{−|x|²} restricted to the half-space; the exact solution is known.
    GaussianRestriction,
    /// e^{−|x − 3e_n|²} with zero boundary data.
    Gaussian,
    /// Indicator of [−1, 1]^{n−1} × [1, 2] with zero boundary data.
    Box,
    /// ψ-bump around x_n = 2 modulated by e^{2i x_n}, zero boundary data.
    ModulatedBump,
}

impl Preset {
    fn whole_space(self, n: usize, amplitude: f64) -> Option<WholeSpaceSolution> {
        match self {
            Preset::GaussianRestriction => {
                let p = GaussianPacket { amplitude: C64::new(amplitude, 0.0), ..GaussianPacket::centered(n) };
                Some(p.solution())
            }
            _ => None,
        }
    }

    /// Closed-form solution on the half-space, where one exists.
    pub fn exact(self, n: usize, amplitude: f64) -> Option<WholeSpaceSolution> {
        self.whole_space(n, amplitude)
    }

    pub fn data(self, n: usize, amplitude: f64, length: f64, time: f64) -> ProblemData {
        if let Some(u) = self.whole_space(n, amplitude) {
            return whole_space_restriction_data(u, n, length, time);
        }
        let zero = C64::new(0.0, 0.0);
        let u0: Arc<dyn Fn(&[f64], f64) -> C64 + Send + Sync> = match self {
            Preset::Zero => Arc::new(move |_, _| zero),
            Preset::Gaussian => Arc::new(move |xp, x| {
                let r2: f64 = xp.iter().map(|v| v * v).sum::<f64>() + (x - 3.0) * (x - 3.0);
                C64::new(amplitude * (-r2).exp(), 0.0)
            }),
            Preset::Box => Arc::new(move |xp, x| {
                if (1.0..=2.0).contains(&x) && xp.iter().all(|v| v.abs() <= 1.0) {
                    C64::new(amplitude, 0.0)
                } else {
                    zero
                }
            }),
            Preset::ModulatedBump => Arc::new(move |xp, x| {
                let tangential: f64 = xp.iter().map(|v| psi(v / 2.0)).product();
                C64::from_polar(amplitude * psi((x - 2.0) / 1.5) * tangential, 2.0 * x)
            }),
            Preset::GaussianRestriction => unreachable!("handled above"),
        };
        ProblemData::new(n, u0, Arc::new(move |_, _| zero), length, time)
    }
}
