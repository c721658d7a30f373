//! Tunable-entanglement source: `cos(phi_S)|HH> - sin(phi_S)|VV>` plus a
//! two-parameter noise model.
//!
//! The noise is applied in the source HV frame, before any rotation:
//! the `|HH><VV|` coherence is scaled by `1 - d` (interferometer dephasing),
//! then a fraction `w` of white noise is admixed. Diagonal HV populations are
//! untouched by `d`, so the model's `C_HV = 1 - w` and, at `phi_S = 45°`,
//! `C_PM = (1 - w)(1 - d)`.

use serde::{Deserialize, Serialize};

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::qstate::{pure_to_density, Complex, DensityMatrix2Q, Frame, PureState2Q};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SourceConfig {
    #[serde(rename = "phi_s_deg")]
    pub phi_s: Angle,
    /// White-noise fraction `w`.
    pub white_noise_w: f64,
    /// HV-coherence loss `d`.
    pub hv_dephasing_d: f64,
}

impl SourceConfig {
    pub fn ideal(phi_s: Angle) -> Self {
        SourceConfig {
            phi_s,
            white_noise_w: 0.0,
            hv_dephasing_d: 0.0,
        }
    }

    pub fn with_phi_s(self, phi_s: Angle) -> Self {
        SourceConfig { phi_s, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.phi_s.is_finite() {
            return Err(Error::OutOfRange {
                name: "phi_s",
                value: self.phi_s.degrees(),
                range: "finite degrees",
            });
        }
        check_unit("white_noise_w", self.white_noise_w)?;
        check_unit("hv_dephasing_d", self.hv_dephasing_d)
    }

    pub fn is_noiseless(&self) -> bool {
        self.white_noise_w == 0.0 && self.hv_dephasing_d == 0.0
    }
}

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            range: "[0, 1]",
        })
    }
}

pub fn ideal_state(phi_s: Angle) -> PureState2Q {
    let (s, c) = phi_s.radians().sin_cos();
    PureState2Q::from_unchecked(
        [c, 0.0, 0.0, -s].map(|x| Complex::new(x, 0.0)),
        Frame::Hv,
    )
}

pub fn noisy_state(cfg: &SourceConfig) -> Result<DensityMatrix2Q> {
    cfg.validate()?;
    let mut m = pure_to_density(&ideal_state(cfg.phi_s)).entries();
    let keep = 1.0 - cfg.hv_dephasing_d;
    m[0][3] *= keep;
    m[3][0] *= keep;
    let dephased = DensityMatrix2Q::from_unchecked(m);
    Ok(dephased.mix(&DensityMatrix2Q::maximally_mixed(), cfg.white_noise_w))
}

/// Invert `C_HV = 1 - w`, `C_PM = (1 - w)(1 - d)` for `(w, d)`.
pub fn calibrate_noise(c_hv: f64, c_pm: f64) -> Result<(f64, f64)> {
    if !(c_hv > 0.0 && c_hv <= 1.0) {
        return Err(Error::OutOfRange {
            name: "c_hv",
            value: c_hv,
            range: "(0, 1]",
        });
    }
    if !(c_pm > 0.0) {
        return Err(Error::OutOfRange {
            name: "c_pm",
            value: c_pm,
            range: "(0, c_hv]",
        });
    }
    if c_pm > c_hv {
        return Err(Error::UnsupportedRegime { c_hv, c_pm });
    }
    Ok((1.0 - c_hv, 1.0 - c_pm / c_hv))
}

/// Source configuration reproducing measured visibilities at any `phi_s`.
pub fn calibrated_source(phi_s: Angle, c_hv: f64, c_pm: f64) -> Result<SourceConfig> {
    let (w, d) = calibrate_noise(c_hv, c_pm)?;
    Ok(SourceConfig {
        phi_s,
        white_noise_w: w,
        hv_dephasing_d: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::model_visibilities;
    use crate::optics::{context_probabilities, MeasurementContext, Sides};

    fn deg(x: f64) -> Angle {
        Angle::from_degrees(x)
    }

    #[test]
    fn ideal_state_examples() {
        let amps = |phi: f64| ideal_state(deg(phi)).amplitudes().map(|z| z.re);
        assert_eq!(amps(0.0), [1.0, 0.0, 0.0, -0.0]);
        let a = amps(45.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((a[0] - r).abs() < 1e-15 && (a[3] + r).abs() < 1e-15);
        let a = amps(22.5);
        assert!((a[0] - 0.9239).abs() < 1e-4 && (a[3] + 0.3827).abs() < 1e-4);
    }

    #[test]
    fn noiseless_config_is_pure() {
        let cfg = SourceConfig::ideal(deg(45.0));
        let rho = noisy_state(&cfg).unwrap();
        assert_eq!(rho, pure_to_density(&ideal_state(deg(45.0))));
        assert!((rho.purity() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn white_noise_visibilities() {
        let cfg = SourceConfig {
            phi_s: deg(45.0),
            white_noise_w: 0.032,
            hv_dephasing_d: 0.0,
        };
        let v = model_visibilities(&noisy_state(&cfg).unwrap());
        assert!((v.c_hv - 0.968).abs() < 1e-12);
        assert!((v.c_pm - 0.968).abs() < 1e-12);
    }

    #[test]
    fn white_noise_plus_dephasing_visibilities() {
        let cfg = SourceConfig {
            phi_s: deg(45.0),
            white_noise_w: 0.032,
            hv_dephasing_d: 0.0341,
        };
        let v = model_visibilities(&noisy_state(&cfg).unwrap());
        assert!((v.c_hv - 0.968).abs() < 1e-12);
        assert!((v.c_pm - 0.935).abs() < 1e-3, "{}", v.c_pm);
    }

    #[test]
    fn calibration_examples() {
        assert_eq!(calibrate_noise(1.0, 1.0).unwrap(), (0.0, 0.0));
        let (w, d) = calibrate_noise(0.968, 0.935).unwrap();
        assert!((w - 0.032).abs() < 1e-12);
        assert!((d - 0.0340909).abs() < 1e-6);
        assert_eq!(calibrate_noise(0.5, 0.5).unwrap(), (0.5, 0.0));
        assert!(matches!(
            calibrate_noise(0.9, 0.95),
            Err(Error::UnsupportedRegime { .. })
        ));
        assert!(calibrate_noise(0.0, 0.0).is_err());
    }

    #[test]
    fn calibration_round_trip() {
        for (c_hv, c_pm) in [(0.968, 0.935), (0.99, 0.5), (0.7, 0.7), (1.0, 0.2)] {
            let cfg = calibrated_source(deg(45.0), c_hv, c_pm).unwrap();
            let v = model_visibilities(&noisy_state(&cfg).unwrap());
            assert!((v.c_hv - c_hv).abs() < 1e-6);
            assert!((v.c_pm - c_pm).abs() < 1e-6);
        }
    }

    #[test]
    fn out_of_range_parameters_rejected() {
        let mut cfg = SourceConfig::ideal(deg(10.0));
        cfg.white_noise_w = 1.2;
        assert!(matches!(noisy_state(&cfg), Err(Error::OutOfRange { .. })));
        cfg.white_noise_w = 0.1;
        cfg.hv_dephasing_d = -0.1;
        assert!(noisy_state(&cfg).is_err());
        cfg.hv_dephasing_d = f64::NAN;
        assert!(noisy_state(&cfg).is_err());
    }

    #[test]
    fn noisy_states_are_valid_on_grid() {
        for wi in 0..=20 {
            for di in 0..=20 {
                for phi in [0.0, 5.0, 10.0, 17.5, 20.0, 22.5, 25.0, 27.5, 35.0, 45.0] {
                    let cfg = SourceConfig {
                        phi_s: deg(phi),
                        white_noise_w: wi as f64 * 0.05,
                        hv_dephasing_d: di as f64 * 0.05,
                    };
                    let rho = noisy_state(&cfg).unwrap();
                    rho.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn dephasing_leaves_hv_populations() {
        for phi in [0.0, 15.0, 30.0, 45.0] {
            let base = SourceConfig {
                phi_s: deg(phi),
                white_noise_w: 0.1,
                hv_dephasing_d: 0.0,
            };
            let ctx = MeasurementContext::new(Sides::FF, deg(0.0));
            let p0 = context_probabilities(&noisy_state(&base).unwrap(), ctx).unwrap();
            for d in [0.1, 0.5, 1.0] {
                let cfg = SourceConfig {
                    hv_dephasing_d: d,
                    ..base
                };
                let p = context_probabilities(&noisy_state(&cfg).unwrap(), ctx).unwrap();
                for (x, y) in p.p.iter().zip(p0.p) {
                    assert!((x - y).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn ideal_source_saturates_purity_bound() {
        for i in 0..=90 {
            let phi = deg(i as f64 * 0.5);
            let v = model_visibilities(&noisy_state(&SourceConfig::ideal(phi)).unwrap());
            assert!((v.c_hv - 1.0).abs() < 1e-10);
            assert!((v.purity_length() - 1.0).abs() < 1e-10);
        }
    }
}
