//! Published experimental values used as reference targets.
//!
//! Each table is indexed like [`crate::control::TABLE2_GRID`].

/// `phi_S, C_HV, V_HV, W_E, sqrt(V_HV^2 + W_E^2)`.
pub const VISIBILITIES: [[f64; 5]; 9] = [
    [0.0, 0.975, 0.979, -0.049, 0.980],
    [10.0, 0.974, 0.918, 0.294, 0.963],
    [17.5, 0.976, 0.793, 0.503, 0.938],
    [20.0, 0.973, 0.751, 0.569, 0.943],
    [22.5, 0.971, 0.689, 0.610, 0.920],
    [25.0, 0.973, 0.642, 0.656, 0.918],
    [27.5, 0.975, 0.594, 0.720, 0.933],
    [35.0, 0.971, 0.359, 0.825, 0.900],
    [45.0, 0.968, 0.025, 0.903, 0.903],
];

/// `phi_S, phi_M` found by the three-point probe fit.
pub const BALANCED_PHI_M: [[f64; 2]; 9] = [
    [0.0, 46.3],
    [10.0, 38.8],
    [17.5, 33.7],
    [20.0, 32.7],
    [22.5, 31.4],
    [25.0, 30.5],
    [27.5, 29.5],
    [35.0, 26.7],
    [45.0, 22.2],
];

/// `phi_S, P(0,a), P(a,0), (1 - C_HV)/4`.
pub const SUPPRESSION: [[f64; 4]; 9] = [
    [0.0, 0.0072, 0.0030, 0.0063],
    [10.0, 0.0078, 0.0088, 0.0065],
    [17.5, 0.0110, 0.0070, 0.0060],
    [20.0, 0.0100, 0.0071, 0.0067],
    [22.5, 0.0104, 0.0062, 0.0071],
    [25.0, 0.0125, 0.0086, 0.0068],
    [27.5, 0.0111, 0.0080, 0.0062],
    [35.0, 0.0137, 0.0088, 0.0071],
    [45.0, 0.0104, 0.0097, 0.0081],
];

/// `phi_S, K, stderr(K)`.
pub const CONTRAST: [[f64; 3]; 9] = [
    [0.0, -0.975, 0.026],
    [10.0, -0.575, 0.031],
    [17.5, 0.269, 0.031],
    [20.0, 0.467, 0.032],
    [22.5, 0.518, 0.030],
    [25.0, 0.475, 0.027],
    [27.5, 0.506, 0.026],
    [35.0, 0.265, 0.019],
    [45.0, -0.040, 0.013],
];

/// Source visibilities at `phi_S = 45°`: `(C_HV, C_PM)`.
pub const MAX_ENTANGLED_VISIBILITIES: (f64, f64) = (0.968, 0.935);

/// Row of `table` whose first column is `phi_s`.
pub fn lookup<const N: usize>(table: &[[f64; N]], phi_s: f64) -> Option<&[f64; N]> {
    table.iter().find(|r| (r[0] - phi_s).abs() < 1e-9)
}
