//! System parameters, derived frequencies/couplings, and the drift and noise
//! matrices of the linearized quadrature dynamics.
//!
//! Every frequency and rate is a plain `f64` in units of the exchange field
//! H_ex. Quadratures are always ordered (X_a, Y_a, X_b, Y_b, X_c, Y_c).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, DIM};

/// Vacuum permeability, SI.
pub const MU_0: f64 = 1.256_637_062_12e-6;

/// Which reentrant-cavity resonance the magnons see.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CavityMode {
    /// Opposite post currents, ω₊ = ω_c + Δ_F.
    #[serde(alias = "Bright")]
    Bright,
    /// Parallel post currents, ω₋ = ω_c − Δ_F.
    #[serde(alias = "Dark")]
    Dark,
}

impl CavityMode {
    pub fn sign(self) -> f64 {
        match self {
            CavityMode::Bright => 1.0,
            CavityMode::Dark => -1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CavityMode::Bright => "bright",
            CavityMode::Dark => "dark",
        }
    }
}

impl std::str::FromStr for CavityMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "bright" => Ok(CavityMode::Bright),
            "dark" => Ok(CavityMode::Dark),
            other => Err(format!("unknown cavity mode `{other}` (expected bright or dark)")),
        }
    }
}

/// Unit of the external static field in user-facing inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldUnit {
    /// Spin-flop field H_sp.
    #[serde(alias = "hsp", alias = "HSP")]
    Hsp,
    /// Exchange field H_ex.
    #[serde(alias = "hex", alias = "HEX")]
    Hex,
}

impl std::str::FromStr for FieldUnit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "hsp" => Ok(FieldUnit::Hsp),
            "hex" => Ok(FieldUnit::Hex),
            other => Err(format!("unknown field unit `{other}` (expected Hsp or Hex)")),
        }
    }
}

/// Physical inputs, all in units of H_ex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub h_ex_a: f64,
    pub h_ex_b: f64,
    pub h_an_a: f64,
    pub h_an_b: f64,
    /// External static field.
    pub h: f64,
    pub g_ab: f64,
    pub g_ac: f64,
    pub g_bc: f64,
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub kappa_c: f64,
    /// Average cavity frequency.
    pub omega_c: f64,
    /// Cavity drift frequency.
    pub delta_f: f64,
    pub cavity_mode: CavityMode,
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    check_finite(name, value)?;
    if value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be strictly positive",
        })
    }
}

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    check_finite(name, value)?;
    if value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be non-negative",
        })
    }
}

impl SystemParams {
    /// Sign and finiteness invariants, plus the Bogoliubov bound on `g_ab`.
    pub fn validate(&self) -> Result<()> {
        check_positive("kappa_a", self.kappa_a)?;
        check_positive("kappa_b", self.kappa_b)?;
        check_positive("kappa_c", self.kappa_c)?;
        check_non_negative("h_ex_a", self.h_ex_a)?;
        check_non_negative("h_ex_b", self.h_ex_b)?;
        check_non_negative("h_an_a", self.h_an_a)?;
        check_non_negative("h_an_b", self.h_an_b)?;
        check_non_negative("g_ab", self.g_ab)?;
        check_non_negative("g_ac", self.g_ac)?;
        check_non_negative("g_bc", self.g_bc)?;
        check_finite("h", self.h)?;
        check_finite("omega_c", self.omega_c)?;
        check_finite("delta_f", self.delta_f)?;
        let limit = self.mean_magnon_frequency();
        if self.g_ab >= limit {
            return Err(Error::BogoliubovDivergence {
                g_ab: self.g_ab,
                limit,
            });
        }
        Ok(())
    }

    pub fn omega_a(&self) -> f64 {
        self.h_ex_b + self.h_an_a + self.h
    }

    pub fn omega_b(&self) -> f64 {
        self.h_ex_a + self.h_an_b - self.h
    }

    /// (ω_a + ω_b)/2, independent of `h`.
    pub fn mean_magnon_frequency(&self) -> f64 {
        0.5 * (self.omega_a() + self.omega_b())
    }

    /// √(H_an(H_an + 2H_ex)), with sublattice averages of H_an and H_ex.
    pub fn spin_flop_field(&self) -> f64 {
        let h_an = 0.5 * (self.h_an_a + self.h_an_b);
        let h_ex = 0.5 * (self.h_ex_a + self.h_ex_b);
        (h_an * (h_an + 2.0 * h_ex)).sqrt()
    }

    /// ω₊ for bright, ω₋ for dark.
    pub fn cavity_frequency(&self) -> f64 {
        self.omega_c + self.cavity_mode.sign() * self.delta_f
    }

    pub fn with_cavity_mode(mut self, mode: CavityMode) -> Self {
        self.cavity_mode = mode;
        self
    }

    /// Field in units of H_sp.
    pub fn h_over_hsp(&self) -> f64 {
        self.h / self.spin_flop_field()
    }

    /// Set the field from a value expressed in units of H_sp.
    pub fn with_h_over_hsp(mut self, h_over_hsp: f64) -> Self {
        self.h = h_over_hsp * self.spin_flop_field();
        self
    }
}

/// User-facing parameter set. The serialized key names are the
/// configuration-file keys.
///
/// Both sublattices share `h_ex` and `h_an = h_an_ratio * h_ex`. The cavity
/// frequencies are given relative to H_sp and converted on [`resolve`].
///
/// [`resolve`]: ParamSet::resolve
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamSet {
    pub h_ex: f64,
    pub h_an_ratio: f64,
    pub h: f64,
    pub h_unit: FieldUnit,
    pub g_ab: f64,
    pub g_ac: f64,
    pub g_bc: f64,
    /// Magnon damping, κ_a = κ_b.
    pub kappa: f64,
    pub kappa_c: f64,
    pub omega_c_over_hsp: f64,
    pub delta_f_over_hsp: f64,
    pub cavity_mode: CavityMode,
}

impl Default for ParamSet {
    /// The MnF₂-like reference set: H_an = 0.0163 H_ex, g = 0.01 H_ex,
    /// g_ab = H_ex, κ_c = 3κ = 0.003 H_ex, ω_c/H_sp = 0.85, Δ_F/H_sp = 0.05.
    fn default() -> Self {
        ParamSet {
            h_ex: 1.0,
            h_an_ratio: 0.0163,
            h: 0.0,
            h_unit: FieldUnit::Hsp,
            g_ab: 1.0,
            g_ac: 0.01,
            g_bc: 0.01,
            kappa: 0.001,
            kappa_c: 0.003,
            omega_c_over_hsp: 0.85,
            delta_f_over_hsp: 0.05,
            cavity_mode: CavityMode::Bright,
        }
    }
}

impl ParamSet {
    /// Validate against the config key names and convert to H_ex units.
    pub fn resolve(&self) -> Result<SystemParams> {
        check_positive("h_ex", self.h_ex)?;
        check_non_negative("h_an_ratio", self.h_an_ratio)?;
        check_finite("h", self.h)?;
        check_non_negative("g_ab", self.g_ab)?;
        check_non_negative("g_ac", self.g_ac)?;
        check_non_negative("g_bc", self.g_bc)?;
        check_positive("kappa", self.kappa)?;
        check_positive("kappa_c", self.kappa_c)?;
        check_finite("omega_c_over_hsp", self.omega_c_over_hsp)?;
        check_finite("delta_f_over_hsp", self.delta_f_over_hsp)?;

        let h_an = self.h_an_ratio * self.h_ex;
        let h_sp = (h_an * (h_an + 2.0 * self.h_ex)).sqrt();
        let h = match self.h_unit {
            FieldUnit::Hsp => self.h * h_sp,
            FieldUnit::Hex => self.h,
        };
        let params = SystemParams {
            h_ex_a: self.h_ex,
            h_ex_b: self.h_ex,
            h_an_a: h_an,
            h_an_b: h_an,
            h,
            g_ab: self.g_ab,
            g_ac: self.g_ac,
            g_bc: self.g_bc,
            kappa_a: self.kappa,
            kappa_b: self.kappa,
            kappa_c: self.kappa_c,
            omega_c: self.omega_c_over_hsp * h_sp,
            delta_f: self.delta_f_over_hsp * h_sp,
            cavity_mode: self.cavity_mode,
        };
        params.validate()?;
        Ok(params)
    }
}

/// Frequencies and couplings derived from [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub omega_a: f64,
    pub omega_b: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub h_sp: f64,
    /// Bogoliubov angle, tanh 2θ = −2g_ab/(ω_a + ω_b).
    pub theta: f64,
    pub omega_alpha: f64,
    pub omega_beta: f64,
    pub g_alpha_c: f64,
    pub g_beta_c: f64,
    pub cavity_mode: CavityMode,
}

impl DerivedQuantities {
    /// Frequency of the cavity resonance selected by `mode`.
    pub fn cavity_frequency(&self, mode: CavityMode) -> f64 {
        match mode {
            CavityMode::Bright => self.omega_plus,
            CavityMode::Dark => self.omega_minus,
        }
    }
}

/// Magnon frequencies, cavity resonances and the Bogoliubov-mode picture.
pub fn derive(params: &SystemParams) -> Result<DerivedQuantities> {
    params.validate()?;
    let omega_a = params.omega_a();
    let omega_b = params.omega_b();
    let mean = 0.5 * (omega_a + omega_b);
    let half_split = 0.5 * (omega_a - omega_b);
    let theta = 0.5 * (-params.g_ab / mean).atanh();
    let root = (mean * mean - params.g_ab * params.g_ab).sqrt();
    let (ch, sh) = (theta.cosh(), theta.sinh());
    Ok(DerivedQuantities {
        omega_a,
        omega_b,
        omega_plus: params.omega_c + params.delta_f,
        omega_minus: params.omega_c - params.delta_f,
        h_sp: params.spin_flop_field(),
        theta,
        omega_alpha: root + half_split,
        omega_beta: root - half_split,
        g_alpha_c: params.g_ac * ch + params.g_bc * sh,
        g_beta_c: params.g_ac * sh + params.g_bc * ch,
        cavity_mode: params.cavity_mode,
    })
}

/// 6x6 drift matrix of the quadrature Langevin equations.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftMatrix(Matrix);

impl DriftMatrix {
    /// Wrap an arbitrary 6x6 matrix (for testing solvers on random input).
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        if m.rows() != DIM || m.cols() != DIM {
            return Err(Error::Shape {
                expected: "6x6",
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        Ok(DriftMatrix(m))
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

/// Diagonal noise (diffusion) matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseMatrix {
    diag: [f64; DIM],
}

impl NoiseMatrix {
    /// Every entry must be strictly positive.
    pub fn from_diagonal(diag: [f64; DIM]) -> Result<Self> {
        for &d in &diag {
            check_positive("noise diagonal", d)?;
        }
        Ok(NoiseMatrix { diag })
    }

    pub fn diagonal(&self) -> &[f64; DIM] {
        &self.diag
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_diagonal(&self.diag)
    }
}

/// The drift matrix for `params`, with the cavity block at ω₊ or ω₋ per
/// `params.cavity_mode`.
pub fn build_drift_matrix(params: &SystemParams) -> Result<DriftMatrix> {
    params.validate()?;
    let (ka, kb, kc) = (params.kappa_a, params.kappa_b, params.kappa_c);
    let (wa, wb, wc) = (params.omega_a(), params.omega_b(), params.cavity_frequency());
    let (gab, gac, gbc) = (params.g_ab, params.g_ac, params.g_bc);
    let m = Matrix::from_rows(&[
        [-ka, wa, 0.0, -gab, 0.0, -gac],
        [-wa, -ka, -gab, 0.0, -gac, 0.0],
        [0.0, -gab, -kb, wb, 0.0, gbc],
        [-gab, 0.0, -wb, -kb, -gbc, 0.0],
        [0.0, -gac, 0.0, gbc, -kc, wc],
        [-gac, 0.0, -gbc, 0.0, -wc, -kc],
    ]);
    Ok(DriftMatrix(m))
}

/// diag(κ_a, κ_a, κ_b, κ_b, κ_c, κ_c), vacuum input noise.
pub fn build_noise_matrix(params: &SystemParams) -> Result<NoiseMatrix> {
    check_positive("kappa_a", params.kappa_a)?;
    check_positive("kappa_b", params.kappa_b)?;
    check_positive("kappa_c", params.kappa_c)?;
    let (ka, kb, kc) = (params.kappa_a, params.kappa_b, params.kappa_c);
    NoiseMatrix::from_diagonal([ka, ka, kb, kb, kc, kc])
}

/// Magnon–photon coupling √(μ₀ ω S N / 2V) from sample geometry (SI inputs).
pub fn coupling_from_geometry(
    spin_magnitude: f64,
    n_spins: f64,
    volume: f64,
    omega: f64,
) -> Result<f64> {
    for (name, value) in [
        ("spin_magnitude", spin_magnitude),
        ("n_spins", n_spins),
        ("volume", volume),
        ("omega", omega),
    ] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveGeometry { name, value });
        }
    }
    Ok((MU_0 * omega * spin_magnitude * n_spins / (2.0 * volume)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> SystemParams {
        ParamSet::default().resolve().unwrap()
    }

    #[test]
    fn symmetric_bogoliubov_frequencies() {
        let h_sp = reference().spin_flop_field();
        for h_over in [0.0, 0.1, 0.37, 1.8] {
            let p = reference().with_h_over_hsp(h_over);
            let dq = derive(&p).unwrap();
            assert!((dq.omega_alpha - (h_sp + p.h)).abs() < 1e-12);
            assert!((dq.omega_beta - (h_sp - p.h)).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_magnon_coupling_is_identity_transform() {
        let p = SystemParams {
            g_ab: 0.0,
            g_ac: 0.02,
            g_bc: 0.005,
            ..reference().with_h_over_hsp(0.3)
        };
        let dq = derive(&p).unwrap();
        assert_eq!(dq.theta, 0.0);
        assert!((dq.omega_alpha - dq.omega_a).abs() < 1e-15);
        assert!((dq.omega_beta - dq.omega_b).abs() < 1e-15);
        assert_eq!(dq.g_alpha_c, 0.02);
        assert_eq!(dq.g_beta_c, 0.005);
    }

    #[test]
    fn divergent_magnon_coupling_rejected() {
        let p = SystemParams {
            g_ab: 1.0163,
            ..reference()
        };
        assert!(matches!(
            derive(&p),
            Err(Error::BogoliubovDivergence { .. })
        ));
    }

    #[test]
    fn bright_drift_entry_is_omega_plus() {
        let p = reference();
        let a = build_drift_matrix(&p).unwrap();
        let h_sp = p.spin_flop_field();
        assert!((a.as_matrix()[(4, 5)] - 0.9 * h_sp).abs() < 1e-15);
        assert!((a.as_matrix()[(5, 4)] + 0.9 * h_sp).abs() < 1e-15);
        let d = build_drift_matrix(&p.with_cavity_mode(CavityMode::Dark)).unwrap();
        assert!((d.as_matrix()[(4, 5)] - 0.8 * h_sp).abs() < 1e-15);
    }

    #[test]
    fn decoupled_drift_is_block_diagonal() {
        let p = SystemParams {
            g_ab: 0.0,
            g_ac: 0.0,
            g_bc: 0.0,
            ..reference().with_h_over_hsp(0.2)
        };
        let a = build_drift_matrix(&p).unwrap();
        let m = a.as_matrix();
        let blocks = [
            (p.kappa_a, p.omega_a()),
            (p.kappa_b, p.omega_b()),
            (p.kappa_c, p.cavity_frequency()),
        ];
        for i in 0..6 {
            for j in 0..6 {
                let (bi, bj) = (i / 2, j / 2);
                let want = if bi != bj {
                    0.0
                } else {
                    let (k, w) = blocks[bi];
                    match (i % 2, j % 2) {
                        (0, 0) | (1, 1) => -k,
                        (0, 1) => w,
                        _ => -w,
                    }
                };
                assert_eq!(m[(i, j)], want, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn reference_noise_matrix() {
        let d = build_noise_matrix(&reference()).unwrap();
        assert_eq!(d.diagonal(), &[0.001, 0.001, 0.001, 0.001, 0.003, 0.003]);
    }

    #[test]
    fn uniform_damping_noise_is_scaled_identity() {
        let p = SystemParams {
            kappa_a: 0.02,
            kappa_b: 0.02,
            kappa_c: 0.02,
            ..reference()
        };
        assert_eq!(
            build_noise_matrix(&p).unwrap().to_matrix(),
            Matrix::identity(6).scale(0.02)
        );
    }

    #[test]
    fn param_set_names_offending_key() {
        let bad = ParamSet {
            kappa: -1.0,
            ..ParamSet::default()
        };
        match bad.resolve() {
            Err(Error::InvalidParameter { name, .. }) => assert_eq!(name, "kappa"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn field_units_convert_at_resolve() {
        let sp = ParamSet {
            h: 0.5,
            ..ParamSet::default()
        }
        .resolve()
        .unwrap();
        let ex = ParamSet {
            h: 0.5 * sp.spin_flop_field(),
            h_unit: FieldUnit::Hex,
            ..ParamSet::default()
        }
        .resolve()
        .unwrap();
        assert!((sp.h - ex.h).abs() < 1e-15);
        assert!((sp.h_over_hsp() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn geometry_scaling() {
        let g = coupling_from_geometry(2.5, 1e18, 1e-9, 1e11).unwrap();
        let g4n = coupling_from_geometry(2.5, 4e18, 1e-9, 1e11).unwrap();
        let g4v = coupling_from_geometry(2.5, 1e18, 4e-9, 1e11).unwrap();
        assert!((g4n / g - 2.0).abs() < 1e-14);
        assert!((g / g4v - 2.0).abs() < 1e-14);
        assert!(matches!(
            coupling_from_geometry(2.5, 0.0, 1e-9, 1e11),
            Err(Error::NonPositiveGeometry { name: "n_spins", .. })
        ));
        assert!(coupling_from_geometry(-1.0, 1.0, 1.0, 1.0).is_err());
    }
}
