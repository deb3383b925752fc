use serde::{Deserialize, Serialize};

use super::{run_sweep, Axis, SweepRow, SweepSpec};
use crate::error::{Error, Result};
use crate::model::ParamSet;

/// Antiferromagnet material parameters, as ratios to H_ex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialPreset {
    pub name: String,
    /// Exchange field in tesla; informational only.
    pub h_ex_tesla: f64,
    pub h_an_ratio: f64,
    /// Magnon–photon coupling g/H_ex (applied to both g_ac and g_bc).
    pub g_ratio: f64,
    pub kappa_ratio: f64,
    pub kappa_c_ratio: f64,
}

impl MaterialPreset {
    fn new(name: &str, h_ex_tesla: f64, h_an: f64, g: f64, kappa: f64, kappa_c: f64) -> Self {
        MaterialPreset {
            name: name.to_string(),
            h_ex_tesla,
            h_an_ratio: h_an,
            g_ratio: g,
            kappa_ratio: kappa,
            kappa_c_ratio: kappa_c,
        }
    }

    /// Substitute this material's ratios into `base`.
    pub fn apply_to(&self, base: &ParamSet) -> ParamSet {
        ParamSet {
            h_an_ratio: self.h_an_ratio,
            g_ac: self.g_ratio * base.h_ex,
            g_bc: self.g_ratio * base.h_ex,
            kappa: self.kappa_ratio * base.h_ex,
            kappa_c: self.kappa_c_ratio * base.h_ex,
            ..*base
        }
    }
}

/// DPPH, MnF₂, NaNiO₂ and NiO.
pub fn builtin_materials() -> Vec<MaterialPreset> {
    vec![
        MaterialPreset::new("DPPH", 1.73, 1.8e-2, 8e-4, 1.05e-5, 6.12e-4),
        MaterialPreset::new("MnF2", 51.5, 1.63e-2, 1e-3, 9.7e-6, 6e-4),
        MaterialPreset::new("NaNiO2", 4.8, 7.3e-2, 1.2e-2, 1e-3, 5e-3),
        MaterialPreset::new("NiO", 524.0, 2.8e-3, 3e-4, 5e-4, 1e-4),
    ]
}

/// Case-insensitive lookup; "MnF₂" style subscripts are accepted too.
pub fn material(name: &str) -> Result<MaterialPreset> {
    let key = normalize(name);
    builtin_materials()
        .into_iter()
        .find(|m| normalize(&m.name) == key)
        .ok_or_else(|| Error::UnknownMaterial(name.to_string()))
}

fn normalize(name: &str) -> String {
    name.chars()
        .map(|c| match c {
            '₂' => '2',
            c => c.to_ascii_lowercase(),
        })
        .collect()
}

/// Shared sweep layout for a material suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteTemplate {
    pub base: ParamSet,
    pub axis1: Axis,
    pub axis2: Option<Axis>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaterialSweep {
    pub material: MaterialPreset,
    pub rows: Result<Vec<SweepRow>>,
}

/// One sweep per material, with that material's ratios substituted into
/// the template. Failures stay with their material.
pub fn run_material_suite(materials: &[MaterialPreset], template: &SuiteTemplate) -> Vec<MaterialSweep> {
    materials
        .iter()
        .map(|m| {
            let params = m.apply_to(&template.base);
            let rows = params.resolve().and_then(|base| {
                run_sweep(&SweepSpec {
                    base,
                    axis1: template.axis1.clone(),
                    axis2: template.axis2.clone(),
                    h_unit: template.base.h_unit,
                })
            });
            MaterialSweep {
                material: m.clone(),
                rows,
            }
        })
        .collect()
}
