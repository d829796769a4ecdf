//! JSON payloads of the subcommands (schemas in docs/schemas).

use serde::{Deserialize, Serialize};

use qdouble_core::compact::ConjClassLabel;
use qdouble_core::report::Report;
use qdouble_core::reps::InducedIrrep;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IrrepRow {
    /// `A:alpha` for the conjugation action (the double's label); absent otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub orbit: usize,
    pub orbit_representative: usize,
    pub orbit_size: usize,
    pub centralizer_order: usize,
    pub alpha_label: usize,
    pub alpha_degree: usize,
    pub dimension: usize,
    /// `[xi * |G| + g][row][col] = [re, im]`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_matrices: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

impl IrrepRow {
    pub fn new(rep: &InducedIrrep, conjugation: bool, matrices: bool) -> Self {
        let e = rep.table_entry(matrices);
        IrrepRow {
            label: conjugation.then(|| format!("{}:{}", rep.orbit().index, e.alpha_label)),
            orbit: rep.orbit().index,
            orbit_representative: e.orbit_representative,
            orbit_size: e.orbit_size,
            centralizer_order: e.centralizer_order,
            alpha_label: e.alpha_label,
            alpha_degree: e.alpha_degree,
            dimension: e.dimension,
            basis_matrices: e.basis_matrices,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct IrrepsOutput {
    pub group: String,
    pub order: usize,
    pub action: String,
    pub set_size: usize,
    pub count: usize,
    pub irreps: Vec<IrrepRow>,
    pub sum_of_squares: usize,
    /// `|X|·|G|`
    pub expected_sum: usize,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct VerifyOutput {
    pub group: String,
    pub action: String,
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<Report>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Constituent {
    pub label: String,
    pub multiplicity: usize,
    pub dimension: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct DimensionLine {
    pub left: usize,
    pub right: usize,
    pub product: usize,
    /// `Σ multiplicity · dimension`
    pub sum: usize,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct TensorOutput {
    pub group: String,
    pub left: String,
    pub right: String,
    pub decomposition: Vec<Constituent>,
    pub dimensions: DimensionLine,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Su2Output {
    pub n: i32,
    #[serde(rename = "L")]
    pub l: String,
    pub order: usize,
    pub band_limit: usize,
    /// Smallest order for which the suite's band requirements are met.
    pub minimal_order: usize,
    pub passed: bool,
    pub report: Report,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Sl2rOutput {
    pub matrix: [f64; 4],
    pub trace: f64,
    pub label: ConjClassLabel,
    pub display: String,
    pub warnings: Vec<String>,
}
