//! JSON formats for states and classification reports.
//!
//! State:
//!
//! ```json
//! {"n": 3, "convention": "canonical",
//!  "weights": [{"beta": "000", "plus": 0.3, "minus": 0.0}]}
//! ```
//!
//! `beta` is the bit-string `l_1 … l_n`; classes that are not listed have
//! zero weight. Under `"canonical"` (the default) each class is listed once
//! by its representative without qubit 1 and weights sum to 1. Under
//! `"subsets"` any subset may be listed, a class's weight is the mean of its two
//! subset entries, and the entries sum to 2.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::analytic::{ClassificationReport, Coefficient, PartitionVerdict, Witness};
use crate::error::{Error, Result};
use crate::state::{GhzDiagonalState, WeightPair};
use crate::subsets::{Bipartition, SubsetMask};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Canonical,
    Subsets,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: usize,
    #[serde(default)]
    pub convention: Convention,
    pub weights: Vec<WeightEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightEntry {
    pub beta: String,
    #[serde(default)]
    pub plus: f64,
    #[serde(default)]
    pub minus: f64,
}

impl StateFile {
    pub fn from_state(state: &GhzDiagonalState) -> Self {
        let weights = state
            .weights()
            .iter()
            .enumerate()
            .map(|(i, w)| WeightEntry {
                beta: SubsetMask::new(state.n(), i as u64).expect("canonical index").to_bit_string(),
                plus: w.plus,
                minus: w.minus,
            })
            .collect();
        Self { n: state.n(), convention: Convention::Canonical, weights }
    }

    pub fn into_state(self) -> Result<GhzDiagonalState> {
        let n = self.n;
        if !(2..=crate::subsets::MAX_QUBITS).contains(&n) {
            return Err(Error::Format(format!("n: {n} outside 2..={}", crate::subsets::MAX_QUBITS)));
        }
        let mut seen = HashSet::new();
        let mut entries = Vec::with_capacity(self.weights.len());
        for (i, w) in self.weights.iter().enumerate() {
            let beta = SubsetMask::parse_bits(&w.beta)
                .map_err(|_| Error::Format(format!("weights[{i}].beta: invalid bit-string {:?}", w.beta)))?;
            if beta.n() != n {
                return Err(Error::Format(format!(
                    "weights[{i}].beta: {:?} has {} digits, expected {n}",
                    w.beta,
                    beta.n()
                )));
            }
            if self.convention == Convention::Canonical && !beta.is_canonical_beta() {
                return Err(Error::Format(format!(
                    "weights[{i}].beta: {:?} is not canonical (use {:?})",
                    w.beta,
                    beta.complement().to_bit_string()
                )));
            }
            if !seen.insert(beta) {
                return Err(Error::Format(format!("weights[{i}].beta: duplicate {:?}", w.beta)));
            }
            for (field, v) in [("plus", w.plus), ("minus", w.minus)] {
                if !v.is_finite() {
                    return Err(Error::Format(format!("weights[{i}].{field}: not a finite number")));
                }
                if v < -crate::state::CLAMP_TOLERANCE {
                    return Err(Error::NegativeWeight { field: format!("weights[{i}].{field}"), value: v });
                }
            }
            entries.push((beta, WeightPair::new(w.plus, w.minus)));
        }
        match self.convention {
            Convention::Canonical => {
                let mut weights = vec![WeightPair::default(); 1 << (n - 1)];
                for (beta, w) in entries {
                    weights[beta.bits() as usize] = w;
                }
                GhzDiagonalState::from_weights(n, weights)
            }
            Convention::Subsets => GhzDiagonalState::from_subset_weights(n, &entries),
        }
    }
}

pub fn parse_state(text: &str) -> Result<GhzDiagonalState> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("json: {e}")))?;
    file.into_state()
}

pub fn state_to_json(state: &GhzDiagonalState) -> String {
    serde_json::to_string_pretty(&StateFile::from_state(state)).expect("state serializes")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub n: usize,
    pub full_entangled: bool,
    pub partitions: Vec<PartitionRecord>,
    pub ppt_partitions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub alpha1: String,
    pub ppt: bool,
    pub worst: WitnessRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub beta: String,
    pub coeff: String,
    pub value: f64,
}

impl From<&ClassificationReport> for ReportFile {
    fn from(r: &ClassificationReport) -> Self {
        Self {
            n: r.n,
            full_entangled: r.full_entangled,
            partitions: r
                .partitions
                .iter()
                .map(|v| PartitionRecord {
                    alpha1: v.partition.alpha1().to_bit_string(),
                    ppt: v.is_ppt,
                    worst: WitnessRecord {
                        beta: v.worst.beta.to_bit_string(),
                        coeff: v.worst.coefficient.as_str().to_string(),
                        value: v.worst.value,
                    },
                })
                .collect(),
            ppt_partitions: r.ppt_partitions.iter().map(|p| p.alpha1().to_bit_string()).collect(),
        }
    }
}

impl ReportFile {
    pub fn into_report(self) -> Result<ClassificationReport> {
        let partitions = self
            .partitions
            .into_iter()
            .map(|p| {
                let partition = Bipartition::new(SubsetMask::parse_bits(&p.alpha1)?)?;
                let coefficient = Coefficient::parse(&p.worst.coeff)
                    .ok_or_else(|| Error::Format(format!("unknown coefficient {:?}", p.worst.coeff)))?;
                Ok(PartitionVerdict {
                    partition,
                    is_ppt: p.ppt,
                    worst: Witness { beta: SubsetMask::parse_bits(&p.worst.beta)?, coefficient, value: p.worst.value },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ppt_partitions = self
            .ppt_partitions
            .iter()
            .map(|s| Bipartition::new(SubsetMask::parse_bits(s)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassificationReport { n: self.n, partitions, full_entangled: self.full_entangled, ppt_partitions })
    }
}

pub fn report_to_json(report: &ClassificationReport) -> String {
    serde_json::to_string(&ReportFile::from(report)).expect("report serializes")
}

pub fn parse_report(text: &str) -> Result<ClassificationReport> {
    let file: ReportFile = serde_json::from_str(text).map_err(|e| Error::Format(format!("json: {e}")))?;
    file.into_report()
}
