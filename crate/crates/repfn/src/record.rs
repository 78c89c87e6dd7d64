//! The per-instance scan record and its conversion from a core classification.

use repfn_core::theorem::{Classification, Instance};
use repfn_core::{InfeasibleReason, KindFamily, ProfileKind};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKindTag {
    PuncturedPoint,
    FullInterval,
    SharedPoint,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Solution,
    Infeasible,
}

/// Classification of one `(m, profile)` instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub m: usize,
    pub profile_kind: ProfileKindTag,
    pub r: Option<usize>,
    pub status: Status,
    pub matches_theorem: bool,
    pub anomaly: bool,
    pub failed_at: Option<usize>,
    pub reason: Option<String>,
    #[serde(rename = "C")]
    pub c: Option<String>,
    #[serde(rename = "D")]
    pub d: Option<String>,
    pub solve_micros: u64,
}

fn reason_name(reason: InfeasibleReason) -> &'static str {
    match reason {
        InfeasibleReason::NoAssignment => "no_assignment",
        InfeasibleReason::LabelConflict => "label_conflict",
        InfeasibleReason::TailMismatch => "tail_mismatch",
        InfeasibleReason::EmptyD => "empty_d",
    }
}

impl ScanRecord {
    pub fn from_classification(class: &Classification, solve_micros: u64) -> ScanRecord {
        let Instance { m, kind } = class.instance;
        let profile_kind = match kind {
            ProfileKind::PuncturedPoint(_) => ProfileKindTag::PuncturedPoint,
            ProfileKind::FullInterval => ProfileKindTag::FullInterval,
            ProfileKind::SharedPoint(_) => ProfileKindTag::SharedPoint,
        };
        let mut record = ScanRecord {
            m,
            profile_kind,
            r: kind.point(),
            status: Status::Infeasible,
            matches_theorem: class.matches_theorem,
            anomaly: class.anomaly,
            failed_at: None,
            reason: None,
            c: None,
            d: None,
            solve_micros,
        };
        match &class.outcome {
            Ok(sol) => {
                record.status = Status::Solution;
                record.c = Some(sol.c.to_literal());
                record.d = Some(sol.d.to_literal());
            }
            Err(inf) => {
                record.failed_at = Some(inf.at);
                record.reason = Some(reason_name(inf.reason).to_owned());
            }
        }
        record
    }

    pub fn instance(&self) -> Instance {
        let kind = match (self.profile_kind, self.r) {
            (ProfileKindTag::PuncturedPoint, Some(r)) => ProfileKind::PuncturedPoint(r),
            (ProfileKindTag::SharedPoint, Some(r)) => ProfileKind::SharedPoint(r),
            _ => ProfileKind::FullInterval,
        };
        Instance { m: self.m, kind }
    }

    pub fn family(&self) -> KindFamily {
        self.instance().kind.family()
    }

    pub fn is_solution(&self) -> bool {
        self.status == Status::Solution
    }

    pub fn is_violation(&self) -> bool {
        !self.matches_theorem && !self.anomaly
    }

    /// Copy with the timing field zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> ScanRecord {
        ScanRecord { solve_micros: 0, ..self.clone() }
    }
}
