use serde::Serialize;

use crate::Format;

/// Result of re-running a value in floating point.
#[derive(Clone, Debug, Serialize)]
pub struct OracleCheck {
    pub digits: usize,
    pub value: String,
    pub discrepancy: String,
    pub rounds_to_exact: bool,
}

/// One row of the instance table.
#[derive(Clone, Debug, Default, Serialize)]
pub struct InstanceRow {
    pub r: usize,
    pub l: usize,
    pub g: u32,
    pub n: usize,
    pub d: Option<i64>,
    pub dd: Option<i64>,
    pub total_weight: usize,
    pub variant: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerlindeReport {
    pub variant: String,
    pub r: usize,
    pub l: usize,
    pub g: u32,
    pub n: usize,
    pub total_weight: usize,
    pub value: String,
    pub subset_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViReport {
    pub r: usize,
    pub l: usize,
    pub g: u32,
    pub n: usize,
    pub d: i64,
    pub total_weight: usize,
    pub quot_dimension: i64,
    pub value: String,
    pub subset_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ViCheckReport {
    pub r: usize,
    pub l: usize,
    pub g: u32,
    pub n: usize,
    pub d: i64,
    pub total_weight: usize,
    pub intersection: String,
    pub verlinde_twisted_transposed: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleCheck>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalizeReport {
    pub input: rankdual_core::DualityInstance,
    pub normalized: rankdual_core::DualityInstance,
    pub plan: rankdual_core::NormalizationPlan,
    pub postconditions: rankdual_core::duality::Postconditions,
    pub line_degree: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub input: rankdual_core::DualityInstance,
    pub normalized: rankdual_core::DualityInstance,
    pub plan: rankdual_core::NormalizationPlan,
    pub r_side: String,
    pub l_side: String,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<Vec<OracleCheck>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurReport {
    pub diagram: String,
    #[serde(rename = "N")]
    pub order: usize,
    pub subset: Vec<usize>,
    pub value: String,
    pub rational: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

/// One line of a pass/fail table.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteLine {
    pub check: String,
    pub cases: usize,
    pub failures: usize,
    pub status: String,
}

impl SuiteLine {
    pub fn new(check: &str, cases: usize, failures: usize) -> Self {
        let status = if failures == 0 { "pass" } else { "fail" };
        SuiteLine { check: check.into(), cases, failures, status: status.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub lines: Vec<SuiteLine>,
    /// First few failing cases, for diagnosis.
    pub failures: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Report {
    Verlinde(VerlindeReport),
    Vi(ViReport),
    ViCheck(ViCheckReport),
    Normalize(NormalizeReport),
    Verdict(VerdictReport),
    Schur(SchurReport),
    Suite(SuiteReport),
}

fn oracle_ok(o: &Option<OracleCheck>) -> bool {
    o.as_ref().is_none_or(|o| o.rounds_to_exact)
}

fn oracles_ok(o: &Option<Vec<OracleCheck>>) -> bool {
    o.iter().flatten().all(|o| o.rounds_to_exact)
}

fn instance_row(inst: &rankdual_core::DualityInstance, variant: &str, value: String) -> InstanceRow {
    InstanceRow {
        r: inst.r(),
        l: inst.l(),
        g: inst.g(),
        n: inst.n(),
        d: Some(inst.d()),
        dd: Some(inst.dd()),
        total_weight: inst.total_weight() as usize,
        variant: variant.into(),
        value,
    }
}

impl Report {
    /// False when an identity or an oracle comparison failed.
    pub fn passed(&self) -> bool {
        match self {
            Report::Verlinde(r) => oracle_ok(&r.oracle),
            Report::Vi(r) => oracle_ok(&r.oracle),
            Report::ViCheck(r) => r.equal && oracles_ok(&r.oracle),
            Report::Normalize(r) => r.postconditions.all(),
            Report::Verdict(r) => r.equal && oracles_ok(&r.oracle),
            Report::Schur(r) => oracle_ok(&r.oracle),
            Report::Suite(r) => r.lines.iter().all(|l| l.failures == 0),
        }
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self).map_err(|e| e.to_string())? + "\n"),
            Format::Csv => self.csv(),
        }
    }

    fn csv(&self) -> Result<String, String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let res = match self {
            Report::Verlinde(r) => w.serialize(InstanceRow {
                r: r.r,
                l: r.l,
                g: r.g,
                n: r.n,
                total_weight: r.total_weight,
                variant: r.variant.clone(),
                value: r.value.clone(),
                ..Default::default()
            }),
            Report::Vi(r) => w.serialize(InstanceRow {
                r: r.r,
                l: r.l,
                g: r.g,
                n: r.n,
                d: Some(r.d),
                total_weight: r.total_weight,
                variant: "vi".into(),
                value: r.value.clone(),
                ..Default::default()
            }),
            Report::ViCheck(r) => {
                let row = |variant: &str, value: &String| InstanceRow {
                    r: r.r,
                    l: r.l,
                    g: r.g,
                    n: r.n,
                    d: Some(r.d),
                    total_weight: r.total_weight,
                    variant: variant.into(),
                    value: value.clone(),
                    ..Default::default()
                };
                w.serialize(row("vi", &r.intersection))
                    .and_then(|_| w.serialize(row("twisted-transposed", &r.verlinde_twisted_transposed)))
            }
            Report::Normalize(r) => w.serialize(instance_row(&r.normalized, "normalized", String::new())),
            Report::Verdict(r) => w
                .serialize(instance_row(&r.normalized, "twisted", r.r_side.clone()))
                .and_then(|_| w.serialize(instance_row(&r.normalized, "twisted-transposed", r.l_side.clone()))),
            Report::Schur(r) => w
                .write_record(["diagram", "N", "subset", "value"])
                .and_then(|_| {
                    let subset: Vec<String> = r.subset.iter().map(|s| s.to_string()).collect();
                    w.write_record([r.diagram.clone(), r.order.to_string(), subset.join(" "), r.value.clone()])
                }),
            Report::Suite(r) => r.lines.iter().try_for_each(|l| w.serialize(l)),
        };
        res.map_err(|e| e.to_string())?;
        let bytes = w.into_inner().map_err(|e| e.to_string())?;
        String::from_utf8(bytes).map_err(|e| e.to_string())
    }
}
