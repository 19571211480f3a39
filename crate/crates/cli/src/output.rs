use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::RunConfig;

/// One plot-ready CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub parameter: String,
    pub value: f64,
    pub bound: Option<f64>,
}

impl Row {
    pub fn new(parameter: impl Into<String>, value: f64, bound: Option<f64>) -> Self {
        Row {
            parameter: parameter.into(),
            value,
            bound,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_seconds: Option<f64>,
    pub result: Value,
    #[serde(skip)]
    pub rows: Vec<Row>,
}

pub fn to_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports are plain data");
    text.push('\n');
    text
}

pub fn to_csv(rows: &[Row]) -> Result<String, csv::Error> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(["parameter", "value", "bound"])?;
    for row in rows {
        let bound = row.bound.map(|b| b.to_string()).unwrap_or_default();
        writer.write_record([row.parameter.as_str(), &row.value.to_string(), &bound])?;
    }
    let bytes = writer.into_inner().map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("CSV fields are UTF-8"))
}
