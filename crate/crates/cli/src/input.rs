use std::path::Path;

use highconn::formats::parse_graph;
use highconn::{ColorSet, Graph, Template, TemplateJson};

use crate::CliError;

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// graph6 or edge-list file, detected from the content.
pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    parse_graph(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Template JSON (`S`/`c`/`F` or long field names), validated against `g`
/// and the palette.
pub fn parse_template(text: &str, g: &Graph, colors: ColorSet) -> Result<Template, CliError> {
    let json: TemplateJson =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("template: {e}")))?;
    Template::from_json(&json, g, colors).map_err(|e| CliError::Input(format!("template: {e}")))
}

pub fn read_template(path: &Path, g: &Graph, colors: ColorSet) -> Result<Template, CliError> {
    parse_template(&read(path)?, g, colors)
}

/// JSON array of vertex lists.
pub fn read_partition(path: &Path) -> Result<Vec<Vec<usize>>, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("partition: {e}")))
}

pub fn read_catalog(path: &Path) -> Result<Vec<Graph>, CliError> {
    highconn::lab::ingest_graph6_catalog(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
