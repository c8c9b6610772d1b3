//! Input and output formats: grid CSV, graph JSON, field CSV.
//!
//! Grid CSV is a rectangular token matrix, one row per line:
//! `#` marks an outside cell, an empty token or `?` an unknown interior
//! cell, and a numeric literal a fixed value (a boundary anchor). A file
//! whose inside cells are all numeric doubles as a complete field.
//!
//! Graph JSON is `{"vertices": n, "edges": [[u, v], ...],
//! "boundary": {"vertex": value, ...}}`.
//!
//! Emitted field CSV mirrors the input grid (outside cells stay `#`) and
//! prints every value with 17 significant digits, which f64 parsing
//! recovers bit-exactly; scientific notation is accepted on input but
//! never emitted.

use gradvar::domain::{BoundaryData, GridGraph};
use gradvar::{GraphDomain, GridDomain, ScalarField};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellToken {
    Outside,
    Unknown,
    Fixed(f64),
}

/// Parsed grid CSV: a rectangular token matrix.
#[derive(Debug, Clone)]
pub struct GridFileModel {
    pub width: usize,
    pub height: usize,
    pub tokens: Vec<CellToken>,
}

impl GridFileModel {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut lines: Vec<&str> = text.lines().collect();
        while lines.last().is_some_and(|l| l.trim().is_empty()) {
            lines.pop();
        }
        let mut rows: Vec<Vec<CellToken>> = Vec::new();
        for (row_index, line) in lines.into_iter().enumerate() {
            let mut row = Vec::new();
            for (col_index, raw) in line.split(',').enumerate() {
                let token = raw.trim();
                let cell = match token {
                    "#" => CellToken::Outside,
                    "" | "?" => CellToken::Unknown,
                    literal => match literal.parse::<f64>() {
                        Ok(value) if value.is_finite() => CellToken::Fixed(value),
                        _ => {
                            return Err(CliError::input(format!(
                                "unparseable token {:?} at row {}, column {}",
                                token,
                                row_index + 1,
                                col_index + 1
                            )))
                        }
                    },
                };
                row.push(cell);
            }
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(CliError::input(format!(
                        "ragged row {}: {} columns, expected {}",
                        row_index + 1,
                        row.len(),
                        first.len()
                    )));
                }
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(CliError::input("empty grid file".to_string()));
        }
        let width = rows[0].len();
        let height = rows.len();
        Ok(Self {
            width,
            height,
            tokens: rows.into_iter().flatten().collect(),
        })
    }

    pub fn to_grid(&self) -> Result<GridDomain, CliError> {
        let mask = self
            .tokens
            .iter()
            .map(|t| !matches!(t, CellToken::Outside))
            .collect();
        GridDomain::new(self.width, self.height, Some(mask))
            .map_err(|e| CliError::input(e.to_string()))
    }

    /// Anchors: one entry per fixed cell, keyed by induced-graph vertex.
    pub fn boundary(&self, gg: &GridGraph) -> BoundaryData {
        let mut boundary = BoundaryData::new();
        for v in 0..gg.graph.vertex_count() {
            let (r, c) = gg.cell_of(v);
            if let CellToken::Fixed(value) = self.tokens[r * self.width + c] {
                boundary.insert(v, value);
            }
        }
        boundary
    }

    /// Complete field when every inside cell is numeric.
    pub fn full_field(&self, gg: &GridGraph, level_step: f64) -> Option<ScalarField> {
        let mut values = Vec::with_capacity(gg.graph.vertex_count());
        for v in 0..gg.graph.vertex_count() {
            let (r, c) = gg.cell_of(v);
            match self.tokens[r * self.width + c] {
                CellToken::Fixed(value) => values.push(value),
                _ => return None,
            }
        }
        ScalarField::with_step(values, level_step).ok()
    }
}

/// A parsed problem: the domain with its grid layout (when the input was a
/// grid), the anchors, and the complete field if one was given.
pub struct ProblemInput {
    pub graph: GraphDomain,
    pub layout: Option<(GridFileModel, GridGraph)>,
    pub boundary: BoundaryData,
    pub full_field: Option<ScalarField>,
}

pub fn parse_grid_csv(text: &str, level_step: f64) -> Result<ProblemInput, CliError> {
    let model = GridFileModel::parse(text)?;
    let grid = model.to_grid()?;
    let gg = grid.to_graph();
    let boundary = model.boundary(&gg);
    let full_field = model.full_field(&gg, level_step);
    Ok(ProblemInput {
        graph: gg.graph.clone(),
        boundary,
        full_field,
        layout: Some((model, gg)),
    })
}

pub fn parse_graph_json(text: &str, level_step: f64) -> Result<ProblemInput, CliError> {
    #[derive(serde::Deserialize)]
    struct GraphFile {
        vertices: usize,
        edges: Vec<(usize, usize)>,
        #[serde(default)]
        boundary: std::collections::BTreeMap<String, f64>,
    }
    let file: GraphFile =
        serde_json::from_str(text).map_err(|e| CliError::input(format!("invalid JSON: {e}")))?;
    let graph = GraphDomain::from_edges(file.vertices, &file.edges)
        .map_err(|e| CliError::input(e.to_string()))?;
    let mut boundary = BoundaryData::new();
    for (key, value) in &file.boundary {
        let vertex: usize = key
            .parse()
            .map_err(|_| CliError::input(format!("boundary key {key:?} is not a vertex index")))?;
        if vertex >= file.vertices {
            return Err(CliError::input(format!(
                "boundary vertex {vertex} out of range for {} vertices",
                file.vertices
            )));
        }
        if !value.is_finite() {
            return Err(CliError::input(format!(
                "boundary value for vertex {vertex} is not finite"
            )));
        }
        boundary.insert(vertex, *value);
    }
    let full_field = (boundary.len() == file.vertices).then(|| {
        ScalarField::with_step((0..file.vertices).map(|v| boundary.get(v).unwrap()).collect(), level_step)
            .expect("validated step")
    });
    Ok(ProblemInput {
        graph,
        layout: None,
        boundary,
        full_field,
    })
}

/// Formats with exactly 17 significant digits and no exponent, so parsing
/// the text recovers the original f64 bit-for-bit.
pub fn format_sig17(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let negative = value < 0.0;
    let sci = format!("{:.16e}", value.abs()); // d.dddddddddddddddde<exp>
    let (mantissa, exponent) = sci.split_once('e').expect("std float formatting");
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 17);
    let exponent: i32 = exponent.parse().expect("std float formatting");

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exponent >= 16 {
        out.push_str(&digits);
        for _ in 0..(exponent - 16) {
            out.push('0');
        }
    } else if exponent >= 0 {
        let split = exponent as usize + 1;
        out.push_str(&digits[..split]);
        out.push('.');
        out.push_str(&digits[split..]);
    } else {
        out.push_str("0.");
        for _ in 0..(-exponent - 1) {
            out.push('0');
        }
        out.push_str(&digits);
    }
    out
}

/// Field CSV mirroring the grid layout, or a single row for plain graphs.
pub fn field_to_csv(field: &ScalarField, layout: Option<&(GridFileModel, GridGraph)>) -> String {
    match layout {
        Some((model, gg)) => {
            let mut out = String::new();
            for r in 0..model.height {
                let row: Vec<String> = (0..model.width)
                    .map(|c| match gg.vertex_at(r, c) {
                        Some(v) => format_sig17(field.value(v)),
                        None => "#".to_string(),
                    })
                    .collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        None => {
            let row: Vec<String> = field.values().iter().map(|&x| format_sig17(x)).collect();
            format!("{}\n", row.join(","))
        }
    }
}

/// Parses a field CSV against the domain it must cover. Grid-shaped inputs
/// must match the input grid's dimensions and outside pattern; plain-graph
/// inputs take a single all-numeric row.
pub fn parse_field_csv(
    text: &str,
    graph: &GraphDomain,
    layout: Option<&(GridFileModel, GridGraph)>,
    level_step: f64,
) -> Result<ScalarField, CliError> {
    let model = GridFileModel::parse(text)?;
    match layout {
        Some((input_model, gg)) => {
            if model.width != input_model.width || model.height != input_model.height {
                return Err(CliError::input(format!(
                    "field grid is {}x{}, input grid is {}x{}",
                    model.width, model.height, input_model.width, input_model.height
                )));
            }
            for (i, (a, b)) in input_model.tokens.iter().zip(&model.tokens).enumerate() {
                let outside_in = matches!(a, CellToken::Outside);
                let outside_field = matches!(b, CellToken::Outside);
                if outside_in != outside_field {
                    return Err(CliError::input(format!(
                        "field outside pattern differs from the input grid at row {}, column {}",
                        i / model.width + 1,
                        i % model.width + 1
                    )));
                }
            }
            model
                .full_field(gg, level_step)
                .ok_or_else(|| CliError::input("field file has unknown cells".to_string()))
        }
        None => {
            if model.height != 1 {
                return Err(CliError::input(format!(
                    "field for a graph domain must be a single row, got {} rows",
                    model.height
                )));
            }
            let mut values = Vec::with_capacity(model.tokens.len());
            for (i, token) in model.tokens.iter().enumerate() {
                match token {
                    CellToken::Fixed(x) => values.push(*x),
                    _ => {
                        return Err(CliError::input(format!(
                            "field value missing at column {}",
                            i + 1
                        )))
                    }
                }
            }
            if values.len() != graph.vertex_count() {
                return Err(CliError::input(format!(
                    "field has {} values, domain has {} vertices",
                    values.len(),
                    graph.vertex_count()
                )));
            }
            ScalarField::with_step(values, level_step).map_err(|e| CliError::input(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_simple_path() {
        let input = parse_grid_csv("1,?,3", 1.0).unwrap();
        assert_eq!(input.graph.vertex_count(), 3);
        assert_eq!(input.graph.edge_count(), 2);
        assert_eq!(input.boundary.get(0), Some(1.0));
        assert_eq!(input.boundary.get(1), None);
        assert_eq!(input.boundary.get(2), Some(3.0));
        assert!(input.full_field.is_none());
    }

    #[test]
    fn parse_cross_instance() {
        let input = parse_grid_csv("#,3,#\n1,?,3\n#,3,#", 1.0).unwrap();
        assert_eq!(input.graph.vertex_count(), 5);
        assert_eq!(input.graph.degree(2), 4);
        let anchors: Vec<(usize, f64)> = input.boundary.iter().collect();
        assert_eq!(anchors, vec![(0, 3.0), (1, 1.0), (3, 3.0), (4, 3.0)]);
    }

    #[test]
    fn parse_errors() {
        assert!(GridFileModel::parse("#,#\n#,#").unwrap().to_grid().is_err());
        assert!(GridFileModel::parse("1,2\n3").is_err());
        let err = GridFileModel::parse("1,x,3").unwrap_err();
        assert!(err.to_string().contains("row 1, column 2"), "{err}");
    }

    #[test]
    fn complete_grid_is_a_field() {
        let input = parse_grid_csv("1,2\n2,3", 1.0).unwrap();
        let field = input.full_field.unwrap();
        assert_eq!(field.values(), &[1.0, 2.0, 2.0, 3.0]);
    }

    #[test]
    fn scientific_notation_accepted_on_input() {
        let input = parse_grid_csv("1e-2,2.5E3", 1.0).unwrap();
        let field = input.full_field.unwrap();
        assert_eq!(field.values(), &[0.01, 2500.0]);
    }

    #[test]
    fn parse_star_json() {
        let text = r#"{"vertices":5,"edges":[[0,1],[0,2],[0,3],[0,4]],"boundary":{"1":1,"2":3,"3":3,"4":3}}"#;
        let input = parse_graph_json(text, 1.0).unwrap();
        assert_eq!(input.graph.vertex_count(), 5);
        assert_eq!(input.graph.degree(0), 4);
        assert_eq!(input.boundary.len(), 4);
        assert!(input.full_field.is_none());
    }

    #[test]
    fn parse_json_errors() {
        assert!(parse_graph_json(r#"{"vertices":1,"edges":[[0,0]],"boundary":{}}"#, 1.0).is_err());
        assert!(parse_graph_json(r#"{"vertices":2,"edges":[[0,5]],"boundary":{}}"#, 1.0).is_err());
        assert!(parse_graph_json("not json", 1.0).is_err());
        assert!(parse_graph_json(r#"{"vertices":2,"edges":[],"boundary":{"9":1}}"#, 1.0).is_err());
    }

    #[test]
    fn duplicate_json_edges_collapse() {
        let text = r#"{"vertices":2,"edges":[[0,1],[1,0],[0,1]],"boundary":{"0":7}}"#;
        let input = parse_graph_json(text, 1.0).unwrap();
        assert_eq!(input.graph.edge_count(), 1);
    }

    #[test]
    fn single_vertex_json() {
        let input =
            parse_graph_json(r#"{"vertices":1,"edges":[],"boundary":{"0":7}}"#, 1.0).unwrap();
        assert_eq!(input.graph.vertex_count(), 1);
        let field = input.full_field.unwrap();
        assert_eq!(field.values(), &[7.0]);
    }

    #[test]
    fn sig17_formatting() {
        assert_eq!(format_sig17(0.0), "0");
        assert_eq!(format_sig17(-0.0), "0");
        assert_eq!(format_sig17(2.5), "2.5000000000000000");
        assert_eq!(format_sig17(-2.5), "-2.5000000000000000");
        assert_eq!(format_sig17(0.1), "0.10000000000000001");
        assert_eq!(format_sig17(1.0 / 3.0), "0.33333333333333331");
        assert_eq!(format_sig17(1e20), "100000000000000000000");
        assert_eq!(format_sig17(1.5e-5), "0.000015000000000000000");
        assert!(!format_sig17(1e-300).contains('e'));
    }

    #[test]
    fn sig17_round_trips_bit_exactly() {
        let samples = [
            0.1,
            -1.0 / 3.0,
            2.0f64.sqrt(),
            6.02214076e23,
            -1.6e-19,
            f64::MIN_POSITIVE,
            123456789.12345679,
        ];
        for &x in &samples {
            let text = format_sig17(x);
            let back: f64 = text.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {text} -> {back}");
        }
    }

    #[test]
    fn field_csv_round_trip() {
        let input = parse_grid_csv("#,3,#\n1,?,3\n#,3,#", 1.0).unwrap();
        let layout = input.layout.as_ref().unwrap();
        let field = ScalarField::new(vec![3.0, 1.0, 1.0 / 3.0, 3.0, 0.1]);
        let text = field_to_csv(&field, Some(layout));
        let back = parse_field_csv(&text, &input.graph, Some(layout), 1.0).unwrap();
        for (a, b) in field.values().iter().zip(back.values()) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn field_csv_shape_mismatches() {
        let input = parse_grid_csv("#,3,#\n1,?,3\n#,3,#", 1.0).unwrap();
        let layout = input.layout.as_ref().unwrap();
        assert!(parse_field_csv("1,2\n3,4", &input.graph, Some(layout), 1.0).is_err());
        assert!(parse_field_csv("3,3,3\n1,2,3\n3,3,3", &input.graph, Some(layout), 1.0).is_err());
        assert!(parse_field_csv("#,3,#\n1,?,3\n#,3,#", &input.graph, Some(layout), 1.0).is_err());
    }
}
