//! Plain-text PGM (P2) heatmaps.
//!
//! Values rescale linearly from `[min, max]` to `[0, 255]`; constant
//! fields map to 128 and outside cells to 0. The output is a pure function
//! of the field, so identical inputs give byte-identical files.

use gradvar::domain::GridGraph;
use gradvar::ScalarField;

use crate::formats::GridFileModel;

pub fn render(field: &ScalarField, layout: Option<&(GridFileModel, GridGraph)>) -> String {
    let min = field.values().iter().copied().fold(f64::INFINITY, f64::min);
    let max = field.values().iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let shade = |x: f64| -> u32 {
        if max > min {
            ((x - min) / (max - min) * 255.0).round() as u32
        } else {
            128
        }
    };

    let (width, height) = match layout {
        Some((model, _)) => (model.width, model.height),
        None => (field.len(), 1),
    };
    let mut out = format!("P2\n{width} {height}\n255\n");
    for r in 0..height {
        let row: Vec<String> = (0..width)
            .map(|c| match layout {
                Some((_, gg)) => match gg.vertex_at(r, c) {
                    Some(v) => shade(field.value(v)).to_string(),
                    None => "0".to_string(),
                },
                None => shade(field.value(c)).to_string(),
            })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_field_renders_mid_gray() {
        let field = ScalarField::new(vec![3.0, 3.0, 3.0]);
        let pgm = render(&field, None);
        assert_eq!(pgm, "P2\n3 1\n255\n128 128 128\n");
    }

    #[test]
    fn linear_rescale_hits_the_ends() {
        let field = ScalarField::new(vec![-1.0, 0.0, 1.0]);
        let pgm = render(&field, None);
        assert_eq!(pgm, "P2\n3 1\n255\n0 128 255\n");
    }
}
