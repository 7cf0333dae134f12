//! Plain-text run reports: one `key value` per line, greppable, with ASPL
//! printed to six decimal places while comparisons stay on exact sums.

use crate::dist::{lower_bounds, GraphMetrics, LowerBounds};

#[derive(Clone, Debug)]
pub struct RunReport {
    pub order: usize,
    pub edges: usize,
    pub degree_min: usize,
    pub degree_max: usize,
    pub connected: bool,
    pub diameter: u16,
    pub aspl: f64,
    pub bounds: Option<LowerBounds>,
    /// Echoed algorithm parameters, in insertion order.
    pub params: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub elapsed_seconds: f64,
}

impl RunReport {
    pub fn new(order: usize, edges: usize, m: &GraphMetrics) -> Self {
        let bounds = if m.degree_max >= 2 {
            lower_bounds(order, m.degree_max).ok()
        } else {
            None
        };
        RunReport {
            order,
            edges,
            degree_min: m.degree_min,
            degree_max: m.degree_max,
            connected: m.connected,
            diameter: m.diameter,
            aspl: m.aspl,
            bounds,
            params: Vec::new(),
            seed: None,
            elapsed_seconds: 0.0,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    /// The graph-derived lines; identical between a generation run and a
    /// later `evaluate` of its output.
    pub fn metric_lines(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("order {}\n", self.order));
        out.push_str(&format!("edges {}\n", self.edges));
        out.push_str(&format!("degree_min {}\n", self.degree_min));
        out.push_str(&format!("degree_max {}\n", self.degree_max));
        out.push_str(&format!("connected {}\n", self.connected));
        out.push_str(&format!("diameter {}\n", self.diameter));
        out.push_str(&format!("aspl {:.6}\n", self.aspl));
        if let Some(b) = &self.bounds {
            out.push_str(&format!("diameter_lb {}\n", b.diameter));
            out.push_str(&format!("aspl_lb {:.6}\n", b.aspl()));
            out.push_str(&format!("aspl_gap {:.6}\n", self.aspl - b.aspl()));
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = self.metric_lines();
        for (k, v) in &self.params {
            out.push_str(&format!("{k} {v}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed {seed}\n"));
        }
        out.push_str(&format!("elapsed_seconds {:.3}\n", self.elapsed_seconds));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{apsp, metrics};
    use crate::seed::petersen;

    #[test]
    fn petersen_report_attains_the_bound() {
        let g = petersen();
        let m = metrics(&apsp(&g)).unwrap();
        let report = RunReport::new(10, 15, &m);
        let text = report.metric_lines();
        assert!(text.contains("aspl 1.666667\n"));
        assert!(text.contains("aspl_lb 1.666667\n"));
        assert!(text.contains("aspl_gap 0.000000\n"));
        assert!(text.contains("diameter 2\n"));
    }

    #[test]
    fn params_and_seed_render_after_metrics() {
        let g = petersen();
        let m = metrics(&apsp(&g)).unwrap();
        let mut report = RunReport::new(10, 15, &m).param("matching", "cross");
        report.seed = Some(7);
        let text = report.render();
        assert!(text.contains("matching cross\n"));
        assert!(text.contains("seed 7\n"));
        assert!(text.ends_with("\n"));
    }
}
