//! Text and JSON rendering. Output depends only on the inputs: JSON field
//! order is fixed by the struct definitions and tables are filled in index
//! order whatever the thread schedule.

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify_tent_pair, Evidence, Status, Verdict};
use crate::error::Result;
use crate::tent::KneadingWord;
use crate::weak_equiv::SearchBounds;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub command: &'a str,
    pub result: &'a T,
}

pub fn to_json<T: Serialize>(command: &str, result: &T) -> String {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

pub fn verdict_text(v: &Verdict) -> String {
    let mut out = format!("status: {}\n", v.status.as_str());
    if !v.provenance.is_empty() {
        out.push_str(&format!("provenance: {}\n", v.provenance.join(", ")));
    }
    match &v.evidence {
        Evidence::Certificate { certificate: c } => {
            out.push_str(&format!("certificate: n = {}, m = {}\n", c.n, c.m));
            out.push_str(&indent("sigma", &c.sigma.to_string()));
            out.push_str(&indent("tau", &c.tau.to_string()));
        }
        Evidence::FieldObstruction { field } => {
            out.push_str(&format!(
                "field obstruction: Q(λ) for {} and {} differ\n",
                field.alpha_minpoly, field.beta_minpoly
            ));
        }
        Evidence::Search {
            bounds,
            word_search,
            matrix_search,
        } => {
            out.push_str(&format!(
                "search bounds: n <= {}, m <= {}, image length <= {}, nodes <= {}\n",
                bounds.max_n, bounds.max_m, bounds.max_len, bounds.max_nodes
            ));
            if let Some(w) = word_search {
                out.push_str(&format!(
                    "word search: {} nodes, pairs {:?}{}\n",
                    w.nodes,
                    w.searched_pairs,
                    if w.budget_exhausted { ", budget exhausted" } else { "" }
                ));
            }
            if let Some(m) = matrix_search {
                let found = match &m.certificate {
                    Some(c) => format!("certificate at n = {}, m = {}", c.n, c.m),
                    None => "none".to_string(),
                };
                out.push_str(&format!(
                    "matrix search: {found}, {} nodes{}\n",
                    m.nodes,
                    if m.budget_exhausted { ", budget exhausted" } else { "" }
                ));
            }
        }
    }
    if let Some(f) = &v.field {
        out.push_str(&format!(
            "perron fields: {:?} ({} vs {})\n",
            f.status, f.alpha_minpoly, f.beta_minpoly
        ));
    }
    out.push_str("hypotheses:\n");
    for h in &v.hypotheses {
        out.push_str(&format!("  [{}] {}\n", if h.holds { "ok" } else { "no" }, h.name));
    }
    for (name, d) in ["chi", "psi"].iter().zip(&v.inputs) {
        out.push_str(&format!(
            "{name}: {} letters, aperiodic {}",
            d.alphabet, d.aperiodic
        ));
        if let Some(p) = &d.perron_minpoly {
            out.push_str(&format!(", perron root {} of {p}", d.perron_value.as_deref().unwrap_or("?")));
        }
        if let Some(g) = &d.germs {
            out.push_str(&format!(
                ", eventual range {:?}, fold {}, distinguished {}",
                g.eventual_range,
                g.fold.is_some(),
                g.distinguished
            ));
        }
        out.push('\n');
    }
    for n in &v.notes {
        out.push_str(&format!("note: {n}\n"));
    }
    out
}

fn indent(label: &str, body: &str) -> String {
    let mut out = format!("{label}:\n");
    for line in body.lines() {
        out.push_str("  ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct PairwiseTable {
    pub labels: Vec<String>,
    /// `cells[i][j]` classifies `labels[i]` against `labels[j]`.
    pub cells: Vec<Vec<Verdict>>,
}

impl PairwiseTable {
    pub fn status(&self, i: usize, j: usize) -> Status {
        self.cells[i][j].status
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.labels.len();
        (0..n).all(|i| (0..n).all(|j| self.status(i, j) == self.status(j, i)))
    }

    pub fn to_text(&self) -> String {
        let w = self.labels.iter().map(|l| l.len()).max().unwrap_or(1).max(1);
        let mut out = format!("{:w$}", "");
        for j in 0..self.labels.len() {
            out.push_str(&format!(" {:>3}", j + 1));
        }
        out.push('\n');
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("{label:w$}"));
            for cell in &self.cells[i] {
                let sym = match cell.status {
                    Status::Homeomorphic => "H",
                    Status::NotHomeomorphic => "N",
                    Status::Unknown => "?",
                };
                out.push_str(&format!(" {sym:>3}"));
            }
            out.push('\n');
        }
        out.push_str("H homeomorphic, N not homeomorphic, ? unknown; columns follow row order\n");
        out
    }
}

/// Every ordered pair of tent maps, computed in parallel.
pub fn pairwise_tent_table(words: &[KneadingWord], bounds: &SearchBounds) -> Result<PairwiseTable> {
    let n = words.len();
    let flat: Vec<Verdict> = (0..n * n)
        .into_par_iter()
        .map(|k| classify_tent_pair(&words[k / n], &words[k % n], bounds))
        .collect::<Result<_>>()?;
    let cells = flat.chunks(n.max(1)).map(|c| c.to_vec()).collect();
    Ok(PairwiseTable {
        labels: words.iter().map(|w| w.to_string()).collect(),
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;
    use crate::substitution::Substitution;
    use crate::tent::enumerate_kneading;

    #[test]
    fn verdict_json_is_stable() {
        let fib = Substitution::from_indices(2, &[vec![1, 2], vec![1]]).unwrap();
        let v = classify(&fib, &fib.power(2).unwrap(), &SearchBounds::default()).unwrap();
        let a = to_json("classify", &v);
        let b = to_json("classify", &v);
        assert_eq!(a, b);
        let j: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(j["schema_version"], 1);
        assert_eq!(j["result"]["status"], "homeomorphic");
        assert_eq!(j["result"]["provenance"][0], "weak-equivalence-suffices");
        assert!(verdict_text(&v).starts_with("status: homeomorphic\n"));
    }

    #[test]
    fn small_table() {
        let words = enumerate_kneading(4).unwrap();
        let t = pairwise_tent_table(&words, &SearchBounds::default()).unwrap();
        assert!(t.is_symmetric());
        assert_eq!(t.status(0, 0), Status::Homeomorphic);
        assert_eq!(t.status(0, 1), Status::NotHomeomorphic);
        let again = pairwise_tent_table(&words, &SearchBounds::default()).unwrap();
        assert_eq!(t.to_text(), again.to_text());
        assert_eq!(to_json("tent", &t), to_json("tent", &again));
    }
}
