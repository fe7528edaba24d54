use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::Alignment;

/// Gold × predicted sense counts over aligned pairs where both sides carry
/// exactly one sense.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Confusion {
    pub level: u8,
    pub cells: BTreeMap<(String, String), usize>,
}

impl Confusion {
    /// Every label seen on either axis, sorted.
    pub fn labels(&self) -> Vec<String> {
        let set: BTreeSet<&String> = self.cells.keys().flat_map(|(g, p)| [g, p]).collect();
        set.into_iter().cloned().collect()
    }

    /// Square matrix with rows as gold and columns as predicted, both in
    /// [`Confusion::labels`] order.
    pub fn matrix(&self) -> Vec<Vec<usize>> {
        let labels = self.labels();
        labels
            .iter()
            .map(|g| {
                labels
                    .iter()
                    .map(|p| self.cells.get(&(g.clone(), p.clone())).copied().unwrap_or(0))
                    .collect()
            })
            .collect()
    }

    pub fn total(&self) -> usize {
        self.cells.values().sum()
    }

    /// Most frequent off-diagonal cell as (gold, predicted, count).
    pub fn most_frequent_error(&self) -> Option<(&str, &str, usize)> {
        self.cells
            .iter()
            .filter(|((g, p), _)| g != p)
            .max_by(|a, b| a.1.cmp(b.1).then_with(|| b.0.cmp(a.0)))
            .map(|((g, p), &n)| (g.as_str(), p.as_str(), n))
    }

    /// Header row of predicted labels, then one row per gold label.
    pub fn to_tsv(&self) -> String {
        let labels = self.labels();
        let mut out = String::from("gold\\pred");
        for l in &labels {
            out.push('\t');
            out.push_str(l);
        }
        out.push('\n');
        for (label, row) in labels.iter().zip(self.matrix()) {
            out.push_str(label);
            for n in row {
                let _ = write!(out, "\t{n}");
            }
            out.push('\n');
        }
        out
    }
}

pub fn emit_confusion(al: &Alignment<'_>, level: u8) -> Confusion {
    let mut cells = BTreeMap::new();
    for (g, p) in &al.pairs {
        if let ([gs], [ps]) = (g.senses.as_slice(), p.senses.as_slice()) {
            *cells.entry((gs.at_level(level), ps.at_level(level))).or_insert(0) += 1;
        }
    }
    Confusion { level, cells }
}

/// Cohen's kappa of a square agreement matrix; `None` when expected
/// agreement is 1 or the matrix is empty.
pub fn cohen_kappa_matrix(matrix: &[Vec<usize>]) -> Option<f64> {
    let n: usize = matrix.iter().flatten().sum();
    if n == 0 || matrix.iter().any(|row| row.len() != matrix.len()) {
        return None;
    }
    let n = n as f64;
    let observed = (0..matrix.len()).map(|i| matrix[i][i]).sum::<usize>() as f64 / n;
    let expected: f64 = (0..matrix.len())
        .map(|i| {
            let row: usize = matrix[i].iter().sum();
            let col: usize = matrix.iter().map(|r| r[i]).sum();
            (row as f64 / n) * (col as f64 / n)
        })
        .sum();
    if (1.0 - expected).abs() < f64::EPSILON {
        return None;
    }
    Some((observed - expected) / (1.0 - expected))
}

/// Kappa over single-sense aligned pairs at `level`.
pub fn cohen_kappa(al: &Alignment<'_>, level: u8) -> Option<f64> {
    cohen_kappa_matrix(&emit_confusion(al, level).matrix())
}
