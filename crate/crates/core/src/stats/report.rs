use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
    /// Set when a rate had a zero denominator and was reported as 0.
    pub zero_division: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AverageMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

/// Binary classification summary. Index 0 is the negative (`false`) class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    /// `confusion[actual][predicted]`.
    pub confusion: [[u64; 2]; 2],
    pub classes: [ClassMetrics; 2],
    pub accuracy: f64,
    pub macro_avg: AverageMetrics,
    pub weighted_avg: AverageMetrics,
}

impl ClassificationReport {
    /// Builds the report from a confusion matrix laid out as `[actual][predicted]`.
    pub fn from_confusion(confusion: [[u64; 2]; 2]) -> Result<Self> {
        let total: u64 = confusion.iter().flatten().sum();
        if total == 0 {
            return Err(Error::InvalidArgument("empty confusion matrix".into()));
        }
        let ratio = |num: u64, den: u64| if den == 0 { (0.0, true) } else { (num as f64 / den as f64, false) };
        let class = |c: usize| {
            let tp = confusion[c][c];
            let support = confusion[c][0] + confusion[c][1];
            let predicted = confusion[0][c] + confusion[1][c];
            let (precision, zp) = ratio(tp, predicted);
            let (recall, zr) = ratio(tp, support);
            let f1 = if precision + recall > 0.0 {
                2.0 * precision * recall / (precision + recall)
            } else {
                0.0
            };
            ClassMetrics { precision, recall, f1, support, zero_division: zp || zr }
        };
        let classes = [class(0), class(1)];
        let macro_avg = AverageMetrics {
            precision: (classes[0].precision + classes[1].precision) / 2.0,
            recall: (classes[0].recall + classes[1].recall) / 2.0,
            f1: (classes[0].f1 + classes[1].f1) / 2.0,
        };
        let w = |f: fn(&ClassMetrics) -> f64| {
            classes.iter().map(|c| f(c) * c.support as f64).sum::<f64>() / total as f64
        };
        let weighted_avg = AverageMetrics {
            precision: w(|c| c.precision),
            recall: w(|c| c.recall),
            f1: w(|c| c.f1),
        };
        Ok(Self {
            confusion,
            classes,
            accuracy: (confusion[0][0] + confusion[1][1]) as f64 / total as f64,
            macro_avg,
            weighted_avg,
        })
    }

    pub fn total(&self) -> u64 {
        self.confusion.iter().flatten().sum()
    }
}

pub fn classification_report(predictions: &[bool], labels: &[bool]) -> Result<ClassificationReport> {
    if predictions.len() != labels.len() {
        return Err(Error::InvalidArgument(format!(
            "{} predictions for {} labels",
            predictions.len(),
            labels.len()
        )));
    }
    let mut confusion = [[0u64; 2]; 2];
    for (&p, &l) in predictions.iter().zip(labels) {
        confusion[usize::from(l)][usize::from(p)] += 1;
    }
    ClassificationReport::from_confusion(confusion)
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>14} {:>10} {:>10} {:>10} {:>10}", "", "precision", "recall", "f1-score", "support")?;
        for (name, c) in ["False", "True"].iter().zip(&self.classes) {
            writeln!(f, "{:>14} {:>10.2} {:>10.2} {:>10.2} {:>10}", name, c.precision, c.recall, c.f1, c.support)?;
        }
        writeln!(f)?;
        let total = self.total();
        writeln!(f, "{:>14} {:>10} {:>10} {:>10.2} {:>10}", "accuracy", "", "", self.accuracy, total)?;
        for (name, a) in [("macro avg", &self.macro_avg), ("weighted avg", &self.weighted_avg)] {
            writeln!(f, "{:>14} {:>10.2} {:>10.2} {:>10.2} {:>10}", name, a.precision, a.recall, a.f1, total)?;
        }
        Ok(())
    }
}
