use serde::Serialize;

/// Score statistics over completed episodes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub median: f64,
    pub best: f64,
    pub worst: f64,
    /// Population standard deviation.
    pub std: f64,
}

impl Summary {
    pub fn from_scores(scores: &[f64]) -> Option<Summary> {
        if scores.is_empty() {
            return None;
        }
        let n = scores.len() as f64;
        let mean = scores.iter().sum::<f64>() / n;
        let var = scores.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / n;
        let mut sorted = scores.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mid = sorted.len() / 2;
        let median = if sorted.len() % 2 == 1 {
            sorted[mid]
        } else {
            0.5 * (sorted[mid - 1] + sorted[mid])
        };
        Some(Summary {
            count: scores.len(),
            mean,
            median,
            best: sorted[sorted.len() - 1],
            worst: sorted[0],
            std: var.sqrt(),
        })
    }
}

/// Fixed-width histogram; bin `i` covers `[start + i*width, start + (i+1)*width)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub start: f64,
    pub counts: Vec<usize>,
}

impl Histogram {
    pub fn build(scores: &[f64], bin_width: f64) -> Histogram {
        assert!(
            bin_width > 0.0 && bin_width.is_finite(),
            "bin width must be positive"
        );
        if scores.is_empty() {
            return Histogram {
                bin_width,
                start: 0.0,
                counts: Vec::new(),
            };
        }
        let min = scores.iter().copied().fold(f64::INFINITY, f64::min);
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let first = (min / bin_width).floor() as i64;
        let last = (max / bin_width).floor() as i64;
        let mut counts = vec![0; (last - first + 1) as usize];
        for s in scores {
            counts[((s / bin_width).floor() as i64 - first) as usize] += 1;
        }
        Histogram {
            bin_width,
            start: first as f64 * bin_width,
            counts,
        }
    }

    /// `(lower, upper, count)` per bin.
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, usize)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| {
            let lo = self.start + i as f64 * self.bin_width;
            (lo, lo + self.bin_width, c)
        })
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}
