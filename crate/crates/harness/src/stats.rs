//! Sample statistics.

/// `z` for a two-sided 95% normal interval.
pub const Z95: f64 = 1.96;

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator); `None` below two values.
pub fn sample_sd(xs: &[f64]) -> Option<f64> {
    if xs.len() < 2 {
        return None;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    Some((ss / (xs.len() - 1) as f64).sqrt())
}

/// Half-width of the 95% interval of the mean, `1.96 * s / sqrt(n)`.
pub fn ci95(xs: &[f64]) -> Option<f64> {
    sample_sd(xs).map(|s| Z95 * s / (xs.len() as f64).sqrt())
}

/// Mean with its 95% half-width.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub ci95: Option<f64>,
}

impl Estimate {
    pub fn of(xs: &[f64]) -> Self {
        Estimate {
            mean: mean(xs),
            ci95: ci95(xs),
        }
    }

    pub fn low(&self) -> f64 {
        self.mean - self.ci95.unwrap_or(f64::INFINITY)
    }

    pub fn high(&self) -> f64 {
        self.mean + self.ci95.unwrap_or(f64::INFINITY)
    }

    /// Intervals overlap (touching counts).
    pub fn overlaps(&self, other: &Estimate) -> bool {
        self.low() <= other.high() && other.low() <= self.high()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let xs = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert_eq!(mean(&xs), 5.0);
        let s = sample_sd(&xs).unwrap();
        assert!((s - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert!((ci95(&xs).unwrap() - 1.96 * s / 8f64.sqrt()).abs() < 1e-12);
        assert_eq!(ci95(&[3.0]), None);
        let e = Estimate::of(&[1.0]);
        assert!(e.overlaps(&Estimate::of(&[100.0, 101.0])));
    }
}
