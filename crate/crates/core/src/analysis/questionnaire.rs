use super::AnalysisError;

/// System Usability Scale score in [0, 100].
///
/// Item 1 is `items[0]`. Odd items contribute `response − 1`, even items
/// `5 − response`; the sum is scaled by 2.5.
pub fn sus_score(items: &[u8]) -> Result<f64, AnalysisError> {
    if items.len() != 10 {
        return Err(AnalysisError::SusArity(items.len()));
    }
    let mut sum = 0u32;
    for (index, &value) in items.iter().enumerate() {
        if !(1..=5).contains(&value) {
            return Err(AnalysisError::SusRange { index, value });
        }
        sum += u32::from(if index % 2 == 0 { value - 1 } else { 5 - value });
    }
    Ok(f64::from(sum) * 2.5)
}

/// Arithmetic mean and sample standard deviation (n − 1 denominator).
pub fn descriptives(values: &[f64]) -> Result<(f64, f64), AnalysisError> {
    let n = values.len();
    if n < 2 {
        return Err(AnalysisError::TooFewValues(n));
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    Ok((mean, libm::sqrt(ss / (n - 1) as f64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sus_reference_points() {
        assert_eq!(sus_score(&[5, 1, 5, 1, 5, 1, 5, 1, 5, 1]), Ok(100.0));
        assert_eq!(sus_score(&[1, 5, 1, 5, 1, 5, 1, 5, 1, 5]), Ok(0.0));
        assert_eq!(sus_score(&[3; 10]), Ok(50.0));
        // (4 − 1) · 5 + (5 − 2) · 5 = 30; 30 · 2.5 = 75.
        assert_eq!(sus_score(&[4, 2, 4, 2, 4, 2, 4, 2, 4, 2]), Ok(75.0));
    }

    #[test]
    fn sus_rejects_bad_input() {
        assert_eq!(sus_score(&[3; 9]), Err(AnalysisError::SusArity(9)));
        assert_eq!(
            sus_score(&[3, 3, 3, 0, 3, 3, 3, 3, 3, 3]),
            Err(AnalysisError::SusRange { index: 3, value: 0 })
        );
        assert!(sus_score(&[6; 10]).is_err());
    }

    #[test]
    fn descriptives_by_hand() {
        assert_eq!(descriptives(&[1.0, 2.0, 3.0]), Ok((2.0, 1.0)));
        assert_eq!(descriptives(&[5.0, 5.0]), Ok((5.0, 0.0)));
        // Deviations from 5 square-sum to 32; sqrt(32 / 7) = 2.13809.
        let (m, sd) = descriptives(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]).unwrap();
        assert_eq!(m, 5.0);
        assert!((sd - 2.138).abs() < 1e-3);
        assert_eq!(descriptives(&[1.0]), Err(AnalysisError::TooFewValues(1)));
    }
}
