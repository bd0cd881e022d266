use crate::error::{Error, Result};
use crate::regression::lasso::{lasso_fit, LassoFit};

#[derive(Debug, Clone, PartialEq)]
pub struct RfeResult {
    /// Indices of the surviving columns, ascending.
    pub selected: Vec<usize>,
    /// Names in the order they were dropped.
    pub elimination_order: Vec<String>,
    /// Lasso fit over the selected columns, aligned with `selected`.
    pub fit: LassoFit,
}

/// Recursive feature elimination: refit the lasso and drop the feature with
/// the smallest absolute coefficient until `k_keep` remain. Ties go to the
/// lexicographically smallest name.
pub fn rfe(
    columns: &[Vec<f64>],
    names: &[String],
    y: &[f64],
    lambda: f64,
    k_keep: usize,
) -> Result<RfeResult> {
    if names.len() != columns.len() {
        return Err(Error::LengthMismatch {
            left: names.len(),
            right: columns.len(),
        });
    }
    if k_keep == 0 || k_keep > columns.len() {
        return Err(Error::InvalidParameter(format!(
            "k_keep {k_keep} outside 1..={}",
            columns.len()
        )));
    }
    let mut active: Vec<usize> = (0..columns.len()).collect();
    let mut elimination_order = Vec::new();
    loop {
        let sub: Vec<Vec<f64>> = active.iter().map(|&j| columns[j].clone()).collect();
        let fit = lasso_fit(&sub, y, lambda)?;
        if active.len() == k_keep {
            return Ok(RfeResult {
                selected: active,
                elimination_order,
                fit,
            });
        }
        let drop = weakest(&fit.coefficients, &active, names);
        elimination_order.push(names[active[drop]].clone());
        active.remove(drop);
    }
}

/// Position in `active` of the coefficient with the smallest magnitude.
fn weakest(coefficients: &[f64], active: &[usize], names: &[String]) -> usize {
    let mut best = 0;
    for i in 1..coefficients.len() {
        let (a, b) = (coefficients[i].abs(), coefficients[best].abs());
        if a < b || (a == b && names[active[i]] < names[active[best]]) {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn weakest_by_magnitude_then_name() {
        let n = names(&["a", "b", "c"]);
        assert_eq!(weakest(&[0.5, -0.9, 0.1], &[0, 1, 2], &n), 2);
        assert_eq!(weakest(&[0.0, 0.3, 0.0], &[0, 1, 2], &n), 0);
        assert_eq!(weakest(&[0.3, 0.0, 0.0], &[0, 1, 2], &n), 1);
    }

    #[test]
    fn keep_all_is_plain_lasso() {
        let cols = vec![vec![0.0, 1.0, 2.0, 3.0], vec![1.0, 0.0, 1.0, 0.0]];
        let y = vec![1.0, 2.0, 5.0, 6.0];
        let r = rfe(&cols, &names(&["a", "b"]), &y, 0.01, 2).unwrap();
        assert!(r.elimination_order.is_empty());
        assert_eq!(r.fit, lasso_fit(&cols, &y, 0.01).unwrap());
    }

    #[test]
    fn k_keep_out_of_range() {
        let cols = vec![vec![0.0, 1.0, 2.0]];
        let y = vec![0.0, 1.0, 2.0];
        for k in [0, 2] {
            assert!(matches!(
                rfe(&cols, &names(&["a"]), &y, 0.0, k),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn recovers_known_support() {
        // y = 3a - 2b on a small deterministic design; c and d are distractors
        let a = vec![0.1, 0.9, 0.4, 0.7, 0.2, 0.5, 0.8, 0.3];
        let b = vec![0.6, 0.2, 0.9, 0.1, 0.4, 0.8, 0.3, 0.7];
        let c = vec![0.5, 0.5, 0.1, 0.9, 0.3, 0.2, 0.7, 0.6];
        let d = vec![0.2, 0.3, 0.6, 0.4, 0.9, 0.1, 0.5, 0.8];
        let y: Vec<f64> = a.iter().zip(&b).map(|(x, z)| 3.0 * x - 2.0 * z).collect();
        let r = rfe(&[a, b, c, d], &names(&["a", "b", "c", "d"]), &y, 1e-3, 2).unwrap();
        assert_eq!(r.selected, vec![0, 1]);
        assert_eq!(r.elimination_order.len(), 2);
    }
}
