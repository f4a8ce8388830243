use alloc::vec::Vec;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub fpr: f64,
    pub tpr: f64,
}

/// A receiver operating characteristic curve.
///
/// `points[k]` is the operating point when every score `>= thresholds[k]` is
/// called positive. The first point is `(0, 0)` at threshold `+inf`, the last
/// is `(1, 1)` at the lowest observed score.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve {
    pub points: Vec<RocPoint>,
    pub thresholds: Vec<f64>,
    pub auc: f64,
    pub n_pos: usize,
    pub n_neg: usize,
}

/// Sweeps the unique scores from high to low and integrates the resulting
/// staircase with the trapezoid rule.
///
/// Tied scores enter the curve together, so a tied positive/negative pair
/// contributes exactly half a concordant pair and the area equals the
/// Mann-Whitney statistic.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<RocCurve> {
    if scores.len() != labels.len() {
        return Err(Error::LengthMismatch { left: scores.len(), right: labels.len() });
    }
    if let Some(bad) = scores.iter().find(|s| s.is_nan()) {
        return Err(Error::Range(alloc::format!("score {bad} is not a number")));
    }
    let n_pos = labels.iter().filter(|&&l| l).count();
    let n_neg = labels.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::UndefinedAuc);
    }

    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let mut points = Vec::with_capacity(scores.len() + 1);
    let mut thresholds = Vec::with_capacity(scores.len() + 1);
    points.push(RocPoint { fpr: 0.0, tpr: 0.0 });
    thresholds.push(f64::INFINITY);

    // Doubled trapezoid area in units of (positive x negative) pairs.
    let mut twice_area: u128 = 0;
    let (mut tp, mut fp) = (0u64, 0u64);
    let mut i = 0;
    while i < order.len() {
        let cut = scores[order[i]];
        let (prev_tp, prev_fp) = (tp, fp);
        while i < order.len() && scores[order[i]] == cut {
            if labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        twice_area += u128::from(fp - prev_fp) * u128::from(tp + prev_tp);
        points.push(RocPoint {
            fpr: fp as f64 / n_neg as f64,
            tpr: tp as f64 / n_pos as f64,
        });
        thresholds.push(cut);
    }

    let auc = twice_area as f64 / (2.0 * n_pos as f64 * n_neg as f64);
    Ok(RocCurve { points, thresholds, auc, n_pos, n_neg })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn mann_whitney(scores: &[f64], labels: &[bool]) -> f64 {
        let mut credit = 0.0;
        let mut pairs = 0.0;
        for (i, &li) in labels.iter().enumerate() {
            for (j, &lj) in labels.iter().enumerate() {
                if li && !lj {
                    pairs += 1.0;
                    if scores[i] > scores[j] {
                        credit += 1.0;
                    } else if scores[i] == scores[j] {
                        credit += 0.5;
                    }
                }
            }
        }
        credit / pairs
    }

    #[test]
    fn perfect_separation() {
        let roc = roc_auc(&[0.9, 0.8, 0.2, 0.1], &[true, true, false, false]).unwrap();
        assert_eq!(roc.auc, 1.0);
        assert_eq!(roc.points.first(), Some(&RocPoint { fpr: 0.0, tpr: 0.0 }));
        assert_eq!(roc.points.last(), Some(&RocPoint { fpr: 1.0, tpr: 1.0 }));
    }

    #[test]
    fn all_ties_give_half() {
        let roc = roc_auc(&[0.3; 6], &[true, false, true, false, false, true]).unwrap();
        assert_eq!(roc.auc, 0.5);
        assert_eq!(roc.points.len(), 2);
    }

    #[test]
    fn three_of_four_concordant() {
        let scores = [0.9, 0.8, 0.3, 0.2];
        let labels = [true, false, true, false];
        assert_eq!(mann_whitney(&scores, &labels), 0.75);
        assert_eq!(roc_auc(&scores, &labels).unwrap().auc, 0.75);
    }

    #[test]
    fn single_class_is_undefined() {
        assert_eq!(roc_auc(&[0.1, 0.2], &[true, true]), Err(Error::UndefinedAuc));
        assert_eq!(roc_auc(&[0.1, 0.2], &[false, false]), Err(Error::UndefinedAuc));
    }

    #[test]
    fn thresholds_descend() {
        let roc = roc_auc(&[0.2, 0.5, 0.5, 0.9], &[false, true, false, true]).unwrap();
        assert_eq!(roc.thresholds, vec![f64::INFINITY, 0.9, 0.5, 0.2]);
    }

    proptest::proptest! {
        #[test]
        fn trapezoid_matches_mann_whitney(
            data in proptest::collection::vec((0u8..20, proptest::bool::ANY), 2..120)
        ) {
            let scores: Vec<f64> = data.iter().map(|(s, _)| f64::from(*s) / 7.0).collect();
            let labels: Vec<bool> = data.iter().map(|(_, l)| *l).collect();
            if let Ok(roc) = roc_auc(&scores, &labels) {
                proptest::prop_assert!((roc.auc - mann_whitney(&scores, &labels)).abs() < 1e-12);
                for w in roc.points.windows(2) {
                    proptest::prop_assert!(w[0].fpr <= w[1].fpr && w[0].tpr <= w[1].tpr);
                }
                let transformed: Vec<f64> = scores.iter().map(|s| libm::exp(3.0 * s) - 2.0).collect();
                proptest::prop_assert_eq!(roc_auc(&transformed, &labels).unwrap().auc, roc.auc);
            }
        }
    }
}
