//! Box-counting (Minkowski) dimension estimation for finite point clouds.

use serde::Serialize;

use super::{ExperimentError, Result};
use crate::linalg::ComplexVector;

/// Finite sample of points in a common complex ambient space.
#[derive(Debug, Clone)]
pub struct PointCloud {
    points: Vec<ComplexVector>,
}

impl PointCloud {
    pub fn new(points: Vec<ComplexVector>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(ExperimentError::DegenerateGrid(
                "point cloud must be nonempty".into(),
            ));
        };
        let dim = first.dim();
        if points.iter().any(|p| p.dim() != dim) {
            return Err(ExperimentError::Linalg(
                crate::linalg::LinalgError::DimensionMismatch(
                    "points must share one ambient dimension".into(),
                ),
            ));
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Greedy covering count at radius `rho`: repeatedly take the point
    /// farthest from the chosen centers as a new center until everything is
    /// within `rho`. Centers lie in the cloud, as the covering-number
    /// definition requires; greediness costs only a constant factor, which
    /// cancels in the log-log slope.
    pub fn covering_count(&self, rho: f64) -> usize {
        let n = self.points.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut centers = 0usize;
        let mut next = 0usize; // first center is the first point
        loop {
            centers += 1;
            let c = &self.points[next];
            let mut worst = 0.0f64;
            let mut worst_idx = next;
            for i in 0..n {
                let d = self.points[i].sub(c).norm2();
                if d < dist[i] {
                    dist[i] = d;
                }
                if dist[i] > worst {
                    worst = dist[i];
                    worst_idx = i;
                }
            }
            if worst <= rho {
                return centers;
            }
            next = worst_idx;
        }
    }
}

/// Covering counts and the least-squares slope that estimates the box
/// dimension.
#[derive(Debug, Clone, Serialize)]
pub struct BoxDimEstimate {
    pub estimate: f64,
    pub counts: Vec<usize>,
}

/// Estimates the box-counting dimension of the cloud: greedy covering
/// counts on a decreasing radius grid, then the least-squares slope of
/// `log N` against `log(1/rho)`. The dimension counts real coordinates, so
/// a full n-dimensional complex region reads as `2n`.
pub fn box_counting_dim(cloud: &PointCloud, rho_grid: &[f64]) -> Result<BoxDimEstimate> {
    if rho_grid.len() < 2 {
        return Err(ExperimentError::DegenerateGrid(
            "need at least two radii".into(),
        ));
    }
    for pair in rho_grid.windows(2) {
        if !(pair[1] < pair[0]) {
            return Err(ExperimentError::DegenerateGrid(
                "radii must be strictly decreasing".into(),
            ));
        }
    }
    if !(rho_grid[rho_grid.len() - 1] > 0.0) {
        return Err(ExperimentError::DegenerateGrid(
            "radii must be positive".into(),
        ));
    }
    let counts: Vec<usize> = rho_grid.iter().map(|&r| cloud.covering_count(r)).collect();
    let xs: Vec<f64> = rho_grid.iter().map(|&r| (1.0 / r).ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|&c| (c as f64).ln()).collect();
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - x_mean) * (y - y_mean);
        den += (x - x_mean) * (x - x_mean);
    }
    let estimate = if den == 0.0 { 0.0 } else { num / den };
    Ok(BoxDimEstimate { estimate, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng_from;
    use num_complex::Complex64;
    use rand::Rng;

    #[test]
    fn repeated_point_has_dimension_zero() {
        let p = ComplexVector::from_entries(vec![Complex64::new(0.3, -0.7)]);
        let cloud = PointCloud::new(vec![p; 50]).unwrap();
        let est = box_counting_dim(&cloud, &[0.5, 0.25, 0.125]).unwrap();
        assert_eq!(est.counts, vec![1, 1, 1]);
        assert_eq!(est.estimate, 0.0);
    }

    #[test]
    fn segment_has_dimension_about_one() {
        let mut rng = rng_from(101);
        let points: Vec<ComplexVector> = (0..10_000)
            .map(|_| ComplexVector::from_entries(vec![Complex64::new(rng.random::<f64>(), 0.0)]))
            .collect();
        let cloud = PointCloud::new(points).unwrap();
        let grid = [0.1, 0.0562, 0.0316, 0.0178, 0.01];
        let est = box_counting_dim(&cloud, &grid).unwrap();
        assert!(
            (est.estimate - 1.0).abs() <= 0.3,
            "estimate {}",
            est.estimate
        );
    }

    #[test]
    fn disk_has_dimension_about_two() {
        let mut rng = rng_from(103);
        let points: Vec<ComplexVector> = (0..10_000)
            .map(|_| {
                // Uniform on the unit disk by radius transform.
                let r = rng.random::<f64>().sqrt();
                let theta = rng.random::<f64>() * std::f64::consts::TAU;
                ComplexVector::from_entries(vec![Complex64::new(
                    r * theta.cos(),
                    r * theta.sin(),
                )])
            })
            .collect();
        let cloud = PointCloud::new(points).unwrap();
        let grid = [0.3, 0.21, 0.15, 0.1, 0.07];
        let est = box_counting_dim(&cloud, &grid).unwrap();
        assert!(
            (est.estimate - 2.0).abs() <= 0.3,
            "estimate {}",
            est.estimate
        );
    }

    #[test]
    fn rejects_degenerate_grids() {
        let p = ComplexVector::from_entries(vec![Complex64::new(0.0, 0.0)]);
        let cloud = PointCloud::new(vec![p]).unwrap();
        assert!(box_counting_dim(&cloud, &[0.5]).is_err());
        assert!(box_counting_dim(&cloud, &[0.5, 0.5]).is_err());
        assert!(box_counting_dim(&cloud, &[0.5, 0.6]).is_err());
        assert!(box_counting_dim(&cloud, &[0.5, 0.0]).is_err());
        assert!(PointCloud::new(vec![]).is_err());
    }
}
