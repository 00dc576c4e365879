use serde::{Deserialize, Serialize};

use super::{MetricError, TRIANGLE_TOLERANCE};

/// Labeled points with a validated distance matrix.
///
/// JSON form is `{"labels": [...], "dist": [[...]]}`; floats round-trip
/// bit-exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpace", into = "RawSpace")]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RawSpace {
    labels: Vec<String>,
    dist: Vec<Vec<f64>>,
}

impl TryFrom<RawSpace> for FiniteMetricSpace {
    type Error = MetricError;

    fn try_from(raw: RawSpace) -> Result<Self, Self::Error> {
        FiniteMetricSpace::new(raw.labels, raw.dist)
    }
}

impl From<FiniteMetricSpace> for RawSpace {
    fn from(s: FiniteMetricSpace) -> Self {
        RawSpace {
            labels: s.labels,
            dist: s.dist,
        }
    }
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = dist.len();
        if n == 0 {
            return Err(MetricError::Empty);
        }
        if labels.len() != n {
            return Err(MetricError::LabelCount {
                labels: labels.len(),
                rows: n,
            });
        }
        for (row, r) in dist.iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::Ragged {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
            for (j, &value) in r.iter().enumerate() {
                if !(value.is_finite() && value >= 0.0) {
                    return Err(MetricError::BadEntry { i: row, j, value });
                }
            }
        }
        for i in 0..n {
            if dist[i][i] != 0.0 {
                return Err(MetricError::NonzeroDiagonal { i });
            }
            for j in 0..i {
                if dist[i][j] != dist[j][i] {
                    return Err(MetricError::Asymmetric { i, j });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let excess = dist[i][k] - dist[i][j] - dist[j][k];
                    if excess > TRIANGLE_TOLERANCE {
                        return Err(MetricError::Triangle { i, j, k, excess });
                    }
                }
            }
        }
        Ok(Self { labels, dist })
    }

    /// Labels `"0"`, `"1"`, … in row order.
    pub fn from_matrix(dist: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let labels = (0..dist.len()).map(|i| i.to_string()).collect();
        Self::new(labels, dist)
    }

    pub fn single_point() -> Self {
        Self {
            labels: vec!["0".into()],
            dist: vec![vec![0.0]],
        }
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<f64>] {
        &self.dist
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.dist[i][j]
    }

    pub fn diameter(&self) -> f64 {
        self.dist
            .iter()
            .flat_map(|r| r.iter().copied())
            .fold(0.0, f64::max)
    }

    /// `max_j d(i, j)` for every `i`.
    pub fn eccentricities(&self) -> Vec<f64> {
        self.dist
            .iter()
            .map(|r| r.iter().copied().fold(0.0, f64::max))
            .collect()
    }

    /// Reorders points: point `k` of the result is point `perm[k]` here.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            labels: perm.iter().map(|&i| self.labels[i].clone()).collect(),
            dist: perm
                .iter()
                .map(|&i| perm.iter().map(|&j| self.dist[i][j]).collect())
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MetricError> {
        serde_json::from_str(text).map_err(|e| MetricError::Json(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(FiniteMetricSpace::from_matrix(vec![]), Err(MetricError::Empty));
        assert!(matches!(
            FiniteMetricSpace::from_matrix(vec![vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(MetricError::Asymmetric { i: 1, j: 0 })
        ));
        assert!(matches!(
            FiniteMetricSpace::from_matrix(vec![vec![1.0]]),
            Err(MetricError::NonzeroDiagonal { i: 0 })
        ));
        let bad = vec![
            vec![0.0, 1.0, 5.0],
            vec![1.0, 0.0, 1.0],
            vec![5.0, 1.0, 0.0],
        ];
        assert!(matches!(
            FiniteMetricSpace::from_matrix(bad),
            Err(MetricError::Triangle { .. })
        ));
        assert!(matches!(
            FiniteMetricSpace::new(vec!["a".into()], vec![vec![0.0, 1.0], vec![1.0, 0.0]]),
            Err(MetricError::LabelCount { .. })
        ));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let d = 0.1f64 + 0.2;
        let s = FiniteMetricSpace::new(
            vec!["p".into(), "q".into()],
            vec![vec![0.0, d], vec![d, 0.0]],
        )
        .unwrap();
        let text = s.to_json();
        assert_eq!(text, r#"{"labels":["p","q"],"dist":[[0.0,0.30000000000000004],[0.30000000000000004,0.0]]}"#);
        let back = FiniteMetricSpace::from_json(&text).unwrap();
        assert_eq!(back.dist(0, 1).to_bits(), d.to_bits());
        assert!(FiniteMetricSpace::from_json(r#"{"labels":["a"],"dist":[[1.0]]}"#).is_err());
    }
}
