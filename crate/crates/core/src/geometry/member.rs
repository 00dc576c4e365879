use serde::{Deserialize, Serialize};

use super::{BergerSphere, Estimate, FlatTorus, GeometryError, VolumeMode};

/// One member of a model family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Member {
    Torus(FlatTorus),
    Berger(BergerSphere),
}

impl Member {
    pub fn injectivity_radius(&self) -> f64 {
        match self {
            Member::Torus(t) => t.injectivity_radius(),
            Member::Berger(b) => b.injectivity_radius(),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Member::Torus(t) => t.diameter(),
            Member::Berger(b) => b.diameter(),
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Member::Torus(t) => t.volume(),
            Member::Berger(b) => b.volume(),
        }
    }

    /// Topological dimension of the member.
    pub fn dim(&self) -> usize {
        match self {
            Member::Torus(t) => t.dim(),
            Member::Berger(_) => 3,
        }
    }

    /// Ball volume through the selected backend. The exact backend reports a
    /// zero standard error.
    pub fn ball_volume(&self, r: f64, mode: &VolumeMode) -> Result<Estimate, GeometryError> {
        match (self, mode) {
            (Member::Torus(t), VolumeMode::Exact) => t.ball_volume_exact(r).map(Estimate::exact),
            (Member::Torus(t), VolumeMode::MonteCarlo(mc)) => t.ball_volume_mc(r, mc),
            (Member::Berger(b), VolumeMode::Exact) => b.ball_volume_exact(r).map(Estimate::exact),
            (Member::Berger(b), VolumeMode::MonteCarlo(mc)) => b.ball_volume_mc(r, mc),
        }
    }

    /// `vol(B_r(x)) / inj(x)`; both are independent of `x`.
    pub fn criterion_ratio(&self, r: f64, mode: &VolumeMode) -> Result<f64, GeometryError> {
        Ok(self.ball_volume(r, mode)?.value / self.injectivity_radius())
    }
}

impl From<FlatTorus> for Member {
    fn from(t: FlatTorus) -> Self {
        Member::Torus(t)
    }
}

impl From<BergerSphere> for Member {
    fn from(b: BergerSphere) -> Self {
        Member::Berger(b)
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;

    #[test]
    fn hopf_ratio_at_full_ball() {
        for i in [10.0, 37.0, 100.0] {
            let m = Member::from(BergerSphere::new(1.0 / i).unwrap());
            let ratio = m.criterion_ratio(PI, &VolumeMode::Exact).unwrap();
            assert!((ratio - 2.0 * PI).abs() < 1e-12 * 2.0 * PI);
        }
    }

    #[test]
    fn zero_radius_gives_zero_ratio() {
        let m = Member::from(FlatTorus::new(vec![1.0, 0.1]).unwrap());
        assert_eq!(m.criterion_ratio(0.0, &VolumeMode::Exact).unwrap(), 0.0);
    }

    #[test]
    fn json_tags_family() {
        let m = Member::from(BergerSphere::new(0.5).unwrap());
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"family":"berger","epsilon":0.5}"#);
        let back: Member = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
