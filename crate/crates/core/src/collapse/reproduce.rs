use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CollapseError, ModeKind};
use crate::geometry::{BergerSphere, FlatTorus, Member, MonteCarlo, VolumeMode};
use crate::numeric::{fmt_sig17, mix_seed};

const THIN_TORUS_NOTE: &str =
    "stated limit 4*pi*r; the wrapped strip of width 2*pi/i and length 2r gives 4r";

/// One worked-example row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproRow {
    pub example_id: String,
    pub index: u64,
    pub r: f64,
    pub ratio: f64,
    /// Value computed independently of the volume backend.
    pub analytic_value: f64,
    pub relative_error: f64,
    /// Value as stated for the example.
    pub stated_value: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReproTable {
    pub mode: ModeKind,
    pub samples: u64,
    pub seed: u64,
    pub rows: Vec<ReproRow>,
}

impl ReproTable {
    pub const CSV_HEADER: &'static str =
        "example_id,index,r,ratio,analytic_value,relative_error,stated_value,note";

    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                row.example_id,
                row.index,
                fmt_sig17(row.r),
                fmt_sig17(row.ratio),
                fmt_sig17(row.analytic_value),
                fmt_sig17(row.relative_error),
                fmt_sig17(row.stated_value),
                row.note
            ));
        }
        out
    }
}

struct Case {
    example_id: &'static str,
    member: Member,
    index: u64,
    r: f64,
    analytic: f64,
    stated: f64,
    note: &'static str,
}

fn cases() -> Result<Vec<Case>, CollapseError> {
    let member_err = |index| move |source| CollapseError::Member { index, source };
    let mut out = Vec::new();
    for r in [0.25, 0.5] {
        for i in [50u64, 100, 200, 500] {
            let t = FlatTorus::new(vec![1.0, 1.0 / i as f64]).map_err(member_err(i))?;
            out.push(Case {
                example_id: "thin_torus",
                member: Member::Torus(t),
                index: i,
                r,
                analytic: 4.0 * r,
                stated: 4.0 * PI * r,
                note: THIN_TORUS_NOTE,
            });
        }
    }
    for j in (10u64..=100).step_by(10) {
        let jf = j as f64;
        let t = FlatTorus::new(vec![1.0 / (jf * jf), 1.0 / jf]).map_err(member_err(j))?;
        out.push(Case {
            example_id: "doubly_thin_torus",
            member: Member::Torus(t),
            index: j,
            r: 1.0,
            analytic: 4.0 * PI / jf,
            stated: 4.0 * PI / jf,
            note: "",
        });
    }
    for i in (10u64..=100).step_by(10) {
        let b = BergerSphere::new(1.0 / i as f64).map_err(member_err(i))?;
        out.push(Case {
            example_id: "hopf",
            member: Member::Berger(b),
            index: i,
            r: PI,
            analytic: 2.0 * PI,
            stated: 2.0 * PI,
            note: "",
        });
    }
    Ok(out)
}

/// Recomputes the three worked examples: thin tori `(1, 1/i)`, doubly thin
/// tori `(1/j², 1/j)` and Berger spheres with `ε = 1/i`.
pub fn reproduce(mode: ModeKind, samples: u64, seed: u64) -> Result<ReproTable, CollapseError> {
    let rows = cases()?
        .into_par_iter()
        .enumerate()
        .map(|(k, case)| {
            let vm = match mode {
                ModeKind::Exact => VolumeMode::Exact,
                ModeKind::MonteCarlo => {
                    VolumeMode::MonteCarlo(MonteCarlo::new(samples, mix_seed(seed, k as u64)))
                }
            };
            let ratio = case
                .member
                .criterion_ratio(case.r, &vm)
                .map_err(|source| CollapseError::Member {
                    index: case.index,
                    source,
                })?;
            Ok(ReproRow {
                example_id: case.example_id.to_string(),
                index: case.index,
                r: case.r,
                ratio,
                analytic_value: case.analytic,
                relative_error: (ratio - case.analytic).abs() / case.analytic.abs(),
                stated_value: case.stated,
                note: case.note.to_string(),
            })
        })
        .collect::<Result<Vec<_>, CollapseError>>()?;
    Ok(ReproTable {
        mode,
        samples,
        seed,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_table_matches_closed_forms() {
        let t = reproduce(ModeKind::Exact, 0, 0).unwrap();
        assert_eq!(t.rows.len(), 28);
        for row in &t.rows {
            match row.example_id.as_str() {
                "doubly_thin_torus" | "hopf" => assert!(row.relative_error <= 1e-12, "{row:?}"),
                _ => {
                    assert!(row.relative_error < 0.02, "{row:?}");
                    assert!(row.stated_value > 3.0 * row.analytic_value);
                }
            }
        }
        let csv = t.to_csv();
        assert_eq!(csv.lines().count(), 29);
        assert!(csv.lines().all(|l| l.split(',').count() == 8));
    }
}
