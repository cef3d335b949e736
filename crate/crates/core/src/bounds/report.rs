use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Which side of the interpolation constant a value bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Upper,
    Lower,
    /// Reported for context only; never part of the ordering check.
    Aux,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::Upper => "upper",
            Side::Lower => "lower",
            Side::Aux => "aux",
        }
    }
}

/// One named value attached to `(n, r)` and a space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub side: Side,
    pub space: String,
    pub n: usize,
    pub r: f64,
    pub value: f64,
    /// Number of sample points behind a grid supremum (0 for closed forms).
    pub grid: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    pub fn new(name: &str, side: Side, space: &str, n: usize, r: f64, value: f64) -> Self {
        Self { name: name.into(), side, space: space.into(), n, r, value, grid: 0, note: None }
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.16e},{:.16e},{}",
            self.name,
            self.side.as_str(),
            self.space,
            self.n,
            self.r,
            self.value,
            self.grid
        )
    }
}

pub const CSV_HEADER: &str = "name,side,space,n,r,value,grid";

pub fn reports_to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::with_capacity(64 * (reports.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

/// A lower-side value exceeding an upper-side value for the same space.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingViolation {
    pub lower: BoundReport,
    pub upper: BoundReport,
}

impl std::fmt::Display for OrderingViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} = {:e} (lower) exceeds {} = {:e} (upper) in {}",
            self.lower.name, self.lower.value, self.upper.name, self.upper.value, self.lower.space
        )
    }
}

/// Checks every lower-side value against every upper-side value of the same
/// space and `(n, r)`, allowing `slack`.
pub fn check_ordering(reports: &[BoundReport], slack: f64) -> Result<(), OrderingViolation> {
    for lo in reports.iter().filter(|r| r.side == Side::Lower) {
        for up in reports.iter().filter(|r| r.side == Side::Upper) {
            let same = lo.space == up.space && lo.n == up.n && lo.r == up.r;
            if same && lo.value > up.value + slack {
                return Err(OrderingViolation { lower: lo.clone(), upper: up.clone() });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_uses_seventeen_significant_digits() {
        let r = BoundReport::new("ub_simple", Side::Upper, "h2", 1, 0.5, 3f64.sqrt()).with_grid(0);
        assert_eq!(r.csv_row(), "ub_simple,upper,h2,1,5.0000000000000000e-1,1.7320508075688772e0,0");
        let parsed: f64 = r.csv_row().split(',').nth(5).unwrap().parse().unwrap();
        assert_eq!(parsed, 3f64.sqrt());
    }

    #[test]
    fn ordering_check_ignores_aux_and_other_spaces() {
        let reps = vec![
            BoundReport::new("a", Side::Lower, "h2", 2, 0.0, 1.0),
            BoundReport::new("b", Side::Upper, "h2", 2, 0.0, 2.0),
            BoundReport::new("c", Side::Aux, "h2", 2, 0.0, 0.1),
            BoundReport::new("d", Side::Upper, "bergman", 2, 0.0, 0.5),
        ];
        assert!(check_ordering(&reps, 0.0).is_ok());
        let mut bad = reps.clone();
        bad.push(BoundReport::new("e", Side::Lower, "h2", 2, 0.0, 3.0));
        let v = check_ordering(&bad, 1e-9).unwrap_err();
        assert_eq!(v.lower.name, "e");
    }
}
