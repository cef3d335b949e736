//! JSON records shared by the library and the command line.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Real, C};

/// `{"re": .., "im": ..}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub re: f64,
    pub im: f64,
}

/// `{"re": .., "im": .., "mult": ..}` with `mult` defaulting to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub re: f64,
    pub im: f64,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

impl ComplexRecord {
    pub fn of<T: Real>(z: C<T>) -> Self {
        Self { re: z.re.to_f64_lossy(), im: z.im.to_f64_lossy() }
    }

    pub fn to_complex<T: Real>(self) -> C<T> {
        C::new(T::of(self.re), T::of(self.im))
    }
}

/// Parses `[{"re","im"}, ...]`.
pub fn parse_complex_list<T: Real>(text: &str) -> Result<Vec<C<T>>> {
    let recs: Vec<ComplexRecord> =
        serde_json::from_str(text).map_err(|e| Error::input(format!("malformed complex list: {e}")))?;
    if let Some(bad) = recs.iter().find(|r| !(r.re.is_finite() && r.im.is_finite())) {
        return Err(Error::input(format!("non-finite entry {bad:?}")));
    }
    Ok(recs.into_iter().map(ComplexRecord::to_complex).collect())
}

pub fn complex_list_records<T: Real>(zs: &[C<T>]) -> Vec<ComplexRecord> {
    zs.iter().map(|&z| ComplexRecord::of(z)).collect()
}
