use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::FieldElement;
use crate::serial::DecimalInt;

use super::spec::{Mode, RegisterSpec};

/// Main register bits and carries, both in cell-major coordinate order.
///
/// Fibonacci registers keep a single carry vector of length `n`; every other
/// mode keeps one per cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "StateDocument", into = "StateDocument")]
pub struct RegisterState {
    pub(crate) a: Vec<u8>,
    pub(crate) m: Vec<i64>,
}

impl RegisterState {
    pub fn new(a: Vec<u8>, m: Vec<i64>) -> Result<Self> {
        if let Some(bad) = a.iter().find(|&&b| b > 1) {
            return Err(Error::InvalidState(format!("cell bit {bad} is not 0 or 1")));
        }
        Ok(Self { a, m })
    }

    pub fn zero(spec: &RegisterSpec) -> Self {
        Self {
            a: vec![0; spec.r() * spec.n()],
            m: vec![0; spec.memory_len()],
        }
    }

    /// Builds a state from cell contents and carry vectors (one per memory slot).
    pub fn from_cells(cells: &[FieldElement], carries: &[Vec<i64>]) -> Self {
        Self {
            a: cells.iter().flat_map(FieldElement::coords).collect(),
            m: carries.iter().flatten().copied().collect(),
        }
    }

    pub fn a(&self) -> &[u8] {
        &self.a
    }

    pub fn m(&self) -> &[i64] {
        &self.m
    }

    pub fn into_parts(self) -> (Vec<u8>, Vec<i64>) {
        (self.a, self.m)
    }

    pub fn memory_nonnegative(&self) -> bool {
        self.m.iter().all(|&x| x >= 0)
    }

    pub fn check_for(&self, spec: &RegisterSpec) -> Result<()> {
        let cells = spec.r() * spec.n();
        if self.a.len() != cells {
            return Err(Error::DimensionMismatch {
                expected: cells,
                found: self.a.len(),
            });
        }
        if self.m.len() != spec.memory_len() {
            return Err(Error::DimensionMismatch {
                expected: spec.memory_len(),
                found: self.m.len(),
            });
        }
        Ok(())
    }

    /// The equivalent ring-register state of a Fibonacci or Galois state.
    ///
    /// Fibonacci carries go into the last memory slot with zeros elsewhere;
    /// Galois carries already use the per-cell layout.
    pub fn to_ring_layout(&self, spec: &RegisterSpec) -> Result<Self> {
        self.check_for(spec)?;
        let m = match spec.mode() {
            Mode::Fibonacci => {
                let mut m = vec![0; spec.r() * spec.n()];
                let tail = m.len() - spec.n();
                m[tail..].copy_from_slice(&self.m);
                m
            }
            _ => self.m.clone(),
        };
        Ok(Self { a: self.a.clone(), m })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidState(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serialization cannot fail")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDocument {
    a: Vec<u8>,
    m: Vec<DecimalInt>,
}

impl TryFrom<StateDocument> for RegisterState {
    type Error = Error;

    fn try_from(doc: StateDocument) -> Result<Self> {
        let m = doc
            .m
            .into_iter()
            .map(|x| {
                x.0.to_i64()
                    .ok_or_else(|| Error::InvalidState(format!("carry {} out of range", x.0)))
            })
            .collect::<Result<Vec<_>>>()?;
        RegisterState::new(doc.a, m)
    }
}

impl From<RegisterState> for StateDocument {
    fn from(s: RegisterState) -> Self {
        StateDocument {
            a: s.a,
            m: s.m.into_iter().map(DecimalInt::from).collect(),
        }
    }
}
