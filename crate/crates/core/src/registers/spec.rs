use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{BinaryPolynomial, FieldElement};

/// Coefficient domain of a register.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Base {
    /// Cells hold single bits. Modelled as the degree-1 field F2[X]/(X+1).
    Binary,
    /// Cells hold elements of F2[X]/(P).
    Vectorial(BinaryPolynomial),
}

impl Base {
    pub fn poly(&self) -> BinaryPolynomial {
        match self {
            Base::Binary => BinaryPolynomial::binary(),
            Base::Vectorial(p) => p.clone(),
        }
    }

    pub fn n(&self) -> usize {
        match self {
            Base::Binary => 1,
            Base::Vectorial(p) => p.degree(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Fibonacci,
    Galois,
    Ring,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Connection {
    /// `q_1, ..., q_r` for Fibonacci and Galois registers.
    Coefficients(Vec<FieldElement>),
    /// The `r x r` transition matrix of a ring register, row-major.
    Matrix(Vec<Vec<FieldElement>>),
}

/// Full description of a register: base field, mode, size and connections.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpecDocument", into = "SpecDocument")]
pub struct RegisterSpec {
    base: Base,
    mode: Mode,
    connection: Connection,
    general: bool,
}

impl RegisterSpec {
    pub fn fibonacci(base: Base, q: Vec<FieldElement>) -> Result<Self> {
        Self::with_coefficients(base, Mode::Fibonacci, q)
    }

    pub fn galois(base: Base, q: Vec<FieldElement>) -> Result<Self> {
        Self::with_coefficients(base, Mode::Galois, q)
    }

    /// A ring register: the subdiagonal of `t` must be all ones.
    pub fn ring(base: Base, t: Vec<Vec<FieldElement>>) -> Result<Self> {
        Self::with_matrix(base, t, false)
    }

    /// A register with an arbitrary transition matrix (general FCR/VFCR).
    pub fn general(base: Base, t: Vec<Vec<FieldElement>>) -> Result<Self> {
        Self::with_matrix(base, t, true)
    }

    fn with_coefficients(base: Base, mode: Mode, q: Vec<FieldElement>) -> Result<Self> {
        let n = base.n();
        if q.is_empty() {
            return Err(Error::InvalidSpec("register size must be at least 1".into()));
        }
        for c in &q {
            check_element(c, n)?;
        }
        if q.last().unwrap().is_zero() {
            return Err(Error::InvalidSpec("last connection coefficient q_r must be nonzero".into()));
        }
        Ok(Self {
            base,
            mode,
            connection: Connection::Coefficients(q),
            general: false,
        })
    }

    fn with_matrix(base: Base, t: Vec<Vec<FieldElement>>, general: bool) -> Result<Self> {
        let n = base.n();
        let r = t.len();
        if r == 0 {
            return Err(Error::InvalidSpec("register size must be at least 1".into()));
        }
        for row in &t {
            if row.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    found: row.len(),
                });
            }
            for c in row {
                check_element(c, n)?;
            }
        }
        if !general {
            let one = base.poly().one();
            if let Some(i) = (0..r - 1).find(|&i| t[i + 1][i] != one) {
                return Err(Error::InvalidSpec(format!(
                    "ring mode needs t[{}][{}] = 1; use a general register for arbitrary matrices",
                    i + 1,
                    i
                )));
            }
        }
        Ok(Self {
            base,
            mode: Mode::Ring,
            connection: Connection::Matrix(t),
            general,
        })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn connection(&self) -> &Connection {
        &self.connection
    }

    pub fn is_general(&self) -> bool {
        self.general
    }

    pub fn poly(&self) -> BinaryPolynomial {
        self.base.poly()
    }

    /// Field dimension `n` (1 for binary registers).
    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// Number of cells `r`.
    pub fn r(&self) -> usize {
        match &self.connection {
            Connection::Coefficients(q) => q.len(),
            Connection::Matrix(t) => t.len(),
        }
    }

    /// Number of carry coordinates: `n` for Fibonacci, `rn` otherwise.
    pub fn memory_len(&self) -> usize {
        match self.mode {
            Mode::Fibonacci => self.n(),
            _ => self.r() * self.n(),
        }
    }

    pub fn coefficients(&self) -> Option<&[FieldElement]> {
        match &self.connection {
            Connection::Coefficients(q) => Some(q),
            Connection::Matrix(_) => None,
        }
    }

    /// The transition matrix over the field. Fibonacci and Galois registers
    /// report their companion forms `F` and `G`.
    pub fn field_matrix(&self) -> Vec<Vec<FieldElement>> {
        let n = self.n();
        let r = self.r();
        let zero = FieldElement::zero(n);
        let one = self.poly().one();
        match (&self.connection, self.mode) {
            (Connection::Matrix(t), _) => t.clone(),
            (Connection::Coefficients(q), Mode::Fibonacci) => {
                let mut f = vec![vec![zero; r]; r];
                for i in 0..r {
                    if i + 1 < r {
                        f[i + 1][i] = one;
                    }
                    f[i][r - 1] = q[r - 1 - i];
                }
                f
            }
            (Connection::Coefficients(q), _) => {
                let mut g = vec![vec![zero; r]; r];
                g[0].copy_from_slice(q);
                for i in 0..r - 1 {
                    g[i + 1][i] = one;
                }
                g
            }
        }
    }

    /// Ring mode traditionally also asks for `t[0][r-1] != 0`; this is
    /// reported but not enforced.
    pub fn top_right_nonzero(&self) -> bool {
        let t = self.field_matrix();
        !t[0][t.len() - 1].is_zero()
    }
}

fn check_element(c: &FieldElement, n: usize) -> Result<()> {
    if c.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: c.dim(),
        });
    }
    Ok(())
}

/// On-disk shape of a [`RegisterSpec`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<String>,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub general: bool,
    pub r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<String>>,
    #[serde(rename = "T", default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<Vec<String>>>,
}

impl TryFrom<SpecDocument> for RegisterSpec {
    type Error = Error;

    fn try_from(doc: SpecDocument) -> Result<Self> {
        let base = match (doc.base.as_str(), doc.poly) {
            ("binary", None) => Base::Binary,
            ("binary", Some(p)) if p == "11" => Base::Binary,
            ("binary", Some(p)) => {
                return Err(Error::InvalidSpec(format!("binary registers take no polynomial, got {p:?}")))
            }
            ("vectorial", Some(p)) => Base::Vectorial(p.parse()?),
            ("vectorial", None) => return Err(Error::InvalidSpec("vectorial base needs \"poly\"".into())),
            (other, _) => return Err(Error::InvalidSpec(format!("unknown base {other:?}"))),
        };
        let n = base.n();
        let parse = |s: &String| FieldElement::parse(s, n);

        let spec = match (doc.mode, doc.q, doc.t) {
            (Mode::Fibonacci | Mode::Galois, Some(q), None) => {
                if doc.general {
                    return Err(Error::InvalidSpec("\"general\" only applies to ring mode".into()));
                }
                let q = q.iter().map(parse).collect::<Result<Vec<_>>>()?;
                Self::with_coefficients(base, doc.mode, q)?
            }
            (Mode::Ring, None, Some(t)) => {
                let t = t
                    .iter()
                    .map(|row| row.iter().map(parse).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                Self::with_matrix(base, t, doc.general)?
            }
            (Mode::Ring, _, _) => {
                return Err(Error::InvalidSpec("ring mode needs \"T\" and no \"q\"".into()))
            }
            _ => return Err(Error::InvalidSpec("fibonacci/galois modes need \"q\" and no \"T\"".into())),
        };
        if spec.r() != doc.r {
            return Err(Error::InvalidSpec(format!(
                "declared r = {} but connection data has size {}",
                doc.r,
                spec.r()
            )));
        }
        Ok(spec)
    }
}

impl From<RegisterSpec> for SpecDocument {
    fn from(spec: RegisterSpec) -> Self {
        let r = spec.r();
        let (base, poly) = match &spec.base {
            Base::Binary => ("binary".to_string(), None),
            Base::Vectorial(p) => ("vectorial".to_string(), Some(p.to_string())),
        };
        let (q, t) = match &spec.connection {
            Connection::Coefficients(q) => (Some(q.iter().map(ToString::to_string).collect()), None),
            Connection::Matrix(t) => (
                None,
                Some(
                    t.iter()
                        .map(|row| row.iter().map(ToString::to_string).collect())
                        .collect(),
                ),
            ),
        };
        SpecDocument {
            base,
            poly,
            mode: spec.mode,
            general: spec.general,
            r,
            q,
            t,
        }
    }
}

impl RegisterSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }
}

#[cfg(test)]
pub(crate) use tests::golden_spec;
