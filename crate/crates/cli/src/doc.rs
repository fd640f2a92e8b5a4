//! JSON documents for matrix sets and linear maps.
//!
//! Complex entries are `[re, im]` pairs. Serialization is canonical: fields
//! appear in declaration order, numbering keys are sorted, and output is
//! pretty-printed with a trailing newline.

use std::collections::BTreeMap;
use std::path::Path;

use matalg::numerics::{identity, Matrix, Scalar, ToleranceConfig};
use matalg::{LinearMatrixMap, MatalgError, MatrixSet, Numbering};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Row-major rows of `[re, im]` pairs.
pub type Entries = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedMatrix {
    pub name: String,
    pub entries: Entries,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetDocument {
    pub n: usize,
    pub matrices: Vec<NamedMatrix>,
    /// Eigenvalues of each member, in a common order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numbering: Option<BTreeMap<String, Vec<[f64; 2]>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub h: usize,
    pub n: usize,
    pub domain_basis: Vec<Entries>,
    pub images: Vec<Entries>,
}

pub fn to_entries(m: &Matrix) -> Entries {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect())
        .collect()
}

pub fn pair(z: Scalar) -> [f64; 2] {
    [z.re, z.im]
}

pub fn from_entries(e: &Entries, n: usize, what: &str) -> Result<Matrix, CliError> {
    if e.len() != n || e.iter().any(|row| row.len() != n) {
        let cols = e.first().map_or(0, Vec::len);
        return Err(CliError::Input(format!(
            "{what}: expected {n}x{n} entries, got {}x{cols}",
            e.len()
        )));
    }
    let mut m = Matrix::zeros(n, n);
    for (i, row) in e.iter().enumerate() {
        for (j, [re, im]) in row.iter().enumerate() {
            if !re.is_finite() || !im.is_finite() {
                return Err(CliError::Input(format!("{what}: non-finite entry at ({i}, {j})")));
            }
            m[(i, j)] = Scalar::new(*re, *im);
        }
    }
    Ok(m)
}

impl SetDocument {
    pub fn from_set(set: &MatrixSet, numbering: Option<&Numbering>) -> Self {
        let numbering = numbering.map(|num| {
            set.names()
                .iter()
                .zip(&num.roots)
                .map(|(name, roots)| (name.to_string(), roots.iter().copied().map(pair).collect()))
                .collect()
        });
        Self {
            n: set.n(),
            matrices: set
                .members()
                .iter()
                .map(|(name, m)| NamedMatrix {
                    name: name.clone(),
                    entries: to_entries(m),
                })
                .collect(),
            numbering,
        }
    }

    pub fn to_set(&self) -> Result<MatrixSet, CliError> {
        if self.matrices.is_empty() {
            return Err(CliError::Input("matrix set is empty".into()));
        }
        let members = self
            .matrices
            .iter()
            .map(|m| Ok((m.name.clone(), from_entries(&m.entries, self.n, &m.name)?)))
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(MatrixSet::new(self.n, members)?)
    }

    /// The stored numbering, ordered like the members.
    pub fn to_numbering(&self) -> Result<Option<Numbering>, CliError> {
        let Some(map) = &self.numbering else {
            return Ok(None);
        };
        if map.len() != self.matrices.len() {
            return Err(CliError::Input(format!(
                "numbering lists {} members, set has {}",
                map.len(),
                self.matrices.len()
            )));
        }
        let mut roots = Vec::with_capacity(map.len());
        for m in &self.matrices {
            let list = map
                .get(&m.name)
                .ok_or_else(|| CliError::Input(format!("numbering has no entry for `{}`", m.name)))?;
            if list.len() != self.n {
                return Err(CliError::Input(format!(
                    "numbering for `{}` has {} values, expected {}",
                    m.name,
                    list.len(),
                    self.n
                )));
            }
            roots.push(list.iter().map(|[re, im]| Scalar::new(*re, *im)).collect());
        }
        Ok(Some(Numbering { roots }))
    }
}

impl MapDocument {
    pub fn from_map(map: &LinearMatrixMap) -> Self {
        Self {
            h: map.base_h(),
            n: map.base_n(),
            domain_basis: map.base_domain().iter().map(to_entries).collect(),
            images: map.base_images().iter().map(to_entries).collect(),
        }
    }

    pub fn to_map(&self, cfg: &ToleranceConfig) -> Result<LinearMatrixMap, CliError> {
        if self.domain_basis.len() != self.images.len() {
            return Err(CliError::Input(format!(
                "{} domain matrices but {} images",
                self.domain_basis.len(),
                self.images.len()
            )));
        }
        let domain = self
            .domain_basis
            .iter()
            .enumerate()
            .map(|(i, e)| from_entries(e, self.h, &format!("domain_basis[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let images = self
            .images
            .iter()
            .enumerate()
            .map(|(i, e)| from_entries(e, self.n, &format!("images[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        match domain.first() {
            Some(first) if *first == identity(self.h) => {}
            _ => return Err(CliError::Input("domain_basis must start with the identity".into())),
        }
        Ok(LinearMatrixMap::new(domain, images, cfg)?)
    }
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

impl From<MatalgError> for CliError {
    fn from(e: MatalgError) -> Self {
        match e {
            MatalgError::NumericalDegeneracy(msg) => CliError::Indeterminate(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}
