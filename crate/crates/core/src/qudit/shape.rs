use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Upper bound on the total Hilbert-space dimension handled by this crate.
pub const MAX_TOTAL_DIM: usize = 1 << 16;

/// Local dimensions of an ordered list of sites. Site `i` is labelled `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SystemShape {
    dims: Vec<usize>,
}

impl SystemShape {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Argument("a system needs at least one site".into()));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::Argument(format!("local dimension {d} < 2")));
        }
        let mut total: usize = 1;
        for &d in &dims {
            total = total
                .checked_mul(d)
                .filter(|&t| t <= MAX_TOTAL_DIM)
                .ok_or_else(|| Error::Argument(format!("total dimension of {dims:?} too large")))?;
        }
        Ok(Self { dims })
    }

    /// `n` sites of local dimension `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn num_sites(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn is_qubits(&self) -> bool {
        self.dims.iter().all(|&d| d == 2)
    }

    /// Row-major strides, site 0 most significant.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    /// Shape of the sites picked by `sel`, in label order.
    pub fn select(&self, sel: &SubsetSelector) -> Result<SystemShape> {
        sel.validate(self)?;
        SystemShape::new(sel.sites().iter().map(|&s| self.dims[s]).collect())
    }
}

/// Mixed-radix flattening with site 0 most significant.
pub fn flatten_index(multi: &[usize], shape: &SystemShape) -> Result<usize> {
    if multi.len() != shape.num_sites() {
        return Err(Error::Index(format!(
            "multi-index has {} levels for {} sites",
            multi.len(),
            shape.num_sites()
        )));
    }
    let mut idx = 0;
    for (site, (&level, &d)) in multi.iter().zip(shape.dims()).enumerate() {
        if level >= d {
            return Err(Error::Index(format!(
                "level {level} out of range for site {site} of dimension {d}"
            )));
        }
        idx = idx * d + level;
    }
    Ok(idx)
}

/// Inverse of [`flatten_index`].
pub fn unflatten_index(mut idx: usize, shape: &SystemShape) -> Result<Vec<usize>> {
    if idx >= shape.total_dim() {
        return Err(Error::Index(format!(
            "flat index {idx} out of range for total dimension {}",
            shape.total_dim()
        )));
    }
    let mut multi = vec![0; shape.num_sites()];
    for (slot, &d) in multi.iter_mut().zip(shape.dims()).rev() {
        *slot = idx % d;
        idx /= d;
    }
    Ok(multi)
}

/// A sorted, duplicate-free set of site labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsetSelector {
    sites: Vec<usize>,
}

impl SubsetSelector {
    /// Sorts the labels; rejects duplicates.
    pub fn new(mut sites: Vec<usize>) -> Result<Self> {
        sites.sort_unstable();
        if sites.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Argument(format!(
                "duplicate site labels in {sites:?}"
            )));
        }
        Ok(Self { sites })
    }

    pub fn single(site: usize) -> Self {
        Self { sites: vec![site] }
    }

    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.sites.binary_search(&site).is_ok()
    }

    /// Labels of `shape` not in this selector.
    pub fn complement(&self, shape: &SystemShape) -> SubsetSelector {
        SubsetSelector {
            sites: (0..shape.num_sites())
                .filter(|s| !self.contains(*s))
                .collect(),
        }
    }

    pub fn validate(&self, shape: &SystemShape) -> Result<()> {
        match self.sites.last() {
            Some(&s) if s >= shape.num_sites() => Err(Error::Index(format!(
                "site {s} out of range for {} sites",
                shape.num_sites()
            ))),
            _ => Ok(()),
        }
    }
}
