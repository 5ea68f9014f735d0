//! Generalized W-class states, partitions of the party set and coarse-graining.
//!
//! A W-class state over `n` parties with `d` excitation levels is
//!
//! ```text
//! |ψ⟩ = Σ_{i=1..d} a_{1i}|i0⋯0⟩ + a_{2i}|0i⋯0⟩ + ⋯ + a_{ni}|00⋯i⟩
//! ```
//!
//! so every site carries `d + 1` levels and the all-zero vector never appears.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::qudit::{
    partial_trace, unflatten_index, CMatrix, CVector, DensityMatrix, PureState, SubsetSelector,
    SystemShape,
};
use crate::{Error, Result, STRUCT_TOL};

/// Amplitudes below this modulus count as zero in support checks.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Coefficient matrix `a[j][i]`: party `j` in level `i + 1`, everyone else in level 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WCoefficients {
    n: usize,
    d: usize,
    a: Vec<Complex64>,
}

impl WCoefficients {
    /// `a` is row-major by party, then level. Σ|a|² must be 1 within 1e-10.
    pub fn new(n: usize, d: usize, a: Vec<Complex64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument(format!(
                "W-class states need n >= 2 parties, got {n}"
            )));
        }
        if d < 1 {
            return Err(Error::Argument(
                "W-class states need d >= 1 excitation levels".into(),
            ));
        }
        if a.len() != n * d {
            return Err(Error::Shape {
                expected: format!("{} coefficients", n * d),
                actual: format!("{}", a.len()),
            });
        }
        let norm_sqr: f64 = a.iter().map(Complex64::norm_sqr).sum();
        if (norm_sqr - 1.0).abs() > STRUCT_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { n, d, a })
    }

    /// I.i.d. standard complex normal entries, normalized. Deterministic in `seed`.
    pub fn random(n: usize, d: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a: Vec<Complex64> = (0..n * d)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
            })
            .collect();
        let norm = a.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        a.iter_mut().for_each(|z| *z /= norm);
        Self::new(n, d, a)
    }

    /// `(2|100⟩ + |010⟩ + |001⟩)/√6`, the three-qubit worked example.
    pub fn three_qubit_example() -> Self {
        let s = 6f64.sqrt();
        let a = [2.0 / s, 1.0 / s, 1.0 / s]
            .into_iter()
            .map(|x| Complex64::new(x, 0.0))
            .collect();
        Self { n: 3, d: 1, a }
    }

    pub fn parties(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> usize {
        self.d
    }

    /// Amplitude of party `party` excited to level `level` (1-based, as in the state formula).
    pub fn get(&self, party: usize, level: usize) -> Complex64 {
        assert!(party < self.n && (1..=self.d).contains(&level));
        self.a[party * self.d + level - 1]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.a
    }

    /// Σ_i |a_{j,i}|², the excitation weight carried by party `j`.
    pub fn party_weight(&self, party: usize) -> f64 {
        self.a[party * self.d..(party + 1) * self.d]
            .iter()
            .map(Complex64::norm_sqr)
            .sum()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n
            && self.d == other.d
            && self
                .a
                .iter()
                .zip(&other.a)
                .all(|(x, y)| (x - y).norm() <= tol)
    }

    pub fn to_descriptor(&self) -> StateDescriptor {
        StateDescriptor {
            n: self.n,
            d: self.d,
            coeffs: self.a.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

/// On-disk JSON form: `{"n": .., "d": .., "coeffs": [[re, im], ...]}`, row-major by
/// party then level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDescriptor {
    pub n: usize,
    pub d: usize,
    pub coeffs: Vec<[f64; 2]>,
}

impl StateDescriptor {
    pub fn to_coefficients(&self) -> Result<WCoefficients> {
        let a = self
            .coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        WCoefficients::new(self.n, self.d, a).map_err(|e| Error::Descriptor(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("descriptor serializes")
    }
}

/// The W-class state over `n` sites of dimension `d + 1`.
pub fn build_wclass_state(coeffs: &WCoefficients) -> Result<PureState> {
    let (n, d) = (coeffs.n, coeffs.d);
    let shape = SystemShape::uniform(n, d + 1)?;
    let strides = shape.strides();
    let mut amps = CVector::zeros(shape.total_dim());
    for j in 0..n {
        for i in 1..=d {
            amps[i * strides[j]] = coeffs.get(j, i);
        }
    }
    PureState::new(shape, amps)
}

/// True iff every non-negligible amplitude sits on a basis vector with at most one
/// site outside level 0.
pub fn is_wclass_support(state: &PureState) -> bool {
    let shape = state.shape();
    state.amps().iter().enumerate().all(|(f, a)| {
        a.norm() <= SUPPORT_TOL
            || unflatten_index(f, shape)
                .map(|m| m.iter().filter(|&&l| l != 0).count() <= 1)
                .unwrap_or(false)
    })
}

/// Ordered disjoint blocks `P_1, …, P_m` of site labels, `m >= 2`.
/// `P_1` is the focus party of every monogamy relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Members of each block are sorted; block order is kept.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        if blocks.len() < 2 {
            return Err(Error::Argument(format!(
                "a partition needs at least 2 blocks, got {}",
                blocks.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(Error::Argument("partition blocks must be non-empty".into()));
            }
            b.sort_unstable();
            for &s in &b {
                if !seen.insert(s) {
                    return Err(Error::Argument(format!("site {s} appears in two blocks")));
                }
            }
            sorted.push(b);
        }
        Ok(Self { blocks: sorted })
    }

    /// One block per site, in label order.
    pub fn finest(n: usize) -> Result<Self> {
        Self::new((0..n).map(|s| vec![s]).collect())
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn covered(&self) -> SubsetSelector {
        SubsetSelector::new(self.blocks.concat()).expect("blocks are disjoint")
    }

    pub fn covers(&self, shape: &SystemShape) -> bool {
        self.covered().len() == shape.num_sites()
    }

    pub fn validate(&self, shape: &SystemShape) -> Result<()> {
        self.covered().validate(shape)
    }

    /// Sub-partition made of the listed blocks, in the given order.
    pub fn select(&self, which: &[usize]) -> Result<Partition> {
        Partition::new(
            which
                .iter()
                .map(|&b| {
                    self.blocks
                        .get(b)
                        .cloned()
                        .ok_or_else(|| Error::Index(format!("block {b} of {}", self.blocks.len())))
                })
                .collect::<Result<_>>()?,
        )
    }

    /// Composite dimension of each block.
    pub fn block_dims(&self, shape: &SystemShape) -> Vec<usize> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&s| shape.dims()[s]).product())
            .collect()
    }

    /// Parses `A|BC|D`-style specs; sites are letters `A`–`Z` or `S<index>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let blocks = spec
            .split('|')
            .map(|b| parse_sites(b.trim()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(blocks)
    }

    /// Same blocks with block `focus` moved to the front; the rest keep their order.
    pub fn with_focus(&self, focus: usize) -> Result<Partition> {
        if focus >= self.blocks.len() {
            return Err(Error::Index(format!(
                "block {focus} of {}",
                self.blocks.len()
            )));
        }
        let mut order = vec![focus];
        order.extend((0..self.blocks.len()).filter(|&b| b != focus));
        self.select(&order)
    }

    /// Every way to split sites `0..n` into `k` non-empty blocks, blocks ordered by
    /// their smallest site.
    pub fn all_covering(n: usize, k: usize) -> Result<Vec<Partition>> {
        if k < 2 || k > n {
            return Err(Error::Argument(format!(
                "cannot split {n} sites into {k} blocks"
            )));
        }
        let mut out = Vec::new();
        let mut labels = vec![0usize; n];
        fn grow(
            i: usize,
            used: usize,
            k: usize,
            labels: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = labels.len();
            if i == n {
                if used == k {
                    out.push(labels.clone());
                }
                return;
            }
            if k - used > n - i {
                return;
            }
            for b in 0..(used + 1).min(k) {
                labels[i] = b;
                grow(i + 1, used.max(b + 1), k, labels, out);
            }
        }
        let mut assignments = Vec::new();
        grow(0, 0, k, &mut labels, &mut assignments);
        for a in assignments {
            let mut blocks = vec![Vec::new(); k];
            for (site, &b) in a.iter().enumerate() {
                blocks[b].push(site);
            }
            out.push(Partition::new(blocks)?);
        }
        Ok(out)
    }

    pub fn label(&self) -> String {
        self.blocks
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(|s| site_name(*s)).collect();
                format!("{{{}}}", inner.join(""))
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

fn parse_sites(block: &str) -> Result<Vec<usize>> {
    let bad = || Error::Argument(format!("invalid block `{block}` in partition spec"));
    let mut sites = Vec::new();
    let mut chars = block.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'S' if chars.peek().is_some_and(|d| d.is_ascii_digit()) => {
                let mut num = String::new();
                while let Some(d) = chars.next_if(|d| d.is_ascii_digit()) {
                    num.push(d);
                }
                sites.push(num.parse().map_err(|_| bad())?);
            }
            'A'..='Z' => sites.push((c as u8 - b'A') as usize),
            _ => return Err(bad()),
        }
    }
    if sites.is_empty() {
        return Err(bad());
    }
    Ok(sites)
}

/// `A`, `B`, `C`, … for the first 26 sites, then `S26`, `S27`, ….
pub fn site_name(site: usize) -> String {
    if site < 26 {
        char::from(b'A' + site as u8).to_string()
    } else {
        format!("S{site}")
    }
}

/// A state restricted to the sites of a partition, one composite site per block.
#[derive(Debug, Clone, PartialEq)]
pub enum PartitionedSource {
    Pure(PureState),
    Mixed(DensityMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionedState {
    pub partition: Partition,
    pub source: PartitionedSource,
}

impl PartitionedState {
    pub fn shape(&self) -> &SystemShape {
        match &self.source {
            PartitionedSource::Pure(p) => p.shape(),
            PartitionedSource::Mixed(m) => m.shape(),
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match &self.source {
            PartitionedSource::Pure(p) => p.to_density(),
            PartitionedSource::Mixed(m) => m.clone(),
        }
    }

    pub fn pure(&self) -> Option<&PureState> {
        match &self.source {
            PartitionedSource::Pure(p) => Some(p),
            PartitionedSource::Mixed(_) => None,
        }
    }
}

/// Maps each flat index over `sites` (a label-ordered list with local `dims`) to its
/// flat index in the block-merged space of `partition`.
fn merged_index_map(sites: &[usize], dims: &[usize], partition: &Partition) -> Vec<usize> {
    let shape = SystemShape::new(dims.to_vec()).expect("valid dims");
    let pos = |s: usize| sites.iter().position(|&x| x == s).expect("covered site");
    let blocks: Vec<Vec<usize>> = partition
        .blocks()
        .iter()
        .map(|b| b.iter().map(|&s| pos(s)).collect())
        .collect();
    (0..shape.total_dim())
        .map(|f| {
            let levels = unflatten_index(f, &shape).expect("in range");
            blocks.iter().fold(0, |idx, b| {
                b.iter().fold(idx, |acc, &p| acc * dims[p] + levels[p])
            })
        })
        .collect()
}

/// Permutes amplitudes into block order and merges each block into one site.
/// The partition must cover every site.
pub fn coarse_grain(state: &PureState, partition: &Partition) -> Result<PureState> {
    let shape = state.shape();
    partition.validate(shape)?;
    if !partition.covers(shape) {
        return Err(Error::Argument(format!(
            "partition {} does not cover all {} sites; use reduce_to_partition",
            partition.label(),
            shape.num_sites()
        )));
    }
    let sites: Vec<usize> = (0..shape.num_sites()).collect();
    let map = merged_index_map(&sites, shape.dims(), partition);
    let mut amps = CVector::zeros(shape.total_dim());
    for (f, &g) in map.iter().enumerate() {
        amps[g] = state.amps()[f];
    }
    PureState::new(SystemShape::new(partition.block_dims(shape))?, amps)
}

/// Traces out sites outside the partition, then merges blocks. Full covers stay pure.
pub fn reduce_to_partition(state: &PureState, partition: &Partition) -> Result<PartitionedState> {
    let shape = state.shape();
    partition.validate(shape)?;
    if partition.covers(shape) {
        return Ok(PartitionedState {
            partition: partition.clone(),
            source: PartitionedSource::Pure(coarse_grain(state, partition)?),
        });
    }
    let keep = partition.covered();
    let reduced = state.reduced(&keep)?;
    let map = merged_index_map(keep.sites(), reduced.shape().dims(), partition);
    let d = map.len();
    let m = reduced.matrix();
    let mut out = CMatrix::zeros(d, d);
    for (r, &gr) in map.iter().enumerate() {
        for (c, &gc) in map.iter().enumerate() {
            out[(gr, gc)] = m[(r, c)];
        }
    }
    let merged =
        DensityMatrix::from_parts_unchecked(SystemShape::new(partition.block_dims(shape))?, out);
    Ok(PartitionedState {
        partition: partition.clone(),
        source: PartitionedSource::Mixed(merged),
    })
}

/// Like [`reduce_to_partition`] but for an arbitrary density matrix.
pub fn reduce_density_to_partition(
    rho: &DensityMatrix,
    partition: &Partition,
) -> Result<DensityMatrix> {
    let keep = partition.covered();
    let reduced = partial_trace(rho, &keep)?;
    let map = merged_index_map(keep.sites(), reduced.shape().dims(), partition);
    let d = map.len();
    let mut out = CMatrix::zeros(d, d);
    for (r, &gr) in map.iter().enumerate() {
        for (c, &gc) in map.iter().enumerate() {
            out[(gr, gc)] = reduced.matrix()[(r, c)];
        }
    }
    Ok(DensityMatrix::from_parts_unchecked(
        SystemShape::new(partition.block_dims(rho.shape()))?,
        out,
    ))
}
