//! Known upper bounds on `<u,v,w>` and the two ways of combining them.
//!
//! Every symmetry of a scheme preserves rank, so the table is keyed by the
//! sorted triple and any permutation of a stored shape finds the entry.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{FmmError, Result};
use crate::scheme::Dims;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEntry {
    pub dims_key: [usize; 3],
    pub rank_bound: usize,
    pub provenance: String,
}

impl BoundEntry {
    pub fn new(dims: Dims, rank_bound: usize, provenance: impl Into<String>) -> Result<Self> {
        if rank_bound == 0 || rank_bound > dims.volume() {
            return Err(FmmError::Validation(format!(
                "bound {rank_bound} for {dims} must lie in 1..={}",
                dims.volume()
            )));
        }
        Ok(BoundEntry {
            dims_key: dims.canonical(),
            rank_bound,
            provenance: provenance.into(),
        })
    }

    fn naive(dims: Dims) -> Self {
        BoundEntry {
            dims_key: dims.canonical(),
            rank_bound: dims.volume(),
            provenance: "naive".into(),
        }
    }
}

impl fmt::Display for BoundEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.dims_key;
        write!(
            f,
            "<{a},{b},{c}> <= {} ({})",
            self.rank_bound, self.provenance
        )
    }
}

const SEEDS: &[([usize; 3], usize, &str)] = &[
    ([2, 2, 2], 7, "Strassen 1969"),
    ([4, 4, 4], 49, "kronecker <2,2,2> x <2,2,2>"),
    ([3, 3, 3], 23, "cited: Laderman 1976"),
    ([3, 3, 4], 29, "cited: Smirnov 2013, Table 1 No. 13"),
    ([3, 4, 4], 38, "cited: Smirnov 2013, Table 1 No. 21"),
    ([3, 3, 6], 40, "cited: Smirnov 2013, Table 1 No. 27"),
    ([6, 6, 6], 160, "kronecker <6,3,3> x <1,2,2>"),
    ([3, 6, 6], 80, "kronecker <6,3,3> x <1,2,1>"),
    (
        [7, 7, 7],
        250,
        "block composition u=4 v=3: <4,4,4> + 3<3,4,4> + 3<3,3,4>",
    ),
    (
        [9, 9, 9],
        520,
        "block composition u=6 v=3: <6,6,6> + 3<6,6,3> + 3<3,3,6>",
    ),
    ([9, 9, 9], 514, "cited"),
];

/// A set of bound entries with naive fallback. Several entries may share a
/// key; queries return the smallest.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundsTable {
    entries: Vec<BoundEntry>,
}

impl BoundsTable {
    /// No stored bounds; every query falls back to `u*v*w`.
    pub fn naive_only() -> Self {
        Self::default()
    }

    pub fn seeded() -> Self {
        let entries = SEEDS
            .iter()
            .map(|&(key, bound, provenance)| BoundEntry {
                dims_key: key,
                rank_bound: bound,
                provenance: provenance.into(),
            })
            .collect();
        BoundsTable { entries }
    }

    pub fn insert(&mut self, entry: BoundEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, entries: impl IntoIterator<Item = BoundEntry>) {
        self.entries.extend(entries);
    }

    pub fn entries(&self) -> &[BoundEntry] {
        &self.entries
    }

    /// Every stored entry for a shape, best first.
    pub fn entries_for(&self, dims: Dims) -> Vec<&BoundEntry> {
        let key = dims.canonical();
        let mut found: Vec<_> = self.entries.iter().filter(|e| e.dims_key == key).collect();
        found.sort_by_key(|e| e.rank_bound);
        found
    }

    /// Best known bound, or the naive entry when nothing better is stored.
    pub fn query(&self, dims: Dims) -> BoundEntry {
        let naive = BoundEntry::naive(dims);
        match self.entries_for(dims).first() {
            Some(best) if best.rank_bound < naive.rank_bound => (*best).clone(),
            _ => naive,
        }
    }

    pub fn bound(&self, dims: Dims) -> usize {
        self.query(dims).rank_bound
    }
}

/// A bound obtained by combining table entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub value: usize,
    /// `(multiplier, entry)` pairs.
    pub parts: Vec<(usize, BoundEntry)>,
    /// Whether `parts` multiply (Kronecker) rather than add.
    pub product: bool,
}

impl Derivation {
    /// `49+3·38+3·29` or `23·23`.
    pub fn compact(&self) -> String {
        let terms: Vec<String> = self
            .parts
            .iter()
            .map(|(m, e)| match m {
                1 => e.rank_bound.to_string(),
                m => format!("{m}·{}", e.rank_bound),
            })
            .collect();
        terms.join(if self.product { "·" } else { "+" })
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let spaced = self.compact().replace('+', " + ");
        writeln!(f, "{} = {spaced}", self.value)?;
        for (_, entry) in &self.parts {
            writeln!(f, "  {entry}")?;
        }
        Ok(())
    }
}

/// `<u,u,u> + 3 <u,u,v> + 3 <v,v,u>` from the table, for `u > v`.
pub fn prop1_bound(u: usize, v: usize, table: &BoundsTable) -> Result<Derivation> {
    if v == 0 || u <= v {
        return Err(FmmError::Parameter(format!(
            "need u > v >= 1, got u={u}, v={v}"
        )));
    }
    let parts = vec![
        (1, table.query(Dims::new(u, u, u)?)),
        (3, table.query(Dims::new(u, u, v)?)),
        (3, table.query(Dims::new(v, v, u)?)),
    ];
    Ok(Derivation {
        value: parts.iter().map(|(m, e)| m * e.rank_bound).sum(),
        parts,
        product: false,
    })
}

/// `<d1> * <d2>`, a bound for the shape `d1 * d2` (componentwise).
pub fn kron_bound(d1: Dims, d2: Dims, table: &BoundsTable) -> Derivation {
    let parts = vec![(1, table.query(d1)), (1, table.query(d2))];
    Derivation {
        value: parts.iter().map(|(_, e)| e.rank_bound).product(),
        parts,
        product: true,
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundRecord {
    u: usize,
    v: usize,
    w: usize,
    bound: usize,
    provenance: String,
}

/// Reads a JSON array of `{u, v, w, bound, provenance}` records.
pub fn load_bounds(path: impl AsRef<Path>) -> Result<Vec<BoundEntry>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| FmmError::io(path, e))?;
    let records: Vec<BoundRecord> = serde_json::from_str(&text).map_err(|e| FmmError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    records
        .into_iter()
        .map(|r| BoundEntry::new(Dims::new(r.u, r.v, r.w)?, r.bound, r.provenance))
        .collect()
}

pub fn save_bounds(entries: &[BoundEntry], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let records: Vec<BoundRecord> = entries
        .iter()
        .map(|e| BoundRecord {
            u: e.dims_key[0],
            v: e.dims_key[1],
            w: e.dims_key[2],
            bound: e.rank_bound,
            provenance: e.provenance.clone(),
        })
        .collect();
    let text = serde_json::to_string_pretty(&records).expect("plain data always serializes");
    fs::write(path, text + "\n").map_err(|e| FmmError::io(path, e))
}
