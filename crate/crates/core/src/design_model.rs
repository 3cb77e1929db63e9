//! Concrete designs: a point count and a set of equal-size blocks.
//!
//! Points are `0..v` with `v <= 64`, and each block is a `u64` bit mask so an
//! intersection size is a single `count_ones`. Blocks are kept sorted
//! lexicographically by their point lists, which makes serialization
//! canonical.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::subsets;

/// Largest supported point count.
pub const MAX_POINTS: usize = 64;

/// Default bound on the number of subsets any brute-force routine enumerates.
pub const DEFAULT_SUBSET_LIMIT: u128 = 100_000_000;

/// A design `(Omega, B)` with `Omega = {0, .., v-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Design {
    v: usize,
    k: usize,
    blocks: Vec<u64>,
}

/// `(v, k, d, b)` plus the derived `c = k - d` and diameter `D = k - d + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct DesignParameters {
    pub v: usize,
    pub k: usize,
    pub d: usize,
    pub b: usize,
    pub c: usize,
    pub diameter: usize,
}

impl DesignParameters {
    /// Abstract parameters; `b` is whatever the caller supplies.
    pub fn new(v: usize, k: usize, d: usize, b: usize) -> Result<Self> {
        if !(d < k && k < v) {
            return invalid(format!("need d < k < v, got v={v}, k={k}, d={d}"));
        }
        Ok(Self {
            v,
            k,
            d,
            b,
            c: k - d,
            diameter: k - d + 1,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignFile {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

impl Design {
    /// Builds a design from explicit point lists. Each list must be strictly
    /// increasing; the block order does not matter. Duplicate blocks are an
    /// error.
    pub fn new(v: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if v > MAX_POINTS {
            return Err(Error::Malformed(format!(
                "v = {v} exceeds the supported maximum of {MAX_POINTS} points"
            )));
        }
        let mut masks = Vec::with_capacity(blocks.len());
        for (n, block) in blocks.iter().enumerate() {
            if let Some(w) = block.windows(2).find(|w| w[0] >= w[1]) {
                return Err(Error::Malformed(format!(
                    "block {n}: points must be strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
            if let Some(p) = block.iter().find(|&&p| p >= v) {
                return Err(Error::Malformed(format!("block {n}: point {p} out of range 0..{v}")));
            }
            masks.push(subsets::mask_of(block));
        }
        Self::from_masks(v, masks)
    }

    /// Builds a design from bit masks (bit `p` set means point `p`).
    pub fn from_masks(v: usize, mut masks: Vec<u64>) -> Result<Self> {
        if v > MAX_POINTS {
            return Err(Error::Malformed(format!(
                "v = {v} exceeds the supported maximum of {MAX_POINTS} points"
            )));
        }
        let Some(&first) = masks.first() else {
            return Err(Error::Malformed("design has no blocks".into()));
        };
        let full = full_mask(v);
        let k = first.count_ones() as usize;
        for (n, &m) in masks.iter().enumerate() {
            if m & !full != 0 {
                return Err(Error::Malformed(format!("block {n}: point out of range 0..{v}")));
            }
            if m.count_ones() as usize != k {
                return Err(Error::Malformed(format!(
                    "block {n} has {} points, expected {k}",
                    m.count_ones()
                )));
            }
        }
        if !(0 < k && k < v) {
            return Err(Error::Malformed(format!("block size {k} must satisfy 0 < k < v = {v}")));
        }
        masks.sort_by(|&a, &b| subsets::lex_cmp(a, b));
        if let Some(w) = masks.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!(
                "duplicate block {:?}",
                subsets::points_of(w[0])
            )));
        }
        Ok(Self { v, k, blocks: masks })
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    /// Block masks in canonical order.
    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// Point lists of all blocks in canonical order.
    pub fn block_points(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|&m| subsets::points_of(m)).collect()
    }

    pub fn contains_block(&self, block: u64) -> bool {
        self.blocks.binary_search_by(|&m| subsets::lex_cmp(m, block)).is_ok()
    }

    /// Parses the canonical JSON form `{"v": .., "blocks": [[..], ..]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DesignFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Self::new(file.v, &file.blocks)
    }

    /// Canonical JSON: one block per line, blocks in lexicographic order,
    /// trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = format!("{{\"v\": {}, \"blocks\": [", self.v);
        for (n, &m) in self.blocks.iter().enumerate() {
            out.push_str(if n == 0 { "\n  [" } else { ",\n  [" });
            let pts: Vec<String> = subsets::points_of(m).iter().map(|p| p.to_string()).collect();
            out.push_str(&pts.join(", "));
            out.push(']');
        }
        out.push_str("\n]}\n");
        out
    }
}

pub(crate) fn full_mask(v: usize) -> u64 {
    if v == 64 {
        u64::MAX
    } else {
        (1u64 << v) - 1
    }
}

/// Reads `(v, k, d, b)` off a design; `d` is the largest intersection of two
/// distinct blocks.
pub fn extract_parameters(design: &Design) -> Result<DesignParameters> {
    let blocks = design.blocks();
    if blocks.len() < 2 {
        return Err(Error::UndefinedParameter("d needs at least two distinct blocks".into()));
    }
    let mut d = 0u32;
    for (n, &a) in blocks.iter().enumerate() {
        for &b in &blocks[n + 1..] {
            d = d.max((a & b).count_ones());
        }
    }
    DesignParameters::new(design.v(), design.k(), d as usize, blocks.len())
}

/// The design of block complements `Omega \ B`.
pub fn complement_design(design: &Design) -> Design {
    let full = full_mask(design.v());
    let masks = design.blocks().iter().map(|&m| full & !m).collect();
    Design::from_masks(design.v(), masks).expect("complement of a valid design is valid")
}

/// `Some(lambda)` when every `t`-subset of points lies in exactly `lambda`
/// blocks, by enumeration of all `C(v, t)` subsets.
pub fn is_t_design(design: &Design, t: usize) -> Result<Option<u64>> {
    is_t_design_with_limit(design, t, DEFAULT_SUBSET_LIMIT)
}

pub fn is_t_design_with_limit(design: &Design, t: usize, limit: u128) -> Result<Option<u64>> {
    if !(1 <= t && t <= design.k()) {
        return invalid(format!("t = {t} outside 1..={}", design.k()));
    }
    let total = subsets::count(design.v(), t);
    if total > limit {
        return Err(Error::EnumerationLimit {
            requested: total,
            limit,
        });
    }
    let blocks = design.blocks();
    let (lo, hi) = subsets::par_fold(
        design.v(),
        t,
        || (u64::MAX, 0u64),
        |acc, x| {
            let n = blocks.iter().filter(|&&b| b & x == x).count() as u64;
            acc.0 = acc.0.min(n);
            acc.1 = acc.1.max(n);
        },
        |a, b| (a.0.min(b.0), a.1.max(b.1)),
    );
    Ok((lo == hi).then_some(lo))
}

/// For a block `B` of the design, how many other blocks meet it in exactly
/// `s` points, for each `s` that occurs.
pub fn intersection_histogram(design: &Design, block: u64) -> Result<BTreeMap<usize, usize>> {
    if !design.contains_block(block) {
        return invalid(format!("{:?} is not a block of the design", subsets::points_of(block)));
    }
    let mut hist = BTreeMap::new();
    for &other in design.blocks().iter().filter(|&&m| m != block) {
        *hist.entry((other & block).count_ones() as usize).or_insert(0) += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fano() -> Design {
        let lines: Vec<Vec<usize>> = (0..7)
            .map(|i| {
                let mut l = vec![i, (i + 1) % 7, (i + 3) % 7];
                l.sort();
                l
            })
            .collect();
        Design::new(7, &lines).unwrap()
    }

    fn disjoint_pair() -> Design {
        Design::new(8, &[vec![0, 1, 2, 3], vec![4, 5, 6, 7]]).unwrap()
    }

    #[test]
    fn parameters_of_disjoint_blocks() {
        let p = extract_parameters(&disjoint_pair()).unwrap();
        assert_eq!((p.v, p.k, p.d, p.b, p.c, p.diameter), (8, 4, 0, 2, 4, 5));
    }

    #[test]
    fn parameters_of_fano() {
        let f = fano();
        // brute force over the 21 pairs of lines
        let mut best = 0;
        let pts = f.block_points();
        for a in 0..7 {
            for b in a + 1..7 {
                let shared = pts[a].iter().filter(|p| pts[b].contains(p)).count();
                best = best.max(shared);
            }
        }
        let p = extract_parameters(&f).unwrap();
        assert_eq!((p.v, p.k, p.d, p.b), (7, 3, best, 7));
        assert_eq!(best, 1);
    }

    #[test]
    fn single_block_has_no_d() {
        let d = Design::new(5, &[vec![0, 1]]).unwrap();
        assert!(matches!(extract_parameters(&d), Err(Error::UndefinedParameter(_))));
    }

    #[test]
    fn complement_of_fano() {
        let c = complement_design(&fano());
        let p = extract_parameters(&c).unwrap();
        assert_eq!((p.v, p.k, p.d), (7, 4, 2));
        assert_eq!(p.c, 2);
        assert_eq!(complement_design(&c), fano());
    }

    #[test]
    fn t_design_checks() {
        let f = fano();
        // every pair of points lies on exactly one line
        let pts = f.block_points();
        for a in 0..7 {
            for b in a + 1..7 {
                let n = pts.iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
                assert_eq!(n, 1);
            }
        }
        assert_eq!(is_t_design(&f, 2).unwrap(), Some(1));
        assert_eq!(is_t_design(&f, 1).unwrap(), Some(3));
        // {0,1,3} is a line, {0,1,2} is not
        assert_eq!(is_t_design(&f, 3).unwrap(), None);
        assert!(is_t_design(&f, 0).is_err());
        assert!(is_t_design(&f, 4).is_err());
    }

    #[test]
    fn t_design_respects_limit() {
        let err = is_t_design_with_limit(&fano(), 2, 10).unwrap_err();
        assert_eq!(
            err,
            Error::EnumerationLimit {
                requested: 21,
                limit: 10
            }
        );
    }

    #[test]
    fn histograms() {
        let f = fano();
        for &b in f.blocks() {
            let h = intersection_histogram(&f, b).unwrap();
            assert_eq!(h, BTreeMap::from([(1, 6)]));
        }
        let p = disjoint_pair();
        assert_eq!(
            intersection_histogram(&p, p.blocks()[0]).unwrap(),
            BTreeMap::from([(0, 1)])
        );
        assert!(intersection_histogram(&p, 0b111).is_err());
    }

    #[test]
    fn rejects_malformed_designs() {
        let dup = Design::new(6, &[vec![0, 1], vec![2, 3], vec![0, 1]]);
        assert!(matches!(dup, Err(Error::Malformed(m)) if m.contains("duplicate")));
        assert!(Design::new(6, &[vec![0, 1], vec![2, 3, 4]]).is_err());
        assert!(Design::new(6, &[vec![1, 0]]).is_err());
        assert!(Design::new(6, &[vec![0, 6]]).is_err());
        assert!(Design::new(3, &[vec![0, 1, 2]]).is_err());
        assert!(Design::new(6, &[]).is_err());
        assert!(Design::new(65, &[vec![0]]).is_err());
    }

    #[test]
    fn blocks_are_sorted_on_load() {
        let d = Design::new(6, &[vec![2, 3], vec![0, 5], vec![0, 1]]).unwrap();
        assert_eq!(d.block_points(), vec![vec![0, 1], vec![0, 5], vec![2, 3]]);
    }

    #[test]
    fn json_round_trip_and_errors() {
        let f = fano();
        let text = f.to_json();
        assert!(text.starts_with("{\"v\": 7, \"blocks\": [\n  [0, 1, 3],"));
        assert_eq!(Design::from_json(&text).unwrap(), f);

        let err = Design::from_json("{\"v\": 7,\n \"blocks\": [[0, 1,]]}").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err:?}");
        assert!(Design::from_json("{\"v\": 4, \"blocks\": [[0,1]], \"x\": 1}").is_err());
        let dup = Design::from_json("{\"v\": 4, \"blocks\": [[0,1],[0,1]]}").unwrap_err();
        assert!(matches!(dup, Error::Malformed(_)));
    }

    #[test]
    fn full_width_designs() {
        let d = Design::new(64, &[vec![0, 63], vec![1, 2]]).unwrap();
        let c = complement_design(&d);
        assert_eq!(c.k(), 62);
        assert_eq!(complement_design(&c), d);
    }
}
