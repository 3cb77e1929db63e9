//! Reference designs: the Witt design S(5,8,24), the Fano plane, the pair
//! design S(1,k,2k) and complete designs.
//!
//! Every builder checks its own output and panics on a mismatch.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::design_model::{Design, MAX_POINTS};
use crate::error::{invalid, Error, Result};
use crate::subsets;

/// Largest block count [`complete_design`] will materialize.
pub const COMPLETE_DESIGN_LIMIT: u128 = 1_000_000;

/// All `x < 2^n` with at most `r` bits set.
fn ball(n: u32, r: u32) -> Vec<u32> {
    let mut out = vec![0u32];
    for w in 1..=r {
        for m in subsets::range(n as usize, w as usize, 0, subsets::count(n as usize, w as usize)) {
            out.push(m as u32);
        }
    }
    out
}

/// The binary lexicode of length 24 and minimum distance 8, scanned in
/// increasing numeric order.
///
/// A word is at distance at most 7 from a kept word iff flipping at most 3
/// of its bits lands within distance 4 of one; `near` records the radius-4
/// neighbourhood of everything kept so far.
fn lexicode_24_8() -> Vec<u32> {
    let probes = ball(24, 3);
    let spread = ball(24, 4);
    let mut near = vec![0u64; 1 << 18];
    let is_near = |near: &[u64], x: u32| near[(x >> 6) as usize] >> (x & 63) & 1 == 1;
    let mut kept = Vec::with_capacity(4096);
    for w in 0u32..1 << 24 {
        if probes.iter().any(|&e| is_near(&near, w ^ e)) {
            continue;
        }
        kept.push(w);
        for &e in &spread {
            let x = w ^ e;
            near[(x >> 6) as usize] |= 1 << (x & 63);
        }
    }
    kept
}

fn gf2_rank(words: &[u32]) -> u32 {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for &w in words {
        let mut x = w;
        for bit in (0..32).rev() {
            if x >> bit & 1 == 0 {
                continue;
            }
            if basis[bit] == 0 {
                basis[bit] = x;
                rank += 1;
                break;
            }
            x ^= basis[bit];
        }
    }
    rank
}

/// Builds the 759 octads afresh, without the cache used by [`witt_24`].
pub fn build_witt_24() -> Design {
    let code = lexicode_24_8();
    assert_eq!(code.len(), 4096, "lexicode size");
    assert_eq!(gf2_rank(&code), 12, "lexicode is not linear of dimension 12");
    assert!(
        code.iter().skip(1).all(|w| w.count_ones() >= 8),
        "lexicode minimum weight"
    );
    let octads: Vec<u64> = code.iter().filter(|w| w.count_ones() == 8).map(|&w| w as u64).collect();
    assert_eq!(octads.len(), 759, "octad count");
    Design::from_masks(24, octads).expect("octads form a valid design")
}

/// The Witt design S(5,8,24) as the weight-8 words of the extended Golay
/// code. Built once per process.
pub fn witt_24() -> Design {
    static WITT: OnceLock<Design> = OnceLock::new();
    WITT.get_or_init(build_witt_24).clone()
}

/// The seven lines `{j, j+1, j+3} mod 7` of the Fano plane.
pub fn fano() -> Design {
    let lines: Vec<Vec<usize>> = (0..7)
        .map(|j| {
            let mut l = vec![j, (j + 1) % 7, (j + 3) % 7];
            l.sort_unstable();
            l
        })
        .collect();
    Design::new(7, &lines).expect("Fano lines are valid")
}

/// Two disjoint blocks `{0..k-1}` and `{k..2k-1}`.
pub fn pair_design(k: usize) -> Result<Design> {
    if k < 2 {
        return invalid(format!("pair design needs k >= 2, got {k}"));
    }
    if 2 * k > MAX_POINTS {
        return invalid(format!("pair design needs 2k <= {MAX_POINTS}, got k={k}"));
    }
    let blocks = [(0..k).collect(), (k..2 * k).collect()];
    Design::new(2 * k, &blocks)
}

/// Every `k`-subset of `v` points.
pub fn complete_design(v: usize, k: usize) -> Result<Design> {
    if !(1 < k && k < v && v <= MAX_POINTS) {
        return invalid(format!(
            "complete design needs 1 < k < v <= {MAX_POINTS}, got v={v}, k={k}"
        ));
    }
    let total = subsets::count(v, k);
    if total > COMPLETE_DESIGN_LIMIT {
        return Err(Error::EnumerationLimit {
            requested: total,
            limit: COMPLETE_DESIGN_LIMIT,
        });
    }
    Design::from_masks(v, subsets::range(v, k, 0, total).collect())
}

/// A builder selected by name: `witt24`, `fano`, `pair:K`, `complete:V,K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionName {
    Witt24,
    Fano,
    Pair(usize),
    Complete(usize, usize),
}

impl ConstructionName {
    pub fn build(self) -> Result<NamedConstruction> {
        let design = match self {
            ConstructionName::Witt24 => witt_24(),
            ConstructionName::Fano => fano(),
            ConstructionName::Pair(k) => pair_design(k)?,
            ConstructionName::Complete(v, k) => complete_design(v, k)?,
        };
        Ok(NamedConstruction { name: self, design })
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionName::Witt24 => write!(f, "witt24"),
            ConstructionName::Fano => write!(f, "fano"),
            ConstructionName::Pair(k) => write!(f, "pair:{k}"),
            ConstructionName::Complete(v, k) => write!(f, "complete:{v},{k}"),
        }
    }
}

impl FromStr for ConstructionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidArgument(format!("bad number {t:?} in {s:?}")))
        };
        match s.split_once(':') {
            None if s == "witt24" => Ok(ConstructionName::Witt24),
            None if s == "fano" => Ok(ConstructionName::Fano),
            Some(("pair", k)) => Ok(ConstructionName::Pair(num(k)?)),
            Some(("complete", rest)) => {
                let (v, k) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::InvalidArgument(format!("expected complete:V,K, got {s:?}")))?;
                Ok(ConstructionName::Complete(num(v)?, num(k)?))
            }
            _ => invalid(format!("unknown construction {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedConstruction {
    pub name: ConstructionName,
    pub design: Design,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design_model::{complement_design, extract_parameters, intersection_histogram, is_t_design};
    use std::collections::BTreeMap;

    #[test]
    fn witt_fixture() {
        let w = witt_24();
        assert_eq!(w.b(), 759);
        let p = extract_parameters(&w).unwrap();
        assert_eq!((p.v, p.k, p.d), (24, 8, 4));
        assert_eq!(is_t_design(&w, 5).unwrap(), Some(1));
        let expected = BTreeMap::from([(0, 30), (2, 448), (4, 280)]);
        for &b in w.blocks() {
            assert_eq!(intersection_histogram(&w, b).unwrap(), expected);
        }
    }

    #[test]
    fn witt_is_deterministic() {
        assert_eq!(build_witt_24().to_json(), witt_24().to_json());
    }

    #[test]
    fn witt_complement_parameters() {
        let p = extract_parameters(&complement_design(&witt_24())).unwrap();
        assert_eq!((p.v, p.k, p.d, p.c), (24, 16, 12, 4));
    }

    #[test]
    fn small_fixtures() {
        let f = fano();
        let p = extract_parameters(&f).unwrap();
        assert_eq!((p.v, p.k, p.d, p.b), (7, 3, 1, 7));
        assert_eq!(is_t_design(&f, 2).unwrap(), Some(1));

        let p = extract_parameters(&pair_design(4).unwrap()).unwrap();
        assert_eq!((p.v, p.k, p.d, p.b), (8, 4, 0, 2));
        assert!(pair_design(1).is_err());

        let c = complete_design(5, 3).unwrap();
        let p = extract_parameters(&c).unwrap();
        assert_eq!((p.b, p.d), (10, 2));
        assert_eq!(complete_design(4, 2).unwrap().b(), 6);
        assert!(matches!(complete_design(40, 20), Err(Error::EnumerationLimit { .. })));
        assert!(complete_design(5, 5).is_err());
    }

    #[test]
    fn names_round_trip() {
        for s in ["witt24", "fano", "pair:4", "complete:5,3"] {
            assert_eq!(s.parse::<ConstructionName>().unwrap().to_string(), s);
        }
        for s in ["golay", "pair:x", "complete:5", "pair"] {
            assert!(s.parse::<ConstructionName>().is_err(), "{s}");
        }
        assert_eq!(
            "pair:2"
                .parse::<ConstructionName>()
                .unwrap()
                .build()
                .unwrap()
                .design
                .b(),
            2
        );
    }
}
