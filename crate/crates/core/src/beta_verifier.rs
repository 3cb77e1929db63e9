//! Brute-force checks on explicit designs: the β(i) partition property, the
//! intersection count `mu_d`, the families `S1`/`S2` and their block counts,
//! the averaging inequality over `S1`, and the integer zeros of the
//! t-design polynomial.
//!
//! Subsets are enumerated in lexicographic order of their point lists, so
//! every reported witness is the least offender.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bounds::counting::s1_size_formula;
use crate::design_model::{extract_parameters, Design, DesignParameters, DEFAULT_SUBSET_LIMIT};
use crate::error::{invalid, Error, Result};
use crate::exact_arith::{binomial, rat, ExactInt, ExactRational};
use crate::subsets;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaVerdict {
    pub i: usize,
    pub holds: bool,
    /// Least `(d+2i-1)`-subset met in `>= d+i` points by no block.
    pub witness: Option<Vec<usize>>,
    /// Subsets checked before the witness, or all of them.
    pub covered_exactly_once: u128,
    pub total_subsets: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    S1,
    S2,
}

/// Block counts `alpha_X` over one of the families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaDistribution {
    pub family: Family,
    /// Intersection size being counted: `d+i-2` for `S1`, `d+i+1` for `S2`.
    pub level: usize,
    /// Subset size: `d+2(i-2)` for `S1`, `d+2(i+1)` for `S2`.
    pub size: usize,
    pub histogram: BTreeMap<u64, u64>,
    pub n: u64,
    /// `sum alpha_X`.
    pub p: u64,
    /// `sum alpha_X (alpha_X - 1)`.
    pub q: u64,
}

impl AlphaDistribution {
    pub fn alpha_constant(&self) -> Option<u64> {
        match self.histogram.len() {
            1 => self.histogram.keys().next().copied(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop53Check {
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub equality: bool,
    pub alpha_constant: Option<u64>,
    pub distribution: AlphaDistribution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TDesignPolynomial {
    /// `(t, value)` for `t = 1..=k`.
    pub values: Vec<(usize, String)>,
    pub roots: Vec<usize>,
    pub smallest: Option<usize>,
    /// `i = 1`: the polynomial is the constant `C(k-t-1, d-t)` in disguise and
    /// the smallest zero is `d+1` by the zero convention.
    pub degenerate: bool,
}

/// Brute-force routines with a bound on the number of subsets enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verifier {
    pub limit: u128,
}

impl Default for Verifier {
    fn default() -> Self {
        Self {
            limit: DEFAULT_SUBSET_LIMIT,
        }
    }
}

fn level_range(p: &DesignParameters, i: usize) -> Result<()> {
    if !(1 <= i && i <= p.c) {
        return invalid(format!("level i={i} outside 1..=k-d={}", p.c));
    }
    if p.d + 2 * i - 1 > p.v {
        return invalid(format!("d+2i-1 = {} exceeds v = {}", p.d + 2 * i - 1, p.v));
    }
    Ok(())
}

impl Verifier {
    pub fn new(limit: u128) -> Self {
        Self { limit }
    }

    fn guard(&self, v: usize, t: usize) -> Result<u128> {
        let total = subsets::count(v, t);
        if total > self.limit {
            return Err(Error::EnumerationLimit {
                requested: total,
                limit: self.limit,
            });
        }
        Ok(total)
    }

    pub fn is_beta_i(&self, design: &Design, i: usize) -> Result<BetaVerdict> {
        let p = extract_parameters(design)?;
        level_range(&p, i)?;
        let t = p.d + 2 * i - 1;
        let need = (p.d + i) as u32;
        let total = self.guard(p.v, t)?;
        let blocks = design.blocks();
        let hit = subsets::par_find_first(p.v, t, |x| {
            let mut hits = blocks.iter().filter(|&&b| (b & x).count_ones() >= need);
            let first = hits.next();
            // two such blocks would share more than d points
            assert!(
                hits.next().is_none(),
                "two blocks meet {:?} in >= d+i points",
                subsets::points_of(x)
            );
            first.is_none().then_some(x)
        });
        Ok(match hit {
            Some((rank, x)) => BetaVerdict {
                i,
                holds: false,
                witness: Some(subsets::points_of(x)),
                covered_exactly_once: rank,
                total_subsets: total,
            },
            None => BetaVerdict {
                i,
                holds: true,
                witness: None,
                covered_exactly_once: total,
                total_subsets: total,
            },
        })
    }

    pub fn enumerate_family(&self, design: &Design, i: usize, family: Family) -> Result<AlphaDistribution> {
        let p = extract_parameters(design)?;
        let (size, level) = match family {
            Family::S1 if i >= 2 => (p.d + 2 * i - 4, p.d + i - 2),
            Family::S1 => return invalid("S1 needs i >= 2"),
            Family::S2 if p.c > i => (p.d + 2 * i + 2, p.d + i + 1),
            Family::S2 => return invalid(format!("S2 needs k-d >= i+1, got k-d={}, i={i}", p.c)),
        };
        if size > p.v {
            return invalid(format!("subset size {size} exceeds v = {}", p.v));
        }
        self.guard(p.v, size)?;
        let blocks = design.blocks();
        let level32 = level as u32;
        let histogram = subsets::par_fold(
            p.v,
            size,
            BTreeMap::<u64, u64>::new,
            |h, x| {
                let mut alpha = Some(0u64);
                for &b in blocks {
                    let m = (b & x).count_ones();
                    if m > level32 {
                        alpha = None;
                        break;
                    }
                    if m == level32 {
                        alpha = alpha.map(|a| a + 1);
                    }
                }
                if let Some(a) = alpha {
                    *h.entry(a).or_insert(0) += 1;
                }
            },
            |mut a, b| {
                for (k, n) in b {
                    *a.entry(k).or_insert(0) += n;
                }
                a
            },
        );
        let n = histogram.values().sum();
        let p_sum = histogram.iter().map(|(a, c)| a * c).sum();
        let q_sum = histogram.iter().map(|(a, c)| a * a.saturating_sub(1) * c).sum();
        Ok(AlphaDistribution {
            family,
            level,
            size,
            histogram,
            n,
            p: p_sum,
            q: q_sum,
        })
    }

    /// Averaging inequality over `S1` on a verified β(i) design, `i >= 2`.
    pub fn prop53_check(&self, design: &Design, i: usize) -> Result<Prop53Check> {
        let verdict = self.is_beta_i(design, i)?;
        if !verdict.holds {
            return invalid(format!("design is not β({i})"));
        }
        let dist = self.enumerate_family(design, i, Family::S1)?;
        if dist.n == 0 {
            return invalid("S1 is empty");
        }
        let p = extract_parameters(design)?;
        let (v, k, d, c, i) = (p.v as i64, p.k as i64, p.d as i64, p.c as i64, i as i64);
        let lhs = rat(p.b as i64) / rat(dist.n) * rat(binomial(c + d, d + i - 2) * binomial(v - k, i - 2));
        let rhs =
            rat(1) + rat((i - 1) * (v - k - i + 1) * (v - k - i + 2)) / rat((d + i - 1) * (c - i + 1) * (c - i + 2));
        assert!(lhs <= rhs, "averaging inequality violated on a β(i) design");
        Ok(Prop53Check {
            equality: lhs == rhs,
            alpha_constant: dist.alpha_constant(),
            lhs,
            rhs,
            distribution: dist,
        })
    }
}

pub fn is_beta_i(design: &Design, i: usize) -> Result<BetaVerdict> {
    Verifier::default().is_beta_i(design, i)
}

pub fn enumerate_family(design: &Design, i: usize, family: Family) -> Result<AlphaDistribution> {
    Verifier::default().enumerate_family(design, i, family)
}

pub fn prop53_check(design: &Design, i: usize) -> Result<Prop53Check> {
    Verifier::default().prop53_check(design, i)
}

/// Blocks meeting `block` in exactly `d` points.
pub fn mu_d_bruteforce(design: &Design, block: u64) -> Result<u64> {
    let p = extract_parameters(design)?;
    if !design.contains_block(block) {
        return invalid(format!("{:?} is not a block", subsets::points_of(block)));
    }
    Ok(design
        .blocks()
        .iter()
        .filter(|&&b| b != block && (b & block).count_ones() as usize == p.d)
        .count() as u64)
}

/// `C(v-k, i) C(k, d+i-1) / (C(c, i) C(c, i-1))`.
pub fn mu_d_formula(params: &DesignParameters, i: usize) -> Result<ExactRational> {
    let (v, k, d, c, i) = (
        params.v as i64,
        params.k as i64,
        params.d as i64,
        params.c as i64,
        i as i64,
    );
    let den = binomial(c, i) * binomial(c, i - 1);
    if den.is_zero() {
        return invalid(format!("C(c,i) C(c,i-1) vanishes for c={c}, i={i}"));
    }
    Ok(ExactRational::new(binomial(v - k, i) * binomial(k, d + i - 1), den))
}

/// `P(t) = sum_j (-1)^j C(t+1, j) sum_s C(k-t+j-1, d-t+2i-2-s) C(v-k-j, s)`.
pub fn tdesign_polynomial(params: &DesignParameters, i: usize, t: i64) -> ExactInt {
    let (v, k, d, i) = (params.v as i64, params.k as i64, params.d as i64, i as i64);
    let mut total = BigInt::zero();
    for j in 0..i {
        let inner: ExactInt = (0..i - j)
            .map(|s| binomial(k - t + j - 1, d - t + 2 * i - 2 - s) * binomial(v - k - j, s))
            .sum();
        let term = binomial(t + 1, j) * inner;
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn tdesign_polynomial_roots(params: &DesignParameters, i: usize) -> Result<TDesignPolynomial> {
    if !(1 <= i && i <= params.c) {
        return invalid(format!("level i={i} outside 1..=k-d={}", params.c));
    }
    let values: Vec<(usize, ExactInt)> = (1..=params.k)
        .map(|t| (t, tdesign_polynomial(params, i, t as i64)))
        .collect();
    let roots: Vec<usize> = values.iter().filter(|(_, x)| x.is_zero()).map(|(t, _)| *t).collect();
    Ok(TDesignPolynomial {
        smallest: roots.first().copied(),
        roots,
        values: values.into_iter().map(|(t, x)| (t, x.to_string())).collect(),
        degenerate: i == 1,
    })
}

/// `b * sum_j C(k, d+2i-1-j) C(v-k, j) == C(v, d+2i-1)`.
pub fn meets_block_bound(params: &DesignParameters, i: usize) -> bool {
    let (v, k, d, i) = (params.v as i64, params.k as i64, params.d as i64, i as i64);
    let sum = crate::bounds::polys::per_block_sum(v, k, d, i);
    BigInt::from(params.b) * sum == binomial(v, d + 2 * i - 1)
}

/// `|S1|` from the closed form, as an integer when it is one.
pub fn s1_size_closed(params: &DesignParameters, i: usize) -> Result<Option<ExactInt>> {
    let n = s1_size_formula(
        params.v as i64,
        params.k as i64,
        params.d as i64,
        i as i64,
        params.b as i64,
    )?;
    Ok(n.denom().is_one().then(|| n.numer().clone()))
}
