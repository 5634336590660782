//! Irreducible and cohesive partitions of the levels, and signed block actions.
//!
//! A signed permutation `mu` acts on a partition of the levels into blocks:
//! block `i` moves to slot `|mu(i)|` and has its levels reversed when `mu(i)`
//! is barred. Lowering `mu` gives an ordinary level permutation, so every block
//! action is ultimately an [`apply_level_action`] call.

use std::fmt;

use crate::diagram::{
    apply_level_action, edge_diagram, proper_level_actions, valid_intervals, EdgeDiagram, Interval,
    LevelOutcome,
};
use crate::limits::{self, MAX_BLOCKS, MAX_EXHAUSTIVE_N};
use crate::perm::{all_signed_permutations, InflationRule, Permutation, SignedPermutation};
use crate::{Error, Result};

/// A partition of `[x_0, x_k]` into the blocks `[x_i, x_{i+1}]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntervalPartition {
    borders: Vec<usize>,
}

impl IntervalPartition {
    /// `borders` must be nonempty and strictly increasing.
    pub fn new(borders: Vec<usize>) -> Result<Self> {
        if borders.is_empty() {
            return Err(Error::Empty);
        }
        if borders.windows(2).any(|w| w[0] >= w[1]) || borders[0] == 0 {
            return Err(Error::Parse(format!("{borders:?} is not a border list")));
        }
        Ok(IntervalPartition { borders })
    }

    pub fn borders(&self) -> &[usize] {
        &self.borders
    }

    pub fn num_blocks(&self) -> usize {
        self.borders.len() - 1
    }

    pub fn blocks(&self) -> Vec<Interval> {
        self.borders
            .windows(2)
            .map(|w| Interval::new(w[0], w[1]))
            .collect()
    }

    /// `[x_0, x_k]`, or `None` for the one-border partition of a single vertex.
    pub fn span(&self) -> Option<Interval> {
        let (a, b) = (self.borders[0], *self.borders.last().unwrap());
        (a < b).then(|| Interval::new(a, b))
    }

    pub fn border_index(&self, v: usize) -> Option<usize> {
        self.borders.binary_search(&v).ok()
    }

    pub fn is_border(&self, v: usize) -> bool {
        self.border_index(v).is_some()
    }
}

impl fmt::Display for IntervalPartition {
    /// Machine form, e.g. `1,2,6`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.borders.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

fn is_linked_under(interval: Interval, sigma: &Permutation) -> bool {
    let imgs: Vec<usize> = interval.levels().map(|l| sigma.get(l)).collect();
    imgs.windows(2).all(|w| w[1] == w[0] + 1) || imgs.windows(2).all(|w| w[0] == w[1] + 1)
}

/// The irreducible partition straight from its definition: the maximal
/// intervals whose levels stay consecutive, in order or reversed, under every
/// valid level permutation.
pub fn irreducible_partition_bruteforce(pi: &Permutation) -> Result<IntervalPartition> {
    limits::check("permutation", pi.len(), MAX_EXHAUSTIVE_N)?;
    let n = pi.len();
    if n == 1 {
        return IntervalPartition::new(vec![1]);
    }
    let sigmas: Vec<Permutation> = proper_level_actions(pi)?
        .into_iter()
        .map(|(s, _)| s)
        .collect();
    let linked = |iv: Interval| sigmas.iter().all(|s| is_linked_under(iv, s));

    let mut candidates = Vec::new();
    for s in 1..n {
        for t in s + 1..=n {
            let iv = Interval::new(s, t);
            if linked(iv) {
                candidates.push(iv);
            }
        }
    }
    let mut maximal: Vec<Interval> = candidates
        .iter()
        .copied()
        .filter(|c| !candidates.iter().any(|d| d != c && d.contains(c)))
        .collect();
    maximal.sort();

    let tiles = maximal.first().map(|iv| iv.low) == Some(1)
        && maximal.last().map(|iv| iv.high) == Some(n)
        && maximal.windows(2).all(|w| w[0].high == w[1].low);
    if !tiles {
        return Err(Error::Internal(format!(
            "irreducible intervals of {pi} do not tile: {maximal:?}"
        )));
    }
    let mut borders: Vec<usize> = maximal.iter().map(|iv| iv.low).collect();
    borders.push(n);
    IntervalPartition::new(borders)
}

/// The irreducible partition read off the valid intervals: its borders are
/// `1`, `n`, and the endpoints of every valid interval of width at least two.
pub fn irreducible_partition_fast(pi: &Permutation) -> IntervalPartition {
    let n = pi.len();
    let mut borders = vec![1, n];
    for iv in valid_intervals(pi) {
        if iv.width() >= 2 {
            borders.push(iv.low);
            borders.push(iv.high);
        }
    }
    borders.sort_unstable();
    borders.dedup();
    IntervalPartition::new(borders).expect("sorted distinct borders")
}

/// The level permutation performing `mu` on the blocks of `partition`, which
/// must cover `[1, n]`.
pub fn lower_block_action(
    partition: &IntervalPartition,
    mu: &SignedPermutation,
) -> Result<Permutation> {
    let k = partition.num_blocks();
    if mu.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            actual: mu.len(),
        });
    }
    if partition.borders()[0] != 1 {
        return Err(Error::Internal(format!(
            "block action needs a partition starting at 1, got {partition}"
        )));
    }
    let blocks = partition.blocks();
    let mut width_at_slot = vec![0usize; k];
    for (b, &e) in blocks.iter().zip(mu.entries()) {
        width_at_slot[e.unsigned_abs() as usize - 1] = b.width();
    }
    let mut slot_start = vec![1usize; k];
    for d in 1..k {
        slot_start[d] = slot_start[d - 1] + width_at_slot[d - 1];
    }
    let mut sigma = Vec::with_capacity(partition.borders()[k] - 1);
    for (b, &e) in blocks.iter().zip(mu.entries()) {
        let start = slot_start[e.unsigned_abs() as usize - 1];
        let w = b.width();
        sigma.extend((0..w).map(|t| if e > 0 { start + t } else { start + w - 1 - t }));
    }
    Permutation::new(&sigma)
}

/// Applies `mu` to the blocks of an arbitrary partition of `[1, n]`.
pub fn apply_block_action_on(
    pi: &Permutation,
    partition: &IntervalPartition,
    mu: &SignedPermutation,
) -> Result<LevelOutcome> {
    if partition.span() != Some(Interval::new(1, pi.len().max(2))) || pi.len() < 2 {
        return Err(Error::LengthMismatch {
            expected: pi.len(),
            actual: *partition.borders().last().unwrap(),
        });
    }
    let sigma = lower_block_action(partition, mu)?;
    apply_level_action(&edge_diagram(pi), &sigma)
}

/// Applies `mu` to the irreducible blocks of `pi`.
pub fn apply_block_action(pi: &Permutation, mu: &SignedPermutation) -> Result<LevelOutcome> {
    apply_block_action_on(pi, &irreducible_partition_fast(pi), mu)
}

/// Every `mu` acting on the blocks of `partition` with a proper result.
pub fn valid_block_actions_on(
    pi: &Permutation,
    partition: &IntervalPartition,
) -> Result<Vec<SignedPermutation>> {
    let k = partition.num_blocks();
    limits::check("block count", k, MAX_BLOCKS)?;
    if k == 0 {
        return Ok(Vec::new());
    }
    let e = edge_diagram(pi);
    let mut out = Vec::new();
    for mu in all_signed_permutations(k) {
        let sigma = lower_block_action(partition, &mu)?;
        if apply_level_action(&e, &sigma)?.is_proper() {
            out.push(mu);
        }
    }
    Ok(out)
}

/// Every `mu` acting on the irreducible blocks of `pi` with a proper result.
pub fn valid_block_actions(pi: &Permutation) -> Result<Vec<SignedPermutation>> {
    valid_block_actions_on(pi, &irreducible_partition_fast(pi))
}

/// Cohesiveness checks for one permutation, sharing the expensive enumeration.
pub struct CohesionAnalysis {
    pi: Permutation,
    diagram: EdgeDiagram,
    irreducible: IntervalPartition,
    // lowered forms of every valid block action
    valid_sigmas: Vec<Permutation>,
}

impl CohesionAnalysis {
    pub fn new(pi: &Permutation) -> Result<Self> {
        let irreducible = irreducible_partition_fast(pi);
        let valid_sigmas = if pi.len() < 2 {
            Vec::new()
        } else {
            valid_block_actions_on(pi, &irreducible)?
                .iter()
                .map(|mu| lower_block_action(&irreducible, mu))
                .collect::<Result<_>>()?
        };
        Ok(CohesionAnalysis {
            pi: pi.clone(),
            diagram: edge_diagram(pi),
            irreducible,
            valid_sigmas,
        })
    }

    pub fn permutation(&self) -> &Permutation {
        &self.pi
    }

    pub fn irreducible(&self) -> &IntervalPartition {
        &self.irreducible
    }

    pub fn is_cohesive(&self, interval: Interval) -> bool {
        self.irreducible.is_border(interval.low)
            && self.irreducible.is_border(interval.high)
            && self
                .diagram
                .edges
                .iter()
                .all(|e| interval.is_compatible(&e.interval()))
            && self
                .valid_sigmas
                .iter()
                .all(|s| interval.image(s).is_some())
    }

    /// All cohesive intervals, ordered by `(low, high)`.
    pub fn cohesive_intervals(&self) -> Vec<Interval> {
        let b = self.irreducible.borders();
        let mut out = Vec::new();
        for (x, &lo) in b.iter().enumerate() {
            for &hi in &b[x + 1..] {
                let iv = Interval::new(lo, hi);
                if self.is_cohesive(iv) {
                    out.push(iv);
                }
            }
        }
        out
    }
}

pub fn is_cohesive(pi: &Permutation, interval: Interval) -> Result<bool> {
    Ok(CohesionAnalysis::new(pi)?.is_cohesive(interval))
}

pub fn cohesive_intervals(pi: &Permutation) -> Result<Vec<Interval>> {
    Ok(CohesionAnalysis::new(pi)?.cohesive_intervals())
}

/// A partition `a_0 < ... < a_l` of a cohesive interval whose blocks are each
/// irreducible or cohesive.
#[derive(Clone, Debug)]
pub struct CohesivePartition {
    pi: Permutation,
    irreducible: IntervalPartition,
    parts: IntervalPartition,
}

impl CohesivePartition {
    pub fn new(analysis: &CohesionAnalysis, borders: Vec<usize>) -> Result<Self> {
        let parts = IntervalPartition::new(borders)?;
        let irr = analysis.irreducible();
        let span = parts
            .span()
            .ok_or_else(|| Error::NotCohesive(format!("{parts} spans no levels")))?;
        if let Some(&b) = parts.borders().iter().find(|&&b| !irr.is_border(b)) {
            return Err(Error::NotCohesive(format!(
                "{b} is not a border of the irreducible partition {irr}"
            )));
        }
        if !analysis.is_cohesive(span) {
            return Err(Error::NotCohesive(format!(
                "{span} is not cohesive in {}",
                analysis.pi
            )));
        }
        for block in parts.blocks() {
            let irreducible_block =
                irr.border_index(block.high) == irr.border_index(block.low).map(|i| i + 1);
            if !irreducible_block && !analysis.is_cohesive(block) {
                return Err(Error::NotCohesive(format!(
                    "{block} is neither irreducible nor cohesive in {}",
                    analysis.pi
                )));
            }
        }
        Ok(CohesivePartition {
            pi: analysis.pi.clone(),
            irreducible: irr.clone(),
            parts,
        })
    }

    /// The irreducible partition of the whole of `[1, n]`.
    pub fn finest(analysis: &CohesionAnalysis) -> Result<Self> {
        Self::new(analysis, analysis.irreducible().borders().to_vec())
    }

    pub fn parts(&self) -> &IntervalPartition {
        &self.parts
    }

    /// Number of blocks `l`.
    pub fn len(&self) -> usize {
        self.parts.num_blocks()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of irreducible blocks inside each part.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.parts
            .blocks()
            .iter()
            .map(|b| self.irr_index(b.high) - self.irr_index(b.low))
            .collect()
    }

    fn irr_index(&self, v: usize) -> usize {
        self.irreducible
            .border_index(v)
            .expect("checked on construction")
    }

    /// Extends `mu` on the parts to a signed permutation of all `k`
    /// irreducible blocks, fixing everything outside the span.
    pub fn lift(&self, mu: &SignedPermutation) -> Result<SignedPermutation> {
        if mu.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: mu.len(),
            });
        }
        let ones: Vec<SignedPermutation> = self
            .block_sizes()
            .into_iter()
            .map(SignedPermutation::identity)
            .collect();
        let inner = mu.inflate(&ones)?;
        let span = self.parts.span().expect("nonempty");
        let k = self.irreducible.num_blocks();
        let (s, t) = (self.irr_index(span.low), self.irr_index(span.high));
        let mut blocks = vec![SignedPermutation::identity(1); s];
        blocks.push(inner);
        blocks.extend(std::iter::repeat_n(SignedPermutation::identity(1), k - t));
        SignedPermutation::identity(k - t + s + 1).inflate(&blocks)
    }

    pub fn is_valid(&self, mu: &SignedPermutation) -> Result<bool> {
        let lifted = self.lift(mu)?;
        Ok(apply_block_action_on(&self.pi, &self.irreducible, &lifted)?.is_proper())
    }

    pub fn valid_actions(&self) -> Result<Vec<SignedPermutation>> {
        limits::check("block count", self.len(), MAX_BLOCKS)?;
        let mut out = Vec::new();
        for mu in all_signed_permutations(self.len()) {
            if self.is_valid(&mu)? {
                out.push(mu);
            }
        }
        Ok(out)
    }

    /// Index pairs `(i, j)` of the proper cohesive intervals `[a_i, a_j]`:
    /// cohesive, `j > i + 1`, and not the whole span.
    pub fn proper_cohesive_intervals(&self, analysis: &CohesionAnalysis) -> Vec<(usize, usize)> {
        let a = self.parts.borders();
        let l = self.len();
        let mut out = Vec::new();
        for i in 0..l {
            for j in i + 2..=l {
                if (i, j) != (0, l) && analysis.is_cohesive(Interval::new(a[i], a[j])) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The partition `a_i < ... < a_j` of the inner interval.
    pub fn inner(&self, i: usize, j: usize) -> CohesivePartition {
        CohesivePartition {
            pi: self.pi.clone(),
            irreducible: self.irreducible.clone(),
            parts: IntervalPartition::new(self.parts.borders()[i..=j].to_vec())
                .expect("subsequence"),
        }
    }

    /// The partition with `a_{i+1}, ..., a_{j-1}` removed.
    pub fn coarsened(&self, i: usize, j: usize) -> CohesivePartition {
        let a = self.parts.borders();
        let mut b = a[..=i].to_vec();
        b.extend_from_slice(&a[j..]);
        CohesivePartition {
            pi: self.pi.clone(),
            irreducible: self.irreducible.clone(),
            parts: IntervalPartition::new(b).expect("subsequence"),
        }
    }
}

fn standardize(entries: &[i32]) -> SignedPermutation {
    let mut abs: Vec<u32> = entries.iter().map(|e| e.unsigned_abs()).collect();
    abs.sort_unstable();
    let rank = |e: i32| abs.binary_search(&e.unsigned_abs()).unwrap() as i32 + 1;
    SignedPermutation::new(entries.iter().map(|&e| e.signum() * rank(e)).collect())
        .expect("standardized entries form a signed permutation")
}

/// Splits `mu` around the proper cohesive interval `[a_i, a_j]` as
/// `mu = alpha[1^i, beta, 1^(l-j)]`, inflating under
/// [`InflationRule::Complement`].
///
/// Of the two splittings (collapsed entry of `alpha` unbarred or barred) the
/// one whose `beta` is valid on the inner partition is returned, trying the
/// unbarred one first.
///
/// The complement rule is what makes `beta` act on the inner blocks before
/// the whole interval is reversed. Under the reverse-complement rule a valid
/// `beta` does not always exist; see [`decompose_block_action_with`].
pub fn decompose_block_action(
    partition: &CohesivePartition,
    mu: &SignedPermutation,
    i: usize,
    j: usize,
) -> Result<(SignedPermutation, SignedPermutation)> {
    decompose_block_action_with(partition, mu, i, j, InflationRule::Complement)
}

pub fn decompose_block_action_with(
    partition: &CohesivePartition,
    mu: &SignedPermutation,
    i: usize,
    j: usize,
    rule: InflationRule,
) -> Result<(SignedPermutation, SignedPermutation)> {
    let l = partition.len();
    let fail = |why: &str| Error::NoValidDecomposition(format!("{mu} at ({i},{j}): {why}"));
    if mu.len() != l {
        return Err(Error::LengthMismatch {
            expected: l,
            actual: mu.len(),
        });
    }
    if j > l || j < i + 2 || (i, j) == (0, l) {
        return Err(fail("not a proper interval of the partition"));
    }
    let e = mu.entries();
    let group = &e[i..j];
    let mut abs: Vec<u32> = group.iter().map(|x| x.unsigned_abs()).collect();
    abs.sort_unstable();
    if abs[abs.len() - 1] - abs[0] + 1 != abs.len() as u32 {
        return Err(fail("inner blocks are not sent to adjacent slots"));
    }
    let rep = abs[0] as i32;
    let inner = partition.inner(i, j);
    let standardized = standardize(group);

    for sign in [1, -1] {
        let mut outer: Vec<i32> = e[..i].to_vec();
        outer.push(sign * rep);
        outer.extend_from_slice(&e[j..]);
        let alpha = standardize(&outer);
        let beta = match (sign > 0, rule) {
            (true, _) => standardized.clone(),
            (false, InflationRule::ReverseComplement) => standardized.reverse_complement(),
            (false, InflationRule::Complement) => standardized.complement(),
        };
        let mut blocks = vec![SignedPermutation::identity(1); i];
        blocks.push(beta.clone());
        blocks.extend(std::iter::repeat_n(SignedPermutation::identity(1), l - j));
        if alpha.inflate_by(&blocks, rule)? != *mu {
            return Err(Error::Internal(format!(
                "{alpha} inflated by {beta} does not give back {mu}"
            )));
        }
        if inner.is_valid(&beta)? {
            return Ok((alpha, beta));
        }
    }
    Err(fail(
        "neither choice of beta is valid on the inner partition",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{flip_interval, flip_levels};
    use crate::perm::all_permutations;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> SignedPermutation {
        s.parse().unwrap()
    }

    fn iv(a: usize, b: usize) -> Interval {
        Interval::new(a, b)
    }

    #[test]
    fn partition_basics() {
        let part = IntervalPartition::new(vec![1, 2, 6]).unwrap();
        assert_eq!(part.to_string(), "1,2,6");
        assert_eq!(part.blocks(), vec![iv(1, 2), iv(2, 6)]);
        assert_eq!(part.num_blocks(), 2);
        assert!(IntervalPartition::new(vec![1, 1]).is_err());
        assert!(IntervalPartition::new(vec![]).is_err());
    }

    #[test]
    fn irreducible_examples() {
        for (pi, borders) in [
            ("435216", vec![1, 2, 6]),
            ("35241", vec![1, 5]),
            ("1327564", vec![1, 4, 7]),
        ] {
            let pi = p(pi);
            assert_eq!(
                irreducible_partition_bruteforce(&pi).unwrap().borders(),
                &borders[..]
            );
            assert_eq!(irreducible_partition_fast(&pi).borders(), &borders[..]);
        }
        assert_eq!(
            irreducible_partition_fast(&p("197862435")).borders(),
            &[1, 2, 5, 6, 9]
        );
        assert_eq!(
            irreducible_partition_fast(&p("2,1,3,5,4,6,9,7,8,10")).borders(),
            &[1, 3, 6, 10]
        );
        assert_eq!(irreducible_partition_fast(&p("1")).borders(), &[1]);
        assert!(matches!(
            irreducible_partition_bruteforce(&Permutation::identity(9)),
            Err(Error::SizeTooLarge { .. })
        ));
    }

    #[test]
    fn monotone_and_hook_patterns_have_unit_blocks() {
        // from n = 4 on; with only two levels every action keeps them adjacent
        assert_eq!(irreducible_partition_fast(&p("123")).borders(), &[1, 3]);
        for n in 4..=6 {
            let all: Vec<usize> = (1..=n).collect();
            assert_eq!(
                irreducible_partition_fast(&Permutation::identity(n)).borders(),
                &all[..]
            );
            let mut hook = vec![1];
            hook.extend((2..=n).rev());
            assert_eq!(
                irreducible_partition_fast(&Permutation::new(&hook).unwrap()).borders(),
                &all[..]
            );
        }
    }

    #[test]
    fn fast_matches_bruteforce_small() {
        for n in 1..=5 {
            for pi in all_permutations(n) {
                assert_eq!(
                    irreducible_partition_fast(&pi),
                    irreducible_partition_bruteforce(&pi).unwrap(),
                    "{pi}"
                );
            }
        }
    }

    #[test]
    fn wide_valid_intervals_end_on_borders() {
        for pi in all_permutations(6) {
            let part = irreducible_partition_bruteforce(&pi).unwrap();
            for v in valid_intervals(&pi).into_iter().filter(|v| v.width() >= 2) {
                assert!(part.is_border(v.low) && part.is_border(v.high), "{pi} {v}");
            }
        }
    }

    #[test]
    fn linked_iff_nested_or_disjoint_with_valid_intervals() {
        for pi in all_permutations(5) {
            let sigmas: Vec<Permutation> = proper_level_actions(&pi)
                .unwrap()
                .into_iter()
                .map(|(s, _)| s)
                .collect();
            // width-one flips act trivially and constrain nothing
            let valid: Vec<Interval> = valid_intervals(&pi)
                .into_iter()
                .filter(|v| v.width() >= 2)
                .collect();
            for a in 1..5 {
                for b in a + 1..=5 {
                    let x = iv(a, b);
                    let linked = sigmas.iter().all(|s| is_linked_under(x, s));
                    let nested = valid.iter().all(|v| v.contains(&x) || v.is_disjoint(&x));
                    assert_eq!(linked, nested, "{pi} {x}");
                }
            }
        }
    }

    #[test]
    fn lowering_examples() {
        let part = IntervalPartition::new(vec![1, 3, 6, 10]).unwrap();
        // blocks of widths 2, 3, 4 go to slots 3, 1, 2
        assert_eq!(
            lower_block_action(&part, &sp("3'12'")).unwrap(),
            p("9,8,1,2,3,7,6,5,4")
        );
        assert!(matches!(
            lower_block_action(&part, &sp("12")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn block_action_example() {
        let pi = p("2,1,3,5,4,6,9,7,8,10");
        assert_eq!(
            apply_block_action(&pi, &sp("3'12'")).unwrap(),
            LevelOutcome::Proper(p("1,3,2,4,6,7,5,8,10,9"))
        );
        assert_eq!(
            apply_block_action(&pi, &sp("3'12")).unwrap(),
            LevelOutcome::Proper(p("1,3,2,4,7,5,6,8,10,9"))
        );
    }

    #[test]
    fn identity_and_full_reversal() {
        for n in 2..=5 {
            for pi in all_permutations(n) {
                let k = irreducible_partition_fast(&pi).num_blocks();
                assert_eq!(
                    apply_block_action(&pi, &SignedPermutation::identity(k)).unwrap(),
                    LevelOutcome::Proper(pi.clone())
                );
                let rev =
                    SignedPermutation::new((1..=k as i32).rev().map(|v| -v).collect()).unwrap();
                assert_eq!(
                    apply_block_action(&pi, &rev).unwrap(),
                    LevelOutcome::Proper(pi.reverse_complement())
                );
            }
        }
    }

    #[test]
    fn valid_block_action_lists() {
        let pi = p("435216");
        let valid = valid_block_actions(&pi).unwrap();
        assert!(valid.contains(&SignedPermutation::identity(2)));
        assert!(valid.contains(&sp("2'1'")));
        assert!(valid.len() <= 8);
        for n in 2..=5 {
            let id = Permutation::identity(n);
            let k = irreducible_partition_fast(&id).num_blocks();
            assert!(valid_block_actions(&id)
                .unwrap()
                .contains(&SignedPermutation::identity(k)));
        }
    }

    #[test]
    fn valid_flips_appear_as_block_actions() {
        for pi in all_permutations(6) {
            let part = irreducible_partition_fast(&pi);
            let valid = valid_block_actions(&pi).unwrap();
            let k = part.num_blocks() as i32;
            for v in valid_intervals(&pi).into_iter().filter(|v| v.width() >= 2) {
                let a = part.border_index(v.low).unwrap() as i32;
                let b = part.border_index(v.high).unwrap() as i32;
                let mu: Vec<i32> = (1..=k)
                    .map(|x| if x > a && x <= b { -(a + b + 1 - x) } else { x })
                    .collect();
                let mu = SignedPermutation::new(mu).unwrap();
                assert!(valid.contains(&mu), "{pi} {v} {mu}");
                assert_eq!(lower_block_action(&part, &mu).unwrap(), flip_levels(6, v));
                assert_eq!(
                    apply_block_action(&pi, &mu).unwrap().proper().unwrap(),
                    flip_interval(&pi, v).unwrap()
                );
            }
        }
    }

    #[test]
    fn valid_level_actions_are_lowered_block_actions() {
        for pi in all_permutations(6) {
            let part = irreducible_partition_fast(&pi);
            let mut lowered: Vec<Permutation> = valid_block_actions(&pi)
                .unwrap()
                .iter()
                .map(|mu| lower_block_action(&part, mu).unwrap())
                .collect();
            // bars on width-one blocks do not change the lowered action
            lowered.sort();
            lowered.dedup();
            let mut direct: Vec<Permutation> = proper_level_actions(&pi)
                .unwrap()
                .into_iter()
                .map(|(s, _)| s)
                .collect();
            direct.sort();
            assert_eq!(lowered, direct, "{pi}");
        }
    }

    #[test]
    fn cohesive_examples() {
        let a = CohesionAnalysis::new(&p("197862435")).unwrap();
        let found = a.cohesive_intervals();
        for x in [iv(1, 2), iv(2, 5), iv(5, 6), iv(6, 9), iv(2, 6), iv(1, 9)] {
            assert!(found.contains(&x), "{x} missing from {found:?}");
        }
        // [1,6] qualifies as well; an independent search over all of S_8 agrees
        assert_eq!(
            found,
            vec![
                iv(1, 2),
                iv(1, 6),
                iv(1, 9),
                iv(2, 5),
                iv(2, 6),
                iv(5, 6),
                iv(6, 9)
            ]
        );
        assert!(!is_cohesive(&p("1327564"), iv(1, 4)).unwrap());
        for n in 2..=5 {
            for pi in all_permutations(n) {
                assert!(is_cohesive(&pi, iv(1, n)).unwrap(), "{pi}");
            }
        }
    }

    #[test]
    fn cohesive_partition_construction() {
        let a = CohesionAnalysis::new(&p("197862435")).unwrap();
        let finest = CohesivePartition::finest(&a).unwrap();
        assert_eq!(finest.block_sizes(), vec![1, 1, 1, 1]);
        let coarse = CohesivePartition::new(&a, vec![1, 2, 6, 9]).unwrap();
        assert_eq!(coarse.block_sizes(), vec![1, 2, 1]);
        assert!(CohesivePartition::new(&a, vec![1, 3, 9]).is_err());
        assert_eq!(finest.proper_cohesive_intervals(&a), vec![(0, 3), (1, 3)]);
        assert_eq!(finest.coarsened(1, 3).parts().borders(), &[1, 2, 6, 9]);
        assert_eq!(finest.inner(1, 3).parts().borders(), &[2, 5, 6]);
    }

    #[test]
    fn lift_agrees_with_direct_lowering_on_the_coarse_partition() {
        let pi = p("197862435");
        let a = CohesionAnalysis::new(&pi).unwrap();
        let inner = CohesivePartition::new(&a, vec![2, 5, 6]).unwrap();
        let coarse = IntervalPartition::new(vec![1, 2, 5, 6, 9]).unwrap();
        for mu in all_signed_permutations(2) {
            let lifted = inner.lift(&mu).unwrap();
            assert_eq!(lifted.len(), 4);
            let mut padded = vec![1];
            padded.extend(mu.entries().iter().map(|e| e.signum() * (e.abs() + 1)));
            padded.push(4);
            let direct = SignedPermutation::new(padded).unwrap();
            assert_eq!(
                lower_block_action(a.irreducible(), &lifted).unwrap(),
                lower_block_action(&coarse, &direct).unwrap()
            );
        }
    }

    #[test]
    fn decomposition_round_trips() {
        let a = CohesionAnalysis::new(&p("197862435")).unwrap();
        let finest = CohesivePartition::finest(&a).unwrap();
        let (alpha, beta) =
            decompose_block_action(&finest, &SignedPermutation::identity(4), 1, 3).unwrap();
        assert_eq!(alpha, SignedPermutation::identity(3));
        assert_eq!(beta, SignedPermutation::identity(2));
        for mu in finest.valid_actions().unwrap() {
            for (i, j) in [(0, 3), (1, 3)] {
                let (alpha, beta) = decompose_block_action(&finest, &mu, i, j).unwrap();
                let mut blocks = vec![SignedPermutation::identity(1); i];
                blocks.push(beta.clone());
                blocks.extend(vec![SignedPermutation::identity(1); 4 - j]);
                assert_eq!(
                    alpha
                        .inflate_by(&blocks, InflationRule::Complement)
                        .unwrap(),
                    mu
                );
                assert!(finest.inner(i, j).is_valid(&beta).unwrap());
            }
        }
        assert!(matches!(
            decompose_block_action(&finest, &SignedPermutation::identity(4), 0, 4),
            Err(Error::NoValidDecomposition(_))
        ));
    }

    #[test]
    fn reverse_complement_rule_can_leave_no_valid_beta() {
        let a = CohesionAnalysis::new(&p("162345")).unwrap();
        let finest = CohesivePartition::finest(&a).unwrap();
        let mu = sp("52341");
        assert!(finest.is_valid(&mu).unwrap());
        assert!(finest.proper_cohesive_intervals(&a).contains(&(1, 5)));
        assert!(matches!(
            decompose_block_action_with(&finest, &mu, 1, 5, InflationRule::ReverseComplement),
            Err(Error::NoValidDecomposition(_))
        ));
        let (alpha, beta) = decompose_block_action(&finest, &mu, 1, 5).unwrap();
        assert_eq!(alpha, sp("21'"));
        assert_eq!(beta, sp("3'2'1'4'"));
    }
}
