//! Permutations in one-line notation and the map from walks to ordinal patterns.
//!
//! Everything public is 1-based: `pi.get(1)` is the first entry and the values
//! range over `1..=n`.

mod signed;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use signed::{all_signed_permutations, InflationRule, SignedPermutation};

/// A permutation of `{1, ..., n}`, `n >= 1`.
///
/// Ordering is lexicographic on the one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Permutation {
    // zero-based images
    map: Vec<u16>,
}

#[allow(clippy::len_without_is_empty)]
impl Permutation {
    /// Builds a permutation from its one-line notation.
    pub fn new(entries: &[usize]) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        let mut map = Vec::with_capacity(n);
        for &v in entries {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation {
                    entries: entries.iter().map(|&e| e as i64).collect(),
                    len: n,
                });
            }
            seen[v - 1] = true;
            map.push((v - 1) as u16);
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity of length zero");
        Permutation {
            map: (0..n as u16).collect(),
        }
    }

    /// Caller guarantees `map` is a bijection on `0..map.len()`.
    pub(crate) fn from_zero_based(map: Vec<u16>) -> Self {
        debug_assert!(is_bijection(&map));
        Permutation { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    /// The value at 1-based position `i`.
    pub fn get(&self, i: usize) -> usize {
        self.map[i - 1] as usize + 1
    }

    /// The 1-based position holding `value`.
    pub fn position_of(&self, value: usize) -> usize {
        self.map
            .iter()
            .position(|&v| v as usize == value - 1)
            .expect("value out of range")
            + 1
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.map.iter().map(|&v| v as usize + 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u16; self.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v as usize] = i as u16;
        }
        Permutation { map: inv }
    }

    /// `i -> n + 1 - pi(n + 1 - i)`: the half-turn of the permutation grid.
    pub fn reverse_complement(&self) -> Self {
        let top = (self.len() - 1) as u16;
        Permutation {
            map: self.map.iter().rev().map(|&v| top - v).collect(),
        }
    }

    /// Lexicographic index of this permutation within `S_n`, starting at 0.
    pub fn rank(&self) -> u64 {
        lex_rank(&self.map)
    }

    /// Inverse of [`Permutation::rank`].
    pub fn unrank(n: usize, mut rank: u64) -> Self {
        assert!((1..=20).contains(&n), "unrank supports 1 <= n <= 20");
        let mut pool: Vec<u16> = (0..n as u16).collect();
        let mut map = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let f = factorial(i);
            let idx = (rank / f) as usize;
            rank %= f;
            map.push(pool.remove(idx));
        }
        Permutation { map }
    }
}

/// `tau ∘ pi`, i.e. `i -> tau(pi(i))`.
pub fn compose(pi: &Permutation, tau: &Permutation) -> Result<Permutation> {
    if pi.len() != tau.len() {
        return Err(Error::LengthMismatch {
            expected: pi.len(),
            actual: tau.len(),
        });
    }
    Ok(Permutation {
        map: pi.map.iter().map(|&v| tau.map[v as usize]).collect(),
    })
}

/// The ordinal pattern of a sequence: entry `i` is the rank of `values[i]`
/// among all values, 1 being the smallest.
///
/// Equal values leave the pattern undefined and are reported as
/// [`Error::RepeatedValue`] rather than broken by position.
pub fn pattern_of_walk(values: &[f64]) -> Result<Permutation> {
    if values.is_empty() {
        return Err(Error::Empty);
    }
    if let Some(i) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i + 1));
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut map = vec![0u16; values.len()];
    for (rank, w) in order.iter().enumerate() {
        if rank > 0 && values[order[rank - 1]] == values[*w] {
            let (a, b) = (order[rank - 1].min(*w), order[rank - 1].max(*w));
            return Err(Error::RepeatedValue(a + 1, b + 1));
        }
        map[*w] = rank as u16;
    }
    Ok(Permutation { map })
}

/// The pattern of the walk `Z_0 = 0, Z_i = X_1 + ... + X_i` built from `steps`.
pub fn pattern_of_steps(steps: &[f64]) -> Result<Permutation> {
    let mut walk = Vec::with_capacity(steps.len() + 1);
    let mut z = 0.0;
    walk.push(z);
    for &x in steps {
        z += x;
        walk.push(z);
    }
    pattern_of_walk(&walk)
}

/// All of `S_n` in lexicographic order.
pub fn all_permutations(n: usize) -> Permutations {
    Permutations {
        next: (n >= 1).then(|| (0..n as u16).collect()),
    }
}

pub struct Permutations {
    next: Option<Vec<u16>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { map: current })
    }
}

/// Advances `v` to its lexicographic successor; false at the last permutation.
pub(crate) fn next_lexicographic<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub(crate) fn lex_rank(map: &[u16]) -> u64 {
    let n = map.len();
    let mut rank = 0u64;
    for i in 0..n {
        let smaller_after = map[i + 1..].iter().filter(|&&v| v < map[i]).count() as u64;
        rank += smaller_after * factorial(n - 1 - i);
    }
    rank
}

fn is_bijection(map: &[u16]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter().all(|&v| {
        let v = v as usize;
        v < seen.len() && !std::mem::replace(&mut seen[v], true)
    })
}

impl fmt::Display for Permutation {
    /// Digit string for `n <= 9`, comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() <= 9 { "" } else { "," };
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `"3124"` (single digits) or `"10,2,1,..."`; spaces are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parse_err = || Error::Parse(s.to_string());
        let entries: Vec<usize> = if cleaned.contains(',') {
            cleaned
                .split(',')
                .map(|t| t.parse::<usize>().map_err(|_| parse_err()))
                .collect::<Result<_>>()?
        } else {
            cleaned
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(parse_err))
                .collect::<Result<_>>()?
        };
        Permutation::new(&entries)
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn walk_pattern_examples() {
        assert_eq!(pattern_of_walk(&[4.8, -4.1, 3.1, 5.2]).unwrap(), p("3124"));
        assert_eq!(pattern_of_walk(&[0.0]).unwrap(), p("1"));
        assert_eq!(pattern_of_walk(&[0.0, 1.0, 2.0, 3.0]).unwrap(), p("1234"));
    }

    #[test]
    fn walk_pattern_rejects_ties_and_nan() {
        assert_eq!(
            pattern_of_walk(&[1.0, 2.0, 1.0]),
            Err(Error::RepeatedValue(1, 3))
        );
        assert_eq!(
            pattern_of_walk(&[0.0, -0.0]),
            Err(Error::RepeatedValue(1, 2))
        );
        assert_eq!(pattern_of_walk(&[0.0, f64::NAN]), Err(Error::NonFinite(2)));
        assert_eq!(pattern_of_walk(&[]), Err(Error::Empty));
    }

    #[test]
    fn step_pattern_examples() {
        assert_eq!(pattern_of_steps(&[1.0, -0.5]).unwrap(), p("132"));
        // Z = (0, -1, 1)
        assert_eq!(
            pattern_of_steps(&[-1.0, 2.0]).unwrap(),
            pattern_of_walk(&[0.0, -1.0, 1.0]).unwrap()
        );
        assert_eq!(pattern_of_steps(&[-1.0, 2.0]).unwrap(), p("213"));
        assert_eq!(pattern_of_steps(&[]).unwrap(), p("1"));
        assert!(matches!(
            pattern_of_steps(&[1.0, -1.0]),
            Err(Error::RepeatedValue(1, 3))
        ));
    }

    #[test]
    fn reverse_complement_examples() {
        assert_eq!(p("132").reverse_complement(), p("213"));
        assert_eq!(p("1432").reverse_complement(), p("3214"));
        assert_eq!(p("1").reverse_complement(), p("1"));
    }

    #[test]
    fn reverse_complement_is_an_involution() {
        for n in 1..=6 {
            for pi in all_permutations(n) {
                assert_eq!(pi.reverse_complement().reverse_complement(), pi);
            }
        }
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(2);
        let t = p("21");
        assert_eq!(compose(&id, &t).unwrap(), t);
        assert_eq!(compose(&t, &id).unwrap(), t);
        assert_eq!(compose(&t, &t).unwrap(), id);
        assert_eq!(
            compose(&t, &p("123")),
            Err(Error::LengthMismatch {
                expected: 2,
                actual: 3
            })
        );
        // tau(pi(i)) with pi = 231, tau = 312: 1 -> 2 -> 1, 2 -> 3 -> 2, 3 -> 1 -> 3
        assert_eq!(compose(&p("231"), &p("312")).unwrap(), p("123"));
    }

    #[test]
    fn compose_group_laws_on_s4() {
        let s4: Vec<_> = all_permutations(4).collect();
        let id = Permutation::identity(4);
        for a in &s4 {
            assert_eq!(compose(a, &id).unwrap(), *a);
            assert_eq!(compose(&id, a).unwrap(), *a);
            for b in &s4 {
                let ab = compose(a, b).unwrap();
                for c in &s4 {
                    assert_eq!(
                        compose(&ab, c).unwrap(),
                        compose(a, &compose(b, c).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("312").inverse(), p("231"));
        assert_eq!(p("21").inverse(), p("21"));
        for pi in all_permutations(4) {
            assert_eq!(pi.inverse().inverse(), pi);
            assert!(compose(&pi, &pi.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_ranked() {
        for n in 1..=6 {
            let all: Vec<_> = all_permutations(n).collect();
            assert_eq!(all.len() as u64, factorial(n));
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for (i, pi) in all.iter().enumerate() {
                assert_eq!(pi.rank(), i as u64);
                assert_eq!(Permutation::unrank(n, i as u64), *pi);
            }
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(p("3124").to_string(), "3124");
        let long = p("8,6,1,3,4,2,5,10,7,9");
        assert_eq!(long.to_string(), "8,6,1,3,4,2,5,10,7,9");
        assert_eq!(long.get(8), 10);
        assert_eq!(long.position_of(10), 8);
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert_eq!(String::from(long.clone()), "8,6,1,3,4,2,5,10,7,9");
    }
}
