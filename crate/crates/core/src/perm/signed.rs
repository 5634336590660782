use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Permutation;
use crate::{Error, Result};

/// How a barred entry transforms its block during inflation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum InflationRule {
    /// The block is replaced by its reverse-complement (the one-line picture
    /// rotated by 180 degrees).
    #[default]
    ReverseComplement,
    /// The block is replaced by its complement: entry positions stay put,
    /// destinations are mirrored and bars toggled. This is "apply the inner
    /// action, then reverse the whole block of levels".
    Complement,
}

/// An element of the hyperoctahedral group `B_k` in one-line notation.
///
/// Entries are nonzero and their absolute values form a permutation of
/// `1..=k`; a negative entry is a barred one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct SignedPermutation {
    entries: Vec<i32>,
}

#[allow(clippy::len_without_is_empty)]
impl SignedPermutation {
    pub fn new(entries: Vec<i32>) -> Result<Self> {
        let k = entries.len();
        if k == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; k];
        for &e in &entries {
            let a = e.unsigned_abs() as usize;
            if a == 0 || a > k || seen[a - 1] {
                return Err(Error::NotAPermutation {
                    entries: entries.iter().map(|&e| e as i64).collect(),
                    len: k,
                });
            }
            seen[a - 1] = true;
        }
        Ok(SignedPermutation { entries })
    }

    pub fn identity(k: usize) -> Self {
        assert!(k >= 1, "identity of length zero");
        SignedPermutation {
            entries: (1..=k as i32).collect(),
        }
    }

    /// The unsigned permutation, every entry positive.
    pub fn from_permutation(p: &Permutation) -> Self {
        SignedPermutation {
            entries: p.iter().map(|v| v as i32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Signed entry at 1-based position `i`.
    pub fn get(&self, i: usize) -> i32 {
        self.entries[i - 1]
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(i, &e)| e == i as i32 + 1)
    }

    /// The permutation of absolute values.
    pub fn unsigned(&self) -> Permutation {
        Permutation::from_zero_based(
            self.entries
                .iter()
                .map(|e| (e.unsigned_abs() - 1) as u16)
                .collect(),
        )
    }

    /// `i -> bar(mu(k - i + 1))`.
    pub fn reverse_complement(&self) -> Self {
        SignedPermutation {
            entries: self.entries.iter().rev().map(|&e| -e).collect(),
        }
    }

    /// `i -> bar(k + 1 - |mu(i)|)` with the sign of `mu(i)` flipped.
    pub fn complement(&self) -> Self {
        let k = self.len() as i32;
        SignedPermutation {
            entries: self
                .entries
                .iter()
                .map(|&e| -e.signum() * (k + 1 - e.abs()))
                .collect(),
        }
    }

    /// Inflation `mu[alpha_1, ..., alpha_k]`.
    ///
    /// Entry `i` becomes a block patterned on `alpha_i`, or on its
    /// reverse-complement when `mu(i)` is barred. Blocks take value ranges in
    /// the order of `|mu(i)|`.
    pub fn inflate(&self, blocks: &[SignedPermutation]) -> Result<Self> {
        self.inflate_by(blocks, InflationRule::ReverseComplement)
    }

    pub fn inflate_by(&self, blocks: &[SignedPermutation], rule: InflationRule) -> Result<Self> {
        if blocks.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                actual: blocks.len(),
            });
        }
        // offset[v] = total size of the blocks whose |mu| is below v + 1
        let mut size_by_value = vec![0i32; self.len()];
        for (e, b) in self.entries.iter().zip(blocks) {
            size_by_value[e.unsigned_abs() as usize - 1] = b.len() as i32;
        }
        let mut offset = vec![0i32; self.len()];
        for v in 1..self.len() {
            offset[v] = offset[v - 1] + size_by_value[v - 1];
        }

        let mut out = Vec::with_capacity(size_by_value.iter().sum::<i32>() as usize);
        for (&e, b) in self.entries.iter().zip(blocks) {
            let shift = offset[e.unsigned_abs() as usize - 1];
            let pattern = match (e > 0, rule) {
                (true, _) => b.clone(),
                (false, InflationRule::ReverseComplement) => b.reverse_complement(),
                (false, InflationRule::Complement) => b.complement(),
            };
            out.extend(
                pattern
                    .entries
                    .iter()
                    .map(|&x| x.signum() * (x.abs() + shift)),
            );
        }
        Ok(SignedPermutation { entries: out })
    }

    /// Comma-separated with a trailing apostrophe on barred entries, e.g. `3',1,2'`.
    pub fn to_machine_string(&self) -> String {
        self.entries
            .iter()
            .map(|&e| {
                if e < 0 {
                    format!("{}'", -e)
                } else {
                    e.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// All `2^k k!` elements of `B_k`, unsigned part in lexicographic order and
/// sign patterns in binary order within each.
pub fn all_signed_permutations(k: usize) -> impl Iterator<Item = SignedPermutation> {
    super::all_permutations(k).flat_map(move |p| {
        let base: Vec<i32> = p.iter().map(|v| v as i32).collect();
        (0u32..1 << k).map(move |mask| SignedPermutation {
            entries: base
                .iter()
                .enumerate()
                .map(|(i, &v)| if mask >> (k - 1 - i) & 1 == 1 { -v } else { v })
                .collect(),
        })
    })
}

impl fmt::Display for SignedPermutation {
    /// Human form: barred entries carry a combining overline, e.g. `3̅12̅`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() <= 9 { "" } else { "," };
        for (i, &e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            if e < 0 {
                write!(f, "{}\u{0305}", -e)?;
            } else {
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation({})", self.to_machine_string())
    }
}

impl FromStr for SignedPermutation {
    type Err = Error;

    /// Accepts the machine form `3',1,2'`, signed integers `-3,1,-2`, and
    /// digit strings with `'` or a combining overline/macron after barred digits.
    fn from_str(s: &str) -> Result<Self> {
        let parse_err = || Error::Parse(s.to_string());
        let is_bar = |c: char| c == '\'' || c == '\u{0305}' || c == '\u{0304}';
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut entries = Vec::new();
        if cleaned.contains(',') {
            for tok in cleaned.split(',') {
                let (body, barred) = match tok.strip_suffix(is_bar) {
                    Some(b) => (b, true),
                    None => (tok, false),
                };
                let v: i32 = body.parse().map_err(|_| parse_err())?;
                entries.push(if barred { -v } else { v });
            }
        } else {
            let mut chars = cleaned.chars().peekable();
            while let Some(c) = chars.next() {
                let negative = c == '-';
                let d = if negative {
                    chars.next().ok_or_else(parse_err)?
                } else {
                    c
                };
                let v = d.to_digit(10).ok_or_else(parse_err)? as i32;
                let barred = chars.next_if(|&c| is_bar(c)).is_some();
                entries.push(if negative ^ barred { -v } else { v });
            }
        }
        SignedPermutation::new(entries)
    }
}

impl From<SignedPermutation> for String {
    fn from(p: SignedPermutation) -> String {
        p.to_machine_string()
    }
}

impl TryFrom<String> for SignedPermutation {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
