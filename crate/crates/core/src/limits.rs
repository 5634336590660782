//! Size limits for the exhaustive searches.

/// Largest `n` for searches over all level permutations in `S_{n-1}`.
pub const MAX_EXHAUSTIVE_N: usize = 8;

/// Largest number of irreducible blocks `k` for searches over all of `B_k`.
pub const MAX_BLOCKS: usize = 8;

/// Largest `n` for which all of `S_n` is partitioned into classes.
pub const MAX_ENUMERATE_N: usize = 8;

pub(crate) fn check(what: &'static str, size: usize, limit: usize) -> crate::Result<()> {
    if size > limit {
        return Err(crate::Error::SizeTooLarge { what, size, limit });
    }
    Ok(())
}
