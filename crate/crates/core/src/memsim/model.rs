use super::ExecConfig;
use crate::error::{invalid, Result};

/// Number of aligned `segment_bytes` segments touched by one warp access.
///
/// `addresses` are element indices into a flat slow-memory array of
/// complex values.
pub fn coalesced_transactions(addresses: &[usize], config: &ExecConfig) -> Result<u64> {
    if addresses.len() > config.warp_size {
        return Err(invalid(format!(
            "{} addresses exceed the warp size {}",
            addresses.len(),
            config.warp_size
        )));
    }
    Ok(count_segments(addresses, config))
}

pub(crate) fn count_segments(addresses: &[usize], config: &ExecConfig) -> u64 {
    let elem = config.element_bytes();
    let mut segs = [0usize; 64];
    let segs = &mut segs[..addresses.len().min(64)];
    for (s, &a) in segs.iter_mut().zip(addresses) {
        *s = a * elem / config.segment_bytes;
    }
    segs.sort_unstable();
    let mut count = 0;
    let mut prev = None;
    for &s in segs.iter() {
        if prev != Some(s) {
            count += 1;
            prev = Some(s);
        }
    }
    count
}

/// Conflict degree of one half-warp access to fast memory.
///
/// Returns the largest number of distinct word addresses that map to the
/// same bank. Identical addresses are served by one broadcast, so a
/// conflict-free access has degree 1 and an empty access degree 0.
pub fn bank_conflict_degree(addresses: &[usize], config: &ExecConfig) -> Result<u32> {
    if addresses.len() > config.half_warp {
        return Err(invalid(format!(
            "{} addresses exceed the half-warp size {}",
            addresses.len(),
            config.half_warp
        )));
    }
    Ok(degree(addresses, config.bank_count))
}

pub(crate) fn degree(addresses: &[usize], bank_count: usize) -> u32 {
    let mut words = [0usize; 32];
    let words = &mut words[..addresses.len().min(32)];
    words.copy_from_slice(&addresses[..words.len()]);
    words.sort_unstable();
    let mut per_bank = [0u32; 64];
    let mut best = 0;
    let mut prev = None;
    for &w in words.iter() {
        if prev == Some(w) {
            continue;
        }
        prev = Some(w);
        let slot = &mut per_bank[w % bank_count % 64];
        *slot += 1;
        best = best.max(*slot);
    }
    best
}
