//! Multi-pass tiled FFT.
//!
//! `N = N1·N2·…·Np` is split into `p` passes. Pass `s` gathers
//! `rows_per_tile` length-`Ns` sequences into a fast-memory tile, applies
//! the twiddles that couple it to earlier passes, runs every radix-2 level
//! of those sequences inside the tile and writes the tile back. Slow memory
//! therefore sees one read sweep and one write sweep per pass, and one
//! barrier per pass.
//!
//! Pass `s` works on rows `g = q + groups·k`, transforming over `a` the
//! values `Y[q + groups·a][k]` left by pass `s-1` after scaling them by
//! `W_{L}^{a·k}` with `L = N1·…·Ns`. Its output `Y[q][k + (N1·…·N(s-1))·c]`
//! is stored row-contiguous, except for the last pass, which writes natural
//! frequency order directly.

mod buffer;
mod exec;
mod plan;

pub use buffer::{apply_interstage_twiddles, stage_row_fft, FastBuffer, RowOrder};
pub use exec::{
    exchange_permutation, exchange_transpose, fft_tiled, fft_tiled_with, ifft_tiled,
    transpose_index_map, Workers,
};
pub use plan::{make_plan, Padding, StageGeometry, StagePlan, DEFAULT_TILE_CAPACITY};

#[inline(always)]
pub(crate) fn reverse_bits(j: usize, len: usize) -> usize {
    if len <= 1 {
        0
    } else {
        j.reverse_bits() >> (usize::BITS - len.trailing_zeros())
    }
}
