use crate::error::{invalid, Result};
use crate::is_pow2;
use serde::{Deserialize, Serialize};

/// Machine constants of the execution model.
///
/// A complex element occupies two words: `2 * word_bytes` bytes in slow
/// memory and one word in each of the two fast-memory planes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExecConfig {
    pub warp_size: usize,
    pub half_warp: usize,
    pub bank_count: usize,
    pub word_bytes: usize,
    pub segment_bytes: usize,
}

impl Default for ExecConfig {
    fn default() -> Self {
        ExecConfig {
            warp_size: 32,
            half_warp: 16,
            bank_count: 16,
            word_bytes: 8,
            segment_bytes: 128,
        }
    }
}

impl ExecConfig {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("warp_size", self.warp_size),
            ("half_warp", self.half_warp),
            ("bank_count", self.bank_count),
            ("word_bytes", self.word_bytes),
            ("segment_bytes", self.segment_bytes),
        ];
        for (name, v) in fields {
            if !is_pow2(v) {
                return Err(invalid(format!("{name} must be a power of two, got {v}")));
            }
        }
        if self.warp_size > 64 || self.bank_count > 64 {
            return Err(invalid("warp_size and bank_count are limited to 64"));
        }
        if self.warp_size != 2 * self.half_warp {
            return Err(invalid(format!(
                "warp_size ({}) must equal 2 * half_warp ({})",
                self.warp_size, self.half_warp
            )));
        }
        Ok(())
    }

    /// Bytes per complex element in slow memory.
    pub fn element_bytes(&self) -> usize {
        2 * self.word_bytes
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let c = ExecConfig::default();
        c.validate().unwrap();
        assert_eq!(c.element_bytes(), 16);
    }

    #[test]
    fn rejects_inconsistent_warps() {
        let c = ExecConfig { half_warp: 8, ..ExecConfig::default() };
        assert!(c.validate().is_err());
        let c = ExecConfig { bank_count: 12, ..ExecConfig::default() };
        assert!(c.validate().is_err());
    }
}
