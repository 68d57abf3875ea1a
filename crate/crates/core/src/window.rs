use crate::error::{Error, Result};

/// Inclusive range of integer indices, `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexWindow {
    lo: i64,
    hi: i64,
}

impl IndexWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow);
        }
        Ok(Self { lo, hi })
    }

    /// The window `[-radius, radius]`.
    pub fn symmetric(radius: u32) -> Self {
        Self {
            lo: -i64::from(radius),
            hi: i64::from(radius),
        }
    }

    /// The window `[0, radius]`.
    pub fn half_line(radius: u32) -> Self {
        Self {
            lo: 0,
            hi: i64::from(radius),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        usize::try_from(self.hi as i128 - self.lo as i128 + 1).expect("window too large")
    }

    /// Windows are nonempty by construction.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, m: i64) -> bool {
        self.lo <= m && m <= self.hi
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Zero-based position of `m` inside the window.
    pub fn offset_of(&self, m: i64) -> Option<usize> {
        if self.contains(m) {
            Some((m - self.lo) as usize)
        } else {
            None
        }
    }
}
