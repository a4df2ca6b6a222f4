use std::fmt;

use serde::{Deserialize, Serialize};

use super::bigrade::{Bigrade, INF};
use crate::error::{Error, Result};

/// A monoparameter interval `[birth, death)`, `death` possibly [`INF`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bar {
    pub birth: u32,
    pub death: u32,
}

impl Bar {
    pub fn new(birth: u32, death: u32) -> Result<Self> {
        if birth == INF || birth >= death {
            return Err(Error::InvalidBar { birth, death });
        }
        Ok(Self { birth, death })
    }

    pub fn infinite(birth: u32) -> Result<Self> {
        Self::new(birth, INF)
    }
}

/// A hook summand with support `{α : p ≤ α, α ≱ q}`.
///
/// Canonical form: `q` is either `(∞,∞)` (free hook) or finite with `p < q`.
/// A death with a single infinite coordinate has the same support as `(∞,∞)`
/// and is normalized to it; bounded deaths along one axis are the finite
/// strips `q.y == p.y` or `q.x == p.x`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Hook {
    p: Bigrade,
    q: Bigrade,
}

impl Hook {
    /// Builds the canonical hook with the support of `(p, q)`.
    ///
    /// `q` is replaced by `p ∨ q` (same support, since `α ≥ p`); fails when `p`
    /// is not finite or the support is empty.
    pub fn new(p: Bigrade, q: Bigrade) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::InvalidHook(format!("birth {p} is not finite")));
        }
        if !q.is_finite() {
            return Ok(Self::free(p));
        }
        let q = p.join(q);
        if q == p {
            return Err(Error::InvalidHook(format!("death {q} equals birth, empty support")));
        }
        Ok(Self { p, q })
    }

    pub fn free(p: Bigrade) -> Self {
        assert!(p.is_finite(), "free hook needs a finite birth");
        Self {
            p,
            q: Bigrade::INFINITY,
        }
    }

    #[inline]
    pub fn birth(&self) -> Bigrade {
        self.p
    }

    #[inline]
    pub fn death(&self) -> Bigrade {
        self.q
    }

    #[inline]
    pub fn is_free(&self) -> bool {
        self.q == Bigrade::INFINITY
    }

    /// Finite death degree, if any.
    pub fn bounded_death(&self) -> Option<Bigrade> {
        (!self.is_free()).then_some(self.q)
    }

    pub fn contains(&self, alpha: Bigrade) -> bool {
        self.p.leq(alpha) && !alpha.geq(self.q)
    }
}

impl fmt::Debug for Hook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Hook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hook({} -> {})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: u32, y: u32) -> Bigrade {
        Bigrade::new(x, y)
    }

    #[test]
    fn normalizes_half_infinite_death() {
        let h = Hook::new(b(1, 0), b(3, INF)).unwrap();
        assert!(h.is_free());
        assert_eq!(h, Hook::free(b(1, 0)));
    }

    #[test]
    fn joins_incomparable_death() {
        // {α ≥ (1,0), α ≱ (0,3)} is the strip α_y < 3.
        let h = Hook::new(b(1, 0), b(0, 3)).unwrap();
        assert_eq!(h.death(), b(1, 3));
        assert!(Hook::new(b(2, 2), b(1, 1)).is_err());
        assert!(Hook::new(b(2, 2), b(2, 2)).is_err());
    }

    #[test]
    fn support_membership() {
        let h = Hook::new(b(0, 0), b(2, 1)).unwrap();
        assert!(h.contains(b(3, 0)));
        assert!(!h.contains(b(2, 1)));
        assert!(h.contains(b(1, 5)));
        let strip = Hook::new(b(1, 0), b(3, 0)).unwrap();
        assert!(strip.contains(b(2, 9)));
        assert!(!strip.contains(b(3, 0)));
        assert!(!strip.contains(b(0, 0)));
    }

    #[test]
    fn bars() {
        assert!(Bar::new(2, 2).is_err());
        assert!(Bar::infinite(0).is_ok());
    }
}
