use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Sentinel coordinate standing for ∞. Plain integer comparison then gives
/// `n ≤ ∞` for every finite `n`, `∞ ≤ ∞`, and `n ≥ ∞` false.
pub const INF: u32 = u32::MAX;

/// A point of `(N ∪ {∞})²` with the componentwise partial order.
///
/// The derived `Ord` is lexicographic (x first, then y) and is only used for
/// deterministic sorting; use [`Bigrade::leq`] for the grading order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Bigrade {
    pub x: u32,
    pub y: u32,
}

impl Bigrade {
    pub const ZERO: Bigrade = Bigrade { x: 0, y: 0 };
    pub const INFINITY: Bigrade = Bigrade { x: INF, y: INF };

    #[inline]
    pub const fn new(x: u32, y: u32) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x != INF && self.y != INF
    }

    /// Componentwise `self ≤ other`.
    #[inline]
    pub fn leq(self, other: Bigrade) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    /// Componentwise `self ≥ other`.
    #[inline]
    pub fn geq(self, other: Bigrade) -> bool {
        other.leq(self)
    }

    #[inline]
    pub fn precedes(self, other: Bigrade) -> bool {
        self.leq(other) && self != other
    }

    pub fn join(self, other: Bigrade) -> Bigrade {
        Bigrade::new(self.x.max(other.x), self.y.max(other.y))
    }

    pub fn meet(self, other: Bigrade) -> Bigrade {
        Bigrade::new(self.x.min(other.x), self.y.min(other.y))
    }

    /// `self − other` for finite `other ≤ self`: the exponent of the monomial
    /// carrying degree `other` to `self`.
    pub fn monomial_to(self, target: Bigrade) -> (u32, u32) {
        debug_assert!(self.leq(target));
        (target.x - self.x, target.y - self.y)
    }
}

impl fmt::Debug for Bigrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Bigrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |v: u32| {
            if v == INF {
                "∞".to_string()
            } else {
                v.to_string()
            }
        };
        write!(f, "({},{})", c(self.x), c(self.y))
    }
}

impl From<(u32, u32)> for Bigrade {
    fn from((x, y): (u32, u32)) -> Self {
        Bigrade::new(x, y)
    }
}

/// JSON form: `[x, y]` with `"inf"` for infinite coordinates.
impl Serialize for Bigrade {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeTuple;
        let mut t = serializer.serialize_tuple(2)?;
        for v in [self.x, self.y] {
            if v == INF {
                t.serialize_element("inf")?;
            } else {
                t.serialize_element(&v)?;
            }
        }
        t.end()
    }
}

impl<'de> Deserialize<'de> for Bigrade {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Finite(u32),
            Named(String),
        }
        let [x, y]: [Coord; 2] = Deserialize::deserialize(deserializer)?;
        let conv = |c: Coord| match c {
            Coord::Finite(v) => Ok(v),
            Coord::Named(s) if s == "inf" => Ok(INF),
            Coord::Named(s) => Err(serde::de::Error::custom(format!("bad coordinate {s:?}"))),
        };
        Ok(Bigrade::new(conv(x)?, conv(y)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinity_order() {
        let a = Bigrade::new(3, 4);
        assert!(a.leq(Bigrade::INFINITY));
        assert!(Bigrade::INFINITY.leq(Bigrade::INFINITY));
        assert!(!a.geq(Bigrade::new(3, INF)));
        assert!(a.leq(Bigrade::new(3, INF)));
    }

    #[test]
    fn json_form() {
        let q = Bigrade::new(2, INF);
        let s = serde_json::to_string(&q).unwrap();
        assert_eq!(s, r#"[2,"inf"]"#);
        let back: Bigrade = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q);
    }
}
