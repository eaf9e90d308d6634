use std::fmt;
use std::str::FromStr;

/// Inclusive integer range written `lo..hi`, `lo..=hi` or a single value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntRange {
    pub lo: u64,
    pub hi: u64,
}

impl IntRange {
    pub const fn new(lo: u64, hi: u64) -> Self {
        IntRange { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = u64> + Clone {
        self.lo..=self.hi
    }

    pub fn contains(self, v: u64) -> bool {
        (self.lo..=self.hi).contains(&v)
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |x: &str| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| format!("invalid range {s:?}: expected lo..hi or a single value"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(IntRange { lo, hi })
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!("2..8".parse::<IntRange>().unwrap(), IntRange::new(2, 8));
        assert_eq!("2..=8".parse::<IntRange>().unwrap(), IntRange::new(2, 8));
        assert_eq!("6".parse::<IntRange>().unwrap(), IntRange::new(6, 6));
        assert!("8..2".parse::<IntRange>().is_err());
        assert!("a..2".parse::<IntRange>().is_err());
    }
}
