//! The 512-rule space of linear nine-neighborhood rules.
//!
//! A rule is a 9-bit mask over the weights `{1, 2, 4, 8, 16, 32, 64, 128,
//! 256}`; each weight names one cell of the Moore neighborhood:
//!
//! ```text
//!     64  128  256
//!     32    1    2
//!     16    8    4
//! ```
//!
//! Rows grow downward and columns grow rightward, so weight 128 is the top
//! neighbor `(-1, 0)` and weight 4 the bottom-right neighbor `(+1, +1)`.
//! The next state of a cell is the XOR of the neighbors selected by the
//! mask, which makes the rule space an abelian group under XOR with every
//! element its own inverse.

use std::fmt;
use std::ops::BitXor;
use std::str::FromStr;

use crate::error::Error;

/// Relative position of a neighbor, in (row, column) deltas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NeighborOffset {
    pub dr: i32,
    pub dc: i32,
}

impl NeighborOffset {
    pub const fn new(dr: i32, dc: i32) -> Self {
        NeighborOffset { dr, dc }
    }

    /// Offset between flattened row-major indices for a grid of `n` columns.
    pub fn flat_delta(self, n: usize) -> isize {
        self.dr as isize * n as isize + self.dc as isize
    }
}

/// Weight-to-offset table in ascending weight order (weight `1 << k` at
/// index `k`).
pub const WEIGHT_OFFSETS: [NeighborOffset; 9] = [
    NeighborOffset::new(0, 0),   // 1: the cell itself
    NeighborOffset::new(0, 1),   // 2: right
    NeighborOffset::new(1, 1),   // 4: bottom-right
    NeighborOffset::new(1, 0),   // 8: bottom
    NeighborOffset::new(1, -1),  // 16: bottom-left
    NeighborOffset::new(0, -1),  // 32: left
    NeighborOffset::new(-1, -1), // 64: top-left
    NeighborOffset::new(-1, 0),  // 128: top
    NeighborOffset::new(-1, 1),  // 256: top-right
];

/// One of the 512 linear rules, identified by its decimal number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule(u16);

impl Rule {
    /// Number of linear rules.
    pub const COUNT: u16 = 512;

    /// Rule 0: no dependencies, maps everything to the zero grid.
    pub const ZERO: Rule = Rule(0);

    /// Rule 1: dependency on the cell itself alone, the identity map.
    pub const IDENTITY: Rule = Rule(1);

    /// The nine fundamental (single-dependency) rules, ascending.
    pub const FUNDAMENTALS: [Rule; 9] = [
        Rule(1),
        Rule(2),
        Rule(4),
        Rule(8),
        Rule(16),
        Rule(32),
        Rule(64),
        Rule(128),
        Rule(256),
    ];

    pub fn new(value: u16) -> Result<Rule, Error> {
        if value < Self::COUNT {
            Ok(Rule(value))
        } else {
            Err(Error::RuleOutOfRange(value as u32))
        }
    }

    pub const fn value(self) -> u16 {
        self.0
    }

    /// Group number: how many neighbors the rule depends on (0..=9).
    pub fn group(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_fundamental(self) -> bool {
        self.0.is_power_of_two()
    }

    /// Unique decomposition into fundamental rules, ascending by weight.
    /// XOR-folding the result gives back the rule.
    pub fn decompose(self) -> Vec<Rule> {
        (0..9)
            .filter(|k| self.0 >> k & 1 == 1)
            .map(|k| Rule(1 << k))
            .collect()
    }

    /// Neighbor offsets of all set weights, ascending by weight.
    pub fn offsets(self) -> Vec<NeighborOffset> {
        (0..9)
            .filter(|k| self.0 >> k & 1 == 1)
            .map(|k| WEIGHT_OFFSETS[k as usize])
            .collect()
    }

    /// All 512 rules in ascending order.
    pub fn all() -> impl Iterator<Item = Rule> {
        (0..Self::COUNT).map(Rule)
    }
}

impl BitXor for Rule {
    type Output = Rule;

    fn bitxor(self, rhs: Rule) -> Rule {
        Rule(self.0 ^ rhs.0)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u16> for Rule {
    type Error = Error;

    fn try_from(value: u16) -> Result<Rule, Error> {
        Rule::new(value)
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Rule, Error> {
        let value: u32 = s.parse().map_err(|_| Error::RuleOutOfRange(u32::MAX))?;
        if value >= Self::COUNT as u32 {
            return Err(Error::RuleOutOfRange(value));
        }
        Rule::new(value as u16)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: u16) -> Rule {
        Rule::new(v).unwrap()
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Rule::new(511).is_ok());
        assert_eq!(Rule::new(512), Err(Error::RuleOutOfRange(512)));
    }

    #[test]
    fn decompose_examples() {
        let values =
            |rule: Rule| -> Vec<u16> { rule.decompose().iter().map(|f| f.value()).collect() };
        assert_eq!(values(r(13)), vec![1, 4, 8]);
        assert_eq!(values(r(0)), Vec::<u16>::new());
        assert_eq!(values(r(35)), vec![1, 2, 32]);
        assert_eq!(values(r(171)), vec![1, 2, 8, 32, 128]);
    }

    #[test]
    fn decompose_xor_folds_back() {
        for rule in Rule::all() {
            let folded = rule.decompose().into_iter().fold(Rule::ZERO, |a, b| a ^ b);
            assert_eq!(folded, rule);
            for f in rule.decompose() {
                assert!(f.is_fundamental());
            }
        }
    }

    #[test]
    fn group_examples() {
        assert_eq!(r(171).group(), 5);
        assert_eq!(r(170).group(), 4);
        assert_eq!(r(0).group(), 0);
        assert_eq!(r(511).group(), 9);
    }

    #[test]
    fn group_sizes_are_binomial() {
        let binomial = [1usize, 9, 36, 84, 126, 126, 84, 36, 9, 1];
        let mut counts = [0usize; 10];
        for rule in Rule::all() {
            counts[rule.group() as usize] += 1;
        }
        assert_eq!(counts, binomial);
    }

    #[test]
    fn group_one_and_two_membership() {
        let group1: Vec<u16> = Rule::all()
            .filter(|rule| rule.group() == 1)
            .map(Rule::value)
            .collect();
        assert_eq!(group1, vec![1, 2, 4, 8, 16, 32, 64, 128, 256]);

        let group2: Vec<u16> = Rule::all()
            .filter(|rule| rule.group() == 2)
            .map(Rule::value)
            .collect();
        let expected = vec![
            3, 5, 6, 9, 10, 12, 17, 18, 20, 24, 33, 34, 36, 40, 48, 65, 66, 68, 72, 80, 96, 129,
            130, 132, 136, 144, 160, 192, 257, 258, 260, 264, 272, 288, 320, 384,
        ];
        assert_eq!(group2, expected);
    }

    #[test]
    fn xor_group_structure() {
        assert_eq!(r(1) ^ r(2), r(3));
        for v in [0u16, 1, 13, 170, 511] {
            assert_eq!(r(v) ^ r(v), Rule::ZERO);
            assert_eq!(r(v) ^ Rule::ZERO, r(v));
        }
        // Commutative and associative on a sample.
        for a in [3u16, 35, 171, 256] {
            for b in [1u16, 13, 340, 511] {
                assert_eq!(r(a) ^ r(b), r(b) ^ r(a));
                for c in [7u16, 64] {
                    assert_eq!((r(a) ^ r(b)) ^ r(c), r(a) ^ (r(b) ^ r(c)));
                }
            }
        }
    }

    #[test]
    fn offsets_examples() {
        assert_eq!(r(1).offsets(), vec![NeighborOffset::new(0, 0)]);
        assert_eq!(r(2).offsets(), vec![NeighborOffset::new(0, 1)]);
        assert_eq!(
            r(170).offsets(),
            vec![
                NeighborOffset::new(0, 1),
                NeighborOffset::new(1, 0),
                NeighborOffset::new(0, -1),
                NeighborOffset::new(-1, 0),
            ]
        );
    }

    #[test]
    fn weight_offset_table_is_a_bijection() {
        let mut seen = std::collections::HashSet::new();
        for off in WEIGHT_OFFSETS {
            assert!(off.dr.abs() <= 1 && off.dc.abs() <= 1);
            assert!(seen.insert((off.dr, off.dc)));
        }
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn parses_decimal() {
        assert_eq!("170".parse::<Rule>().unwrap(), r(170));
        assert!("512".parse::<Rule>().is_err());
        assert!("x".parse::<Rule>().is_err());
    }
}
