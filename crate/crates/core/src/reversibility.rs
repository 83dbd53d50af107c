//! Reversibility of rules: which matrices are invertible, and what the
//! exhaustive state-transition graphs of tiny grids look like.
//!
//! A rule is reversible on a given grid size exactly when its rule matrix
//! has full rank over GF(2); its state graph is then a pure permutation
//! (every state lies on a cycle). Exactly 31 rules are invertible at every
//! size: the ones of the form rule 1 XOR a subset of `{2, 4, 8, 16}` or of
//! `{32, 64, 128, 256}`. Such a matrix is the identity plus a strictly
//! triangular part, so its determinant is 1 regardless of the grid
//! dimensions. Rules mixing the two sides pick up boundary-dependent
//! cancellations and go singular at some size.

use std::ops::RangeInclusive;

use crate::error::Error;
use crate::grid::Grid;
use crate::rule::Rule;
use crate::rulemat::rule_matrix;
use crate::step::step_uniform;

/// Iteration cap for [`order_of`]; reached only by a non-terminating
/// search, never by a rule matrix at tested sizes.
pub const ORDER_SEARCH_CAP: u64 = 1 << 20;

/// State-graph enumeration cap: `2^16` states.
pub const MAX_STATE_CELLS: usize = 16;

/// Per-rule outcome of a rank sweep over a set of grid sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleRecord {
    pub rule: Rule,
    pub group: u32,
    /// Rank of the rule matrix at each tested size, in size order.
    pub ranks: Vec<usize>,
    /// Full rank at every tested size.
    pub always_invertible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub sizes: Vec<(usize, usize)>,
    /// One record per rule, ascending by rule number.
    pub records: Vec<RuleRecord>,
}

/// Rank every rule matrix at every `(m, n)` in the given ranges.
pub fn reversibility_report(
    m_range: RangeInclusive<usize>,
    n_range: RangeInclusive<usize>,
) -> ReversibilityReport {
    let sizes: Vec<(usize, usize)> = m_range
        .flat_map(|m| n_range.clone().map(move |n| (m, n)))
        .collect();
    assert!(!sizes.is_empty(), "size ranges must be non-empty");
    let records = Rule::all()
        .map(|rule| {
            let ranks: Vec<usize> = sizes
                .iter()
                .map(|&(m, n)| rule_matrix(rule, m, n).rank())
                .collect();
            let always_invertible = sizes
                .iter()
                .zip(&ranks)
                .all(|(&(m, n), &rank)| rank == m * n);
            RuleRecord {
                rule,
                group: rule.group(),
                ranks,
                always_invertible,
            }
        })
        .collect();
    ReversibilityReport { sizes, records }
}

impl ReversibilityReport {
    pub fn always_invertible(&self) -> Vec<Rule> {
        self.records
            .iter()
            .filter(|rec| rec.always_invertible)
            .map(|rec| rec.rule)
            .collect()
    }

    /// Deterministic table: one line per rule with group, verdict and the
    /// per-size ranks, sorted by rule number.
    pub fn to_text(&self) -> String {
        let mut text = String::from("rule group verdict");
        for (m, n) in &self.sizes {
            text.push_str(&format!(" rank@{m}x{n}"));
        }
        text.push('\n');
        for rec in &self.records {
            let verdict = if rec.always_invertible {
                "reversible"
            } else {
                "singular"
            };
            text.push_str(&format!("{} {} {}", rec.rule, rec.group, verdict));
            for rank in &rec.ranks {
                text.push_str(&format!(" {rank}"));
            }
            text.push('\n');
        }
        text
    }
}

/// Rules with full rank at every size in the ranges, ascending.
pub fn always_invertible_set(
    m_range: RangeInclusive<usize>,
    n_range: RangeInclusive<usize>,
) -> Vec<Rule> {
    reversibility_report(m_range, n_range).always_invertible()
}

/// The 31 rules of the form 1 XOR a subset of one triangular side; their
/// matrices are unipotent in row-major order, hence invertible at every
/// size. This is the classically cited reversible list, but it is not
/// exhaustive: see [`half_plane_rules`].
pub fn unipotent_rules() -> Vec<Rule> {
    let mut rules = Vec::new();
    for side in [[2u16, 4, 8, 16], [32, 64, 128, 256]] {
        for mask in 0u16..16 {
            let value = 1 | side
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, w)| w)
                .sum::<u16>();
            rules.push(Rule::new(value).expect("in range"));
        }
    }
    rules.sort_unstable();
    rules.dedup(); // the empty subset appears on both sides as rule 1
    rules
}

/// All 65 rules that depend on the cell itself and whose remaining
/// dependencies lie strictly inside some open half-plane through the cell.
///
/// Ordering the cells along the separating direction exhibits such a
/// matrix as the identity plus a strictly triangular part, so these rules
/// are invertible at every grid size. The 31 rules of [`unipotent_rules`]
/// are the special case where row-major order itself is a witness; the
/// other 34 use a rotated direction (for example rule 41 = 1 + 8 + 32,
/// bottom + left). Rank sweeps confirm the set is exhaustive: every rule
/// outside it is singular at some size with both dimensions in 2..=6.
pub fn half_plane_rules() -> Vec<Rule> {
    Rule::all()
        .filter(|rule| {
            if rule.value() & 1 == 0 {
                return false;
            }
            let offsets: Vec<_> = rule
                .offsets()
                .into_iter()
                .filter(|o| (o.dr, o.dc) != (0, 0))
                .collect();
            if offsets.is_empty() {
                return true;
            }
            // The eight neighbor directions are separable iff some small
            // integer direction has positive dot product with all of them.
            (-2i32..=2).any(|a| {
                (-2i32..=2)
                    .any(|b| (a, b) != (0, 0) && offsets.iter().all(|o| a * o.dr + b * o.dc > 0))
            })
        })
        .collect()
}

/// One cycle of a state graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cycle {
    /// Smallest state index on the cycle.
    pub representative: u32,
    pub length: usize,
}

/// Exhaustive successor structure of every state of an `m x n` grid under
/// one rule. States are numbered by their row-major bit patterns.
#[derive(Debug, Clone)]
pub struct StateGraph {
    m: usize,
    n: usize,
    pub successor: Vec<u32>,
    pub cycles: Vec<Cycle>,
    /// Distance to the cycle; 0 for states on a cycle.
    pub depth: Vec<u32>,
    pub on_cycle: Vec<bool>,
}

/// Enumerate all `2^(mn)` states via direct stepping and decompose the
/// functional graph into cycles and transient trees. Capped at 16 cells.
pub fn state_graph(rule: Rule, m: usize, n: usize) -> Result<StateGraph, Error> {
    let cells = m
        .checked_mul(n)
        .filter(|&c| c > 0)
        .ok_or(Error::EmptyGrid)?;
    if cells > MAX_STATE_CELLS {
        return Err(Error::StateSpaceTooLarge(cells));
    }
    let count = 1usize << cells;
    let mut successor = Vec::with_capacity(count);
    for state in 0..count as u32 {
        let grid = grid_of_state(state, m, n)?;
        successor.push(state_of_grid(&step_uniform(&grid, rule)));
    }

    // Functional-graph decomposition: walk unvisited paths; a walk either
    // closes a new cycle inside itself or lands on finalized territory.
    const UNSEEN: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;
    let mut color = vec![UNSEEN; count];
    let mut depth = vec![0u32; count];
    let mut on_cycle = vec![false; count];
    let mut cycles = Vec::new();
    for start in 0..count {
        if color[start] != UNSEEN {
            continue;
        }
        let mut path = vec![start as u32];
        color[start] = ON_PATH;
        loop {
            let next = successor[*path.last().unwrap() as usize];
            match color[next as usize] {
                UNSEEN => {
                    color[next as usize] = ON_PATH;
                    path.push(next);
                }
                ON_PATH => {
                    // Closed a fresh cycle: everything from `next` onward.
                    let cut = path.iter().position(|&s| s == next).unwrap();
                    let cycle = &path[cut..];
                    for &s in cycle {
                        on_cycle[s as usize] = true;
                        depth[s as usize] = 0;
                    }
                    cycles.push(Cycle {
                        representative: *cycle.iter().min().unwrap(),
                        length: cycle.len(),
                    });
                    for (i, &s) in path[..cut].iter().enumerate().rev() {
                        depth[s as usize] = (cut - i) as u32;
                    }
                    break;
                }
                DONE => {
                    let base = depth[next as usize];
                    for (i, &s) in path.iter().enumerate().rev() {
                        depth[s as usize] = base + (path.len() - i) as u32;
                    }
                    break;
                }
                _ => unreachable!(),
            }
        }
        for &s in &path {
            color[s as usize] = DONE;
        }
    }
    cycles.sort_by_key(|c| c.representative);
    Ok(StateGraph {
        m,
        n,
        successor,
        cycles,
        depth,
        on_cycle,
    })
}

impl StateGraph {
    pub fn state_count(&self) -> usize {
        self.successor.len()
    }

    /// True when every state lies on a cycle, i.e. the map is a bijection.
    pub fn is_permutation(&self) -> bool {
        self.on_cycle.iter().all(|&c| c)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(|c| c.length).collect()
    }

    pub fn transient_count(&self) -> usize {
        self.on_cycle.iter().filter(|&&c| !c).count()
    }

    /// Least common multiple of the cycle lengths: the order of the map
    /// restricted to its cycles.
    pub fn cycle_lcm(&self) -> u64 {
        self.cycles
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.length as u64))
    }

    pub fn grid_of_state(&self, state: u32) -> Grid {
        grid_of_state(state, self.m, self.n).expect("dimensions validated at construction")
    }
}

fn grid_of_state(state: u32, m: usize, n: usize) -> Result<Grid, Error> {
    Grid::from_fn(m, n, |i, j| state >> (i * n + j) & 1 == 1)
}

fn state_of_grid(grid: &Grid) -> u32 {
    let mut state = 0u32;
    for (i, j) in grid.iter_ones() {
        state |= 1 << (i * grid.cols() + j);
    }
    state
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Least `p >= 1` with the rule matrix to the `p`-th power equal to the
/// identity, or `None` for singular matrices. The search is capped at
/// [`ORDER_SEARCH_CAP`] multiplications.
pub fn order_of(rule: Rule, m: usize, n: usize) -> Option<u64> {
    let mat = rule_matrix(rule, m, n);
    if mat.rank() < m * n {
        return None;
    }
    let identity = crate::bitmat::BitMatrix::identity(m * n);
    let mut power = mat.clone();
    let mut p = 1;
    while power != identity {
        power = power.multiply(&mat).expect("square");
        p += 1;
        if p > ORDER_SEARCH_CAP {
            return None;
        }
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::step::evolve;

    fn r(v: u16) -> Rule {
        Rule::new(v).unwrap()
    }

    /// The 31 always-reversible rules, frozen.
    pub const REVERSIBLE_RULES: [u16; 31] = [
        1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 65, 97, 129, 161, 193, 225,
        257, 289, 321, 353, 385, 417, 449, 481,
    ];

    #[test]
    fn unipotent_set_matches_the_frozen_list() {
        let values: Vec<u16> = unipotent_rules().iter().map(|r| r.value()).collect();
        assert_eq!(values, REVERSIBLE_RULES);
    }

    #[test]
    fn always_invertible_rules_over_small_sizes() {
        // 2..=4 keeps the unit test quick; the acceptance suite runs 2..=6.
        let found = always_invertible_set(2..=4, 2..=4);
        assert_eq!(found, half_plane_rules());
        // The classic 31-rule list is a strict subset.
        for value in REVERSIBLE_RULES {
            assert!(found.contains(&r(value)), "rule {value} must be reversible");
        }
        assert_eq!(found.len(), 65);
    }

    #[test]
    fn half_plane_set_contains_the_unipotent_set() {
        let half_plane = half_plane_rules();
        for rule in unipotent_rules() {
            assert!(half_plane.contains(&rule));
        }
        assert_eq!(half_plane.len(), 65);
        // A rotated-cone member outside the classic list, and a mixed rule
        // that genuinely goes singular.
        assert!(half_plane.contains(&r(41))); // self + bottom + left
        assert!(!half_plane.contains(&r(35))); // self + right + left
        assert!(rule_matrix(r(35), 3, 2).rank() < 6);
    }

    #[test]
    fn rule_zero_and_rule_34_are_singular() {
        assert!(rule_matrix(Rule::ZERO, 3, 3).rank() == 0);
        // Rule 34 couples left and right neighbors; singular at odd widths.
        assert!(rule_matrix(r(34), 3, 3).rank() < 9);
    }

    #[test]
    fn report_text_is_deterministic_and_complete() {
        let report = reversibility_report(2..=2, 2..=3);
        let text = report.to_text();
        assert_eq!(text.lines().count(), 513);
        assert!(text.starts_with("rule group verdict rank@2x2 rank@2x3\n"));
        assert!(text.contains("\n1 1 reversible 4 6\n"));
        assert!(text.contains("\n0 0 singular 0 0\n"));
        assert_eq!(report.to_text(), text);
    }

    #[test]
    fn identity_rule_graph_is_all_fixed_points() {
        let graph = state_graph(Rule::IDENTITY, 2, 2).unwrap();
        assert!(graph.is_permutation());
        assert_eq!(graph.cycles.len(), 16);
        assert!(graph.cycle_lengths().iter().all(|&l| l == 1));
        assert_eq!(graph.cycle_lcm(), 1);
    }

    #[test]
    fn zero_rule_graph_is_a_single_attractor() {
        let graph = state_graph(Rule::ZERO, 2, 2).unwrap();
        assert_eq!(graph.cycles.len(), 1);
        assert_eq!(
            graph.cycles[0],
            Cycle {
                representative: 0,
                length: 1
            }
        );
        assert_eq!(graph.transient_count(), 15);
        assert!(graph.successor.iter().all(|&s| s == 0));
        assert!(graph.depth.iter().skip(1).all(|&d| d == 1));
    }

    #[test]
    fn rule_3_on_2x2_is_a_permutation() {
        let graph = state_graph(r(3), 2, 2).unwrap();
        assert!(graph.is_permutation());
        let total: usize = graph.cycle_lengths().iter().sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn state_graph_guards_against_state_explosion() {
        assert!(state_graph(r(3), 4, 4).is_ok());
        assert!(matches!(
            state_graph(r(3), 4, 5),
            Err(Error::StateSpaceTooLarge(20))
        ));
    }

    #[test]
    fn order_examples() {
        assert_eq!(order_of(Rule::IDENTITY, 3, 3), Some(1));
        assert_eq!(order_of(Rule::ZERO, 3, 3), None);
    }

    #[test]
    fn order_matches_brute_force_return_time_on_2x2() {
        // Brute-force the return time of rule 3 over all 16 states, then
        // check both order_of and evolve against it.
        let rule = r(3);
        let graph = state_graph(rule, 2, 2).unwrap();
        let mut brute_lcm = 1u64;
        for start in 0..16u32 {
            let mut state = graph.successor[start as usize];
            let mut steps = 1u64;
            while state != start {
                state = graph.successor[state as usize];
                steps += 1;
                assert!(steps <= 16, "rule 3 must be a permutation on 2x2");
            }
            brute_lcm = lcm(brute_lcm, steps);
        }
        let order = order_of(rule, 2, 2).unwrap();
        assert_eq!(order, brute_lcm);
        assert_eq!(order, graph.cycle_lcm());
        for start in 0..16u32 {
            let g = graph.grid_of_state(start);
            assert_eq!(evolve(&g, rule, order as usize), g);
        }
    }

    #[test]
    fn transient_depths_count_steps_to_the_cycle() {
        // Rule 8 shifts content up; on 2x2 every state dies within 2 steps.
        let graph = state_graph(r(8), 2, 2).unwrap();
        assert_eq!(graph.cycles.len(), 1);
        for state in 0..16u32 {
            let d = graph.depth[state as usize];
            assert!(d <= 2);
            let mut s = state;
            for _ in 0..d {
                s = graph.successor[s as usize];
            }
            assert!(graph.on_cycle[s as usize]);
        }
    }

    #[test]
    fn permutation_iff_invertible_on_sampled_rules() {
        for rule in [0u16, 1, 2, 3, 8, 34, 170, 171, 257, 511] {
            let invertible = rule_matrix(r(rule), 2, 2).rank() == 4;
            let graph = state_graph(r(rule), 2, 2).unwrap();
            assert_eq!(graph.is_permutation(), invertible, "rule {rule}");
        }
        // Every 8th rule on a 12-cell grid (4096 states each); the
        // acceptance suite does all 512 rules exhaustively at 2x2 and 3x3.
        for value in (0u16..512).step_by(8) {
            let invertible = rule_matrix(r(value), 3, 4).rank() == 12;
            let graph = state_graph(r(value), 3, 4).unwrap();
            assert_eq!(graph.is_permutation(), invertible, "rule {value} at 3x4");
        }
    }
}
