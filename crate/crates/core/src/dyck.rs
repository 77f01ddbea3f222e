//! Dyck paths: parsing, rendering, enumeration, step matching, and
//! structural decomposition.
//!
//! A Dyck path of semilength `n` consists of `2n` steps, `n` up and `n`
//! down, with every prefix containing at least as many up-steps as
//! down-steps. Steps are numbered `1..=2n` from the left; step `k`
//! occupies the lattice segment from `x = k-1` to `x = k`, which fixes
//! the `x`-coordinate conventions used by all statistics downstream.

use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::fmt;
use thiserror::Error;

/// One lattice step: up `(1,1)` or down `(1,-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    Up,
    Down,
}

/// Default semilength ceiling for [`enumerate_paths`]. C_16 is about 35
/// million paths, which is where accidental full enumeration stops being
/// a typo and starts being a problem.
pub const DEFAULT_ENUMERATION_CAP: usize = 16;

/// Errors raised by [`DyckPath::parse`]. Positions are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unbalanced word: {ups} up-steps vs {downs} down-steps")]
    UnbalancedWord { ups: usize, downs: usize },
    #[error("negative prefix at position {position}")]
    NegativePrefix { position: usize },
    #[error("bad symbol '{symbol}' at position {position}")]
    BadSymbol { symbol: char, position: usize },
}

/// The operation needs a nonempty path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("empty path")]
pub struct EmptyPath;

/// An enumeration request exceeded the configured cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("size {requested} exceeds cap {cap}")]
pub struct CapExceeded {
    pub requested: usize,
    pub cap: usize,
}

/// The region parameter `r` must satisfy `0 <= r <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("r = {r} out of range for semilength {n}")]
pub struct ROutOfRange {
    pub r: usize,
    pub n: usize,
}

/// A Dyck path. Immutable once built; the balanced/nonnegative invariant
/// holds for every constructed value.
///
/// `Ord` is lexicographic on steps with `Up < Down`, matching the
/// enumeration order of [`enumerate_paths`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

impl DyckPath {
    /// The empty path (semilength 0).
    pub fn empty() -> Self {
        DyckPath { steps: Vec::new() }
    }

    /// Builds a path from raw steps, validating the Dyck invariant.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, ParseError> {
        let mut height: usize = 0;
        for (i, step) in steps.iter().enumerate() {
            match step {
                Step::Up => height += 1,
                Step::Down => {
                    if height == 0 {
                        return Err(ParseError::NegativePrefix { position: i + 1 });
                    }
                    height -= 1;
                }
            }
        }
        if height != 0 {
            let ups = steps.iter().filter(|s| **s == Step::Up).count();
            return Err(ParseError::UnbalancedWord {
                ups,
                downs: steps.len() - ups,
            });
        }
        Ok(DyckPath { steps })
    }

    /// Internal constructor for steps already known to be valid.
    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        debug_assert!(DyckPath::from_steps(steps.clone()).is_ok());
        DyckPath { steps }
    }

    /// Parses a Dyck word. Canonical alphabet is `u`/`d`; `U`/`D` and
    /// `1`/`0` (1 = up) are accepted as well. Mixed alphabets are fine.
    pub fn parse(word: &str) -> Result<Self, ParseError> {
        let mut steps = Vec::with_capacity(word.len());
        let mut height: usize = 0;
        let mut ups = 0usize;
        for (i, ch) in word.chars().enumerate() {
            let step = match ch {
                'u' | 'U' | '1' => Step::Up,
                'd' | 'D' | '0' => Step::Down,
                other => {
                    return Err(ParseError::BadSymbol {
                        symbol: other,
                        position: i + 1,
                    })
                }
            };
            match step {
                Step::Up => {
                    ups += 1;
                    height += 1;
                }
                Step::Down => {
                    if height == 0 {
                        return Err(ParseError::NegativePrefix { position: i + 1 });
                    }
                    height -= 1;
                }
            }
            steps.push(step);
        }
        if height != 0 {
            return Err(ParseError::UnbalancedWord {
                ups,
                downs: steps.len() - ups,
            });
        }
        Ok(DyckPath { steps })
    }

    /// Renders the canonical `u`/`d` word. `parse(render(d)) == d`.
    pub fn render(&self) -> String {
        self.steps
            .iter()
            .map(|s| match s {
                Step::Up => 'u',
                Step::Down => 'd',
            })
            .collect()
    }

    /// Semilength `n` (half the step count).
    pub fn semilength(&self) -> usize {
        self.steps.len() / 2
    }

    /// Total number of steps, `2n`.
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The step at 1-based position `pos`.
    pub fn step(&self, pos: usize) -> Step {
        self.steps[pos - 1]
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Heights at lattice points `x = 0..=2n`; `heights()[k]` is the
    /// height after `k` steps. First and last entries are 0.
    pub fn heights(&self) -> Vec<usize> {
        let mut hs = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0usize;
        hs.push(h);
        for step in &self.steps {
            match step {
                Step::Up => h += 1,
                Step::Down => h -= 1,
            }
            hs.push(h);
        }
        hs
    }

    /// Concatenation; semilengths add.
    pub fn concat(&self, other: &DyckPath) -> DyckPath {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        DyckPath { steps }
    }

    /// Splits a nonempty path at its first return: `D = Up A Down B`
    /// with `A`, `B` Dyck paths.
    pub fn first_return_decompose(&self) -> Result<(DyckPath, DyckPath), EmptyPath> {
        if self.is_empty() {
            return Err(EmptyPath);
        }
        let mut height = 0i64;
        for (i, step) in self.steps.iter().enumerate() {
            match step {
                Step::Up => height += 1,
                Step::Down => height -= 1,
            }
            if height == 0 {
                let inner = DyckPath::from_steps_unchecked(self.steps[1..i].to_vec());
                let rest = DyckPath::from_steps_unchecked(self.steps[i + 1..].to_vec());
                return Ok((inner, rest));
            }
        }
        unreachable!("a valid Dyck path always returns to height 0");
    }

    /// The unique non-crossing matching of up-steps to down-steps: pair
    /// `(i, j)` delimits a tunnel, i.e. the steps strictly between form a
    /// Dyck word.
    pub fn match_steps(&self) -> StepMatching {
        let mut partner = vec![0usize; self.steps.len() + 1];
        let mut stack = Vec::with_capacity(self.semilength());
        for (i, step) in self.steps.iter().enumerate() {
            let pos = i + 1;
            match step {
                Step::Up => stack.push(pos),
                Step::Down => {
                    let up = stack.pop().expect("validated path cannot underflow");
                    partner[up] = pos;
                    partner[pos] = up;
                }
            }
        }
        StepMatching { partner }
    }
}

impl fmt::Debug for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckPath({:?})", self.render())
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DyckPath", 2)?;
        s.serialize_field("word", &self.render())?;
        s.serialize_field("n", &self.semilength())?;
        s.end()
    }
}

/// The non-crossing pairing of step positions produced by
/// [`DyckPath::match_steps`]. Positions are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepMatching {
    /// `partner[p]` is the position matched with `p`; index 0 unused.
    partner: Vec<usize>,
}

impl StepMatching {
    /// Position matched with `pos`.
    pub fn partner(&self, pos: usize) -> usize {
        self.partner[pos]
    }

    /// All `(up_position, down_position)` pairs, sorted by up position.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity((self.partner.len() - 1) / 2);
        for pos in 1..self.partner.len() {
            let q = self.partner[pos];
            if pos < q {
                out.push((pos, q));
            }
        }
        out
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        (self.partner.len() - 1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Enumerates all of `D_n` in lexicographic word order with `u < d`,
/// checked against `DEFAULT_ENUMERATION_CAP`.
pub fn enumerate_paths(n: usize) -> Result<DyckPaths, CapExceeded> {
    enumerate_paths_capped(n, DEFAULT_ENUMERATION_CAP)
}

/// Same as [`enumerate_paths`] with an explicit cap.
pub fn enumerate_paths_capped(n: usize, cap: usize) -> Result<DyckPaths, CapExceeded> {
    if n > cap {
        return Err(CapExceeded { requested: n, cap });
    }
    Ok(DyckPaths::new(n))
}

/// Lazy lexicographic iterator over `D_n`. Yields owned, independent
/// values, so consumers may fan out across threads.
pub struct DyckPaths {
    n: usize,
    next: Option<Vec<Step>>,
}

impl DyckPaths {
    fn new(n: usize) -> Self {
        // Lexicographically smallest word: u^n d^n.
        let mut first = vec![Step::Up; n];
        first.extend(std::iter::repeat(Step::Down).take(n));
        DyckPaths {
            n,
            next: Some(first),
        }
    }

    /// Rewrites `word` in place into its lexicographic successor.
    /// Returns false when `word` was the last one, (ud)^n.
    fn advance(n: usize, word: &mut [Step]) -> bool {
        // Find the rightmost Up that can become Down while keeping the
        // prefix valid, then refill the suffix with the smallest valid
        // completion (as many u's as the budget allows, then d's).
        let mut ups = word.iter().filter(|s| **s == Step::Up).count();
        let mut downs = word.len() - ups;
        for i in (0..word.len()).rev() {
            match word[i] {
                Step::Up => ups -= 1,
                Step::Down => downs -= 1,
            }
            if word[i] == Step::Up && downs + 1 <= ups && downs + 1 <= n {
                word[i] = Step::Down;
                let mut u = ups;
                let mut d = downs + 1;
                for slot in word.iter_mut().skip(i + 1) {
                    if u < n {
                        *slot = Step::Up;
                        u += 1;
                    } else {
                        *slot = Step::Down;
                        d += 1;
                    }
                }
                debug_assert_eq!(u, n);
                debug_assert_eq!(d, n);
                return true;
            }
        }
        false
    }
}

impl Iterator for DyckPaths {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let current = self.next.take()?;
        let item = DyckPath::from_steps_unchecked(current.clone());
        let mut word = current;
        if Self::advance(self.n, &mut word) {
            self.next = Some(word);
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent Catalan oracle: C_{n+1} = sum C_i C_{n-i}.
    fn catalan(n: usize) -> u64 {
        let mut c = vec![1u64];
        for m in 1..=n {
            let mut total = 0u64;
            for i in 0..m {
                total += c[i] * c[m - 1 - i];
            }
            c.push(total);
        }
        c[n]
    }

    #[test]
    fn parse_smallest_paths() {
        let d = DyckPath::parse("ud").unwrap();
        assert_eq!(d.steps(), &[Step::Up, Step::Down]);
        assert_eq!(d.semilength(), 1);

        let d = DyckPath::parse("uudd").unwrap();
        assert_eq!(d.steps(), &[Step::Up, Step::Up, Step::Down, Step::Down]);
        assert_eq!(d.semilength(), 2);
    }

    #[test]
    fn parse_rejects_negative_prefix() {
        assert_eq!(
            DyckPath::parse("uddu"),
            Err(ParseError::NegativePrefix { position: 3 })
        );
    }

    #[test]
    fn parse_rejects_unbalanced() {
        assert_eq!(
            DyckPath::parse("uud"),
            Err(ParseError::UnbalancedWord { ups: 2, downs: 1 })
        );
    }

    #[test]
    fn parse_rejects_bad_symbol() {
        assert_eq!(
            DyckPath::parse("uxd"),
            Err(ParseError::BadSymbol {
                symbol: 'x',
                position: 2
            })
        );
    }

    #[test]
    fn parse_accepts_alternate_alphabets() {
        let canon = DyckPath::parse("uudd").unwrap();
        assert_eq!(DyckPath::parse("UUDD").unwrap(), canon);
        assert_eq!(DyckPath::parse("1100").unwrap(), canon);
        assert_eq!(DyckPath::parse("U1dD").unwrap(), canon);
    }

    #[test]
    fn render_round_trips() {
        for word in ["", "ud", "uudd", "uuduudududddud"] {
            assert_eq!(DyckPath::parse(word).unwrap().render(), word);
        }
    }

    #[test]
    fn enumerate_small_counts() {
        assert_eq!(enumerate_paths(0).unwrap().count(), 1);
        assert_eq!(enumerate_paths(3).unwrap().count(), 5);
    }

    #[test]
    fn enumerate_matches_catalan_recurrence() {
        for n in 0..=12 {
            let count = enumerate_paths(n).unwrap().count() as u64;
            assert_eq!(count, catalan(n), "n = {n}");
        }
    }

    #[test]
    fn enumerate_is_lexicographic_and_distinct() {
        // Lexicographic with u < d; DyckPath's Ord agrees (Up < Down),
        // plain string order would not ('d' < 'u' in ASCII).
        for n in 0..=7 {
            let paths: Vec<DyckPath> = enumerate_paths(n).unwrap().collect();
            let mut sorted = paths.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(paths, sorted, "n = {n}");
        }
        let first: Vec<String> = enumerate_paths(3).unwrap().map(|d| d.render()).collect();
        assert_eq!(
            first,
            vec!["uuuddd", "uududd", "uuddud", "uduudd", "ududud"]
        );
    }

    #[test]
    fn enumerate_respects_cap() {
        assert_eq!(
            enumerate_paths(17).err(),
            Some(CapExceeded {
                requested: 17,
                cap: 16
            })
        );
        assert!(enumerate_paths_capped(17, 17).is_ok());
    }

    #[test]
    fn matching_examples() {
        let pairs = |w: &str| DyckPath::parse(w).unwrap().match_steps().pairs();
        assert_eq!(pairs("uudd"), vec![(1, 4), (2, 3)]);
        assert_eq!(pairs("udud"), vec![(1, 2), (3, 4)]);
        // Stack-simulation oracle worked by hand for the 14-step word.
        assert_eq!(
            pairs("uuduudududddud"),
            vec![(1, 12), (2, 3), (4, 11), (5, 6), (7, 8), (9, 10), (13, 14)]
        );
    }

    #[test]
    fn matching_is_non_crossing() {
        for d in enumerate_paths(6).unwrap() {
            let pairs = d.match_steps().pairs();
            for (a, &(i, j)) in pairs.iter().enumerate() {
                for &(k, l) in &pairs[a + 1..] {
                    let crossing = i < k && k < j && j < l;
                    assert!(!crossing, "{}: ({i},{j}) crosses ({k},{l})", d);
                }
            }
        }
    }

    #[test]
    fn first_return_examples() {
        let split = |w: &str| {
            let (a, b) = DyckPath::parse(w).unwrap().first_return_decompose().unwrap();
            (a.render(), b.render())
        };
        assert_eq!(split("ud"), (String::new(), String::new()));
        assert_eq!(split("uudd"), ("ud".into(), String::new()));
        assert_eq!(split("uduudd"), (String::new(), "uudd".into()));
        assert_eq!(
            DyckPath::empty().first_return_decompose(),
            Err(EmptyPath)
        );
    }

    #[test]
    fn first_return_reconstructs() {
        for d in enumerate_paths(6).unwrap() {
            if d.is_empty() {
                continue;
            }
            let (a, b) = d.first_return_decompose().unwrap();
            let mut steps = vec![Step::Up];
            steps.extend_from_slice(a.steps());
            steps.push(Step::Down);
            let rebuilt = DyckPath::from_steps_unchecked(steps).concat(&b);
            assert_eq!(rebuilt, d);
        }
    }

    #[test]
    fn concat_examples() {
        let p = |w: &str| DyckPath::parse(w).unwrap();
        assert_eq!(p("ud").concat(&p("ud")), p("udud"));
        assert_eq!(DyckPath::empty().concat(&p("uudd")), p("uudd"));
        assert_eq!(p("uudd").concat(&p("ud")), p("uuddud"));
        assert_eq!(p("uudd").concat(&p("ud")).semilength(), 3);
    }

    #[test]
    fn json_shape() {
        let d = DyckPath::parse("uudd").unwrap();
        let json = serde_json::to_value(&d).unwrap();
        assert_eq!(json, serde_json::json!({"word": "uudd", "n": 2}));
    }
}
