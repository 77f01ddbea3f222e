//! The zigzag bijection on Dyck paths and its parameterized family.
//!
//! The map reads the steps of a path in the order `2r+1, 2n, 2r+2,
//! 2n-1, ...` after copying a prefix of length `2r` (for the base map,
//! `r = 0`, the order is `1, 2n, 2, 2n-1, ...`). A step emits an
//! up-step if its matched partner has not been visited yet, otherwise a
//! down-step. The inverse reconstructs the preimage from a labeled
//! open/close word.

use crate::dyck::{DyckPath, ROutOfRange, Step};
use std::collections::BTreeSet;
use std::fmt;

/// The reading order used by [`phi_r`]: a permutation of `1..=2n` that
/// fixes the first `2r` positions and then alternates between the two
/// ends of the remaining block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagOrder {
    n: usize,
    r: usize,
    order: Vec<usize>,
}

impl ZigzagOrder {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The position read at time `i` (both 1-based).
    pub fn at(&self, i: usize) -> usize {
        self.order[i - 1]
    }

    /// The full image sequence, index 0 holding the position read first.
    pub fn order(&self) -> &[usize] {
        &self.order
    }
}

/// Builds the zigzag reading order for semilength `n` and prefix
/// parameter `r`: position `i` for `i <= 2r`, then `(i+1)/2 + r` for odd
/// `i` and `2n + 1 - i/2 + r` for even `i`.
pub fn sigma_r(n: usize, r: usize) -> Result<ZigzagOrder, ROutOfRange> {
    if r > n {
        return Err(ROutOfRange { r, n });
    }
    let len = 2 * n;
    let mut order = Vec::with_capacity(len);
    for i in 1..=len {
        let target = if i <= 2 * r {
            i
        } else if i % 2 == 1 {
            (i + 1) / 2 + r
        } else {
            2 * n + 1 - i / 2 + r
        };
        order.push(target);
    }
    debug_assert!({
        let mut seen = vec![false; len + 1];
        order.iter().all(|&p| {
            let fresh = !seen[p];
            seen[p] = true;
            fresh
        })
    });
    Ok(ZigzagOrder { n, r, order })
}

/// One entry of the zigzag visit log: at time `index` the reader looked
/// at `position` of the input and opened or closed a tunnel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VisitEvent {
    pub index: usize,
    pub position: usize,
    pub step: Step,
    pub opens: bool,
}

/// The zigzag map with prefix parameter `r`. The result has the same
/// semilength as the input.
pub fn phi_r(d: &DyckPath, r: usize) -> Result<DyckPath, ROutOfRange> {
    phi_r_traced(d, r).map(|(path, _)| path)
}

/// The base map, `r = 0`.
pub fn phi(d: &DyckPath) -> DyckPath {
    phi_r(d, 0).expect("r = 0 is always in range")
}

/// Like [`phi_r`] but also returns the visit log.
pub fn phi_r_traced(d: &DyckPath, r: usize) -> Result<(DyckPath, Vec<VisitEvent>), ROutOfRange> {
    let n = d.semilength();
    let sigma = sigma_r(n, r)?;
    let matching = d.match_steps();
    let mut visited = vec![false; 2 * n + 1];
    let mut steps = Vec::with_capacity(2 * n);
    let mut log = Vec::with_capacity(2 * n);
    for i in 1..=2 * n {
        let pos = sigma.at(i);
        let opens = !visited[matching.partner(pos)];
        visited[pos] = true;
        steps.push(if opens { Step::Up } else { Step::Down });
        log.push(VisitEvent {
            index: i,
            position: pos,
            step: d.step(pos),
            opens,
        });
    }
    Ok((DyckPath::from_steps_unchecked(steps), log))
}

/// Open or close marker of a labeled word position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Marker {
    Open,
    Close,
}

/// The labeled open/close word that drives the inverse map. Each label
/// appears exactly twice, once on an `o` and once on a `c`; the pair
/// marks the two walls of one tunnel of the preimage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledWord {
    symbols: Vec<Marker>,
    labels: Vec<usize>,
    /// Positions `1..=split` form the left half.
    split: usize,
}

impl LabeledWord {
    pub fn symbols(&self) -> &[Marker] {
        &self.symbols
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn split(&self) -> usize {
        self.split
    }

    /// Positions of each label's two occurrences, indexed by label.
    pub fn label_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.symbols.len() / 2;
        let mut first = vec![0usize; n + 1];
        let mut pairs = vec![(0usize, 0usize); n + 1];
        for (idx, &label) in self.labels.iter().enumerate() {
            let pos = idx + 1;
            if first[label] == 0 {
                first[label] = pos;
            } else {
                pairs[label] = (first[label], pos);
            }
        }
        pairs.remove(0);
        pairs
    }

    /// Decodes the preimage path: first occurrence of a label is an
    /// up-step, second a down-step.
    pub fn to_path(&self) -> DyckPath {
        let n = self.symbols.len() / 2;
        let mut seen = vec![false; n + 1];
        let mut steps = Vec::with_capacity(self.symbols.len());
        for &label in &self.labels {
            if seen[label] {
                steps.push(Step::Down);
            } else {
                seen[label] = true;
                steps.push(Step::Up);
            }
        }
        DyckPath::from_steps_unchecked(steps)
    }
}

impl fmt::Display for LabeledWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (sym, label)) in self.symbols.iter().zip(&self.labels).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let c = match sym {
                Marker::Open => 'o',
                Marker::Close => 'c',
            };
            write!(f, "{c}{label}")?;
        }
        Ok(())
    }
}

/// Builds the labeled word of `d_prime` for prefix parameter `r`.
///
/// Symbols: position `sigma_i` is an `o` when step `i` of `d_prime` is
/// an up-step, else a `c`. Labels, assigned while reading positions in
/// zigzag order: an `o` takes the smallest unused label; a `c` matches
/// the unmatched `o` in its own half with the largest label, falling
/// back to the unmatched `o` in the opposite half with the smallest
/// label. Halves split after position `n + r`.
pub fn build_labeled_word(d_prime: &DyckPath, r: usize) -> Result<LabeledWord, ROutOfRange> {
    let n = d_prime.semilength();
    let sigma = sigma_r(n, r)?;
    let len = 2 * n;
    let split = n + r;

    let mut symbols = vec![Marker::Close; len];
    for i in 1..=len {
        if d_prime.step(i) == Step::Up {
            symbols[sigma.at(i) - 1] = Marker::Open;
        }
    }

    let mut labels = vec![0usize; len];
    let mut next_label = 1usize;
    // Unmatched labeled opens per half, keyed by label.
    let mut open_left: BTreeSet<usize> = BTreeSet::new();
    let mut open_right: BTreeSet<usize> = BTreeSet::new();
    let mut label_position = vec![0usize; n + 2];

    for i in 1..=len {
        let pos = sigma.at(i);
        let in_left = pos <= split;
        match symbols[pos - 1] {
            Marker::Open => {
                labels[pos - 1] = next_label;
                label_position[next_label] = pos;
                if in_left {
                    open_left.insert(next_label);
                } else {
                    open_right.insert(next_label);
                }
                next_label += 1;
            }
            Marker::Close => {
                let (same, opposite) = if in_left {
                    (&mut open_left, &mut open_right)
                } else {
                    (&mut open_right, &mut open_left)
                };
                let label = match same.iter().next_back().copied() {
                    Some(largest) => {
                        same.remove(&largest);
                        largest
                    }
                    None => {
                        let smallest = *opposite
                            .iter()
                            .next()
                            .expect("a close always has an open to pair with");
                        opposite.remove(&smallest);
                        smallest
                    }
                };
                labels[pos - 1] = label;
            }
        }
    }

    Ok(LabeledWord {
        symbols,
        labels,
        split,
    })
}

/// Inverse of [`phi_r`]: recovers `d` with `phi_r(d, r) == d_prime`.
pub fn phi_r_inverse(d_prime: &DyckPath, r: usize) -> Result<DyckPath, ROutOfRange> {
    Ok(build_labeled_word(d_prime, r)?.to_path())
}

/// Inverse of [`phi`].
pub fn phi_inverse(d_prime: &DyckPath) -> DyckPath {
    phi_r_inverse(d_prime, 0).expect("r = 0 is always in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::enumerate_paths;
    use crate::stats;
    use std::collections::HashSet;

    fn p(w: &str) -> DyckPath {
        DyckPath::parse(w).unwrap()
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_r(2, 0).unwrap().order(), &[1, 4, 2, 3]);
        assert_eq!(sigma_r(2, 2).unwrap().order(), &[1, 2, 3, 4]);
        let s = sigma_r(9, 2).unwrap();
        assert_eq!(&s.order()[..8], &[1, 2, 3, 4, 5, 18, 6, 17]);
        assert!(sigma_r(2, 3).is_err());
    }

    #[test]
    fn sigma_is_bijective() {
        for n in 0..=8 {
            for r in 0..=n {
                let s = sigma_r(n, r).unwrap();
                let distinct: HashSet<usize> = s.order().iter().copied().collect();
                assert_eq!(distinct.len(), 2 * n, "n={n} r={r}");
                assert!(s.order().iter().all(|&p| (1..=2 * n).contains(&p)));
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&p("ud")), p("ud"));
        assert_eq!(phi(&p("uudd")), p("udud"));
        assert_eq!(phi(&p("udud")), p("uudd"));
        // Hand simulation over the matching of the 14-step word.
        assert_eq!(phi(&p("uuduudududddud")), p("uuuddduduuddud"));
    }

    #[test]
    fn phi_long_example_cross_checks() {
        let d = p("uuduudududddud");
        let image = phi(&d);
        let counts = stats::tunnel_counts_at(&d, 0).unwrap();
        assert_eq!(counts.at, 2);
        assert_eq!(stats::hills(&image), 2);
        assert_eq!(counts.right, 2);
        assert_eq!(stats::odd_even_rises(&image).1, 2);
    }

    #[test]
    fn phi_r_copies_prefix() {
        for n in 0..=7 {
            for d in enumerate_paths(n).unwrap() {
                for r in 0..=n {
                    let image = phi_r(&d, r).unwrap();
                    assert_eq!(image.semilength(), n);
                    assert_eq!(&image.steps()[..2 * r], &d.steps()[..2 * r], "{d} r={r}");
                }
            }
        }
    }

    #[test]
    fn phi_r_full_prefix_is_identity() {
        assert_eq!(phi_r(&p("ud"), 1).unwrap(), p("ud"));
        for d in enumerate_paths(5).unwrap() {
            assert_eq!(phi_r(&d, 5).unwrap(), d);
        }
    }

    #[test]
    fn labeled_word_examples() {
        let lw = build_labeled_word(&p("ud"), 0).unwrap();
        assert_eq!(lw.symbols(), &[Marker::Open, Marker::Close]);
        assert_eq!(lw.labels(), &[1, 1]);

        // "udud" places o,o,c,c and pairs positions (1,4) and (2,3).
        let lw = build_labeled_word(&p("udud"), 0).unwrap();
        assert_eq!(
            lw.symbols(),
            &[Marker::Open, Marker::Open, Marker::Close, Marker::Close]
        );
        assert_eq!(lw.label_pairs(), vec![(1, 4), (2, 3)]);
        assert_eq!(lw.to_path(), p("uudd"));

        let lw = build_labeled_word(&p("uudd"), 0).unwrap();
        assert_eq!(lw.label_pairs(), vec![(1, 2), (3, 4)]);
        assert_eq!(lw.to_path(), p("udud"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(phi_r_inverse(&p("ud"), 0).unwrap(), p("ud"));
        assert_eq!(phi_r_inverse(&p("udud"), 0).unwrap(), p("uudd"));
    }

    #[test]
    fn round_trip_small() {
        for n in 0..=8 {
            for d in enumerate_paths(n).unwrap() {
                let image = phi(&d);
                assert_eq!(phi_inverse(&image), d, "{d}");
            }
        }
    }

    #[test]
    fn round_trip_with_r_small() {
        for n in 0..=7 {
            for r in 0..=n {
                for d in enumerate_paths(n).unwrap() {
                    let image = phi_r(&d, r).unwrap();
                    assert_eq!(phi_r_inverse(&image, r).unwrap(), d, "{d} r={r}");
                }
            }
        }
    }

    #[test]
    fn phi_is_injective_small() {
        for n in 0..=8 {
            let images: HashSet<DyckPath> =
                enumerate_paths(n).unwrap().map(|d| phi(&d)).collect();
            assert_eq!(images.len(), enumerate_paths(n).unwrap().count());
        }
    }

    #[test]
    fn concat_identity_base() {
        // phi(uBd) = ud phi(B)
        for b in enumerate_paths(5).unwrap() {
            let mut steps = vec![Step::Up];
            steps.extend_from_slice(b.steps());
            steps.push(Step::Down);
            let wrapped = DyckPath::from_steps_unchecked(steps);
            assert_eq!(phi(&wrapped), p("ud").concat(&phi(&b)));
        }
    }

    #[test]
    fn visit_log_shape() {
        let (_, log) = phi_r_traced(&p("uudd"), 0).unwrap();
        assert_eq!(log.len(), 4);
        assert_eq!(log[0].position, 1);
        assert!(log[0].opens);
        assert_eq!(log[1].position, 4);
        assert!(!log[1].opens);
    }
}
