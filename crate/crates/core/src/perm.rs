//! Pattern-avoiding permutations, their statistics, and the two
//! array-walk bijections onto Dyck paths.
//!
//! A permutation is stored in one-line notation over `{1..n}`. The
//! staircase bijection (here `rs`) sends 321-avoiders to Dyck paths so
//! that `i` is a fixed point exactly when the path has a hill topped at
//! `x = 2i-1`; the Krattenthaler-style walk (`kra`) sends 132-avoiders
//! to Dyck paths so that fixed points, excedances, and descents become
//! centered tunnels, right tunnels, and valleys.

use crate::dyck::{CapExceeded, DyckPath, ROutOfRange, Step};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Default ceiling for [`avoiders`]; the naive filter walks all `n!`
/// permutations.
pub const DEFAULT_PERM_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("pattern of length {pattern} longer than host of length {host}")]
    PatternTooLong { pattern: usize, host: usize },
    #[error("permutation {0} contains the pattern 321")]
    NotAvoiding321(String),
    #[error("permutation {0} contains the pattern 132")]
    NotAvoiding132(String),
    #[error("invalid permutation: {0}")]
    BadWord(String),
    #[error(transparent)]
    CapExceeded(#[from] CapExceeded),
    #[error(transparent)]
    ROutOfRange(#[from] ROutOfRange),
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// Validates that `values` is a rearrangement of `1..=n`.
    pub fn from_values(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::BadWord(format!("{values:?}")));
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    /// Parses one-line notation: plain digits for `n <= 9` (e.g.
    /// `67435281`), comma-separated beyond.
    pub fn parse(text: &str) -> Result<Self, PermError> {
        let text = text.trim();
        let values: Vec<usize> = if text.contains(',') {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|_| PermError::BadWord(text.to_string()))
                })
                .collect::<Result<_, _>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|d| *d >= 1)
                        .map(|d| d as usize)
                        .ok_or_else(|| PermError::BadWord(text.to_string()))
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::from_values(values)
    }

    /// One-line notation: digit string for `n <= 9`, comma-separated
    /// beyond.
    pub fn render(&self) -> String {
        if self.len() <= 9 {
            self.values.iter().map(|v| v.to_string()).collect()
        } else {
            self.values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Position of value `v` (1-based both ways).
    pub fn position_of(&self, v: usize) -> usize {
        self.values.iter().position(|x| *x == v).expect("value in range") + 1
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({})", self.render())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Fixed points, excedances, and descents of one permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PermStats {
    pub fp: usize,
    pub exc: usize,
    pub des: usize,
}

/// CSV header for permutation corpus dumps.
pub const PERM_CSV_HEADER: &str = "perm,n,fp,exc,des";

impl PermStats {
    pub fn csv_row(&self, perm: &Permutation) -> String {
        format!(
            "{},{},{},{},{}",
            perm.render(),
            perm.len(),
            self.fp,
            self.exc,
            self.des
        )
    }
}

/// Definition scan for fp/exc/des.
pub fn stats(pi: &Permutation) -> PermStats {
    let n = pi.len();
    let mut fp = 0;
    let mut exc = 0;
    let mut des = 0;
    for i in 1..=n {
        let v = pi.at(i);
        if v == i {
            fp += 1;
        }
        if v > i {
            exc += 1;
        }
        if i < n && v > pi.at(i + 1) {
            des += 1;
        }
    }
    PermStats { fp, exc, des }
}

/// Number of positions with `pi_i = i + r`.
pub fn alpha_r(pi: &Permutation, r: usize) -> usize {
    (1..=pi.len()).filter(|&i| pi.at(i) == i + r).count()
}

/// Number of fixed points at positions greater than `r`.
pub fn beta_r(pi: &Permutation, r: usize) -> usize {
    (1..=pi.len()).filter(|&i| i > r && pi.at(i) == i).count()
}

/// True iff some subsequence of `pi` is order-isomorphic to `sigma`.
pub fn contains(pi: &Permutation, sigma: &Permutation) -> Result<bool, PermError> {
    let n = pi.len();
    let m = sigma.len();
    if m > n {
        return Err(PermError::PatternTooLong {
            pattern: m,
            host: n,
        });
    }
    if m == 0 {
        return Ok(true);
    }
    // Depth-first choice of indices with the order-isomorphism enforced
    // pairwise against the already-chosen prefix. Patterns here are
    // short, so no cleverness is warranted.
    fn search(pi: &[usize], sigma: &[usize], chosen: &mut Vec<usize>, start: usize) -> bool {
        let k = chosen.len();
        if k == sigma.len() {
            return true;
        }
        for idx in start..pi.len() {
            if pi.len() - idx < sigma.len() - k {
                return false;
            }
            let consistent = chosen.iter().enumerate().all(|(j, &prev)| {
                (pi[prev] < pi[idx]) == (sigma[j] < sigma[k])
            });
            if consistent {
                chosen.push(idx);
                if search(pi, sigma, chosen, idx + 1) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::with_capacity(m);
    Ok(search(pi.values(), sigma.values(), &mut chosen, 0))
}

/// True iff `pi` avoids `sigma`.
pub fn avoids(pi: &Permutation, sigma: &Permutation) -> bool {
    if sigma.len() > pi.len() {
        return true;
    }
    !contains(pi, sigma).expect("length checked")
}

/// All `sigma`-avoiding permutations of `{1..n}` by brute-force filter
/// over all `n!` permutations, in lexicographic order.
pub fn avoiders_naive(
    n: usize,
    pattern: &Permutation,
    cap: usize,
) -> Result<Vec<Permutation>, PermError> {
    if n > cap {
        return Err(PermError::CapExceeded(CapExceeded { requested: n, cap }));
    }
    let mut values: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    loop {
        let candidate = Permutation {
            values: values.clone(),
        };
        if avoids(&candidate, pattern) {
            out.push(candidate);
        }
        if !next_permutation(&mut values) {
            break;
        }
    }
    Ok(out)
}

/// All `sigma`-avoiding permutations of `{1..n}` in lexicographic
/// order, using the bijective generators for the patterns 321 and 132
/// and the naive filter otherwise. Both routes agree; that agreement is
/// itself under test.
pub fn avoiders(n: usize, pattern: &Permutation, cap: usize) -> Result<Vec<Permutation>, PermError> {
    if n > cap {
        return Err(PermError::CapExceeded(CapExceeded { requested: n, cap }));
    }
    let fast: Option<fn(&DyckPath) -> Permutation> = match pattern.values() {
        [3, 2, 1] => Some(rs_inverse),
        [1, 3, 2] => Some(kra_inverse),
        _ => None,
    };
    match fast {
        Some(from_path) => {
            let mut out: Vec<Permutation> = crate::dyck::enumerate_paths_capped(n, cap)?
                .map(|d| from_path(&d))
                .collect();
            out.sort();
            Ok(out)
        }
        None => avoiders_naive(n, pattern, cap),
    }
}

/// In-place lexicographic successor; false when `values` was the last.
fn next_permutation(values: &mut [usize]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let mut i = values.len() - 1;
    while i > 0 && values[i - 1] >= values[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = values.len() - 1;
    while values[j] <= values[i - 1] {
        j -= 1;
    }
    values.swap(i - 1, j);
    values[i..].reverse();
    true
}

/// Staircase walk from a 321-avoiding permutation to a Dyck path.
///
/// Row `i`'s down-step sits at column `x_i = min over k >= i of
/// (pi_k - 1)`, the rightmost position that keeps every cross strictly
/// to the right of the walk; the word reads a `u` per row and a `d` per
/// column crossed.
pub fn rs(pi: &Permutation) -> Result<DyckPath, PermError> {
    if !avoids(pi, &Permutation::from_values(vec![3, 2, 1]).unwrap()) {
        return Err(PermError::NotAvoiding321(pi.render()));
    }
    let n = pi.len();
    let mut x = vec![0usize; n + 1];
    let mut min_so_far = usize::MAX;
    for i in (1..=n).rev() {
        min_so_far = min_so_far.min(pi.at(i) - 1);
        x[i] = min_so_far;
    }
    let mut steps = Vec::with_capacity(2 * n);
    let mut col = 0usize;
    for i in 1..=n {
        for _ in col..x[i] {
            steps.push(Step::Down);
        }
        col = x[i];
        steps.push(Step::Up);
    }
    for _ in col..n {
        steps.push(Step::Down);
    }
    Ok(DyckPath::from_steps_unchecked(steps))
}

/// Inverse staircase walk. Rows where the walk turns right get the
/// value just right of the walk (these are the weakly deficient
/// entries); the remaining rows take the leftover values in increasing
/// order, which keeps both subsequences increasing and hence the result
/// 321-avoiding.
pub fn rs_inverse(d: &DyckPath) -> Permutation {
    let n = d.semilength();
    // x[i] = number of down-steps before the i-th up-step.
    let mut x = Vec::with_capacity(n + 2);
    x.push(0usize); // unused slot 0
    let mut downs = 0usize;
    for step in d.steps() {
        match step {
            Step::Down => downs += 1,
            Step::Up => x.push(downs),
        }
    }
    x.push(n); // sentinel: the walk ends at column n

    let mut values = vec![0usize; n + 1];
    let mut used = vec![false; n + 1];
    for i in 1..=n {
        if x[i + 1] > x[i] {
            values[i] = x[i] + 1;
            used[x[i] + 1] = true;
        }
    }
    let mut free = (1..=n).filter(|v| !used[*v]);
    for slot in values.iter_mut().skip(1) {
        if *slot == 0 {
            *slot = free.next().expect("one leftover value per open row");
        }
    }
    values.remove(0);
    Permutation { values }
}

/// Krattenthaler-style walk from a 132-avoiding permutation to a Dyck
/// path. Column `j` is crossed at height `h_j = max over values k <= j
/// of (n + 1 - position_of(k))`, the lowest walk keeping every cross
/// below it; the word reads a `u` per unit climbed and a `d` per column.
pub fn kra(pi: &Permutation) -> Result<DyckPath, PermError> {
    if !avoids(pi, &Permutation::from_values(vec![1, 3, 2]).unwrap()) {
        return Err(PermError::NotAvoiding132(pi.render()));
    }
    let n = pi.len();
    let mut position_of = vec![0usize; n + 1];
    for i in 1..=n {
        position_of[pi.at(i)] = i;
    }
    let mut steps = Vec::with_capacity(2 * n);
    let mut height = 0usize;
    let mut needed = 0usize;
    for j in 1..=n {
        needed = needed.max(n + 1 - position_of[j]);
        for _ in height..needed {
            steps.push(Step::Up);
        }
        height = needed;
        steps.push(Step::Down);
    }
    Ok(DyckPath::from_steps_unchecked(steps))
}

/// Inverse Krattenthaler walk: row by row, place a cross in the
/// leftmost column right of the walk that is still free.
pub fn kra_inverse(d: &DyckPath) -> Permutation {
    let n = d.semilength();
    // h[j] = number of up-steps before the j-th down-step.
    let mut h = Vec::with_capacity(n + 1);
    h.push(0usize); // unused slot 0
    let mut ups = 0usize;
    for step in d.steps() {
        match step {
            Step::Up => ups += 1,
            Step::Down => h.push(ups),
        }
    }

    let mut values = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    for i in 1..=n {
        let floor = n + 1 - i;
        let j = (1..=n)
            .find(|&j| !used[j] && h[j] >= floor)
            .expect("walk leaves room for one cross per row");
        used[j] = true;
        values.push(j);
    }
    Permutation { values }
}

/// The composite bijection from 132-avoiders to 321-avoiders through
/// Dyck paths: `rs_inverse(phi_r(kra(pi), r))`. It carries the
/// diagonal-offset statistic of the source onto late fixed points of
/// the target: `beta_r(composite(pi, r)) == alpha_r(pi)`.
pub fn composite(pi: &Permutation, r: usize) -> Result<Permutation, PermError> {
    let path = kra(pi)?;
    let mapped = crate::zigzag::phi_r(&path, r)?;
    Ok(rs_inverse(&mapped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats as dstats;
    use std::collections::HashSet;

    fn perm(text: &str) -> Permutation {
        Permutation::parse(text).unwrap()
    }

    /// Independent Catalan oracle: C_{n+1} = sum C_i C_{n-i}.
    fn catalan(n: usize) -> usize {
        let mut c = vec![1usize];
        for m in 1..=n {
            c.push((0..m).map(|i| c[i] * c[m - 1 - i]).sum());
        }
        c[n]
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(perm("67435281").values(), &[6, 7, 4, 3, 5, 2, 8, 1]);
        assert_eq!(perm("67435281").render(), "67435281");
        let big = Permutation::from_values((1..=12).collect()).unwrap();
        assert_eq!(big.render(), "1,2,3,4,5,6,7,8,9,10,11,12");
        assert_eq!(Permutation::parse("1,2,3").unwrap().values(), &[1, 2, 3]);
        assert!(Permutation::parse("121").is_err());
        assert!(Permutation::parse("13").is_err());
    }

    #[test]
    fn containment_examples() {
        let sigma = perm("132");
        assert!(contains(&perm("24531"), &sigma).unwrap());
        assert!(!contains(&perm("42351"), &sigma).unwrap());
        assert!(!contains(&Permutation::identity(5), &perm("21")).unwrap());
        assert!(matches!(
            contains(&perm("12"), &perm("123")),
            Err(PermError::PatternTooLong { .. })
        ));
    }

    #[test]
    fn avoider_counts() {
        let p321 = perm("321");
        let p132 = perm("132");
        assert_eq!(avoiders(3, &p321, 10).unwrap().len(), 5);
        assert_eq!(avoiders(3, &p132, 10).unwrap().len(), 5);
        assert_eq!(avoiders(8, &p132, 10).unwrap().len(), catalan(8));
        assert_eq!(catalan(8), 1430);
        assert!(avoiders(11, &p132, 10).is_err());
    }

    #[test]
    fn fast_and_naive_generators_agree() {
        for pattern in ["321", "132"] {
            let sigma = perm(pattern);
            for n in 0..=6 {
                assert_eq!(
                    avoiders(n, &sigma, 10).unwrap(),
                    avoiders_naive(n, &sigma, 10).unwrap(),
                    "pattern {pattern}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn stats_examples() {
        let s = stats(&Permutation::identity(4));
        assert_eq!((s.fp, s.exc, s.des), (4, 0, 0));
        let s = stats(&perm("67435281"));
        assert_eq!((s.fp, s.exc, s.des), (1, 4, 4));
        assert_eq!(alpha_r(&perm("23147586"), 1), 3);
        assert_eq!(alpha_r(&perm("23147586"), 0), 1);
        assert_eq!(beta_r(&perm("23147586"), 0), 1);
        assert_eq!(beta_r(&perm("23147586"), 4), 0);
    }

    #[test]
    fn rs_examples() {
        for n in 0..=6 {
            let staircase: String = "ud".repeat(n);
            assert_eq!(
                rs(&Permutation::identity(n)).unwrap().render(),
                staircase
            );
        }
        // Hills of the image sit exactly at x = 2i - 1 over fixed points.
        let pi = perm("23147586");
        let d = rs(&pi).unwrap();
        let expected_hills: Vec<usize> = (1..=8).filter(|&i| pi.at(i) == i).map(|i| 2 * i - 1).collect();
        let hills = hill_positions(&d);
        assert_eq!(hills, expected_hills);

        assert!(matches!(
            rs(&perm("321")),
            Err(PermError::NotAvoiding321(_))
        ));
    }

    /// x-coordinates of hill tops, by definition scan.
    fn hill_positions(d: &DyckPath) -> Vec<usize> {
        let steps = d.steps();
        let mut height = 0usize;
        let mut out = Vec::new();
        for i in 0..steps.len() {
            match steps[i] {
                Step::Up => height += 1,
                Step::Down => height -= 1,
            }
            if steps[i] == Step::Up
                && height == 1
                && i + 1 < steps.len()
                && steps[i + 1] == Step::Down
            {
                out.push(i + 1);
            }
        }
        out
    }

    #[test]
    fn rs_is_bijective_on_small_sizes() {
        for n in 0..=6 {
            let avoid = avoiders_naive(n, &perm("321"), 10).unwrap();
            let images: HashSet<DyckPath> =
                avoid.iter().map(|pi| rs(pi).unwrap()).collect();
            assert_eq!(images.len(), catalan(n), "n = {n}");
            for pi in &avoid {
                assert_eq!(&rs_inverse(&rs(pi).unwrap()), pi);
            }
        }
        assert_eq!(
            avoiders_naive(6, &perm("321"), 10).unwrap().len(),
            132
        );
    }

    #[test]
    fn kra_examples() {
        for n in 0..=6 {
            let expected = format!("{}{}", "u".repeat(n), "d".repeat(n));
            assert_eq!(kra(&Permutation::identity(n)).unwrap().render(), expected);
        }
        let pi = perm("67435281");
        let d = kra(&pi).unwrap();
        let counts = dstats::tunnel_counts_at(&d, 0).unwrap();
        assert_eq!(counts.at, 1);
        assert_eq!(counts.right, 4);
        assert_eq!(dstats::valleys(&d), 4);

        assert!(matches!(
            kra(&perm("132")),
            Err(PermError::NotAvoiding132(_))
        ));
    }

    #[test]
    fn kra_round_trips() {
        for n in 0..=6 {
            for pi in avoiders_naive(n, &perm("132"), 10).unwrap() {
                assert_eq!(kra_inverse(&kra(&pi).unwrap()), pi);
            }
            for d in crate::dyck::enumerate_paths(n).unwrap() {
                assert_eq!(kra(&kra_inverse(&d)).unwrap(), d);
                assert_eq!(rs(&rs_inverse(&d)).unwrap(), d);
            }
        }
    }

    #[test]
    fn composite_examples() {
        for n in 0..=6 {
            let image = composite(&Permutation::identity(n), 0).unwrap();
            assert_eq!(beta_r(&image, 0), n);
        }
        for n in 0..=6 {
            for r in 0..=n {
                for pi in avoiders_naive(n, &perm("132"), 10).unwrap() {
                    let image = composite(&pi, r).unwrap();
                    assert!(avoids(&image, &perm("321")), "{pi} r={r} -> {image}");
                    assert_eq!(beta_r(&image, r), alpha_r(&pi, r), "{pi} r={r}");
                }
            }
        }
    }

    #[test]
    fn perm_csv_and_json() {
        assert_eq!(PERM_CSV_HEADER, "perm,n,fp,exc,des");
        let pi = perm("67435281");
        let s = stats(&pi);
        assert_eq!(s.csv_row(&pi), "67435281,8,1,4,4");
        assert_eq!(
            serde_json::to_value(s).unwrap(),
            serde_json::json!({"fp": 1, "exc": 4, "des": 4})
        );
    }
}
