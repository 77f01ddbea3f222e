//! Per-path statistics: peaks, hills, valleys, rises, returns, tunnels,
//! multitunnels, and the region-restricted variants.
//!
//! Coordinate conventions (step `k` spans `x = k-1 .. k`):
//! - a peak or hill sits at the `x`-coordinate of its top point;
//! - an odd/even rise sits at the rightmost end of its up-step;
//! - an arch sits at the `x`-coordinate of its leftmost point;
//! - a tunnel or multitunnel spans `[start_x, end_x]` and its midpoint
//!   `(start_x + end_x) / 2` is always an integer because the spanned
//!   subword is balanced.

use crate::dyck::{DyckPath, ROutOfRange, Step};
use serde::Serialize;

/// The horizontal segment under a matched up/down step pair. The steps
/// strictly between the pair form a Dyck word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Tunnel {
    pub up_position: usize,
    pub down_position: usize,
}

impl Tunnel {
    pub fn start_x(&self) -> usize {
        self.up_position - 1
    }

    pub fn end_x(&self) -> usize {
        self.down_position
    }

    pub fn midpoint_x(&self) -> usize {
        (self.start_x() + self.end_x()) / 2
    }
}

/// A horizontal segment between two path points that the path never goes
/// below: the spanned subword is a nonempty Dyck word, equivalently a
/// chain of consecutive tunnels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Multitunnel {
    pub start_x: usize,
    pub end_x: usize,
}

impl Multitunnel {
    pub fn midpoint_x(&self) -> usize {
        (self.start_x + self.end_x) / 2
    }
}

/// Tunnel midpoints classified against the vertical line `x = n + r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TunnelCounts {
    /// Midpoint exactly at `x = n + r`.
    pub at: usize,
    /// Midpoint at or left of the line (includes `at`).
    pub left_le: usize,
    /// Midpoint strictly right of the line.
    pub right: usize,
}

/// Statistics of the part of a path relative to the vertical line
/// `x = 2r`. Hills and rises are counted strictly right of the line;
/// arches are counted from `x = 2r` inclusive. The asymmetry is
/// deliberate and load-bearing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegionStats {
    pub hills_gt: usize,
    pub even_rises_gt: usize,
    pub odd_rises_gt: usize,
    pub upsteps_le: usize,
    pub arches_ge: usize,
}

/// Sliding-window counts of up-any-down patterns, plus the two
/// boundary-hill indicators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UStarD {
    /// Occurrences of `u?d` in `D` (windows overlap).
    pub mu: usize,
    /// Occurrences of `u?d` in `D` with one down-step appended.
    pub oc: usize,
    /// 1 iff `D` starts with `ud`.
    pub ih: usize,
    /// 1 iff `D` ends with a hill, i.e. its final two steps are `ud`.
    pub fh: usize,
}

/// Every statistic any generating function downstream cares about, in
/// one record. Field names double as the JSON keys and CSV columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StatProfile {
    pub n: usize,
    pub h: usize,
    pub peaks: usize,
    pub valleys: usize,
    pub ret: usize,
    pub odr: usize,
    pub er: usize,
    pub ct: usize,
    pub lt: usize,
    pub rt: usize,
    pub cmt: usize,
    pub mu: usize,
    pub oc: usize,
    pub ih: usize,
    pub fh: usize,
}

/// CSV header for Dyck-path corpus dumps. Versioned: change only with a
/// new suffix column, never by renaming.
pub const DYCK_CSV_HEADER: &str = "word,n,h,peaks,valleys,ret,odr,er,ct,lt,rt,cmt,mu,oc,ih,fh";

impl StatProfile {
    pub fn of(d: &DyckPath) -> StatProfile {
        let (odr, er) = odd_even_rises(d);
        let counts = tunnel_counts_at(d, 0).expect("r = 0 is always in range");
        let w = u_star_d(d);
        StatProfile {
            n: d.semilength(),
            h: hills(d),
            peaks: peaks(d),
            valleys: valleys(d),
            ret: returns(d),
            odr,
            er,
            ct: counts.at,
            lt: counts.left_le - counts.at,
            rt: counts.right,
            cmt: cmt_at(d, 0).expect("r = 0 is always in range"),
            mu: w.mu,
            oc: w.oc,
            ih: w.ih,
            fh: w.fh,
        }
    }

    /// One CSV row matching [`DYCK_CSV_HEADER`], word column included.
    pub fn csv_row(&self, word: &str) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            word,
            self.n,
            self.h,
            self.peaks,
            self.valleys,
            self.ret,
            self.odr,
            self.er,
            self.ct,
            self.lt,
            self.rt,
            self.cmt,
            self.mu,
            self.oc,
            self.ih,
            self.fh
        )
    }
}

/// Number of hills: peaks whose top has height 1.
pub fn hills(d: &DyckPath) -> usize {
    let mut count = 0;
    let mut height = 0usize;
    let steps = d.steps();
    for i in 0..steps.len() {
        match steps[i] {
            Step::Up => height += 1,
            Step::Down => height -= 1,
        }
        if height == 1
            && steps[i] == Step::Up
            && i + 1 < steps.len()
            && steps[i + 1] == Step::Down
        {
            count += 1;
        }
    }
    count
}

/// Number of peaks (occurrences of `ud`).
pub fn peaks(d: &DyckPath) -> usize {
    d.steps()
        .windows(2)
        .filter(|w| w[0] == Step::Up && w[1] == Step::Down)
        .count()
}

/// Number of valleys (occurrences of `du`).
pub fn valleys(d: &DyckPath) -> usize {
    d.steps()
        .windows(2)
        .filter(|w| w[0] == Step::Down && w[1] == Step::Up)
        .count()
}

/// Up-steps at odd and even positions (1-based), in that order.
pub fn odd_even_rises(d: &DyckPath) -> (usize, usize) {
    let mut odd = 0;
    let mut even = 0;
    for (i, step) in d.steps().iter().enumerate() {
        if *step == Step::Up {
            if (i + 1) % 2 == 1 {
                odd += 1;
            } else {
                even += 1;
            }
        }
    }
    (odd, even)
}

/// Number of returns: down-steps landing on the x-axis. Equals the
/// number of arches.
pub fn returns(d: &DyckPath) -> usize {
    let mut count = 0;
    let mut height = 0usize;
    for step in d.steps() {
        match step {
            Step::Up => height += 1,
            Step::Down => {
                height -= 1;
                if height == 0 {
                    count += 1;
                }
            }
        }
    }
    count
}

/// All `n` tunnels, one per up-step, ordered by up position.
pub fn tunnels(d: &DyckPath) -> Vec<Tunnel> {
    d.match_steps()
        .pairs()
        .into_iter()
        .map(|(up, down)| Tunnel {
            up_position: up,
            down_position: down,
        })
        .collect()
}

/// Classifies tunnel midpoints against the line `x = n + r`. At `r = 0`
/// this recovers the centered/left/right split: `ct = at`, `rt = right`,
/// `lt = left_le - at`.
pub fn tunnel_counts_at(d: &DyckPath, r: usize) -> Result<TunnelCounts, ROutOfRange> {
    let n = d.semilength();
    if r > n {
        return Err(ROutOfRange { r, n });
    }
    let line = n + r;
    let mut counts = TunnelCounts {
        at: 0,
        left_le: 0,
        right: 0,
    };
    for t in tunnels(d) {
        let m = t.midpoint_x();
        if m == line {
            counts.at += 1;
        }
        if m <= line {
            counts.left_le += 1;
        } else {
            counts.right += 1;
        }
    }
    Ok(counts)
}

/// All multitunnels: pairs of lattice points at equal height with the
/// path never dipping below in between, i.e. decompositions `D = ABC`
/// with `B` a nonempty Dyck word. Quadratic scan; fine at desk scale.
pub fn multitunnels(d: &DyckPath) -> Vec<Multitunnel> {
    let heights = d.heights();
    let mut out = Vec::new();
    for start in 0..heights.len() {
        let base = heights[start];
        for end in start + 1..heights.len() {
            if heights[end] < base {
                break;
            }
            if heights[end] == base {
                out.push(Multitunnel {
                    start_x: start,
                    end_x: end,
                });
            }
        }
    }
    out
}

/// Number of multitunnels with midpoint at `x = n + r`; `r = 0` gives
/// the centered multitunnel count.
pub fn cmt_at(d: &DyckPath, r: usize) -> Result<usize, ROutOfRange> {
    let n = d.semilength();
    if r > n {
        return Err(ROutOfRange { r, n });
    }
    let target = 2 * (n + r);
    Ok(multitunnels(d)
        .into_iter()
        .filter(|m| m.start_x + m.end_x == target)
        .count())
}

/// Statistics of `D` split at the vertical line `x = 2r`.
pub fn region_stats(d: &DyckPath, r: usize) -> Result<RegionStats, ROutOfRange> {
    let n = d.semilength();
    if r > n {
        return Err(ROutOfRange { r, n });
    }
    let boundary = 2 * r;
    let steps = d.steps();
    let mut stats = RegionStats {
        hills_gt: 0,
        even_rises_gt: 0,
        odd_rises_gt: 0,
        upsteps_le: 0,
        arches_ge: 0,
    };
    let mut height = 0usize;
    let mut arch_start = 0usize;
    for (i, step) in steps.iter().enumerate() {
        let pos = i + 1; // also the x-coordinate of the step's right end
        match step {
            Step::Up => {
                height += 1;
                if pos > boundary {
                    if pos % 2 == 1 {
                        stats.odd_rises_gt += 1;
                    } else {
                        stats.even_rises_gt += 1;
                    }
                } else {
                    stats.upsteps_le += 1;
                }
                if height == 1 && i + 1 < steps.len() && steps[i + 1] == Step::Down && pos > boundary
                {
                    stats.hills_gt += 1;
                }
            }
            Step::Down => {
                height -= 1;
                if height == 0 {
                    if arch_start >= boundary {
                        stats.arches_ge += 1;
                    }
                    arch_start = pos;
                }
            }
        }
    }
    Ok(stats)
}

/// Counts overlapping `u?d` windows in `D` and in `D` with a down-step
/// appended, plus the initial/final hill indicators.
pub fn u_star_d(d: &DyckPath) -> UStarD {
    let steps = d.steps();
    let len = steps.len();
    let mut mu = 0;
    let mut oc = 0;
    for i in 0..len {
        if steps[i] != Step::Up {
            continue;
        }
        if i + 2 < len {
            if steps[i + 2] == Step::Down {
                mu += 1;
                oc += 1;
            }
        } else if i + 2 == len {
            // Third symbol of the window is the appended down-step.
            oc += 1;
        }
    }
    let ih = usize::from(len >= 2 && steps[0] == Step::Up && steps[1] == Step::Down);
    let fh = usize::from(len >= 2 && steps[len - 2] == Step::Up && steps[len - 1] == Step::Down);
    UStarD { mu, oc, ih, fh }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck::enumerate_paths;

    fn p(w: &str) -> DyckPath {
        DyckPath::parse(w).unwrap()
    }

    #[test]
    fn hill_peak_valley_examples() {
        assert_eq!((hills(&p("ud")), peaks(&p("ud")), valleys(&p("ud"))), (1, 1, 0));
        assert_eq!(
            (hills(&p("udud")), peaks(&p("udud")), valleys(&p("udud"))),
            (2, 2, 1)
        );
        assert_eq!(
            (hills(&p("uudd")), peaks(&p("uudd")), valleys(&p("uudd"))),
            (0, 1, 0)
        );
    }

    #[test]
    fn rise_examples() {
        assert_eq!(odd_even_rises(&p("ud")), (1, 0));
        assert_eq!(odd_even_rises(&p("uudd")), (1, 1));
        assert_eq!(odd_even_rises(&p("udud")), (2, 0));
    }

    #[test]
    fn return_examples() {
        assert_eq!(returns(&p("udud")), 2);
        assert_eq!(returns(&p("uudd")), 1);
        assert_eq!(returns(&DyckPath::empty()), 0);
    }

    #[test]
    fn tunnel_midpoints() {
        let mids = |w: &str| -> Vec<usize> {
            tunnels(&p(w)).iter().map(Tunnel::midpoint_x).collect()
        };
        assert_eq!(mids("uudd"), vec![2, 2]);
        assert_eq!(mids("udud"), vec![1, 3]);
        // From matching (1,12),(2,3),(4,11),(5,6),(7,8),(9,10),(13,14):
        // (4,11) spans [3,11] and (7,8) spans [6,8], midpoints both 7.
        let long = mids("uuduudududddud");
        assert_eq!(long, vec![6, 2, 7, 5, 7, 9, 13]);
        assert_eq!(long.iter().filter(|m| **m == 7).count(), 2);
    }

    #[test]
    fn tunnel_count_examples() {
        let counts = tunnel_counts_at(&p("uudd"), 0).unwrap();
        assert_eq!((counts.at, counts.left_le, counts.right), (2, 2, 0));

        let counts = tunnel_counts_at(&p("udud"), 0).unwrap();
        assert_eq!((counts.at, counts.left_le, counts.right), (0, 1, 1));

        let counts = tunnel_counts_at(&p("uuduudududddud"), 0).unwrap();
        assert_eq!(counts.at, 2);

        assert!(tunnel_counts_at(&p("ud"), 2).is_err());
    }

    #[test]
    fn multitunnel_examples() {
        assert_eq!(cmt_at(&p("uudd"), 0).unwrap(), 2);
        assert_eq!(cmt_at(&p("udud"), 0).unwrap(), 1);
        assert_eq!(cmt_at(&p("ud"), 0).unwrap(), 1);
        assert_eq!(multitunnels(&p("udud")).len(), 3);
    }

    #[test]
    fn region_examples() {
        for d in enumerate_paths(5).unwrap() {
            let s = region_stats(&d, 0).unwrap();
            assert_eq!(s.hills_gt, hills(&d));
            assert_eq!(s.upsteps_le, 0);
            assert_eq!(s.arches_ge, returns(&d));
        }
        let s = region_stats(&p("udud"), 1).unwrap();
        assert_eq!(s.hills_gt, 1);
        assert_eq!(s.arches_ge, 1);
        let s = region_stats(&p("uudd"), 1).unwrap();
        assert_eq!(s.upsteps_le, 2);
        assert_eq!(s.odd_rises_gt, 0);
        assert_eq!(s.even_rises_gt, 0);
    }

    #[test]
    fn u_star_d_examples() {
        let w = u_star_d(&p("ud"));
        assert_eq!((w.mu, w.oc, w.ih, w.fh), (0, 1, 1, 1));
        let w = u_star_d(&p("uudd"));
        assert_eq!((w.mu, w.oc), (2, 2));
        // Windows of "udud" are (u,d,u) and (d,u,d): no u?d inside, one
        // completed by the appended down-step.
        let w = u_star_d(&p("udud"));
        assert_eq!((w.mu, w.oc, w.ih, w.fh), (0, 1, 1, 1));
    }

    #[test]
    fn profile_identities_hold() {
        for n in 0..=7 {
            for d in enumerate_paths(n).unwrap() {
                let s = StatProfile::of(&d);
                assert_eq!(s.lt + s.ct + s.rt, n, "{d}");
                assert_eq!(s.odr + s.er, n, "{d}");
                assert_eq!(tunnels(&d).len(), n, "{d}");
                if !d.is_empty() {
                    assert_eq!(s.peaks, s.valleys + 1, "{d}");
                    assert!(s.ret >= 1, "{d}");
                }
                assert!(s.ih <= s.h && s.fh <= s.h, "{d}");
                assert!(s.oc >= s.mu && s.oc <= s.mu + 1, "{d}");
                // The appended window completes exactly when D ends in a
                // hill, so oc - mu = fh.
                assert_eq!(s.oc, s.mu + s.fh, "{d}");
            }
        }
    }

    #[test]
    fn tunnel_counts_partition_for_all_r() {
        for n in 0..=6 {
            for d in enumerate_paths(n).unwrap() {
                for r in 0..=n {
                    let c = tunnel_counts_at(&d, r).unwrap();
                    assert_eq!(c.left_le + c.right, n, "{d} r={r}");
                    assert!(c.at <= c.left_le);
                }
            }
        }
    }

    #[test]
    fn profile_serializes_with_short_keys() {
        let s = StatProfile::of(&p("uudd"));
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["n"], 2);
        assert_eq!(json["ct"], 2);
        assert_eq!(json["cmt"], 2);
        assert_eq!(json["h"], 0);
        assert_eq!(json["er"], 1);
    }

    #[test]
    fn csv_header_is_pinned() {
        assert_eq!(
            DYCK_CSV_HEADER,
            "word,n,h,peaks,valleys,ret,odr,er,ct,lt,rt,cmt,mu,oc,ih,fh"
        );
        let s = StatProfile::of(&p("ud"));
        assert_eq!(s.csv_row("ud"), "ud,1,1,1,0,1,1,0,1,0,0,1,0,1,1,1");
    }
}
