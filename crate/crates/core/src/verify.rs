//! The verification suites behind `tunnelkit verify`: exhaustive
//! bijection checks, statistic-transport checks, and closed-form
//! generating functions against the enumeration oracle. Every suite
//! returns a deterministic report; exit status maps to whether any
//! failure was recorded.

use crate::config::Caps;
use crate::dyck::{enumerate_paths_capped, CapExceeded, DyckPath, Step};
use crate::perm::{self, PermError, Permutation};
use crate::series::{brute, gf, MultiPoly, TruncatedSeries, Var};
use crate::stats;
use crate::zigzag;
use num_rational::BigRational;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite '{0}'")]
pub struct UnknownSuite(pub String);

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    UnknownSuite(#[from] UnknownSuite),
    #[error(transparent)]
    Cap(#[from] CapExceeded),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// One failed check: the offending input and both sides of the
/// comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one suite run. Failures empty iff the suite passed.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub suite: String,
    pub params: String,
    pub checks_run: usize,
    pub failures: Vec<Failure>,
    pub elapsed: Duration,
}

impl VerificationReport {
    fn start(suite: &str, params: String) -> (Self, Instant) {
        (
            VerificationReport {
                suite: suite.to_string(),
                params,
                checks_run: 0,
                failures: Vec::new(),
                elapsed: Duration::ZERO,
            },
            Instant::now(),
        )
    }

    fn finish(mut self, started: Instant) -> Self {
        self.elapsed = started.elapsed();
        self
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check<T: PartialEq + fmt::Debug>(&mut self, input: impl fmt::Display, expected: T, actual: T) {
        self.checks_run += 1;
        if expected != actual {
            self.failures.push(Failure {
                input: input.to_string(),
                expected: format!("{expected:?}"),
                actual: format!("{actual:?}"),
            });
        }
    }

    /// Compares two series coefficient by coefficient, one check each.
    fn check_series(&mut self, label: &str, expected: &TruncatedSeries, actual: &TruncatedSeries) {
        let order = expected.order().min(actual.order());
        for k in 0..=order {
            self.check(
                format!("{label}: coefficient of z^{k}"),
                expected.coeff(k),
                actual.coeff(k),
            );
        }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite={} params=[{}] checks_run={} failures={} result={}",
            self.suite,
            self.params,
            self.checks_run,
            self.failures.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        const SHOWN: usize = 20;
        for failure in self.failures.iter().take(SHOWN) {
            writeln!(
                f,
                "  FAIL input={} expected={} actual={}",
                failure.input, failure.expected, failure.actual
            )?;
        }
        if self.failures.len() > SHOWN {
            writeln!(f, "  ... and {} more", self.failures.len() - SHOWN)?;
        }
        Ok(())
    }
}

/// The named suites of the CLI grammar.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Theorem3,
    Theorem6,
    Lemma1,
    Lemma5,
    Bijectivity,
    Rs,
    Kra,
    AlphaBeta,
    FpExc,
    GfG,
    GfF,
    GfL,
    GfJ,
    All,
}

impl Suite {
    /// Every concrete suite, in the order `all` runs them.
    pub const ALL: [Suite; 13] = [
        Suite::Bijectivity,
        Suite::Theorem3,
        Suite::Lemma1,
        Suite::Lemma5,
        Suite::Theorem6,
        Suite::Rs,
        Suite::Kra,
        Suite::AlphaBeta,
        Suite::FpExc,
        Suite::GfG,
        Suite::GfF,
        Suite::GfL,
        Suite::GfJ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Theorem3 => "theorem3",
            Suite::Theorem6 => "theorem6",
            Suite::Lemma1 => "lemma1",
            Suite::Lemma5 => "lemma5",
            Suite::Bijectivity => "bijectivity",
            Suite::Rs => "rs",
            Suite::Kra => "kra",
            Suite::AlphaBeta => "alpha-beta",
            Suite::FpExc => "fp-exc",
            Suite::GfG => "gf-G",
            Suite::GfF => "gf-F",
            Suite::GfL => "gf-L",
            Suite::GfJ => "gf-J",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, UnknownSuite> {
        let lower = s.to_ascii_lowercase();
        Suite::ALL
            .iter()
            .copied()
            .chain(std::iter::once(Suite::All))
            .find(|suite| suite.name().eq_ignore_ascii_case(&lower))
            .ok_or_else(|| UnknownSuite(s.to_string()))
    }
}

/// Optional overrides for the per-suite defaults.
#[derive(Clone, Copy, Debug, Default)]
pub struct SuiteParams {
    pub max_n: Option<usize>,
    pub max_r: Option<usize>,
    pub order: Option<usize>,
}

/// Runs one suite (or all of them) with defaults filled in from the
/// suite's exhaustively-tested ranges.
pub fn run(suite: Suite, params: SuiteParams, caps: Caps) -> Result<Vec<VerificationReport>, VerifyError> {
    let cap = caps.enumeration_cap;
    let reports = match suite {
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::ALL {
                out.extend(run(s, params, caps)?);
            }
            return Ok(out);
        }
        Suite::Bijectivity => vec![bijectivity(
            params.max_n.unwrap_or(12),
            params.max_r.unwrap_or(10),
            cap,
        )?],
        Suite::Theorem3 => vec![tunnel_correspondences(params.max_n.unwrap_or(12), cap)?],
        Suite::Theorem6 => vec![region_correspondences(params.max_n.unwrap_or(10), cap)?],
        Suite::Lemma1 => vec![concat_identity(params.max_n.unwrap_or(8), 0, "lemma1", cap)?],
        Suite::Lemma5 => vec![concat_identity(
            params.max_n.unwrap_or(8),
            params.max_r.unwrap_or(3),
            "lemma5",
            cap,
        )?],
        Suite::Rs => vec![staircase_walk_structure(params.max_n.unwrap_or(9), cap)?],
        Suite::Kra => vec![array_walk_structure(params.max_n.unwrap_or(9), cap)?],
        Suite::AlphaBeta => vec![offset_statistic_transport(params.max_n.unwrap_or(8), cap)?],
        Suite::FpExc => vec![joint_fp_exc_distribution(
            params.max_n.unwrap_or(8),
            caps.perm_cap,
        )?],
        Suite::GfG => vec![tunnel_profile_gf(params.order.unwrap_or(8), cap)?],
        Suite::GfF => vec![region_profile_gf(params.order.unwrap_or(7), cap)?],
        Suite::GfL => vec![fp_exc_des_gf(params.order.unwrap_or(8), caps.perm_cap)?],
        Suite::GfJ => vec![window_gf(params.order.unwrap_or(8), cap)?],
    };
    Ok(reports)
}

/// The zigzag maps are bijections: exhaustive round-trips and image
/// counting, the base map through `max_n`, the offset family through
/// `max_n_offset` for every `r`.
pub fn bijectivity(max_n: usize, max_n_offset: usize, cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) = VerificationReport::start(
        "bijectivity",
        format!("max_n={max_n} max_n_offset={max_n_offset}"),
    );
    for n in 0..=max_n {
        let mut images: HashSet<DyckPath> = HashSet::new();
        let mut count = 0usize;
        for d in enumerate_paths_capped(n, cap)? {
            let image = zigzag::phi(&d);
            let back = zigzag::phi_inverse(&image);
            images.insert(image);
            count += 1;
            report.check(format!("round-trip of {d}"), &d, &back);
        }
        report.check(format!("distinct images over n={n}"), count, images.len());
    }
    for n in 0..=max_n_offset {
        for r in 0..=n {
            let mut images: HashSet<DyckPath> = HashSet::new();
            let mut count = 0usize;
            for d in enumerate_paths_capped(n, cap)? {
                let image = zigzag::phi_r(&d, r).expect("r <= n");
                let back = zigzag::phi_r_inverse(&image, r).expect("r <= n");
                images.insert(image);
                count += 1;
                report.check(format!("round-trip of {d} at r={r}"), &d, &back);
            }
            report.check(
                format!("distinct images over n={n} r={r}"),
                count,
                images.len(),
            );
        }
    }
    Ok(report.finish(started))
}

/// Statistic transport of the base map: centered tunnels become hills,
/// right tunnels even rises, weak-left tunnels odd rises, centered
/// multitunnels returns, and peaks become up-any-down windows of the
/// image with a down-step appended.
pub fn tunnel_correspondences(max_n: usize, cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) =
        VerificationReport::start("theorem3", format!("max_n={max_n}"));
    for n in 0..=max_n {
        for d in enumerate_paths_capped(n, cap)? {
            let counts = stats::tunnel_counts_at(&d, 0).expect("r = 0");
            let cmt = stats::cmt_at(&d, 0).expect("r = 0");
            let image = zigzag::phi(&d);
            let (odr, er) = stats::odd_even_rises(&image);
            let expected = (counts.at, counts.right, counts.left_le, cmt, stats::peaks(&d));
            let actual = (
                stats::hills(&image),
                er,
                odr,
                stats::returns(&image),
                stats::u_star_d(&image).oc,
            );
            report.check(d.render(), expected, actual);
        }
    }
    Ok(report.finish(started))
}

/// Statistic transport of the offset family, for every path and every
/// line position: tunnels at/right-of/weakly-left-of `x = n + r`
/// against region statistics of the image at `x = 2r`, with the arch
/// count taken from `x >= 2r` inclusive.
pub fn region_correspondences(max_n: usize, cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) =
        VerificationReport::start("theorem6", format!("max_n={max_n}"));
    for n in 0..=max_n {
        for d in enumerate_paths_capped(n, cap)? {
            for r in 0..=n {
                let counts = stats::tunnel_counts_at(&d, r).expect("r <= n");
                let cmt = stats::cmt_at(&d, r).expect("r <= n");
                let image = zigzag::phi_r(&d, r).expect("r <= n");
                let region = stats::region_stats(&image, r).expect("r <= n");
                let expected = (counts.at, counts.right, counts.left_le, cmt);
                let actual = (
                    region.hills_gt,
                    region.even_rises_gt,
                    region.odd_rises_gt + region.upsteps_le,
                    region.arches_ge,
                );
                report.check(format!("{d} r={r}"), expected, actual);
            }
        }
    }
    Ok(report.finish(started))
}

/// Concatenation identity: for every decomposition `D = A B C` with `B`
/// a Dyck factor and `len(A) = len(C) + 2r`, the image of `D`
/// factorizes as the image of `AC` followed by the base image of `B`.
/// `max_r = 0` is the base identity.
pub fn concat_identity(
    max_n: usize,
    max_r: usize,
    suite_name: &str,
    cap: usize,
) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) =
        VerificationReport::start(suite_name, format!("max_n={max_n} max_r={max_r}"));
    for n in 0..=max_n {
        for d in enumerate_paths_capped(n, cap)? {
            let steps = d.steps();
            let heights = d.heights();
            let len = 2 * n;
            for start in 0..=len {
                for end in start..=len {
                    if heights[end] != heights[start] {
                        continue;
                    }
                    if (start..end).any(|k| heights[k + 1] < heights[start]) {
                        continue;
                    }
                    // len(A) = start, len(C) = len - end.
                    let Some(doubled_r) = start.checked_sub(len - end) else {
                        continue;
                    };
                    if doubled_r % 2 != 0 || doubled_r / 2 > max_r {
                        continue;
                    }
                    let r = doubled_r / 2;
                    let factor =
                        DyckPath::from_steps(steps[start..end].to_vec()).expect("a Dyck factor");
                    let mut outer_steps = steps[..start].to_vec();
                    outer_steps.extend_from_slice(&steps[end..]);
                    let outer = DyckPath::from_steps(outer_steps).expect("a Dyck remainder");
                    let expected = zigzag::phi_r(&d, r).expect("r <= n");
                    let actual = zigzag::phi_r(&outer, r)
                        .expect("r <= semilength of the remainder")
                        .concat(&zigzag::phi(&factor));
                    report.check(
                        format!("{d} = A[0..{start}] B[{start}..{end}] C, r={r}"),
                        expected,
                        actual,
                    );
                }
            }
        }
    }
    Ok(report.finish(started))
}

/// x-coordinates of hill tops.
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

/// Staircase walk: round trips both ways, image counting, and the
/// fixed-point-to-hill law (`pi_i = i` iff a hill tops at `x = 2i-1`).
pub fn staircase_walk_structure(max_n: usize, cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) = VerificationReport::start("rs", format!("max_n={max_n}"));
    for n in 0..=max_n {
        let mut count = 0usize;
        let mut images: HashSet<DyckPath> = HashSet::new();
        for d in enumerate_paths_capped(n, cap)? {
            let pi = perm::rs_inverse(&d);
            let back = perm::rs(&pi).expect("inverse image avoids the pattern");
            report.check(format!("rs round-trip through {d}"), &d, &back);
            let expected: Vec<usize> = (1..=n)
                .filter(|&i| pi.at(i) == i)
                .map(|i| 2 * i - 1)
                .collect();
            report.check(
                format!("hill law for {pi}"),
                expected,
                hill_positions(&d),
            );
            images.insert(d);
            count += 1;
        }
        report.check(format!("distinct paths at n={n}"), count, images.len());
    }
    Ok(report.finish(started))
}

/// Array walk: round trips both ways plus the statistic laws
/// (fixed points = centered tunnels, excedances = right tunnels,
/// descents = valleys, and the full offset profile
/// `alpha_r = tunnels at x = n + r` for every `r`).
pub fn array_walk_structure(max_n: usize, cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) = VerificationReport::start("kra", format!("max_n={max_n}"));
    for n in 0..=max_n {
        for d in enumerate_paths_capped(n, cap)? {
            let pi = perm::kra_inverse(&d);
            let back = perm::kra(&pi).expect("inverse image avoids the pattern");
            report.check(format!("kra round-trip through {d}"), &d, &back);
            let s = perm::stats(&pi);
            let counts = stats::tunnel_counts_at(&d, 0).expect("r = 0");
            let expected = (s.fp, s.exc, s.des);
            let actual = (counts.at, counts.right, stats::valleys(&d));
            report.check(format!("statistics of {pi}"), expected, actual);
            let alpha: Vec<usize> = (0..=n).map(|r| perm::alpha_r(&pi, r)).collect();
            let at_line: Vec<usize> = (0..=n)
                .map(|r| stats::tunnel_counts_at(&d, r).expect("r <= n").at)
                .collect();
            report.check(format!("offset profile of {pi}"), alpha, at_line);
        }
    }
    Ok(report.finish(started))
}

/// The composite map from 132-avoiders to 321-avoiders transports the
/// offset statistic pointwise, is injective, and equidistributes the
/// two statistics across the classes.
pub fn offset_statistic_transport(max_n: usize, cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) =
        VerificationReport::start("alpha-beta", format!("max_n={max_n}"));
    for n in 0..=max_n {
        let sources: Vec<Permutation> = enumerate_paths_capped(n, cap)?
            .map(|d| perm::kra_inverse(&d))
            .collect();
        let targets: Vec<Permutation> = enumerate_paths_capped(n, cap)?
            .map(|d| perm::rs_inverse(&d))
            .collect();
        for r in 0..=n {
            let mut images: HashSet<Permutation> = HashSet::new();
            let mut source_dist: BTreeMap<usize, usize> = BTreeMap::new();
            for pi in &sources {
                let image = perm::composite(pi, r).expect("source avoids the pattern");
                report.check(
                    format!("transport of {pi} at r={r}"),
                    perm::alpha_r(pi, r),
                    perm::beta_r(&image, r),
                );
                images.insert(image);
                *source_dist.entry(perm::alpha_r(pi, r)).or_default() += 1;
            }
            report.check(
                format!("injectivity at n={n} r={r}"),
                sources.len(),
                images.len(),
            );
            let mut target_dist: BTreeMap<usize, usize> = BTreeMap::new();
            for pi in &targets {
                *target_dist.entry(perm::beta_r(pi, r)).or_default() += 1;
            }
            report.check(
                format!("distribution equality at n={n} r={r}"),
                source_dist,
                target_dist,
            );
        }
    }
    Ok(report.finish(started))
}

/// Joint (fixed points, excedances) distribution over the two avoider
/// classes, with the naive factorial filter as the oracle, plus the
/// closed form for the 132 side.
pub fn joint_fp_exc_distribution(max_n: usize, perm_cap: usize) -> Result<VerificationReport, PermError> {
    let (mut report, started) =
        VerificationReport::start("fp-exc", format!("max_n={max_n}"));
    let p321 = Permutation::parse("321").expect("valid pattern");
    let p132 = Permutation::parse("132").expect("valid pattern");
    let mut brute_coeffs: Vec<MultiPoly> = Vec::with_capacity(max_n + 1);
    let one = BigRational::from_integer(1.into());
    for n in 0..=max_n {
        let a321 = perm::avoiders_naive(n, &p321, perm_cap)?;
        let a132 = perm::avoiders_naive(n, &p132, perm_cap)?;
        let dist = |set: &[Permutation]| -> BTreeMap<(usize, usize), usize> {
            let mut map = BTreeMap::new();
            for pi in set {
                let s = perm::stats(pi);
                *map.entry((s.fp, s.exc)).or_default() += 1;
            }
            map
        };
        report.check(
            format!("joint distribution at n={n}"),
            dist(&a321),
            dist(&a132),
        );
        let mut poly = MultiPoly::zero();
        for pi in &a132 {
            poly.add_term(brute::fp_exc_mono(pi), &one);
        }
        brute_coeffs.push(poly);
    }
    let brute_series = TruncatedSeries::from_coeffs(brute_coeffs);
    let closed = gf::fp_exc_series(max_n);
    report.check_series("closed form vs naive filter", &brute_series, &closed);
    Ok(report.finish(started))
}

/// Tunnel-profile generating function against the oracle, plus the
/// functional equations tying the closed forms together.
pub fn tunnel_profile_gf(order: usize, cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) =
        VerificationReport::start("gf-G", format!("order={order}"));
    let closed = gf::tunnel_profile_series(order);
    let oracle = brute::dyck_series(order, cap, brute::tunnel_profile_mono)?;
    report.check_series("tunnel profile vs enumeration", &oracle, &closed);

    let hill_closed = gf::hill_profile_series(order);
    let hill_oracle = brute::dyck_series(order, cap, brute::hill_profile_mono)?;
    report.check_series("hill profile vs enumeration", &hill_oracle, &hill_closed);

    // Functional equation of the hill profile.
    let (g1, h1) = gf::rise_pair_series(order);
    let uw = &MultiPoly::var(Var::U) * &MultiPoly::var(Var::W);
    let inner = &(&h1 - &TruncatedSeries::one(order)) + &TruncatedSeries::var(order, Var::T);
    let rhs = &TruncatedSeries::one(order) + &(&inner * &hill_closed).mul_z(1).scale_poly(&uw);
    report.check("hill profile functional equation", &hill_closed, &rhs);

    // The rise pair's mutual equations.
    let rhs_g1 = &TruncatedSeries::one(order)
        + &(&h1 * &g1).mul_z(1).scale_poly(&MultiPoly::var(Var::U));
    report.check("first rise equation", &g1, &rhs_g1);
    let rhs_h1 = &TruncatedSeries::one(order)
        + &(&g1 * &h1).mul_z(1).scale_poly(&MultiPoly::var(Var::V));
    report.check("second rise equation", &h1, &rhs_h1);

    // Closed form of the swapped specialization: 2uz H1 = 1 + (u-v)z - radical.
    let two_uz = TruncatedSeries::term(
        order,
        MultiPoly::var(Var::U).scale(&BigRational::from_integer(2.into())),
        1,
    );
    let lhs = &two_uz * &h1;
    let rhs = &(&TruncatedSeries::one(order)
        + &TruncatedSeries::term(
            order,
            &MultiPoly::var(Var::U) - &MultiPoly::var(Var::V),
            1,
        ))
        - &gf::tunnel_radical(order);
    report.check("swapped specialization closed form", &lhs, &rhs);
    Ok(report.finish(started))
}

/// Offset-profile generating function: both printed forms against each
/// other and against the triple enumeration, plus the specializations.
pub fn region_profile_gf(order: usize, cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) =
        VerificationReport::start("gf-F", format!("order={order}"));
    let rational_form = gf::region_profile_series(order);
    let radical_form = gf::region_profile_series_radical(order);
    report.check_series("rational vs radical form", &rational_form, &radical_form);

    let oracle = brute::dyck_offset_series(order, cap, brute::region_profile_mono)?;
    report.check_series("closed form vs enumeration", &oracle, &rational_form);

    // All markers at 1: (n+1) C_n.
    let ones = rational_form
        .subst_int(Var::T, 1)
        .subst_int(Var::U, 1)
        .subst_int(Var::V, 1)
        .subst_int(Var::W, 1)
        .subst_int(Var::Y, 1);
    let mut catalan = vec![BigRational::from_integer(1.into())];
    for m in 1..=order {
        let mut total = BigRational::from_integer(0.into());
        for i in 0..m {
            total += &catalan[i] * &catalan[m - 1 - i];
        }
        catalan.push(total);
    }
    for (k, c) in catalan.iter().enumerate() {
        let expected = c * BigRational::from_integer((k as i64 + 1).into());
        report.check(
            format!("count with multiplicity at z^{k}"),
            MultiPoly::constant(expected),
            ones.coeff(k).clone(),
        );
    }

    // y = 0 keeps only the r = 0 layer.
    report.check(
        "zero offset marginal",
        &rational_form.subst_int(Var::Y, 0),
        &gf::hill_profile_series(order),
    );
    Ok(report.finish(started))
}

/// Fixed-point/excedance/descent generating function: frozen leading
/// coefficients, the naive-filter oracle, and the alternate closed form
/// through the quadratic root.
pub fn fp_exc_des_gf(order: usize, perm_cap: usize) -> Result<VerificationReport, PermError> {
    let (mut report, started) =
        VerificationReport::start("gf-L", format!("order={order}"));
    let closed = gf::fp_exc_des_series(order);

    let x = MultiPoly::var(Var::X);
    let v = MultiPoly::var(Var::V);
    let p = MultiPoly::var(Var::P);
    report.check("leading coefficient", &MultiPoly::one(), closed.coeff(0));
    report.check("coefficient of z", &(&x * &p), closed.coeff(1));
    let z2 = &(&v * &p.pow(2)) + &(&x.pow(2) * &p);
    report.check("coefficient of z^2", &z2, closed.coeff(2));
    let z3 = &(&(&(&(&v.pow(2) * &p.pow(2)) + &(&v * &p.pow(2))) + &(&(&x * &v) * &p.pow(3)))
        + &(&(&x * &v) * &p.pow(2)))
        + &(&x.pow(3) * &p);
    report.check("coefficient of z^3", &z3, closed.coeff(3));

    let pattern = Permutation::parse("132").expect("valid pattern");
    let oracle = brute::avoider_series(order, perm_cap, &pattern, true, brute::fp_exc_des_mono)?;
    report.check_series("closed form vs naive filter", &oracle, &closed);

    // Alternate route: (1 - xz + xpz) / (1 - xz - z K1) with K1 the
    // root at u = 1, q = p.
    let k1 = gf::window_series_root(order)
        .expect("fixed point converges")
        .subst_int(Var::U, 1)
        .substitute(Var::Q, &p);
    let xz = TruncatedSeries::term(order, x.clone(), 1);
    let xpz = TruncatedSeries::term(order, &x * &p, 1);
    let numer = &(&TruncatedSeries::one(order) - &xz) + &xpz;
    let denom = &(&TruncatedSeries::one(order) - &xz) - &k1.mul_z(1);
    let alternate = numer.divide(&denom).expect("denominator has constant term 1");
    report.check("alternate closed form", &closed, &alternate);
    Ok(report.finish(started))
}

/// The window generating function and its quadratic root: residuals,
/// the functional equation, the specialization that reproduces the
/// descent profile, symmetry, and the swapped-root equations.
pub fn window_gf(order: usize, _cap: usize) -> Result<VerificationReport, CapExceeded> {
    let (mut report, started) =
        VerificationReport::start("gf-J", format!("order={order}"));
    let u = MultiPoly::var(Var::U);
    let v = MultiPoly::var(Var::V);
    let q = MultiPoly::var(Var::Q);
    let x = MultiPoly::var(Var::X);
    let t = MultiPoly::var(Var::T);
    let s = MultiPoly::var(Var::S);
    let one = TruncatedSeries::one(order);

    let k = gf::window_series_root(order).expect("fixed point converges");
    let bracket = gf::window_quadratic_bracket(order);
    let uz = TruncatedSeries::term(order, u.clone(), 1);
    let vz = TruncatedSeries::term(order, v.clone(), 1);
    let q2vz = TruncatedSeries::term(order, &q.pow(2) * &v, 1);
    let residual = &(&(&uz * &(&k * &k)) - &(&bracket * &k)) + &q2vz;
    report.check("root quadratic residual", &TruncatedSeries::zero(order), &residual);

    let j = gf::window_series(order);

    // The root is the boundary-marked specialization of the series
    // itself.
    let k_from_j = j
        .subst_int(Var::X, 1)
        .substitute(Var::T, &q)
        .substitute(Var::S, &q)
        .swap_vars(Var::U, Var::V);
    report.check("root matches specialization", &k, &k_from_j);

    // Functional equation with H the t = 1 specialization.
    let h = j.subst_int(Var::T, 1);
    let xtsu = &(&(&x * &t) * &s) * &u;
    let xtu = &(&x * &t) * &u;
    let rhs = &(&(&TruncatedSeries::term(order, xtsu, 1)
        + &(&h.mul_z(1)).scale_poly(&xtu))
        + &k.mul_z(1).scale_poly(&u))
        + &(&(&h * &k).mul_z(1)).scale_poly(&u);
    report.check("window functional equation", &j, &rhs);

    // Same equation once more for H itself (t set to 1 on both sides).
    let rhs_h = &(&(&TruncatedSeries::term(order, &(&x * &s) * &u, 1)
        + &(&h.mul_z(1)).scale_poly(&(&x * &u)))
        + &k.mul_z(1).scale_poly(&u))
        + &(&(&h * &k).mul_z(1)).scale_poly(&u);
    report.check("boundary-specialized equation", &h, &rhs_h);

    // The descent profile is the 1 + J(x, 1, p, 1, v, p, z)
    // specialization.
    let p = MultiPoly::var(Var::P);
    let l_from_j = &one
        + &j.subst_int(Var::T, 1)
            .subst_int(Var::U, 1)
            .substitute(Var::S, &p)
            .substitute(Var::Q, &p);
    report.check(
        "descent profile specialization",
        &gf::fp_exc_des_series(order),
        &l_from_j,
    );

    report.check("boundary-marker symmetry", &j.swap_vars(Var::T, Var::S), &j);
    report.check("linear in t", true, j.max_degree(Var::T) <= 1);
    report.check("linear in s", true, j.max_degree(Var::S) <= 1);

    // The swapped root satisfies the swapped quadratic.
    let khat = k.swap_vars(Var::U, Var::V);
    let q2uz = TruncatedSeries::term(order, &q.pow(2) * &u, 1);
    let swapped_residual = &(&(&vz * &(&khat * &khat)) - &(&bracket * &khat)) + &q2uz;
    report.check(
        "swapped root quadratic residual",
        &TruncatedSeries::zero(order),
        &swapped_residual,
    );

    // Mixed-boundary chain: with M the half-marked swap, both linear
    // equations and the elimination identity hold.
    let m = j
        .subst_int(Var::X, 1)
        .subst_int(Var::T, 1)
        .substitute(Var::S, &q)
        .swap_vars(Var::U, Var::V);
    let qvz = TruncatedSeries::term(order, &q * &v, 1);
    let rhs_k = &(&(&q2vz + &(&qvz * &m)) + &(&vz * &khat)) + &(&(&vz * &m) * &khat);
    report.check("half-marked equation for the root", &k, &rhs_k);
    let rhs_m = &(&(&qvz + &(&vz * &m)) + &(&vz * &khat)) + &(&(&vz * &m) * &khat);
    report.check("half-marked equation for the mixed series", &m, &rhs_m);
    // vz(2qvz - q^2 vz + 1 - vz) khat + (vz - 1) k + vz k khat + q^2 vz = 0.
    let coefficient = &(&(&(&qvz.scale(&BigRational::from_integer(2.into()))
        - &TruncatedSeries::term(order, &q.pow(2) * &v, 1))
        + &one)
        - &vz)
        * &vz;
    let elimination = &(&(&coefficient * &khat) + &(&(&vz - &one) * &k))
        + &(&(&(&vz * &k) * &khat) + &q2vz);
    report.check(
        "elimination identity",
        &TruncatedSeries::zero(order),
        &elimination,
    );
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(Suite::from_str(suite.name()).unwrap(), suite);
        }
        assert_eq!(Suite::from_str("all").unwrap(), Suite::All);
        assert!(Suite::from_str("unknown-name").is_err());
    }

    #[test]
    fn small_suites_pass() {
        let caps = Caps::default();
        let params = SuiteParams {
            max_n: Some(5),
            max_r: Some(2),
            order: Some(4),
        };
        for suite in Suite::ALL {
            let reports = run(suite, params, caps).unwrap();
            for report in reports {
                assert!(
                    report.passed(),
                    "suite {} failed: {}",
                    report.suite,
                    report
                );
                assert!(report.checks_run > 0);
            }
        }
    }

    #[test]
    fn report_display_is_deterministic() {
        let caps = Caps::default();
        let params = SuiteParams {
            max_n: Some(3),
            max_r: Some(1),
            order: Some(3),
        };
        let a = run(Suite::Theorem3, params, caps).unwrap();
        let b = run(Suite::Theorem3, params, caps).unwrap();
        assert_eq!(a[0].to_string(), b[0].to_string());
    }
}
