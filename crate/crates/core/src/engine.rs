//! The segment-by-segment matching engine. Per segment it maintains the
//! exact active-prefix set and, per error lane, the ≤1-error set, assembled
//! from: new starts inside this segment (error in the first piece), exact
//! extension of carried ≤1-error prefixes, and one-error extension of carried
//! exact prefixes (error strictly inside this segment). A segment reports
//! when an alignment ends here; the strongest kind wins.

use crate::affix::{build_prefix_groups, prefix_case_report, suffix_case_contribution};
use crate::anchor::{
    anchor_decision, anchor_reporting, anchor_reporting_grid, build_mu_groups, AnchorSubcase,
    EDIT_SUBCASES, HAMMING_SUBCASES,
};
use crate::ape::ApeKernel;
use crate::bits::PrefixSet;
use crate::eds::{EdText, MatchKind, Mode, OccurrenceReport, Pattern, Segment, Sym};
use crate::errata::{build_t0, build_t1, search_t1};
use crate::seq::{one_mismatch_sm, one_sm};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Task {
    Report,
    Decide,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AnchorAlgo {
    /// Dense grid for heavy segments (N_i ≥ m³), otherwise the trie engine
    /// in single-mismatch mode and the stabbing engine in edit mode.
    Auto,
    Geometric,
    Grid,
    Errata,
}

#[derive(Clone, Copy, Debug)]
pub struct EngineConfig {
    pub mode: Mode,
    pub task: Task,
    pub anchor_algo: AnchorAlgo,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("the errata engine answers single-mismatch queries only; pick auto, geom, or grid")]
    ErrataOutsideHamming,
}

impl EngineConfig {
    pub fn validate(&self) -> Result<(), EngineError> {
        if self.anchor_algo == AnchorAlgo::Errata && self.mode != Mode::Hamming1 {
            return Err(EngineError::ErrataOutsideHamming);
        }
        Ok(())
    }
}

/// Reports plus the per-segment (exact, mode-lane) active-prefix sets the
/// sweep passed through — the lane set equals the exact set in exact mode.
#[derive(Debug)]
pub struct EngineRun {
    pub reports: Vec<OccurrenceReport>,
    pub lattices: Vec<(PrefixSet, PrefixSet)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Lane {
    Ham,
    Edit,
}

impl Lane {
    fn subcases(self) -> &'static [AnchorSubcase] {
        match self {
            Lane::Ham => &HAMMING_SUBCASES,
            Lane::Edit => &EDIT_SUBCASES,
        }
    }
}

/// Alignment lying inside a single alternative of this segment, within the
/// lane's budget. Edit distance admits the empty substring, so a one-letter
/// pattern matches every segment.
fn easy_segment(p: &Pattern, seg: &Segment, lane: Lane) -> bool {
    match lane {
        Lane::Ham => seg
            .nonempty()
            .any(|s| !one_mismatch_sm(&p.syms, s).is_empty()),
        Lane::Edit => {
            p.m() == 1 || seg.nonempty().any(|s| !one_sm(&p.syms, s).is_empty())
        }
    }
}

fn resolve_algo(cfg: &EngineConfig, m: usize, n_i: usize) -> AnchorAlgo {
    match cfg.anchor_algo {
        AnchorAlgo::Auto => {
            if n_i >= m.saturating_pow(3) {
                AnchorAlgo::Grid
            } else if cfg.mode == Mode::Hamming1 {
                AnchorAlgo::Errata
            } else {
                AnchorAlgo::Geometric
            }
        }
        fixed => fixed,
    }
}

struct SegmentCtx<'a> {
    p: &'a Pattern,
    kernel: &'a ApeKernel,
    seg: &'a Segment,
    ap_exact: &'a PrefixSet,
    anchor_groups: &'a [crate::anchor::MuGroup],
    prefix_groups: &'a crate::affix::PrefixGroups,
    algo: AnchorAlgo,
}

/// One error-lane step: the next ≤1-error active-prefix set and whether an
/// alignment of this lane ends in this segment.
fn lane_step(ctx: &SegmentCtx<'_>, lane: Lane, lane_prev: &PrefixSet) -> (PrefixSet, bool) {
    let m = ctx.p.m();
    let subs = lane.subcases();
    let mut next = suffix_case_contribution(ctx.seg, ctx.p, subs);
    next.union_with(&ctx.kernel.ape(lane_prev, ctx.seg));
    let anchored = match ctx.algo {
        AnchorAlgo::Geometric => {
            anchor_reporting(ctx.anchor_groups, ctx.ap_exact, ctx.seg, subs, m)
        }
        AnchorAlgo::Grid => {
            anchor_reporting_grid(ctx.anchor_groups, ctx.ap_exact, ctx.seg, subs, m)
        }
        AnchorAlgo::Errata => {
            debug_assert_eq!(lane, Lane::Ham);
            search_t1(&build_t1(&build_t0(ctx.p, ctx.ap_exact, ctx.seg)))
        }
        AnchorAlgo::Auto => unreachable!("resolved per segment"),
    };
    next.union_with(&anchored);
    let ends = easy_segment(ctx.p, ctx.seg, lane)
        || ctx.kernel.completes_exactly(lane_prev, ctx.seg)
        || prefix_case_report(ctx.ap_exact, ctx.prefix_groups, ctx.p, subs)
        || next.contains(m);
    (next, ends)
}

/// On-line sweep: per segment, emit at most one report of the strongest kind
/// whose alignment ends there.
pub fn run_reporting(
    p: &Pattern,
    t: &EdText,
    cfg: &EngineConfig,
) -> Result<EngineRun, EngineError> {
    cfg.validate()?;
    let m = p.m();
    let kernel = ApeKernel::new(p);
    let full_rho = PrefixSet::from_iter(m, 0..=m);
    let want_ham = cfg.mode >= Mode::Hamming1;
    let want_edit = cfg.mode == Mode::Edit1;
    let mut ap_exact = PrefixSet::new(m);
    let mut lane_ham = PrefixSet::new(m);
    let mut lane_edit = PrefixSet::new(m);
    let mut reports = Vec::new();
    let mut lattices = Vec::with_capacity(t.n());
    for (idx, seg) in t.segments.iter().enumerate() {
        let (exact_next, exact_end) = kernel.propagate_exact(&ap_exact, seg);
        let mut ham = None;
        let mut edit = None;
        if want_ham || want_edit {
            let algo = resolve_algo(cfg, m, seg.size_contribution());
            let anchor_groups = build_mu_groups(p, &ap_exact, &full_rho);
            let prefix_groups = build_prefix_groups(seg, m);
            let ctx = SegmentCtx {
                p,
                kernel: &kernel,
                seg,
                ap_exact: &ap_exact,
                anchor_groups: &anchor_groups,
                prefix_groups: &prefix_groups,
                algo,
            };
            if want_ham {
                ham = Some(lane_step(&ctx, Lane::Ham, &lane_ham));
            }
            if want_edit {
                edit = Some(lane_step(&ctx, Lane::Edit, &lane_edit));
            }
        }
        let kind = if exact_end {
            Some(MatchKind::Exact)
        } else if ham.as_ref().is_some_and(|(_, e)| *e) {
            Some(MatchKind::Hamming1)
        } else if edit.as_ref().is_some_and(|(_, e)| *e) {
            Some(MatchKind::Edit1)
        } else {
            None
        };
        if let Some(kind) = kind {
            reports.push(OccurrenceReport {
                end_segment: idx + 1,
                kind,
            });
        }
        ap_exact = exact_next;
        if let Some((next, _)) = ham {
            lane_ham = next;
        }
        if let Some((next, _)) = edit {
            lane_edit = next;
        }
        let lane_bits = match cfg.mode {
            Mode::Exact => ap_exact.clone(),
            Mode::Hamming1 => lane_ham.clone(),
            Mode::Edit1 => lane_edit.clone(),
        };
        lattices.push((ap_exact.clone(), lane_bits));
    }
    Ok(EngineRun { reports, lattices })
}

/// Off-line yes/no: is there any occurrence at all? Decomposes by where the
/// error sits — nowhere (exact), inside one segment (easy), in the last
/// piece, in the first piece (scanned on the reversed instance), or strictly
/// between an exact prefix and an exact suffix.
pub fn run_decision(p: &Pattern, t: &EdText, cfg: &EngineConfig) -> Result<bool, EngineError> {
    cfg.validate()?;
    let m = p.m();
    let n = t.n();
    let kernel = ApeKernel::new(p);
    let mut ap: Vec<PrefixSet> = Vec::with_capacity(n + 1);
    ap.push(PrefixSet::new(m));
    let mut exact_any = false;
    for seg in &t.segments {
        let (next, end) = kernel.propagate_exact(ap.last().expect("seeded"), seg);
        exact_any |= end;
        ap.push(next);
    }
    if exact_any {
        return Ok(true);
    }
    if cfg.mode == Mode::Exact {
        return Ok(false);
    }
    let lane = if cfg.mode == Mode::Hamming1 {
        Lane::Ham
    } else {
        Lane::Edit
    };
    let subs = lane.subcases();
    if t.segments.iter().any(|seg| easy_segment(p, seg, lane)) {
        return Ok(true);
    }
    for i in 2..=n {
        let seg = &t.segments[i - 1];
        if ap[i - 1].is_empty() {
            continue;
        }
        if prefix_case_report(&ap[i - 1], &build_prefix_groups(seg, m), p, subs) {
            return Ok(true);
        }
    }
    let p_rev = p.reversed();
    let t_rev = t.reversed();
    let kernel_rev = ApeKernel::new(&p_rev);
    let mut ap_rev: Vec<PrefixSet> = Vec::with_capacity(n + 1);
    ap_rev.push(PrefixSet::new(m));
    for seg in &t_rev.segments {
        ap_rev.push(kernel_rev.propagate_exact(ap_rev.last().expect("seeded"), seg).0);
    }
    for tj in 2..=n {
        let seg = &t_rev.segments[tj - 1];
        if ap_rev[tj - 1].is_empty() {
            continue;
        }
        if prefix_case_report(&ap_rev[tj - 1], &build_prefix_groups(seg, m), &p_rev, subs) {
            return Ok(true);
        }
    }
    for i in 2..n {
        let lambda = &ap[i - 1];
        // exact-suffix lengths available from segment i+1 onward
        let rho = &ap_rev[n - i];
        if lambda.is_empty() || rho.is_empty() {
            continue;
        }
        let seg = &t.segments[i - 1];
        if lane == Lane::Edit
            && seg.nonempty().any(|s| s.len() == 1)
            && lambda.iter().any(|l| l < m && rho.contains(m - l))
        {
            // a single spurious letter between exact prefix and exact suffix
            return Ok(true);
        }
        let groups = build_mu_groups(p, lambda, rho);
        for g in &groups {
            let points = g.emptiness();
            for &sub in subs {
                let Some(len) = sub.string_len(g.mu) else { continue };
                let strings: Vec<&[Sym]> =
                    seg.nonempty().filter(|s| s.len() == len).collect();
                if !strings.is_empty() && anchor_decision(g, &points, &strings, sub) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eds::{parse_eds, remap};
    use crate::generate::{random_pattern, random_text, GenConfig};
    use crate::oracle::{oracle_ap_sets, oracle_end_set, oracle_reports};
    use rand::SeedableRng;

    fn cfg(mode: Mode, algo: AnchorAlgo) -> EngineConfig {
        EngineConfig {
            mode,
            task: Task::Report,
            anchor_algo: algo,
        }
    }

    fn fig1() -> (Pattern, EdText) {
        remap(
            b"TTA",
            &parse_eds(b"{T,TGA}{,CA}{AC}{AA,T}{C,TTT}{A}{,TC}").unwrap(),
        )
    }

    fn algos_for(mode: Mode) -> Vec<AnchorAlgo> {
        let mut v = vec![AnchorAlgo::Auto, AnchorAlgo::Geometric, AnchorAlgo::Grid];
        if mode == Mode::Hamming1 {
            v.push(AnchorAlgo::Errata);
        }
        v
    }

    #[test]
    fn seven_segment_fixture_reports_by_strongest_kind() {
        let (p, t) = fig1();
        let want_edit = vec![
            (1, MatchKind::Hamming1),
            (2, MatchKind::Hamming1),
            (3, MatchKind::Edit1),
            (5, MatchKind::Hamming1),
            (6, MatchKind::Exact),
            (7, MatchKind::Exact),
        ];
        let want_ham: Vec<(usize, MatchKind)> = want_edit
            .iter()
            .copied()
            .filter(|&(i, _)| i != 3)
            .collect();
        let want_exact = vec![(6, MatchKind::Exact), (7, MatchKind::Exact)];
        for (mode, want) in [
            (Mode::Exact, &want_exact),
            (Mode::Hamming1, &want_ham),
            (Mode::Edit1, &want_edit),
        ] {
            for algo in algos_for(mode) {
                let run = run_reporting(&p, &t, &cfg(mode, algo)).unwrap();
                let got: Vec<(usize, MatchKind)> = run
                    .reports
                    .iter()
                    .map(|r| (r.end_segment, r.kind))
                    .collect();
                assert_eq!(&got, want, "mode {mode:?} algo {algo:?}");
            }
        }
    }

    #[test]
    fn errata_is_rejected_outside_single_mismatch_mode() {
        let (p, t) = fig1();
        for mode in [Mode::Exact, Mode::Edit1] {
            let c = cfg(mode, AnchorAlgo::Errata);
            assert_eq!(
                run_reporting(&p, &t, &c).err(),
                Some(EngineError::ErrataOutsideHamming)
            );
            assert_eq!(
                run_decision(&p, &t, &c).err(),
                Some(EngineError::ErrataOutsideHamming)
            );
        }
    }

    #[test]
    fn random_instances_match_oracle_reports_and_lattices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(79);
        let gen = GenConfig::desk();
        for round in 0..300 {
            let pb = random_pattern(9, b"abcd", &mut rng);
            let tb = random_text(&gen, &mut rng);
            let (p, t) = remap(&pb, &tb);
            for mode in [Mode::Exact, Mode::Hamming1, Mode::Edit1] {
                let want = oracle_reports(&p, &t, mode).unwrap();
                let want_sets = oracle_ap_sets(&p, &t, mode).unwrap();
                for algo in algos_for(mode) {
                    let run = run_reporting(&p, &t, &cfg(mode, algo)).unwrap();
                    assert_eq!(
                        run.reports, want,
                        "round {round} mode {mode:?} algo {algo:?} P={pb:?}"
                    );
                    assert_eq!(
                        run.lattices, want_sets,
                        "round {round} mode {mode:?} algo {algo:?} P={pb:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn decision_agrees_with_reporting_nonempty() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(83);
        let gen = GenConfig::desk();
        for round in 0..300 {
            let pb = random_pattern(9, b"abcd", &mut rng);
            let tb = random_text(&gen, &mut rng);
            let (p, t) = remap(&pb, &tb);
            for mode in [Mode::Exact, Mode::Hamming1, Mode::Edit1] {
                let want = !oracle_end_set(&p, &t, mode).unwrap().is_empty();
                let got = run_decision(&p, &t, &cfg(mode, AnchorAlgo::Auto)).unwrap();
                assert_eq!(got, want, "round {round} mode {mode:?} P={pb:?}");
            }
        }
    }

    #[test]
    fn truncated_texts_replay_the_online_stream() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(89);
        let gen = GenConfig::desk();
        for _ in 0..100 {
            let pb = random_pattern(9, b"abcd", &mut rng);
            let tb = random_text(&gen, &mut rng);
            let (p, t) = remap(&pb, &tb);
            let c = cfg(Mode::Edit1, AnchorAlgo::Geometric);
            let full = run_reporting(&p, &t, &c).unwrap();
            for i in 1..=t.n() {
                let part = run_reporting(&p, &t.prefix(i), &c).unwrap();
                let want: Vec<_> = full
                    .reports
                    .iter()
                    .filter(|r| r.end_segment <= i)
                    .cloned()
                    .collect();
                assert_eq!(part.reports, want, "prefix {i}");
            }
        }
    }
}
