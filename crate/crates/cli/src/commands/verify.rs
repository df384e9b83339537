use std::f64::consts::TAU;
use std::fmt::Write;
use std::path::Path;

use jrsp_core::{
    closed_form_fidelity_with, compare_with_options, compare_with_simulation, kraus_set,
    lambda_grid, max_deviation, simulated_fidelity, ClosedFormKind, CompareOptions, ComparisonRow,
    DepolarizingGrouping, FidelityConvention, NoiseKind, PhaseDampingVariant, PhaseSpec,
    AGREEMENT_TOL,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::ReportFormat;
use crate::error::CliError;
use crate::format::fmt_num;

pub const RANDOM_SEED: u64 = 0x4a52_5350;
pub const RANDOM_SETS: usize = 5;
/// Phases for the channel-ordering scan.
pub const ORDERING_DEGREES: f64 = 30.0;
const BISECTION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedPhases {
    pub label: String,
    pub phases: PhaseSpec,
}

/// Preset uniform sets, zero, then seeded random sets.
pub fn default_phase_sets() -> Vec<NamedPhases> {
    let mut sets: Vec<NamedPhases> = [30.0, 180.0, 300.0]
        .iter()
        .map(|&d| NamedPhases {
            label: format!("uniform-{d}deg"),
            phases: PhaseSpec::uniform_degrees(d).expect("finite"),
        })
        .collect();
    sets.push(NamedPhases { label: "zero".into(), phases: PhaseSpec::zero() });
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for i in 1..=RANDOM_SETS {
        let mut draw =
            || [rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)];
        let (a, b) = (draw(), draw());
        sets.push(NamedPhases {
            label: format!("random-{i}"),
            phases: PhaseSpec::new(a, b).expect("finite"),
        });
    }
    sets
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelSummary {
    pub channel: NoiseKind,
    pub unambiguous: bool,
    pub max_deviation: f64,
    pub worst_phase_set: String,
    pub within_tolerance: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub channel: NoiseKind,
    pub phase_set: String,
    pub lambda: f64,
    pub fidelity_sim: f64,
    pub fidelity_closed: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseDampingPoint {
    pub lambda: f64,
    pub standard: f64,
    pub as_printed: f64,
    pub closed: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseDampingComparison {
    pub standard_max_deviation: f64,
    pub as_printed_max_deviation: f64,
    pub curves: Vec<PhaseDampingPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupingComparison {
    pub factored_max_deviation: f64,
    pub detached_quartic_max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimumViolation {
    pub lambda: f64,
    pub depolarizing: f64,
    pub lowest_channel: NoiseKind,
    pub lowest: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderingScan {
    pub degrees: f64,
    /// Where amplitude damping drops below phase flip; `None` if no sign change.
    pub crossover_lambda: Option<f64>,
    pub interior_points: usize,
    pub depolarizing_minimum_violations: Vec<MinimumViolation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub grid_start: f64,
    pub grid_end: f64,
    pub grid_steps: usize,
    pub phase_sets: Vec<NamedPhases>,
    pub channels: Vec<ChannelSummary>,
    pub residuals: Vec<Residual>,
    pub phase_damping: PhaseDampingComparison,
    pub depolarizing_grouping: GroupingComparison,
    pub ordering: OrderingScan,
    pub passed: bool,
}

impl VerifyReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            crate::EXIT_OK
        } else {
            crate::EXIT_VERIFY_FAILED
        }
    }
}

fn simulate(kind: NoiseKind, lambda: f64, phases: &PhaseSpec) -> Result<f64, CliError> {
    let ch = kraus_set(kind, lambda)?;
    Ok(simulated_fidelity(phases, Some(&ch), FidelityConvention::IdealWeight)?)
}

/// Bisects `f` on a bracket with a sign change.
fn bisect(
    mut lo: f64,
    mut hi: f64,
    f: impl Fn(f64) -> Result<f64, CliError>,
) -> Result<f64, CliError> {
    let f_lo = f(lo)?;
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if (f(mid)? > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn ordering_scan(grid: &[f64]) -> Result<OrderingScan, CliError> {
    let phases = PhaseSpec::uniform_degrees(ORDERING_DEGREES)?;
    let interior: Vec<f64> = grid.iter().copied().filter(|&l| l > 0.0 && l < 1.0).collect();
    let gap = |l: f64| -> Result<f64, CliError> {
        Ok(simulate(NoiseKind::AmplitudeDamping, l, &phases)?
            - simulate(NoiseKind::PhaseFlip, l, &phases)?)
    };
    let mut crossover = None;
    let mut prev: Option<(f64, f64)> = None;
    let mut violations = Vec::new();
    for &lambda in &interior {
        let mut values = Vec::with_capacity(NoiseKind::ALL.len());
        for kind in NoiseKind::ALL {
            values.push((kind, simulate(kind, lambda, &phases)?));
        }
        let dp = values.iter().find(|(k, _)| *k == NoiseKind::Depolarizing).expect("present").1;
        let (low_kind, low) = values
            .iter()
            .filter(|(k, _)| *k != NoiseKind::Depolarizing)
            .copied()
            .fold((NoiseKind::BitFlip, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a });
        if dp >= low {
            violations.push(MinimumViolation {
                lambda,
                depolarizing: dp,
                lowest_channel: low_kind,
                lowest: low,
            });
        }
        let ad = values.iter().find(|(k, _)| *k == NoiseKind::AmplitudeDamping).expect("present").1;
        let pf = values.iter().find(|(k, _)| *k == NoiseKind::PhaseFlip).expect("present").1;
        let g = ad - pf;
        if crossover.is_none() {
            if let Some((pl, pg)) = prev {
                if pg > 0.0 && g <= 0.0 {
                    crossover = Some(if g == 0.0 { lambda } else { bisect(pl, lambda, gap)? });
                }
            }
        }
        prev = Some((lambda, g));
    }
    Ok(OrderingScan {
        degrees: ORDERING_DEGREES,
        crossover_lambda: crossover,
        interior_points: interior.len(),
        depolarizing_minimum_violations: violations,
    })
}

fn phase_damping_comparison(grid: &[f64]) -> Result<PhaseDampingComparison, CliError> {
    // Phase damping is phase independent; one set suffices for the curves.
    let phases = PhaseSpec::zero();
    let rows = |variant| {
        let opts = CompareOptions { phase_damping: variant, ..CompareOptions::default() };
        compare_with_options(ClosedFormKind::PhaseDamping, grid, &phases, &opts)
    };
    let standard = rows(PhaseDampingVariant::Standard)?;
    let as_printed = rows(PhaseDampingVariant::AsPrinted)?;
    let curves = standard
        .iter()
        .zip(&as_printed)
        .map(|(s, p)| PhaseDampingPoint {
            lambda: s.lambda,
            standard: s.f_sim,
            as_printed: p.f_sim,
            closed: s.f_closed,
        })
        .collect();
    Ok(PhaseDampingComparison {
        standard_max_deviation: max_deviation(&standard),
        as_printed_max_deviation: max_deviation(&as_printed),
        curves,
    })
}

pub fn build_report(
    phase_sets: &[NamedPhases],
    start: f64,
    end: f64,
    steps: usize,
) -> Result<VerifyReport, CliError> {
    let grid = lambda_grid(start, end, steps);
    let mut channels = Vec::new();
    let mut residuals = Vec::new();
    let mut factored_dp: f64 = 0.0;
    let mut detached_dp: f64 = 0.0;
    for kind in NoiseKind::ALL {
        let form = ClosedFormKind::from(kind);
        let mut worst = (0.0, phase_sets.first().map(|s| s.label.clone()).unwrap_or_default());
        for set in phase_sets {
            let rows: Vec<ComparisonRow> = compare_with_simulation(form, &grid, &set.phases)?;
            let dev = max_deviation(&rows);
            if dev > worst.0 || worst.0.is_nan() {
                worst = (dev, set.label.clone());
            }
            for r in rows.iter().filter(|r| r.abs_diff > AGREEMENT_TOL || r.abs_diff.is_nan()) {
                residuals.push(Residual {
                    channel: kind,
                    phase_set: set.label.clone(),
                    lambda: r.lambda,
                    fidelity_sim: r.f_sim,
                    fidelity_closed: r.f_closed,
                    abs_diff: r.abs_diff,
                });
            }
            if kind == NoiseKind::Depolarizing {
                factored_dp = factored_dp.max(dev);
                for r in &rows {
                    let alt = closed_form_fidelity_with(
                        form,
                        r.lambda,
                        &set.phases,
                        DepolarizingGrouping::DetachedQuartic,
                    )?;
                    detached_dp = detached_dp.max((r.f_sim - alt).abs());
                }
            }
        }
        channels.push(ChannelSummary {
            channel: kind,
            unambiguous: form.is_unambiguous(),
            max_deviation: worst.0,
            worst_phase_set: worst.1,
            within_tolerance: worst.0 <= AGREEMENT_TOL,
        });
    }
    let passed = channels.iter().all(|c| !c.unambiguous || c.within_tolerance);
    Ok(VerifyReport {
        grid_start: start,
        grid_end: end,
        grid_steps: steps,
        phase_sets: phase_sets.to_vec(),
        channels,
        residuals,
        phase_damping: phase_damping_comparison(&grid)?,
        depolarizing_grouping: GroupingComparison {
            factored_max_deviation: factored_dp,
            detached_quartic_max_deviation: detached_dp,
        },
        ordering: ordering_scan(&grid)?,
        passed,
    })
}

pub fn render_text(r: &VerifyReport) -> String {
    let mut o = String::new();
    let w = &mut o;
    let _ = writeln!(
        w,
        "verify: {} phase sets, {} grid points on [{}, {}], tolerance {}",
        r.phase_sets.len(),
        r.grid_steps,
        fmt_num(r.grid_start),
        fmt_num(r.grid_end),
        fmt_num(AGREEMENT_TOL)
    );
    let _ = writeln!(w, "phase sets (radians):");
    for s in &r.phase_sets {
        let a = s.phases.alpha();
        let b = s.phases.beta();
        let _ = writeln!(
            w,
            "  {}: alpha={},{},{} beta={},{},{}",
            s.label,
            fmt_num(a[1]),
            fmt_num(a[2]),
            fmt_num(a[3]),
            fmt_num(b[1]),
            fmt_num(b[2]),
            fmt_num(b[3])
        );
    }
    let _ = writeln!(w, "\nclosed form vs simulation:");
    let _ = writeln!(w, "  {:<18} {:<20} {:<10} status", "channel", "max_deviation", "kind");
    for c in &r.channels {
        let status = match (c.within_tolerance, c.unambiguous) {
            (true, _) => "ok",
            (false, true) => "FAIL",
            (false, false) => "deviates (reported)",
        };
        let kind = if c.unambiguous { "exact" } else { "ambiguous" };
        let _ = writeln!(
            w,
            "  {:<18} {:<20} {:<10} {} (worst set: {})",
            c.channel.name(),
            fmt_num(c.max_deviation),
            kind,
            status,
            c.worst_phase_set
        );
    }
    if !r.residuals.is_empty() {
        let _ = writeln!(w, "\nresiduals above tolerance:");
        let _ = writeln!(w, "  channel,phase_set,lambda,fidelity_sim,fidelity_closed,abs_diff");
        for x in &r.residuals {
            let _ = writeln!(
                w,
                "  {},{},{},{},{},{}",
                x.channel,
                x.phase_set,
                fmt_num(x.lambda),
                fmt_num(x.fidelity_sim),
                fmt_num(x.fidelity_closed),
                fmt_num(x.abs_diff)
            );
        }
    }
    let pd = &r.phase_damping;
    let _ = writeln!(w, "\nphase damping Kraus sets vs closed form:");
    let _ = writeln!(w, "  standard    max_deviation={}", fmt_num(pd.standard_max_deviation));
    let _ = writeln!(w, "  as-printed  max_deviation={}", fmt_num(pd.as_printed_max_deviation));
    let _ = writeln!(w, "  lambda,standard,as_printed,closed");
    for p in &pd.curves {
        let _ = writeln!(
            w,
            "  {},{},{},{}",
            fmt_num(p.lambda),
            fmt_num(p.standard),
            fmt_num(p.as_printed),
            fmt_num(p.closed)
        );
    }
    let g = &r.depolarizing_grouping;
    let _ = writeln!(w, "\ndepolarizing quartic grouping:");
    let _ = writeln!(w, "  factored          max_deviation={}", fmt_num(g.factored_max_deviation));
    let _ = writeln!(
        w,
        "  detached-quartic  max_deviation={}",
        fmt_num(g.detached_quartic_max_deviation)
    );
    let o_ = &r.ordering;
    let _ = writeln!(w, "\nchannel ordering at {} degrees:", fmt_num(o_.degrees));
    match o_.crossover_lambda {
        Some(l) => {
            let _ =
                writeln!(w, "  amplitude-damping / phase-flip crossover: lambda={}", fmt_num(l));
        }
        None => {
            let _ = writeln!(w, "  amplitude-damping / phase-flip crossover: none on grid");
        }
    }
    let _ = writeln!(
        w,
        "  depolarizing strictly lowest at {} of {} interior points",
        o_.interior_points - o_.depolarizing_minimum_violations.len(),
        o_.interior_points
    );
    for v in &o_.depolarizing_minimum_violations {
        let _ = writeln!(
            w,
            "    lambda={} depolarizing={} {}={}",
            fmt_num(v.lambda),
            fmt_num(v.depolarizing),
            v.lowest_channel,
            fmt_num(v.lowest)
        );
    }
    let _ = writeln!(
        w,
        "\nresult: {}",
        if r.passed { "ok" } else { "FAIL (exact closed form deviates beyond tolerance)" }
    );
    o
}

pub fn cmd_verify(
    phase_sets: &[NamedPhases],
    grid: (f64, f64, usize),
    format: ReportFormat,
    output: Option<&Path>,
) -> Result<i32, CliError> {
    let report = build_report(phase_sets, grid.0, grid.1, grid.2)?;
    let text = match format {
        ReportFormat::Json => super::to_json(&report)?,
        ReportFormat::Text => render_text(&report),
    };
    super::write_out(&text, output)?;
    Ok(report.exit_code())
}
