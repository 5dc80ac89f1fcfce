//! One function per subcommand. Each takes parsed arguments and a sink,
//! so the tests can drive them without a process boundary.

use std::io::Write;
use std::path::Path;

use bellmix::chsh;
use bellmix::measures;
use bellmix::regions::{self, AngleInterval};
use bellmix::{ChshReport64, MeasureReport64, RegionPoint64};

use crate::statefile::{self, LoadedState};
use crate::{fmt_f, CliError, ReportFormat};

/// Verdicts within this distance of m = 1 are numerically ambiguous; the
/// witness verification refuses to call them contradictions.
const VERDICT_BAND: f64 = 1e-9;

pub fn cmd_measures(
    path: &Path,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let loaded = statefile::load_state(path)?;
    let (report, bell) = analyze(&loaded)?;
    match format {
        ReportFormat::Text => {
            writeln!(out, "concurrence: {}", fmt_f(report.concurrence))?;
            writeln!(out, "entanglement_of_formation: {}", fmt_f(report.entanglement_of_formation))?;
            writeln!(out, "purity: {}", fmt_f(report.purity))?;
            writeln!(out, "linear_entropy: {}", fmt_f(report.linear_entropy))?;
            writeln!(out, "m: {}", fmt_f(bell.m))?;
            writeln!(out, "n: {}", fmt_f(bell.n))?;
            writeln!(out, "max_chsh: {}", fmt_f(bell.max_chsh))?;
            writeln!(out, "violates: {}", bell.violates)?;
        }
        ReportFormat::Json => {
            let value = serde_json::json!({
                "concurrence": report.concurrence,
                "entanglement_of_formation": report.entanglement_of_formation,
                "purity": report.purity,
                "linear_entropy": report.linear_entropy,
                "m": bell.m,
                "n": bell.n,
                "max_chsh": bell.max_chsh,
                "violates": bell.violates,
            });
            write_json(out, &value)?;
        }
    }
    Ok(())
}

/// Closed forms when the file carried family parameters, the spectral
/// route otherwise.
fn analyze(loaded: &LoadedState) -> Result<(MeasureReport64, ChshReport64), CliError> {
    match &loaded.e0 {
        Some(params) => {
            let report = measures::measure_e0(params)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            Ok((report, chsh::chsh_report_e0(params)))
        }
        None => {
            let report = measures::measure(&loaded.density)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let bell = chsh::chsh_report(&loaded.density)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            Ok((report, bell))
        }
    }
}

pub fn cmd_classify(
    entropy: f64,
    concurrence: f64,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let point = parse_point(entropy, concurrence)?;
    let region = regions::classify(&point);
    // s1/s2 exist only up to c = 1/sqrt(2); past that every admissible
    // entropy violates and the boundaries are moot.
    let s1 = regions::s1(point.c()).ok();
    let s2 = regions::s2(point.c()).ok();
    let s_max = regions::s_max(point.c()).map_err(|e| CliError::Parse(e.to_string()))?;
    match format {
        ReportFormat::Text => {
            writeln!(out, "region: {region}")?;
            writeln!(out, "s1: {}", s1.map_or_else(|| "-".into(), fmt_f))?;
            writeln!(out, "s2: {}", s2.map_or_else(|| "-".into(), fmt_f))?;
            writeln!(out, "s_max: {}", fmt_f(s_max))?;
        }
        ReportFormat::Json => {
            let value = serde_json::json!({
                "region": region.to_string(),
                "s1": s1,
                "s2": s2,
                "s_max": s_max,
            });
            write_json(out, &value)?;
        }
    }
    Ok(())
}

pub fn cmd_witness(
    entropy: f64,
    concurrence: f64,
    theta: f64,
    state_prefix: &str,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let point = parse_point(entropy, concurrence)?;
    let pair = regions::witness_pair(&point, theta)
        .map_err(|e| CliError::Domain(e.to_string()))?;

    let c_v = measures::concurrence_e0(&pair.violating);
    let c_n = measures::concurrence_e0(&pair.non_violating);
    let s_v = measures::linear_entropy_e0(&pair.violating);
    let s_n = measures::linear_entropy_e0(&pair.non_violating);
    let m_v = chsh::horodecki_m_e0(&pair.violating);
    let m_n = chsh::horodecki_m_e0(&pair.non_violating);
    if (c_v - c_n).abs() > VERDICT_BAND || (s_v - s_n).abs() > VERDICT_BAND {
        return Err(CliError::Io(format!(
            "internal: witness states disagree on measures (dC = {:e}, dS = {:e})",
            (c_v - c_n).abs(),
            (s_v - s_n).abs()
        )));
    }
    if m_v < 1.0 - VERDICT_BAND || m_n > 1.0 + VERDICT_BAND {
        return Err(CliError::Io(format!(
            "internal: witness verdicts are not opposite (m = {m_v:e} and {m_n:e})"
        )));
    }

    let vbi_path = format!("{state_prefix}_vbi.json");
    let non_vbi_path = format!("{state_prefix}_non_vbi.json");
    statefile::write_e0_state(Path::new(&vbi_path), &pair.violating)?;
    statefile::write_e0_state(Path::new(&non_vbi_path), &pair.non_violating)?;

    match format {
        ReportFormat::Text => {
            writeln!(out, "point: s = {}, c = {}", fmt_f(point.s()), fmt_f(point.c()))?;
            writeln!(out, "violating_file: {vbi_path}")?;
            writeln!(out, "violating_phi: {}", fmt_f(pair.violating_phi))?;
            writeln!(out, "violating_m: {}", fmt_f(m_v))?;
            writeln!(out, "violating_concurrence: {}", fmt_f(c_v))?;
            writeln!(out, "violating_linear_entropy: {}", fmt_f(s_v))?;
            writeln!(out, "non_violating_file: {non_vbi_path}")?;
            writeln!(out, "non_violating_phi: {}", fmt_f(pair.non_violating_phi))?;
            writeln!(out, "non_violating_m: {}", fmt_f(m_n))?;
            writeln!(out, "non_violating_concurrence: {}", fmt_f(c_n))?;
            writeln!(out, "non_violating_linear_entropy: {}", fmt_f(s_n))?;
        }
        ReportFormat::Json => {
            let value = serde_json::json!({
                "point": { "s": point.s(), "c": point.c() },
                "violating": {
                    "file": vbi_path,
                    "phi": pair.violating_phi,
                    "m": m_v,
                    "concurrence": c_v,
                    "linear_entropy": s_v,
                },
                "non_violating": {
                    "file": non_vbi_path,
                    "phi": pair.non_violating_phi,
                    "m": m_n,
                    "concurrence": c_n,
                    "linear_entropy": s_n,
                },
            });
            write_json(out, &value)?;
        }
    }
    Ok(())
}

pub fn cmd_family_scan(
    entropy: f64,
    concurrence: f64,
    theta: f64,
    samples: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if samples < 2 {
        return Err(CliError::Parse(format!("--samples must be at least 2, got {samples}")));
    }
    let point = parse_point(entropy, concurrence)?;
    let family = regions::phi_family(&point).map_err(|e| CliError::Domain(e.to_string()))?;

    writeln!(out, "phi,m,violates,s_check,c_check")?;
    for phi in sample_family_angles(&family.intervals, samples) {
        let state = family.state_at(phi, theta).map_err(|e| CliError::Domain(e.to_string()))?;
        let bell = chsh::chsh_report_e0(&state);
        let s_check = measures::linear_entropy_e0(&state);
        let c_check = measures::concurrence_e0(&state);
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f(phi),
            fmt_f(bell.m),
            bell.violates,
            fmt_f(s_check),
            fmt_f(c_check)
        )?;
    }
    Ok(())
}

/// `n` angles covering the admissible arcs in ascending order, spaced
/// uniformly over the union: arc lengths decide how many samples each
/// arc receives. Endpoints of the union are always included.
fn sample_family_angles(arcs: &[AngleInterval<f64>], n: usize) -> Vec<f64> {
    assert!(n >= 2 && !arcs.is_empty());
    let total: f64 = arcs.iter().map(AngleInterval::len).sum();
    if total <= 0.0 {
        // Isolated tangency angles: spread the rows over them evenly.
        return (0..n).map(|k| arcs[(k * arcs.len()) / n].lo).collect();
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut p = total * k as f64 / (n - 1) as f64;
        let mut phi = arcs[arcs.len() - 1].hi;
        for arc in arcs {
            if p <= arc.len() {
                phi = (arc.lo + p).min(arc.hi);
                break;
            }
            p -= arc.len();
        }
        out.push(phi);
    }
    out
}

pub fn cmd_boundary(samples: usize, out: &mut dyn Write) -> Result<(), CliError> {
    if samples < 2 {
        return Err(CliError::Parse(format!("--samples must be at least 2, got {samples}")));
    }
    writeln!(out, "c,S1,S2,Smax")?;
    for i in 1..=samples {
        let c = i as f64 / samples as f64;
        let s1 = regions::s1(c).ok();
        let s2 = regions::s2(c).ok();
        let s_max = regions::s_max(c).map_err(|e| CliError::Parse(e.to_string()))?;
        writeln!(
            out,
            "{},{},{},{}",
            fmt_f(c),
            s1.map_or_else(String::new, fmt_f),
            s2.map_or_else(String::new, fmt_f),
            fmt_f(s_max)
        )?;
    }
    Ok(())
}

pub fn cmd_chsh_opt(
    path: &Path,
    restarts: usize,
    seed: u64,
    format: ReportFormat,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    if restarts == 0 {
        return Err(CliError::Parse("--restarts must be at least 1".into()));
    }
    let loaded = statefile::load_state(path)?;
    let optimum = chsh::optimize_chsh(&loaded.density, restarts, seed)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let closed_form = match &loaded.e0 {
        Some(params) => chsh::chsh_report_e0(params).max_chsh,
        None => {
            chsh::chsh_report(&loaded.density)
                .map_err(|e| CliError::Validation(e.to_string()))?
                .max_chsh
        }
    };
    let gap = (closed_form - optimum.value).abs();
    let op = &optimum.operator;
    match format {
        ReportFormat::Text => {
            writeln!(out, "optimizer_value: {}", fmt_f(optimum.value))?;
            writeln!(out, "closed_form: {}", fmt_f(closed_form))?;
            writeln!(out, "gap: {}", fmt_f(gap))?;
            writeln!(out, "a: {}", fmt_vec(op.a()))?;
            writeln!(out, "a_prime: {}", fmt_vec(op.a_prime()))?;
            writeln!(out, "b: {}", fmt_vec(op.b()))?;
            writeln!(out, "b_prime: {}", fmt_vec(op.b_prime()))?;
        }
        ReportFormat::Json => {
            let value = serde_json::json!({
                "optimizer_value": optimum.value,
                "closed_form": closed_form,
                "gap": gap,
                "a": op.a(),
                "a_prime": op.a_prime(),
                "b": op.b(),
                "b_prime": op.b_prime(),
            });
            write_json(out, &value)?;
        }
    }
    Ok(())
}

fn parse_point(entropy: f64, concurrence: f64) -> Result<RegionPoint64, CliError> {
    RegionPoint64::new(entropy, concurrence).map_err(|e| CliError::Parse(e.to_string()))
}

fn fmt_vec(v: [f64; 3]) -> String {
    format!("{} {} {}", fmt_f(v[0]), fmt_f(v[1]), fmt_f(v[2]))
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("cannot serialize report: {e}")))?;
    Ok(writeln!(out, "{text}")?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(lo: f64, hi: f64) -> AngleInterval<f64> {
        AngleInterval { lo, hi }
    }

    #[test]
    fn sampler_covers_arcs_in_proportion_and_order() {
        let arcs = [arc(0.0, 1.0), arc(2.0, 5.0)];
        let angles = sample_family_angles(&arcs, 9);
        assert_eq!(angles.len(), 9);
        assert!(angles.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(angles[0], 0.0);
        assert_eq!(angles[8], 5.0);
        assert!(angles.iter().all(|&p| (0.0..=1.0).contains(&p) || (2.0..=5.0).contains(&p)));
        // A quarter of the union's length lies in the first arc.
        let in_first = angles.iter().filter(|&&p| p <= 1.0).count();
        assert!((2..=4).contains(&in_first), "{in_first} of 9 in the short arc");
    }

    #[test]
    fn sampler_handles_single_arcs_and_small_counts() {
        let arcs = [arc(1.0, 2.0)];
        let angles = sample_family_angles(&arcs, 2);
        assert_eq!(angles, vec![1.0, 2.0]);
    }

    #[test]
    fn sampler_spreads_rows_over_isolated_angles() {
        let arcs = [arc(0.25, 0.25), arc(2.9, 2.9)];
        let angles = sample_family_angles(&arcs, 10);
        assert_eq!(angles.len(), 10);
        assert_eq!(angles.iter().filter(|&&p| p == 0.25).count(), 5);
        assert_eq!(angles.iter().filter(|&&p| p == 2.9).count(), 5);
    }
}
