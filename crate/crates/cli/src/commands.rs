//! Subcommand bodies. Each takes its output and diagnostic writers and
//! returns a process exit code, so tests can drive them in-process.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use cvp_core::{
    analyze, analyze_with, builtin_fixtures, equivalent_coordinates, synthesize, AnalysisOptions,
    AnalysisReport, AnalysisRequest, CvpError, Fixture, WaveformGrid, WaveformSet,
};

use crate::input::{parse_input, InputDocument};
use crate::render::{render_json, render_table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFTEST_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INTEGRITY: i32 = 3;

pub const CSV_HEADER: &str = "t,v1,v2,v3,i1,i2,i3,p,d1,d2,d3";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
}

fn exit_code(err: &CvpError) -> i32 {
    match err {
        CvpError::Integrity(_) => EXIT_INTEGRITY,
        _ => EXIT_INVALID,
    }
}

fn load(path: &Path, err: &mut dyn Write) -> Result<InputDocument, i32> {
    let bytes = fs::read(path).map_err(|e| {
        let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
        EXIT_INVALID
    })?;
    parse_input(&bytes).map_err(|e| {
        let _ = writeln!(err, "error: {}: {e}", path.display());
        EXIT_INVALID
    })
}

/// Writes to `--out` when given, otherwise to `stdout`.
fn emit(text: &str, out_path: Option<&Path>, stdout: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let written = match out_path {
        Some(p) => fs::write(p, text),
        None => stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let target = out_path.map_or("standard output".into(), |p| p.display().to_string());
            let _ = writeln!(err, "error: cannot write {target}: {e}");
            EXIT_INVALID
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    pub format: Format,
    pub ieee1459: bool,
    pub out: Option<PathBuf>,
}

pub fn cmd_analyze(args: &AnalyzeArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let doc = match load(&args.input, err) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let opts = AnalysisOptions {
        ieee1459: args.ieee1459,
        ..AnalysisOptions::default()
    };
    let report = match analyze_with(&doc.to_request(), &opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let text = match args.format {
        Format::Table => render_table(&report),
        Format::Json => render_json(&report),
    };
    emit(&text, args.out.as_deref(), out, err)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WaveformArgs {
    pub input: PathBuf,
    pub cycles: usize,
    pub samples_per_cycle: usize,
    pub out: Option<PathBuf>,
}

/// Waveforms of the equivalent coordinates `V_e`, `I_e`, so `d(t)` is the
/// time-domain form of `D_e`.
pub fn waveforms(req: &AnalysisRequest, grid: &WaveformGrid) -> cvp_core::Result<WaveformSet> {
    req.validate()?;
    grid.validate()?;
    let eq = equivalent_coordinates(&req.voltages, &req.currents, req.neutral)?;
    synthesize(&eq.v_e, &eq.i_e, grid)
}

pub fn to_csv(w: &WaveformSet) -> String {
    let mut s = String::with_capacity(w.len() * 200);
    s.push_str(CSV_HEADER);
    s.push('\n');
    for n in 0..w.len() {
        let row = [
            w.t[n], w.v[0][n], w.v[1][n], w.v[2][n], w.i[0][n], w.i[1][n], w.i[2][n], w.p[n],
            w.d[0][n], w.d[1][n], w.d[2][n],
        ];
        let cells: Vec<String> = row.iter().map(f64::to_string).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

pub fn cmd_waveform(args: &WaveformArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let doc = match load(&args.input, err) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let req = doc.to_request();
    let w = WaveformGrid::new(req.frequency, args.samples_per_cycle, args.cycles)
        .and_then(|grid| waveforms(&req, &grid));
    match w {
        Ok(w) => emit(&to_csv(&w), args.out.as_deref(), out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SelftestSummary {
    pub passed: usize,
    pub failed: usize,
}

/// Runs every fixture through `run` and prints one line per expected field.
/// An analysis error counts as one failure for that fixture.
pub fn check_fixtures<F>(fixtures: &[Fixture], run: F, out: &mut dyn Write) -> io::Result<SelftestSummary>
where
    F: Fn(&AnalysisRequest) -> cvp_core::Result<AnalysisReport>,
{
    let mut summary = SelftestSummary::default();
    for fx in fixtures {
        let label = &fx.request.label;
        let report = match run(&fx.request) {
            Ok(r) => r,
            Err(e) => {
                writeln!(out, "{label} analysis FAIL: {e}")?;
                summary.failed += 1;
                continue;
            }
        };
        for ev in &fx.expected {
            let c = ev.check(&report);
            writeln!(
                out,
                "{label} {} {} observed={} tol={} {}",
                ev.field,
                ev.expected,
                c.observed,
                ev.tolerance,
                if c.passed { "PASS" } else { "FAIL" }
            )?;
            if c.passed {
                summary.passed += 1;
            } else {
                summary.failed += 1;
            }
        }
    }
    Ok(summary)
}

pub fn cmd_selftest(out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut run = || -> io::Result<SelftestSummary> {
        let s = check_fixtures(&builtin_fixtures(), analyze, out)?;
        writeln!(
            out,
            "selftest: {} passed, {} failed: {}",
            s.passed,
            s.failed,
            if s.failed == 0 { "PASS" } else { "FAIL" }
        )?;
        Ok(s)
    };
    match run() {
        Ok(s) if s.failed == 0 => EXIT_OK,
        Ok(_) => EXIT_SELFTEST_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: cannot write report: {e}");
            EXIT_INVALID
        }
    }
}
