use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde_json::json;

use nestq::cloning::{self, CopierReport};
use nestq::heap::{dsiht_chain, transfer_unitary};
use nestq::nesting::{self, ShotHistogram};
use nestq::{verify as checks, Qubit, ShotRng, UnitaryMatrix};

use crate::input::{self, CliError, CliResult};
use crate::Format;

pub const EXIT_VALIDATION: u8 = 1;

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => input::write_file(p, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(format!("writing stdout: {e}")))
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn csv_text<R: serde::Serialize>(header: &[&str], rows: impl IntoIterator<Item = R>) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.serialize(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn dsiht(
    inline: Option<String>,
    generator: Option<PathBuf>,
    renormalize: bool,
    format: Format,
    precision: usize,
    out: Option<PathBuf>,
) -> CliResult<()> {
    let values = match (inline, generator) {
        (Some(text), _) => input::inline_state(&text, renormalize)?.into_amplitudes(),
        (None, Some(path)) => input::read_state(&path)?.into_amplitudes(),
        (None, None) => return Err(CliError::Validation("need --inline or --generator".into())),
    };
    let chain = dsiht_chain(&values)?;
    let matrix = chain.matrix();
    let doc = json!({ "chain": chain.to_document(), "matrix": matrix.to_document() });
    if let Some(path) = &out {
        input::write_file(path, &pretty(&doc))?;
    }
    let text = match format {
        Format::Json => pretty(&doc),
        Format::Text | Format::Csv => {
            let mut s = String::from("rotations:\n");
            for r in chain.rotations() {
                let (p, q) = r.plane();
                let _ = writeln!(s, "  ({p},{q}) {:>9.2}°", r.degrees());
            }
            s.push_str("matrix:\n");
            s.push_str(&matrix.render(precision));
            s
        }
    };
    emit(None, &text)
}

fn residual(u: &UnitaryMatrix, from: &[f64], to: &[f64]) -> CliResult<f64> {
    let image = u.apply(from)?;
    Ok(image.iter().zip(to).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
}

pub fn transfer(from: &Path, to: &Path, format: Format, precision: usize, out: Option<PathBuf>) -> CliResult<()> {
    let source = input::read_state(from)?;
    let target = input::read_state(to)?;
    let u = transfer_unitary(source.amplitudes(), target.amplitudes())?;
    let res = residual(&u, source.amplitudes(), target.amplitudes())?;
    if let Some(path) = &out {
        input::write_file(path, &format!("{}\n", u.to_json()))?;
    }
    let text = match format {
        Format::Json => pretty(&json!({ "matrix": u.to_document(), "residual": res })),
        Format::Text | Format::Csv => format!(
            "residual: {res:.3e}\ndet: {:.precision$}\n{}",
            u.det(),
            u.render(precision)
        ),
    };
    emit(None, &text)
}

#[derive(serde::Serialize)]
struct HistogramRow {
    outcome: u8,
    count: u64,
    frequency: f64,
}

fn histogram_csv(h: &ShotHistogram) -> CliResult<String> {
    let rows = (0..2u8).map(|m| HistogramRow {
        outcome: m,
        count: h.counts[usize::from(m)],
        frequency: h.frequency(m),
    });
    csv_text(&["outcome", "count", "frequency"], rows)
}

pub fn nest(
    a: f64,
    b: f64,
    shots: u64,
    seed: u64,
    renormalize: bool,
    transcript: Option<PathBuf>,
    histogram: Option<PathBuf>,
) -> CliResult<()> {
    let q = input::qubit(a, b, renormalize)?;
    if shots == 0 {
        return Err(CliError::Validation("--shots must be at least 1".into()));
    }
    let run = nesting::run(q, &mut ShotRng::new(seed))?;
    let hist = nesting::sample(q, shots, seed)?;
    let mut transcript_text =
        serde_json::to_string_pretty(&run.transcript(seed)).expect("transcript serializes");
    transcript_text.push('\n');
    let csv = histogram_csv(&hist)?;
    emit(transcript.as_deref(), &transcript_text)?;
    emit(histogram.as_deref(), &csv)?;
    Ok(())
}

pub struct CopyArgs {
    pub source: Option<(f64, f64)>,
    pub test: Option<(f64, f64)>,
    pub hadamard: bool,
    pub sweep: Option<usize>,
    pub renormalize: bool,
    pub format: Format,
    pub precision: usize,
    pub out: Option<PathBuf>,
}

fn report_json(r: &CopierReport, hadamard: bool) -> serde_json::Value {
    json!({
        "copier": r.copier.to_document(),
        "hand_built": hadamard,
        "source": r.built_for.map(|q| [q.a(), q.b()]),
        "test": [r.tested_on.a(), r.tested_on.b()],
        "overlap": r.overlap,
        "fidelity": r.fidelity,
        "exact": r.exact,
    })
}

pub fn copycheck(args: CopyArgs) -> CliResult<()> {
    let source = args
        .source
        .map(|(a, b)| input::qubit(a, b, args.renormalize))
        .transpose()?;
    let test = args
        .test
        .map(|(c, d)| input::qubit(c, d, args.renormalize))
        .transpose()?;
    let copier = if args.hadamard {
        cloning::hadamard_copier()
    } else {
        cloning::copier_for(source.ok_or_else(|| CliError::Validation("need --a and --b".into()))?)
    };

    if let Some(grid) = args.sweep {
        let sweep = cloning::fidelity_sweep(&copier, grid)?;
        let csv = csv_text(&["angle_degrees", "fidelity", "exact"], &sweep.points)?;
        return emit(args.out.as_deref(), &csv);
    }

    let tested = test.or(source).unwrap_or_else(Qubit::plus);
    let mut report = cloning::clone_fidelity(&copier, tested)?;
    if !args.hadamard {
        report.built_for = source;
    }
    let text = match args.format {
        Format::Json => pretty(&report_json(&report, args.hadamard)),
        Format::Text | Format::Csv => {
            let p = args.precision;
            let mut s = String::new();
            let name = if args.hadamard { "plus/minus copier" } else { "heap-transform copier" };
            let _ = writeln!(s, "copier: {name}");
            if let Some(q) = report.built_for {
                let _ = writeln!(s, "source: ({:.p$}, {:.p$})", q.a(), q.b());
            }
            let _ = writeln!(s, "test: ({:.p$}, {:.p$})", tested.a(), tested.b());
            let _ = writeln!(s, "overlap: {:.p$}", report.overlap);
            let _ = writeln!(s, "fidelity: {:.p$}", report.fidelity);
            let _ = writeln!(s, "exact: {}", report.exact);
            s.push_str(&report.copier.render(p));
            s
        }
    };
    emit(args.out.as_deref(), &text)
}

pub fn verify() -> CliResult<()> {
    let results = checks::run_all();
    let mut text = String::new();
    for c in &results {
        let _ = writeln!(text, "{c}");
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    let _ = writeln!(text, "{} of {} checks passed", results.len() - failed, results.len());
    emit(None, &text)?;
    if failed > 0 {
        return Err(CliError::Verify(failed));
    }
    Ok(())
}
