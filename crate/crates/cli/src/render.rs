//! Exact textual rendering of values, matrices, tensors and reports in the
//! three output formats. Decimal approximations appear only in display
//! output, never in anything a comparison depends on.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use racah_exact::intersection::IntersectionTensor;
use racah_exact::leonard::{RacahSystem, RationalMatrix};
use racah_exact::verify::VerificationReport;
use racah_exact::Surd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Pretty,
    Json,
    Csv,
}

/// Round a display approximation to 12 significant digits.
fn approx(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map(Value::Number).unwrap_or(Value::Null)
}

pub fn render_rational(q: &BigRational, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Pretty | OutputFormat::Csv => format!("{q}\n"),
        OutputFormat::Json => {
            let doc = json!({
                "value": q.to_string(),
                "approx": approx(q.to_f64().unwrap_or(f64::NAN)),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    }
}

pub fn render_surd(s: &Surd, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Pretty | OutputFormat::Csv => format!("{s}\n"),
        OutputFormat::Json => {
            let doc = json!({
                "coeff": s.coeff().to_string(),
                "radicand": s.radicand().to_string(),
                "approx": approx(s.to_f64()),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    }
}

fn matrix_rows(m: &RationalMatrix) -> Vec<Vec<String>> {
    (0..m.order())
        .map(|i| m.row(i).iter().map(|e| e.to_string()).collect())
        .collect()
}

pub fn render_matrix(m: &RationalMatrix, fmt: OutputFormat) -> String {
    let rows = matrix_rows(m);
    match fmt {
        OutputFormat::Csv => {
            let mut out = String::new();
            for row in &rows {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        OutputFormat::Pretty => {
            let n = m.order();
            let mut widths = vec![0usize; n];
            for row in &rows {
                for (j, cell) in row.iter().enumerate() {
                    widths[j] = widths[j].max(cell.len());
                }
            }
            let mut out = String::new();
            for row in &rows {
                let line: Vec<String> = row
                    .iter()
                    .enumerate()
                    .map(|(j, cell)| format!("{cell:>width$}", width = widths[j]))
                    .collect();
                out.push_str(line.join("  ").trim_end());
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let doc = json!({ "order": m.order(), "rows": rows });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("serializable"))
        }
    }
}

fn system_table(sys: &RacahSystem) -> Vec<(&'static str, Vec<String>)> {
    let d = sys.d();
    vec![
        ("a", (0..=d).map(|i| sys.a(i).to_string()).collect()),
        ("b", (0..d).map(|i| sys.b(i).to_string()).collect()),
        ("c", (1..=d).map(|i| sys.c(i).to_string()).collect()),
        ("theta", (0..=d).map(|i| sys.theta(i).to_string()).collect()),
        ("k", (0..=d).map(|i| sys.k(i).to_string()).collect()),
    ]
}

pub fn render_system(sys: &RacahSystem, fmt: OutputFormat) -> String {
    let tables = system_table(sys);
    match fmt {
        OutputFormat::Pretty => {
            let mut out = format!("D = {}\nnu = {}\n", sys.d(), sys.nu());
            for (name, values) in tables {
                out.push_str(&format!("{name}: {}\n", values.join(", ")));
            }
            out
        }
        OutputFormat::Csv => {
            let mut out = String::from("name,values\n");
            for (name, values) in tables {
                out.push_str(&format!("{name},{}\n", values.join(",")));
            }
            out.push_str(&format!("nu,{}\n", sys.nu()));
            out
        }
        OutputFormat::Json => {
            let mut doc = serde_json::Map::new();
            doc.insert("d".into(), Value::from(sys.d() as u64));
            for (name, values) in tables {
                doc.insert(name.into(), json!(values));
            }
            doc.insert("nu".into(), Value::from(sys.nu().to_string()));
            format!(
                "{}\n",
                serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable")
            )
        }
    }
}

fn tensor_json(t: &IntersectionTensor) -> Value {
    let n = t.d() + 1;
    let p: Vec<Vec<Vec<String>>> = (0..n)
        .map(|h| {
            (0..n)
                .map(|i| (0..n).map(|j| t.get(h, i, j).to_string()).collect())
                .collect()
        })
        .collect();
    json!({ "d": t.d(), "route": t.route(), "p": p })
}

fn tensor_csv_rows(t: &IntersectionTensor, with_route: bool, out: &mut String) {
    let n = t.d() + 1;
    for h in 0..n {
        for i in 0..n {
            for j in 0..n {
                if with_route {
                    out.push_str(&format!("{},{h},{i},{j},{}\n", t.route(), t.get(h, i, j)));
                } else {
                    out.push_str(&format!("{h},{i},{j},{}\n", t.get(h, i, j)));
                }
            }
        }
    }
}

pub fn render_tensor(t: &IntersectionTensor, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Csv => {
            let mut out = String::from("h,i,j,p\n");
            tensor_csv_rows(t, false, &mut out);
            out
        }
        OutputFormat::Pretty => {
            let n = t.d() + 1;
            let mut out = format!("p^h_(i,j) for D = {} via route {}\n", t.d(), t.route());
            for h in 0..n {
                out.push_str(&format!("h = {h}:\n"));
                let mut slice = RationalMatrix::zero(n);
                for i in 0..n {
                    for j in 0..n {
                        slice[(i, j)] = t.get(h, i, j).clone();
                    }
                }
                for line in render_matrix(&slice, OutputFormat::Pretty).lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            }
            out
        }
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&tensor_json(t)).expect("serializable")
        ),
    }
}

pub fn render_tensors(tensors: &[IntersectionTensor], fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Csv => {
            let mut out = String::from("route,h,i,j,p\n");
            for t in tensors {
                tensor_csv_rows(t, true, &mut out);
            }
            out
        }
        OutputFormat::Pretty => {
            let mut out = String::new();
            for t in tensors {
                out.push_str(&render_tensor(t, OutputFormat::Pretty));
            }
            out
        }
        OutputFormat::Json => {
            let docs: Vec<Value> = tensors.iter().map(tensor_json).collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&Value::Array(docs)).expect("serializable")
            )
        }
    }
}

pub fn render_report(r: &VerificationReport, fmt: OutputFormat) -> String {
    match fmt {
        OutputFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(r).expect("report is serializable")
        ),
        OutputFormat::Csv => {
            let mut out = String::from("campaign,checks_run,violations,passed\n");
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.campaign,
                r.checks_run,
                r.violations.len(),
                r.passed
            ));
            out
        }
        OutputFormat::Pretty => {
            let mut out = format!("campaign: {}\n", r.campaign);
            let params: Vec<String> =
                r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!("params: {}\n", params.join(" ")));
            out.push_str(&format!("checks run: {}\n", r.checks_run));
            out.push_str(&format!("violations: {}\n", r.violations.len()));
            if let Some(eq) = &r.equality_cases {
                out.push_str(&format!("equality cases: {}\n", eq.len()));
            }
            if let Some(rng) = &r.rng {
                out.push_str(&format!("rng: {rng}\n"));
            }
            out.push_str(&format!("elapsed: {} ms\n", r.elapsed_ms));
            for v in r.violations.iter().take(10) {
                let case: Vec<String> =
                    v.case.iter().map(|(k, val)| format!("{k}={val}")).collect();
                out.push_str(&format!(
                    "violation: [{}] expected {} actual {}\n",
                    case.join(" "),
                    v.expected,
                    v.actual
                ));
            }
            if r.violations.len() > 10 {
                out.push_str(&format!("... and {} more\n", r.violations.len() - 10));
            }
            out.push_str(if r.passed { "result: PASSED\n" } else { "result: FAILED\n" });
            out
        }
    }
}
