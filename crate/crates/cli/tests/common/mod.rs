#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

/// Relative tolerance for numeric fields in golden comparisons. Values are
/// deterministic on one platform; the slack absorbs last-bit differences
/// between libm implementations.
pub const GOLDEN_RTOL: f64 = 1e-10;

pub fn qfid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfid"))
        .args(args)
        .output()
        .expect("qfid runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn code(out: &Output) -> i32 {
    out.status.code().unwrap_or(-1)
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn golden_input(name: &str) -> String {
    golden_dir().join(name).to_str().unwrap().to_string()
}

fn close(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= GOLDEN_RTOL * a.abs().max(b.abs()).max(1e-300)
}

/// Same keys, same JSON types, strings equal, numbers within [`GOLDEN_RTOL`].
pub fn json_matches(got: &Value, want: &Value, at: &str) -> Result<(), String> {
    match (got, want) {
        (Value::Object(g), Value::Object(w)) => {
            let gk: Vec<_> = g.keys().collect();
            let wk: Vec<_> = w.keys().collect();
            if gk != wk {
                return Err(format!("{at}: keys {gk:?} vs {wk:?}"));
            }
            for (k, v) in w {
                json_matches(&g[k], v, &format!("{at}.{k}"))?;
            }
            Ok(())
        }
        (Value::Array(g), Value::Array(w)) => {
            if g.len() != w.len() {
                return Err(format!("{at}: length {} vs {}", g.len(), w.len()));
            }
            for (i, (x, y)) in g.iter().zip(w).enumerate() {
                json_matches(x, y, &format!("{at}[{i}]"))?;
            }
            Ok(())
        }
        (Value::Number(g), Value::Number(w)) => {
            if g.is_f64() != w.is_f64() {
                return Err(format!("{at}: number kind {g} vs {w}"));
            }
            if close(g.as_f64().unwrap(), w.as_f64().unwrap()) {
                Ok(())
            } else {
                Err(format!("{at}: {g} vs {w}"))
            }
        }
        (g, w) if g == w => Ok(()),
        (g, w) => Err(format!("{at}: {g} vs {w}")),
    }
}

/// Compares bench CSV text column by column; wall_nanos is ignored.
pub fn csv_matches(got: &str, want: &str) -> Result<(), String> {
    let gl: Vec<&str> = got.lines().collect();
    let wl: Vec<&str> = want.lines().collect();
    if gl.len() != wl.len() {
        return Err(format!("{} rows vs {}", gl.len(), wl.len()));
    }
    if gl[0] != wl[0] {
        return Err(format!("header {:?} vs {:?}", gl[0], wl[0]));
    }
    let header: Vec<&str> = wl[0].split(',').collect();
    for (r, (g, w)) in gl.iter().zip(&wl).enumerate().skip(1) {
        for ((name, x), y) in header.iter().zip(g.split(',')).zip(w.split(',')) {
            let ok = match *name {
                "wall_nanos" => x.parse::<u64>().is_ok(),
                "value" | "std_error" => close(x.parse().unwrap(), y.parse().unwrap()),
                _ => x == y,
            };
            if !ok {
                return Err(format!("row {r}, {name}: {x} vs {y}"));
            }
        }
    }
    Ok(())
}

pub enum GoldenKind {
    Json,
    Csv,
}

pub struct GoldenCase {
    pub name: &'static str,
    pub args: Vec<String>,
    pub kind: GoldenKind,
}

/// Every golden case. `{rho}` and `{sigma}` stand for the committed input
/// matrices, `{out}` for a scratch output path.
pub fn golden_cases() -> Vec<GoldenCase> {
    use GoldenKind::*;
    let table: &[(&str, &str, GoldenKind)] = &[
        ("fidelity_uhlmann.json", "fidelity --rho {rho} --sigma {sigma} --method uhlmann", Json),
        ("fidelity_product.json", "fidelity --rho {rho} --sigma {sigma} --method product", Json),
        ("fidelity_cheb_exact.json", "fidelity --rho {rho} --sigma {sigma} --method cheb --degree 500", Json),
        (
            "fidelity_cheb_stoch.json",
            "fidelity --rho {rho} --sigma {sigma} --method cheb --degree 500 --probes 32 --seed 7",
            Json,
        ),
        ("divergence_renyi_inf.json", "divergence --rho {rho} --sigma {sigma} --kind renyi --alpha 2", Json),
        ("divergence_renyi_half.json", "divergence --rho {rho} --sigma {sigma} --kind renyi --alpha 0.5", Json),
        (
            "divergence_sandwiched.json",
            "divergence --rho {sigma} --sigma {rho} --kind sandwiched --alpha 2",
            Json,
        ),
        (
            "divergence_alpha_z.json",
            "divergence --rho {rho} --sigma {sigma} --kind alpha-z --alpha 0.5 --z 0.5",
            Json,
        ),
        ("divergence_relative.json", "divergence --rho {sigma} --sigma {rho} --kind relative", Json),
        ("cheb_coeffs_closed.json", "cheb-coeffs --b 1 --degree 8 --func sqrt --mode closed", Json),
        (
            "cheb_coeffs_power.json",
            "cheb-coeffs --b 2 --degree 6 --func power --exponent 1.5 --mode quadrature --nodes 4096",
            Json,
        ),
        ("povm_check.json", "povm-check --rho {rho} --sigma {sigma} --samples 20 --seed 3", Json),
        (
            "bench.csv",
            "bench --dims 2,3 --trials 2 --methods uhlmann,product,cheb-exact,cheb-stoch --seed 5 --degree 200 --probes 8 --out {out}",
            Csv,
        ),
    ];
    table
        .iter()
        .map(|(name, cmd, kind)| GoldenCase {
            name,
            args: cmd.split(' ').map(String::from).collect(),
            kind: match kind {
                Json => Json,
                Csv => Csv,
            },
        })
        .collect()
}

/// Runs one case and compares against its golden file. With
/// `QFID_BLESS=1` the golden file is rewritten instead.
pub fn check_golden(case: &GoldenCase, scratch: &Path) -> Result<(), String> {
    let out_path = scratch.join(case.name);
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| match a.as_str() {
            "{rho}" => golden_input("rho.txt"),
            "{sigma}" => golden_input("sigma.txt"),
            "{out}" => out_path.to_str().unwrap().to_string(),
            other => other.to_string(),
        })
        .collect();
    let arg_refs: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = qfid(&arg_refs);
    if code(&out) != 0 {
        return Err(format!(
            "{}: exit {} ({})",
            case.name,
            code(&out),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let got = match case.kind {
        GoldenKind::Json => stdout(&out),
        GoldenKind::Csv => std::fs::read_to_string(&out_path).map_err(|e| e.to_string())?,
    };
    let golden = golden_dir().join(case.name);
    if std::env::var("QFID_BLESS").as_deref() == Ok("1") {
        std::fs::write(&golden, &got).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let want = std::fs::read_to_string(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
    match case.kind {
        GoldenKind::Json => {
            let g: Value = serde_json::from_str(&got).map_err(|e| format!("{}: {e}", case.name))?;
            let w: Value = serde_json::from_str(&want).map_err(|e| format!("{}: {e}", case.name))?;
            json_matches(&g, &w, case.name)
        }
        GoldenKind::Csv => csv_matches(&got, &want).map_err(|e| format!("{}: {e}", case.name)),
    }
}
