//! Deterministic JSON/CSV rendering for subcommand reports. All floats go
//! through the core text formatters so numbers round-trip losslessly and
//! identical inputs produce byte-identical output.

use toepcirc::analysis::{ConvergenceRecord, ErrorDecomposition};
use toepcirc::textfmt::{float_repr, json_float, json_string};
use toepcirc::{Complex64, Result};

fn complex_array(v: &[Complex64]) -> String {
    let mut out = String::from("[");
    for (i, z) in v.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!("[{},{}]", json_float(z.re), json_float(z.im)));
    }
    out.push(']');
    out
}

pub fn solve_json(
    symbol: &str,
    n: usize,
    rhs: &str,
    x_star: &[Complex64],
    residual: f64,
) -> String {
    format!(
        "{{\"symbol\":{},\"n\":{},\"rhs\":{},\"x_star\":{},\"residual\":{}}}",
        json_string(symbol),
        n,
        json_string(rhs),
        complex_array(x_star),
        json_float(residual)
    )
}

pub fn converge_json(symbol: &str, rows: &[(usize, Result<ConvergenceRecord>)]) -> String {
    let mut out = format!("{{\"symbol\":{},\"rows\":[", json_string(symbol));
    for (i, (n, row)) in rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        match row {
            Ok(r) => out.push_str(&format!(
                "{{\"n\":{},\"epsilon\":{},\"kappa\":{},\"vec_err\":{},\"state_err\":{},\
                 \"bound_vec\":{},\"bound_state\":{},\"success_probability\":{},\
                 \"rhs_kind\":{},\"seed\":{}}}",
                r.n,
                json_float(r.epsilon),
                json_float(r.kappa),
                json_float(r.vec_err),
                json_float(r.state_err),
                json_float(r.bound_vec),
                json_float(r.bound_state),
                json_float(r.success_probability),
                json_string(&r.rhs_kind),
                r.seed
            )),
            Err(e) => out.push_str(&format!(
                "{{\"n\":{},\"error\":{}}}",
                n,
                json_string(&e.to_string())
            )),
        }
    }
    out.push_str("]}");
    out
}

pub fn decompose_json(symbol: &str, rows: &[(usize, ErrorDecomposition)]) -> String {
    let mut out = format!("{{\"symbol\":{},\"rows\":[", json_string(symbol));
    for (i, (n, d)) in rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"n\":{},\"sampling_term\":{},\"wrap_term\":{},\"total_rel\":{},\"theorem_bound\":{}}}",
            n,
            json_float(d.sampling_term),
            json_float(d.wrap_term),
            json_float(d.total_rel),
            json_float(d.theorem_bound)
        ));
    }
    out.push_str("]}");
    out
}

pub fn decompose_csv(rows: &[(usize, ErrorDecomposition)]) -> String {
    let mut out = String::from("n,sampling_term,wrap_term,total_rel,theorem_bound\n");
    for (n, d) in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            n,
            float_repr(d.sampling_term),
            float_repr(d.wrap_term),
            float_repr(d.total_rel),
            float_repr(d.theorem_bound)
        ));
    }
    out
}

pub fn eigens_json(symbol: &str, rows: &[(usize, f64)]) -> String {
    let mut out = format!("{{\"symbol\":{},\"rows\":[", json_string(symbol));
    for (i, (n, gap)) in rows.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&format!(
            "{{\"n\":{},\"max_gap\":{}}}",
            n,
            json_float(*gap)
        ));
    }
    out.push_str("]}");
    out
}

pub fn eigens_csv(rows: &[(usize, f64)]) -> String {
    let mut out = String::from("n,max_gap\n");
    for (n, gap) in rows {
        out.push_str(&format!("{},{}\n", n, float_repr(*gap)));
    }
    out
}
