//! Browser demo: small JSON-returning entry points over `attachlab`.
//!
//! Build with `wasm-pack build crates/demo --target web` and serve
//! `crates/demo/www/` next to the generated `pkg/`.

use attachlab::analysis::gamma_of_m;
use attachlab::experiments::fit_ccdf_slope;
use attachlab::lowerbound::{lonely_stats, sweet_cherries};
use attachlab::matching::success_rate;
use attachlab::{generate, GenParams, Model};
use serde_json::json;
use wasm_bindgen::prelude::*;

const MAX_N: u32 = 2_000_000;

fn model(tag: &str) -> Result<Model, String> {
    Model::from_tag(tag).ok_or_else(|| format!("unknown model `{tag}` (use ua or pa)"))
}

fn check_n(n: u32) -> Result<(), String> {
    if n == 0 || n > MAX_N {
        return Err(format!("n must lie in 1..={MAX_N}"));
    }
    Ok(())
}

/// Degree ccdf `P(D ≥ k)` on a log-spaced grid plus the fitted slope.
pub fn degree_ccdf_json(model_tag: &str, n: u32, m: u32, seed: u64) -> Result<String, String> {
    check_n(n)?;
    let g = generate(&GenParams::new(model(model_tag)?, n, m, seed)).map_err(|e| e.to_string())?;
    let mut deg = g.degrees()[1..].to_vec();
    deg.sort_unstable();
    let total = deg.len() as f64;
    let max = deg.last().copied().unwrap_or(0);
    let mut points = Vec::new();
    let mut k = 1u64;
    while k <= max {
        let below = deg.partition_point(|&d| d < k);
        points.push([k as f64, (deg.len() - below) as f64 / total]);
        k = ((k as f64 * 1.25).ceil() as u64).max(k + 1);
    }
    let fit = fit_ccdf_slope(&deg, 5, 100);
    Ok(json!({
        "n": n,
        "m": m,
        "points": points,
        "slope": if fit.degenerate { None } else { Some(fit.slope) },
    })
    .to_string())
}

/// Lonely-vertex class fractions for preferential attachment with `m = 2`.
pub fn lonely_profile_json(n: u32, c: f64, seed: u64) -> Result<String, String> {
    check_n(n)?;
    let g = generate(&GenParams::new(Model::Preferential, n, 2, seed)).map_err(|e| e.to_string())?;
    let s = lonely_stats(&g, c).map_err(|e| e.to_string())?;
    let cherries = sweet_cherries(&g).map_err(|e| e.to_string())?.count;
    let f = |x: usize| x as f64 / n as f64;
    Ok(json!({
        "n": n,
        "c": c,
        "a": f(s.a_n),
        "b": f(s.b_n),
        "c_old_lonely": f(s.c_n),
        "d": f(s.d_n),
        "sweet_cherries": cherries,
    })
    .to_string())
}

/// Expected success fraction against `m₂`, next to the `γ(m)/2` target.
pub fn success_curve_json(alpha: f64, m1: u32, m2_max: u32, halved: bool) -> Result<String, String> {
    if m2_max == 0 || m2_max > 100_000 {
        return Err("m2_max must lie in 1..=100000".into());
    }
    let target = gamma_of_m(m1).map_err(|e| e.to_string())? / 2.0;
    let curve = (1..=m2_max)
        .map(|m2| success_rate(alpha, m2, halved).map(|s| [m2 as f64, s]))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let first = curve.iter().find(|p| p[1] > target).map(|p| p[0] as u32);
    Ok(json!({ "alpha": alpha, "target": target, "curve": curve, "first_m2_above": first }).to_string())
}

#[wasm_bindgen]
pub fn degree_ccdf(model: &str, n: u32, m: u32, seed: u32) -> Result<String, JsError> {
    degree_ccdf_json(model, n, m, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lonely_profile(n: u32, c: f64, seed: u32) -> Result<String, JsError> {
    lonely_profile_json(n, c, seed as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn success_curve(alpha: f64, m1: u32, m2_max: u32, halved: bool) -> Result<String, JsError> {
    success_curve_json(alpha, m1, m2_max, halved).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn ccdf_is_monotone() {
        let v = parse(&degree_ccdf_json("pa", 20_000, 3, 1).unwrap());
        let pts = v["points"].as_array().unwrap();
        assert_eq!(pts[0][1], 1.0);
        let ys: Vec<f64> = pts.iter().map(|p| p[1].as_f64().unwrap()).collect();
        assert!(ys.windows(2).all(|w| w[1] <= w[0]));
        assert!(v["slope"].as_f64().unwrap() < -1.0);
        assert!(degree_ccdf_json("zz", 10, 1, 0).is_err());
        assert!(degree_ccdf_json("ua", 0, 1, 0).is_err());
    }

    #[test]
    fn lonely_profile_fractions() {
        let v = parse(&lonely_profile_json(20_000, 0.25, 3).unwrap());
        assert!((v["d"].as_f64().unwrap() - 0.21875).abs() < 0.02);
        assert!(lonely_profile_json(100, 1.5, 3).is_err());
    }

    #[test]
    fn success_curve_crosses_target() {
        let v = parse(&success_curve_json(0.0538, 120, 60, false).unwrap());
        assert_eq!(v["curve"].as_array().unwrap().len(), 60);
        let first = v["first_m2_above"].as_u64().unwrap();
        assert!(first <= 39);
        assert!(success_curve_json(0.0538, 120, 0, false).is_err());
    }
}
