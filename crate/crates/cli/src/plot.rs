//! CSV and SVG renderings of sampled boundary curves.

use std::fmt::Write;

use moduli_core::arith::qapprox;
use moduli_core::boundary::CurveRow;
use moduli_core::Rational;
use num_traits::ToPrimitive;

pub const CSV_HEADER: &str = "mu,delta,delta_prime_approx,exceptional_slope";

/// Vertical range of the plot: `Δ ∈ [0, 1.1]`.
const DELTA_TOP: f64 = 1.1;

pub fn csv(rows: &[CurveRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        match &row.values {
            Some(v) => writeln!(
                out,
                "{},{},{},{}",
                row.mu,
                v.delta,
                qapprox(&v.delta_prime, 12),
                v.exceptional_slope
            ),
            None => writeln!(out, "{},,,", row.mu),
        }
        .expect("writing to a String");
    }
    out
}

pub struct Frame {
    pub mu_min: Rational,
    pub mu_max: Rational,
    pub width: u32,
    pub height: u32,
}

impl Frame {
    fn x(&self, mu: &Rational) -> f64 {
        let t = (mu - &self.mu_min) / (&self.mu_max - &self.mu_min);
        t.to_f64().unwrap_or(0.0) * f64::from(self.width)
    }

    fn y(&self, delta: f64) -> f64 {
        f64::from(self.height) * (1.0 - delta / DELTA_TOP)
    }
}

fn polyline(points: &[(f64, f64)], style: &str) -> String {
    let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
    format!("  <polyline fill=\"none\" {style} points=\"{}\"/>\n", pts.join(" "))
}

/// δ as a solid polyline, δ′ dashed, and a dotted vertical line at every
/// exceptional slope met by the samples.
pub fn svg(rows: &[CurveRow], frame: &Frame) -> String {
    let (w, h) = (frame.width, frame.height);
    let mut delta = Vec::new();
    let mut delta_prime = Vec::new();
    let mut slopes: Vec<&Rational> = Vec::new();
    for row in rows {
        let Some(v) = &row.values else { continue };
        let x = frame.x(&row.mu);
        delta.push((x, frame.y(v.delta.to_f64().unwrap_or(f64::NAN))));
        let dp: f64 = qapprox(&v.delta_prime, 12).parse().unwrap_or(f64::NAN);
        delta_prime.push((x, frame.y(dp)));
        if !slopes.contains(&&v.exceptional_slope) {
            slopes.push(&v.exceptional_slope);
        }
    }
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n"
    );
    for mu in slopes.iter().filter(|mu| **mu >= &frame.mu_min && **mu <= &frame.mu_max) {
        let x = frame.x(mu);
        writeln!(
            out,
            "  <line x1=\"{x:.3}\" y1=\"0\" x2=\"{x:.3}\" y2=\"{h}\" stroke=\"gray\" stroke-dasharray=\"1,4\"><title>{mu}</title></line>"
        )
        .expect("writing to a String");
    }
    out.push_str(&polyline(&delta, "stroke=\"black\""));
    out.push_str(&polyline(&delta_prime, "stroke=\"firebrick\" stroke-dasharray=\"6,4\""));
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use moduli_core::arith::int;
    use moduli_core::boundary::sample_curves;

    #[test]
    fn csv_rows() {
        let rows = sample_curves(&int(-1), &int(0), 3).unwrap();
        let text = csv(&rows);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "-1,1,0.000000000000,-1");
        assert_eq!(lines[2], "-1/2,5/8,0.375000000000,-1/2");
        assert_eq!(lines[3], "0,1,0.000000000000,0");
    }

    #[test]
    fn svg_structure() {
        let rows = sample_curves(&int(-1), &int(0), 41).unwrap();
        let frame = Frame { mu_min: int(-1), mu_max: int(0), width: 400, height: 300 };
        let text = svg(&rows, &frame);
        assert_eq!(text.matches("<polyline").count(), 2);
        assert_eq!(text.matches("stroke-dasharray=\"6,4\"").count(), 1);
        assert!(text.matches("<line").count() >= 3);
        assert!(text.contains("viewBox=\"0 0 400 300\""));
    }
}
