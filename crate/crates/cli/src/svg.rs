//! Deterministic SVG 1.1 rendering of plane configurations in the affine
//! chart `x_0 = 1`, drawn as `(x_1/x_0, x_2/x_0)`.
//!
//! Input keys: `"n"` (must be 2), `"points"` (coordinate vectors),
//! `"hyperplanes"` (line coefficient vectors) and `"conics"`, each either a
//! form `{"degree", "terms"}`, or `{"form", "through"}` with a rational point
//! on the conic, or `{"parametrization": [f0, f1, f2]}` with binary forms.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};
use serde_json::Value;
use starconf::exact::HomForm;
use starconf::json::{parse_form, parse_hyperplanes, parse_points};
use starconf::projgeom::{vanishes_at, Hyperplane, PointSet, ProjPoint};
use starconf::rnc::conic_parametrization;

use crate::error::{CliError, CliResult};

type Pt = (f64, f64);

/// Canvas size of the longer side, in pixels.
const CANVAS: f64 = 600.0;
const MARGIN: f64 = 0.1;
/// Samples along a conic parametrization.
const CONIC_SAMPLES: usize = 720;
/// Search box for a rational point on a conic given without one.
const POINT_SEARCH: i64 = 12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Viewport {
    /// Bounding box of the affine points with a 10% margin, or `[-1,1]^2`
    /// when no point is affine.
    pub fn around(points: &[(f64, f64)]) -> Self {
        if points.is_empty() {
            return Viewport {
                xmin: -1.0,
                xmax: 1.0,
                ymin: -1.0,
                ymax: 1.0,
            };
        }
        let fold = |f: fn(&(f64, f64)) -> f64| {
            points
                .iter()
                .map(f)
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
        };
        let pad = |(lo, hi): (f64, f64)| {
            let w = hi - lo;
            if w == 0.0 {
                (lo - 1.0, hi + 1.0)
            } else {
                (lo - MARGIN * w, hi + MARGIN * w)
            }
        };
        let (xmin, xmax) = pad(fold(|p| p.0));
        let (ymin, ymax) = pad(fold(|p| p.1));
        Viewport { xmin, xmax, ymin, ymax }
    }

    fn width(&self) -> f64 {
        self.xmax - self.xmin
    }

    fn height(&self) -> f64 {
        self.ymax - self.ymin
    }

    fn contains(&self, (x, y): (f64, f64)) -> bool {
        (self.xmin..=self.xmax).contains(&x) && (self.ymin..=self.ymax).contains(&y)
    }

    /// Segment of the affine line `a + b x + c y = 0` inside the viewport.
    pub fn clip_line(&self, a: f64, b: f64, c: f64) -> Option<((f64, f64), (f64, f64))> {
        let mut hits: Vec<(f64, f64)> = Vec::new();
        if c != 0.0 {
            for x in [self.xmin, self.xmax] {
                hits.push((x, -(a + b * x) / c));
            }
        }
        if b != 0.0 {
            for y in [self.ymin, self.ymax] {
                hits.push((-(a + c * y) / b, y));
            }
        }
        let eps = 1e-9 * self.width().max(self.height());
        let inside: Vec<(f64, f64)> = hits
            .into_iter()
            .filter(|&(x, y)| {
                x >= self.xmin - eps && x <= self.xmax + eps && y >= self.ymin - eps && y <= self.ymax + eps
            })
            .collect();
        // the two hits farthest apart along the line
        let mut best: Option<(Pt, Pt, f64)> = None;
        for (i, p) in inside.iter().enumerate() {
            for q in &inside[i + 1..] {
                let d = (p.0 - q.0).hypot(p.1 - q.1);
                if best.is_none_or(|b| d > b.2) {
                    best = Some((*p, *q, d));
                }
            }
        }
        best.filter(|b| b.2 > eps).map(|b| (b.0, b.1))
    }
}

fn to_f64(x: &num_bigint::BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn affine(p: &ProjPoint) -> Option<(f64, f64)> {
    let c = p.coords();
    let w = to_f64(&c[0]);
    (w != 0.0).then(|| (to_f64(&c[1]) / w, to_f64(&c[2]) / w))
}

fn eval_binary(f: &HomForm, a: f64, b: f64) -> f64 {
    f.terms()
        .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * a.powi(e[0] as i32) * b.powi(e[1] as i32))
        .sum()
}

/// A smooth rational point of the conic with small coordinates, if any.
fn small_point_on(c: &HomForm) -> Option<ProjPoint> {
    let r = POINT_SEARCH;
    let affine = (-r..=r).flat_map(move |x| (-r..=r).map(move |y| vec![1, x, y]));
    let at_infinity = (-r..=r).map(|y| vec![0, 1, y]).chain([vec![0, 0, 1]]);
    affine
        .chain(at_infinity)
        .filter_map(|v| ProjPoint::from_i64(&v).ok())
        .find(|p| vanishes_at(c, p) && c.gradient_at(&p.as_rationals()).iter().any(|g| !g.is_zero()))
}

fn conic_forms(v: &Value) -> CliResult<[HomForm; 3]> {
    if let Some(par) = v.get("parametrization") {
        let forms = par
            .as_array()
            .ok_or_else(|| CliError::Usage("\"parametrization\" must be an array".into()))?
            .iter()
            .map(parse_form)
            .collect::<starconf::Result<Vec<_>>>()?;
        return forms
            .try_into()
            .map_err(|_| CliError::Usage("a conic parametrization needs three binary forms".into()));
    }
    let form = parse_form(v.get("form").unwrap_or(v))?;
    if form.num_vars() != 3 || form.degree() != 2 {
        return Err(CliError::Usage(format!("not a plane conic: {form}")));
    }
    let through = match v.get("through") {
        Some(p) => {
            let set = parse_points(&serde_json::json!({ "n": 2, "points": [p] }))?;
            set.points()[0].clone()
        }
        None => small_point_on(&form).ok_or_else(|| {
            CliError::Usage(format!("no small rational point found on {form}; give \"through\" or \"parametrization\""))
        })?,
    };
    Ok(conic_parametrization(&form, &through)?)
}

/// Affine polyline pieces of a parametrized conic, split where it passes
/// through the line at infinity or leaves a neighbourhood of the viewport.
fn conic_pieces(par: &[HomForm; 3], vp: &Viewport) -> Vec<Vec<(f64, f64)>> {
    let far = 50.0 * vp.width().max(vp.height());
    let cx = (vp.xmin + vp.xmax) / 2.0;
    let cy = (vp.ymin + vp.ymax) / 2.0;
    let mut pieces = Vec::new();
    let mut cur: Vec<(f64, f64)> = Vec::new();
    let mut last_sign = 0.0;
    for k in 0..=CONIC_SAMPLES {
        let theta = std::f64::consts::PI * k as f64 / CONIC_SAMPLES as f64;
        let (a, b) = (theta.cos(), theta.sin());
        let v: Vec<f64> = par.iter().map(|f| eval_binary(f, a, b)).collect();
        let sign = v[0].signum();
        let pt = (v[1] / v[0], v[2] / v[0]);
        let ok = v[0].abs() > 1e-12 && (pt.0 - cx).abs() < far && (pt.1 - cy).abs() < far;
        if !ok || (last_sign != 0.0 && sign != last_sign) {
            if cur.len() > 1 {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.clear();
        }
        if ok {
            cur.push(pt);
            last_sign = sign;
        } else {
            last_sign = 0.0;
        }
    }
    if cur.len() > 1 {
        pieces.push(cur);
    }
    pieces
}

struct Canvas {
    vp: Viewport,
    scale: f64,
}

impl Canvas {
    fn px(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.vp.xmin) * self.scale, (self.vp.ymax - y) * self.scale)
    }
}

/// Renders the configuration; fails for anything but the plane.
pub fn render(input: &Value) -> CliResult<String> {
    let n = input
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| CliError::Usage("missing integer field \"n\"".into()))?;
    if n != 2 {
        return Err(CliError::Usage(format!("svg export supports only n = 2, got n = {n}")));
    }
    let points = match input.get("points") {
        Some(_) => parse_points(input)?,
        None => PointSet::empty(2),
    };
    let lines: Vec<Hyperplane> = match input.get("hyperplanes") {
        Some(_) => parse_hyperplanes(input)?,
        None => Vec::new(),
    };
    let conics = match input.get("conics") {
        Some(Value::Array(cs)) => cs.iter().map(conic_forms).collect::<CliResult<Vec<_>>>()?,
        Some(_) => return Err(CliError::Usage("\"conics\" must be an array".into())),
        None => Vec::new(),
    };
    let affine_points: Vec<(f64, f64)> = points.iter().filter_map(affine).collect();
    let vp = Viewport::around(&affine_points);
    let scale = CANVAS / vp.width().max(vp.height());
    let canvas = Canvas { vp, scale };
    let (w, h) = (vp.width() * scale, vp.height() * scale);
    let stroke = 1.5;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w:.2}" height="{h:.2}" fill="white"/>"#);
    let _ = writeln!(s, r##"<g fill="none" stroke="#1f5fa8" stroke-width="{stroke}">"##);
    for par in &conics {
        for piece in conic_pieces(par, &vp) {
            let pts: Vec<String> = piece
                .iter()
                .map(|&p| {
                    let (x, y) = canvas.px(p);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(s, r#"<polyline points="{}"/>"#, pts.join(" "));
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g stroke="#555555" stroke-width="{stroke}">"##);
    for l in &lines {
        let c: Vec<f64> = l.coeffs().iter().map(to_f64).collect();
        if let Some((p, q)) = vp.clip_line(c[0], c[1], c[2]) {
            let ((x1, y1), (x2, y2)) = (canvas.px(p), canvas.px(q));
            let _ = writeln!(s, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#);
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g fill="black">"#);
    for p in affine_points.iter().filter(|p| vp.contains(**p)) {
        let (x, y) = canvas.px(*p);
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4"/>"#);
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_canvas() {
        let s = render(&json!({ "n": 2, "points": [] })).unwrap();
        assert!(s.contains("<svg"));
        assert!(!s.contains("<circle"));
        assert_eq!(Viewport::around(&[]).xmin, -1.0);
    }

    #[test]
    fn only_the_plane() {
        assert!(render(&json!({ "n": 3, "points": [] })).is_err());
    }

    #[test]
    fn clipping() {
        let vp = Viewport::around(&[(0.0, 0.0), (10.0, 10.0)]);
        let (p, q) = vp.clip_line(-5.0, 1.0, 0.0).unwrap();
        assert_eq!((p.0, q.0), (5.0, 5.0));
        assert!((p.1 - q.1).abs() > 11.0);
        assert!(vp.clip_line(100.0, 1.0, 0.0).is_none());
        assert!(vp.clip_line(1.0, 0.0, 0.0).is_none());
    }

    #[test]
    fn conic_without_point_is_searched() {
        let c = json!({ "n": 2, "conics": [{ "degree": 2, "terms": { "0,2,0": "1", "1,0,1": "-1" } }] });
        let s = render(&c).unwrap();
        assert!(s.contains("<polyline"));
    }
}
