//! Constructions emitted as JSON. Outputs carry `points`, `hyperplanes` and
//! `conics` keys in the form the SVG renderer reads.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use starconf::exact::rational::parse_rational;
use starconf::exact::rational::rational_to_string;
use starconf::exact::{HomForm, RatMatrix, Rational};
use starconf::hadamard::{coordinate_power_line, implicit_conic, line_had_power_hyperplane, power_curve, sqfree_had_power, LineParam};
use starconf::json as js;
use starconf::polygon::{circumscribed_polygon, Octagon};
use starconf::projgeom::{star_configuration, Hyperplane, PointSet, ProjPoint};
use starconf::rnc::{contact_star, osculating_hyperplane, random_params, rnc_point, standard_rnc, BinaryParam};

use crate::error::{CliError, CliResult};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_int(s: &str) -> CliResult<BigInt> {
    s.trim().parse().map_err(|_| usage(format!("not an integer: {s:?}")))
}

fn parse_ints(s: &str, sep: char) -> CliResult<Vec<BigInt>> {
    s.split(sep).map(parse_int).collect()
}

/// A tangency parameter: `t` for `[1:t]` or `a:b`.
pub fn parse_param(s: &str) -> CliResult<BinaryParam> {
    let v = parse_ints(s, ':')?;
    let p = match v.as_slice() {
        [t] => BinaryParam::new(BigInt::from(1), t.clone()),
        [a, b] => BinaryParam::new(a.clone(), b.clone()),
        _ => return Err(usage(format!("bad parameter {s:?}: expected t or a:b"))),
    };
    Ok(p?)
}

/// Comma-separated parameters.
pub fn parse_params(s: &str) -> CliResult<Vec<BinaryParam>> {
    s.split(',').map(parse_param).collect()
}

/// Variable index of `x, y, z, t, w` or `x0, x1, ...`.
fn var_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "t" => Some(3),
        "w" => Some(4),
        _ => name.strip_prefix('x')?.parse().ok(),
    }
}

/// Parses a linear form such as `x+y-z` or `2*x0 - x3` into `num_vars`
/// coefficients.
pub fn parse_linear_form(s: &str, num_vars: usize) -> CliResult<Vec<Rational>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(usage("empty linear form"));
    }
    let mut coeffs = vec![Rational::from_integer(0.into()); num_vars];
    let mut terms = Vec::new();
    let mut cur = String::new();
    for c in compact.chars() {
        if (c == '+' || c == '-') && !cur.is_empty() && !cur.ends_with('*') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(c);
    }
    terms.push(cur);
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term.strip_prefix('+').unwrap_or(&term)),
        };
        let split = body.find(|c: char| c.is_ascii_alphabetic()).ok_or_else(|| usage(format!("term without a variable: {term:?}")))?;
        let (num, var) = body.split_at(split);
        let num = num.trim_end_matches('*');
        let c = if num.is_empty() {
            Rational::from_integer(1.into())
        } else {
            parse_rational(num).map_err(|_| usage(format!("bad coefficient in {term:?}")))?
        };
        let i = var_index(var)
            .filter(|&i| i < num_vars)
            .ok_or_else(|| usage(format!("unknown variable {var:?} for {num_vars} coordinates")))?;
        coeffs[i] += c * Rational::from_integer(sign.into());
    }
    Ok(coeffs)
}

fn conic_entry(c: &HomForm, through: &ProjPoint) -> Value {
    json!({ "form": js::form(c), "through": js::point(through) })
}

fn standard_conic_entry() -> Value {
    let g = standard_rnc(2);
    let c = starconf::rnc::forms_through(&(0..5).map(|t| rnc_point(&g, &BinaryParam::affine(t))).collect::<Vec<_>>(), 2, 2);
    conic_entry(&c[0].normalized(), &rnc_point(&g, &BinaryParam::affine(0)))
}

/// Contact stars on the standard rational normal curve of P^n, one per
/// `;`-separated group of parameters, or one random star of `r` lines.
pub fn contact_stars(n: usize, params: Option<&str>, r: Option<usize>, seed: u64) -> CliResult<Value> {
    if n < 1 {
        return Err(usage("--n must be at least 1"));
    }
    let groups: Vec<Vec<BinaryParam>> = match (params, r) {
        (Some(p), _) => p.split(';').map(parse_params).collect::<CliResult<_>>()?,
        (None, r) => vec![random_params(&mut ChaCha8Rng::seed_from_u64(seed), r.unwrap_or(n + 2))],
    };
    let g = standard_rnc(n);
    let stars = groups
        .iter()
        .map(|ps| contact_star(&g, ps))
        .collect::<starconf::Result<Vec<_>>>()?;
    let mut all = PointSet::empty(n);
    let mut hyperplanes = Vec::new();
    for s in &stars {
        all = all.union(&s.points);
        hyperplanes.extend(s.hyperplanes.iter().cloned());
    }
    let mut out = json!({
        "kind": "contact-star",
        "n": n,
        "curve": g.forms().iter().map(js::form).collect::<Vec<_>>(),
        "stars": stars.iter().map(js::contact_star).collect::<Vec<_>>(),
        "points": all.iter().map(js::point).collect::<Vec<_>>(),
        "hyperplanes": js::hyperplane_list(&hyperplanes),
    });
    if n == 2 {
        out["conics"] = json!([standard_conic_entry()]);
    }
    Ok(out)
}

/// Points of the line given by `items`: an integer `t` is the point with
/// first coordinates `1, t` (the rest solved from the equations), and
/// `a:b:...` is a full point.
fn line_points(eqs: &[Vec<Rational>], n: usize, items: &str) -> CliResult<Vec<ProjPoint>> {
    items
        .split(',')
        .map(|item| {
            let v = parse_ints(item, ':')?;
            let p = if v.len() == 1 {
                solve_on_line(eqs, n, &v[0])?
            } else if v.len() == n + 1 {
                ProjPoint::new(v)?
            } else {
                return Err(usage(format!("point {item:?} needs 1 or {} entries", n + 1)));
            };
            let on_line = eqs.iter().all(|e| {
                e.iter()
                    .zip(p.as_rationals())
                    .map(|(a, b)| a * b)
                    .sum::<Rational>()
                    .is_zero()
            });
            if !on_line {
                return Err(usage(format!("point {p} is not on the line")));
            }
            Ok(p)
        })
        .collect()
}

fn solve_on_line(eqs: &[Vec<Rational>], n: usize, t: &BigInt) -> CliResult<ProjPoint> {
    // fix x_0 = 1, x_1 = t and solve for the remaining coordinates; the
    // last column carries the right-hand side
    let zero = || Rational::from_integer(0.into());
    let mut aug: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|r| r.iter().cloned().chain([zero()]).collect())
        .collect();
    for (i, val) in [(0, BigInt::from(1)), (1, t.clone())] {
        let mut r = vec![zero(); n + 2];
        r[i] = Rational::from_integer(1.into());
        r[n + 1] = -Rational::from_integer(val);
        aug.push(r);
    }
    let ker = RatMatrix::from_rows(aug).kernel_basis();
    let sol = match ker.as_slice() {
        [v] if !v[n + 1].is_zero() => v,
        _ => return Err(usage(format!("the line has no unique point with x_0 = 1, x_1 = {t}"))),
    };
    let scale = &sol[n + 1];
    Ok(ProjPoint::from_rationals(&sol[..=n].iter().map(|x| x / scale).collect::<Vec<_>>())?)
}

/// Square-free Hadamard powers of two point sets on a line of P^n, their
/// union, and the osculating hyperplanes of the coordinate power curve at
/// the powers of the chosen points.
pub fn hadamard_star(line: &str, x: &str, y: Option<&str>) -> CliResult<Value> {
    let eq_strs: Vec<&str> = line.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    let n = eq_strs.len() + 1;
    let eqs = eq_strs
        .iter()
        .map(|e| parse_linear_form(e, n + 1))
        .collect::<CliResult<Vec<_>>>()?;
    let l = LineParam::from_equations(&eqs)?;
    let xs = line_points(&eqs, n, x)?;
    let ys = match y {
        Some(y) => line_points(&eqs, n, y)?,
        None => Vec::new(),
    };
    let xset = PointSet::new(n, xs.clone())?;
    let yset = PointSet::new(n, ys.clone())?;
    if xset.len() < n || (!ys.is_empty() && yset.len() < n) {
        return Err(usage(format!("each point set needs at least {n} distinct points")));
    }
    if !xset.is_disjoint(&yset) {
        return Err(usage("X and Y share a point"));
    }
    let xp = sqfree_had_power(&xset, n)?;
    let yp = if ys.is_empty() {
        PointSet::empty(n)
    } else {
        sqfree_had_power(&yset, n)?
    };
    let union = xp.union(&yp);
    let gamma = power_curve(&l)?;
    let tangent = |p: &ProjPoint| -> CliResult<Hyperplane> {
        let t = l.param_of(p).ok_or_else(|| usage(format!("point {p} is not on the line")))?;
        Ok(osculating_hyperplane(&gamma, &t)?)
    };
    let tx = xs.iter().map(tangent).collect::<CliResult<Vec<_>>>()?;
    let ty = ys.iter().map(tangent).collect::<CliResult<Vec<_>>>()?;
    let x_star = star_configuration(&tx)? == xp;
    let y_star = ys.is_empty() || star_configuration(&ty)? == yp;
    let mut hyperplanes = tx.clone();
    hyperplanes.extend(ty.iter().cloned());
    let mut out = json!({
        "kind": "hadamard-star",
        "n": n,
        "line": eqs.iter().map(|e| e.iter().map(rational_to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "x": js::points(&xset),
        "y": js::points(&yset),
        "x_power": js::points(&xp),
        "y_power": js::points(&yp),
        "points": union.iter().map(js::point).collect::<Vec<_>>(),
        "hyperplanes": js::hyperplane_list(&hyperplanes),
        "powers_are_contact_stars": x_star && y_star,
        "power_hyperplane": js::int_vec(line_had_power_hyperplane(&l)?.coeffs()),
    });
    if n == 2 {
        let h = Hyperplane::from_form(&HomForm::linear(&eqs[0]))?;
        let c = implicit_conic(&h)?;
        let on = starconf::hadamard::had_point(&xs[0], &xs[0])?;
        out["conics"] = json!([conic_entry(&c, &on)]);
    }
    Ok(out)
}

/// Octagon circumscribed about the standard conic at eight parameters.
pub fn octagon(params: Option<&str>, seed: u64) -> CliResult<Value> {
    let ps = match params {
        Some(p) => parse_params(p)?,
        None => random_params(&mut ChaCha8Rng::seed_from_u64(seed), 8),
    };
    if ps.len() != 8 {
        return Err(usage(format!("an octagon needs 8 parameters, got {}", ps.len())));
    }
    let poly = circumscribed_polygon(&standard_rnc(2), &ps)?;
    let o = Octagon::new(&poly.vertices)?;
    let p_points = (1..=4).map(|i| o.p(i)).collect::<starconf::Result<Vec<_>>>()?;
    let conics = (1..=4).map(|i| o.conic(i)).collect::<starconf::Result<Vec<_>>>()?;
    let mut conic_entries = vec![standard_conic_entry()];
    conic_entries.extend(conics.iter().enumerate().map(|(i, c)| conic_entry(c, o.vertex(i + 1))));
    Ok(json!({
        "kind": "octagon",
        "n": 2,
        "params": ps.iter().map(js::param).collect::<Vec<_>>(),
        "tangents": js::hyperplane_list(&poly.tangents),
        "vertices": poly.vertices.iter().map(js::point).collect::<Vec<_>>(),
        "p": p_points.iter().map(js::point).collect::<Vec<_>>(),
        "gamma": conics.iter().map(js::form).collect::<Vec<_>>(),
        "points": poly.vertices.iter().chain(&p_points).map(js::point).collect::<Vec<_>>(),
        "hyperplanes": js::hyperplane_list(&poly.tangents),
        "conics": conic_entries,
    }))
}

/// Coordinate-wise `n`-th power of the line through two points of P^n.
pub fn line_power(n: usize, through: &str) -> CliResult<Value> {
    let pts = through
        .split(';')
        .map(|s| parse_ints(s, ',').and_then(|v| Ok(ProjPoint::new(v)?)))
        .collect::<CliResult<Vec<_>>>()?;
    let [p, q]: [ProjPoint; 2] = pts
        .try_into()
        .map_err(|_| usage("--through needs two points separated by ';'"))?;
    if p.dim() != n || q.dim() != n {
        return Err(usage(format!("points must have {} coordinates", n + 1)));
    }
    let l = LineParam::new(p, q)?;
    let (forms, is_rnc) = coordinate_power_line(&l, n as u32);
    let hyperplane = line_had_power_hyperplane(&l)?;
    Ok(json!({
        "kind": "line-power",
        "n": n,
        "through": [js::point(l.base_points().0), js::point(l.base_points().1)],
        "forms": forms.iter().map(js::form).collect::<Vec<_>>(),
        "is_rnc": is_rnc,
        "avoids_delta": l.avoids_delta(n.saturating_sub(2)),
        "power_hyperplane": js::int_vec(hyperplane.coeffs()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn linear_forms() {
        assert_eq!(parse_linear_form("x+y-z", 3).unwrap(), ints(&[1, 1, -1]));
        assert_eq!(parse_linear_form("t - x + y", 4).unwrap(), ints(&[-1, 1, 0, 1]));
        assert_eq!(parse_linear_form("2*x0-3x2", 3).unwrap(), ints(&[2, 0, -3]));
        assert!(parse_linear_form("x+q", 3).is_err());
        assert!(parse_linear_form("x+t", 3).is_err());
        assert!(parse_linear_form("", 3).is_err());
    }

    #[test]
    fn params() {
        assert_eq!(parse_param("3").unwrap(), BinaryParam::affine(3));
        assert_eq!(parse_param("0:1").unwrap(), BinaryParam::from_i64(0, 1).unwrap());
        assert!(parse_param("0:0").is_err());
        assert!(parse_param("1:2:3").is_err());
    }
}
