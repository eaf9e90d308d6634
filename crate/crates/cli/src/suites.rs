//! Randomized verification suites, one per supported result id. Every suite
//! embeds negative controls: perturbed instances that must fail the
//! property.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use starconf::certificates::{ci_certificate, ci_refutation, hexagon_diagonals_concurrent, TangentConicOutcome};
use starconf::exact::RatMatrix;
use starconf::hadamard::{
    coordinate_power_line, had_point_hyperplane, had_product, line_had_power_hyperplane, osculating_flat_hadamard,
    LineParam,
};
use starconf::hilbert::{
    ci_hvector, general_fat_hvector, h_vector, h_vector_points, ideal_slice_points, same_span, star_difference_hvector,
    three_fat_3had_hvector, three_fat_hvector, two_fat_hvector, CIType, HVector,
};
use starconf::polygon::{
    brianchon_check, circumscribed_polygon, octagon_eight_points_on_conic, octagon_residual_collinearity,
    points_on_random_conic, three_triangle_conics, two_triangles_tangent_conic,
};
use starconf::projgeom::{intersect_hyperplanes, meets_properly, star_configuration, FatScheme, PointSet, ProjPoint};
use starconf::rnc::{contact_star, osculating_flat, random_params, standard_rnc, ContactStar, Rnc};
use starconf::sample::{perturb, random_delta_avoiding_line, random_hyperplane, random_point};
use starconf::{json as js, Error};

use crate::error::{CliError, CliResult};
use crate::range::IntRange;
use crate::report::{run_trials, Outcome, SuiteReport, TrialKind, TrialSpec};

pub const SUITE_IDS: &[&str] = &[
    "thm2.1", "thm3.1b", "thm3.1d", "thm3.1e", "lem3.6", "thm4.2", "prop4.4", "thm4.5", "lem4.1", "prop5.1", "cor5.2",
    "prop5.3", "brianchon", "prop6.3",
];

/// Negative controls embedded in every suite.
pub const NEGATIVE_CONTROLS: usize = 3;

/// Attempts at drawing a non-degenerate instance before a trial errors out.
const RESAMPLE_ATTEMPTS: usize = 20;

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Seeds per parameter value for grid suites, total instances otherwise.
    pub trials: Option<usize>,
    pub n: Option<IntRange>,
    pub r: Option<IntRange>,
    pub s: Option<IntRange>,
    pub t: Option<IntRange>,
    pub m: Option<IntRange>,
    /// Index of the line of `Y` whose points form `Z` (default the last).
    pub line: Option<usize>,
    pub timings: bool,
}

type Core<T> = starconf::Result<T>;
type Body = dyn Fn(&mut ChaCha8Rng) -> Core<Outcome> + Send + Sync;

fn resampleable(e: &Error) -> bool {
    matches!(
        e,
        Error::Degenerate(_)
            | Error::NotProper
            | Error::DuplicateParameters
            | Error::ConicNotUnique
            | Error::HadamardUndefined
            | Error::NotHyperplane
            | Error::SingularPoint
    )
}

/// Runs `body` on fresh draws of the trial stream until it returns
/// something other than a degenerate-instance error.
fn spec(kind: TrialKind, body: impl Fn(&mut ChaCha8Rng) -> Core<Outcome> + Send + Sync + 'static) -> TrialSpec<'static> {
    let body: Box<Body> = Box::new(body);
    TrialSpec::new(kind, move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last = None;
        for _ in 0..RESAMPLE_ATTEMPTS {
            match body(&mut rng) {
                Ok(o) => return Ok(o),
                Err(e) if resampleable(&e) => last = Some(e),
                Err(e) => return Err(e.to_string()),
            }
        }
        Err(format!(
            "no non-degenerate instance in {RESAMPLE_ATTEMPTS} draws: {}",
            last.map(|e| e.to_string()).unwrap_or_default()
        ))
    })
}

fn hv(h: &HVector) -> Value {
    json!(h.entries())
}

fn outcome(instance: Value, computed: Value, expected: Value, passed: bool, size: usize) -> Outcome {
    Outcome {
        instance,
        computed,
        expected,
        certificates: Vec::new(),
        passed,
        size,
    }
}

/// Contact stars with the given numbers of lines, all tangent to the
/// standard conic at distinct random parameters.
fn conic_stars(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Core<Vec<ContactStar>> {
    let g = standard_rnc(2);
    let params = random_params(rng, sizes.iter().sum());
    let mut out = Vec::with_capacity(sizes.len());
    let mut start = 0;
    for &k in sizes {
        out.push(contact_star(&g, &params[start..start + k])?);
        start += k;
    }
    Ok(out)
}

fn stars_json(stars: &[ContactStar]) -> Value {
    json!(stars
        .iter()
        .map(|s| s.params.iter().map(js::param).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn union(stars: &[ContactStar]) -> PointSet {
    stars
        .iter()
        .fold(PointSet::empty(2), |acc, s| acc.union(&s.points))
}

/// Star of `k` random lines of the plane, not tangent to any common conic.
fn random_line_star(rng: &mut ChaCha8Rng, k: usize) -> Core<PointSet> {
    let lines: Vec<_> = (0..k).map(|_| random_hyperplane(rng, 2, 20)).collect();
    if !meets_properly(&lines) {
        return Err(Error::NotProper);
    }
    star_configuration(&lines)
}

/// Replaces one random point of `x` by a perturbed copy.
fn perturb_one(rng: &mut ChaCha8Rng, x: &PointSet) -> Core<PointSet> {
    let i = rng.gen_range(0..x.len());
    let moved = perturb(rng, &x.points()[i]);
    if x.contains(&moved) {
        return Err(Error::Degenerate("perturbation hit another point".into()));
    }
    PointSet::new(2, x.iter().enumerate().map(|(j, p)| if j == i { moved.clone() } else { p.clone() }))
}

fn range_or(r: Option<IntRange>, lo: u64, hi: u64) -> IntRange {
    r.unwrap_or(IntRange::new(lo, hi))
}

fn check_min(name: &str, r: IntRange, min: u64) -> CliResult<()> {
    if r.lo < min {
        return Err(CliError::Usage(format!("--{name} must be at least {min}, got {r}")));
    }
    Ok(())
}

fn check_max(name: &str, r: IntRange, max: u64) -> CliResult<()> {
    if r.hi > max {
        return Err(CliError::Usage(format!("--{name} must be at most {max}, got {r}")));
    }
    Ok(())
}

pub fn run_suite(id: &str, cfg: &SuiteConfig) -> CliResult<SuiteReport> {
    if cfg.trials == Some(0) {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let specs = match id {
        "thm2.1" => thm2_1(cfg)?,
        "thm3.1b" => thm3_1_ci(cfg, false)?,
        "thm3.1e" => thm3_1_ci(cfg, true)?,
        "thm3.1d" => thm3_1d(cfg)?,
        "lem3.6" => lem3_6(cfg)?,
        "thm4.2" => thm4_2(cfg)?,
        "prop4.4" => prop4_4(cfg)?,
        "thm4.5" => thm4_5(cfg)?,
        "lem4.1" => lem4_1(cfg)?,
        "prop5.1" => octagon_suite(cfg, false),
        "cor5.2" => octagon_suite(cfg, true),
        "prop5.3" => prop5_3(cfg),
        "brianchon" => brianchon(cfg),
        "prop6.3" => prop6_3(cfg),
        other => {
            return Err(CliError::Usage(format!(
                "unknown id {other:?}; expected one of {}",
                SUITE_IDS.join(", ")
            )))
        }
    };
    Ok(SuiteReport::new(id, cfg.seed, run_trials(cfg.seed, specs, cfg.timings)))
}

fn controls(body: impl Fn(&mut ChaCha8Rng) -> Core<Outcome> + Send + Sync + Clone + 'static) -> Vec<TrialSpec<'static>> {
    (0..NEGATIVE_CONTROLS)
        .map(|_| spec(TrialKind::NegativeControl, body.clone()))
        .collect()
}

// Hadamard powers of lines: rational normal curve, osculating flats and the
// n-fold intersection identity.

fn thm2_1_trial(rng: &mut ChaCha8Rng, n: usize) -> Core<Outcome> {
    let l = random_delta_avoiding_line(rng, n);
    let (forms, is_rnc) = coordinate_power_line(&l, n as u32);
    let (p, q) = l.base_points();
    let instance = json!({ "n": n, "line_through": [js::point(p), js::point(q)] });
    let expected = json!({ "is_rnc": true, "flats_agree": true, "intersection_identity": true });
    if !is_rnc {
        let computed = json!({ "is_rnc": false });
        return Ok(outcome(instance, computed, expected, false, n));
    }
    let gamma = Rnc::new(forms)?;
    let h = line_had_power_hyperplane(&l)?;
    let pts: Vec<ProjPoint> = {
        let mut v: Vec<ProjPoint> = Vec::new();
        for t in random_params(rng, 3 * n) {
            let x = l.point_at(&t);
            if x.nonzero_count() == n + 1 && !v.contains(&x) {
                v.push(x);
            }
        }
        v.truncate(n);
        v
    };
    if pts.len() < n {
        return Err(Error::Degenerate("too few points with nonzero coordinates".into()));
    }
    let mut flats_agree = true;
    for x in &pts {
        let t = l.param_of(x).ok_or_else(|| Error::Internal("point not on the line".into()))?;
        for d in 0..n {
            let a = osculating_flat_hadamard(x, &l, d)?;
            let b = osculating_flat(&gamma, &t, d);
            let mut both = a.clone();
            both.extend(b);
            flats_agree &= RatMatrix::from_rows(a).rank() == d + 1 && RatMatrix::from_rows(both).rank() == d + 1;
        }
    }
    let hs = pts
        .iter()
        .map(|x| had_point_hyperplane(x, &h))
        .collect::<Core<Vec<_>>>()?;
    let meet = intersect_hyperplanes(&hs)?;
    let product = had_product(&pts)?;
    let identity = meet == product;
    let computed = json!({
        "is_rnc": true,
        "flats_agree": flats_agree,
        "intersection_identity": identity,
        "intersection": js::point(&meet),
        "product": js::point(&product),
    });
    Ok(outcome(instance, computed, expected, flats_agree && identity, n))
}

/// A line inside the hyperplane `x_0 = 0`: its coordinate power is
/// degenerate.
fn thm2_1_control(rng: &mut ChaCha8Rng, n: usize) -> Core<Outcome> {
    let lift = |p: ProjPoint| {
        let mut c = p.coords().to_vec();
        c[0] = 0.into();
        ProjPoint::new(c)
    };
    let l = LineParam::new(lift(random_point(rng, n, 9))?, lift(random_point(rng, n, 9))?)?;
    let (_, is_rnc) = coordinate_power_line(&l, n as u32);
    let (p, q) = l.base_points();
    Ok(outcome(
        json!({ "n": n, "line_through": [js::point(p), js::point(q)], "perturbation": "line inside x_0 = 0" }),
        json!({ "is_rnc": is_rnc }),
        json!({ "is_rnc": false }),
        !is_rnc,
        n,
    ))
}

fn thm2_1(cfg: &SuiteConfig) -> CliResult<Vec<TrialSpec<'static>>> {
    let ns = range_or(cfg.n, 2, 4);
    check_min("n", ns, 2)?;
    check_max("n", ns, 8)?;
    let trials = cfg.trials.unwrap_or(25);
    let mut specs = Vec::new();
    for n in ns.iter() {
        for _ in 0..trials {
            specs.push(spec(TrialKind::Trial, move |rng| thm2_1_trial(rng, n as usize)));
        }
    }
    let n = ns.hi as usize;
    specs.extend(controls(move |rng| thm2_1_control(rng, n)));
    Ok(specs)
}

// Unions of contact stars that are complete intersections.

fn ci_type_for(r: u64, same: bool) -> Core<CIType> {
    if same {
        CIType::new(r - 1, r)
    } else {
        CIType::new(r - 1, r - 1)
    }
}

fn ci_check(u: &PointSet, ct: CIType, instance: Value) -> Core<Outcome> {
    let h = h_vector_points(u)?;
    let expected_h = ci_hvector(ct);
    let cert = match ci_certificate(u, ct) {
        Ok(c) => Some(c),
        Err(Error::CertificateNotFound | Error::NoCurveOfDegree(_)) => None,
        Err(e) => return Err(e),
    };
    let verified = cert.as_ref().is_some_and(|c| c.verify(u));
    let passed = verified && h == expected_h;
    let mut o = outcome(
        instance,
        json!({ "h": hv(&h), "certificate_found": cert.is_some(), "certificate_verified": verified }),
        json!({ "h": hv(&expected_h), "type": [ct.a, ct.b] }),
        passed,
        u.len(),
    );
    if let Some(c) = &cert {
        o.certificates.push(js::certificate(c, verified));
    }
    Ok(o)
}

fn thm3_1_ci(cfg: &SuiteConfig, same: bool) -> CliResult<Vec<TrialSpec<'static>>> {
    let rs = range_or(cfg.r, 3, 7);
    check_min("r", rs, 3)?;
    let trials = cfg.trials.unwrap_or(10);
    let mut specs = Vec::new();
    for r in rs.iter() {
        let s = if same { r } else { r - 1 };
        for _ in 0..trials {
            specs.push(spec(TrialKind::Trial, move |rng| {
                let stars = conic_stars(rng, &[r as usize, s as usize])?;
                let instance = json!({ "r": r, "s": s, "params": stars_json(&stars) });
                ci_check(&union(&stars), ci_type_for(r, same)?, instance)
            }));
        }
    }
    // four general points are always a complete intersection, so controls
    // start at r = 4
    let r = rs.hi.max(4);
    let s = if same { r } else { r - 1 };
    specs.extend(controls(move |rng| {
        let stars = conic_stars(rng, &[r as usize, s as usize])?;
        let moved = perturb_one(rng, &union(&stars))?;
        let instance = json!({ "r": r, "s": s, "params": stars_json(&stars), "perturbation": "one point moved" });
        let mut o = ci_check(&moved, ci_type_for(r, same)?, instance)?;
        o.passed = !o.passed;
        Ok(o)
    }));
    Ok(specs)
}

fn slice_check(rng: &mut ChaCha8Rng, r: u64, line: Option<usize>, perturbed: bool) -> Core<Outcome> {
    let stars = conic_stars(rng, &[r as usize, r as usize])?;
    let (x, y) = (&stars[0], &stars[1]);
    let idx = line.unwrap_or(r as usize - 1);
    let m = y
        .hyperplanes
        .get(idx)
        .ok_or_else(|| Error::OutOfRange(format!("line index {idx} of a {r}-line star")))?;
    let mut z = y.points.filter(|p| m.contains(p));
    if perturbed {
        z = perturb_one(rng, &z)?;
        if !x.points.is_disjoint(&z) {
            return Err(Error::Degenerate("perturbed point landed on X".into()));
        }
    }
    let xy = x.points.union(&y.points);
    let xz = x.points.union(&z);
    let a = ideal_slice_points(&xy, r as u32 - 1);
    let b = ideal_slice_points(&xz, r as u32 - 1);
    let equal = same_span(&a, &b);
    let mut instance = json!({ "r": r, "line": idx, "params": stars_json(&stars), "z": z.len() });
    if perturbed {
        instance["perturbation"] = json!("one point of Z moved");
    }
    Ok(outcome(
        instance,
        json!({ "dim_slice_xy": a.len(), "dim_slice_xz": b.len(), "equal": equal }),
        json!({ "equal": !perturbed }),
        equal != perturbed,
        xy.len(),
    ))
}

fn thm3_1d(cfg: &SuiteConfig) -> CliResult<Vec<TrialSpec<'static>>> {
    let rs = range_or(cfg.r, 3, 5);
    check_min("r", rs, 3)?;
    if let Some(l) = cfg.line {
        if l as u64 >= rs.lo {
            return Err(CliError::Usage(format!("--line {l} out of range for r = {}", rs.lo)));
        }
    }
    let trials = cfg.trials.unwrap_or(5);
    let line = cfg.line;
    let mut specs = Vec::new();
    for r in rs.iter() {
        for _ in 0..trials {
            specs.push(spec(TrialKind::Trial, move |rng| slice_check(rng, r, line, false)));
        }
    }
    let r = rs.hi;
    specs.extend(controls(move |rng| slice_check(rng, r, line, true)));
    Ok(specs)
}

/// Complete-intersection types a union of `|X|` points could have: every
/// factorization of `|X|` and the two types the balanced cases produce.
fn candidate_types(card: u64, r: u64) -> Vec<CIType> {
    let mut out: Vec<CIType> = (1..=card)
        .take_while(|a| a * a <= card)
        .filter(|a| card.is_multiple_of(*a))
        .filter_map(|a| CIType::new(a, card / a).ok())
        .collect();
    for ct in [CIType::new(r - 1, r - 1), CIType::new(r - 1, r)].into_iter().flatten() {
        if !out.contains(&ct) {
            out.push(ct);
        }
    }
    out
}

fn refutation_check(rng: &mut ChaCha8Rng, r: u64, s: u64) -> Core<Outcome> {
    let stars = conic_stars(rng, &[r as usize, s as usize])?;
    let u = union(&stars);
    let types = candidate_types(u.len() as u64, r);
    let refuted = types
        .iter()
        .map(|&ct| ci_refutation(&u, ct))
        .collect::<Core<Vec<_>>>()?;
    let h = h_vector_points(&u)?;
    Ok(outcome(
        json!({ "r": r, "s": s, "params": stars_json(&stars) }),
        json!({
            "h": hv(&h),
            "types": types.iter().map(|c| [c.a, c.b]).collect::<Vec<_>>(),
            "refuted": refuted,
        }),
        json!({ "refuted": vec![true; types.len()] }),
        refuted.iter().all(|&b| b),
        u.len(),
    ))
}

fn lem3_6(cfg: &SuiteConfig) -> CliResult<Vec<TrialSpec<'static>>> {
    let rs = range_or(cfg.r, 4, 8);
    let ss = range_or(cfg.s, 2, 6);
    check_min("s", ss, 2)?;
    if !rs.iter().any(|r| ss.lo + 1 < r) {
        return Err(CliError::Usage(format!("no pair with r > s + 1 in r = {rs}, s = {ss}")));
    }
    let trials = cfg.trials.unwrap_or(10);
    let mut specs: Vec<TrialSpec<'static>> = (0..trials)
        .map(|_| {
            spec(TrialKind::Trial, move |rng| {
                let (r, s) = loop {
                    let r = rng.gen_range(rs.lo..=rs.hi);
                    let s = rng.gen_range(ss.lo..=ss.hi);
                    if r > s + 1 {
                        break (r, s);
                    }
                };
                refutation_check(rng, r, s)
            })
        })
        .collect();
    // balanced unions are complete intersections and must not be refuted
    let r = rs.hi.max(3);
    specs.extend(controls(move |rng| {
        let stars = conic_stars(rng, &[r as usize, r as usize - 1])?;
        let u = union(&stars);
        let ct = CIType::new(r - 1, r - 1)?;
        let refuted = ci_refutation(&u, ct)?;
        Ok(outcome(
            json!({ "r": r, "s": r - 1, "params": stars_json(&stars), "perturbation": "s = r - 1" }),
            json!({ "type": [ct.a, ct.b], "refuted": refuted }),
            json!({ "refuted": false }),
            !refuted,
            u.len(),
        ))
    }));
    Ok(specs)
}

// Hilbert functions of unions of contact stars versus fat points.

fn two_star_hvector(rng: &mut ChaCha8Rng, r: u64, s: u64) -> Core<(Value, HVector, usize)> {
    let stars = conic_stars(rng, &[r as usize, s as usize])?;
    let u = union(&stars);
    let instance = json!({ "r": r, "s": s, "params": stars_json(&stars) });
    Ok((instance, h_vector_points(&u)?, u.len()))
}

fn thm4_2(cfg: &SuiteConfig) -> CliResult<Vec<TrialSpec<'static>>> {
    let rs = range_or(cfg.r, 2, 8);
    let ss = range_or(cfg.s, 2, 8);
    check_min("r", rs, 2)?;
    check_min("s", ss, 2)?;
    let trials = cfg.trials.unwrap_or(3);
    let mut specs = Vec::new();
    for r in rs.iter() {
        for s in ss.iter().filter(|&s| s <= r) {
            for _ in 0..trials {
                specs.push(spec(TrialKind::Trial, move |rng| {
                    let (instance, h, size) = two_star_hvector(rng, r, s)?;
                    let expected = two_fat_hvector(r - 1, s - 1)?;
                    Ok(outcome(instance, hv(&h), hv(&expected), h == expected, size))
                }));
            }
        }
    }
    if specs.is_empty() {
        return Err(CliError::Usage(format!("no pair with s <= r in r = {rs}, s = {ss}")));
    }
    specs.push(spec(TrialKind::Golden, |rng| {
        let (instance, h, size) = two_star_hvector(rng, 7, 3)?;
        let golden = HVector::new(vec![1, 2, 3, 4, 5, 6, 2, 1]);
        Ok(outcome(instance, hv(&h), hv(&golden), h == golden, size))
    }));
    specs.extend(controls(|rng| {
        let x = random_line_star(rng, 4)?;
        let y = random_line_star(rng, 4)?;
        if !x.is_disjoint(&y) {
            return Err(Error::Degenerate("stars share a point".into()));
        }
        let u = x.union(&y);
        let h = h_vector_points(&u)?;
        let expected = two_fat_hvector(3, 3)?;
        Ok(outcome(
            json!({ "r": 4, "s": 4, "points": js::points(&u), "perturbation": "random lines" }),
            hv(&h),
            hv(&expected),
            h != expected,
            u.len(),
        ))
    }));
    Ok(specs)
}

fn three_fat_check(rng: &mut ChaCha8Rng, m: [u64; 3]) -> Core<Outcome> {
    let mults: Vec<u32> = m.iter().map(|&k| k as u32).collect();
    let ranks = general_fat_hvector(rng, 2, &mults)?;
    let recursion = three_fat_hvector(m);
    Ok(outcome(
        json!({ "multiplicities": m }),
        json!({ "ranks": hv(&ranks), "hilbert_function": ranks.hilbert_function() }),
        json!({ "recursion": hv(&recursion), "hilbert_function": recursion.hilbert_function() }),
        ranks == recursion,
        m.iter().sum::<u64>() as usize,
    ))
}

fn prop4_4(cfg: &SuiteConfig) -> CliResult<Vec<TrialSpec<'static>>> {
    let ms = range_or(cfg.m, 1, 5);
    check_min("m", ms, 1)?;
    let trials = cfg.trials.unwrap_or(1);
    let mut specs = Vec::new();
    for m1 in ms.iter() {
        for m2 in ms.iter().filter(|&b| b <= m1) {
            for m3 in ms.iter().filter(|&c| c <= m2) {
                for _ in 0..trials {
                    specs.push(spec(TrialKind::Trial, move |rng| three_fat_check(rng, [m1, m2, m3])));
                }
            }
        }
    }
    for (m, golden) in [([3, 1, 1], vec![1, 2, 3, 2]), ([5, 2, 2], vec![1, 2, 3, 4, 5, 4, 2])] {
        specs.push(spec(TrialKind::Golden, move |rng| {
            let mut o = three_fat_check(rng, m)?;
            let golden = HVector::new(golden.clone());
            o.passed &= three_fat_hvector(m) == golden;
            o.expected["golden"] = hv(&golden);
            Ok(o)
        }));
    }
    // collinear points are not general: the recursion must not describe them
    specs.extend(controls(|rng| {
        let m = [2u64, 2, 2];
        let line = random_hyperplane(rng, 2, 9);
        let pts: Vec<ProjPoint> = (0..3)
            .map(|_| {
                let q = random_point(rng, 2, 9);
                starconf::certificates::meet(&line, &starconf::projgeom::line_through(&q, &random_point(rng, 2, 9))?)
            })
            .collect::<Core<_>>()?;
        let z = FatScheme::new(2, pts.iter().cloned().zip(m.iter().map(|&k| k as u32)).collect())?;
        if z.items().len() != 3 {
            return Err(Error::Degenerate("repeated point".into()));
        }
        let h = h_vector(&z)?;
        let recursion = three_fat_hvector(m);
        Ok(outcome(
            json!({ "multiplicities": m, "points": pts.iter().map(js::point).collect::<Vec<_>>(), "perturbation": "collinear points" }),
            json!({ "ranks": hv(&h) }),
            json!({ "recursion": hv(&recursion) }),
            h != recursion,
            6,
        ))
    }));
    Ok(specs)
}

fn three_star_check(rng: &mut ChaCha8Rng, r: u64, s: u64, t: u64) -> Core<Outcome> {
    let stars = conic_stars(rng, &[t as usize, r as usize, s as usize])?;
    let u = union(&stars);
    let h = h_vector_points(&u)?;
    let closed = three_fat_3had_hvector(r, s, t)?;
    let m = [t - 1, r - 1, s - 1];
    let recursion = three_fat_hvector(m);
    let mults: Vec<u32> = m.iter().map(|&k| k as u32).collect();
    let ranks = general_fat_hvector(rng, 2, &mults)?;
    Ok(outcome(
        json!({ "r": r, "s": s, "t": t, "params": stars_json(&stars) }),
        json!({ "h": hv(&h) }),
        json!({ "closed_form": hv(&closed), "three_fat_recursion": hv(&recursion), "three_fat_ranks": hv(&ranks) }),
        h == closed && h == recursion && h == ranks,
        u.len(),
    ))
}

fn thm4_5(cfg: &SuiteConfig) -> CliResult<Vec<TrialSpec<'static>>> {
    let rs = range_or(cfg.r, 2, 5);
    let ss = range_or(cfg.s, 2, 5);
    check_min("r", rs, 2)?;
    check_min("s", ss, 2)?;
    let trials = cfg.trials.unwrap_or(1);
    let mut specs = Vec::new();
    for r in rs.iter() {
        for s in ss.iter().filter(|&s| s <= r) {
            for t in r + s - 1..=r + s + 1 {
                for _ in 0..trials {
                    specs.push(spec(TrialKind::Trial, move |rng| three_star_check(rng, r, s, t)));
                }
            }
        }
    }
    if specs.is_empty() {
        return Err(CliError::Usage(format!("no pair with s <= r in r = {rs}, s = {ss}")));
    }
    specs.push(spec(TrialKind::Golden, |rng| {
        let mut o = three_star_check(rng, 3, 3, 6)?;
        let golden = HVector::new(vec![1, 2, 3, 4, 5, 4, 2]);
        o.passed &= o.computed["h"] == hv(&golden);
        o.expected["golden"] = hv(&golden);
        Ok(o)
    }));
    specs.extend(controls(|rng| {
        let (r, s, t) = (3, 3, 6);
        let parts = [random_line_star(rng, t)?, random_line_star(rng, r)?, random_line_star(rng, s)?];
        let u = parts.iter().fold(PointSet::empty(2), |a, p| a.union(p));
        if u.len() != parts.iter().map(PointSet::len).sum::<usize>() {
            return Err(Error::Degenerate("stars share a point".into()));
        }
        let h = h_vector_points(&u)?;
        let closed = three_fat_3had_hvector(r as u64, s as u64, t as u64)?;
        Ok(outcome(
            json!({ "r": r, "s": s, "t": t, "points": js::points(&u), "perturbation": "random lines" }),
            json!({ "h": hv(&h) }),
            json!({ "closed_form": hv(&closed) }),
            h != closed,
            u.len(),
        ))
    }));
    Ok(specs)
}

fn lem4_1(cfg: &SuiteConfig) -> CliResult<Vec<TrialSpec<'static>>> {
    let ss = range_or(cfg.s, 2, 5);
    let ts = range_or(cfg.t, 1, 4);
    check_min("s", ss, 2)?;
    check_min("t", ts, 1)?;
    let trials = cfg.trials.unwrap_or(2);
    let difference = |rng: &mut ChaCha8Rng, s: u64, t: u64| -> Core<(Value, PointSet)> {
        let g = standard_rnc(2);
        let params = random_params(rng, (s + t) as usize);
        let big = contact_star(&g, &params)?.points;
        let small = contact_star(&g, &params[..s as usize])?.points;
        let instance = json!({ "s": s, "t": t, "params": params.iter().map(js::param).collect::<Vec<_>>() });
        Ok((instance, big.difference(&small)))
    };
    let mut specs = Vec::new();
    for s in ss.iter() {
        for t in ts.iter() {
            for _ in 0..trials {
                specs.push(spec(TrialKind::Trial, move |rng| {
                    let (instance, d) = difference(rng, s, t)?;
                    let h = h_vector_points(&d)?;
                    let expected = star_difference_hvector(s, t)?;
                    Ok(outcome(instance, hv(&h), hv(&expected), h == expected, d.len()))
                }));
            }
        }
    }
    let (s, t) = (ss.hi, ts.hi.max(2));
    specs.extend(controls(move |rng| {
        let (mut instance, d) = difference(rng, s, t)?;
        let i = rng.gen_range(0..d.len());
        let d = d.without(&d.points()[i].clone());
        instance["perturbation"] = json!("one point removed");
        let h = h_vector_points(&d)?;
        let expected = star_difference_hvector(s, t)?;
        Ok(outcome(instance, hv(&h), hv(&expected), h != expected, d.len()))
    }));
    Ok(specs)
}

// Polygons circumscribed about a conic.

fn random_octagon(rng: &mut ChaCha8Rng) -> Core<(Value, Vec<ProjPoint>)> {
    let params = random_params(rng, 8);
    let poly = circumscribed_polygon(&standard_rnc(2), &params)?;
    let instance = json!({
        "params": params.iter().map(js::param).collect::<Vec<_>>(),
        "vertices": poly.vertices.iter().map(js::point).collect::<Vec<_>>(),
    });
    Ok((instance, poly.vertices))
}

fn octagon_outcome(rng: &mut ChaCha8Rng, pencil: bool, perturbed: bool) -> Core<Outcome> {
    let (mut instance, mut v) = random_octagon(rng)?;
    if perturbed {
        // A_4 for the residual points, A_1 for the pencil
        let i = if pencil { 0 } else { 3 };
        v[i] = perturb(rng, &v[i]);
        instance["perturbation"] = json!(format!("vertex A_{} moved to {}", i + 1, v[i]));
    }
    let report = if pencil {
        octagon_eight_points_on_conic(&v)?
    } else {
        octagon_residual_collinearity(&v)?
    };
    let holds = report.verdict && (!pencil || report.witness.get("common_conic").is_some());
    let mut o = outcome(
        instance,
        json!({ "verdict": report.verdict }),
        json!({ "verdict": !perturbed }),
        holds != perturbed,
        8,
    );
    o.certificates.push(json!({ "claim": report.claim, "witness": report.witness }));
    Ok(o)
}

fn octagon_suite(cfg: &SuiteConfig, pencil: bool) -> Vec<TrialSpec<'static>> {
    let trials = cfg.trials.unwrap_or(20);
    let mut specs: Vec<TrialSpec<'static>> = (0..trials)
        .map(|_| spec(TrialKind::Trial, move |rng| octagon_outcome(rng, pencil, false)))
        .collect();
    specs.extend(controls(move |rng| octagon_outcome(rng, pencil, true)));
    specs
}

fn prop5_3_outcome(rng: &mut ChaCha8Rng, perturbed: bool) -> Core<Outcome> {
    let stars = conic_stars(rng, &[3, 3, 3])?;
    let mut tri: Vec<Vec<ProjPoint>> = stars.iter().map(|s| s.points.points().to_vec()).collect();
    let mut instance = json!({ "params": stars_json(&stars) });
    if perturbed {
        tri[2][0] = perturb(rng, &tri[2][0]);
        instance["perturbation"] = json!(format!("first point of X_3 moved to {}", tri[2][0]));
    }
    let out = three_triangle_conics([&tri[0], &tri[1], &tri[2]], rng)?;
    let c = &out.concurrency;
    let holds = if perturbed {
        c.verdict
    } else {
        out.sixth_points_on_conics && c.verdict && c.unanimous
    };
    let mut o = outcome(
        instance,
        json!({
            "sixth_points_on_conics": out.sixth_points_on_conics,
            "concurrent": c.verdict,
            "sub_verdicts": c.sub_verdicts,
            "unanimous": c.unanimous,
        }),
        json!({ "concurrent": !perturbed }),
        holds != perturbed,
        9,
    );
    o.certificates.push(json!({ "conics": out.conics.iter().map(js::form).collect::<Vec<_>>() }));
    Ok(o)
}

fn prop5_3(cfg: &SuiteConfig) -> Vec<TrialSpec<'static>> {
    let trials = cfg.trials.unwrap_or(20);
    let mut specs: Vec<TrialSpec<'static>> = (0..trials)
        .map(|_| spec(TrialKind::Trial, |rng| prop5_3_outcome(rng, false)))
        .collect();
    specs.extend(controls(|rng| prop5_3_outcome(rng, true)));
    specs
}

fn brianchon(cfg: &SuiteConfig) -> Vec<TrialSpec<'static>> {
    let trials = cfg.trials.unwrap_or(20);
    let mut specs: Vec<TrialSpec<'static>> = (0..trials)
        .map(|_| {
            spec(TrialKind::Trial, |rng| {
                let params = random_params(rng, 6);
                let report = brianchon_check(&standard_rnc(2), &params)?;
                let mut o = outcome(
                    json!({ "params": params.iter().map(js::param).collect::<Vec<_>>() }),
                    json!({ "concurrent": report.verdict }),
                    json!({ "concurrent": true }),
                    report.verdict,
                    6,
                );
                o.certificates.push(report.witness);
                Ok(o)
            })
        })
        .collect();
    specs.extend(controls(|rng| {
        let params = random_params(rng, 6);
        let hex = circumscribed_polygon(&standard_rnc(2), &params)?;
        let mut v: [ProjPoint; 6] = hex.vertices.try_into().expect("six vertices");
        v[0] = perturb(rng, &v[0]);
        let report = hexagon_diagonals_concurrent(&v)?;
        Ok(outcome(
            json!({
                "vertices": v.iter().map(js::point).collect::<Vec<_>>(),
                "perturbation": "vertex V_1 moved",
            }),
            json!({ "concurrent": report.verdict }),
            json!({ "concurrent": false }),
            !report.verdict,
            6,
        ))
    }));
    specs
}

fn prop6_3_outcome(rng: &mut ChaCha8Rng, perturbed: bool) -> Core<Outcome> {
    let params = random_params(rng, 6);
    let pts = if perturbed {
        (0..6).map(|_| random_point(rng, 2, 20)).collect()
    } else {
        points_on_random_conic(rng, &params)
    };
    let t1 = [pts[0].clone(), pts[1].clone(), pts[2].clone()];
    let t2 = [pts[3].clone(), pts[4].clone(), pts[5].clone()];
    let out = two_triangles_tangent_conic(&t1, &t2)?;
    let found = match &out.tangent_conic {
        TangentConicOutcome::Found(c) => Some(c.clone()),
        TangentConicOutcome::Degenerate(why) => return Err(Error::Degenerate(why.clone())),
        _ => None,
    };
    let holds = out.certificate.is_some() && found.is_some() && out.all_tangent;
    let mut instance = json!({ "triangles": [
        t1.iter().map(js::point).collect::<Vec<_>>(),
        t2.iter().map(js::point).collect::<Vec<_>>(),
    ] });
    if perturbed {
        instance["perturbation"] = json!("six random points");
    }
    let mut o = outcome(
        instance,
        json!({
            "ci_certificate": out.certificate.is_some(),
            "tangent_conic": found.as_ref().map(js::form),
            "all_tangent": out.all_tangent,
        }),
        json!({ "tangent_conic_found": !perturbed }),
        holds != perturbed,
        6,
    );
    if let Some(c) = &out.certificate {
        let all = PointSet::new(2, t1.iter().chain(&t2).cloned())?;
        o.certificates.push(js::certificate(c, c.verify(&all)));
    }
    Ok(o)
}

fn prop6_3(cfg: &SuiteConfig) -> Vec<TrialSpec<'static>> {
    let trials = cfg.trials.unwrap_or(10);
    let mut specs: Vec<TrialSpec<'static>> = (0..trials)
        .map(|_| spec(TrialKind::Trial, |rng| prop6_3_outcome(rng, false)))
        .collect();
    specs.extend(controls(|rng| prop6_3_outcome(rng, true)));
    specs
}
