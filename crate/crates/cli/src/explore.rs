//! Seeded campaigns comparing h-vectors of unions of contact stars with
//! conjectured sequences.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use starconf::certificates::cb_gorenstein;
use starconf::hilbert::{general_fat_hvector, generic_star_hvector, h_vector_points, HVector};
use starconf::projgeom::PointSet;
use starconf::rnc::{contact_star, random_params, standard_rnc};
use starconf::{json as js, Error};

use crate::error::{CliError, CliResult};
use crate::range::IntRange;
use crate::report::{run_trials, Outcome, TrialKind, TrialReport, TrialSpec};

pub const CONJECTURE_IDS: &[&str] = &["conj4.7", "conj6.1"];

/// Largest number of stars the plane conjecture covers.
pub const CONJ47_MAX_STARS: u64 = 4;

#[derive(Clone, Debug, Default)]
pub struct CampaignConfig {
    pub seed: u64,
    pub trials: Option<usize>,
    /// Number of stars (conj4.7).
    pub s_count: Option<IntRange>,
    /// Fixed multiplicities; a single value applies to every point.
    pub mults: Option<Vec<u32>>,
    /// Multiplicity range sampled when `mults` is absent.
    pub m: Option<IntRange>,
    /// Ambient dimension and star sizes (conj6.1).
    pub n: Option<IntRange>,
    pub r: Option<IntRange>,
    pub s: Option<IntRange>,
    pub timings: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub id: String,
    pub seed: u64,
    /// Sampling ranges, so that agreement claims are scoped to them.
    pub sampling: Value,
    pub trials: usize,
    pub agreements: usize,
    pub counterexamples: Vec<TrialReport>,
    pub results: Vec<TrialReport>,
}

pub fn run_campaign(id: &str, cfg: &CampaignConfig) -> CliResult<CampaignReport> {
    if cfg.trials == Some(0) {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let (sampling, specs) = match id {
        "conj4.7" => conj4_7(cfg)?,
        "conj6.1" => conj6_1(cfg)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown conjecture {other:?}; expected one of {}",
                CONJECTURE_IDS.join(", ")
            )))
        }
    };
    let results = run_trials(cfg.seed, specs, cfg.timings);
    if let Some(t) = results.iter().find(|t| t.error.is_some()) {
        return Err(CliError::Usage(format!(
            "trial {} could not be evaluated: {}",
            t.index,
            t.error.as_deref().unwrap_or_default()
        )));
    }
    Ok(CampaignReport {
        id: id.to_string(),
        seed: cfg.seed,
        sampling,
        trials: results.len(),
        agreements: results.iter().filter(|t| t.passed).count(),
        counterexamples: results.iter().filter(|t| !t.passed).cloned().collect(),
        results,
    })
}

fn hv(h: &HVector) -> Value {
    json!(h.entries())
}

fn trial(body: impl Fn(&mut ChaCha8Rng) -> starconf::Result<Outcome> + Send + Sync + 'static) -> TrialSpec<'static> {
    TrialSpec::new(TrialKind::Trial, move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        body(&mut rng).map_err(|e| e.to_string())
    })
}

/// Union of contact stars of the given sizes on one rational normal curve.
fn star_union(rng: &mut ChaCha8Rng, n: usize, sizes: &[usize]) -> starconf::Result<(Value, PointSet)> {
    let g = standard_rnc(n);
    let params = random_params(rng, sizes.iter().sum());
    let mut u = PointSet::empty(n);
    let mut all = Vec::new();
    let mut start = 0;
    for &k in sizes {
        let star = contact_star(&g, &params[start..start + k])?;
        if !u.is_disjoint(&star.points) {
            return Err(Error::Degenerate("stars share a point".into()));
        }
        u = u.union(&star.points);
        all.push(star.params.iter().map(js::param).collect::<Vec<_>>());
        start += k;
    }
    Ok((json!(all), u))
}

fn conj4_7(cfg: &CampaignConfig) -> CliResult<(Value, Vec<TrialSpec<'static>>)> {
    let counts = cfg.s_count.unwrap_or(IntRange::new(2, CONJ47_MAX_STARS));
    let ms = cfg.m.unwrap_or(IntRange::new(1, 4));
    if counts.lo < 1 || ms.lo < 1 {
        return Err(CliError::Usage("star counts and multiplicities must be at least 1".into()));
    }
    let fixed = cfg.mults.clone();
    if let Some(f) = &fixed {
        if f.is_empty() || f.contains(&0) {
            return Err(CliError::Usage("--mults needs positive multiplicities".into()));
        }
        if f.len() > 1 && !counts.iter().all(|c| c as usize == f.len()) {
            return Err(CliError::Usage(format!(
                "--mults lists {} values but --s is {counts}",
                f.len()
            )));
        }
    }
    let trials = cfg.trials.unwrap_or(if fixed.is_some() { 1 } else { 10 });
    let sampling = json!({
        "stars": counts.to_string(),
        "multiplicities": match &fixed {
            Some(f) => json!(f),
            None => json!(ms.to_string()),
        },
        "tangency_parameters": "[a:b] with a, b in -20..20",
        "general_points": "coordinates in -50..50, pointwise maximum over repeated draws",
        "conjectured_range": format!("s <= {CONJ47_MAX_STARS}"),
    });
    let mut specs = Vec::new();
    for count in counts.iter() {
        for _ in 0..trials {
            let fixed = fixed.clone();
            specs.push(trial(move |rng| {
                let mults: Vec<u32> = match &fixed {
                    Some(f) if f.len() == 1 => vec![f[0]; count as usize],
                    Some(f) => f.clone(),
                    None => (0..count).map(|_| rng.gen_range(ms.lo..=ms.hi) as u32).collect(),
                };
                let sizes: Vec<usize> = mults.iter().map(|&m| m as usize + 1).collect();
                let (params, u) = loop {
                    match star_union(rng, 2, &sizes) {
                        Err(Error::Degenerate(_)) => continue,
                        other => break other?,
                    }
                };
                let stars = h_vector_points(&u)?;
                let fat = general_fat_hvector(rng, 2, &mults)?;
                Ok(Outcome {
                    instance: json!({ "s": count, "multiplicities": mults, "params": params }),
                    computed: json!({ "contact_stars": hv(&stars) }),
                    expected: json!({ "general_fat_points": hv(&fat) }),
                    certificates: Vec::new(),
                    passed: stars == fat,
                    size: u.len(),
                })
            }));
        }
    }
    Ok((sampling, specs))
}

/// `(1, C(n,n-1), ..., C(r-1,n-1), C(s-1,n-1), ..., C(n,n-1), 1)`.
pub fn conjectured_union_hvector(r: u64, s: u64, n: u64) -> starconf::Result<HVector> {
    Ok(generic_star_hvector(r, n)?.concat(&generic_star_hvector(s, n)?.reversed()))
}

fn conj6_1(cfg: &CampaignConfig) -> CliResult<(Value, Vec<TrialSpec<'static>>)> {
    let ns = cfg.n.unwrap_or(IntRange::new(2, 4));
    if ns.lo < 2 || ns.hi > 4 {
        return Err(CliError::Usage(format!("--n must lie in 2..4, got {ns}")));
    }
    let rs = cfg.r.unwrap_or(IntRange::new(ns.hi, ns.hi + 2));
    let ss = cfg.s.unwrap_or(rs);
    let trials = cfg.trials.unwrap_or(2);
    let sampling = json!({
        "n": ns.to_string(),
        "r": rs.to_string(),
        "s": ss.to_string(),
        "tangency_parameters": "[a:b] with a, b in -20..20",
    });
    let mut specs = Vec::new();
    for n in ns.iter() {
        for r in rs.iter().filter(|&r| r >= n) {
            for s in ss.iter().filter(|&s| s >= n && s <= r) {
                for _ in 0..trials {
                    specs.push(trial(move |rng| {
                        let (params, u) = loop {
                            match star_union(rng, n as usize, &[r as usize, s as usize]) {
                                Err(Error::Degenerate(_)) => continue,
                                other => break other?,
                            }
                        };
                        let h = h_vector_points(&u)?;
                        let expected = conjectured_union_hvector(r, s, n)?;
                        let mut computed = json!({ "h": hv(&h) });
                        let mut expected_json = json!({ "h": hv(&expected) });
                        let mut passed = h == expected;
                        if s + 1 >= r {
                            let g = cb_gorenstein(&u)?;
                            computed["gorenstein"] = json!(g);
                            expected_json["gorenstein"] = json!(true);
                            passed &= g;
                        }
                        Ok(Outcome {
                            instance: json!({ "n": n, "r": r, "s": s, "params": params }),
                            computed,
                            expected: expected_json,
                            certificates: Vec::new(),
                            passed,
                            size: u.len(),
                        })
                    }));
                }
            }
        }
    }
    if specs.is_empty() {
        return Err(CliError::Usage(format!(
            "no admissible n <= s <= r in n = {ns}, r = {rs}, s = {ss}"
        )));
    }
    Ok((sampling, specs))
}
