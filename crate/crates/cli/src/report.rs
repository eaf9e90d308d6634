//! Reports emitted by the verification suites and campaigns.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::seeds::trial_seed;

/// Outcome of one randomized trial. For a negative control `passed` means
/// the perturbed instance was rejected, as it must be.
#[derive(Clone, Debug, Serialize)]
pub struct TrialReport {
    pub index: usize,
    pub seed: u64,
    pub kind: TrialKind,
    pub instance: Value,
    pub computed: Value,
    pub expected: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Value>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
    /// Instance size used to pick the smallest failing instance.
    #[serde(skip)]
    pub size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialKind {
    Trial,
    Golden,
    NegativeControl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub id: String,
    pub seed: u64,
    pub verdict: Verdict,
    pub trials: usize,
    pub passed: usize,
    pub negative_controls: usize,
    pub negative_controls_rejected: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_failing_instance: Option<TrialReport>,
    pub results: Vec<TrialReport>,
}

impl SuiteReport {
    pub fn new(id: &str, seed: u64, results: Vec<TrialReport>) -> Self {
        let (controls, trials): (Vec<&TrialReport>, Vec<&TrialReport>) =
            results.iter().partition(|t| t.kind == TrialKind::NegativeControl);
        let minimal_failing_instance = results
            .iter()
            .filter(|t| !t.passed)
            .min_by_key(|t| (t.size, t.index))
            .cloned();
        SuiteReport {
            id: id.to_string(),
            seed,
            verdict: Verdict::from_bool(results.iter().all(|t| t.passed)),
            trials: trials.len(),
            passed: trials.iter().filter(|t| t.passed).count(),
            negative_controls: controls.len(),
            negative_controls_rejected: controls.iter().filter(|t| t.passed).count(),
            minimal_failing_instance,
            results,
        }
    }
}

/// What a trial closure hands back.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub instance: Value,
    pub computed: Value,
    pub expected: Value,
    pub certificates: Vec<Value>,
    pub passed: bool,
    pub size: usize,
}

/// A trial to run: its kind and a closure receiving the trial seed.
pub struct TrialSpec<'a> {
    pub kind: TrialKind,
    pub run: Box<dyn Fn(u64) -> Result<Outcome, String> + Send + Sync + 'a>,
}

impl<'a> TrialSpec<'a> {
    pub fn new(kind: TrialKind, run: impl Fn(u64) -> Result<Outcome, String> + Send + Sync + 'a) -> Self {
        TrialSpec {
            kind,
            run: Box::new(run),
        }
    }
}

/// Runs the trials in parallel; results come back in index order. An error
/// counts as a failed trial (and as a failed rejection for a negative
/// control: controls must be decided, not crash).
pub fn run_trials(seed: u64, specs: Vec<TrialSpec<'_>>, timings: bool) -> Vec<TrialReport> {
    specs
        .into_par_iter()
        .enumerate()
        .map(|(index, spec)| {
            let s = trial_seed(seed, index);
            let start = Instant::now();
            let result = (spec.run)(s);
            let wall_time_ms = timings.then(|| start.elapsed().as_secs_f64() * 1e3);
            match result {
                Ok(o) => TrialReport {
                    index,
                    seed: s,
                    kind: spec.kind,
                    instance: o.instance,
                    computed: o.computed,
                    expected: o.expected,
                    certificates: o.certificates,
                    passed: o.passed,
                    error: None,
                    wall_time_ms,
                    size: o.size,
                },
                Err(e) => TrialReport {
                    index,
                    seed: s,
                    kind: spec.kind,
                    instance: Value::Null,
                    computed: Value::Null,
                    expected: Value::Null,
                    certificates: Vec::new(),
                    passed: false,
                    error: Some(e),
                    wall_time_ms,
                    size: usize::MAX,
                },
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn spec(kind: TrialKind, passed: bool, size: usize) -> TrialSpec<'static> {
        TrialSpec::new(kind, move |seed| {
            Ok(Outcome {
                instance: json!({ "seed": seed.to_string() }),
                passed,
                size,
                ..Default::default()
            })
        })
    }

    #[test]
    fn verdicts_and_minimal_failures() {
        let specs = vec![
            spec(TrialKind::Trial, true, 1),
            spec(TrialKind::Trial, false, 9),
            spec(TrialKind::Trial, false, 4),
            spec(TrialKind::NegativeControl, true, 2),
        ];
        let report = SuiteReport::new("x", 1, run_trials(1, specs, false));
        assert_eq!(report.verdict, Verdict::Fail);
        assert_eq!((report.trials, report.passed), (3, 1));
        assert_eq!((report.negative_controls, report.negative_controls_rejected), (1, 1));
        assert_eq!(report.minimal_failing_instance.unwrap().index, 2);
        assert!(report.results.iter().map(|t| t.index).eq(0..4));
    }

    #[test]
    fn errors_fail_and_timings_are_optional() {
        let specs = vec![
            spec(TrialKind::Trial, true, 1),
            TrialSpec::new(TrialKind::Trial, |_| Err("boom".into())),
        ];
        let results = run_trials(3, specs, false);
        assert!(results.iter().all(|t| t.wall_time_ms.is_none()));
        assert_eq!(results[1].error.as_deref(), Some("boom"));
        let report = SuiteReport::new("x", 3, results);
        assert_eq!(report.verdict, Verdict::Fail);
        let text = serde_json::to_string(&report).unwrap();
        assert!(!text.contains("wall_time_ms"));
        assert!(text.contains("\"verdict\":\"FAIL\""));
        let timed = run_trials(3, vec![spec(TrialKind::Trial, true, 1)], true);
        assert!(timed[0].wall_time_ms.is_some());
    }
}
