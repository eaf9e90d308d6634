//! Checkable certificates: complete intersections in the plane,
//! Gorenstein-type symmetry, and incidence claims about conics and lines
//! that are decided over the rationals without computing irrational points.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::resultant::binary_gcd_degree;
use crate::exact::{coprime_with, rat, sylvester_resultant, HomForm, RatMatrix, Rational};
use crate::hilbert::{ci_hvector, h_vector_points, ideal_slice_points, CIType};
use crate::projgeom::{cross, det3, line_through, Hyperplane, PointSet, ProjPoint};
use crate::rnc::forms_through;
use crate::sample::{random_invertible, to_rational_rows};

const CERTIFICATE_SEED: u64 = 0x005e_edc1;
const RANDOM_COMBINATIONS: usize = 50;

/// Two coprime forms of degrees `a`, `b` vanishing on `a * b` points; by
/// Bezout they cut out exactly those points.
#[derive(Clone, Debug, PartialEq)]
pub struct CICertificate {
    pub ci_type: CIType,
    pub f: HomForm,
    pub g: HomForm,
    pub num_points: usize,
}

impl CICertificate {
    /// Re-checks vanishing, degrees, coprimality and cardinality.
    pub fn verify(&self, x: &PointSet) -> bool {
        let CIType { a, b } = self.ci_type;
        let mut rng = StdRng::seed_from_u64(CERTIFICATE_SEED);
        x.len() as u64 == a * b
            && self.num_points == x.len()
            && self.f.degree() as u64 == a
            && self.g.degree() as u64 == b
            && x.iter().all(|p| {
                self.f.eval_int(p.coords()).is_zero() && self.g.eval_int(p.coords()).is_zero()
            })
            && coprime_with(&self.f, &self.g, &mut rng)
    }
}

fn combination<R: Rng + ?Sized>(rng: &mut R, basis: &[HomForm]) -> HomForm {
    loop {
        let f = basis.iter().fold(HomForm::zero(3, basis[0].degree()), |acc, b| {
            acc.add(&b.scale(&rat(rng.gen_range(-5..=5))))
        });
        if !f.is_zero() {
            return f;
        }
    }
}

/// Searches for a complete-intersection certificate of type `ct` for a
/// plane point set: kernel basis pairs first, then random combinations.
pub fn ci_certificate(x: &PointSet, ct: CIType) -> Result<CICertificate> {
    if x.ambient_dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: x.ambient_dim(),
        });
    }
    let CIType { a, b } = ct;
    if x.len() as u64 != a * b {
        return Err(Error::Degenerate(format!(
            "{} points cannot be a complete intersection of type {ct}",
            x.len()
        )));
    }
    let fa = ideal_slice_points(x, a as u32);
    if fa.is_empty() {
        return Err(Error::NoCurveOfDegree(a as usize));
    }
    let fb = if a == b { fa.clone() } else { ideal_slice_points(x, b as u32) };
    if fb.is_empty() {
        return Err(Error::NoCurveOfDegree(b as usize));
    }
    let mut rng = StdRng::seed_from_u64(CERTIFICATE_SEED);
    let found = |f: &HomForm, g: &HomForm, rng: &mut StdRng| {
        (!f.proportional(g) && coprime_with(f, g, rng)).then(|| CICertificate {
            ci_type: ct,
            f: f.normalized(),
            g: g.normalized(),
            num_points: x.len(),
        })
    };
    for f in &fa {
        for g in &fb {
            if let Some(c) = found(f, g, &mut rng) {
                return Ok(c);
            }
        }
    }
    for _ in 0..RANDOM_COMBINATIONS {
        let f = combination(&mut rng, &fa);
        let g = combination(&mut rng, &fb);
        if let Some(c) = found(&f, &g, &mut rng) {
            return Ok(c);
        }
    }
    Err(Error::CertificateNotFound)
}

/// True when `x` provably is not a complete intersection of type `ct`:
/// either the cardinality or the h-vector disagrees with that of a complete
/// intersection.
pub fn ci_refutation(x: &PointSet, ct: CIType) -> Result<bool> {
    if x.len() as u64 != ct.a * ct.b {
        return Ok(true);
    }
    Ok(h_vector_points(x)? != ci_hvector(ct))
}

/// Symmetric h-vector together with the Cayley-Bacharach property (every
/// subset missing one point has the same h-vector), which characterizes
/// Gorenstein reduced point sets.
pub fn cb_gorenstein(x: &PointSet) -> Result<bool> {
    if !h_vector_points(x)?.is_symmetric() {
        return Ok(false);
    }
    let mut first = None;
    for p in x.iter() {
        let h = h_vector_points(&x.without(p))?;
        match &first {
            None => first = Some(h),
            Some(f) if *f != h => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

pub fn points_on_common_conic(ps: &PointSet) -> Option<HomForm> {
    if ps.ambient_dim() != 2 {
        return None;
    }
    forms_through(ps.points(), 2, 2).into_iter().next().map(|f| f.normalized())
}

/// A decided incidence claim with data that lets a reader re-check it.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceReport {
    pub claim: String,
    pub verdict: bool,
    pub witness: Value,
}

fn form_json(f: &HomForm) -> Value {
    Value::String(f.to_string())
}

fn point_json(p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(|c| Value::String(c.to_string())).collect())
}

/// Whether the line through `a4`, `a8` meets `g1` and `g2` in the same pair
/// of points, i.e. the residual intersection points of the two conics lie
/// on it. Compares the restrictions to the line as binary quadratics.
pub fn residual_collinearity_check(
    g1: &HomForm,
    g2: &HomForm,
    a4: &ProjPoint,
    a8: &ProjPoint,
    excluded: &[&ProjPoint],
) -> Result<IncidenceReport> {
    let line = line_through(a4, a8)?;
    if excluded.iter().any(|p| line.contains(p)) {
        return Err(Error::Degenerate("excluded point on the line, resample".into()));
    }
    let restrict = |g: &HomForm| {
        let u = g.restrict_to_line(&a4.as_rationals(), &a8.as_rationals());
        let mut c = u.coeffs().to_vec();
        c.resize(3, Rational::zero());
        HomForm::from_coefficient_vector(2, 2, &c)
    };
    let (q1, q2) = (restrict(g1), restrict(g2));
    if q1.is_zero() || q2.is_zero() {
        return Err(Error::Degenerate("line is a component of a conic".into()));
    }
    let verdict = q1.proportional(&q2);
    Ok(IncidenceReport {
        claim: "residual points of the two conics lie on the line".into(),
        verdict,
        witness: json!({
            "line": point_json(&crate::projgeom::dual_point(&line)),
            "restriction_1": form_json(&q1),
            "restriction_2": form_json(&q2),
            "degenerate": g1.proportional(g2),
        }),
    })
}

/// The pencils spanned by `(g1, g3)` and `(g2, g4)` share a member, which
/// then passes through all eight base points.
pub fn pencil_intersection_check(g1: &HomForm, g3: &HomForm, g2: &HomForm, g4: &HomForm) -> IncidenceReport {
    let m = RatMatrix::from_rows([g1, g3, g2, g4].iter().map(|g| g.coefficient_vector()).collect());
    let rank = m.rank();
    let mut witness = json!({ "rank": rank });
    if rank <= 3 {
        // a kernel vector of the transpose gives l1 g1 + l3 g3 = -(l2 g2 + l4 g4)
        let ker = m.transpose().kernel_basis();
        if let Some(v) = ker.first() {
            let common = g1.scale(&v[0]).add(&g3.scale(&v[1]));
            witness["common_conic"] = form_json(&common.normalized());
        }
    }
    IncidenceReport {
        claim: "the two pencils share a conic".into(),
        verdict: rank <= 3,
        witness,
    }
}

/// Outcome of the randomized concurrency test for three conics.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcurrencyReport {
    pub sub_verdicts: Vec<bool>,
    pub verdict: bool,
    pub unanimous: bool,
}

const CONCURRENCY_CHANGES: usize = 3;
const CHANGE_RETRIES: usize = 20;

fn transformed_verdict<R: Rng + ?Sized>(g: [&HomForm; 3], rng: &mut R) -> Result<bool> {
    for _ in 0..CHANGE_RETRIES {
        let m = to_rational_rows(&random_invertible(rng, 3, 9));
        let h: Vec<HomForm> = g.iter().map(|f| f.substitute_linear(&m)).collect();
        if h.iter().any(|f| f.degree_in(2) != 2) {
            continue;
        }
        let r1 = sylvester_resultant(&h[0], &h[1], 2)?;
        let r2 = sylvester_resultant(&h[0], &h[2], 2)?;
        if r1.is_zero() || r2.is_zero() {
            return Err(Error::Degenerate("conics share a component".into()));
        }
        return Ok(binary_gcd_degree(&r1, &r2, 0, 1).unwrap_or(0) >= 1);
    }
    Err(Error::DegenerateLeading)
}

/// Randomized certificate that three conics share a point: after a random
/// coordinate change, the resultants in `z` of `g12` with `g13` and with
/// `g23` have a common root. Repeated for three independent coordinate
/// changes; the verdict is the majority.
pub fn three_conics_concurrent<R: Rng + ?Sized>(
    g12: &HomForm,
    g13: &HomForm,
    g23: &HomForm,
    rng: &mut R,
) -> Result<ConcurrencyReport> {
    let sub_verdicts = (0..CONCURRENCY_CHANGES)
        .map(|_| transformed_verdict([g12, g13, g23], rng))
        .collect::<Result<Vec<_>>>()?;
    let yes = sub_verdicts.iter().filter(|&&v| v).count();
    Ok(ConcurrencyReport {
        verdict: 2 * yes > sub_verdicts.len(),
        unanimous: yes == 0 || yes == sub_verdicts.len(),
        sub_verdicts,
    })
}

/// Concurrency of the three principal diagonals of a hexagon.
pub fn hexagon_diagonals_concurrent(v: &[ProjPoint; 6]) -> Result<IncidenceReport> {
    let d: Vec<Hyperplane> = (0..3)
        .map(|i| line_through(&v[i], &v[i + 3]))
        .collect::<Result<_>>()
        .map_err(|_| Error::Degenerate("hexagon has coincident opposite vertices, resample".into()))?;
    let det = det3(d[0].coeffs(), d[1].coeffs(), d[2].coeffs());
    Ok(IncidenceReport {
        claim: "principal diagonals are concurrent".into(),
        verdict: det.is_zero(),
        witness: json!({
            "diagonals": d.iter().map(|l| point_json(&crate::projgeom::dual_point(l))).collect::<Vec<_>>(),
            "determinant": det.to_string(),
        }),
    })
}

/// Symmetric 3x3 matrix of a ternary quadratic form.
pub fn conic_matrix(c: &HomForm) -> [[Rational; 3]; 3] {
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let mut m: [[Rational; 3]; 3] = Default::default();
    for i in 0..3 {
        for j in 0..3 {
            let mut e = vec![0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let v = c.coeff(&e);
            m[i][j] = if i == j { v } else { v * &half };
        }
    }
    m
}

pub fn conic_from_matrix(m: &[[Rational; 3]; 3]) -> HomForm {
    let mut terms = Vec::new();
    for i in 0..3 {
        for j in i..3 {
            let mut e = vec![0u32; 3];
            e[i] += 1;
            e[j] += 1;
            let v = if i == j { m[i][i].clone() } else { &m[i][j] + &m[j][i] };
            terms.push((e, v));
        }
    }
    HomForm::from_terms(3, 2, terms)
}

fn adjugate(m: &[[Rational; 3]; 3]) -> [[Rational; 3]; 3] {
    let mut out: [[Rational; 3]; 3] = Default::default();
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            // cofactor C_ji
            let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let minor = &m[r[0]][c[0]] * &m[r[1]][c[1]] - &m[r[0]][c[1]] * &m[r[1]][c[0]];
            *slot = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    out
}

fn det_matrix(m: &[[Rational; 3]; 3]) -> Rational {
    (0..3)
        .map(|j| {
            let a = &m[1][(j + 1) % 3] * &m[2][(j + 2) % 3] - &m[1][(j + 2) % 3] * &m[2][(j + 1) % 3];
            &m[0][j] * a
        })
        .sum()
}

/// The conic whose tangent lines are exactly the points of the dual conic.
pub fn dual_conic(c: &HomForm) -> Result<HomForm> {
    let m = conic_matrix(c);
    if det_matrix(&m).is_zero() {
        return Err(Error::Degenerate("singular conic has no dual conic".into()));
    }
    Ok(conic_from_matrix(&adjugate(&m)).normalized())
}

/// Whether a line is tangent to a nonsingular conic.
pub fn line_tangent_to_conic(l: &Hyperplane, c: &HomForm) -> Result<bool> {
    Ok(dual_conic(c)?.eval_int(l.coeffs()).is_zero())
}

#[derive(Clone, Debug, PartialEq)]
pub enum TangentConicOutcome {
    Found(HomForm),
    NoConic,
    NotUnique,
    Degenerate(String),
}

/// The conic tangent to six given lines, found through the conic on the
/// six dual points.
pub fn common_tangent_conic(lines: &[Hyperplane]) -> TangentConicOutcome {
    if lines.len() != 6 || lines.iter().any(|l| l.dim() != 2) {
        return TangentConicOutcome::Degenerate("need six lines of the plane".into());
    }
    let duals: Vec<ProjPoint> = lines.iter().map(crate::projgeom::dual_point).collect();
    let forms = forms_through(&duals, 2, 2);
    match forms.len() {
        0 => TangentConicOutcome::NoConic,
        1 => match dual_conic(&forms[0]) {
            Ok(c) => TangentConicOutcome::Found(c),
            Err(e) => TangentConicOutcome::Degenerate(e.to_string()),
        },
        _ => TangentConicOutcome::NotUnique,
    }
}

/// Point of intersection of two lines of the plane.
pub fn meet(l1: &Hyperplane, l2: &Hyperplane) -> Result<ProjPoint> {
    ProjPoint::new(cross(l1.coeffs(), l2.coeffs())).map_err(|_| Error::NotProper)
}
