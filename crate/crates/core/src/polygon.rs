//! Polygons circumscribed about a conic and the incidence statements about
//! them: residual collinearity for octagons, the eight points on a conic,
//! three concurrent conics, Brianchon's hexagon, and two triangles
//! inscribed in one conic and circumscribed about another.

use num_traits::Zero;
use rand::Rng;
use serde_json::json;

use crate::certificates::{
    ci_certificate, common_tangent_conic, hexagon_diagonals_concurrent, line_tangent_to_conic, meet,
    pencil_intersection_check, points_on_common_conic, residual_collinearity_check, three_conics_concurrent,
    CICertificate, ConcurrencyReport, IncidenceReport, TangentConicOutcome,
};
use crate::error::{Error, Result};
use crate::exact::HomForm;
use crate::hilbert::CIType;
use crate::projgeom::{line_through, Hyperplane, PointSet, ProjPoint};
use crate::rnc::{conic_through_five, osculating_hyperplane, rnc_point, BinaryParam, Rnc};
use crate::sample::{apply, random_invertible};

/// Tangent lines at the given parameters and the vertices
/// `V_i = T_i ∩ T_{i+1}` (indices cyclic).
#[derive(Clone, Debug, PartialEq)]
pub struct CircumscribedPolygon {
    pub params: Vec<BinaryParam>,
    pub tangents: Vec<Hyperplane>,
    pub vertices: Vec<ProjPoint>,
}

pub fn circumscribed_polygon(gamma: &Rnc, params: &[BinaryParam]) -> Result<CircumscribedPolygon> {
    if gamma.ambient_dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: gamma.ambient_dim(),
        });
    }
    let k = params.len();
    if k < 3 {
        return Err(Error::OutOfRange(format!("a polygon needs at least 3 sides, got {k}")));
    }
    let tangents = params
        .iter()
        .map(|p| osculating_hyperplane(gamma, p))
        .collect::<Result<Vec<_>>>()?;
    let vertices = (0..k)
        .map(|i| meet(&tangents[i], &tangents[(i + 1) % k]))
        .collect::<Result<Vec<_>>>()?;
    Ok(CircumscribedPolygon {
        params: params.to_vec(),
        tangents,
        vertices,
    })
}

/// Octagon `A_1..A_8` given by its vertices, with the lines `l_ij = A_i A_j`.
pub struct Octagon<'a> {
    a: &'a [ProjPoint],
}

impl<'a> Octagon<'a> {
    pub fn new(vertices: &'a [ProjPoint]) -> Result<Self> {
        if vertices.len() != 8 || vertices.iter().any(|v| v.dim() != 2) {
            return Err(Error::OutOfRange("an octagon needs eight vertices in the plane".into()));
        }
        Ok(Octagon { a: vertices })
    }

    /// Vertex `A_i`, 1-based and cyclic.
    pub fn vertex(&self, i: usize) -> &ProjPoint {
        &self.a[(i - 1) % 8]
    }

    pub fn side(&self, i: usize, j: usize) -> Result<Hyperplane> {
        line_through(self.vertex(i), self.vertex(j))
    }

    /// `l_ij ∩ l_kl`.
    pub fn cross_point(&self, ij: (usize, usize), kl: (usize, usize)) -> Result<ProjPoint> {
        meet(&self.side(ij.0, ij.1)?, &self.side(kl.0, kl.1)?)
    }

    /// `P_1 = l_18 ∩ l_23`, `P_2 = l_12 ∩ l_34`, `P_3 = l_23 ∩ l_45`,
    /// `P_4 = l_34 ∩ l_56`.
    pub fn p(&self, i: usize) -> Result<ProjPoint> {
        match i {
            1 => self.cross_point((1, 8), (2, 3)),
            2 => self.cross_point((1, 2), (3, 4)),
            3 => self.cross_point((2, 3), (4, 5)),
            4 => self.cross_point((3, 4), (5, 6)),
            _ => Err(Error::OutOfRange(format!("octagon point P_{i}"))),
        }
    }

    /// Conic `γ_i` through `A_i, A_{i+1}, A_{4+i}, A_{5+i}, P_i`.
    pub fn conic(&self, i: usize) -> Result<HomForm> {
        let pts = [
            self.vertex(i).clone(),
            self.vertex(i + 1).clone(),
            self.vertex(4 + i).clone(),
            self.vertex(5 + i).clone(),
            self.p(i)?,
        ];
        conic_through_five(&pts)
    }
}

/// With `γ_1 ∩ γ_2 = {A_2, A_6, B_1, B_2}`, checks that `A_4, A_8, B_1, B_2`
/// are collinear.
pub fn octagon_residual_collinearity(vertices: &[ProjPoint]) -> Result<IncidenceReport> {
    let o = Octagon::new(vertices)?;
    let (g1, g2) = (o.conic(1)?, o.conic(2)?);
    let mut report = residual_collinearity_check(&g1, &g2, o.vertex(4), o.vertex(8), &[o.vertex(2), o.vertex(6)])?;
    report.witness["gamma_1"] = json!(g1.to_string());
    report.witness["gamma_2"] = json!(g2.to_string());
    Ok(report)
}

/// Checks that `(γ_1 ∩ γ_3) ∪ (γ_2 ∩ γ_4)` lies on a conic.
pub fn octagon_eight_points_on_conic(vertices: &[ProjPoint]) -> Result<IncidenceReport> {
    let o = Octagon::new(vertices)?;
    let g: Vec<HomForm> = (1..=4).map(|i| o.conic(i)).collect::<Result<_>>()?;
    let mut report = pencil_intersection_check(&g[0], &g[2], &g[1], &g[3]);
    report.witness["conics"] = json!(g.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThreeConicsOutcome {
    /// `γ_12, γ_13, γ_23`.
    pub conics: [HomForm; 3],
    /// Whether each `γ_ij` also passes through the sixth point of
    /// `X_i ∪ X_j`.
    pub sixth_points_on_conics: bool,
    pub concurrency: ConcurrencyReport,
}

/// For three triangles `X_1, X_2, X_3`, builds `γ_ij` through `X_i` and two
/// points of `X_j` and tests whether the three conics share a point.
pub fn three_triangle_conics<R: Rng + ?Sized>(x: [&[ProjPoint]; 3], rng: &mut R) -> Result<ThreeConicsOutcome> {
    if x.iter().any(|t| t.len() != 3) {
        return Err(Error::OutOfRange("three triangles of three points each".into()));
    }
    let conic = |i: usize, j: usize| -> Result<(HomForm, bool)> {
        let mut five: Vec<ProjPoint> = x[i].to_vec();
        five.extend_from_slice(&x[j][..2]);
        let c = conic_through_five(&five)?;
        let sixth = c.eval_int(x[j][2].coords()).is_zero();
        Ok((c, sixth))
    };
    let (g12, s12) = conic(0, 1)?;
    let (g13, s13) = conic(0, 2)?;
    let (g23, s23) = conic(1, 2)?;
    let concurrency = three_conics_concurrent(&g12, &g13, &g23, rng)?;
    Ok(ThreeConicsOutcome {
        conics: [g12, g13, g23],
        sixth_points_on_conics: s12 && s13 && s23,
        concurrency,
    })
}

/// Brianchon's theorem for the hexagon circumscribed at six parameters.
pub fn brianchon_check(gamma: &Rnc, params: &[BinaryParam]) -> Result<IncidenceReport> {
    if params.len() != 6 {
        return Err(Error::OutOfRange("a hexagon needs six tangents".into()));
    }
    let hex = circumscribed_polygon(gamma, params)?;
    let v: [ProjPoint; 6] = hex.vertices.try_into().expect("six vertices");
    hexagon_diagonals_concurrent(&v)
}

/// Six points of a random nonsingular conic: the standard conic points at
/// the given parameters moved by a random invertible integer matrix.
pub fn points_on_random_conic<R: Rng + ?Sized>(rng: &mut R, params: &[BinaryParam]) -> Vec<ProjPoint> {
    let gamma = crate::rnc::standard_rnc(2);
    let m = random_invertible(rng, 3, 5);
    params.iter().map(|t| apply(&m, &rnc_point(&gamma, t))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TwoTrianglesOutcome {
    pub certificate: Option<CICertificate>,
    /// The sides of both triangles.
    pub lines: Vec<Hyperplane>,
    pub tangent_conic: TangentConicOutcome,
    /// Every side is tangent to the recovered conic.
    pub all_tangent: bool,
}

/// Given two triangles whose six vertices should form a complete
/// intersection of a conic and a cubic, certifies that and looks for a conic
/// tangent to all six sides.
pub fn two_triangles_tangent_conic(t1: &[ProjPoint; 3], t2: &[ProjPoint; 3]) -> Result<TwoTrianglesOutcome> {
    let all = PointSet::new(2, t1.iter().chain(t2.iter()).cloned())?;
    let certificate = if all.len() == 6 {
        ci_certificate(&all, CIType::new(2, 3)?).ok()
    } else {
        None
    };
    let sides = |t: &[ProjPoint; 3]| -> Result<Vec<Hyperplane>> {
        (0..3).map(|i| line_through(&t[i], &t[(i + 1) % 3])).collect()
    };
    let mut lines = sides(t1)?;
    lines.extend(sides(t2)?);
    let tangent_conic = common_tangent_conic(&lines);
    let all_tangent = match &tangent_conic {
        TangentConicOutcome::Found(c) => lines
            .iter()
            .map(|l| line_tangent_to_conic(l, c))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|b| b),
        _ => false,
    };
    Ok(TwoTrianglesOutcome {
        certificate,
        lines,
        tangent_conic,
        all_tangent,
    })
}

/// Whether the points lie on one conic (reported for completeness of the
/// two-triangle hypothesis).
pub fn six_on_conic(points: &[ProjPoint]) -> Option<HomForm> {
    PointSet::new(2, points.iter().cloned()).ok().and_then(|s| points_on_common_conic(&s))
}
