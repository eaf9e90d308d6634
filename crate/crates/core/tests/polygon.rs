use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starconf::certificates::TangentConicOutcome;
use starconf::polygon::*;
use starconf::projgeom::ProjPoint;
use starconf::rnc::{contact_star, random_params, standard_rnc, BinaryParam};
use starconf::sample::perturb;

fn octagon(seed: u64) -> CircumscribedPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    circumscribed_polygon(&standard_rnc(2), &random_params(&mut rng, 8)).unwrap()
}

#[test]
fn residual_points_are_collinear() {
    for seed in 0..5 {
        let o = octagon(seed);
        assert!(octagon_residual_collinearity(&o.vertices).unwrap().verdict, "seed {seed}");
        let mut bad = o.vertices.clone();
        bad[3] = perturb(&mut ChaCha8Rng::seed_from_u64(seed), &bad[3]);
        assert!(!octagon_residual_collinearity(&bad).unwrap().verdict, "perturbed seed {seed}");
    }
}

#[test]
fn eight_points_on_a_conic() {
    for seed in 0..5 {
        let o = octagon(seed);
        let report = octagon_eight_points_on_conic(&o.vertices).unwrap();
        assert!(report.verdict, "seed {seed}");
        assert!(report.witness.get("common_conic").is_some());
        let mut bad = o.vertices.clone();
        bad[0] = perturb(&mut ChaCha8Rng::seed_from_u64(seed), &bad[0]);
        assert!(!octagon_eight_points_on_conic(&bad).unwrap().verdict);
    }
}

#[test]
fn three_triangles_give_concurrent_conics() {
    let g = standard_rnc(2);
    for seed in 0..3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params = random_params(&mut rng, 9);
        let stars: Vec<Vec<ProjPoint>> = params
            .chunks(3)
            .map(|c| contact_star(&g, c).unwrap().points.points().to_vec())
            .collect();
        let out = three_triangle_conics([&stars[0], &stars[1], &stars[2]], &mut rng).unwrap();
        assert!(out.sixth_points_on_conics);
        assert!(out.concurrency.verdict && out.concurrency.unanimous);
        let mut bad = stars[2].clone();
        bad[0] = perturb(&mut rng, &bad[0]);
        let out = three_triangle_conics([&stars[0], &stars[1], &bad], &mut rng).unwrap();
        assert!(!out.concurrency.verdict);
    }
}

#[test]
fn brianchon() {
    let g = standard_rnc(2);
    let params: Vec<BinaryParam> = (0..6).map(BinaryParam::affine).collect();
    assert!(brianchon_check(&g, &params).unwrap().verdict);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        assert!(brianchon_check(&g, &random_params(&mut rng, 6)).unwrap().verdict);
    }
    let hex = circumscribed_polygon(&g, &params).unwrap();
    let mut v: [ProjPoint; 6] = hex.vertices.try_into().unwrap();
    v[0] = perturb(&mut rng, &v[0]);
    assert!(!starconf::certificates::hexagon_diagonals_concurrent(&v).unwrap().verdict);
}

#[test]
fn two_inscribed_triangles_share_a_tangent_conic() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..3 {
        let params = random_params(&mut rng, 6);
        let pts = points_on_random_conic(&mut rng, &params);
        let t1 = [pts[0].clone(), pts[1].clone(), pts[2].clone()];
        let t2 = [pts[3].clone(), pts[4].clone(), pts[5].clone()];
        let out = two_triangles_tangent_conic(&t1, &t2).unwrap();
        assert!(out.certificate.is_some());
        assert!(matches!(out.tangent_conic, TangentConicOutcome::Found(_)));
        assert!(out.all_tangent);
    }
}
