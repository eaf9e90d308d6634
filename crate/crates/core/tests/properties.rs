use itertools::Itertools;
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starconf::certificates::{cb_gorenstein, ci_certificate};
use starconf::exact::rational::binomial;
use starconf::exact::{rat, HomForm, RatMatrix, Rational};
use starconf::hadamard::*;
use starconf::hilbert::*;
use starconf::projgeom::*;
use starconf::rnc::*;
use starconf::sample::{apply, random_delta_avoiding_line, random_invertible, random_point};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rank_is_transpose_invariant_and_kernel_annihilates(rows in small_matrix()) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = RatMatrix::from_i64_rows(&refs);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.rank(), m.rank_bareiss());
        let ker = m.kernel_basis();
        prop_assert_eq!(ker.len() + m.rank(), m.cols());
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn resultant_detects_common_factors(a in -5i64..=5, b in -5i64..=5, c in 1i64..=5, seed in any::<u64>()) {
        let mut r = rng(seed);
        let l = HomForm::linear(&[rat(a), rat(b), rat(c)]);
        let f = l.mul(&starconf::sample::random_conic(&mut r, 5));
        let g = l.mul(&HomForm::linear(&[rat(1), rat(2), rat(3)]));
        if !f.is_zero() {
            prop_assert!(!starconf::exact::coprime(&f, &g));
        }
        let x = HomForm::var(3, 0);
        let z = HomForm::var(3, 2);
        prop_assert!(starconf::exact::coprime(&x.pow(2).add(&z.pow(2)), &l));
    }

    #[test]
    fn star_configuration_size_and_order(seed in any::<u64>(), n in 2usize..=3, extra in 0usize..=2) {
        let mut r = rng(seed);
        let g = standard_rnc(n);
        let params = random_params(&mut r, n + extra + 1);
        let hs: Vec<Hyperplane> = params.iter().map(|p| osculating_hyperplane(&g, p).unwrap()).collect();
        prop_assert!(meets_properly(&hs));
        let s = star_configuration(&hs).unwrap();
        prop_assert_eq!(s.len() as u64, binomial(hs.len() as u64, n as u64));
        let mut shuffled = hs.clone();
        shuffled.shuffle(&mut r);
        prop_assert_eq!(star_configuration(&shuffled).unwrap(), s.clone());
        for p in s.iter() {
            prop_assert_eq!(hs.iter().filter(|h| h.contains(p)).count(), n);
        }
    }

    #[test]
    fn osculating_pullback_is_a_pure_power(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        // a random curve: the standard one under a random coordinate change
        let m = random_invertible(&mut r, n + 1, 4);
        let std_forms = standard_rnc(n).forms().to_vec();
        let forms: Vec<HomForm> = m
            .iter()
            .map(|row| {
                row.iter().zip(&std_forms).fold(HomForm::zero(2, n as u32), |acc, (c, f)| {
                    acc.add(&f.scale(&Rational::from_integer(c.clone())))
                })
            })
            .collect();
        let g = Rnc::new(forms).unwrap();
        for t in random_params(&mut r, 3) {
            let h = osculating_hyperplane(&g, &t).unwrap();
            prop_assert!(pullback(&g, &h).proportional(&full_contact_form(&t, n)));
        }
    }

    #[test]
    fn hadamard_product_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ps: Vec<ProjPoint> = (0..3).map(|_| random_point(&mut r, 3, 9)).collect();
        if let (Ok(ab), Ok(ba)) = (had_point(&ps[0], &ps[1]), had_point(&ps[1], &ps[0])) {
            prop_assert_eq!(&ab, &ba);
            if let (Ok(l), Ok(bc)) = (had_point(&ab, &ps[2]), had_point(&ps[1], &ps[2])) {
                prop_assert_eq!(l, had_point(&ps[0], &bc).unwrap());
            }
        }
        prop_assert_eq!(had_point(&ps[0], &hadamard_identity(3)).unwrap(), ps[0].clone());
    }

    #[test]
    fn hadamard_intersection_identity(seed in any::<u64>(), n in 2usize..=4) {
        let mut r = rng(seed);
        let l = random_delta_avoiding_line(&mut r, n);
        let (forms, is_rnc) = coordinate_power_line(&l, n as u32);
        prop_assert!(is_rnc);
        let gamma = Rnc::new(forms).unwrap();
        let h = line_had_power_hyperplane(&l).unwrap();
        let pts: Vec<ProjPoint> = random_params(&mut r, 3 * n)
            .iter()
            .map(|t| l.point_at(t))
            .filter(|p| p.coords().iter().all(|c| !c.is_zero()))
            .unique()
            .take(n)
            .collect();
        prop_assume!(pts.len() == n);
        let hs: Vec<Hyperplane> = pts.iter().map(|p| had_point_hyperplane(p, &h).unwrap()).collect();
        prop_assert_eq!(intersect_hyperplanes(&hs).unwrap(), had_product(&pts).unwrap());
        for p in &pts {
            let t = l.param_of(p).unwrap();
            prop_assert_eq!(osculating_hyperplane(&gamma, &t).unwrap(), had_point_hyperplane(p, &h).unwrap());
            for d in 0..n {
                let a = osculating_flat_hadamard(p, &l, d).unwrap();
                let b = osculating_flat(&gamma, &t, d);
                let mut both = a.clone();
                both.extend(b);
                prop_assert_eq!(RatMatrix::from_rows(a).rank(), d + 1);
                prop_assert_eq!(RatMatrix::from_rows(both).rank(), d + 1);
            }
        }
        let x = PointSet::new(n, pts.clone()).unwrap();
        let extra = l.point_at(&random_params(&mut r, 1)[0]);
        if extra.coords().iter().all(|c| !c.is_zero()) && !x.contains(&extra) {
            let x = x.union(&PointSet::new(n, [extra]).unwrap());
            let hs: Vec<Hyperplane> = x.iter().map(|p| had_point_hyperplane(p, &h).unwrap()).collect();
            prop_assert_eq!(sqfree_had_power(&x, n).unwrap(), star_configuration(&hs).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn hilbert_function_of_fat_points(seed in any::<u64>(), mults in prop::collection::vec(1u32..=4, 1..=5)) {
        let mut r = rng(seed);
        let pts = random_points(&mut r, 2, mults.len());
        let z = FatScheme::new(2, pts.points().iter().cloned().zip(mults.iter().copied()).collect()).unwrap();
        let values = hilbert_values(&z).unwrap();
        prop_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(*values.last().unwrap(), z.degree());
        prop_assert_eq!(h_vector(&z).unwrap().sum(), z.degree());
        let d = values.len() as u32;
        prop_assert_eq!(hilbert_function(&z, d), z.degree());
    }

    #[test]
    fn three_fat_recursion_matches_ranks(seed in any::<u64>(), m in prop::array::uniform3(1u64..=5)) {
        let mut r = rng(seed);
        let mults: Vec<u32> = m.iter().map(|&k| k as u32).collect();
        let computed = general_fat_hvector(&mut r, 2, &mults).unwrap();
        prop_assert_eq!(computed, three_fat_hvector(m));
    }

    #[test]
    fn star_difference(seed in any::<u64>(), s in 2usize..=4, t in 1usize..=3) {
        let mut r = rng(seed);
        let g = standard_rnc(2);
        let params = random_params(&mut r, s + t);
        let big = contact_star(&g, &params).unwrap().points;
        let small = contact_star(&g, &params[..s]).unwrap().points;
        prop_assert_eq!(
            h_vector_points(&big.difference(&small)).unwrap(),
            star_difference_hvector(s as u64, t as u64).unwrap()
        );
    }

    #[test]
    fn certificates_re_verify_and_gorenstein_is_projective(seed in any::<u64>(), r in 3usize..=4, same in any::<bool>()) {
        let mut rn = rng(seed);
        let s = if same { r } else { r - 1 };
        let g = standard_rnc(2);
        let params = random_params(&mut rn, r + s);
        let x = contact_star(&g, &params[..r]).unwrap().points;
        let y = contact_star(&g, &params[r..]).unwrap().points;
        let u = x.union(&y);
        let ct = if same {
            CIType::new(r as u64 - 1, r as u64).unwrap()
        } else {
            CIType::new(r as u64 - 1, r as u64 - 1).unwrap()
        };
        let cert = ci_certificate(&u, ct).unwrap();
        prop_assert!(cert.verify(&u));
        let m = random_invertible(&mut rn, 3, 5);
        let moved = PointSet::new(2, u.iter().map(|p| apply(&m, p))).unwrap();
        prop_assert_eq!(cb_gorenstein(&u).unwrap(), cb_gorenstein(&moved).unwrap());
        prop_assert!(cb_gorenstein(&u).unwrap());
    }
}
