//! Invariants over seeded random cones.

mod common;

use proptest::prelude::*;

use conering::cone::lattice_points_up_to_degree;
use conering::exactmath::{EpsNumber, Rational};
use conering::quotient::{
    build_slices, forms_from_coefficients, monotone_check, quotient_dimensions, quotient_dimensions_exact, Flavor,
    QuotientPresentation,
};
use conering::series::{s_polynomial, t_polynomial};
use conering::stringy::{string_e_polynomial, BivariatePolynomial, StratumRecord};
use conering::{BoxDecomposition, GenericDirection, GradedCone, Triangulation};

use common::random_cone;

fn decompose(cone: &GradedCone, seed: u64) -> BoxDecomposition {
    let (tri, _) = Triangulation::build_random(cone, seed, 20).unwrap();
    let (dir, _) = GenericDirection::choose(&tri, seed, 20).unwrap();
    BoxDecomposition::new(tri, dir)
}

fn small_cone() -> impl Strategy<Value = GradedCone> {
    (0u64..10_000, 2usize..=3).prop_map(|(seed, r)| if r == 2 { random_cone(seed, 2, 3, 4) } else { random_cone(seed, 3, 2, 5) })
}

fn constant(p: &[i64]) -> Vec<EpsNumber> {
    p.iter().map(|&x| EpsNumber::constant(Rational::integer(x))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn s_is_a_cone_invariant(cone in small_cone(), a in 0u64..1000, b in 1000u64..2000) {
        let (da, db) = (decompose(&cone, a), decompose(&cone, b));
        let r = cone.rank();
        let s = s_polynomial(&da);
        prop_assert_eq!(&s, &s_polynomial(&db));
        prop_assert_eq!(s.coeff(0), 1);
        let vol = da.triangulation().normalized_volume();
        prop_assert_eq!(vol, db.triangulation().normalized_volume());
        prop_assert_eq!(s.eval(1), vol as i64);
        prop_assert_eq!(t_polynomial(&da), s.reflect(r));
        prop_assert!(s.degree().unwrap() < r);
    }

    #[test]
    fn psi_is_subadditive(cone in small_cone(), seed in 0u64..1000) {
        let tri = Triangulation::build_random(&cone, seed, 20).unwrap().0;
        let pts = lattice_points_up_to_degree(&tri, 2, false);
        for x in &pts {
            for y in &pts {
                let sum: Vec<i64> = x.coords().iter().zip(y.coords()).map(|(a, b)| a + b).collect();
                let lhs = tri.psi_value(&constant(&sum)).unwrap();
                let rhs = tri.psi_value(&constant(x.coords())).unwrap() + tri.psi_value(&constant(y.coords())).unwrap();
                prop_assert!(lhs <= rhs, "psi({:?}) = {} > {}", sum, lhs, rhs);
            }
        }
    }

    #[test]
    fn quotient_bounds_hold_for_any_coefficients(
        cone in small_cone(),
        seed in 0u64..1000,
        raw in prop::collection::vec(-2i64..=2, 8),
        open in any::<bool>(),
    ) {
        let tri = Triangulation::build_random(&cone, seed, 20).unwrap().0;
        let pts = cone.points();
        let c = raw.iter().cycle().take(pts.len()).map(|&x| Rational::integer(x)).collect();
        let forms = forms_from_coefficients(pts, cone.rank(), c);
        let flavor = if open { Flavor::ROpen } else { Flavor::R };
        let slices = build_slices(&tri, cone.rank() as i64 + 3, flavor);
        let exact = quotient_dimensions_exact(&slices, &forms, pts, flavor);
        prop_assert!(monotone_check(&exact).passed);
        let mixed = quotient_dimensions(&slices, &forms, pts, flavor);
        for l in 0..slices.len() {
            for k in 0..=cone.rank() {
                if mixed.is_exact_at(l) {
                    prop_assert_eq!(mixed.dims[k][l], exact.dims[k][l]);
                } else {
                    prop_assert!(mixed.dims[k][l] >= exact.dims[k][l]);
                }
            }
        }
    }

    #[test]
    fn certified_dimensions_do_not_depend_on_the_seed(cone in small_cone(), a in 0u64..1000, b in 1000u64..2000) {
        let d = decompose(&cone, a);
        let r = cone.rank() as i64;
        for flavor in [Flavor::R, Flavor::ROpen] {
            let p = QuotientPresentation::build_certified(&d, flavor, r + 2, a, 5).unwrap().0;
            let q = QuotientPresentation::build_certified(&d, flavor, r + 2, b, 5).unwrap().0;
            prop_assert_eq!(&p.dimensions.dims, &q.dimensions.dims);
            prop_assert_eq!(p.dimensions.final_polynomial(), p.expected.clone());
        }
    }

    #[test]
    fn normal_form_is_a_projection_killing_relations(cone in small_cone(), seed in 0u64..1000, open in any::<bool>()) {
        let d = decompose(&cone, seed);
        let r = cone.rank();
        let flavor = if open { Flavor::ROpen } else { Flavor::R };
        let p = QuotientPresentation::build_certified(&d, flavor, r as i64, seed, 5).unwrap().0;
        let pts = cone.points();
        for (deg, boxes) in p.basis.iter().enumerate() {
            for (i, b) in boxes.iter().enumerate() {
                let unit: Vec<Rational> = (0..boxes.len()).map(|j| Rational::integer((i == j) as i64)).collect();
                prop_assert_eq!(p.normal_form(b.coords()).unwrap(), unit, "degree {}", deg);
            }
        }
        for l in 1..=r {
            let zero = vec![Rational::integer(0); p.basis[l].len()];
            for m in &p.slice(l - 1).monomials {
                for z in &p.forms {
                    let mut acc = zero.clone();
                    for (i, c) in z.terms(pts) {
                        let n: Vec<i64> = m.coords().iter().zip(&pts[i]).map(|(a, b)| a + b).collect();
                        for (a, v) in acc.iter_mut().zip(p.normal_form(&n).unwrap()) {
                            *a = &*a + &(&c * &v);
                        }
                    }
                    prop_assert_eq!(&acc, &zero);
                }
            }
        }
    }

    #[test]
    fn stringy_is_additive_over_strata(
        cone in small_cone(),
        e1 in prop::collection::vec((0u32..3, 0u32..3, -5i64..6), 0..5),
        e2 in prop::collection::vec((0u32..3, 0u32..3, -5i64..6), 0..5),
    ) {
        let a = StratumRecord::smooth(BivariatePolynomial::from_terms(e1));
        let b = StratumRecord::singular(BivariatePolynomial::from_terms(e2), cone);
        let both = string_e_polynomial(&[a.clone(), b.clone()], None, 3).unwrap().e_st;
        let ea = string_e_polynomial(&[a], None, 3).unwrap().e_st;
        let eb = string_e_polynomial(&[b], None, 3).unwrap().e_st;
        prop_assert_eq!(both, ea.add(&eb));
    }
}
