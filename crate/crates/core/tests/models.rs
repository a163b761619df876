use critlab_core::models::*;
use critlab_core::polyalg::{rat, Ideal, Rat, Ring};
use critlab_core::{Perm, WeylElem};
use num_traits::Zero;

fn w0() -> WeylElem {
    WeylElem::longest(3, 1)
}

fn amended_a_prime_rank(pt: &[Rat]) -> usize {
    let res = amended_resolution_gl3().unwrap();
    res.maps()[2].rank_at(pt)
}

/// Checks one point of the `w0` component three ways: the minimal
/// resolution, the amended ω presentation, and `2 − rank A′(pt)`.
fn fiber_three_ways(pt: &[Rat]) -> usize {
    let comp = component(3, &w0()).unwrap();
    let fiber = omega_fiber(&comp, pt).unwrap();
    assert_eq!(fiber, amended_omega_presentation().fiber_dim(pt).unwrap(), "{pt:?}");
    assert_eq!(fiber, 2 - amended_a_prime_rank(pt), "{pt:?}");
    fiber
}

#[test]
fn omega_fiber_is_two_at_the_origin() {
    assert_eq!(fiber_three_ways(&vec![Rat::zero(); 6]), 2);
}

#[test]
fn omega_fiber_is_one_off_the_special_strata() {
    let mut sampler = PointSampler::new(11);
    let chart = Chart::new(3).unwrap();
    for p in Perm::all(3).into_iter().filter(|p| !p.is_identity()) {
        for _ in 0..10 {
            let pt = sampler.iw0_point_over(&p);
            assert!(!chart.flags_equal(&pt));
            assert_eq!(fiber_three_ways(&pt), 1, "over {p}: {pt:?}");
        }
    }
}

#[test]
fn equal_flags_with_nilpotent_part() {
    // N with u12 or u23 nonzero: Gorenstein
    let mut sampler = PointSampler::new(12);
    let mut seen = 0;
    while seen < 10 {
        let pt = sampler.iw0_point_over(&Perm::identity(3));
        if pt[3].is_zero() && pt[4].is_zero() {
            continue;
        }
        seen += 1;
        assert_eq!(fiber_three_ways(&pt), 1, "{pt:?}");
    }
    // the u13-axis keeps the fiber at 2: A′ vanishes there
    for c in [1, -2, 3, 7] {
        let pt = vec![rat(0), rat(0), rat(0), rat(0), rat(0), rat(c)];
        assert_eq!(fiber_three_ways(&pt), 2);
        assert_eq!(amended_a_prime_rank(&pt), 0);
    }
}

#[test]
fn printed_omega_presentation_is_off_the_component_rank() {
    // y1 = −1, u12 = −3, u13 = −1 lies on the component; the printed
    // matrix has rank 2 there
    let pt = vec![rat(0), rat(0), rat(-1), rat(-3), rat(0), rat(-1)];
    iw0_gl3().ideal.vanishes_at(&pt).unwrap();
    assert_eq!(printed_omega_presentation().fiber_dim(&pt).unwrap(), 0);
    assert_eq!(fiber_three_ways(&pt), 1);
    // both agree at the origin
    assert_eq!(printed_omega_presentation().fiber_dim(&vec![Rat::zero(); 6]).unwrap(), 2);
}

#[test]
fn gl2_hypersurface_is_gorenstein() {
    let s = WeylElem::parse("s1", 2).unwrap();
    let comp = component(2, &s).unwrap();
    let points =
        [(0, 0), (0, 1), (0, -3), (2, 0), (-1, 0), (5, 0), (0, 4), (3, 0), (0, 9), (-7, 0)];
    for (x, u) in points {
        assert_eq!(omega_fiber(&comp, &[rat(x), rat(u)]).unwrap(), 1);
    }
    assert!(omega_fiber(&comp, &[rat(1), rat(1)]).is_err());
}

#[test]
fn resolutions_of_iw0() {
    let comp = component(3, &w0()).unwrap();
    assert_eq!(comp.resolution.as_ref().unwrap().betti(), vec![1, 4, 5, 2]);
    let kept = resolve_printed_generators().unwrap();
    assert_eq!(kept.betti(), vec![1, 5, 6, 2]);
    assert!(kept.is_complex() && kept.is_acyclic().unwrap());
    let amended = amended_resolution_gl3().unwrap();
    assert!(amended.is_complex() && amended.is_acyclic().unwrap());
}

#[test]
fn rederived_component_matches_printed_ideal() {
    let ideal = rederive_component(3, &w0()).unwrap();
    assert!(ideal.same_as(&iw0_gl3().ideal));
    let r = Ring::new(&["x", "u"]);
    let s = WeylElem::parse("s1", 2).unwrap();
    assert!(rederive_component(2, &s).unwrap().same_as(&Ideal::parse(&r, &["u*x"]).unwrap()));
}

#[test]
fn smoothness_classification() {
    let origin = vec![Rat::zero(); 9];
    for p in Perm::all(3) {
        let w = WeylElem::single(p);
        let formula = tangent_dim_formula(&w).unwrap();
        let distinct = w.is_product_of_distinct_simples().unwrap();
        assert_eq!(formula == 9, distinct, "{w}");
        assert_eq!(tangent_dim_with_diagonal(3, &w, &origin).unwrap(), formula - 3, "{w}");
    }
    assert_eq!(jacobian_crosscheck_w0().unwrap(), 8);
}

#[test]
fn generic_points_of_components_are_smooth() {
    let mut sampler = PointSampler::new(13);
    for p in Perm::all(3) {
        let w = WeylElem::single(p.clone());
        for _ in 0..3 {
            let pt = sampler.y_point(&p);
            assert_eq!(tangent_dim_with_diagonal(3, &w, &pt).unwrap(), 6, "{w}");
        }
    }
}

fn all_specs(k: usize) -> Vec<String> {
    let atoms = ["w0:equal", "w0:distinct", "s1s2:na"];
    let mut out = vec![String::new()];
    for _ in 0..k {
        out = out
            .iter()
            .flat_map(|s| {
                atoms
                    .iter()
                    .map(move |a| if s.is_empty() { a.to_string() } else { format!("{s},{a}") })
            })
            .collect();
    }
    out
}

#[test]
fn product_rule_is_multiplicative() {
    for k in 1..=3 {
        for text in all_specs(k) {
            let spec: PdRPointSpec = text.parse().unwrap();
            let singles: usize = text
                .split(',')
                .map(|t| product_omega_fiber(&t.parse().unwrap()).unwrap())
                .product();
            let total = product_omega_fiber(&spec).unwrap();
            assert_eq!(total, singles, "{text}");
            assert_eq!(total, 1 << spec.r(), "{text}");
        }
    }
}

#[test]
fn summaries_are_consistent() {
    for p in Perm::all(3) {
        let w = WeylElem::single(p);
        let s = summarize(3, &w).unwrap();
        assert_eq!(s.dim, 3, "{w}");
        assert_eq!(s.tangent_dim + 3, tangent_dim_formula(&w).unwrap());
        assert_eq!(s.omega_fiber_origin, if w == w0() { 2 } else { 1 });
    }
}
