use goldenextremal_core::construct::{
    build_golden_rectangle, construct_t2, golden_section_point, ConstructionTrace, GeomObject, Num, Op, Point, Selector, TraceBuilder,
};
use goldenextremal_core::exactphi::QPhi;
use proptest::prelude::*;

fn field_value(n: &Num) -> QPhi {
    n.exact().and_then(|s| s.as_field()).cloned().expect("field coordinate")
}

fn shadows_agree(trace: &ConstructionTrace) {
    let check = |n: &Num| {
        if let Some(s) = n.exact() {
            let gap = s.to_fixed(50).sub(n.approx()).abs().to_f64();
            assert!(gap < 1e-30, "shadow off by {gap}");
        }
    };
    for (_, obj) in trace.objects().iter() {
        match obj {
            GeomObject::Point(p) => {
                check(&p.x);
                check(&p.y);
            }
            GeomObject::Line(l) => [&l.a, &l.b, &l.c].into_iter().for_each(check),
            GeomObject::Circle(c) => {
                check(&c.center.x);
                check(&c.center.y);
                check(&c.r2);
            }
        }
    }
}

#[test]
fn replay_is_deterministic() {
    let (trace, _) = construct_t2().unwrap();
    assert_eq!(trace.replay().unwrap(), trace.replay().unwrap());
    let rect = build_golden_rectangle().unwrap();
    assert_eq!(rect.replay().unwrap(), *rect.objects());
}

#[test]
fn exact_and_shadow_coordinates_agree() {
    shadows_agree(&construct_t2().unwrap().0);
    shadows_agree(&build_golden_rectangle().unwrap());
}

#[test]
fn t2_pythagoras_in_the_field() {
    let (_, cert) = construct_t2().unwrap();
    assert_eq!(QPhi::one() + &cert.be_sq, cert.ec_sq);
}

fn small() -> impl Strategy<Value = QPhi> {
    (-20i64..=20, -20i64..=20).prop_map(|(a, b)| QPhi::from_ints(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn golden_section_is_a_geometric_mean(bx in small(), by in small(), cx in small(), cy in small()) {
        let b = Point::exact(bx, by);
        let c = Point::exact(cx, cy);
        prop_assume!(b != c);
        let o = golden_section_point(&b, &c).unwrap();
        let sq = |p: &Point, q: &Point| field_value(&p.dist2(q));
        let (bo, oc, bc) = (sq(&b, &o), sq(&o, &c), sq(&b, &c));
        // BO² = OC·BC, squared to stay in the field
        prop_assert_eq!(bo.square(), &oc * &bc);
        // BO = BC/φ and OC = BC/φ², so BO + OC = BC since 1/φ + 1/φ² = 1
        let phi = QPhi::phi();
        prop_assert_eq!(&bo * &phi.square(), bc.clone());
        prop_assert_eq!(&oc * &phi.pow(4), bc);
        prop_assert_eq!(phi.inv().unwrap() + phi.square().inv().unwrap(), QPhi::one());
    }

    #[test]
    fn random_traces_round_trip_and_shadow(px in -9i64..=9, py in -9i64..=9, qx in -9i64..=9, qy in -9i64..=9, rx in -9i64..=9, ry in -9i64..=9) {
        let (p, q, r) = ((px, py), (qx, qy), (rx, ry));
        prop_assume!(p != q && p != r);
        let at = |v: (i64, i64)| (QPhi::from_ints(v.0, 0), QPhi::from_ints(v.1, 0));
        let mut b = TraceBuilder::new();
        b.place("P", at(p).0, at(p).1).unwrap()
            .place("Q", at(q).0, at(q).1).unwrap()
            .place("R", at(r).0, at(r).1).unwrap()
            .plain("circ", Op::CircleCenterThrough, &["P", "Q"]).unwrap()
            .plain("l", Op::LineThrough, &["R", "P"]).unwrap()
            .meet("X", "circ", "l", Selector::Beyond("R".into(), "P".into())).unwrap()
            .plain("perp", Op::PerpendicularAt, &["l", "X"]).unwrap();
        let trace = b.finish();
        shadows_agree(&trace);
        let back = ConstructionTrace::parse(&trace.to_text()).unwrap();
        prop_assert_eq!(&back, &trace);
        let x = trace.objects().point("X").unwrap();
        let pt = trace.objects().point("P").unwrap();
        let qt = trace.objects().point("Q").unwrap();
        prop_assert_eq!(x.dist2(pt).sub(&qt.dist2(pt)).signum().unwrap(), 0);
    }
}
