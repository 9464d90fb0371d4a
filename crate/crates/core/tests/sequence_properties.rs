use goldenextremal_core::exactphi::{Fixed, QPhi, Radical};
use goldenextremal_core::goldenseq::{mid_side_gap, tn_area, tn_area_bounds_check, tn_entry, tn_limit};
use num::bigint::BigInt;
use num::BigRational;

fn fibs(n: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::from(0), BigInt::from(1)];
    while f.len() <= n + 1 {
        let k = f.len();
        f.push(&f[k - 1] + &f[k - 2]);
    }
    f
}

#[test]
fn pythagoras_component_wise_to_100() {
    for n in 1..=100u64 {
        let t = tn_entry(n).unwrap();
        let lhs = t.side_short.square() + t.side_mid.square();
        let rhs = t.side_long.square();
        assert_eq!(lhs.a(), rhs.a(), "n = {n}");
        assert_eq!(lhs.b(), rhs.b(), "n = {n}");
    }
}

#[test]
fn sides_follow_fibonacci_ratios() {
    let f = fibs(101);
    let phi = QPhi::phi();
    for n in 1..=100usize {
        let t = tn_entry(n as u64).unwrap();
        let r = BigRational::new(f[n + 1].clone(), f[n].clone());
        assert_eq!(t.side_mid.square(), phi.scale(&r));
        // φ^(n+1)/F(n) = (F(n+1)φ + F(n))/F(n) = 1 + φ·F(n+1)/F(n)
        assert_eq!(t.side_long.square(), QPhi::one() + phi.scale(&r));
    }
}

#[test]
fn area_is_half_mid_side_and_closed_form() {
    let f = fibs(101);
    for n in 1..=100usize {
        let t = tn_entry(n as u64).unwrap();
        let area = tn_area(n as u64).unwrap();
        let half_mid = t.side_mid.scale(&QPhi::from_ratios(1, 2, 0, 1));
        assert_eq!(area, half_mid, "n = {n}");
        assert_eq!(area, t.area);
        // area² = φ·F(n+1) / (4·F(n))
        let sq = QPhi::phi().scale(&BigRational::new(f[n + 1].clone(), BigInt::from(4) * &f[n]));
        assert_eq!(area.square(), sq);
    }
}

#[test]
fn bounds_with_equality_only_at_one_and_two() {
    let r = tn_area_bounds_check(100).unwrap();
    assert_eq!(r.equality_at, vec![1, 2]);
    assert!(r.odd_ratios_increase && r.even_ratios_decrease);
}

#[test]
fn areas_converge_monotonically_by_parity() {
    let digits = 40;
    let areas: Vec<Fixed> = (1..=60).map(|n| tn_area(n).unwrap().to_fixed(digits)).collect();
    let half_phi = QPhi::from_ratios(0, 1, 1, 2).to_fixed(digits);
    for w in areas.iter().step_by(2).collect::<Vec<_>>().windows(2) {
        assert!(w[1] > w[0] && *w[1] < half_phi);
    }
    for w in areas.iter().skip(1).step_by(2).collect::<Vec<_>>().windows(2) {
        assert!(w[1] < w[0] && *w[1] > half_phi);
    }
    let quarter_phi_sq = QPhi::phi().square().scale(&BigRational::new(1.into(), 4.into()));
    let gaps: Vec<Fixed> = (1..=60).map(|n| (tn_area(n).unwrap().square() - quarter_phi_sq.clone()).abs().to_fixed(digits)).collect();
    for w in gaps.windows(2) {
        assert!(w[1] < w[0]);
    }
}

#[test]
fn mid_side_reaches_phi() {
    assert!(mid_side_gap(50).unwrap().to_f64() < 1e-10);
    let lim = tn_limit(1..=50).unwrap();
    let gaps: Vec<f64> = lim.convergence.iter().map(|(_, g)| g.to_f64()).collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]));
    assert_eq!(lim.side_mid, Radical::from_qphi(QPhi::phi()));
}
