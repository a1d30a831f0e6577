use actionvar_core::classical::{
    action_fullrel, action_quadrature, action_wr_pdx, action_wr_xdp, action_wr_xdp_first_order, frequency_from_action,
    frequency_wr,
};
use actionvar_core::oracles::HamiltonianSpec;
use actionvar_core::{EnergyPoint, OscillatorParams, SchemeTag};

fn at_eps(eps: f64) -> (OscillatorParams, EnergyPoint) {
    let p = OscillatorParams::natural(1.0).unwrap();
    let c = p.light_speed_for_epsilon(1.0, eps).unwrap();
    let p = p.with_light_speed(c).unwrap();
    let ep = EnergyPoint::new(&p, 1.0).unwrap();
    (p, ep)
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let num: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

#[test]
fn weak_rel_action_against_quadrature() {
    let eps = [0.01, 0.02, 0.05, 0.1];
    let mut gaps = Vec::new();
    for &e in &eps {
        let (p, ep) = at_eps(e);
        let formula = action_wr_pdx(&p, &ep).unwrap().j_value;
        let quad = action_quadrature(&HamiltonianSpec::weak_rel(p), 1.0).unwrap();
        let gap = ((formula - quad) / quad).abs();
        assert!(gap <= e * e, "eps {e}: {gap}");
        gaps.push(gap);
    }
    let s = slope(&eps, &gaps);
    assert!((s - 2.0).abs() <= 0.1, "slope {s}");
}

#[test]
fn coordinate_and_momentum_forms_agree_to_second_order() {
    for eps in [0.01, 0.05, 0.1, 0.2] {
        let (p, ep) = at_eps(eps);
        let a = action_wr_pdx(&p, &ep).unwrap().j_value;
        let b = action_wr_xdp(&p, &ep, 8).unwrap().j_value;
        assert!(((a - b) / a).abs() <= 2.0 * eps * eps, "eps {eps}");
        let first = action_wr_xdp_first_order(&p, &ep).unwrap().j_value;
        assert_eq!(first, a);
    }
}

#[test]
fn actions_increase_with_energy() {
    let p = OscillatorParams::natural(10.0).unwrap();
    let spec = HamiltonianSpec::weak_rel(p);
    let mut last = (0.0, 0.0, 0.0);
    for i in 1..40 {
        let e = 0.5 * i as f64;
        let ep = EnergyPoint::new(&p, e).unwrap();
        let now = (
            action_wr_pdx(&p, &ep).unwrap().j_value,
            action_wr_xdp(&p, &ep, 6).unwrap().j_value,
            action_quadrature(&spec, e).unwrap(),
        );
        assert!(now.0 > last.0 && now.1 > last.1 && now.2 > last.2, "E = {e}");
        last = now;
    }
}

#[test]
fn frequency_shift_from_quadrature_tends_to_three_eighths() {
    let mut devs = Vec::new();
    let eps = [0.005, 0.01, 0.02];
    for &e in &eps {
        let (p, _) = at_eps(e);
        let spec = HamiltonianSpec::weak_rel(p);
        let w = frequency_from_action(|en| action_quadrature(&spec, en), 1.0).unwrap();
        let shift = (p.omega0() / w - 1.0) / e;
        devs.push((shift - 0.375).abs());
    }
    assert!(devs[0] < 0.01, "{devs:?}");
    assert!(devs[0] < devs[1] && devs[1] < devs[2]);
}

#[test]
fn frequency_formula_is_action_derivative() {
    let (p, ep) = at_eps(0.05);
    let numeric = frequency_from_action(
        |e| Ok(action_wr_pdx(&p, &EnergyPoint::new(&p, e)?)?.j_value),
        1.0,
    )
    .unwrap();
    // d/dE of (E/ω₀)(1 + 3E/16mc²) is (1 + 3ε/8)/ω₀
    assert!((numeric - frequency_wr(&p, &ep).unwrap()).abs() < 1e-8);
}

#[test]
fn full_rel_rows_stay_within_first_omitted_term() {
    for eps in [0.01, 0.05, 0.1] {
        let (p, ep) = at_eps(eps);
        let scale = ep.e_tilde() / p.omega0();
        let row1 = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelPdx, 3).unwrap().j_value / scale;
        let row2 = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelXdp, 4).unwrap().j_value / scale;
        let wr = action_wr_pdx(&p, &ep).unwrap().j_value / scale;
        // the weak-rel truncation is of order ε²
        assert!((row1 - row2).abs() <= 5e-4, "eps {eps}");
        assert!((row1 - wr).abs() <= eps * eps / 4.0 + 1e-12, "eps {eps}");
    }
}

#[test]
fn full_rel_series_against_quadrature() {
    for eps in [0.02, 0.05, 0.1, 0.3] {
        let (p, ep) = at_eps(eps);
        let scale = ep.e_tilde() / p.omega0();
        let row1 = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelPdx, 3).unwrap().j_value / scale;
        let quad = action_quadrature(&HamiltonianSpec::full_rel(p), 1.0).unwrap() / scale;
        let q = eps / (2.0 + eps);
        let t3 = (1.0 + eps / 2.0).sqrt() * 5.0 / 1024.0 * q.powi(3);
        let bound = t3 / (1.0 - q);
        assert!((row1 - quad).abs() <= bound, "eps {eps}: {} > {bound}", (row1 - quad).abs());
        assert!((row1 - quad).abs() >= 0.5 * t3, "eps {eps}: tail vanished");
    }
}

#[test]
fn full_rel_value_at_one_tenth() {
    let (p, ep) = at_eps(0.1);
    let quad = action_quadrature(&HamiltonianSpec::full_rel(p), 1.0).unwrap();
    assert!((quad - 1.0185588435).abs() < 1e-9);
    let r1 = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelPdx, 3).unwrap().j_value;
    let r2 = action_fullrel(&p, &ep, SchemeTag::ClassicalFullRelXdp, 4).unwrap().j_value;
    assert_eq!(format!("{r1:.6}"), "1.018559");
    assert_eq!(format!("{r2:.6}"), "1.018579");
}

#[test]
fn non_relativistic_limit() {
    let p = OscillatorParams::natural(1e6).unwrap();
    let spec = HamiltonianSpec::weak_rel(p);
    for e in [0.3, 1.0, 4.0] {
        let ep = EnergyPoint::new(&p, e).unwrap();
        assert!((action_wr_pdx(&p, &ep).unwrap().j_value - e).abs() < 1e-11 * e);
        assert!((action_wr_xdp(&p, &ep, 4).unwrap().j_value - e).abs() < 1e-11 * e);
        assert!((action_quadrature(&spec, e).unwrap() - e).abs() < 1e-10 * e);
    }
}
