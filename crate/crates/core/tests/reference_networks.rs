//! Measured behavior of the shipped presets. Values were cross-checked
//! against an independent density-matrix evolution and a separate
//! prototype simulator.

use num_bigint::BigUint;

use qabn::analysis::{
    detect_im_cycle, detect_state_cycle_orbit, dft_spectrum, exact_im_period, frozen_cores, im_series,
    reduced_qubit_state, trace_distance, DensityMatrix, Horizon, ReducedState, IM_TOL,
};
use qabn::network::{build_step_operator, initial_state, NetworkSpec, PureState, StepOperator, Trajectory};
use qabn::presets::preset;

fn load(name: &str) -> (NetworkSpec, StepOperator, PureState) {
    let s = preset(name).unwrap().network.unwrap();
    let w = build_step_operator(&s).unwrap();
    let i = initial_state(&s).unwrap();
    (s, w, i)
}

#[test]
fn five_qubit_presets_cycle_every_four_steps() {
    for name in ["fig5_caption", "fig5_text"] {
        let (_, w, init) = load(name);
        let r = detect_state_cycle_orbit(&w, &init).unwrap();
        assert_eq!(r.state_period, BigUint::from(4u32), "{name}");
        let series = im_series(&w, &init, 119).unwrap();
        assert_eq!(detect_im_cycle(&series, IM_TOL), Some(4), "{name}");
    }
}

#[test]
fn eight_qubit_preset_has_a_two_qubit_frozen_core() {
    let (_, w, init) = load("fig7");
    let r = detect_state_cycle_orbit(&w, &init).unwrap();
    assert_eq!(r.state_period, BigUint::from(6u32));
    assert_eq!(exact_im_period(&w, &init, &r.state_period, IM_TOL).unwrap(), Some(6));
    let cores = frozen_cores(&w, &init, Horizon::Auto, 1e-9).unwrap();
    assert_eq!(cores.frozen, [1, 5]);
    assert_eq!(cores.islands, vec![vec![0], vec![2, 3, 4], vec![6, 7]]);
}

#[test]
fn eight_qubit_preset_mixes_x1_partially_and_x2_fully() {
    let (_, w, init) = load("fig7");
    let states: Vec<_> = Trajectory::new(&w, &init, 6).unwrap().collect();
    let x1: Vec<ReducedState> = states.iter().map(|s| reduced_qubit_state(s, 0).unwrap()).collect();
    let quarter = ReducedState::from_real(0.75, 0.0, 0.25);
    assert!(trace_distance(&x1[2], &quarter) < 1e-12);
    assert!(trace_distance(&x1[3], &quarter) < 1e-12);
    assert!(x1.iter().all(|r| trace_distance(r, &ReducedState::maximally_mixed()) > 0.2));
    for q in [2, 3] {
        let r = reduced_qubit_state(&states[5], q).unwrap();
        assert!(trace_distance(&r, &ReducedState::maximally_mixed()) < 1e-12);
    }
}

#[test]
fn density_and_pure_paths_agree_on_five_qubits() {
    let (_, w, init) = load("fig6");
    let series = im_series(&w, &init, 30).unwrap();
    let mut d = DensityMatrix::from_pure(&init).unwrap();
    for &(_, v) in &series.points {
        assert!((d.multipartite_mutual_information().unwrap() - v).abs() < 1e-9);
        d = d.evolve(&w).unwrap();
    }
}

#[test]
fn long_cycle_presets() {
    let (_, w, init) = load("fig9_text");
    assert_eq!(detect_state_cycle_orbit(&w, &init).unwrap().state_period, BigUint::from(9300u32));
    let (_, w, init) = load("fig9_caption");
    assert_eq!(detect_state_cycle_orbit(&w, &init).unwrap().state_period, BigUint::from(59630u32));
}

#[test]
fn five_qubit_spectrum_sits_on_harmonics_of_the_period() {
    let (_, w, init) = load("fig5_caption");
    let period = 4.0;
    let spectrum = dft_spectrum(&im_series(&w, &init, 599).unwrap()).unwrap();
    let peak = spectrum.ranked()[0].magnitude;
    assert!(peak > 1e-6);
    for b in spectrum.bins.iter().filter(|b| b.magnitude > 1e-6 * peak) {
        let harmonic = b.frequency * period;
        assert!((harmonic - harmonic.round()).abs() < 1e-9, "bin at {}", b.frequency);
    }
}
