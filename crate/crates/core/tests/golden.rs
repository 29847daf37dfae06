use qq_core::weyl::compose;
use qq_core::{Circuit, DenseState, GateKind, MeasurementKind, PauliRow, Tableau};

fn row(x: &[u32], z: &[u32], r: u32) -> PauliRow {
    PauliRow::new(x.to_vec(), z.to_vec(), r)
}

fn ghz() -> Circuit {
    let mut c = Circuit::new(3, 3).unwrap();
    c.push_gate(GateKind::H, &[0]).unwrap();
    c.push_gate(GateKind::Cnot, &[0, 1]).unwrap();
    c.push_gate(GateKind::Cnot, &[1, 2]).unwrap();
    c
}

#[test]
fn ghz_tableau_grid() {
    let t = ghz().clean_tableau().unwrap();
    let expected = Tableau::from_rows(
        3,
        vec![row(&[0, 0, 0], &[1, 0, 0], 0), row(&[0, 1, 1], &[0, 0, 0], 0), row(&[0, 0, 1], &[0, 0, 0], 0)],
        vec![row(&[2, 2, 2], &[0, 0, 0], 0), row(&[0, 0, 0], &[2, 1, 0], 0), row(&[0, 0, 0], &[0, 2, 1], 0)],
    )
    .unwrap();
    assert_eq!(t, expected);
}

#[test]
fn ghz_dense_amplitudes() {
    let psi = DenseState::run(&ghz()).unwrap();
    let a = 1.0 / 3f64.sqrt();
    for i in 0..27 {
        let expected = if i % 13 == 0 { a } else { 0.0 };
        assert!((psi.amplitudes()[i].norm() - expected).abs() < 1e-12);
    }
}

#[test]
fn ghz_forced_outcome_two() {
    let mut t = ghz().clean_tableau().unwrap();
    let m0 = t.measure_forced(0, 2).unwrap();
    assert!(m0.is_random());
    assert_eq!(t.destabilizer(0), &row(&[1, 1, 1], &[0, 0, 0], 0));
    assert_eq!(t.stabilizer(0), &row(&[0, 0, 0], &[1, 0, 0], 2));
    let rest: Vec<u32> = (1..3).map(|q| t.measure_forced(q, 0).unwrap().outcome).collect();
    assert_eq!(rest, vec![2, 2]);
}

#[test]
fn reduction_sequence() {
    let mut t = Tableau::from_rows(
        3,
        vec![row(&[0, 0, 0], &[0, 2, 0], 2), row(&[2, 0, 2], &[1, 0, 2], 0), row(&[0, 0, 1], &[0, 2, 1], 4)],
        vec![row(&[1, 1, 1], &[0, 0, 0], 0), row(&[0, 0, 0], &[2, 1, 0], 2), row(&[0, 0, 0], &[2, 0, 1], 0)],
    )
    .unwrap();
    let m2 = t.measure_forced(2, 1).unwrap();
    assert_eq!(m2.kind, MeasurementKind::Random { pivot: 0 });
    let r1 = t.reduce(&m2).unwrap();
    let mid = Tableau::from_rows(
        3,
        vec![row(&[0, 1], &[1, 0], 0), row(&[2, 2], &[0, 2], 4)],
        vec![row(&[0, 0], &[2, 1], 2), row(&[0, 0], &[2, 0], 2)],
    )
    .unwrap();
    assert_eq!(r1, mid);

    // destabilizer merge during the deterministic step: 0 + 4 + 4 ≡ 2 (mod 6)
    let merged = compose(r1.destabilizer(0), r1.destabilizer(1), 3).unwrap();
    assert_eq!(merged, row(&[2, 0], &[1, 2], 2));

    let mut r1m = r1.clone();
    let m1 = r1m.measure_forced(1, 2).unwrap();
    assert_eq!((m1.outcome, m1.kind), (0, MeasurementKind::Deterministic));
    let last = r1m.reduce(&m1).unwrap();
    assert_eq!(last, Tableau::from_rows(3, vec![row(&[2], &[1], 2)], vec![row(&[0], &[2], 2)]).unwrap());
    assert_eq!(last.clone().measure_forced(0, 0).unwrap().outcome, 1);
}
