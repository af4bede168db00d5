use freefermion::compiler::compile_blocked;
use freefermion::io::{self, IntegralsFile, MatrixFile};
use freefermion::partition::ElectronicIntegrals;
use freefermion::random;
use freefermion::shadows::{collect, draw, Group, NoiseModel, ShadowConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cfg(k_max: usize) -> ShadowConfig {
    ShadowConfig {
        group: Group::B,
        noise: NoiseModel::none(),
        k_max,
        seed: 21,
    }
}

#[test]
fn matrices_round_trip_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q.json");
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for n in 1..=6 {
        let q = random::orthogonal(2 * n, &mut rng);
        io::write_matrix(&path, "orthogonal", &q).unwrap();
        let (kind, back) = io::read_matrix(&path).unwrap();
        assert_eq!(kind.as_deref(), Some("orthogonal"));
        assert!(q
            .iter()
            .zip(back.iter())
            .all(|(a, b)| a.to_bits() == b.to_bits()));
    }
}

#[test]
fn nested_and_malformed_matrices() {
    let nested: MatrixFile =
        serde_json::from_str(r#"{"n_modes": 1, "data": [[0, 1], [-1, 0]]}"#).unwrap();
    let m = nested.to_matrix().unwrap();
    assert_eq!((m[(0, 1)], m[(1, 0)]), (1.0, -1.0));
    assert!(nested.kind.is_none());
    let short: MatrixFile =
        serde_json::from_str(r#"{"n_modes": 2, "data": [1, 0, 0, 1]}"#).unwrap();
    assert!(short.to_matrix().is_err());
    let ragged: MatrixFile =
        serde_json::from_str(r#"{"n_modes": 1, "data": [[1, 0], [0]]}"#).unwrap();
    assert!(ragged.to_matrix().is_err());
    let dir = tempfile::tempdir().unwrap();
    assert!(io::read_matrix(&dir.path().join("missing.json")).is_err());
}

#[test]
fn integrals_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let ints = ElectronicIntegrals::random(3, &mut rng).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ints.json");
    io::write_json(&path, &IntegralsFile::from_integrals(&ints)).unwrap();
    let back: IntegralsFile = io::read_json(&path).unwrap();
    assert_eq!(back.to_integrals().unwrap(), ints);
}

#[test]
fn programs_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let p = compile_blocked(&random::orthogonal(10, &mut rng)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prog.json");
    io::write_program(&path, &p).unwrap();
    assert_eq!(io::read_program(&path).unwrap(), p);
    std::fs::write(&path, r#"[{"kind": "xxrot", "q": [0, 1], "theta": 0.5}]"#).unwrap();
    assert_eq!(io::read_program(&path).unwrap().n_qubits(), 2);
    for bad in [
        r#"[{"kind": "xxrot", "q": [0, 2], "theta": 0.5}]"#,
        r#"[{"kind": "zrot", "q": 0}]"#,
    ] {
        std::fs::write(&path, bad).unwrap();
        assert!(io::read_program(&path).is_err(), "{bad}");
    }
}

#[test]
fn estimates_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let g = random::pure_covariance(3, false, &mut rng).unwrap();
    let est = collect(&g, &cfg(3), 0..500).unwrap().estimates().unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("est.json");
    io::write_estimates(&path, &est).unwrap();
    let back = io::read_estimates(&path, 3).unwrap();
    assert_eq!(back.count, 500);
    assert_eq!(back.values.len(), est.values.len());
    for (k, v) in &est.values {
        assert_eq!(back.values[k].to_bits(), v.to_bits());
    }
    assert!(io::read_estimates(&path, 1).is_err());
}

#[test]
fn samples_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let g = random::pure_covariance(4, true, &mut rng).unwrap();
    let samples: Vec<_> = (0..50)
        .map(|i| (i, draw(&g, &cfg(1), i).unwrap()))
        .collect();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("samples.csv");
    io::write_samples(&path, samples.iter().map(|(i, s)| (*i, s))).unwrap();
    assert_eq!(io::read_samples(&path).unwrap(), samples);
    let header = std::fs::read_to_string(&path).unwrap();
    assert!(header.starts_with("seed_id,perm,signs,bitstring"));
}
