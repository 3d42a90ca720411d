use llg_core::io::{self, ConnectionFile, ConstantsFile, FrameFile, GeometryFile, JetFile};
use llg_core::library::{self, ExampleKind};
use llg_core::Error;

#[test]
fn every_example_loads_and_round_trips() {
    for e in library::catalog() {
        match e.kind {
            ExampleKind::Frame | ExampleKind::Connection => {
                let file = library::geometry(&e.name).unwrap();
                let back: GeometryFile = io::from_json(&io::to_json(&file)).unwrap();
                assert_eq!(back, file, "{}", e.name);
                let (c, f) = back.load().unwrap();
                assert_eq!(f.is_some(), e.kind == ExampleKind::Frame, "{}", e.name);
                // Connection tables survive their own file format.
                let cf = ConnectionFile::from_connection(&c);
                assert_eq!(cf.to_connection().unwrap().gamma(), c.gamma(), "{}", e.name);
                if let Some(f) = f {
                    assert_eq!(FrameFile::from_frame(&f).to_frame().unwrap().e(), f.e(), "{}", e.name);
                }
            }
            ExampleKind::Jet => {
                let (file, base) = library::jet(&e.name).unwrap();
                assert_eq!(Some(base), e.base.as_deref());
                let back: JetFile = io::from_json(&io::to_json(&file)).unwrap();
                let j = back.to_jet().unwrap();
                assert_eq!(JetFile::from_jet(&j).to_jet().unwrap(), j, "{}", e.name);
            }
        }
    }
}

#[test]
fn algebras_round_trip() {
    for name in ["abelian-3", "heisenberg-3", "sl2-3", "so3-3", "aff1-2", "engel-4"] {
        let g = library::algebra(name).unwrap();
        let file = ConstantsFile::from_constants(&g);
        let back: ConstantsFile = io::from_json(&io::to_json(&file)).unwrap();
        assert_eq!(back.to_constants().unwrap(), g, "{name}");
    }
}

#[test]
fn frame_file_format() {
    let text = r#"{"n": 2, "frame": [["1", "0"], ["-x2", "1"]]}"#;
    let f = io::from_json::<FrameFile>(text).unwrap().to_frame().unwrap();
    // e1 = ∂1 − x2 ∂2, e2 = ∂2: torsion T²₁₂ = 1.
    let t = f.connection().torsion();
    assert_eq!(t.field().sparse(), [(vec![2, 1, 2], "1".to_string()), (vec![2, 2, 1], "-1".to_string())]);
}

#[test]
fn malformed_inputs_are_parse_errors() {
    let bad_index = r#"{"n": 2, "gamma": [{"i": 0, "k": 1, "j": 1, "val": "1"}]}"#;
    let err = io::from_json::<ConnectionFile>(bad_index).unwrap().to_connection();
    assert!(matches!(err, Err(Error::Parse(_))));
    assert!(matches!(io::from_json::<FrameFile>(r#"{"n": 2"#), Err(Error::Parse(_))));
    assert!(matches!(io::from_json::<FrameFile>(r#"{"n": 2, "frame": [], "extra": 1}"#), Err(Error::Parse(_))));
    let ragged = FrameFile {
        n: 2,
        frame: vec![vec!["1".into()], vec!["0".into(), "1".into()]],
        inverse: None,
    };
    assert!(matches!(ragged.to_frame(), Err(Error::Parse(_))));
    let poly = r#"{"n": 2, "frame": [["1", "x3"], ["0", "1"]]}"#;
    assert!(io::from_json::<FrameFile>(poly).unwrap().to_frame().is_err());
    let order = r#"{"n": 1, "c": [{"i": 1, "j": 2, "k": 1, "val": "1"}]}"#;
    assert!(io::from_json::<ConstantsFile>(order).unwrap().to_constants().is_err());
}

#[test]
fn jet_with_leading_term_must_start_at_identity() {
    let lead = |first: &str| JetFile {
        n: 1,
        order: 1,
        coeffs: vec![vec![vec![first.into()]], vec![vec!["x1".into()]]],
    };
    assert!(lead("1").to_jet().is_ok());
    assert!(matches!(lead("2").to_jet(), Err(Error::NonIdentityLead)));
    let short = JetFile {
        n: 1,
        order: 3,
        coeffs: vec![vec![vec!["1".into()]]],
    };
    assert!(matches!(short.to_jet(), Err(Error::Parse(_))));
}

#[test]
fn singular_frame_is_refused() {
    let text = r#"{"n": 2, "frame": [["x1", "0"], ["0", "1"]]}"#;
    assert!(io::from_json::<FrameFile>(text).unwrap().to_frame().is_err());
}
