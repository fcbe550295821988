use macsym::coeffring::RationalFunction;
use macsym::geometry::{
    c_from_log, c_from_trace, c_one_column, four_puncture_spec, mixed_hodge_rhs, orbit_dim, total_dim,
    twisted_complete, twisted_poincare, CometSpec, GeometryError, PunctureSpec, TwistSpec,
};
use macsym::partitions::Partition;
use macsym::symfunc::SymFunc;

type Sf = SymFunc<RationalFunction>;

fn rf(s: &str) -> RationalFunction {
    RationalFunction::parse(s).unwrap()
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

#[test]
fn comet_spec_json_round_trip() {
    let text = r#"{"genus": 0, "n": 2, "punctures": [
        {"multiplicities": [1, 1], "jordan": [[1], [1]]},
        {"multiplicities": [2], "jordan": [[2]]},
        {"multiplicities": [1, 1], "jordan": [[1], [1]]},
        {"multiplicities": [1, 1], "jordan": [[1], [1]]}]}"#;
    let spec: CometSpec = serde_json::from_str(text).unwrap();
    spec.validate().unwrap();
    assert_eq!(spec.punctures[1], PunctureSpec::unipotent(part("[2]")));
    let again: CometSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
    assert_eq!(again, spec);
    assert!(serde_json::from_str::<CometSpec>(r#"{"genus":0,"n":2,"punctures":[{"multiplicities":[1,2],"jordan":[[1],[2]]}]}"#).is_err());
}

#[test]
fn twist_spec_json_and_cycle_sign() {
    let twist: TwistSpec =
        serde_json::from_str(r#"[{"puncture": 2, "classes": [{"block_size": 1, "cycle_type": [3]}]}]"#).unwrap();
    let spec = four_puncture_spec(&part("[2,1]"), &part("[3]")).unwrap();
    let (test, r) = twisted_complete(&spec, &twist).unwrap();
    assert_eq!(r, 2);
    let want = Sf::tensor_all(&[
        Sf::h(&part("[2,1]")),
        Sf::h(&part("[3]")),
        Sf::p(&part("[3]")),
        Sf::h(&part("[2,1]")),
    ]);
    assert_eq!(test, want);
}

#[test]
fn dimension_examples() {
    let n = 5;
    assert_eq!(orbit_dim(&PunctureSpec::regular_semisimple(n)), (n * n - n) as i64);
    assert_eq!(orbit_dim(&PunctureSpec::unipotent(Partition::column(n))), 0);
    // 4·(−2) + 2 + dims 2, 2, 2, 2 with Jordan types (2), (2) for μ = ν = (1,1)
    assert_eq!(total_dim(&four_puncture_spec(&part("[1,1]"), &part("[1,1]")).unwrap()).unwrap(), 2);
    let three_points = CometSpec::new(
        0,
        2,
        vec![PunctureSpec::regular_semisimple(2), PunctureSpec::regular_semisimple(2), PunctureSpec::regular_semisimple(2)],
    )
    .unwrap();
    assert!(matches!(total_dim(&three_points), Ok(0)));
    let genus_one = CometSpec::new(1, 2, vec![PunctureSpec::unipotent(part("[2]"))]).unwrap();
    assert_eq!(total_dim(&genus_one).unwrap(), 4);
}

#[test]
fn twist_errors() {
    let spec = four_puncture_spec(&part("[1,1]"), &part("[1,1]")).unwrap();
    let wrong: TwistSpec =
        serde_json::from_str(r#"[{"puncture": 2, "classes": [{"block_size": 1, "cycle_type": [3]}]}]"#).unwrap();
    assert!(matches!(twisted_poincare(&spec, &wrong), Err(GeometryError::TwistMismatch(_))));
    let missing: TwistSpec = serde_json::from_str(r#"[{"puncture": 9, "classes": []}]"#).unwrap();
    assert!(matches!(twisted_poincare(&spec, &missing), Err(GeometryError::TwistMismatch(_))));
}

#[test]
fn printed_column_coefficient_by_kernel_routes() {
    let (mu, nu) = (part("[2,2]"), part("[2,1,1]"));
    let printed = rf("q^3 + q^2*t + q*t^2 + t^3 + q^2 + 2*q*t + t^2 + q + t");
    assert_eq!(c_from_log(&[mu.clone(), nu.clone()]).unwrap(), printed);
    assert_eq!(c_from_trace(&mu, &nu).unwrap(), rf("t^3 + t^2 + t"));
    assert_eq!(mixed_hodge_rhs(&mu, &nu).unwrap(), printed);
}

#[test]
fn degree_one_and_identity_cases() {
    let one = Partition::row(1);
    assert_eq!(c_from_log(&[one.clone()]).unwrap(), RationalFunction::one());
    assert_eq!(mixed_hodge_rhs(&one, &one).unwrap(), RationalFunction::one());
    for n in 2..=3 {
        let row = Partition::row(n);
        let cc = c_one_column(&row, &row).unwrap();
        let at0 = cc.subs(&[('q', RationalFunction::zero())]).unwrap();
        assert_eq!(c_from_trace(&row, &row).unwrap(), at0);
    }
    let three = [part("[2,1]"), part("[1,1,1]"), part("[2,1]")];
    let direct = macsym::hashtag::ccoef(&macsym::hashtag::CCoefficientQuery::new(three.to_vec(), part("[1,1,1]")).unwrap()).unwrap();
    assert_eq!(c_from_log(&three).unwrap(), direct);
}
