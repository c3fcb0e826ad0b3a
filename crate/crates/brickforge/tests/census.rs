use brickforge::census::{build_table, diff_tables, verify_table, BrickStatus, CensusTable};

#[test]
fn first_levels() {
    let t = build_table(1);
    assert_eq!(t.levels.iter().map(Vec::len).collect::<Vec<_>>(), vec![11, 9]);
    let rep = verify_table(&t);
    assert!(rep.ok(), "{rep}");
    let bricks: Vec<&str> =
        t.levels[0].iter().filter(|r| r.brick == BrickStatus::Brick).map(|r| r.id.as_str()).collect();
    assert_eq!(bricks.len(), 8, "{bricks:?}");
    for id in ["S3", "L31", "P3"] {
        assert!(!bricks.contains(&id));
    }
}

#[test]
fn records_survive_a_round_trip() {
    let t = build_table(1);
    let back = CensusTable::parse(&t.to_records()).unwrap();
    assert!(diff_tables(&t, &back).is_empty());
    assert_eq!(back.to_records(), t.to_records());
}

#[test]
fn building_is_deterministic() {
    assert_eq!(build_table(1).to_records(), build_table(1).to_records());
}
