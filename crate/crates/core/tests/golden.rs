use padic_codes::census::table1;

#[test]
fn table1_matches_golden_file() {
    let want = include_str!("golden/table1.txt");
    assert_eq!(table1().unwrap().to_string(), want);
}
