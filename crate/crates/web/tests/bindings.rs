use toriclg_web::{fiber_report, k_table, model_report, parse_degrees};

#[test]
fn degree_parsing() {
    assert_eq!(parse_degrees("").unwrap(), Vec::<u32>::new());
    assert_eq!(parse_degrees("-").unwrap(), Vec::<u32>::new());
    assert_eq!(parse_degrees(" 2, 3 ").unwrap(), vec![2, 3]);
    assert_eq!(parse_degrees("2 2").unwrap(), vec![2, 2]);
    assert!(parse_degrees("2 x").is_err());
}

#[test]
fn model_with_period() {
    let v = model_report("3", 4, 0).unwrap();
    assert_eq!(v["terms"], 11);
    assert_eq!(v["period"]["matches"], true);
    assert_eq!(v["period"]["series"][4], "540");
    assert!(model_report("5", 4, 0).unwrap_err().contains("index must be positive"));
}

#[test]
fn fiber_for_drawing() {
    let v = fiber_report("3", 4).unwrap();
    assert_eq!(v["k"], 14);
    assert_eq!(v["certified"], true);
    assert_eq!(v["points"].as_array().unwrap().len(), 14);
    assert_eq!(v["edges"].as_array().unwrap().len(), 36);
    let big = fiber_report("", 4).unwrap();
    assert_eq!(big["k"], 125);
    assert!(big["edges"].as_array().unwrap().is_empty());
    assert!(fiber_report("", 5).is_err());
}

#[test]
fn table_rows() {
    let v = k_table(3, 2, 3).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[2]["k"], 9);
}
