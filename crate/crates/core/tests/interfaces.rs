use lsmodel::models::{inductive_build, ModelDump};
use lsmodel::tensor::{Element, GradedAlphabet};
use lsmodel::verify::{emit, run_suite, suite, Format};
use lsmodel::Rational;

#[test]
fn rational_strings() {
    assert_eq!(Rational::frac(-691, 2730).to_string(), "-691/2730");
    assert_eq!(Rational::from_int(3).to_string(), "3/1");
    assert_eq!("4/-6".parse::<Rational>().unwrap(), Rational::frac(-2, 3));
    assert_eq!("\u{2212}1/2".parse::<Rational>().unwrap(), Rational::frac(-1, 2));
    assert!("1/0".parse::<Rational>().is_err());
}

#[test]
fn element_json_records() {
    let alpha = GradedAlphabet::xb();
    let x = Element::generator(&alpha, "x", 3).unwrap();
    let b = Element::generator(&alpha, "β", 3).unwrap();
    assert_eq!(x.bracket(&b).unwrap().to_json().to_string(), r#"[{"word":"xβ","coeff":"1/1"},{"word":"βx","coeff":"-1/1"}]"#);
}

#[test]
fn model_dump_shape() {
    let built = inductive_build(4, 6).unwrap();
    let json: serde_json::Value = serde_json::from_str(&ModelDump::inductive(&built, 6).to_json()).unwrap();
    let values: Vec<&str> = json["coefficients"].as_array().unwrap().iter().map(|c| c["value"].as_str().unwrap()).collect();
    assert_eq!(values, ["1/1", "-1/2", "1/6", "0/1", "-1/30"]);
    assert_eq!(json["certificates"].as_array().unwrap().len(), 3);
}

#[test]
fn sequences_suite_csv() {
    let report = run_suite(&suite("sequences").unwrap()).unwrap().without_timings();
    let csv = String::from_utf8(emit(&report, Format::Csv)).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "name,params,status,runtime_ms");
    assert_eq!(lines.len(), 11);
    assert!(lines.contains(&"euler,max_n=30,pass,0"));
    assert!(report.all_passed());
}
