use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn lcdk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcdk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn leq_of_the_distributive_pair() {
    let out = lcdk(&["leq", "b*a + c*a", "(b+c)*a"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "true");
    let out = lcdk(&["leq", "(b+c)*a", "b*a + c*a"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "false");
}

#[test]
fn translate_with_a_reading_map() {
    let out = lcdk(&["translate", "[!beta1][a]p", "--env", &data("beta1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "[a*(b+c)]p");
}

#[test]
fn translate_output_reparses_to_the_same_formula() {
    let out = lcdk(&["translate", "[E1.f]([a+b]q | <a*c>~p)", "--env", &data("e1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let f: lcdk::Formula = text.trim().parse().unwrap();
    assert_eq!(f.to_string(), text.trim());
    assert!(f.is_static());
}

#[test]
fn unresolved_reference_is_an_error() {
    let out = lcdk(&["translate", "[!beta1][a]p"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("beta1"));
}

#[test]
fn check_verdicts_and_extension() {
    let model = data("office.json");
    let out = lcdk(&["check", &model, "w1", "[a]q"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "true");

    let out = lcdk(&["check", &model, "w3", "[a]q", "--extension"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "extension: {w1, w2}\nfalse\n");

    let out = lcdk(&["check", &model, "w1", "[!beta1]([a]q -> [b+c]q)", "--env", &data("beta1.json")]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn invalid_model_exits_2() {
    let out = lcdk(&["check", &data("broken.json"), "w1", "p"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("invalid model"), "{err}");
}

#[test]
fn parse_error_reports_a_column() {
    let out = lcdk(&["check", &data("office.json"), "w1", "p | & q"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 5"));
}

#[test]
fn update_then_identity_update_is_stable() {
    let out = lcdk(&["update", &data("office.json"), &data("beta1.json")]);
    assert_eq!(out.status.code(), Some(0));
    let updated = lcdk::files::model_from_json(&stdout(&out)).unwrap();
    let again = lcdk::update_model(&updated, &lcdk::ReadingMap::new("id")).unwrap();
    assert_eq!(again, updated);
    assert!(updated.validate().is_valid());
}

#[test]
fn product_reports_the_mode() {
    let out = lcdk(&["product", &data("office.json"), &data("e1.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("detected mode: S5"));
    let product = lcdk::files::model_from_json(&stdout(&out)).unwrap();
    assert_eq!(product.len(), 8);
    assert!(product.states().contains(&"w2@f".to_string()));
}

#[test]
fn axioms_report_zero_failures() {
    let out = lcdk(&["axioms", "--mode", "s5", "--models", "30", "--seed", "42"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).trim_end().ends_with("0 failures"));
    let out = lcdk(&["axioms", "--mode", "s4", "--models", "30"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(!stdout(&out).contains("  5 "));
}

#[test]
fn fl_and_oracle_commands() {
    let out = lcdk(&["fl", "<a+b>p"]);
    assert!(stdout(&out).starts_with("4 formulas"));
    let out = lcdk(&["fl", "<a+b>p", "--neg", "--atoms"]);
    assert!(stdout(&out).contains("8 formulas"));
    assert!(stdout(&out).contains("pseudo-atoms"));

    let out = lcdk(&["oracle-leq", "b*a+c*a", "(b+c)*a"]);
    assert_eq!(out.status.code(), Some(0));
    let out = lcdk(&["oracle-leq", "(b+c)*a", "b*a+c*a", "--states", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("countermodel"));
    let out = lcdk(&["oracle-leq", "a", "b", "--states", "9"]);
    assert_eq!(out.status.code(), Some(2));
}
