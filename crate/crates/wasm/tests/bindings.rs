use nahm_wasm::{dimension, example_text, gallery_json, involution_json, transform_json};
use serde_json::Value;

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

#[test]
fn transform_by_name_and_by_text_agree() {
    let by_name = transform_json("nilpotent").unwrap();
    let by_text = transform_json(&example_text("nilpotent").unwrap()).unwrap();
    assert_eq!(by_name, by_text);
    let v = parse(&by_name);
    assert_eq!(v["rank"], 2);
    assert_eq!(v["matrix"][0][1], "-1/(ξ^2 + 1)");
    assert_eq!(v["parabolicDegree"], v["dualEulerCharacteristic"]);
}

#[test]
fn involution_holds_on_the_gallery() {
    for name in parse(&gallery_json()).as_array().unwrap() {
        let v = parse(&involution_json(name.as_str().unwrap()).unwrap());
        assert_eq!(v["holds"], true, "{}", name);
    }
}

#[test]
fn moduli_dimensions() {
    assert_eq!(dimension(2, "2", "1,1"), Ok(0));
    assert_eq!(dimension(2, "1, 1", "1,1"), Ok(2));
    assert!(dimension(2, "2", "1").is_err());
    assert!(dimension(2, "two", "1,1").is_err());
}

#[test]
fn errors_are_messages() {
    assert!(transform_json("no-such-example").unwrap_err().contains("no gallery example"));
    assert!(transform_json("{\"rank\": 1}").unwrap_err().contains("twistType"));
}
