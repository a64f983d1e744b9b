mod common;

use common::*;
use nahm_core::error::NahmError;
use nahm_core::model::{gallery, parse_document, parse_model, render_model, ModelDocument, GALLERY};

#[test]
fn gallery_documents_round_trip() {
    for (name, _) in GALLERY {
        let h = gallery(name).unwrap().to_bundle().unwrap();
        let text = render_model(&h);
        assert_eq!(parse_model(&text).unwrap(), h, "{}", name);
        assert_eq!(render_model(&parse_model(&text).unwrap()), text);
    }
}

#[test]
fn random_bundles_round_trip() {
    for seed in 0..40 {
        let h = random_admissible(&mut rng(seed));
        assert_eq!(parse_model(&render_model(&h)).unwrap(), h, "seed {}", seed);
    }
}

fn nilpotent_with(field: &str, from: &str, to: &str) -> String {
    let doc = serde_json::to_value(gallery("nilpotent").unwrap()).unwrap();
    let text = serde_json::to_string(&doc).unwrap();
    assert!(text.contains(from), "{} not in {}", from, field);
    text.replacen(from, to, 1)
}

#[test]
fn malformed_scalar_reports_its_path() {
    let text = nilpotent_with("weights", "\"1/4\"", "\"1//2\"");
    match parse_model(&text) {
        Err(NahmError::Parse(e)) => {
            assert_eq!(e.path, "parabolic[0].weights[0]");
            assert!(e.to_string().contains("parabolic[0].weights[0]"), "{}", e);
        }
        other => panic!("expected a parse error, got {:?}", other),
    }
    let text = nilpotent_with("theta", "\"1/z\"", "\"1/(z\"");
    match parse_model(&text) {
        Err(NahmError::Parse(e)) => assert_eq!(e.path, "theta[0][0]"),
        other => panic!("expected a parse error, got {:?}", other),
    }
}

#[test]
fn unknown_fields_and_versions_are_rejected() {
    let text = nilpotent_with("rank", "\"rank\"", "\"rnak\"");
    assert!(matches!(parse_document(&text), Err(NahmError::Parse(_))));
    let mut doc: ModelDocument = gallery("nilpotent").unwrap();
    doc.schema_version = 7;
    assert!(matches!(doc.to_bundle(), Err(NahmError::Input(_))));
    assert!(gallery("no-such-example").is_err());
}
