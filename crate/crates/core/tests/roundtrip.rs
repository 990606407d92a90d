//! Text round-trip properties: a canonically ordered document survives a
//! serialize → parse cycle byte-for-value, serialization is idempotent and
//! deterministic, and every generated document resolves.

use proptest::prelude::*;
use radai_core::{parse, resolve_links, serialize};
use radai_testgen::document;

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 1024,
        ..ProptestConfig::default()
    })]

    #[test]
    fn serialize_then_parse_is_identity(doc in document()) {
        let text = serialize(&doc);
        let reparsed = match parse(&text, "generated.radl") {
            Ok(doc) => doc,
            Err(errors) => {
                return Err(TestCaseError::fail(format!(
                    "serialized document failed to parse: {errors:?}\n--- text ---\n{text}"
                )));
            }
        };
        prop_assert_eq!(&reparsed, &doc, "--- text ---\n{}", text);
    }

    #[test]
    fn serialization_is_idempotent_and_deterministic(doc in document()) {
        let first = serialize(&doc);
        prop_assert_eq!(&first, &serialize(&doc));

        let reparsed = parse(&first, "generated.radl")
            .expect("first round already checked by the identity property");
        prop_assert_eq!(&serialize(&reparsed), &first);
    }

    #[test]
    fn generated_documents_resolve(doc in document()) {
        if let Err(errors) = resolve_links(doc) {
            return Err(TestCaseError::fail(format!(
                "generated document has dangling references: {errors:?}"
            )));
        }
    }
}
