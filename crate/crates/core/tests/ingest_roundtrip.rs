mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cogease::ingest::{parse_corpus, validate_annotations, write_corpus};
use cogease::model::UnitPair;

use common::{annotated_unit, Layers};

fn pairs_from_seed(seed: u64, n: usize) -> Vec<UnitPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let layers = Layers::random(&mut rng);
            let mut pair = UnitPair::new(
                format!("u{i}"),
                annotated_unit(&mut rng, layers),
                annotated_unit(&mut rng, layers),
            );
            if i % 2 == 0 {
                pair.references.push(annotated_unit(&mut rng, layers));
            }
            if i % 3 == 0 {
                pair.source = Some(annotated_unit(&mut rng, layers));
            }
            if i % 4 != 0 {
                pair.human_score = Some((i % 9) as f64 / 8.0);
            }
            pair
        })
        .collect()
}

proptest! {
    #[test]
    fn generated_units_are_valid(seed in any::<u64>()) {
        for pair in pairs_from_seed(seed, 5) {
            prop_assert!(validate_annotations(&pair.candidate).is_empty());
            for r in &pair.references {
                prop_assert!(validate_annotations(r).is_empty());
            }
        }
    }

    #[test]
    fn write_then_parse_is_identity(seed in any::<u64>(), n in 0usize..6) {
        let pairs = pairs_from_seed(seed, n);
        let mut buf = Vec::new();
        write_corpus(&pairs, &mut buf).unwrap();
        let parsed = parse_corpus(buf.as_slice()).unwrap();
        prop_assert!(parsed.diagnostics.is_empty(), "{:?}", parsed.diagnostics);
        prop_assert_eq!(parsed.rejected, 0);
        prop_assert_eq!(parsed.pairs, pairs);
    }
}

#[test]
fn diagnostics_carry_line_numbers_and_keep_good_records() {
    let text = "\n{\"id\":\"a\",\"candidate\":{\"text\":\"x y\"},\"references\":[{\"text\":\"x\"}]}\n{oops}\n";
    let parsed = parse_corpus(text.as_bytes()).unwrap();
    assert_eq!(parsed.pairs.len(), 1);
    assert_eq!(parsed.rejected, 1);
    assert_eq!(parsed.diagnostics[0].line, Some(3));
}
