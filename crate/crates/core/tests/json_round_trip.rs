use braidkit::invariants::{alexander_polynomial, jones_polynomial, LaurentPolynomial};
use braidkit::search::{scramble, MoveSet, SearchBounds};
use braidkit::sequence::MoveSequence;
use braidkit::templates::Template;
use braidkit::{left_normal_form, BraidWord, NormalForm};
use proptest::prelude::*;

fn arb_word() -> impl Strategy<Value = BraidWord> {
    (2usize..=5).prop_flat_map(|n| {
        prop::collection::vec((1..n as i32, any::<bool>()), 0..=12).prop_map(move |raw| {
            let signed: Vec<i32> = raw
                .into_iter()
                .map(|(i, p)| if p { i } else { -i })
                .collect();
            BraidWord::from_signed(n, &signed).unwrap()
        })
    })
}

fn round_trip<T>(value: &T) -> T
where
    T: serde::Serialize + serde::de::DeserializeOwned,
{
    serde_json::from_str(&serde_json::to_string(value).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn words_and_normal_forms(word in arb_word()) {
        prop_assert_eq!(round_trip(&word), word.clone());
        let nf = left_normal_form(&word);
        prop_assert_eq!(round_trip(&nf), nf.clone());
        prop_assert_eq!(NormalForm::parse(&nf.to_string(), word.n_strands()).unwrap(), nf);
        prop_assert_eq!(BraidWord::parse(&word.to_string(), word.n_strands()).unwrap(), word);
    }

    #[test]
    fn polynomials(word in arb_word()) {
        let jones = jones_polynomial(&word).unwrap();
        prop_assert_eq!(round_trip(&jones), jones.clone());
        prop_assert_eq!(LaurentPolynomial::parse(&jones.display_with("q"), "q").unwrap(), jones);
        let alexander = alexander_polynomial(&word).unwrap();
        prop_assert_eq!(round_trip(&alexander), alexander);
    }

    #[test]
    fn sequences(word in arb_word(), k in 1usize..5, seed in any::<u64>()) {
        let bounds = SearchBounds::new(6, 30, 1, MoveSet::Topological);
        let (end, seq) = scramble(&word, k, seed, &bounds).unwrap();
        let back = MoveSequence::from_json(&seq.to_json()).unwrap();
        prop_assert_eq!(back.replay(&word).unwrap(), end);
        prop_assert_eq!(back, seq);
    }
}

#[test]
fn templates() {
    for template in Template::builtins() {
        assert_eq!(Template::from_json(&template.to_json()).unwrap(), template);
    }
}
