mod common;

use hypgroup::presentation::{OracleVerdict, Presentation, Strategy, TrivialityOracle};
use hypgroup::word::{reduced_words_of_length, Alphabet};

#[test]
fn exponent_oracle_matches_abelianisation_up_to_length_8() {
    let p = Presentation::from_strs("ab", &["abAB"]).unwrap();
    let o = TrivialityOracle::new(p.clone(), Strategy::ExponentSum { moduli: vec![0, 0] }).unwrap();
    let mut trivial = 0;
    for len in 0..=8 {
        for w in reduced_words_of_length(2, len) {
            let expect = common::exponent_sums(&p.render(&w), "ab") == [0, 0];
            let got = o.is_trivial(&w).unwrap();
            assert!(got.is_decisive());
            assert_eq!(got == OracleVerdict::Trivial, expect, "{}", p.render(&w));
            trivial += usize::from(expect);
        }
    }
    assert!(trivial > 100);
}

#[test]
fn rewrite_oracle_is_sound_and_finds_short_relations() {
    let p = Presentation::from_strs("ab", &["abAB"]).unwrap();
    let exact =
        TrivialityOracle::new(p.clone(), Strategy::ExponentSum { moduli: vec![0, 0] }).unwrap();
    let rewrite = TrivialityOracle::new(
        p.clone(),
        Strategy::BoundedRewrite {
            length_cap: 8,
            step_cap: 2_000,
        },
    )
    .unwrap();
    for len in 0..=6 {
        for w in reduced_words_of_length(2, len) {
            let v = rewrite.is_trivial(&w).unwrap();
            assert_ne!(v, OracleVerdict::Nontrivial, "{}", p.render(&w));
            let truth = exact.is_trivial(&w).unwrap();
            if v == OracleVerdict::Trivial {
                assert_eq!(truth, OracleVerdict::Trivial, "{}", p.render(&w));
            }
            if truth == OracleVerdict::Trivial && len <= 4 {
                assert_eq!(v, OracleVerdict::Trivial, "{}", p.render(&w));
            }
        }
    }
}

#[test]
fn free_oracle_matches_string_reduction() {
    let p = Presentation::free(2).unwrap();
    let o = TrivialityOracle::new(p.clone(), Strategy::FreeReduction).unwrap();
    let a = Alphabet::standard(2).unwrap();
    for s in common::all_strings("ab", 7) {
        let w = a.parse(&s).unwrap();
        let expect = common::reduce(&s).is_empty();
        assert_eq!(
            o.is_trivial(&w).unwrap() == OracleVerdict::Trivial,
            expect,
            "{s}"
        );
    }
}

#[test]
fn cyclic_oracle_matches_modular_arithmetic() {
    let p = Presentation::from_strs("a", &["aaa"]).unwrap();
    let o = TrivialityOracle::auto(p.clone()).unwrap();
    let a = Alphabet::standard(1).unwrap();
    for s in common::all_strings("a", 10) {
        let e = common::exponent_sums(&s, "a")[0];
        let got = o.is_trivial(&a.parse(&s).unwrap()).unwrap();
        assert_eq!(got == OracleVerdict::Trivial, e.rem_euclid(3) == 0, "{s}");
    }
}

#[test]
fn equality_matches_exponent_vectors() {
    let p = Presentation::from_strs("ab", &["abAB"]).unwrap();
    let o = TrivialityOracle::auto(p.clone()).unwrap();
    let words: Vec<_> = (0..=3)
        .flat_map(|n| reduced_words_of_length(2, n))
        .collect();
    for u in &words {
        for v in &words {
            let same = u.exponent_vector(2) == v.exponent_vector(2);
            assert_eq!(
                o.elements_equal(u, v).unwrap() == OracleVerdict::Trivial,
                same
            );
        }
    }
}
