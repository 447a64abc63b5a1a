//! Properties of search, focus and emb over the small exhaustive corpus
//! and seeded random derivations.

mod common;

use common::{corpus_formulas, fully_skew_count};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewcat_core::{
    check_foc, count_derivations, emb, focus, generate, parse_sequent, search, search_with_mode,
    seq_equal, FocSequent, NormalityFlags, SearchMode, Sequent, Stoup,
};

fn count_str(flags: NormalityFlags, text: &str) -> usize {
    let s = parse_sequent(text).unwrap();
    count_derivations(flags, &s.stoup, &s.context, &s.succedent)
}

#[test]
fn paper_counts() {
    let off = NormalityFlags::OFF;
    assert_eq!(count_str(off, "X * (I * Y) |- X * (I * Y)"), 2);
    assert_eq!(count_str(off, "(X * I) * Y |- (X * I) * Y"), 2);
    assert_eq!(count_str(off, "X |- I * X"), 0);
    assert_eq!(count_str(off, "X * I |- X"), 0);
    assert_eq!(count_str(off, "X * (Y * Z) |- (X * Y) * Z"), 0);

    let ln = NormalityFlags::new(true, false, false);
    assert_eq!(count_str(ln, "X * (I * Y) |- X * (I * Y)"), 1);
    let rn = NormalityFlags::new(false, true, false);
    assert_eq!(count_str(rn, "(X * I) * Y |- (X * I) * Y"), 1);
}

#[test]
fn all_off_agrees_with_two_phase_presentation() {
    // The parameterized system at all flags off must produce the same
    // counts as the classic two-phase presentation.
    let corpus = corpus_formulas(2, 2);
    for a in &corpus {
        for c in &corpus {
            let seq = Sequent::new(Stoup::Just(a.clone()), vec![], c.clone());
            assert_eq!(
                count_derivations(NormalityFlags::OFF, &seq.stoup, &seq.context, &seq.succedent),
                fully_skew_count(&seq),
                "disagreement at {seq}"
            );
        }
    }
    // Also with non-empty contexts drawn from the corpus.
    for a in corpus.iter().take(12) {
        for g in corpus.iter().take(12) {
            for c in corpus.iter().take(12) {
                let seq = Sequent::new(Stoup::Just(a.clone()), vec![g.clone()], c.clone());
                assert_eq!(
                    count_derivations(
                        NormalityFlags::OFF,
                        &seq.stoup,
                        &seq.context,
                        &seq.succedent
                    ),
                    fully_skew_count(&seq),
                    "disagreement at {seq}"
                );
            }
        }
    }
}

#[test]
fn search_results_check_and_focus_emb_is_identity() {
    let corpus = corpus_formulas(2, 1);
    for flags in NormalityFlags::all_settings() {
        for a in &corpus {
            for c in &corpus {
                let root = FocSequent::root(Stoup::Just(a.clone()), vec![], c.clone());
                for d in search(flags, &root) {
                    let concl = check_foc(&d, flags).unwrap();
                    assert_eq!(concl, root, "conclusion mismatch under {flags}");
                    let back = focus(&emb(&d, flags), flags).unwrap();
                    assert_eq!(back, d, "focus ∘ emb ≠ id under {flags} at {a} |- {c}");
                }
            }
        }
    }
}

#[test]
fn emb_focus_congruent_on_random_derivations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for flags in NormalityFlags::all_settings() {
        for _ in 0..80 {
            let f = generate::random_seq(&mut rng, flags, 9);
            let e = emb(&focus(&f, flags).unwrap(), flags);
            assert!(
                seq_equal(&e, &f, flags).unwrap(),
                "emb(focus f) not congruent to f under {flags}: {f:?}"
            );
        }
    }
}

#[test]
fn search_is_deterministic_across_modes() {
    let corpus = corpus_formulas(3, 1);
    for flags in [NormalityFlags::OFF, NormalityFlags::ALL] {
        for a in corpus.iter().step_by(7) {
            for c in corpus.iter().step_by(5) {
                let root = FocSequent::root(Stoup::Just(a.clone()), vec![], c.clone());
                let seq = search_with_mode(flags, &root, SearchMode::Sequential);
                let par = search_with_mode(flags, &root, SearchMode::Parallel);
                assert_eq!(seq, par);
                assert_eq!(par, search_with_mode(flags, &root, SearchMode::Parallel));
            }
        }
    }
}

#[test]
fn derivability_of_structural_maps_everywhere() {
    for flags in NormalityFlags::all_settings() {
        assert!(count_str(flags, "A |- A * I") >= 1, "ρ missing under {flags}");
        assert!(count_str(flags, "(A * B) * C |- A * (B * C)") >= 1, "α missing under {flags}");
        assert!(count_str(flags, "I * A |- A") >= 1, "λ missing under {flags}");
    }
}

#[test]
fn thinness_under_ln_rn() {
    let corpus = corpus_formulas(2, 2);
    for an in [false, true] {
        let flags = NormalityFlags::new(true, true, an);
        for a in &corpus {
            for c in &corpus {
                let n = count_derivations(flags, &Stoup::Just(a.clone()), &[], c);
                assert!(n <= 1, "{n} derivations of {a} |- {c} under {flags}");
            }
        }
    }
}

#[test]
fn mac_lane_coherence_on_corpus() {
    let corpus = corpus_formulas(2, 2);
    for a in &corpus {
        for c in &corpus {
            let n = count_derivations(NormalityFlags::ALL, &Stoup::Just(a.clone()), &[], c);
            let expect = usize::from(a.frontier() == c.frontier());
            assert_eq!(n, expect, "{a} |- {c} at all flags on");
        }
    }
    // Frontier permutations never become derivable: no exchange.
    assert_eq!(count_str(NormalityFlags::ALL, "X * Y |- Y * X"), 0);
}

#[test]
fn derivable_needs_equal_frontiers() {
    let corpus = corpus_formulas(2, 1);
    for flags in NormalityFlags::all_settings() {
        for a in &corpus {
            for c in &corpus {
                let n = count_derivations(flags, &Stoup::Just(a.clone()), &[], c);
                if n > 0 {
                    assert_eq!(a.frontier(), c.frontier(), "{a} |- {c} under {flags}");
                }
            }
        }
    }
}

#[test]
fn focused_side_condition_errors() {
    use skewcat_core::{CheckError, FocDeriv};
    // act may not move a unit out of the anteroom under rn.
    let rn = NormalityFlags::new(false, true, false);
    let inner = search(rn, &FocSequent::root(Stoup::Just(skewcat_core::Formula::atom("X")), vec![], skewcat_core::Formula::atom("X")))
        .pop()
        .unwrap();
    let FocDeriv::Swlc(body) = inner else { panic!("root is sw_LC") };
    // Build - | I ⋮ X ⊢ X with act moving the unit out of the passive
    // head; under rn this violates the act side condition.
    let bad = FocDeriv::act(FocDeriv::swlc(FocDeriv::passf(FocDeriv::ilf(FocDeriv::passf(
        (*body).clone(),
    )))));
    match check_foc(&bad, rn) {
        Err(CheckError::NotClosed { .. }) => {}
        other => panic!("expected a side-condition violation, got {other:?}"),
    }
    // ⊗R_em is gated by ln.
    let em = FocDeriv::otremf(FocDeriv::Irf, FocDeriv::Axf("X".into()));
    assert!(matches!(
        check_foc(&em, NormalityFlags::OFF),
        Err(CheckError::FlagViolation { flag: "ln", .. })
    ));
    assert!(check_foc(&em, NormalityFlags::new(true, false, false)).is_ok());
}
