//! Acceptance suite: one test per shipped guarantee, each printing a
//! pass line (run with `--nocapture` to see them). Counts are exact, the
//! property-based criteria run fixed seeded trial budgets, and the
//! exhaustive sweeps cover every formula pair with at most 3 atom
//! occurrences and at most 2 units.

mod common;

use common::corpus_formulas;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewcat_core::rewrite::{all_single_steps, is_normal_form, try_rewrite_nf};
use skewcat_core::{
    cat_equal, check_seq, cmplt, cmplt_at, count_derivations, emb, enumerate_derivations, focus,
    generate, parse_sequent, passive_contexts_pure, search, seq_equal, sound, FocSequent,
    Formula, NormalityFlags, Stoup, Strategy, DEFAULT_STEP_CAP,
};

fn count_str(flags: NormalityFlags, text: &str) -> usize {
    let s = parse_sequent(text).unwrap();
    count_derivations(flags, &s.stoup, &s.context, &s.succedent)
}

/// The exhaustive corpus shared by criteria 5, 6, 7 and 12.
fn corpus() -> Vec<Formula> {
    corpus_formulas(3, 2)
}

#[test]
fn criterion_01_count_regression() {
    let off = NormalityFlags::OFF;
    assert_eq!(count_str(off, "X * (I * Y) |- X * (I * Y)"), 2);
    assert_eq!(count_str(off, "(X * I) * Y |- (X * I) * Y"), 2);
    println!("criterion 1: PASS — fully skew counts are exactly 2 for both reference sequents");
}

#[test]
fn criterion_02_normality_collapse() {
    assert_eq!(count_str(NormalityFlags::new(true, false, false), "X * (I * Y) |- X * (I * Y)"), 1);
    assert_eq!(count_str(NormalityFlags::new(false, true, false), "(X * I) * Y |- (X * I) * Y"), 1);
    println!("criterion 2: PASS — ln and rn collapse the reference sequents to one derivation");
}

#[test]
fn criterion_03_underivability() {
    let off = NormalityFlags::OFF;
    assert_eq!(count_str(off, "X |- I * X"), 0);
    assert_eq!(count_str(off, "X * I |- X"), 0);
    assert_eq!(count_str(off, "X * (Y * Z) |- (X * Y) * Z"), 0);
    println!("criterion 3: PASS — inverse structural maps are underivable fully skew");
}

#[test]
fn criterion_04_structural_maps_derivable() {
    for flags in NormalityFlags::all_settings() {
        assert!(count_str(flags, "A |- A * I") >= 1, "ρ missing under {flags}");
        assert!(
            count_str(flags, "(A * B) * C |- A * (B * C)") >= 1,
            "α missing under {flags}"
        );
        assert!(count_str(flags, "I * A |- A") >= 1, "λ missing under {flags}");
    }
    println!("criterion 4: PASS — ρ, α, λ derivable at all 8 flag settings");
}

#[test]
fn criterion_05_mac_lane_coherence() {
    let corpus = corpus();
    let mut pairs = 0usize;
    for a in &corpus {
        let fa = a.frontier();
        for c in &corpus {
            let n = count_derivations(NormalityFlags::ALL, &Stoup::Just(a.clone()), &[], c);
            let expect = usize::from(fa == c.frontier());
            assert_eq!(n, expect, "{a} |- {c} at all flags on");
            pairs += 1;
        }
    }
    println!(
        "criterion 5: PASS — Mac Lane coherence on all {pairs} corpus pairs \
         ({} formulas)",
        corpus.len()
    );
}

#[test]
fn criterion_06_thinness() {
    let corpus = corpus();
    for an in [false, true] {
        let flags = NormalityFlags::new(true, true, an);
        for a in &corpus {
            for c in &corpus {
                let n = count_derivations(flags, &Stoup::Just(a.clone()), &[], c);
                assert!(n <= 1, "{n} derivations of {a} |- {c} under {flags}");
            }
        }
    }
    println!("criterion 6: PASS — at most one derivation per sequent under ln∧rn (an off and on)");
}

#[test]
fn criterion_07_focus_emb_bijection() {
    let corpus = corpus();
    let mut checked = 0usize;
    for flags in NormalityFlags::all_settings() {
        for a in &corpus {
            let fa = a.frontier();
            for c in &corpus {
                // Pairs with distinct frontiers have no derivations
                // (criterion 5 checks those counts exhaustively).
                if fa != c.frontier() {
                    continue;
                }
                let root = FocSequent::root(Stoup::Just(a.clone()), vec![], c.clone());
                for d in search(flags, &root) {
                    assert_eq!(
                        focus(&emb(&d, flags), flags).unwrap(),
                        d,
                        "focus ∘ emb ≠ id under {flags} at {a} |- {c}"
                    );
                    checked += 1;
                }
            }
        }
    }
    println!(
        "criterion 7: PASS — focus ∘ emb fixed all {checked} searched derivations \
         at all 8 flag settings"
    );
}

#[test]
fn criterion_08_sound_cmplt_roundtrips() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE01);
    for flags in NormalityFlags::all_settings() {
        for _ in 0..500 {
            let f = generate::random_cat(&mut rng, flags, 12);
            let rt = sound(&cmplt(&f, flags).unwrap(), flags).unwrap();
            assert!(
                cat_equal(&rt, &f, flags).unwrap(),
                "sound(cmplt f) ≠ f under {flags}: {f:?}"
            );
        }
        for _ in 0..500 {
            let g = generate::random_seq(&mut rng, flags, 9);
            let s = check_seq(&g, flags).unwrap();
            let back = cmplt_at(&sound(&g, flags).unwrap(), &s.stoup, &s.context, flags).unwrap();
            assert!(
                seq_equal(&back, &g, flags).unwrap(),
                "cmplt(sound g) ≠ g under {flags}: {g:?}"
            );
        }
    }
    println!(
        "criterion 8: PASS — 500 map and 500 derivation round trips per flag setting, \
         zero failures"
    );
}

#[test]
fn criterion_09_focus_respects_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE02);
    let mut applied = 0usize;
    while applied < 1000 {
        for flags in NormalityFlags::all_settings() {
            let f = generate::random_seq(&mut rng, flags, 9);
            let steps = all_single_steps(&f, flags);
            let Some(g) = steps.choose(&mut rng) else { continue };
            assert_eq!(
                focus(&f, flags).unwrap(),
                focus(g, flags).unwrap(),
                "focus changed by a directed generator under {flags}"
            );
            applied += 1;
        }
    }
    println!(
        "criterion 9: PASS — {applied} single-generator applications left focus unchanged"
    );
}

#[test]
fn criterion_10_rewrite_system() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE03);
    for flags in NormalityFlags::all_settings() {
        for _ in 0..500 {
            let f = generate::random_seq(&mut rng, flags, 8);
            let inner = try_rewrite_nf(&f, flags, Strategy::LeftmostInnermost, DEFAULT_STEP_CAP)
                .expect("step cap");
            let outer = try_rewrite_nf(&f, flags, Strategy::LeftmostOutermost, DEFAULT_STEP_CAP)
                .expect("step cap");
            assert_eq!(inner, outer, "strategy divergence under {flags}");
            assert!(is_normal_form(&inner, flags), "redex left under {flags}");
            assert_eq!(
                try_rewrite_nf(&inner, flags, Strategy::LeftmostInnermost, DEFAULT_STEP_CAP)
                    .expect("step cap"),
                inner,
                "not idempotent under {flags}"
            );
        }
    }
    println!(
        "criterion 10: PASS — 500 normalisations per flag setting terminated, redex-free, \
         idempotent, strategy-independent"
    );
}

#[test]
fn criterion_11_closedness_lemma() {
    // Search-level sweep: any derivable A | Γ |- J with J closed forces a
    // closed antecedent.
    let antecedents = corpus_formulas(2, 2);
    let closed: Vec<Formula> = corpus_formulas(0, 2).into_iter().collect();
    let mut contexts: Vec<Vec<Formula>> = vec![vec![]];
    contexts.extend(antecedents.iter().take(14).map(|f| vec![f.clone()]));
    for flags in [NormalityFlags::new(false, true, false), NormalityFlags::ALL] {
        for a in &antecedents {
            for ctx in &contexts {
                for j in &closed {
                    if count_derivations(flags, &Stoup::Just(a.clone()), ctx, j) > 0 {
                        assert!(
                            a.is_closed() && ctx.iter().all(Formula::is_closed),
                            "derivable {a} | {ctx:?} |- {j} with an open antecedent under {flags}"
                        );
                    }
                }
            }
        }
    }
    // Derivation-level sweep on enumerated unfocused derivations.
    let rn = NormalityFlags::new(false, true, false);
    let mut derivs = 0usize;
    for a in &antecedents {
        for j in &closed {
            let seq = skewcat_core::Sequent::new(Stoup::Just(a.clone()), vec![], j.clone());
            for d in enumerate_derivations(&seq, rn) {
                let s = check_seq(&d, rn).unwrap();
                let Stoup::Just(stoup) = &s.stoup else { unreachable!() };
                assert!(stoup.is_closed() && s.context.iter().all(Formula::is_closed));
                derivs += 1;
            }
        }
    }
    println!(
        "criterion 11: PASS — closed succedents force closed antecedents \
         ({derivs} enumerated derivations audited)"
    );
}

#[test]
fn criterion_12_passive_context_purity() {
    let corpus = corpus();
    let mut audited = 0usize;
    for flags in NormalityFlags::all_settings() {
        if !flags.rn && !flags.an {
            continue;
        }
        for a in &corpus {
            let fa = a.frontier();
            for c in &corpus {
                if fa != c.frontier() {
                    continue;
                }
                let root = FocSequent::root(Stoup::Just(a.clone()), vec![], c.clone());
                for d in search(flags, &root) {
                    assert!(
                        passive_contexts_pure(&d, flags),
                        "impure passive context under {flags} at {a} |- {c}"
                    );
                    audited += 1;
                }
            }
        }
    }
    println!(
        "criterion 12: PASS — passive contexts pure in all {audited} searched derivations \
         under rn/an settings"
    );
}
