//! Laws of the admissible cut rules, activation, and the closedness
//! lemma, checked up to the derivation congruence.

mod common;

use common::corpus_formulas;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewcat_core::{
    act_admissible, cat_equal, ccut, ccut_fma, ccut_stp, check_seq, count_derivations,
    generate, ic_restricted, scut, search, seq_equal, sound, tensor_ctx, CatDeriv, FocSequent,
    Formula, NormalityFlags, SeqDeriv, Sequent, Stoup,
};

const LN: NormalityFlags = NormalityFlags { ln: true, rn: false, an: false };
const RN: NormalityFlags = NormalityFlags { ln: false, rn: true, an: false };
const AN: NormalityFlags = NormalityFlags { ln: false, rn: false, an: true };

#[test]
fn cut_identity_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for flags in NormalityFlags::all_settings() {
        for _ in 0..40 {
            let f = generate::random_seq(&mut rng, flags, 8);
            let s = check_seq(&f, flags).unwrap();
            // scut f (ax) is congruent to f.
            let by_ax = scut(&f, &SeqDeriv::Ax(s.succedent.clone()), flags).unwrap();
            assert!(seq_equal(&by_ax, &f, flags).unwrap(), "scut(f, ax) under {flags}");
            // scut (ax) g is congruent to g whenever the stoup is full.
            if let Stoup::Just(a) = &s.stoup {
                let by_ax = scut(&SeqDeriv::Ax(a.clone()), &f, flags).unwrap();
                assert!(seq_equal(&by_ax, &f, flags).unwrap(), "scut(ax, g) under {flags}");
            }
        }
    }
}

#[test]
fn scut_of_inverse_pair_is_axiom() {
    // ρ then ρ⁻¹ cuts down to the axiom.
    let rho = SeqDeriv::otr(0, SeqDeriv::Ax(Formula::atom("A")), SeqDeriv::Ir);
    let rho_inv = SeqDeriv::otl(SeqDeriv::ic(0, SeqDeriv::Ax(Formula::atom("A"))));
    let cut = scut(&rho, &rho_inv, RN).unwrap();
    assert!(seq_equal(&cut, &SeqDeriv::Ax(Formula::atom("A")), RN).unwrap());
}

#[test]
fn ccut_against_unit_premise() {
    // - | |- I cut into a unit occurrence matches the IL/pass reshuffle.
    let g = SeqDeriv::pass(SeqDeriv::il(SeqDeriv::pass(SeqDeriv::Ax(Formula::atom("C")))));
    let sg = check_seq(&g, NormalityFlags::OFF).unwrap();
    assert_eq!(sg.context[0], Formula::Unit);
    let cut = ccut(&SeqDeriv::Ir, &g, 0, NormalityFlags::OFF).unwrap();
    let expect = SeqDeriv::pass(SeqDeriv::Ax(Formula::atom("C")));
    assert!(seq_equal(&cut, &expect, NormalityFlags::OFF).unwrap());
}

#[test]
fn ccut_frontier_bookkeeping() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    for flags in NormalityFlags::all_settings() {
        let mut done = 0;
        while done < 30 {
            let g = generate::random_seq(&mut rng, flags, 8);
            let sg = check_seq(&g, flags).unwrap();
            if sg.context.is_empty() {
                continue;
            }
            let pos = rng.gen_range(0..sg.context.len());
            let cutf = sg.context[pos].clone();
            // Build a first premise - | cutf |- cutf.
            let f = SeqDeriv::pass(SeqDeriv::Ax(cutf.clone()));
            let cut = ccut(&f, &g, pos, flags).unwrap();
            let sc = check_seq(&cut, flags).unwrap();
            let mut expect = sg.context[..pos].to_vec();
            expect.push(cutf);
            expect.extend(sg.context[pos + 1..].iter().cloned());
            assert_eq!(sc.context, expect);
            assert_eq!(sc.stoup, sg.stoup);
            assert_eq!(sc.succedent, sg.succedent);
            // Cutting with the passivated axiom is congruent to g itself.
            assert!(seq_equal(&cut, &g, flags).unwrap());
            done += 1;
        }
    }
}

use rand::Rng;

#[test]
fn ccut_fma_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for flags in [RN, NormalityFlags::new(true, true, false), NormalityFlags::ALL] {
        let mut done = 0;
        while done < 30 {
            let g = generate::random_seq(&mut rng, flags, 7);
            let sg = check_seq(&g, flags).unwrap();
            if sg.context.is_empty() {
                continue;
            }
            let pos = rng.gen_range(0..sg.context.len());
            let cutf = sg.context[pos].clone();
            done += 1;

            // Identity-shaped instance: the axiom premise leaves g alone.
            let by_ax = ccut_fma(&SeqDeriv::Ax(cutf.clone()), &g, pos, flags).unwrap();
            assert!(seq_equal(&by_ax, &g, flags).unwrap());

            // Where the first premise has a stoup, ccut_fma agrees with
            // pass-then-ccut.
            let f = generate::random_seq(&mut rng, flags, 5);
            let sf = check_seq(&f, flags).unwrap();
            if sf.succedent == cutf && matches!(sf.stoup, Stoup::Just(_)) {
                let via_fma = ccut_fma(&f, &g, pos, flags).unwrap();
                let via_pass = ccut(&SeqDeriv::pass(f.clone()), &g, pos, flags).unwrap();
                assert!(seq_equal(&via_fma, &via_pass, flags).unwrap());
            }
        }
    }
}

#[test]
fn ccut_stp_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(67);
    for flags in [AN, NormalityFlags::new(true, false, true), NormalityFlags::ALL] {
        let mut done = 0;
        while done < 30 {
            let g = generate::random_seq(&mut rng, flags, 7);
            let sg = check_seq(&g, flags).unwrap();
            if sg.context.is_empty() {
                continue;
            }
            let pos = rng.gen_range(0..sg.context.len());
            let cutf = sg.context[pos].clone();
            done += 1;

            // Stoup-full first premises: conclusion inserts the stoup.
            let by_ax = ccut_stp(&SeqDeriv::Ax(cutf.clone()), &g, pos, flags).unwrap();
            assert!(seq_equal(&by_ax, &g, flags).unwrap());

            // Empty stoup: a unit is inserted at the cut point.
            let f = SeqDeriv::pass(SeqDeriv::Ax(cutf.clone()));
            let cut = ccut_stp(&f, &g, pos, flags).unwrap();
            let sc = check_seq(&cut, flags).unwrap();
            assert_eq!(sc.context[pos], Formula::Unit);
            assert_eq!(sc.context[pos + 1], cutf);
            assert_eq!(sc.context.len(), sg.context.len() + 1);

            // Where both apply, ccut_stp on a stoup-full premise agrees
            // with ccut_fma.
            if flags.rn {
                let h = generate::random_seq(&mut rng, flags, 5);
                let sh = check_seq(&h, flags).unwrap();
                if sh.succedent == cutf && matches!(sh.stoup, Stoup::Just(_)) {
                    let via_stp = ccut_stp(&h, &g, pos, flags).unwrap();
                    let via_fma = ccut_fma(&h, &g, pos, flags).unwrap();
                    assert!(seq_equal(&via_stp, &via_fma, flags).unwrap());
                }
            }
        }
    }
}

#[test]
fn act_inverts_pass_up_to_congruence() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for flags in [LN, NormalityFlags::new(true, true, false), NormalityFlags::ALL] {
        let mut done = 0;
        while done < 40 {
            let f = generate::random_seq(&mut rng, flags, 8);
            let s = check_seq(&f, flags).unwrap();
            match &s.stoup {
                Stoup::Just(_) => {
                    // act (pass f) is congruent to f.
                    let round = act_admissible(&SeqDeriv::pass(f.clone()), flags).unwrap();
                    assert!(seq_equal(&round, &f, flags).unwrap());
                    done += 1;
                }
                Stoup::Empty if !s.context.is_empty() => {
                    // pass (act f) is congruent to f.
                    let round = SeqDeriv::pass(act_admissible(&f, flags).unwrap());
                    assert!(seq_equal(&round, &f, flags).unwrap());
                    done += 1;
                }
                _ => {}
            }
        }
    }
}

#[test]
fn ic_restricted_is_sound() {
    // sound(output) equals sound(input) precomposed with the structural
    // witness (id ⊗ λ) ∘ α under the remaining context.
    let mut rng = ChaCha8Rng::seed_from_u64(73);
    for flags in [AN, NormalityFlags::ALL] {
        let mut done = 0;
        while done < 25 {
            let f = generate::random_seq(&mut rng, flags, 6);
            let s = check_seq(&f, flags).unwrap();
            if s.context.is_empty() {
                continue;
            }
            let pos = rng.gen_range(0..s.context.len());
            done += 1;
            let out = ic_restricted(&f, pos, flags).unwrap();
            let so = check_seq(&out, flags).unwrap();
            assert_eq!(so.context[pos], Formula::Unit);

            let prefix = skewcat_core::interp_antecedent(&s.stoup, &s.context[..pos]);
            let b = s.context[pos].clone();
            let witness = CatDeriv::comp(
                CatDeriv::tensor_map(CatDeriv::Id(prefix.clone()), CatDeriv::Lam(b.clone())),
                CatDeriv::Alpha(prefix, Formula::Unit, b),
            );
            let lhs = sound(&out, flags).unwrap();
            let rhs = CatDeriv::comp(
                sound(&f, flags).unwrap(),
                tensor_ctx(&witness, &s.context[pos + 1..]),
            );
            assert!(cat_equal(&lhs, &rhs, flags).unwrap(), "witness mismatch under {flags}");
        }
    }
}

#[test]
fn closedness_lemma() {
    // Any derivable A | Γ |- J with J closed forces A and Γ closed; sweep
    // all small sequents with closed succedents under rn.
    let corpus = corpus_formulas(2, 2);
    let closed: Vec<Formula> = corpus.iter().filter(|f| f.is_closed()).cloned().collect();
    for flags in [RN, NormalityFlags::ALL] {
        for a in &corpus {
            for g in [None, Some(&corpus)] {
                let contexts: Vec<Vec<Formula>> = match g {
                    None => vec![vec![]],
                    Some(fs) => fs.iter().take(10).map(|f| vec![f.clone()]).collect(),
                };
                for ctx in contexts {
                    for j in &closed {
                        let n = count_derivations(flags, &Stoup::Just(a.clone()), &ctx, j);
                        if n > 0 {
                            assert!(
                                a.is_closed() && ctx.iter().all(Formula::is_closed),
                                "derivable {a} | {ctx:?} |- {j} with open antecedent"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn passive_purity_of_searched_derivations() {
    let corpus = corpus_formulas(2, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(79);
    for flags in NormalityFlags::all_settings() {
        if !flags.rn && !flags.an {
            continue;
        }
        for _ in 0..100 {
            let a = corpus.choose(&mut rng).unwrap();
            let c = corpus.choose(&mut rng).unwrap();
            let root = FocSequent::root(Stoup::Just(a.clone()), vec![], c.clone());
            for d in search(flags, &root) {
                assert!(
                    skewcat_core::passive_contexts_pure(&d, flags),
                    "impure passive context under {flags} at {a} |- {c}"
                );
            }
        }
    }
}

#[test]
fn enumerated_congruence_classes_biject_with_search() {
    // Brute-force the congruence classes of all unfocused derivations of
    // a few small sequents by closing under single rewrite steps, and
    // compare against focused search.
    use skewcat_core::{enumerate_derivations, focus, rewrite};
    use std::collections::{HashMap, HashSet};

    let sequents = [
        "X * (I * Y) | |- X * (I * Y)",
        "(X * I) * Y | |- (X * I) * Y",
        "I * X | |- X",
        "X | I |- X * I",
        "- | X , Y |- X * Y",
        "X * I |- X * I",
    ];
    for flags in NormalityFlags::all_settings() {
        for text in sequents {
            let seq: Sequent = skewcat_core::parse_sequent(text).unwrap();
            let all = enumerate_derivations(&seq, flags);
            // Union-find by single-step reachability (symmetric closure).
            let index: HashMap<&SeqDeriv, usize> =
                all.iter().enumerate().map(|(i, d)| (d, i)).collect();
            let mut parent: Vec<usize> = (0..all.len()).collect();
            fn find(parent: &mut Vec<usize>, i: usize) -> usize {
                if parent[i] != i {
                    let r = find(parent, parent[i]);
                    parent[i] = r;
                }
                parent[i]
            }
            for (i, d) in all.iter().enumerate() {
                for stepped in rewrite::all_single_steps(d, flags) {
                    let j = *index
                        .get(&stepped)
                        .expect("rewriting stays within the enumeration");
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
            let classes: HashSet<usize> =
                (0..all.len()).map(|i| find(&mut parent, i)).collect();
            let searched =
                search(flags, &FocSequent::root_of(&seq)).len();
            assert_eq!(
                classes.len(),
                searched,
                "class count vs search at {text} under {flags}"
            );
            // Each class focuses to a single distinct derivation.
            let mut by_class: HashMap<usize, HashSet<_>> = HashMap::new();
            for (i, d) in all.iter().enumerate() {
                let r = find(&mut parent, i);
                by_class.entry(r).or_default().insert(focus(d, flags).unwrap());
            }
            let mut all_focused = HashSet::new();
            for (_, focused) in by_class {
                assert_eq!(focused.len(), 1, "class not collapsed by focus");
                all_focused.extend(focused);
            }
            assert_eq!(all_focused.len(), classes.len());
        }
    }
}
