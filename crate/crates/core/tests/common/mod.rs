#![allow(dead_code)]

//! Shared helpers for the integration suites: the exhaustive small-formula
//! corpus and an independent counting oracle for the fully skew focused
//! system.

use skewcat_core::{Formula, Sequent, Stoup};

pub const CORPUS_ATOMS: [&str; 3] = ["X", "Y", "Z"];

/// All formulae with at most `max_atoms` atom occurrences and at most
/// `max_units` units, every tree shape included. Atom occurrences are
/// named `X`, `Y`, `Z` in frontier order, so frontiers vary by length and
/// unit placement.
pub fn corpus_formulas(max_atoms: usize, max_units: usize) -> Vec<Formula> {
    let mut out = Vec::new();
    for atoms in 0..=max_atoms {
        for units in 0..=max_units {
            if atoms + units == 0 {
                continue;
            }
            for shape in shapes(atoms, units) {
                let mut next = 0;
                out.push(label(&shape, &mut next));
            }
        }
    }
    out
}

/// Tree shapes with exactly `atoms` atom leaves and `units` unit leaves;
/// atom leaves are placeholders until labelled.
fn shapes(atoms: usize, units: usize) -> Vec<Formula> {
    if atoms + units == 1 {
        return if atoms == 1 { vec![Formula::atom("_")] } else { vec![Formula::Unit] };
    }
    let mut out = Vec::new();
    for la in 0..=atoms {
        for lu in 0..=units {
            let (ra, ru) = (atoms - la, units - lu);
            if la + lu == 0 || ra + ru == 0 {
                continue;
            }
            for l in shapes(la, lu) {
                for r in shapes(ra, ru) {
                    out.push(Formula::tensor(l.clone(), r.clone()));
                }
            }
        }
    }
    out
}

fn label(shape: &Formula, next: &mut usize) -> Formula {
    match shape {
        Formula::Atom(_) => {
            let name = CORPUS_ATOMS[*next];
            *next += 1;
            Formula::atom(name)
        }
        Formula::Unit => Formula::Unit,
        Formula::Tensor(a, b) => {
            let l = label(a, next);
            let r = label(b, next);
            Formula::tensor(l, r)
        }
    }
}

/// Count derivations in the fully skew focused calculus presented without
/// an anteroom: two phases only, `⊗L` feeding phase L directly. Used as an
/// independent oracle for the parameterized system at all flags off.
pub fn fully_skew_count(seq: &Sequent) -> usize {
    skew_l(&seq.stoup, &seq.context, &seq.succedent)
}

fn skew_l(stoup: &Stoup, ctx: &[Formula], succ: &Formula) -> usize {
    match stoup {
        Stoup::Just(Formula::Unit) => skew_l(&Stoup::Empty, ctx, succ),
        Stoup::Just(Formula::Tensor(a, b)) => {
            let mut inner = vec![(**b).clone()];
            inner.extend(ctx.iter().cloned());
            skew_l(&Stoup::Just((**a).clone()), &inner, succ)
        }
        Stoup::Just(Formula::Atom(x)) => skew_r(Some(x.as_ref()), ctx, succ),
        Stoup::Empty => {
            let passed = if let Some((head, rest)) = ctx.split_first() {
                skew_l(&Stoup::Just(head.clone()), rest, succ)
            } else {
                0
            };
            passed + skew_r(None, ctx, succ)
        }
    }
}

fn skew_r(stoup: Option<&str>, ctx: &[Formula], succ: &Formula) -> usize {
    match succ {
        Formula::Atom(x) => usize::from(ctx.is_empty() && stoup == Some(x.as_ref())),
        Formula::Unit => usize::from(ctx.is_empty() && stoup.is_none()),
        Formula::Tensor(a, b) => (0..=ctx.len())
            .map(|k| skew_r(stoup, &ctx[..k], a) * skew_l(&Stoup::Empty, &ctx[k..], b))
            .sum(),
    }
}
