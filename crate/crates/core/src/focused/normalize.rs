//! Normalisation into the focused calculus.
//!
//! `focus` replaces each unfocused rule by an admissible counterpart
//! operating on focused derivations, by structural recursion. Derivations
//! related by the sequent-calculus congruence are mapped to the same
//! focused derivation, so structural equality downstream of `focus`
//! decides that congruence.
//!
//! All helpers below construct derivations rooted in phase C with an
//! empty passive context at the top (the anteroom holds the whole
//! context), matching the root sequents used by search.

use std::sync::Arc;

use super::{foc_conclusion, FocDeriv, FocSequent};
use crate::error::CheckError;
use crate::formula::{Formula, IrreducibleStoup, NormalityFlags, Stoup};
use crate::seqcalc::{check_seq, conclusion, SeqDeriv};

/// Map an unfocused derivation of `S | Γ |- C` to its canonical focused
/// derivation of the root sequent `S | Γ ⋮ ⊢ C`.
pub fn focus(f: &SeqDeriv, flags: NormalityFlags) -> Result<FocDeriv, CheckError> {
    check_seq(f, flags)?;
    Ok(focus_w(f, flags))
}

pub(crate) fn focus_w(f: &SeqDeriv, flags: NormalityFlags) -> FocDeriv {
    match f {
        SeqDeriv::Ax(a) => ax_c(a, flags),
        SeqDeriv::Ir => ir_c(),
        SeqDeriv::Pass(f1) => pass_c(focus_w(f1, flags), flags),
        SeqDeriv::Il(f1) => il_c(focus_w(f1, flags)),
        SeqDeriv::Otl(f1) => {
            let extra = conclusion(f1).context.len() - 1;
            otl_c(focus_w(f1, flags), extra)
        }
        SeqDeriv::Otr { left, right, .. } => {
            otr_c(focus_w(left, flags), focus_w(right, flags), flags)
        }
        SeqDeriv::Otrem { left, right } => {
            otrem_c(focus_w(left, flags), focus_w(right, flags), flags)
        }
        SeqDeriv::Ic { pos, body } => {
            let right_of = conclusion(body).context.len() - pos;
            ic_c(focus_w(body, flags), right_of)
        }
        SeqDeriv::Jjc { pos, body } | SeqDeriv::Otlctx { pos, body } => {
            let right_of = conclusion(body).context.len() - pos - 2;
            pair_c(focus_w(body, flags), right_of)
        }
    }
}

/// Take ownership of a child node, cloning only if it is shared.
fn take(d: Arc<FocDeriv>) -> FocDeriv {
    Arc::unwrap_or_clone(d)
}

fn l_stoup(e: &FocDeriv) -> Stoup {
    match foc_conclusion(e) {
        FocSequent::L { stoup, .. } => stoup,
        _ => unreachable!("expected an L-phase derivation"),
    }
}

fn l_ctx_len(e: &FocDeriv) -> usize {
    match foc_conclusion(e) {
        FocSequent::L { context, .. } => context.len(),
        _ => unreachable!("expected an L-phase derivation"),
    }
}

fn r_parts(r: &FocDeriv) -> (IrreducibleStoup, usize) {
    match foc_conclusion(r) {
        FocSequent::R { stoup, context, .. } => (stoup, context.len()),
        _ => unreachable!("expected an R-phase derivation"),
    }
}

/// The focused identity derivation of `A | ⋮ ⊢ A`.
fn ax_c(a: &Formula, flags: NormalityFlags) -> FocDeriv {
    match a {
        Formula::Atom(x) => FocDeriv::swlc(FocDeriv::swrl(FocDeriv::Axf(x.clone()))),
        Formula::Unit => FocDeriv::swlc(FocDeriv::ilf(FocDeriv::swrl(FocDeriv::Irf))),
        Formula::Tensor(l, r) => {
            let left = ax_c(l, flags);
            let right = pass_c(ax_c(r, flags), flags);
            otl_c(otr_c(left, right, flags), 0)
        }
    }
}

fn ir_c() -> FocDeriv {
    FocDeriv::swlc(FocDeriv::swrl(FocDeriv::Irf))
}

/// Admissible `pass`: from `A | Ω ⋮ Γ ⊢ C` to `- | A, Ω ⋮ Γ ⊢ C`. The
/// anteroom prefix is unchanged; once the stoup formula itself comes up
/// for inspection it is deleted, decomposed or passivated according to
/// the flags.
fn pass_c(d: FocDeriv, flags: NormalityFlags) -> FocDeriv {
    match d {
        FocDeriv::Icf(x) => FocDeriv::icf(pass_c(take(x), flags)),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(pass_c(take(x), flags)),
        FocDeriv::Act(x) => FocDeriv::act(pass_c(take(x), flags)),
        FocDeriv::Swlc(e) => {
            let stoup = l_stoup(&e);
            let Stoup::Just(a) = stoup else { unreachable!("pass premise has a stoup") };
            match &a {
                Formula::Unit if flags.rn => {
                    let FocDeriv::Ilf(e1) = take(e) else { unreachable!("stoup I forces IL") };
                    FocDeriv::icf(FocDeriv::swlc(take(e1)))
                }
                Formula::Tensor(..) if (flags.rn && a.is_closed()) || flags.an => {
                    let FocDeriv::Otlf(c1) = take(e) else {
                        unreachable!("stoup tensor forces ⊗L")
                    };
                    FocDeriv::otlctxf(pass_c(take(c1), flags))
                }
                _ => FocDeriv::act(FocDeriv::swlc(FocDeriv::passf(take(e)))),
            }
        }
        _ => unreachable!("pass_c expects a C-phase derivation"),
    }
}

/// Admissible `IL`: from `- | Ω ⋮ Γ ⊢ C` to `I | Ω ⋮ Γ ⊢ C`.
fn il_c(d: FocDeriv) -> FocDeriv {
    match d {
        FocDeriv::Icf(x) => FocDeriv::icf(il_c(take(x))),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(il_c(take(x))),
        FocDeriv::Act(x) => FocDeriv::act(il_c(take(x))),
        FocDeriv::Swlc(e) => FocDeriv::swlc(FocDeriv::ilf(take(e))),
        _ => unreachable!("il_c expects a C-phase derivation"),
    }
}

/// Admissible `⊗L`: from `A | B, Ω ⋮ Γ ⊢ C` to `A * B | Ω ⋮ Γ ⊢ C`;
/// `extra` counts the anteroom formulas right of `B`.
fn otl_c(d: FocDeriv, extra: usize) -> FocDeriv {
    if extra == 0 {
        return FocDeriv::swlc(FocDeriv::otlf(d));
    }
    match d {
        FocDeriv::Icf(x) => FocDeriv::icf(otl_c(take(x), extra - 1)),
        FocDeriv::Act(x) => FocDeriv::act(otl_c(take(x), extra - 1)),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(otl_c(take(x), extra + 1)),
        _ => unreachable!("anteroom shorter than expected"),
    }
}

/// Admissible `I_C`: insert a unit into the anteroom with `right_of`
/// formulas to its right.
fn ic_c(d: FocDeriv, right_of: usize) -> FocDeriv {
    if right_of == 0 {
        return FocDeriv::icf(d);
    }
    match d {
        FocDeriv::Icf(x) => FocDeriv::icf(ic_c(take(x), right_of - 1)),
        FocDeriv::Act(x) => FocDeriv::act(ic_c(take(x), right_of - 1)),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(ic_c(take(x), right_of + 1)),
        _ => unreachable!("anteroom shorter than expected"),
    }
}

/// Admissible `⊗⊗_C` / `⊗L_ctx`: collapse the two anteroom formulas with
/// `right_of` formulas to their right into their tensor.
fn pair_c(d: FocDeriv, right_of: usize) -> FocDeriv {
    if right_of == 0 {
        return FocDeriv::otlctxf(d);
    }
    match d {
        FocDeriv::Icf(x) => FocDeriv::icf(pair_c(take(x), right_of - 1)),
        FocDeriv::Act(x) => FocDeriv::act(pair_c(take(x), right_of - 1)),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(pair_c(take(x), right_of + 1)),
        _ => unreachable!("anteroom shorter than expected"),
    }
}

/// Admissible `⊗R`: combine `S | Γ ⋮ ⊢ A` and `- | Δ ⋮ ⊢ B` into
/// `S | Γ, Δ ⋮ ⊢ A * B`. The second derivation's anteroom prefix is
/// replayed first (the anteroom is inspected right to left), then the
/// first derivation's, then the two L-phase bodies are merged.
fn otr_c(df: FocDeriv, dg: FocDeriv, flags: NormalityFlags) -> FocDeriv {
    match dg {
        FocDeriv::Icf(x) => FocDeriv::icf(otr_c(df, take(x), flags)),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(otr_c(df, take(x), flags)),
        FocDeriv::Act(x) => FocDeriv::act(otr_c(df, take(x), flags)),
        FocDeriv::Swlc(eg) => otr_c2(df, take(eg), flags),
        _ => unreachable!("otr_c expects a C-phase derivation"),
    }
}

fn otr_c2(df: FocDeriv, eg: FocDeriv, flags: NormalityFlags) -> FocDeriv {
    match df {
        FocDeriv::Icf(x) => FocDeriv::icf(otr_c2(take(x), eg, flags)),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(otr_c2(take(x), eg, flags)),
        FocDeriv::Act(x) => FocDeriv::act(otr_c2(take(x), eg, flags)),
        FocDeriv::Swlc(ef) => FocDeriv::swlc(otr_l(take(ef), eg, flags)),
        _ => unreachable!("otr_c2 expects a C-phase derivation"),
    }
}

/// L-phase core of the admissible `⊗R`.
fn otr_l(ef: FocDeriv, eg: FocDeriv, flags: NormalityFlags) -> FocDeriv {
    match ef {
        FocDeriv::Passf(e) => FocDeriv::passf(otr_l(take(e), eg, flags)),
        FocDeriv::Ilf(e) => FocDeriv::ilf(otr_l(take(e), eg, flags)),
        FocDeriv::Otlf(c) => FocDeriv::otlf(otr_c2(take(c), eg, flags)),
        FocDeriv::Swrl(r) => {
            let (stoup, split) = r_parts(&r);
            if flags.ln && stoup == IrreducibleStoup::Empty && l_ctx_len(&eg) > 0 {
                // Switching here would violate the ln side condition; the
                // second derivation must start with pass, which commutes
                // out and leaves an empty-antecedent first component.
                let FocDeriv::Passf(eg1) = eg else {
                    unreachable!("ln: empty stoup with non-empty context forces pass")
                };
                FocDeriv::passf(em_l(take(r), take(eg1), flags))
            } else {
                FocDeriv::swrl(FocDeriv::otrf(split, take(r), eg))
            }
        }
        _ => unreachable!("otr_l expects an L-phase derivation"),
    }
}

/// Admissible `⊗R_em` at phase L: prepend the closed component derived by
/// `r : - | ⊢ A` to the succedent of `e : S | Δ ⊢ B`.
fn em_l(r: FocDeriv, e: FocDeriv, flags: NormalityFlags) -> FocDeriv {
    match e {
        FocDeriv::Passf(e1) => FocDeriv::passf(em_l(r, take(e1), flags)),
        FocDeriv::Ilf(e1) => FocDeriv::ilf(em_l(r, take(e1), flags)),
        FocDeriv::Otlf(c1) => FocDeriv::otlf(em_c(r, take(c1), flags)),
        FocDeriv::Swrl(r1) => {
            let (stoup, _) = r_parts(&r1);
            match stoup {
                IrreducibleStoup::Atom(_) => FocDeriv::swrl(FocDeriv::otremf(r, take(r1))),
                IrreducibleStoup::Empty => {
                    FocDeriv::swrl(FocDeriv::otrf(0, r, FocDeriv::Swrl(r1)))
                }
            }
        }
        _ => unreachable!("em_l expects an L-phase derivation"),
    }
}

fn em_c(r: FocDeriv, c: FocDeriv, flags: NormalityFlags) -> FocDeriv {
    match c {
        FocDeriv::Icf(x) => FocDeriv::icf(em_c(r, take(x), flags)),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(em_c(r, take(x), flags)),
        FocDeriv::Act(x) => FocDeriv::act(em_c(r, take(x), flags)),
        FocDeriv::Swlc(e) => FocDeriv::swlc(em_l(r, take(e), flags)),
        _ => unreachable!("em_c expects a C-phase derivation"),
    }
}

/// Admissible `⊗R_em` at the C root: `- | ⋮ ⊢ A` and `A' | Δ ⋮ ⊢ B`
/// into `A' | Δ ⋮ ⊢ A * B`.
fn otrem_c(df: FocDeriv, dg: FocDeriv, flags: NormalityFlags) -> FocDeriv {
    let FocDeriv::Swlc(ef) = df else { unreachable!("empty antecedent: anteroom is empty") };
    let FocDeriv::Swrl(r) = take(ef) else { unreachable!("empty antecedent forces sw_RL") };
    otrem_c2(take(r), dg, flags)
}

fn otrem_c2(r: FocDeriv, dg: FocDeriv, flags: NormalityFlags) -> FocDeriv {
    match dg {
        FocDeriv::Icf(x) => FocDeriv::icf(otrem_c2(r, take(x), flags)),
        FocDeriv::Otlctxf(x) => FocDeriv::otlctxf(otrem_c2(r, take(x), flags)),
        FocDeriv::Act(x) => FocDeriv::act(otrem_c2(r, take(x), flags)),
        FocDeriv::Swlc(eg) => FocDeriv::swlc(em_l(r, take(eg), flags)),
        _ => unreachable!("otrem_c2 expects a C-phase derivation"),
    }
}
