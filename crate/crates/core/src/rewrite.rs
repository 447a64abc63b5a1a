//! The derivation congruence as a directed rewrite system.
//!
//! Every generating equation is oriented left to right. The system is
//! strongly normalising; [`rewrite_nf`] computes the unique normal form
//! under a configurable step cap (exceeding the cap is reported as a bug,
//! never silently truncated).
//!
//! # Directed generators
//!
//! Base (η-conversions and commutative conversions), always enabled:
//!
//! | id | before | after |
//! |----|--------|-------|
//! | `eta-ax-i` | `ax_I` | `IL IR` |
//! | `eta-ax-tensor` | `ax_{A*B}` | `⊗L (⊗R (ax_A, pass ax_B))` |
//! | `otr-pass` | `⊗R (pass f, g)` | `pass (⊗R (f, g))` |
//! | `otr-il` | `⊗R (IL f, g)` | `IL (⊗R (f, g))` |
//! | `otr-otl` | `⊗R (⊗L f, g)` | `⊗L (⊗R (f, g))` |
//!
//! With `ln`:
//!
//! | id | before | after |
//! |----|--------|-------|
//! | `otr-pass-em` | `⊗R (f, pass g)`, `f : - \| |- A` | `pass (⊗R_em (f, g))` |
//! | `otrem-il` | `⊗R_em (f, IL g)` | `IL (⊗R (f, g))` |
//! | `otrem-otl` | `⊗R_em (f, ⊗L g)` | `⊗L (⊗R_em (f, g))` |
//!
//! With `rn`, the `I_C` family (`p`, `q` are context positions):
//!
//! | id | before | after |
//! |----|--------|-------|
//! | `pass-il-ic` | `pass (IL f)` | `I_C 0 f` |
//! | `ic-ic` | `I_C p (I_C q f)`, `q >= p` | `I_C (q+1) (I_C p f)` |
//! | `jjc-ic` | `⊗⊗_C p (I_C q f)`, `q >= p+2` | `I_C (q-1) (⊗⊗_C p f)` |
//! | `pass-ic` | `pass (I_C p f)` | `I_C (p+1) (pass f)` |
//! | `il-ic` | `IL (I_C p f)` | `I_C p (IL f)` |
//! | `otl-ic` | `⊗L (I_C p f)`, `p >= 1` | `I_C (p-1) (⊗L f)` |
//! | `otr-ic-left` | `⊗R (I_C p f, g)` | `I_C p (⊗R (f, g))` |
//! | `otr-ic-right` | `⊗R (f, I_C p g)` | `I_C (\|Γ\|+p) (⊗R (f, g))` |
//!
//! With `rn`, the `⊗⊗_C` family: the same eight shapes with the moved
//! rule replaced by `⊗⊗_C`, except that the first becomes
//! `pass-otl-jjc : pass (⊗L f) -> ⊗⊗_C 0 (pass f)` (for closed stoup and
//! head), which is disabled when `an` is on because `pass-otl-ctx`
//! subsumes it.
//!
//! With `an`, the `⊗L_ctx` family: the `⊗⊗_C` family with `⊗L_ctx` in
//! place of `⊗⊗_C` and no closedness conditions (`pass-otl-ctx`,
//! `ctx-ctx`, `pass-ctx`, `il-ctx`, `otl-ctx`, `otr-ctx-left`,
//! `otr-ctx-right`).
//!
//! With several flags enabled the context rules must also commute with
//! each other and with `⊗R_em` for the system to stay weakly confluent;
//! the mixed swaps follow the same scheme (`ic-ctx`, `ctx-ic`,
//! `jjc-ctx`, `ctx-jjc` under `rn ∧ an`; `otrem-ic`, `otrem-jjc` under
//! `ln ∧ rn`; `otrem-ctx` under `ln ∧ an`).

use crate::error::{CheckError, TermPath};
use crate::formula::NormalityFlags;
use crate::seqcalc::{check_seq, conclusion, SeqDeriv};

/// Default step cap for normalisation.
pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Rewrite strategies; both reach the same normal form.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    LeftmostInnermost,
    LeftmostOutermost,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("rewrite step cap of {cap} exceeded; the system should be strongly normalising, so this is a bug")]
pub struct StepCapExceeded {
    pub cap: usize,
}

/// All one-step rewrites of the root node, in priority order.
fn root_steps(f: &SeqDeriv, flags: NormalityFlags, out: &mut Vec<SeqDeriv>) {
    use SeqDeriv::*;
    match f {
        Ax(a) => match a {
            crate::formula::Formula::Unit => out.push(SeqDeriv::il(Ir)),
            crate::formula::Formula::Tensor(l, r) => out.push(SeqDeriv::otl(SeqDeriv::otr(
                0,
                Ax((**l).clone()),
                SeqDeriv::pass(Ax((**r).clone())),
            ))),
            _ => {}
        },
        Otr { split, left, right } => {
            match &**left {
                Pass(f1) => {
                    debug_assert!(*split >= 1);
                    out.push(SeqDeriv::pass(SeqDeriv::otr(
                        split - 1,
                        (**f1).clone(),
                        (**right).clone(),
                    )));
                }
                Il(f1) => out.push(SeqDeriv::il(SeqDeriv::otr(
                    *split,
                    (**f1).clone(),
                    (**right).clone(),
                ))),
                Otl(f1) => out.push(SeqDeriv::otl(SeqDeriv::otr(
                    split + 1,
                    (**f1).clone(),
                    (**right).clone(),
                ))),
                Ic { pos, body } if flags.rn => out.push(SeqDeriv::ic(
                    *pos,
                    SeqDeriv::otr(split - 1, (**body).clone(), (**right).clone()),
                )),
                Jjc { pos, body } if flags.rn => out.push(SeqDeriv::jjc(
                    *pos,
                    SeqDeriv::otr(split + 1, (**body).clone(), (**right).clone()),
                )),
                Otlctx { pos, body } if flags.an => out.push(SeqDeriv::otlctx(
                    *pos,
                    SeqDeriv::otr(split + 1, (**body).clone(), (**right).clone()),
                )),
                _ => {}
            }
            match &**right {
                Pass(g1) if flags.ln => {
                    let sl = conclusion(left);
                    if sl.stoup.is_empty() && sl.context.is_empty() {
                        out.push(SeqDeriv::pass(SeqDeriv::otrem(
                            (**left).clone(),
                            (**g1).clone(),
                        )));
                    }
                }
                Ic { pos, body } if flags.rn => out.push(SeqDeriv::ic(
                    split + pos,
                    SeqDeriv::otr(*split, (**left).clone(), (**body).clone()),
                )),
                Jjc { pos, body } if flags.rn => out.push(SeqDeriv::jjc(
                    split + pos,
                    SeqDeriv::otr(*split, (**left).clone(), (**body).clone()),
                )),
                Otlctx { pos, body } if flags.an => out.push(SeqDeriv::otlctx(
                    split + pos,
                    SeqDeriv::otr(*split, (**left).clone(), (**body).clone()),
                )),
                _ => {}
            }
        }
        Otrem { left, right } => match &**right {
            Il(g1) => out.push(SeqDeriv::il(SeqDeriv::otr(
                0,
                (**left).clone(),
                (**g1).clone(),
            ))),
            Otl(g1) => out.push(SeqDeriv::otl(SeqDeriv::otrem((**left).clone(), (**g1).clone()))),
            Ic { pos, body } if flags.rn => {
                out.push(SeqDeriv::ic(*pos, SeqDeriv::otrem((**left).clone(), (**body).clone())))
            }
            Jjc { pos, body } if flags.rn => {
                out.push(SeqDeriv::jjc(*pos, SeqDeriv::otrem((**left).clone(), (**body).clone())))
            }
            Otlctx { pos, body } if flags.an => out.push(SeqDeriv::otlctx(
                *pos,
                SeqDeriv::otrem((**left).clone(), (**body).clone()),
            )),
            _ => {}
        },
        Pass(f1) => match &**f1 {
            Il(f2) if flags.rn => out.push(SeqDeriv::ic(0, (**f2).clone())),
            Otl(f2) => {
                if flags.an {
                    out.push(SeqDeriv::otlctx(0, SeqDeriv::pass((**f2).clone())));
                } else if flags.rn {
                    let s = conclusion(f2);
                    let stoup_closed = match &s.stoup {
                        crate::formula::Stoup::Just(a) => a.is_closed(),
                        crate::formula::Stoup::Empty => false,
                    };
                    if stoup_closed && s.context[0].is_closed() {
                        out.push(SeqDeriv::jjc(0, SeqDeriv::pass((**f2).clone())));
                    }
                }
            }
            Ic { pos, body } if flags.rn => {
                out.push(SeqDeriv::ic(pos + 1, SeqDeriv::pass((**body).clone())))
            }
            Jjc { pos, body } if flags.rn => {
                out.push(SeqDeriv::jjc(pos + 1, SeqDeriv::pass((**body).clone())))
            }
            Otlctx { pos, body } if flags.an => {
                out.push(SeqDeriv::otlctx(pos + 1, SeqDeriv::pass((**body).clone())))
            }
            _ => {}
        },
        Il(f1) => match &**f1 {
            Ic { pos, body } if flags.rn => {
                out.push(SeqDeriv::ic(*pos, SeqDeriv::il((**body).clone())))
            }
            Jjc { pos, body } if flags.rn => {
                out.push(SeqDeriv::jjc(*pos, SeqDeriv::il((**body).clone())))
            }
            Otlctx { pos, body } if flags.an => {
                out.push(SeqDeriv::otlctx(*pos, SeqDeriv::il((**body).clone())))
            }
            _ => {}
        },
        Otl(f1) => match &**f1 {
            Ic { pos, body } if flags.rn && *pos >= 1 => {
                out.push(SeqDeriv::ic(pos - 1, SeqDeriv::otl((**body).clone())))
            }
            Jjc { pos, body } if flags.rn && *pos >= 1 => {
                out.push(SeqDeriv::jjc(pos - 1, SeqDeriv::otl((**body).clone())))
            }
            Otlctx { pos, body } if flags.an && *pos >= 1 => {
                out.push(SeqDeriv::otlctx(pos - 1, SeqDeriv::otl((**body).clone())))
            }
            _ => {}
        },
        Ic { pos: p, body } => match &**body {
            Ic { pos: q, body: f1 } if q >= p => {
                out.push(SeqDeriv::ic(q + 1, SeqDeriv::ic(*p, (**f1).clone())))
            }
            Jjc { pos: q, body: f1 } if q >= p => {
                out.push(SeqDeriv::jjc(q + 1, SeqDeriv::ic(*p, (**f1).clone())))
            }
            Otlctx { pos: q, body: f1 } if flags.an && q >= p => {
                out.push(SeqDeriv::otlctx(q + 1, SeqDeriv::ic(*p, (**f1).clone())))
            }
            _ => {}
        },
        Jjc { pos: p, body } => match &**body {
            Ic { pos: q, body: f1 } if *q >= p + 2 => {
                out.push(SeqDeriv::ic(q - 1, SeqDeriv::jjc(*p, (**f1).clone())))
            }
            Jjc { pos: q, body: f1 } if *q >= p + 2 => {
                out.push(SeqDeriv::jjc(q - 1, SeqDeriv::jjc(*p, (**f1).clone())))
            }
            Otlctx { pos: q, body: f1 } if flags.an && *q >= p + 2 => {
                out.push(SeqDeriv::otlctx(q - 1, SeqDeriv::jjc(*p, (**f1).clone())))
            }
            _ => {}
        },
        Otlctx { pos: p, body } => match &**body {
            Ic { pos: q, body: f1 } if flags.rn && *q >= p + 2 => {
                out.push(SeqDeriv::ic(q - 1, SeqDeriv::otlctx(*p, (**f1).clone())))
            }
            Jjc { pos: q, body: f1 } if flags.rn && *q >= p + 2 => {
                out.push(SeqDeriv::jjc(q - 1, SeqDeriv::otlctx(*p, (**f1).clone())))
            }
            Otlctx { pos: q, body: f1 } if *q >= p + 2 => {
                out.push(SeqDeriv::otlctx(q - 1, SeqDeriv::otlctx(*p, (**f1).clone())))
            }
            _ => {}
        },
        Ir => {}
    }
}

fn first_root_step(f: &SeqDeriv, flags: NormalityFlags) -> Option<SeqDeriv> {
    let mut out = Vec::new();
    root_steps(f, flags, &mut out);
    out.into_iter().next()
}

fn with_children(
    f: &SeqDeriv,
    mut visit: impl FnMut(&SeqDeriv) -> Option<SeqDeriv>,
) -> Option<SeqDeriv> {
    match f {
        SeqDeriv::Ax(_) | SeqDeriv::Ir => None,
        SeqDeriv::Pass(x) => visit(x).map(SeqDeriv::pass),
        SeqDeriv::Il(x) => visit(x).map(SeqDeriv::il),
        SeqDeriv::Otl(x) => visit(x).map(SeqDeriv::otl),
        SeqDeriv::Ic { pos, body } => visit(body).map(|b| SeqDeriv::ic(*pos, b)),
        SeqDeriv::Jjc { pos, body } => visit(body).map(|b| SeqDeriv::jjc(*pos, b)),
        SeqDeriv::Otlctx { pos, body } => visit(body).map(|b| SeqDeriv::otlctx(*pos, b)),
        SeqDeriv::Otr { split, left, right } => {
            if let Some(l) = visit(left) {
                return Some(SeqDeriv::otr(*split, l, (**right).clone()));
            }
            visit(right).map(|r| SeqDeriv::otr(*split, (**left).clone(), r))
        }
        SeqDeriv::Otrem { left, right } => {
            if let Some(l) = visit(left) {
                return Some(SeqDeriv::otrem(l, (**right).clone()));
            }
            visit(right).map(|r| SeqDeriv::otrem((**left).clone(), r))
        }
    }
}

/// One step of the given strategy, or `None` if `f` is in normal form.
pub fn step(f: &SeqDeriv, flags: NormalityFlags, strategy: Strategy) -> Option<SeqDeriv> {
    match strategy {
        Strategy::LeftmostOutermost => first_root_step(f, flags)
            .or_else(|| with_children(f, |c| step(c, flags, strategy))),
        Strategy::LeftmostInnermost => with_children(f, |c| step(c, flags, strategy))
            .or_else(|| first_root_step(f, flags)),
    }
}

/// Every single-step rewrite of `f`, at any position.
pub fn all_single_steps(f: &SeqDeriv, flags: NormalityFlags) -> Vec<SeqDeriv> {
    let mut out = Vec::new();
    root_steps(f, flags, &mut out);
    match f {
        SeqDeriv::Ax(_) | SeqDeriv::Ir => {}
        SeqDeriv::Pass(x) => {
            for s in all_single_steps(x, flags) {
                out.push(SeqDeriv::pass(s));
            }
        }
        SeqDeriv::Il(x) => {
            for s in all_single_steps(x, flags) {
                out.push(SeqDeriv::il(s));
            }
        }
        SeqDeriv::Otl(x) => {
            for s in all_single_steps(x, flags) {
                out.push(SeqDeriv::otl(s));
            }
        }
        SeqDeriv::Ic { pos, body } => {
            for s in all_single_steps(body, flags) {
                out.push(SeqDeriv::ic(*pos, s));
            }
        }
        SeqDeriv::Jjc { pos, body } => {
            for s in all_single_steps(body, flags) {
                out.push(SeqDeriv::jjc(*pos, s));
            }
        }
        SeqDeriv::Otlctx { pos, body } => {
            for s in all_single_steps(body, flags) {
                out.push(SeqDeriv::otlctx(*pos, s));
            }
        }
        SeqDeriv::Otr { split, left, right } => {
            for s in all_single_steps(left, flags) {
                out.push(SeqDeriv::otr(*split, s, (**right).clone()));
            }
            for s in all_single_steps(right, flags) {
                out.push(SeqDeriv::otr(*split, (**left).clone(), s));
            }
        }
        SeqDeriv::Otrem { left, right } => {
            for s in all_single_steps(left, flags) {
                out.push(SeqDeriv::otrem(s, (**right).clone()));
            }
            for s in all_single_steps(right, flags) {
                out.push(SeqDeriv::otrem((**left).clone(), s));
            }
        }
    }
    out
}

/// True iff no enabled directed equation applies anywhere in `f`.
pub fn is_normal_form(f: &SeqDeriv, flags: NormalityFlags) -> bool {
    step(f, flags, Strategy::LeftmostOutermost).is_none()
}

/// Normalise under the given strategy and step cap.
pub fn try_rewrite_nf(
    f: &SeqDeriv,
    flags: NormalityFlags,
    strategy: Strategy,
    cap: usize,
) -> Result<SeqDeriv, StepCapExceeded> {
    let mut cur = f.clone();
    for _ in 0..cap {
        match step(&cur, flags, strategy) {
            Some(next) => cur = next,
            None => return Ok(cur),
        }
    }
    if step(&cur, flags, strategy).is_none() {
        return Ok(cur);
    }
    Err(StepCapExceeded { cap })
}

/// Normalise a derivation: apply directed generators (leftmost-innermost)
/// until none applies. The result is congruent to `f` and redex-free.
///
/// Panics if the default step cap is exceeded, which would indicate a bug
/// in the rule table; use [`try_rewrite_nf`] to handle the cap gracefully.
pub fn rewrite_nf(f: &SeqDeriv, flags: NormalityFlags) -> Result<SeqDeriv, CheckError> {
    check_seq(f, flags)?;
    match try_rewrite_nf(f, flags, Strategy::LeftmostInnermost, DEFAULT_STEP_CAP) {
        Ok(nf) => Ok(nf),
        Err(e) => {
            let path = TermPath::default();
            Err(CheckError::mismatch(&path, e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;

    fn atom(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn commutative_conversion_single_step() {
        // ⊗R (pass f, g) -> pass (⊗R (f, g))
        let f = SeqDeriv::otr(
            1,
            SeqDeriv::pass(SeqDeriv::Ax(atom("A"))),
            SeqDeriv::pass(SeqDeriv::Ax(atom("B"))),
        );
        let stepped = step(&f, NormalityFlags::OFF, Strategy::LeftmostOutermost).unwrap();
        assert_eq!(
            stepped,
            SeqDeriv::pass(SeqDeriv::otr(
                0,
                SeqDeriv::Ax(atom("A")),
                SeqDeriv::pass(SeqDeriv::Ax(atom("B")))
            ))
        );
    }

    #[test]
    fn eta_unit_step() {
        let f = SeqDeriv::Ax(Formula::Unit);
        let stepped = step(&f, NormalityFlags::OFF, Strategy::LeftmostInnermost).unwrap();
        assert_eq!(stepped, SeqDeriv::il(SeqDeriv::Ir));
    }

    #[test]
    fn pass_il_becomes_ic_under_rn() {
        let rn = NormalityFlags::new(false, true, false);
        let f = SeqDeriv::pass(SeqDeriv::il(SeqDeriv::pass(SeqDeriv::Ax(atom("C")))));
        let stepped = step(&f, rn, Strategy::LeftmostOutermost).unwrap();
        assert_eq!(stepped, SeqDeriv::ic(0, SeqDeriv::pass(SeqDeriv::Ax(atom("C")))));
        // Without rn there is no redex at the root.
        assert!(step(&f, NormalityFlags::OFF, Strategy::LeftmostOutermost).is_none());
    }

    #[test]
    fn normal_form_is_redex_free_and_idempotent() {
        let rn = NormalityFlags::new(false, true, false);
        let f = SeqDeriv::otr(
            1,
            SeqDeriv::pass(SeqDeriv::il(SeqDeriv::Ir)),
            SeqDeriv::pass(SeqDeriv::Ax(atom("B"))),
        );
        let nf = rewrite_nf(&f, rn).unwrap();
        assert!(is_normal_form(&nf, rn));
        assert_eq!(rewrite_nf(&nf, rn).unwrap(), nf);
    }
}
