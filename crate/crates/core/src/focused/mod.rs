//! The flag-parameterized focused sequent calculus: phase-annotated
//! derivations, exhaustive proof search, the normalisation function
//! [`focus`] and the phase-erasing embedding [`emb`].
//!
//! Sequents are annotated with one of three phases:
//!
//! * phase `C`: `S | Ω ⋮ Γ ⊢ C` — the anteroom `Ω` is inspected from its
//!   right end; units are deleted (`rn`), tensors decomposed (`rn` when
//!   closed, or `an`), everything else is moved to the passive context;
//! * phase `L`: `S | Γ ⊢ C` — left rules fire on the stoup until it is
//!   irreducible;
//! * phase `R`: `T | Γ ⊢ C` — right rules decompose the succedent; `T` is
//!   empty or an atom.
//!
//! Structural equality of focused derivations decides the derivation
//! congruences of both other calculi.

mod normalize;
mod search;

pub use normalize::focus;
pub use search::{count_derivations, search, search_with_mode, SearchMode};

use crate::error::{CheckError, TermPath};
use crate::formula::{Context, Formula, IrreducibleStoup, NormalityFlags, Sequent, Stoup};
use crate::seqcalc::SeqDeriv;
use std::sync::Arc;

/// A phase-annotated sequent.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FocSequent {
    /// `S | Ω ⋮ Γ ⊢ C`
    C { stoup: Stoup, anteroom: Context, passive: Context, succedent: Formula },
    /// `S | Γ ⊢ C`
    L { stoup: Stoup, context: Context, succedent: Formula },
    /// `T | Γ ⊢ C`
    R { stoup: IrreducibleStoup, context: Context, succedent: Formula },
}

impl FocSequent {
    /// The root sequent used for enumeration: context loaded into the
    /// anteroom, passive context empty.
    pub fn root(stoup: Stoup, context: Context, succedent: Formula) -> FocSequent {
        FocSequent::C { stoup, anteroom: context, passive: Vec::new(), succedent }
    }

    pub fn root_of(seq: &Sequent) -> FocSequent {
        FocSequent::root(seq.stoup.clone(), seq.context.clone(), seq.succedent.clone())
    }

    /// The unfocused sequent obtained by erasing the phase (and turning
    /// `⋮` into a comma).
    pub fn erase(&self) -> Sequent {
        match self {
            FocSequent::C { stoup, anteroom, passive, succedent } => {
                let mut ctx = anteroom.clone();
                ctx.extend(passive.iter().cloned());
                Sequent::new(stoup.clone(), ctx, succedent.clone())
            }
            FocSequent::L { stoup, context, succedent } => {
                Sequent::new(stoup.clone(), context.clone(), succedent.clone())
            }
            FocSequent::R { stoup, context, succedent } => {
                Sequent::new(stoup.to_stoup(), context.clone(), succedent.clone())
            }
        }
    }
}

/// A focused derivation. Phase switches are explicit nodes; structural
/// equality is the equality decision procedure.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum FocDeriv {
    /// `ax : X | ⊢R X`
    Axf(Arc<str>),
    /// `IR : - | ⊢R I`
    Irf,
    /// `⊗R : T | Γ, Δ ⊢R A * B` from `T | Γ ⊢R A` and `- | Δ ⊢L B`;
    /// `split = |Γ|`.
    Otrf { split: usize, left: Arc<FocDeriv>, right: Arc<FocDeriv> },
    /// `⊗R_em : X | Δ ⊢R A * B` from `- | ⊢R A` and `X | Δ ⊢R B` (`ln`).
    Otremf { left: Arc<FocDeriv>, right: Arc<FocDeriv> },
    /// `pass : - | A, Γ ⊢L C` from `A | Γ ⊢L C`
    Passf(Arc<FocDeriv>),
    /// `IL : I | Γ ⊢L C` from `- | Γ ⊢L C`
    Ilf(Arc<FocDeriv>),
    /// `⊗L : A * B | Γ ⊢L C` from `A | B ⋮ Γ ⊢C C`
    Otlf(Arc<FocDeriv>),
    /// `sw_RL : T | Γ ⊢L C` from `T | Γ ⊢R C`, with
    /// `ln ∧ T = - → Γ = ()`.
    Swrl(Arc<FocDeriv>),
    /// `I_C : S | Ω, I ⋮ Γ ⊢C C` from `S | Ω ⋮ Γ ⊢C C` (`rn`)
    Icf(Arc<FocDeriv>),
    /// `⊗L_ctx : S | Ω, A * B ⋮ Γ ⊢C C` from `S | Ω, A, B ⋮ Γ ⊢C C`,
    /// with `(rn ∧ A, B closed) ∨ an`.
    Otlctxf(Arc<FocDeriv>),
    /// `act : S | Ω, D ⋮ Γ ⊢C C` from `S | Ω ⋮ D, Γ ⊢C C`, with
    /// `rn → D not closed` and `an → D not a tensor`.
    Act(Arc<FocDeriv>),
    /// `sw_LC : S | ⋮ Γ ⊢C C` from `S | Γ ⊢L C`
    Swlc(Arc<FocDeriv>),
}

impl FocDeriv {
    pub fn otrf(split: usize, left: FocDeriv, right: FocDeriv) -> FocDeriv {
        FocDeriv::Otrf { split, left: Arc::new(left), right: Arc::new(right) }
    }
    pub fn otremf(left: FocDeriv, right: FocDeriv) -> FocDeriv {
        FocDeriv::Otremf { left: Arc::new(left), right: Arc::new(right) }
    }
    pub fn passf(d: FocDeriv) -> FocDeriv {
        FocDeriv::Passf(Arc::new(d))
    }
    pub fn ilf(d: FocDeriv) -> FocDeriv {
        FocDeriv::Ilf(Arc::new(d))
    }
    pub fn otlf(d: FocDeriv) -> FocDeriv {
        FocDeriv::Otlf(Arc::new(d))
    }
    pub fn swrl(d: FocDeriv) -> FocDeriv {
        FocDeriv::Swrl(Arc::new(d))
    }
    pub fn icf(d: FocDeriv) -> FocDeriv {
        FocDeriv::Icf(Arc::new(d))
    }
    pub fn otlctxf(d: FocDeriv) -> FocDeriv {
        FocDeriv::Otlctxf(Arc::new(d))
    }
    pub fn act(d: FocDeriv) -> FocDeriv {
        FocDeriv::Act(Arc::new(d))
    }
    pub fn swlc(d: FocDeriv) -> FocDeriv {
        FocDeriv::Swlc(Arc::new(d))
    }

    pub fn size(&self) -> usize {
        match self {
            FocDeriv::Axf(_) | FocDeriv::Irf => 1,
            FocDeriv::Otrf { left, right, .. } | FocDeriv::Otremf { left, right } => {
                1 + left.size() + right.size()
            }
            FocDeriv::Passf(d)
            | FocDeriv::Ilf(d)
            | FocDeriv::Otlf(d)
            | FocDeriv::Swrl(d)
            | FocDeriv::Icf(d)
            | FocDeriv::Otlctxf(d)
            | FocDeriv::Act(d)
            | FocDeriv::Swlc(d) => 1 + d.size(),
        }
    }
}

/// Conclusion of a well-formed focused derivation (no validation).
pub(crate) fn foc_conclusion(d: &FocDeriv) -> FocSequent {
    match d {
        FocDeriv::Axf(x) => FocSequent::R {
            stoup: IrreducibleStoup::Atom(x.clone()),
            context: vec![],
            succedent: Formula::Atom(x.clone()),
        },
        FocDeriv::Irf => FocSequent::R {
            stoup: IrreducibleStoup::Empty,
            context: vec![],
            succedent: Formula::Unit,
        },
        FocDeriv::Otrf { left, right, .. } => {
            let FocSequent::R { stoup, context: mut ctx, succedent: a } = foc_conclusion(left)
            else {
                unreachable!("⊗R left premise is R-phase")
            };
            let FocSequent::L { context: delta, succedent: b, .. } = foc_conclusion(right) else {
                unreachable!("⊗R right premise is L-phase")
            };
            ctx.extend(delta);
            FocSequent::R { stoup, context: ctx, succedent: Formula::tensor(a, b) }
        }
        FocDeriv::Otremf { left, right } => {
            let FocSequent::R { succedent: a, .. } = foc_conclusion(left) else {
                unreachable!("⊗R_em left premise is R-phase")
            };
            let FocSequent::R { stoup, context, succedent: b } = foc_conclusion(right) else {
                unreachable!("⊗R_em right premise is R-phase")
            };
            FocSequent::R { stoup, context, succedent: Formula::tensor(a, b) }
        }
        FocDeriv::Passf(d) => {
            let FocSequent::L { stoup: Stoup::Just(a), context, succedent } = foc_conclusion(d)
            else {
                unreachable!("pass premise has a stoup formula")
            };
            let mut ctx = vec![a];
            ctx.extend(context);
            FocSequent::L { stoup: Stoup::Empty, context: ctx, succedent }
        }
        FocDeriv::Ilf(d) => {
            let FocSequent::L { context, succedent, .. } = foc_conclusion(d) else {
                unreachable!("IL premise is L-phase")
            };
            FocSequent::L { stoup: Stoup::Just(Formula::Unit), context, succedent }
        }
        FocDeriv::Otlf(d) => {
            let FocSequent::C { stoup: Stoup::Just(a), anteroom, passive, succedent } =
                foc_conclusion(d)
            else {
                unreachable!("⊗L premise is C-phase with a stoup formula")
            };
            let b = anteroom[0].clone();
            FocSequent::L {
                stoup: Stoup::Just(Formula::tensor(a, b)),
                context: passive,
                succedent,
            }
        }
        FocDeriv::Swrl(d) => {
            let FocSequent::R { stoup, context, succedent } = foc_conclusion(d) else {
                unreachable!("sw_RL premise is R-phase")
            };
            FocSequent::L { stoup: stoup.to_stoup(), context, succedent }
        }
        FocDeriv::Icf(d) => {
            let FocSequent::C { stoup, mut anteroom, passive, succedent } = foc_conclusion(d)
            else {
                unreachable!("I_C premise is C-phase")
            };
            anteroom.push(Formula::Unit);
            FocSequent::C { stoup, anteroom, passive, succedent }
        }
        FocDeriv::Otlctxf(d) => {
            let FocSequent::C { stoup, mut anteroom, passive, succedent } = foc_conclusion(d)
            else {
                unreachable!("⊗L_ctx premise is C-phase")
            };
            let b = anteroom.pop().expect("⊗L_ctx premise anteroom");
            let a = anteroom.pop().expect("⊗L_ctx premise anteroom");
            anteroom.push(Formula::tensor(a, b));
            FocSequent::C { stoup, anteroom, passive, succedent }
        }
        FocDeriv::Act(d) => {
            let FocSequent::C { stoup, mut anteroom, mut passive, succedent } = foc_conclusion(d)
            else {
                unreachable!("act premise is C-phase")
            };
            let moved = passive.remove(0);
            anteroom.push(moved);
            FocSequent::C { stoup, anteroom, passive, succedent }
        }
        FocDeriv::Swlc(d) => {
            let FocSequent::L { stoup, context, succedent } = foc_conclusion(d) else {
                unreachable!("sw_LC premise is L-phase")
            };
            FocSequent::C { stoup, anteroom: vec![], passive: context, succedent }
        }
    }
}

/// Compute and validate the conclusion of a focused derivation, checking
/// each rule's phase and side conditions under `flags`.
pub fn check_foc(d: &FocDeriv, flags: NormalityFlags) -> Result<FocSequent, CheckError> {
    let mut path = TermPath::default();
    check_foc_at(d, flags, &mut path)
}

fn check_foc_at(
    d: &FocDeriv,
    flags: NormalityFlags,
    path: &mut TermPath,
) -> Result<FocSequent, CheckError> {
    let sub = |d: &FocDeriv, tag, i, path: &mut TermPath, flags| -> Result<FocSequent, CheckError> {
        path.push(tag, i);
        let s = check_foc_at(d, flags, path)?;
        path.pop();
        Ok(s)
    };
    match d {
        FocDeriv::Axf(x) => Ok(FocSequent::R {
            stoup: IrreducibleStoup::Atom(x.clone()),
            context: vec![],
            succedent: Formula::Atom(x.clone()),
        }),
        FocDeriv::Irf => Ok(FocSequent::R {
            stoup: IrreducibleStoup::Empty,
            context: vec![],
            succedent: Formula::Unit,
        }),
        FocDeriv::Otrf { split, left, right } => {
            let l = sub(left, "otrf", 0, path, flags)?;
            let r = sub(right, "otrf", 1, path, flags)?;
            let FocSequent::R { stoup, context: mut ctx, succedent: a } = l else {
                return Err(CheckError::mismatch(path, "⊗R first premise must be R-phase"));
            };
            let FocSequent::L { stoup: rs, context: delta, succedent: b } = r else {
                return Err(CheckError::mismatch(path, "⊗R second premise must be L-phase"));
            };
            if !rs.is_empty() {
                return Err(CheckError::mismatch(
                    path,
                    "⊗R second premise must have an empty stoup",
                ));
            }
            if ctx.len() != *split {
                return Err(CheckError::bad_position(
                    path,
                    format!("⊗R split {split} but first premise context has {}", ctx.len()),
                ));
            }
            ctx.extend(delta);
            Ok(FocSequent::R { stoup, context: ctx, succedent: Formula::tensor(a, b) })
        }
        FocDeriv::Otremf { left, right } => {
            if !flags.ln {
                return Err(CheckError::flag(path, "⊗R_em", "ln"));
            }
            let l = sub(left, "otremf", 0, path, flags)?;
            let r = sub(right, "otremf", 1, path, flags)?;
            let FocSequent::R { stoup: IrreducibleStoup::Empty, context: lctx, succedent: a } = l
            else {
                return Err(CheckError::mismatch(
                    path,
                    "⊗R_em first premise must be R-phase with an empty stoup",
                ));
            };
            if !lctx.is_empty() {
                return Err(CheckError::mismatch(
                    path,
                    "⊗R_em first premise must have an empty context",
                ));
            }
            let FocSequent::R { stoup: stoup @ IrreducibleStoup::Atom(_), context, succedent: b } =
                r
            else {
                return Err(CheckError::mismatch(
                    path,
                    "⊗R_em second premise must be R-phase with an atomic stoup",
                ));
            };
            Ok(FocSequent::R { stoup, context, succedent: Formula::tensor(a, b) })
        }
        FocDeriv::Passf(d) => {
            let s = sub(d, "passf", 0, path, flags)?;
            let FocSequent::L { stoup: Stoup::Just(a), context, succedent } = s else {
                return Err(CheckError::mismatch(
                    path,
                    "pass premise must be L-phase with a stoup formula",
                ));
            };
            let mut ctx = vec![a];
            ctx.extend(context);
            Ok(FocSequent::L { stoup: Stoup::Empty, context: ctx, succedent })
        }
        FocDeriv::Ilf(d) => {
            let s = sub(d, "ilf", 0, path, flags)?;
            let FocSequent::L { stoup: Stoup::Empty, context, succedent } = s else {
                return Err(CheckError::mismatch(
                    path,
                    "IL premise must be L-phase with an empty stoup",
                ));
            };
            Ok(FocSequent::L { stoup: Stoup::Just(Formula::Unit), context, succedent })
        }
        FocDeriv::Otlf(d) => {
            let s = sub(d, "otlf", 0, path, flags)?;
            let FocSequent::C { stoup: Stoup::Just(a), anteroom, passive, succedent } = s else {
                return Err(CheckError::mismatch(
                    path,
                    "⊗L premise must be C-phase with a stoup formula",
                ));
            };
            if anteroom.len() != 1 {
                return Err(CheckError::mismatch(
                    path,
                    format!("⊗L premise anteroom must hold exactly one formula, has {}",
                        anteroom.len()),
                ));
            }
            Ok(FocSequent::L {
                stoup: Stoup::Just(Formula::tensor(a, anteroom[0].clone())),
                context: passive,
                succedent,
            })
        }
        FocDeriv::Swrl(d) => {
            let s = sub(d, "swrl", 0, path, flags)?;
            let FocSequent::R { stoup, context, succedent } = s else {
                return Err(CheckError::mismatch(path, "sw_RL premise must be R-phase"));
            };
            if flags.ln && stoup == IrreducibleStoup::Empty && !context.is_empty() {
                return Err(CheckError::flag(path, "sw_RL with empty stoup and non-empty context", "ln off"));
            }
            Ok(FocSequent::L { stoup: stoup.to_stoup(), context, succedent })
        }
        FocDeriv::Icf(d) => {
            if !flags.rn {
                return Err(CheckError::flag(path, "I_C", "rn"));
            }
            let s = sub(d, "icf", 0, path, flags)?;
            let FocSequent::C { stoup, mut anteroom, passive, succedent } = s else {
                return Err(CheckError::mismatch(path, "I_C premise must be C-phase"));
            };
            anteroom.push(Formula::Unit);
            Ok(FocSequent::C { stoup, anteroom, passive, succedent })
        }
        FocDeriv::Otlctxf(d) => {
            let s = sub(d, "otlctxf", 0, path, flags)?;
            let FocSequent::C { stoup, mut anteroom, passive, succedent } = s else {
                return Err(CheckError::mismatch(path, "⊗L_ctx premise must be C-phase"));
            };
            if anteroom.len() < 2 {
                return Err(CheckError::mismatch(
                    path,
                    "⊗L_ctx premise anteroom must end in the two tensor components",
                ));
            }
            let b = anteroom.pop().unwrap();
            let a = anteroom.pop().unwrap();
            let closed = a.is_closed() && b.is_closed();
            if !((flags.rn && closed) || flags.an) {
                if flags.rn {
                    return Err(CheckError::not_closed(
                        path,
                        format!("⊗L_ctx under rn needs closed components, got `{a}`, `{b}`"),
                    ));
                }
                return Err(CheckError::flag(path, "⊗L_ctx", "rn (closed) or an"));
            }
            anteroom.push(Formula::tensor(a, b));
            Ok(FocSequent::C { stoup, anteroom, passive, succedent })
        }
        FocDeriv::Act(d) => {
            let s = sub(d, "act", 0, path, flags)?;
            let FocSequent::C { stoup, mut anteroom, mut passive, succedent } = s else {
                return Err(CheckError::mismatch(path, "act premise must be C-phase"));
            };
            if passive.is_empty() {
                return Err(CheckError::mismatch(
                    path,
                    "act premise must have the moved formula at the passive head",
                ));
            }
            let moved = passive.remove(0);
            if flags.rn && moved.is_closed() {
                return Err(CheckError::not_closed(
                    path,
                    format!("act under rn cannot move the closed formula `{moved}`"),
                ));
            }
            if flags.an && matches!(moved, Formula::Tensor(..)) {
                return Err(CheckError::mismatch(
                    path,
                    format!("act under an cannot move the tensor `{moved}`"),
                ));
            }
            anteroom.push(moved);
            Ok(FocSequent::C { stoup, anteroom, passive, succedent })
        }
        FocDeriv::Swlc(d) => {
            let s = sub(d, "swlc", 0, path, flags)?;
            let FocSequent::L { stoup, context, succedent } = s else {
                return Err(CheckError::mismatch(path, "sw_LC premise must be L-phase"));
            };
            Ok(FocSequent::C { stoup, anteroom: vec![], passive: context, succedent })
        }
    }
}

/// Audit that every sequent in the derivation keeps its passive context
/// pure: free of closed formulae under `rn`, free of tensors under `an`.
/// (In phases L and R the whole context is passive.)
pub fn passive_contexts_pure(d: &FocDeriv, flags: NormalityFlags) -> bool {
    let passive_ok = |ctx: &[Formula]| {
        ctx.iter().all(|f| {
            (!flags.rn || !f.is_closed()) && (!flags.an || !matches!(f, Formula::Tensor(..)))
        })
    };
    let here = match foc_conclusion(d) {
        FocSequent::C { passive, .. } => passive_ok(&passive),
        FocSequent::L { context, .. } | FocSequent::R { context, .. } => passive_ok(&context),
    };
    if !here {
        return false;
    }
    match d {
        FocDeriv::Axf(_) | FocDeriv::Irf => true,
        FocDeriv::Otrf { left, right, .. } | FocDeriv::Otremf { left, right } => {
            passive_contexts_pure(left, flags) && passive_contexts_pure(right, flags)
        }
        FocDeriv::Passf(x)
        | FocDeriv::Ilf(x)
        | FocDeriv::Otlf(x)
        | FocDeriv::Swrl(x)
        | FocDeriv::Icf(x)
        | FocDeriv::Otlctxf(x)
        | FocDeriv::Act(x)
        | FocDeriv::Swlc(x) => passive_contexts_pure(x, flags),
    }
}

/// Erase phase annotations, turning a focused derivation into an
/// unfocused one. Phase switches and `act` vanish; `⊗L_ctx` erases to
/// `⊗⊗_C` unless `an` is on.
pub fn emb(d: &FocDeriv, flags: NormalityFlags) -> SeqDeriv {
    match d {
        FocDeriv::Axf(x) => SeqDeriv::Ax(Formula::Atom(x.clone())),
        FocDeriv::Irf => SeqDeriv::Ir,
        FocDeriv::Otrf { split, left, right } => {
            SeqDeriv::otr(*split, emb(left, flags), emb(right, flags))
        }
        FocDeriv::Otremf { left, right } => SeqDeriv::otrem(emb(left, flags), emb(right, flags)),
        FocDeriv::Passf(d) => SeqDeriv::pass(emb(d, flags)),
        FocDeriv::Ilf(d) => SeqDeriv::il(emb(d, flags)),
        FocDeriv::Otlf(d) => SeqDeriv::otl(emb(d, flags)),
        FocDeriv::Swrl(d) | FocDeriv::Act(d) | FocDeriv::Swlc(d) => emb(d, flags),
        FocDeriv::Icf(d) => {
            let FocSequent::C { anteroom, .. } = foc_conclusion(d) else {
                unreachable!("I_C premise is C-phase")
            };
            SeqDeriv::ic(anteroom.len(), emb(d, flags))
        }
        FocDeriv::Otlctxf(d) => {
            let FocSequent::C { anteroom, .. } = foc_conclusion(d) else {
                unreachable!("⊗L_ctx premise is C-phase")
            };
            let pos = anteroom.len() - 2;
            if flags.an {
                SeqDeriv::otlctx(pos, emb(d, flags))
            } else {
                SeqDeriv::jjc(pos, emb(d, flags))
            }
        }
    }
}
