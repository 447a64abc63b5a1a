//! The sequent calculus: derivations of `S | Γ |- C` with flag-gated rules,
//! plus the admissible cut rules and inversion principles.
//!
//! Base rules (conclusion first): `pass`, `IL`, `⊗L`, `ax`, `IR`, `⊗R`.
//! Left rules act only on the stoup; `⊗R` sends the stoup to its first
//! premise and records the context split. The flags enable:
//!
//! * `ln`: `⊗R_em`, a second tensor right rule sending the stoup to the
//!   second premise with a completely empty first antecedent;
//! * `rn`: `I_C` (delete a unit anywhere in the context) and `⊗⊗_C`
//!   (decompose a closed tensor anywhere in the context);
//! * `an`: `⊗L_ctx` (decompose any tensor anywhere in the context).
//!
//! There are no primitive cut rules; `scut` and `ccut` are admissible,
//! defined by mutual structural recursion together with `ccut_fma` (under
//! `rn`) and `ccut_stp` (under `an`).

use crate::error::{CheckError, TermPath};
use crate::focused::focus;
use crate::formula::{Formula, NormalityFlags, Sequent, Stoup};

/// A sequent-calculus derivation. Constructors carry the position data
/// needed to reconstruct their conclusion from the premises.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SeqDeriv {
    /// `ax : A | |- A`
    Ax(Formula),
    /// `IR : - | |- I`
    Ir,
    /// `pass : - | A, Γ |- C` from `A | Γ |- C`
    Pass(Box<SeqDeriv>),
    /// `IL : I | Γ |- C` from `- | Γ |- C`
    Il(Box<SeqDeriv>),
    /// `⊗L : A * B | Γ |- C` from `A | B, Γ |- C`
    Otl(Box<SeqDeriv>),
    /// `⊗R : S | Γ, Δ |- A * B` from `S | Γ |- A` and `- | Δ |- B`;
    /// `split` records `|Γ|`.
    Otr { split: usize, left: Box<SeqDeriv>, right: Box<SeqDeriv> },
    /// `⊗R_em : A' | Δ |- A * B` from `- | |- A` and `A' | Δ |- B` (`ln`).
    Otrem { left: Box<SeqDeriv>, right: Box<SeqDeriv> },
    /// `I_C : S | Γ0, I, Γ1 |- C` from `S | Γ0, Γ1 |- C` (`rn`);
    /// `pos = |Γ0|`.
    Ic { pos: usize, body: Box<SeqDeriv> },
    /// `⊗⊗_C : S | Γ0, J * J', Γ1 |- C` from `S | Γ0, J, J', Γ1 |- C` with
    /// `J`, `J'` closed (`rn`); `pos = |Γ0|`.
    Jjc { pos: usize, body: Box<SeqDeriv> },
    /// `⊗L_ctx : S | Γ0, A * B, Γ1 |- C` from `S | Γ0, A, B, Γ1 |- C`
    /// (`an`); `pos = |Γ0|`.
    Otlctx { pos: usize, body: Box<SeqDeriv> },
}

impl SeqDeriv {
    pub fn pass(f: SeqDeriv) -> SeqDeriv {
        SeqDeriv::Pass(Box::new(f))
    }
    pub fn il(f: SeqDeriv) -> SeqDeriv {
        SeqDeriv::Il(Box::new(f))
    }
    pub fn otl(f: SeqDeriv) -> SeqDeriv {
        SeqDeriv::Otl(Box::new(f))
    }
    pub fn otr(split: usize, left: SeqDeriv, right: SeqDeriv) -> SeqDeriv {
        SeqDeriv::Otr { split, left: Box::new(left), right: Box::new(right) }
    }
    pub fn otrem(left: SeqDeriv, right: SeqDeriv) -> SeqDeriv {
        SeqDeriv::Otrem { left: Box::new(left), right: Box::new(right) }
    }
    pub fn ic(pos: usize, body: SeqDeriv) -> SeqDeriv {
        SeqDeriv::Ic { pos, body: Box::new(body) }
    }
    pub fn jjc(pos: usize, body: SeqDeriv) -> SeqDeriv {
        SeqDeriv::Jjc { pos, body: Box::new(body) }
    }
    pub fn otlctx(pos: usize, body: SeqDeriv) -> SeqDeriv {
        SeqDeriv::Otlctx { pos, body: Box::new(body) }
    }

    pub fn size(&self) -> usize {
        match self {
            SeqDeriv::Ax(_) | SeqDeriv::Ir => 1,
            SeqDeriv::Pass(f)
            | SeqDeriv::Il(f)
            | SeqDeriv::Otl(f)
            | SeqDeriv::Ic { body: f, .. }
            | SeqDeriv::Jjc { body: f, .. }
            | SeqDeriv::Otlctx { body: f, .. } => 1 + f.size(),
            SeqDeriv::Otr { left, right, .. } | SeqDeriv::Otrem { left, right } => {
                1 + left.size() + right.size()
            }
        }
    }
}

/// Compute and validate the conclusion sequent of a derivation.
pub fn check_seq(d: &SeqDeriv, flags: NormalityFlags) -> Result<Sequent, CheckError> {
    let mut path = TermPath::default();
    check_seq_at(d, flags, &mut path)
}

fn check_seq_at(
    d: &SeqDeriv,
    flags: NormalityFlags,
    path: &mut TermPath,
) -> Result<Sequent, CheckError> {
    let sub = |d: &SeqDeriv, tag, i, path: &mut TermPath, flags| -> Result<Sequent, CheckError> {
        path.push(tag, i);
        let s = check_seq_at(d, flags, path)?;
        path.pop();
        Ok(s)
    };
    match d {
        SeqDeriv::Ax(a) => Ok(Sequent::new(Stoup::Just(a.clone()), vec![], a.clone())),
        SeqDeriv::Ir => Ok(Sequent::new(Stoup::Empty, vec![], Formula::Unit)),
        SeqDeriv::Pass(f) => {
            let s = sub(f, "pass", 0, path, flags)?;
            match s.stoup {
                Stoup::Just(a) => {
                    let mut ctx = vec![a];
                    ctx.extend(s.context);
                    Ok(Sequent::new(Stoup::Empty, ctx, s.succedent))
                }
                Stoup::Empty => {
                    Err(CheckError::mismatch(path, "pass premise must have a stoup formula"))
                }
            }
        }
        SeqDeriv::Il(f) => {
            let s = sub(f, "il", 0, path, flags)?;
            if !s.stoup.is_empty() {
                return Err(CheckError::mismatch(path, "IL premise must have an empty stoup"));
            }
            Ok(Sequent::new(Stoup::Just(Formula::Unit), s.context, s.succedent))
        }
        SeqDeriv::Otl(f) => {
            let s = sub(f, "otl", 0, path, flags)?;
            let a = match s.stoup {
                Stoup::Just(a) => a,
                Stoup::Empty => {
                    return Err(CheckError::mismatch(path, "⊗L premise must have a stoup formula"))
                }
            };
            if s.context.is_empty() {
                return Err(CheckError::mismatch(path, "⊗L premise needs a context head"));
            }
            let b = s.context[0].clone();
            Ok(Sequent::new(
                Stoup::Just(Formula::tensor(a, b)),
                s.context[1..].to_vec(),
                s.succedent,
            ))
        }
        SeqDeriv::Otr { split, left, right } => {
            let l = sub(left, "otr", 0, path, flags)?;
            let r = sub(right, "otr", 1, path, flags)?;
            if l.context.len() != *split {
                return Err(CheckError::bad_position(
                    path,
                    format!("⊗R split {split} but first premise context has {}", l.context.len()),
                ));
            }
            if !r.stoup.is_empty() {
                return Err(CheckError::mismatch(
                    path,
                    "⊗R second premise must have an empty stoup",
                ));
            }
            let mut ctx = l.context;
            ctx.extend(r.context);
            Ok(Sequent::new(l.stoup, ctx, Formula::tensor(l.succedent, r.succedent)))
        }
        SeqDeriv::Otrem { left, right } => {
            if !flags.ln {
                return Err(CheckError::flag(path, "⊗R_em", "ln"));
            }
            let l = sub(left, "otrem", 0, path, flags)?;
            let r = sub(right, "otrem", 1, path, flags)?;
            if !l.stoup.is_empty() || !l.context.is_empty() {
                return Err(CheckError::mismatch(
                    path,
                    "⊗R_em first premise must have a completely empty antecedent",
                ));
            }
            if r.stoup.is_empty() {
                return Err(CheckError::mismatch(
                    path,
                    "⊗R_em second premise must have a stoup formula",
                ));
            }
            Ok(Sequent::new(r.stoup, r.context, Formula::tensor(l.succedent, r.succedent)))
        }
        SeqDeriv::Ic { pos, body } => {
            if !flags.rn {
                return Err(CheckError::flag(path, "I_C", "rn"));
            }
            let s = sub(body, "ic", 0, path, flags)?;
            if *pos > s.context.len() {
                return Err(CheckError::bad_position(
                    path,
                    format!("I_C at {pos} in a context of length {}", s.context.len()),
                ));
            }
            let mut ctx = s.context;
            ctx.insert(*pos, Formula::Unit);
            Ok(Sequent::new(s.stoup, ctx, s.succedent))
        }
        SeqDeriv::Jjc { pos, body } => {
            if !flags.rn {
                return Err(CheckError::flag(path, "⊗⊗_C", "rn"));
            }
            let s = sub(body, "jjc", 0, path, flags)?;
            if pos + 1 >= s.context.len() {
                return Err(CheckError::bad_position(
                    path,
                    format!("⊗⊗_C at {pos} in a context of length {}", s.context.len()),
                ));
            }
            let (j, j2) = (&s.context[*pos], &s.context[pos + 1]);
            if !j.is_closed() || !j2.is_closed() {
                return Err(CheckError::not_closed(
                    path,
                    format!("⊗⊗_C needs closed formulae, got `{j}` and `{j2}`"),
                ));
            }
            let mut ctx = s.context.clone();
            let pair = Formula::tensor(ctx[*pos].clone(), ctx[pos + 1].clone());
            ctx.splice(*pos..pos + 2, [pair]);
            Ok(Sequent::new(s.stoup, ctx, s.succedent))
        }
        SeqDeriv::Otlctx { pos, body } => {
            if !flags.an {
                return Err(CheckError::flag(path, "⊗L_ctx", "an"));
            }
            let s = sub(body, "otlctx", 0, path, flags)?;
            if pos + 1 >= s.context.len() {
                return Err(CheckError::bad_position(
                    path,
                    format!("⊗L_ctx at {pos} in a context of length {}", s.context.len()),
                ));
            }
            let mut ctx = s.context.clone();
            let pair = Formula::tensor(ctx[*pos].clone(), ctx[pos + 1].clone());
            ctx.splice(*pos..pos + 2, [pair]);
            Ok(Sequent::new(s.stoup, ctx, s.succedent))
        }
    }
}

/// Conclusion of a derivation that is already known to be well formed.
pub(crate) fn conclusion(d: &SeqDeriv) -> Sequent {
    match d {
        SeqDeriv::Ax(a) => Sequent::new(Stoup::Just(a.clone()), vec![], a.clone()),
        SeqDeriv::Ir => Sequent::new(Stoup::Empty, vec![], Formula::Unit),
        SeqDeriv::Pass(f) => {
            let s = conclusion(f);
            let Stoup::Just(a) = s.stoup else { unreachable!("pass premise has a stoup") };
            let mut ctx = vec![a];
            ctx.extend(s.context);
            Sequent::new(Stoup::Empty, ctx, s.succedent)
        }
        SeqDeriv::Il(f) => {
            let s = conclusion(f);
            Sequent::new(Stoup::Just(Formula::Unit), s.context, s.succedent)
        }
        SeqDeriv::Otl(f) => {
            let s = conclusion(f);
            let Stoup::Just(a) = s.stoup else { unreachable!("⊗L premise has a stoup") };
            let b = s.context[0].clone();
            Sequent::new(Stoup::Just(Formula::tensor(a, b)), s.context[1..].to_vec(), s.succedent)
        }
        SeqDeriv::Otr { left, right, .. } => {
            let l = conclusion(left);
            let r = conclusion(right);
            let mut ctx = l.context;
            ctx.extend(r.context);
            Sequent::new(l.stoup, ctx, Formula::tensor(l.succedent, r.succedent))
        }
        SeqDeriv::Otrem { left, right } => {
            let l = conclusion(left);
            let r = conclusion(right);
            Sequent::new(r.stoup, r.context, Formula::tensor(l.succedent, r.succedent))
        }
        SeqDeriv::Ic { pos, body } => {
            let s = conclusion(body);
            let mut ctx = s.context;
            ctx.insert(*pos, Formula::Unit);
            Sequent::new(s.stoup, ctx, s.succedent)
        }
        SeqDeriv::Jjc { pos, body } | SeqDeriv::Otlctx { pos, body } => {
            let s = conclusion(body);
            let mut ctx = s.context;
            let pair = Formula::tensor(ctx[*pos].clone(), ctx[pos + 1].clone());
            ctx.splice(*pos..pos + 2, [pair]);
            Sequent::new(s.stoup, ctx, s.succedent)
        }
    }
}

// ---------------------------------------------------------------------------
// Admissible inversions
// ---------------------------------------------------------------------------

/// Invert `IL`: turn a derivation of `I | Δ |- C` into one of `- | Δ |- C`.
pub(crate) fn il_inv(g: &SeqDeriv) -> SeqDeriv {
    match g {
        SeqDeriv::Ax(_) => SeqDeriv::Ir,
        SeqDeriv::Il(f) => (**f).clone(),
        SeqDeriv::Otr { split, left, right } => {
            SeqDeriv::otr(*split, il_inv(left), (**right).clone())
        }
        SeqDeriv::Otrem { left, right } => SeqDeriv::otr(0, (**left).clone(), il_inv(right)),
        SeqDeriv::Ic { pos, body } => SeqDeriv::ic(*pos, il_inv(body)),
        SeqDeriv::Jjc { pos, body } => SeqDeriv::jjc(*pos, il_inv(body)),
        SeqDeriv::Otlctx { pos, body } => SeqDeriv::otlctx(*pos, il_inv(body)),
        SeqDeriv::Pass(_) | SeqDeriv::Ir | SeqDeriv::Otl(_) => {
            unreachable!("stoup is I")
        }
    }
}

/// Invert `⊗L`: turn a derivation of `A * B | Γ |- C` into one of
/// `A | B, Γ |- C`.
pub(crate) fn otl_inv(g: &SeqDeriv) -> SeqDeriv {
    match g {
        SeqDeriv::Ax(f) => {
            let Formula::Tensor(a, b) = f else { unreachable!("stoup is a tensor") };
            SeqDeriv::otr(0, SeqDeriv::Ax((**a).clone()), SeqDeriv::pass(SeqDeriv::Ax((**b).clone())))
        }
        SeqDeriv::Otl(f) => (**f).clone(),
        SeqDeriv::Otr { split, left, right } => {
            SeqDeriv::otr(split + 1, otl_inv(left), (**right).clone())
        }
        SeqDeriv::Otrem { left, right } => SeqDeriv::otrem((**left).clone(), otl_inv(right)),
        SeqDeriv::Ic { pos, body } => SeqDeriv::ic(pos + 1, otl_inv(body)),
        SeqDeriv::Jjc { pos, body } => SeqDeriv::jjc(pos + 1, otl_inv(body)),
        SeqDeriv::Otlctx { pos, body } => SeqDeriv::otlctx(pos + 1, otl_inv(body)),
        SeqDeriv::Pass(_) | SeqDeriv::Ir | SeqDeriv::Il(_) => {
            unreachable!("stoup is a tensor")
        }
    }
}

/// Activation, admissible under `ln`: turn a derivation of `- | A, Γ |- C`
/// into one of `A | Γ |- C`, inverting `pass` up to the congruence.
pub fn act_admissible(f: &SeqDeriv, flags: NormalityFlags) -> Result<SeqDeriv, CheckError> {
    let path = TermPath::default();
    if !flags.ln {
        return Err(CheckError::flag(&path, "act", "ln"));
    }
    let s = check_seq(f, flags)?;
    if !s.stoup.is_empty() {
        return Err(CheckError::mismatch(&path, "act needs an empty stoup"));
    }
    if s.context.is_empty() {
        return Err(CheckError::mismatch(&path, "act needs a non-empty context"));
    }
    Ok(act(f))
}

pub(crate) fn act(f: &SeqDeriv) -> SeqDeriv {
    match f {
        SeqDeriv::Pass(f1) => (**f1).clone(),
        SeqDeriv::Otr { split, left, right } => {
            if *split >= 1 {
                SeqDeriv::otr(split - 1, act(left), (**right).clone())
            } else {
                SeqDeriv::otrem((**left).clone(), act(right))
            }
        }
        SeqDeriv::Ic { pos, body } => {
            if *pos >= 1 {
                SeqDeriv::ic(pos - 1, act(body))
            } else {
                SeqDeriv::il((**body).clone())
            }
        }
        SeqDeriv::Jjc { pos, body } => {
            if *pos >= 1 {
                SeqDeriv::jjc(pos - 1, act(body))
            } else {
                SeqDeriv::otl(act(body))
            }
        }
        SeqDeriv::Otlctx { pos, body } => {
            if *pos >= 1 {
                SeqDeriv::otlctx(pos - 1, act(body))
            } else {
                SeqDeriv::otl(act(body))
            }
        }
        _ => unreachable!("empty stoup and non-empty context"),
    }
}

/// Insert a unit in the context just left of an existing formula; admissible
/// under `an`. `pos` is the insertion point and must have a formula to its
/// right.
///
/// The result interprets as the input precomposed with the structural map
/// `(id ⊗ λ) ∘ α : (⟦S|Γ0⟧ * I) * B ==> ⟦S|Γ0⟧ * B` under the remaining
/// context, realised by completing that composite back into the sequent
/// calculus.
pub fn ic_restricted(
    f: &SeqDeriv,
    pos: usize,
    flags: NormalityFlags,
) -> Result<SeqDeriv, CheckError> {
    let path = TermPath::default();
    if !flags.an {
        return Err(CheckError::flag(&path, "I_C⁻", "an"));
    }
    let s = check_seq(f, flags)?;
    if pos >= s.context.len() {
        return Err(CheckError::bad_position(
            &path,
            format!("insertion at {pos} has no formula to its right"),
        ));
    }
    let prefix = crate::formula::interp_antecedent(&s.stoup, &s.context[..pos]);
    let b = s.context[pos].clone();
    let witness = crate::catcalc::CatDeriv::comp(
        crate::catcalc::CatDeriv::tensor_map(
            crate::catcalc::CatDeriv::Id(prefix.clone()),
            crate::catcalc::CatDeriv::Lam(b.clone()),
        ),
        crate::catcalc::CatDeriv::Alpha(prefix, Formula::Unit, b),
    );
    let composite = crate::catcalc::CatDeriv::comp(
        crate::bridge::sound(f, flags)?,
        crate::catcalc::tensor_ctx(&witness, &s.context[pos + 1..]),
    );
    let mut ctx = s.context.clone();
    ctx.insert(pos, Formula::Unit);
    crate::bridge::cmplt_at(&composite, &s.stoup, &ctx, flags)
}

fn ic_restr(f: &SeqDeriv, pos: usize) -> SeqDeriv {
    if pos == 0 && conclusion(f).stoup.is_empty() {
        return SeqDeriv::pass(SeqDeriv::il(f.clone()));
    }
    match f {
        SeqDeriv::Pass(f1) => SeqDeriv::pass(ic_restr(f1, pos - 1)),
        SeqDeriv::Il(f1) => SeqDeriv::il(ic_restr(f1, pos)),
        SeqDeriv::Otl(f1) => SeqDeriv::otl(ic_restr(f1, pos + 1)),
        SeqDeriv::Otr { split, left, right } => {
            if pos < *split {
                SeqDeriv::otr(split + 1, ic_restr(left, pos), (**right).clone())
            } else {
                SeqDeriv::otr(*split, (**left).clone(), ic_restr(right, pos - split))
            }
        }
        SeqDeriv::Otrem { left, right } => {
            SeqDeriv::otrem((**left).clone(), ic_restr(right, pos))
        }
        SeqDeriv::Otlctx { pos: p, body } => {
            if pos <= *p {
                SeqDeriv::otlctx(p + 1, ic_restr(body, pos))
            } else {
                SeqDeriv::otlctx(*p, ic_restr(body, pos + 1))
            }
        }
        // An I_C or ⊗⊗_C node proves rn is enabled, so the unrestricted
        // insertion is available and lands in the same congruence class.
        SeqDeriv::Ic { .. } | SeqDeriv::Jjc { .. } => SeqDeriv::ic(pos, f.clone()),
        SeqDeriv::Ax(_) | SeqDeriv::Ir => unreachable!("context is non-empty"),
    }
}

// ---------------------------------------------------------------------------
// Admissible cuts
// ---------------------------------------------------------------------------

/// Cut through the stoup: from `f : S | Γ |- A` and `g : A | Δ |- C`,
/// produce a cut-free derivation of `S | Γ, Δ |- C`.
pub fn scut(f: &SeqDeriv, g: &SeqDeriv, flags: NormalityFlags) -> Result<SeqDeriv, CheckError> {
    let path = TermPath::default();
    let sf = check_seq(f, flags)?;
    let sg = check_seq(g, flags)?;
    match &sg.stoup {
        Stoup::Just(a) if *a == sf.succedent => Ok(scut_w(f, g)),
        _ => Err(CheckError::mismatch(
            &path,
            format!("scut: succedent `{}` vs stoup `{}`", sf.succedent, sg.stoup),
        )),
    }
}

fn scut_w(f: &SeqDeriv, g: &SeqDeriv) -> SeqDeriv {
    match f {
        SeqDeriv::Pass(f1) => SeqDeriv::pass(scut_w(f1, g)),
        SeqDeriv::Il(f1) => SeqDeriv::il(scut_w(f1, g)),
        SeqDeriv::Otl(f1) => SeqDeriv::otl(scut_w(f1, g)),
        SeqDeriv::Ic { pos, body } => SeqDeriv::ic(*pos, scut_w(body, g)),
        SeqDeriv::Jjc { pos, body } => SeqDeriv::jjc(*pos, scut_w(body, g)),
        SeqDeriv::Otlctx { pos, body } => SeqDeriv::otlctx(*pos, scut_w(body, g)),
        SeqDeriv::Ax(_) => g.clone(),
        SeqDeriv::Ir => il_inv(g),
        SeqDeriv::Otr { .. } | SeqDeriv::Otrem { .. } => scut_right(f, g),
    }
}

/// Unvalidated `scut`, for callers that construct both premises.
pub(crate) fn scut_unchecked(f: &SeqDeriv, g: &SeqDeriv) -> SeqDeriv {
    scut_w(f, g)
}

/// Second half of `scut`: `f` is rooted in a tensor right rule (`⊗R` or
/// `⊗R_em`), recurse on `g`.
fn scut_right(f: &SeqDeriv, g: &SeqDeriv) -> SeqDeriv {
    match g {
        SeqDeriv::Ax(_) => f.clone(),
        // Principal cut: distribute the two components of f.
        SeqDeriv::Otl(g1) => match f {
            SeqDeriv::Otr { left: f1, right: f2, .. } => scut_w(f1, &ccut_w(f2, g1, 0)),
            SeqDeriv::Otrem { left: f1, right: f2 } => scut_w(f2, &act(&scut_w(f1, g1))),
            _ => unreachable!(),
        },
        SeqDeriv::Ic { pos, body } => {
            SeqDeriv::ic(conclusion(f).context.len() + pos, scut_right(f, body))
        }
        SeqDeriv::Jjc { pos, body } => {
            SeqDeriv::jjc(conclusion(f).context.len() + pos, scut_right(f, body))
        }
        SeqDeriv::Otlctx { pos, body } => {
            SeqDeriv::otlctx(conclusion(f).context.len() + pos, scut_right(f, body))
        }
        SeqDeriv::Otr { split, left, right } => SeqDeriv::otr(
            conclusion(f).context.len() + split,
            scut_right(f, left),
            (**right).clone(),
        ),
        SeqDeriv::Otrem { left, right } => {
            let inner = scut_right(f, right);
            if conclusion(f).stoup.is_empty() {
                SeqDeriv::otr(0, (**left).clone(), inner)
            } else {
                SeqDeriv::otrem((**left).clone(), inner)
            }
        }
        SeqDeriv::Pass(_) | SeqDeriv::Il(_) | SeqDeriv::Ir => {
            unreachable!("g has a tensor stoup")
        }
    }
}

/// Cut through a context position: from `f : - | Γ |- A` and
/// `g : S | Δ0, A, Δ1 |- C` with `|Δ0| = pos`, produce
/// `S | Δ0, Γ, Δ1 |- C`.
pub fn ccut(
    f: &SeqDeriv,
    g: &SeqDeriv,
    pos: usize,
    flags: NormalityFlags,
) -> Result<SeqDeriv, CheckError> {
    let path = TermPath::default();
    let sf = check_seq(f, flags)?;
    let sg = check_seq(g, flags)?;
    if !sf.stoup.is_empty() {
        return Err(CheckError::mismatch(&path, "ccut first premise must have an empty stoup"));
    }
    check_cut_position(&path, &sg, pos, &sf.succedent)?;
    Ok(ccut_w(f, g, pos))
}

fn check_cut_position(
    path: &TermPath,
    sg: &Sequent,
    pos: usize,
    cut: &Formula,
) -> Result<(), CheckError> {
    match sg.context.get(pos) {
        None => Err(CheckError::bad_position(
            path,
            format!("cut position {pos} out of range (context length {})", sg.context.len()),
        )),
        Some(a) if a != cut => Err(CheckError::mismatch(
            path,
            format!("cut formula `{cut}` but context has `{a}` at {pos}"),
        )),
        Some(_) => Ok(()),
    }
}

fn ccut_w(f: &SeqDeriv, g: &SeqDeriv, pos: usize) -> SeqDeriv {
    match g {
        SeqDeriv::Pass(g1) => {
            if pos == 0 {
                scut_w(f, g1)
            } else {
                SeqDeriv::pass(ccut_w(f, g1, pos - 1))
            }
        }
        SeqDeriv::Il(g1) => SeqDeriv::il(ccut_w(f, g1, pos)),
        SeqDeriv::Otl(g1) => SeqDeriv::otl(ccut_w(f, g1, pos + 1)),
        SeqDeriv::Otr { split, left, right } => {
            if pos < *split {
                let grown = split - 1 + conclusion(f).context.len();
                SeqDeriv::otr(grown, ccut_w(f, left, pos), (**right).clone())
            } else {
                SeqDeriv::otr(*split, (**left).clone(), ccut_w(f, right, pos - split))
            }
        }
        SeqDeriv::Otrem { left, right } => {
            SeqDeriv::otrem((**left).clone(), ccut_w(f, right, pos))
        }
        SeqDeriv::Ic { pos: p, body } => {
            if pos < *p {
                SeqDeriv::ic(p - 1 + conclusion(f).context.len(), ccut_w(f, body, pos))
            } else if pos > *p {
                SeqDeriv::ic(*p, ccut_w(f, body, pos - 1))
            } else {
                // Principal: the cut formula is the inserted unit.
                match f {
                    SeqDeriv::Ir => (**body).clone(),
                    SeqDeriv::Pass(f1) => ccut_fma_w(f1, g, pos),
                    SeqDeriv::Ic { pos: p2, body: f1 } => {
                        SeqDeriv::ic(pos + p2, ccut_w(f1, g, pos))
                    }
                    SeqDeriv::Jjc { pos: p2, body: f1 } => {
                        SeqDeriv::jjc(pos + p2, ccut_w(f1, g, pos))
                    }
                    SeqDeriv::Otlctx { pos: p2, body: f1 } => {
                        SeqDeriv::otlctx(pos + p2, ccut_w(f1, g, pos))
                    }
                    _ => unreachable!("empty stoup with succedent I"),
                }
            }
        }
        SeqDeriv::Jjc { pos: p, body } => {
            ccut_pair(f, g, body, *p, pos, PairRule::Jjc)
        }
        SeqDeriv::Otlctx { pos: p, body } => {
            ccut_pair(f, g, body, *p, pos, PairRule::Otlctx)
        }
        SeqDeriv::Ax(_) | SeqDeriv::Ir => unreachable!("no context to cut into"),
    }
}

#[derive(Clone, Copy)]
enum PairRule {
    Jjc,
    Otlctx,
}

impl PairRule {
    fn build(self, pos: usize, body: SeqDeriv) -> SeqDeriv {
        match self {
            PairRule::Jjc => SeqDeriv::jjc(pos, body),
            PairRule::Otlctx => SeqDeriv::otlctx(pos, body),
        }
    }
}

/// Shared `ccut` case for the two context rules that collapse a pair
/// (`⊗⊗_C` and `⊗L_ctx`). `p` is the rule's own position, `pos` the cut
/// position.
fn ccut_pair(
    f: &SeqDeriv,
    g: &SeqDeriv,
    body: &SeqDeriv,
    p: usize,
    pos: usize,
    rule: PairRule,
) -> SeqDeriv {
    if pos < p {
        rule.build(p - 1 + conclusion(f).context.len(), ccut_w(f, body, pos))
    } else if pos > p {
        rule.build(p, ccut_w(f, body, pos + 1))
    } else {
        // Principal: the cut formula is the collapsed tensor.
        match f {
            SeqDeriv::Otr { left: f1, right: f2, .. } => {
                ccut_w(f1, &ccut_w(f2, body, pos + 1), pos)
            }
            SeqDeriv::Pass(f1) => match rule {
                PairRule::Jjc => ccut_fma_w(f1, g, pos),
                PairRule::Otlctx => ccut_stp_w(f1, g, pos),
            },
            SeqDeriv::Ic { pos: p2, body: f1 } => SeqDeriv::ic(pos + p2, ccut_w(f1, g, pos)),
            SeqDeriv::Jjc { pos: p2, body: f1 } => SeqDeriv::jjc(pos + p2, ccut_w(f1, g, pos)),
            SeqDeriv::Otlctx { pos: p2, body: f1 } => {
                SeqDeriv::otlctx(pos + p2, ccut_w(f1, g, pos))
            }
            _ => unreachable!("empty stoup with tensor succedent"),
        }
    }
}

/// Context cut whose first premise keeps its stoup formula (`rn`): from
/// `f : A' | Γ |- A` and `g : S | Δ0, A, Δ1 |- C`, produce
/// `S | Δ0, A', Γ, Δ1 |- C`.
pub fn ccut_fma(
    f: &SeqDeriv,
    g: &SeqDeriv,
    pos: usize,
    flags: NormalityFlags,
) -> Result<SeqDeriv, CheckError> {
    let path = TermPath::default();
    if !flags.rn {
        return Err(CheckError::flag(&path, "ccut_fma", "rn"));
    }
    let sf = check_seq(f, flags)?;
    let sg = check_seq(g, flags)?;
    if sf.stoup.is_empty() {
        return Err(CheckError::mismatch(&path, "ccut_fma first premise must have a stoup"));
    }
    check_cut_position(&path, &sg, pos, &sf.succedent)?;
    Ok(ccut_fma_w(f, g, pos))
}

fn ccut_fma_w(f: &SeqDeriv, g: &SeqDeriv, pos: usize) -> SeqDeriv {
    match g {
        SeqDeriv::Pass(g1) => {
            if pos == 0 {
                SeqDeriv::pass(scut_w(f, g1))
            } else {
                SeqDeriv::pass(ccut_fma_w(f, g1, pos - 1))
            }
        }
        SeqDeriv::Il(g1) => SeqDeriv::il(ccut_fma_w(f, g1, pos)),
        SeqDeriv::Otl(g1) => SeqDeriv::otl(ccut_fma_w(f, g1, pos + 1)),
        SeqDeriv::Otr { split, left, right } => {
            if pos < *split {
                let grown = split + conclusion(f).context.len();
                SeqDeriv::otr(grown, ccut_fma_w(f, left, pos), (**right).clone())
            } else {
                SeqDeriv::otr(*split, (**left).clone(), ccut_fma_w(f, right, pos - split))
            }
        }
        SeqDeriv::Otrem { left, right } => {
            SeqDeriv::otrem((**left).clone(), ccut_fma_w(f, right, pos))
        }
        SeqDeriv::Ic { pos: p, body } => {
            if pos < *p {
                SeqDeriv::ic(p + conclusion(f).context.len(), ccut_fma_w(f, body, pos))
            } else if pos > *p {
                SeqDeriv::ic(*p, ccut_fma_w(f, body, pos - 1))
            } else {
                ccut_fma_principal(f, g, body, pos, PairRule::Jjc)
            }
        }
        SeqDeriv::Jjc { pos: p, body } => {
            if pos < *p {
                SeqDeriv::jjc(p + conclusion(f).context.len(), ccut_fma_w(f, body, pos))
            } else if pos > *p {
                SeqDeriv::jjc(*p, ccut_fma_w(f, body, pos + 1))
            } else {
                ccut_fma_principal(f, g, body, pos, PairRule::Jjc)
            }
        }
        SeqDeriv::Otlctx { pos: p, body } => {
            if pos < *p {
                SeqDeriv::otlctx(p + conclusion(f).context.len(), ccut_fma_w(f, body, pos))
            } else if pos > *p {
                SeqDeriv::otlctx(*p, ccut_fma_w(f, body, pos + 1))
            } else {
                ccut_fma_principal(f, g, body, pos, PairRule::Otlctx)
            }
        }
        SeqDeriv::Ax(_) | SeqDeriv::Ir => unreachable!("no context to cut into"),
    }
}

/// Principal case of `ccut_fma`: the cut formula was introduced by a
/// context rule of `g`; recurse on the structure of `f`. The closedness
/// lemma guarantees that when the succedent of `f` is closed, so are its
/// stoup and context, keeping the `⊗⊗_C` wrappers legal. `pair` says which
/// collapse rule may wrap a stoup tensor of `f` (`⊗L_ctx` at an `⊗L_ctx`
/// principal position, where the parts need not be closed).
fn ccut_fma_principal(
    f: &SeqDeriv,
    g: &SeqDeriv,
    body: &SeqDeriv,
    pos: usize,
    pair: PairRule,
) -> SeqDeriv {
    match f {
        SeqDeriv::Ax(_) => g.clone(),
        SeqDeriv::Il(f1) => SeqDeriv::ic(pos, ccut_w(f1, g, pos)),
        SeqDeriv::Otl(f1) => pair.build(pos, ccut_fma_w(f1, g, pos)),
        SeqDeriv::Otr { left: f1, right: f2, .. } => {
            ccut_fma_w(f1, &ccut_w(f2, body, pos + 1), pos)
        }
        SeqDeriv::Otrem { left: f1, right: f2 } => {
            ccut_fma_w(f2, &ccut_w(f1, body, pos), pos)
        }
        SeqDeriv::Ic { pos: p2, body: f1 } => SeqDeriv::ic(pos + 1 + p2, ccut_fma_w(f1, g, pos)),
        SeqDeriv::Jjc { pos: p2, body: f1 } => SeqDeriv::jjc(pos + 1 + p2, ccut_fma_w(f1, g, pos)),
        SeqDeriv::Otlctx { pos: p2, body: f1 } => {
            SeqDeriv::otlctx(pos + 1 + p2, ccut_fma_w(f1, g, pos))
        }
        SeqDeriv::Pass(_) | SeqDeriv::Ir => unreachable!("f has a stoup formula"),
    }
}

/// Context cut inserting the interpreted stoup (`an`): from
/// `f : S' | Γ |- A` and `g : S | Δ0, A, Δ1 |- C`, produce
/// `S | Δ0, ⟪S'⟫, Γ, Δ1 |- C` (a unit is inserted when `S'` is empty).
pub fn ccut_stp(
    f: &SeqDeriv,
    g: &SeqDeriv,
    pos: usize,
    flags: NormalityFlags,
) -> Result<SeqDeriv, CheckError> {
    let path = TermPath::default();
    if !flags.an {
        return Err(CheckError::flag(&path, "ccut_stp", "an"));
    }
    let sf = check_seq(f, flags)?;
    let sg = check_seq(g, flags)?;
    check_cut_position(&path, &sg, pos, &sf.succedent)?;
    Ok(ccut_stp_w(f, g, pos))
}

fn ccut_stp_w(f: &SeqDeriv, g: &SeqDeriv, pos: usize) -> SeqDeriv {
    match g {
        SeqDeriv::Pass(g1) => {
            if pos == 0 {
                if conclusion(f).stoup.is_empty() {
                    SeqDeriv::pass(SeqDeriv::il(scut_w(f, g1)))
                } else {
                    SeqDeriv::pass(scut_w(f, g1))
                }
            } else {
                SeqDeriv::pass(ccut_stp_w(f, g1, pos - 1))
            }
        }
        SeqDeriv::Il(g1) => SeqDeriv::il(ccut_stp_w(f, g1, pos)),
        SeqDeriv::Otl(g1) => SeqDeriv::otl(ccut_stp_w(f, g1, pos + 1)),
        SeqDeriv::Otr { split, left, right } => {
            if pos < *split {
                let grown = split + conclusion(f).context.len();
                SeqDeriv::otr(grown, ccut_stp_w(f, left, pos), (**right).clone())
            } else {
                SeqDeriv::otr(*split, (**left).clone(), ccut_stp_w(f, right, pos - split))
            }
        }
        SeqDeriv::Otrem { left, right } => {
            SeqDeriv::otrem((**left).clone(), ccut_stp_w(f, right, pos))
        }
        SeqDeriv::Ic { pos: p, body } => {
            if pos < *p {
                SeqDeriv::ic(p + conclusion(f).context.len(), ccut_stp_w(f, body, pos))
            } else if pos > *p {
                SeqDeriv::ic(*p, ccut_stp_w(f, body, pos - 1))
            } else {
                ccut_stp_principal(f, g, body, pos)
            }
        }
        SeqDeriv::Jjc { pos: p, body } => {
            if pos < *p {
                SeqDeriv::jjc(p + conclusion(f).context.len(), ccut_stp_w(f, body, pos))
            } else if pos > *p {
                SeqDeriv::jjc(*p, ccut_stp_w(f, body, pos + 1))
            } else {
                ccut_stp_principal(f, g, body, pos)
            }
        }
        SeqDeriv::Otlctx { pos: p, body } => {
            if pos < *p {
                SeqDeriv::otlctx(p + conclusion(f).context.len(), ccut_stp_w(f, body, pos))
            } else if pos > *p {
                SeqDeriv::otlctx(*p, ccut_stp_w(f, body, pos + 1))
            } else {
                ccut_stp_principal(f, g, body, pos)
            }
        }
        SeqDeriv::Ax(_) | SeqDeriv::Ir => unreachable!("no context to cut into"),
    }
}

fn ccut_stp_principal(
    f: &SeqDeriv,
    g: &SeqDeriv,
    body: &SeqDeriv,
    pos: usize,
) -> SeqDeriv {
    match f {
        SeqDeriv::Ax(_) | SeqDeriv::Ir => g.clone(),
        // `⟪I⟫ = ⟪-⟫`: dropping IL leaves the inserted formula unchanged.
        SeqDeriv::Il(f1) => ccut_stp_w(f1, g, pos),
        SeqDeriv::Otl(f1) => SeqDeriv::otlctx(pos, ccut_stp_w(f1, g, pos)),
        SeqDeriv::Pass(f1) => ic_restr(&ccut_stp_w(f1, g, pos), pos),
        SeqDeriv::Otr { left: f1, right: f2, .. } => {
            ccut_stp_w(f1, &ccut_w(f2, body, pos + 1), pos)
        }
        SeqDeriv::Otrem { left: f1, right: f2 } => {
            ccut_stp_w(f2, &ccut_w(f1, body, pos), pos)
        }
        SeqDeriv::Ic { pos: p2, body: f1 } => {
            SeqDeriv::ic(pos + 1 + p2, ccut_stp_w(f1, g, pos))
        }
        SeqDeriv::Jjc { pos: p2, body: f1 } => {
            SeqDeriv::jjc(pos + 1 + p2, ccut_stp_w(f1, g, pos))
        }
        SeqDeriv::Otlctx { pos: p2, body: f1 } => {
            SeqDeriv::otlctx(pos + 1 + p2, ccut_stp_w(f1, g, pos))
        }
    }
}

/// Decide the congruence on derivations with a common conclusion: `f` and
/// `g` are related exactly when `focus` maps them to the same focused
/// derivation.
pub fn seq_equal(
    f: &SeqDeriv,
    g: &SeqDeriv,
    flags: NormalityFlags,
) -> Result<bool, CheckError> {
    let sf = check_seq(f, flags)?;
    let sg = check_seq(g, flags)?;
    if sf != sg {
        let path = TermPath::default();
        return Err(CheckError::mismatch(
            &path,
            format!("cannot compare derivations of `{sf}` and `{sg}`"),
        ));
    }
    Ok(focus(f, flags)? == focus(g, flags)?)
}

/// Every derivation of a sequent, in a fixed order. Exhaustive and finite:
/// each premise is smaller in the (formula nodes, stoup emptiness) measure.
/// Only intended for small sequents.
pub fn enumerate_derivations(seq: &Sequent, flags: NormalityFlags) -> Vec<SeqDeriv> {
    let mut out = Vec::new();
    if seq.antecedent_frontier() != seq.succedent.frontier() {
        return out;
    }
    let cross = |out: &mut Vec<SeqDeriv>,
                 ls: &[SeqDeriv],
                 rs: &[SeqDeriv],
                 mk: &dyn Fn(SeqDeriv, SeqDeriv) -> SeqDeriv| {
        for l in ls {
            for r in rs {
                out.push(mk(l.clone(), r.clone()));
            }
        }
    };

    match &seq.stoup {
        Stoup::Just(a) => {
            if seq.context.is_empty() && *a == seq.succedent {
                out.push(SeqDeriv::Ax(a.clone()));
            }
            if *a == Formula::Unit {
                for d in enumerate_derivations(
                    &Sequent::new(Stoup::Empty, seq.context.clone(), seq.succedent.clone()),
                    flags,
                ) {
                    out.push(SeqDeriv::il(d));
                }
            }
            if let Formula::Tensor(l, r) = a {
                let mut ctx = vec![(**r).clone()];
                ctx.extend(seq.context.iter().cloned());
                for d in enumerate_derivations(
                    &Sequent::new(Stoup::Just((**l).clone()), ctx, seq.succedent.clone()),
                    flags,
                ) {
                    out.push(SeqDeriv::otl(d));
                }
            }
        }
        Stoup::Empty => {
            if seq.context.is_empty() && seq.succedent == Formula::Unit {
                out.push(SeqDeriv::Ir);
            }
            if let Some((head, rest)) = seq.context.split_first() {
                for d in enumerate_derivations(
                    &Sequent::new(Stoup::Just(head.clone()), rest.to_vec(), seq.succedent.clone()),
                    flags,
                ) {
                    out.push(SeqDeriv::pass(d));
                }
            }
        }
    }

    if let Formula::Tensor(a, b) = &seq.succedent {
        for split in 0..=seq.context.len() {
            let ls = enumerate_derivations(
                &Sequent::new(seq.stoup.clone(), seq.context[..split].to_vec(), (**a).clone()),
                flags,
            );
            if ls.is_empty() {
                continue;
            }
            let rs = enumerate_derivations(
                &Sequent::new(Stoup::Empty, seq.context[split..].to_vec(), (**b).clone()),
                flags,
            );
            cross(&mut out, &ls, &rs, &|l, r| SeqDeriv::otr(split, l, r));
        }
        if flags.ln && matches!(seq.stoup, Stoup::Just(_)) {
            let ls = enumerate_derivations(
                &Sequent::new(Stoup::Empty, vec![], (**a).clone()),
                flags,
            );
            if !ls.is_empty() {
                let rs = enumerate_derivations(
                    &Sequent::new(seq.stoup.clone(), seq.context.clone(), (**b).clone()),
                    flags,
                );
                cross(&mut out, &ls, &rs, &SeqDeriv::otrem);
            }
        }
    }

    if flags.rn {
        for (pos, c) in seq.context.iter().enumerate() {
            if *c == Formula::Unit {
                let mut ctx = seq.context.clone();
                ctx.remove(pos);
                for d in enumerate_derivations(
                    &Sequent::new(seq.stoup.clone(), ctx, seq.succedent.clone()),
                    flags,
                ) {
                    out.push(SeqDeriv::ic(pos, d));
                }
            }
            if let Formula::Tensor(j, j2) = c {
                if j.is_closed() && j2.is_closed() {
                    let mut ctx = seq.context.clone();
                    ctx.splice(pos..pos + 1, [(**j).clone(), (**j2).clone()]);
                    for d in enumerate_derivations(
                        &Sequent::new(seq.stoup.clone(), ctx, seq.succedent.clone()),
                        flags,
                    ) {
                        out.push(SeqDeriv::jjc(pos, d));
                    }
                }
            }
        }
    }
    if flags.an {
        for (pos, c) in seq.context.iter().enumerate() {
            if let Formula::Tensor(a, b) = c {
                let mut ctx = seq.context.clone();
                ctx.splice(pos..pos + 1, [(**a).clone(), (**b).clone()]);
                for d in enumerate_derivations(
                    &Sequent::new(seq.stoup.clone(), ctx, seq.succedent.clone()),
                    flags,
                ) {
                    out.push(SeqDeriv::otlctx(pos, d));
                }
            }
        }
    }
    out
}
