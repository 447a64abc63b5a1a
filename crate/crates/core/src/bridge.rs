//! Translations between the categorical and sequent calculi, and hom-set
//! enumeration.
//!
//! `sound` interprets a sequent derivation of `S | Γ |- C` as a map
//! `⟦S|Γ⟧ ==> C`; `cmplt` completes a map into a sequent derivation. The
//! two preserve the respective congruences and are mutually inverse up to
//! them, which is what makes focused search a decision procedure for map
//! equality.

use crate::catcalc::{alpha_c_inv, check_cat, tensor_ctx, CatDeriv};
use crate::error::{CheckError, TermPath};
use crate::focused::{emb, search, FocSequent};
use crate::formula::{interp_antecedent, Formula, NormalityFlags, Stoup};
use crate::seqcalc::{check_seq, conclusion, il_inv, otl_inv, SeqDeriv};

/// Interpret a sequent derivation as a categorical one with endpoints
/// `⟦S|Γ⟧ ==> C`.
pub fn sound(f: &SeqDeriv, flags: NormalityFlags) -> Result<CatDeriv, CheckError> {
    check_seq(f, flags)?;
    Ok(sound_w(f))
}

fn sound_w(f: &SeqDeriv) -> CatDeriv {
    match f {
        SeqDeriv::Ax(a) => CatDeriv::Id(a.clone()),
        SeqDeriv::Ir => CatDeriv::Id(Formula::Unit),
        // ⟦-|A,Γ⟧ = ⟦I*A|Γ⟧, so precompose with λ under the context.
        SeqDeriv::Pass(f1) => {
            let s = conclusion(f1);
            let Stoup::Just(a) = s.stoup else { unreachable!("pass premise has a stoup") };
            CatDeriv::comp(sound_w(f1), tensor_ctx(&CatDeriv::Lam(a), &s.context))
        }
        // ⟦I|Γ⟧ and ⟦-|Γ⟧ are the same formula.
        SeqDeriv::Il(f1) => sound_w(f1),
        // ⟦A*B|Γ⟧ and ⟦A|B,Γ⟧ are the same formula.
        SeqDeriv::Otl(f1) => sound_w(f1),
        SeqDeriv::Otr { left, right, .. } => {
            let sl = conclusion(left);
            let sr = conclusion(right);
            let a0 = interp_antecedent(&sl.stoup, &sl.context);
            CatDeriv::comp(
                CatDeriv::tensor_map(sound_w(left), sound_w(right)),
                phi(&a0, &sr.context),
            )
        }
        // (sound f ⊗ id) ∘ λ⁻¹ ∘ sound g
        SeqDeriv::Otrem { left, right } => {
            let b = conclusion(right).succedent;
            CatDeriv::comp(
                CatDeriv::tensor_map(sound_w(left), CatDeriv::Id(b.clone())),
                CatDeriv::comp(CatDeriv::LamInv(b), sound_w(right)),
            )
        }
        // Precompose with ρ⁻¹ on the prefix, under the rest of the context.
        SeqDeriv::Ic { pos, body } => {
            let s = conclusion(body);
            let a0 = interp_antecedent(&s.stoup, &s.context[..*pos]);
            CatDeriv::comp(
                sound_w(body),
                tensor_ctx(&CatDeriv::RhoInv(a0), &s.context[*pos..]),
            )
        }
        // Precompose with the restricted inverse associator.
        SeqDeriv::Jjc { pos, body } => {
            let s = conclusion(body);
            let a0 = interp_antecedent(&s.stoup, &s.context[..*pos]);
            let inv = alpha_c_inv(&a0, &s.context[*pos], &s.context[pos + 1])
                .expect("⊗⊗_C components are closed");
            CatDeriv::comp(sound_w(body), tensor_ctx(&inv, &s.context[pos + 2..]))
        }
        // Precompose with the full inverse associator.
        SeqDeriv::Otlctx { pos, body } => {
            let s = conclusion(body);
            let a0 = interp_antecedent(&s.stoup, &s.context[..*pos]);
            let inv =
                CatDeriv::AlphaInv(a0, s.context[*pos].clone(), s.context[pos + 1].clone());
            CatDeriv::comp(sound_w(body), tensor_ctx(&inv, &s.context[pos + 2..]))
        }
    }
}

/// The structural map `⟦A|Δ⟧ ==> A * ⟦-|Δ⟧` built from ρ and α, by
/// recursion on `Δ` from the right.
fn phi(a0: &Formula, delta: &[Formula]) -> CatDeriv {
    match delta.split_last() {
        None => CatDeriv::Rho(a0.clone()),
        Some((d, rest)) => {
            let mid = interp_antecedent(&Stoup::Empty, rest);
            CatDeriv::comp(
                CatDeriv::Alpha(a0.clone(), mid, d.clone()),
                CatDeriv::tensor_map(phi(a0, rest), CatDeriv::Id(d.clone())),
            )
        }
    }
}

/// Complete a map `A ==> C` into a sequent derivation of `A | |- C`.
pub fn cmplt(f: &CatDeriv, flags: NormalityFlags) -> Result<SeqDeriv, CheckError> {
    check_cat(f, flags)?;
    Ok(cmplt_w(f))
}

/// Complete a map `⟦S|Γ⟧ ==> C` into a sequent derivation of the given
/// antecedent shape `S | Γ |- C`.
pub fn cmplt_at(
    f: &CatDeriv,
    stoup: &Stoup,
    context: &[Formula],
    flags: NormalityFlags,
) -> Result<SeqDeriv, CheckError> {
    let (src, _) = check_cat(f, flags)?;
    let expect = interp_antecedent(stoup, context);
    if src != expect {
        let path = TermPath::default();
        return Err(CheckError::mismatch(
            &path,
            format!("source `{src}` does not interpret the antecedent `{expect}`"),
        ));
    }
    let mut d = cmplt_w(f);
    // Peel the left-nested antecedent interpretation back into the
    // context, then the stoup interpretation back into an empty stoup.
    for _ in 0..context.len() {
        d = otl_inv(&d);
    }
    if stoup.is_empty() {
        d = il_inv(&d);
    }
    Ok(d)
}

fn cmplt_w(f: &CatDeriv) -> SeqDeriv {
    match f {
        CatDeriv::Id(a) => SeqDeriv::Ax(a.clone()),
        CatDeriv::Comp(g, f1) => crate::seqcalc::scut_unchecked(&cmplt_w(f1), &cmplt_w(g)),
        CatDeriv::TensorMap(f1, g1) => SeqDeriv::otl(SeqDeriv::otr(
            0,
            cmplt_w(f1),
            SeqDeriv::pass(cmplt_w(g1)),
        )),
        CatDeriv::Lam(a) => SeqDeriv::otl(SeqDeriv::il(SeqDeriv::pass(SeqDeriv::Ax(a.clone())))),
        CatDeriv::Rho(a) => SeqDeriv::otr(0, SeqDeriv::Ax(a.clone()), SeqDeriv::Ir),
        CatDeriv::Alpha(a, b, c) => SeqDeriv::otl(SeqDeriv::otl(SeqDeriv::otr(
            0,
            SeqDeriv::Ax(a.clone()),
            SeqDeriv::pass(SeqDeriv::otr(
                0,
                SeqDeriv::Ax(b.clone()),
                SeqDeriv::pass(SeqDeriv::Ax(c.clone())),
            )),
        ))),
        CatDeriv::LamInv(a) => SeqDeriv::otrem(SeqDeriv::Ir, SeqDeriv::Ax(a.clone())),
        CatDeriv::RhoInv(a) => SeqDeriv::otl(SeqDeriv::ic(0, SeqDeriv::Ax(a.clone()))),
        CatDeriv::AlphaInv(a, b, c) => SeqDeriv::otl(SeqDeriv::otlctx(
            0,
            SeqDeriv::otr(
                1,
                SeqDeriv::otr(0, SeqDeriv::Ax(a.clone()), SeqDeriv::pass(SeqDeriv::Ax(b.clone()))),
                SeqDeriv::pass(SeqDeriv::Ax(c.clone())),
            ),
        )),
    }
}

/// A complete, duplicate-free list of representatives of the equality
/// classes of maps `a ==> c`: search the focused calculus at
/// `a | ⋮ ⊢ c`, embed, and interpret.
pub fn hom_enumerate(flags: NormalityFlags, a: &Formula, c: &Formula) -> Vec<CatDeriv> {
    let root = FocSequent::root(Stoup::Just(a.clone()), vec![], c.clone());
    search(flags, &root)
        .iter()
        .map(|d| sound_w(&emb(d, flags)))
        .collect()
}
