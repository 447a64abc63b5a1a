//! The categorical calculus: derivation terms `A ==> C` denoting maps of
//! the free partially normal skew monoidal category.
//!
//! Maps are generated by identities, composition, the tensor on maps and
//! the structural laws `λ : I * A ==> A`, `ρ : A ==> A * I`,
//! `α : (A * B) * C ==> A * (B * C)`; the flags enable their inverses.
//! Equality of maps is decided by translating to the sequent calculus and
//! normalising with [`focus`](crate::focused::focus), see [`cat_equal`].

use crate::bridge;
use crate::error::{CheckError, TermPath};
use crate::focused::focus;
use crate::formula::{Formula, NormalityFlags};

/// A derivation term. Every constructor stores the formula parameters that
/// determine its endpoints, so checking needs no inference.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum CatDeriv {
    /// `id : A ==> A`
    Id(Formula),
    /// `g ∘ f` (second argument applied first).
    Comp(Box<CatDeriv>, Box<CatDeriv>),
    /// `f ⊗ g : A * B ==> C * D` for `f : A ==> C`, `g : B ==> D`.
    TensorMap(Box<CatDeriv>, Box<CatDeriv>),
    /// `λ_A : I * A ==> A`
    Lam(Formula),
    /// `ρ_A : A ==> A * I`
    Rho(Formula),
    /// `α_{A,B,C} : (A * B) * C ==> A * (B * C)`
    Alpha(Formula, Formula, Formula),
    /// `λ⁻¹_A : A ==> I * A`, left-normal only.
    LamInv(Formula),
    /// `ρ⁻¹_A : A * I ==> A`, right-normal only.
    RhoInv(Formula),
    /// `α⁻¹_{A,B,C} : A * (B * C) ==> (A * B) * C`, associative-normal only.
    AlphaInv(Formula, Formula, Formula),
}

impl CatDeriv {
    pub fn comp(g: CatDeriv, f: CatDeriv) -> CatDeriv {
        CatDeriv::Comp(Box::new(g), Box::new(f))
    }

    pub fn tensor_map(f: CatDeriv, g: CatDeriv) -> CatDeriv {
        CatDeriv::TensorMap(Box::new(f), Box::new(g))
    }

    /// Number of constructors in the term.
    pub fn size(&self) -> usize {
        match self {
            CatDeriv::Comp(g, f) | CatDeriv::TensorMap(f, g) => 1 + f.size() + g.size(),
            _ => 1,
        }
    }
}

/// Compute the endpoints `(source, target)` of a derivation, validating
/// composition boundaries and flag gating along the way.
pub fn check_cat(
    d: &CatDeriv,
    flags: NormalityFlags,
) -> Result<(Formula, Formula), CheckError> {
    let mut path = TermPath::default();
    check_cat_at(d, flags, &mut path)
}

fn check_cat_at(
    d: &CatDeriv,
    flags: NormalityFlags,
    path: &mut TermPath,
) -> Result<(Formula, Formula), CheckError> {
    match d {
        CatDeriv::Id(a) => Ok((a.clone(), a.clone())),
        CatDeriv::Comp(g, f) => {
            path.push("comp", 0);
            let (mid2, tgt) = check_cat_at(g, flags, path)?;
            path.pop();
            path.push("comp", 1);
            let (src, mid1) = check_cat_at(f, flags, path)?;
            path.pop();
            if mid1 != mid2 {
                return Err(CheckError::mismatch(
                    path,
                    format!("composition boundary: `{mid1}` vs `{mid2}`"),
                ));
            }
            Ok((src, tgt))
        }
        CatDeriv::TensorMap(f, g) => {
            path.push("tensor", 0);
            let (a, c) = check_cat_at(f, flags, path)?;
            path.pop();
            path.push("tensor", 1);
            let (b, d) = check_cat_at(g, flags, path)?;
            path.pop();
            Ok((Formula::tensor(a, b), Formula::tensor(c, d)))
        }
        CatDeriv::Lam(a) => Ok((Formula::tensor(Formula::Unit, a.clone()), a.clone())),
        CatDeriv::Rho(a) => Ok((a.clone(), Formula::tensor(a.clone(), Formula::Unit))),
        CatDeriv::Alpha(a, b, c) => Ok((
            Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone()),
            Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone())),
        )),
        CatDeriv::LamInv(a) => {
            if !flags.ln {
                return Err(CheckError::flag(path, "laminv", "ln"));
            }
            Ok((a.clone(), Formula::tensor(Formula::Unit, a.clone())))
        }
        CatDeriv::RhoInv(a) => {
            if !flags.rn {
                return Err(CheckError::flag(path, "rhoinv", "rn"));
            }
            Ok((Formula::tensor(a.clone(), Formula::Unit), a.clone()))
        }
        CatDeriv::AlphaInv(a, b, c) => {
            if !flags.an {
                return Err(CheckError::flag(path, "alphainv", "an"));
            }
            Ok((
                Formula::tensor(a.clone(), Formula::tensor(b.clone(), c.clone())),
                Formula::tensor(Formula::tensor(a.clone(), b.clone()), c.clone()),
            ))
        }
    }
}

/// The functorial action of the antecedent interpretation: `⟦f | Γ⟧` is `f`
/// tensored on the right with one identity per context formula, left-nested.
pub fn tensor_ctx(f: &CatDeriv, ctx: &[Formula]) -> CatDeriv {
    let mut acc = f.clone();
    for c in ctx {
        acc = CatDeriv::tensor_map(acc, CatDeriv::Id(c.clone()));
    }
    acc
}

/// The inverse `α_c⁻¹ : A * (J * J') ==> (A * J) * J'` of the associator
/// restricted to closed `J`, `J'`. Valid with `rn`; built by induction on
/// `J'`, splitting on whether it is `I` or a tensor of closed formulae.
pub fn alpha_c_inv(a: &Formula, j: &Formula, j2: &Formula) -> Result<CatDeriv, CheckError> {
    let path = TermPath::default();
    if !j.is_closed() {
        return Err(CheckError::not_closed(&path, format!("`{j}` has atoms")));
    }
    if !j2.is_closed() {
        return Err(CheckError::not_closed(&path, format!("`{j2}` has atoms")));
    }
    Ok(alpha_c_inv_closed(a, j, j2))
}

fn alpha_c_inv_closed(a: &Formula, j: &Formula, j2: &Formula) -> CatDeriv {
    match j2 {
        // A * (J * I) ==> A * J ==> (A * J) * I
        Formula::Unit => CatDeriv::comp(
            CatDeriv::Rho(Formula::tensor(a.clone(), j.clone())),
            CatDeriv::tensor_map(CatDeriv::Id(a.clone()), CatDeriv::RhoInv(j.clone())),
        ),
        Formula::Tensor(j2a, j2b) => {
            let step1 =
                CatDeriv::tensor_map(CatDeriv::Id(a.clone()), alpha_c_inv_closed(j, j2a, j2b));
            let step2 = alpha_c_inv_closed(a, &Formula::tensor(j.clone(), (**j2a).clone()), j2b);
            let step3 = CatDeriv::tensor_map(
                alpha_c_inv_closed(a, j, j2a),
                CatDeriv::Id((**j2b).clone()),
            );
            let step4 = CatDeriv::Alpha(
                Formula::tensor(a.clone(), j.clone()),
                (**j2a).clone(),
                (**j2b).clone(),
            );
            CatDeriv::comp(step4, CatDeriv::comp(step3, CatDeriv::comp(step2, step1)))
        }
        Formula::Atom(_) => unreachable!("closedness checked by caller"),
    }
}

/// Decide whether two maps with common endpoints are equal in the free
/// partially normal skew monoidal category selected by `flags`.
///
/// Both maps are completed into the sequent calculus and normalised by
/// `focus`; they are equal exactly when the focused derivations coincide.
pub fn cat_equal(
    f: &CatDeriv,
    g: &CatDeriv,
    flags: NormalityFlags,
) -> Result<bool, CheckError> {
    let ef = check_cat(f, flags)?;
    let eg = check_cat(g, flags)?;
    if ef != eg {
        let path = TermPath::default();
        return Err(CheckError::mismatch(
            &path,
            format!(
                "cannot compare maps with different endpoints: `{} ==> {}` vs `{} ==> {}`",
                ef.0, ef.1, eg.0, eg.1
            ),
        ));
    }
    let nf = focus(&bridge::cmplt(f, flags)?, flags)?;
    let ng = focus(&bridge::cmplt(g, flags)?, flags)?;
    Ok(nf == ng)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn lam_endpoints() {
        let (src, tgt) = check_cat(&CatDeriv::Lam(atom("A")), NormalityFlags::OFF).unwrap();
        assert_eq!(src, Formula::tensor(Formula::Unit, atom("A")));
        assert_eq!(tgt, atom("A"));
    }

    #[test]
    fn inverse_composite_endpoints() {
        let d = CatDeriv::comp(CatDeriv::Lam(atom("A")), CatDeriv::LamInv(atom("A")));
        let ln = NormalityFlags::new(true, false, false);
        assert_eq!(check_cat(&d, ln).unwrap(), (atom("A"), atom("A")));
    }

    #[test]
    fn flag_gating() {
        let e = check_cat(&CatDeriv::RhoInv(atom("A")), NormalityFlags::OFF).unwrap_err();
        assert!(matches!(e, CheckError::FlagViolation { flag: "rn", .. }));
    }

    #[test]
    fn composition_boundary_mismatch() {
        let d = CatDeriv::comp(CatDeriv::Id(atom("B")), CatDeriv::Id(atom("A")));
        assert!(check_cat(&d, NormalityFlags::OFF).is_err());
    }

    #[test]
    fn tensor_ctx_unfolds() {
        let f = CatDeriv::Rho(atom("A"));
        let c = atom("C");
        let d = atom("D");
        assert_eq!(tensor_ctx(&f, &[]), f);
        assert_eq!(
            tensor_ctx(&f, std::slice::from_ref(&c)),
            CatDeriv::tensor_map(f.clone(), CatDeriv::Id(c.clone()))
        );
        let two = tensor_ctx(&f, &[c.clone(), d.clone()]);
        assert_eq!(
            two,
            CatDeriv::tensor_map(
                CatDeriv::tensor_map(f.clone(), CatDeriv::Id(c.clone())),
                CatDeriv::Id(d.clone())
            )
        );
        // Endpoints are the interpreted antecedents.
        let rn = NormalityFlags::new(false, true, false);
        let (src, tgt) = check_cat(&two, rn).unwrap();
        assert_eq!(src.to_string(), "(A * C) * D");
        assert_eq!(tgt.to_string(), "((A * I) * C) * D");
    }

    #[test]
    fn alpha_c_inv_endpoints() {
        let rn = NormalityFlags::new(false, true, false);
        let a = atom("A");
        let i = Formula::Unit;
        let ii = Formula::tensor(Formula::Unit, Formula::Unit);

        let d = alpha_c_inv(&a, &i, &i).unwrap();
        let (src, tgt) = check_cat(&d, rn).unwrap();
        assert_eq!(src.to_string(), "A * (I * I)");
        assert_eq!(tgt.to_string(), "(A * I) * I");

        let d = alpha_c_inv(&a, &i, &ii).unwrap();
        let (src, tgt) = check_cat(&d, rn).unwrap();
        assert_eq!(src.to_string(), "A * (I * (I * I))");
        assert_eq!(tgt.to_string(), "(A * I) * (I * I)");

        assert!(alpha_c_inv(&a, &atom("X"), &i).is_err());
    }
}
