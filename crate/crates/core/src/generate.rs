//! Seeded random generation of formulae and well-typed derivations, used
//! by the property suites and by the `coherence` audit. Everything is
//! driven by a caller-supplied RNG, so runs are reproducible.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::catcalc::{check_cat, CatDeriv};
use crate::formula::{Formula, NormalityFlags, Stoup};
use crate::seqcalc::{conclusion, SeqDeriv};

pub const DEFAULT_ATOMS: [&str; 5] = ["X", "Y", "Z", "V", "W"];

/// A random formula with at most `max_atoms` atom occurrences.
pub fn random_formula(rng: &mut impl Rng, atoms: &[&str], max_atoms: usize) -> Formula {
    if max_atoms == 0 {
        return closed_formula(rng, 2);
    }
    match rng.gen_range(0..10) {
        0..=2 => Formula::atom(atoms.choose(rng).unwrap()),
        3..=4 => Formula::Unit,
        _ => {
            let left_budget = rng.gen_range(0..=max_atoms);
            Formula::tensor(
                random_formula(rng, atoms, left_budget),
                random_formula(rng, atoms, max_atoms - left_budget),
            )
        }
    }
}

/// A random closed formula (unit and tensor only).
pub fn closed_formula(rng: &mut impl Rng, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.55) {
        Formula::Unit
    } else {
        Formula::tensor(closed_formula(rng, depth - 1), closed_formula(rng, depth - 1))
    }
}

/// A random well-typed categorical derivation with at most `fuel`
/// constructors, using only the generators allowed by `flags`.
pub fn random_cat(rng: &mut impl Rng, flags: NormalityFlags, fuel: usize) -> CatDeriv {
    let src = random_formula(rng, &DEFAULT_ATOMS[..3], 3);
    random_cat_from(rng, flags, &src, fuel)
}

/// As [`random_cat`], but with a fixed source formula.
pub fn random_cat_from(
    rng: &mut impl Rng,
    flags: NormalityFlags,
    src: &Formula,
    fuel: usize,
) -> CatDeriv {
    #[derive(Clone, Copy)]
    enum Pick {
        Id,
        Rho,
        LamInv,
        Lam,
        Alpha,
        RhoInv,
        AlphaInv,
        Tensor,
        Comp,
    }
    let mut picks = vec![Pick::Id, Pick::Rho];
    if flags.ln {
        picks.push(Pick::LamInv);
    }
    if let Formula::Tensor(a, b) = src {
        if **a == Formula::Unit {
            picks.push(Pick::Lam);
        }
        if matches!(**a, Formula::Tensor(..)) {
            picks.push(Pick::Alpha);
        }
        if **b == Formula::Unit && flags.rn {
            picks.push(Pick::RhoInv);
        }
        if matches!(**b, Formula::Tensor(..)) && flags.an {
            picks.push(Pick::AlphaInv);
        }
        if fuel >= 3 {
            picks.push(Pick::Tensor);
        }
    }
    if fuel >= 3 {
        // Composition is the workhorse; weight it up.
        picks.extend([Pick::Comp, Pick::Comp]);
    }
    match *picks.choose(rng).unwrap() {
        Pick::Id => CatDeriv::Id(src.clone()),
        Pick::Rho => CatDeriv::Rho(src.clone()),
        Pick::LamInv => CatDeriv::LamInv(src.clone()),
        Pick::Lam => {
            let Formula::Tensor(_, a) = src else { unreachable!() };
            CatDeriv::Lam((**a).clone())
        }
        Pick::Alpha => {
            let Formula::Tensor(ab, c) = src else { unreachable!() };
            let Formula::Tensor(a, b) = &**ab else { unreachable!() };
            CatDeriv::Alpha((**a).clone(), (**b).clone(), (**c).clone())
        }
        Pick::RhoInv => {
            let Formula::Tensor(a, _) = src else { unreachable!() };
            CatDeriv::RhoInv((**a).clone())
        }
        Pick::AlphaInv => {
            let Formula::Tensor(a, bc) = src else { unreachable!() };
            let Formula::Tensor(b, c) = &**bc else { unreachable!() };
            CatDeriv::AlphaInv((**a).clone(), (**b).clone(), (**c).clone())
        }
        Pick::Tensor => {
            let Formula::Tensor(a, b) = src else { unreachable!() };
            let half = (fuel - 1) / 2;
            CatDeriv::tensor_map(
                random_cat_from(rng, flags, a, half),
                random_cat_from(rng, flags, b, fuel - 1 - half),
            )
        }
        Pick::Comp => {
            let half = (fuel - 1) / 2;
            let first = random_cat_from(rng, flags, src, half);
            let (_, mid) = check_cat(&first, flags).expect("generated term is well typed");
            let second = random_cat_from(rng, flags, &mid, fuel - 1 - half);
            CatDeriv::comp(second, first)
        }
    }
}

/// A random well-typed sequent derivation built bottom-up: start from an
/// axiom and wrap random applicable rules around it until the budget runs
/// out.
pub fn random_seq(rng: &mut impl Rng, flags: NormalityFlags, fuel: usize) -> SeqDeriv {
    let mut d = leaf(rng);
    let mut budget = fuel;
    while budget > 0 {
        budget -= 1;
        let s = conclusion(&d);
        #[derive(Clone, Copy)]
        enum Wrap {
            Pass,
            Il,
            Otl,
            OtrLeft,
            OtrRight,
            Otrem,
            Ic,
            Jjc,
            Otlctx,
        }
        let mut wraps = Vec::new();
        match &s.stoup {
            Stoup::Just(_) => {
                wraps.push(Wrap::Pass);
                if !s.context.is_empty() {
                    wraps.push(Wrap::Otl);
                }
                wraps.push(Wrap::OtrLeft);
                if flags.ln {
                    wraps.push(Wrap::Otrem);
                }
            }
            Stoup::Empty => {
                wraps.push(Wrap::Il);
                wraps.push(Wrap::OtrLeft);
                wraps.push(Wrap::OtrRight);
            }
        }
        if flags.rn {
            wraps.push(Wrap::Ic);
            if pair_positions(&s.context, true).next().is_some() {
                wraps.push(Wrap::Jjc);
            }
        }
        if flags.an && pair_positions(&s.context, false).next().is_some() {
            wraps.push(Wrap::Otlctx);
        }
        d = match *wraps.choose(rng).unwrap() {
            Wrap::Pass => SeqDeriv::pass(d),
            Wrap::Il => SeqDeriv::il(d),
            Wrap::Otl => SeqDeriv::otl(d),
            Wrap::OtrLeft => {
                let sub = budget.min(3);
                budget = budget.saturating_sub(sub);
                let right = empty_stoup(random_seq(rng, flags, sub));
                SeqDeriv::otr(s.context.len(), d, right)
            }
            Wrap::OtrRight => {
                let sub = budget.min(3);
                budget = budget.saturating_sub(sub);
                let left = random_seq(rng, flags, sub);
                let split = conclusion(&left).context.len();
                SeqDeriv::otr(split, left, d)
            }
            Wrap::Otrem => {
                let sub = budget.min(2);
                budget = budget.saturating_sub(sub);
                SeqDeriv::otrem(closed_empty(rng, sub), d)
            }
            Wrap::Ic => {
                let pos = rng.gen_range(0..=s.context.len());
                SeqDeriv::ic(pos, d)
            }
            Wrap::Jjc => {
                let ps: Vec<usize> = pair_positions(&s.context, true).collect();
                SeqDeriv::jjc(*ps.choose(rng).unwrap(), d)
            }
            Wrap::Otlctx => {
                let ps: Vec<usize> = pair_positions(&s.context, false).collect();
                SeqDeriv::otlctx(*ps.choose(rng).unwrap(), d)
            }
        };
    }
    d
}

fn pair_positions(ctx: &[Formula], closed_only: bool) -> impl Iterator<Item = usize> + '_ {
    ctx.windows(2).enumerate().filter_map(move |(i, w)| {
        if !closed_only || (w[0].is_closed() && w[1].is_closed()) {
            Some(i)
        } else {
            None
        }
    })
}

fn leaf(rng: &mut impl Rng) -> SeqDeriv {
    match rng.gen_range(0..6) {
        0 => SeqDeriv::Ir,
        _ => SeqDeriv::Ax(random_formula(rng, &DEFAULT_ATOMS[..3], 2)),
    }
}

fn empty_stoup(d: SeqDeriv) -> SeqDeriv {
    if conclusion(&d).stoup.is_empty() {
        d
    } else {
        SeqDeriv::pass(d)
    }
}

/// A derivation of `- | |- J` for some closed `J`.
fn closed_empty(rng: &mut impl Rng, fuel: usize) -> SeqDeriv {
    if fuel == 0 || rng.gen_bool(0.5) {
        SeqDeriv::Ir
    } else {
        SeqDeriv::otr(0, closed_empty(rng, fuel / 2), closed_empty(rng, fuel / 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcalc::check_seq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_terms_are_well_typed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for flags in NormalityFlags::all_settings() {
            for _ in 0..50 {
                let c = random_cat(&mut rng, flags, 12);
                assert!(check_cat(&c, flags).is_ok(), "{c:?} under {flags}");
                assert!(c.size() <= 12);
                let s = random_seq(&mut rng, flags, 10);
                assert!(check_seq(&s, flags).is_ok(), "{s:?} under {flags}");
            }
        }
    }
}
