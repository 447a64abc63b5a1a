//! Exhaustive, terminating proof search in the focused calculus.
//!
//! Search is deterministic: at each choice point the rules are tried in a
//! fixed order (`pass` before `sw_RL`; `⊗R` splits left to right, then
//! `⊗R_em`), so the result list is reproducible across runs and thread
//! counts. With the `parallel` feature the two genuine choice points fan
//! out to rayon workers and the per-branch results are concatenated in the
//! same canonical order.

use super::{FocDeriv, FocSequent};
use crate::formula::{Formula, IrreducibleStoup, NormalityFlags, Stoup};
use std::sync::Arc;

/// Whether `search` may fan choice points out to worker threads.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SearchMode {
    Sequential,
    Parallel,
}

impl SearchMode {
    fn default_mode() -> SearchMode {
        if cfg!(feature = "parallel") {
            SearchMode::Parallel
        } else {
            SearchMode::Sequential
        }
    }
}

/// Forking is budgeted: only the first few choice points below the root
/// fan out to workers, keeping tasks coarse. The budget bounds the fork
/// tree depth.
#[cfg(feature = "parallel")]
const FORK_BUDGET: usize = 5;

/// The complete, duplicate-free list of focused derivations of `seq`, in
/// canonical order. An empty result means the sequent is underivable.
pub fn search(flags: NormalityFlags, seq: &FocSequent) -> Vec<FocDeriv> {
    search_with_mode(flags, seq, SearchMode::default_mode())
}

/// [`search`] with an explicit execution mode; results are identical.
pub fn search_with_mode(
    flags: NormalityFlags,
    seq: &FocSequent,
    mode: SearchMode,
) -> Vec<FocDeriv> {
    let s = Searcher { flags, mode };
    #[cfg(feature = "parallel")]
    let budget = if mode == SearchMode::Parallel { FORK_BUDGET } else { 0 };
    #[cfg(not(feature = "parallel"))]
    let budget = 0;
    match seq {
        FocSequent::C { stoup, anteroom, passive, succedent } => {
            s.phase_c(stoup, anteroom, passive, succedent, budget, Gauge::root())
        }
        FocSequent::L { stoup, context, succedent } => {
            s.phase_l(stoup, context, succedent, budget, Gauge::root())
        }
        FocSequent::R { stoup, context, succedent } => {
            s.phase_r(stoup, context, succedent, budget, Gauge::root())
        }
    }
}

/// Number of derivations of the sequent `S | Γ |- C`, counted at the
/// C-phase root with the context loaded into the anteroom.
pub fn count_derivations(
    flags: NormalityFlags,
    stoup: &Stoup,
    context: &[Formula],
    succedent: &Formula,
) -> usize {
    search(flags, &FocSequent::root(stoup.clone(), context.to_vec(), succedent.clone())).len()
}

/// Lexicographic termination measure: every rule strictly decreases
/// (formula nodes, stoup emptiness, phase rank, anteroom length) from
/// conclusion to premise. Checked at each recursive call in debug builds.
type Measure = (usize, usize, usize, usize);

#[derive(Clone, Copy)]
struct Gauge {
    #[cfg(debug_assertions)]
    prev: Option<Measure>,
}

impl Gauge {
    fn root() -> Gauge {
        #[cfg(debug_assertions)]
        {
            Gauge { prev: None }
        }
        #[cfg(not(debug_assertions))]
        {
            Gauge {}
        }
    }

    #[cfg(debug_assertions)]
    fn descend(&self, next: impl FnOnce() -> Measure) -> Gauge {
        let n = next();
        if let Some(p) = self.prev {
            assert!(n < p, "search measure must strictly decrease: {n:?} not below {p:?}");
        }
        Gauge { prev: Some(n) }
    }

    #[cfg(not(debug_assertions))]
    #[inline(always)]
    fn descend(&self, _next: impl FnOnce() -> Measure) -> Gauge {
        Gauge {}
    }
}

fn nodes(stoup_nodes: usize, ctxs: &[&[Formula]], succ: &Formula) -> usize {
    stoup_nodes + ctxs.iter().flat_map(|c| c.iter()).map(Formula::size).sum::<usize>() + succ.size()
}

fn stoup_nodes(s: &Stoup) -> usize {
    match s {
        Stoup::Empty => 0,
        Stoup::Just(a) => a.size(),
    }
}

fn measure_c(stoup: &Stoup, ante: &[Formula], passive: &[Formula], succ: &Formula) -> Measure {
    (
        nodes(stoup_nodes(stoup), &[ante, passive], succ),
        usize::from(stoup.is_empty()),
        2,
        ante.len(),
    )
}

fn measure_l(stoup: &Stoup, ctx: &[Formula], succ: &Formula) -> Measure {
    (nodes(stoup_nodes(stoup), &[ctx], succ), usize::from(stoup.is_empty()), 1, 0)
}

fn measure_r(stoup: &IrreducibleStoup, ctx: &[Formula], succ: &Formula) -> Measure {
    let sn = match stoup {
        IrreducibleStoup::Empty => 0,
        IrreducibleStoup::Atom(_) => 1,
    };
    (nodes(sn, &[ctx], succ), usize::from(*stoup == IrreducibleStoup::Empty), 0, 0)
}

struct Searcher {
    flags: NormalityFlags,
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    mode: SearchMode,
}

#[cfg(not(feature = "parallel"))]
#[allow(dead_code)]
const FORK_BUDGET: usize = 0;

impl Searcher {
    /// Run two independent branches, in parallel while fork budget
    /// remains, and return both results in order.
    fn fork<A, B>(
        &self,
        budget: usize,
        a: impl FnOnce() -> A + Send,
        b: impl FnOnce() -> B + Send,
    ) -> (A, B)
    where
        A: Send,
        B: Send,
    {
        #[cfg(feature = "parallel")]
        if self.mode == SearchMode::Parallel && budget > 0 {
            return rayon::join(a, b);
        }
        let _ = budget;
        (a(), b())
    }

    fn phase_c(
        &self,
        stoup: &Stoup,
        anteroom: &[Formula],
        passive: &[Formula],
        succ: &Formula,
        par: usize,
        gauge: Gauge,
    ) -> Vec<FocDeriv> {
        let gauge = gauge.descend(|| measure_c(stoup, anteroom, passive, succ));
        let Some((d, rest)) = anteroom.split_last() else {
            return wrap(self.phase_l(stoup, passive, succ, par, gauge), FocDeriv::swlc);
        };
        // The anteroom step is deterministic: exactly one rule applies to
        // the rightmost formula.
        if self.flags.rn && *d == Formula::Unit {
            return wrap(self.phase_c(stoup, rest, passive, succ, par, gauge), FocDeriv::icf);
        }
        if let Formula::Tensor(a, b) = d {
            if (self.flags.rn && d.is_closed()) || self.flags.an {
                let mut ante = rest.to_vec();
                ante.push((**a).clone());
                ante.push((**b).clone());
                return wrap(
                    self.phase_c(stoup, &ante, passive, succ, par, gauge),
                    FocDeriv::otlctxf,
                );
            }
        }
        let mut new_passive = Vec::with_capacity(passive.len() + 1);
        new_passive.push(d.clone());
        new_passive.extend(passive.iter().cloned());
        wrap(self.phase_c(stoup, rest, &new_passive, succ, par, gauge), FocDeriv::act)
    }

    fn phase_l(
        &self,
        stoup: &Stoup,
        ctx: &[Formula],
        succ: &Formula,
        par: usize,
        gauge: Gauge,
    ) -> Vec<FocDeriv> {
        let gauge = gauge.descend(|| measure_l(stoup, ctx, succ));
        match stoup {
            Stoup::Just(Formula::Unit) => {
                wrap(self.phase_l(&Stoup::Empty, ctx, succ, par, gauge), FocDeriv::ilf)
            }
            Stoup::Just(Formula::Tensor(a, b)) => {
                let anteroom = [(**b).clone()];
                wrap(
                    self.phase_c(&Stoup::Just((**a).clone()), &anteroom, ctx, succ, par, gauge),
                    FocDeriv::otlf,
                )
            }
            Stoup::Just(Formula::Atom(x)) => wrap(
                self.phase_r(&IrreducibleStoup::Atom(x.clone()), ctx, succ, par, gauge),
                FocDeriv::swrl,
            ),
            Stoup::Empty => {
                // The one phase-(i) choice point: pass, then switch.
                let can_pass = !ctx.is_empty();
                let can_switch = !(self.flags.ln && !ctx.is_empty());
                match (can_pass, can_switch) {
                    (true, true) => {
                        let sub = par.saturating_sub(1);
                        let (passed, switched) = self.fork(
                            par,
                            || {
                                self.phase_l(
                                    &Stoup::Just(ctx[0].clone()),
                                    &ctx[1..],
                                    succ,
                                    sub,
                                    gauge,
                                )
                            },
                            || self.phase_r(&IrreducibleStoup::Empty, ctx, succ, sub, gauge),
                        );
                        let mut out = wrap(passed, FocDeriv::passf);
                        out.extend(wrap(switched, FocDeriv::swrl));
                        out
                    }
                    (true, false) => wrap(
                        self.phase_l(&Stoup::Just(ctx[0].clone()), &ctx[1..], succ, par, gauge),
                        FocDeriv::passf,
                    ),
                    (false, _) => wrap(
                        self.phase_r(&IrreducibleStoup::Empty, ctx, succ, par, gauge),
                        FocDeriv::swrl,
                    ),
                }
            }
        }
    }

    fn phase_r(
        &self,
        stoup: &IrreducibleStoup,
        ctx: &[Formula],
        succ: &Formula,
        par: usize,
        gauge: Gauge,
    ) -> Vec<FocDeriv> {
        let gauge = gauge.descend(|| measure_r(stoup, ctx, succ));
        match succ {
            Formula::Atom(x) => {
                if ctx.is_empty() && *stoup == IrreducibleStoup::Atom(x.clone()) {
                    vec![FocDeriv::Axf(x.clone())]
                } else {
                    Vec::new()
                }
            }
            Formula::Unit => {
                if ctx.is_empty() && *stoup == IrreducibleStoup::Empty {
                    vec![FocDeriv::Irf]
                } else {
                    Vec::new()
                }
            }
            Formula::Tensor(a, b) => {
                let stoup_front = stoup.frontier();
                let a_front = a.frontier();
                let b_front = b.frontier();
                // Phase-(ii) choice point: splits where the frontiers line
                // up are the only candidates.
                let splits: Vec<usize> = (0..=ctx.len())
                    .filter(|k| {
                        frontier_matches(&stoup_front, &ctx[..*k], &a_front)
                            && frontier_matches(&[], &ctx[*k..], &b_front)
                    })
                    .collect();
                let sub = par.saturating_sub(1);
                let mut out = self.map_splits(&splits, par, |k| {
                    let (ls, rs) = self.fork(
                        sub,
                        || self.phase_r(stoup, &ctx[..k], a, sub.saturating_sub(1), gauge),
                        || {
                            self.phase_l(
                                &Stoup::Empty,
                                &ctx[k..],
                                b,
                                sub.saturating_sub(1),
                                gauge,
                            )
                        },
                    );
                    cross(k, &ls, &rs)
                });
                if self.flags.ln {
                    if let IrreducibleStoup::Atom(x) = stoup {
                        if a_front.is_empty() {
                            let ls =
                                self.phase_r(&IrreducibleStoup::Empty, &[], a, sub, gauge);
                            if !ls.is_empty() {
                                let rs = self.phase_r(
                                    &IrreducibleStoup::Atom(x.clone()),
                                    ctx,
                                    b,
                                    sub,
                                    gauge,
                                );
                                for l in &ls {
                                    for r in &rs {
                                        out.push(FocDeriv::otremf(l.clone(), r.clone()));
                                    }
                                }
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Search the candidate splits, in parallel while fork budget
    /// remains, preserving split order.
    fn map_splits(
        &self,
        splits: &[usize],
        budget: usize,
        per_split: impl Fn(usize) -> Vec<FocDeriv> + Sync + Send,
    ) -> Vec<FocDeriv> {
        #[cfg(feature = "parallel")]
        if self.mode == SearchMode::Parallel && splits.len() > 1 && budget > 0 {
            use rayon::prelude::*;
            return splits
                .par_iter()
                .map(|k| per_split(*k))
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect();
        }
        let _ = budget;
        splits.iter().flat_map(|k| per_split(*k)).collect()
    }
}

fn wrap(ds: Vec<FocDeriv>, mk: impl Fn(FocDeriv) -> FocDeriv) -> Vec<FocDeriv> {
    ds.into_iter().map(mk).collect()
}

fn cross(split: usize, ls: &[FocDeriv], rs: &[FocDeriv]) -> Vec<FocDeriv> {
    let mut out = Vec::with_capacity(ls.len() * rs.len());
    for l in ls {
        for r in rs {
            out.push(FocDeriv::otrf(split, l.clone(), r.clone()));
        }
    }
    out
}

fn frontier_matches(stoup_front: &[Arc<str>], ctx: &[Formula], want: &[Arc<str>]) -> bool {
    let mut i = 0;
    for x in stoup_front {
        if want.get(i) != Some(x) {
            return false;
        }
        i += 1;
    }
    for f in ctx {
        for x in f.frontier() {
            if want.get(i) != Some(&x) {
                return false;
            }
            i += 1;
        }
    }
    i == want.len()
}
