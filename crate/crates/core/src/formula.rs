//! Object language: formulae, stoups, contexts and sequents.
//!
//! A formula is an atom, the unit `I`, or a tensor `A * B`. Sequents have
//! the form `S | Γ |- C` where the stoup `S` is an optional formula and the
//! context `Γ` is an ordered list of formulae. There is no exchange,
//! weakening or contraction anywhere: context order is significant.

use std::fmt;
use std::sync::Arc;

/// A formula over an implicit atom set: any identifier is an atom.
///
/// Children are reference counted, so cloning is cheap and values can be
/// shared freely across threads.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// A generating atom, e.g. `X`.
    Atom(Arc<str>),
    /// The unit `I`.
    Unit,
    /// A tensor `A * B`.
    Tensor(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Arc::from(name))
    }

    pub fn tensor(left: Formula, right: Formula) -> Formula {
        Formula::Tensor(Arc::new(left), Arc::new(right))
    }

    /// Number of syntax-tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Unit => 1,
            Formula::Tensor(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// True iff the formula is built from `I` and `*` only (empty frontier).
    pub fn is_closed(&self) -> bool {
        match self {
            Formula::Atom(_) => false,
            Formula::Unit => true,
            Formula::Tensor(a, b) => a.is_closed() && b.is_closed(),
        }
    }

    /// In-order list of atom occurrences.
    pub fn frontier(&self) -> Vec<Arc<str>> {
        let mut out = Vec::new();
        self.frontier_into(&mut out);
        out
    }

    fn frontier_into(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Formula::Atom(x) => out.push(x.clone()),
            Formula::Unit => {}
            Formula::Tensor(a, b) => {
                a.frontier_into(out);
                b.frontier_into(out);
            }
        }
    }
}

impl fmt::Display for Formula {
    /// Canonical rendering: tensor arguments that are themselves tensors are
    /// parenthesised, atoms and `I` are bare. `parse_formula` inverts this.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn arg(x: &Formula, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match x {
                Formula::Tensor(..) => write!(f, "({x})"),
                _ => write!(f, "{x}"),
            }
        }
        match self {
            Formula::Atom(x) => write!(f, "{x}"),
            Formula::Unit => write!(f, "I"),
            Formula::Tensor(a, b) => {
                arg(a, f)?;
                write!(f, " * ")?;
                arg(b, f)
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An optional formula at the left end of the antecedent. Left rules act
/// only here.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Stoup {
    Empty,
    Just(Formula),
}

impl Stoup {
    pub fn frontier(&self) -> Vec<Arc<str>> {
        match self {
            Stoup::Empty => Vec::new(),
            Stoup::Just(a) => a.frontier(),
        }
    }

    /// `⟪-⟫ = I`, `⟪A⟫ = A`.
    pub fn interp(&self) -> Formula {
        match self {
            Stoup::Empty => Formula::Unit,
            Stoup::Just(a) => a.clone(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Stoup::Empty)
    }
}

impl fmt::Display for Stoup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stoup::Empty => write!(f, "-"),
            Stoup::Just(a) => write!(f, "{a}"),
        }
    }
}

impl fmt::Debug for Stoup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An ordered list of formulae.
pub type Context = Vec<Formula>;

pub fn context_frontier(ctx: &[Formula]) -> Vec<Arc<str>> {
    let mut out = Vec::new();
    for a in ctx {
        a.frontier_into(&mut out);
    }
    out
}

/// A sequent `S | Γ |- C`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub stoup: Stoup,
    pub context: Context,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(stoup: Stoup, context: Context, succedent: Formula) -> Sequent {
        Sequent { stoup, context, succedent }
    }

    /// Frontier of the whole antecedent, stoup first.
    pub fn antecedent_frontier(&self) -> Vec<Arc<str>> {
        let mut out = self.stoup.frontier();
        for a in &self.context {
            out.extend(a.frontier());
        }
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} |", self.stoup)?;
        let mut first = true;
        for a in &self.context {
            if first {
                write!(f, " {a}")?;
                first = false;
            } else {
                write!(f, " , {a}")?;
            }
        }
        write!(f, " |- {}", self.succedent)
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `⟦S | A1, ..., An⟧ = (..(⟪S⟫ * A1) * ..) * An`, the left-nested tensor
/// of the antecedent.
pub fn interp_antecedent(stoup: &Stoup, ctx: &[Formula]) -> Formula {
    let mut acc = stoup.interp();
    for a in ctx {
        acc = Formula::tensor(acc, a.clone());
    }
    acc
}

/// Which of the three structural laws are invertible.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NormalityFlags {
    /// Left-normal: the left unitor `λ : I * A -> A` is invertible.
    pub ln: bool,
    /// Right-normal: the right unitor `ρ : A -> A * I` is invertible.
    pub rn: bool,
    /// Associative-normal: the associator `α` is invertible.
    pub an: bool,
}

impl NormalityFlags {
    pub const OFF: NormalityFlags = NormalityFlags { ln: false, rn: false, an: false };
    pub const ALL: NormalityFlags = NormalityFlags { ln: true, rn: true, an: true };

    pub fn new(ln: bool, rn: bool, an: bool) -> NormalityFlags {
        NormalityFlags { ln, rn, an }
    }

    /// All eight settings, in binary order (off first, all-on last).
    pub fn all_settings() -> [NormalityFlags; 8] {
        let mut out = [NormalityFlags::OFF; 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = NormalityFlags::new(i & 4 != 0, i & 2 != 0, i & 1 != 0);
        }
        out
    }
}

impl fmt::Display for NormalityFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.ln {
            parts.push("ln");
        }
        if self.rn {
            parts.push("rn");
        }
        if self.an {
            parts.push("an");
        }
        if parts.is_empty() {
            write!(f, "skew")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl fmt::Debug for NormalityFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A stoup that is either empty or atomic; the only stoups allowed in
/// right-phase focused sequents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum IrreducibleStoup {
    Empty,
    Atom(Arc<str>),
}

impl IrreducibleStoup {
    pub fn to_stoup(&self) -> Stoup {
        match self {
            IrreducibleStoup::Empty => Stoup::Empty,
            IrreducibleStoup::Atom(x) => Stoup::Just(Formula::Atom(x.clone())),
        }
    }

    /// Classify a general stoup, if it is irreducible.
    pub fn from_stoup(s: &Stoup) -> Option<IrreducibleStoup> {
        match s {
            Stoup::Empty => Some(IrreducibleStoup::Empty),
            Stoup::Just(Formula::Atom(x)) => Some(IrreducibleStoup::Atom(x.clone())),
            Stoup::Just(_) => None,
        }
    }

    pub fn frontier(&self) -> Vec<Arc<str>> {
        match self {
            IrreducibleStoup::Empty => Vec::new(),
            IrreducibleStoup::Atom(x) => vec![x.clone()],
        }
    }
}

impl fmt::Display for IrreducibleStoup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrreducibleStoup::Empty => write!(f, "-"),
            IrreducibleStoup::Atom(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for IrreducibleStoup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
