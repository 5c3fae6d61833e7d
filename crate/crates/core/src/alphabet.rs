//! The locative alphabet: addresses, actions and bases.
//!
//! An address is a named root followed by a sequence of integer steps
//! (`xi.0.1` is the grandchild of `xi` through steps 0 and 1). Actions are
//! either the daimon or a polarised focus together with a ramification, the
//! finite set of integers naming the sub-addresses the action opens. A base
//! is a finite set of sequents of pairwise disjoint addresses and anchors
//! every sequence of actions.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A locative address: a symbolic root plus a path of integer steps.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address {
    root: String,
    steps: Vec<u32>,
}

impl Address {
    pub fn root(name: impl Into<String>) -> Self {
        Address { root: name.into(), steps: Vec::new() }
    }

    pub fn new(name: impl Into<String>, steps: impl IntoIterator<Item = u32>) -> Self {
        Address { root: name.into(), steps: steps.into_iter().collect() }
    }

    pub fn root_name(&self) -> &str {
        &self.root
    }

    pub fn steps(&self) -> &[u32] {
        &self.steps
    }

    /// The address obtained by appending one step.
    pub fn child(&self, step: u32) -> Self {
        let mut steps = self.steps.clone();
        steps.push(step);
        Address { root: self.root.clone(), steps }
    }

    /// Parent address and the last step, if any.
    pub fn parent(&self) -> Option<(Address, u32)> {
        let (&last, init) = self.steps.split_last()?;
        Some((Address { root: self.root.clone(), steps: init.to_vec() }, last))
    }

    pub fn is_prefix_of(&self, other: &Address) -> bool {
        self.root == other.root
            && self.steps.len() <= other.steps.len()
            && other.steps[..self.steps.len()] == self.steps[..]
    }

    /// Two addresses are comparable iff one is a prefix of the other.
    pub fn comparable(&self, other: &Address) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.root)?;
        for s in &self.steps {
            write!(f, ".{s}")?;
        }
        Ok(())
    }
}

/// A finite set of integers carried by a proper action. May be empty,
/// which is how the multiplicative constants are modelled.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ramification(BTreeSet<u32>);

impl Ramification {
    pub fn new(items: impl IntoIterator<Item = u32>) -> Self {
        Ramification(items.into_iter().collect())
    }

    pub fn empty() -> Self {
        Ramification(BTreeSet::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, step: u32) -> bool {
        self.0.contains(&step)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &Ramification) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &Ramification) -> Ramification {
        Ramification(self.0.union(&other.0).copied().collect())
    }
}

impl fmt::Display for Ramification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Polarity {
    Pos,
    Neg,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Pos => Polarity::Neg,
            Polarity::Neg => Polarity::Pos,
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarity::Pos => write!(f, "+"),
            Polarity::Neg => write!(f, "-"),
        }
    }
}

/// An elementary interaction step: the daimon, or a polarised focus with
/// the ramification of sub-addresses it opens.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    Daimon,
    Proper { polarity: Polarity, focus: Address, ramification: Ramification },
}

impl Action {
    pub fn pos(focus: Address, ramification: Ramification) -> Self {
        Action::Proper { polarity: Polarity::Pos, focus, ramification }
    }

    pub fn neg(focus: Address, ramification: Ramification) -> Self {
        Action::Proper { polarity: Polarity::Neg, focus, ramification }
    }

    /// The daimon is a positive action.
    pub fn polarity(&self) -> Polarity {
        match self {
            Action::Daimon => Polarity::Pos,
            Action::Proper { polarity, .. } => *polarity,
        }
    }

    pub fn is_daimon(&self) -> bool {
        matches!(self, Action::Daimon)
    }

    pub fn is_positive(&self) -> bool {
        self.polarity() == Polarity::Pos
    }

    pub fn is_negative(&self) -> bool {
        self.polarity() == Polarity::Neg
    }

    pub fn focus(&self) -> Option<&Address> {
        match self {
            Action::Daimon => None,
            Action::Proper { focus, .. } => Some(focus),
        }
    }

    pub fn ramification(&self) -> Option<&Ramification> {
        match self {
            Action::Daimon => None,
            Action::Proper { ramification, .. } => Some(ramification),
        }
    }

    /// Polarity flip; the daimon is self-dual.
    pub fn dual(&self) -> Action {
        match self {
            Action::Daimon => Action::Daimon,
            Action::Proper { polarity, focus, ramification } => Action::Proper {
                polarity: polarity.flip(),
                focus: focus.clone(),
                ramification: ramification.clone(),
            },
        }
    }

    /// The addresses this action opens.
    pub fn created(&self) -> Vec<Address> {
        match self {
            Action::Daimon => Vec::new(),
            Action::Proper { focus, ramification, .. } => {
                ramification.iter().map(|k| focus.child(k)).collect()
            }
        }
    }

    /// Whether `self` justifies an action with the given focus.
    pub fn justifies(&self, focus: &Address) -> bool {
        match self {
            Action::Daimon => false,
            Action::Proper { focus: own, ramification, .. } => match focus.parent() {
                Some((parent, step)) => parent == *own && ramification.contains(step),
                None => false,
            },
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Daimon => write!(f, "#"),
            Action::Proper { polarity, focus, ramification } => {
                write!(f, "({polarity} {focus} {ramification})")
            }
        }
    }
}

/// One sequent of a base: at most one address on the left, finitely many
/// on the right.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sequent {
    pub left: Option<Address>,
    pub right: BTreeSet<Address>,
}

impl Sequent {
    pub fn positive(right: impl IntoIterator<Item = Address>) -> Self {
        Sequent { left: None, right: right.into_iter().collect() }
    }

    pub fn negative(left: Address, right: impl IntoIterator<Item = Address>) -> Self {
        Sequent { left: Some(left), right: right.into_iter().collect() }
    }

    pub fn is_positive(&self) -> bool {
        self.left.is_none()
    }

    pub fn addresses(&self) -> impl Iterator<Item = &Address> {
        self.left.iter().chain(self.right.iter())
    }

    /// Address sides swapped and split into singleton sequents: the left
    /// address becomes a lone positive sequent, each right address a lone
    /// negative one.
    pub fn dual_sequents(&self) -> Vec<Sequent> {
        let mut out = Vec::new();
        if let Some(left) = &self.left {
            out.push(Sequent::positive([left.clone()]));
        }
        for addr in &self.right {
            out.push(Sequent::negative(addr.clone(), []));
        }
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(left) = &self.left {
            write!(f, "{left} ")?;
        }
        write!(f, "|-")?;
        for (i, addr) in self.right.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {addr}")?;
        }
        Ok(())
    }
}

/// A non-empty finite set of sequents of pairwise disjoint addresses.
/// At most one sequent may have an empty left side.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base {
    sequents: Vec<Sequent>,
}

impl Base {
    pub fn new(sequents: Vec<Sequent>) -> Result<Self> {
        let base = Base { sequents };
        base.validate()?;
        Ok(base)
    }

    /// Single positive sequent `|- addrs`.
    pub fn positive(addrs: impl IntoIterator<Item = Address>) -> Result<Self> {
        Base::new(vec![Sequent::positive(addrs)])
    }

    /// Single negative sequent `left |- right`.
    pub fn negative(left: Address, right: impl IntoIterator<Item = Address>) -> Result<Self> {
        Base::new(vec![Sequent::negative(left, right)])
    }

    fn validate(&self) -> Result<()> {
        if self.sequents.is_empty() {
            return Err(Error::Base("a base needs at least one sequent".into()));
        }
        let positive = self.sequents.iter().filter(|s| s.is_positive()).count();
        if positive > 1 {
            return Err(Error::Base(format!("{positive} sequents have an empty left side")));
        }
        let addrs: Vec<&Address> = self.sequents.iter().flat_map(|s| s.addresses()).collect();
        for (i, a) in addrs.iter().enumerate() {
            for b in &addrs[i + 1..] {
                if a.comparable(b) {
                    return Err(Error::Base(format!("addresses {a} and {b} are not disjoint")));
                }
            }
        }
        Ok(())
    }

    pub fn sequents(&self) -> &[Sequent] {
        &self.sequents
    }

    pub fn is_single_sequent(&self) -> bool {
        self.sequents.len() == 1
    }

    /// A base is positive when one sequent has an empty left side.
    pub fn is_positive(&self) -> bool {
        self.sequents.iter().any(|s| s.is_positive())
    }

    /// Simple bases are `|- xi` and `xi |-`.
    pub fn is_simple(&self) -> bool {
        if !self.is_single_sequent() {
            return false;
        }
        let s = &self.sequents[0];
        match &s.left {
            None => s.right.len() == 1,
            Some(_) => s.right.is_empty(),
        }
    }

    pub fn addresses(&self) -> impl Iterator<Item = &Address> {
        self.sequents.iter().flat_map(|s| s.addresses())
    }

    /// Index of the sequent holding `addr` on the given side, if any.
    pub fn sequent_of(&self, addr: &Address, polarity: Polarity) -> Option<usize> {
        self.sequents.iter().position(|s| match polarity {
            Polarity::Neg => s.left.as_ref() == Some(addr),
            Polarity::Pos => s.right.contains(addr),
        })
    }

    /// Whether some base address has this root symbol.
    pub fn knows_root(&self, root: &str) -> bool {
        self.addresses().any(|a| a.root_name() == root)
    }

    /// All sides swapped, compound sequents split into singletons.
    pub fn dual(&self) -> Base {
        let sequents = self.sequents.iter().flat_map(|s| s.dual_sequents()).collect();
        Base { sequents }
    }

    /// Union of the sequents of several bases, e.g. the base of a net.
    pub fn union(bases: impl IntoIterator<Item = Base>) -> Result<Base> {
        let mut sequents = Vec::new();
        for base in bases {
            for s in base.sequents {
                if !sequents.contains(&s) {
                    sequents.push(s);
                }
            }
        }
        sequents.sort();
        Base::new(sequents)
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.sequents.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn addr(s: &str) -> Address {
        let mut parts = s.split('.');
        let root = parts.next().unwrap();
        Address::new(root, parts.map(|p| p.parse().unwrap()))
    }

    #[test]
    fn address_prefix_and_children() {
        let xi = addr("xi");
        let xi01 = xi.child(0).child(1);
        assert_eq!(xi01, addr("xi.0.1"));
        assert!(xi.is_prefix_of(&xi01));
        assert!(!xi01.is_prefix_of(&xi));
        assert!(xi.comparable(&xi01));
        assert!(!addr("xi.0").comparable(&addr("xi.1")));
        assert_eq!(xi01.parent(), Some((addr("xi.0"), 1)));
    }

    #[test]
    fn base_rejects_overlapping_addresses() {
        let err = Base::positive([addr("xi"), addr("xi.0")]).unwrap_err();
        assert!(matches!(err, Error::Base(_)));
    }

    #[test]
    fn base_polarity_and_dual() {
        let base = Base::negative(addr("xi"), [addr("sigma")]).unwrap();
        assert!(!base.is_positive());
        let dual = base.dual();
        // xi |- sigma flips into |- xi together with sigma |-
        assert_eq!(dual.sequents().len(), 2);
        assert!(dual.is_positive());
        assert_eq!(dual.sequent_of(&addr("xi"), Polarity::Pos), Some(0));
        assert_eq!(dual.sequent_of(&addr("sigma"), Polarity::Neg), Some(1));
    }

    #[test]
    fn daimon_is_positive_and_self_dual() {
        assert_eq!(Action::Daimon.polarity(), Polarity::Pos);
        assert_eq!(Action::Daimon.dual(), Action::Daimon);
    }

    #[test]
    fn justification_follows_ramification() {
        let act = Action::pos(addr("xi"), Ramification::new([0, 1]));
        assert!(act.justifies(&addr("xi.0")));
        assert!(act.justifies(&addr("xi.1")));
        assert!(!act.justifies(&addr("xi.2")));
        assert!(!act.justifies(&addr("xi.0.0")));
        assert_eq!(act.created(), vec![addr("xi.0"), addr("xi.1")]);
    }
}
