//! Designs as prefix-closed cliques of chronicles, nets of designs, and
//! the bridges between the two presentations: building a net from a clique
//! of paths (views of prefixes) and recovering the paths of a design or
//! net as a shuffle closure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::alphabet::{Action, Address, Base, Polarity, Ramification};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::sequence::{validate_chronicle, ActionSequence, Chronicle, Path};
use crate::shuffle::shuffle_closure;

/// Coherence of two chronicles over the same base: comparability (a first
/// difference happens on negative actions) and propagation (after a first
/// difference on distinct foci, the following foci stay pairwise distinct).
pub fn coherent(c1: &Chronicle, c2: &Chronicle) -> Result<bool> {
    if c1.base() != c2.base() {
        return Err(Error::Domain(format!(
            "coherence of chronicles on different bases: {} vs {}",
            c1.base(),
            c2.base()
        )));
    }
    Ok(coherent_actions(c1.actions(), c2.actions()))
}

pub(crate) fn coherent_actions(a: &[Action], b: &[Action]) -> bool {
    let shared = a.iter().zip(b.iter()).take_while(|(x, y)| x == y).count();
    if shared == a.len() || shared == b.len() {
        return true; // one extends the other
    }
    let (x, y) = (&a[shared], &b[shared]);
    if !x.is_negative() || !y.is_negative() {
        return false;
    }
    if x.focus() == y.focus() {
        return true; // same focus, different ramification: slice branching
    }
    let after_a: BTreeSet<&Address> = a[shared + 1..].iter().filter_map(Action::focus).collect();
    b[shared + 1..].iter().filter_map(Action::focus).all(|f| !after_a.contains(f))
}

/// A design: a prefix-closed clique of chronicles over a single-sequent
/// base, whose maximal chronicles end with a positive action. The clique
/// may be empty only over a negative base. Only finite designs are
/// representable; the chronicle set is kept prefix-closed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Design {
    base: Base,
    chronicles: BTreeSet<Vec<Action>>,
}

impl Design {
    /// Build a design from any generating set of chronicles; the set is
    /// closed under prefixes, then every invariant is checked.
    pub fn new(base: Base, chronicles: impl IntoIterator<Item = Vec<Action>>) -> Result<Design> {
        if !base.is_single_sequent() {
            return Err(Error::Design(format!("design base must be a single sequent: {base}")));
        }
        let mut closed: BTreeSet<Vec<Action>> = BTreeSet::new();
        for c in chronicles {
            for k in 1..=c.len() {
                closed.insert(c[..k].to_vec());
            }
        }
        let design = Design { base, chronicles: closed };
        design.validate()?;
        Ok(design)
    }

    /// The design `{daimon}` over a positive base.
    pub fn daimon(base: Base) -> Result<Design> {
        Design::new(base, [vec![Action::Daimon]])
    }

    /// The empty design over a negative base.
    pub fn empty(base: Base) -> Result<Design> {
        Design::new(base, [])
    }

    fn validate(&self) -> Result<()> {
        if self.chronicles.is_empty() && self.base.is_positive() {
            return Err(Error::Design("a design on a positive base is non-empty".into()));
        }
        for c in &self.chronicles {
            let seq = ActionSequence::new(self.base.clone(), c.clone());
            let report = validate_chronicle(&seq)?;
            if !report.is_ok() {
                return Err(Error::Design(format!("`{seq}` is not a chronicle: {report}")));
            }
        }
        let list: Vec<&Vec<Action>> = self.chronicles.iter().collect();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i + 1..] {
                if !coherent_actions(a, b) {
                    let left = ActionSequence::new(self.base.clone(), (*a).clone());
                    let right = ActionSequence::new(self.base.clone(), (*b).clone());
                    return Err(Error::NotAClique {
                        left: left.to_string(),
                        right: right.to_string(),
                    });
                }
            }
        }
        for c in self.maximal_chronicles() {
            if c.last().map(Action::is_negative).unwrap_or(false) {
                let seq = ActionSequence::new(self.base.clone(), c.clone());
                return Err(Error::Design(format!(
                    "maximal chronicle `{seq}` ends with a negative action"
                )));
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn is_empty(&self) -> bool {
        self.chronicles.is_empty()
    }

    /// All chronicles (the set is prefix-closed).
    pub fn chronicles(&self) -> impl Iterator<Item = &Vec<Action>> {
        self.chronicles.iter()
    }

    pub fn contains(&self, chronicle: &[Action]) -> bool {
        self.chronicles.contains(chronicle)
    }

    pub fn is_subdesign_of(&self, other: &Design) -> bool {
        self.base == other.base && self.chronicles.is_subset(&other.chronicles)
    }

    pub fn maximal_chronicles(&self) -> Vec<&Vec<Action>> {
        self.chronicles
            .iter()
            .filter(|c| {
                !self
                    .chronicles
                    .iter()
                    .any(|d| d.len() == c.len() + 1 && d[..c.len()] == c[..])
            })
            .collect()
    }

    /// Chronicles ending with a positive action, as validated paths.
    pub fn positive_ended_chronicles(&self) -> Vec<Path> {
        self.chronicles
            .iter()
            .filter(|c| c.last().map(Action::is_positive).unwrap_or(false))
            .map(|c| {
                Path::new(ActionSequence::new(self.base.clone(), c.clone()))
                    .expect("a chronicle is a path")
            })
            .collect()
    }

    /// Distinct actions occurring in the design.
    pub fn actions(&self) -> BTreeSet<Action> {
        self.chronicles.iter().filter_map(|c| c.last()).cloned().collect()
    }

    /// Number of proper action occurrences; the daimon does not count.
    pub fn size(&self) -> usize {
        self.chronicles
            .iter()
            .filter(|c| c.last().map(|a| !a.is_daimon()).unwrap_or(false))
            .count()
    }

    /// The design's first (initial) actions.
    pub fn first_actions(&self) -> BTreeSet<Action> {
        self.chronicles.iter().filter(|c| c.len() == 1).map(|c| c[0].clone()).collect()
    }

    /// Positive extensions of a chronicle prefix present in the design.
    /// In a clique there is at most one.
    pub fn positive_extension(&self, prefix: &[Action]) -> Option<&Vec<Action>> {
        self.chronicles.iter().find(|c| {
            c.len() == prefix.len() + 1
                && c[..prefix.len()] == prefix[..]
                && c.last().unwrap().is_positive()
        })
    }

    /// Ramifications offered by negative actions on `focus` right after
    /// the given chronicle prefix (empty prefix for initial actions).
    pub fn negative_ramifications(&self, prefix: &[Action], focus: &Address) -> BTreeSet<Ramification> {
        self.chronicles
            .iter()
            .filter(|c| c.len() == prefix.len() + 1 && c[..prefix.len()] == prefix[..])
            .filter_map(|c| match c.last() {
                Some(Action::Proper { polarity: Polarity::Neg, focus: f, ramification })
                    if f == focus =>
                {
                    Some(ramification.clone())
                }
                _ => None,
            })
            .collect()
    }

    /// Whether `path` is a path of this design: every view of a prefix is
    /// a chronicle of the design.
    pub fn admits_path(&self, path: &Path) -> bool {
        path.base() == self.base()
            && path.views_of_prefixes().iter().all(|v| self.contains(v.actions()))
    }

    /// All positive-ended paths of the design: the shuffle closure of its
    /// positive-ended chronicles.
    pub fn paths(&self, budget: &mut Budget) -> Result<BTreeSet<Path>> {
        let seed: BTreeSet<Path> = self.positive_ended_chronicles().into_iter().collect();
        shuffle_closure(&seed, budget)
    }

    /// Whether the design is a slice: the same prefix never branches on a
    /// focus with two different ramifications.
    pub fn is_slice(&self) -> bool {
        for c in &self.chronicles {
            if let Some(Action::Proper { polarity: Polarity::Neg, focus, ramification }) = c.last()
            {
                let prefix = &c[..c.len() - 1];
                let rams = self.negative_ramifications(prefix, focus);
                if rams.len() > 1 && rams.iter().any(|r| r != ramification) {
                    return false;
                }
            }
        }
        true
    }

    /// Maximal slices of the design, one per choice of ramification at
    /// every branching point.
    pub fn slices(&self) -> Vec<Design> {
        let mut points: BTreeMap<(Vec<Action>, Address), BTreeSet<Ramification>> = BTreeMap::new();
        for c in &self.chronicles {
            if let Some(Action::Proper { polarity: Polarity::Neg, focus, ramification }) = c.last()
            {
                points
                    .entry((c[..c.len() - 1].to_vec(), focus.clone()))
                    .or_default()
                    .insert(ramification.clone());
            }
        }
        let branch_points: Vec<(&(Vec<Action>, Address), Vec<&Ramification>)> =
            points.iter().map(|(k, v)| (k, v.iter().collect())).collect();

        let mut out: BTreeSet<Design> = BTreeSet::new();
        let mut choice: Vec<usize> = vec![0; branch_points.len()];
        loop {
            let keep = |c: &Vec<Action>| -> bool {
                for k in 1..=c.len() {
                    if let Action::Proper { polarity: Polarity::Neg, focus, ramification } =
                        &c[k - 1]
                    {
                        let key = (c[..k - 1].to_vec(), focus.clone());
                        if let Some(idx) = branch_points.iter().position(|(p, _)| **p == key) {
                            if branch_points[idx].1[choice[idx]] != ramification {
                                return false;
                            }
                        }
                    }
                }
                true
            };
            let kept: Vec<Vec<Action>> =
                self.chronicles.iter().filter(|c| keep(c)).cloned().collect();
            if let Ok(slice) = Design::new(self.base.clone(), kept) {
                out.insert(slice);
            }

            // advance the mixed-radix choice vector
            let mut i = 0;
            loop {
                if i == branch_points.len() {
                    return out.into_iter().collect();
                }
                choice[i] += 1;
                if choice[i] < branch_points[i].1.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Largest slice size, in proper actions.
    pub fn max_slice_size(&self) -> usize {
        self.slices().iter().map(Design::size).max().unwrap_or(0)
    }
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "design on {} {{", self.base)?;
        for c in self.maximal_chronicles() {
            let seq = ActionSequence::new(self.base.clone(), c.clone());
            write!(f, " [{seq}]")?;
        }
        write!(f, " }}")
    }
}

/// A finite set of designs whose base foci never repeat on the same side.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Net {
    designs: Vec<Design>,
}

impl Net {
    pub fn new(designs: Vec<Design>) -> Result<Net> {
        let mut left: BTreeSet<&Address> = BTreeSet::new();
        let mut right: BTreeSet<&Address> = BTreeSet::new();
        for d in &designs {
            for s in d.base().sequents() {
                if let Some(l) = &s.left {
                    if !left.insert(l) {
                        return Err(Error::Net(format!("focus {l} appears twice on the left")));
                    }
                }
                for r in &s.right {
                    if !right.insert(r) {
                        return Err(Error::Net(format!("focus {r} appears twice on the right")));
                    }
                }
            }
        }
        Ok(Net { designs })
    }

    pub fn singleton(design: Design) -> Net {
        Net { designs: vec![design] }
    }

    pub fn designs(&self) -> &[Design] {
        &self.designs
    }

    pub fn base(&self) -> Result<Base> {
        Base::union(self.designs.iter().map(|d| d.base().clone()))
    }

    pub fn size(&self) -> usize {
        self.designs.iter().map(Design::size).sum()
    }

    /// All positive-ended paths of the net: the shuffle closure of the
    /// positive-ended chronicles of its member designs, lifted to the
    /// union base.
    pub fn paths(&self, budget: &mut Budget) -> Result<BTreeSet<Path>> {
        let base = self.base()?;
        let mut seed: BTreeSet<Path> = BTreeSet::new();
        for d in &self.designs {
            for c in d.positive_ended_chronicles() {
                let lifted = ActionSequence::new(base.clone(), c.actions().to_vec());
                seed.insert(Path::new(lifted)?);
            }
        }
        shuffle_closure(&seed, budget)
    }

    /// Whether `path` is a path of the net: every view of a prefix is a
    /// chronicle of some member design.
    pub fn admits_path(&self, path: &Path) -> bool {
        path.views_of_prefixes()
            .iter()
            .all(|v| self.designs.iter().any(|d| d.contains(v.actions())))
    }

    /// Member design owning this address on the given side, if any.
    pub fn owner(&self, addr: &Address, polarity: Polarity) -> Option<usize> {
        self.designs.iter().position(|d| d.base().sequent_of(addr, polarity).is_some())
    }
}

impl fmt::Display for Net {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "net {{")?;
        for (i, d) in self.designs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {d}")?;
        }
        write!(f, " }}")
    }
}

/// Rebuild the chronicle presentation from a clique of paths: the union of
/// the views of all prefixes, grouped into one design per base sequent.
pub fn design_from_paths(paths: &BTreeSet<Path>) -> Result<Net> {
    let nonempty: Vec<&Path> = paths.iter().filter(|p| !p.is_empty()).collect();
    let Some(first) = nonempty.first() else {
        return Err(Error::Domain("design_from_paths needs a non-empty path".into()));
    };
    let base = first.base().clone();
    if nonempty.iter().any(|p| p.base() != &base) {
        return Err(Error::Domain("design_from_paths: paths on different bases".into()));
    }

    let mut views: BTreeSet<Chronicle> = BTreeSet::new();
    for p in &nonempty {
        views.extend(p.views_of_prefixes());
    }
    let list: Vec<&Chronicle> = views.iter().collect();
    for (i, a) in list.iter().enumerate() {
        for b in &list[i + 1..] {
            if !coherent_actions(a.actions(), b.actions()) {
                return Err(Error::NotAClique { left: a.to_string(), right: b.to_string() });
            }
        }
    }

    // group chronicles by the sequent anchoring their initial action
    let mut groups: BTreeMap<usize, Vec<Vec<Action>>> = BTreeMap::new();
    for v in &views {
        let first = &v.actions()[0];
        let focus = first.focus().expect("initial actions are proper");
        let idx = base
            .sequent_of(focus, first.polarity())
            .expect("validated initial action anchors in the base");
        groups.entry(idx).or_default().push(v.actions().to_vec());
    }
    let mut designs = Vec::new();
    for (idx, chronicles) in groups {
        let sequent_base = Base::new(vec![base.sequents()[idx].clone()])?;
        designs.push(Design::new(sequent_base, chronicles)?);
    }
    Net::new(designs)
}

/// All ramifications occurring in the given designs; the dual alphabet has
/// the same ramifications, so this also covers counter-designs.
pub fn ramification_universe<'a>(
    designs: impl IntoIterator<Item = &'a Design>,
) -> BTreeSet<Ramification> {
    let mut out = BTreeSet::new();
    for d in designs {
        for a in d.actions() {
            if let Some(r) = a.ramification() {
                out.insert(r.clone());
            }
        }
    }
    out
}

/// Completion: add `c (-,xi,I) daimon` whenever `c` is a chronicle of the
/// design, `I` is drawn from the universe, the extension is a chronicle
/// and `c (-,xi,I)` is not already present.
pub fn complete(design: &Design, universe: &BTreeSet<Ramification>) -> Result<Design> {
    let mut chronicles: Vec<Vec<Action>> = design.chronicles().cloned().collect();
    for c in design.chronicles() {
        let Some(Action::Proper { polarity: Polarity::Pos, focus, ramification }) = c.last()
        else {
            continue;
        };
        for k in ramification.iter() {
            let child = focus.child(k);
            for ram in universe {
                let ext = Action::neg(child.clone(), ram.clone());
                let mut candidate = c.clone();
                candidate.push(ext);
                if design.contains(&candidate) {
                    continue;
                }
                let mut guarded = candidate.clone();
                guarded.push(Action::Daimon);
                let seq = ActionSequence::new(design.base().clone(), guarded.clone());
                if validate_chronicle(&seq).map(|r| r.is_ok()).unwrap_or(false) {
                    chronicles.push(guarded);
                }
            }
        }
    }
    Design::new(design.base().clone(), chronicles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Ramification;
    use crate::sequence::ActionSequence;

    fn addr(s: &str) -> Address {
        let mut parts = s.split('.');
        let root = parts.next().unwrap();
        Address::new(root, parts.map(|p| p.parse().unwrap()))
    }

    fn pos(s: &str, rs: &[u32]) -> Action {
        Action::pos(addr(s), Ramification::new(rs.iter().copied()))
    }

    fn neg(s: &str, rs: &[u32]) -> Action {
        Action::neg(addr(s), Ramification::new(rs.iter().copied()))
    }

    fn base() -> Base {
        Base::positive([addr("xi"), addr("sigma")]).unwrap()
    }

    fn chronicle_c() -> Vec<Action> {
        vec![
            pos("xi", &[0, 1]),
            neg("xi.0", &[0]),
            pos("sigma", &[0]),
            neg("sigma.0", &[0]),
            pos("xi.0.0", &[0]),
        ]
    }

    fn chronicle_d() -> Vec<Action> {
        vec![pos("xi", &[0, 1]), neg("xi.1", &[0]), pos("xi.1.0", &[0])]
    }

    fn two_branch_design() -> Design {
        Design::new(base(), [chronicle_c(), chronicle_d()]).unwrap()
    }

    fn path(actions: Vec<Action>) -> Path {
        Path::new(ActionSequence::new(base(), actions)).unwrap()
    }

    #[test]
    fn design_closes_under_prefixes() {
        // 5 prefixes of one branch, 3 of the other, sharing the root action
        let d = two_branch_design();
        assert_eq!(d.chronicles().count(), 7);
        assert_eq!(d.size(), 7);
        assert_eq!(d.maximal_chronicles().len(), 2);
    }

    #[test]
    fn incoherent_chronicles_are_rejected() {
        // same prefix, two different positive extensions
        let a = vec![pos("xi", &[0, 1]), neg("xi.0", &[0]), pos("sigma", &[0])];
        let b = vec![pos("xi", &[0, 1]), neg("xi.0", &[0]), pos("xi.0.0", &[0])];
        let err = Design::new(base(), [a, b]).unwrap_err();
        assert!(matches!(err, Error::NotAClique { .. }));
    }

    #[test]
    fn coherence_of_the_two_branches() {
        let c = Chronicle::new(ActionSequence::new(base(), chronicle_c())).unwrap();
        let d = Chronicle::new(ActionSequence::new(base(), chronicle_d())).unwrap();
        assert!(coherent(&c, &d).unwrap());
        assert!(coherent(&c, &c).unwrap());

        // same prefix, two different positive actions: incomparable
        let w1 = Chronicle::new(ActionSequence::new(base(), vec![pos("xi", &[0])])).unwrap();
        let w2 = Chronicle::new(ActionSequence::new(base(), vec![pos("xi", &[1])])).unwrap();
        assert!(!coherent(&w1, &w2).unwrap());
    }

    #[test]
    fn paths_of_the_two_branch_design_are_the_three_interleavings() {
        let d = two_branch_design();
        let mut budget = Budget::default();
        let paths = d.paths(&mut budget).unwrap();
        let maximal: Vec<&Path> = paths
            .iter()
            .filter(|p| !paths.iter().any(|q| q.len() > p.len() && q.actions()[..p.len()] == p.actions()[..]))
            .collect();
        assert_eq!(maximal.len(), 3);
        for m in maximal {
            assert_eq!(m.len(), 7);
        }
    }

    #[test]
    fn design_from_paths_round_trips() {
        let d = two_branch_design();
        let mut budget = Budget::default();
        let paths = d.paths(&mut budget).unwrap();
        let net = design_from_paths(&paths).unwrap();
        assert_eq!(net.designs().len(), 1);
        assert_eq!(net.designs()[0], d);
    }

    #[test]
    fn design_from_daimon_path() {
        let b = Base::positive([addr("xi")]).unwrap();
        let daimon = Path::new(ActionSequence::new(b.clone(), vec![Action::Daimon])).unwrap();
        let net = design_from_paths(&BTreeSet::from([daimon])).unwrap();
        assert_eq!(net.designs()[0], Design::daimon(b).unwrap());
    }

    #[test]
    fn non_clique_paths_name_the_offenders() {
        let a = path(vec![pos("xi", &[0, 1]), neg("xi.0", &[0]), pos("sigma", &[0])]);
        let b = path(vec![pos("xi", &[0, 1]), neg("xi.0", &[0]), pos("xi.0.0", &[0])]);
        let err = design_from_paths(&BTreeSet::from([a, b])).unwrap_err();
        assert!(matches!(err, Error::NotAClique { .. }));
    }

    #[test]
    fn completion_guards_every_branch_in_the_universe() {
        let b = Base::positive([addr("xi")]).unwrap();
        let d = Design::new(b, [vec![pos("xi", &[0])]]).unwrap();
        let universe: BTreeSet<Ramification> =
            [Ramification::new([0]), Ramification::new([0, 1])].into_iter().collect();
        let completed = complete(&d, &universe).unwrap();
        assert!(completed.contains(&[pos("xi", &[0]), neg("xi.0", &[0]), Action::Daimon]));
        assert!(completed.contains(&[pos("xi", &[0]), neg("xi.0", &[0, 1]), Action::Daimon]));
        assert_eq!(complete(&completed, &universe).unwrap(), completed);

        let dai = Design::daimon(Base::positive([addr("xi")]).unwrap()).unwrap();
        assert_eq!(complete(&dai, &universe).unwrap(), dai);
    }

    #[test]
    fn slices_of_a_branching_design() {
        // one focus answered with two different ramifications
        let b = Base::positive([addr("xi")]).unwrap();
        let d = Design::new(
            b,
            [
                vec![pos("xi", &[0]), neg("xi.0", &[0]), pos("xi.0.0", &[])],
                vec![pos("xi", &[0]), neg("xi.0", &[1]), pos("xi.0.1", &[])],
            ],
        )
        .unwrap();
        assert!(!d.is_slice());
        let slices = d.slices();
        assert_eq!(slices.len(), 2);
        for s in &slices {
            assert!(s.is_slice());
            assert_eq!(s.size(), 3);
        }
        assert_eq!(d.max_slice_size(), 3);

        let two_branch = two_branch_design();
        assert!(two_branch.is_slice());
        assert_eq!(two_branch.max_slice_size(), 7);
    }

    #[test]
    fn net_rejects_repeated_side_foci() {
        let b1 = Base::positive([addr("xi")]).unwrap();
        let d1 = Design::daimon(b1.clone()).unwrap();
        let d2 = Design::daimon(b1).unwrap();
        assert!(matches!(Net::new(vec![d1, d2]), Err(Error::Net(_))));
    }
}
