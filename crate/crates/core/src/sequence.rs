//! Sequences of actions and their two validated forms, paths and chronicles.
//!
//! A path is an alternating justified linear sequence satisfying the
//! negative-jump condition; a chronicle additionally justifies every
//! non-initial negative action by its immediate predecessor. Validation
//! reports the first failing condition in sequence order, with structural
//! problems (unresolvable foci) kept apart from condition violations.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{Action, Address, Base, Polarity};
use crate::error::{Error, Result};

/// Raw container: an ordered list of actions over a base, with no
/// alternation or justification guarantees.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionSequence {
    pub actions: Vec<Action>,
    pub base: Base,
}

impl ActionSequence {
    pub fn new(base: Base, actions: impl IntoIterator<Item = Action>) -> Self {
        ActionSequence { actions: actions.into_iter().collect(), base }
    }

    pub fn empty(base: Base) -> Self {
        ActionSequence { actions: Vec::new(), base }
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn is_positive_ended(&self) -> bool {
        match self.actions.last() {
            None => true,
            Some(a) => a.is_positive(),
        }
    }

    pub fn ends_with_daimon(&self) -> bool {
        matches!(self.actions.last(), Some(Action::Daimon))
    }
}

impl fmt::Display for ActionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.actions.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// The six path conditions, in the order they are checked at each index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathCondition {
    Alternation,
    Justification,
    Linearity,
    NegativeJump,
    Daimon,
    Totality,
}

impl fmt::Display for PathCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PathCondition::Alternation => "alternation",
            PathCondition::Justification => "justification",
            PathCondition::Linearity => "linearity",
            PathCondition::NegativeJump => "negative-jump",
            PathCondition::Daimon => "daimon",
            PathCondition::Totality => "totality",
        };
        write!(f, "{name}")
    }
}

/// Verdict of path or chronicle validation. A violation carries exactly
/// one condition tag and the first offending index in sequence order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PathReport {
    Ok,
    Violation { condition: PathCondition, index: usize },
}

impl PathReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, PathReport::Ok)
    }
}

impl fmt::Display for PathReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathReport::Ok => write!(f, "ok"),
            PathReport::Violation { condition, index } => {
                write!(f, "violation({condition}) at index {index}")
            }
        }
    }
}

/// Outcome of running the validator: justifier of each action (`None` for
/// initial actions and the daimon) plus the verdict.
struct Checked {
    justifiers: Vec<Option<usize>>,
    report: PathReport,
}

fn structural_check(seq: &ActionSequence) -> Result<()> {
    for (index, action) in seq.actions.iter().enumerate() {
        if let Some(focus) = action.focus() {
            if !seq.base.knows_root(focus.root_name()) {
                return Err(Error::Structure {
                    index,
                    reason: format!("focus {focus} has no root in base {}", seq.base),
                });
            }
        }
    }
    Ok(())
}

/// Justifier of `actions[index]` among the earlier actions, if any.
/// Linearity makes the candidate unique once the prefix is clean.
fn find_justifier(actions: &[Action], index: usize) -> Option<usize> {
    let focus = actions[index].focus()?;
    (0..index).find(|&j| actions[j].justifies(focus))
}

/// The view of `actions[..upto]`, as indices into `actions`.
///
/// Total on junk input: a non-initial negative action without justifier
/// terminates the walk as if initial.
fn view_indices(actions: &[Action], justifiers: &[Option<usize>], upto: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut end = upto;
    while end > 0 {
        let last = end - 1;
        out.push(last);
        if actions[last].is_positive() {
            end = last;
        } else {
            match justifiers[last] {
                Some(j) => end = j + 1,
                None => break,
            }
        }
    }
    out.reverse();
    out
}

fn check_conditions(seq: &ActionSequence) -> Checked {
    let actions = &seq.actions;
    let base = &seq.base;
    let mut justifiers: Vec<Option<usize>> = vec![None; actions.len()];

    let violation = |condition, index| Checked {
        justifiers: Vec::new(),
        report: PathReport::Violation { condition, index },
    };

    for index in 0..actions.len() {
        let action = &actions[index];

        // Alternation
        if index > 0 && action.polarity() == actions[index - 1].polarity() {
            return violation(PathCondition::Alternation, index);
        }

        // Justification
        if let Some(focus) = action.focus() {
            match find_justifier(actions, index) {
                Some(j) => {
                    if actions[j].polarity() == action.polarity() {
                        return violation(PathCondition::Justification, index);
                    }
                    justifiers[index] = Some(j);
                }
                None => {
                    if base.sequent_of(focus, action.polarity()).is_none() {
                        return violation(PathCondition::Justification, index);
                    }
                }
            }
        }

        // Linearity
        if let Some(focus) = action.focus() {
            let duplicate = (0..index).any(|j| actions[j].focus() == Some(focus));
            if duplicate {
                return violation(PathCondition::Linearity, index);
            }
        }

        // Negative jump: no jump on positive proper actions.
        if action.is_positive() && !action.is_daimon() {
            match justifiers[index] {
                Some(j) => {
                    let view = view_indices(actions, &justifiers, index);
                    if !view.contains(&j) {
                        return violation(PathCondition::NegativeJump, index);
                    }
                }
                None => {
                    let focus = action.focus().expect("proper action has a focus");
                    let seq_idx = base
                        .sequent_of(focus, Polarity::Pos)
                        .expect("initial focus resolved during justification");
                    let sequent = &base.sequents()[seq_idx];
                    if index == 0 {
                        if !sequent.is_positive() {
                            return violation(PathCondition::NegativeJump, index);
                        }
                    } else {
                        let anchored = actions[index - 1]
                            .focus()
                            .map(|g| sequent.addresses().any(|a| a.is_prefix_of(g)))
                            .unwrap_or(false);
                        if !anchored {
                            return violation(PathCondition::NegativeJump, index);
                        }
                    }
                }
            }
        }

        // Daimon: last action only; first only over a positive base.
        if action.is_daimon() {
            if index + 1 != actions.len() {
                return violation(PathCondition::Daimon, index);
            }
            if index == 0 && !base.is_positive() {
                return violation(PathCondition::Daimon, index);
            }
        }

        // Totality, checked once the first action is in place.
        if index == 0 {
            if let Some(v) = totality_violation(seq) {
                return v;
            }
        }
    }

    if actions.is_empty() {
        if let Some(v) = totality_violation(seq) {
            return v;
        }
    }

    Checked { justifiers, report: PathReport::Ok }
}

fn totality_violation(seq: &ActionSequence) -> Option<Checked> {
    let positive_sequent = seq.base.sequents().iter().find(|s| s.is_positive())?;
    let fail = Some(Checked {
        justifiers: Vec::new(),
        report: PathReport::Violation { condition: PathCondition::Totality, index: 0 },
    });
    match seq.actions.first() {
        None => fail,
        Some(Action::Daimon) => None,
        Some(first) => {
            if first.is_negative() {
                return fail;
            }
            let focus = first.focus().expect("proper positive action");
            if positive_sequent.right.contains(focus) {
                None
            } else {
                fail
            }
        }
    }
}

/// Check the six path conditions on a raw sequence.
pub fn validate_path(seq: &ActionSequence) -> Result<PathReport> {
    structural_check(seq)?;
    Ok(check_conditions(seq).report)
}

/// Check that a raw sequence is a chronicle: a non-empty path in which
/// every non-initial negative action is justified by its immediate
/// predecessor.
pub fn validate_chronicle(seq: &ActionSequence) -> Result<PathReport> {
    structural_check(seq)?;
    let checked = check_conditions(seq);
    if !checked.report.is_ok() {
        return Ok(checked.report);
    }
    if seq.is_empty() {
        return Ok(PathReport::Violation { condition: PathCondition::Totality, index: 0 });
    }
    for (index, action) in seq.actions.iter().enumerate() {
        if action.is_negative() {
            match checked.justifiers[index] {
                None if index == 0 => {}
                Some(j) if j + 1 == index => {}
                _ => {
                    return Ok(PathReport::Violation {
                        condition: PathCondition::Justification,
                        index,
                    })
                }
            }
        }
    }
    Ok(PathReport::Ok)
}

/// A validated path, carrying the justification map recovered during
/// validation: for each action, the index of its justifier.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    seq: ActionSequence,
    justifiers: Vec<Option<usize>>,
    polarity: Polarity,
}

impl Path {
    pub fn new(seq: ActionSequence) -> Result<Path> {
        structural_check(&seq)?;
        let checked = check_conditions(&seq);
        if !checked.report.is_ok() {
            return Err(Error::NotAPath(checked.report));
        }
        let polarity = match seq.actions.first() {
            Some(a) => a.polarity(),
            // The paper lets an empty path be called negative or positive;
            // we default the attribute from the base.
            None => {
                if seq.base.is_positive() {
                    Polarity::Pos
                } else {
                    Polarity::Neg
                }
            }
        };
        Ok(Path { seq, justifiers: checked.justifiers, polarity })
    }

    pub fn empty(base: Base) -> Path {
        Path::new(ActionSequence::empty(base)).expect("empty sequence on a negative base")
    }

    pub fn sequence(&self) -> &ActionSequence {
        &self.seq
    }

    pub fn actions(&self) -> &[Action] {
        &self.seq.actions
    }

    pub fn base(&self) -> &Base {
        &self.seq.base
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn polarity(&self) -> Polarity {
        self.polarity
    }

    pub fn is_positive_ended(&self) -> bool {
        self.seq.is_positive_ended()
    }

    pub fn ends_with_daimon(&self) -> bool {
        self.seq.ends_with_daimon()
    }

    pub fn justifier_of(&self, index: usize) -> Option<usize> {
        self.justifiers.get(index).copied().flatten()
    }

    /// Prefix of length `len`. Any prefix of a path satisfies the path
    /// conditions except possibly totality, so this is partial.
    pub fn prefix(&self, len: usize) -> Result<Path> {
        let seq = ActionSequence::new(self.seq.base.clone(), self.seq.actions[..len].to_vec());
        Path::new(seq)
    }

    /// The view of this path (or path prefix).
    pub fn view(&self) -> Chronicle {
        self.view_upto(self.len())
    }

    fn view_upto(&self, upto: usize) -> Chronicle {
        let idx = view_indices(&self.seq.actions, &self.justifiers, upto);
        let actions: Vec<Action> = idx.iter().map(|&i| self.seq.actions[i].clone()).collect();
        let seq = ActionSequence::new(self.seq.base.clone(), actions);
        Chronicle::new(seq).expect("the view of a path is a chronicle")
    }

    /// Views of all non-empty prefixes; a coherence clique of chronicles.
    pub fn views_of_prefixes(&self) -> BTreeSet<Chronicle> {
        (1..=self.len()).map(|k| self.view_upto(k)).collect()
    }

    /// The full justification chain of the action at `index`, ending on it:
    /// indices of the initial ancestor down to `index` itself.
    pub fn justifier_chain(&self, index: usize) -> Vec<usize> {
        let mut chain = vec![index];
        let mut cur = index;
        while let Some(j) = self.justifiers[cur] {
            chain.push(j);
            cur = j;
        }
        chain.reverse();
        chain
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.seq)
    }
}

/// A validated chronicle: a non-empty path whose non-initial negative
/// actions are justified by their immediate predecessor.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chronicle(Path);

impl Chronicle {
    pub fn new(seq: ActionSequence) -> Result<Chronicle> {
        let report = validate_chronicle(&seq)?;
        if !report.is_ok() {
            return Err(Error::NotAChronicle(report));
        }
        let path = Path::new(seq)?;
        Ok(Chronicle(path))
    }

    pub fn as_path(&self) -> &Path {
        &self.0
    }

    pub fn actions(&self) -> &[Action] {
        self.0.actions()
    }

    pub fn base(&self) -> &Base {
        self.0.base()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_path(self) -> Path {
        self.0
    }
}

impl fmt::Display for Chronicle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The view of a raw sequence, per the four defining clauses. The sequence
/// must be a path or a prefix of one.
pub fn view(seq: &ActionSequence) -> Result<Chronicle> {
    let path = Path::new(seq.clone())?;
    Ok(path.view())
}

/// The dual of a positive-ended (or empty) alternating sequence: drop a
/// final daimon or append one, and flip every remaining polarity. The
/// result lives on the dual base. Involutive on its domain.
pub fn dual(seq: &ActionSequence) -> Result<ActionSequence> {
    if !seq.is_positive_ended() {
        return Err(Error::Domain(format!("dual of a negative-ended sequence: {seq}")));
    }
    for pair in seq.actions.windows(2) {
        if pair[0].polarity() == pair[1].polarity() {
            return Err(Error::Domain(format!("dual of a non-alternating sequence: {seq}")));
        }
    }
    let base = seq.base.dual();
    let actions: Vec<Action> = if seq.ends_with_daimon() {
        seq.actions[..seq.len() - 1].iter().map(Action::dual).collect()
    } else {
        let mut flipped: Vec<Action> = seq.actions.iter().map(Action::dual).collect();
        flipped.push(Action::Daimon);
        flipped
    };
    Ok(ActionSequence::new(base, actions))
}

/// A positive-ended path is reversible when its dual is a path. Per the
/// duality analysis, only the negative-jump condition can fail on the dual.
pub fn is_reversible(path: &Path) -> Result<PathReport> {
    if !path.is_positive_ended() {
        return Err(Error::Domain(format!("reversibility of a negative-ended path: {path}")));
    }
    let dual_seq = dual(path.sequence())?;
    validate_path(&dual_seq)
}

/// Convenience: validated dual path of a reversible path.
pub fn dual_path(path: &Path) -> Result<Path> {
    let seq = dual(path.sequence())?;
    Path::new(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Ramification;

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

    fn base_xi_sigma() -> Base {
        Base::positive([addr("xi"), addr("sigma")]).unwrap()
    }

    /// The seven-action interleaving with blocks from both branches of the
    /// two-branch design on |- xi, sigma.
    fn path_p() -> ActionSequence {
        ActionSequence::new(
            base_xi_sigma(),
            [
                pos("xi", &[0, 1]),
                neg("xi.0", &[0]),
                pos("sigma", &[0]),
                neg("sigma.0", &[0]),
                pos("xi.0.0", &[0]),
                neg("xi.1", &[0]),
                pos("xi.1.0", &[0]),
            ],
        )
    }

    fn path_q() -> ActionSequence {
        ActionSequence::new(
            base_xi_sigma(),
            [
                pos("xi", &[0, 1]),
                neg("xi.0", &[0]),
                pos("sigma", &[0]),
                neg("xi.1", &[0]),
                pos("xi.1.0", &[0]),
                neg("sigma.0", &[0]),
                pos("xi.0.0", &[0]),
            ],
        )
    }

    #[test]
    fn seven_action_interleaving_is_a_path() {
        assert_eq!(validate_path(&path_p()).unwrap(), PathReport::Ok);
        assert_eq!(validate_path(&path_q()).unwrap(), PathReport::Ok);
    }

    #[test]
    fn negative_jump_violation_is_pinpointed() {
        // Interleaving the two branches without carrying all actions over:
        // the final positive action jumps back across an unrelated block.
        let s = ActionSequence::new(
            base_xi_sigma(),
            [
                pos("xi", &[0, 1]),
                neg("xi.0", &[0]),
                pos("sigma", &[0]),
                neg("xi.1", &[0]),
                pos("xi.0.0", &[0]),
            ],
        );
        assert_eq!(
            validate_path(&s).unwrap(),
            PathReport::Violation { condition: PathCondition::NegativeJump, index: 4 }
        );
    }

    #[test]
    fn empty_sequence_on_negative_base_is_a_path() {
        let base = Base::negative(addr("xi"), []).unwrap();
        let seq = ActionSequence::empty(base);
        assert_eq!(validate_path(&seq).unwrap(), PathReport::Ok);
        assert_eq!(Path::new(seq).unwrap().polarity(), Polarity::Neg);
    }

    #[test]
    fn empty_sequence_on_positive_base_fails_totality() {
        let seq = ActionSequence::empty(base_xi_sigma());
        assert_eq!(
            validate_path(&seq).unwrap(),
            PathReport::Violation { condition: PathCondition::Totality, index: 0 }
        );
    }

    #[test]
    fn unknown_root_is_a_structural_error() {
        let seq = ActionSequence::new(base_xi_sigma(), [pos("tau", &[0])]);
        assert!(matches!(validate_path(&seq), Err(Error::Structure { index: 0, .. })));
    }

    #[test]
    fn chronicle_accepts_immediate_justification_only() {
        let c = ActionSequence::new(
            base_xi_sigma(),
            [
                pos("xi", &[0, 1]),
                neg("xi.0", &[0]),
                pos("sigma", &[0]),
                neg("sigma.0", &[0]),
                pos("xi.0.0", &[0]),
            ],
        );
        assert_eq!(validate_chronicle(&c).unwrap(), PathReport::Ok);

        // The seven-action path is not a chronicle: its second negative
        // action is justified by the first action, not its predecessor.
        assert_eq!(
            validate_chronicle(&path_p()).unwrap(),
            PathReport::Violation { condition: PathCondition::Justification, index: 5 }
        );

        let single = ActionSequence::new(
            Base::positive([addr("xi")]).unwrap(),
            [pos("xi", &[])],
        );
        assert_eq!(validate_chronicle(&single).unwrap(), PathReport::Ok);
    }

    #[test]
    fn view_recovers_chronicles_from_interleavings() {
        let c = [
            pos("xi", &[0, 1]),
            neg("xi.0", &[0]),
            pos("sigma", &[0]),
            neg("sigma.0", &[0]),
            pos("xi.0.0", &[0]),
        ];
        let d = [pos("xi", &[0, 1]), neg("xi.1", &[0]), pos("xi.1.0", &[0])];

        let vq = view(&path_q()).unwrap();
        assert_eq!(vq.actions(), &c);

        let vp = view(&path_p()).unwrap();
        assert_eq!(vp.actions(), &d);

        // view of a single action is itself
        let single = ActionSequence::new(base_xi_sigma(), [pos("xi", &[0, 1])]);
        assert_eq!(view(&single).unwrap().actions(), &[pos("xi", &[0, 1])]);
    }

    #[test]
    fn views_of_prefixes_of_a_chronicle_are_its_prefixes() {
        let c = ActionSequence::new(
            base_xi_sigma(),
            [
                pos("xi", &[0, 1]),
                neg("xi.0", &[0]),
                pos("sigma", &[0]),
                neg("sigma.0", &[0]),
                pos("xi.0.0", &[0]),
            ],
        );
        let path = Path::new(c.clone()).unwrap();
        let views = path.views_of_prefixes();
        assert_eq!(views.len(), 5);
        for v in &views {
            assert_eq!(v.actions(), &c.actions[..v.len()]);
        }
    }

    #[test]
    fn dual_flips_and_adjusts_the_daimon() {
        let s = ActionSequence::new(
            base_xi_sigma(),
            [pos("xi", &[0, 1]), neg("xi.0", &[0]), pos("sigma", &[0])],
        );
        let d = dual(&s).unwrap();
        assert_eq!(
            d.actions,
            vec![neg("xi", &[0, 1]), pos("xi.0", &[0]), neg("sigma", &[0]), Action::Daimon]
        );
        assert_eq!(dual(&d).unwrap().actions, s.actions);

        let daimon_only = ActionSequence::new(base_xi_sigma(), [Action::Daimon]);
        assert!(dual(&daimon_only).unwrap().is_empty());
        let back = dual(&dual(&daimon_only).unwrap()).unwrap();
        assert_eq!(back.actions, vec![Action::Daimon]);
    }

    #[test]
    fn five_action_path_is_not_reversible() {
        // A valid path whose dual breaks the negative-jump condition.
        let s = ActionSequence::new(
            base_xi_sigma(),
            [
                pos("xi", &[0, 1]),
                neg("xi.0", &[0]),
                pos("sigma", &[0]),
                neg("xi.1", &[0]),
                pos("xi.1.0", &[0]),
            ],
        );
        assert_eq!(validate_path(&s).unwrap(), PathReport::Ok);
        let path = Path::new(s).unwrap();
        let report = is_reversible(&path).unwrap();
        assert!(
            matches!(report, PathReport::Violation { condition: PathCondition::NegativeJump, .. }),
            "{report}"
        );
    }

    #[test]
    fn chronicles_are_reversible() {
        let c = ActionSequence::new(
            base_xi_sigma(),
            [
                pos("xi", &[0, 1]),
                neg("xi.0", &[0]),
                pos("sigma", &[0]),
                neg("sigma.0", &[0]),
                pos("xi.0.0", &[0]),
            ],
        );
        let path = Path::new(c).unwrap();
        assert_eq!(is_reversible(&path).unwrap(), PathReport::Ok);
    }
}
