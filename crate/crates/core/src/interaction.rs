//! Closed cut-nets and normalization.
//!
//! Interaction walks a single thread of control through the net: the
//! design holding the turn plays the unique positive extension of its
//! current chronicle; a daimon converges, a proper action is matched
//! against the ramifications its cut partner offers at that focus, and on
//! a match the turn passes to the partner. Divergence is a result, not an
//! error.

use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::{Action, Address, Base, Polarity, Ramification};
use crate::design::{Design, Net};
use crate::error::{Error, Result};
use crate::sequence::{dual, ActionSequence, Path};

/// A closed cut-net: every base address is shared between a left and a
/// right occurrence, the graph of designs and cuts is a tree, and exactly
/// one member design has a positive base (the main design).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutNet {
    net: Net,
    cuts: Vec<Address>,
    main: usize,
}

impl CutNet {
    pub fn net(&self) -> &Net {
        &self.net
    }

    pub fn cuts(&self) -> &[Address] {
        &self.cuts
    }

    pub fn main(&self) -> usize {
        self.main
    }

    pub fn main_design(&self) -> &Design {
        &self.net.designs()[self.main]
    }
}

/// Identify the cuts of a net, check closure, acyclicity, connectedness
/// and the unique positive base.
pub fn make_cut_net(net: Net) -> Result<CutNet> {
    let designs = net.designs();
    if designs.is_empty() {
        return Err(Error::Net("a cut-net needs at least one design".into()));
    }

    let mut lefts: BTreeMap<&Address, usize> = BTreeMap::new();
    let mut rights: BTreeMap<&Address, usize> = BTreeMap::new();
    for (i, d) in designs.iter().enumerate() {
        for s in d.base().sequents() {
            if let Some(l) = &s.left {
                lefts.insert(l, i);
            }
            for r in &s.right {
                rights.insert(r, i);
            }
        }
    }
    let mut cuts: Vec<Address> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (addr, &l) in &lefts {
        if let Some(&r) = rights.get(addr) {
            cuts.push((*addr).clone());
            edges.push((l, r));
        }
    }

    // connectedness over the cut graph
    let mut component: Vec<usize> = (0..designs.len()).collect();
    fn find(component: &mut Vec<usize>, mut i: usize) -> usize {
        while component[i] != i {
            component[i] = component[component[i]];
            i = component[i];
        }
        i
    }
    let mut cycle: Option<Address> = None;
    for (k, &(a, b)) in edges.iter().enumerate() {
        let (ra, rb) = (find(&mut component, a), find(&mut component, b));
        if ra == rb {
            cycle.get_or_insert_with(|| cuts[k].clone());
        } else {
            component[ra] = rb;
        }
    }
    let root = find(&mut component, 0);
    if (1..designs.len()).any(|i| find(&mut component, i) != root) {
        return Err(Error::DisconnectedNet);
    }
    if let Some(addr) = cycle {
        return Err(Error::CyclicNet(addr.to_string()));
    }

    for (addr, _) in lefts.iter() {
        if !rights.contains_key(*addr) {
            return Err(Error::OpenNet(addr.to_string()));
        }
    }
    for (addr, _) in rights.iter() {
        if !lefts.contains_key(*addr) {
            return Err(Error::OpenNet(addr.to_string()));
        }
    }

    let mains: Vec<usize> = designs
        .iter()
        .enumerate()
        .filter(|(_, d)| d.base().is_positive())
        .map(|(i, _)| i)
        .collect();
    let main = match mains.as_slice() {
        [one] => *one,
        [] => return Err(Error::NoMainDesign),
        many => return Err(Error::MultipleMainDesigns(many.len())),
    };

    Ok(CutNet { net, cuts, main })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Converged,
    Diverged {
        /// The positive action whose ramification found no match.
        action: Action,
        /// Ramifications the partner offered at that focus.
        offered: Vec<Ramification>,
    },
}

/// Result of normalizing a closed cut-net, with the interaction record
/// kept on the side of a distinguished member design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationResult {
    pub outcome: Outcome,
    /// Actions consumed on the distinguished design's side. On
    /// convergence this is a positive-ended path of that design; a
    /// divergence may stop anywhere, so the raw sequence is kept.
    pub trace: ActionSequence,
    /// Dual of the trace; present exactly when the interaction converged.
    pub dual_trace: Option<ActionSequence>,
    pub steps: usize,
}

impl NormalizationResult {
    pub fn converged(&self) -> bool {
        matches!(self.outcome, Outcome::Converged)
    }
}

impl fmt::Display for NormalizationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Converged => {
                write!(f, "converged in {} steps; trace: {}", self.steps, self.trace)
            }
            Outcome::Diverged { action, offered } => {
                write!(
                    f,
                    "diverged at {action} after {} steps; offered ramifications: ",
                    self.steps
                )?;
                for (i, r) in offered.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{r}")?;
                }
                Ok(())
            }
        }
    }
}

/// Run the interaction, recording the trace on `distinguished`'s side.
pub fn normalize(cut_net: &CutNet, distinguished: usize) -> Result<NormalizationResult> {
    let designs = cut_net.net.designs();
    if distinguished >= designs.len() {
        return Err(Error::Domain(format!("no design with index {distinguished} in the net")));
    }

    // who answers negatively at each address, and from which chronicle
    let mut anchor: BTreeMap<Address, (usize, Vec<Action>)> = BTreeMap::new();
    for cut in &cut_net.cuts {
        let owner = cut_net
            .net
            .owner(cut, Polarity::Neg)
            .expect("cut addresses have a left occurrence");
        anchor.insert(cut.clone(), (owner, Vec::new()));
    }

    let mut visited: Vec<Vec<Action>> = vec![Vec::new(); designs.len()];
    let mut cursor: Vec<Vec<Action>> = vec![Vec::new(); designs.len()];
    let mut turn = cut_net.main;
    let mut steps = 0usize;
    let bound = cut_net.net.size() + 2;

    let outcome = loop {
        if steps > bound {
            return Err(Error::Domain(
                "normalization exceeded its termination bound; the net is malformed".into(),
            ));
        }
        let chronicle = designs[turn]
            .positive_extension(&cursor[turn])
            .ok_or_else(|| {
                Error::Design(format!(
                    "design {} has no positive extension at the interaction point",
                    designs[turn]
                ))
            })?
            .clone();
        let action = chronicle.last().expect("extension is non-empty").clone();
        steps += 1;

        if action.is_daimon() {
            visited[turn].push(Action::Daimon);
            break Outcome::Converged;
        }

        let focus = action.focus().expect("proper action").clone();
        let ramification = action.ramification().expect("proper action").clone();
        let (partner, partner_anchor) = anchor
            .get(&focus)
            .cloned()
            .ok_or_else(|| Error::OpenNet(focus.to_string()))?;
        let offered = designs[partner].negative_ramifications(&partner_anchor, &focus);

        if !offered.contains(&ramification) {
            break Outcome::Diverged { action, offered: offered.into_iter().collect() };
        }

        let response = Action::neg(focus.clone(), ramification.clone());
        visited[turn].push(action);
        visited[partner].push(response.clone());
        for k in ramification.iter() {
            anchor.insert(focus.child(k), (turn, chronicle.clone()));
        }
        cursor[turn] = chronicle;
        let mut partner_cursor = partner_anchor;
        partner_cursor.push(response);
        cursor[partner] = partner_cursor;
        turn = partner;
    };

    let trace =
        ActionSequence::new(designs[distinguished].base().clone(), visited[distinguished].clone());
    let dual_trace = match outcome {
        Outcome::Converged => Some(dual(&trace)?),
        Outcome::Diverged { .. } => None,
    };
    Ok(NormalizationResult { outcome, trace, dual_trace, steps })
}

/// Check that `counter` matches the complementary pattern of `design`'s
/// base: one design per dual sequent.
fn check_counter_pattern(design: &Design, counter: &Net) -> Result<()> {
    let mut expected = design.base().dual().sequents().to_vec();
    for d in counter.designs() {
        let sequents = d.base().sequents();
        let [only] = sequents else {
            return Err(Error::Domain(format!(
                "counter-net member {d} must be based on a single sequent"
            )));
        };
        match expected.iter().position(|s| s == only) {
            Some(i) => {
                expected.remove(i);
            }
            None => {
                return Err(Error::Domain(format!(
                    "counter-net member on {only} does not complement base {}",
                    design.base()
                )))
            }
        }
    }
    if !expected.is_empty() {
        return Err(Error::Domain(format!(
            "counter-net leaves {} sequent(s) of the dual base uncovered",
            expected.len()
        )));
    }
    Ok(())
}

fn interaction(design: &Design, counter: &Net) -> Result<NormalizationResult> {
    check_counter_pattern(design, counter)?;
    let mut members = vec![design.clone()];
    members.extend(counter.designs().iter().cloned());
    let net = Net::new(members)?;
    let cut_net = make_cut_net(net)?;
    normalize(&cut_net, 0)
}

/// Orthogonality: the closed interaction between `design` and the
/// complementary net converges on the daimon.
pub fn ortho(design: &Design, counter: &Net) -> Result<bool> {
    Ok(interaction(design, counter)?.converged())
}

/// The interaction path on `design`'s side; defined only for orthogonal
/// pairs. Its dual is a path of `counter`.
pub fn trace(design: &Design, counter: &Net) -> Result<Path> {
    let result = interaction(design, counter)?;
    match result.outcome {
        Outcome::Converged => Path::new(result.trace),
        Outcome::Diverged { action, .. } => Err(Error::Domain(format!(
            "trace of a non-orthogonal pair (diverged at {action})"
        ))),
    }
}

/// Full normalization result for the complementary pattern, trace kept on
/// `design`'s side.
pub fn interact(design: &Design, counter: &Net) -> Result<NormalizationResult> {
    interaction(design, counter)
}

/// Base of the counter-nets of a design based on a single sequent.
pub fn counter_base(base: &Base) -> Base {
    base.dual()
}
