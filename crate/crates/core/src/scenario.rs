//! Ready-made networks: the software-cost debate and a small inference chain.
//!
//! Both use a fixed clock so repeated builds export identical documents.

use chrono::{DateTime, Utc};

use crate::model::{Certainty, ContextTerm, INodeDraft, NodeId, NodeKind, SNodeDraft};
use crate::network::Network;

fn fixed_clock() -> DateTime<Utc> {
    crate::timestamp::parse("2010-02-18T09:00:00.000Z").expect("valid literal")
}

pub const TOPIC: &str = "software_cost";

fn topic() -> Vec<ContextTerm> {
    vec![ContextTerm::new(TOPIC, 1.0).expect("valid literal")]
}

/// Ids of the software-cost debate, grouped by argument.
#[derive(Debug, Clone)]
pub struct SoftwareCost {
    pub network: Network,
    /// Argument 1 (Jim): position to know.
    pub engineer: NodeId,
    pub jim_says: NodeId,
    pub claim: NodeId,
    pub rule1: NodeId,
    /// Argument 2 (Sally): sign.
    pub java_free: NodeId,
    pub in_java: NodeId,
    pub protege: NodeId,
    pub rule2: NodeId,
    /// Argument 3 (Sally): conflict against argument 1's rule node.
    pub conflict3: NodeId,
    /// Argument 4 (Steve): example, reusing argument 2's conclusion.
    pub typical: NodeId,
    pub java_free_good: NodeId,
    pub rule4: NodeId,
    /// Argument 5 (Tom): preference from one of argument 2's premises.
    pub java_good: NodeId,
    pub pref5: NodeId,
}

impl SoftwareCost {
    /// All scheme nodes, one per argument, in argument order.
    pub fn arguments(&self) -> [&NodeId; 5] {
        [&self.rule1, &self.rule2, &self.conflict3, &self.rule4, &self.pref5]
    }
}

/// Five arguments, four node kinds, one conflict node attacking the rule
/// node of argument 1 rather than its conclusion.
pub fn software_cost() -> SoftwareCost {
    let mut n = Network::new().with_clock(fixed_clock);
    let i = |n: &mut Network, summary: &str, author: &str, c: Certainty| {
        n.create_i_node(INodeDraft::new(summary, author).certainty(c))
            .expect("scenario nodes are valid")
    };
    let s = |n: &mut Network, kind, summary: &str, premises: Vec<NodeId>, concl: &NodeId, scheme: &str, author: &str, c| {
        n.create_s_node(
            SNodeDraft::new(kind, summary, premises, concl.clone(), scheme, author)
                .certainty(c)
                .topic(topic()),
        )
        .expect("scenario nodes are valid")
    };

    let engineer = i(&mut n, "Jim is a software engineer", "jim", Certainty::High);
    let jim_says = i(&mut n, "Jim says that good software costs more", "jim", Certainty::High);
    let claim = n
        .create_i_node(
            INodeDraft::new("Good software costs", "jim")
                .certainty(Certainty::High)
                .text("Good software costs more."),
        )
        .expect("scenario nodes are valid");
    let rule1 = s(
        &mut n,
        NodeKind::RA,
        "Jim is in a position to know that good software costs more",
        vec![engineer.clone(), jim_says.clone()],
        &claim,
        "argument_from_position_to_know",
        "jim",
        Certainty::High,
    );

    let java_free = i(&mut n, "Java apps are usually free", "sally", Certainty::Average);
    let in_java = i(&mut n, "Protege is developed in Java", "sally", Certainty::High);
    let protege = i(&mut n, "Protege is good and free and in Java", "sally", Certainty::High);
    let rule2 = s(
        &mut n,
        NodeKind::RA,
        "Being developed in Java is a sign of being free",
        vec![in_java.clone(), java_free.clone()],
        &protege,
        "argument_from_sign",
        "sally",
        Certainty::High,
    );
    let conflict3 = s(
        &mut n,
        NodeKind::CA,
        "Protege contradicts the rule that good software costs",
        vec![protege.clone()],
        &rule1,
        "conflict",
        "sally",
        Certainty::High,
    );

    let typical = i(&mut n, "Protege is typical of good Java software", "steve", Certainty::Average);
    let java_free_good = i(&mut n, "Good Java software can be free", "steve", Certainty::Average);
    let rule4 = s(
        &mut n,
        NodeKind::RA,
        "Protege is an example of free good Java software",
        vec![protege.clone(), typical.clone()],
        &java_free_good,
        "argument_from_example",
        "steve",
        Certainty::Average,
    );

    let java_good = i(&mut n, "Java applications are good", "tom", Certainty::Average);
    let pref5 = s(
        &mut n,
        NodeKind::PA,
        "Free Java applications are preferred as good",
        vec![java_free.clone()],
        &java_good,
        "preference",
        "tom",
        Certainty::Average,
    );

    SoftwareCost {
        network: n,
        engineer,
        jim_says,
        claim,
        rule1,
        java_free,
        in_java,
        protege,
        rule2,
        conflict3,
        typical,
        java_free_good,
        rule4,
        java_good,
        pref5,
    }
}

/// Two premises feeding one inference node.
#[derive(Debug, Clone)]
pub struct Chain {
    pub network: Network,
    /// High certainty.
    pub i1: NodeId,
    /// Average certainty.
    pub i2: NodeId,
    /// Position to know, very high certainty.
    pub s1: NodeId,
    /// Conclusion, high certainty.
    pub i3: NodeId,
}

pub fn chain() -> Chain {
    let mut n = Network::new().with_clock(fixed_clock);
    let i1 = n
        .create_i_node(INodeDraft::new("Ann is a meteorologist", "ann").certainty(Certainty::High))
        .expect("valid");
    let i2 = n
        .create_i_node(INodeDraft::new("Ann says it will rain", "ann"))
        .expect("valid");
    let i3 = n
        .create_i_node(INodeDraft::new("It will rain", "ann").certainty(Certainty::High))
        .expect("valid");
    let s1 = n
        .create_s_node(
            SNodeDraft::new(NodeKind::RA, "Ann knows the weather", vec![i1.clone(), i2.clone()], i3.clone(), "argument_from_position_to_know", "ann")
                .certainty(Certainty::VeryHigh),
        )
        .expect("valid");
    Chain { network: n, i1, i2, s1, i3 }
}

/// Adds a conflict node (average certainty) with one low-certainty premise
/// attacking `target`; returns `(premise, conflict)`.
pub fn add_conflict(network: &mut Network, target: &NodeId) -> (NodeId, NodeId) {
    let premise = network
        .create_i_node(INodeDraft::new("The forecast model is unreliable", "bob").certainty(Certainty::Low))
        .expect("valid");
    let ca = network
        .create_s_node(SNodeDraft::new(
            NodeKind::CA,
            "Unreliable forecasts undermine the claim",
            vec![premise.clone()],
            target.clone(),
            "conflict",
            "bob",
        ))
        .expect("valid");
    (premise, ca)
}
