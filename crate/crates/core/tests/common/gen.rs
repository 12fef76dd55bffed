//! Random networks for property tests, described as plain data and then
//! built through the public API so every generated network is valid.

use argnet_core::eval::CredibilityConfig;
use argnet_core::{Applied, Certainty, ContextTerm, Event, INodeDraft, Network, NodeId, NodeKind, SNodeDraft};
use proptest::prelude::*;

pub const RA_SCHEMES: [&str; 5] = [
    "argument_from_sign",
    "argument_from_example",
    "argument_from_position_to_know",
    "argument_from_expert_opinion",
    "argument_from_practical_reasoning",
];

pub const TERMS: [&str; 6] = ["Sport", "Football", "Tennis", "Weather", "Rain", "Politics"];

#[derive(Debug, Clone)]
pub struct SSpec {
    pub kind: u8,
    pub premises: Vec<usize>,
    pub conclusion: usize,
    pub certainty: usize,
    pub scheme: usize,
    pub topic: usize,
}

#[derive(Debug, Clone)]
pub struct NetSpec {
    pub i_nodes: Vec<(usize, usize, usize)>,
    pub s_nodes: Vec<SSpec>,
    /// (target pick among RA nodes, cq index pick, resolved?)
    pub cqs: Vec<(usize, usize, bool)>,
}

pub fn net_spec(max_i: usize, max_s: usize) -> impl Strategy<Value = NetSpec> {
    let i_nodes = prop::collection::vec((0usize..5, 0usize..3, 0usize..TERMS.len()), 1..=max_i);
    let s = (
        0u8..3,
        prop::collection::vec(any::<usize>(), 1..=3),
        any::<usize>(),
        0usize..5,
        any::<usize>(),
        0usize..TERMS.len(),
    )
        .prop_map(|(kind, premises, conclusion, certainty, scheme, topic)| SSpec {
            kind,
            premises,
            conclusion,
            certainty,
            scheme,
            topic,
        });
    let s_nodes = prop::collection::vec(s, 0..=max_s);
    let cqs = prop::collection::vec((any::<usize>(), any::<usize>(), any::<bool>()), 0..3);
    (i_nodes, s_nodes, cqs).prop_map(|(i_nodes, s_nodes, cqs)| NetSpec { i_nodes, s_nodes, cqs })
}

pub fn kind_of(k: u8) -> NodeKind {
    match k % 3 {
        0 => NodeKind::RA,
        1 => NodeKind::CA,
        _ => NodeKind::PA,
    }
}

pub fn build(spec: &NetSpec) -> Network {
    build_with(spec, &mut |_| {})
}

fn step(n: &mut Network, ev: Event, hook: &mut dyn FnMut(&Event)) -> Applied {
    hook(&ev);
    n.apply(ev).unwrap()
}

fn applied_node(a: Applied) -> NodeId {
    match a {
        Applied::Node(id) => id,
        other => panic!("expected a node, got {other:?}"),
    }
}

/// Builds the network, passing every event to `hook` before applying it.
pub fn build_with(spec: &NetSpec, hook: &mut dyn FnMut(&Event)) -> Network {
    let mut n = Network::new();
    let mut i_ids: Vec<NodeId> = Vec::new();
    let mut all: Vec<NodeId> = Vec::new();
    let authors = ["ann", "bob", "cat"];
    for (idx, (cert, author, term)) in spec.i_nodes.iter().enumerate() {
        let ev = n
            .plan_i_node(
                INodeDraft::new(format!("claim {idx}"), authors[*author])
                    .certainty(Certainty::ALL[*cert])
                    .context(vec![ContextTerm::new(TERMS[*term], 0.5 + 0.1 * (*cert as f64)).unwrap()]),
            )
            .unwrap();
        let id = applied_node(step(&mut n, ev, hook));
        i_ids.push(id.clone());
        all.push(id);
    }
    let mut ra_ids: Vec<NodeId> = Vec::new();
    for (idx, s) in spec.s_nodes.iter().enumerate() {
        let kind = kind_of(s.kind);
        let premises: Vec<NodeId> = s.premises.iter().map(|p| i_ids[p % i_ids.len()].clone()).collect();
        let conclusion = all[s.conclusion % all.len()].clone();
        let scheme = match kind {
            NodeKind::RA => RA_SCHEMES[s.scheme % RA_SCHEMES.len()],
            NodeKind::CA => "conflict",
            _ => "preference",
        };
        let draft = SNodeDraft::new(kind, format!("scheme {idx}"), premises, conclusion, scheme, authors[idx % 3])
            .certainty(Certainty::ALL[s.certainty])
            .topic(vec![ContextTerm::new(TERMS[s.topic], 1.0).unwrap()]);
        // Drafts the network rejects are skipped.
        if let Ok(ev) = n.plan_s_node(draft) {
            let id = applied_node(step(&mut n, ev, hook));
            if kind == NodeKind::RA {
                ra_ids.push(id.clone());
            }
            all.push(id);
        }
    }
    if !ra_ids.is_empty() {
        for (t, idx, resolved) in &spec.cqs {
            let target = ra_ids[t % ra_ids.len()].clone();
            let len = n
                .schemes()
                .get(n.node(&target).unwrap().scheme.as_deref().unwrap())
                .unwrap()
                .critical_questions
                .len();
            if len == 0 {
                continue;
            }
            let ev = n.plan_raise_cq(&target, idx % len, "why?", "dan").unwrap();
            let cq = match step(&mut n, ev, hook) {
                Applied::Cq(cq) => cq.id,
                other => panic!("expected a cq, got {other:?}"),
            };
            if *resolved {
                let ev = n.plan_resolve_cq(&cq, "because").unwrap();
                step(&mut n, ev, hook);
            }
        }
    }
    n
}

pub fn taxonomy_tsv() -> &'static str {
    "Football\tSport\nTennis\tSport\nRain\tWeather\n"
}

/// Scenario-shaped weights with random magnitudes; conflict is non-positive
/// and preference non-negative.
pub fn signed_config() -> impl Strategy<Value = CredibilityConfig> {
    (
        0.0f64..1.0,
        0.0f64..1.0,
        0.0f64..1.0,
        -2.0f64..=0.0,
        0.0f64..2.0,
        0.0f64..1.0,
        any::<bool>(),
        any::<bool>(),
    )
        .prop_map(|(c, u, m, a, p, s, attack_sum, pref_count)| {
            let mut cfg = CredibilityConfig::scenario_2010();
            cfg.w_cert = c;
            cfg.w_usage = u;
            cfg.w_minsup = m;
            cfg.w_conflict = a;
            cfg.w_pref = p;
            cfg.w_scheme = s;
            cfg.attack_mode = if attack_sum { "credibility_sum" } else { "count" }.into();
            cfg.preference_mode = if pref_count { "count" } else { "credibility_sum" }.into();
            cfg
        })
}
