//! The randomized property suite, shared by the `properties` test target
//! and the acceptance summary.

use std::collections::BTreeSet;
use std::io::BufReader;

use super::dot::parse_dot;
use super::gen::{build, build_with, net_spec, signed_config, taxonomy_tsv, TERMS};
use super::oracle::Oracle;
use argnet_core::eval::{CredibilityConfig, Evaluator};
use argnet_core::interchange::{
    export_document, export_dot, import_document, replay_events, EventLog, ExportOptions, InterchangeDocument,
};
use argnet_core::query::{run_query_with, DateRange, QuerySpec};
use argnet_core::{
    argument_tree, explanation, Certainty, ContextTerm, INodeDraft, Network, NodeId, NodeKind, SNodeDraft,
    Taxonomy,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Adds a scheme node of `kind` with one fresh premise concluding at `target`.
fn attach(net: &mut Network, kind: NodeKind, target: &NodeId, cert: Certainty) {
    let p = net
        .create_i_node(INodeDraft::new("fresh premise", "zed").certainty(cert))
        .unwrap();
    let scheme = if kind == NodeKind::CA {
        "conflict"
    } else {
        "preference"
    };
    net.create_s_node(SNodeDraft::new(kind, "fresh", vec![p], target.clone(), scheme, "zed").certainty(cert))
        .unwrap();
}

fn preference_never_lowers(r: &mut TestRunner) -> Result<(), String> {
    r.run(
        &(net_spec(8, 8), signed_config(), any::<usize>(), 0usize..5),
        |(spec, cfg, pick, cert)| {
            let base = build(&spec);
            let ids: Vec<NodeId> = base.snapshot().nodes().map(|n| n.id.clone()).collect();
            let target = &ids[pick % ids.len()];
            let before = Evaluator::new(&base.snapshot(), &cfg)
                .unwrap()
                .credibility(target)
                .unwrap();
            let mut more = base.clone();
            attach(&mut more, NodeKind::PA, target, Certainty::ALL[cert]);
            let after = Evaluator::new(&more.snapshot(), &cfg)
                .unwrap()
                .credibility(target)
                .unwrap();
            prop_assert_eq!(before.u, after.u);
            prop_assert!(after.total >= before.total, "{} < {}", after.total, before.total);
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

fn conflict_never_raises(r: &mut TestRunner) -> Result<(), String> {
    r.run(
        &(net_spec(8, 8), signed_config(), any::<usize>(), 0usize..5),
        |(spec, cfg, pick, cert)| {
            let base = build(&spec);
            let ids: Vec<NodeId> = base.snapshot().nodes().map(|n| n.id.clone()).collect();
            let target = &ids[pick % ids.len()];
            for mode in ["count", "credibility_sum"] {
                let cfg = cfg.clone().with_attack_mode(mode);
                let before = Evaluator::new(&base.snapshot(), &cfg)
                    .unwrap()
                    .credibility(target)
                    .unwrap();
                let mut more = base.clone();
                attach(&mut more, NodeKind::CA, target, Certainty::ALL[cert]);
                let after = Evaluator::new(&more.snapshot(), &cfg)
                    .unwrap()
                    .credibility(target)
                    .unwrap();
                prop_assert_eq!(before.u, after.u);
                prop_assert!(
                    after.total <= before.total,
                    "{}: {} > {}",
                    mode,
                    after.total,
                    before.total
                );
            }
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

fn weakest_link(r: &mut TestRunner) -> Result<(), String> {
    r.run(
        &(
            prop::collection::vec(0usize..4, 2..=5),
            any::<usize>(),
            signed_config(),
            0.01f64..1.0,
        ),
        |(certs, which, cfg, w_cert)| {
            let cfg = CredibilityConfig { w_cert, ..cfg };
            let build_s = |certs: &[usize]| {
                let mut n = Network::new();
                let c = n.create_i_node(INodeDraft::new("c", "u")).unwrap();
                let ps: Vec<NodeId> = certs
                    .iter()
                    .map(|k| {
                        n.create_i_node(INodeDraft::new("p", "u").certainty(Certainty::ALL[*k]))
                            .unwrap()
                    })
                    .collect();
                let s = n
                    .create_s_node(SNodeDraft::new(
                        NodeKind::RA,
                        "s",
                        ps,
                        c,
                        "argument_from_sign",
                        "u",
                    ))
                    .unwrap();
                let snap = n.snapshot();
                Evaluator::new(&snap, &cfg).unwrap().credibility(&s).unwrap().m
            };
            let base = build_s(&certs);
            let min_k = *certs.iter().min().unwrap();
            let min_pos = certs.iter().position(|k| *k == min_k).unwrap();

            // Raise a premise that is not the unique minimum.
            let others: Vec<usize> = (0..certs.len()).filter(|i| certs[*i] > min_k).collect();
            if !others.is_empty() {
                let i = others[which % others.len()];
                let mut raised = certs.clone();
                raised[i] = 4;
                prop_assert_eq!(build_s(&raised).to_bits(), base.to_bits());
            }
            if min_k > 0 {
                let mut lowered = certs.clone();
                lowered[min_pos] = min_k - 1;
                prop_assert!(build_s(&lowered) < base);
            }
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

fn evaluation_is_deterministic(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(net_spec(8, 8), signed_config()), |(spec, cfg)| {
        let a = build(&spec).snapshot();
        let b = build(&spec).snapshot();
        for node in a.nodes() {
            let ea = Evaluator::new(&a, &cfg).unwrap().evaluate_root(&node.id).unwrap();
            let eb = Evaluator::new(&b, &cfg).unwrap().evaluate_root(&node.id).unwrap();
            let bits = |e: &argnet_core::eval::TreeEvaluation| {
                e.breakdowns()
                    .iter()
                    .map(|b| b.total.to_bits())
                    .collect::<Vec<_>>()
            };
            prop_assert_eq!(bits(&ea), bits(&eb));
            prop_assert_eq!(
                explanation(&node.id, &a, &cfg).unwrap().path,
                explanation(&node.id, &b, &cfg).unwrap().path
            );
        }
        Ok(())
    })
    .map_err(|e| e.to_string())
}

fn scheme_weight_rescaling_is_invisible(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(net_spec(8, 8), signed_config(), -3i32..=3), |(spec, cfg, j)| {
        let k = 2f64.powi(j);
        let mut scaled = cfg.clone();
        scaled.w_scheme = cfg.w_scheme / k;
        for w in scaled.scheme_weights.values_mut() {
            *w *= k;
        }
        let snap = build(&spec).snapshot();
        for node in snap.nodes() {
            let a = argnet_core::validity(&node.id, &snap, &cfg).unwrap();
            let b = argnet_core::validity(&node.id, &snap, &scaled).unwrap();
            prop_assert_eq!(a.valid, b.valid);
            prop_assert_eq!(a.credibility.to_bits(), b.credibility.to_bits());
            prop_assert_eq!(
                explanation(&node.id, &snap, &cfg).unwrap().path,
                explanation(&node.id, &snap, &scaled).unwrap().path
            );
        }
        Ok(())
    })
    .map_err(|e| e.to_string())
}

fn greedy_path_matches_oracle(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(net_spec(4, 4), signed_config()), |(spec, cfg)| {
        let snap = build(&spec).snapshot();
        prop_assert!(snap.len() <= 8);
        let oracle = Oracle::new(&snap, &cfg);
        for node in snap.nodes() {
            let got = explanation(&node.id, &snap, &cfg).unwrap();
            prop_assert_eq!(&got.path, &oracle.greedy_path(&node.id));
            prop_assert_eq!(got.path_credibilities.len(), got.path.len());
        }
        Ok(())
    })
    .map_err(|e| e.to_string())
}

fn taxonomy() -> Taxonomy {
    Taxonomy::parse_tsv(taxonomy_tsv()).unwrap()
}

#[derive(Debug, Clone)]
struct Filters {
    kinds: Option<BTreeSet<NodeKind>>,
    schemes: Option<BTreeSet<String>>,
    author: Option<String>,
    domain: Option<String>,
    min_support: Option<f64>,
    context: Option<Vec<ContextTerm>>,
    target: Option<usize>,
    window: Option<bool>,
}

fn filters() -> impl Strategy<Value = Filters> {
    let kinds = prop::option::of(prop::collection::btree_set(
        prop_oneof![
            Just(NodeKind::I),
            Just(NodeKind::RA),
            Just(NodeKind::CA),
            Just(NodeKind::PA)
        ],
        1..=3,
    ));
    let schemes = prop::option::of(prop::collection::btree_set(
        prop_oneof![
            Just("argument_from_sign".to_string()),
            Just("argument_from_expert_opinion".to_string()),
            Just("conflict".to_string()),
            Just("preference".to_string())
        ],
        1..=2,
    ));
    let author = prop::option::of(prop_oneof![
        Just("ann".to_string()),
        Just("bob".to_string()),
        Just("nobody".to_string())
    ]);
    let domain = prop::option::of(
        prop::sample::select(vec!["Sport", "Football", "Weather", "Politics", "Chess"])
            .prop_map(String::from),
    );
    let min_support = prop::option::of(-1.0f64..3.0);
    let context = prop::option::of(
        (prop::sample::select(TERMS.to_vec()), 0.1f64..=1.0)
            .prop_map(|(t, w)| vec![ContextTerm::new(t, w).unwrap()]),
    );
    let target = prop::option::of(any::<usize>());
    let window = prop::option::of(any::<bool>());
    (
        kinds,
        schemes,
        author,
        domain,
        min_support,
        context,
        target,
        window,
    )
        .prop_map(
            |(kinds, schemes, author, domain, min_support, context, target, window)| Filters {
                kinds,
                schemes,
                author,
                domain,
                min_support,
                context,
                target,
                window,
            },
        )
}

impl Filters {
    /// One spec per present filter, each holding only that filter.
    fn singles(&self, ids: &[NodeId]) -> Vec<QuerySpec> {
        let full = self.spec(ids);
        let mut out = Vec::new();
        let empty = QuerySpec::default();
        if full.kind_filter.is_some() {
            out.push(QuerySpec {
                kind_filter: full.kind_filter.clone(),
                ..empty.clone()
            });
        }
        if full.scheme_filter.is_some() {
            out.push(QuerySpec {
                scheme_filter: full.scheme_filter.clone(),
                ..empty.clone()
            });
        }
        if full.author_filter.is_some() {
            out.push(QuerySpec {
                author_filter: full.author_filter.clone(),
                ..empty.clone()
            });
        }
        if full.domain_term.is_some() {
            out.push(QuerySpec {
                domain_term: full.domain_term.clone(),
                ..empty.clone()
            });
        }
        if full.min_support.is_some() {
            out.push(QuerySpec {
                min_support: full.min_support,
                ..empty.clone()
            });
        }
        if full.context.is_some() {
            out.push(QuerySpec {
                context: full.context.clone(),
                ..empty.clone()
            });
        }
        if full.target.is_some() {
            out.push(QuerySpec {
                target: full.target.clone(),
                ..empty.clone()
            });
        }
        if full.date_range.is_some() {
            out.push(QuerySpec {
                date_range: full.date_range.clone(),
                ..empty.clone()
            });
        }
        out
    }

    fn spec(&self, ids: &[NodeId]) -> QuerySpec {
        let ts = |s: &str| argnet_core::timestamp::parse(s).unwrap();
        QuerySpec {
            kind_filter: self.kinds.clone(),
            scheme_filter: self.schemes.clone(),
            author_filter: self.author.clone(),
            date_range: self.window.map(|wide| DateRange {
                from: ts(if wide {
                    "2000-01-01T00:00:00Z"
                } else {
                    "2001-01-01T00:00:00Z"
                }),
                to: ts(if wide {
                    "2100-01-01T00:00:00Z"
                } else {
                    "2002-01-01T00:00:00Z"
                }),
            }),
            domain_term: self.domain.clone(),
            min_support: self.min_support,
            context: self.context.clone(),
            context_threshold: None,
            target: self.target.map(|t| ids[t % ids.len()].clone()),
        }
    }
}

fn query_filters_conjoin(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(net_spec(8, 8), filters()), |(spec, f)| {
        let snap = build(&spec).snapshot();
        let ids: Vec<NodeId> = snap.nodes().map(|n| n.id.clone()).collect();
        let cfg = CredibilityConfig::scenario_2010();
        let tax = taxonomy();
        let singles = f.singles(&ids);
        prop_assume!(!singles.is_empty());

        let whole = run_query_with(&f.spec(&ids), &snap, &cfg, &tax).unwrap();
        let got: BTreeSet<NodeId> = whole.ids().into_iter().collect();
        let mut want: BTreeSet<NodeId> = ids.iter().cloned().collect();
        for single in &singles {
            let r: BTreeSet<NodeId> = run_query_with(single, &snap, &cfg, &tax)
                .unwrap()
                .ids()
                .into_iter()
                .collect();
            want = want.intersection(&r).cloned().collect();
        }
        prop_assert_eq!(&got, &want);

        // Ordering: descending credibility, then ascending id, no duplicates.
        prop_assert_eq!(whole.hits.len(), got.len());
        for w in whole.hits.windows(2) {
            prop_assert!(
                w[0].credibility > w[1].credibility
                    || (w[0].credibility == w[1].credibility && w[0].node < w[1].node)
            );
        }
        Ok(())
    })
    .map_err(|e| e.to_string())
}

fn adding_filters_never_grows(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(net_spec(8, 8), filters(), filters()), |(spec, f, extra)| {
        let snap = build(&spec).snapshot();
        let ids: Vec<NodeId> = snap.nodes().map(|n| n.id.clone()).collect();
        let cfg = CredibilityConfig::scenario_2010();
        let tax = taxonomy();
        let base = f.spec(&ids);
        prop_assume!(base.validate().is_ok());
        let more = extra.spec(&ids);
        let combined = QuerySpec {
            kind_filter: base.kind_filter.clone().or(more.kind_filter),
            scheme_filter: base.scheme_filter.clone().or(more.scheme_filter),
            author_filter: base.author_filter.clone().or(more.author_filter),
            date_range: base.date_range.clone().or(more.date_range),
            domain_term: base.domain_term.clone().or(more.domain_term),
            min_support: base.min_support.or(more.min_support),
            context: base.context.clone().or(more.context),
            context_threshold: None,
            target: base.target.clone().or(more.target),
        };
        let small: BTreeSet<NodeId> = run_query_with(&combined, &snap, &cfg, &tax)
            .unwrap()
            .ids()
            .into_iter()
            .collect();
        let big: BTreeSet<NodeId> = run_query_with(&base, &snap, &cfg, &tax)
            .unwrap()
            .ids()
            .into_iter()
            .collect();
        prop_assert!(small.is_subset(&big));
        Ok(())
    })
    .map_err(|e| e.to_string())
}

fn taxonomy_descent_is_transitive(r: &mut TestRunner) -> Result<(), String> {
    r.run(
        &(prop::collection::vec(any::<Option<usize>>(), 1..25),),
        |(parents,)| {
            // Each term's parent is an earlier term, so the edges form a forest.
            let mut edges = Vec::new();
            for (i, p) in parents.iter().enumerate() {
                if let (Some(p), true) = (p, i > 0) {
                    edges.push((format!("t{i}"), format!("t{}", p % i)));
                }
            }
            let tax = Taxonomy::from_edges(edges.iter().map(|(c, p)| (c.as_str(), p.as_str()))).unwrap();
            let terms: Vec<String> = (0..parents.len()).map(|i| format!("t{i}")).collect();
            for a in &terms {
                prop_assert!(!tax.is_descendant(a, a));
                prop_assert!(tax.subsumed_by(a, a));
                for b in &terms {
                    if !tax.is_descendant(a, b) {
                        continue;
                    }
                    prop_assert!(!tax.is_descendant(b, a));
                    for c in &terms {
                        if tax.is_descendant(b, c) {
                            prop_assert!(tax.is_descendant(a, c));
                        }
                    }
                }
            }
            let reparsed = Taxonomy::parse_tsv(&tax.to_tsv()).unwrap();
            prop_assert_eq!(reparsed, tax);
            Ok(())
        },
    )
    .map_err(|e| e.to_string())
}

fn export_import_round_trip(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(net_spec(8, 8),), |(spec,)| {
        let snap = build(&spec).snapshot();
        let doc = export_document(
            &snap,
            &ExportOptions::with_config(CredibilityConfig::scenario_2010()),
        );
        let text = doc.to_json();
        let back = import_document(&InterchangeDocument::from_json(&text).unwrap()).unwrap();
        prop_assert_eq!(back.node_map(), snap.node_map());
        prop_assert_eq!(back.usage_index(), snap.usage_index());
        prop_assert_eq!(back.blocked(), snap.blocked());
        prop_assert!(back == snap);
        let again = export_document(
            &back,
            &ExportOptions::with_config(CredibilityConfig::scenario_2010()),
        )
        .to_json();
        prop_assert_eq!(again, text);
        Ok(())
    })
    .map_err(|e| e.to_string())
}

fn event_log_replay(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(net_spec(8, 8),), |(spec,)| {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("events.ndjson");
        let (mut log, _) = EventLog::open(&path).unwrap();
        let mut seqs = Vec::new();
        let net = build_with(&spec, &mut |ev| seqs.push(log.append(ev).unwrap()));
        prop_assert!(seqs.windows(2).all(|w| w[1] == w[0] + 1));
        let replayed = replay_events(BufReader::new(std::fs::File::open(&path).unwrap())).unwrap();
        prop_assert!(replayed == net.snapshot());
        Ok(())
    })
    .map_err(|e| e.to_string())
}

fn emitted_dot_parses(r: &mut TestRunner) -> Result<(), String> {
    r.run(&(net_spec(8, 8),), |(spec,)| {
        let snap = build(&spec).snapshot();
        let cfg = CredibilityConfig::scenario_2010();
        for node in snap.nodes() {
            let tree = argument_tree(&node.id, &snap).unwrap();
            let dot = export_dot(&tree, &snap, &cfg).unwrap();
            let g = parse_dot(&dot).map_err(|e| TestCaseError::fail(format!("{e}\n{dot}")))?;
            prop_assert!(g.directed);
            prop_assert_eq!(g.nodes.len(), tree.node_ids().len());
            for (id, attrs) in &g.nodes {
                let kind = snap.node(&NodeId::from(id.as_str())).unwrap().kind;
                let want = match kind {
                    NodeKind::I => "white",
                    NodeKind::RA => "green",
                    NodeKind::CA => "red",
                    NodeKind::PA => "blue",
                };
                prop_assert_eq!(attrs.get("fillcolor").map(String::as_str), Some(want));
            }
            let solid: BTreeSet<(NodeId, NodeId)> = tree.edges().into_iter().map(|(p, c)| (c, p)).collect();
            let dashed: BTreeSet<(NodeId, NodeId)> = tree
                .pruned_edges()
                .iter()
                .map(|(p, c)| (c.clone(), p.clone()))
                .filter(|e| !solid.contains(e))
                .collect();
            prop_assert_eq!(g.edges.len(), solid.len() + dashed.len());
            let dashed_seen = g
                .edges
                .iter()
                .filter(|(_, _, a)| a.get("style").map(String::as_str) == Some("dashed"))
                .count();
            prop_assert_eq!(dashed_seen, dashed.len());
        }
        Ok(())
    })
    .map_err(|e| e.to_string())
}

pub struct Property {
    pub name: &'static str,
    pub cases: u32,
    check: fn(&mut TestRunner) -> Result<(), String>,
}

impl Property {
    pub fn run(&self) -> Result<(), String> {
        let mut r = TestRunner::new(Config {
            cases: self.cases,
            failure_persistence: None,
            ..Config::default()
        });
        (self.check)(&mut r)
    }
}

pub fn suite() -> Vec<Property> {
    vec![
        Property {
            name: "preference_never_lowers",
            cases: 200,
            check: preference_never_lowers,
        },
        Property {
            name: "conflict_never_raises",
            cases: 200,
            check: conflict_never_raises,
        },
        Property {
            name: "weakest_link",
            cases: 200,
            check: weakest_link,
        },
        Property {
            name: "evaluation_is_deterministic",
            cases: 200,
            check: evaluation_is_deterministic,
        },
        Property {
            name: "scheme_weight_rescaling_is_invisible",
            cases: 200,
            check: scheme_weight_rescaling_is_invisible,
        },
        Property {
            name: "greedy_path_matches_oracle",
            cases: 500,
            check: greedy_path_matches_oracle,
        },
        Property {
            name: "query_filters_conjoin",
            cases: 200,
            check: query_filters_conjoin,
        },
        Property {
            name: "adding_filters_never_grows",
            cases: 200,
            check: adding_filters_never_grows,
        },
        Property {
            name: "taxonomy_descent_is_transitive",
            cases: 200,
            check: taxonomy_descent_is_transitive,
        },
        Property {
            name: "export_import_round_trip",
            cases: 200,
            check: export_import_round_trip,
        },
        Property {
            name: "event_log_replay",
            cases: 200,
            check: event_log_replay,
        },
        Property {
            name: "emitted_dot_parses",
            cases: 200,
            check: emitted_dot_parses,
        },
    ]
}

/// Runs one property by name, panicking with the shrunk counterexample.
pub fn check(name: &str) {
    let p = suite()
        .into_iter()
        .find(|p| p.name == name)
        .expect("known property");
    if let Err(e) = p.run() {
        panic!("{name}: {e}");
    }
}
