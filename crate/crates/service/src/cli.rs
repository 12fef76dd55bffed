use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use argnet_core::eval::{CredibilityConfig, SCENARIO_2010};
use argnet_core::interchange::InterchangeDocument;
use argnet_core::query::DateRange;
use argnet_core::{
    Certainty, ContextTerm, INodeDraft, NetworkSnapshot, NodeId, NodeKind, QuerySpec, SNodeDraft, SchemeDescriptor,
    Taxonomy,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::ServiceError;
use crate::ops::{self, RaiseCq, ResolveCq};
use crate::server::{serve, ServiceConfig};
use crate::store::Store;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// JSON in the interchange format.
    Doc,
}

#[derive(Debug, Parser)]
#[command(name = "argnet", version, about = "Argument network engine")]
pub struct Cli {
    /// Directory holding the event log, checkpoint and config.
    #[arg(long, env = "ARGNET_DATA_DIR", default_value = "argnet-data", global = true)]
    pub data_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Config preset used when the data directory has no config yet.
    #[arg(long, default_value = SCENARIO_2010, global = true)]
    pub preset: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Create an I-node.
    AddI(AddI),
    /// Create a scheme application (RA, CA or PA node).
    AddS(AddS),
    #[command(subcommand)]
    Schemes(SchemesCmd),
    #[command(subcommand)]
    Cq(CqCmd),
    /// Credibility breakdown and validity verdict.
    Eval { id: String },
    /// Best explanation for a node.
    Explain { id: String },
    /// Contradiction degree over the network or one topic.
    Dc {
        #[arg(long)]
        weighted: bool,
        #[arg(long)]
        topic: Option<String>,
    },
    Query(QueryArgs),
    /// Print the network as a document, or one argument tree as DOT.
    Export {
        #[arg(long, value_name = "ROOT", conflicts_with = "doc")]
        dot: Option<String>,
        #[arg(long)]
        doc: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Merge a document, or a `child<TAB>parent` taxonomy with --taxonomy.
    Import {
        file: PathBuf,
        #[arg(long)]
        taxonomy: bool,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        listen: String,
        /// Allowed CORS origin; repeat for several, `*` for any.
        #[arg(long = "cors")]
        cors: Vec<String>,
    },
    #[command(subcommand)]
    Config(ConfigCmd),
}

#[derive(Debug, Args)]
pub struct AddI {
    #[arg(long)]
    summary: String,
    #[arg(long)]
    author: String,
    #[arg(long)]
    certainty: Option<Certainty>,
    #[arg(long, default_value = "")]
    text: String,
    #[arg(long)]
    url: Option<String>,
    /// `weight:term`, repeatable.
    #[arg(long)]
    context: Vec<ContextTerm>,
}

#[derive(Debug, Args)]
pub struct AddS {
    #[arg(long)]
    kind: NodeKind,
    #[arg(long)]
    summary: String,
    #[arg(long = "premise", required = true)]
    premises: Vec<String>,
    #[arg(long)]
    conclusion: String,
    #[arg(long)]
    scheme: String,
    #[arg(long)]
    author: String,
    #[arg(long)]
    certainty: Option<Certainty>,
    /// `weight:term`, repeatable.
    #[arg(long)]
    topic: Vec<ContextTerm>,
    #[arg(long)]
    default_form: Option<String>,
    #[arg(long, default_value = "")]
    text: String,
    #[arg(long)]
    url: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum SchemesCmd {
    List,
    /// Register a scheme from a JSON descriptor file.
    Add { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum CqCmd {
    Raise {
        target: String,
        index: usize,
        #[arg(long, default_value = "")]
        text: String,
        #[arg(long)]
        by: String,
    },
    Resolve {
        id: String,
        #[arg(long, default_value = "")]
        text: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConfigCmd {
    /// Replace the active config with a named preset.
    Preset { name: String },
    Show,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    /// Start from a QuerySpec document; flags below override its fields.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long = "kind")]
    kinds: Vec<NodeKind>,
    #[arg(long = "scheme")]
    schemes: Vec<String>,
    #[arg(long)]
    author: Option<String>,
    /// Inclusive start, RFC 3339.
    #[arg(long, requires = "to")]
    from: Option<String>,
    /// Exclusive end, RFC 3339.
    #[arg(long, requires = "from")]
    to: Option<String>,
    #[arg(long)]
    domain: Option<String>,
    #[arg(long)]
    min_support: Option<f64>,
    /// `weight:term`, repeatable.
    #[arg(long)]
    context: Vec<ContextTerm>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    target: Option<String>,
}

impl QueryArgs {
    fn to_spec(&self) -> Result<QuerySpec, ServiceError> {
        let mut spec = match &self.spec {
            Some(path) => serde_json::from_str(&fs::read_to_string(path)?)
                .map_err(|e| ServiceError::BadRequest(format!("{}: {e}", path.display())))?,
            None => QuerySpec::default(),
        };
        if !self.kinds.is_empty() {
            spec.kind_filter = Some(self.kinds.iter().copied().collect::<BTreeSet<_>>());
        }
        if !self.schemes.is_empty() {
            spec.scheme_filter = Some(self.schemes.iter().cloned().collect());
        }
        if let Some(a) = &self.author {
            spec.author_filter = Some(a.clone());
        }
        if let (Some(from), Some(to)) = (&self.from, &self.to) {
            let ts = |s: &str| {
                argnet_core::timestamp::parse(s).map_err(|e| ServiceError::BadRequest(format!("`{s}`: {e}")))
            };
            spec.date_range = Some(DateRange {
                from: ts(from)?,
                to: ts(to)?,
            });
        }
        if let Some(d) = &self.domain {
            spec.domain_term = Some(d.clone());
        }
        if let Some(m) = self.min_support {
            spec.min_support = Some(m);
        }
        if !self.context.is_empty() {
            spec.context = Some(self.context.clone());
        }
        if let Some(t) = self.threshold {
            spec.context_threshold = Some(t);
        }
        if let Some(t) = &self.target {
            spec.target = Some(node_id(t)?);
        }
        Ok(spec)
    }
}

fn node_id(raw: &str) -> Result<NodeId, ServiceError> {
    NodeId::new(raw).map_err(|e| ServiceError::BadRequest(e.to_string()))
}

/// A command's result in both renderings.
struct Output {
    text: String,
    doc: serde_json::Value,
}

impl Output {
    fn new(text: impl Into<String>, doc: &impl Serialize) -> Self {
        Output {
            text: text.into(),
            doc: serde_json::to_value(doc).expect("outputs serialize"),
        }
    }
}

fn summary(snap: &NetworkSnapshot, id: &NodeId) -> String {
    snap.node(id).map(|n| n.summary.clone()).unwrap_or_default()
}

fn execute(cli: Cli) -> Result<Output, ServiceError> {
    let open = || Store::open(&cli.data_dir, &cli.preset);
    Ok(match cli.command {
        Command::AddI(a) => {
            let mut store = open()?;
            let mut draft = INodeDraft::new(a.summary, a.author).text(a.text).context(a.context);
            draft.certainty = a.certainty;
            draft.support_url = a.url;
            let node = ops::add_i_node(&mut store, draft)?;
            Output::new(node.id.to_string(), &node)
        }
        Command::AddS(a) => {
            let mut store = open()?;
            let premises = a.premises.iter().map(|p| node_id(p)).collect::<Result<Vec<_>, _>>()?;
            let mut draft =
                SNodeDraft::new(a.kind, a.summary, premises, node_id(&a.conclusion)?, a.scheme, a.author).topic(a.topic);
            draft.certainty = a.certainty;
            draft.default_form = a.default_form;
            draft.text = a.text;
            draft.support_url = a.url;
            let node = ops::add_s_node(&mut store, draft)?;
            Output::new(node.id.to_string(), &node)
        }
        Command::Schemes(SchemesCmd::List) => {
            let store = open()?;
            let schemes: Vec<SchemeDescriptor> = store.network().schemes().iter().cloned().collect();
            let text = schemes
                .iter()
                .map(|s| {
                    format!(
                        "{}\t{}\t{} premises\t{} questions\t{}",
                        s.id,
                        s.scheme_kind,
                        s.premise_descriptors.len(),
                        s.critical_questions.len(),
                        s.name
                    )
                })
                .collect::<Vec<_>>()
                .join("\n");
            Output::new(text, &schemes)
        }
        Command::Schemes(SchemesCmd::Add { file }) => {
            let d: SchemeDescriptor = serde_json::from_str(&fs::read_to_string(&file)?)
                .map_err(|e| ServiceError::BadRequest(format!("{}: {e}", file.display())))?;
            let mut store = open()?;
            let d = ops::add_scheme(&mut store, d)?;
            Output::new(d.id.clone(), &d)
        }
        Command::Cq(CqCmd::Raise { target, index, text, by }) => {
            let mut store = open()?;
            let req = RaiseCq {
                target: node_id(&target)?,
                cq_index: index,
                challenge_text: text,
                raised_by: by,
            };
            let cq = ops::raise_cq(&mut store, req)?;
            Output::new(cq.id.clone(), &cq)
        }
        Command::Cq(CqCmd::Resolve { id, text }) => {
            let mut store = open()?;
            let cq = ops::resolve_cq(&mut store, &id, ResolveCq { resolution_text: text })?;
            Output::new(format!("{} resolved", cq.id), &cq)
        }
        Command::Eval { id } => {
            let store = open()?;
            let snap = store.snapshot();
            let id = node_id(&id)?;
            let v = ops::validity(&snap, store.config(), &id)?;
            let b = &v.breakdown;
            let verdict = if v.valid { "valid" } else { "invalid" };
            let cmp = if v.valid { ">" } else { "<=" };
            let text = format!(
                "{id} {}\nc {}  u {}  m {}  a {}  p {}  s {}\ntotal {}\nverdict {verdict} ({} {cmp} balance point {})\n{}",
                summary(&snap, &id),
                b.c,
                b.u,
                b.m,
                b.a,
                b.p,
                b.s,
                b.total,
                v.credibility,
                v.balance_point,
                v.status
            );
            Output::new(text, &v)
        }
        Command::Explain { id } => {
            let store = open()?;
            let snap = store.snapshot();
            let e = ops::explanation(&snap, store.config(), &node_id(&id)?)?;
            let mut text = e.text.clone();
            for (id, cred) in e.path.iter().zip(&e.path_credibilities) {
                text.push_str(&format!("\n  {id}  {cred:.4}  {}", summary(&snap, id)));
            }
            Output::new(text, &e)
        }
        Command::Dc { weighted, topic } => {
            let store = open()?;
            let r = ops::contradiction(&store.snapshot(), store.config(), topic.as_deref(), weighted)?;
            Output::new(r.value.to_string(), &r)
        }
        Command::Query(q) => {
            let spec = q.to_spec()?;
            let store = open()?;
            let snap = store.snapshot();
            let r = ops::query(&snap, store.config(), &spec)?;
            let mut lines: Vec<String> = r.warnings.iter().map(|w| format!("warning: {w}")).collect();
            lines.extend(r.hits.iter().map(|h| format!("{}\t{:.4}\t{}", h.node, h.credibility, summary(&snap, &h.node))));
            Output::new(lines.join("\n"), &r)
        }
        Command::Export { dot, doc: _, out } => {
            let store = open()?;
            let snap = store.snapshot();
            let output = match dot {
                Some(root) => {
                    let dot = ops::tree_dot(&snap, store.config(), &node_id(&root)?)?;
                    Output::new(dot.trim_end().to_string(), &dot)
                }
                None => {
                    let d = ops::document(&snap, store.config());
                    Output::new(d.to_json().trim_end().to_string(), &d)
                }
            };
            match out {
                Some(path) => {
                    let mut body = if cli.format == Format::Doc && !output.doc.is_string() {
                        serde_json::to_string_pretty(&output.doc).expect("json")
                    } else {
                        output.text.clone()
                    };
                    body.push('\n');
                    fs::write(&path, body)?;
                    Output::new(format!("wrote {}", path.display()), &path)
                }
                None => output,
            }
        }
        Command::Import { file, taxonomy } => {
            let text = fs::read_to_string(&file)?;
            let doc = if taxonomy {
                let mut d = InterchangeDocument::empty();
                d.taxonomy = Some(Taxonomy::parse_tsv(&text)?);
                d
            } else {
                InterchangeDocument::from_json(&text)?
            };
            let mut store = open()?;
            let n = ops::import(&mut store, doc)?;
            Output::new(format!("imported {n} nodes"), &serde_json::json!({ "imported": n }))
        }
        Command::Serve { listen, cors } => {
            let config = ServiceConfig {
                listen_address: listen,
                data_directory: cli.data_dir.clone(),
                active_config_preset: cli.preset.clone(),
                cors_allowed_origins: cors,
            };
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(serve(config, async {
                let _ = tokio::signal::ctrl_c().await;
            }))?;
            Output::new("", &serde_json::Value::Null)
        }
        Command::Config(ConfigCmd::Preset { name }) => {
            let config = CredibilityConfig::preset(&name).ok_or_else(|| ServiceError::UnknownPreset(name.clone()))?;
            let mut store = open()?;
            store.set_config(config)?;
            Output::new(format!("active config: {name}"), store.config())
        }
        Command::Config(ConfigCmd::Show) => {
            let store = open()?;
            let text = serde_json::to_string_pretty(store.config()).expect("config serializes");
            Output::new(text, store.config())
        }
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return e.exit_code();
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(o) => {
            let body = match format {
                Format::Text => o.text,
                Format::Doc => serde_json::to_string_pretty(&o.doc).expect("json"),
            };
            if !body.is_empty() {
                let _ = writeln!(out, "{body}");
            }
            0
        }
        Err(e) => {
            match format {
                Format::Text => {
                    let _ = writeln!(err, "error[{}]: {e}", e.code());
                    for v in e.violations().unwrap_or_default() {
                        let _ = writeln!(err, "  {}", serde_json::to_string(v).expect("json"));
                    }
                }
                Format::Doc => {
                    let body = serde_json::json!({
                        "code": e.code(),
                        "message": e.to_string(),
                        "violations": e.violations(),
                    });
                    let _ = writeln!(err, "{}", serde_json::to_string_pretty(&body).expect("json"));
                }
            }
            e.exit_code()
        }
    }
}
