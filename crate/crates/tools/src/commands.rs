//! Pipeline commands. Each reads its inputs, writes CSV outputs plus a
//! [`RunManifest`] into the output directory, and returns the manifest.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Subcommand};
use serde_json::json;

use protest_core::active::{filter_candidates, prune_easy_negatives, select_threshold, DEFAULT_TARGET_RECALL};
use protest_core::geo::{
    distribution_summary, filter_event, region_rates, score_histogram, GeoTweet, RateConfig, Region,
    DEFAULT_VIOLENCE_CUTOFF, PROTEST_CUTOFF,
};
use protest_core::ranking::{accumulate_wins, fit_bradley_terry, sample_pairs, BtConfig, DEFAULT_MAX_RESTARTS};
use protest_core::scores::{index_predictions, join_scores, PredictionRecord, SCORE_COLUMNS};
use protest_core::stats::{
    correlation_matrix, pearson, r_squared_fit, roc_auc, Cell, Column, MetricResult, DEFAULT_ALPHA,
};
use protest_core::text::{image_text_correlation, score_text, Lexicon};
use protest_core::Error;

use crate::comparisons::{read_comparisons, read_pairs, render_pairs, render_strengths};
use crate::config::{resolve, Config};
use crate::events::read_events;
use crate::judgments::{read_judgments, reliability_by_dimension, render_consensus, render_sentiments, resolve_all};
use crate::manifest::{ManifestBuilder, RunManifest};
use crate::predictions::read_predictions;
use crate::regions::read_regions;
use crate::tables::{exact, read_id_list, read_named_table, render_csv};
use crate::tweets::{ingest_file, render_rejections};
use crate::{ToolError, ToolResult};

/// Settings shared by every command.
#[derive(Debug, Clone, Default)]
pub struct Context {
    pub out_dir: PathBuf,
    /// `--seed` as given on the command line.
    pub seed: Option<u64>,
    pub config: Config,
}

impl Context {
    pub fn new(out_dir: impl Into<PathBuf>) -> Self {
        Context { out_dir: out_dir.into(), ..Context::default() }
    }

    pub fn seed(&self) -> u64 {
        resolve(self.seed, self.config.seed, 0)
    }

    fn manifest(&self, command: &str, config: serde_json::Value) -> ManifestBuilder {
        ManifestBuilder::new(command, config, self.seed(), &self.out_dir)
    }
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Resolve worker judgments into consensus labels and sentiment scores.
    Consensus(ConsensusArgs),
    /// Draw a random k-regular pair design over an item list.
    SamplePairs(SamplePairsArgs),
    /// Fit Bradley-Terry strengths to pairwise verdicts.
    FitBt(FitBtArgs),
    /// Score predictions against ground truth (AUC, Pearson, r^2).
    Eval(EvalArgs),
    /// Correlation matrix with significance masking.
    Matrix(MatrixArgs),
    /// Pick a recall-constrained threshold and partition candidates.
    Filter(FilterArgs),
    /// Per-region tweet statistics normalized by users.
    GeoReport(GeoReportArgs),
    /// Score distributions for declared events.
    EventReport(EventReportArgs),
    /// Correlate tweet text valence with image predictions.
    TextCorr(TextCorrArgs),
}

pub fn run(command: &Command, ctx: &Context) -> ToolResult<RunManifest> {
    match command {
        Command::Consensus(a) => cmd_consensus(a, ctx),
        Command::SamplePairs(a) => cmd_sample_pairs(a, ctx),
        Command::FitBt(a) => cmd_fit_bt(a, ctx),
        Command::Eval(a) => cmd_eval(a, ctx),
        Command::Matrix(a) => cmd_matrix(a, ctx),
        Command::Filter(a) => cmd_filter(a, ctx),
        Command::GeoReport(a) => cmd_geo_report(a, ctx),
        Command::EventReport(a) => cmd_event_report(a, ctx),
        Command::TextCorr(a) => cmd_text_corr(a, ctx),
    }
}

fn metric_cells(m: &MetricResult) -> [String; 4] {
    [exact(m.rho), exact(m.r_squared), exact(m.p_value), m.n.to_string()]
}

fn metric_row(name: &str, result: &protest_core::Result<MetricResult>) -> Vec<String> {
    let mut row = vec![name.to_string()];
    match result {
        Ok(m) => {
            row.extend(metric_cells(m));
            row.push("ok".into());
        }
        Err(e) => {
            row.extend(std::iter::repeat_n(String::new(), 4));
            row.push(e.kind().into());
        }
    }
    row
}

const METRIC_HEADER: [&str; 6] = ["name", "rho", "r_squared", "p_value", "n", "status"];

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

// ---------------------------------------------------------------- consensus

#[derive(Debug, Clone, Args)]
pub struct ConsensusArgs {
    /// CSV `worker_id,image_id,field,value`.
    #[arg(long)]
    pub judgments: PathBuf,
    /// Also report split-half reliability per sentiment dimension.
    #[arg(long)]
    pub reliability: bool,
}

pub fn cmd_consensus(args: &ConsensusArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let mut m = ctx.manifest(
        "consensus",
        json!({"judgments": path_str(&args.judgments), "reliability": args.reliability}),
    );
    m.input(&args.judgments)?;
    let judgments = read_judgments(&args.judgments)?;
    let resolved = resolve_all(&judgments)?;
    m.output("consensus.csv", &render_consensus(&resolved.labels))?;
    m.output("sentiments.csv", &render_sentiments(&resolved.sentiments))?;
    if args.reliability {
        let rows = reliability_by_dimension(&judgments, ctx.seed())?;
        let body = render_csv(
            &["dimension", "rho", "r_squared", "p_value", "n"],
            rows.iter().map(|(d, r)| {
                let [rho, r2, p, n] = metric_cells(r);
                [d.clone(), rho, r2, p, n]
            }),
        );
        m.output("reliability.csv", &body)?;
    }
    m.finish(start.elapsed())
}

// ------------------------------------------------------------- sample-pairs

#[derive(Debug, Clone, Args)]
pub struct SamplePairsArgs {
    /// Single-column CSV of item ids (header required).
    #[arg(long, conflicts_with = "n_items", required_unless_present = "n_items")]
    pub items: Option<PathBuf>,
    /// Use ids `0..N` instead of an item file.
    #[arg(long)]
    pub n_items: Option<usize>,
    /// Comparisons per item [default: 10].
    #[arg(long)]
    pub degree: Option<usize>,
    /// Restarts before giving up [default: 100].
    #[arg(long)]
    pub max_restarts: Option<usize>,
}

pub fn cmd_sample_pairs(args: &SamplePairsArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let cfg = &ctx.config.sample_pairs;
    let degree = resolve(args.degree, cfg.degree, 10);
    let max_restarts = resolve(args.max_restarts, cfg.max_restarts, DEFAULT_MAX_RESTARTS);
    let mut m = ctx.manifest(
        "sample-pairs",
        json!({
            "items": args.items.as_deref().map(path_str),
            "n_items": args.n_items,
            "degree": degree,
            "max_restarts": max_restarts,
        }),
    );
    let items: Vec<String> = match (&args.items, args.n_items) {
        (Some(path), _) => {
            m.input(path)?;
            let ids = read_id_list(path)?;
            let mut seen = std::collections::BTreeSet::new();
            if let Some(dup) = ids.iter().find(|id| !seen.insert(id.as_str())) {
                return Err(Error::DuplicateId(dup.clone()).into());
            }
            ids
        }
        (None, Some(n)) => (0..n).map(|i| i.to_string()).collect(),
        (None, None) => return Err(ToolError::Config("either --items or --n-items is required".into())),
    };
    let pairs = sample_pairs(items.len(), degree, ctx.seed(), max_restarts)?;
    m.output("pairs.csv", &render_pairs(&items, &pairs))?;
    m.finish(start.elapsed())
}

// ------------------------------------------------------------------- fit-bt

#[derive(Debug, Clone, Args)]
pub struct FitBtArgs {
    /// CSV `worker_id,left_id,right_id,winner`.
    #[arg(long)]
    pub comparisons: PathBuf,
    /// Pair design (`left_id,right_id`); declared pairs get pseudo-counts
    /// even without verdicts.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Pseudo-count added to both directions of each compared pair [default: 0.5].
    #[arg(long)]
    pub pseudo_count: Option<f64>,
    /// Convergence tolerance on log-strengths [default: 1e-9].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Iteration cap [default: 10000].
    #[arg(long)]
    pub max_iter: Option<usize>,
}

pub fn cmd_fit_bt(args: &FitBtArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let cfg = &ctx.config.fit_bt;
    let defaults = BtConfig::default();
    let bt = BtConfig {
        pseudo_count: resolve(args.pseudo_count, cfg.pseudo_count, defaults.pseudo_count),
        tol: resolve(args.tol, cfg.tol, defaults.tol),
        max_iter: resolve(args.max_iter, cfg.max_iter, defaults.max_iter),
        record_trace: false,
    };
    let mut m = ctx.manifest(
        "fit-bt",
        json!({
            "comparisons": path_str(&args.comparisons),
            "pairs": args.pairs.as_deref().map(path_str),
            "pseudo_count": bt.pseudo_count,
            "tol": bt.tol,
            "max_iter": bt.max_iter,
        }),
    );
    m.input(&args.comparisons)?;
    let comparisons = read_comparisons(&args.comparisons)?;
    let mut wins = accumulate_wins(&comparisons)?;
    if let Some(path) = &args.pairs {
        m.input(path)?;
        for (a, b) in read_pairs(path)? {
            wins.add_item(a.as_str());
            wins.add_item(b.as_str());
            wins.declare_pair(&a, &b)?;
        }
    }
    let fit = fit_bradley_terry(&wins, &bt)?;
    m.output("strengths.csv", &render_strengths(&fit))?;
    let summary = json!({
        "n_items": fit.items.len(),
        "n_pairs": wins.n_compared_pairs(),
        "n_comparisons": comparisons.len(),
        "iterations": fit.iterations,
        "converged": fit.converged,
        "log_likelihood": fit.log_likelihood,
    });
    let mut body = serde_json::to_vec_pretty(&summary).expect("serializable");
    body.push(b'\n');
    m.output("fit_summary.json", &body)?;
    m.finish(start.elapsed())
}

// --------------------------------------------------------------------- eval

#[derive(Debug, Clone, Args)]
pub struct EvalArgs {
    /// Prediction scores in the 16-column interchange format.
    #[arg(long)]
    pub predictions: PathBuf,
    /// Ground-truth table keyed by image id; columns named like score columns.
    #[arg(long)]
    pub truth: PathBuf,
}

fn is_binary(values: &[f64]) -> bool {
    values.iter().all(|&v| v == 0.0 || v == 1.0)
}

pub fn cmd_eval(args: &EvalArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let mut m = ctx.manifest(
        "eval",
        json!({"predictions": path_str(&args.predictions), "truth": path_str(&args.truth)}),
    );
    m.input(&args.predictions)?;
    m.input(&args.truth)?;
    let predictions = read_predictions(&args.predictions)?;
    let truth = read_named_table(&args.truth)?;
    if let Some(bad) = truth.columns.iter().find(|c| !SCORE_COLUMNS.contains(&c.as_str())) {
        return Err(ToolError::format(&args.truth, Some(1), format!("`{bad}` is not a score column")));
    }
    let columns = truth.columns.clone();
    let joined = join_scores(&predictions, &truth.into_extra())?;
    let mut report = Vec::new();
    for (k, name) in columns.iter().enumerate() {
        let truth_values: Vec<f64> = joined.rows.iter().map(|r| r.extra[k]).collect();
        let pred = joined.column(name).expect("validated score column");
        let mut row = vec![name.clone(), truth_values.len().to_string()];
        if is_binary(&truth_values) {
            let labels: Vec<bool> = truth_values.iter().map(|&v| v == 1.0).collect();
            match roc_auc(&pred, &labels) {
                Ok(curve) => {
                    row.push(exact(curve.auc));
                    let dump = render_csv(
                        &["fpr", "tpr", "threshold"],
                        curve
                            .points
                            .iter()
                            .zip(&curve.thresholds)
                            .map(|(p, t)| [exact(p.fpr), exact(p.tpr), exact(*t)]),
                    );
                    m.output(&format!("roc_{name}.csv"), &dump)?;
                }
                Err(_) => row.push(String::new()),
            }
        } else {
            row.push(String::new());
        }
        match (pearson(&pred, &truth_values), r_squared_fit(&pred, &truth_values)) {
            (Ok(r), Ok(r2)) => {
                row.extend([exact(r.rho), exact(r2), exact(r.p_value), "ok".into()]);
            }
            (Err(e), _) | (_, Err(e)) => {
                row.extend([String::new(), String::new(), String::new(), e.kind().into()]);
            }
        }
        report.push(row);
    }
    m.output(
        "eval.csv",
        &render_csv(&["column", "n", "auc", "rho", "r_squared", "p_value", "status"], report),
    )?;
    m.finish(start.elapsed())
}

// ------------------------------------------------------------------- matrix

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    /// A keyed numeric table holding every row and column variable.
    #[arg(long, conflicts_with_all = ["predictions", "extra"], required_unless_present = "predictions")]
    pub table: Option<PathBuf>,
    /// Predictions to join with `--extra`.
    #[arg(long, requires = "extra")]
    pub predictions: Option<PathBuf>,
    /// Extra keyed table (e.g. facial attributes) joined on image id.
    #[arg(long)]
    pub extra: Option<PathBuf>,
    /// Comma-separated row variables.
    #[arg(long, value_delimiter = ',', required = true)]
    pub rows: Vec<String>,
    /// Comma-separated column variables.
    #[arg(long, value_delimiter = ',', required = true)]
    pub cols: Vec<String>,
    /// Significance level below which a cell is reported [default: 0.0001].
    #[arg(long)]
    pub alpha: Option<f64>,
}

type ColumnLookup = Box<dyn Fn(&str) -> Option<Vec<f64>>>;

pub fn cmd_matrix(args: &MatrixArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let alpha = resolve(args.alpha, ctx.config.eval.alpha, DEFAULT_ALPHA);
    let mut m = ctx.manifest(
        "matrix",
        json!({
            "table": args.table.as_deref().map(path_str),
            "predictions": args.predictions.as_deref().map(path_str),
            "extra": args.extra.as_deref().map(path_str),
            "rows": args.rows,
            "cols": args.cols,
            "alpha": alpha,
        }),
    );
    let lookup: ColumnLookup = match (&args.table, &args.predictions, &args.extra) {
        (Some(path), _, _) => {
            m.input(path)?;
            let table = read_named_table(path)?;
            Box::new(move |name| table.column(name))
        }
        (None, Some(pred_path), Some(extra_path)) => {
            m.input(pred_path)?;
            m.input(extra_path)?;
            let predictions = read_predictions(pred_path)?;
            let extra = read_named_table(extra_path)?.into_extra();
            let joined = join_scores(&predictions, &extra)?;
            Box::new(move |name| joined.column(name))
        }
        _ => return Err(ToolError::Config("need --table, or --predictions with --extra".into())),
    };
    let columns = |names: &[String]| -> ToolResult<Vec<Column>> {
        names
            .iter()
            .map(|n| lookup(n).map(|v| Column::new(n.as_str(), v)).ok_or_else(|| ToolError::Config(format!("no column `{n}`"))))
            .collect()
    };
    let rows = columns(&args.rows)?;
    let cols = columns(&args.cols)?;
    let matrix = correlation_matrix(&rows, &cols, alpha)?;
    let mut out = Vec::new();
    for (r, row) in args.rows.iter().enumerate() {
        for (c, col) in args.cols.iter().enumerate() {
            let cell = matrix.get(r, c);
            let (status, metric) = match cell {
                Cell::Significant(x) => ("significant".to_string(), Some(x)),
                Cell::Masked(x) => ("masked".to_string(), Some(x)),
                Cell::Undefined(e) => (e.kind().to_string(), None),
            };
            let mut line = vec![row.clone(), col.clone()];
            match metric {
                Some(x) => line.extend(metric_cells(x)),
                None => line.extend(std::iter::repeat_n(String::new(), 4)),
            }
            line.push(status);
            out.push(line);
        }
    }
    m.output(
        "matrix.csv",
        &render_csv(&["row", "col", "rho", "r_squared", "p_value", "n", "status"], out),
    )?;
    m.finish(start.elapsed())
}

// ------------------------------------------------------------------- filter

#[derive(Debug, Clone, Args)]
pub struct FilterArgs {
    /// Scored, labelled pool in the interchange format.
    #[arg(long)]
    pub scores: PathBuf,
    /// CSV `image_id,label` with labels 0/1.
    #[arg(long)]
    pub labels: PathBuf,
    /// Score column used for the cut.
    #[arg(long, default_value = "protest")]
    pub score_col: String,
    /// Recall floor on the labelled positives [default: 0.9].
    #[arg(long)]
    pub target_recall: Option<f64>,
    /// Drop candidates scoring below this before the cut [default: 0].
    #[arg(long)]
    pub low_cutoff: Option<f64>,
    /// Unlabelled candidates to partition; defaults to the scored pool.
    #[arg(long)]
    pub candidates: Option<PathBuf>,
    /// Refinement round; outputs go to `round-NNN/` under the output directory.
    #[arg(long)]
    pub round: Option<u32>,
}

fn score_pairs(records: &[PredictionRecord], column: &str) -> ToolResult<Vec<(String, f64)>> {
    records
        .iter()
        .map(|r| {
            r.score(column)
                .map(|s| (r.image_id.clone(), s))
                .ok_or_else(|| ToolError::Config(format!("no score column `{column}`")))
        })
        .collect()
}

pub fn cmd_filter(args: &FilterArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let cfg = &ctx.config.filter;
    let target = resolve(args.target_recall, cfg.target_recall, DEFAULT_TARGET_RECALL);
    let low_cutoff = resolve(args.low_cutoff, cfg.low_cutoff, 0.0);
    let mut round_ctx = ctx.clone();
    if let Some(r) = args.round {
        round_ctx.out_dir = ctx.out_dir.join(format!("round-{r:03}"));
    }
    let mut m = round_ctx.manifest(
        "filter",
        json!({
            "scores": path_str(&args.scores),
            "labels": path_str(&args.labels),
            "candidates": args.candidates.as_deref().map(path_str),
            "score_col": args.score_col,
            "target_recall": target,
            "low_cutoff": low_cutoff,
            "round": args.round,
        }),
    );
    m.input(&args.scores)?;
    m.input(&args.labels)?;
    let pool = score_pairs(&read_predictions(&args.scores)?, &args.score_col)?;
    let pool_index: BTreeMap<&str, f64> = pool.iter().map(|(id, s)| (id.as_str(), *s)).collect();
    let labels = read_named_table(&args.labels)?;
    let label_col = labels
        .column("label")
        .ok_or_else(|| ToolError::format(&args.labels, Some(1), "missing `label` column"))?;
    let mut scores = Vec::with_capacity(labels.ids.len());
    let mut flags = Vec::with_capacity(labels.ids.len());
    for (i, (id, &l)) in labels.ids.iter().zip(&label_col).enumerate() {
        let line = Some(i + 2);
        if l != 0.0 && l != 1.0 {
            return Err(ToolError::format(&args.labels, line, format!("label {l} is not 0 or 1")));
        }
        let s = pool_index
            .get(id.as_str())
            .ok_or_else(|| ToolError::format(&args.labels, line, format!("`{id}` has no score")))?;
        scores.push(*s);
        flags.push(l == 1.0);
    }
    let report = select_threshold(&scores, &flags, target)?;
    m.output(
        "threshold.csv",
        &render_csv(
            &["threshold", "achieved_recall", "prune_rate", "n_pos", "n_neg"],
            [[
                exact(report.threshold),
                exact(report.achieved_recall),
                exact(report.prune_rate),
                report.n_pos.to_string(),
                report.n_neg.to_string(),
            ]],
        ),
    )?;
    let mut candidates = match &args.candidates {
        Some(path) => {
            m.input(path)?;
            score_pairs(&read_predictions(path)?, &args.score_col)?
        }
        None => pool.clone(),
    };
    let easy: Vec<String> =
        candidates.iter().filter(|(_, s)| *s < low_cutoff).map(|(id, _)| id.clone()).collect();
    prune_easy_negatives(&mut candidates, low_cutoff);
    let (kept, below) = filter_candidates(&candidates, report.threshold);
    m.output("kept.csv", &render_csv(&["image_id"], kept.iter().map(|id| [*id])))?;
    let pruned = easy
        .iter()
        .map(|id| [id.as_str(), "easy-negative"])
        .chain(below.iter().map(|id| [*id, "below-threshold"]));
    m.output("pruned.csv", &render_csv(&["image_id", "reason"], pruned))?;
    m.finish(start.elapsed())
}

// --------------------------------------------------------------- geo-report

#[derive(Debug, Clone, Args)]
pub struct GeoReportArgs {
    /// JSON-lines tweets.
    #[arg(long)]
    pub tweets: PathBuf,
    /// Image predictions in the interchange format.
    #[arg(long)]
    pub predictions: PathBuf,
    /// GeoJSON FeatureCollection of named regions.
    #[arg(long)]
    pub regions: PathBuf,
    /// Violence score above which a protest image counts as violent [default: 0.5].
    #[arg(long)]
    pub violence_cutoff: Option<f64>,
    /// Comma-separated hashtags counted for the per-user hashtag rate.
    #[arg(long, value_delimiter = ',')]
    pub hashtags: Option<Vec<String>>,
}

fn normalize_tags(tags: &[String]) -> Vec<String> {
    tags.iter().map(|t| t.trim().trim_start_matches('#').to_lowercase()).filter(|t| !t.is_empty()).collect()
}

fn rate_cell(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), exact)
}

pub fn cmd_geo_report(args: &GeoReportArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let cfg = &ctx.config.geo;
    let rate_cfg = RateConfig {
        violence_cutoff: resolve(args.violence_cutoff, cfg.violence_cutoff, DEFAULT_VIOLENCE_CUTOFF),
        hashtags: normalize_tags(&resolve(args.hashtags.clone(), cfg.hashtags.clone(), Vec::new())),
    };
    let mut m = ctx.manifest(
        "geo-report",
        json!({
            "tweets": path_str(&args.tweets),
            "predictions": path_str(&args.predictions),
            "regions": path_str(&args.regions),
            "violence_cutoff": rate_cfg.violence_cutoff,
            "hashtags": rate_cfg.hashtags,
        }),
    );
    for p in [&args.tweets, &args.predictions, &args.regions] {
        m.input(p)?;
    }
    let regions = read_regions(&args.regions)?;
    let index = index_predictions(read_predictions(&args.predictions)?)?;
    let ingested = ingest_file(&args.tweets)?;
    let stats = region_rates(&ingested.tweets, &index, &regions, &rate_cfg);
    let body = render_csv(
        &["region", "n_tweets", "n_users", "n_with_images", "n_violent", "n_hashtag", "rate", "hashtag_rate"],
        stats.iter().map(|s| {
            [
                s.region.clone(),
                s.n_tweets.to_string(),
                s.n_users.to_string(),
                s.n_with_images.to_string(),
                s.n_violent.to_string(),
                s.n_hashtag.to_string(),
                rate_cell(s.rate),
                rate_cell(s.hashtag_rate),
            ]
        }),
    );
    m.output("region_stats.csv", &body)?;
    m.output("rejections.csv", &render_rejections(&ingested.rejections))?;
    m.finish(start.elapsed())
}

// ------------------------------------------------------------- event-report

#[derive(Debug, Clone, Args)]
pub struct EventReportArgs {
    /// JSON-lines tweets.
    #[arg(long)]
    pub tweets: PathBuf,
    /// Image predictions in the interchange format.
    #[arg(long)]
    pub predictions: PathBuf,
    /// TOML event definitions.
    #[arg(long)]
    pub events: PathBuf,
    /// GeoJSON regions, needed by region-window events.
    #[arg(long)]
    pub regions: Option<PathBuf>,
    /// Score column summarized per event.
    #[arg(long, default_value = "violence")]
    pub score_col: String,
    /// Histogram bins over [0, 1] [default: 10].
    #[arg(long)]
    pub bins: Option<usize>,
    /// Summarize every image, not only protest-classified ones.
    #[arg(long)]
    pub all_images: bool,
}

pub fn cmd_event_report(args: &EventReportArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let bins = resolve(args.bins, ctx.config.geo.bins, 10);
    if !SCORE_COLUMNS.contains(&args.score_col.as_str()) {
        return Err(ToolError::Config(format!("no score column `{}`", args.score_col)));
    }
    let mut m = ctx.manifest(
        "event-report",
        json!({
            "tweets": path_str(&args.tweets),
            "predictions": path_str(&args.predictions),
            "events": path_str(&args.events),
            "regions": args.regions.as_deref().map(path_str),
            "score_col": args.score_col,
            "bins": bins,
            "all_images": args.all_images,
        }),
    );
    for p in [&args.tweets, &args.predictions, &args.events] {
        m.input(p)?;
    }
    let regions: Vec<Region> = match &args.regions {
        Some(p) => {
            m.input(p)?;
            read_regions(p)?
        }
        None => Vec::new(),
    };
    let events = read_events(&args.events)?;
    let index = index_predictions(read_predictions(&args.predictions)?)?;
    let ingested = ingest_file(&args.tweets)?;
    let mut summary_rows = Vec::new();
    let mut histogram_rows = Vec::new();
    for event in &events {
        let selected: Vec<&GeoTweet> = filter_event(&ingested.tweets, event, &regions, Some(&index))?;
        let values: Vec<f64> = selected
            .iter()
            .filter_map(|t| t.image_id.as_deref().and_then(|id| index.get(id)))
            .filter(|p| args.all_images || p.protest >= PROTEST_CUTOFF)
            .map(|p| p.score(&args.score_col).expect("validated score column"))
            .collect();
        let mut row = vec![event.name.clone(), selected.len().to_string(), values.len().to_string()];
        match distribution_summary(&values) {
            Ok(s) => row.extend(
                [s.q1, s.median, s.q3, s.lower_whisker, s.upper_whisker, s.mean].map(exact),
            ),
            Err(Error::InsufficientSamples { .. }) => row.extend(std::iter::repeat_n(String::new(), 6)),
            Err(e) => return Err(e.into()),
        }
        summary_rows.push(row);
        for (b, count) in score_histogram(&values, bins)?.into_iter().enumerate() {
            histogram_rows.push([
                event.name.clone(),
                exact(b as f64 / bins as f64),
                exact((b + 1) as f64 / bins as f64),
                count.to_string(),
            ]);
        }
    }
    m.output(
        "event_summary.csv",
        &render_csv(
            &["event", "n_tweets", "n_images", "q1", "median", "q3", "lower_whisker", "upper_whisker", "mean"],
            summary_rows,
        ),
    )?;
    m.output("event_histogram.csv", &render_csv(&["event", "bin_lo", "bin_hi", "count"], histogram_rows))?;
    m.finish(start.elapsed())
}

// ---------------------------------------------------------------- text-corr

#[derive(Debug, Clone, Args)]
pub struct TextCorrArgs {
    /// JSON-lines tweets.
    #[arg(long)]
    pub tweets: PathBuf,
    /// Image predictions in the interchange format.
    #[arg(long)]
    pub predictions: PathBuf,
    /// Tab-separated `token<TAB>valence` lexicon; the built-in one otherwise.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Keep only tweets carrying one of these comma-separated hashtags.
    #[arg(long, value_delimiter = ',')]
    pub hashtags: Option<Vec<String>>,
    /// Use every image, not only protest-classified ones.
    #[arg(long)]
    pub all_images: bool,
}

pub fn cmd_text_corr(args: &TextCorrArgs, ctx: &Context) -> ToolResult<RunManifest> {
    let start = Instant::now();
    let tags = args.hashtags.as_deref().map(normalize_tags);
    let mut m = ctx.manifest(
        "text-corr",
        json!({
            "tweets": path_str(&args.tweets),
            "predictions": path_str(&args.predictions),
            "lexicon": args.lexicon.as_deref().map(path_str),
            "hashtags": tags,
            "all_images": args.all_images,
        }),
    );
    m.input(&args.tweets)?;
    m.input(&args.predictions)?;
    let lexicon = match &args.lexicon {
        Some(path) => {
            m.input(path)?;
            let text = std::fs::read_to_string(path).map_err(|e| ToolError::io(path, e))?;
            Lexicon::from_tsv(&text).map_err(|e| ToolError::in_file(path, e))?
        }
        None => Lexicon::builtin(),
    };
    let index = index_predictions(read_predictions(&args.predictions)?)?;
    let ingested = ingest_file(&args.tweets)?;
    let mut sorted_tags = tags.clone().unwrap_or_default();
    sorted_tags.sort();
    let mut rows = Vec::new();
    let mut per_tweet = Vec::new();
    for t in &ingested.tweets {
        if tags.is_some() && !t.has_any_tag(&sorted_tags) {
            continue;
        }
        let Some(p) = t.image_id.as_deref().and_then(|id| index.get(id)) else { continue };
        if !args.all_images && p.protest < PROTEST_CUTOFF {
            continue;
        }
        let v = score_text(&t.text, &lexicon);
        per_tweet.push([t.tweet_id.clone(), p.image_id.clone(), exact(v.compound), v.n_hits.to_string()]);
        rows.push((v.compound, p));
    }
    m.output("tweet_valence.csv", &render_csv(&["tweet_id", "image_id", "compound", "n_hits"], per_tweet))?;
    let results = image_text_correlation(&rows)?;
    m.output(
        "text_corr.csv",
        &render_csv(&METRIC_HEADER, results.iter().map(|(dim, r)| metric_row(dim, r))),
    )?;
    m.finish(start.elapsed())
}
