//! Command-line workflows. The binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 on success, 1 on internal errors, 2 on user or input errors.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::{split_list, RunConfig};
use crate::corpus::{compute_corpus_stats, tokenize, Corpus, CorpusStats, DEFAULT_TOKEN_BUDGET, NGRAM_ORDER};
use crate::error::{Error, Result};
use crate::lm::{aggregate_lm_records, generate_mask_plan, load_lm_records, write_mask_plans, MaskConfig};
use crate::regression::dataset::{read_observations, source_scores, Dataset, Observation, Target};
use crate::regression::stats::{correlation_report, NTransform};
use crate::regression::{default_k_keep, fit_model, lolo_cv, ModelKind, RegressionModel, DEFAULT_LAMBDA};
use crate::similarity::{
    build_feature_table, ordered_pairs, read_feature_table, write_feature_table, CentroidSet,
    Feature, FeatureInputs, PairFeatureVector,
};
use crate::transfer::{
    fit_curves, predict_score, rank_sources, read_curves, resolve_model, write_curves,
    write_rankings, FewShotCurve, SlopeSource, SourceRanking, PLOT_GRID,
};
use crate::typology::TypologyDb;

#[derive(Debug, Parser)]
#[command(name = "xlingual", version, about = "Predict cross-lingual transfer from language-pair features")]
pub struct Cli {
    /// Seed for every random choice; recorded in all outputs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Flat `key = value` file with defaults for the flags below.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute the pairwise feature table.
    Features(FeaturesArgs),
    /// Bivariate correlations of features and of `n` transforms.
    Correlate(DataArgs),
    /// Fit a lasso + RFE model on the full dataset.
    Fit(FitArgs),
    /// Leave-one-target-language-out cross-validation.
    Cv(FitArgs),
    /// Predict the score of one language pair.
    Predict(PredictArgs),
    /// Rank candidate source languages for a target.
    Rank(RankArgs),
    /// Emit span-masking plans for an external scorer.
    MaskPlan(MaskPlanArgs),
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[arg(long)]
    pub task: Option<String>,
    /// Comma-separated language codes.
    #[arg(long)]
    pub langs: Option<String>,
    /// Directory holding `<lang>.txt` corpora.
    #[arg(long)]
    pub corpora: Option<PathBuf>,
    /// Typology TSV; the bundled snapshot is used when omitted.
    #[arg(long)]
    pub typology: Option<PathBuf>,
    #[arg(long)]
    pub centroids: Option<PathBuf>,
    #[arg(long)]
    pub lm_records: Option<PathBuf>,
    /// Observations file supplying source in-language scores.
    #[arg(long)]
    pub observations: Option<PathBuf>,
    #[arg(long)]
    pub token_budget: Option<usize>,
    /// Include (L, L) self-pairs.
    #[arg(long)]
    pub self_pairs: bool,
}

#[derive(Debug, Args)]
pub struct DataArgs {
    #[arg(long)]
    pub task: Option<String>,
    #[arg(long)]
    pub features: Option<PathBuf>,
    #[arg(long)]
    pub observations: Option<PathBuf>,
    /// Comma-separated candidate features (defaults to every column
    /// present in all rows of the task).
    #[arg(long)]
    pub feature_list: Option<String>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// `zero-shot` or `alpha`.
    #[arg(long, default_value = "zero-shot")]
    pub kind: String,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long)]
    pub k_keep: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SlopeArgs {
    /// Curves CSV supplying few-shot slopes.
    #[arg(long)]
    pub curves: Option<PathBuf>,
    /// Alpha model supplying few-shot slopes.
    #[arg(long)]
    pub alpha_model: Option<String>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// `builtin:<task>` or a model file.
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub features: Option<PathBuf>,
    #[arg(long)]
    pub source: String,
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[command(flatten)]
    pub slope: SlopeArgs,
    /// Also write (n, score) points for plotting.
    #[arg(long)]
    pub plot_data: bool,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub model: String,
    #[arg(long)]
    pub features: Option<PathBuf>,
    /// Target language; every target in the table when omitted.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub n: u32,
    #[command(flatten)]
    pub slope: SlopeArgs,
    #[arg(long)]
    pub allow_self: bool,
}

#[derive(Debug, Args)]
pub struct MaskPlanArgs {
    #[arg(long)]
    pub langs: Option<String>,
    #[arg(long)]
    pub corpora: Option<PathBuf>,
    #[arg(long, default_value_t = crate::lm::DEFAULT_DENSITY)]
    pub density: f64,
    #[arg(long, default_value_t = crate::lm::DEFAULT_MEAN_SPAN_LEN)]
    pub mean_span_len: f64,
}

/// Parses arguments, runs the command, and maps errors to exit codes.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_user_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

struct Ctx {
    config: RunConfig,
    seed: u64,
    out: PathBuf,
}

impl Ctx {
    fn output(&self, name: &str) -> Result<BufWriter<File>> {
        fs::create_dir_all(&self.out)?;
        Ok(BufWriter::new(File::create(self.out.join(name))?))
    }

    fn required<T: Clone>(&self, flag: Option<T>, from_config: &Option<T>, name: &str) -> Result<T> {
        flag.or_else(|| from_config.clone())
            .ok_or_else(|| Error::InvalidInput(format!("--{name} is required")))
    }

    fn task(&self, flag: Option<String>) -> Result<String> {
        self.required(flag, &self.config.task, "task")
    }
}

pub fn execute(cli: Cli) -> Result<()> {
    let config = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let ctx = Ctx {
        seed: cli.seed.or(config.seed).unwrap_or(0),
        out: cli
            .out
            .clone()
            .or_else(|| config.out.clone())
            .unwrap_or_else(|| PathBuf::from(".")),
        config,
    };
    match cli.command {
        Command::Features(a) => cmd_features(&ctx, a),
        Command::Correlate(a) => cmd_correlate(&ctx, a),
        Command::Fit(a) => cmd_fit(&ctx, a),
        Command::Cv(a) => cmd_cv(&ctx, a),
        Command::Predict(a) => cmd_predict(&ctx, a),
        Command::Rank(a) => cmd_rank(&ctx, a),
        Command::MaskPlan(a) => cmd_mask_plan(&ctx, a),
    }
}

fn require_file(path: &Path) -> Result<()> {
    if path.exists() {
        Ok(())
    } else {
        Err(Error::MissingFile(path.to_path_buf()))
    }
}

fn cmd_features(ctx: &Ctx, a: FeaturesArgs) -> Result<()> {
    let task = ctx.task(a.task)?;
    let languages = a
        .langs
        .map(|l| split_list(&l))
        .or_else(|| ctx.config.languages.clone())
        .ok_or_else(|| Error::InvalidInput("--langs is required".into()))?;
    if languages.is_empty() {
        return Err(Error::InvalidInput("--langs is empty".into()));
    }
    let corpora = ctx.required(a.corpora, &ctx.config.corpora, "corpora")?;
    let typology_path = a.typology.or_else(|| ctx.config.typology.clone());
    let centroid_path = a.centroids.or_else(|| ctx.config.centroids.clone());
    let lm_path = a.lm_records.or_else(|| ctx.config.lm_records.clone());
    let obs_path = a.observations.or_else(|| ctx.config.observations.clone());
    for p in [&typology_path, &centroid_path, &lm_path, &obs_path].into_iter().flatten() {
        require_file(p)?;
    }
    let budget = a
        .token_budget
        .or(ctx.config.token_budget)
        .unwrap_or(DEFAULT_TOKEN_BUDGET);

    let mut stats: BTreeMap<String, CorpusStats> = BTreeMap::new();
    for lang in &languages {
        let corpus = Corpus::load(&corpora, lang)?.with_token_budget(Some(budget));
        stats.insert(lang.clone(), compute_corpus_stats(&corpus, NGRAM_ORDER)?);
    }

    let typology = match &typology_path {
        Some(p) => TypologyDb::load(p)?,
        None => TypologyDb::vendored(),
    };
    let centroids = centroid_path.as_deref().map(CentroidSet::load).transpose()?;
    let lm = match &lm_path {
        Some(p) => {
            let file = load_lm_records(p)?;
            for w in &file.warnings {
                log::warn!("{}: {w}", p.display());
            }
            Some(aggregate_lm_records(&file.records)?)
        }
        None => None,
    };
    let scores = obs_path
        .as_deref()
        .map(read_observations)
        .transpose()?
        .map(|o| source_scores(&o, &task));

    let pairs = ordered_pairs(&languages, a.self_pairs);
    let inputs = FeatureInputs {
        task: &task,
        stats: &stats,
        typology: Some(&typology),
        centroids: centroids.as_ref().map(|c| &c.centroids),
        lm: lm.as_ref(),
        source_scores: scores.as_ref(),
    };
    let rows = build_feature_table(&inputs, &pairs)?;

    let mut meta = BTreeMap::new();
    meta.insert("seed".to_string(), ctx.seed.to_string());
    meta.insert("token_budget".to_string(), budget.to_string());
    meta.insert(
        "typology".to_string(),
        typology_path
            .as_ref()
            .map(|p| p.display().to_string())
            .unwrap_or_else(|| "vendored".into()),
    );
    if let Some(c) = &centroids {
        for (k, v) in &c.metadata {
            meta.insert(format!("centroids.{k}"), v.clone());
        }
    }
    let name = format!("features_{task}.csv");
    let mut w = ctx.output(&name)?;
    write_feature_table(&mut w, &rows, &meta)?;
    w.flush()?;

    println!("wrote {} rows to {}", rows.len(), ctx.out.join(&name).display());
    for f in Feature::ALL {
        let missing = rows.iter().filter(|r| r.get(f).is_none()).count();
        if missing > 0 {
            println!("  {:<10} absent in {missing} rows", f.as_str());
        }
    }
    Ok(())
}

struct Loaded {
    task: String,
    features: Vec<PairFeatureVector>,
    observations: Vec<Observation>,
    feature_names: Vec<String>,
}

fn load_data(ctx: &Ctx, a: DataArgs, extra: &[&str]) -> Result<Loaded> {
    let task = ctx.task(a.task)?;
    let fpath = ctx.required(a.features, &ctx.config.features, "features")?;
    let opath = ctx.required(a.observations, &ctx.config.observations, "observations")?;
    let features = read_feature_table(&fpath)?;
    let observations = read_observations(&opath)?;
    if !features.iter().any(|f| f.task == task) {
        return Err(Error::InvalidInput(format!(
            "feature table has no rows for task '{task}'"
        )));
    }
    let feature_names = match a.feature_list {
        Some(list) => split_list(&list),
        None => {
            let rows: Vec<&PairFeatureVector> = features.iter().filter(|f| f.task == task).collect();
            let mut names: Vec<String> = Feature::ALL
                .into_iter()
                .filter(|f| {
                    rows.iter().all(|r| r.get(*f).is_some())
                        || (*f == Feature::SourceScore && observations.iter().any(|o| o.source_score.is_some()))
                })
                .map(|f| f.as_str().to_string())
                .collect();
            names.extend(extra.iter().map(|s| s.to_string()));
            names
        }
    };
    if feature_names.is_empty() {
        return Err(Error::InvalidInput("no candidate features".into()));
    }
    Ok(Loaded {
        task,
        features,
        observations,
        feature_names,
    })
}

fn cmd_correlate(ctx: &Ctx, a: DataArgs) -> Result<()> {
    let d = load_data(ctx, a, &[])?;
    let ds = Dataset::zero_shot(&d.task, &d.features, &d.observations, &d.feature_names, Target::Gap)?;
    if ds.is_empty() {
        return Err(Error::InvalidInput(
            "no zero-shot observations join the feature table".into(),
        ));
    }
    let report = correlation_report(&ds, &d.observations, &NTransform::ALL)?;
    for w in &report.warnings {
        eprintln!("warning: omitted {w}");
    }

    let name = format!("correlations_{}.csv", d.task);
    let mut w = ctx.output(&name)?;
    writeln!(w, "# seed={}", ctx.seed)?;
    writeln!(w, "# feature block target: S_T - S_S over n = 0 rows; n_transform block target: S_T")?;
    writeln!(w, "task,block,variable,r,r_x100,p_value,significant,n_obs")?;
    for r in &report.rows {
        writeln!(
            w,
            "{},{},{},{:.6},{},{:.6},{},{}",
            d.task,
            r.block.name(),
            r.variable,
            r.r,
            r.display(),
            r.p_value,
            u8::from(r.significant()),
            r.n_obs
        )?;
    }
    w.flush()?;

    println!("{:<12} {:<12} {:>8} {:>9}", "block", "variable", "r x100", "p");
    for r in &report.rows {
        println!(
            "{:<12} {:<12} {:>8} {:>9.4}",
            r.block.name(),
            r.variable,
            r.display(),
            r.p_value
        );
    }
    Ok(())
}

fn build_dataset(d: &Loaded, kind: ModelKind) -> Result<(Dataset, Vec<FewShotCurve>)> {
    match kind {
        ModelKind::ZeroShot => Ok((
            Dataset::zero_shot(&d.task, &d.features, &d.observations, &d.feature_names, Target::Score)?,
            Vec::new(),
        )),
        ModelKind::Alpha => {
            let (curves, skipped) = fit_curves(&d.observations);
            for s in &skipped {
                log::warn!("skipping curve {s}");
            }
            let ds = Dataset::alpha(&d.task, &d.features, &curves, &d.feature_names)?;
            Ok((ds, curves))
        }
    }
}

fn resolve_fit_params(ctx: &Ctx, a: &FitArgs, task: &str, n_features: usize) -> (f64, usize) {
    let lambda = a.lambda.or(ctx.config.lambda).unwrap_or(DEFAULT_LAMBDA);
    let k = a
        .k_keep
        .or(ctx.config.k_keep)
        .or_else(|| default_k_keep(task))
        .unwrap_or(5)
        .min(n_features);
    (lambda, k)
}

fn cmd_fit(ctx: &Ctx, a: FitArgs) -> Result<()> {
    let kind: ModelKind = a.kind.parse()?;
    let extra: &[&str] = if kind == ModelKind::Alpha { &["s0"] } else { &[] };
    let d = load_data(ctx, clone_data(&a.data), extra)?;
    let (ds, curves) = build_dataset(&d, kind)?;
    if ds.is_empty() {
        return Err(Error::InvalidInput("joined dataset is empty".into()));
    }
    let (lambda, k) = resolve_fit_params(ctx, &a, &d.task, ds.n_features());
    let mut model = fit_model(&ds, kind, lambda, k)?;
    model.metadata.insert("seed".into(), ctx.seed.to_string());
    model.metadata.insert("excluded_rows".into(), ds.excluded.to_string());

    fs::create_dir_all(&ctx.out)?;
    let path = ctx.out.join(format!("model_{}_{kind}.json", d.task));
    model.save(&path)?;
    if kind == ModelKind::Alpha {
        let mut w = ctx.output(&format!("curves_{}.csv", d.task))?;
        write_curves(&mut w, &curves)?;
        w.flush()?;
    }
    print_model(&model);
    println!("rows used: {} (excluded {})", ds.len(), ds.excluded);
    println!("wrote {}", path.display());
    Ok(())
}

fn print_model(m: &RegressionModel) {
    let mut line = format!("({}) {} = {:.2}", m.task, m.kind, m.intercept);
    for (name, c) in &m.coefficients {
        let sign = if *c < 0.0 { '-' } else { '+' };
        line.push_str(&format!(" {sign} {:.2} {name}", c.abs()));
    }
    println!("{line}");
    if !m.elimination_order.is_empty() {
        println!("eliminated (first to last): {}", m.elimination_order.join(", "));
    }
}

fn clone_data(d: &DataArgs) -> DataArgs {
    DataArgs {
        task: d.task.clone(),
        features: d.features.clone(),
        observations: d.observations.clone(),
        feature_list: d.feature_list.clone(),
    }
}

fn cmd_cv(ctx: &Ctx, a: FitArgs) -> Result<()> {
    let kind: ModelKind = a.kind.parse()?;
    let extra: &[&str] = if kind == ModelKind::Alpha { &["s0"] } else { &[] };
    let d = load_data(ctx, clone_data(&a.data), extra)?;
    let (ds, _) = build_dataset(&d, kind)?;
    if ds.is_empty() {
        return Err(Error::InvalidInput("joined dataset is empty".into()));
    }
    let (lambda, k) = resolve_fit_params(ctx, &a, &d.task, ds.n_features());
    let report = lolo_cv(&ds, kind, lambda, k)?;
    let a_src = match kind {
        ModelKind::ZeroShot => Some(report.a_src()?),
        ModelKind::Alpha => None,
    };

    let name = format!("cv_{}_{kind}.csv", d.task);
    let mut w = ctx.output(&name)?;
    writeln!(w, "# seed={}", ctx.seed)?;
    writeln!(w, "# lambda={lambda}")?;
    writeln!(w, "# k_keep={k}")?;
    writeln!(w, "target,n_train,n_test,rmse")?;
    for f in &report.folds {
        writeln!(w, "{},{},{},{:.6}", f.target, f.n_train, f.n_test, f.rmse)?;
    }
    writeln!(w, "mean,,,{:.6}", report.mean_rmse)?;
    if let Some(acc) = a_src {
        writeln!(w, "a_src,,,{acc:.6}")?;
    }
    w.flush()?;

    println!("RMSE and A_src top-1 source language prediction accuracy ({}, {kind})", d.task);
    println!("{:<8} {:>7} {:>6} {:>9}", "target", "train", "test", "rmse");
    for f in &report.folds {
        println!("{:<8} {:>7} {:>6} {:>9.3}", f.target, f.n_train, f.n_test, f.rmse);
    }
    println!("mean RMSE {:.3}", report.mean_rmse);
    match a_src {
        Some(acc) => println!("A_src {:.1}%", acc * 100.0),
        None => println!("A_src n/a"),
    }
    Ok(())
}

fn load_table(ctx: &Ctx, flag: Option<PathBuf>) -> Result<Vec<PairFeatureVector>> {
    let path = ctx.required(flag, &ctx.config.features, "features")?;
    read_feature_table(&path)
}

struct Slopes {
    curves: Option<BTreeMap<(String, String), FewShotCurve>>,
    model: Option<RegressionModel>,
}

impl Slopes {
    fn load(a: &SlopeArgs, task: &str) -> Result<Self> {
        let curves = a
            .curves
            .as_deref()
            .map(read_curves)
            .transpose()?
            .map(|cs| {
                cs.into_iter()
                    .filter(|c| c.task == task)
                    .map(|c| ((c.source.clone(), c.target.clone()), c))
                    .collect()
            });
        let model = a.alpha_model.as_deref().map(resolve_model).transpose()?;
        Ok(Self { curves, model })
    }

    fn source(&self) -> SlopeSource<'_> {
        if let Some(m) = &self.model {
            SlopeSource::Model(m)
        } else if let Some(c) = &self.curves {
            SlopeSource::Curves(c)
        } else {
            SlopeSource::None
        }
    }
}

fn cmd_predict(ctx: &Ctx, a: PredictArgs) -> Result<()> {
    let model = resolve_model(&a.model)?;
    let table = load_table(ctx, a.features)?;
    let row = table
        .iter()
        .find(|r| r.task == model.task && r.source == a.source && r.target == a.target)
        .or_else(|| table.iter().find(|r| r.source == a.source && r.target == a.target))
        .ok_or_else(|| Error::InvalidInput(format!("no feature row for {}->{}", a.source, a.target)))?;
    let slopes = Slopes::load(&a.slope, &model.task)?;
    let p = predict_score(&model, row, a.n, slopes.source())?;
    println!(
        "{} {}->{} n={}: {:.4}{}",
        model.task,
        a.source,
        a.target,
        a.n,
        p.score,
        if p.out_of_range { " (out of range)" } else { "" }
    );
    if a.plot_data {
        let name = format!("plot_{}_{}_{}.csv", model.task, a.source, a.target);
        let mut w = ctx.output(&name)?;
        writeln!(w, "# seed={}", ctx.seed)?;
        writeln!(w, "n,predicted_score,out_of_range")?;
        for n in PLOT_GRID {
            let p = predict_score(&model, row, n, slopes.source())?;
            writeln!(w, "{n},{:.6},{}", p.score, u8::from(p.out_of_range))?;
        }
        w.flush()?;
        println!("wrote {}", ctx.out.join(name).display());
    }
    Ok(())
}

fn cmd_rank(ctx: &Ctx, a: RankArgs) -> Result<()> {
    let model = resolve_model(&a.model)?;
    let table = load_table(ctx, a.features)?;
    let rows: Vec<PairFeatureVector> = {
        let task_rows: Vec<_> = table.iter().filter(|r| r.task == model.task).cloned().collect();
        if task_rows.is_empty() {
            table.clone()
        } else {
            task_rows
        }
    };
    let targets: Vec<String> = match a.target {
        Some(t) => vec![t],
        None => {
            let set: std::collections::BTreeSet<String> = rows.iter().map(|r| r.target.clone()).collect();
            set.into_iter().collect()
        }
    };
    let slopes = Slopes::load(&a.slope, &model.task)?;
    let mut rankings: Vec<SourceRanking> = Vec::new();
    let mut failures = Vec::new();
    for t in &targets {
        match rank_sources(&model, t, &rows, a.n, slopes.source(), a.allow_self) {
            Ok(r) => rankings.push(r),
            Err(e) => failures.push(e),
        }
    }
    if rankings.is_empty() {
        return Err(failures
            .into_iter()
            .next()
            .unwrap_or_else(|| Error::InvalidInput("no targets to rank".into())));
    }
    for e in &failures {
        eprintln!("warning: {e}");
    }

    let name = format!("ranking_{}_n{}.csv", model.task, a.n);
    let mut w = ctx.output(&name)?;
    writeln!(w, "# seed={}", ctx.seed)?;
    write_rankings(&mut w, &rankings)?;
    w.flush()?;

    for r in &rankings {
        println!("target {} (n={})", r.target, r.n);
        for (i, e) in r.entries.iter().enumerate() {
            println!(
                "  {:>2}. {:<6} {:>9.3}{}",
                i + 1,
                e.source,
                e.score,
                if e.out_of_range { "  out of range" } else { "" }
            );
        }
        for s in &r.skipped {
            println!("  skipped {s}");
        }
    }
    Ok(())
}

fn cmd_mask_plan(ctx: &Ctx, a: MaskPlanArgs) -> Result<()> {
    let languages = a
        .langs
        .map(|l| split_list(&l))
        .or_else(|| ctx.config.languages.clone())
        .ok_or_else(|| Error::InvalidInput("--langs is required".into()))?;
    let corpora = ctx.required(a.corpora, &ctx.config.corpora, "corpora")?;
    let config = MaskConfig {
        density: a.density,
        mean_span_len: a.mean_span_len,
        seed: ctx.seed,
    };
    let mut plans = Vec::new();
    for lang in &languages {
        let corpus = Corpus::load(&corpora, lang)?;
        for (id, sentence) in corpus.sentences().iter().enumerate() {
            let n = tokenize(sentence).len();
            plans.push((lang.clone(), generate_mask_plan(n, id, &config)?));
        }
    }
    let mut w = ctx.output("mask_plan.csv")?;
    write_mask_plans(&mut w, &plans, &config)?;
    w.flush()?;
    println!("wrote {} plans to {}", plans.len(), ctx.out.join("mask_plan.csv").display());
    Ok(())
}
