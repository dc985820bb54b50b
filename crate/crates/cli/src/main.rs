mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use rfgrowth_core::atlas::{
    atlas_entry, psl_embedding_bookkeeping, ratio, threshold_report, verify_family_inequalities, FamilyId, FamilyTag,
    Rational, ThresholdScope,
};
use rfgrowth_core::certify::{certificate_transfer_check, common_multiple, lcm_length_audit, verify_witness, TransferOutcome};
use rfgrowth_core::groups::{FiniteField, GroupTable, Homomorphism, Matrix, TargetGroup};
use rfgrowth_core::induction::{coset_structure, induce, psl_project, rewrite, schreier_generators, size_bound_grid};
use rfgrowth_core::quotient::{
    build_catalog, compare_classes, detect, enumerate_homs, growth, ratio_experiment, verify_minimal, CatalogClass,
};
use rfgrowth_core::{Budgets, Error, Presentation, Word};

use config::{BudgetArgs, FileConfig};
use output::{opt, Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot parse word {0:?}: {1}")]
    Word(String, Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io(..) => "io",
            CliError::Config(_) => "config",
            CliError::Word(..) => "parse",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Parse { .. } => 2,
                Error::Budget { .. } => 3,
                Error::UnsupportedPresentation(_) => 4,
                Error::Input(_)
                | Error::Domain(_)
                | Error::Membership(_)
                | Error::Precondition(_)
                | Error::FieldMismatch(_) => 5,
                Error::SearchExhausted { .. } => 7,
                Error::ConstantViolation { .. } => 1,
            },
            CliError::Config(_) | CliError::Word(..) => 2,
            CliError::Io(..) => 6,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "rfgrowth", version, about = "Residual finiteness growth toolkit")]
struct Cli {
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format (default: json for atlas, certify, induce; csv otherwise).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Reserved; every algorithm is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct PresArgs {
    /// Presentation file (`gens: a,b` and `rels: ...` lines).
    #[arg(long, group = "presentation")]
    pres: Option<PathBuf>,
    /// Free group of this rank.
    #[arg(long, group = "presentation")]
    free: Option<usize>,
    /// Closed orientable surface group of this genus.
    #[arg(long, group = "presentation")]
    surface: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct CatalogArgs {
    /// Target class: ALL, GL or SIMPLE.
    #[arg(long)]
    class: Option<String>,
    /// Largest target order searched.
    #[arg(long)]
    limit: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AtlasReport {
    Entry,
    Ratio,
    Inequalities,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Scope {
    Gl,
    Simple,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Order, element-order and representation data of a family member,
    /// rank thresholds and PSL embedding bookkeeping.
    Atlas {
        /// Family tag, e.g. Alt, GL, A, 2A, B, C, D, 2D, E8, 2B2, Cyclic, Sporadic.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, value_enum, default_value = "entry")]
        report: AtlasReport,
        /// Rank threshold for the constant C (an integer or fraction).
        #[arg(long, conflicts_with_all = ["family", "embed"])]
        threshold: Option<String>,
        #[arg(long, value_enum, default_value = "simple")]
        scope: Scope,
        /// Include sporadic groups in the simple-scope threshold.
        #[arg(long)]
        sporadic: bool,
        /// Simple group for PSL embedding bookkeeping, e.g. Alt(9).
        #[arg(long, requires = "rank", conflicts_with = "family")]
        embed: Option<String>,
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Least catalog group detecting a word.
    Detect {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        word: String,
        #[command(flatten)]
        catalog: CatalogArgs,
        /// Re-check minimality by exhaustive search over smaller groups.
        #[arg(long)]
        verify: bool,
    },
    /// Growth table of the detection function over balls.
    Growth {
        #[command(flatten)]
        pres: PresArgs,
        #[command(flatten)]
        catalog: CatalogArgs,
        #[arg(long)]
        radius: Option<usize>,
        /// Tabulate ALL, GL and SIMPLE side by side under one limit.
        #[arg(long)]
        compare: bool,
    },
    /// Common multiple of a set of elements, with witnesses and audit.
    Certify {
        #[command(flatten)]
        pres: PresArgs,
        /// Element of the set (repeat for each element).
        #[arg(long = "word", required = true)]
        words: Vec<String>,
        #[arg(long)]
        kmax: Option<usize>,
        /// Check certificate transfer over every homomorphism into this group.
        #[arg(long)]
        transfer: Option<String>,
    },
    /// Coset structure, Schreier generators and induced representations.
    Induce {
        #[command(flatten)]
        pres: PresArgs,
        /// Finite target defining the subgroup as a kernel, e.g. Sym(3).
        #[arg(long, requires = "images")]
        target: Option<String>,
        /// Generator images separated by `;`, e.g. "(1,2);(1,2,3)".
        #[arg(long)]
        images: Option<String>,
        /// Field size for the base representation.
        #[arg(long)]
        field: Option<u64>,
        /// Base matrices, one per Schreier generator, separated by `;`.
        /// Defaults to the 1×1 identity (coset permutation matrices).
        #[arg(long)]
        base: Option<String>,
        /// Word to evaluate under the induced representation.
        #[arg(long)]
        word: Option<String>,
        /// Project a determinant-one matrix (over --field) to PSL.
        #[arg(long, requires = "field", conflicts_with = "target")]
        psl: Option<String>,
        /// Print the induced size bound grid.
        #[arg(long, conflicts_with_all = ["target", "psl"])]
        size_grid: bool,
    },
    /// Ratio experiment over j = 2..jmax.
    Experiment {
        #[command(flatten)]
        pres: PresArgs,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        gamma0: String,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
        #[command(flatten)]
        catalog: CatalogArgs,
    },
}

struct Ctx {
    file: FileConfig,
    budgets: Budgets,
}

impl Ctx {
    fn class(&self, c: &CatalogArgs, default: CatalogClass) -> CliResult<CatalogClass> {
        match c.class.as_ref().or(self.file.class.as_ref()) {
            Some(s) => Ok(s.parse()?),
            None => Ok(default),
        }
    }

    fn limit(&self, c: &CatalogArgs, default: u64) -> u64 {
        c.limit.or(self.file.limit).unwrap_or(default)
    }
}

fn load_presentation(a: &PresArgs) -> CliResult<Presentation> {
    if let Some(path) = &a.pres {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        let p = Presentation::parse(&text)?;
        if p.is_free() {
            return Ok(p);
        }
        // certify when possible so the word problem becomes available
        return Ok(p
            .clone()
            .with_small_cancellation(num_rational::Ratio::new(1, 6))
            .unwrap_or(p));
    }
    if let Some(k) = a.free {
        return Ok(Presentation::free(k));
    }
    if let Some(g) = a.surface {
        return Ok(Presentation::surface(g)?);
    }
    Err(Error::input("one of --pres, --free or --surface is required").into())
}

fn parse_word(p: &Presentation, s: &str) -> CliResult<Word> {
    p.alphabet().parse_word(s).map_err(|e| CliError::Word(s.to_string(), e))
}

fn cmd_atlas(
    family: Option<String>,
    n: Option<u32>,
    q: Option<u64>,
    report: AtlasReport,
    threshold: Option<String>,
    scope: Scope,
    sporadic: bool,
    embed: Option<(String, u32)>,
    ctx: &Ctx,
) -> CliResult<Report> {
    if let Some(c) = threshold {
        let c: Rational = c
            .parse()
            .map_err(|_| Error::input(format!("cannot read {c:?} as a rational constant")))?;
        if c <= Rational::from_integer(0) {
            return Err(Error::domain("threshold constant C must be positive").into());
        }
        let scope = match scope {
            Scope::Gl => ThresholdScope::Gl,
            Scope::Simple => ThresholdScope::Simple,
        };
        let mut rep = serde_json::to_value(threshold_report(c, scope, sporadic)).expect("serializable");
        rep["tag"] = json!("upper-bound");
        return Ok(Report::document(rep));
    }
    if let Some((g, r)) = embed {
        let g = TargetGroup::parse(&g)?;
        let e = psl_embedding_bookkeeping(&g, r)?;
        let mut v = serde_json::to_value(e).expect("serializable");
        v["tag"] = json!("exact");
        return Ok(Report::document(v));
    }
    let tag: FamilyTag = family
        .ok_or_else(|| Error::input("--family, --threshold or --embed is required"))?
        .parse()?;
    let f = FamilyId::new(tag, n, q)?;
    let v = match report {
        AtlasReport::Entry => serde_json::to_value(atlas_entry(&f)),
        AtlasReport::Ratio => serde_json::to_value(ratio(&f, &ctx.budgets)),
        AtlasReport::Inequalities => serde_json::to_value(verify_family_inequalities(&f, &ctx.budgets)),
    }
    .expect("serializable");
    Ok(Report::document(v))
}

fn cmd_detect(pres: &PresArgs, word: &str, c: &CatalogArgs, verify: bool, ctx: &Ctx) -> CliResult<Report> {
    let p = load_presentation(pres)?;
    let w = parse_word(&p, word)?;
    let cat = build_catalog(ctx.class(c, CatalogClass::All)?, ctx.limit(c, 200))?;
    let r = detect(&w, &p, &cat, &ctx.budgets)?;
    let minimal = if verify {
        Some(verify_minimal(&r, &p, &cat, &ctx.budgets)?)
    } else {
        None
    };
    let group = r.group().map(|g| g.descriptor.to_string());
    let images: Option<Vec<String>> = r
        .witness
        .as_ref()
        .map(|h| h.images().iter().map(|g| g.to_text()).collect());
    let word_text = p.alphabet().render(&w);
    let json = json!({
        "word": word_text,
        "class": cat.class,
        "order_limit": cat.order_limit,
        "value": r.value,
        "tag": r.tag(),
        "witness_group": group,
        "images": images,
        "exhausted": r.exhausted,
        "verified_minimal": minimal,
    });
    let row = vec![
        word_text,
        cat.class.to_string(),
        r.value.to_string(),
        r.tag().as_str().to_string(),
        opt(group),
        images.map(|v| v.join(";")).unwrap_or_default(),
        r.exhausted.to_string(),
        opt(minimal),
    ];
    Ok(Report::tabular(
        json,
        &["word", "class", "value", "tag", "witness_group", "images", "exhausted_flag", "verified_minimal"],
        vec![row],
    ))
}

fn cmd_growth(pres: &PresArgs, c: &CatalogArgs, radius: Option<usize>, compare: bool, ctx: &Ctx) -> CliResult<Report> {
    let p = load_presentation(pres)?;
    let radius = radius.or(ctx.file.radius).unwrap_or(4);
    let limit = ctx.limit(c, 200);
    if compare {
        let cmp = compare_classes(&p, radius, limit, &ctx.budgets)?;
        let rows = cmp
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.m.to_string(),
                    r.all.0.to_string(),
                    r.all.1.as_str().into(),
                    r.gl.0.to_string(),
                    r.gl.1.as_str().into(),
                    r.simple.0.to_string(),
                    r.simple.1.as_str().into(),
                    opt(r.all_le_gl),
                    opt(r.all_le_simple),
                ]
            })
            .collect();
        let json = serde_json::to_value(&cmp).expect("serializable");
        return Ok(Report::tabular(
            json,
            &["m", "all", "all_tag", "gl", "gl_tag", "simple", "simple_tag", "all_le_gl", "all_le_simple"],
            rows,
        ));
    }
    let cat = build_catalog(ctx.class(c, CatalogClass::All)?, limit)?;
    let t = growth(&p, radius, &cat, &ctx.budgets)?;
    let a = p.alphabet();
    let rows: Vec<Vec<String>> = t
        .rows
        .iter()
        .map(|r| {
            vec![
                r.m.to_string(),
                t.class.to_string(),
                r.value.to_string(),
                r.tag().as_str().into(),
                a.render(&r.argmax),
                opt(r.witness_group.clone()),
                r.exhausted.to_string(),
            ]
        })
        .collect();
    let json = json!({
        "class": t.class,
        "order_limit": t.order_limit,
        "rows": t.rows.iter().map(|r| json!({
            "m": r.m,
            "value": r.value,
            "tag": r.tag(),
            "argmax_word": a.render(&r.argmax),
            "witness_group": r.witness_group,
            "exhausted": r.exhausted,
        })).collect::<Vec<_>>(),
    });
    Ok(Report::tabular(
        json,
        &["m", "class", "value", "tag", "argmax_word", "witness_group", "exhausted_flag"],
        rows,
    ))
}

fn cmd_certify(pres: &PresArgs, words: &[String], kmax: Option<usize>, transfer: Option<String>, ctx: &Ctx) -> CliResult<Report> {
    let p = load_presentation(pres)?;
    let t: Vec<Word> = words.iter().map(|w| parse_word(&p, w)).collect::<CliResult<_>>()?;
    let k_max = kmax.or(ctx.file.kmax).unwrap_or(3);
    let cm = common_multiple(&t, k_max, &p)?;
    let check = verify_witness(&cm);
    let audit = lcm_length_audit(&t, &cm)?;
    let a = p.alphabet();
    let transfer = match transfer {
        Some(g) => {
            let table = GroupTable::build(&TargetGroup::parse(&g)?, &ctx.budgets)?;
            let (mut pass, mut vacuous, mut counter) = (0u64, 0u64, 0u64);
            for h in enumerate_homs(&p, &table, &ctx.budgets)? {
                match certificate_transfer_check(&cm, &h) {
                    TransferOutcome::Pass => pass += 1,
                    TransferOutcome::Vacuous => vacuous += 1,
                    TransferOutcome::Counterexample { .. } => counter += 1,
                }
            }
            Some(json!({"group": g, "pass": pass, "vacuous": vacuous, "counterexamples": counter}))
        }
        None => None,
    };
    let json = json!({
        "set": t.iter().map(|w| a.render(w)).collect::<Vec<_>>(),
        "common_multiple": a.render(&cm.word),
        "length": cm.word.len(),
        "tag": "exact",
        "witnesses": cm.witnesses.iter().map(|w| w.render(a)).collect::<Vec<_>>(),
        "witnesses_valid": check.is_valid(),
        "audit": audit,
        "transfer": transfer,
    });
    Ok(Report::document(json))
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(';').map(str::trim).filter(|x| !x.is_empty()).collect()
}

#[allow(clippy::too_many_arguments)]
fn cmd_induce(
    pres: &PresArgs,
    target: Option<String>,
    images: Option<String>,
    field: Option<u64>,
    base: Option<String>,
    word: Option<String>,
    psl: Option<String>,
    size_grid: bool,
    ctx: &Ctx,
) -> CliResult<Report> {
    if size_grid {
        let rows = size_bound_grid()
            .iter()
            .map(|b| {
                vec![
                    b.n.to_string(),
                    b.l.to_string(),
                    b.q.to_string(),
                    b.induced_order.to_string(),
                    b.bound.to_string(),
                    b.holds.to_string(),
                    "exact".into(),
                ]
            })
            .collect();
        let json = serde_json::to_value(size_bound_grid()).expect("serializable");
        return Ok(Report::tabular(json, &["n", "l", "q", "induced_order", "bound", "holds", "tag"], rows));
    }
    if let Some(m) = psl {
        let f = FiniteField::new(field.expect("required by clap"))?;
        let proj = psl_project(&Matrix::parse(&f, &m)?)?;
        let mut v = serde_json::to_value(&proj).expect("serializable");
        v["class"] = json!(proj.class.to_text());
        v["tag"] = json!("exact");
        return Ok(Report::document(v));
    }
    let p = load_presentation(pres)?;
    let target = TargetGroup::parse(&target.ok_or_else(|| Error::input("--target is required"))?)?;
    let imgs = split_list(images.as_deref().unwrap_or(""))
        .into_iter()
        .map(|s| target.parse_element(s))
        .collect::<Result<Vec<_>, _>>()?;
    let h = Homomorphism::new(p.clone(), target, imgs)?;
    let cs = coset_structure(&h, &ctx.budgets)?;
    let gens = schreier_generators(&cs);
    let a = p.alphabet();
    let f = FiniteField::new(field.unwrap_or(2))?;
    let base: Vec<Matrix> = match base {
        Some(b) => split_list(&b)
            .into_iter()
            .map(|m| Matrix::parse(&f, m))
            .collect::<Result<_, _>>()?,
        None => vec![Matrix::identity(&f, 1); gens.len()],
    };
    let rep = induce(&cs, base)?;
    let evaluation = match word {
        Some(w) => {
            let w = parse_word(&p, &w)?;
            let rewritten = rewrite(&cs, &w).ok().map(|s| cs.schreier_alphabet().render(&s));
            Some(json!({
                "word": a.render(&w),
                "matrix": rep.evaluate(&w).to_text(),
                "coset": cs.coset_of(&w),
                "rewritten": rewritten,
            }))
        }
        None => None,
    };
    let json = json!({
        "field": format!("F_{}", f.q()),
        "index": cs.index(),
        "transversal": cs.transversal().iter().map(|w| a.render(w)).collect::<Vec<_>>(),
        "schreier_generators": gens.iter().enumerate().map(|(i, w)| json!({"name": format!("s{}", i + 1), "word": a.render(w)})).collect::<Vec<_>>(),
        "base_dim": rep.base_dim(),
        "induced_dim": rep.dim(),
        "generator_images": rep.generator_images().iter().enumerate().map(|(i, m)| json!({"generator": a.names()[i], "matrix": m.to_text()})).collect::<Vec<_>>(),
        "evaluation": evaluation,
        "tag": "exact",
    });
    Ok(Report::document(json))
}

fn cmd_experiment(
    pres: &PresArgs,
    gamma: &str,
    gamma0: &str,
    jmax: Option<usize>,
    kmax: Option<usize>,
    c: &CatalogArgs,
    ctx: &Ctx,
) -> CliResult<Report> {
    let p = load_presentation(pres)?;
    let (g, g0) = (parse_word(&p, gamma)?, parse_word(&p, gamma0)?);
    let cat = build_catalog(ctx.class(c, CatalogClass::Gl)?, ctx.limit(c, 2048))?;
    let curve = ratio_experiment(
        &g,
        &g0,
        jmax.or(ctx.file.jmax).unwrap_or(4),
        kmax.or(ctx.file.kmax).unwrap_or(3),
        &p,
        &cat,
        &ctx.budgets,
    )?;
    let rows = curve
        .points
        .iter()
        .map(|x| {
            vec![
                x.j.to_string(),
                x.eta_length.to_string(),
                format!("{:.6}", x.fitted_constant),
                x.witnesses_valid.to_string(),
                opt(x.group.clone()),
                opt(x.group_order),
                x.tag.as_str().into(),
                opt(x.m1),
                opt(x.ratio.map(|r| format!("{r:.6}"))),
                opt(x.gamma0_image_order),
                x.exhausted.to_string(),
            ]
        })
        .collect();
    let json = serde_json::to_value(&curve).expect("serializable");
    Ok(Report::tabular(
        json,
        &[
            "j",
            "eta_length",
            "fitted_constant",
            "witnesses_valid",
            "group",
            "group_order",
            "tag",
            "m1",
            "ratio",
            "gamma0_image_order",
            "exhausted_flag",
        ],
        rows,
    ))
}

fn run(cli: Cli) -> CliResult<(Report, Format)> {
    let file = match &cli.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let budgets = cli.budgets.resolve(&file.budgets)?;
    if let Some(n) = cli.threads.or(file.threads) {
        if n == 0 {
            return Err(CliError::Config("threads must be positive".into()));
        }
        // fails only if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let format = cli.format.or(file.format);
    let ctx = Ctx { file, budgets };
    let (report, default) = match cli.command {
        Command::Atlas {
            family,
            n,
            q,
            report,
            threshold,
            scope,
            sporadic,
            embed,
            rank,
        } => (
            cmd_atlas(family, n, q, report, threshold, scope, sporadic, embed.zip(rank), &ctx)?,
            Format::Json,
        ),
        Command::Detect {
            pres,
            word,
            catalog,
            verify,
        } => (cmd_detect(&pres, &word, &catalog, verify, &ctx)?, Format::Csv),
        Command::Growth {
            pres,
            catalog,
            radius,
            compare,
        } => (cmd_growth(&pres, &catalog, radius, compare, &ctx)?, Format::Csv),
        Command::Certify {
            pres,
            words,
            kmax,
            transfer,
        } => (cmd_certify(&pres, &words, kmax, transfer, &ctx)?, Format::Json),
        Command::Induce {
            pres,
            target,
            images,
            field,
            base,
            word,
            psl,
            size_grid,
        } => (
            cmd_induce(&pres, target, images, field, base, word, psl, size_grid, &ctx)?,
            Format::Json,
        ),
        Command::Experiment {
            pres,
            gamma,
            gamma0,
            jmax,
            kmax,
            catalog,
        } => (cmd_experiment(&pres, &gamma, &gamma0, jmax, kmax, &catalog, &ctx)?, Format::Csv),
    };
    Ok((report, format.unwrap_or(default)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, format)) => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            match report.write(format, &mut lock).and_then(|_| lock.flush()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                Err(e) => {
                    eprintln!("{}", json!({"error": "io", "message": e.to_string(), "exit_code": 6}));
                    return ExitCode::from(6);
                }
                Ok(()) => {}
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = e.exit_code();
            eprintln!("{}", json!({"error": e.kind(), "message": e.to_string(), "exit_code": code}));
            ExitCode::from(code)
        }
    }
}
