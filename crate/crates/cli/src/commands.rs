use crate::{CliError, Format, RunConfig};
use clap::{Args, ValueEnum};
use hcol_core::ffalg::Field;
use hcol_core::graph::{parse_document, write_document, Document, HomSearch};
use hcol_core::kernels::{
    algebraic_kernel_with, combinatorial_kernel_with, kernelize_for_target,
    verify_kernel_equivalence, VertexCoverInstance,
};
use hcol_core::reductions::{
    find_edge_gadget_with, find_tight_witness_set_with, parse_dimacs, reduce_list_to_plain,
    reduce_naesat_to_hcol, EdgeGadget, GadgetSearch, ListInstance,
};
use hcol_core::repr::{
    kneser_field, kneser_rep, normalize_first_entry_with, ortho_graph_with, vandermonde_rep,
    Representation,
};
use hcol_core::witness::witness_number_with;
use hcol_core::{Ceilings, Graph};
use serde_json::json;
use std::path::{Path, PathBuf};

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn read_document(path: &Path) -> Result<Document, CliError> {
    parse_document(&read_text(path)?)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Writes `text` to `--output` or stdout.
pub fn emit(cfg: &RunConfig, text: &str) -> Result<(), CliError> {
    match &cfg.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_line(value: &serde_json::Value) -> String {
    format!("{value}\n")
}

pub fn witness(cfg: &RunConfig, path: &Path) -> Result<(), CliError> {
    let g = read_document(path)?.graph;
    let cert = witness_number_with(&g, &cfg.ceilings())?;
    let text = match cfg.format {
        Format::Text => format!("q={}, witness={}\n", cert.q, cert.witness_set),
        Format::Json => json_line(&json!({
            "q": cert.q,
            "witness": cert.witness_set,
            "checked_up_to": cert.checked_up_to,
        })),
    };
    emit(cfg, &text)
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Combinatorial,
    Algebraic,
}

#[derive(Args, Debug)]
pub struct KernelizeArgs {
    /// Instance file with an `X` cover line.
    instance: PathBuf,
    /// Target graph H.
    #[arg(long)]
    target: PathBuf,
    #[arg(long, value_enum, default_value_t = Mode::Combinatorial)]
    mode: Mode,
    /// Subset size bound for the combinatorial kernel (default: q(H)).
    #[arg(long)]
    q: Option<usize>,
    /// Representation file for the algebraic kernel.
    #[arg(long)]
    rep: Option<PathBuf>,
    /// Decide H-colorability of input and kernel and compare.
    #[arg(long)]
    verify: bool,
}

pub fn kernelize(cfg: &RunConfig, args: &KernelizeArgs) -> Result<(), CliError> {
    let ceilings = cfg.ceilings();
    let inst = VertexCoverInstance::from_document(&read_document(&args.instance)?)?;
    let h = read_document(&args.target)?.graph;
    let result = match args.mode {
        Mode::Combinatorial => {
            if args.rep.is_some() {
                return Err(CliError::Usage("--rep needs --mode algebraic".into()));
            }
            match args.q {
                Some(q) => combinatorial_kernel_with(&inst, q, &ceilings)?,
                None => kernelize_for_target(&inst, &h, &ceilings)?,
            }
        }
        Mode::Algebraic => {
            if args.q.is_some() {
                return Err(CliError::Usage("--q applies to --mode combinatorial only".into()));
            }
            let Some(rep_path) = &args.rep else {
                return Err(CliError::Usage("--mode algebraic needs --rep".into()));
            };
            let rep = Representation::from_json(&read_text(rep_path)?)?;
            let rep = align_representation(rep, &h)?;
            let rep = if rep.has_unit_first_entries() && rep.field().order() as usize > h.n() {
                rep
            } else {
                normalize_first_entry_with(&rep, cfg.seed, &ceilings)?
            };
            algebraic_kernel_with(&inst, &h, &rep, &ceilings)?
        }
    };
    result
        .check_invariants()
        .map_err(|e| CliError::Violation(e.to_string()))?;
    let verified = if args.verify {
        let ok = verify_kernel_equivalence(&inst, &result, &h, &ceilings)?;
        if !ok {
            return Err(CliError::Violation(
                "kernel and input disagree on H-colorability".into(),
            ));
        }
        Some(ok)
    } else {
        None
    };
    let doc = write_document(&result.to_document());
    match cfg.format {
        Format::Text => {
            emit(cfg, &doc)?;
            if verified.is_some() {
                eprintln!("verify: kernel is equivalent to the input");
            }
        }
        Format::Json => {
            if let Some(path) = &cfg.output {
                std::fs::write(path, &doc)
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            print!(
                "{}",
                json_line(&json!({ "stats": result.stats, "verified": verified }))
            );
        }
    }
    Ok(())
}

/// Relabels `rep` onto `h` when its graph is isomorphic to `h` under a
/// different numbering.
fn align_representation(rep: Representation, h: &Graph) -> Result<Representation, CliError> {
    let g = rep.graph();
    if g.same_structure(h) {
        return Ok(rep);
    }
    let iso = (g.n() == h.n() && g.edge_count() == h.edge_count())
        .then(|| HomSearch::new(h, g).injective(true).find())
        .flatten()
        .ok_or_else(|| {
            CliError::Usage("representation graph is not isomorphic to the target".into())
        })?;
    let vectors = iso.assignment.iter().map(|&w| rep.vector(w).to_vec()).collect();
    Ok(Representation::new(
        h.clone(),
        rep.field().clone(),
        rep.dim(),
        rep.kind(),
        vectors,
    )?)
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Kneser,
    Vandermonde,
    Ortho,
}

#[derive(Args, Debug)]
pub struct RepresentArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Ground set size for `kneser`.
    #[arg(long)]
    m: Option<usize>,
    /// Subset size for `kneser`.
    #[arg(long)]
    r: Option<usize>,
    /// Graph file for `vandermonde`.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Dimension for `ortho`.
    #[arg(long)]
    d: Option<usize>,
    /// Keep one vector per line through the origin (`ortho`).
    #[arg(long)]
    projective: bool,
    /// Field as `p` or `p^m` (required except for `kneser`, which defaults to
    /// the smallest admissible prime).
    #[arg(long)]
    field: Option<String>,
}

pub fn parse_field(text: &str, ceilings: &Ceilings) -> Result<Field, CliError> {
    let (p, m) = match text.split_once('^') {
        Some((p, m)) => (p.trim(), m.trim()),
        None => (text.trim(), "1"),
    };
    let bad = || CliError::Usage(format!("cannot parse field `{text}`; expected p or p^m"));
    let p: u32 = p.parse().map_err(|_| bad())?;
    let m: u32 = m.parse().map_err(|_| bad())?;
    Ok(Field::new(p, m, ceilings)?)
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--family {family} needs --{flag}")))
}

pub fn represent(cfg: &RunConfig, args: &RepresentArgs) -> Result<(), CliError> {
    let ceilings = cfg.ceilings();
    let field = args
        .field
        .as_deref()
        .map(|f| parse_field(f, &ceilings))
        .transpose()?;
    let rep = match args.family {
        Family::Kneser => {
            let m = need(args.m, "m", "kneser")?;
            let r = need(args.r, "r", "kneser")?;
            let field = match field {
                Some(f) => f,
                None => kneser_field(m, r)?,
            };
            kneser_rep(m, r, &field, cfg.seed)?
        }
        Family::Vandermonde => {
            let path = args
                .graph
                .as_ref()
                .ok_or_else(|| CliError::Usage("--family vandermonde needs --graph".into()))?;
            let g = read_document(path)?.graph;
            let field = field.ok_or_else(|| CliError::Usage("--family vandermonde needs --field".into()))?;
            vandermonde_rep(&g, &field)?
        }
        Family::Ortho => {
            let d = need(args.d, "d", "ortho")?;
            let field = field.ok_or_else(|| CliError::Usage("--family ortho needs --field".into()))?;
            ortho_graph_with(&field, d, args.projective, &ceilings)?
        }
    };
    let mut text = rep.to_json();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    emit(cfg, &text)
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    NaeSat,
    ListHcol,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    #[arg(long, value_enum)]
    from: Source,
    /// DIMACS formula (`nae-sat`) or graph file with `A` list lines
    /// (`list-hcol`).
    input: PathBuf,
    /// Target graph H; should be a core.
    #[arg(long)]
    target: PathBuf,
}

fn gadget_for(h: &Graph, ceilings: &Ceilings) -> Result<EdgeGadget, CliError> {
    match find_edge_gadget_with(h, ceilings.gadget_vertices, ceilings)? {
        GadgetSearch::Found(g) => Ok(g),
        GadgetSearch::NotFound { searched_up_to } => Err(CliError::Infeasible(format!(
            "no edge gadget with at most {searched_up_to} vertices; raise --gadget-vertices"
        ))),
    }
}

/// Reduction preconditions the input fails are reported as infeasible.
fn infeasible(e: hcol_core::Error) -> CliError {
    match e {
        hcol_core::Error::Invalid(m) => CliError::Infeasible(m),
        other => CliError::Core(other),
    }
}

pub fn reduce(cfg: &RunConfig, args: &ReduceArgs) -> Result<(), CliError> {
    let ceilings = cfg.ceilings();
    let h = read_document(&args.target)?.graph;
    let (inst, gadget_n) = match args.from {
        Source::NaeSat => {
            let text = read_text(&args.input)?;
            let formula = parse_dimacs(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", args.input.display())))?;
            let t = find_tight_witness_set_with(&h, &ceilings)?;
            if let Some(w) = formula.uniform_width().filter(|&w| w != t.len()) {
                return Err(CliError::Infeasible(format!(
                    "formula has width {w} but the target needs width q(H) = {}",
                    t.len()
                )));
            }
            let gadget = gadget_for(&h, &ceilings)?;
            let red = reduce_naesat_to_hcol(&formula, &h, &t, &gadget).map_err(infeasible)?;
            (red.instance, gadget.graph().n())
        }
        Source::ListHcol => {
            let list = ListInstance::from_document(&read_document(&args.input)?);
            let gadget = gadget_for(&h, &ceilings)?;
            let g = reduce_list_to_plain(&list.graph, &list.lists, &h, &gadget).map_err(infeasible)?;
            (VertexCoverInstance::with_matching_cover(g), gadget.graph().n())
        }
    };
    let doc = write_document(&inst.to_document());
    match cfg.format {
        Format::Text => emit(cfg, &doc),
        Format::Json => {
            if let Some(path) = &cfg.output {
                std::fs::write(path, &doc)
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            print!(
                "{}",
                json_line(&json!({
                    "vertices": inst.graph().n(),
                    "edges": inst.graph().edge_count(),
                    "cover_size": inst.k(),
                    "gadget_vertices": gadget_n,
                }))
            );
            Ok(())
        }
    }
}
