use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};
use superspecial::finite_geometry::{self as fg, FiniteQuadSpace, Limits, SpaceKind};
use superspecial::global::{self, InvariantProfile};
use superspecial::lattice::{self, GramLattice, LatticeKind};
use superspecial::mass::{self, EvenLocalVariant, MassInput};
use superspecial::matrix::QMatrix;
use superspecial::padic::{self, oracle};
use superspecial::weyl::{self, CoxeterDatum, Family, KChoice, SigmaChoice, WeylElement};
use superspecial::{rational, DiagonalForm, Error, Place, Result, Sign, SquareClass};

use crate::describe;
use crate::input::{self, require};

#[derive(Parser, Debug)]
#[command(name = "superspecial", version, about = "Invariants of quadratic forms, lattices and EO strata as JSON")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Local invariants of rational quadratic forms
    Invariants(InvariantsArgs),
    /// Z_p-lattices given by Gram matrices
    Lattice(LatticeArgs),
    /// Invariant profiles over all places of Q
    Global(GlobalArgs),
    /// Affine Weyl groups and Ekedahl-Oort sets
    Eo(EoArgs),
    /// Quadratic spaces over finite fields and S_Λ
    Dl(DlArgs),
    /// Special values and the superspecial mass
    Mass(MassArgs),
}

#[derive(Args, Debug)]
pub struct Common {
    /// Print the input and output schema of this subcommand
    #[arg(long)]
    pub describe: bool,
    /// JSON input document (`-` for stdin)
    #[arg(long = "in", value_name = "FILE")]
    pub input: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum InvariantsAction {
    Hilbert,
    SquareClass,
    Hasse,
    Local,
    Isometric,
    Oracle,
}

#[derive(Args, Debug)]
pub struct InvariantsArgs {
    pub action: Option<InvariantsAction>,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Comma-separated diagonal entries
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub other: Option<String>,
    /// `inf` or a prime
    #[arg(long)]
    pub place: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub depth: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum LatticeAction {
    Jordan,
    Smith,
    Vertex,
    Dual,
    Ambient,
    TMax,
    Construct,
}

#[derive(Args, Debug)]
pub struct LatticeArgs {
    pub action: Option<LatticeAction>,
    #[command(flatten)]
    pub common: Common,
    /// Gram matrix, rows separated by `;`
    #[arg(long, allow_hyphen_values = true)]
    pub gram: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// A rational whose square class at p is the determinant
    #[arg(long, allow_hyphen_values = true)]
    pub det: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<i64>,
    #[arg(long)]
    pub kind: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GlobalAction {
    Profile,
    Check,
    Nearby,
    Realize,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    pub action: Option<GlobalAction>,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 60)]
    pub bound: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EoAction {
    Datum,
    Adm,
    MinReps,
    Eo,
    ListCox,
    Table,
    JSet,
    Length,
    Bruhat,
    TSigma,
}

#[derive(Args, Debug)]
pub struct EoArgs {
    pub action: Option<EoAction>,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub m: Option<usize>,
    /// `identity` or `swap_last_pair`
    #[arg(long, default_value = "identity")]
    pub sigma: String,
    /// `default` (all nodes but 0) or a comma-separated node list
    #[arg(long = "K", default_value = "default")]
    pub k: String,
    /// Element as a word, e.g. `0,2,t` for s0 s2 τ
    #[arg(long)]
    pub w: Option<String>,
    /// Upper element for `bruhat`
    #[arg(long)]
    pub v: Option<String>,
    /// Stratum label, e.g. `0,1`
    #[arg(long)]
    pub label: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DlAction {
    Count,
    Points,
    Isotropic,
    Lagrangians,
    Orientations,
    Witt,
}

#[derive(Args, Debug)]
pub struct DlArgs {
    pub action: Option<DlAction>,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Subspace dimension for `isotropic`
    #[arg(long)]
    pub d: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum MassAction {
    Value,
    Bernoulli,
    Zeta,
    L,
    Deuring,
}

#[derive(Args, Debug)]
pub struct MassArgs {
    /// Defaults to `value`
    pub action: Option<MassAction>,
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value = "1")]
    pub vol: String,
    #[arg(long, allow_hyphen_values = true)]
    pub disc: Option<i64>,
    /// `corrected` (default) or `as_printed`
    #[arg(long, default_value = "corrected")]
    pub variant: String,
    /// Index for `bernoulli`, `zeta` and `l`
    #[arg(long)]
    pub r: Option<usize>,
}

pub fn run(cli: &Cli) -> Result<Value> {
    match &cli.cmd {
        Cmd::Invariants(a) => invariants(a),
        Cmd::Lattice(a) => lattice_cmd(a),
        Cmd::Global(a) => global_cmd(a),
        Cmd::Eo(a) => eo(a),
        Cmd::Dl(a) => dl(a),
        Cmd::Mass(a) => mass_cmd(a),
    }
}

fn action<T: Copy>(a: Option<T>, describe: bool, name: &str) -> Result<Option<T>> {
    match a {
        Some(x) => Ok(Some(x)),
        None if describe => Ok(None),
        None => Err(Error::Domain(format!("{name} needs an action; try --describe"))),
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

#[derive(Deserialize)]
struct FormDoc {
    form: DiagonalForm,
    #[serde(default)]
    other: Option<DiagonalForm>,
}

fn invariants(a: &InvariantsArgs) -> Result<Value> {
    let Some(act) = action(a.action, a.common.describe, "invariants")? else {
        return Ok(describe::invariants());
    };
    if a.common.describe {
        return Ok(describe::invariants());
    }
    let forms = || -> Result<(DiagonalForm, Option<DiagonalForm>)> {
        if let Some(f) = &a.form {
            return Ok((input::form(f)?, a.other.as_deref().map(input::form).transpose()?));
        }
        let doc = input::document(a.common.input.as_deref())?
            .ok_or_else(|| Error::Domain("missing --form or an input document".into()))?;
        let d: FormDoc = input::parse_doc(&doc)?;
        Ok((d.form, d.other))
    };
    let place = || -> Result<Place> { input::place(&require(&a.place, "place")?) };
    let rat = |v: &Option<String>, name: &str| rational::parse(&require(v, name)?);
    Ok(match act {
        InvariantsAction::Hilbert => {
            json!({ "symbol": padic::hilbert_symbol(&rat(&a.a, "a")?, &rat(&a.b, "b")?, place()?)? })
        }
        InvariantsAction::SquareClass => to_json(&SquareClass::of(&rat(&a.a, "a")?, place()?)?),
        InvariantsAction::Hasse => json!({ "hasse": padic::hasse_invariant(&forms()?.0, place()?)? }),
        InvariantsAction::Local => to_json(&padic::local_invariants(&forms()?.0, place()?)?),
        InvariantsAction::Isometric => {
            let (f, g) = forms()?;
            let g = g.ok_or_else(|| Error::Domain("missing --other".into()))?;
            json!({ "isometric": padic::is_isometric_local(&f, &g, place()?)? })
        }
        InvariantsAction::Oracle => {
            let p = require(&a.p, "p")?;
            json!({ "symbol": oracle::solvable_oracle(&rat(&a.a, "a")?, &rat(&a.b, "b")?, p, a.depth)? })
        }
    })
}

#[derive(Deserialize)]
struct LatticeDoc {
    gram: QMatrix,
    p: Option<u64>,
}

fn lattice_cmd(a: &LatticeArgs) -> Result<Value> {
    let Some(act) = action(a.action, a.common.describe, "lattice")? else {
        return Ok(describe::lattice());
    };
    if a.common.describe {
        return Ok(describe::lattice());
    }
    let lat = || -> Result<GramLattice> {
        if let Some(g) = &a.gram {
            return GramLattice::new(input::gram(g)?, require(&a.p, "p")?);
        }
        let doc = input::document(a.common.input.as_deref())?
            .ok_or_else(|| Error::Domain("missing --gram or an input document".into()))?;
        let d: LatticeDoc = input::parse_doc(&doc)?;
        let p = d.p.or(a.p).ok_or_else(|| Error::Domain("missing p".into()))?;
        GramLattice::new(d.gram, p)
    };
    let det_class = || -> Result<SquareClass> {
        padic::square_class(&rational::parse(&require(&a.det, "det")?)?, require(&a.p, "p")?)
    };
    Ok(match act {
        LatticeAction::Jordan => to_json(&lattice::jordan_decompose(&lat()?)?),
        LatticeAction::Smith => json!({ "valuations": lattice::dual_quotient(&lat()?) }),
        LatticeAction::Vertex => to_json(&lattice::vertex_report(&lat()?)?),
        LatticeAction::Dual => {
            let l = lat()?.dual();
            json!({ "gram": l.gram(), "p": l.p() })
        }
        LatticeAction::Ambient => {
            let l = lat()?;
            json!({ "form": l.ambient_form(), "invariants": l.ambient_invariants() })
        }
        LatticeAction::TMax => json!({ "t_max": lattice::t_max(require(&a.n, "n")?, &det_class()?)? }),
        LatticeAction::Construct => {
            let kind: LatticeKind = serde_json::from_value(json!(require(&a.kind, "kind")?))
                .map_err(|_| Error::Domain("--kind must be self_dual or almost_self_dual".into()))?;
            let eps = Sign::from_i64(require(&a.eps, "eps")?)?;
            let p = require(&a.p, "p")?;
            let l = lattice::construct_lattice(p, require(&a.n, "n")?, &det_class()?, eps, kind)?;
            json!({ "gram": l.gram(), "p": p })
        }
    })
}

#[derive(Deserialize)]
struct GlobalFormDoc {
    form: DiagonalForm,
}

fn global_cmd(a: &GlobalArgs) -> Result<Value> {
    let Some(act) = action(a.action, a.common.describe, "global")? else {
        return Ok(describe::global());
    };
    if a.common.describe {
        return Ok(describe::global());
    }
    let profile = || -> Result<InvariantProfile> {
        if let Some(f) = &a.form {
            return global::profile_of(&input::form(f)?);
        }
        let doc = input::document(a.common.input.as_deref())?
            .ok_or_else(|| Error::Domain("missing --form or an input document".into()))?;
        if doc.get("form").is_some() {
            return global::profile_of(&input::parse_doc::<GlobalFormDoc>(&doc)?.form);
        }
        let p: InvariantProfile = input::parse_doc(&doc)?;
        p.validate()?;
        Ok(p)
    };
    Ok(match act {
        GlobalAction::Profile => to_json(&profile()?),
        GlobalAction::Check => json!({ "reciprocal": global::reciprocity_check(&profile()?) }),
        GlobalAction::Nearby => to_json(&global::nearby_profile(&profile()?, require(&a.p, "p")?)?),
        GlobalAction::Realize => json!({ "form": global::realize_form(&profile()?, a.bound)? }),
    })
}

fn datum(a: &EoArgs) -> Result<CoxeterDatum> {
    let family: Family = require(&a.family, "family")?.parse()?;
    let sigma = match a.sigma.as_str() {
        "identity" | "id" => SigmaChoice::Identity,
        "swap_last_pair" | "swap" => SigmaChoice::SwapLastPair,
        s => return Err(Error::Domain(format!("unknown sigma {s:?}"))),
    };
    let k = if a.k == "default" { KChoice::Default } else { KChoice::Nodes(input::nodes(&a.k)?) };
    CoxeterDatum::new(family, require(&a.m, "m")?, sigma, k)
}

fn element_json(d: &CoxeterDatum, w: &WeylElement) -> Value {
    let r = d.reduced_word(w);
    json!({ "word": r.word, "omega": r.omega, "length": d.length(w) })
}

fn element_list(d: &CoxeterDatum, ws: &[WeylElement]) -> Value {
    Value::Array(ws.iter().map(|w| element_json(d, w)).collect())
}

fn parse_element(d: &CoxeterDatum, s: &str) -> Result<WeylElement> {
    let (word, omega) = input::element(s)?;
    d.from_word(&word, omega)
}

fn eo(a: &EoArgs) -> Result<Value> {
    let Some(act) = action(a.action, a.common.describe, "eo")? else {
        return Ok(describe::eo());
    };
    if a.common.describe {
        return Ok(describe::eo());
    }
    let d = datum(a)?;
    Ok(match act {
        EoAction::Datum => json!({
            "family": d.family(),
            "m": d.m(),
            "sigma": d.sigma(),
            "K": d.k(),
            "tau": element_json(&d, d.tau()),
            "tau_perm": d.tau_perm(),
            "tau_sigma_perm": d.tau_sigma_perm(),
            "coxeter_matrix": d.coxeter_matrix(),
            "t_lambda": element_json(&d, &d.t_lambda()),
        }),
        EoAction::Adm => element_list(&d, &weyl::adm_set(&d)),
        EoAction::MinReps => element_list(&d, &weyl::min_reps(&d)),
        EoAction::Eo => element_list(&d, &weyl::eo_set(&d)),
        EoAction::ListCox => {
            let mut out = Vec::new();
            for w in weyl::eo_cox_set(&d) {
                let mut v = element_json(&d, &w);
                let row = weyl::label_of(&d, &w)?;
                v["label"] = json!(row.as_ref().map(|r| &r.label));
                if let Some(r) = row.filter(|r| !r.aliases.is_empty()) {
                    v["aliases"] = json!(r.aliases);
                }
                v["sigma_support"] = json!(weyl::sigma_support(&d, &w));
                v["t_sigma"] = json!(2 * (d.length(&w) + 1));
                out.push(v);
            }
            Value::Array(out)
        }
        EoAction::Table => {
            let rows = weyl::table_rows(d.family(), d.m(), d.sigma())?;
            let mut out = Vec::new();
            for r in rows {
                let w = d.from_word(&r.word, 1)?;
                let mut v = to_json(&r);
                v["element"] = element_json(&d, &w);
                v["t_sigma"] = json!(weyl::t_sigma(&d, &r.label)?);
                out.push(v);
            }
            Value::Array(out)
        }
        EoAction::JSet => json!(weyl::j_set(&d)?),
        EoAction::Length => {
            let w = parse_element(&d, &require(&a.w, "w")?)?;
            let mut v = element_json(&d, &w);
            v["separating_hyperplanes"] = json!(d.separating_hyperplanes(&w));
            v
        }
        EoAction::Bruhat => {
            let u = parse_element(&d, &require(&a.w, "w")?)?;
            let v = parse_element(&d, &require(&a.v, "v")?)?;
            json!({ "leq": d.bruhat_leq(&u, &v)? })
        }
        EoAction::TSigma => {
            let label: BTreeSet<usize> = input::nodes(&require(&a.label, "label")?)?;
            let w = weyl::table_w_sigma(&d, &label)?;
            json!({ "element": element_json(&d, &w), "t_sigma": weyl::t_sigma(&d, &label)? })
        }
    })
}

fn dl(a: &DlArgs) -> Result<Value> {
    let Some(act) = action(a.action, a.common.describe, "dl")? else {
        return Ok(describe::dl());
    };
    if a.common.describe {
        return Ok(describe::dl());
    }
    let limits = Limits::from_env()?;
    let kind: SpaceKind = require(&a.kind, "kind")?.parse()?;
    let p = require(&a.p, "p")?;
    let t = require(&a.t, "t")?;
    let space = FiniteQuadSpace::new(t, kind, p, &limits)?;
    let field_json = |e: &fg::Extension| json!({ "p": p, "k": e.field().k(), "modulus": e.field().modulus() });
    let points_json = |e: &fg::Extension, pts: &[fg::Subspace]| -> Value {
        Value::Array(pts.iter().map(|s| json!(s.to_coeffs(e.field()))).collect())
    };
    Ok(match act {
        DlAction::Count => {
            let ext = fg::Extension::new(space, a.k, &limits)?;
            let pts = ext.s_lambda_points()?;
            let mut sizes: Vec<usize> = fg::frobenius_orbits(&ext, &pts)?.iter().map(Vec::len).collect();
            sizes.sort_unstable();
            json!({ "points": pts.len(), "orbits": sizes })
        }
        DlAction::Points => {
            let ext = fg::Extension::new(space, a.k, &limits)?;
            let pts = ext.s_lambda_points()?;
            json!({ "field": field_json(&ext), "points": points_json(&ext, &pts) })
        }
        DlAction::Isotropic | DlAction::Lagrangians => {
            let ext = fg::Extension::new(space, a.k, &limits)?;
            let d = match act {
                DlAction::Isotropic => require(&a.d, "d")?,
                _ => t / 2,
            };
            let subs = ext.enumerate_isotropic(d)?;
            json!({ "field": field_json(&ext), "count": subs.len(), "subspaces": points_json(&ext, &subs) })
        }
        DlAction::Orientations => {
            let (ext, pair) = fg::orientations(&space, &limits)?;
            json!({ "field": field_json(&ext), "lines": points_json(&ext, &pair) })
        }
        DlAction::Witt => json!({ "witt_index": fg::witt_index(&space, &limits)? }),
    })
}

fn mass_cmd(a: &MassArgs) -> Result<Value> {
    if a.common.describe {
        return Ok(describe::mass());
    }
    let r = || require(&a.r, "r");
    Ok(match a.action.unwrap_or(MassAction::Value) {
        MassAction::Value => {
            let inp = match (&a.n, &a.common.input) {
                (Some(n), _) => MassInput {
                    n: *n,
                    p: require(&a.p, "p")?,
                    vol: rational::parse(&a.vol)?,
                    disc: a.disc,
                    even_local_variant: a.variant.parse::<EvenLocalVariant>()?,
                },
                (None, path) => {
                    let doc = input::document(path.as_deref())?
                        .ok_or_else(|| Error::Domain("missing --n or an input document".into()))?;
                    input::parse_doc(&doc)?
                }
            };
            to_json(&mass::mass(&inp)?)
        }
        MassAction::Bernoulli => json!({ "value": rational::format(&mass::bernoulli(r()?)) }),
        MassAction::Zeta => json!({ "value": rational::format(&mass::zeta_neg(r()?)?) }),
        MassAction::L => json!({ "value": rational::format(&mass::l_neg(r()?, require(&a.disc, "disc")?)?) }),
        MassAction::Deuring => json!({ "value": rational::format(&mass::deuring(require(&a.p, "p")?)?) }),
    })
}
