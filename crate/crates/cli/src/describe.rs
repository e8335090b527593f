//! Schemas printed by `--describe`.

use serde_json::{json, Value};

const RATIONAL: &str = "exact rational as a \"num/den\" string";

pub fn invariants() -> Value {
    json!({
        "subcommand": "invariants",
        "actions": {
            "hilbert": { "flags": ["--a", "--b", "--place"], "output": { "symbol": "±1" } },
            "square-class": { "flags": ["--a", "--place"], "output": "square class object tagged by \"place\"" },
            "hasse": { "flags": ["--form", "--place"], "output": { "hasse": "±1" } },
            "local": { "flags": ["--form", "--place"], "output": { "dim": "integer", "det": "square class", "hasse": "±1", "signature": "[r, s] at inf only" } },
            "isometric": { "flags": ["--form", "--other", "--place"], "output": { "isometric": "boolean" } },
            "oracle": { "flags": ["--a", "--b", "--p", "--depth"], "output": { "symbol": "±1" } }
        },
        "input": { "form": ["rational strings"], "other": ["rational strings, optional"] },
        "rational": RATIONAL,
        "place": "inf or an odd prime"
    })
}

pub fn lattice() -> Value {
    json!({
        "subcommand": "lattice",
        "actions": {
            "jordan": { "output": { "blocks": [{ "scale": "integer", "unit_gram": "matrix" }], "witness": "matrix" } },
            "smith": { "output": { "valuations": ["integer"] } },
            "vertex": { "output": { "is_vertex": "boolean", "t": "integer", "quotient": "anisotropic | split | null", "kind": "split | nonsplit | null" } },
            "dual": { "output": { "gram": "matrix", "p": "prime" } },
            "ambient": { "output": { "form": ["rational strings"], "invariants": "local invariants at p" } },
            "t-max": { "flags": ["--n", "--det", "--p"], "output": { "t_max": "integer" } },
            "construct": { "flags": ["--p", "--n", "--det", "--eps", "--kind self_dual|almost_self_dual"], "output": { "gram": "matrix", "p": "prime" } }
        },
        "input": { "gram": [["rational strings"]], "p": "odd prime" },
        "flags": { "--gram": "rows separated by ';', entries by ','" },
        "rational": RATIONAL
    })
}

pub fn global() -> Value {
    json!({
        "subcommand": "global",
        "actions": {
            "profile": { "output": "profile" },
            "check": { "output": { "reciprocal": "boolean" } },
            "nearby": { "flags": ["--p"], "output": "profile" },
            "realize": { "flags": ["--bound"], "output": { "form": ["rational strings"] } }
        },
        "input": "a profile, or { \"form\": [rational strings] }; --form builds the profile of a form",
        "profile": {
            "dim": "integer",
            "signature": ["r", "s"],
            "det": "signed squarefree integer, optional",
            "primes": { "<prime>": { "det": "square | nonsquare | p_square | p_nonsquare | null at 2", "eps": "±1" } }
        }
    })
}

pub fn eo() -> Value {
    json!({
        "subcommand": "eo",
        "flags": {
            "--family": "B | D",
            "--m": "rank",
            "--sigma": "identity | swap_last_pair",
            "--K": "default | comma-separated nodes",
            "--w, --v": "element as a word, e.g. 0,2,t for s0 s2 τ",
            "--label": "stratum label, e.g. 0,1"
        },
        "actions": ["datum", "adm", "min-reps", "eo", "list-cox", "table", "j-set", "length", "bruhat", "t-sigma"],
        "element": { "word": ["node"], "omega": "0 | 1", "length": "integer" },
        "list-cox": "elements with label, sigma_support and t_sigma, sorted by (length, word)"
    })
}

pub fn dl() -> Value {
    json!({
        "subcommand": "dl",
        "flags": { "--t": "even dimension", "--kind": "split | nonsplit", "--p": "odd prime", "--k": "extension degree", "--d": "subspace dimension" },
        "actions": {
            "count": { "output": { "points": "integer", "orbits": ["Frobenius orbit sizes"] } },
            "points": { "output": { "field": "field", "points": ["echelon matrices of coefficient vectors"] } },
            "isotropic": { "output": { "field": "field", "count": "integer", "subspaces": ["matrices"] } },
            "lagrangians": { "output": { "field": "field", "count": "integer", "subspaces": ["matrices"] } },
            "orientations": { "output": { "field": "field", "lines": ["two matrices"] } },
            "witt": { "output": { "witt_index": "integer" } }
        },
        "field": { "p": "prime", "k": "degree", "modulus": ["coefficients, low to high"] },
        "env": "SUPERSPECIAL_FIELD_CAP overrides the field-size cap (default 125)"
    })
}

pub fn mass() -> Value {
    json!({
        "subcommand": "mass",
        "actions": {
            "value": { "flags": ["--n", "--p", "--vol", "--disc", "--variant"], "output": { "value": RATIONAL, "abs_value": RATIONAL } },
            "bernoulli": { "flags": ["--r"], "output": { "value": RATIONAL } },
            "zeta": { "flags": ["--r"], "output": { "value": "ζ(1-2r)" } },
            "l": { "flags": ["--r", "--disc"], "output": { "value": "L(1-r, χ_disc)" } },
            "deuring": { "flags": ["--p"], "output": { "value": "(p-1)/24" } }
        },
        "input": { "n": "integer", "p": "odd prime", "vol": RATIONAL, "disc": "fundamental discriminant, even n only", "even_local_variant": "corrected | as_printed" }
    })
}
