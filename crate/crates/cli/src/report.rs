//! JSON views of library reports. Non-finite numbers serialize as `null`.

use matalg::maps::{HomReport, InvWitness, InvertibilityReport, KInvReport};
use matalg::property_l::{KLForm, KLWitness};
use matalg::{KLReport, Matrix, MatrixSet, Numbering, TriangReport, Verdict, Witness};
use serde_json::{json, Value};

use crate::doc::{pair, to_entries};

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn names(set: &MatrixSet, letters: &[usize]) -> Vec<String> {
    let all = set.names();
    letters.iter().map(|&l| all[l].to_string()).collect()
}

fn scalars(v: &[matalg::Scalar]) -> Value {
    json!(v.iter().copied().map(pair).collect::<Vec<_>>())
}

pub fn kl_witness(w: &KLWitness) -> Value {
    json!({
        "kind": "property-kL",
        "seed": w.seed,
        "trial": w.trial,
        "k": w.k,
        "form": w.form.as_str(),
        "residual": num(w.residual),
        "coefficients": w.coefficients.iter().map(to_entries).collect::<Vec<_>>(),
        "lhs": scalars(&w.lhs),
        "rhs": scalars(&w.rhs),
    })
}

pub fn parse_kl_form(s: &str) -> Option<KLForm> {
    [KLForm::Determinant, KLForm::Traces].into_iter().find(|f| f.as_str() == s)
}

pub fn witness(set: &MatrixSet, w: &Witness, residual: f64) -> Value {
    let mut v = match w {
        Witness::CommutatorWord { pair, word } => json!({
            "kind": "commutator-word",
            "pair": names(set, &[pair.0, pair.1]),
            "word": names(set, &word.letters),
            "degree": word.degree() + 2,
        }),
        Witness::Permutation { word, permuted } => json!({
            "kind": "permutation",
            "word": names(set, &word.letters),
            "permuted": names(set, &permuted.letters),
            "degree": word.degree(),
        }),
        Witness::NilpotentWord { word } => json!({
            "kind": "nilpotent-word",
            "word": names(set, &word.letters),
            "degree": word.degree() + 2,
        }),
        Witness::Monomial { x_exps, y_exps } => json!({
            "kind": "monomial",
            "x_exps": x_exps,
            "y_exps": y_exps,
            "degree": x_exps.iter().chain(y_exps).sum::<usize>(),
        }),
        Witness::Identity => json!({ "kind": "identity" }),
        Witness::CommutatorOutsideRadical { pair } => json!({
            "kind": "commutator-outside-radical",
            "pair": names(set, &[pair.0, pair.1]),
        }),
        Witness::NoNumbering => json!({ "kind": "no-numbering" }),
        Witness::PropertyKL(k) => kl_witness(k),
    };
    v["residual"] = num(residual);
    v["description"] = json!(w.to_string());
    v
}

pub fn triang(set: &MatrixSet, r: &TriangReport) -> Value {
    let mut v = json!({
        "criterion": r.criterion.as_str(),
        "verdict": r.verdict.as_str(),
        "max_residual": num(r.max_residual),
    });
    if let Some((w, res)) = &r.witness {
        v["witness"] = witness(set, w, *res);
    }
    if let Some(note) = &r.note {
        v["note"] = json!(note);
    }
    v
}

pub fn numbering(set: &MatrixSet, num: &Numbering) -> Value {
    let map: serde_json::Map<String, Value> = set
        .names()
        .iter()
        .zip(&num.roots)
        .map(|(name, roots)| (name.to_string(), scalars(roots)))
        .collect();
    Value::Object(map)
}

pub fn kl_report(r: &KLReport) -> Value {
    let mut v = json!({
        "k": r.k,
        "verdict": r.verdict.as_str(),
        "trials": r.trials,
        "form": r.form.as_str(),
        "seed": r.seed,
        "max_residual": num(r.max_residual),
    });
    if r.verdict != Verdict::True {
        if let Some(w) = &r.witness {
            v["witness"] = kl_witness(w);
        }
    }
    v
}

pub fn inv_witness(k: usize, w: &InvWitness) -> Value {
    json!({
        "kind": "invertibility",
        "k": k,
        "trial": w.trial,
        "m": w.m,
        "source": w.source,
        "residual": num(w.residual),
        "element": to_entries(&w.element),
    })
}

pub fn invertibility(r: &InvertibilityReport) -> Value {
    let mut v = json!({
        "verdict": r.verdict.as_str(),
        "max_residual": num(r.max_residual),
        "trials": r.trials,
        "m_max": r.m_max,
        "seed": r.seed,
        "note": InvertibilityReport::NOTE,
    });
    if r.verdict != Verdict::True {
        if let Some(w) = &r.witness {
            v["witness"] = inv_witness(1, w);
        }
    }
    v
}

pub fn k_invertibility(r: &KInvReport) -> Value {
    let mut v = json!({
        "k": r.k,
        "verdict": r.verdict.as_str(),
        "max_residual": num(r.max_residual),
        "trials": r.trials,
        "m_max": r.m_max,
        "seed": r.seed,
    });
    if r.verdict != Verdict::True {
        if let Some(w) = &r.witness {
            v["witness"] = inv_witness(r.k, w);
        }
    }
    v
}

pub fn hom(kind: &str, r: &HomReport) -> Value {
    let mut v = json!({ "verdict": r.verdict.as_str() });
    if let Some((i, j, res)) = r.witness {
        v["witness"] = json!({
            "kind": kind,
            "basis_pair": [i, j],
            "residual": num(res),
        });
    }
    v
}

pub fn matrix(m: &Matrix) -> Value {
    json!(to_entries(m))
}

/// Reads a matrix back from `[[[re, im], …], …]`.
pub fn parse_matrix(v: &Value) -> Option<Matrix> {
    let rows = v.as_array()?;
    let n = rows.len();
    let mut m = Matrix::zeros(n, rows.first().and_then(Value::as_array).map_or(0, Vec::len));
    for (i, row) in rows.iter().enumerate() {
        for (j, z) in row.as_array()?.iter().enumerate() {
            let z = z.as_array()?;
            m[(i, j)] = matalg::Scalar::new(z.first()?.as_f64()?, z.get(1)?.as_f64()?);
        }
    }
    Some(m)
}
