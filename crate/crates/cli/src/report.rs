//! JSON serialization of analysis results.

use serde_json::{json, Value};

use formsplit::criteria::CriterionVerdict;
use formsplit::decomposition::{BensonAttempt, BensonOutcome, MaximallyFine, SplitWitness};
use formsplit::{print_form, CriterionResult, DecompositionReport, FactorList, Form, LinearChange, Matrix, Subspace};

pub fn matrix_rows(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(|c| Value::String(c.to_string())).collect()))
            .collect(),
    )
}

/// Row `j` is the `j`-th new basis vector.
pub fn basis_rows(b: &LinearChange) -> Value {
    matrix_rows(&b.matrix().transpose())
}

fn forms(s: &Subspace) -> Value {
    Value::Array(s.basis_forms().iter().map(|f| Value::String(print_form(f))).collect())
}

fn one_based(v: &[usize]) -> Value {
    Value::Array(v.iter().map(|&i| json!(i + 1)).collect())
}

fn normalized(f: &Form) -> String {
    print_form(&f.normalized().1)
}

pub fn factors(fl: &FactorList) -> Value {
    Value::Array(
        fl.factors
            .iter()
            .map(|f| {
                json!({
                    "poly": print_form(&f.form),
                    "multiplicity": f.multiplicity,
                    "essential_dim": f.essential.dim(),
                })
            })
            .collect(),
    )
}

pub fn split(w: &SplitWitness) -> Value {
    json!({
        "bipartition": [one_based(&w.bipartition.0), one_based(&w.bipartition.1)],
        "g1": print_form(&w.g1),
        "g2": print_form(&w.g2),
        "e1": forms(&w.e1),
        "e2": forms(&w.e2),
        "basis": basis_rows(&w.basis_change),
        "f1": print_form(&w.f1),
        "f2": print_form(&w.f2),
    })
}

pub fn maximally_fine(mf: &MaximallyFine) -> Value {
    json!({
        "basis": basis_rows(&mf.basis),
        "summands": mf.summands.iter().map(|s| json!({
            "variables": one_based(&s.variables),
            "essential_dim": s.essential_dim(),
            "scalar": s.scalar.to_string(),
            "form": print_form(&s.form),
        })).collect::<Vec<_>>(),
    })
}

pub fn criterion(v: &CriterionVerdict) -> Value {
    json!({
        "result": match v.result {
            CriterionResult::NotDirectSum => "not_direct_sum",
            CriterionResult::Inconclusive => "inconclusive",
        },
        "reason": v.reason.to_string(),
    })
}

fn benson(b: &BensonAttempt) -> Value {
    match b {
        BensonAttempt::Failed(e) => json!({ "outcome": "failed", "message": e }),
        BensonAttempt::Outcome(BensonOutcome::Proportional { lambda }) => {
            json!({ "outcome": "proportional", "lambda": lambda.to_string() })
        }
        BensonAttempt::Outcome(BensonOutcome::LdsIndicator { matrix, eigenvalue }) => json!({
            "outcome": "lds_indicator",
            "matrix": matrix_rows(matrix),
            "eigenvalue": eigenvalue.to_string(),
        }),
        BensonAttempt::Outcome(BensonOutcome::Split { matrix, basis, blocks, summands }) => json!({
            "outcome": "split",
            "matrix": matrix_rows(matrix),
            "basis": basis_rows(basis),
            "blocks": blocks.iter().map(|b| one_based(b)).collect::<Vec<_>>(),
            "summands": summands.iter().map(print_form).collect::<Vec<_>>(),
        }),
    }
}

pub fn report(input: &Form, r: &DecompositionReport, seed: u64, timings: Option<Value>) -> Value {
    json!({
        "input": print_form(input),
        "n": r.n,
        "degree": r.degree,
        "field": r.field.to_string(),
        "assumptions_ok": r.assumptions_ok,
        "concise": r.concise,
        "smooth": r.smooth,
        "associated_form": r.associated_form.as_ref().map(normalized),
        "factors": r.factor_list.as_ref().map(factors),
        "splits": r.verdict.witnesses().iter().map(split).collect::<Vec<_>>(),
        "verdict": r.verdict.tag(),
        "fiber_dimension": r.fiber_dimension,
        "maximally_fine": r.maximally_fine.as_ref().map(maximally_fine),
        "criteria": r.criteria.as_ref().map(|c| json!({ "mt3": criterion(&c.mt3), "mt4": criterion(&c.mt4) })),
        "field_note": r.field_note,
        "benson": r.benson.as_ref().map(benson),
        "timings_ms": timings,
        "seed": seed,
    })
}
