//! JSON records and text for the pipeline results.

use nahm_core::algebra::{GaussRat, P1Point};
use nahm_core::birational::ChiLedger;
use nahm_core::higgs::{parabolic_euler_char, ConditionWitness, WeightLedger};
use nahm_core::moduli::StabilityVerdict;
use nahm_core::transform::{
    render_matrix, BranchRecord, InvolutionReport, Side, SideEntry, SideTransform, TransformedData,
};
use serde_json::{json, Value};

use crate::weights::WeightNames;

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn points(v: &[(GaussRat, u32)]) -> Value {
    v.iter().map(|(p, m)| json!({ "point": p.to_string(), "multiplicity": m })).collect()
}

fn opt(v: &Option<GaussRat>) -> Value {
    v.as_ref().map_or(Value::Null, |x| Value::String(x.to_string()))
}

pub fn ledger(l: &WeightLedger, names: &WeightNames) -> Value {
    let entries: Vec<Value> = l
        .entries
        .iter()
        .map(|e| {
            let mut v = json!({
                "site": e.site.to_string(),
                "weight": e.weight.to_string(),
                "multiplicity": e.multiplicity,
                "deletable": e.deletable,
            });
            if let Some(s) = names.symbol(&e.weight) {
                v["symbol"] = Value::String(s);
            }
            v
        })
        .collect();
    json!({
        "baseChi": l.base_chi,
        "entries": entries,
        "parabolicEulerCharacteristic": parabolic_euler_char(l).to_string(),
    })
}

fn chi(c: &ChiLedger) -> Value {
    json!({ "chi": c.chi, "blownUp": c.blown_up, "contracted": c.contracted })
}

fn entry(e: &SideEntry, names: &WeightNames) -> Value {
    let mut v = json!({
        "point": e.point.to_string(),
        "block": opt(&e.block),
        "label": opt(&e.label),
        "weight": e.weight.to_string(),
        "multiplicity": e.multiplicity,
    });
    if let Some(s) = names.symbol(&e.weight) {
        v["symbol"] = Value::String(s);
    }
    v
}

pub fn side(s: &Side, names: &WeightNames) -> Value {
    json!({
        "axis": s.axis.name(),
        "rank": s.rank,
        "curve": s.standard.render(),
        "entries": s.entries.iter().map(|e| entry(e, names)).collect::<Vec<_>>(),
        "degree": s.degree,
    })
}

fn branch(b: &BranchRecord) -> Value {
    json!({
        "base": b.base.to_string(),
        "fiber": b.fiber.to_string(),
        "eSource": b.branch.e_src,
        "eDual": b.branch.e_dual,
        "kappa": b.branch.kappa.to_string(),
        "weight": b.weight.to_string(),
        "dualWeight": b.dual_weight.to_string(),
        "extrapolated": b.extrapolated,
    })
}

fn side_transform(st: &SideTransform, names: &WeightNames) -> Value {
    let l = &st.ledgers;
    json!({
        "naive": st.naive.render(),
        "downChi": chi(&st.down_chi),
        "dualPoints": points(&st.dual_points),
        "dualOrders": points(&st.dual_orders),
        "dualRank": st.dual_rank,
        "branches": st.branches.iter().map(branch).collect::<Vec<_>>(),
        "finite": points(&st.finite),
        "fills": points(&st.fills),
        "ledgers": {
            "source": ledger(&l.source, names),
            "lifted": ledger(&l.lifted, names),
            "deleted": ledger(&l.deleted, names),
            "reread": ledger(&l.reread, names),
            "added": ledger(&l.added, names),
            "dual": ledger(&l.dual, names),
        },
        "upChi": chi(&st.up_chi),
        "dual": side(&st.dual, names),
    })
}

pub fn transformed(t: &TransformedData, names: &WeightNames) -> Value {
    let dual_polar: Vec<Value> = t
        .dual_polar
        .iter()
        .map(|d| {
            json!({
                "point": d.point.to_string(),
                "rank": d.rank,
                "order": d.order,
                "residueEigenvalues": strings(&d.residue_eigenvalues),
            })
        })
        .collect();
    let at_infinity: Vec<Value> = t
        .leading_at_infinity
        .iter()
        .map(|b| {
            json!({
                "eigenvalue": b.eigenvalue.to_string(),
                "multiplicity": b.multiplicity,
                "firstOrder": strings(&b.first_order),
            })
        })
        .collect();
    let param = t.param.as_ref().map_or(Value::Null, |p| {
        let [u, v, x, y] = p.render();
        json!({ "u": u, "v": v, "x": x, "y": y })
    });
    let (matrix, forms) = match &t.matrix {
        Some(m) => (
            json!(render_matrix(&m.affine)),
            json!(m.forms.iter().map(|row| row.iter().map(|f| f.render(&["x", "y"])).collect::<Vec<_>>()).collect::<Vec<_>>()),
        ),
        None => (Value::Null, Value::Null),
    };
    json!({
        "sourceRank": t.source_rank,
        "rank": t.rank,
        "standard": t.standard.render(),
        "naive": t.naive.render(),
        "dualPolar": dual_polar,
        "leadingAtInfinity": at_infinity,
        "charPoly": t.char_poly.render(),
        "charPolyProduct": t.char_poly_product.render(),
        "charPolyAffine": t.char_poly_affine.render("w", "ξ"),
        "ledger": ledger(&t.ledger, names),
        "dualDegree": t.dual_degree,
        "degreeCheck": {
            "parabolicDegree": t.degree_check.0.to_string(),
            "dualParabolicEulerCharacteristic": t.degree_check.1.to_string(),
            "agree": t.degree_check.0 == t.degree_check.1,
        },
        "param": param,
        "matrix": matrix,
        "matrixForms": forms,
        "sourceSide": side(&t.source_side, names),
        "side": side_transform(&t.side, names),
        "warnings": t.warnings,
        "notes": t.notes,
    })
}

pub fn witness(w: &ConditionWitness, names: &WeightNames) -> Value {
    json!({
        "point": w.point.to_string(),
        "holds": w.holds,
        "lowestWeight": names.render(&w.lowest_weight),
        "message": w.message,
    })
}

pub fn involution(r: &InvolutionReport, names: &WeightNames) -> Value {
    json!({
        "holds": r.holds(),
        "charPolyMatch": r.char_poly_match,
        "entriesMatch": r.entries_match,
        "ledgerMatch": r.ledger_match,
        "degreeMatch": r.degree_match,
        "twice": r.twice.render(),
        "expected": r.expected.render(),
        "twiceEntries": r.twice_entries.iter().map(|e| entry(e, names)).collect::<Vec<_>>(),
        "expectedEntries": r.expected_entries.iter().map(|e| entry(e, names)).collect::<Vec<_>>(),
    })
}

pub fn verdict(v: &StabilityVerdict, names: &WeightNames) -> Value {
    match v {
        StabilityVerdict::Stable { reason } => json!({ "verdict": v.name(), "reason": reason }),
        StabilityVerdict::Unstable { witness, slope } => json!({
            "verdict": v.name(),
            "slope": names.render(slope),
            "witness": {
                "basis": witness.basis.iter().map(|b| strings(b)).collect::<Vec<_>>(),
                "rank": witness.rank(),
                "degree": witness.degree,
                "parabolicDegree": names.render(&witness.parabolic_degree),
            },
        }),
        StabilityVerdict::Undetermined { factors, reason } => {
            json!({ "verdict": v.name(), "factors": factors, "reason": reason })
        }
    }
}

// Text

pub fn ledger_lines(l: &WeightLedger, names: &WeightNames, indent: &str) -> Vec<String> {
    l.multiset()
        .into_iter()
        .map(|(site, w, m)| {
            let times = if m > 1 { format!(" (x{})", m) } else { String::new() };
            format!("{}{}: {}{}", indent, site, names.render(&w), times)
        })
        .collect()
}

pub fn matrix_lines(m: &[Vec<String>], indent: &str) -> Vec<String> {
    m.iter().map(|row| format!("{}[{}]", indent, row.join(", "))).collect()
}

pub fn transformed_text(t: &TransformedData, names: &WeightNames) -> String {
    let mut out = vec![
        format!("rank {} -> {}", t.source_rank, t.rank),
        format!("standard curve: {}", t.standard.render()),
        format!("naive curve:    {}", t.naive.render()),
    ];
    if !t.dual_polar.is_empty() {
        out.push("dual polar points:".into());
        for d in &t.dual_polar {
            out.push(format!(
                "  ξ = {}: rank {}, order {}, residue eigenvalues [{}]",
                d.point,
                d.rank,
                d.order,
                strings(&d.residue_eigenvalues).join(", ")
            ));
        }
    }
    if !t.leading_at_infinity.is_empty() {
        out.push("leading term at ξ = inf:".into());
        for b in &t.leading_at_infinity {
            out.push(format!(
                "  eigenvalue {} with multiplicity {}, first order [{}]",
                b.eigenvalue,
                b.multiplicity,
                strings(&b.first_order).join(", ")
            ));
        }
    }
    out.push(format!("det(w - θ̂(ξ)) = {}", t.char_poly_affine.render("w", "ξ")));
    out.push(format!("transformed curve: {}", t.char_poly.render()));
    out.push("dual weights:".into());
    out.extend(ledger_lines(&t.ledger, names, "  "));
    out.push(format!(
        "parabolic degree {} -> parabolic Euler characteristic {}",
        names.render(&t.degree_check.0),
        names.render(&t.degree_check.1)
    ));
    if let Some(m) = &t.matrix {
        out.push("θ̂(ξ) =".into());
        out.extend(matrix_lines(&render_matrix(&m.affine), "  "));
    }
    for w in &t.warnings {
        out.push(format!("warning: {}", w));
    }
    for n in &t.notes {
        out.push(format!("note: {}", n));
    }
    out.join("\n")
}

pub fn entry_text(e: &SideEntry, names: &WeightNames) -> String {
    let tag = match (&e.block, &e.label) {
        (Some(b), Some(l)) => format!(" [{} / {}]", b, l),
        (Some(b), None) => format!(" [{}]", b),
        (None, Some(l)) => format!(" [/ {}]", l),
        (None, None) => String::new(),
    };
    let at = match &e.point {
        P1Point::Infinity => "inf".to_string(),
        p => p.to_string(),
    };
    format!("{}{}: {} (x{})", at, tag, names.render(&e.weight), e.multiplicity)
}
