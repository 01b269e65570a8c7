use serde::Serialize;
use serde_json::{json, Value};

use super::tame::TameWitness;
use super::{LocalError, Result};
use crate::arith::split_prime_power;
use crate::group::spec::{element_from_json, element_to_json, group_to_json, parse_group};
use crate::group::{Element, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Realizable,
    NotRealizable,
    OutOfRegime,
}

/// `I_p` is the normal closure of `a` in `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WildWitness {
    pub a: Element,
}

/// Outcome of an odd-order query. `decomposition` and `inertia` are subgroups of
/// the queried group; a realizable verdict carries both witnesses.
#[derive(Clone, Debug)]
pub struct OddVerdict {
    pub status: Status,
    pub p: u64,
    pub decomposition: Option<Subgroup>,
    pub inertia: Subgroup,
    pub tame: Option<TameWitness>,
    pub wild: Option<WildWitness>,
    pub reason: String,
}

impl OddVerdict {
    pub fn is_realizable(&self) -> bool {
        self.status == Status::Realizable
    }

    pub(crate) fn negative(p: u64, inertia: &Subgroup, reason: impl Into<String>) -> OddVerdict {
        OddVerdict {
            status: Status::NotRealizable,
            p,
            decomposition: None,
            inertia: inertia.clone(),
            tame: None,
            wild: None,
            reason: reason.into(),
        }
    }

    /// Re-checks a realizable verdict without reusing any search state.
    pub fn validate(&self) -> std::result::Result<(), String> {
        if !self.is_realizable() {
            return Ok(());
        }
        let d_sub = self.decomposition.as_ref().ok_or("missing decomposition group")?;
        let d = d_sub.as_group();
        let i = d_sub.restrict(&self.inertia).map_err(|_| "I is not contained in D")?;
        let tame = self.tame.as_ref().ok_or("missing tame witness")?;
        let wild = self.wild.as_ref().ok_or("missing wild witness")?;
        validate_parts(&d, &i, self.p, tame, wild)
    }

    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "status": self.status,
            "p": self.p,
            "reason": self.reason,
            "I": self.inertia.generator_elements().iter().map(element_to_json).collect::<Vec<_>>(),
        });
        if let Some(d) = &self.decomposition {
            out["D"] = group_to_json(&d.as_group());
        }
        if let Some(t) = &self.tame {
            out["tame"] = json!({
                "sigma": element_to_json(&t.sigma),
                "tau": element_to_json(&t.tau),
                "e": t.e,
                "f": t.f,
                "r": t.r,
                "consistency": t.consistency(self.p),
            });
        }
        if let Some(w) = &self.wild {
            out["wild"] = json!({"a": element_to_json(&w.a)});
        }
        out
    }
}

fn validate_parts(
    d: &FiniteGroup,
    i: &Subgroup,
    p: u64,
    tame: &TameWitness,
    wild: &WildWitness,
) -> std::result::Result<(), String> {
    if !i.is_normal() {
        return Err("I is not normal in D".into());
    }
    // the p-elements of I form I_p exactly when the Sylow p-subgroup is normal
    let p_elements: Vec<usize> = i
        .members()
        .iter()
        .copied()
        .filter(|&x| split_prime_power(d.element_order(x) as u64, p).1 == 1)
        .collect();
    let (v, _) = split_prime_power(i.order() as u64, p);
    if p_elements.len() != (p as usize).pow(v) {
        return Err("I has no normal Sylow p-subgroup".into());
    }
    let i_p = d.subgroup_from_members(&p_elements);
    let a = d.index_of(&wild.a).ok_or("a is not in D")?;
    if d.normal_closure(&[a]) != i_p {
        return Err("normal closure of a is not I_p".into());
    }
    tame.validate(d, &i_p, i, p)
}

/// Parses a verdict emitted by [`OddVerdict::to_json`] and validates it.
pub fn verify_verdict_json(v: &Value) -> Result<()> {
    let bad = |m: &str| LocalError::InvalidWitness(m.to_string());
    if v.get("status").and_then(Value::as_str) != Some("realizable") {
        return Err(bad("only realizable verdicts carry a witness"));
    }
    let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("missing p"))?;
    let d = parse_group(v.get("D").ok_or_else(|| bad("missing D"))?)?;
    let i_gens = v
        .get("I")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing I"))?
        .iter()
        .map(|x| element_from_json(&d, x))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let i = d.subgroup_generated(&i_gens)?;
    let t = v.get("tame").ok_or_else(|| bad("missing tame witness"))?;
    let num = |k: &str| t.get(k).and_then(Value::as_u64).ok_or_else(|| bad("missing tame exponent"));
    let tame = TameWitness {
        sigma: element_from_json(&d, t.get("sigma").ok_or_else(|| bad("missing sigma"))?)?,
        tau: element_from_json(&d, t.get("tau").ok_or_else(|| bad("missing tau"))?)?,
        e: num("e")?,
        f: num("f")?,
        r: num("r")?,
    };
    let a = v.get("wild").and_then(|w| w.get("a")).ok_or_else(|| bad("missing wild witness"))?;
    let wild = WildWitness { a: element_from_json(&d, a)? };
    validate_parts(&d, &i, p, &tame, &wild).map_err(LocalError::InvalidWitness)
}
