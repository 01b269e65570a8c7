//! JSON group specs.
//!
//! ```json
//! {"kind":"perm","degree":3,"generators":[[1,2,0],[1,0,2]]}
//! {"kind":"gl2","p":5,"generators":[[2,0,0,1],[1,1,0,1]]}
//! {"kind":"abelian","factors":[2,4]}
//! {"kind":"semidirect","normal":{..},"acting":{..},"action":{"0":[..images..]}}
//! ```
//!
//! Permutations are 0-based image arrays, matrices are `[a, b, c, d]` for
//! `(a b; c d)`, and product elements are `[normal, acting]` pairs. In a
//! semidirect spec, `action` maps the position of an acting generator to the
//! images of the normal generators; absent positions act trivially. An optional
//! `generators` list of product elements selects a subgroup of the product.

use serde_json::{json, Value};

use super::construct::{abelian_group, semidirect_product};
use super::element::{Gl2Matrix, Permutation};
use super::finite::FiniteGroup;
use super::hom::Homomorphism;
use super::{Element, GroupError, Result};

fn invalid(msg: impl Into<String>) -> GroupError {
    GroupError::InvalidSpec(msg.into())
}

fn as_u64_list(v: &Value) -> Result<Vec<u64>> {
    v.as_array()
        .ok_or_else(|| invalid("expected an array of integers"))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| invalid("expected a non-negative integer")))
        .collect()
}

fn as_i64_list(v: &Value) -> Result<Vec<i64>> {
    v.as_array()
        .ok_or_else(|| invalid("expected an array of integers"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| invalid("expected an integer")))
        .collect()
}

fn generator_list(spec: &Value) -> Result<&Vec<Value>> {
    spec.get("generators")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("missing generators"))
}

/// Builds the group described by a spec.
pub fn parse_group(spec: &Value) -> Result<FiniteGroup> {
    let kind = spec.get("kind").and_then(Value::as_str).ok_or_else(|| invalid("missing kind"))?;
    match kind {
        "perm" => {
            let degree = spec.get("degree").and_then(Value::as_u64).ok_or_else(|| invalid("missing degree"))?;
            let gens = generator_list(spec)?
                .iter()
                .map(|g| parse_perm(g, degree as usize))
                .collect::<Result<Vec<_>>>()?;
            if gens.is_empty() {
                return Ok(FiniteGroup::trivial(degree as usize));
            }
            FiniteGroup::enumerate(&gens)
        }
        "gl2" => {
            let p = spec.get("p").and_then(Value::as_u64).ok_or_else(|| invalid("missing p"))?;
            if !crate::arith::is_prime(p) || p > u32::MAX as u64 {
                return Err(invalid(format!("{p} is not a prime")));
            }
            let mut gens = generator_list(spec)?
                .iter()
                .map(|g| parse_matrix(g, p as u32))
                .collect::<Result<Vec<_>>>()?;
            if gens.is_empty() {
                gens.push(Gl2Matrix::identity(p as u32).into());
            }
            FiniteGroup::enumerate(&gens)
        }
        "abelian" => {
            let factors = as_u64_list(spec.get("factors").ok_or_else(|| invalid("missing factors"))?)?;
            abelian_group(&factors)
        }
        "semidirect" | "product" => {
            let normal = parse_group(spec.get("normal").ok_or_else(|| invalid("missing normal"))?)?;
            let acting = parse_group(spec.get("acting").ok_or_else(|| invalid("missing acting"))?)?;
            let acting_spec_gens = spec_generators(spec.get("acting").expect("checked"), &acting)?;
            let normal_spec_gens = spec_generators(spec.get("normal").expect("checked"), &normal)?;
            let empty = serde_json::Map::new();
            let action_map = match spec.get("action") {
                None | Some(Value::Null) => &empty,
                Some(v) => v.as_object().ok_or_else(|| invalid("action must be an object"))?,
            };
            let mut autos = Vec::new();
            for &h in acting.generators() {
                let pos = acting_spec_gens.iter().position(|&x| x == h);
                let entry = pos.and_then(|k| action_map.get(&k.to_string()));
                let auto = match entry {
                    None => Homomorphism::identity(&normal),
                    Some(images) => {
                        let images = images.as_array().ok_or_else(|| invalid("action images must be an array"))?;
                        if images.len() != normal_spec_gens.len() {
                            return Err(invalid("one image per normal generator is required"));
                        }
                        let images = images
                            .iter()
                            .map(|v| element_from_json(&normal, v).and_then(|x| normal.require(&x)))
                            .collect::<Result<Vec<_>>>()?;
                        let aligned: Vec<usize> = normal
                            .generators()
                            .iter()
                            .map(|g| images[normal_spec_gens.iter().position(|x| x == g).expect("generator listed")])
                            .collect();
                        Homomorphism::from_generator_images(&normal, &normal, &aligned)
                            .map_err(|_| GroupError::NotAnAction)?
                    }
                };
                autos.push(auto);
            }
            let full = semidirect_product(&normal, &acting, &autos)?;
            match spec.get("generators") {
                None => Ok(full),
                Some(gens) => {
                    let gens = gens
                        .as_array()
                        .ok_or_else(|| invalid("generators must be an array"))?
                        .iter()
                        .map(|v| element_from_json(&full, v))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(full.subgroup_generated(&gens)?.as_group())
                }
            }
        }
        other => Err(invalid(format!("unknown kind {other:?}"))),
    }
}

/// Indices of the generators exactly as listed in a spec (identity and repeats kept).
fn spec_generators(spec: &Value, g: &FiniteGroup) -> Result<Vec<usize>> {
    match spec.get("kind").and_then(Value::as_str) {
        Some("perm") | Some("gl2") => generator_list(spec)?
            .iter()
            .map(|v| element_from_json(g, v).and_then(|x| g.require(&x)))
            .collect(),
        _ => Ok(g.generators().to_vec()),
    }
}

fn parse_perm(v: &Value, degree: usize) -> Result<Element> {
    let images: Vec<u32> = as_u64_list(v)?.into_iter().map(|x| x as u32).collect();
    if images.len() != degree {
        return Err(invalid("permutation length differs from degree"));
    }
    Permutation::from_images(images)
        .map(Element::Perm)
        .ok_or_else(|| invalid("permutation images are not a bijection"))
}

fn parse_matrix(v: &Value, p: u32) -> Result<Element> {
    let e = as_i64_list(v)?;
    if e.len() != 4 {
        return Err(invalid("matrix needs four entries"));
    }
    Gl2Matrix::new(p, [e[0], e[1], e[2], e[3]])
        .map(Element::Matrix)
        .ok_or_else(|| invalid("matrix is singular"))
}

/// Reads an element of `g` from its JSON form.
pub fn element_from_json(g: &FiniteGroup, v: &Value) -> Result<Element> {
    let x = match g.element(0) {
        Element::Perm(p) => parse_perm(v, p.degree())?,
        Element::Matrix(m) => parse_matrix(v, m.modulus())?,
        Element::Tuple(..) => {
            let (n, h) = g.factors().expect("product group");
            let pair = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| invalid("expected [normal, acting]"))?;
            Element::tuple(element_from_json(&n, &pair[0])?, element_from_json(&h, &pair[1])?)
        }
    };
    g.require(&x)?;
    Ok(x)
}

pub fn element_to_json(x: &Element) -> Value {
    match x {
        Element::Perm(p) => json!(p.images()),
        Element::Matrix(m) => json!(m.entries()),
        Element::Tuple(n, h) => json!([element_to_json(n), element_to_json(h)]),
    }
}

/// A spec that [`parse_group`] turns back into the same group.
pub fn group_to_json(g: &FiniteGroup) -> Value {
    let gens: Vec<Value> = g.generator_elements().iter().map(element_to_json).collect();
    match g.element(0) {
        Element::Perm(p) => json!({"kind": "perm", "degree": p.degree(), "generators": gens}),
        Element::Matrix(m) => json!({"kind": "gl2", "p": m.modulus(), "generators": gens}),
        Element::Tuple(..) => {
            let (n, h) = g.factors().expect("product group");
            let mut action = serde_json::Map::new();
            for (k, &hg) in h.generators().iter().enumerate() {
                let images: Vec<Value> = n
                    .generators()
                    .iter()
                    .map(|&ng| element_to_json(n.element(g.factor_action(hg, ng).expect("product"))))
                    .collect();
                if images.iter().zip(n.generators()).any(|(v, &ng)| *v != element_to_json(n.element(ng))) {
                    action.insert(k.to_string(), Value::Array(images));
                }
            }
            json!({
                "kind": "semidirect",
                "normal": group_to_json(&n),
                "acting": group_to_json(&h),
                "action": action,
                "generators": gens,
            })
        }
    }
}
