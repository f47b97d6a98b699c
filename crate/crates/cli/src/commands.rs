//! One handler per registered command.

use klein33::incidence::{self, Blade, ManifoldClass, RegulusSample};
use klein33::lines::{self, Coords6};
use klein33::transforms::{self, Closure, Kind, NullPolarity, ProjMatrix4, Versor};
use klein33::{Error, Multivector};
use serde_json::{json, Map, Value};

use crate::json as codec;
use crate::{Failure, Options};

pub const COMMANDS: [&str; 20] = [
    "embed-line",
    "line-from-points",
    "line-from-planes",
    "omega",
    "classify-blade",
    "opns",
    "ipns",
    "bundle-vertex",
    "field-plane",
    "regulus-form",
    "regulus-sample",
    "opposite-regulus",
    "complex-pitch-axis",
    "sandwich",
    "versor-to-matrix",
    "matrix-to-versor",
    "decompose-null-polarities",
    "null-polarity",
    "grade1-check",
    "meet-lines",
];

/// Payload fields with unknown keys rejected up front.
struct Payload<'a> {
    map: &'a Map<String, Value>,
}

impl<'a> Payload<'a> {
    fn new(v: &'a Value, allowed: &[&str]) -> Result<Self, Failure> {
        let map = v
            .as_object()
            .ok_or_else(|| Failure::schema("payload must be a JSON object"))?;
        if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Failure::schema(format!(
                "unknown payload field {k:?}; expected one of {allowed:?}"
            )));
        }
        if let Some(order) = map.get("order") {
            if order != &codec::order() {
                return Err(Failure::schema(format!(
                    "coordinate order must be {:?}",
                    lines::ORDER
                )));
            }
        }
        Ok(Payload { map })
    }

    fn get(&self, key: &str) -> Option<&'a Value> {
        self.map.get(key)
    }

    fn req(&self, key: &str) -> Result<&'a Value, Failure> {
        self.get(key)
            .ok_or_else(|| Failure::schema(format!("missing payload field {key:?}")))
    }

    fn coords(&self, key: &str) -> Result<Coords6, Failure> {
        codec::rationals::<6>(self.req(key)?, key)
    }

    fn quad(&self, key: &str) -> Result<[klein33::Rational; 4], Failure> {
        codec::rationals::<4>(self.req(key)?, key)
    }

    fn mv(&self, key: &str) -> Result<Multivector, Failure> {
        codec::multivector(self.req(key)?, key)
    }

    /// `blade` as a multivector map, or `factors` as a list of vectors.
    fn blade(&self) -> Result<Blade, Failure> {
        match (self.get("blade"), self.get("factors")) {
            (Some(b), None) => Ok(Blade::new(codec::multivector(b, "blade")?)?),
            (None, Some(f)) => Ok(Blade::from_factors(&codec::coords_list(f, "factors")?)?),
            _ => Err(Failure::schema(
                "give exactly one of \"blade\" or \"factors\"",
            )),
        }
    }

    fn transformation(&self) -> Result<ProjMatrix4, Failure> {
        let m = codec::matrix(self.req("matrix")?, 4, "matrix")?;
        let kind = match self.req("kind")?.as_str() {
            Some("collineation") => Kind::Collineation,
            Some("correlation") => Kind::Correlation,
            _ => {
                return Err(Failure::schema(
                    "kind must be \"collineation\" or \"correlation\"",
                ))
            }
        };
        Ok(ProjMatrix4::new(m, kind)?)
    }
}

const BLADE_FIELDS: &[&str] = &["blade", "factors", "order"];

pub fn dispatch(
    command: &str,
    payload: &Value,
    options: &Options,
    diagnostics: &mut Vec<String>,
) -> Result<Value, Failure> {
    match command {
        "embed-line" => {
            let p = Payload::new(payload, &["line", "order"])?;
            let l = p.coords("line")?;
            Ok(json!({ "multivector": codec::mv(&lines::embed(&l)) }))
        }
        "line-from-points" => {
            let p = Payload::new(payload, &["x", "y"])?;
            let l = lines::line_from_points(&p.quad("x")?, &p.quad("y")?)?;
            Ok(json!({ "line": codec::vector(&l), "order": codec::order() }))
        }
        "line-from-planes" => {
            let p = Payload::new(payload, &["u", "v"])?;
            let l = lines::line_from_planes(&p.quad("u")?, &p.quad("v")?)?;
            Ok(json!({ "line": codec::vector(&l), "order": codec::order() }))
        }
        "omega" => {
            let p = Payload::new(payload, &["l1", "l2", "order"])?;
            Ok(json!({ "omega": codec::rat(&lines::omega(&p.coords("l1")?, &p.coords("l2")?)) }))
        }
        "classify-blade" => {
            let p = Payload::new(payload, BLADE_FIELDS)?;
            Ok(class_json(&incidence::classify(&p.blade()?)?))
        }
        "opns" | "ipns" => {
            let p = Payload::new(payload, BLADE_FIELDS)?;
            let b = p.blade()?;
            let basis = if command == "opns" {
                b.opns()
            } else {
                b.ipns()
            };
            Ok(json!({
                "dimension": basis.len(),
                "basis": codec::vectors(&basis),
                "order": codec::order(),
            }))
        }
        "bundle-vertex" => {
            let p = Payload::new(payload, BLADE_FIELDS)?;
            Ok(json!({ "point": codec::vector(&incidence::bundle_vertex(&p.blade()?)?) }))
        }
        "field-plane" => {
            let p = Payload::new(payload, BLADE_FIELDS)?;
            Ok(json!({ "plane": codec::vector(&incidence::field_plane(&p.blade()?)?) }))
        }
        "regulus-form" => {
            let p = Payload::new(payload, BLADE_FIELDS)?;
            Ok(json!({ "matrix": codec::mat(&incidence::regulus_form(&p.blade()?)?) }))
        }
        "regulus-sample" => {
            let p = Payload::new(payload, &["blade", "factors", "n", "order"])?;
            let n = match p.get("n") {
                None => options.samples,
                Some(v) => v
                    .as_u64()
                    .ok_or_else(|| Failure::schema("n must be a non-negative integer"))?
                    as usize,
            };
            match incidence::regulus_sample(&p.blade()?, n, options.seed)? {
                RegulusSample::Exact(ls) => Ok(json!({
                    "exact": true,
                    "lines": codec::vectors(&ls),
                    "order": codec::order(),
                })),
                RegulusSample::Approximate(_) if options.exact => {
                    Err(Error::NoRationalPoint.into())
                }
                RegulusSample::Approximate(ls) => {
                    diagnostics.push("floating fallback used".into());
                    Ok(json!({ "exact": false, "lines": ls, "order": codec::order() }))
                }
            }
        }
        "opposite-regulus" => {
            let p = Payload::new(payload, BLADE_FIELDS)?;
            let (b, surface) = incidence::opposite_regulus(&p.blade()?)?;
            Ok(json!({
                "blade": codec::mv(b.mv()),
                "surface": surface.map(|s| s.name()),
            }))
        }
        "complex-pitch-axis" => {
            let p = Payload::new(payload, &["complex", "order"])?;
            let c = p.coords("complex")?;
            let (pitch, axis) = lines::complex_pitch_axis(&c)?;
            Ok(json!({
                "pitch": codec::rat(&pitch),
                "axis": codec::vector(&axis),
                "singular": lines::complex_is_singular(&c),
                "order": codec::order(),
            }))
        }
        "sandwich" => {
            let p = Payload::new(payload, &["versor", "x"])?;
            let g = p.mv("versor")?;
            Ok(json!({ "result": codec::mv(&transforms::sandwich(&g, &p.mv("x")?)) }))
        }
        "versor-to-matrix" => {
            let p = Payload::new(payload, &["versor"])?;
            let m = transforms::versor_to_matrix(&p.mv("versor")?)?;
            Ok(json!({ "matrix": codec::mat(&m.matrix), "kind": m.kind.name() }))
        }
        "matrix-to-versor" => {
            let p = Payload::new(payload, &["matrix", "kind"])?;
            let v = transforms::matrix_to_versor(&p.transformation()?)?;
            Ok(versor_json(&v))
        }
        "decompose-null-polarities" => {
            let p = Payload::new(payload, &["matrix", "kind"])?;
            let ps = transforms::decompose_null_polarities(&p.transformation()?)?;
            let list: Vec<Value> = ps
                .iter()
                .map(|q| json!({ "vector": codec::vector(q.vector()), "matrix": codec::mat(&q.matrix()) }))
                .collect();
            Ok(json!({ "count": ps.len(), "polarities": list, "order": codec::order() }))
        }
        "null-polarity" => {
            let p = Payload::new(payload, &["vector", "matrix", "order"])?;
            let np = match (p.get("vector"), p.get("matrix")) {
                (Some(_), None) => NullPolarity::from_vector(&p.coords("vector")?)?,
                (None, Some(m)) => NullPolarity::from_matrix(&codec::matrix(m, 4, "matrix")?)?,
                _ => {
                    return Err(Failure::schema(
                        "give exactly one of \"vector\" or \"matrix\"",
                    ))
                }
            };
            Ok(json!({
                "vector": codec::vector(np.vector()),
                "matrix": codec::mat(&np.matrix()),
                "pfaffian": codec::rat(&np.pfaffian()),
                "singular": np.is_singular(),
                "linemap": codec::mat(&transforms::vector_to_linemap6(np.vector())),
                "order": codec::order(),
            }))
        }
        "grade1-check" => {
            let p = Payload::new(payload, &["versor"])?;
            let g = p.mv("versor")?;
            Ok(match transforms::grade1_closure_check(&g)? {
                Closure::Holds => {
                    let v = Versor::new(g)?;
                    json!({
                        "holds": true,
                        "parity": v.parity().name(),
                        "norm": codec::rat(v.norm()),
                        "norm_sign": v.norm_sign(),
                    })
                }
                Closure::Fails { basis, residue } => json!({
                    "holds": false,
                    "basis": basis,
                    "residue": codec::mv(&residue),
                }),
            })
        }
        "meet-lines" => {
            let p = Payload::new(payload, &["l1", "l2", "order"])?;
            let x = incidence::meet_lines_p3(&p.coords("l1")?, &p.coords("l2")?)?;
            Ok(json!({ "point": codec::vector(&x) }))
        }
        other => Err(Failure::new(
            "E_CMD",
            format!(
                "unknown command {other:?}; known commands: {}",
                COMMANDS.join(", ")
            ),
        )),
    }
}

fn class_json(c: &ManifoldClass) -> Value {
    let mut out = json!({ "class": c.name() });
    let extra = match c {
        ManifoldClass::Pencil { vertex, plane } => {
            json!({ "vertex": codec::vector(vertex), "plane": codec::vector(plane) })
        }
        ManifoldClass::Bundle { vertex } => json!({ "vertex": codec::vector(vertex) }),
        ManifoldClass::Field { plane } => json!({ "plane": codec::vector(plane) }),
        ManifoldClass::ConicRegulus { surface } => json!({ "surface": surface.map(|s| s.name()) }),
        ManifoldClass::DegenerateConic => json!({}),
        ManifoldClass::Congruence(t) => json!({ "type": t.name() }),
        ManifoldClass::Complex { singular, coords } => json!({
            "singular": singular,
            "complex": codec::vector(coords),
            "order": codec::order(),
        }),
    };
    if let (Some(o), Value::Object(e)) = (out.as_object_mut(), extra) {
        o.extend(e);
    }
    out
}

/// The versor is reported as its primitive integer representative; the
/// factors multiply to `scale` times it.
fn versor_json(v: &Versor) -> Value {
    let g = v.mv().primitive();
    let scale = v
        .mv()
        .proportional_factor(&g)
        .expect("same element up to scale");
    let norm = v.norm() / (&scale * &scale);
    let mut out = json!({
        "versor": codec::mv(&g),
        "parity": v.parity().name(),
        "norm": codec::rat(&norm),
        "norm_sign": v.norm_sign(),
    });
    if let Some(f) = v.factors() {
        out["factors"] = codec::vectors(f);
        out["scale"] = codec::rat(&scale);
        out["order"] = codec::order();
    }
    out
}
