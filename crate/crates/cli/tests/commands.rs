use klein33::reference;
use klein33::Multivector;
use klein33_cli::{json as codec, run, run_command, Options, COMMANDS};
use serde_json::{json, Value};

fn ok(command: &str, payload: Value) -> Value {
    let r = run_command(command, &payload, &Options::default());
    assert_eq!(r["status"], "ok", "{command}: {r}");
    r["result"].clone()
}

fn code(command: &str, payload: Value) -> String {
    let r = run_command(command, &payload, &Options::default());
    assert_eq!(r["status"], "error", "{command}: {r}");
    r["error"]["code"].as_str().unwrap().to_string()
}

fn strs(v: &[i64]) -> Value {
    Value::Array(v.iter().map(|x| json!(x.to_string())).collect())
}

fn k() -> Value {
    json!([[1, 0, 3, 0], [1, 1, 0, 1], [1, 2, 1, 0], [1, 1, 2, 1]])
}

const EXAMPLE_FACTORS: [[i64; 6]; 3] = [[1, 0, 0, 0, 0, 2], [0, 1, 0, 2, 0, 0], [0, 0, 1, 0, 2, 0]];

#[test]
fn registry_is_complete() {
    assert_eq!(COMMANDS.len(), 20);
    for c in COMMANDS {
        let r = run_command(c, &json!({}), &Options::default());
        assert_ne!(r["error"]["code"], "E_CMD", "{c} is not dispatched");
    }
}

#[test]
fn lines_and_forms() {
    let r = ok(
        "line-from-points",
        json!({"x": [1, 0, 0, 0], "y": [0, 1, 0, 0]}),
    );
    assert_eq!(r["line"], strs(&[1, 0, 0, 0, 0, 0]));
    assert_eq!(r["order"], "p01,p02,p03,p23,p31,p12");
    let r = ok(
        "line-from-planes",
        json!({"u": [0, 0, 1, 0], "v": [0, 0, 0, 1]}),
    );
    assert_eq!(r["line"], strs(&[1, 0, 0, 0, 0, 0]));
    let r = ok(
        "omega",
        json!({"l1": [1, 0, 0, 0, 0, 2], "l2": [0, 1, 0, 2, 0, 0]}),
    );
    assert_eq!(r["omega"], "1");
    let r = ok(
        "embed-line",
        json!({"line": [1, 0, 0, 0, 0, 2], "order": "p01,p02,p03,p23,p31,p12"}),
    );
    assert_eq!(r["multivector"], json!({"e1": "1", "e6": "2"}));
    let r = ok("complex-pitch-axis", json!({"complex": [1, 1, 0, 1, 0, 0]}));
    assert_eq!(r["pitch"], "1/2");
    assert_eq!(r["singular"], false);
    let r = ok(
        "meet-lines",
        json!({"l1": [1, 0, 0, 0, 0, 0], "l2": [0, 1, 0, 0, 0, 0]}),
    );
    assert_eq!(r["point"], strs(&[1, 0, 0, 0]));
}

#[test]
fn incidence_commands() {
    let r = ok("classify-blade", json!({"blade": {"e123": 1}}));
    assert_eq!(r, json!({"class": "bundle", "vertex": strs(&[1, 0, 0, 0])}));
    let r = ok("classify-blade", json!({"blade": {"e456": 1}}));
    assert_eq!(r["class"], "field");
    let r = ok("classify-blade", json!({"factors": EXAMPLE_FACTORS}));
    assert_eq!(
        r,
        json!({"class": "conic_regulus", "surface": "hyperboloid_of_one_sheet"})
    );
    let r = ok("classify-blade", json!({"blade": {"e12345": 1}}));
    assert_eq!(r["class"], "complex");
    assert_eq!(r["singular"], true);

    let r = ok("opns", json!({"blade": {"e12": 3}}));
    assert_eq!(r["dimension"], 2);
    let r = ok("ipns", json!({"blade": {"e12": 3}}));
    assert_eq!(r["dimension"], 4);

    let r = ok("bundle-vertex", json!({"blade": {"e123": 1}}));
    assert_eq!(r["point"], strs(&[1, 0, 0, 0]));
    let r = ok("field-plane", json!({"blade": {"e456": 1}}));
    assert_eq!(r["plane"].as_array().unwrap().len(), 4);
    assert_eq!(
        code("bundle-vertex", json!({"blade": {"e456": 1}})),
        "E_WRONG_CLASS"
    );

    let r = ok("regulus-form", json!({"factors": EXAMPLE_FACTORS}));
    assert_eq!(
        r["matrix"],
        json!([["0", "2", "2"], ["2", "0", "2"], ["2", "2", "0"]])
    );

    let r = ok(
        "regulus-sample",
        json!({"factors": EXAMPLE_FACTORS, "n": 5}),
    );
    assert_eq!(r["exact"], true);
    let sample = codec::coords_list(&r["lines"], "lines").unwrap();
    assert_eq!(sample.len(), 5);
    let (opposite, _) = klein33::incidence::opposite_regulus(
        &klein33::incidence::Blade::from_factors(&EXAMPLE_FACTORS.map(klein33::lines::coords_i64))
            .unwrap(),
    )
    .unwrap();
    for l in &sample {
        assert!(klein33::lines::satisfies_pluecker(l));
        // every line of a regulus meets every line of the opposite one
        for m in opposite.opns() {
            assert!(klein33::lines::omega(l, &m) == klein33::rational::zero());
        }
    }

    let r = ok("opposite-regulus", json!({"factors": EXAMPLE_FACTORS}));
    let dual = codec::multivector(&r["blade"], "blade").unwrap();
    assert_eq!(dual.homogeneous_grade(), Some(3));
    assert_eq!(r["surface"], "hyperboloid_of_one_sheet");
}

#[test]
fn floating_fallback_needs_inexact_mode() {
    // x^2 + y^2 = 3 z^2 has no rational points
    let p =
        json!({"factors": [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, -3]], "n": 3});
    assert_eq!(code("regulus-sample", p.clone()), "E_NO_RATIONAL_POINT");
    let opts = Options {
        exact: false,
        ..Options::default()
    };
    let r = run_command("regulus-sample", &p, &opts);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["result"]["exact"], false);
    assert_eq!(r["diagnostics"], json!(["floating fallback used"]));
    assert!(r["result"]["lines"][0][0].is_f64());
}

#[test]
fn collineation_example_gives_reference_versor() {
    let r = ok(
        "matrix-to-versor",
        json!({"matrix": k(), "kind": "collineation"}),
    );
    let g = codec::multivector(&r["versor"], "versor").unwrap();
    assert!(g == reference::g_plus() || g == reference::g_minus(), "{g}");
    assert_eq!(r["parity"], "even");
    let back = ok("versor-to-matrix", json!({"versor": r["versor"]}));
    assert_eq!(back["kind"], "collineation");
    let m = codec::matrix(&back["matrix"], 4, "m").unwrap();
    assert!(m.is_projectively_equal(&reference::k_matrix()));
}

#[test]
fn correlation_example_gives_reference_versor() {
    let r = ok(
        "matrix-to-versor",
        json!({"matrix": k(), "kind": "correlation"}),
    );
    let h = codec::multivector(&r["versor"], "versor").unwrap();
    assert!(h == reference::h_plus() || h == reference::h_minus(), "{h}");
    assert_eq!(r["parity"], "odd");
    assert_eq!(r["norm"], if r["norm_sign"] == 1 { "64" } else { "-64" });
    // the factors multiply to scale * versor
    let factors = codec::coords_list(&r["factors"], "factors").unwrap();
    let product = factors
        .iter()
        .map(Multivector::vector)
        .reduce(|a, b| a.gp(&b))
        .unwrap();
    let scale = codec::rational(&r["scale"], "scale").unwrap();
    assert_eq!(product, h.scale(&scale));
}

#[test]
fn transform_commands() {
    let r = ok(
        "decompose-null-polarities",
        json!({"matrix": k(), "kind": "collineation"}),
    );
    let n = r["count"].as_u64().unwrap();
    assert!(n.is_multiple_of(2) && n <= 6);
    assert_eq!(r["polarities"].as_array().unwrap().len() as u64, n);

    let r = ok("null-polarity", json!({"vector": [1, 0, 0, 1, 0, 0]}));
    assert_eq!(r["pfaffian"].as_str().unwrap().trim_start_matches('-'), "1");
    assert_eq!(r["singular"], false);
    let back = ok("null-polarity", json!({"matrix": r["matrix"]}));
    assert_eq!(back["vector"], strs(&[1, 0, 0, 1, 0, 0]));
    assert_eq!(
        code(
            "null-polarity",
            json!({"matrix": [[1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]})
        ),
        "E_NOT_SKEW"
    );

    let r = ok(
        "sandwich",
        json!({"versor": {"e1": 1, "e4": 1}, "x": {"e1": 1}}),
    );
    assert_eq!(r["result"], json!({"e4": "2"}));

    let r = ok(
        "grade1-check",
        json!({"versor": codec::mv(&reference::g_plus())}),
    );
    assert_eq!(
        r,
        json!({"holds": true, "parity": "even", "norm": "128", "norm_sign": 1})
    );
    let r = ok("grade1-check", json!({"versor": {"1": 1, "e1234": 3}}));
    assert_eq!(r["holds"], false);
    assert!(r["basis"].as_u64().unwrap() >= 1);
    assert_eq!(
        code("grade1-check", json!({"versor": {"1": 1, "e1": 1}})),
        "E_MIXED_PARITY"
    );
}

#[test]
fn kernel_errors_pass_through() {
    let diag = json!([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]);
    assert_eq!(
        code(
            "matrix-to-versor",
            json!({"matrix": diag, "kind": "collineation"})
        ),
        "E_NOT_PIN_REPRESENTABLE"
    );
    let two = json!([[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
    assert_eq!(
        code(
            "matrix-to-versor",
            json!({"matrix": two, "kind": "collineation"})
        ),
        "E_IRRATIONAL_SCALE"
    );
    assert_eq!(
        code(
            "line-from-points",
            json!({"x": [1, 2, 3, 4], "y": [2, 4, 6, 8]})
        ),
        "E_DEGENERATE"
    );
    assert_eq!(
        code("complex-pitch-axis", json!({"complex": [0, 0, 0, 1, 2, 3]})),
        "E_PITCH_UNDEFINED"
    );
    assert_eq!(
        code(
            "meet-lines",
            json!({"l1": [1, 0, 0, 0, 0, 2], "l2": [0, 1, 0, 2, 0, 0]})
        ),
        "E_SKEW"
    );
    assert_eq!(
        code("classify-blade", json!({"blade": {"e1": 1}})),
        "E_GRADE"
    );
    assert_eq!(
        code("classify-blade", json!({"blade": {"e123": 1, "e456": 1}})),
        "E_NOT_BLADE"
    );
}

#[test]
fn schema_violations() {
    assert_eq!(code("omega", json!({"l1": [1, 0, 0, 0, 0, 2]})), "E_SCHEMA");
    assert_eq!(
        code("omega", json!({"l1": [1, 0], "l2": [0, 1, 0, 2, 0, 0]})),
        "E_SCHEMA"
    );
    assert_eq!(
        code(
            "omega",
            json!({"l1": [1, 0, 0, 0, 0, 2], "l2": [0, 1, 0, 2, 0, 0], "extra": 1})
        ),
        "E_SCHEMA"
    );
    assert_eq!(
        code(
            "omega",
            json!({"l1": [1, 0, 0, 0, 0, 2], "l2": [0, 1, 0, 2, 0, 0], "order": "p01"})
        ),
        "E_SCHEMA"
    );
    assert_eq!(code("omega", json!([1, 2])), "E_SCHEMA");
    assert_eq!(
        code("embed-line", json!({"line": [1, 0, 0, 0, 0, "x"]})),
        "E_SCHEMA"
    );
    assert_eq!(
        code(
            "matrix-to-versor",
            json!({"matrix": k(), "kind": "affinity"})
        ),
        "E_SCHEMA"
    );
    assert_eq!(
        code("classify-blade", json!({"blade": {"e7": 1}})),
        "E_SCHEMA"
    );
    assert_eq!(
        code("classify-blade", json!({"blade": {"e1": 1}, "factors": []})),
        "E_SCHEMA"
    );
    assert_eq!(code("frobnicate", json!({})), "E_CMD");
}

#[test]
fn requests_and_options() {
    let d = Options::default();
    let r = run(
        &json!({"command": "omega", "payload": {"l1": [1, 0, 0, 0, 0, 2], "l2": [0, 1, 0, 2, 0, 0]}}),
        &d,
    );
    assert_eq!(r["result"]["omega"], "1");
    assert_eq!(
        run(&json!({"payload": {}}), &d)["error"]["code"],
        "E_SCHEMA"
    );
    assert_eq!(
        run(&json!({"command": "omega", "id": 3}), &d)["error"]["code"],
        "E_SCHEMA"
    );
    let bad = json!({"command": "omega", "options": {"exact": "yes"}});
    assert_eq!(run(&bad, &d)["error"]["code"], "E_SCHEMA");
    let p = json!({"factors": [[1, 0, 0, 1, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, -3]]});
    let req = json!({"command": "regulus-sample", "payload": p, "options": {"exact": false, "samples": 2, "seed": 9}});
    let r = run(&req, &d);
    assert_eq!(r["result"]["lines"].as_array().unwrap().len(), 2);
    assert_eq!(run(&req, &d), r, "same seed, same bytes");
}

#[test]
fn batch_keeps_order_and_isolates_failures() {
    let mut input = String::new();
    for i in 0..200 {
        if i % 7 == 3 {
            input.push_str("{broken\n");
        } else if i % 11 == 5 {
            input.push('\n');
        } else {
            input.push_str(&format!(
                "{{\"command\":\"line-from-points\",\"payload\":{{\"x\":[1,0,0,0],\"y\":[0,{i},1,0]}}}}\n"
            ));
        }
    }
    let out = klein33_cli::batch(input.as_bytes(), &Options::default()).unwrap();
    let expected: Vec<usize> = (0..200).filter(|i| i % 11 != 5 || i % 7 == 3).collect();
    assert_eq!(out.len(), expected.len());
    for (r, i) in out.iter().zip(expected) {
        if i % 7 == 3 {
            assert_eq!(r["error"]["code"], "E_PARSE");
        } else {
            assert_eq!(r["result"]["line"][0], i.to_string());
        }
    }
    assert!(klein33_cli::batch("".as_bytes(), &Options::default())
        .unwrap()
        .is_empty());
}
