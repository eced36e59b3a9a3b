mod common;

use common::*;
use homotopelab::constructions::{b16, b_lambda, matrix_algebra, path_algebra, r_lambda, tensor_522, Quiver};
use homotopelab::fingerprints::b16_hat;
use homotopelab::io::{algebra_from_json, algebra_to_json, file_kind, tensor_from_json, tensor_to_json};
use homotopelab::{Error, Scalar};
use serde_json::Value;

#[test]
fn every_construction_round_trips() {
    let f = fp(7);
    let algebras = vec![
        b16(q()),
        b16_hat(&q().from_ratio(-2, 3).unwrap()),
        b_lambda(&f.from_i64(3)),
        r_lambda(&q().from_ratio(5, 7).unwrap()).unwrap(),
        path_algebra(f, &Quiver::doubled_chain(4), None).unwrap(),
        matrix_algebra(q(), 3),
    ];
    for a in algebras {
        let text = algebra_to_json(&a);
        assert_eq!(file_kind(&text).unwrap(), "algebra");
        let back = algebra_from_json(&text).unwrap();
        assert_eq!(back, a);
        assert_eq!(algebra_to_json(&back), text);
    }
}

#[test]
fn constants_are_sorted() {
    let text = algebra_to_json(&b16(q()));
    let v: Value = serde_json::from_str(&text).unwrap();
    let idx: Vec<(u64, u64, u64)> = v["constants"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c[0].as_u64().unwrap(), c[1].as_u64().unwrap(), c[2].as_u64().unwrap()))
        .collect();
    let mut sorted = idx.clone();
    sorted.sort();
    assert_eq!(idx, sorted);
    assert_eq!(v["format"], "homotopelab/1");
}

#[test]
fn tensors_round_trip() {
    let bhat: [Scalar; 4] = std::array::from_fn(|i| q().from_ratio(i as i64, 3).unwrap());
    let b: [Scalar; 4] = std::array::from_fn(|i| q().from_i64(-(i as i64)));
    let t = tensor_522(&bhat, &b);
    assert_eq!(tensor_from_json(&tensor_to_json(&t)).unwrap(), t);
}

#[test]
fn malformed_files() {
    assert!(matches!(algebra_from_json("{"), Err(Error::Format(_))));
    let wrong_dim = r#"{"format":"homotopelab/1","kind":"algebra","field":"Q","dim":1,"constants":[[0,0,3,"1"]]}"#;
    assert!(algebra_from_json(wrong_dim).is_err());
    let bad_field = r#"{"format":"homotopelab/1","kind":"algebra","field":"F9","dim":1,"constants":[]}"#;
    assert!(algebra_from_json(bad_field).is_err());
    let bad_unit = r#"{"format":"homotopelab/1","kind":"algebra","field":"Q","dim":1,"unit":["1"],"constants":[]}"#;
    assert_eq!(algebra_from_json(bad_unit), Err(Error::InvalidUnit));
}
