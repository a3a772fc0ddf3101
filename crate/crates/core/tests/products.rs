mod common;

use std::collections::BTreeMap;

use mqg_core::shuffle::{gauss_binomial, gauss_pascal_table};
use mqg_core::{
    ArrowBimodule, CycloNum, Error, ExportFormat, MajidAlgebra, Parameters, Path, PathVector, QuiverAlgebra,
    RootOfUnity,
};
use proptest::prelude::*;

fn path_algebra(p: Parameters) -> QuiverAlgebra {
    QuiverAlgebra::new(ArrowBimodule::build(p))
}

fn families(max_n: u32) -> Vec<Parameters> {
    (2..=max_n).flat_map(|n| Parameters::families(n).unwrap()).collect()
}

fn qq(n: u32, e: i64) -> CycloNum {
    CycloNum::root_of_unity(n, e).unwrap()
}

#[test]
fn gaussian_binomials_match_polynomial_oracle() {
    for conductor in 1..=12u32 {
        for e in 0..conductor as i64 {
            let h = RootOfUnity::new(conductor, e);
            let table = gauss_pascal_table(h, 14);
            for a in 0..=14usize {
                for b in 0..=a {
                    let oracle = common::evaluate_at(&common::gaussian_polynomial(a, b), h);
                    assert_eq!(table[a][b], oracle, "ħ = {h}, [{a} choose {b}]");
                    assert_eq!(gauss_binomial(&h.to_cyclo(), b as u64, (a - b) as u64), oracle);
                }
            }
        }
    }
}

#[test]
fn gaussian_binomials_at_one_are_ordinary() {
    let table = gauss_pascal_table(RootOfUnity::one(1), 20);
    assert_eq!(table[20][10], CycloNum::from_integer(184_756));
    assert_eq!(gauss_binomial(&CycloNum::one(), 3, 4), CycloNum::from_integer(35));
}

#[test]
fn arrow_square_coefficient() {
    for p in families(5) {
        let alg = path_algebra(p);
        let x1 = Path::arrow(p.n, 1);
        let (c, target) = alg.closed_form_product(&x1, &x1);
        assert_eq!(target, Path::new(p.n, 0, 2));
        assert_eq!(c, &CycloNum::one() + &p.hbar().to_cyclo());
    }
}

#[test]
fn vertex_actions_on_the_basic_paths() {
    for p in families(4) {
        let n = p.n as i64;
        let s = p.s as i64;
        let alg = path_algebra(p);
        for i in 0..n {
            for l in 0..=(2 * n as u32 + 1) {
                let g = Path::vertex(p.n, i);
                let path = Path::new(p.n, 0, l);
                let (c, t) = alg.closed_form_product(&g, &path);
                assert_eq!(t, Path::new(p.n, i, l));
                assert_eq!(c, qq(p.n, s * i * (l as i64 / n)), "{p:?}: g^{i} p_0^{l}");
                let (c, t) = alg.closed_form_product(&path, &g);
                assert_eq!(t, Path::new(p.n, i, l));
                let expected = if s != 0 {
                    // 𝕢^{−sil} q^{−sil}
                    let q = p.q().pow(-s * i * l as i64).to_cyclo();
                    &qq(p.n, -s * i * l as i64) * &q
                } else {
                    p.hbar().pow(i * l as i64).to_cyclo()
                };
                assert_eq!(c, expected, "{p:?}: p_0^{l} g^{i}");
            }
        }
    }
}

#[test]
fn products_of_paths_from_the_base_vertex() {
    for p in families(4) {
        let n = p.n as i64;
        let alg = path_algebra(p);
        let table = gauss_pascal_table(p.hbar(), 20);
        for l in 0..10u32 {
            for m in 0..10u32 {
                let (c, t) = alg.closed_form_product(&Path::new(p.n, 0, l), &Path::new(p.n, 0, m));
                assert_eq!(t, Path::new(p.n, 0, l + m));
                let phase = qq(p.n, p.s as i64 * (l as i64 % n) * (m as i64 / n));
                assert_eq!(c, &phase * &table[(l + m) as usize][l as usize]);
            }
        }
    }
}

#[test]
fn left_and_right_arrow_powers_combine() {
    for p in families(4) {
        let (n, s) = (p.n as i64, p.s as i64);
        let alg = path_algebra(p);
        let x1 = PathVector::from_path(Path::arrow(p.n, 1));
        let left = |k: i64| alg.power_left(&x1, k as u32).unwrap();
        let right = |k: i64| alg.power_right(&x1, k as u32).unwrap();
        for a in 0..=2 {
            for b in 0..=2 {
                for i in 0..n {
                    for j in 0..n {
                        let (k1, k2) = (a * n + i, b * n + j);
                        if k1 == 0 || k2 == 0 {
                            continue;
                        }
                        let lhs = alg.multiply(&left(k1), &right(k2)).unwrap();
                        let e = if i + j > n - 1 { -(a + 1) * (i + j) * s } else { -a * (i + j) * s };
                        let rhs = right((a + b) * n + i + j).scale(&qq(p.n, e));
                        assert_eq!(lhs, rhs, "{p:?}: a={a} b={b} i={i} j={j}");
                    }
                }
            }
        }
    }
}

fn paths_up_to(n: u32, max_len: u32) -> Vec<Path> {
    (0..=max_len)
        .flat_map(|l| (0..n as i64).map(move |i| Path::new(n, i, l)))
        .collect()
}

#[test]
fn path_algebra_is_quasi_associative_with_graded_reassociator() {
    for p in families(3) {
        let alg = path_algebra(p);
        let phi = p.cocycle();
        let paths = paths_up_to(p.n, 6);
        for a in &paths {
            for b in &paths {
                for c in &paths {
                    if a.length() + b.length() + c.length() > 6 {
                        continue;
                    }
                    let (bc, tbc) = alg.closed_form_product(b, c);
                    let (abc, t1) = alg.closed_form_product(a, &tbc);
                    let (ab, tab) = alg.closed_form_product(a, b);
                    let (abc2, t2) = alg.closed_form_product(&tab, c);
                    assert_eq!(t1, t2);
                    let src = phi.phi_value(a.source() as i64, b.source() as i64, c.source() as i64);
                    let tgt = phi.phi_value(a.target() as i64, b.target() as i64, c.target() as i64);
                    let lhs = &(&bc * &abc) * &src;
                    let rhs = &(&ab * &abc2) * &tgt;
                    assert_eq!(lhs, rhs, "{p:?}: ({a}, {b}, {c})");
                }
            }
        }
    }
}

#[test]
fn comultiplication_is_multiplicative_on_the_path_algebra() {
    for p in families(3) {
        let alg = path_algebra(p);
        let paths = paths_up_to(p.n, 6);
        for a in &paths {
            for b in &paths {
                if a.length() + b.length() > 6 {
                    continue;
                }
                let mut lhs: BTreeMap<(Path, Path), CycloNum> = BTreeMap::new();
                let (c, t) = alg.closed_form_product(a, b);
                for (x, y) in t.comultiply() {
                    lhs.insert((x, y), c.clone());
                }
                let mut rhs: BTreeMap<(Path, Path), CycloNum> = BTreeMap::new();
                for (a1, a2) in a.comultiply() {
                    for (b1, b2) in b.comultiply() {
                        let (c1, t1) = alg.closed_form_product(&a1, &b1);
                        let (c2, t2) = alg.closed_form_product(&a2, &b2);
                        let e = rhs.entry((t1, t2)).or_insert_with(CycloNum::zero);
                        *e = &*e + &(&c1 * &c2);
                    }
                }
                rhs.retain(|_, v| !v.is_zero());
                lhs.retain(|_, v| !v.is_zero());
                assert_eq!(lhs, rhs, "{p:?}: Δ({a} * {b})");
            }
        }
    }
}

proptest! {
    #[test]
    fn products_are_graded(n in 2u32..=5, k in 0u32..25, i in 0i64..5, l in 0u32..8, j in 0i64..5, m in 0u32..8) {
        let fams = Parameters::families(n).unwrap();
        let p = fams[k as usize % fams.len()];
        let alg = path_algebra(p);
        let (a, b) = (Path::new(n, i, l), Path::new(n, j, m));
        let prod = alg.multiply(&PathVector::from_path(a), &PathVector::from_path(b)).unwrap();
        if !prod.is_zero() {
            prop_assert_eq!(prod.degree(), Some(l + m));
        }
        let grid = alg.shuffle_paths(&a, &b).unwrap();
        prop_assert_eq!(grid, prod);
    }
}

#[test]
fn exports_round_trip_for_small_algebras() {
    for p in families(3) {
        let alg = MajidAlgebra::from_params(p).unwrap();
        let text = alg.export(ExportFormat::Json).unwrap();
        let back = MajidAlgebra::import(&text, ExportFormat::Json).unwrap();
        assert_eq!(back, alg);
        assert_eq!(back.export(ExportFormat::Json).unwrap(), text);
        assert!(back.verify_quasi_bialgebra().passed);
    }
}

#[test]
fn tampered_exports_are_rejected_or_caught() {
    let alg = MajidAlgebra::from_params(Parameters::new(2, 1, 1).unwrap()).unwrap();
    let text = alg.export(ExportFormat::Json).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();

    let mut missing = doc.clone();
    missing["mult"].as_array_mut().unwrap().pop();
    assert!(matches!(
        MajidAlgebra::import(&missing.to_string(), ExportFormat::Json),
        Err(Error::Parse(_))
    ));

    let mut wrong_q = doc.clone();
    wrong_q["q_exp"] = serde_json::json!(2);
    assert!(MajidAlgebra::import(&wrong_q.to_string(), ExportFormat::Json).is_err());

    // a changed structure constant imports fine but fails verification
    let entry = doc["mult"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|e| e["a"] == "p(1,1)" && e["b"] == "p(0,1)")
        .unwrap();
    entry["coeff"] = serde_json::to_value(CycloNum::from_integer(5)).unwrap();
    let bad = MajidAlgebra::import(&doc.to_string(), ExportFormat::Json).unwrap();
    let report = bad.verify_quasi_bialgebra();
    assert!(!report.passed);
    assert!(report.first_failure().unwrap().witness.is_some());

    assert!(matches!("yaml".parse::<ExportFormat>(), Err(Error::UnknownFormat(_))));
}

#[test]
fn generators_reach_every_basis_element() {
    for p in families(4) {
        let alg = MajidAlgebra::from_params(p).unwrap();
        assert_eq!(alg.span_of_generators(), alg.dim(), "{p:?}");
    }
}
