use num_complex::Complex64;

use dregular::constructions::*;
use dregular::spectral::{eigenvalues_dense, SpectralOptions};
use dregular::zeta::*;

#[test]
fn report_invariants() {
    for d in [
        paley_digraph(11).unwrap(),
        de_bruijn(2, 3).unwrap(),
        projective_incidence(2, 2).unwrap(),
        line_digraph(&petersen()).unwrap().0,
    ] {
        let r = zeta_digraph(&d).unwrap();
        let ev = eigenvalues_dense(&d).unwrap();
        let zeros = ev.iter().filter(|z| z.norm() == 0.0).count();
        assert_eq!(r.poles.len(), d.n() - zeros);
        assert_eq!(r.reciprocal_poly.len(), r.poles.len() + 1);
        assert_eq!(r.reciprocal_poly[0], 1.0);
        let lnk = (d.k() as f64).ln();
        for (p, s) in r.poles.iter().zip(&r.s_points) {
            assert!((s.re - p.inv().norm().ln() / lnk).abs() < 1e-9);
            // u = k^-s
            let u = (-s * lnk).exp();
            assert!((u - p).norm() < 1e-9 * p.norm().max(1.0));
        }
    }
}

#[test]
fn de_bruijn_has_only_the_trivial_pole() {
    let r = zeta_digraph(&de_bruijn(2, 3).unwrap()).unwrap();
    assert_eq!(r.integer_poly, Some(vec![1, -2]));
    assert!(r.rh_digraph);
}

#[test]
fn ihara_poles_match_prediction() {
    let k = 2.0;
    let r = zeta_ihara(&complete_graph(4).unwrap()).unwrap();
    // mu in {2, 1, (-1 +- i sqrt 7)/2 x3, +-1 x2}
    let mut want = vec![Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)];
    for s in [1.0, -1.0] {
        want.extend(std::iter::repeat_n(Complex64::new(-0.5, s * 7f64.sqrt() / 2.0), 3));
        want.extend(std::iter::repeat_n(Complex64::new(s, 0.0), 2));
    }
    let got: Vec<Complex64> = r.poles.iter().map(|p| p.inv()).collect();
    assert!(dregular::linalg::multiset_distance(&got, &want) < 1e-6);
    assert!(r.ihara_distance.unwrap() < 1e-6);
    let mid: Vec<_> = r.s_points.iter().filter(|s| s.re > 1e-6 && s.re < 1.0 - 1e-6).collect();
    assert_eq!(mid.len(), 6);
    assert!(mid.iter().all(|s| (s.re - 0.5).abs() < 1e-9));
    assert_eq!(r.k, k as usize);
}

#[test]
fn equivalence_suite_examples() {
    let corpus = vec![
        CorpusItem::Digraph("paley7".into(), paley_digraph(7).unwrap()),
        CorpusItem::Digraph("paley11".into(), paley_digraph(11).unwrap()),
        CorpusItem::Digraph("fano".into(), projective_incidence(2, 2).unwrap()),
        CorpusItem::Digraph("db23".into(), de_bruijn(2, 3).unwrap()),
        CorpusItem::Graph("K4".into(), complete_graph(4).unwrap()),
        CorpusItem::Graph("petersen".into(), petersen()),
        CorpusItem::Graph("C10".into(), cycle_graph(10).unwrap()),
    ];
    let rep = rh_equivalence_suite(&corpus, &SpectralOptions::default()).unwrap();
    assert!(rep.mismatches().is_empty());
    for row in &rep.rows[..4] {
        assert_eq!(row.zeta_verdict, Some(true), "{row:?}");
    }
    assert_eq!(rep.rows[6].agrees(), None);
    assert!(rep.to_csv().contains("C10,graph,,,,degenerate base k = 1"));
}

#[test]
fn json_and_csv() {
    let r = zeta_digraph(&paley_digraph(7).unwrap()).unwrap();
    let j = r.to_json();
    assert_eq!(j["poles"].as_array().unwrap().len(), 7);
    assert_eq!(j["rh_ihara"], serde_json::Value::Null);
    assert_eq!(r.to_csv().lines().count(), 8);
}
