use dregular::algebra::{parse_generators, CayleyDigraph, DEFAULT_CLOSURE_CAP, PSL2_F31_GENERATORS};
use dregular::constructions::*;
use dregular::walks::*;
use dregular::Digraph;

fn psl2() -> Digraph {
    let g = parse_generators(PSL2_F31_GENERATORS).unwrap();
    CayleyDigraph::build(&g.field, g.d, &g.generators, DEFAULT_CLOSURE_CAP)
        .unwrap()
        .digraph
}

#[test]
fn distributions_are_probability_vectors() {
    let (d, _) = line_digraph(&petersen()).unwrap();
    for ell in [0, 1, 5, 17] {
        let p = walk_distribution(&d, 3, ell).unwrap();
        assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(p.iter().all(|&x| x >= 0.0));
    }
}

#[test]
fn support_equals_sphere() {
    let (d, _) = line_digraph(&complete_bipartite(3).unwrap()).unwrap();
    let spheres = sphere_sizes(&d, 0).unwrap();
    for (ell, &s) in spheres.iter().enumerate() {
        let p = walk_distribution(&d, 0, ell).unwrap();
        assert_eq!(p.iter().filter(|&&x| x > 0.0).count(), s, "ell {ell}");
    }
}

#[test]
fn petersen_line_digraph_under_bound_curve() {
    let (d, _) = line_digraph(&petersen()).unwrap();
    let bound = tv_bound_curve(&d, 15).unwrap();
    let p = cutoff_profile(&d, 0, 15).unwrap();
    let n = d.n() as f64;
    for s in &p.steps[1..] {
        assert!(s.tv <= bound[s.ell - 1] + 1e-9);
        assert!(s.tv <= 0.5 * n.sqrt() * s.l2 + 1e-12);
        assert!(s.tv <= 1.0);
    }
    assert!(p.to_csv().starts_with("ell,tv,l2,support\n0,"));
    let j = p.summary_json(2);
    assert!(j["cutoff_step"].as_u64().is_some());
    assert!((j["log_k_n"].as_f64().unwrap() - n.log2()).abs() < 1e-12);
}

#[test]
fn diameter_respects_sphere_growth() {
    for d in [
        de_bruijn(2, 4).unwrap(),
        line_digraph(&petersen()).unwrap().0,
        paley_digraph(11).unwrap(),
    ] {
        let diam = diameter(&d).unwrap();
        let reach: usize = (0..=diam).map(|j| d.k().pow(j as u32)).sum();
        assert!(d.n() <= reach);
    }
}

#[test]
fn chernoff_tail_decreases_with_length() {
    let (d, _) = line_digraph(&petersen()).unwrap();
    // Directed edges out of vertices 0..=4.
    let set: Vec<usize> = (0..15).collect();
    let f = centered_indicator(d.n(), &set);
    let runs: Vec<ChernoffResult> = [50, 100, 200]
        .iter()
        .map(|&ell| chernoff_experiment(&d, &f, ell, 10_000, 0.25, 3).unwrap())
        .collect();
    for w in runs.windows(2) {
        let noise = 2.0 * (w[0].stderr.powi(2) + w[1].stderr.powi(2)).sqrt();
        assert!(w[1].frequency <= w[0].frequency + noise, "{runs:?}");
    }
}

#[test]
fn psl2_mixes_and_covers() {
    let d = psl2();
    let n = d.n() as f64;
    let log4n = n.ln() / 4f64.ln();
    let p = cutoff_profile(&d, 0, 16).unwrap();
    let from = log4n.ceil() as usize + 4;
    for s in &p.steps[from..] {
        assert!(s.tv < 0.05, "ell {} tv {}", s.ell, s.tv);
    }
    let ell0 = (log4n + 3.0 * n.ln().ln() / 4f64.ln()).ceil() as usize;
    let spheres = sphere_sizes(&d, 0).unwrap();
    let at = spheres.get(ell0).copied().unwrap_or(d.n());
    assert!(at as f64 >= 0.9 * n, "|S_{ell0}| = {at}");
}
