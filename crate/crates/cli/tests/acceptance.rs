//! End-to-end acceptance suite. Every criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use hcol_core::ffalg::{det_poly, Fe, Field, Matrix};
use hcol_core::graph::{
    compute_core, find_homomorphism, make_complete, make_cycle, make_edgeless, make_kneser,
    make_path, make_random, make_random_with_density, Lists,
};
use hcol_core::kernels::{
    algebraic_basis_bound, algebraic_kernel, combinatorial_bit_bound, combinatorial_kernel,
    combinatorial_vertex_bound, random_cover_instance, verify_kernel_equivalence,
    VertexCoverInstance,
};
use hcol_core::reductions::{
    find_edge_gadget, find_tight_witness_set, nae_cover_size, nae_sat_brute, random_formula,
    random_lists, reduce_list_to_plain, reduce_naesat_to_hcol, verify_edge_gadget, EdgeGadget,
};
use hcol_core::repr::{
    check_faithful, kneser_construction, kneser_field, normalize_first_entry, ortho_graph,
    petersen_ortho_graph, petersen_ortho_rep, vandermonde_rep, RepKind, Representation,
};
use hcol_core::witness::{clique_number, max_degree, witness_number};
use hcol_core::{Ceilings, Graph, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases: Vec<(String, Graph, usize)> = Vec::new();
    for m in 1..=6 {
        cases.push((format!("K_{m}"), make_complete(m), m));
    }
    cases.push(("C_3".into(), make_cycle(3).unwrap(), 3));
    cases.push(("C_6".into(), make_cycle(6).unwrap(), 3));
    for m in [4, 5, 7, 8, 9] {
        cases.push((format!("C_{m}"), make_cycle(m).unwrap(), 2));
    }
    for (m, r) in [(4, 2), (5, 2), (6, 2), (7, 3)] {
        cases.push((format!("K({m},{r})"), make_kneser(m, r).unwrap(), m - 2 * r + 2));
    }
    for n in [1, 4, 9] {
        cases.push((format!("E_{n}"), make_edgeless(n), 1));
    }
    for (name, g, expected) in &cases {
        let cert = witness_number(g).map_err(|e| format!("{name}: {e}"))?;
        check(cert.q == *expected, || format!("q({name}) = {}, expected {expected}", cert.q))?;
        check(cert.verify(g), || format!("{name}: certificate does not verify"))?;
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{} graphs exact in {:.2?}", cases.len(), start.elapsed()))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut violations = 0;
    for i in 0..200 {
        let n = rng.gen_range(1..=10);
        let g = make_random_with_density(n, rng.gen_range(0.1..0.9), i);
        let q = witness_number(&g).map_err(|e| e.to_string())?.q;
        let omega = clique_number(&g).map_err(|e| e.to_string())?;
        if !(omega <= q && q <= max_degree(&g) + 1) {
            violations += 1;
        }
    }
    check(violations == 0, || format!("{violations} sandwich violations"))?;
    let mut mono = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=9);
        let g = make_random_with_density(n, rng.gen_range(0.1..0.9), 1000 + i);
        let core = compute_core(&g).map_err(|e| e.to_string())?;
        let (qc, qg) = (witness_number(&core).unwrap().q, witness_number(&g).unwrap().q);
        if qc > qg {
            mono += 1;
        }
    }
    check(mono == 0, || format!("{mono} core monotonicity violations"))?;
    Ok("200 sandwich checks and 100 core checks, 0 violations".into())
}

fn random_instance(rng: &mut ChaCha8Rng, max_n: usize, seed: u64) -> VertexCoverInstance {
    let n = rng.gen_range(2..=max_n);
    let k = rng.gen_range(1..n);
    random_cover_instance(n, k, rng.gen_range(0.2..0.8), seed)
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let targets = [
        ("K_3", make_complete(3)),
        ("C_5", make_cycle(5).unwrap()),
        ("C_7", make_cycle(7).unwrap()),
        ("K(4,2)", make_kneser(4, 2).unwrap()),
    ];
    let ceilings = Ceilings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut equivalent = 0;
    let mut bound_violations = 0;
    for (ti, (name, h)) in targets.iter().enumerate() {
        let q = witness_number(h).unwrap().q;
        for i in 0..100 {
            let inst = random_instance(&mut rng, 14, (ti * 1000 + i) as u64);
            let res = combinatorial_kernel(&inst, q).map_err(|e| format!("{name}: {e}"))?;
            res.check_invariants().map_err(|e| format!("{name}: {e}"))?;
            if verify_kernel_equivalence(&inst, &res, h, &ceilings).unwrap() {
                equivalent += 1;
            }
            let k = inst.k();
            if res.stats.vertices as u64 > combinatorial_vertex_bound(k, q)
                || res.stats.bit_size_estimate > combinatorial_bit_bound(k, q)
            {
                bound_violations += 1;
            }
        }
    }
    check(equivalent == 400, || format!("equivalence {equivalent}/400"))?;
    check(bound_violations == 0, || format!("{bound_violations} bound violations"))?;
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("400/400 equivalent, 0 bound violations in {:.2?}", start.elapsed()))
}

fn normalized(rep: Representation, seed: u64) -> Result<Representation, String> {
    if rep.has_unit_first_entries() && rep.field().order() as usize > rep.graph().n() {
        Ok(rep)
    } else {
        normalize_first_entry(&rep, seed).map_err(|e| e.to_string())
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let k3 = make_complete(3);
    let van = vandermonde_rep(&k3, &Field::prime(5).unwrap()).map_err(|e| e.to_string())?;
    let kneser = kneser_construction(5, 2, &kneser_field(5, 2).unwrap(), 1, &Ceilings::default())
        .map_err(|e| e.to_string())?
        .rep;
    let ortho = ortho_graph(&Field::prime(2).unwrap(), 3, false).map_err(|e| e.to_string())?;
    let cases = [
        ("K_3/Vandermonde", van),
        ("Petersen/Kneser", kneser),
        ("H(GF(2),3)/identity", ortho),
    ];
    let ceilings = Ceilings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (ci, (name, rep)) in cases.into_iter().enumerate() {
        check(rep.dim() == 3, || format!("{name}: dimension {}", rep.dim()))?;
        let h = rep.graph().clone();
        let rep = normalized(rep, 7)?;
        let mut equivalent = 0;
        for i in 0..50 {
            let inst = random_instance(&mut rng, 12, (ci * 1000 + i) as u64);
            let res = algebraic_kernel(&inst, &h, &rep).map_err(|e| format!("{name}: {e}"))?;
            res.check_invariants().map_err(|e| format!("{name}: {e}"))?;
            if verify_kernel_equivalence(&inst, &res, &h, &ceilings).unwrap() {
                equivalent += 1;
            }
            let full = combinatorial_kernel(&inst, 3).unwrap();
            let sets: Vec<&VertexSet> = full.provenance.iter().map(|(_, s)| s).collect();
            check(res.provenance.iter().all(|(_, s)| sets.contains(&s)), || {
                format!("{name}: kernel is not contained in the combinatorial kernel")
            })?;
            check(
                res.stats.basis_kept as u64 <= algebraic_basis_bound(inst.k(), 3),
                || format!("{name}: |Y'| = {} above bound", res.stats.basis_kept),
            )?;
            let basis = res.basis.as_ref().unwrap();
            check(basis.verify(), || format!("{name}: a dropped p_S does not reconstruct"))?;
        }
        check(equivalent == 50, || format!("{name}: equivalence {equivalent}/50"))?;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("3 x 50/50 equivalent with containment and certificates in {:.2?}", start.elapsed()))
}

fn fixture_graphs() -> Vec<Graph> {
    let mut gs = vec![
        make_complete(1),
        make_complete(3),
        make_complete(5),
        make_cycle(4).unwrap(),
        make_cycle(5).unwrap(),
        make_cycle(6).unwrap(),
        make_cycle(7).unwrap(),
        make_path(2),
        make_path(5),
        make_edgeless(3),
        make_kneser(5, 2).unwrap(),
        make_kneser(6, 2).unwrap(),
        petersen_ortho_graph(),
    ];
    gs.extend((0..7).map(|s| make_random(6 + s as usize, s)));
    gs
}

fn smallest_prime_at_least(n: u64) -> u32 {
    (n.max(2)..).find(|&p| hcol_core::ffalg::field_is_prime(p)).unwrap() as u32
}

fn criterion_5() -> Outcome {
    let graphs = fixture_graphs();
    check(graphs.len() == 20, || format!("{} fixture graphs", graphs.len()))?;
    let mut normalized_count = 0;
    for (i, g) in graphs.iter().enumerate() {
        let field = Field::prime(smallest_prime_at_least(g.n() as u64)).unwrap();
        let rep = vandermonde_rep(g, &field).map_err(|e| format!("graph {i}: {e}"))?;
        check_faithful(&rep).map_err(|v| format!("graph {i}: Vandermonde {v}"))?;
        for seed in 1..=10 {
            let norm = normalize_first_entry(&rep, seed).map_err(|e| format!("graph {i}: {e}"))?;
            check_faithful(&norm).map_err(|v| format!("graph {i} seed {seed}: {v}"))?;
            check(norm.has_unit_first_entries(), || format!("graph {i} seed {seed}: first entries"))?;
            normalized_count += 1;
        }
    }
    let kc = kneser_construction(5, 2, &kneser_field(5, 2).unwrap(), 1, &Ceilings::default())
        .map_err(|e| e.to_string())?;
    check(kc.rep.dim() == 3, || format!("kneser_rep(5,2) has d = {}", kc.rep.dim()))?;
    check_faithful(&kc.rep).map_err(|v| format!("kneser_rep(5,2): {v}"))?;
    check(kc.neighbor_span_dims.iter().all(|&d| d <= 2), || {
        format!("dim(U_B) above m-2r+1: {:?}", kc.neighbor_span_dims)
    })?;
    for p in [17, 31] {
        let rep = petersen_ortho_rep(&Field::prime(p).unwrap()).map_err(|e| e.to_string())?;
        check(rep.kind() == RepKind::Orthogonal, || "fixture kind".into())?;
        check_faithful(&rep).map_err(|v| format!("Petersen fixture over GF({p}): {v}"))?;
    }
    Ok(format!(
        "20 Vandermonde reps faithful, {normalized_count}/200 normalizations valid, Kneser d=3, Petersen GF(17) and GF(31)"
    ))
}

fn criterion_6() -> Outcome {
    let field = Field::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut agree = 0;
    for d in 2..=4 {
        let cols: Vec<usize> = (0..d).map(|i| 2 * i + 1).collect();
        let p = det_poly(&cols, &field).map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let values: Vec<Vec<Fe>> = (0..d)
                .map(|_| (0..d).map(|_| field.random(&mut rng)).collect())
                .collect();
            let mut rows = vec![vec![Fe::ONE; d]];
            rows.extend((1..d).map(|c| (0..d).map(|j| values[j][c]).collect::<Vec<_>>()));
            let det = Matrix::from_rows(&field, &rows).unwrap().determinant().unwrap();
            let eval = p.evaluate(|v, c| values[cols.iter().position(|&x| x == v).unwrap()][c]);
            check(eval == det, || format!("d={d}: symbolic {eval:?} vs numeric {det:?}"))?;
            agree += 1;
        }
    }
    Ok(format!("{agree}/60 evaluations equal"))
}

fn nae_round(h: &Graph, gadget: &EdgeGadget, count: u64, seed: u64) -> Result<usize, String> {
    let t = find_tight_witness_set(h).map_err(|e| e.to_string())?;
    let mut agree = 0;
    for i in 0..count {
        let n = 1 + (i % 3) as usize;
        let phi = random_formula(n, 1 + (i % 4) as usize, 4, seed + i);
        let red = reduce_naesat_to_hcol(&phi, h, &t, gadget).map_err(|e| e.to_string())?;
        let expect = nae_cover_size(h.n(), t.len(), n, gadget.graph().n());
        check(red.instance.k() == expect, || format!("|X| = {}, expected {expect}", red.instance.k()))?;
        let colorable = red.is_colorable(h);
        if colorable == nae_sat_brute(&phi).unwrap() {
            agree += 1;
        }
    }
    Ok(agree)
}

fn criterion_7() -> Outcome {
    let k4 = make_complete(4);
    let edge = EdgeGadget::new(&k4, make_path(2), 0, 1).map_err(|e| e.to_string())?;
    let a = nae_round(&k4, &edge, 20, 100)?;
    check(a == 20, || format!("K_4: {a}/20 agree"))?;
    let k62 = make_kneser(6, 2).unwrap();
    let gadget = find_edge_gadget(&k62, 7)
        .map_err(|e| e.to_string())?
        .found()
        .ok_or("no gadget for K(6,2)")?;
    let b = nae_round(&k62, &gadget, 10, 200)?;
    check(b == 10, || format!("K(6,2): {b}/10 agree"))?;

    let c5 = make_cycle(5).unwrap();
    let p4 = EdgeGadget::new(&c5, make_path(4), 0, 3).map_err(|e| e.to_string())?;
    let mut agree = 0;
    for i in 0..30u64 {
        let g = make_random_with_density(3 + (i % 6) as usize, 0.4, 300 + i);
        let lists: Lists = random_lists(g.n(), 5, 0.7, 0.5, 400 + i);
        let out = reduce_list_to_plain(&g, &lists, &c5, &p4).map_err(|e| e.to_string())?;
        if find_homomorphism(&out, &c5, None).is_some()
            == find_homomorphism(&g, &c5, Some(&lists)).is_some()
        {
            agree += 1;
        }
    }
    check(agree == 30, || format!("list reduction: {agree}/30 agree"))?;
    Ok("NAE K_4 20/20, NAE K(6,2) 10/10, |X| exact, list reduction 30/30".into())
}

fn criterion_8() -> Outcome {
    for m in 1..=3 {
        let c = make_cycle(2 * m + 1).unwrap();
        check(verify_edge_gadget(&c, &make_path(2 * m), 0, 2 * m - 1).unwrap(), || {
            format!("P_{} fails for C_{}", 2 * m, 2 * m + 1)
        })?;
    }
    for m in 3..=5 {
        check(verify_edge_gadget(&make_complete(m), &make_path(2), 0, 1).unwrap(), || {
            format!("single edge fails for K_{m}")
        })?;
    }
    check(!verify_edge_gadget(&make_cycle(5).unwrap(), &make_path(2), 0, 1).unwrap(), || {
        "single edge accepted for C_5".into()
    })?;
    Ok("P_2, P_4, P_6 for C_3, C_5, C_7; edge for K_3..K_5; C_5 negative".into())
}

fn hcol(args: &[&str], dir: &Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hcol"))
        .args(args)
        .current_dir(dir)
        .env_remove("HCOL_SEED")
        .env_remove("HCOL_OUTPUT")
        .env_remove("HCOL_FORMAT")
        .output()
        .expect("run hcol")
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let out = hcol(&["sweep", "--experiment", "random-q", "--n", "32", "--trials", "20", "--seed", "9"], dir.path());
    check(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let text = String::from_utf8(out.stdout).unwrap();
    let row = text.lines().nth(1).ok_or("no data row")?;
    let fraction: f64 = row.split(',').nth(4).ok_or("short row")?.parse().map_err(|_| "bad fraction")?;
    check(fraction >= 0.9, || format!("fraction {fraction} < 0.9"))?;
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("fraction with q <= 2 log2 n at n=32: {fraction} (loose empirical proxy)"))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let write = |name: &str, text: &str| std::fs::write(d.join(name), text).unwrap();
    write("c5.g", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
    write("k4.g", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    write("inst.g", "8 9\n0 1\n0 4\n1 5\n2 6\n3 7\n4 5\n0 6\n2 7\n1 3\nX 0 1 2 3 4\n");
    write("lists.g", "4 3\n0 1\n1 2\n2 3\nA 0 1\nA 3 0 2\n");
    write("f.cnf", "p cnf 3 2\n1 -2 3 1 0\n-1 2 2 -3 0\n");
    let pet = "10 15\n0 1\n1 2\n2 3\n3 4\n0 4\n5 7\n7 9\n6 9\n6 8\n5 8\n0 5\n1 6\n2 7\n3 8\n4 9\n";
    write("pet.g", pet);
    let prep = hcol(&["represent", "--family", "kneser", "--m", "5", "--r", "2", "-o", "pet.json"], d);
    check(prep.status.success(), || String::from_utf8_lossy(&prep.stderr).into_owned())?;
    let commands: Vec<Vec<&str>> = vec![
        vec!["witness", "pet.g"],
        vec!["witness", "c5.g", "--format", "json"],
        vec!["kernelize", "inst.g", "--target", "c5.g", "--verify"],
        vec!["kernelize", "inst.g", "--target", "pet.g", "--mode", "algebraic", "--rep", "pet.json"],
        vec!["represent", "--family", "kneser", "--m", "5", "--r", "2", "--seed", "3"],
        vec!["represent", "--family", "vandermonde", "--graph", "c5.g", "--field", "7^1"],
        vec!["represent", "--family", "ortho", "--d", "3", "--field", "3"],
        vec!["reduce", "--from", "nae-sat", "f.cnf", "--target", "k4.g"],
        vec!["reduce", "--from", "list-hcol", "lists.g", "--target", "c5.g"],
        vec!["sweep", "--experiment", "random-q", "--n", "12,16", "--trials", "5", "--seed", "4"],
        vec!["sweep", "--experiment", "kernel-growth", "--k", "2..5", "--trials", "3", "--seed", "4"],
    ];
    for args in &commands {
        let first = hcol(args, d);
        let second = hcol(args, d);
        check(first.status.success(), || {
            format!("{args:?} failed: {}", String::from_utf8_lossy(&first.stderr))
        })?;
        check(first.stdout == second.stdout && first.status == second.status, || {
            format!("{args:?} differs between runs")
        })?;
    }
    Ok(format!("{} commands byte-identical across two runs", commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("witness-number regression table", criterion_1),
        ("sandwich bound and core monotonicity", criterion_2),
        ("combinatorial kernel equivalence and bounds", criterion_3),
        ("algebraic kernel equivalence, containment, certificates", criterion_4),
        ("representation suite", criterion_5),
        ("det_poly evaluation oracle", criterion_6),
        ("reduction equivalence", criterion_7),
        ("edge-gadget fixtures", criterion_8),
        ("random-graph witness sweep", criterion_9),
        ("determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.2?}]", i + 1, start.elapsed()),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why} [{:.2?}]", i + 1, start.elapsed());
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
