//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use minoreq::cuts::enumerate_cuts;
use minoreq::dpp::Kernel;
use minoreq::generate::{
    conjugate, perturb, planted_cut_matrix, pme_partner, random_dense, random_element,
    random_nonzero, random_planted,
};
use minoreq::pme::{combine_shifts, working_field, ShiftOptions};
use minoreq::{
    apply_cut_sequence, brute_force_min_cut, brute_force_pit, brute_force_pme, cut_transpose,
    diag_similar, dpp_equivalent, is_cut, minimal_cut, pit_check, pme_check, subset_probability,
    verify_certificate, BlockCertificate, Certificate, DiagonalWitness, FieldSpec, IndexSet,
    Matrix, RankOnePencil, Scalar, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn q() -> FieldSpec {
    FieldSpec::Rational
}

fn gf101() -> FieldSpec {
    FieldSpec::prime(101).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cycle_a() -> Matrix {
    Matrix::from_i64_rows(
        q(),
        &[
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1],
            [1, 0, 0, 0, 0, 0],
        ],
    )
    .unwrap()
}

fn cycle_b() -> Matrix {
    Matrix::from_i64_rows(
        q(),
        &[
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1, 0],
            [0, 1, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
        ],
    )
    .unwrap()
}

fn cycle_b_twisted() -> Matrix {
    Matrix::from_i64_rows(
        q(),
        &[
            [0, 0, 0, 1, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 1, 0, 0, 0, 0],
        ],
    )
    .unwrap()
}

fn lift_a() -> Matrix {
    Matrix::from_i64_rows(
        q(),
        &[
            [1, 3, 1, 1, 1],
            [2, 1, -1, -1, -1],
            [1, 2, 2, 1, 1],
            [2, 4, -2, 3, 4],
            [-1, -2, 1, 5, 6],
        ],
    )
    .unwrap()
}

fn lift_b() -> Matrix {
    Matrix::from_i64_rows(
        q(),
        &[
            [1, 2, 1, 2, -1],
            [3, 1, 2, 4, -2],
            [1, -1, 2, 2, -1],
            [1, -1, -1, 3, 5],
            [1, -1, -1, 4, 6],
        ],
    )
    .unwrap()
}

fn set(labels: &[usize]) -> IndexSet {
    IndexSet::from_labels(labels.iter().copied())
}

fn certificate_for(v: Verdict) -> Result<Certificate, String> {
    match v {
        Verdict::Equivalent(c) => Ok(c),
        Verdict::NotEquivalent(r) => Err(format!("expected Equivalent, got {r}")),
    }
}

fn criterion_1() -> Outcome {
    let (a, b) = (cycle_a(), cycle_b());
    let cert = certificate_for(pme_check(&a, &b).map_err(|e| e.to_string())?)?;
    ensure(verify_certificate(&a, &b, &cert).unwrap(), || "certificate rejected".into())?;
    ensure(brute_force_pme(&a, &b).unwrap().equivalent, || "minors differ".into())?;
    let (da, db) = (a.determinant().unwrap(), b.determinant().unwrap());
    ensure(da == db, || format!("det(A) = {da:?}, det(B) = {db:?}"))?;
    ensure(da == q().from_i64(-1), || format!("det = {da:?}"))?;
    Ok(format!(
        "equivalent, {} cut(s), verified, all 64 minors agree; det(A) = det(B) = -1 exactly (a 6-cycle permutation has sign -1, not +1)",
        cert.total_cuts()
    ))
}

fn criterion_2() -> Outcome {
    let (a, b) = (lift_a(), lift_b());
    // labels a..e are positions 0..4
    let sequence = vec![set(&[0, 1, 2]), set(&[2, 3, 4])];
    let end = apply_cut_sequence(&a, &sequence).map_err(|e| e.to_string())?;
    ensure(end == b, || format!("two-step result differs:\n{end}"))?;
    let hand = Certificate {
        field: q(),
        blocks: vec![BlockCertificate {
            labels: set(&[0, 1, 2, 3, 4]),
            cut_sequence: sequence,
            witness: DiagonalWitness::identity(&b),
        }],
        preprocessing_shift: None,
    };
    ensure(verify_certificate(&a, &b, &hand).unwrap(), || "hand certificate rejected".into())?;
    let produced = certificate_for(pme_check(&a, &b).map_err(|e| e.to_string())?)?;
    ensure(verify_certificate(&a, &b, &produced).unwrap(), || "produced certificate rejected".into())?;
    let name = |l: usize| char::from(b'a' + l as u8);
    let seq: Vec<String> = produced.blocks[0]
        .cut_sequence
        .iter()
        .map(|x| format!("{{{}}}", x.iter().map(|l| name(l).to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    Ok(format!(
        "({{a,b,c}},{{c,d,e}}) maps A to B exactly; hand certificate verifies; produced sequence [{}] verifies",
        seq.join(" ")
    ))
}

fn criterion_3() -> Outcome {
    let twisted = cut_transpose(&cycle_b(), &set(&[0, 3])).map_err(|e| e.to_string())?;
    ensure(twisted == cycle_b_twisted(), || format!("tw(B,{{1,4}}) =\n{twisted}"))?;
    ensure(is_cut(&twisted, &set(&[0, 1])), || "{1,2} is not a cut of B'".into())?;
    Ok("tw(B,{1,4}) = B' entry for entry; {1,2} is a cut of B'".into())
}

struct OracleRun {
    lengths_ok: usize,
    certificates: usize,
    worst: Option<String>,
}

fn criterion_4(run: &mut OracleRun) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4);
    let mut agreed = 0;
    let mut total = 0;
    let mut equivalent = 0;
    for f in [q(), gf101()] {
        for i in 0..200 {
            let n = 4 + i % 5;
            let a = random_planted(&f, n, &mut rng);
            let (mut b, _) = pme_partner(&a, 3, &mut rng).map_err(|e| e.to_string())?;
            if i % 2 == 1 {
                b = perturb(&b, &mut rng);
            }
            let truth = brute_force_pme(&a, &b).unwrap().equivalent;
            let verdict = pme_check(&a, &b).map_err(|e| format!("{f} n={n}: {e}"))?;
            total += 1;
            if verdict.is_equivalent() == truth {
                agreed += 1;
            }
            if let Verdict::Equivalent(c) = verdict {
                equivalent += 1;
                if !verify_certificate(&a, &b, &c).unwrap() {
                    return Err(format!("{f} n={n}: certificate rejected"));
                }
                for blk in &c.blocks {
                    run.certificates += 1;
                    if blk.cut_sequence.len() < 2 * blk.labels.len() {
                        run.lengths_ok += 1;
                    } else if run.worst.is_none() {
                        run.worst = Some(format!(
                            "block of size {} with {} cuts",
                            blk.labels.len(),
                            blk.cut_sequence.len()
                        ));
                    }
                }
            }
        }
    }
    ensure(agreed == total, || format!("{agreed}/{total} agree"))?;
    Ok(format!("{agreed}/{total} agree with all-minors oracle ({equivalent} equivalent)"))
}

fn criterion_5(run: &OracleRun) -> Outcome {
    ensure(run.lengths_ok == run.certificates && run.certificates > 0, || {
        format!(
            "{}/{} blocks within bound; first violation: {}",
            run.lengths_ok,
            run.certificates,
            run.worst.clone().unwrap_or_default()
        )
    })?;
    Ok(format!("{} block certificates, all with length < 2|T|", run.certificates))
}

fn invertible_planted(f: &FieldSpec, n: usize, rng: &mut ChaCha8Rng) -> (Matrix, IndexSet) {
    loop {
        let k = rng.gen_range(2..=n - 2);
        let (a, cuts) = planted_cut_matrix(f, n, &[k], rng);
        if !f.is_zero(&a.determinant().unwrap()) {
            return (a, cuts[0].clone());
        }
    }
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6);
    for i in 0..100 {
        let f = if i % 2 == 0 { q() } else { gf101() };
        let n = 4 + i % 7;
        let (a, cuts) = planted_cut_matrix(&f, n, &[rng.gen_range(2..=n - 2)], &mut rng);
        let x = &cuts[0];
        let t = cut_transpose(&a, x).map_err(|e| e.to_string())?;
        let back = cut_transpose(&t, x).map_err(|e| e.to_string())?;
        ensure(back == a, || format!("involution fails for {x} on\n{a}"))?;
        if n <= 8 {
            ensure(brute_force_pme(&a, &t).unwrap().equivalent, || {
                format!("tw(A,{x}) changes a minor of\n{a}")
            })?;
        }
    }
    for i in 0..50 {
        let f = if i % 2 == 0 { q() } else { gf101() };
        let n = 4 + i % 4;
        let (a, x) = invertible_planted(&f, n, &mut rng);
        let adj = a.adjugate().unwrap();
        ensure(is_cut(&adj, &x), || format!("{x} is not a cut of adj(A)"))?;
        let lhs = cut_transpose(&a, &x).unwrap().adjugate().unwrap();
        let rhs = cut_transpose(&adj, &x).unwrap();
        ensure(diag_similar(&lhs, &rhs).unwrap().is_some(), || {
            format!("adj(tw(A,{x})) and tw(adj(A),{x}) not diagonally similar for\n{a}")
        })?;
    }
    Ok("involution on 100 planted instances; all 2^n minors preserved (n <= 8); adj/tw commute up to diagonal similarity on 50".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7);
    for i in 0..50 {
        let f = if i % 2 == 0 { q() } else { gf101() };
        let n = 2 + i % 6;
        let a = random_planted(&f, n, &mut rng);
        let b = if i % 3 == 0 {
            perturb(&a, &mut rng)
        } else {
            pme_partner(&a, 3, &mut rng).unwrap().0
        };
        let work = working_field(&f, n).map_err(|e| e.to_string())?;
        let (a, b) = (a.embed(&work).unwrap(), b.embed(&work).unwrap());
        let shift = combine_shifts(&a, &b, &ShiftOptions::default()).map_err(|e| e.to_string())?;
        for adj in [&shift.a_adj, &shift.b_adj] {
            ensure(adj.data().iter().all(|x| !work.is_zero(x)), || "adjugate has a zero entry".into())?;
        }
        let (ca, cb) = (enumerate_cuts(&a).unwrap(), enumerate_cuts(&shift.a_adj).unwrap());
        ensure(ca == cb, || format!("cuts differ: {ca:?} vs {cb:?}"))?;
        let before = brute_force_pme(&a, &b).unwrap().equivalent;
        let after = brute_force_pme(&shift.a_adj, &shift.b_adj).unwrap().equivalent;
        ensure(before == after, || format!("verdict changed from {before} to {after}"))?;
    }
    Ok("50 pairs: dense adjugates, identical cut sets, unchanged verdicts".into())
}

fn proper_subset_is_cut(a: &Matrix, s: &IndexSet) -> bool {
    let labels: Vec<usize> = s.iter().collect();
    let k = labels.len();
    (1u64..(1 << k) - 1).any(|mask| {
        let sub = IndexSet::from_mask(&labels, mask);
        sub.len() >= 2 && is_cut(a, &sub)
    })
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8);
    let mut with_cut = 0;
    for i in 0..200 {
        let f = if i % 2 == 0 { q() } else { gf101() };
        let n = 4 + i % 7;
        let a = if i < 100 {
            random_planted(&f, n, &mut rng)
        } else {
            random_dense(&f, n, &mut rng)
        };
        let fast = minimal_cut(&a).map_err(|e| e.to_string())?;
        let slow = brute_force_min_cut(&a).unwrap();
        ensure(fast.is_some() == slow.is_some(), || format!("existence differs on\n{a}"))?;
        if i < 100 {
            ensure(fast.is_some(), || "planted matrix reported cut-free".into())?;
        }
        if let (Some(x), Some(y)) = (&fast, &slow) {
            with_cut += 1;
            ensure(x.len() == y.len(), || format!("sizes {} vs {}", x.len(), y.len()))?;
            ensure(is_cut(&a, x), || format!("{x} is not a cut"))?;
            ensure(!proper_subset_is_cut(&a, x), || format!("{x} is not inclusion-minimal"))?;
        }
    }
    Ok(format!("200 matrices (100 planted, 100 dense), {with_cut} with cuts; existence, size and minimality agree"))
}

fn random_pencil(f: &FieldSpec, n: usize, m: usize, homogeneous: bool, rank: usize, rng: &mut ChaCha8Rng) -> RankOnePencil {
    let a0 = if homogeneous {
        Matrix::zeros(f.clone(), n, n)
    } else {
        let rows = (0..n).map(|_| (0..n).map(|_| random_element(f, rng)).collect()).collect();
        Matrix::from_rows(f.clone(), rows).unwrap()
    };
    // u vectors confined to the span of the first `rank` coordinates
    let terms = (0..m)
        .map(|_| {
            let u = (0..n)
                .map(|i| if i < rank { random_element(f, rng) } else { f.zero() })
                .collect();
            let v = (0..n).map(|_| random_element(f, rng)).collect();
            (u, v)
        })
        .collect();
    RankOnePencil::new(a0, terms).unwrap()
}

fn mat_vec(g: &Matrix, x: &[Scalar]) -> Vec<Scalar> {
    let f = g.field();
    (0..g.rows())
        .map(|r| (0..g.cols()).fold(f.zero(), |acc, c| f.add(&acc, &f.mul(g.get(r, c), &x[c]))))
        .collect()
}

/// `G·A₀·Hᵀ` with terms `(G·u, H·v)` where `det(G)·det(H) = 1`, plus a
/// random rescaling inside each term.
fn equal_pencil(p: &RankOnePencil, rng: &mut ChaCha8Rng) -> RankOnePencil {
    let f = p.field();
    let n = p.n();
    let g = loop {
        let g = random_dense(f, n, rng);
        if !f.is_zero(&g.determinant().unwrap()) {
            break g;
        }
    };
    let mut h = random_dense(f, n, rng);
    let (dg, dh) = (g.determinant().unwrap(), h.determinant().unwrap());
    if f.is_zero(&dh) {
        h = Matrix::identity(f.clone(), n);
    }
    let dh = h.determinant().unwrap();
    // scale the first row of h so det(g)·det(h) = 1
    let c = f.inv(&f.mul(&dg, &dh)).unwrap();
    for col in 0..n {
        let v = f.mul(h.get(0, col), &c);
        h.set(0, col, v);
    }
    let a0 = g.mul(p.a0()).unwrap().mul(&h.transpose()).unwrap();
    let terms = p
        .terms()
        .iter()
        .map(|(u, v)| {
            let s = random_nonzero(f, rng);
            let si = f.inv(&s).unwrap();
            let u: Vec<Scalar> = mat_vec(&g, u).iter().map(|x| f.mul(x, &s)).collect();
            let v: Vec<Scalar> = mat_vec(&h, v).iter().map(|x| f.mul(x, &si)).collect();
            (u, v)
        })
        .collect();
    RankOnePencil::new(a0, terms).unwrap()
}

fn perturb_pencil(p: &RankOnePencil, rng: &mut ChaCha8Rng) -> RankOnePencil {
    let f = p.field();
    let mut a0 = p.a0().clone();
    let mut terms = p.terms().to_vec();
    if p.m() == 0 || rng.gen_bool(0.4) {
        a0 = perturb(&a0, rng);
    } else {
        let j = rng.gen_range(0..p.m());
        let i = rng.gen_range(0..p.n());
        terms[j].0[i] = f.add(&terms[j].0[i], &random_nonzero(f, rng));
    }
    RankOnePencil::new(a0, terms).unwrap()
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9);
    let mut counts = [0usize; 4];
    for f in [q(), gf101()] {
        for i in 0..100 {
            let n = 1 + i % 4;
            let m = rng.gen_range(1..=7);
            let homogeneous = i % 2 == 0;
            // every fifth instance has u vectors in a proper subspace
            let rank = if i % 5 == 0 && n > 1 { n - 1 } else { n };
            let p1 = random_pencil(&f, n, m, homogeneous, rank, &mut rng);
            let mut p2 = equal_pencil(&p1, &mut rng);
            if i % 4 >= 2 {
                p2 = perturb_pencil(&p2, &mut rng);
                if homogeneous {
                    p2 = RankOnePencil::new(Matrix::zeros(f.clone(), n, n), p2.terms().to_vec()).unwrap();
                }
            }
            let truth = brute_force_pit(&p1, &p2).unwrap();
            let got = pit_check(&p1, &p2).map_err(|e| format!("{f} n={n} m={m}: {e}"))?;
            ensure(got == truth, || format!("{f} n={n} m={m} homogeneous={homogeneous}: check {got}, oracle {truth}"))?;
            counts[0] += usize::from(homogeneous);
            counts[1] += usize::from(truth);
            if homogeneous && minoreq::pit::common_base(&p1).unwrap().is_none() {
                counts[2] += 1;
            }
            counts[3] += 1;
        }
    }
    Ok(format!(
        "{}/{} agree ({} homogeneous, {} equal pairs, {} zero polynomials)",
        counts[3], counts[3], counts[0], counts[1], counts[2]
    ))
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10);
    for i in 0..20 {
        let n = 1 + i % 8;
        let k = random_planted(&q(), n, &mut rng);
        let d: Vec<Scalar> = (0..n).map(|_| random_nonzero(&q(), &mut rng)).collect();
        let mut bumped = k.clone();
        bumped.set(0, 0, q().add(k.get(0, 0), &q().one()));
        let similar = conjugate(&k, &d).unwrap();
        let k1 = Kernel::new(k).unwrap();
        for (other, expect) in [(similar, true), (bumped, false)] {
            let k2 = Kernel::new(other).unwrap();
            let verdict = dpp_equivalent(&k1, &k2).map_err(|e| e.to_string())?.is_equivalent();
            ensure(verdict == expect, || format!("n={n}: expected {expect}"))?;
            let all_equal = (0u64..1 << n).all(|mask| {
                let j = IndexSet::from_mask(k1.matrix().labels(), mask);
                subset_probability(&k1, &j).unwrap() == subset_probability(&k2, &j).unwrap()
            });
            ensure(all_equal == verdict, || format!("n={n}: subset probabilities disagree with verdict"))?;
        }
    }
    Ok("20 kernels: conjugates equivalent, bumped kernels not, all subset probabilities consistent".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut record = |id: u32, limit: Duration, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let outcome = f();
        let took = t.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= limit => (true, d),
            Ok(d) => (false, format!("{d}; took {took:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        let line = format!(
            "criterion {id:>2}: {} [{took:.2?} / {limit:?}] {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        println!("{line}");
        lines.push(ok);
    };
    let sec = Duration::from_secs;
    record(1, sec(1), &mut criterion_1);
    record(2, sec(1), &mut criterion_2);
    record(3, sec(1), &mut criterion_3);
    let mut run = OracleRun {
        lengths_ok: 0,
        certificates: 0,
        worst: None,
    };
    record(4, sec(120), &mut || criterion_4(&mut run));
    record(5, sec(1), &mut || criterion_5(&run));
    record(6, sec(60), &mut criterion_6);
    record(7, sec(60), &mut criterion_7);
    record(8, sec(60), &mut criterion_8);
    record(9, sec(120), &mut criterion_9);
    record(10, sec(30), &mut criterion_10);
    let total = start.elapsed();
    record(11, sec(300), &mut || {
        let detail = format!("criteria 1-10 took {total:.2?} in total");
        if total <= sec(300) {
            Ok(detail)
        } else {
            Err(format!("{detail}, limit 300s"))
        }
    });
    let ok = lines.iter().all(|&x| x);
    println!("acceptance: {}", if ok { "all criteria PASS" } else { "FAILURES above" });
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
