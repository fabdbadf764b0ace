//! Acceptance suite: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use maxplus_gait::gait::{
    all_gaits, closed_form_a0_star, closed_form_eigenpair, closed_form_system_matrix, structural_blocks, system_matrix,
    Gait, GaitParams,
};
use maxplus_gait::sim::{detect_steady_state, offsets_from, simulate, EventState, Segment, SimulationPlan};
use maxplus_gait::spectral::{coupling_params, critical_graph, max_cycle_mean, verify_eigenpair};
use maxplus_gait::{MaxPlus, Matrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const DRAWS: usize = 5;
/// Powers computed by the coupling search; the identity is checked up to `p = 11`.
const COUPLING_CAP: usize = 12;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        ok,
        detail: detail.into(),
    }
}

fn params(rng: &mut ChaCha8Rng) -> GaitParams<f64> {
    GaitParams::new(
        rng.gen_range(1..=5) as f64,
        rng.gen_range(1..=5) as f64,
        rng.gen_range(0..=5) as f64,
    )
}

fn a2_params(rng: &mut ChaCha8Rng, m: usize) -> GaitParams<f64> {
    loop {
        let p = params(rng);
        if p.satisfies_a2(m) {
            return p;
        }
    }
}

/// Visits every gait of `2..=6` legs with `DRAWS` seeded parameter sets.
fn sweep(seed: u64, mut visit: impl FnMut(&Gait, &GaitParams<f64>) -> Result<(), String>) -> (usize, Vec<String>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut count = 0;
    let mut failures = Vec::new();
    for n in 2..=6 {
        for g in all_gaits(n) {
            for _ in 0..DRAWS {
                let p = params(&mut rng);
                count += 1;
                if let Err(e) = visit(&g, &p) {
                    failures.push(format!("{g} {:?}: {e}", (p.tau_f, p.tau_g, p.tau_delta)));
                }
            }
        }
    }
    (count, failures)
}

fn summarize(label: &str, count: usize, failures: &[String], elapsed: Duration, budget: Option<Duration>) -> Verdict {
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let mut detail = format!("{count} {label}, {} failures, {:.1}s", failures.len(), elapsed.as_secs_f64());
    if let Some(b) = budget {
        detail.push_str(&format!(" (budget {}s)", b.as_secs()));
    }
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    verdict(failures.is_empty() && in_time, detail)
}

fn eigenvalue_closed_form() -> Verdict {
    let start = Instant::now();
    let (count, failures) = sweep(1, |g, p| {
        let a = system_matrix(g, p).map_err(|e| e.to_string())?.a;
        let karp = max_cycle_mean(&a).map_err(|e| e.to_string())?;
        let expected = (p.tz() * g.m() as f64).max(p.tau_gamma());
        if karp == MaxPlus::Finite(expected) {
            Ok(())
        } else {
            Err(format!("karp {karp} vs {expected}"))
        }
    });
    summarize("gait/parameter pairs", count, &failures, start.elapsed(), Some(Duration::from_secs(60)))
}

fn eigenvector_closed_form() -> Verdict {
    let start = Instant::now();
    let (count, failures) = sweep(2, |g, p| {
        let gm = system_matrix(g, p).map_err(|e| e.to_string())?;
        let (lambda, v) = closed_form_eigenpair(g, p).map_err(|e| e.to_string())?;
        let lambda = MaxPlus::Finite(lambda);
        if !verify_eigenpair(&gm.a, lambda, &v, 0.0).map_err(|e| e.to_string())? {
            return Err("A ⊗ v != λ ⊗ v".into());
        }
        let v_bar = gm.c.otimes(&v).map_err(|e| e.to_string())?;
        if !verify_eigenpair(&gm.a_bar, lambda, &v_bar, 0.0).map_err(|e| e.to_string())? {
            return Err("Ā ⊗ Cv != λ ⊗ Cv".into());
        }
        Ok(())
    });
    summarize("gait/parameter pairs", count, &failures, start.elapsed(), None)
}

fn coupling_time() -> Verdict {
    let start = Instant::now();
    let mut checked = 0;
    let (_, failures) = sweep(3, |g, p| {
        if !p.satisfies_a2(g.m()) {
            return Ok(());
        }
        checked += 1;
        let a = system_matrix(g, p).map_err(|e| e.to_string())?.a;
        let lambda = p.eigenvalue(g.m());
        let mut pw = a.power(2).map_err(|e| e.to_string())?;
        for q in 2..=10 {
            let next = pw.otimes(&a).map_err(|e| e.to_string())?;
            if next != pw.shift(lambda) {
                return Err(format!("A^{} != λ ⊗ A^{q}", q + 1));
            }
            pw = next;
        }
        let r = coupling_params(&a, COUPLING_CAP, 0.0).map_err(|e| e.to_string())?;
        match (r.cyclicity, r.coupling_time) {
            (Some(1), Some(k0)) if k0 <= 2 => Ok(()),
            other => Err(format!("(c, k0) = {other:?}")),
        }
    });
    summarize("A2 draws", checked, &failures, start.elapsed(), Some(Duration::from_secs(120)))
}

fn critical_trichotomy() -> Verdict {
    let trot = Gait::new(4, vec![vec![1, 4], vec![2, 3]]).unwrap();
    let counts: Vec<usize> = [3.0, 5.0, 8.0]
        .iter()
        .map(|&tg| {
            let a = system_matrix(&trot, &GaitParams::new(1.0, tg, 2.0)).unwrap().a;
            critical_graph(&a, 0.0).unwrap().scc_count
        })
        .collect();
    let ok = counts[0] == 1 && counts[1] == 1 && counts[2] > 1;
    verdict(ok, format!("scc_count for tau_g = 3, 5, 8: {counts:?}"))
}

fn run_states(segments: Vec<Segment<f64>>, x0: &EventState<f64>) -> Vec<EventState<f64>> {
    let plan = SimulationPlan {
        segments,
        disturbances: Vec::new(),
    };
    simulate(&plan, x0).unwrap().states
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> EventState<f64> {
    let values: Vec<f64> = (0..2 * n).map(|_| rng.gen_range(-20..=20) as f64).collect();
    EventState::from_values(0, &values).unwrap()
}

/// All components of every offset from index `from` on are equal.
fn on_eigenray(offsets: &[Vec<f64>], from: usize) -> bool {
    offsets[from..].iter().all(|o| o.iter().all(|x| *x == o[0]))
}

fn eigenvector_uniqueness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut runs = 0;
    let mut failures = Vec::new();
    for n in 1..=4 {
        for g in all_gaits(n) {
            let p = a2_params(&mut rng, g.m());
            let (_, v) = closed_form_eigenpair(&g, &p).unwrap();
            for _ in 0..100 {
                runs += 1;
                let x0 = random_state(&mut rng, n);
                let seg = Segment {
                    gait: g.clone(),
                    params: p,
                    steps: 8,
                };
                let offs = offsets_from(&run_states(vec![seg], &x0), &v).unwrap();
                if !on_eigenray(&offs, 2) {
                    failures.push(format!("{g} from {:?}", x0.values()));
                }
            }
        }
    }
    let trot = Gait::new(4, vec![vec![1, 4], vec![2, 3]]).unwrap();
    let case3 = GaitParams::new(1.0, 8.0, 2.0);
    let (_, v) = closed_form_eigenpair(&trot, &case3).unwrap();
    let off_ray = (0..100)
        .filter(|_| {
            let seg = Segment {
                gait: trot.clone(),
                params: case3,
                steps: 8,
            };
            let offs = offsets_from(&run_states(vec![seg], &random_state(&mut rng, 4)), &v).unwrap();
            !on_eigenray(&offs, 2)
        })
        .count();
    let mut detail = format!(
        "{runs} runs under A1&A2, {} off the eigenray; case 3: {off_ray}/100 off the eigenray",
        failures.len()
    );
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    verdict(failures.is_empty() && off_ray > 0, detail)
}

fn gait_switch() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut failures = Vec::new();
    let mut worst = 0;
    for (i, n) in [4usize, 6].iter().flat_map(|&n| std::iter::repeat_n(n, 25)).enumerate() {
        let gaits = all_gaits(n);
        let g1 = gaits.choose(&mut rng).unwrap().clone();
        let g2 = gaits.choose(&mut rng).unwrap().clone();
        let p1 = a2_params(&mut rng, g1.m());
        let p2 = a2_params(&mut rng, g2.m());
        let (_, v1) = closed_form_eigenpair(&g1, &p1).unwrap();
        let (lambda2, v2) = closed_form_eigenpair(&g2, &p2).unwrap();
        let switch_at = 4;
        let states = run_states(
            vec![
                Segment {
                    gait: g1.clone(),
                    params: p1,
                    steps: switch_at,
                },
                Segment {
                    gait: g2.clone(),
                    params: p2,
                    steps: 8,
                },
            ],
            &EventState::from_column(0, &v1).unwrap(),
        );
        let monotone = states
            .windows(2)
            .all(|w| w[0].values().iter().zip(w[1].values()).all(|(a, b)| *a <= b));
        let after = &states[switch_at..];
        let steady = detect_steady_state(after, lambda2, 0.0).map(|k| k - switch_at);
        let offs = offsets_from(after, &v2).unwrap();
        match steady {
            Some(s) if monotone && s <= 2 && on_eigenray(&offs, 2) => worst = worst.max(s),
            _ => failures.push(format!(
                "pair {i}: {g1} -> {g2}, steady after {steady:?} steps, monotone {monotone}"
            )),
        }
    }
    let mut detail = format!("50 switches, {} failures, slowest recovery {worst} steps", failures.len());
    if let Some(f) = failures.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    verdict(failures.is_empty(), detail)
}

fn structural_identities() -> Verdict {
    let start = Instant::now();
    let (count, failures) = sweep(7, |g, p| {
        let normal = g.normalized();
        let b = structural_blocks(&normal, p).map_err(|e| e.to_string())?;
        let m = g.m() as f64;
        let check = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
        check(b.delta.otimes(&b.delta).unwrap() == b.delta, "Δ⊗Δ")?;
        check(b.delta.otimes(&b.v).unwrap() == b.v, "Δ⊗V")?;
        let vv = b.v.shift(p.tz() * (m - 1.0) + p.tau_delta);
        check(b.v.otimes(&b.v).unwrap() == vv, "V⊗V")?;
        let id = Matrix::identity(g.n());
        check(b.delta_prime.shift(p.tau_f).oplus(&id).unwrap() == b.delta, "τ_f⊗Δ′⊕I")?;
        check(b.delta.overcomes(&b.delta_prime).unwrap(), "Δ ≥ Δ′")?;
        let normal_gm = system_matrix(&normal, p).map_err(|e| e.to_string())?;
        check(closed_form_a0_star(&normal, p).unwrap() == normal_gm.a0_star, "A0*")?;
        let gm = system_matrix(g, p).map_err(|e| e.to_string())?;
        let conj = gm.c.otimes(&gm.a).unwrap().otimes(&gm.c.transpose()).unwrap();
        check(closed_form_system_matrix(&normal, p).unwrap() == conj, "Ā = C⊗A⊗Cᵀ")
    });
    summarize("gait/parameter pairs", count, &failures, start.elapsed(), None)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, lo: i32, hi: i32) -> Matrix<f64> {
    let entries = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(0.25) {
                MaxPlus::Epsilon
            } else {
                MaxPlus::Finite(rng.gen_range(lo..=hi) as f64)
            }
        })
        .collect();
    Matrix::new(rows, cols, entries).unwrap()
}

fn semiring_laws() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = 10_000;
    let mut failures = Vec::new();
    for case in 0..cases {
        let d: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=8)).collect();
        let a = random_matrix(&mut rng, d[0], d[1], -20, 20);
        let b = random_matrix(&mut rng, d[1], d[2], -20, 20);
        let b2 = random_matrix(&mut rng, d[1], d[2], -20, 20);
        let c = random_matrix(&mut rng, d[2], d[3], -20, 20);
        let a2 = random_matrix(&mut rng, d[0], d[1], -20, 20);
        let ab = a.otimes(&b).unwrap();
        let laws = [
            ("⊗ associative", ab.otimes(&c).unwrap() == a.otimes(&b.otimes(&c).unwrap()).unwrap()),
            ("⊕ commutative", a.oplus(&a2).unwrap() == a2.oplus(&a).unwrap()),
            ("⊕ idempotent", a.oplus(&a).unwrap() == a),
            (
                "⊗ distributes over ⊕",
                a.otimes(&b.oplus(&b2).unwrap()).unwrap() == ab.oplus(&a.otimes(&b2).unwrap()).unwrap(),
            ),
            ("I neutral", Matrix::identity(d[0]).otimes(&a).unwrap() == a),
            ("Z absorbing", a.otimes(&Matrix::zeros(d[1], d[2])).unwrap().is_all_epsilon()),
            ("Z neutral for ⊕", a.oplus(&Matrix::zeros(d[0], d[1])).unwrap() == a),
        ];
        // every circuit negative, so the star exists
        let n = d[0];
        let s = random_matrix(&mut rng, n, n, -15, -1);
        let star = s.kleene_star().unwrap();
        let bvec = random_matrix(&mut rng, n, 1, -10, 10);
        let x = s.solve_affine(&bvec).unwrap();
        let fixed = [
            (
                "A* = I ⊕ A⊗A*",
                star == Matrix::identity(n).oplus(&s.otimes(&star).unwrap()).unwrap(),
            ),
            ("A*⊗A* = A*", star.otimes(&star).unwrap() == star),
            ("x = A⊗x ⊕ b", x == s.otimes(&x).unwrap().oplus(&bvec).unwrap()),
        ];
        for (name, ok) in laws.iter().chain(&fixed) {
            if !ok {
                failures.push(format!("case {case}: {name}"));
            }
        }
    }
    verdict(
        failures.is_empty(),
        format!("{cases} cases with dims <= 8, {} law failures{}", failures.len(), failures.first().map_or(String::new(), |f| format!("; first: {f}"))),
    )
}

fn tgait(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tgait"))
        .args(args)
        .env_remove("TG_TOLERANCE")
        .output()
        .expect("tgait runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn end_to_end() -> Verdict {
    let trot = ["--dsl", "{1,4}<{2,3}", "--tau-f", "1", "--tau-g", "3", "--tau-delta", "2"];
    let mut problems = Vec::new();

    let (code, out) = tgait(&[&["analyze"][..], &trot].concat());
    let report: serde_json::Value = serde_json::from_str(&out).unwrap_or_default();
    let v: Vec<f64> = report["eigenvector"]
        .as_array()
        .map(|a| a.iter().filter_map(|x| x.as_f64()).collect())
        .unwrap_or_default();
    let k0 = report["coupling"]["coupling_time"].as_u64();
    if code != 0 || report["lambda"] != 6.0 || v != [1.0, 4.0, 4.0, 1.0, 0.0, 3.0, 3.0, 0.0] {
        problems.push(format!("analyze exit {code}, lambda {}, v {v:?}", report["lambda"]));
    }
    if report["irreducible"] != true || !k0.is_some_and(|k| k <= 2) {
        problems.push(format!("irreducible {}, k0 {k0:?}", report["irreducible"]));
    }

    let dir = tempfile::tempdir().expect("temp dir");
    let out_dir = dir.path().to_str().unwrap();
    let (code, out) = tgait(&[&["simulate", "--steps", "10", "--out", out_dir][..], &trot].concat());
    let sim: serde_json::Value = serde_json::from_str(&out).unwrap_or_default();
    if code != 0 || sim["violation_count"] != 0 {
        problems.push(format!("simulate exit {code}, violations {}", sim["violation_count"]));
    }
    let diagram = std::fs::read_to_string(dir.path().join("diagram.txt")).unwrap_or_default();
    let rows: Vec<&str> = diagram.lines().take(4).map(|l| l.split_once('|').map_or("", |x| x.1)).collect();
    let anti_phase = rows.len() == 4
        && rows[0] == rows[3]
        && rows[1] == rows[2]
        && rows[0] != rows[1]
        && rows[0].chars().zip(rows[1].chars()).all(|(a, b)| !(a == '.' && b == '.'));
    if !anti_phase {
        problems.push(format!("diagram not anti-phase:\n{diagram}"));
    }
    let detail = if problems.is_empty() {
        "analyze λ=6, v=[1,4,4,1,0,3,3,0], irreducible, k0<=2; 10-step schedule clean, diagonal pairs anti-phase".to_string()
    } else {
        problems.join("; ")
    };
    verdict(problems.is_empty(), detail)
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("eigenvalue closed form", eigenvalue_closed_form),
        ("eigenvector closed form", eigenvector_closed_form),
        ("coupling time", coupling_time),
        ("critical-graph trichotomy", critical_trichotomy),
        ("eigenvector uniqueness", eigenvector_uniqueness),
        ("gait-switch robustness", gait_switch),
        ("structural identities", structural_identities),
        ("semiring laws", semiring_laws),
        ("end-to-end CLI", end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            verdict(false, format!("panicked: {msg}"))
        });
        failed += usize::from(!v.ok);
        println!("[{}] criterion {}: {name}: {}", if v.ok { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
