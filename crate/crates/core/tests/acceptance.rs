//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use ndalg::cli::{cmd_export, cmd_verify, EXIT_CERTIFIED};
use ndalg::ndalgebra::{equiv, ideal_member, Decision};
use ndalg::ode::{certify_generalized_solution, jump_magnitude};
use ndalg::symmetry::{apply_jump, apply_multi, compose_multi};
use ndalg::{
    make_rho, make_smooth_step, CheckProtocol, FirstOrderOde, GeneralizedFunction, IdealWitness, JumpAction,
    MultiJumpAction, RepSequence, SmoothExpr,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_0001;
/// Step for the finite-difference smoothness check.
const FD_STEP: f64 = 1e-5;
/// Tolerance for the finite-difference smoothness check.
const FD_TOL: f64 = 1e-6;
/// Relative tolerance for pointwise homomorphism probes.
const PROBE_TOL: f64 = 1e-12;

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>;

fn dyadic(rng: &mut ChaCha8Rng, lo: f64, hi: f64, denom: f64) -> f64 {
    let k = rng.gen_range((lo * denom) as i64..=(hi * denom) as i64);
    k as f64 / denom
}

fn poly(c: &[f64]) -> SmoothExpr {
    SmoothExpr::polynomial(c)
}

fn bases() -> Vec<(&'static str, SmoothExpr)> {
    vec![("0", SmoothExpr::zero()), ("x", poly(&[0.0, 1.0])), ("x^2", poly(&[0.0, 0.0, 1.0]))]
}

fn protocol(lo: f64, hi: f64) -> CheckProtocol {
    CheckProtocol::default().with_window(lo, hi).expect("window").with_index_cap(16)
}

fn witness(points: &[f64]) -> IdealWitness {
    IdealWitness::new(points.to_vec()).expect("witness")
}

fn scenarios() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/scenarios");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .expect("scenario dir")
        .map(|e| e.expect("entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

fn uniform_points(rng: &mut ChaCha8Rng, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut pts: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    pts.extend([lo, hi]);
    pts
}

fn rho_compliance(rng: &mut ChaCha8Rng) -> Outcome {
    let rho = make_rho();
    for x in uniform_points(rng, -0.5, 0.5, 50) {
        if rho.eval(x) != 0.0 {
            return Err(format!("rho({x}) = {} in the zero zone", rho.eval(x)));
        }
    }
    for (lo, hi) in [(-1e3, -1.0), (1.0, 1e3)] {
        for x in uniform_points(rng, lo, hi, 50) {
            if rho.eval(x) != 1.0 {
                return Err(format!("rho({x}) = {} on a tail", rho.eval(x)));
            }
        }
    }
    for i in 0..1000 {
        let x = rng.gen_range(0.5..1.0) * if i % 2 == 0 { 1.0 } else { -1.0 };
        let v = rho.eval(x);
        if !(0.0..=1.0).contains(&v) {
            return Err(format!("rho({x}) = {v} outside [0, 1]"));
        }
    }
    let mut worst = 0.0f64;
    for b in [-1.0, -0.5, 0.5, 1.0] {
        for n in 0..3 {
            let f = rho.diff_n(n);
            let d = rho.diff_n(n + 1).eval(b);
            let central = (f.eval(b + FD_STEP) - f.eval(b - FD_STEP)) / (2.0 * FD_STEP);
            let right = (f.eval(b + FD_STEP) - f.eval(b)) / FD_STEP;
            let left = (f.eval(b) - f.eval(b - FD_STEP)) / FD_STEP;
            for fd in [central, right, left] {
                let err = (fd - d).abs() / d.abs().max(1.0);
                worst = worst.max(err);
                if err.is_nan() || err > FD_TOL {
                    return Err(format!("order {n} at x={b}: finite difference {fd} vs derivative {d}"));
                }
            }
        }
    }
    Ok(format!("zones exact, range ok, worst boundary fd error {worst:.1e}"))
}

fn band_identity() -> Outcome {
    let mut checked = 0usize;
    for nu in [0u32, 1, 3, 7, 15] {
        let r = 1.0 / (nu as f64 + 1.0);
        let w = r / 2.0;
        for a in [-1.0, 0.0, 2.5] {
            for h in [-2.0, 0.0, 1.0] {
                for (name, psi) in bases() {
                    let s = RepSequence::constant(psi.clone());
                    let out = apply_jump(&JumpAction::new(a, h).unwrap(), &s);
                    for j in 0..20 {
                        let left = a - r - j as f64 / 4.0;
                        let right = a + r + j as f64 / 4.0;
                        let k = -16 + ((32 * j) as f64 / 19.0).round() as i32;
                        let mid = a + w * k as f64 / 16.0;
                        let cases = [(left, psi.eval(left)), (mid, 0.0), (right, psi.eval(right) + h)];
                        for (x, want) in cases {
                            let got = out.eval(nu, x);
                            if got != want {
                                return Err(format!("nu={nu} a={a} h={h} s={name} x={x}: {got} != {want}"));
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} band samples exact"))
}

fn group_law(rng: &mut ChaCha8Rng) -> Outcome {
    let bases = bases();
    for i in 0..20 {
        let a = dyadic(rng, -4.0, 4.0, 16.0);
        let h = dyadic(rng, -4.0, 4.0, 16.0);
        let k = dyadic(rng, -4.0, 4.0, 16.0);
        let s = GeneralizedFunction::embed(bases[i % 3].1.clone());
        let factored = JumpAction::new(a, h).unwrap().apply_gf(&JumpAction::new(a, k).unwrap().apply_gf(&s));
        let composed = JumpAction::new(a, h).unwrap().compose(&JumpAction::new(a, k).unwrap()).unwrap().apply_gf(&s);
        let report = equiv(&factored, &composed, &witness(&[a]), &protocol(a - 3.0, a + 3.0));
        if report.decision != Decision::Certified {
            return Err(format!("(a,h,k)=({a},{h},{k}): {:?}", report.decision));
        }
        let wrong = JumpAction::new(a, h + k + 1.0).unwrap().apply_gf(&s);
        let control = equiv(&factored, &wrong, &witness(&[a]), &protocol(a - 3.0, a + 3.0));
        if control.decision != Decision::Refuted {
            return Err(format!("control with height off by one: {:?}", control.decision));
        }
    }
    Ok("20/20 certified, perturbed controls refuted".into())
}

fn fragment(rng: &mut ChaCha8Rng, points: &[f64]) -> GeneralizedFunction {
    let p = points[rng.gen_range(0..points.len())];
    let c = dyadic(rng, -4.0, 4.0, 8.0);
    let psis = [SmoothExpr::one(), poly(&[0.0, 1.0]), poly(&[1.0, 0.0, -1.0]), make_rho()];
    let psi = psis[rng.gen_range(0..psis.len())].clone();
    let bump = RepSequence::cutoff(p).sub(&RepSequence::constant(SmoothExpr::one()));
    let mut rep = bump.mul(&RepSequence::constant(psi)).scale(c);
    if rng.gen_bool(0.3) {
        rep = rep.derive(1);
    }
    GeneralizedFunction::new(rep, vec![p])
}

fn well_definedness(rng: &mut ChaCha8Rng) -> Outcome {
    let x = poly(&[0.0, 1.0]);
    let bases: Vec<GeneralizedFunction> = vec![
        GeneralizedFunction::embed(SmoothExpr::zero()),
        GeneralizedFunction::embed(x.clone()),
        GeneralizedFunction::embed(poly(&[0.0, 0.0, 1.0])),
        JumpAction::new(-1.5, 1.0).unwrap().apply_gf(&GeneralizedFunction::embed(x.clone())),
        MultiJumpAction::new([(-2.0, 0.5), (1.0, -1.0)]).unwrap().apply_gf(&GeneralizedFunction::embed(make_rho())),
    ];
    let mut count = 0;
    for base in &bases {
        let act = JumpAction::new(dyadic(rng, -1.0, 1.0, 4.0), dyadic(rng, -3.0, 3.0, 8.0)).unwrap();
        let points: Vec<f64> = base.singular_support().iter().copied().chain([act.a]).collect();
        let gamma = witness(&points);
        for _ in 0..10 {
            let f = fragment(rng, &points);
            let proto = protocol(-5.0, 5.0);
            let member = ideal_member(f.rep(), &gamma, &proto);
            if member.decision != Decision::Certified {
                return Err(format!("fragment not an ideal member: {:?}", member.decision));
            }
            let lhs = act.apply_gf(base);
            let rhs = act.apply_gf(&base.add(&f));
            let report = equiv(&lhs, &rhs, &gamma, &proto);
            if report.decision != Decision::Certified {
                return Err(format!("jump at {} on perturbed base: {:?}", act.a, report.decision));
            }
            count += 1;
        }
    }
    Ok(format!("{count} perturbed bases certified"))
}

fn solution_preservation() -> Outcome {
    let cases = [
        (SmoothExpr::zero(), SmoothExpr::zero()),
        (poly(&[0.0, 2.0]), poly(&[0.0, 0.0, 1.0])),
        (poly(&[-1.0, 0.0, 3.0]), poly(&[0.0, -1.0, 0.0, 1.0])),
    ];
    let j = |a, h| JumpAction::new(a, h).unwrap();
    let mut count = 0;
    for (f, u) in &cases {
        let ode = FirstOrderOde::new(f.clone());
        ode.classical_solution(u).map_err(|e| e.to_string())?;
        let w = GeneralizedFunction::embed(u.clone());
        let variants: Vec<(GeneralizedFunction, Vec<f64>)> = vec![
            (j(0.5, 1.5).apply_gf(&w), vec![0.5]),
            (j(-1.0, 2.0).apply_gf(&j(-1.0, -0.75).apply_gf(&w)), vec![-1.0]),
            (j(0.0, 1.0).apply_gf(&j(1.25, 2.0).apply_gf(&w)), vec![0.0, 1.25]),
            (MultiJumpAction::new([(-2.0, 1.0), (0.0, -0.5), (1.5, 3.0)]).unwrap().apply_gf(&w), vec![-2.0, 0.0, 1.5]),
            (MultiJumpAction::new([(0.25, 4.0)]).unwrap().apply_gf(&w), vec![0.25]),
        ];
        for (wj, gamma) in variants {
            let lo = gamma.first().unwrap() - 3.0;
            let hi = gamma.last().unwrap() + 3.0;
            let report = certify_generalized_solution(&wj, &ode, &witness(&gamma), &protocol(lo, hi));
            if report.decision != Decision::Certified {
                return Err(format!("F={f}, gamma={gamma:?}: {:?}", report.decision));
            }
            count += 1;
        }
    }
    let files = scenarios();
    for path in &files {
        let out = cmd_verify(path, None);
        if out.code != EXIT_CERTIFIED {
            return Err(format!("{}: exit {}", path.display(), out.code));
        }
    }
    Ok(format!("{count} transformed solutions certified, {} golden scenarios exit 0", files.len()))
}

fn random_multi(rng: &mut ChaCha8Rng) -> MultiJumpAction {
    let n = rng.gen_range(1..=4);
    let mut map = BTreeMap::new();
    while map.len() < n {
        map.insert(rng.gen_range(-8i32..=8), dyadic(rng, -4.0, 4.0, 16.0));
    }
    MultiJumpAction::new(map.into_iter().map(|(k, h)| (k as f64 / 2.0, h))).unwrap()
}

fn composition_law(rng: &mut ChaCha8Rng) -> Outcome {
    let bases = bases();
    for i in 0..50 {
        let first = random_multi(rng);
        let second = random_multi(rng);
        let composed = compose_multi(&first, &second);

        let mut oracle: BTreeMap<i64, f64> = BTreeMap::new();
        for &(a, h) in first.jumps().iter().chain(second.jumps()) {
            *oracle.entry((a * 2.0) as i64).or_insert(0.0) += h;
        }
        let expected: Vec<(f64, f64)> = oracle.into_iter().map(|(k, h)| (k as f64 / 2.0, h)).collect();
        if composed.jumps() != expected.as_slice() {
            return Err(format!("merge mismatch: {:?} vs {expected:?}", composed.jumps()));
        }

        let s = RepSequence::constant(bases[i % 3].1.clone());
        let factored = apply_multi(&first, &apply_multi(&second, &s));
        let direct = apply_multi(&composed, &s);
        let gamma = composed.locations();
        let report = ideal_member(&factored.sub(&direct), &witness(&gamma), &protocol(-7.0, 7.0));
        if report.decision != Decision::Certified {
            return Err(format!("A={:?} B={:?}: {:?}", first.jumps(), second.jumps(), report.decision));
        }
        let shifted = MultiJumpAction::new(composed.jumps().iter().map(|&(a, h)| (a, h + 0.5))).unwrap();
        let control = ideal_member(&factored.sub(&apply_multi(&shifted, &s)), &witness(&gamma), &protocol(-7.0, 7.0));
        if control.decision != Decision::Refuted {
            return Err(format!("control with shifted heights: {:?}", control.decision));
        }
    }
    Ok("50/50 merges exact and certified, perturbed controls refuted".into())
}

fn non_classicality(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..20 {
        let a = dyadic(rng, -2.0, 2.0, 16.0);
        let mut h = 0.0;
        while h == 0.0 {
            h = dyadic(rng, -4.0, 4.0, 16.0);
        }
        let coeffs: Vec<f64> = (0..4).map(|_| dyadic(rng, -2.0, 2.0, 8.0)).collect();
        let w = JumpAction::new(a, h).unwrap().apply_gf(&GeneralizedFunction::embed(poly(&coeffs)));
        let got = jump_magnitude(&w, a, &protocol(a - 3.0, a + 3.0)).map_err(|e| e.to_string())?;
        if got != h {
            return Err(format!("a={a} h={h} U={coeffs:?}: measured {got}"));
        }
    }
    Ok("20/20 jumps recovered exactly".into())
}

fn close(got: f64, want: f64) -> bool {
    got == want || (got - want).abs() <= PROBE_TOL * want.abs().max(1.0)
}

fn homomorphism(rng: &mut ChaCha8Rng) -> Outcome {
    let step = make_smooth_step();
    let corpus = [
        poly(&[1.0, 0.0, 1.0]),
        make_rho(),
        step.affine(0.5, 0.25).unwrap(),
        poly(&[0.0, 1.0]) * make_rho(),
        poly(&[0.0, -1.0, 0.0, 1.0]),
    ];
    for _ in 0..1000 {
        let nu = rng.gen_range(0..=64u32);
        let x = rng.gen_range(-4.0..=4.0);
        let p = &corpus[rng.gen_range(0..corpus.len())];
        let q = &corpus[rng.gen_range(0..corpus.len())];
        let (ep, eq) = (GeneralizedFunction::embed(p.clone()), GeneralizedFunction::embed(q.clone()));
        let checks = [
            ("sum", ep.add(&eq).eval_representative(nu, x), p.eval(x) + q.eval(x)),
            ("product", ep.mul(&eq).eval_representative(nu, x), p.eval(x) * q.eval(x)),
            ("derivation", ep.derive(1).eval_representative(nu, x), p.diff().eval(x)),
        ];
        for (what, got, want) in checks {
            if !close(got, want) {
                return Err(format!("{what} at nu={nu}, x={x}: {got} vs {want}"));
            }
        }
    }

    // Leibniz in the quotient, on jumped functions.
    let jumped = [
        JumpAction::new(0.5, 2.0).unwrap().apply_gf(&GeneralizedFunction::embed(poly(&[0.0, 0.0, 1.0]))),
        MultiJumpAction::new([(-1.0, 1.0), (0.5, -3.0)]).unwrap().apply_gf(&GeneralizedFunction::embed(make_rho())),
        GeneralizedFunction::embed(poly(&[0.0, -1.0, 0.0, 1.0])),
    ];
    for u in &jumped {
        for v in &jumped {
            let lhs = u.mul(v).derive(1);
            let rhs = u.derive(1).mul(v).add(&u.mul(&v.derive(1)));
            let gamma: Vec<f64> = u.singular_support().iter().chain(v.singular_support()).copied().collect();
            let report = equiv(&lhs, &rhs, &witness(&gamma), &protocol(-4.0, 4.0));
            if report.decision != Decision::Certified {
                return Err(format!("Leibniz failed: {:?}", report.decision));
            }
        }
    }

    // Derivatives of certified ideal members stay certified.
    let members = [
        (RepSequence::cutoff(0.0).sub(&RepSequence::constant(SmoothExpr::one())), vec![0.0]),
        (RepSequence::cutoff(1.0).sub(&RepSequence::constant(SmoothExpr::one())).mul(&RepSequence::constant(poly(&[0.0, 1.0]))), vec![1.0]),
        (
            apply_jump(&JumpAction::new(-0.5, 1.0).unwrap(), &RepSequence::constant(poly(&[0.0, 1.0])))
                .sub(&RepSequence::constant(poly(&[0.0, 1.0])))
                .sub(&RepSequence::step_tail(-0.5, 1.0)),
            vec![-0.5],
        ),
    ];
    for (m, gamma) in &members {
        let w = witness(gamma);
        let proto = protocol(-4.0, 4.0);
        if ideal_member(m, &w, &proto).decision != Decision::Certified {
            return Err(format!("corpus member not certified on {gamma:?}"));
        }
        for order in 1..=3 {
            let d = ideal_member(&m.derive(order), &w, &proto);
            if d.decision != Decision::Certified {
                return Err(format!("order-{order} derivative on {gamma:?}: {:?}", d.decision));
            }
        }
    }
    Ok("1000 probes agree, Leibniz and derivation stability certified".into())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let files = scenarios();
    for path in &files {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("run{run}"));
            let res = cmd_export(path, &out);
            if res.code != 0 {
                return Err(format!("{}: exit {} {}", path.display(), res.code, res.stderr));
            }
            outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
        }
        if outputs[0] != outputs[1] || outputs[0].is_empty() {
            return Err(format!("{}: exports differ", path.display()));
        }
    }
    Ok(format!("{} scenarios byte-identical", files.len()))
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("rho compliance", Box::new(rho_compliance)),
        ("band identity", Box::new(|_| band_identity())),
        ("group law", Box::new(group_law)),
        ("well-definedness", Box::new(well_definedness)),
        ("solution preservation", Box::new(|_| solution_preservation())),
        ("composition law", Box::new(composition_law)),
        ("non-classicality", Box::new(non_classicality)),
        ("algebra and embedding homomorphism", Box::new(homomorphism)),
        ("export determinism", Box::new(|_| determinism())),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| check(&mut rng)))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS  {}. {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {}. {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
