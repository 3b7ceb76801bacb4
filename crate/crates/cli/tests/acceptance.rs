//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::ExitCode;

use dacr::arc::{arc_to_clarke, arc_to_displacements, clarke_to_arc};
use dacr::clarke::{build_mp_inv, closed_form_mp, mat_mul_2, pseudoinverse_mp};
use dacr::scalar::angle_difference;
use dacr::segment::{
    helical_offset, joint_lengths, recover_length, twisted_joint_lengths, type1_forward_from_q,
    type1_inverse_to_q, type3_forward,
};
use dacr::{
    build_pair, make_symmetric_arrangement, ArcParameters, Chain, ChainState, ClarkeCoordinates,
    ClarkePair, Coupling, JointArrangement, JointConvention, RobotSpec, SegmentSpec, SegmentType,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{golden_cases, num, parse, stdout};

const TRIALS: usize = 1000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn symmetric_pair(n: usize, d: f64) -> ClarkePair<f64> {
    build_pair(&make_symmetric_arrangement(n, d).unwrap()).unwrap()
}

fn random_cc(rng: &mut ChaCha8Rng, scale: f64) -> ClarkeCoordinates<f64> {
    ClarkeCoordinates::new(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

fn right_inverse(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut tested = 0;
    while tested < TRIALS {
        let n = rng.gen_range(2..=16);
        let psi: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..TAU)).collect();
        let d: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..10.0)).collect();
        let Ok(pair) = build_pair(&JointArrangement::new(psi, d).unwrap()) else {
            continue;
        };
        let prod = mat_mul_2(pair.mp(), pair.mp_inv());
        let err = [prod[0][0] - 1.0, prod[0][1], prod[1][0], prod[1][1] - 1.0]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        worst = worst.max(err);
        tested += 1;
    }
    outcome(
        worst < 1e-10,
        format!("max |mp mp_inv - I| = {worst:.3e} over {TRIALS} arrangements"),
    )
}

fn symmetric_closed_form() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=32 {
        let a = build_mp_inv(&make_symmetric_arrangement(n, 1.0_f64).unwrap());
        let closed = closed_form_mp(&a);
        let general = pseudoinverse_mp(&a).unwrap();
        for r in 0..2 {
            for (x, y) in closed[r].iter().zip(&general[r]) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    outcome(
        worst < 1e-10,
        format!("max entry difference {worst:.3e} for n in 3..=32"),
    )
}

fn filter_property() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=32 {
        let pair = symmetric_pair(n, 1.0);
        let [a, b] = pair.filter_residual();
        let back = pair.inverse(ClarkeCoordinates::new(a, b));
        let back_norm = back.iter().map(|x| x * x).sum::<f64>().sqrt();
        worst = worst.max(a.hypot(b)).max(back_norm);
    }
    let asym = build_pair(&JointArrangement::new(vec![0.0, FRAC_PI_2, PI], vec![1.0; 3]).unwrap())
        .unwrap();
    let [a, b] = asym.filter_residual();
    let violation = a.hypot(b);
    outcome(
        worst < 1e-10 && violation == 1.0 && !asym.filter_ok(),
        format!("symmetric max {worst:.3e}; psi=[0,pi/2,pi] gives |mp 1| = {violation}"),
    )
}

fn sum_constraint(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let n = rng.gen_range(3..=16);
        let pair = symmetric_pair(n, 1.0);
        let rho = pair.inverse(random_cc(rng, 100.0));
        let sum: f64 = rho.iter().sum();
        worst = worst.max(sum.abs() / (1e-9 * n as f64));
    }
    outcome(
        worst < 1.0,
        format!("max |sum rho| / (1e-9 n) = {worst:.3e}"),
    )
}

fn magnitude_relation(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let n = rng.gen_range(3..=16);
        let pair = symmetric_pair(n, 1.0);
        let rho = pair.inverse(random_cc(rng, 100.0));
        let lhs = pair.forward(&rho).unwrap().norm_squared();
        let rhs = 2.0 / n as f64 * rho.iter().map(|x| x * x).sum::<f64>();
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    let spot = symmetric_pair(3, 1.0)
        .forward(&[2.0, -1.0, -1.0])
        .unwrap()
        .norm_squared();
    outcome(
        worst < 1e-10 && (spot - 4.0).abs() < 1e-12,
        format!("max relative error {worst:.3e}; rho=[2,-1,-1] gives {spot}"),
    )
}

fn length_recovery(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let n = rng.gen_range(3..=16);
        let pair = symmetric_pair(n, rng.gen_range(0.5..20.0));
        let l = rng.gen_range(1.0..1000.0);
        let rho = pair.inverse(random_cc(rng, 10.0));
        let recovered = recover_length(&pair, &joint_lengths(l, &rho), None).unwrap();
        worst = worst.max((recovered - l).abs() / l);
    }
    let worked = recover_length(&symmetric_pair(3, 10.0), &[98.0, 101.0, 101.0], None).unwrap();
    outcome(
        worst < 1e-8 && worked == 100.0,
        format!("max relative error {worst:.3e}; q=[98,101,101] gives {worked}"),
    )
}

fn type1_roundtrip(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let n = rng.gen_range(3..=16);
        let pair = symmetric_pair(n, rng.gen_range(0.5..20.0));
        let q = joint_lengths(
            rng.gen_range(1.0..1000.0),
            &pair.inverse(random_cc(rng, 10.0)),
        );
        let state = type1_forward_from_q(&pair, &q, None).unwrap();
        let back = type1_inverse_to_q(&pair, &state).unwrap();
        for (a, b) in back.iter().zip(q.iter()) {
            worst = worst.max((a - b).abs());
        }
    }
    outcome(worst < 1e-9, format!("max |q' - q| = {worst:.3e}"))
}

/// Displacements on the grid `k / 2^16`, `|rho| <= 16`: with `l` in
/// `[150, 170]` every `l + dl - rho_i` stays in `[128, 256)`, so the joint
/// lengths are formed without rounding that depends on `alpha`.
fn twist_immunity(rng: &mut ChaCha8Rng) -> Outcome {
    let mut exact = true;
    let mut worst_real = 0.0f64;
    for _ in 0..TRIALS {
        let n = rng.gen_range(3..=16);
        let d = rng.gen_range(0.5..5.0);
        let pair = symmetric_pair(n, d);
        let l = rng.gen_range(150.0..170.0);
        let grid: Vec<f64> = (0..n)
            .map(|_| f64::from(rng.gen_range(-(16 << 16)..=(16 << 16))) / 65536.0)
            .collect();
        let reference = type3_forward(
            &pair,
            &twisted_joint_lengths(l, &grid, 0.0, d).unwrap(),
            l,
            0.0,
        )
        .unwrap()
        .cc;
        for _ in 0..4 {
            let alpha = rng.gen_range(-PI..=PI);
            let q = twisted_joint_lengths(l, &grid, alpha, d).unwrap();
            let cc = type3_forward(&pair, &q, l, alpha).unwrap().cc;
            exact &= cc.re.to_bits() == reference.re.to_bits()
                && cc.im.to_bits() == reference.im.to_bits();
        }

        let rho = pair.inverse(random_cc(rng, 10.0));
        let base = type3_forward(
            &pair,
            &twisted_joint_lengths(l, &rho, 0.0, d).unwrap(),
            l,
            0.0,
        )
        .unwrap()
        .cc;
        let alpha = rng.gen_range(-PI..=PI);
        let cc = type3_forward(
            &pair,
            &twisted_joint_lengths(l, &rho, alpha, d).unwrap(),
            l,
            alpha,
        )
        .unwrap()
        .cc;
        worst_real = worst_real.max((cc - base).norm());
    }
    let mut pythagorean = true;
    for _ in 0..TRIALS {
        let d: f64 = rng.gen_range(0.1..100.0);
        pythagorean &= helical_offset(3.0 / d, d, 4.0).unwrap() == 1.0;
    }
    outcome(
        exact && pythagorean && worst_real < 1e-10,
        format!(
            "bit-identical on grid displacements: {exact}; real-valued max drift {worst_real:.3e}; \
             dl(3/d, d, 4) == 1 for {TRIALS} radii: {pythagorean}"
        ),
    )
}

fn chain_robot(n: usize, m: usize) -> RobotSpec<f64> {
    let arr = make_symmetric_arrangement(n, 1.0).unwrap();
    RobotSpec::new(
        (0..m)
            .map(|_| SegmentSpec::new(arr.clone(), 10.0, SegmentType::Type0))
            .collect(),
        Coupling::Interdependent,
    )
}

fn chain_consistency(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let m = rng.gen_range(1..=8);
        let n = rng.gen_range(3..=16);
        let chain = Chain::new(&chain_robot(n, m)).unwrap();
        let pair = &chain.pairs()[0];
        let rho: Vec<Vec<f64>> = (0..m)
            .map(|_| pair.inverse(random_cc(rng, 10.0)).into_inner())
            .collect();
        for _ in 0..2 {
            let lengths: Vec<f64> = (0..m).map(|_| rng.gen_range(1.0..500.0)).collect();
            let q = chain.interdependent_accumulate(&rho, &lengths).unwrap();
            let cc = chain.interdependent_forward(&q).unwrap();
            for (c, r) in cc.per_segment.iter().zip(&rho) {
                worst = worst.max((*c - pair.forward(r).unwrap()).norm());
            }
        }
    }
    let chain = Chain::new(&chain_robot(3, 2)).unwrap();
    let worked = chain
        .interdependent_forward(&ChainState::new(
            JointConvention::Q,
            vec![vec![8.0, 11.0, 11.0], vec![30.0, 30.0, 30.0]],
        ))
        .unwrap();
    let expected = [
        ClarkeCoordinates::new(2.0, 0.0),
        ClarkeCoordinates::new(-2.0, 0.0),
    ];
    let worked_err = worked
        .per_segment
        .iter()
        .zip(expected)
        .fold(0.0f64, |w, (a, b)| w.max((*a - b).norm()));
    outcome(
        worst < 1e-9 && worked_err < 1e-12,
        format!(
            "max deviation {worst:.3e} (two length sets each); worked case error {worked_err:.3e}"
        ),
    )
}

fn arc_bridge(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    for _ in 0..TRIALS {
        let kappa = rng.gen_range(1e-6..2.0);
        let theta = rng.gen_range(0.0..TAU);
        let l = rng.gen_range(0.1..1000.0);
        let d = rng.gen_range(0.01..50.0);
        let arc = ArcParameters::new(kappa, theta, l).unwrap();
        let back = clarke_to_arc(arc_to_clarke(&arc, d).unwrap(), d, l).unwrap();
        let err = ((back.kappa() - kappa) / kappa)
            .abs()
            .max(angle_difference(back.theta(), arc.theta()).abs())
            .max((back.l() - l).abs());
        worst = worst.max(err);
    }
    let mut straight = true;
    for n in 3..=16 {
        let pair = symmetric_pair(n, 2.0);
        let arc = ArcParameters::new(0.0, 1.0, 50.0).unwrap();
        straight &= arc_to_clarke(&arc, 2.0).unwrap().norm() == 0.0;
        straight &= arc_to_displacements(&pair, &arc, 2.0)
            .unwrap()
            .iter()
            .all(|&x| x == 0.0);
    }
    outcome(
        worst < 1e-10 && straight,
        format!("max roundtrip error {worst:.3e}; straight configuration maps to zero: {straight}"),
    )
}

fn golden_values_ok() -> bool {
    let get = |name: &str| {
        let case = golden_cases().into_iter().find(|c| c.name == name).unwrap();
        parse(&case.expected())
    };
    let m = get("matrix_asymmetric");
    let r = &m["filter_residual"];
    let t = get("forward_type3");
    let c = get("chain_forward");
    let a = get("arc_from_clarke");
    num(&r[0]).hypot(num(&r[1])) == 1.0
        && num(&get("recover_length")["length"]) == 100.0
        && (num(&t["cc"][0]) - 2.0).abs() < 1e-12
        && num(&t["beta"]) == 4.0
        && (num(&c["segments"][0]["cc"][0]) - 2.0).abs() < 1e-12
        && (num(&c["segments"][1]["cc"][0]) + 2.0).abs() < 1e-12
        && (num(&a["kappa"]) - 0.005).abs() < 1e-18
        && num(&a["theta"]) == 0.0
}

fn cli_golden() -> Outcome {
    let mut mismatched = Vec::new();
    for case in golden_cases() {
        let out = case.output();
        if !out.status.success() || stdout(&out) != case.expected() {
            mismatched.push(case.name);
        }
    }
    let values_ok = golden_values_ok();
    let total = golden_cases().len();
    outcome(
        mismatched.is_empty() && values_ok,
        format!(
            "{} of {total} outputs byte-identical{}; expected values present: {values_ok}",
            total - mismatched.len(),
            if mismatched.is_empty() {
                String::new()
            } else {
                format!(" (differs: {})", mismatched.join(", "))
            }
        ),
    )
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0dac_0001);
    let criteria: Vec<(&str, Outcome)> = vec![
        ("right-inverse identity", right_inverse(&mut rng)),
        ("symmetric closed-form equivalence", symmetric_closed_form()),
        ("filter property", filter_property()),
        ("displacement sum constraint", sum_constraint(&mut rng)),
        ("magnitude relation", magnitude_relation(&mut rng)),
        ("length recovery", length_recovery(&mut rng)),
        ("type-I roundtrip", type1_roundtrip(&mut rng)),
        ("twist immunity", twist_immunity(&mut rng)),
        ("chain consistency", chain_consistency(&mut rng)),
        ("arc bridge roundtrip", arc_bridge(&mut rng)),
        ("CLI golden files", cli_golden()),
    ];
    let mut failed = 0;
    for (i, (name, result)) in criteria.iter().enumerate() {
        let tag = if result.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {:>2}. {name}: {}", i + 1, result.detail);
        failed += usize::from(!result.pass);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
