//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line with its runtime.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use choquet_lab::boundary;
use choquet_lab::dirichlet;
use choquet_lab::gallery::{self, HjParams};
use choquet_lab::hustad;
use choquet_lab::representation::{self, Condition, Uniqueness};
use choquet_lab::settings::Settings;
use choquet_lab::suite::{self, RandomSuiteOptions};
use choquet_lab::{FunctionSpace, Measure, Rational, Scalar, Status, Witness};

type Outcome = Result<String, String>;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::from_frac(n, d)
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() <= limit, format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

fn summary_of(space: &FunctionSpace, s: &Settings) -> Result<String, String> {
    Ok(representation::condition_report(space, s).map_err(err)?.summary())
}

fn statuses(space: &FunctionSpace, s: &Settings) -> Result<Vec<Status>, String> {
    let r = representation::condition_report(space, s).map_err(err)?;
    Ok(Condition::ALL.iter().map(|&c| r.status(c)).collect())
}

fn c1_easy_spaces(s: &Settings) -> Outcome {
    let t = Instant::now();
    let sp1 = gallery::make_interval_space(1, 8, &Scalar::zero()).map_err(err)?;
    let r1 = boundary::choquet_boundary(&sp1, s).map_err(err)?;
    ensure(r1.non_boundary() == vec![sp1.index_of("0").map_err(err)?], "interval1: boundary is not all but 0")?;
    ensure(r1.is_decided(), "interval1: undecided points")?;
    within(t, Duration::from_secs(10))?;

    let t = Instant::now();
    let sp2 = gallery::make_interval_space(2, 8, &Scalar::from_int(-1)).map_err(err)?;
    let r2 = boundary::choquet_boundary(&sp2, s).map_err(err)?;
    let theta = boundary::theta_injective(&sp2, Some(&r2));
    ensure(theta.is_false(), "interval2: θ should not be injective")?;
    ensure(boundary::verify_theta_pair(&sp2, theta.witness.as_ref().ok_or("no θ witness")?), "interval2: θ pair fails")?;
    let (simp, _) = representation::is_simplicial(&sp2, &r2).map_err(err)?;
    ensure(simp.is_false(), "interval2: should be non-simplicial")?;
    ensure(representation::verify_multiple(&sp2, &r2, simp.witness.as_ref().ok_or("no witness")?), "interval2 witness")?;
    within(t, Duration::from_secs(10))?;

    let t = Instant::now();
    let sp3 = gallery::make_interval_space(3, 8, &q(1, 2)).map_err(err)?;
    let r3 = boundary::choquet_boundary(&sp3, s).map_err(err)?;
    ensure(boundary::theta_injective(&sp3, Some(&r3)).is_true(), "interval3: θ should be injective")?;
    ensure(representation::is_simplicial(&sp3, &r3).map_err(err)?.0.is_true(), "interval3: should be simplicial")?;
    let one = sp3.index_of("1").map_err(err)?;
    let rs = representation::representing_set(&sp3, &sp3.evaluation_functional(one), Some(&r3)).map_err(err)?;
    let mut expected = Measure::zero(sp3.n());
    expected.values[sp3.index_of("0").map_err(err)?] = q(1, 2);
    match representation::unique_member(&sp3, &rs) {
        Uniqueness::Unique(mu) => ensure(mu == expected, "interval3: M at 1 is not {½ε₀}")?,
        Uniqueness::Multiple(..) => return Err("interval3: M at 1 is not a singleton".into()),
    }
    within(t, Duration::from_secs(10))?;
    Ok("interval1/2/3 at g=8".into())
}

fn c2_hj_family(s: &Settings) -> Outcome {
    let (alpha, beta) = (q(1, 4), q(1, 2));
    let mut notes = Vec::new();
    for g in [2, 4] {
        let t = Instant::now();
        let sp = gallery::make_hj(&HjParams::new(1, g, alpha.clone(), beta.clone())).map_err(err)?;
        let summary = summary_of(&sp, s)?;
        ensure(summary == "I:T II:T III:T IV:F V:T VI:F", format!("g={g}: {summary}"))?;
        let r = boundary::choquet_boundary(&sp, s).map_err(err)?;
        let basis = representation::annihilator_boundary_basis(&sp, &r).map_err(err)?;
        let mut expected = Measure::zero(sp.n());
        expected.values[sp.index_of("a").map_err(err)?] = alpha.clone();
        expected.values[sp.index_of("b").map_err(err)?] = beta.clone();
        expected.values[sp.index_of("(0,1)").map_err(err)?] = q(-1, 2);
        expected.values[sp.index_of("(0,-1)").map_err(err)?] = q(-1, 2);
        ensure(basis.len() == 1, format!("g={g}: annihilator dimension {}", basis.len()))?;
        let j = expected.support()[0];
        let c = &expected.values[j] / &basis[0].values[j];
        ensure(basis[0].scale(&c) == expected, format!("g={g}: annihilator differs from the formula"))?;
        let x = sp.index_of("(0,0)").map_err(err)?;
        let dn = boundary::dual_norm(&sp, &sp.evaluation_functional(x), s).map_err(err)?;
        ensure(dn.exact() == Some(&Rational::new(3.into(), 4.into())), format!("g={g}: ‖φ(0,0)‖ ≠ 3/4"))?;
        within(t, Duration::from_secs(120))?;
        notes.push(format!("g={g} {:?}", t.elapsed()));
    }
    Ok(notes.join(", "))
}

fn c3_nonuniqueness(s: &Settings) -> Outcome {
    let alpha = q(1, 3);
    let sp = gallery::make_hj(&HjParams::new(1, 2, alpha.clone(), alpha.clone())).map_err(err)?;
    let rep = representation::condition_report(&sp, s).map_err(err)?;
    let want = [(Condition::I, Status::True), (Condition::II, Status::True), (Condition::III, Status::False)];
    for (c, st) in want.into_iter().chain([(Condition::IV, Status::False), (Condition::VI, Status::False)]) {
        ensure(rep.status(c) == st, format!("{c}: got {:?}", rep.status(c)))?;
    }
    let r = &rep.boundary;
    let generic = match &rep.verdicts[&Condition::III].witness {
        Some(Witness::NonUniqueness(w)) => w.clone(),
        other => return Err(format!("III carries no non-uniqueness witness: {other:?}")),
    };
    ensure(representation::verify_nonuniqueness_witness(&sp, r, &generic), "generic witness fails")?;

    // The explicit pair μ₁ = −αε_b + ½ε_(0,1), μ₂ = αε_a − ½ε_(0,−1) with norming f(s,t) = t, f(a) = 1, f(b) = −1.
    let idx = |l: &str| sp.index_of(l).map_err(err);
    let mut mu1 = Measure::zero(sp.n());
    mu1.values[idx("b")?] = -&alpha;
    mu1.values[idx("(0,1)")?] = q(1, 2);
    let mut mu2 = Measure::zero(sp.n());
    mu2.values[idx("a")?] = alpha.clone();
    mu2.values[idx("(0,-1)")?] = q(-1, 2);
    let values: Vec<Scalar> = sp
        .labels()
        .iter()
        .map(|l| match l.as_str() {
            "a" => Scalar::one(),
            "b" => Scalar::from_int(-1),
            _ if l.ends_with(",1)") => Scalar::one(),
            _ if l.ends_with(",-1)") => Scalar::from_int(-1),
            _ => Scalar::zero(),
        })
        .collect();
    let f = sp.coeffs_of(&values).ok_or("f(s,t) = t is not in H")?;
    let w = choquet_lab::verdict::NonUniquenessWitness {
        mu: mu1.to_map(&sp),
        nu: mu2.sub(&mu1).to_map(&sp),
        f,
        phi: sp.functional_of(&mu1),
    };
    ensure(representation::verify_nonuniqueness_witness(&sp, r, &w), "explicit pair fails to verify")?;
    let target = Rational::new(5.into(), 6.into());
    for (name, m) in [("μ₁", &mu1), ("μ₂", &mu2)] {
        ensure(m.total_variation_exact() == Some(target.clone()), format!("‖{name}‖ ≠ 5/6"))?;
    }
    let dn = boundary::dual_norm(&sp, &w.phi, s).map_err(err)?;
    ensure(dn.exact() == Some(&target), "‖φ‖ ≠ 5/6")?;
    Ok("generic and explicit witnesses verify, ‖μ₁‖ = ‖μ₂‖ = ‖φ‖ = 5/6".into())
}

fn c4_c14(s: &Settings) -> Outcome {
    let t = Instant::now();
    let pairs = suite::c14_default_pairs();
    ensure(pairs.len() >= 20, "fewer than 20 pairs")?;
    let cases = suite::c14_cross_validation(&pairs, 2, s).map_err(err)?;
    let mut decided = 0;
    for c in &cases {
        if c.c14.is_decided() && c.generic.is_decided() {
            decided += 1;
            ensure(c.c14 == c.generic, format!("disagree at α={} β={}", c.alpha, c.beta))?;
        }
        if c.alpha == c.beta {
            ensure(c.c14 == Status::False && c.generic == Status::False, format!("α=β={} not refuted", c.alpha))?;
        } else if c.alpha > Rational::from_integer(0.into()) && c.beta > Rational::from_integer(0.into()) {
            ensure(c.c14 == Status::True && c.generic == Status::True, format!("α={} β={} not simplicial", c.alpha, c.beta))?;
        }
    }
    ensure(cases.iter().any(|c| c.alpha == c.beta), "no α=β case")?;
    within(t, Duration::from_secs(600))?;
    Ok(format!("{} pairs, {decided} decided by both, all agree", cases.len()))
}

fn c5_porcupines(s: &Settings) -> Outcome {
    let all = ["0", "1/4", "1/2", "3/4", "1"];
    let mut count = 0;
    for size in 2..=5 {
        let l = &all[..size];
        for mask in 1u32..(1 << size) {
            let a: Vec<&str> = (0..size).filter(|i| mask & (1 << i) != 0).map(|i| l[i]).collect();
            let t = Instant::now();
            let sp = gallery::make_porcupine(l, &a).map_err(err)?;
            let rep = representation::condition_report(&sp, s).map_err(err)?;
            let got: Vec<String> = rep.boundary.boundary().into_iter().map(|x| sp.label(x).to_string()).collect();
            let mut want = gallery::porcupine_boundary(l, &a);
            want.sort();
            let mut got_sorted = got.clone();
            got_sorted.sort();
            ensure(got_sorted == want, format!("L={l:?} A={a:?}: boundary {got:?}"))?;
            ensure(rep.status(Condition::II) == Status::True, format!("L={l:?} A={a:?}: not simplicial"))?;
            ensure(rep.status(Condition::VI) == Status::True, format!("L={l:?} A={a:?}: not L¹-predual"))?;
            let five = [Condition::III, Condition::IV, Condition::V, Condition::VI];
            let st = boundary::state_space(&sp, &rep.boundary).map_err(err)?;
            let simplex = st.is_simplex.status;
            ensure(five.iter().all(|&c| rep.status(c) == simplex), format!("L={l:?} A={a:?}: {}", rep.summary()))?;
            within(t, Duration::from_secs(60))?;
            count += 1;
        }
    }
    Ok(format!("{count} porcupines"))
}

fn c6_counterexamples(s: &Settings) -> Outcome {
    use Status::{False as F, True as T};
    let hj = |a, b| gallery::make_hj(&HjParams::new(1, 2, a, b));
    let cases: Vec<(&str, FunctionSpace, Vec<(usize, Status)>)> = vec![
        ("two-point", gallery::make_two_point(), vec![(5, T), (0, F)]),
        ("square-affine", gallery::make_square_affine(), vec![(0, T), (1, F), (4, F)]),
        ("hj(1/4,1/2)", hj(q(1, 4), q(1, 2)).map_err(err)?, vec![(2, T), (3, F)]),
        ("hj(1/3,1/3)", hj(q(1, 3), q(1, 3)).map_err(err)?, vec![(1, T), (2, F)]),
    ];
    for (name, sp, want) in cases {
        let st = statuses(&sp, s)?;
        for (i, w) in want {
            ensure(st[i] == w, format!("{name}: {} is {:?}", Condition::ALL[i], st[i]))?;
        }
    }
    Ok("VI∧¬I, I∧¬II∧¬V, III∧¬IV, II∧¬III".into())
}

fn c7_random(s: &Settings) -> Outcome {
    let t = Instant::now();
    let rep = suite::random_implication_suite(&RandomSuiteOptions::default(), s);
    ensure(rep.spaces == 200, format!("{} spaces", rep.spaces))?;
    if let Some(v) = rep.violations.first() {
        return Err(format!("{} violations, first: {}: {}", rep.violations.len(), v.check, v.message));
    }
    within(t, Duration::from_secs(900))?;
    Ok(format!("200 spaces, 0 violations, {} dilation runs", rep.dirichlet_runs))
}

fn c8_dirichlet(s: &Settings) -> Outcome {
    let t = Instant::now();
    let mut spaces = vec![
        gallery::make_interval_space(1, 4, &Scalar::zero()).map_err(err)?,
        gallery::make_interval_space(3, 4, &q(1, 2)).map_err(err)?,
        gallery::make_hj(&HjParams::new(1, 2, q(1, 4), q(1, 2))).map_err(err)?,
        gallery::make_hj(&HjParams::new(1, 2, q(1, 3), q(1, 3))).map_err(err)?,
        gallery::make_porcupine(&["0", "1/2", "1"], &["1/2"]).map_err(err)?,
        gallery::make_full(4),
        gallery::make_balanced_sum(2).map_err(err)?,
    ];
    for i in 0..40 {
        spaces.push(suite::suite_space(7, i, 6, 4).map_err(err)?);
    }
    let mut runs = 0;
    for sp in &spaces {
        let r = boundary::choquet_boundary(sp, s).map_err(err)?;
        if !r.is_decided() || !representation::is_simplicial(sp, &r).map_err(err)?.0.is_true() {
            continue;
        }
        let rep = dirichlet::property_suite(sp, s, 8).map_err(err)?;
        ensure(rep.passed(), format!("{}: {:?}", sp.name(), rep.failures))?;
        runs += 1;
    }
    for (a, b) in [((1, 4), (1, 2)), ((1, 3), (1, 3)), ((-1, 5), (2, 5))] {
        let (alpha, beta) = (q(a.0, a.1), q(b.0, b.1));
        let sp = gallery::make_hj(&HjParams::new(1, 2, alpha.clone(), beta.clone())).map_err(err)?;
        let pair = dirichlet::dilation(&sp, s).map_err(err)?;
        let d1 = dirichlet::apply_d(&pair, &vec![Rational::from_integer(1.into()); sp.n()]).map_err(err)?;
        let x = sp.index_of("(0,0)").map_err(err)?;
        ensure(Scalar::real(d1[x].clone()) == &alpha + &beta, format!("D1(0,0) = {} for α={alpha} β={beta}", d1[x]))?;
    }
    within(t, Duration::from_secs(300))?;
    Ok(format!("{runs} simplicial spaces, D1(0,0) = α+β"))
}

fn c9_hustad() -> Outcome {
    let rep = hustad::property_suite(500, 1);
    ensure(rep.cases >= 500, format!("{} cases", rep.cases))?;
    ensure(rep.failures() == 0, format!("{rep:?}"))?;
    Ok(format!("{} cases", rep.cases))
}

fn c10_prubeh() -> Outcome {
    let t = Instant::now();
    let rep = suite::prubeh_sweep(20, usize::MAX);
    ensure(rep.failures == 0, format!("{} failures", rep.failures))?;
    ensure(rep.nonstrict_nonreal == 0, format!("{} non-strict cases with z ≠ ±1", rep.nonstrict_nonreal))?;
    ensure(rep.real_mismatch == 0, format!("{} z = ±1 cases off the closed form", rep.real_mismatch))?;
    within(t, Duration::from_secs(30))?;
    Ok(format!(
        "{} cases; strict whenever z ≠ ±1; at z = ±1 strict in {} cases, exactly when t < γz",
        rep.cases, rep.strict_real
    ))
}

fn c11_sandwich(s: &Settings) -> Outcome {
    let cases = suite::sandwich_suite(50, 11, s).map_err(err)?;
    ensure(cases.len() == 50, "fewer than 50 functionals")?;
    for c in &cases {
        ensure(c.nested, format!("functional {}: enclosures not nested", c.functional))?;
        ensure(c.ratio_ok, format!("functional {}: ratio above sec(π/N)", c.functional))?;
    }
    let conflicts = suite::grid_refinement_conflicts(10, 11, s).map_err(err)?;
    ensure(conflicts.is_empty(), conflicts.join("; "))?;
    Ok("50 functionals nested within sec(π/N); no grid-refinement flips".into())
}

#[test]
fn acceptance() {
    let s = Settings::default();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("1 easy spaces", Box::new(|| c1_easy_spaces(&s))),
        ("2 H_1(1/4,1/2)", Box::new(|| c2_hj_family(&s))),
        ("3 H_1(1/3,1/3) witness", Box::new(|| c3_nonuniqueness(&s))),
        ("4 four-number cross-check", Box::new(|| c4_c14(&s))),
        ("5 porcupines", Box::new(|| c5_porcupines(&s))),
        ("6 counterexample pairs", Box::new(|| c6_counterexamples(&s))),
        ("7 random implication suite", Box::new(|| c7_random(&s))),
        ("8 dilation operators", Box::new(|| c8_dirichlet(&s))),
        ("9 Hustad mapping", Box::new(c9_hustad)),
        ("10 |tz|-|tz-γ| sweep", Box::new(c10_prubeh)),
        ("11 complex sandwich", Box::new(|| c11_sandwich(&s))),
    ];
    let mut failed = Vec::new();
    for (name, check) in &criteria {
        let t = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let dt = t.elapsed();
        match out {
            Ok(note) => println!("PASS criterion {name} [{dt:.2?}] {note}"),
            Err(why) => {
                println!("FAIL criterion {name} [{dt:.2?}] {why}");
                failed.push(*name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
