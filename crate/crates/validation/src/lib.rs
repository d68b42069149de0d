//! The acceptance criteria as plain functions. Each check is exact (no
//! tolerances) and returns a one-line summary of what it established or where
//! it broke.

use obstrukt::{run_command_with, Status};
use obstrukt_core::bockstein::{
    beta_certificate, browder_prediction, e2_dimensions, qualifying_generators,
};
use obstrukt_core::models::{
    bo_algebra, em_algebra, excess_exactly, mo_vanishing_check, wu_sq, EilenbergMacLane, ThomModule,
};
use obstrukt_core::oracle::SplittingOracle;
use obstrukt_core::series::{
    crossing_degree, em_series, fg_bound_crossing, mo_series, poly_series,
};
use obstrukt_core::steenrod::{adem_reduce, SqWord, SteenrodElement};
use serde_json::Value;

pub type Check = Result<String, String>;

pub struct Criterion {
    pub number: u32,
    pub title: &'static str,
    pub run: fn() -> Check,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            number: 1,
            title: "Adem reduction agrees with the splitting oracle",
            run: adem_oracle,
        },
        Criterion {
            number: 2,
            title: "admissibility, idempotence and the Sq^1 relations",
            run: relations,
        },
        Criterion {
            number: 3,
            title: "Wu formula agrees with the splitting oracle",
            run: wu_oracle,
        },
        Criterion {
            number: 4,
            title: "Sq^1 Sq^I(U_k) = 0 for excess-k words, k = 2..6",
            run: mo_vanishing,
        },
        Criterion {
            number: 5,
            title: "Sq^I(i_k) is a square for excess-k words in K(Z/2,2), K(Z/2,3)",
            run: em_squares,
        },
        Criterion {
            number: 6,
            title: "Sq^1-cohomology of K(Z/2,k) matches the predicted page, k = 1..3",
            run: browder_match,
        },
        Criterion {
            number: 7,
            title: "certificates for k = 2, J = () and k = 3, J = (2,1); J = (1) rejected",
            run: certificates,
        },
        Criterion {
            number: 8,
            title: "H*(K(Z/2,k)) outgrows H~*(MO(k)) by degree 60, k = 2, 3",
            run: mo_growth,
        },
        Criterion {
            number: 9,
            title: "H*(K(Z/2,2)) outgrows the free algebra on degrees 1..5 by degree 80",
            run: fg_growth,
        },
        Criterion {
            number: 10,
            title: "basis sizes match Poincare series; Thom shift",
            run: dimensions,
        },
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn adem_oracle() -> Check {
    let oracle = SplittingOracle::new(12);
    let inputs = oracle.sorted_monomials(12);
    let mut pairs = 0;
    for b in 1..=24u32 {
        for a in 1..(2 * b).min(25 - b) {
            let word = SqWord::new([a, b]);
            let reduced = adem_reduce(&word).map_err(|e| e.to_string())?;
            for p in &inputs {
                let lhs = oracle.apply_word(&word, p).map_err(|e| e.to_string())?;
                let rhs = oracle
                    .apply_element(&reduced, p)
                    .map_err(|e| e.to_string())?;
                ensure(lhs == rhs, || {
                    format!("Sq{a}Sq{b} differs from {reduced} on {p}")
                })?;
            }
            pairs += 1;
        }
    }
    Ok(format!(
        "{pairs} relations on {} monomials in 12 variables",
        inputs.len()
    ))
}

pub fn relations() -> Check {
    let mut words = 0;
    for dim in 0..=16u32 {
        for w in all_words(dim) {
            let r = adem_reduce(&w).map_err(|e| e.to_string())?;
            for t in r.terms() {
                ensure(t.is_admissible(), || format!("{w} produced {t}"))?;
                let again = adem_reduce(t).map_err(|e| e.to_string())?;
                ensure(again == SteenrodElement::from_words([t]).unwrap(), || {
                    format!("{t} not fixed")
                })?;
            }
            words += 1;
        }
    }
    ensure(adem_reduce(&SqWord::new([1, 1])).unwrap().is_zero(), || {
        "Sq1Sq1 != 0".into()
    })?;
    for m in 0..=10u32 {
        let even = adem_reduce(&SqWord::new([1, 2 * m])).unwrap();
        ensure(
            even == SteenrodElement::from_words([&SqWord::single(2 * m + 1)]).unwrap(),
            || format!("Sq1Sq{} = {even}", 2 * m),
        )?;
        let odd = adem_reduce(&SqWord::new([1, 2 * m + 1])).unwrap();
        ensure(odd.is_zero(), || format!("Sq1Sq{} = {odd}", 2 * m + 1))?;
    }
    Ok(format!("{words} words of dimension <= 16 reduce to fixed admissible sums; Sq1 relations for m <= 10"))
}

/// Every word (entries >= 1) of the given dimension.
fn all_words(dim: u32) -> Vec<SqWord> {
    fn go(left: u32, cur: &mut Vec<u32>, out: &mut Vec<SqWord>) {
        if left == 0 {
            out.push(SqWord::new(cur.iter().copied()));
            return;
        }
        for i in 1..=left {
            cur.push(i);
            go(left - i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(dim, &mut Vec::new(), &mut out);
    out
}

pub fn wu_oracle() -> Check {
    let mut cases = 0;
    for k in 1..=6u32 {
        for j in 1..=16u32 {
            for i in 0..=16 - j {
                let formula = wu_sq(i, j, k);
                let oracle = SplittingOracle::wu_query(i, j as usize, k as usize)
                    .map_err(|e| e.to_string())?;
                ensure(oracle == formula, || format!("Sq{i}(w{j}) in BO({k})"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases with i + j <= 16, k <= 6"))
}

pub fn mo_vanishing() -> Check {
    let mut checked = Vec::new();
    for k in 2..=6 {
        let report = mo_vanishing_check(k, 25).map_err(|e| e.to_string())?;
        let expected = excess_exactly(k, 24 - k).len();
        ensure(report.entries.len() == expected && expected > 0, || {
            format!(
                "k={k}: {} entries, expected {expected}",
                report.entries.len()
            )
        })?;
        if let Some(bad) = report.entries.iter().find(|e| !e.passed) {
            return Err(format!("k={k}: {} failed", bad.word));
        }
        checked.push(format!("k={k}: {}", report.entries.len()));
    }
    Ok(format!(
        "classes checked with |I| + k <= 24 ({})",
        checked.join(", ")
    ))
}

pub fn em_squares() -> Check {
    let mut count = 0;
    for k in [2u32, 3] {
        let em = EilenbergMacLane::new(k, 24).map_err(|e| e.to_string())?;
        let alg = em.algebra();
        for word in excess_exactly(k, 24 - k) {
            let tail = em
                .evaluate_admissible(&word.tail())
                .map_err(|e| e.to_string())?;
            let square = alg.square(&tail);
            let stepwise = em.apply_word(&word);
            let read_off = em.evaluate_admissible(&word).map_err(|e| e.to_string())?;
            ensure(
                stepwise == square && read_off == square && !square.is_zero(),
                || format!("k={k}: {word} gives {}", alg.format_element(&stepwise)),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} excess-k words through degree 24"))
}

pub fn browder_match() -> Check {
    let mut summary = Vec::new();
    for k in 1..=3u32 {
        let page = e2_dimensions(&em_algebra(k, 13).map_err(|e| e.to_string())?, 12)
            .map_err(|e| e.to_string())?;
        let got: Vec<u64> = page.dimensions().iter().map(|&d| d as u64).collect();
        let predicted = browder_prediction(k, 12).series.to_u64().unwrap();
        ensure(got == predicted, || {
            format!("k={k}: computed {got:?}, predicted {predicted:?}")
        })?;
        summary.push(format!("k={k} {got:?}"));
    }
    let k1 = e2_dimensions(&em_algebra(1, 13).unwrap(), 12).unwrap();
    ensure(k1.dimensions()[1..].iter().all(|&d| d == 0), || {
        "K(Z/2,1) has positive-degree E2".into()
    })?;
    let q2 = qualifying_generators(2, 6);
    let degrees: Vec<u32> = q2
        .iter()
        .flat_map(|g| [2 * g.degree(), 2 * g.degree() + 1])
        .collect();
    ensure(degrees == [4, 5], || {
        format!("K(Z/2,2) page generators in degrees {degrees:?}")
    })?;
    Ok(summary.join("; "))
}

fn cli(args: &[&str]) -> (Status, Value, String) {
    let mut argv = vec!["obstrukt"];
    argv.extend_from_slice(args);
    let human = run_command_with(argv.iter().copied(), None).rendered;
    argv.push("--json");
    let report = run_command_with(argv, None);
    let value = serde_json::from_str(&report.rendered).unwrap_or(Value::Null);
    (report.status, value, human)
}

pub fn certificates() -> Check {
    let c2 = beta_certificate(2, &SqWord::identity(), 6).map_err(|e| e.to_string())?;
    ensure(
        c2.class_pretty == "ι₂²"
            && (c2.class_degree, c2.obstruction_degree, c2.ambient_bound) == (4, 5, 11),
        || format!("k=2 certificate {c2:?}"),
    )?;
    let c3 = beta_certificate(3, &SqWord::new([2, 1]), 14).map_err(|e| e.to_string())?;
    ensure(
        c3.head_word == SqWord::new([6, 2, 1])
            && (c3.class_degree, c3.obstruction_degree, c3.ambient_bound) == (12, 13, 27),
        || format!("k=3 certificate {c3:?}"),
    )?;

    let (s, v, human) = cli(&["certify", "--k", "2", "--tail", ""]);
    ensure(s == Status::Ok && human.contains("ι₂²"), || {
        format!("certify k=2: {human}")
    })?;
    ensure(
        v["payload"]["obstruction_degree"] == 5 && v["payload"]["ambient_bound"] == 11,
        || "k=2 JSON".into(),
    )?;
    let (s, v, human) = cli(&["certify", "--k", "3", "--tail", "Sq[2,1]"]);
    ensure(
        s == Status::Ok && human.contains("Sq⁶Sq²Sq¹(ι₃)") && human.contains("degree 12"),
        || format!("certify k=3: {human}"),
    )?;
    ensure(
        v["payload"]["class_degree"] == 12
            && v["payload"]["obstruction_degree"] == 13
            && v["payload"]["ambient_bound"] == 27,
        || "k=3 JSON".into(),
    )?;
    let (s, v, _) = cli(&["certify", "--k", "3", "--tail", "Sq[1]"]);
    ensure(s == Status::Rejected && v["payload"].is_null(), || {
        "J = (1) was not rejected".into()
    })?;
    Ok("ι₂² in degree 4, β in degree 5, 11-manifold; Sq⁶Sq²Sq¹ι₃ in degree 12, β in degree 13, 27-manifold; Sq[1] rejected".into())
}

/// Locked after the first computation.
pub const MO_CROSSINGS: [(u32, u32); 2] = [(2, 14), (3, 21)];

pub fn mo_growth() -> Check {
    let mut out = Vec::new();
    for (k, locked) in MO_CROSSINGS {
        let em = em_series(k, 60);
        let mo = mo_series(k, 60);
        let literal = crossing_degree(&em, &mo).unwrap();
        let n = crossing_degree(&em.reduced(), &mo)
            .unwrap()
            .ok_or_else(|| format!("k={k}: no crossing through 60"))?;
        ensure(n == locked, || {
            format!("k={k}: crossing {n}, locked value {locked}")
        })?;
        ensure(
            (n..=60).all(|d| em.coefficient(d) > mo.coefficient(d)),
            || format!("k={k}: not larger from {n} on"),
        )?;
        out.push(format!(
            "k={k}: N={n} ({} > {})",
            em.coefficient(n),
            mo.coefficient(n)
        ));
        ensure(literal == Some(0), || {
            "unreduced comparison should cross at the unit".into()
        })?;
    }
    Ok(format!(
        "{} (reduced series; the unreduced comparison crosses trivially at 0)",
        out.join(", ")
    ))
}

/// Where the crossing actually happens, computed at a larger truncation.
pub const FG_CROSSING: u32 = 935;

pub fn fg_growth() -> Check {
    let degrees = [1, 2, 3, 4, 5];
    let at80 = fg_bound_crossing(2, &degrees, 80).map_err(|e| e.to_string())?;
    let far = fg_bound_crossing(2, &degrees, 1000).map_err(|e| e.to_string())?;
    if far != Some(FG_CROSSING) {
        return Err(format!(
            "crossing at D = 1000 is {far:?}, expected {FG_CROSSING}"
        ));
    }
    match at80 {
        Some(n) => Ok(format!("N = {n}")),
        None => {
            let em = em_series(2, 80);
            let bound = poly_series(&degrees, 80).unwrap();
            Err(format!(
                "no crossing through 80 (degree 80: {} vs {}); the first crossing is at N = {FG_CROSSING}",
                em.coefficient(80),
                bound.coefficient(80)
            ))
        }
    }
}

pub fn dimensions() -> Check {
    let d = 24;
    let mut models = 0;
    for k in 1..=6u32 {
        let alg = em_algebra(k, d).map_err(|e| e.to_string())?;
        let series = em_series(k, d).to_u64().unwrap();
        for n in 0..=d {
            let size = alg.monomial_basis(n).map_err(|e| e.to_string())?.len() as u64;
            ensure(size == series[n as usize], || {
                format!("K(Z/2,{k}) degree {n}: {size} vs {}", series[n as usize])
            })?;
        }
        let bo = bo_algebra(k, d).map_err(|e| e.to_string())?;
        let bo_series = poly_series(&(1..=k).collect::<Vec<_>>(), d)
            .unwrap()
            .to_u64()
            .unwrap();
        let thom = ThomModule::new(k, d).map_err(|e| e.to_string())?;
        let mo = mo_series(k, d).to_u64().unwrap();
        for n in 0..=d {
            let size = bo.monomial_basis(n).map_err(|e| e.to_string())?.len() as u64;
            ensure(size == bo_series[n as usize], || {
                format!("BO({k}) degree {n}")
            })?;
            let thom_dim = thom.dimension(n).map_err(|e| e.to_string())? as u64;
            ensure(thom_dim == mo[n as usize], || format!("MO({k}) degree {n}"))?;
            let shifted = if n < k {
                0
            } else {
                bo.monomial_basis(n - k).unwrap().len() as u64
            };
            ensure(thom_dim == shifted, || {
                format!("Thom shift fails for k={k} in degree {n}")
            })?;
        }
        models += 3;
    }
    Ok(format!("{models} models through degree {d}"))
}
