//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use incsieve::analysis::{
    bijection_obstruction_report, build_explicit_bijection, csp1_instance, csp2_instance, csp3_instance,
    main_theorem_instance, rectangle_csp_instance, verify_bijection, verify_decomposition, verify_equivariance,
    verify_identity, verify_promotion_order, verify_toggle_dynamics, CspInstance, VerificationReport,
};
use incsieve::combinatorics::{IncreasingTableau, Partition};
use incsieve::dynamics::{exceptional_orbit, k_promote, minimal_tableau, theta};
use incsieve::enumeration::{enumerate_increasing, enumerate_syt, DEFAULT_BUDGET};
use incsieve::qseries::{b_statistic, cyclotomic, q_hook_polynomial, IntPolynomial};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

const RECTANGLES: [(u32, u32); 5] = [(2, 2), (2, 3), (3, 3), (3, 4), (4, 4)];
const TOLERANCE: f64 = 1e-6;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn passed(r: &VerificationReport) -> Result<(), String> {
    ensure(r.passed(), || format!("{} failed: {}", r.claim, r.to_json()))
}

fn tab(bound: u32, rows: Vec<Vec<u32>>) -> IncreasingTableau {
    IncreasingTableau::from_rows(bound, rows).unwrap()
}

fn rect_ground(a: u32, b: u32) -> Vec<IncreasingTableau> {
    enumerate_increasing(&Partition::rectangle(a, b), a + b, false).collect()
}

fn packed_ground(k: u32) -> Vec<IncreasingTableau> {
    enumerate_increasing(&Partition::rectangle(3, k), 3 + k, true).collect()
}

fn c1() -> Outcome {
    let t = tab(7, vec![vec![1, 3, 4], vec![2, 4, 6], vec![4]]);
    let got = k_promote(&t);
    ensure(got.rows() == [vec![1, 2, 3], vec![3, 5, 7], vec![7]], || {
        format!("got {got}")
    })?;
    Ok(format!("{t} -> {got}"))
}

fn c2() -> Outcome {
    let a = enumerate_increasing(&Partition::rectangle(4, 4), 8, true).count();
    let b = enumerate_increasing(&Partition::rectangle(3, 7), 11, true).count();
    ensure(a == 62 && b == 3685, || format!("4x4: {a}, 3x7: {b}"))?;
    Ok(format!("4x4 m=8: {a}, 3x7 m=11: {b}"))
}

fn c3(instances: &mut Vec<CspInstance>) -> Outcome {
    let mut sizes = Vec::new();
    for k in 2..=10u32 {
        let (report, inst) = main_theorem_instance(k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        passed(&report)?;
        ensure(inst.order == (k + 3) as usize, || {
            format!("k={k}: order {}", inst.order)
        })?;
        sizes.push(inst.orbit_lengths.iter().sum::<usize>());
        instances.push(inst);
    }
    ensure(sizes[8] == 273, || format!("k=10 has {} elements", sizes[8]))?;
    Ok(format!("k=2..10, ground sizes {sizes:?}"))
}

/// |λ|! / ∏ hooks computed by corner removal, independent of the hook formula.
fn count_syt(parts: &mut Vec<u32>, memo: &mut BTreeMap<Vec<u32>, u64>) -> u64 {
    if parts.iter().all(|&p| p == 0) {
        return 1;
    }
    if let Some(&v) = memo.get(parts.as_slice()) {
        return v;
    }
    let key = parts.clone();
    let mut total = 0;
    for i in 0..parts.len() {
        let below = parts.get(i + 1).copied().unwrap_or(0);
        if parts[i] > below {
            parts[i] -= 1;
            total += count_syt(parts, memo);
            parts[i] += 1;
        }
    }
    memo.insert(key, total);
    total
}

/// Row-major backtracking with only the local increasing check.
fn count_packed_naive(rows: usize, cols: usize, m: u32) -> u64 {
    fn go(grid: &mut Vec<Vec<u32>>, pos: usize, cols: usize, m: u32, used: &mut [u32]) -> u64 {
        let rows = grid.len();
        if pos == rows * cols {
            return used[1..=m as usize].iter().all(|&c| c > 0) as u64;
        }
        let (r, c) = (pos / cols, pos % cols);
        let mut total = 0;
        for v in 1..=m {
            if (c > 0 && grid[r][c - 1] >= v) || (r > 0 && grid[r - 1][c] >= v) {
                continue;
            }
            grid[r][c] = v;
            used[v as usize] += 1;
            total += go(grid, pos + 1, cols, m, used);
            used[v as usize] -= 1;
        }
        total
    }
    let mut grid = vec![vec![0; cols]; rows];
    go(&mut grid, 0, cols, m, &mut vec![0; m as usize + 1])
}

fn c4() -> Outcome {
    let mut pairs = Vec::new();
    for k in 2..=8u32 {
        let inc = count_packed_naive(3, k as usize, 3 + k);
        let mut parts = vec![2, 2, 2];
        parts.extend(std::iter::repeat_n(1, k as usize - 2));
        let syt = count_syt(&mut parts, &mut BTreeMap::new());
        let lib_inc = packed_ground(k).len() as u64;
        let lib_syt = enumerate_syt(&Partition::toothbrush(k).unwrap()).count() as u64;
        ensure(inc == syt && inc == lib_inc && syt == lib_syt, || {
            format!("k={k}: naive {inc}/{syt}, library {lib_inc}/{lib_syt}")
        })?;
        pairs.push(inc);
    }
    Ok(format!("k=2..8 counts {pairs:?}"))
}

fn c5() -> Outcome {
    for (a, b) in RECTANGLES {
        passed(&verify_equivariance(a, b, DEFAULT_BUDGET).map_err(|e| e.to_string())?)?;
    }
    let four_by_five = tab(
        9,
        vec![
            vec![1, 2, 4, 5, 6],
            vec![2, 3, 5, 6, 7],
            vec![3, 5, 6, 7, 8],
            vec![5, 6, 7, 8, 9],
        ],
    );
    let j = theta(&four_by_five).map_err(|e| e.to_string())?;
    ensure(j.profile() == [5, 4, 3, 3], || format!("profile {:?}", j.profile()))?;
    Ok("zero violations on 5 rectangles; 4x5 example -> (5,4,3,3)".into())
}

fn c6(instances: &mut Vec<CspInstance>) -> Outcome {
    for (a, b) in RECTANGLES {
        let (report, inst) = rectangle_csp_instance(a, b, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        passed(&report)?;
        instances.push(inst);
    }
    Ok("rectangle CSP exact on 5 rectangles".into())
}

fn c7() -> Outcome {
    for (a, b) in RECTANGLES {
        let r = verify_decomposition(a, b, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        passed(&r)?;
        ensure(r.statistics["exceptional"] == json!(a + b), || {
            format!("{a}x{b}: {}", r.statistics["exceptional"])
        })?;
    }
    let expected: Vec<Vec<Vec<u32>>> = vec![
        vec![vec![1, 2, 3, 4], vec![2, 3, 4, 5], vec![3, 4, 5, 6]],
        vec![vec![1, 2, 3, 4], vec![2, 3, 4, 5], vec![3, 4, 5, 7]],
        vec![vec![1, 2, 3, 4], vec![2, 3, 4, 6], vec![3, 4, 6, 7]],
        vec![vec![1, 2, 3, 5], vec![2, 3, 5, 6], vec![3, 5, 6, 7]],
        vec![vec![1, 2, 4, 5], vec![2, 4, 5, 6], vec![4, 5, 6, 7]],
        vec![vec![1, 3, 4, 5], vec![3, 4, 5, 6], vec![4, 5, 6, 7]],
        vec![vec![2, 3, 4, 5], vec![3, 4, 5, 6], vec![4, 5, 6, 7]],
    ];
    let orbit = exceptional_orbit(3, 4).map_err(|e| e.to_string())?;
    let got: Vec<_> = orbit.tableaux.iter().map(|t| t.rows().to_vec()).collect();
    ensure(got == expected, || format!("orbit {got:?}"))?;
    ensure(orbit.tableaux[0] == minimal_tableau(3, 4), || {
        "orbit does not start at the minimal tableau".into()
    })?;
    for i in 0..7 {
        let next = k_promote(&orbit.tableaux[i]);
        ensure(next == orbit.tableaux[(i + 1) % 7], || {
            format!("step {i} leaves the cyclic order")
        })?;
    }
    Ok("|E| = a+b on 5 rectangles; 3x4 exceptional orbit in cyclic order".into())
}

fn c8() -> Outcome {
    let r = verify_identity(50).map_err(|e| e.to_string())?;
    passed(&r)?;
    Ok("k=2..50 exact".into())
}

fn c9() -> Outcome {
    for (a, b) in RECTANGLES {
        passed(&verify_promotion_order(
            "rectangle_order",
            &rect_ground(a, b),
            (a + b) as usize,
        ))?;
    }
    for k in 2..=8u32 {
        passed(&verify_promotion_order(
            "packed_order",
            &packed_ground(k),
            (3 + k) as usize,
        ))?;
    }
    Ok("promotion^(a+b) = id on 5 rectangles; promotion^(3+k) = id on packed 3xk, k=2..8".into())
}

fn c10() -> Outcome {
    let mut sets: Vec<(String, Vec<IncreasingTableau>)> = Vec::new();
    for (a, b) in RECTANGLES {
        sets.push((format!("Inc^{}({a}x{b})", a + b), rect_ground(a, b)));
    }
    for k in 2..=8u32 {
        sets.push((format!("packed 3x{k}"), packed_ground(k)));
    }
    sets.push((
        "Inc^5(3x2)".into(),
        enumerate_increasing(&Partition::rectangle(3, 2), 5, false).collect(),
    ));
    sets.push((
        "Inc^7(3x4)".into(),
        enumerate_increasing(&Partition::rectangle(3, 4), 7, false).collect(),
    ));
    for (name, ground) in &sets {
        let r = verify_toggle_dynamics(name, ground);
        ensure(r.passed(), || format!("{name}: {}", r.to_json()))?;
    }
    Ok(format!(
        "{} sets, toggles = slides, evacuation involutive and conjugating",
        sets.len()
    ))
}

fn maj_baseline(k: u32) -> (serde_json::Value, serde_json::Value, usize, usize) {
    match k {
        2 => (
            json!({"6": 1, "7": 1, "8": 1, "9": 1, "10": 1}),
            json!({"6": 1, "8": 1, "9": 1, "10": 1, "12": 1}),
            1,
            3,
        ),
        3 => (
            json!({"10": 2, "11": 2, "12": 2, "13": 2, "14": 2, "15": 4}),
            json!({"9": 1, "10": 1, "11": 1, "12": 2, "13": 2, "14": 2, "15": 2, "16": 1, "17": 1, "18": 1}),
            0,
            0,
        ),
        4 => (
            json!({"15": 3, "16": 3, "17": 3, "18": 3, "19": 3, "20": 3, "21": 10}),
            json!({"13": 1, "14": 1, "15": 2, "16": 2, "17": 3, "18": 3, "19": 4, "20": 3, "21": 3,
                   "22": 2, "23": 2, "24": 1, "25": 1}),
            2,
            4,
        ),
        _ => unreachable!(),
    }
}

fn c11() -> Outcome {
    for k in 2..=6u32 {
        passed(&verify_bijection(k, DEFAULT_BUDGET).map_err(|e| e.to_string())?)?;
        let table = build_explicit_bijection(k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(table.patch.len() == (k + 3) as usize, || {
            format!("k={k}: patch {}", table.patch.len())
        })?;
    }
    let mut problems = Vec::new();
    for k in 2..=4u32 {
        let r = bijection_obstruction_report(k, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        let (inc_maj, syt_maj, inc_fix, syt_fix) = maj_baseline(k);
        let s = &r.statistics;
        ensure(
            s["maj_multiset_packed"] == inc_maj && s["maj_multiset_toothbrush"] == syt_maj,
            || format!("k={k}: maj multisets drifted from baseline: {}", r.to_json()),
        )?;
        ensure(
            s["evacuation_fixed_points_packed"] == json!(inc_fix)
                && s["evacuation_fixed_points_toothbrush"] == json!(syt_fix),
            || format!("k={k}: evacuation fixed points drifted from baseline: {}", r.to_json()),
        )?;
        if s["maj_obstructed"] != json!(true) {
            problems.push(format!("k={k}: maj multisets coincide"));
        }
        if s["evacuation_obstructed"] != json!(true) {
            problems.push(format!(
                "k={k}: evacuation fixed points coincide ({inc_fix} packed vs {syt_fix} standard)"
            ));
        }
    }
    ensure(problems.is_empty(), || {
        format!(
            "bijections k=2..6 ok, baselines match, but obstruction absent: {}",
            problems.join("; ")
        )
    })?;
    Ok("bijections k=2..6 with patch k+3; maj and evacuation obstructions k=2..4".into())
}

fn c12(instances: &mut Vec<CspInstance>) -> Outcome {
    let mut rects = Vec::new();
    for a in 1..=9u32 {
        for b in 1..=9 / a {
            let (r, inst) = csp1_instance(a, b, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            passed(&r)?;
            instances.push(inst);
            rects.push(format!("{a}x{b}"));
        }
    }
    for (k, m) in [(3, 5), (4, 6), (4, 7)] {
        let (r, inst) = csp2_instance(k, m, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        passed(&r)?;
        instances.push(inst);
    }
    let (r, inst) = csp3_instance(3, 2, 5, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    passed(&r)?;
    instances.push(inst);
    Ok(format!(
        "rectangles: {} shapes, pennants: 3 cases, hook products: (3,2,5)",
        rects.len()
    ))
}

/// f evaluated at e^{2πij/n} against the fixed-point count of c^j.
fn float_oracle(inst: &CspInstance) -> bool {
    let n = inst.order;
    (0..n).all(|j| {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (e, c) in inst.polynomial.coeffs().iter().enumerate() {
            let c = c.to_f64().unwrap();
            re += c * (theta * e as f64).cos();
            im += c * (theta * e as f64).sin();
        }
        let fixed: usize = inst.orbit_lengths.iter().filter(|&&l| j % l == 0).sum();
        (re - fixed as f64).abs() < TOLERANCE && im.abs() < TOLERANCE
    })
}

fn lower_row_maj(t: &IncreasingTableau) -> u32 {
    let row_of = |v: u32| t.rows().iter().position(|r| r.contains(&v)).unwrap();
    (1..t.shape().size()).filter(|&i| row_of(i + 1) > row_of(i)).sum()
}

fn c13(instances: &[CspInstance]) -> Outcome {
    let mut shapes = 0;
    for n in 0..=8 {
        for shape in Partition::all_of_size(n) {
            let mut coeffs: Vec<i64> = Vec::new();
            for t in enumerate_syt(&shape) {
                let d = lower_row_maj(&t) as usize;
                if coeffs.len() <= d {
                    coeffs.resize(d + 1, 0);
                }
                coeffs[d] += 1;
            }
            let expected = q_hook_polynomial(&shape).unwrap().shift(b_statistic(&shape) as usize);
            ensure(IntPolynomial::from_i64s(&coeffs) == expected, || {
                format!("maj mismatch on {shape}")
            })?;
            shapes += 1;
        }
    }
    for n in 1..=60usize {
        let prod = (1..=n)
            .filter(|d| n % d == 0)
            .fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic(d).unwrap());
        let target = &IntPolynomial::monomial(BigInt::from(1), n) - &IntPolynomial::one();
        ensure(prod == target, || format!("cyclotomic product fails at n={n}"))?;
    }
    ensure(!instances.is_empty(), || "no CSP verdicts collected".into())?;
    for inst in instances {
        ensure(float_oracle(inst) == inst.verdict.holds, || {
            format!(
                "float oracle disagrees at order {} with lengths {:?}",
                inst.order, inst.orbit_lengths
            )
        })?;
    }
    Ok(format!(
        "maj/q-hook on {shapes} shapes, cyclotomic n<=60, float oracle agrees on {} verdicts",
        instances.len()
    ))
}

fn run(n: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default())
    });
    match outcome {
        Ok(detail) => {
            println!("[PASS] {n:>2} {name}: {detail}");
            true
        }
        Err(detail) => {
            println!("[FAIL] {n:>2} {name}: {detail}");
            false
        }
    }
}

fn main() {
    let mut instances = Vec::new();
    let results = [
        run(1, "promotion example", c1),
        run(2, "packed counts", c2),
        run(3, "main theorem", || c3(&mut instances)),
        run(4, "packed vs toothbrush counts", c4),
        run(5, "rowmotion equivariance", c5),
        run(6, "rectangle CSP", || c6(&mut instances)),
        run(7, "rectangle decomposition", c7),
        run(8, "polynomial identity", c8),
        run(9, "promotion order", c9),
        run(10, "toggles and evacuation", c10),
        run(11, "explicit bijection and obstructions", c11),
        run(12, "standard tableau CSP regressions", || c12(&mut instances)),
        run(13, "property suites", || c13(&instances)),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
