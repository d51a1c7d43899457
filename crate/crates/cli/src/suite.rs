//! The verification suite: eleven numbered criteria, each an exact sweep
//! (zero tolerance) comparing closed forms, proof-step properties, or
//! predictors against the determinant oracle. `Full` runs the committed
//! ranges; `Fast` runs the same checks on reduced ranges for a quick local
//! signal.
//!
//! Criterion 4 is knowingly red: its hypothesis set admits p = 3, where the
//! determinant symbol is -1 while the closed form gives (-2|3) = +1 (the
//! cell (1, 16) has b^2 - 4c = -63 and 3 | 63, which the underlying c = 1
//! reduction cannot tolerate). The sweep is kept as stated rather than
//! patched; see the README notes and the predictor's corrected hypothesis.

use dpsym_core::arith::{
    legendre, mul_mod, odd_primes_in, reduce_int, sub_mod, LegendreSymbol, Prime,
};
use dpsym_core::detcore::{dp_det, dp_symbol};
use dpsym_core::lucas::{check_identity_116, lucas_uv, LucasParams};
use dpsym_core::predict::{predict_cor21, predict_cor22, predict_cor23, predict_shewu, Predicted};
use dpsym_core::quadring::{has_minus_one_power, mult_order, theta_of, verify_power_congruence};
use dpsym_core::trinom::{calibrate, Convention};
use rayon::prelude::*;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Fast,
    Full,
}

impl Tier {
    pub fn parse(s: &str) -> Option<Tier> {
        match s {
            "fast" => Some(Tier::Fast),
            "full" => Some(Tier::Full),
            _ => None,
        }
    }

    fn pick(self, fast: u64, full: u64) -> u64 {
        match self {
            Tier::Fast => fast,
            Tier::Full => full,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// One status line, plus indented notes and truncated failure detail.
    pub fn render(&self, total: usize) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut out = format!(
            "[{:>2}/{total}] {status}  {} ({} cases",
            self.id, self.name, self.cases
        );
        if self.failures.is_empty() {
            out.push(')');
        } else {
            out.push_str(&format!(", {} failures)", self.failures.len()));
        }
        for note in &self.notes {
            out.push_str(&format!("\n        note: {note}"));
        }
        for f in self.failures.iter().take(5) {
            out.push_str(&format!("\n        {f}"));
        }
        if self.failures.len() > 5 {
            out.push_str(&format!(
                "\n        ... and {} more",
                self.failures.len() - 5
            ));
        }
        out
    }
}

pub const CRITERIA: usize = 11;

pub fn run_all(tier: Tier) -> Vec<CriterionReport> {
    (1..=CRITERIA).map(|id| run_one(id, tier)).collect()
}

pub fn run_one(id: usize, tier: Tier) -> CriterionReport {
    match id {
        1 => sweep_thm12(tier),
        2 => sweep_shewu(tier),
        3 => sweep_cor11(tier),
        4 => sweep_thm13(tier),
        5 => sweep_corollaries(tier),
        6 => sweep_identities(tier),
        7 => power_congruence_random(tier),
        8 => proof_step_properties(tier),
        9 => lucas_doubling_random(tier),
        10 => lemma11_calibration(tier),
        11 => wsn_anchor(tier),
        _ => panic!("criterion ids run 1..={CRITERIA}"),
    }
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

/// 1: p = 1 (mod 4), (b^2-4 | p) = -1 => symbol at (b, 1) is (2b|p).
fn sweep_thm12(tier: Tier) -> CriterionReport {
    let pmax = tier.pick(60, 200);
    let cells: Vec<(Prime, i64)> = odd_primes_in(3, pmax)
        .into_iter()
        .filter(|p| p.value() % 4 == 1)
        .flat_map(|p| (0..p.value() as i64).map(move |b| (p, b)))
        .filter(|&(p, b)| legendre(b * b - 4, p) == LegendreSymbol::MinusOne)
        .collect();
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(p, b)| {
            let got = dp_symbol(b, 1, p);
            let want = legendre(2 * b, p);
            (got != want).then(|| format!("p={p} b={b}: symbol {got}, (2b|p) = {want}"))
        })
        .collect();
    CriterionReport {
        id: 1,
        name: format!("closed form at c=1, inert discriminant, p=1 mod 4 (p <= {pmax})"),
        cases: cells.len(),
        failures: sorted(failures),
        notes: vec![],
    }
}

/// 2: the scan-based c = 1 predictor equals the oracle for every b with
/// p not dividing b^2 - 4.
fn sweep_shewu(tier: Tier) -> CriterionReport {
    let pmax = tier.pick(60, 150);
    let cells: Vec<(Prime, i64)> = odd_primes_in(3, pmax)
        .into_iter()
        .flat_map(|p| (0..p.value() as i64).map(move |b| (p, b)))
        .filter(|&(p, b)| legendre(b * b - 4, p) != LegendreSymbol::Zero)
        .collect();
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(p, b)| {
            let predicted = predict_shewu(b, p).symbol().expect("admissible b");
            let oracle = dp_symbol(b, 1, p);
            (predicted != oracle)
                .then(|| format!("p={p} b={b}: predicted {predicted}, oracle {oracle}"))
        })
        .collect();
    CriterionReport {
        id: 2,
        name: format!("zero-scan predictor vs oracle at c=1 (p <= {pmax})"),
        cases: cells.len(),
        failures: sorted(failures),
        notes: vec![],
    }
}

/// 3: p = 1 (mod 4), (b^2+4 | p) = -1 => symbol at (b, -1) is (b|p).
fn sweep_cor11(tier: Tier) -> CriterionReport {
    let pmax = tier.pick(60, 200);
    let cells: Vec<(Prime, i64)> = odd_primes_in(3, pmax)
        .into_iter()
        .filter(|p| p.value() % 4 == 1)
        .flat_map(|p| (0..p.value() as i64).map(move |b| (p, b)))
        .filter(|&(p, b)| legendre(b * b + 4, p) == LegendreSymbol::MinusOne)
        .collect();
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&(p, b)| {
            let got = dp_symbol(b, p.value() as i64 - 1, p);
            let want = legendre(b, p);
            (got != want).then(|| format!("p={p} b={b}: symbol {got}, (b|p) = {want}"))
        })
        .collect();
    CriterionReport {
        id: 3,
        name: format!("closed form at c=-1, p=1 mod 4 (p <= {pmax})"),
        cases: cells.len(),
        failures: sorted(failures),
        notes: vec![],
    }
}

/// 4: (p|7) = -1, p != 15 (mod 16) => symbol at (1, 16) is (-2|p). Run
/// exactly as stated; the hypothesis set admits p = 3, where the identity
/// is false, so this criterion is expected to fail at that single prime.
fn sweep_thm13(tier: Tier) -> CriterionReport {
    let pmax = tier.pick(100, 300);
    let seven = Prime::new(7).unwrap();
    let cells: Vec<Prime> = odd_primes_in(3, pmax)
        .into_iter()
        .filter(|p| {
            legendre(p.value() as i64, seven) == LegendreSymbol::MinusOne && p.value() % 16 != 15
        })
        .collect();
    let failures: Vec<String> = cells
        .par_iter()
        .filter_map(|&p| {
            let got = dp_symbol(1, 16, p);
            let want = legendre(-2, p);
            (got != want).then(|| format!("p={p}: symbol {got}, (-2|p) = {want}"))
        })
        .collect();
    CriterionReport {
        id: 4,
        name: format!("closed form at (1,16) under (p|7)=-1, p!=15 mod 16 (p <= {pmax})"),
        cases: cells.len(),
        failures: sorted(failures),
        notes: vec![
            "the stated hypotheses admit p=3, where 3 | b^2-4c = -63 degenerates the cell \
             and the identity is false (symbol -1 vs (-2|3) = 1); the sweep is kept as stated"
                .to_string(),
        ],
    }
}

/// 5: the three fixed-cell corollary predictors against the oracle, in
/// their congruence classes; value-set rows use set membership.
fn sweep_corollaries(tier: Tier) -> CriterionReport {
    let pmax = tier.pick(100, 300);
    let primes = odd_primes_in(3, pmax);
    let failures: Vec<String> = primes
        .par_iter()
        .flat_map_iter(|&p| {
            let mut local = Vec::new();
            if let Some(s) = predict_cor21(p).symbol() {
                let oracle = dp_symbol(1, -1, p);
                if s != oracle {
                    local.push(format!("cor21 p={p}: predicted {s}, oracle {oracle}"));
                }
            }
            match predict_cor22(p).value {
                Predicted::Value(s) => {
                    let oracle = dp_symbol(2, -1, p);
                    if s != oracle {
                        local.push(format!("cor22 p={p}: predicted {s}, oracle {oracle}"));
                    }
                }
                Predicted::OneOf(set) => {
                    let oracle = dp_symbol(2, -1, p);
                    if !set.contains(&oracle) {
                        local.push(format!("cor22 p={p}: oracle {oracle} outside {{0, 1}}"));
                    }
                }
                Predicted::NotApplicable { .. } => {}
            }
            if let Some(s) = predict_cor23(p).symbol() {
                let oracle = dp_symbol(3, 1, p);
                if s != oracle {
                    local.push(format!("cor23 p={p}: predicted {s}, oracle {oracle}"));
                }
            }
            local
        })
        .collect();
    CriterionReport {
        id: 5,
        name: format!("fixed-cell corollary predictors (p <= {pmax})"),
        cases: primes.len() * 3,
        failures: sorted(failures),
        notes: vec![],
    }
}

/// 6: the mirror identity at the residue level on the full (b, c) grid, and
/// the square-scaling identity, per prime.
fn sweep_identities(tier: Tier) -> CriterionReport {
    let pmax = tier.pick(30, 60);
    let mut failures = Vec::new();
    let mut cases = 0usize;
    for p in odd_primes_in(3, pmax) {
        let pv = p.value();
        let n = pv as usize;
        // det residue grid: index b * p + c over [0,p) x [0,p)
        let grid: Vec<u64> = (0..n * n)
            .into_par_iter()
            .map(|i| {
                let b = (i / n) as i64;
                let c = (i % n) as i64;
                dp_det(b, c, p).value()
            })
            .collect();
        let minus = legendre(-1, p);
        for b in 0..pv {
            for c in 0..pv {
                cases += 1;
                let lhs = grid[(((pv - b) % pv) * pv + c) as usize];
                let rhs = grid[(b * pv + c) as usize];
                let mirrored = match minus {
                    LegendreSymbol::One => rhs,
                    _ => sub_mod(0, rhs, pv),
                };
                if lhs != mirrored {
                    failures.push(format!(
                        "mirror p={pv} b={b} c={c}: det(-b,c) = {lhs}, (-1|p)*det(b,c) = {mirrored}"
                    ));
                }
            }
        }
        let symbol_of = |b: u64, c: u64| legendre(grid[(b * pv + c) as usize] as i64, p);
        for b in 0..pv {
            for c in 1..pv {
                cases += 1;
                let c_sq = mul_mod(c, c, pv);
                let c_inv = p.residue(c as i64).inv().unwrap().value();
                let got = symbol_of(b, c_sq);
                let want =
                    legendre(c as i64, p).pow(p.half() % 2) * symbol_of(mul_mod(b, c_inv, pv), 1);
                if got != want {
                    failures.push(format!(
                        "scaling p={pv} b={b} c={c}: symbol(b,c^2) = {got}, expected {want}"
                    ));
                }
            }
        }
    }
    CriterionReport {
        id: 6,
        name: format!("mirror and square-scaling identities on full grids (p <= {pmax})"),
        cases,
        failures: sorted(failures),
        notes: vec![],
    }
}

/// 7: the quadratic-integer power congruence on random admissible
/// parameters.
fn power_congruence_random(tier: Tier) -> CriterionReport {
    let samples = tier.pick(60, 200) as usize;
    let pmax = tier.pick(2000, 10_000);
    let primes = odd_primes_in(3, pmax);
    let mut rng = SplitMix64::new(0x00D1CE);
    let mut failures = Vec::new();
    let mut done = 0;
    while done < samples {
        let p = primes[rng.below(primes.len() as u64) as usize];
        let a = rng.int_in(-200, 200);
        let b = rng.int_in(-200, 200);
        let pv = p.value() as i64;
        if b.rem_euclid(pv) == 0 || (a * a - 4 * b).rem_euclid(pv) == 0 {
            continue;
        }
        if verify_power_congruence(a, b, p) != Ok(true) {
            failures.push(format!("A={a} B={b} p={p}: power congruence failed"));
        }
        done += 1;
    }
    CriterionReport {
        id: 7,
        name: format!("quadratic power congruence on {samples} random (A,B,p), p <= {pmax}"),
        cases: samples,
        failures: sorted(failures),
        notes: vec![],
    }
}

/// 8: proof-step properties: companion-zero equivalence, order facts for
/// p = 1 (mod 4), the (-3, 4) order facts, and the index-doubling identity.
fn proof_step_properties(tier: Tier) -> CriterionReport {
    let mut failures = Vec::new();
    let mut cases = 0usize;

    // (a) v_k(-b, 1) = 0 <=> theta^k = -1, inert discriminant
    let pmax_a = tier.pick(50, 100);
    for p in odd_primes_in(3, pmax_a) {
        let pv = p.value();
        for b in 0..pv as i64 {
            if legendre(b * b - 4, p) != LegendreSymbol::MinusOne {
                continue;
            }
            cases += 1;
            let theta = theta_of(-b, 1, p).unwrap();
            let ring = theta.ring();
            let minus_one = ring.scalar(-1);
            let mut theta_k = ring.one();
            let mut ok = true;
            for k in 0..=2 * pv {
                let v_zero = lucas_uv(LucasParams::new(-b, 1), k, p).v.is_zero();
                if v_zero != (theta_k == minus_one) {
                    ok = false;
                    break;
                }
                theta_k = theta_k * theta;
            }
            if !ok {
                failures.push(format!("equivalence p={pv} b={b}"));
            }
        }
    }

    // (b) order facts: ord(theta) | (p+1)/2, odd, no -1 power
    let pmax_b = tier.pick(60, 200);
    for p in odd_primes_in(3, pmax_b) {
        let pv = p.value();
        if pv % 4 != 1 {
            continue;
        }
        for b in 0..pv as i64 {
            if legendre(b * b - 4, p) != LegendreSymbol::MinusOne {
                continue;
            }
            cases += 1;
            let theta = theta_of(-b, 1, p).unwrap();
            let ord = mult_order(theta).unwrap();
            if pv.div_ceil(2) % ord != 0 || ord.is_multiple_of(2) {
                failures.push(format!("order p={pv} b={b}: ord = {ord}"));
            }
            if has_minus_one_power(theta) != Ok(false) {
                failures.push(format!("minus-one power p={pv} b={b}"));
            }
        }
    }

    // (c) theta(-3, 4) facts under (p|7) = -1
    let pmax_c = tier.pick(150, 500);
    let seven = Prime::new(7).unwrap();
    for p in odd_primes_in(3, pmax_c) {
        let pv = p.value();
        if legendre(pv as i64, seven) != LegendreSymbol::MinusOne {
            continue;
        }
        let theta = theta_of(-3, 4, p).unwrap();
        let ring = theta.ring();
        if pv % 16 == 7 {
            cases += 1;
            if theta.pow((pv + 1) / 4) != ring.one() {
                failures.push(format!("theta^((p+1)/4) != 1 at p={pv}"));
            }
        }
        if pv % 8 == 3 {
            cases += 1;
            let minus_one = ring.scalar(-1);
            let theta_sq = theta * theta;
            let mut acc = ring.one();
            for k in 1..=2 * pv {
                acc = acc * theta_sq;
                if acc == minus_one {
                    failures.push(format!("theta^(2k) = -1 at p={pv} k={k}"));
                    break;
                }
            }
        }
    }

    // (d) the index-doubling identity
    let kmax = tier.pick(60, 200);
    let pmax_d = tier.pick(60, 200);
    for p in odd_primes_in(3, pmax_d) {
        for k in 0..=kmax {
            cases += 1;
            if !check_identity_116(k, p) {
                failures.push(format!("index-doubling identity k={k} p={p}"));
            }
        }
    }

    CriterionReport {
        id: 8,
        name: "proof-step properties (zero equivalence, orders, index doubling)".to_string(),
        cases,
        failures: sorted(failures),
        notes: vec![],
    }
}

/// 9: fast doubling vs linear iteration on random instances, with the norm
/// relation checked on every pair.
fn lucas_doubling_random(tier: Tier) -> CriterionReport {
    let samples = tier.pick(150, 500) as usize;
    let primes = odd_primes_in(3, 10_000);
    let mut rng = SplitMix64::new(0xD0_0B71);
    let mut failures = Vec::new();
    for i in 0..samples {
        let p = primes[rng.below(primes.len() as u64) as usize];
        let params = LucasParams::new(rng.int_in(-100, 100), rng.int_in(-100, 100));
        let n = rng.below(10_001);
        let pair = lucas_uv(params, n, p);
        let (u, v) = lucas_iterative(params, n, p);
        if (pair.u.value(), pair.v.value()) != (u, v) {
            failures.push(format!(
                "sample {i}: doubling ({}, {}) vs iterative ({u}, {v}) at {params:?} n={n} p={p}",
                pair.u, pair.v
            ));
        }
        if !pair.satisfies_norm() {
            failures.push(format!(
                "sample {i}: norm relation fails at {params:?} n={n} p={p}"
            ));
        }
    }
    CriterionReport {
        id: 9,
        name: format!("fast doubling vs iteration on {samples} random instances"),
        cases: samples,
        failures: sorted(failures),
        notes: vec![],
    }
}

fn lucas_iterative(params: LucasParams, n: u64, p: Prime) -> (u64, u64) {
    let pv = p.value();
    let a = reduce_int(params.a, pv);
    let b = reduce_int(params.b, pv);
    let (mut u_prev, mut u_cur) = (0u64, 1u64);
    let (mut v_prev, mut v_cur) = (2 % pv, a);
    if n == 0 {
        return (u_prev, v_prev);
    }
    for _ in 1..n {
        let un = sub_mod(mul_mod(a, u_cur, pv), mul_mod(b, u_prev, pv), pv);
        let vn = sub_mod(mul_mod(a, v_cur, pv), mul_mod(b, v_prev, pv), pv);
        u_prev = u_cur;
        u_cur = un;
        v_prev = v_cur;
        v_cur = vn;
    }
    (u_cur, v_cur)
}

/// 10: the trinomial-convention calibration. Passes when the adopted
/// convention reproduces the oracle on every admissible cell (and the
/// rejected ascending reading still shows its (5,1,1) failure), or — had no
/// convention survived — when the committed discrepancy table matches the
/// observed mismatches.
fn lemma11_calibration(tier: Tier) -> CriterionReport {
    let pmax = tier.pick(30, 50);
    let report = calibrate(pmax);
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let cases = report.outcomes.iter().map(|o| o.cases).sum();

    // hard regression fixture
    let p5 = Prime::new(5).unwrap();
    if dp_symbol(1, 1, p5) != LegendreSymbol::MinusOne {
        failures.push("fixture violated: dp_symbol(1,1,5) != -1".to_string());
    }

    let clean = report.clean_conventions();
    if clean.contains(&Convention::adopted()) {
        notes.push(format!(
            "adopted convention '{}' matches the oracle on every admissible cell",
            Convention::adopted()
        ));
        for o in &report.outcomes {
            if o.convention != Convention::adopted() {
                notes.push(format!(
                    "rejected '{}': {} mismatches",
                    o.convention,
                    o.mismatches.len()
                ));
            }
        }
        let ascending = report.outcome(Convention::Ascending);
        if !ascending
            .mismatches
            .iter()
            .any(|m| (m.p, m.b, m.c) == (5, 1, 1))
        {
            failures.push(
                "expected the ascending reading to disagree at (p,b,c) = (5,1,1)".to_string(),
            );
        }
    } else if !clean.is_empty() {
        failures.push(format!(
            "conventions {clean:?} match the oracle but the adopted one does not"
        ));
    } else {
        // no convention survived: the discrepancy table must be committed
        let committed =
            Path::new(env!("CARGO_MANIFEST_DIR")).join("data/lemma11_discrepancies.csv");
        match std::fs::read_to_string(&committed) {
            Ok(text) if text == report.discrepancy_table() => {
                notes.push("no convention matches; committed discrepancy table is current".into());
            }
            Ok(_) => failures.push("committed discrepancy table is stale".to_string()),
            Err(_) => failures.push(format!(
                "no convention matches and no discrepancy table committed at {}",
                committed.display()
            )),
        }
    }

    CriterionReport {
        id: 10,
        name: format!("trinomial-convention calibration vs oracle (p <= {pmax})"),
        cases,
        failures: sorted(failures),
        notes,
    }
}

/// 11: p = 2 (mod 3) => the (1, 1) symbol equals (-2|p).
fn wsn_anchor(tier: Tier) -> CriterionReport {
    let pmax = tier.pick(50, 100);
    let primes: Vec<Prime> = odd_primes_in(3, pmax)
        .into_iter()
        .filter(|p| p.value() % 3 == 2)
        .collect();
    let failures: Vec<String> = primes
        .par_iter()
        .filter_map(|&p| {
            let got = dp_symbol(1, 1, p);
            let want = legendre(-2, p);
            (got != want).then(|| format!("p={p}: symbol {got}, (-2|p) = {want}"))
        })
        .collect();
    CriterionReport {
        id: 11,
        name: format!("quadratic-residue anchor at (1,1), p = 2 mod 3 (p <= {pmax})"),
        cases: primes.len(),
        failures: sorted(failures),
        notes: vec![],
    }
}

/// Deterministic PRNG so the randomized criteria reproduce exactly.
struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> SplitMix64 {
        SplitMix64(seed)
    }

    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}
