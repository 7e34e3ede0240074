//! Acceptance run: one pass/fail line per criterion.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wpi_core::exact_arith::{frac, int, Scalar};
use wpi_core::gt_module::{
    admissibility_oracle, default_budget, default_order, enumerate_basis, is_irreducible, oracle_seeds,
    probe_irreducible, verify_defining_relations, VerifyOptions,
};
use wpi_core::pyramid::Pyramid;
use wpi_core::relations::{
    all_relations, is_admissible, maximal_set, reduce, rr_remove, Relation, RelationSet,
};
use wpi_core::tableau::{Tableau, TriIndex};
use wpi_core::yangian_tensor::{
    integral_condition, is_generic, quantum_minor, singular_profile, EvaluationFactor, GlWeight, TensorKey,
    TensorModule, TensorVector,
};
use wpi_core::Error;

const C1_LIMIT: Duration = Duration::from_secs(60);
const C8_LIMIT: Duration = Duration::from_secs(120);
const C3_MAX_EDGES: u32 = 5;
const C7_SAMPLES: usize = 500;
const C5_RADIUS: i64 = 4;

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

fn t(k: usize, i: usize, j: usize) -> TriIndex {
    TriIndex::new(k, i, j)
}

fn oracle_passes(c: &RelationSet) -> bool {
    admissibility_oracle(c, &VerifyOptions::default()).is_ok_and(|v| v.passed)
}

/// Every relation set with at most `max_edges` edges, in mask order.
fn small_sets(p: &Pyramid, max_edges: u32) -> Vec<RelationSet> {
    let all = all_relations(p);
    let m = all.len();
    (0u64..1 << m)
        .filter(|mask| mask.count_ones() <= max_edges)
        .filter_map(|mask| {
            let edges: Vec<Relation> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| all[k]).collect();
            RelationSet::new(p.clone(), edges).ok()
        })
        .collect()
}

fn corpus_pyramids() -> Vec<Pyramid> {
    vec![Pyramid::new(vec![1, 1]).unwrap(), Pyramid::new(vec![1, 2]).unwrap()]
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let opts = VerifyOptions::default();
    let mut seeds = 0;
    let mut failures = Vec::new();
    for rows in [vec![1, 1], vec![1, 1, 1], vec![1, 2], vec![2, 2]] {
        let s = RelationSet::standard(Pyramid::new(rows.clone()).unwrap());
        for l in oracle_seeds(&s).unwrap() {
            seeds += 1;
            match verify_defining_relations(&s, &l, &opts) {
                Ok(r) if r.passed => {}
                Ok(r) => failures.push(format!("{rows:?}: {:?}", r.first_violation.map(|v| v.relation))),
                Err(e) => failures.push(format!("{rows:?}: {e}")),
            }
        }
    }
    let took = start.elapsed();
    outcome(
        failures.is_empty() && took < C1_LIMIT,
        format!(
            "{seeds} seeds on 4 pyramids, {} failing, {:.1}s (limit {}s) {}",
            failures.len(),
            took.as_secs_f64(),
            C1_LIMIT.as_secs(),
            failures.join("; ")
        ),
    )
}

fn criterion_2() -> Outcome {
    let p = Pyramid::gl(3).unwrap();
    let patterns = [
        [Relation::gt(t(1, 2, 1), t(1, 3, 2)), Relation::geq(t(1, 3, 2), t(1, 2, 2))],
        [Relation::geq(t(1, 2, 1), t(1, 1, 1)), Relation::gt(t(1, 1, 1), t(1, 2, 2))],
    ];
    let opts = VerifyOptions {
        radius: 3,
        ..VerifyOptions::default()
    };
    let mut notes = Vec::new();
    let mut pass = true;
    for edges in patterns {
        let c = RelationSet::new(p.clone(), edges).unwrap();
        let verdict = is_admissible(&c);
        let oracle = admissibility_oracle(&c, &opts).unwrap();
        let violated = !oracle.passed && oracle.violation.is_some();
        pass &= violated && !verdict.admissible && verdict.revalidate(&c);
        notes.push(format!(
            "{c}: violation {}, certificate {}",
            oracle.violation.as_ref().map_or("none".into(), |v| v.family.clone()),
            serde_json::to_value(&verdict.certificate).unwrap()["kind"]
        ));
    }
    outcome(pass, notes.join("; "))
}

fn criterion_3(corpus: &mut Vec<(RelationSet, bool)>) -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for p in corpus_pyramids() {
        let sets = small_sets(&p, C3_MAX_EDGES);
        let (mut agree, mut admissible) = (0, 0);
        for c in sets.iter() {
            let a = is_admissible(c).admissible;
            admissible += a as usize;
            if oracle_passes(c) == a {
                agree += 1;
            }
            corpus.push((c.clone(), a));
        }
        pass &= agree == sets.len();
        notes.push(format!("{:?}: {agree}/{} agree, {admissible} admissible", p.rows(), sets.len()));
    }
    outcome(pass, notes.join("; "))
}

fn criterion_4(corpus: &[(RelationSet, bool)]) -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut seen: BTreeSet<(Vec<usize>, Vec<Relation>)> = BTreeSet::new();
    for p in corpus_pyramids() {
        let empty = RelationSet::empty(p.clone());
        checked += 1;
        if !oracle_passes(&empty) || !is_admissible(&empty).admissible {
            failures.push(format!("empty set on {:?}", p.rows()));
        }
    }
    for (c, admissible) in corpus {
        if !admissible {
            continue;
        }
        for v in c.vertices() {
            let r = match rr_remove(c, &v) {
                Ok(r) => r,
                Err(Error::NotExtremal(_)) => continue,
                Err(e) => {
                    failures.push(format!("{c} at {v}: {e}"));
                    continue;
                }
            };
            let key = (c.pyramid().rows().to_vec(), r.edges().iter().copied().collect());
            if !seen.insert(key) {
                continue;
            }
            checked += 1;
            if !oracle_passes(&r) {
                failures.push(format!("{c} minus {v}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checked} distinct removals checked, {} failing {}", failures.len(), failures.join("; ")),
    )
}

/// Tableau from rows listed bottom-up as `(class, offset)` pairs.
fn tableau(rows: &[&[(usize, i64)]]) -> Tableau {
    let p = Pyramid::gl(rows.len()).unwrap();
    let flat: Vec<(usize, i64)> = rows.iter().flat_map(|r| r.iter().copied()).collect();
    let classes: Vec<usize> = flat.iter().map(|x| x.0).collect();
    let offsets: Vec<i64> = flat.iter().map(|x| x.1).collect();
    Tableau::symbolic(p, &classes, &offsets).unwrap()
}

fn subsets(edges: &[Relation]) -> Vec<Vec<Relation>> {
    (0u32..1 << edges.len())
        .map(|mask| (0..edges.len()).filter(|k| mask >> k & 1 == 1).map(|k| edges[k]).collect())
        .collect()
}

fn criterion_5() -> Outcome {
    let seeds = [
        tableau(&[&[(0, 0)], &[(0, 1), (0, -1)]]),
        tableau(&[&[(0, 0)], &[(0, 0), (0, -1)]]),
        tableau(&[&[(0, 1)], &[(0, 0), (0, -1)]]),
        tableau(&[&[(0, -2)], &[(0, 0), (0, -1)]]),
        tableau(&[&[(1, 0)], &[(0, 0), (0, -1)]]),
        tableau(&[&[(0, 0)], &[(0, 0), (1, 0)]]),
        tableau(&[&[(0, 0)], &[(0, 1), (0, -1)], &[(0, 2), (0, 0), (0, -2)]]),
        tableau(&[&[(0, 3)], &[(0, 1), (0, -1)], &[(0, 2), (0, 0), (0, -2)]]),
        tableau(&[&[(0, 0)], &[(1, 0), (0, -1)], &[(0, 2), (0, 0), (0, -2)]]),
        tableau(&[&[(0, 0)], &[(0, 2), (0, -2)], &[(0, 1), (0, 0), (0, -1)]]),
    ];
    let mut pairs = 0;
    let mut maximal = 0;
    let mut failures = Vec::new();
    for l in &seeds {
        let p = l.pyramid().clone();
        let budget = default_budget(&p);
        let full = reduce(&maximal_set(l).unwrap()).unwrap();
        let edges: Vec<Relation> = full.edges().iter().copied().collect();
        for sub in subsets(&edges) {
            let Ok(c) = RelationSet::new(p.clone(), sub) else { continue };
            if !c.satisfies(l) || !is_admissible(&c).admissible {
                continue;
            }
            let claimed = is_irreducible(&c, l).unwrap();
            let w = enumerate_basis(&c, l, C5_RADIUS, 1, default_order(budget)).unwrap();
            let probed = probe_irreducible(&w, budget).unwrap().is_none();
            pairs += 1;
            maximal += claimed as usize;
            if claimed != probed {
                failures.push(format!("{c} claimed {claimed} probed {probed}"));
            }
        }
    }
    outcome(
        failures.is_empty() && pairs >= 20,
        format!(
            "{pairs} pairs ({maximal} irreducible), window radius {C5_RADIUS}, {} disagreements {}",
            failures.len(),
            failures.join("; ")
        ),
    )
}

/// Weyl dimension `∏_{i<j} (λ_i − λ_j + j − i) / (j − i)`.
fn weyl_dimension(lambda: &[i64]) -> i64 {
    let n = lambda.len();
    let mut num = 1i64;
    let mut den = 1i64;
    for i in 0..n {
        for j in i + 1..n {
            num *= lambda[i] - lambda[j] + (j - i) as i64;
            den *= (j - i) as i64;
        }
    }
    num / den
}

fn criterion_6() -> Outcome {
    let mut cases = Vec::new();
    for a in 0..=4 {
        cases.push(vec![a, 0]);
        for b in 0..=a {
            cases.push(vec![a, b, 0]);
        }
    }
    let mut failures = Vec::new();
    for lambda in &cases {
        let n = lambda.len();
        let p = Pyramid::gl(n).unwrap();
        let values: Vec<Scalar> = p.cells().iter().map(|c| int(lambda[c.j - 1] - c.j as i64 + 1)).collect();
        let l = Tableau::from_values(p.clone(), &values).unwrap();
        let c = maximal_set(&l).unwrap();
        let w = enumerate_basis(&c, &l, 4, 1, default_order(default_budget(&p))).unwrap();
        let expect = weyl_dimension(lambda);
        if w.members().len() as i64 != expect {
            failures.push(format!("{lambda:?}: {} vs {expect}", w.members().len()));
        }
    }
    outcome(
        failures.is_empty(),
        format!("{} weights, {} mismatches, e.g. (2,0) -> {} {}", cases.len(), failures.len(), weyl_dimension(&[2, 0]), failures.join("; ")),
    )
}

fn slot_permutations(slots: &[(usize, usize)]) -> Vec<BTreeMap<(usize, usize), (usize, usize)>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..slots.len()).collect();
    permute_indices(&mut idx, 0, &mut |perm| {
        out.push(slots.iter().zip(perm).map(|(s, &k)| (*s, slots[k])).collect());
    });
    out
}

fn permute_indices(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for x in k..v.len() {
        v.swap(k, x);
        permute_indices(v, k + 1, f);
        v.swap(k, x);
    }
}

fn criterion_7(corpus: &[(RelationSet, bool)]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pyramids = [
        Pyramid::gl(2).unwrap(),
        Pyramid::new(vec![1, 2]).unwrap(),
        Pyramid::gl(3).unwrap(),
        Pyramid::new(vec![2, 2]).unwrap(),
    ];
    let mut sampled = 0;
    let mut law_failures = Vec::new();
    while sampled < C7_SAMPLES {
        let p = &pyramids[rng.gen_range(0..pyramids.len())];
        let all = all_relations(p);
        let k = rng.gen_range(0..=5.min(all.len()));
        let edges: Vec<Relation> = (0..k).map(|_| all[rng.gen_range(0..all.len())]).collect();
        let Ok(c) = RelationSet::new(p.clone(), edges) else { continue };
        let Ok(r) = reduce(&c) else { continue };
        let cells = p.num_cells();
        let classes: Vec<usize> = (0..cells).map(|_| (rng.gen_range(0..4) == 0) as usize).collect();
        let offsets: Vec<i64> = (0..cells).map(|_| rng.gen_range(-2..=2)).collect();
        let l = Tableau::symbolic(p.clone(), &classes, &offsets).unwrap();
        sampled += 1;
        let idempotent = reduce(&r).is_ok_and(|rr| rr == r);
        if !idempotent || r.satisfies(&l) != c.satisfies(&l) {
            law_failures.push(format!("{c}"));
        }
    }
    let mut permuted = 0;
    let mut perm_failures = Vec::new();
    for (c, admissible) in corpus {
        let p = c.pyramid();
        for row in 1..=p.n() {
            let slots: Vec<(usize, usize)> = p.row_range(row).map(|i| p.cells()[i].slot()).collect();
            for sigma in slot_permutations(&slots) {
                let Ok(d) = c.permute(row, &sigma) else { continue };
                permuted += 1;
                if is_admissible(&d).admissible != *admissible {
                    perm_failures.push(format!("{c} row {row}"));
                }
            }
        }
    }
    outcome(
        law_failures.is_empty() && perm_failures.is_empty(),
        format!(
            "{sampled} reduce samples ({} failing), {permuted} permuted sets ({} failing) {}",
            law_failures.len(),
            perm_failures.len(),
            law_failures.iter().chain(&perm_failures).take(3).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn axpy(acc: &mut TensorVector, a: &Scalar, v: &TensorVector) {
    for (k, x) in v {
        let e = acc.entry(k.clone()).or_insert_with(|| int(0));
        *e += a * x;
        if *e == int(0) {
            acc.remove(k);
        }
    }
}

/// Products `t_{ab}^{(p)} t_{cd}^{(q)} v`, memoized.
struct Products<'a> {
    m: &'a TensorModule,
    v: TensorVector,
    single: HashMap<(usize, usize, usize), TensorVector>,
    double: HashMap<[usize; 6], TensorVector>,
}

impl<'a> Products<'a> {
    fn single(&mut self, a: usize, b: usize, p: usize) -> TensorVector {
        if let Some(x) = self.single.get(&(a, b, p)) {
            return x.clone();
        }
        let x = self.m.apply_t(a, b, p, &self.v).unwrap();
        self.single.insert((a, b, p), x.clone());
        x
    }

    fn double(&mut self, a: usize, b: usize, p: usize, c: usize, d: usize, q: usize) -> TensorVector {
        let key = [a, b, p, c, d, q];
        if let Some(x) = self.double.get(&key) {
            return x.clone();
        }
        let inner = self.single(c, d, q);
        let x = self.m.apply_t(a, b, p, &inner).unwrap();
        self.double.insert(key, x.clone());
        x
    }
}

/// RTT relation in coefficient form on one vector:
/// `[t_ij^(r+1), t_kl^(s)] − [t_ij^(r), t_kl^(s+1)] = t_kj^(r) t_il^(s) − t_kj^(s) t_il^(r)`.
fn rtt_holds(m: &TensorModule, v: TensorVector, max_degree: usize) -> (usize, usize) {
    let n = m.n();
    let mut pr = Products {
        m,
        v,
        single: HashMap::new(),
        double: HashMap::new(),
    };
    let (mut checked, mut failed) = (0, 0);
    let one = int(1);
    let minus = int(-1);
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    for r in 0..max_degree {
                        for s in 0..max_degree {
                            let mut lhs = TensorVector::new();
                            axpy(&mut lhs, &one, &pr.double(i, j, r + 1, k, l, s));
                            axpy(&mut lhs, &minus, &pr.double(k, l, s, i, j, r + 1));
                            axpy(&mut lhs, &minus, &pr.double(i, j, r, k, l, s + 1));
                            axpy(&mut lhs, &one, &pr.double(k, l, s + 1, i, j, r));
                            axpy(&mut lhs, &minus, &pr.double(k, j, r, i, l, s));
                            axpy(&mut lhs, &one, &pr.double(k, j, s, i, l, r));
                            checked += 1;
                            failed += !lhs.is_empty() as usize;
                        }
                    }
                }
            }
        }
    }
    (checked, failed)
}

fn increasing_tuples(n: usize, m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in increasing_tuples(n, m - 1) {
        let lo = rest.last().map_or(1, |x| x + 1);
        for x in lo..=n {
            let mut v = rest.clone();
            v.push(x);
            out.push(v);
        }
    }
    out
}

/// Coproduct of a quantum minor: `Δ(t^a_b(u)) = Σ_c t^a_c(u) ⊗ t^c_b(u)`, on one pure tensor.
fn cpdet_holds(m: &TensorModule, singles: &[TensorModule], key: &TensorKey, a: &[usize], b: &[usize], order: usize) -> bool {
    let v = TensorVector::from([(key.clone(), int(1))]);
    let lhs = m.minor_series(a, b, &v, order).unwrap();
    let mut rhs = vec![TensorVector::new(); order + 1];
    for c in increasing_tuples(m.n(), a.len()) {
        let left = singles[0]
            .minor_series(a, &c, &TensorVector::from([(vec![key[0].clone()], int(1))]), order)
            .unwrap();
        let right = singles[1]
            .minor_series(&c, b, &TensorVector::from([(vec![key[1].clone()], int(1))]), order)
            .unwrap();
        for (p, x) in left.iter().enumerate() {
            for (q, y) in right.iter().enumerate().take(order + 1 - p) {
                for (kx, cx) in x {
                    for (ky, cy) in y {
                        let k: TensorKey = vec![kx[0].clone(), ky[0].clone()];
                        axpy(&mut rhs[p + q], &(cx * cy), &TensorVector::from([(k, int(1))]));
                    }
                }
            }
        }
    }
    lhs == rhs
}

fn swapped(x: &[usize], k: usize) -> Vec<usize> {
    let mut y = x.to_vec();
    y.swap(k, k + 1);
    y
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let modules = [
        (vec![GlWeight::from_ints(&[2, 0]), GlWeight::from_ints(&[1, 1])], vec![int(0), frac(3, 2)]),
        (vec![GlWeight::new(vec![frac(1, 2), int(0)]), GlWeight::from_ints(&[1, 0])], vec![int(0), int(0)]),
        (vec![GlWeight::from_ints(&[1, 0, 0]), GlWeight::from_ints(&[2, 1, 0])], vec![int(0), int(1)]),
        (vec![GlWeight::from_ints(&[0, 0, -1]), GlWeight::new(vec![frac(1, 3), int(0), int(0)])], vec![int(0), frac(-1, 2)]),
    ];
    let (mut rtt_checked, mut rtt_failed) = (0, 0);
    let (mut minors_checked, mut minors_failed) = (0, 0);
    let (mut cp_checked, mut cp_failed) = (0, 0);
    for (weights, points) in &modules {
        let m = TensorModule::from_weights(weights, points, 4).unwrap();
        let n = m.n();
        let singles: Vec<TensorModule> = m
            .factors()
            .iter()
            .map(|f: &EvaluationFactor| TensorModule::new(vec![f.clone()], 4).unwrap())
            .collect();
        let spaces: Vec<Vec<i64>> = m.weight_spaces().into_iter().filter(|c| c.iter().sum::<i64>() <= 2).collect();
        for c in &spaces {
            let basis = m.basis(c);
            let v: TensorVector = basis
                .iter()
                .map(|k| (k.clone(), int(rng.gen_range(1..=9))))
                .collect();
            let (ch, fl) = rtt_holds(&m, v, 3);
            rtt_checked += ch;
            rtt_failed += fl;
            for size in 1..=n {
                let order = 2 * size + 1;
                for a in increasing_tuples(n, size) {
                    for b in increasing_tuples(n, size) {
                        if size >= 2 {
                            let base = quantum_minor(&m, &a, &b, c, order).unwrap();
                            for k in 0..size - 1 {
                                for (x, y) in [(swapped(&a, k), b.clone()), (a.clone(), swapped(&b, k))] {
                                    let other = quantum_minor(&m, &x, &y, c, order).unwrap();
                                    minors_checked += 1;
                                    let negated = base.coeffs.iter().zip(&other.coeffs).all(|(p, q)| {
                                        p.entries
                                            .iter()
                                            .zip(&q.entries)
                                            .all(|(r1, r2)| r1.iter().zip(r2).all(|(s, t)| *s == -t.clone()))
                                    });
                                    minors_failed += !negated as usize;
                                }
                            }
                        }
                        for key in &basis {
                            cp_checked += 1;
                            cp_failed += !cpdet_holds(&m, &singles, key, &a, &b, order) as usize;
                        }
                    }
                }
            }
        }
    }
    let took = start.elapsed();
    outcome(
        rtt_failed == 0 && minors_failed == 0 && cp_failed == 0 && took < C8_LIMIT,
        format!(
            "RTT {rtt_checked} instances ({rtt_failed} failing), minor swaps {minors_checked} ({minors_failed} failing), \
             coproduct {cp_checked} ({cp_failed} failing), {:.1}s (limit {}s)",
            took.as_secs_f64(),
            C8_LIMIT.as_secs()
        ),
    )
}

fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let q = [2, 3, 5, 7][rng.gen_range(0..4)];
    frac(rng.gen_range(-12..=12), q)
}

/// Only the highest vector is singular in every weight space up to the module depth.
fn only_top_line(m: &TensorModule) -> bool {
    singular_profile(m, None)
        .unwrap()
        .iter()
        .all(|(c, k)| *k == c.iter().all(|&x| x == 0) as usize)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let zero = int(0);
    let mut generic_ok = 0;
    let mut generic_total = 0;
    for size in [2usize, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 3] {
        let ws = loop {
            let ws: Vec<GlWeight> = (0..size)
                .map(|_| GlWeight::new(vec![random_rational(&mut rng), random_rational(&mut rng)]))
                .collect();
            if ws.iter().all(|w| w.is_good()) && is_generic(&ws) {
                break ws;
            }
        };
        let m = TensorModule::from_weights(&ws, &vec![zero.clone(); size], 3).unwrap();
        generic_total += 1;
        generic_ok += only_top_line(&m) as usize;
    }

    let mut satisfying = Vec::new();
    while satisfying.len() < 10 {
        let shift = if rng.gen_bool(0.5) { int(0) } else { frac(1, 2) };
        let mut weight = || GlWeight::new((0..2).map(|_| int(rng.gen_range(-3..=3)) + &shift).collect());
        let (lambda, mu) = (weight(), weight());
        if !lambda.is_good() || !mu.is_good() || is_generic(&[lambda.clone(), mu.clone()]) {
            continue;
        }
        let pair = (lambda, mu);
        if integral_condition(&pair.0, &pair.1).unwrap() && !satisfying.contains(&pair) {
            satisfying.push(pair);
        }
    }
    // Adjacent strings: the differences land inside the interval sets.
    let violating: Vec<(GlWeight, GlWeight)> = [
        ([1, 0], [2, 1]),
        ([2, 0], [3, 1]),
        ([2, 0], [3, 2]),
        ([0, -1], [1, 0]),
    ]
    .iter()
    .map(|(a, b)| (GlWeight::from_ints(a), GlWeight::from_ints(b)))
    .chain([(
        GlWeight::new(vec![frac(1, 2), frac(-1, 2)]),
        GlWeight::new(vec![frac(3, 2), frac(1, 2)]),
    )])
    .collect();
    let constructed = violating.iter().all(|(l, m)| !integral_condition(l, m).unwrap());
    let run = |pairs: &[(GlWeight, GlWeight)]| -> usize {
        pairs
            .iter()
            .filter(|(l, m)| {
                only_top_line(&TensorModule::from_weights(&[l.clone(), m.clone()], &[int(0), int(0)], 3).unwrap())
            })
            .count()
    };
    let integral_ok = run(&satisfying);
    let extra = violating.len() - run(&violating);
    outcome(
        constructed && generic_ok == generic_total && integral_ok == satisfying.len(),
        format!(
            "(a) generic {generic_ok}/{generic_total} top line only; (b) condition holds {integral_ok}/{} top line only; \
             (c) empirical: {extra}/{} violating pairs show an extra singular vector",
            satisfying.len(),
            violating.len()
        ),
    )
}

fn criterion_10() -> Outcome {
    let data = |name: &str| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name);
    let jobs: Vec<Vec<String>> = vec![
        vec!["check-admissible", "--pyramid", "gl2.json", "--relations", "standard_gl2.json", "--oracle", "--seed", "7"],
        vec!["check-admissible", "--pyramid", "gl3.json", "--relations", "pattern_gl3.json"],
        vec!["verify-relations", "--pyramid", "gl2.json", "--relations", "empty.json", "--tableau", "generic_gl2.json", "--seed", "5"],
        vec!["enumerate-basis", "--pyramid", "gl2.json", "--relations", "empty.json", "--tableau", "generic_gl2.json", "--seed", "3"],
        vec!["irreducible", "--pyramid", "gl2.json", "--relations", "empty.json", "--tableau", "linked_gl2.json", "--radius", "2"],
        vec!["tensor-check", "--weights", "violating_pair.json", "--depth", "3", "--mode", "integral"],
        vec!["reduce", "--pyramid", "gl2.json", "--relations", "standard_gl2.json"],
    ]
    .into_iter()
    .map(|j| j.into_iter().map(String::from).collect())
    .collect();
    let run = |job: &[String], threads: &str| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_wpi"));
        for a in job {
            if a.ends_with(".json") {
                cmd.arg(data(a));
            } else {
                cmd.arg(a);
            }
        }
        let out = cmd.env("WPI_THREADS", threads).output().unwrap();
        (out.status.code(), out.stdout)
    };
    let mut identical = 0;
    for job in &jobs {
        let runs = [run(job, "1"), run(job, "1"), run(job, "2")];
        if runs.iter().all(|r| *r == runs[0]) && !runs[0].1.is_empty() {
            identical += 1;
        }
    }
    outcome(
        identical == jobs.len(),
        format!("{identical}/{} jobs byte-identical over 3 runs", jobs.len()),
    )
}

fn main() {
    let mut corpus = Vec::new();
    let mut failed = 0;
    let mut report = |id: u32, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2}: {verdict}  {} [{:.1}s]", o.detail.trim_end(), start.elapsed().as_secs_f64());
        failed += !o.pass as usize;
    };
    report(1, &mut criterion_1);
    report(2, &mut criterion_2);
    report(3, &mut || criterion_3(&mut corpus));
    report(4, &mut || criterion_4(&corpus));
    report(5, &mut criterion_5);
    report(6, &mut criterion_6);
    report(7, &mut || criterion_7(&corpus));
    report(8, &mut criterion_8);
    report(9, &mut criterion_9);
    report(10, &mut criterion_10);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
