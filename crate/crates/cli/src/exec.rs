//! Command implementations. Every command prints deterministic output
//! for fixed inputs and returns the process exit code: 0 for
//! success/agreement, 1 for a validated disagreement, 2 for input
//! errors, 3 for internal inconsistencies.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use tec_core::{
    classify_systems, corollary1_fast, equivalence_class, example_measure, is_tec_bruteforce,
    is_tec_bruteforce_z22, is_tec_theorem4, poisson_haar, poisson_measure, rat, theorem1_check,
    theorem2_check, theorem3_check, BranchISub, BranchIISub, ExpParams, Measure, Rational,
    TecWitness, Z2SquareMeasure,
};

use crate::input::{format_masses, parse_measure, parse_rational};
use crate::report::{ClassReport, ClassifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

pub fn run_classify(l: u32, tokens: &[String], format: Format) -> i32 {
    if l != 3 {
        eprintln!("error: classify requires l=3 (the closed-form classifier covers Z_2^3)");
        return 2;
    }
    let input = match parse_measure(l, tokens) {
        Ok(input) => input,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let classifier = is_tec_theorem4(&input.measure);
    let oracle = is_tec_bruteforce(&input.measure);
    let report = ClassifyReport::new(
        input.measure.masses(),
        &classifier,
        &oracle,
        corollary1_fast(&input.measure),
    );
    match format {
        Format::Machine => print!("{}", report.to_machine()),
        Format::Human => print!("{}", report.to_human()),
    }
    if report.agreement() {
        0
    } else {
        3
    }
}

pub fn run_class(l: u32, tokens: &[String], format: Format) -> i32 {
    let input = match parse_measure(l, tokens) {
        Ok(input) => input,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let members: Vec<Vec<Rational>> = equivalence_class(&input.measure)
        .into_iter()
        .map(|m| m.masses().to_vec())
        .collect();
    let report = ClassReport { l, masses: input.measure.masses().to_vec(), members };
    match format {
        Format::Machine => print!("{}", report.to_machine()),
        Format::Human => print!("{}", report.to_human()),
    }
    0
}

/// Uniform composition of `total` into `parts` nonnegative parts, via a
/// uniform choice of bar positions in the stars-and-bars arrangement.
fn random_composition(rng: &mut ChaCha8Rng, total: u64, parts: usize) -> Vec<u64> {
    let bars = parts - 1;
    let slots = total as usize + bars;
    let mut positions = rand::seq::index::sample(rng, slots, bars).into_vec();
    positions.sort_unstable();
    let mut nums = Vec::with_capacity(parts);
    let mut previous = 0usize;
    for (i, &p) in positions.iter().enumerate() {
        nums.push((p - previous - usize::from(i > 0)) as u64);
        previous = p;
    }
    let last = if bars == 0 { total } else { (slots - 1 - previous) as u64 };
    nums.push(last);
    nums
}

pub fn run_fuzz(count: u64, seed: u64, denominator_bound: u64) -> i32 {
    // ChaCha8 seeded through `seed_from_u64`; the denominator is drawn
    // uniformly from 1..=bound, then the numerators uniformly over the
    // lattice compositions of it into 8 parts. The sequence is fully
    // determined by the seed.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<(u64, Vec<u64>)> = (0..count)
        .map(|_| {
            let den = rng.gen_range(1..=denominator_bound);
            (den, random_composition(&mut rng, den, 8))
        })
        .collect();

    println!("fuzz: count={count} seed={seed} denominator-bound={denominator_bound}");
    println!("rng: chacha8 seed-from-u64, uniform compositions via stars and bars");

    let results: Vec<(bool, bool)> = inputs
        .par_iter()
        .map(|(den, nums)| {
            let mu = Measure::from_numerators(3, nums, *den).expect("compositions are measures");
            (is_tec_theorem4(&mu).tec, is_tec_bruteforce(&mu).tec)
        })
        .collect();

    let tec = results.iter().filter(|(c, _)| *c).count();
    let mut failing: Vec<&(u64, Vec<u64>)> = inputs
        .iter()
        .zip(&results)
        .filter(|(_, (c, o))| c != o)
        .map(|(input, _)| input)
        .collect();
    failing.sort();

    println!("tec: {tec}");
    println!("non-tec: {}", count as usize - tec);
    println!("disagreements: {}", failing.len());
    match failing.first() {
        None => {
            println!("result: ok");
            0
        }
        Some((den, nums)) => {
            let mu = Measure::from_numerators(3, nums, *den).unwrap();
            println!("first-failing-denominator: {den}");
            println!("first-failing-masses: {}", format_masses(mu.masses()));
            println!("classifier: {}", is_tec_theorem4(&mu).tec);
            println!("oracle: {}", is_tec_bruteforce(&mu).tec);
            println!("result: disagreement");
            1
        }
    }
}

fn binomial(n: u64, k: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}

fn branch_label(witness: &TecWitness) -> Option<usize> {
    match witness {
        TecWitness::BranchI { sub: BranchISub::A, .. } => Some(0),
        TecWitness::BranchI { sub: BranchISub::B, .. } => Some(1),
        TecWitness::BranchI { sub: BranchISub::C, .. } => Some(2),
        TecWitness::BranchII { sub: BranchIISub::One, .. } => Some(3),
        TecWitness::BranchII { sub: BranchIISub::Two, .. } => Some(4),
        TecWitness::BranchII { sub: BranchIISub::Three, .. } => Some(5),
        TecWitness::BranchII { sub: BranchIISub::Four, .. } => Some(6),
        _ => None,
    }
}

const BRANCH_NAMES: [&str; 7] = ["I.2a", "I.2b", "I.2c", "II.1", "II.2", "II.3", "II.4"];

pub fn run_grid(denominator: u64, cap: u128) -> i32 {
    let count = match binomial(denominator + 7, 7) {
        Some(c) if c <= cap => c,
        _ => {
            eprintln!(
                "error: grid size C({}+7,7) exceeds the cap of {cap} measures",
                denominator
            );
            return 2;
        }
    };
    println!("grid: denominator={denominator} count={count} cap={cap}");

    #[derive(Default, Clone)]
    struct Tally {
        tec: u64,
        non_tec: u64,
        branches: [u64; 7],
        // Smallest disagreeing composition, compositions being ordered
        // lexicographically.
        disagreement: Option<Vec<u64>>,
        disagreements: u64,
    }

    let partials: Vec<Tally> = (0..=denominator)
        .into_par_iter()
        .map(|first| {
            let mut tally = Tally::default();
            let mut nums = vec![first; 1];
            enumerate_rest(&mut nums, denominator - first, 8, &mut |nums| {
                let mu = Measure::from_numerators(3, nums, denominator)
                    .expect("compositions are measures");
                let classifier = is_tec_theorem4(&mu);
                let oracle = is_tec_bruteforce(&mu);
                if classifier.tec != oracle.tec {
                    tally.disagreements += 1;
                    if tally.disagreement.is_none() {
                        tally.disagreement = Some(nums.to_vec());
                    }
                    return;
                }
                if classifier.tec {
                    tally.tec += 1;
                    if let Some(slot) = branch_label(&classifier.witness) {
                        tally.branches[slot] += 1;
                    }
                } else {
                    tally.non_tec += 1;
                }
            });
            tally
        })
        .collect();

    let mut total = Tally::default();
    for p in partials {
        total.tec += p.tec;
        total.non_tec += p.non_tec;
        for i in 0..7 {
            total.branches[i] += p.branches[i];
        }
        total.disagreements += p.disagreements;
        // Partials arrive in first-coordinate order, so the first
        // recorded disagreement is already the lexicographic minimum.
        if total.disagreement.is_none() {
            total.disagreement = p.disagreement;
        }
    }

    println!("tec: {}", total.tec);
    println!("non-tec: {}", total.non_tec);
    for (name, n) in BRANCH_NAMES.iter().zip(total.branches) {
        println!("branch {name}: {n}");
    }
    println!("disagreements: {}", total.disagreements);
    match total.disagreement {
        None => {
            println!("result: ok");
            0
        }
        Some(nums) => {
            let mu = Measure::from_numerators(3, &nums, denominator).unwrap();
            println!("first-failing-masses: {}", format_masses(mu.masses()));
            println!("result: disagreement");
            1
        }
    }
}

/// Streams the completions of a composition prefix.
fn enumerate_rest(nums: &mut Vec<u64>, rest: u64, parts: usize, f: &mut impl FnMut(&[u64])) {
    if nums.len() + 1 == parts {
        nums.push(rest);
        f(nums);
        nums.pop();
        return;
    }
    for v in 0..=rest {
        nums.push(v);
        enumerate_rest(nums, rest - v, parts, f);
        nums.pop();
    }
}

pub fn run_theorems(which: u32, denominator: u64) -> i32 {
    match which {
        1 => {
            println!("theorems: which=1 denominator={denominator}");
            let failures: Vec<u64> = (1..denominator)
                .into_par_iter()
                .filter(|&k| {
                    let q = rat(k as i64, denominator as i64);
                    let mu = poisson_haar(&q).expect("q strictly inside (0,1)");
                    theorem1_check(&q) != is_tec_bruteforce(&mu).tec
                })
                .collect();
            finish_theorem(denominator as usize - 1, &failures, |k| {
                format!("q={k}/{denominator}")
            })
        }
        2 => {
            println!("theorems: which=2 denominator={denominator}");
            let d = denominator;
            let triples: Vec<(u64, u64, u64)> = (1..d)
                .flat_map(|p| (1..d).flat_map(move |q| (1..d).map(move |r| (p, q, r))))
                .collect();
            let failures: Vec<(u64, u64, u64)> = triples
                .par_iter()
                .copied()
                .filter(|&(p, q, r)| {
                    let (p, q, r) =
                        (rat(p as i64, d as i64), rat(q as i64, d as i64), rat(r as i64, d as i64));
                    let params = ExpParams::new(vec![
                        p.clone(),
                        q.clone(),
                        r.clone(),
                        rat(1, 1),
                        rat(1, 1),
                        rat(1, 1),
                        rat(1, 1),
                    ])
                    .expect("grid parameters lie in (0,1)");
                    let mu = poisson_measure(&params).expect("Poisson masses are nonnegative");
                    theorem2_check(&p, &q, &r) != is_tec_bruteforce(&mu).tec
                })
                .collect();
            finish_theorem(triples.len(), &failures, |(p, q, r)| {
                format!("(p,q,r)=({p}/{d},{q}/{d},{r}/{d})")
            })
        }
        3 => {
            println!("theorems: which=3 denominator={denominator}");
            let mut checks = 0usize;
            let mut failures: Vec<(Vec<u64>, u64)> = Vec::new();
            for den in 1..=denominator {
                let mut nums = Vec::new();
                enumerate_rest(&mut nums, den, 4, &mut |nums| {
                    checks += 1;
                    let mu = Z2SquareMeasure::from_numerators(nums, den)
                        .expect("compositions are measures");
                    if theorem3_check(&mu) != is_tec_bruteforce_z22(&mu) {
                        failures.push((nums.to_vec(), den));
                    }
                });
            }
            finish_theorem(checks, &failures, |(nums, den)| format!("masses={nums:?}/{den}"))
        }
        _ => {
            eprintln!("error: --which must be 1, 2, or 3");
            2
        }
    }
}

fn finish_theorem<T: Clone>(checks: usize, failures: &[T], render: impl Fn(&T) -> String) -> i32 {
    println!("checks: {checks}");
    println!("disagreements: {}", failures.len());
    match failures.first() {
        None => {
            println!("result: ok");
            0
        }
        Some(first) => {
            println!("first-failing: {}", render(first));
            println!("result: disagreement");
            1
        }
    }
}

pub fn run_systems() -> i32 {
    let classified = match classify_systems() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 3;
        }
    };
    println!("systems: {}", classified.len());
    let mut a = 0;
    let mut b = 0;
    let mut c = 0;
    let mut d = 0;
    for (pattern, family) in &classified {
        println!("pattern {pattern} family {family}");
        match family.tag {
            tec_core::FamilyTag::A => a += 1,
            tec_core::FamilyTag::B => b += 1,
            tec_core::FamilyTag::C(_) => c += 1,
            tec_core::FamilyTag::D(_) => d += 1,
        }
    }
    println!("counts: A:{a} B:{b} C:{c} D:{d}");
    if (a, b, c, d) == (8, 8, 56, 56) {
        0
    } else {
        eprintln!("error: family counts diverge from the 8/8/56/56 partition");
        3
    }
}

pub enum GenerateRequest {
    Example { n: usize, eps: String },
    PoissonHaar { q: String },
    Poisson { u: String },
}

pub fn run_generate(request: &GenerateRequest) -> i32 {
    let measure = match request {
        GenerateRequest::Example { n, eps } => {
            let eps = match parse_rational(eps) {
                Ok(value) => value,
                Err(e) => {
                    eprintln!("error: --eps: {e}");
                    return 2;
                }
            };
            match example_measure(*n, &eps) {
                Ok(mu) => mu,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
        }
        GenerateRequest::PoissonHaar { q } => {
            let q = match parse_rational(q) {
                Ok(value) => value,
                Err(e) => {
                    eprintln!("error: --q: {e}");
                    return 2;
                }
            };
            match poisson_haar(&q) {
                Ok(mu) => mu,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            }
        }
        GenerateRequest::Poisson { u } => {
            let parsed: Result<Vec<Rational>, String> = u.split(',').map(parse_rational).collect();
            let values = match parsed {
                Ok(values) => values,
                Err(e) => {
                    eprintln!("error: --u: {e}");
                    return 2;
                }
            };
            let params = match ExpParams::new(values) {
                Ok(params) => params,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 2;
                }
            };
            match poisson_measure(&params) {
                Ok(mu) => mu,
                Err(e) => {
                    eprintln!("error: {e}");
                    return 3;
                }
            }
        }
    };
    println!("{}", format_masses(measure.masses()));
    0
}
