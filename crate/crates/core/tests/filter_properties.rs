mod common;

use std::collections::BTreeSet;

use conjforge::filters::{dalmatian_static, parse_known_results, remove_known, sort_by_touch, theo};
use conjforge::{
    build_table, generate, BooleanPropertyId, BoundDirection, Conjecture, FeatureTable, GenerationConfig, Heuristics,
    InvariantId,
};
use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn raw_sorted(table: &FeatureTable, target: InvariantId, direction: BoundDirection) -> Vec<Conjecture> {
    let mut config = GenerationConfig::new(target, direction);
    config.heuristics = Heuristics {
        sort: true,
        ..Heuristics::none()
    };
    generate(table, &config).unwrap().conjectures
}

fn is_subsequence(sub: &[Conjecture], full: &[Conjecture]) -> bool {
    let mut it = full.iter();
    sub.iter().all(|c| it.any(|d| d.id == c.id))
}

fn tables() -> Vec<FeatureTable> {
    let corpus = common::seed_corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut out = vec![build_table(&corpus, &InvariantId::ALL, &BooleanPropertyId::ALL).unwrap()];
    for size in [12, 25, 40, 60] {
        let sample: Vec<_> = corpus.choose_multiple(&mut rng, size).cloned().collect();
        out.push(build_table(&sample, &InvariantId::ALL, &BooleanPropertyId::ALL).unwrap());
    }
    out
}

const TARGETS: [InvariantId; 4] = [
    InvariantId::IndependenceNumber,
    InvariantId::ZeroForcingNumber,
    InvariantId::DominationNumber,
    InvariantId::EdgeDominationNumber,
];

fn runs() -> Vec<(FeatureTable, Vec<Conjecture>)> {
    let mut out = Vec::new();
    for table in tables() {
        for target in TARGETS {
            for direction in [BoundDirection::Upper, BoundDirection::Lower] {
                let raw = raw_sorted(&table, target, direction);
                out.push((table.clone(), raw));
            }
        }
    }
    out
}

#[test]
fn sort_is_touch_nonincreasing() {
    for (_, raw) in runs() {
        assert!(raw.windows(2).all(|w| w[0].touch_number >= w[1].touch_number));
        assert_eq!(sort_by_touch(raw.clone()), raw);
    }
}

#[test]
fn theo_survivors_are_scope_maximal() {
    for (_, raw) in runs() {
        let (kept, report) = theo(raw.clone());
        assert!(is_subsequence(&kept, &raw));
        assert_eq!(report.input_count - report.output_count, report.removed.len());
        assert_eq!(kept.len(), report.output_count);
        for c in &kept {
            for d in &raw {
                let strictly_wider = d.scope_set.is_superset(&c.scope_set) && d.scope_set.len() > c.scope_set.len();
                assert!(
                    !(c.same_inequality(d) && strictly_wider),
                    "{} dominated by {}",
                    c.id,
                    d.id
                );
            }
        }
        // nothing is lost: every removed inequality still has a representative
        let kept_ineq: Vec<_> = kept.iter().collect();
        for c in &raw {
            assert!(kept_ineq
                .iter()
                .any(|k| k.same_inequality(c) && k.scope_set.is_superset(&c.scope_set)));
        }
        assert_eq!(theo(kept.clone()).0, kept);
    }
}

#[test]
fn dalmatian_replay() {
    for (_, raw) in runs() {
        let (kept, report) = dalmatian_static(raw.clone());
        assert!(is_subsequence(&kept, &raw));
        assert_eq!(kept.len() + report.removed.len(), raw.len());
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for c in &kept {
            assert!(
                c.equality_set.iter().any(|g| !seen.contains(g)),
                "{} adds nothing",
                c.id
            );
            seen.extend(c.equality_set.iter().cloned());
        }
        let all: BTreeSet<String> = raw.iter().flat_map(|c| c.equality_set.iter().cloned()).collect();
        assert_eq!(seen, all, "every witness stays covered");
        assert_eq!(dalmatian_static(kept.clone()).0, kept);
    }
}

#[test]
fn known_removal_is_idempotent_subsequence() {
    let path = common::corpus_dir().join("../known_results.json");
    let known = parse_known_results(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(known.len(), 9);
    for (table, raw) in runs() {
        let (kept, report) = remove_known(raw.clone(), &known, &table);
        assert!(is_subsequence(&kept, &raw));
        assert_eq!(kept.len() + report.removed.len(), raw.len());
        assert_eq!(remove_known(kept.clone(), &known, &table).0, kept);
    }
}

#[test]
fn pipeline_matches_composed_filters() {
    for (table, raw) in runs().into_iter().step_by(3) {
        let target = raw.first().map(|c| c.target).unwrap_or(InvariantId::IndependenceNumber);
        let direction = raw.first().map(|c| c.bound.direction).unwrap_or(BoundDirection::Upper);
        let run = generate(&table, &GenerationConfig::new(target, direction)).unwrap();
        let (t, _) = theo(raw);
        let (d, _) = dalmatian_static(t);
        assert_eq!(run.conjectures, d);
        assert_eq!(run.report.output_count, d.len());
    }
}
