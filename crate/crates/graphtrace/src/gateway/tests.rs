use super::stub::{StubBehavior, StubServer};
use super::*;
use crate::dataset::record_input;
use crate::eval;
use crate::graph::{sample_instance, SizeClass, TaskKind};
use crate::solve::solve;

fn stub_config(server: &StubServer) -> ModelConfig {
    ModelConfig {
        base_url: server.url(),
        model: "stub".into(),
        api_key: None,
        timeout_secs: 10,
        max_retries: 3,
        backoff_ms: 1,
        ..ModelConfig::default()
    }
}

#[test]
fn echoed_trace_grades_optimal() {
    let server = StubServer::spawn(StubBehavior::default()).unwrap();
    let inst = sample_instance(TaskKind::Mis, SizeClass::Small, 5);
    let cfg = stub_config(&server);
    let result = complete(&inst.instance_id, &record_input(&inst), &cfg);
    assert!(result.error.is_none(), "{:?}", result.error);
    assert_eq!(result.candidates.len(), 1);
    let optimum = solve(&inst).unwrap().objective;
    let outcome = eval::score_candidate(&inst, optimum, &result.candidates[0]);
    assert!(outcome.optimal);
}

#[test]
fn sixteen_candidates_arrive_order_stable() {
    let server = StubServer::spawn(StubBehavior {
        canned: Some("The maximum independent set is [0].".into()),
        ..StubBehavior::default()
    })
    .unwrap();
    let cfg = ModelConfig { n: 16, ..stub_config(&server) };
    let result = complete("x", "prompt", &cfg);
    assert!(result.error.is_none());
    assert_eq!(result.candidates.len(), 16);
    assert_eq!(result.latency_secs.len(), 16);
    assert!(result.candidates.iter().all(|c| c == &result.candidates[0]));
}

#[test]
fn unreachable_endpoint_fails_terminally_after_retries() {
    let cfg = ModelConfig {
        base_url: "http://127.0.0.1:9/v1".into(),
        timeout_secs: 1,
        max_retries: 2,
        backoff_ms: 1,
        ..ModelConfig::default()
    };
    let result = complete("x", "prompt", &cfg);
    let error = result.error.expect("terminal error");
    assert!(error.contains("terminal after 2 retries"), "{error}");
    assert!(result.candidates.is_empty());
}

#[test]
fn transient_failures_are_retried() {
    let server = StubServer::spawn(StubBehavior {
        fail_first: 2,
        canned: Some("ok [1]".into()),
        ..StubBehavior::default()
    })
    .unwrap();
    let cfg = stub_config(&server);
    let result = complete("x", "prompt", &cfg);
    assert!(result.error.is_none(), "{:?}", result.error);
    assert_eq!(server.request_count(), 3);
}

#[test]
fn batch_respects_the_concurrency_cap_and_orders_output() {
    let server = StubServer::spawn(StubBehavior {
        delay_ms: 20,
        canned: Some("ok [1]".into()),
        ..StubBehavior::default()
    })
    .unwrap();
    let cfg = ModelConfig { concurrency: 8, ..stub_config(&server) };
    let jobs: Vec<(String, String)> = (0..40)
        .map(|i| (format!("job-{i:03}"), "prompt".to_string()))
        .collect();
    let mut shuffled = jobs.clone();
    shuffled.reverse();
    let results = batch_query(&shuffled, &cfg);
    assert_eq!(results.len(), 40);
    let ids: Vec<&str> = results.iter().map(|r| r.instance_id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted, "results ordered by instance id");
    let peak = server.peak_inflight();
    assert!(peak <= 8, "peak in-flight was {peak}");
    assert!(peak >= 1);
}

#[test]
fn one_poisoned_instance_fails_alone() {
    let server = StubServer::spawn(StubBehavior {
        poison_marker: Some("POISON".into()),
        canned: Some("ok [1]".into()),
        ..StubBehavior::default()
    })
    .unwrap();
    let cfg = ModelConfig { max_retries: 1, ..stub_config(&server) };
    let jobs: Vec<(String, String)> = (0..10)
        .map(|i| {
            let prompt = if i == 4 { "POISON".to_string() } else { "fine".to_string() };
            (format!("j{i}"), prompt)
        })
        .collect();
    let results = batch_query(&jobs, &cfg);
    let failures: Vec<&QueryResult> = results.iter().filter(|r| r.error.is_some()).collect();
    assert_eq!(failures.len(), 1);
    assert_eq!(failures[0].instance_id, "j4");
    assert_eq!(results.iter().filter(|r| r.error.is_none()).count(), 9);
}

#[test]
fn empty_batch_is_empty() {
    let cfg = ModelConfig::default();
    assert!(batch_query(&[], &cfg).is_empty());
}

#[test]
fn debug_output_redacts_the_api_key() {
    let cfg = ModelConfig {
        api_key: Some("super-secret-key".into()),
        ..ModelConfig::default()
    };
    let debugged = format!("{cfg:?}");
    assert!(!debugged.contains("super-secret-key"));
    assert!(debugged.contains("<redacted>"));
}

#[test]
fn config_invariants_are_checked() {
    let no_candidates = ModelConfig { n: 0, ..ModelConfig::default() };
    assert!(no_candidates.validate().is_err());
    let cold = ModelConfig { temperature: -0.5, ..ModelConfig::default() };
    assert!(cold.validate().is_err());
    let bon = ModelConfig::best_of(32);
    assert_eq!(bon.n, 32);
    assert_eq!(bon.temperature, 1.0);
    assert!(bon.validate().is_ok());
}
