//! Chat-completions gateway: collect candidate answers from an HTTP endpoint
//! for evaluation and best-of-n runs.
//!
//! Requests use the de-facto chat-completions shape (messages array,
//! temperature, n); responses are treated as opaque candidate text for the
//! answer parser. Transient failures retry with exponential backoff and end
//! in a per-instance error descriptor, never a crash; a batch keeps at most
//! `concurrency` requests in flight and returns results ordered by instance
//! id regardless of completion order. Secrets never reach logs or results.

pub mod stub;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable consulted for the API key.
pub const API_KEY_ENV: &str = "GRAPHTRACE_API_KEY";

#[derive(Debug, Error)]
pub enum GatewayError {
    #[error("invalid gateway config: {0}")]
    Config(String),
}

#[derive(Clone)]
pub struct ModelConfig {
    /// Base URL up to and including the API root, e.g. `http://host:port/v1`.
    pub base_url: String,
    pub model: String,
    /// Read from [`API_KEY_ENV`] by default; never logged.
    pub api_key: Option<String>,
    pub temperature: f64,
    pub max_tokens: Option<u32>,
    /// Candidates per instance.
    pub n: usize,
    pub timeout_secs: u64,
    pub max_retries: u32,
    pub concurrency: usize,
    pub backoff_ms: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            base_url: String::new(),
            model: "unknown".into(),
            api_key: std::env::var(API_KEY_ENV).ok(),
            temperature: 0.1,
            max_tokens: None,
            n: 1,
            timeout_secs: 60,
            max_retries: 3,
            concurrency: 4,
            backoff_ms: 250,
        }
    }
}

impl ModelConfig {
    /// Best-of-n defaults: n candidates at temperature 1.0.
    pub fn best_of(n: usize) -> Self {
        ModelConfig { n, temperature: 1.0, ..ModelConfig::default() }
    }

    pub fn validate(&self) -> Result<(), GatewayError> {
        if self.temperature < 0.0 {
            return Err(GatewayError::Config("temperature must be >= 0".into()));
        }
        if self.n == 0 {
            return Err(GatewayError::Config("n must be >= 1".into()));
        }
        if self.concurrency == 0 || self.timeout_secs == 0 {
            return Err(GatewayError::Config("limits must be positive".into()));
        }
        Ok(())
    }

    fn endpoint(&self) -> String {
        format!("{}/chat/completions", self.base_url.trim_end_matches('/'))
    }
}

// Keys stay out of debug output and logs.
impl fmt::Debug for ModelConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ModelConfig")
            .field("base_url", &self.base_url)
            .field("model", &self.model)
            .field("api_key", &self.api_key.as_ref().map(|_| "<redacted>"))
            .field("temperature", &self.temperature)
            .field("max_tokens", &self.max_tokens)
            .field("n", &self.n)
            .field("timeout_secs", &self.timeout_secs)
            .field("max_retries", &self.max_retries)
            .field("concurrency", &self.concurrency)
            .field("backoff_ms", &self.backoff_ms)
            .finish()
    }
}

/// Candidates collected for one instance, or a terminal failure descriptor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryResult {
    pub instance_id: String,
    pub candidates: Vec<String>,
    pub latency_secs: Vec<f64>,
    pub error: Option<String>,
}

#[derive(Serialize)]
struct ChatRequest<'a> {
    model: &'a str,
    messages: Vec<ChatMessage<'a>>,
    temperature: f64,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_tokens: Option<u32>,
}

#[derive(Serialize)]
struct ChatMessage<'a> {
    role: &'static str,
    content: &'a str,
}

#[derive(Deserialize)]
struct ChatResponse {
    choices: Vec<Choice>,
}

#[derive(Deserialize)]
struct Choice {
    message: ChoiceMessage,
}

#[derive(Deserialize)]
struct ChoiceMessage {
    content: String,
}

fn client_for(cfg: &ModelConfig) -> reqwest::blocking::Client {
    reqwest::blocking::Client::builder()
        .timeout(Duration::from_secs(cfg.timeout_secs))
        .build()
        .expect("client builds")
}

/// One request attempt; `want` candidates via the endpoint's `n` parameter.
fn attempt(
    client: &reqwest::blocking::Client,
    cfg: &ModelConfig,
    prompt: &str,
    want: usize,
) -> Result<Vec<String>, String> {
    let body = ChatRequest {
        model: &cfg.model,
        messages: vec![ChatMessage { role: "user", content: prompt }],
        temperature: cfg.temperature,
        n: want,
        max_tokens: cfg.max_tokens,
    };
    let mut request = client.post(cfg.endpoint()).json(&body);
    if let Some(key) = &cfg.api_key {
        request = request.bearer_auth(key);
    }
    let response = request.send().map_err(|e| format!("request failed: {e}"))?;
    let status = response.status();
    if !status.is_success() {
        return Err(format!("http status {status}"));
    }
    let parsed: ChatResponse = response.json().map_err(|e| format!("bad response body: {e}"))?;
    if parsed.choices.is_empty() {
        return Err("response carried no choices".into());
    }
    Ok(parsed.choices.into_iter().map(|c| c.message.content).collect())
}

fn attempt_with_retries(
    client: &reqwest::blocking::Client,
    cfg: &ModelConfig,
    instance_id: &str,
    prompt: &str,
    want: usize,
) -> Result<(Vec<String>, f64), String> {
    let mut last_err = String::new();
    for retry in 0..=cfg.max_retries {
        if retry > 0 {
            let backoff = Duration::from_millis(cfg.backoff_ms << (retry - 1).min(8));
            log::info!("gateway retry {retry}/{} for {instance_id} after {last_err} (backing off {backoff:?})", cfg.max_retries);
            std::thread::sleep(backoff);
        }
        let started = Instant::now();
        match attempt(client, cfg, prompt, want) {
            Ok(candidates) => return Ok((candidates, started.elapsed().as_secs_f64())),
            Err(e) => last_err = e,
        }
    }
    Err(format!("terminal after {} retries: {last_err}", cfg.max_retries))
}

fn complete_with_client(
    client: &reqwest::blocking::Client,
    cfg: &ModelConfig,
    instance_id: &str,
    prompt: &str,
) -> QueryResult {
    let mut candidates: Vec<String> = Vec::with_capacity(cfg.n);
    let mut latency_secs = Vec::with_capacity(cfg.n);
    while candidates.len() < cfg.n {
        let want = cfg.n - candidates.len();
        match attempt_with_retries(client, cfg, instance_id, prompt, want) {
            Ok((batch, latency)) => {
                // Endpoints that ignore `n` are topped up with further calls.
                for text in batch.into_iter().take(want) {
                    candidates.push(text);
                    latency_secs.push(latency);
                }
            }
            Err(error) => {
                return QueryResult {
                    instance_id: instance_id.to_string(),
                    candidates,
                    latency_secs,
                    error: Some(error),
                };
            }
        }
    }
    QueryResult {
        instance_id: instance_id.to_string(),
        candidates,
        latency_secs,
        error: None,
    }
}

/// Collects `cfg.n` candidates for one prompt.
pub fn complete(instance_id: &str, prompt: &str, cfg: &ModelConfig) -> QueryResult {
    let client = client_for(cfg);
    complete_with_client(&client, cfg, instance_id, prompt)
}

/// Queries every `(instance_id, prompt)` with at most `cfg.concurrency`
/// requests in flight; partial failures stay per-instance.
pub fn batch_query(jobs: &[(String, String)], cfg: &ModelConfig) -> Vec<QueryResult> {
    if jobs.is_empty() {
        return Vec::new();
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<QueryResult>>> = Mutex::new(vec![None; jobs.len()]);
    let workers = cfg.concurrency.min(jobs.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let client = client_for(cfg);
                loop {
                    let index = next.fetch_add(1, Ordering::Relaxed);
                    if index >= jobs.len() {
                        break;
                    }
                    let (id, prompt) = &jobs[index];
                    let result = complete_with_client(&client, cfg, id, prompt);
                    results.lock().unwrap()[index] = Some(result);
                }
            });
        }
    });
    let mut out: Vec<QueryResult> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect();
    out.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    out
}

#[cfg(test)]
mod tests;
