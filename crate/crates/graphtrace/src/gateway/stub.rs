//! Built-in stub endpoint for offline runs and tests.
//!
//! Speaks just enough HTTP/1.1 to serve the chat-completions shape. In its
//! default mode it parses the instance text out of the prompt, runs the
//! trace generator, and echoes the rendered trace back as every candidate —
//! so a stub-backed evaluation of generator prompts grades optimal across
//! the board. Behavior knobs cover canned bodies, injected failures,
//! per-prompt poisoning, and artificial latency; the server counts requests
//! and tracks peak concurrency for tests.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::sync::atomic::{AtomicBool, AtomicU32, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;

use serde_json::{json, Value};

use crate::graph::{parse_instance_text, TaskKind};
use crate::thought::generate_trace;

#[derive(Debug, Clone, Default)]
pub struct StubBehavior {
    /// Milliseconds to sleep inside each handler.
    pub delay_ms: u64,
    /// The first `fail_first` requests answer 500.
    pub fail_first: u32,
    /// Every request answers 500.
    pub fail_all: bool,
    /// Prompts containing this marker answer 500.
    pub poison_marker: Option<String>,
    /// Fixed candidate text instead of the echoed trace.
    pub canned: Option<String>,
}

struct StubState {
    behavior: StubBehavior,
    requests: AtomicU32,
    inflight: AtomicU32,
    peak_inflight: AtomicU32,
    shutdown: AtomicBool,
}

pub struct StubServer {
    addr: SocketAddr,
    state: Arc<StubState>,
    handle: Option<JoinHandle<()>>,
}

impl StubServer {
    pub fn spawn(behavior: StubBehavior) -> std::io::Result<StubServer> {
        let listener = TcpListener::bind("127.0.0.1:0")?;
        let addr = listener.local_addr()?;
        let state = Arc::new(StubState {
            behavior,
            requests: AtomicU32::new(0),
            inflight: AtomicU32::new(0),
            peak_inflight: AtomicU32::new(0),
            shutdown: AtomicBool::new(false),
        });
        let accept_state = Arc::clone(&state);
        let handle = std::thread::spawn(move || {
            for stream in listener.incoming() {
                if accept_state.shutdown.load(Ordering::SeqCst) {
                    break;
                }
                let Ok(stream) = stream else { continue };
                let conn_state = Arc::clone(&accept_state);
                std::thread::spawn(move || handle_connection(stream, &conn_state));
            }
        });
        Ok(StubServer { addr, state, handle: Some(handle) })
    }

    /// API root to plug into `ModelConfig::base_url`.
    pub fn url(&self) -> String {
        format!("http://{}/v1", self.addr)
    }

    pub fn request_count(&self) -> u32 {
        self.state.requests.load(Ordering::SeqCst)
    }

    pub fn peak_inflight(&self) -> u32 {
        self.state.peak_inflight.load(Ordering::SeqCst)
    }
}

impl Drop for StubServer {
    fn drop(&mut self) {
        self.state.shutdown.store(true, Ordering::SeqCst);
        let _ = TcpStream::connect(self.addr); // unblock accept
        if let Some(handle) = self.handle.take() {
            let _ = handle.join();
        }
    }
}

fn handle_connection(stream: TcpStream, state: &StubState) {
    let current = state.inflight.fetch_add(1, Ordering::SeqCst) + 1;
    state.peak_inflight.fetch_max(current, Ordering::SeqCst);
    let _ = serve(stream, state);
    state.inflight.fetch_sub(1, Ordering::SeqCst);
}

fn serve(mut stream: TcpStream, state: &StubState) -> std::io::Result<()> {
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut line = String::new();
    reader.read_line(&mut line)?;
    let mut content_length = 0usize;
    loop {
        let mut header = String::new();
        reader.read_line(&mut header)?;
        let header = header.trim_end();
        if header.is_empty() {
            break;
        }
        if let Some(value) = header.to_ascii_lowercase().strip_prefix("content-length:") {
            content_length = value.trim().parse().unwrap_or(0);
        }
    }
    let mut body = vec![0u8; content_length];
    reader.read_exact(&mut body)?;

    let request_number = state.requests.fetch_add(1, Ordering::SeqCst) + 1;
    if state.behavior.delay_ms > 0 {
        std::thread::sleep(std::time::Duration::from_millis(state.behavior.delay_ms));
    }

    let request: Value = serde_json::from_slice(&body).unwrap_or(Value::Null);
    let prompt = last_user_message(&request).unwrap_or_default();
    let n = request.get("n").and_then(Value::as_u64).unwrap_or(1).max(1) as usize;

    let fail = state.behavior.fail_all
        || request_number <= state.behavior.fail_first
        || state
            .behavior
            .poison_marker
            .as_ref()
            .is_some_and(|marker| prompt.contains(marker.as_str()));
    if fail {
        return write_response(&mut stream, 500, "Internal Server Error", b"");
    }

    let content = match &state.behavior.canned {
        Some(text) => text.clone(),
        None => echo_trace(&prompt).unwrap_or_else(|| "The answer is [].".to_string()),
    };
    let choices: Vec<Value> = (0..n)
        .map(|index| {
            json!({
                "index": index,
                "message": {"role": "assistant", "content": content},
                "finish_reason": "stop",
            })
        })
        .collect();
    let response = json!({
        "id": "stub",
        "object": "chat.completion",
        "model": "stub",
        "choices": choices,
    });
    write_response(&mut stream, 200, "OK", response.to_string().as_bytes())
}

fn write_response(stream: &mut TcpStream, code: u16, reason: &str, body: &[u8]) -> std::io::Result<()> {
    let head = format!(
        "HTTP/1.1 {code} {reason}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n",
        body.len()
    );
    stream.write_all(head.as_bytes())?;
    stream.write_all(body)?;
    stream.flush()
}

fn last_user_message(request: &Value) -> Option<String> {
    let messages = request.get("messages")?.as_array()?;
    messages
        .iter()
        .rev()
        .find(|m| m.get("role").and_then(Value::as_str) == Some("user"))?
        .get("content")?
        .as_str()
        .map(str::to_string)
}

/// Recognizes the task from its description preamble.
pub fn detect_kind(prompt: &str) -> Option<TaskKind> {
    const MARKERS: [(&str, TaskKind); 10] = [
        ("common neighbor nodes", TaskKind::Neighbor),
        ("shortest path between two nodes", TaskKind::Distance),
        ("representative node from each connected component", TaskKind::Connected),
        ("diameter of the graph", TaskKind::Diameter),
        ("maximum clique", TaskKind::Mcp),
        ("maximum independent set", TaskKind::Mis),
        ("minimum vertex cover", TaskKind::Mvc),
        ("maximum common subgraph", TaskKind::Mcs),
        ("Graph Edit Distance", TaskKind::Ged),
        ("TSP problem", TaskKind::Tsp),
    ];
    MARKERS
        .iter()
        .find(|(marker, _)| prompt.contains(marker))
        .map(|&(_, kind)| kind)
}

/// Parses the instance out of a prompt and answers with its generated trace.
fn echo_trace(prompt: &str) -> Option<String> {
    let kind = detect_kind(prompt)?;
    let marker = if kind.uses_two_graphs() { "The graph G has " } else { "The graph has " };
    let start = prompt.find(marker)?;
    let instance_text = prompt[start..].trim_end();
    let inst = parse_instance_text(instance_text, kind).ok()?;
    let trace = generate_trace(&inst).ok()?;
    Some(trace.render())
}
