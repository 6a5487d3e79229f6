//! Build a small training corpus, write it with its manifest, and reload it.
//!
//! ```bash
//! cargo run --example build_corpus
//! ```

use graphtrace::dataset::{
    build_answer_only, build_corpus, emit_corpus, load_records, manifest_path, CorpusMode,
    CorpusSpec,
};
use graphtrace::graph::{SizeClass, TaskKind};

fn main() {
    let spec = CorpusSpec::even(
        &[TaskKind::Mis, TaskKind::Connected, TaskKind::Tsp],
        &[SizeClass::Small],
        4,
        42,
        CorpusMode::Thought,
    );
    let records = build_corpus(&spec).unwrap();
    println!("built {} records", records.len());
    println!("first record input:\n{}\n", records[0].input);
    println!("first record output:\n{}\n", records[0].output);

    let dir = std::env::temp_dir().join("graphtrace-example-corpus");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.jsonl");
    let manifest = emit_corpus(&spec, &records, &path).unwrap();
    println!("wrote {} ({} records, digest {})", path.display(), manifest.total, &manifest.digest[..12]);
    println!("manifest at {}", manifest_path(&path).display());

    let reloaded = load_records(&path).unwrap();
    assert_eq!(reloaded, records);
    println!("reload round-trips byte-exactly");

    // The same seed with answer-only supervision keeps the same instances.
    let answers = build_answer_only(&spec).unwrap();
    println!("\nanswer-only variant of the first record:\n{}", answers[0].output);
}
