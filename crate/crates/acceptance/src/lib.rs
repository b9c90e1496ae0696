//! Holds the `acceptance` test target; run it with `cargo test -p m2causal-verify --test acceptance`.
