//! Acceptance checks (placeholder).
