//! Entanglement entropies (placeholder).
