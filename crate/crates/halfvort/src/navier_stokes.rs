//! Mild-solution Picard iteration (scaffolding).
