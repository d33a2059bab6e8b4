//! Scoring and statistics (in progress).
