//! Agent drivers (in progress).
