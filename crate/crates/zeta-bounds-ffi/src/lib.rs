// Placeholder; the C interface lands once the core crate is stable.
