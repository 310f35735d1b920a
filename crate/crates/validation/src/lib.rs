//! Holds the `acceptance` test target, which runs the end-to-end checks
//! against `apery-core` and prints one PASS/FAIL line per criterion.
