"""Interpreter for generated manifests (the bundled interp run-time system)."""
