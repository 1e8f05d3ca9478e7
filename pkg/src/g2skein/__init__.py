"""Exact evaluation of G2 webs and G2 quantum link invariants."""
