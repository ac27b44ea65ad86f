"""Evaluation schemes for F_m(z) = int_0^1 t^(2m) exp(-z t^2) dt at complex z."""
