"""Krall-type orthogonal polynomials in exact arithmetic."""
