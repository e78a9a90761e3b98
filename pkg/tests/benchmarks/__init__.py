"""Acceptance studies on the worked example."""
