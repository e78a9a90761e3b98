"""Unit tests for the expression language, asymptotics and verification layers."""
