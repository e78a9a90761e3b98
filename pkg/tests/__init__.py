"""Test suite for shockwkb."""
