"""Tests for the py_bwcodes package."""
