"""Test suite for qhpolytope."""
