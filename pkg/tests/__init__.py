"""Test package for kpcrystal."""
