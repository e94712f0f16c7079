"""Tests package for polytri."""
