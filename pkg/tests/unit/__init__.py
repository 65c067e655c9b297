"""Unit tests for whtrim modules."""
