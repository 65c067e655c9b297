"""Test suite for whtrim."""
