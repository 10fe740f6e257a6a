"""Tests package for the OFDM code toolkit."""
