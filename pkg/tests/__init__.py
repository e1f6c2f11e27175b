"""Tests for the unimodal_gpa package."""
