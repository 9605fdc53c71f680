"""
Tests for spinnet.
"""
