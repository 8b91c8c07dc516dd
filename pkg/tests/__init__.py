"""
Test suite for majsim.
"""
