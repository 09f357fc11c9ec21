"""
Test initialization file for the tests package.
"""
