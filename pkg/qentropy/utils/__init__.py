"""
Shared utilities: the exception hierarchy and seeded random streams.
"""
