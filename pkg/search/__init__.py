"""
Fixed-point search over orbit unions
"""
