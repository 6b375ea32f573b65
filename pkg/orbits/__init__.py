"""
G-orbits on d-subsets and their canonical labels
"""
