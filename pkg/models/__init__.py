"""
Data models for groups, orbits, basis families, searches and checks
"""
