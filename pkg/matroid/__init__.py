"""
Basis-exchange kernel and derived matroid queries
"""
