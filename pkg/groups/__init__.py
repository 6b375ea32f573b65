"""
Finite group constructors, subgroup lattice and the group catalog
"""
