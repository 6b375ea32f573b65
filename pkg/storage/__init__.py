"""
Settings and JSON / Cayley-table document storage
"""
