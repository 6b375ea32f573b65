"""
Named checks and worked-example data
"""
