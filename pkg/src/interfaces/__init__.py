"""
Command-line surface of fcc
"""
