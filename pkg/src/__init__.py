"""
fcc: closure conversion, code hoisting and CPS for a small functional language
"""
