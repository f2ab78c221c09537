"""
Errors and logging helpers
"""
