"""
Configuration dataclasses and constants
"""
