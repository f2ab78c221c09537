"""
Terms, types and binding operations shared by both languages
"""
from .names import Name, fresh, fresh_like, reset_names
from .terms import *  # noqa: F401,F403
from .syntax import alpha_eq, free_vars, freshen, is_closed, is_value, subst
