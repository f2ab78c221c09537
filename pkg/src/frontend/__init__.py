"""
S-expression parsing and printing for both languages
"""
from .sexp import (
    parse_hoisted, parse_src, parse_tgt, parse_type, print_hoisted, print_src,
    print_term, print_tgt, print_type,
)
