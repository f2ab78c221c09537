"""
Closure conversion, code hoisting and CPS transformation
"""
from .closure_conversion import VarMap, cc, closure_convert, fvars, mapenv, mapvar, open_apply
from .cps import (
    DynamicCont, IDENTITY, MetaCont, StaticCont, count_administrative_redexes, cps,
    cps_program, cps_type, cps_with_tags,
)
from .hoisting import hoist, reify
