"""
Call-by-value evaluators for the source and target languages
"""
from .evaluator import (
    EvalResult, Stepper, Stuck, Timeout, Value, eval_src, eval_tgt, evaluate,
    step_src, step_tgt, stepper_for,
)
