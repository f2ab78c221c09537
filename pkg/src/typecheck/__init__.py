"""
Type checking, type translation and context strengthening
"""
from .checker import translate_type, type_of_src, type_of_tgt
from .context import EMPTY, TypingCtx, prune_ctx
