"""
Program generation, shrinking and differential testing of the passes
"""
from .corpus import default_corpus, source_corpus, target_corpus
from .differential import Counterexample, Report, apply_pass, compare, differential_run, report_json
from .generator import TermGenerator, gen_case, gen_open, gen_scoped, gen_typed
from .shrinker import shrink
