"""
Bounded simulation and equivalence relations between programs
"""
from .relations import (
    CrossRelation, TargetRelation, TargetSubst, equiv_check, equiv_tgt_check,
    sim_check, sim_tgt_check, subst_equiv_check, synthesized_pairs,
)
from .verdicts import Related, Unknown, Unrelated, Verdict, all_of, verdict_name, verdict_to_json
