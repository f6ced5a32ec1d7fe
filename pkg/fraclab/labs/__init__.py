"""
Executable checks of the maximum principles, boundary behaviour and the
Moser-iteration bounds, plus the Talenti family of the critical case.
"""

from .principles import (
    PrincipleVerdict, wmp_check, smp_check, BarrierResult, barrier, HopfQuotient, hopf_quotient,
    regularity_ratio, LocalBoundResult, local_bound_check,
)
from .bounds import (
    elementary_inequality_gap, InequalityFuzz, inequality_fuzz, MoserLadder, moser_ladder,
    LadderCheck, random_ladder_check, tail_smallness_level, CascadeResult, sup_bound_cascade,
)
from .talenti import (
    talenti_eval, TalentiFamily, GammaFit, talenti_fit_gamma, talenti_critical_norm,
    BlowupRow, critical_blowup_demo,
)

__all__ = [
    'PrincipleVerdict', 'wmp_check', 'smp_check', 'BarrierResult', 'barrier', 'HopfQuotient',
    'hopf_quotient', 'regularity_ratio', 'LocalBoundResult', 'local_bound_check',
    'elementary_inequality_gap', 'InequalityFuzz', 'inequality_fuzz', 'MoserLadder', 'moser_ladder',
    'LadderCheck', 'random_ladder_check', 'tail_smallness_level', 'CascadeResult', 'sup_bound_cascade',
    'talenti_eval', 'TalentiFamily', 'GammaFit', 'talenti_fit_gamma', 'talenti_critical_norm',
    'BlowupRow', 'critical_blowup_demo',
]
