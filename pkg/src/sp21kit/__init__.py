"""Case analysis for quaternionic Kleinian groups in Sp(2,1) whose
elements all have complex traces."""

from .classify import PairCase, pair_case, pair_case_oracle, qiq_case, qiq_closed_forms
from .decision import (CaseReport, Case3Structure, FrameCertificate, decide,
                       lemma32_solve, mixed_products, verify_certificate)
from .errors import Sp21Error
from .fixtures import (FalsificationReport, FixtureSpec, falsify_lemma31,
                       make_case32_matrix, make_fixture)
from .kleinian import (GeneratorSet, LoxodromicData, TraceAuditReport, Word,
                       lemma31_check, loxodromic_extract, trace_audit, word_eval)
from .linalg import (FORM_J, HoroCoords, QMat3, QVec3, VectorSign, herm_inner,
                     is_sp21, psi, psi_inverse, random_sp21, sp_inverse,
                     structure_identities, vector_sign)
from .quat import DEFAULT_TOL, EXACT, Quat, Tolerance, from_complex

__version__ = "0.1.0"

__all__ = [
    "CaseReport", "Case3Structure", "DEFAULT_TOL", "EXACT",
    "FalsificationReport", "FixtureSpec", "FORM_J", "FrameCertificate",
    "GeneratorSet", "HoroCoords", "LoxodromicData", "PairCase", "QMat3",
    "QVec3", "Quat", "Sp21Error", "Tolerance", "TraceAuditReport",
    "VectorSign", "Word", "decide", "falsify_lemma31", "from_complex",
    "herm_inner", "is_sp21", "lemma31_check", "lemma32_solve",
    "loxodromic_extract", "make_case32_matrix", "make_fixture",
    "mixed_products", "pair_case", "pair_case_oracle", "psi", "psi_inverse",
    "qiq_case", "qiq_closed_forms", "random_sp21", "sp_inverse",
    "structure_identities", "trace_audit", "vector_sign",
    "verify_certificate", "word_eval",
]
