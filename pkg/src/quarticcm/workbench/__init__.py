"""Verification pipelines, table reproduction, isogeny tests and the CLI."""

from .report import VerificationReport
from .tables import TableRow, table1, table2, all_rows, field_of
from .verify import (verify_thm_general, verify_thm_maximal, verify_lemma_relindex,
                     table1_pipeline, enumerate_s_full_orders, omin_profile, s_contained)
from .isogeny import isogeny_test, isogeny_chain
from .primefilter import annoying_prime_filter

__all__ = [
    "VerificationReport", "TableRow", "table1", "table2", "all_rows", "field_of",
    "verify_thm_general", "verify_thm_maximal", "verify_lemma_relindex",
    "table1_pipeline", "enumerate_s_full_orders", "omin_profile", "s_contained",
    "isogeny_test", "isogeny_chain", "annoying_prime_filter",
]
