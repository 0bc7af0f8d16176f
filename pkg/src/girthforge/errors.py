"""Error hierarchy with machine-readable codes.

Three categories, mapped to CLI exit codes:

* ``InputError`` (exit 2): the request itself is malformed or violates a
  precondition.
* ``CheckFailure`` (exit 1): a verification ran to completion and the
  object failed it.
* ``BudgetError`` (exit 3): the computation would exceed a declared
  size/time budget, or a randomized search exhausted its retries.

Each exception carries a stable ``code`` string plus a payload dict so
the CLI can emit structured JSON on stderr.
"""

from __future__ import annotations


class GirthforgeError(Exception):
    code = "ERROR"
    exit_code = 1

    def __init__(self, message: str = "", **payload):
        self.payload = payload
        detail = message or self.code
        if payload:
            extras = ", ".join(f"{k}={v!r}" for k, v in sorted(payload.items()))
            detail = f"{detail} ({extras})"
        super().__init__(detail)

    def to_json(self) -> dict:
        return {"error": self.code, **self.payload}


class InputError(GirthforgeError):
    code = "INPUT"
    exit_code = 2


class CheckFailure(GirthforgeError):
    code = "CHECK_FAILED"
    exit_code = 1


class BudgetError(GirthforgeError):
    code = "BUDGET"
    exit_code = 3


class BadSize(InputError):
    code = "BAD_SIZE"


class SizeMismatch(InputError):
    code = "SIZE_MISMATCH"


class LevelMismatch(InputError):
    code = "LEVEL_MISMATCH"


class TooFewCopies(InputError):
    code = "TOO_FEW_COPIES"


class NotBijection(InputError):
    code = "NOT_BIJECTION"


class StructureUnknown(InputError):
    code = "STRUCTURE_UNKNOWN"


class MissingSubset(InputError):
    code = "MISSING_SUBSET"


class IsolatedVertex(InputError):
    code = "ISOLATED_VERTEX"


class FieldTooSmall(InputError):
    code = "FIELD_TOO_SMALL"


class NotRegular(CheckFailure):
    code = "NOT_REGULAR"


class NotBipartite(CheckFailure):
    code = "NOT_BIPARTITE"


class WitnessFailure(CheckFailure):
    code = "WITNESS_FAILURE"


class UncoveredEdge(CheckFailure):
    code = "UNCOVERED_EDGE"


class LoadMismatch(CheckFailure):
    code = "LOAD_MISMATCH"


class NonuniformShare(CheckFailure):
    code = "NONUNIFORM_SHARE"


class SizeLimit(BudgetError):
    code = "SIZE_LIMIT"


class BudgetExceeded(BudgetError):
    code = "BUDGET_EXCEEDED"


class RetriesExhausted(BudgetError):
    code = "RETRIES_EXHAUSTED"


class InfeasibleAtBudget(BudgetError):
    code = "INFEASIBLE_AT_BUDGET"
