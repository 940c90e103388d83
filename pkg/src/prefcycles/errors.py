"""Exception hierarchy shared by every module.

Errors that carry evidence keep it in ``certificate`` so callers (and the CLI)
can replay or serialise the failing case.
"""

from __future__ import annotations

from typing import Any


class PrefCyclesError(Exception):
    kind = "error"

    def __init__(self, message: str, certificate: Any = None):
        super().__init__(message)
        self.certificate = certificate

    def to_json(self) -> dict:
        out = {"error": self.kind, "message": str(self)}
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


class DomainError(PrefCyclesError, ValueError):
    kind = "domain"


class UnsupportedSizeError(DomainError):
    kind = "unsupported-size"


class SemanticError(PrefCyclesError, ValueError):
    kind = "semantic"


class ConstructionError(PrefCyclesError, ValueError):
    kind = "construction"


class PreconditionError(PrefCyclesError):
    kind = "precondition"


class NonSurfaceError(PreconditionError):
    kind = "non-surface"


class ResourceError(PrefCyclesError):
    kind = "resource"


class LemmaViolation(PrefCyclesError):
    kind = "lemma-violation"
