"""Exception types shared across the package."""

from __future__ import annotations


class RealizerError(Exception):
    """Base class for all package errors."""


class ParseError(RealizerError):
    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(message if pos is None else f"{message} (at offset {pos})")


class ArityError(RealizerError):
    pass


def _path_str(path) -> str:
    return "root" if not path else ".".join(str(i) for i in path)


class CheckError(RealizerError):
    """Proof-tree rejection; carries the path of premise indices from the root."""

    def __init__(self, path, reason: str):
        self.path = tuple(path)
        self.reason = reason
        super().__init__(f"at node {_path_str(self.path)}: {reason}")


class RuleMismatch(CheckError):
    pass


class EigenvariableViolation(CheckError):
    pass


class UnsupportedAxiom(RealizerError):
    def __init__(self, interp: str, schema: str, detail: str = ""):
        self.interp = interp
        self.schema = schema
        msg = f"interpretation '{interp}' has no realizer for axiom '{schema}'"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class NotTyped(RealizerError):
    pass


class NotApplicable(RealizerError):
    pass


class UnsupportedPredicate(RealizerError):
    pass


class IllTyped(RealizerError):
    pass


class EvalStuck(RealizerError):
    pass
