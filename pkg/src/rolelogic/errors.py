"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class RoleLogicError(Exception):
    """Base class for all errors raised by rolelogic."""

    span = None

    def at(self, span):
        """Attach a source location; the message gains a ``file:line:col`` prefix."""
        if span is not None and self.span is None:
            self.span = span
            self.args = (f"{span}: {self.args[0]}",) + self.args[1:] if self.args else (str(span),)
        return self


class UnboundName(RoleLogicError):
    def __init__(self, name: str):
        super().__init__(f"unbound name {name!r}")
        self.name = name


class TypeMismatch(RoleLogicError):
    def __init__(self, message: str, path: tuple = ()):
        where = "/".join(str(p) for p in path) or "<root>"
        super().__init__(f"{message} (at {where})")
        self.path = path


class StackUnderflow(RoleLogicError):
    def __init__(self, index: int, depth: int):
        super().__init__(f"index #{index} used with only {depth} bound object(s)")
        self.index = index
        self.depth = depth


class ArityMismatch(RoleLogicError):
    pass


class NotInFragment(RoleLogicError):
    def __init__(self, construct: str, path: tuple = (), fragment: str = "RL2"):
        where = "/".join(str(p) for p in path) or "<root>"
        super().__init__(f"{construct} is not allowed in {fragment} (at {where})")
        self.construct = construct
        self.path = path
        self.fragment = fragment


class TooManyFreeVars(RoleLogicError):
    pass


class AlternationViolated(RoleLogicError):
    pass


class TranslationBudgetExceeded(RoleLogicError):
    pass


class BudgetExceeded(RoleLogicError):
    pass


class UnresolvedCall(RoleLogicError):
    pass


class SeqInSpecBody(RoleLogicError):
    pass


class ProgramError(RoleLogicError):
    """Structural problem in a program: duplicate procedures, bad claims, ..."""


class DuplicateProc(ProgramError):
    pass


class UnknownClaimTarget(ProgramError):
    pass


class UnknownTag(RoleLogicError):
    pass


class NonRL2Operator(RoleLogicError):
    pass


class StructureError(RoleLogicError):
    pass


class OutOfUniverse(StructureError):
    pass


class DuplicateDecl(StructureError):
    pass


class ParseError(RoleLogicError):
    def __init__(self, message: str, span=None, expected: frozenset = frozenset()):
        text = message
        if expected:
            text += " (expected one of: " + ", ".join(sorted(expected)) + ")"
        if span is not None:
            text = f"{span}: {text}"
        super().__init__(text)
        self.span = span
        self.expected = expected
