from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int
    length: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Node:
    """Base of every AST node.  The span never takes part in equality."""

    span: SourceSpan | None = field(default=None, compare=False, repr=False, kw_only=True)

    def children(self) -> tuple:
        return ()
