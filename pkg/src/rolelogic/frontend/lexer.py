"""Tokenizer shared by all surface syntaxes."""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import ParseError
from ..span import SourceSpan

KEYWORDS = frozenset("""
    lam ex all exge let in card sumcard rtc tc comp disjoint partition acyclic
    tree image wlp exists id true false bool obj rel old modify skip spec
    assume assert begin end proc claim unary binary define universe
""".split())

# longest first so that e.g. '<=>' wins over '<='
SYMBOLS = (
    "<=>", "[]", "=>", "<=", ">=", ":=", "&&", "->",
    "{", "}", "[", "]", "(", ")", "~", "'", "&", "|", "!", "=", ",", ";",
    ".", ":", "\\",
)

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>//[^\n]*)"
    r"|(?P<index>#[0-9]+)|(?P<int>[0-9]+)"
    r"|(?P<ident>[A-Za-z_][A-Za-z0-9_]*(?:@[0-9]+)?)"
    r"|(?P<sym>" + "|".join(re.escape(s) for s in SYMBOLS) + ")"
)


@dataclass(frozen=True)
class Token:
    kind: str  # ident, keyword, int, index, sym, eof
    text: str
    span: SourceSpan

    @property
    def value(self):
        if self.kind == "int":
            return int(self.text)
        if self.kind == "index":
            return int(self.text[1:])
        return self.text


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    out = []
    pos = 0
    line = 1
    col = 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             SourceSpan(file, line, col, 1))
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "nl":
            line += 1
            col = 1
        else:
            if kind not in ("ws", "comment"):
                if kind == "ident" and lexeme in KEYWORDS:
                    kind = "keyword"
                out.append(Token(kind, lexeme, SourceSpan(file, line, col, len(lexeme))))
            col += len(lexeme)
        pos = m.end()
    out.append(Token("eof", "", SourceSpan(file, line, col, 0)))
    return out
