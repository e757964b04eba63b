from __future__ import annotations

from dataclasses import dataclass

from arcc.diagnostics import SYNTAX, DiagnosticError, Location, error

OPERATORS = ("->", "&&", "||", "==", "!=", "<=", ">=",
             "{", "}", "(", ")", "<", ">", ",", ";", ".", "=", "[", "]", "/", ":", "*", "+", "-", "!")


@dataclass(frozen=True)
class Token:
    kind: str  # ID | INT | STRING | OP | EOF
    value: str
    loc: Location

    def __str__(self) -> str:
        if self.kind == "EOF":
            return "end of input"
        if self.kind == "STRING":
            return f'"{self.value}"'
        return f"'{self.value}'"


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch in " \t\r":
            i, col = i + 1, col + 1
            continue
        if text.startswith("//", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        loc = Location(file, line, col)
        if ch.isalpha() or ch == "_":
            j = i + 1
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("ID", text[i:j], loc))
        elif ch.isdigit():
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], loc))
        elif ch == '"':
            close = text.find('"', i + 1)
            newline = text.find("\n", i + 1)
            if close < 0 or (0 <= newline < close):
                raise DiagnosticError([error(SYNTAX, "unterminated string literal", loc)])
            tokens.append(Token("STRING", text[i + 1:close], loc))
            j = close + 1
        else:
            op = next((o for o in OPERATORS if text.startswith(o, i)), None)
            if op is None:
                raise DiagnosticError([error(SYNTAX, f"unexpected character {ch!r}", loc)])
            tokens.append(Token("OP", op, loc))
            j = i + len(op)
        col += j - i
        i = j
    tokens.append(Token("EOF", "", Location(file, line, col)))
    return tokens
