"""Boolean expression AST, parser, evaluator, and printer.

Grammar (text form):

    expr    := term ('+' term)*                 OR
    term    := factor (AND? factor)*            AND: juxtaposition, '*', '.', '·'
    factor  := '!' factor | primary "'"*        NOT: prefix '!' or postfix apostrophe
    primary := NAME | '0' | '1' | '(' expr ')'

Precedence NOT > AND > OR. The postfix apostrophe binds to the immediately
preceding variable, constant, or parenthesized group. Double negation is
removed while parsing; no other rewriting happens, so the tree mirrors the
text.

Two identifier modes:
  * single-letter (default): every letter is its own variable, so "AB'C"
    is the product A · B' · C;
  * multi-letter: identifiers are [A-Za-z][A-Za-z0-9_]* and AND must be
    written explicitly ('*', '.', or '·') because "AB" would be ambiguous.

Constants 0/1 are standalone tokens; a digit touching a letter is a syntax
error in single-letter mode (and part of the identifier in multi-letter
mode).
"""

from dataclasses import dataclass

from .errors import FormatError, ParseError

_AND_CHARS = {"*", ".", "·"}  # '·' appears in printed POS equations


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def __post_init__(self):
        if not self.name or not self.name[0].isalpha():
            raise ValueError(f"variable name must start with a letter: {self.name!r}")
        if not all(c.isalnum() or c == "_" for c in self.name):
            raise ValueError(f"bad character in variable name: {self.name!r}")


@dataclass(frozen=True)
class Const(Expr):
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise ValueError(f"constant must be 0 or 1, got {self.value!r}")


@dataclass(frozen=True)
class Not(Expr):
    child: Expr

    def __post_init__(self):
        if not isinstance(self.child, Expr):
            raise TypeError("Not child must be an Expr")


@dataclass(frozen=True, init=False)
class And(Expr):
    children: tuple

    def __init__(self, *children):
        object.__setattr__(self, "children", _flatten(And, children))


@dataclass(frozen=True, init=False)
class Or(Expr):
    children: tuple

    def __init__(self, *children):
        object.__setattr__(self, "children", _flatten(Or, children))


def _flatten(kind, children):
    # n-ary nodes stay flat: And(And(a,b),c) == And(a,b,c)
    flat = []
    for c in children:
        if not isinstance(c, Expr):
            raise TypeError(f"{kind.__name__} operand must be an Expr, got {c!r}")
        if isinstance(c, kind):
            flat.extend(c.children)
        else:
            flat.append(c)
    if len(flat) < 2:
        raise ValueError(f"{kind.__name__} needs at least two operands")
    return tuple(flat)


# ---------------------------------------------------------------------------
# Tokenizer


_NAME = "name"
_CONST = "const"
_PLUS = "+"
_STAR = "*"
_BANG = "!"
_PRIME = "'"
_LPAREN = "("
_RPAREN = ")"
_END = "end"


def _tokenize(text, multi_letter):
    """Yield (kind, text, byte_offset) triples; offsets are UTF-8 byte positions."""
    tokens = []
    i = 0
    byte_pos = 0
    n = len(text)
    while i < n:
        ch = text[i]
        start = byte_pos
        if ch.isspace():
            i += 1
            byte_pos += len(ch.encode("utf-8"))
            continue
        if ch.isalpha():
            if multi_letter:
                j = i + 1
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                name = text[i:j]
                byte_pos += len(name.encode("utf-8"))
                i = j
            else:
                # each letter is its own variable; a digit glued to it is an error
                if i + 1 < n and text[i + 1].isdigit():
                    raise ParseError(
                        f"digit adjacent to variable {ch!r}; constants must stand alone",
                        start,
                    )
                name = ch
                i += 1
                byte_pos += len(ch.encode("utf-8"))
            tokens.append((_NAME, name, start))
        elif ch in "01":
            if not multi_letter and i + 1 < n and text[i + 1].isalpha():
                raise ParseError(
                    f"letter adjacent to constant {ch!r}; constants must stand alone",
                    start,
                )
            tokens.append((_CONST, ch, start))
            i += 1
            byte_pos += 1
        elif ch == "+":
            tokens.append((_PLUS, ch, start))
            i += 1
            byte_pos += 1
        elif ch in _AND_CHARS:
            tokens.append((_STAR, ch, start))
            i += 1
            byte_pos += len(ch.encode("utf-8"))
        elif ch == "!":
            tokens.append((_BANG, ch, start))
            i += 1
            byte_pos += 1
        elif ch == "'":
            tokens.append((_PRIME, ch, start))
            i += 1
            byte_pos += 1
        elif ch == "(":
            tokens.append((_LPAREN, ch, start))
            i += 1
            byte_pos += 1
        elif ch == ")":
            tokens.append((_RPAREN, ch, start))
            i += 1
            byte_pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", start)
    tokens.append((_END, "", byte_pos))
    return tokens


_FACTOR_START = (_NAME, _CONST, _LPAREN, _BANG)


class _Parser:
    def __init__(self, tokens, multi_letter):
        self.tokens = tokens
        self.pos = 0
        self.multi_letter = multi_letter

    @property
    def cur(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def parse_or(self):
        terms = [self.parse_and()]
        while self.cur[0] == _PLUS:
            self.advance()
            terms.append(self.parse_and())
        return terms[0] if len(terms) == 1 else Or(*terms)

    def parse_and(self):
        factors = [self.parse_factor()]
        while True:
            kind, _, offset = self.cur
            if kind == _STAR:
                self.advance()
                factors.append(self.parse_factor())
            elif kind in _FACTOR_START:
                if self.multi_letter:
                    raise ParseError(
                        "missing AND operator (multi-letter mode requires '*')", offset
                    )
                factors.append(self.parse_factor())
            else:
                break
        return factors[0] if len(factors) == 1 else And(*factors)

    def parse_factor(self):
        if self.cur[0] == _BANG:
            self.advance()
            return _negate(self.parse_factor())
        expr = self.parse_primary()
        while self.cur[0] == _PRIME:
            self.advance()
            expr = _negate(expr)
        return expr

    def parse_primary(self):
        kind, text, offset = self.advance()
        if kind == _NAME:
            return Var(text)
        if kind == _CONST:
            return Const(int(text))
        if kind == _LPAREN:
            expr = self.parse_or()
            kind, _, off2 = self.cur
            if kind != _RPAREN:
                raise ParseError("unbalanced parentheses: expected ')'", off2)
            self.advance()
            return expr
        if kind == _RPAREN:
            raise ParseError("unbalanced parentheses: unexpected ')'", offset)
        if kind == _END:
            raise ParseError("empty operand: unexpected end of expression", offset)
        raise ParseError(f"empty operand: unexpected {text!r}", offset)


def _negate(expr):
    # the only parse-time simplification: NOT NOT x == x
    if isinstance(expr, Not):
        return expr.child
    return Not(expr)


def parse_expression(text, multi_letter=False):
    """Parse a Boolean expression; raises ParseError with a byte offset."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    parser = _Parser(_tokenize(text, multi_letter), multi_letter)
    expr = parser.parse_or()
    kind, tok, offset = parser.cur
    if kind != _END:
        raise ParseError(f"unexpected trailing token {tok!r}", offset)
    return expr


# ---------------------------------------------------------------------------
# Evaluation and inspection


def evaluate(expr, assignment):
    """Evaluate under a {name: 0/1} assignment; unbound variables raise ValueError."""
    if isinstance(expr, Var):
        try:
            return 1 if assignment[expr.name] else 0
        except KeyError:
            raise ValueError(f"unbound variable '{expr.name}'") from None
    if isinstance(expr, Const):
        return expr.value
    if isinstance(expr, Not):
        return 1 - evaluate(expr.child, assignment)
    if isinstance(expr, And):
        result = 1
        for c in expr.children:
            result &= evaluate(c, assignment)
        return result
    if isinstance(expr, Or):
        result = 0
        for c in expr.children:
            result |= evaluate(c, assignment)
        return result
    raise TypeError(f"not an Expr: {expr!r}")


def variables(expr):
    """Distinct variable names in first-appearance (left-to-right) order."""
    order = []
    seen = set()

    def walk(e):
        if isinstance(e, Var):
            if e.name not in seen:
                seen.add(e.name)
                order.append(e.name)
        elif isinstance(e, Not):
            walk(e.child)
        elif isinstance(e, (And, Or)):
            for c in e.children:
                walk(c)

    walk(expr)
    return tuple(order)


# ---------------------------------------------------------------------------
# Printing


def format_expression(expr):
    """Canonical text: apostrophe NOT, juxtaposed AND, '+' OR, minimal parens.

    Round-trips through parse_expression for any parsed tree. When the
    expression contains multi-letter names, AND is written with '*' and the
    result parses back under multi_letter=True.
    """
    multi = any(len(name) > 1 for name in variables(expr))
    return _render(expr, multi)


def _render(expr, multi):
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, Not):
        child = expr.child
        if isinstance(child, (Var, Const)):
            return _render(child, multi) + "'"
        return "(" + _render(child, multi) + ")'"
    if isinstance(expr, And):
        parts = []
        for c in expr.children:
            text = _render(c, multi)
            if isinstance(c, Or):
                text = "(" + text + ")"
            parts.append(text)
        if multi:
            return "*".join(parts)
        return _join_juxtaposed(parts)
    if isinstance(expr, Or):
        return " + ".join(_render(c, multi) for c in expr.children)
    raise TypeError(f"not an Expr: {expr!r}")


def _join_juxtaposed(parts):
    # insert '*' where plain juxtaposition would glue a constant to a letter
    out = [parts[0]]
    for part in parts[1:]:
        prev, nxt = out[-1][-1], part[0]
        if (prev.isalpha() and nxt.isdigit()) or (prev.isdigit() and nxt.isalpha()):
            out.append("*")
        out.append(part)
    return "".join(out)


# ---------------------------------------------------------------------------
# Equation files: one "NAME = expr" per line, '#' starts a comment.


def parse_equations(text, multi_letter=False):
    """Read an equation file into an ordered list of (name, Expr) pairs."""
    equations = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise FormatError(f"line {lineno}: expected 'NAME = expression'")
        name, _, body = line.partition("=")
        name = name.strip()
        if not name or not name[0].isalpha() or not all(
            c.isalnum() or c == "_" for c in name
        ):
            raise FormatError(f"line {lineno}: bad equation name {name!r}")
        if name in seen:
            raise FormatError(f"line {lineno}: duplicate equation name {name!r}")
        seen.add(name)
        try:
            expr = parse_expression(body, multi_letter=multi_letter)
        except ParseError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
        equations.append((name, expr))
    return equations
