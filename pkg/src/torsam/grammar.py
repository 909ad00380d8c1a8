"""Line-oriented text format for rings and modules.

    field 32003
    ring R = k[x,y] / (x^2, xy)
    module M over R = coker deg(0,0) [[x, y], [0, x]]

Rows of the matrix correspond to generators and columns to relations;
`[]` (or rows of length 0) gives a free module. `#` starts a comment.
"""

import re

from .module import Module
from .poly import DEFAULT_P, format_poly, default_characteristic
from .ring import GradedRing


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.message = message


class Document:
    def __init__(self, field):
        self.field = field
        self.rings = {}
        self.modules = {}

    def ring(self, name=None):
        if name is None:
            return next(iter(self.rings.values()))
        return self.rings[name]

    def module(self, name=None):
        if name is None:
            return next(iter(self.modules.values()))
        return self.modules[name]


# --- polynomial expressions ------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


class _Expr:
    def __init__(self, text, P, line, col0):
        self.P = P
        self.line = line
        self.col0 = col0
        self.toks = []
        names = sorted(P.names, key=len, reverse=True)
        for m in _TOKEN.finditer(text):
            col = col0 + m.start(m.lastindex)
            num, ident, sym = m.groups()
            if num is not None:
                self.toks.append(("num", int(num), col))
            elif ident is not None:
                pos = 0
                while pos < len(ident):
                    for nm in names:
                        if ident.startswith(nm, pos):
                            self.toks.append(("var", P.names.index(nm), col + pos))
                            pos += len(nm)
                            break
                    else:
                        raise ParseError(f"unknown variable in '{ident}'", line, col + pos)
            elif sym.strip():
                if sym not in "+-*^()":
                    raise ParseError(f"unexpected character '{sym}'", line, col)
                self.toks.append(("sym", sym, col))
        self.i = 0
        self.end_col = col0 + len(text)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, self.end_col)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def error(self, msg):
        raise ParseError(msg, self.line, self.peek()[2])

    def parse(self):
        if not self.toks:
            self.error("empty polynomial")
        f = self.expr()
        if self.i != len(self.toks):
            self.error("unexpected input")
        return f

    def expr(self):
        f = self.term()
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self):
        neg = False
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            if self.take()[1] == "-":
                neg = not neg
        f = self.power()
        while True:
            kind, val, _ = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                f = f * self.power()
            elif kind in ("num", "var") or (kind == "sym" and val == "("):
                f = f * self.power()
            else:
                break
        return -f if neg else f

    def power(self):
        f = self.atom()
        if self.peek()[0] == "sym" and self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.peek()
            if kind != "num":
                self.error("exponent must be a non-negative integer")
            self.take()
            f = f ** val
        return f

    def atom(self):
        kind, val, col = self.take()
        if kind == "num":
            return self.P.const(val)
        if kind == "var":
            return self.P.var(val)
        if kind == "sym" and val == "(":
            f = self.expr()
            k2, v2, _ = self.take()
            if k2 != "sym" or v2 != ")":
                raise ParseError("missing ')'", self.line, col)
            return f
        raise ParseError("expected a number, variable or '('", self.line, col)


def parse_poly(text, P, line=1, col=1):
    return _Expr(text, P, line, col).parse()


# --- helpers for comma lists with brackets -----------------------------------

def _split_top(text, col0, line, sep=","):
    """Split on separators not nested in brackets; returns (piece, col) pairs."""
    out, depth, start = [], 0, 0
    for k, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced bracket", line, col0 + k)
        elif ch == sep and depth == 0:
            out.append((text[start:k], col0 + start))
            start = k + 1
    if depth != 0:
        raise ParseError("unbalanced bracket", line, col0 + len(text))
    out.append((text[start:], col0 + start))
    return out


def _strip(piece, col):
    lead = len(piece) - len(piece.lstrip())
    return piece.strip(), col + lead


_FIELD = re.compile(r"field\s+(\S+)\s*$")
_RING = re.compile(r"ring\s+([A-Za-z_]\w*)\s*=\s*([A-Za-z_]\w*)\s*\[([^\]]*)\]\s*(?:/\s*\((.*)\))?\s*$")
_MODULE = re.compile(r"module\s+([A-Za-z_]\w*)\s+over\s+([A-Za-z_]\w*)\s*=\s*coker\s+deg\s*\(([^)]*)\)\s*(\[.*\])\s*$")


def parse_input(text, field=None):
    """Parse a document; returns a Document with rings and modules by name."""
    p = field if field is not None else default_characteristic()
    doc = Document(p)
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        body = line.lstrip()
        if not body:
            continue
        indent = len(line) - len(body)
        col = indent + 1
        if body.startswith("field"):
            m = _FIELD.match(body)
            if not m or not m.group(1).isdigit():
                raise ParseError("expected 'field <prime>'", ln, col)
            q = int(m.group(1))
            from .poly import is_prime
            if not is_prime(q):
                raise ParseError(f"{q} is not prime", ln, col + m.start(1))
            if q >= 2**31:
                raise ParseError("characteristic too large", ln, col + m.start(1))
            doc.field = q
        elif body.startswith("ring"):
            m = _RING.match(body)
            if not m:
                raise ParseError("expected 'ring <Name> = k[<vars>] / (<relations>)'", ln, col)
            name, _, vars_text, rel_text = m.groups()
            names = [v.strip() for v in vars_text.split(",")]
            if not names or any(not re.fullmatch(r"[A-Za-z_]\w*", v) for v in names):
                raise ParseError("bad variable list", ln, col + m.start(3))
            if len(set(names)) != len(names):
                raise ParseError("repeated variable name", ln, col + m.start(3))
            base = GradedRing(names, (), doc.field)
            rels = []
            if rel_text is not None and rel_text.strip():
                for piece, pc in _split_top(rel_text, col + m.start(4), ln):
                    piece, pc = _strip(piece, pc)
                    f = parse_poly(piece, base.P, ln, pc)
                    if not f.is_homogeneous():
                        raise ParseError(f"relation {piece} is not homogeneous", ln, pc)
                    if not f.is_zero() and f.degree() < 2:
                        raise ParseError(f"relation {piece} has degree < 2", ln, pc)
                    rels.append(f)
            doc.rings[name] = GradedRing(names, rels, doc.field, name=name)
        elif body.startswith("module"):
            m = _MODULE.match(body)
            if not m:
                raise ParseError("expected 'module <Name> over <Ring> = coker deg(...) [[...]]'", ln, col)
            name, rname, deg_text, mat_text = m.groups()
            if rname not in doc.rings:
                raise ParseError(f"unknown ring {rname}", ln, col + m.start(2))
            R = doc.rings[rname]
            try:
                degs = [int(d) for d in deg_text.split(",") if d.strip()]
            except ValueError:
                raise ParseError("generator degrees must be integers", ln, col + m.start(3)) from None
            if not degs:
                raise ParseError("a module needs at least one generator", ln, col + m.start(3))
            rows = _parse_matrix(mat_text, R, ln, col + m.start(4))
            if rows == []:
                rows = [[] for _ in degs]
            if len(rows) != len(degs):
                raise ParseError(f"{len(rows)} matrix rows for {len(degs)} generators", ln, col + m.start(4))
            ncols = {len(r) for r in rows}
            if len(ncols) > 1:
                raise ParseError("matrix rows have different lengths", ln, col + m.start(4))
            for r in rows:
                for f, fc in r:
                    if not f.is_homogeneous():
                        raise ParseError("matrix entry is not homogeneous", ln, fc)
            try:
                M = Module.from_rows(R, degs, [[f for f, _ in r] for r in rows], name=name)
            except ValueError as e:
                raise ParseError(str(e), ln, col + m.start(4)) from None
            doc.modules[name] = M
        else:
            raise ParseError("expected 'field', 'ring' or 'module'", ln, col)
    return doc


def _parse_matrix(text, R, ln, col):
    text_s, col = _strip(text, col)
    if not (text_s.startswith("[") and text_s.endswith("]")):
        raise ParseError("matrix must be enclosed in [ ]", ln, col)
    inner = text_s[1:-1]
    if not inner.strip():
        return []
    rows = []
    for piece, pc in _split_top(inner, col + 1, ln):
        piece, pc = _strip(piece, pc)
        if not (piece.startswith("[") and piece.endswith("]")):
            raise ParseError("each matrix row must be enclosed in [ ]", ln, pc)
        body = piece[1:-1]
        row = []
        if body.strip():
            for ent, ec in _split_top(body, pc + 1, ln):
                ent, ec = _strip(ent, ec)
                row.append((parse_poly(ent, R.P, ln, ec), ec))
        rows.append(row)
    return rows


# --- formatting ------------------------------------------------------------

def format_ring(R):
    head = f"ring {R.name} = k[{','.join(R.names)}]"
    if R.relations:
        head += " / (" + ", ".join(format_poly(f) for f in R.relations) + ")"
    return head


def format_module(M, ring_name=None):
    rn = ring_name or M.ring.name
    M = M.explicit()
    rows = M.rows()
    body = "[" + ", ".join("[" + ", ".join(format_poly(f) for f in row) + "]" for row in rows) + "]"
    if not M.columns:
        body = "[]"
    return f"module {M.name} over {rn} = coker deg({','.join(str(a) for a in M.degrees)}) {body}"


def format_document(rings=(), modules=(), field=None):
    lines = []
    p = field or (rings[0].p if rings else DEFAULT_P)
    lines.append(f"field {p}")
    for R in rings:
        lines.append(format_ring(R))
    for M in modules:
        lines.append(format_module(M))
    return "\n".join(lines) + "\n"
