"""Tiny expression language for map definition files.

Grammar (Pratt-style, precedence ^ > unary- > * / > + -):

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := '-' factor | power
    power  := atom ('^' integer)?
    atom   := number | 'i' | variable | 'sqrt' '(' expr ')' | '(' expr ')'

Numbers are nonnegative integers (rationals are spelled p/q with the
division operator); 'i' is the imaginary unit; at most one radical per
component, never nested.  Files are 'key: value' headers followed by
'name = expr' component lines.
"""

from .algebra import GaussRat, MPoly, Q, RatFn, SqrtExpr
from .errors import CrmapsError, ParameterError
from .geometry import make_hypersurface
from .holomap import HoloMap


class ParseError(CrmapsError):
    def __init__(self, msg, line, col):
        super().__init__("%s at %d:%d" % (msg, line, col))
        self.line = line
        self.col = col


# -- AST ---------------------------------------------------------------------

class Node:
    def children(self):
        return ()

    def __eq__(self, other):
        return (type(self) is type(other) and self.key() == other.key()
                and self.children() == other.children())

    def __hash__(self):
        return hash((type(self).__name__, self.key(), self.children()))

    def key(self):
        return None


class Num(Node):
    def __init__(self, value):
        self.value = int(value)

    def key(self):
        return self.value


class Var(Node):
    def __init__(self, name):
        self.name = name

    def key(self):
        return self.name


class Imag(Node):
    pass


class Neg(Node):
    def __init__(self, arg):
        self.arg = arg

    def children(self):
        return (self.arg,)


class BinOp(Node):
    def __init__(self, op, lhs, rhs):
        self.op = op
        self.lhs = lhs
        self.rhs = rhs

    def key(self):
        return self.op

    def children(self):
        return (self.lhs, self.rhs)


class Pow(Node):
    def __init__(self, base, exp):
        self.base = base
        self.exp = int(exp)

    def key(self):
        return self.exp

    def children(self):
        return (self.base,)


class Sqrt(Node):
    def __init__(self, arg):
        self.arg = arg

    def children(self):
        return (self.arg,)


# -- lexer ---------------------------------------------------------------------

_PUNCT = set("+-*/^()")


def tokenize(text, line_no=1):
    out = []
    col = 0
    n = len(text)
    while col < n:
        ch = text[col]
        if ch.isspace():
            col += 1
            continue
        if ch in _PUNCT:
            out.append((ch, ch, line_no, col + 1))
            col += 1
            continue
        if ch.isdigit():
            start = col
            while col < n and text[col].isdigit():
                col += 1
            out.append(("num", text[start:col], line_no, start + 1))
            continue
        if ch.isalpha() or ch == "_":
            start = col
            while col < n and (text[col].isalnum() or text[col] == "_"):
                col += 1
            out.append(("ident", text[start:col], line_no, start + 1))
            continue
        raise ParseError("unexpected character %r" % ch, line_no, col + 1)
    out.append(("eof", "", line_no, n + 1))
    return out


# -- Pratt parser -----------------------------------------------------------------

_LBP = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError("expected %r, found %r" % (kind, t[1] or t[0]),
                             t[2], t[3])
        return t

    def parse(self):
        e = self.expr(0)
        t = self.peek()
        if t[0] != "eof":
            raise ParseError("trailing input %r" % t[1], t[2], t[3])
        return e

    def expr(self, rbp):
        t = self.next()
        left = self.nud(t)
        while _LBP.get(self.peek()[0], 0) > rbp:
            t = self.next()
            left = self.led(t, left)
        return left

    def nud(self, t):
        kind, val, ln, col = t
        if kind == "num":
            return Num(val)
        if kind == "ident":
            if val == "i":
                return Imag()
            if val == "sqrt":
                self.expect("(")
                arg = self.expr(0)
                self.expect(")")
                return Sqrt(arg)
            return Var(val)
        if kind == "(":
            e = self.expr(0)
            self.expect(")")
            return e
        if kind == "-":
            return Neg(self.expr(30))
        raise ParseError("unexpected token %r" % (val or kind), ln, col)

    def led(self, t, left):
        kind, val, ln, col = t
        if kind in ("+", "-", "*", "/"):
            return BinOp(kind, left, self.expr(_LBP[kind]))
        if kind == "^":
            e = self.next()
            neg = False
            if e[0] == "-":
                neg = True
                e = self.next()
            if e[0] != "num":
                raise ParseError("exponent must be an integer", e[2], e[3])
            exp = -int(e[1]) if neg else int(e[1])
            return Pow(left, exp)
        raise ParseError("unexpected operator %r" % val, ln, col)


def parse_expr(text, line_no=1):
    return _Parser(tokenize(text, line_no)).parse()


def unparse(node):
    """Canonical printing; parse(unparse(ast)) == ast."""
    def prec(n):
        if isinstance(n, (Num, Var, Imag, Sqrt)):
            return 100
        if isinstance(n, Pow):
            return 40
        if isinstance(n, Neg):
            return 30
        return _LBP[n.op]

    def wrap(child, parent_prec, strict=False):
        s = unparse(child)
        p = prec(child)
        if p < parent_prec or (strict and p == parent_prec):
            return "(" + s + ")"
        return s

    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Sqrt):
        return "sqrt(" + unparse(node.arg) + ")"
    if isinstance(node, Neg):
        return "-" + wrap(node.arg, 30, strict=True)
    if isinstance(node, Pow):
        base = wrap(node.base, 41)
        if node.exp < 0:
            return "%s^(%d)" % (base, node.exp)
        return "%s^%d" % (base, node.exp)
    if isinstance(node, BinOp):
        lhs = wrap(node.lhs, _LBP[node.op])
        rhs = wrap(node.rhs, _LBP[node.op], strict=True)
        return "%s %s %s" % (lhs, node.op, rhs)
    raise ParameterError("unknown node %r" % node)


def _eval_ast(node, table, env):
    if isinstance(node, Num):
        return RatFn.const(table, node.value)
    if isinstance(node, Imag):
        return RatFn.const(table, GaussRat.i())
    if isinstance(node, Var):
        if node.name not in env:
            raise ParameterError("unknown variable %r (declared: %s)"
                                 % (node.name, ", ".join(sorted(env))))
        return env[node.name]
    if isinstance(node, Neg):
        return -_eval_ast(node.arg, table, env)
    if isinstance(node, Sqrt):
        arg = _eval_ast(node.arg, table, env)
        if isinstance(arg, SqrtExpr):
            raise ParameterError("nested radicals are not supported")
        return SqrtExpr(RatFn.const(table, 0), RatFn.const(table, 1), arg)
    if isinstance(node, Pow):
        base = _eval_ast(node.base, table, env)
        return base ** node.exp
    lhs = _eval_ast(node.lhs, table, env)
    rhs = _eval_ast(node.rhs, table, env)
    if isinstance(lhs, SqrtExpr) or isinstance(rhs, SqrtExpr):
        like = lhs if isinstance(lhs, SqrtExpr) else rhs
        lhs = SqrtExpr.of(lhs, like) if not isinstance(lhs, SqrtExpr) else lhs
        rhs = SqrtExpr.of(rhs, like) if not isinstance(rhs, SqrtExpr) else rhs
    if node.op == "+":
        return lhs + rhs
    if node.op == "-":
        return lhs - rhs
    if node.op == "*":
        return lhs * rhs
    return lhs / rhs


class MapSpecFile:
    """Parsed .crmap file: header plus ordered component expressions."""

    def __init__(self, name, n, l, source, target, components, params=None):
        self.name = name
        self.n = n
        self.l = l
        self.source = source
        self.target = target
        self.components = components
        self.params = params or {}

    def to_holomap(self):
        src = make_hypersurface(self.source, self.n, self.l)
        tgt_n = self.n
        if self.target == "lieball_boundary":
            tgt_n = self.n + 1
        elif self.target == "X_model":
            tgt_n = self.n
        tgt = make_hypersurface(self.target, tgt_n, self.l)
        env = {nm: RatFn.var(src.table, nm) for nm in src.table.holo}
        comps = []
        for line_no, text in self.components:
            ast = parse_expr(text, line_no)
            comps.append(_eval_ast(ast, src.table, env))
        if len(comps) != tgt.ambient_dim:
            raise ParameterError("expected %d components, found %d"
                                 % (tgt.ambient_dim, len(comps)))
        return HoloMap(src, tgt, comps, name=self.name)


def parse_map(text):
    """Parse the .crmap format: 'key: value' headers, then 'name = expr' lines."""
    header = {"name": "user_map", "n": 3, "l": 1,
              "source": "hyperquadric", "target": "X_model"}
    components = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" in line and (":" not in line or line.index("=") < line.index(":")):
            lhs, rhs = line.split("=", 1)
            if not lhs.strip().isidentifier():
                raise ParseError("bad component name %r" % lhs.strip(), line_no, 1)
            parse_expr(rhs.strip(), line_no)  # surface syntax errors eagerly
            components.append((line_no, rhs.strip()))
        elif ":" in line:
            key, val = line.split(":", 1)
            key = key.strip()
            val = val.strip()
            if key in ("n", "l"):
                header[key] = int(val)
            elif key in ("name", "source", "target"):
                header[key] = val
            else:
                raise ParseError("unknown header key %r" % key, line_no, 1)
        else:
            raise ParseError("expected 'key: value' or 'name = expr'", line_no, 1)
    if not components:
        raise ParseError("no components defined", 1, 1)
    return MapSpecFile(header["name"], header["n"], header["l"],
                       header["source"], header["target"], components)
