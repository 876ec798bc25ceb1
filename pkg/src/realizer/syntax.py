"""Syntax of the source theory: terms, formulas, parsing, substitution.

Terms are built from zero and successor only, so closed terms are exactly
the numerals.  Formulas use four predicate symbols (falsity, N, =, st) and
the connectives and/implies/exists/forall.  Disjunction, negation and the
qualified quantifiers exist only as surface sugar and are expanded before
a Formula is ever constructed.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sexpr
from .errors import ArityError, ParseError

# ---------------------------------------------------------------------------
# Terms


class SrcTerm:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Var(SrcTerm):
    name: str


@dataclass(frozen=True, slots=True)
class Zero(SrcTerm):
    pass


@dataclass(frozen=True, slots=True)
class Succ(SrcTerm):
    arg: SrcTerm


ZERO = Zero()


def num(n: int) -> SrcTerm:
    t: SrcTerm = ZERO
    for _ in range(n):
        t = Succ(t)
    return t


def term_value(t: SrcTerm) -> int:
    """Numeric value of a closed term."""
    n = 0
    while isinstance(t, Succ):
        n += 1
        t = t.arg
    if not isinstance(t, Zero):
        raise ValueError(f"term is not closed: {term_to_text(t)}")
    return n


def term_free_vars(t: SrcTerm) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset((t.name,))
    if isinstance(t, Succ):
        return term_free_vars(t.arg)
    return frozenset()


def term_subst(t: SrcTerm, x: str, s: SrcTerm) -> SrcTerm:
    if isinstance(t, Var):
        return s if t.name == x else t
    if isinstance(t, Succ):
        return Succ(term_subst(t.arg, x, s))
    return t


# ---------------------------------------------------------------------------
# Predicates and formulas

FALSITY = "falsity"
NAT = "nat"
EQ = "eq"
ST = "st"

PRED_ARITY = {FALSITY: 0, NAT: 1, EQ: 2, ST: 1}


class Formula:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    pred: str
    args: tuple[SrcTerm, ...]

    def __post_init__(self):
        if self.pred not in PRED_ARITY:
            raise ArityError(f"unknown predicate {self.pred!r}")
        if len(self.args) != PRED_ARITY[self.pred]:
            raise ArityError(
                f"predicate {self.pred!r} expects {PRED_ARITY[self.pred]} "
                f"arguments, got {len(self.args)}"
            )


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    var: str
    body: Formula


BOT = Atom(FALSITY, ())


def nat(t: SrcTerm) -> Formula:
    return Atom(NAT, (t,))


def eq(a: SrcTerm, b: SrcTerm) -> Formula:
    return Atom(EQ, (a, b))


def st(t: SrcTerm) -> Formula:
    return Atom(ST, (t,))


def neg(a: Formula) -> Formula:
    return Imp(a, BOT)


def free_vars(a: Formula) -> frozenset[str]:
    if isinstance(a, Atom):
        out: frozenset[str] = frozenset()
        for t in a.args:
            out |= term_free_vars(t)
        return out
    if isinstance(a, (And, Imp)):
        return free_vars(a.left) | free_vars(a.right)
    if isinstance(a, (Exists, Forall)):
        return free_vars(a.body) - {a.var}
    raise TypeError(a)


def all_names(a: Formula) -> frozenset[str]:
    """Every variable name occurring in *a*, free or bound."""
    if isinstance(a, Atom):
        out: frozenset[str] = frozenset()
        for t in a.args:
            out |= term_free_vars(t)
        return out
    if isinstance(a, (And, Imp)):
        return all_names(a.left) | all_names(a.right)
    if isinstance(a, (Exists, Forall)):
        return all_names(a.body) | {a.var}
    raise TypeError(a)


def fresh_name(base: str, avoid) -> str:
    """Smallest of base, base1, base2, ... not in *avoid*."""
    if base not in avoid:
        return base
    k = 1
    while f"{base}{k}" in avoid:
        k += 1
    return f"{base}{k}"


def substitute(a: Formula, x: str, t: SrcTerm) -> Formula:
    """Capture-avoiding substitution a[t/x]."""
    if isinstance(a, Atom):
        return Atom(a.pred, tuple(term_subst(u, x, t) for u in a.args))
    if isinstance(a, And):
        return And(substitute(a.left, x, t), substitute(a.right, x, t))
    if isinstance(a, Imp):
        return Imp(substitute(a.left, x, t), substitute(a.right, x, t))
    if isinstance(a, (Exists, Forall)):
        cls = type(a)
        if a.var == x or x not in free_vars(a.body):
            return a
        if a.var in term_free_vars(t):
            new = fresh_name(a.var, term_free_vars(t) | all_names(a.body) | {x})
            body = substitute(a.body, a.var, Var(new))
            return cls(new, substitute(body, x, t))
        return cls(a.var, substitute(a.body, x, t))
    raise TypeError(a)


def alpha_canon(a: Formula, _env=None, _depth: int = 0) -> Formula:
    """Rename bound variables to canonical depth-indexed names."""
    env = _env or {}
    if isinstance(a, Atom):
        def ren(t: SrcTerm) -> SrcTerm:
            if isinstance(t, Var):
                return Var(env.get(t.name, t.name))
            if isinstance(t, Succ):
                return Succ(ren(t.arg))
            return t
        return Atom(a.pred, tuple(ren(t) for t in a.args))
    if isinstance(a, (And, Imp)):
        cls = type(a)
        return cls(alpha_canon(a.left, env, _depth), alpha_canon(a.right, env, _depth))
    if isinstance(a, (Exists, Forall)):
        cls = type(a)
        canon = f"b.{_depth}"
        return cls(canon, alpha_canon(a.body, {**env, a.var: canon}, _depth + 1))
    raise TypeError(a)


def alpha_eq(a: Formula, b: Formula) -> bool:
    return alpha_canon(a) == alpha_canon(b)


# ---------------------------------------------------------------------------
# Concrete syntax

_RESERVED = {
    "0", "s", "N", "st", "=", "and", "->", "ex", "all",
    "⊥", "bot", "exN", "allN", "exSt", "allSt", "or", "not",
    "seq", "claim", "rule", "axiom",
}


def _check_var(name, where: str) -> str:
    if not isinstance(name, str) or name in _RESERVED or "." in name:
        raise ParseError(f"invalid variable name {sexpr.to_text(name)!r} in {where}")
    return name


def term_from_sexpr(sx) -> SrcTerm:
    if sx == "0":
        return ZERO
    if isinstance(sx, str):
        return Var(_check_var(sx, "term"))
    if isinstance(sx, tuple) and len(sx) == 2 and sx[0] == "s":
        return Succ(term_from_sexpr(sx[1]))
    raise ParseError(f"bad term: {sexpr.to_text(sx)}")


def term_to_sexpr(t: SrcTerm):
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Succ):
        return ("s", term_to_sexpr(t.arg))
    raise TypeError(t)


def term_to_text(t: SrcTerm) -> str:
    return sexpr.to_text(term_to_sexpr(t))


def _sugar_vars(sx) -> set[str]:
    """Identifiers occurring anywhere in a surface expression."""
    if isinstance(sx, str):
        return set() if sx in _RESERVED else {sx}
    out: set[str] = set()
    for x in sx:
        out |= _sugar_vars(x)
    return out


def desugar(sx):
    """Expand sugar forms into the core grammar; idempotent."""
    if isinstance(sx, str):
        return sx
    if not sx:
        raise ParseError("empty expression")
    head = sx[0]
    if head in ("exN", "allN", "exSt", "allSt"):
        if len(sx) != 3:
            raise ParseError(f"{head} expects a variable and a body")
        var = sx[1]
        body = desugar(sx[2])
        guard = ("N", var) if head in ("exN", "allN") else ("st", var)
        if head in ("exN", "exSt"):
            return ("ex", var, ("and", guard, body))
        return ("all", var, ("->", guard, body))
    if head == "not":
        if len(sx) != 2:
            raise ParseError("not expects one argument")
        return ("->", desugar(sx[1]), ("⊥",))
    if head == "or":
        if len(sx) != 3:
            raise ParseError("or expects two arguments")
        left = desugar(sx[1])
        right = desugar(sx[2])
        n = fresh_name("n", _sugar_vars(left) | _sugar_vars(right))
        tag_zero = ("=", n, "0")
        return (
            "ex", n,
            ("and", ("->", tag_zero, left), ("->", ("->", tag_zero, ("⊥",)), right)),
        )
    return tuple([head] + [desugar(x) for x in sx[1:]])


def formula_from_sexpr(sx) -> Formula:
    """Build a Formula from a core (sugar-free) expression."""
    if isinstance(sx, str) or not sx:
        raise ParseError(f"bad formula: {sexpr.to_text(sx)}")
    head = sx[0]
    if head in ("⊥", "bot"):
        if len(sx) != 1:
            raise ParseError("falsity takes no arguments")
        return BOT
    if head == "N":
        if len(sx) != 2:
            raise ParseError("N expects one term")
        return Atom(NAT, (term_from_sexpr(sx[1]),))
    if head == "st":
        if len(sx) != 2:
            raise ParseError("st expects one term")
        return Atom(ST, (term_from_sexpr(sx[1]),))
    if head == "=":
        if len(sx) != 3:
            raise ParseError("= expects two terms")
        return Atom(EQ, (term_from_sexpr(sx[1]), term_from_sexpr(sx[2])))
    if head in ("and", "->"):
        if len(sx) != 3:
            raise ParseError(f"{head} expects two formulas")
        cls = And if head == "and" else Imp
        return cls(formula_from_sexpr(sx[1]), formula_from_sexpr(sx[2]))
    if head in ("ex", "all"):
        if len(sx) != 3:
            raise ParseError(f"{head} expects a variable and a body")
        var = _check_var(sx[1], head)
        cls = Exists if head == "ex" else Forall
        return cls(var, formula_from_sexpr(sx[2]))
    raise ParseError(f"unknown form: {sexpr.to_text(sx)}")


def formula_to_sexpr(a: Formula):
    if isinstance(a, Atom):
        if a.pred == FALSITY:
            return ("⊥",)
        if a.pred == NAT:
            return ("N", term_to_sexpr(a.args[0]))
        if a.pred == ST:
            return ("st", term_to_sexpr(a.args[0]))
        return ("=", term_to_sexpr(a.args[0]), term_to_sexpr(a.args[1]))
    if isinstance(a, And):
        return ("and", formula_to_sexpr(a.left), formula_to_sexpr(a.right))
    if isinstance(a, Imp):
        return ("->", formula_to_sexpr(a.left), formula_to_sexpr(a.right))
    if isinstance(a, Exists):
        return ("ex", a.var, formula_to_sexpr(a.body))
    if isinstance(a, Forall):
        return ("all", a.var, formula_to_sexpr(a.body))
    raise TypeError(a)


def parse_formula(text: str) -> Formula:
    return formula_from_sexpr(desugar(sexpr.read_one(text)))


def formula_to_text(a: Formula) -> str:
    return sexpr.to_text(formula_to_sexpr(a))


# ---------------------------------------------------------------------------
# Sequents


@dataclass(frozen=True, slots=True)
class Sequent:
    context: tuple[Formula, ...]
    conclusion: Formula

    def __str__(self) -> str:
        ctx = ", ".join(formula_to_text(a) for a in self.context)
        return f"{ctx} |- {formula_to_text(self.conclusion)}" if ctx else \
            f"|- {formula_to_text(self.conclusion)}"


def sequent_to_sexpr(s: Sequent):
    return ("seq", tuple(formula_to_sexpr(a) for a in s.context),
            formula_to_sexpr(s.conclusion))


def sequent_from_sexpr(sx) -> Sequent:
    if not (isinstance(sx, tuple) and len(sx) == 3 and sx[0] == "seq"
            and isinstance(sx[1], tuple)):
        raise ParseError(f"bad sequent: {sexpr.to_text(sx)}")
    ctx = tuple(formula_from_sexpr(desugar(a)) for a in sx[1])
    return Sequent(ctx, formula_from_sexpr(desugar(sx[2])))


def sequent_alpha_eq(a: Sequent, b: Sequent) -> bool:
    return (len(a.context) == len(b.context)
            and all(alpha_eq(x, y) for x, y in zip(a.context, b.context))
            and alpha_eq(a.conclusion, b.conclusion))
