"""The target term language: tuple-valued lambda terms with numerals,
a primitive recursor, finite sets, and knowledge states.

A term may evaluate to a tuple of values (a ``Lam`` body is a tuple, and
``Rec`` performs simultaneous recursion on a tuple), so term tuples are
spliced when evaluated.  ``Proj`` picks one component out of a
multi-valued term.  ``Table`` is a finite-table function used by the
verifier to enumerate function realizers; it behaves like a lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

from . import sexpr
from .errors import ParseError
from . import syntax

# Dispatch tags; kept as plain ints so the compiled evaluator can switch on
# them cheaply.
(K_VAR, K_ZERO, K_SUCC, K_LAM, K_APP, K_REC, K_PROJ, K_SET, K_JOIN,
 K_BIND, K_STATE, K_TABLE, K_OPQ) = range(13)


class Term:
    __slots__ = ()
    kind: ClassVar[int] = -1


TermTuple = tuple  # tuple[Term, ...]


@dataclass(frozen=True, slots=True)
class RVar(Term):
    kind: ClassVar[int] = K_VAR
    name: str


@dataclass(frozen=True, slots=True)
class RZero(Term):
    kind: ClassVar[int] = K_ZERO


@dataclass(frozen=True, slots=True)
class RSucc(Term):
    kind: ClassVar[int] = K_SUCC
    arg: Term


@dataclass(frozen=True, slots=True)
class Lam(Term):
    kind: ClassVar[int] = K_LAM
    params: tuple[str, ...]
    body: TermTuple


@dataclass(frozen=True, slots=True)
class App(Term):
    kind: ClassVar[int] = K_APP
    head: Term
    args: TermTuple


@dataclass(frozen=True, slots=True)
class Rec(Term):
    kind: ClassVar[int] = K_REC
    base: TermTuple
    step: Term
    arg: Term


@dataclass(frozen=True, slots=True)
class Proj(Term):
    kind: ClassVar[int] = K_PROJ
    index: int
    tup: Term


@dataclass(frozen=True, slots=True)
class SetLit(Term):
    kind: ClassVar[int] = K_SET
    items: TermTuple  # nonempty

    def __post_init__(self):
        if not self.items:
            raise ValueError("finite sets are nonempty")


@dataclass(frozen=True, slots=True)
class Join(Term):
    kind: ClassVar[int] = K_JOIN
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class SetBind(Term):
    kind: ClassVar[int] = K_BIND
    fn: Term
    coll: Term


# State entries: ((predicate name, argument ints), witness int), sorted.
StateEntries = tuple


@dataclass(frozen=True, slots=True)
class StateLit(Term):
    kind: ClassVar[int] = K_STATE
    entries: StateEntries


@dataclass(frozen=True, slots=True)
class Table(Term):
    kind: ClassVar[int] = K_TABLE
    entries: tuple  # ((argument value tuple, output value term), ...)
    default: Term | None  # None means identity fallback (unary tables only)


@dataclass(frozen=True, slots=True)
class Opaque(Term):
    kind: ClassVar[int] = K_OPQ
    name: str


RZERO = RZero()
EMPTY_STATE = StateLit(())

# The distinguished state parameter of the stateful interpretation.  The
# dot keeps it out of the namespace of user-written variables.
STATE_VAR = "s.st"


def rnum(n: int) -> Term:
    t: Term = RZERO
    for _ in range(n):
        t = RSucc(t)
    return t


def rnum_value(t: Term) -> int:
    n = 0
    while isinstance(t, RSucc):
        n += 1
        t = t.arg
    if not isinstance(t, RZero):
        raise ValueError("not a numeral")
    return n


def is_numeral(t: Term) -> bool:
    while isinstance(t, RSucc):
        t = t.arg
    return isinstance(t, RZero)


def embed_src_term(t: syntax.SrcTerm) -> Term:
    """Source terms reuse the numeral and variable shapes of the target."""
    if isinstance(t, syntax.Zero):
        return RZERO
    if isinstance(t, syntax.Succ):
        return RSucc(embed_src_term(t.arg))
    if isinstance(t, syntax.Var):
        return RVar(t.name)
    raise TypeError(t)


def mk_state(entries) -> StateLit:
    """Canonical state from ((name, args), witness) pairs; later duplicates
    for the same key are resolved to the least witness."""
    best: dict = {}
    for key, wit in entries:
        key = (key[0], tuple(key[1]))
        if key not in best or wit < best[key]:
            best[key] = wit
    return StateLit(tuple(sorted((k, best[k]) for k in best)))


def state_join(a: StateLit, b: StateLit) -> StateLit:
    return mk_state(a.entries + b.entries)


def state_extends(big: StateLit, small: StateLit) -> bool:
    entries = dict(big.entries)
    return all(entries.get(k) == w for k, w in small.entries)


def mk_app(head: Term, args) -> Term:
    """Application; the empty tuple applies to nothing."""
    args = tuple(args)
    return head if not args else App(head, args)


def mk_lam(params, body) -> TermTuple:
    """Abstract each component of *body* over *params* (componentwise)."""
    params = tuple(params)
    body = tuple(body)
    if not params:
        return body
    return tuple(Lam(params, (t,)) for t in body)


def free_rvars(t: Term) -> frozenset[str]:
    if isinstance(t, RVar):
        return frozenset((t.name,))
    if isinstance(t, (RZero, StateLit, Opaque)):
        return frozenset()
    if isinstance(t, RSucc):
        return free_rvars(t.arg)
    if isinstance(t, Lam):
        out = tuple_free_rvars(t.body)
        return out - frozenset(t.params)
    if isinstance(t, App):
        return free_rvars(t.head) | tuple_free_rvars(t.args)
    if isinstance(t, Rec):
        return (tuple_free_rvars(t.base) | free_rvars(t.step)
                | free_rvars(t.arg))
    if isinstance(t, Proj):
        return free_rvars(t.tup)
    if isinstance(t, SetLit):
        return tuple_free_rvars(t.items)
    if isinstance(t, Join):
        return free_rvars(t.left) | free_rvars(t.right)
    if isinstance(t, SetBind):
        return free_rvars(t.fn) | free_rvars(t.coll)
    if isinstance(t, Table):
        out = frozenset()
        for keys, v in t.entries:
            out |= tuple_free_rvars(keys) | free_rvars(v)
        if t.default is not None:
            out |= free_rvars(t.default)
        return out
    raise TypeError(t)


def tuple_free_rvars(ts) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for t in ts:
        out |= free_rvars(t)
    return out


def rsubst(t: Term, mapping: dict) -> Term:
    """Capture-avoiding substitution of terms for variables."""
    if not mapping:
        return t
    if isinstance(t, RVar):
        return mapping.get(t.name, t)
    if isinstance(t, (RZero, StateLit, Opaque)):
        return t
    if isinstance(t, RSucc):
        return RSucc(rsubst(t.arg, mapping))
    if isinstance(t, Lam):
        inner = {k: v for k, v in mapping.items() if k not in t.params}
        if not inner:
            return t
        clash = frozenset()
        for v in inner.values():
            clash |= free_rvars(v)
        params = t.params
        body = t.body
        if clash & frozenset(params):
            taken = set(clash) | set(params) | tuple_free_rvars(body) | set(inner)
            renames = {}
            new_params = []
            for p in params:
                if p in clash:
                    q = syntax.fresh_name(p, taken)
                    taken.add(q)
                    renames[p] = RVar(q)
                    new_params.append(q)
                else:
                    new_params.append(p)
            body = tuple(rsubst(b, renames) for b in body)
            params = tuple(new_params)
        return Lam(params, tuple(rsubst(b, inner) for b in body))
    if isinstance(t, App):
        return App(rsubst(t.head, mapping),
                   tuple(rsubst(a, mapping) for a in t.args))
    if isinstance(t, Rec):
        return Rec(tuple(rsubst(b, mapping) for b in t.base),
                   rsubst(t.step, mapping), rsubst(t.arg, mapping))
    if isinstance(t, Proj):
        return Proj(t.index, rsubst(t.tup, mapping))
    if isinstance(t, SetLit):
        return SetLit(tuple(rsubst(x, mapping) for x in t.items))
    if isinstance(t, Join):
        return Join(rsubst(t.left, mapping), rsubst(t.right, mapping))
    if isinstance(t, SetBind):
        return SetBind(rsubst(t.fn, mapping), rsubst(t.coll, mapping))
    if isinstance(t, Table):
        return Table(tuple((tuple(rsubst(k, mapping) for k in keys),
                            rsubst(v, mapping))
                           for keys, v in t.entries),
                     None if t.default is None else rsubst(t.default, mapping))
    raise TypeError(t)


def canon_key(t: Term):
    """Total order key on values; used to keep sets sorted and deduplicated.
    The (length, text) pair orders numerals by numeric value."""
    s = sexpr.to_text(term_to_sexpr(t))
    return (len(s), s)


def mk_set(items) -> SetLit:
    seen = {}
    for x in items:
        seen.setdefault(canon_key(x), x)
    return SetLit(tuple(seen[k] for k in sorted(seen)))


# ---------------------------------------------------------------------------
# beta normalization (used to tidy extracted terms; not the evaluator)

_NORM_FUEL = 20_000


def beta_normalize(ts) -> TermTuple:
    """Normalize a term tuple: beta-reduce, splice tuples, drop projections
    on literal tuples.  Open terms are fine; recursors are left symbolic."""
    budget = [_NORM_FUEL]
    return _norm_tuple(tuple(ts), budget)


def _norm_tuple(ts, budget) -> TermTuple:
    out = []
    for t in ts:
        out.extend(_norm(t, budget))
    return tuple(out)


def _norm(t: Term, budget) -> TermTuple:
    """Normal form of one term as a spliced tuple."""
    if budget[0] <= 0:
        return (t,)
    if isinstance(t, (RVar, RZero, StateLit, Opaque, Table)):
        return (t,)
    if isinstance(t, RSucc):
        (v,) = _norm_single(t.arg, budget)
        return (RSucc(v),)
    if isinstance(t, Lam):
        body = _norm_tuple(t.body, budget)
        return (Lam(t.params, body),)
    if isinstance(t, App):
        head = _norm_single(t.head, budget)[0]
        args = _norm_tuple(t.args, budget)
        if isinstance(head, Lam) and len(head.params) == len(args):
            budget[0] -= 1
            mapping = dict(zip(head.params, args))
            return _norm_tuple(tuple(rsubst(b, mapping) for b in head.body),
                               budget)
        return (mk_app(head, args),)
    if isinstance(t, Rec):
        return (Rec(_norm_tuple(t.base, budget),
                    _norm_single(t.step, budget)[0],
                    _norm_single(t.arg, budget)[0]),)
    if isinstance(t, Proj):
        inner = _norm(t.tup, budget)
        if len(inner) > 1:
            if t.index >= len(inner):
                raise ValueError("projection out of range")
            return (inner[t.index],)
        return (Proj(t.index, inner[0]),)
    if isinstance(t, SetLit):
        return (SetLit(_norm_tuple(t.items, budget)),)
    if isinstance(t, Join):
        return (Join(_norm_single(t.left, budget)[0],
                     _norm_single(t.right, budget)[0]),)
    if isinstance(t, SetBind):
        return (SetBind(_norm_single(t.fn, budget)[0],
                        _norm_single(t.coll, budget)[0]),)
    raise TypeError(t)


def _norm_single(t: Term, budget) -> TermTuple:
    out = _norm(t, budget)
    if len(out) != 1:
        raise ValueError("tuple-valued term in single-value position")
    return out


# ---------------------------------------------------------------------------
# Serialization

def term_to_sexpr(t: Term):
    if isinstance(t, RVar):
        return t.name
    if isinstance(t, RZero):
        return "0"
    if isinstance(t, RSucc):
        return ("s", term_to_sexpr(t.arg))
    if isinstance(t, Lam):
        return ("lam", t.params, tuple_to_sexpr(t.body))
    if isinstance(t, App):
        return ("app", term_to_sexpr(t.head)) + tuple(
            term_to_sexpr(a) for a in t.args)
    if isinstance(t, Rec):
        return ("rec", tuple_to_sexpr(t.base), term_to_sexpr(t.step),
                term_to_sexpr(t.arg))
    if isinstance(t, Proj):
        return ("proj", str(t.index), term_to_sexpr(t.tup))
    if isinstance(t, SetLit):
        return ("set",) + tuple(term_to_sexpr(x) for x in t.items)
    if isinstance(t, Join):
        return ("join", term_to_sexpr(t.left), term_to_sexpr(t.right))
    if isinstance(t, SetBind):
        return ("bigcup", term_to_sexpr(t.fn), term_to_sexpr(t.coll))
    if isinstance(t, StateLit):
        return ("state",) + tuple(
            ((key[0],) + tuple(str(a) for a in key[1]), str(w))
            for key, w in t.entries)
    if isinstance(t, Table):
        entries = tuple((tuple(term_to_sexpr(k) for k in keys),
                         term_to_sexpr(v))
                        for keys, v in t.entries)
        dflt = "id" if t.default is None else term_to_sexpr(t.default)
        return ("table", entries, dflt)
    if isinstance(t, Opaque):
        return ("opq", t.name)
    raise TypeError(t)


def tuple_to_sexpr(ts):
    ts = tuple(ts)
    if len(ts) == 1:
        return term_to_sexpr(ts[0])
    return ("tuple",) + tuple(term_to_sexpr(t) for t in ts)


def term_from_sexpr(sx) -> Term:
    if sx == "0":
        return RZERO
    if isinstance(sx, str):
        return RVar(sx)
    if not sx:
        raise ParseError("empty term")
    head = sx[0]
    if head == "s" and len(sx) == 2:
        return RSucc(term_from_sexpr(sx[1]))
    if head == "lam" and len(sx) == 3 and isinstance(sx[1], tuple):
        params = tuple(sx[1])
        if not all(isinstance(p, str) for p in params):
            raise ParseError("lambda parameters must be names")
        return Lam(params, tuple_from_sexpr(sx[2]))
    if head == "app" and len(sx) >= 3:
        return App(term_from_sexpr(sx[1]),
                   tuple(term_from_sexpr(a) for a in sx[2:]))
    if head == "rec" and len(sx) == 4:
        return Rec(tuple_from_sexpr(sx[1]), term_from_sexpr(sx[2]),
                   term_from_sexpr(sx[3]))
    if head == "proj" and len(sx) == 3:
        return Proj(int(sx[1]), term_from_sexpr(sx[2]))
    if head == "set" and len(sx) >= 2:
        return SetLit(tuple(term_from_sexpr(x) for x in sx[1:]))
    if head == "join" and len(sx) == 3:
        return Join(term_from_sexpr(sx[1]), term_from_sexpr(sx[2]))
    if head == "bigcup" and len(sx) == 3:
        return SetBind(term_from_sexpr(sx[1]), term_from_sexpr(sx[2]))
    if head == "state":
        entries = []
        for e in sx[1:]:
            if not (isinstance(e, tuple) and len(e) == 2
                    and isinstance(e[0], tuple) and e[0]):
                raise ParseError(f"bad state entry: {sexpr.to_text(e)}")
            key, wit = e
            entries.append(((key[0], tuple(int(a) for a in key[1:])),
                            int(wit)))
        return mk_state(entries)
    if head == "table" and len(sx) == 3 and isinstance(sx[1], tuple):
        entries = tuple((tuple(term_from_sexpr(k) for k in keys),
                         term_from_sexpr(v))
                        for keys, v in sx[1])
        default = None if sx[2] == "id" else term_from_sexpr(sx[2])
        return Table(entries, default)
    if head == "opq" and len(sx) == 2:
        return Opaque(sx[1])
    if head == "tuple":
        raise ParseError("tuple found in single-term position")
    raise ParseError(f"bad term: {sexpr.to_text(sx)}")


def tuple_from_sexpr(sx) -> TermTuple:
    if isinstance(sx, tuple) and sx and sx[0] == "tuple":
        return tuple(term_from_sexpr(x) for x in sx[1:])
    return (term_from_sexpr(sx),)


def term_to_text(t: Term) -> str:
    return sexpr.to_text(term_to_sexpr(t))


def tuple_to_text(ts) -> str:
    return sexpr.to_text(tuple_to_sexpr(ts))
