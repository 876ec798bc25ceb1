"""Formulas of the target theory: what translations of source formulas
look like.

Atoms compare evaluated terms (equality, order, set membership), test the
opaque witness predicate, or assert definedness; quantifiers come in two
sorts, over source numbers and over realizers.

Machine-generated realizer variables contain a dot, which user-written
source variables cannot; that keeps the two namespaces disjoint, so source
substitution into a target formula mirrors substitution on the source
side exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sexpr, syntax
from . import terms as tm
from .rtypes import RTypeTuple, type_to_sexpr


class TargetFormula:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class TTrue(TargetFormula):
    pass


@dataclass(frozen=True, slots=True)
class TFalse(TargetFormula):
    pass


@dataclass(frozen=True, slots=True)
class TEq(TargetFormula):
    left: tm.Term
    right: tm.Term


@dataclass(frozen=True, slots=True)
class TLe(TargetFormula):
    left: tm.Term
    right: tm.Term


@dataclass(frozen=True, slots=True)
class TMember(TargetFormula):
    elem: tm.Term
    coll: tm.Term


@dataclass(frozen=True, slots=True)
class TOpaqueP(TargetFormula):
    arg: tm.Term


@dataclass(frozen=True, slots=True)
class TDefined(TargetFormula):
    terms: tuple


@dataclass(frozen=True, slots=True)
class TAnd(TargetFormula):
    left: TargetFormula
    right: TargetFormula


@dataclass(frozen=True, slots=True)
class TOr(TargetFormula):
    left: TargetFormula
    right: TargetFormula


@dataclass(frozen=True, slots=True)
class TImp(TargetFormula):
    left: TargetFormula
    right: TargetFormula


@dataclass(frozen=True, slots=True)
class TForallSrc(TargetFormula):
    var: str
    body: TargetFormula


@dataclass(frozen=True, slots=True)
class TExistsSrc(TargetFormula):
    var: str
    body: TargetFormula


@dataclass(frozen=True, slots=True)
class TForallReal(TargetFormula):
    vars: tuple[str, ...]
    types: RTypeTuple
    body: TargetFormula


@dataclass(frozen=True, slots=True)
class TExistsReal(TargetFormula):
    vars: tuple[str, ...]
    types: RTypeTuple
    body: TargetFormula


TRUE = TTrue()
FALSE = TFalse()


def _is_src_name(name: str) -> bool:
    return "." not in name


def is_atomic(tf: TargetFormula) -> bool:
    return isinstance(tf, (TEq, TLe, TMember, TOpaqueP, TDefined))


def atom_terms(tf: TargetFormula) -> tuple:
    """The embedded terms of an atomic target formula."""
    if isinstance(tf, (TEq, TLe)):
        return (tf.left, tf.right)
    if isinstance(tf, TMember):
        return (tf.elem, tf.coll)
    if isinstance(tf, TOpaqueP):
        return (tf.arg,)
    if isinstance(tf, TDefined):
        return tf.terms
    raise TypeError(tf)


def _map_terms(tf: TargetFormula, f) -> TargetFormula:
    """Rebuild an atomic formula with every embedded term passed through *f*."""
    if isinstance(tf, (TEq, TLe, TMember)):
        a, b = atom_terms(tf)
        return type(tf)(f(a), f(b))
    if isinstance(tf, TOpaqueP):
        return TOpaqueP(f(tf.arg))
    if isinstance(tf, TDefined):
        return TDefined(tuple(f(t) for t in tf.terms))
    raise TypeError(tf)


def _src_names(tf: TargetFormula, bound_too: bool) -> frozenset[str]:
    if isinstance(tf, (TTrue, TFalse)):
        return frozenset()
    if is_atomic(tf):
        names = tm.tuple_free_rvars(atom_terms(tf))
        return frozenset(n for n in names if _is_src_name(n))
    if isinstance(tf, (TAnd, TOr, TImp)):
        return (_src_names(tf.left, bound_too)
                | _src_names(tf.right, bound_too))
    if isinstance(tf, (TForallSrc, TExistsSrc)):
        inner = _src_names(tf.body, bound_too)
        return inner | {tf.var} if bound_too else inner - {tf.var}
    if isinstance(tf, (TForallReal, TExistsReal)):
        return _src_names(tf.body, bound_too)
    raise TypeError(tf)


def free_src_vars(tf: TargetFormula) -> frozenset[str]:
    """Free source variables (undotted names) of a target formula."""
    return _src_names(tf, bound_too=False)


def all_src_names(tf: TargetFormula) -> frozenset[str]:
    return _src_names(tf, bound_too=True)


def subst_src(tf: TargetFormula, x: str, t: syntax.SrcTerm) -> TargetFormula:
    """Substitute a source term for a source variable; mirrors
    ``syntax.substitute`` choice-for-choice so translation commutes with
    substitution on the nose."""
    embedded = tm.embed_src_term(t)

    def on_term(u: tm.Term) -> tm.Term:
        return tm.rsubst(u, {x: embedded})

    if isinstance(tf, (TTrue, TFalse)):
        return tf
    if is_atomic(tf):
        return _map_terms(tf, on_term)
    if isinstance(tf, (TAnd, TOr, TImp)):
        return type(tf)(subst_src(tf.left, x, t), subst_src(tf.right, x, t))
    if isinstance(tf, (TForallSrc, TExistsSrc)):
        cls = type(tf)
        if tf.var == x or x not in free_src_vars(tf.body):
            return tf
        if tf.var in syntax.term_free_vars(t):
            new = syntax.fresh_name(
                tf.var,
                syntax.term_free_vars(t) | all_src_names(tf.body) | {x})
            body = subst_src(tf.body, tf.var, syntax.Var(new))
            return cls(new, subst_src(body, x, t))
        return cls(tf.var, subst_src(tf.body, x, t))
    if isinstance(tf, (TForallReal, TExistsReal)):
        return type(tf)(tf.vars, tf.types, subst_src(tf.body, x, t))
    raise TypeError(tf)


# ---------------------------------------------------------------------------
# rendering

def to_sexpr(tf: TargetFormula):
    if isinstance(tf, TTrue):
        return "true"
    if isinstance(tf, TFalse):
        return ("⊥",)
    if isinstance(tf, TEq):
        return ("=", tm.term_to_sexpr(tf.left), tm.term_to_sexpr(tf.right))
    if isinstance(tf, TLe):
        return ("<=", tm.term_to_sexpr(tf.left), tm.term_to_sexpr(tf.right))
    if isinstance(tf, TMember):
        return ("in", tm.term_to_sexpr(tf.elem), tm.term_to_sexpr(tf.coll))
    if isinstance(tf, TOpaqueP):
        return ("P", tm.term_to_sexpr(tf.arg))
    if isinstance(tf, TDefined):
        return ("def",) + tuple(tm.term_to_sexpr(t) for t in tf.terms)
    if isinstance(tf, TAnd):
        return ("and", to_sexpr(tf.left), to_sexpr(tf.right))
    if isinstance(tf, TOr):
        return ("or", to_sexpr(tf.left), to_sexpr(tf.right))
    if isinstance(tf, TImp):
        return ("->", to_sexpr(tf.left), to_sexpr(tf.right))
    if isinstance(tf, TForallSrc):
        return ("all", tf.var, to_sexpr(tf.body))
    if isinstance(tf, TExistsSrc):
        return ("ex", tf.var, to_sexpr(tf.body))
    if isinstance(tf, TForallReal):
        return ("allr", tuple((v, type_to_sexpr(ty))
                              for v, ty in zip(tf.vars, tf.types)),
                to_sexpr(tf.body))
    if isinstance(tf, TExistsReal):
        return ("exr", tuple((v, type_to_sexpr(ty))
                             for v, ty in zip(tf.vars, tf.types)),
                to_sexpr(tf.body))
    raise TypeError(tf)


def to_text(tf: TargetFormula) -> str:
    return sexpr.to_text(to_sexpr(tf))
