"""Translation of source formulas into the target theory.

``translate(A, interp, rs)`` produces the statement "the realizer tuple
``rs`` witnesses A" by structural recursion: atoms defer to the instance's
bounding relation, a conjunction splits the tuple, an implication
quantifies over realizers of the antecedent and applies the tuple
componentwise, and both number quantifiers pass the tuple through
untouched.

Fresh realizer variables introduced by the implication clause are named by
the position of the clause in the formula's connective skeleton, which
source substitution cannot change; translation therefore commutes with
substitution syntactically, and a formula built solely from uniformly
interpreted predicates translates at the empty tuple to its own image.
"""

from __future__ import annotations

from .errors import ArityError
from .interp import BaseInterpretation, bounding, formula_types
from .syntax import And, Atom, Exists, Forall, Formula, Imp
from . import target as tg
from .target import TAnd, TDefined, TExistsSrc, TForallReal, TForallSrc, TImp
from .terms import RVar, Term, mk_app


def _as_terms(rs) -> tuple:
    out = []
    for r in rs:
        out.append(RVar(r) if isinstance(r, str) else r)
    return tuple(out)


def translate(a: Formula, interp: BaseInterpretation, rs=()) -> tg.TargetFormula:
    """The target formula stating that the tuple *rs* realizes *a*."""
    rs = _as_terms(rs)
    width = len(formula_types(a, interp))
    if len(rs) != width:
        raise ArityError(
            f"{interp.name} realizer tuple for this formula has width "
            f"{width}, got {len(rs)}")
    return _tr(a, interp, rs, [0])


def _tr(a: Formula, interp: BaseInterpretation, rs, counter) -> tg.TargetFormula:
    if isinstance(a, Atom):
        return bounding(interp, a.pred, a.args, rs)
    if isinstance(a, And):
        k = len(formula_types(a.left, interp))
        return TAnd(_tr(a.left, interp, rs[:k], counter),
                    _tr(a.right, interp, rs[k:], counter))
    if isinstance(a, Imp):
        ltypes = formula_types(a.left, interp)
        counter[0] += 1
        avars = tuple(f"a.{counter[0]}.{j}" for j in range(len(ltypes)))
        aterms = tuple(RVar(v) for v in avars)
        applied = tuple(mk_app(f, aterms) for f in rs)
        body = _tr(a.right, interp, applied, counter)
        if not interp.total and applied:
            body = TAnd(TDefined(applied), body)
        inner = TImp(_tr(a.left, interp, aterms, counter), body)
        if avars:
            return TForallReal(avars, ltypes, inner)
        return inner
    if isinstance(a, Exists):
        return TExistsSrc(a.var, _tr(a.body, interp, rs, counter))
    if isinstance(a, Forall):
        return TForallSrc(a.var, _tr(a.body, interp, rs, counter))
    raise TypeError(a)


def conclusion_formula(a: Formula, interp: BaseInterpretation,
                       realizers) -> tg.TargetFormula:
    """|A| at the given realizer terms, with the definedness conjunct for
    partial instances."""
    realizers = _as_terms(realizers)
    body = translate(a, interp, realizers)
    if not interp.total and realizers:
        return TAnd(TDefined(realizers), body)
    return body
