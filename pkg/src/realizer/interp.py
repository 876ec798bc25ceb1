"""The pluggable base-interpretation layer.

An interpretation assigns to each predicate symbol a tuple of realizer
types and a bounding relation ("these realizers witness this atom"), fixes
whether realizers are total, and provides realizers for the non-logical
axioms.  Seven instances are registered:

  kleene             numbers as witnesses, partial application
  kreisel            same witnessing, total typed terms
  herbrand           numbers uniform, finite sets witness standardness
  classical          minimal-logic mode, falsity carries an opaque witness
  classical-friedman equality lifted with the opaque witness disjunct
  learning           stateful witnesses, knowledge-state transformers
  bounded            numbers witnessed by upper bounds, join by maximum

Axiom realizers an instance genuinely cannot provide raise
``UnsupportedAxiom`` so callers can report the pair instead of silently
skipping it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import (
    ArityError, NotApplicable, NotTyped, UnsupportedAxiom,
    UnsupportedPredicate,
)
from .proofs import AxiomInstance, RESTRICTED, UNRESTRICTED
from .rtypes import (
    NAT, OPAQUE, RType, RTypeTuple, STATE, TArrow, TNat, TSet, TState, arrow,
)
from . import syntax
from .syntax import And, Atom, Exists, Forall, Formula, Imp
from . import terms as tm
from .terms import (
    App, EMPTY_STATE, Join, Lam, Opaque, Proj, RSucc, RVar, RZERO, Rec,
    SetBind, SetLit, STATE_VAR, Term, embed_src_term, mk_app, mk_lam, rnum,
)
from . import target as tg
from .target import (
    TEq, TFalse, TImp, TLe, TMember, TOpaqueP, TOr, TTrue, TargetFormula,
)

PRECISE = "precise"
APPROXIMATE = "approximate"
UNIFORM = "uniform"
STATEFUL = "state"

_STATE_TERM = RVar(STATE_VAR)


@dataclass(frozen=True)
class PredSpec:
    types: RTypeTuple
    builder: Callable  # (embedded args, realizer terms) -> TargetFormula
    uniform: bool


@dataclass(frozen=True)
class BaseInterpretation:
    name: str
    total: bool
    typed: bool
    nat_mode: str
    stateful: bool
    preds: dict

    def pred(self, sym: str) -> PredSpec:
        spec = self.preds.get(sym)
        if spec is None:
            raise UnsupportedPredicate(
                f"predicate {sym!r} is not part of the {self.name} language")
        return spec

    def __repr__(self):
        return f"BaseInterpretation({self.name})"


# ---------------------------------------------------------------------------
# bounding relations

def _b_false(args, avars):
    return tg.FALSE

def _b_eq_uniform(args, avars):
    return TEq(args[0], args[1])

def _b_nat_precise(args, avars):
    return TEq(args[0], avars[0])

def _b_nat_true(args, avars):
    return tg.TRUE

def _b_st_member(args, avars):
    return TMember(args[0], avars[0])

def _b_bot_opaque(args, avars):
    return TOpaqueP(avars[0])

def _b_eq_friedman(args, avars):
    return TOr(TEq(args[0], args[1]), TOpaqueP(avars[0]))

def _b_nat_le(args, avars):
    return TLe(args[0], avars[0])

def _b_bot_state(args, avars):
    return TImp(TEq(App(avars[0], (_STATE_TERM,)), _STATE_TERM), tg.FALSE)

def _b_nat_state(args, avars):
    return TEq(App(avars[0], (_STATE_TERM,)), args[0])

def _b_eq_state(args, avars):
    return TImp(TEq(App(avars[0], (_STATE_TERM,)), _STATE_TERM),
                TEq(args[0], args[1]))


_S2S = TArrow((STATE,), STATE)
_S2N = TArrow((STATE,), NAT)

_KLEENE_PREDS = {
    syntax.FALSITY: PredSpec((), _b_false, uniform=True),
    syntax.NAT: PredSpec((NAT,), _b_nat_precise, uniform=False),
    syntax.EQ: PredSpec((), _b_eq_uniform, uniform=True),
}

INSTANCES: dict[str, BaseInterpretation] = {}


def _register(interp: BaseInterpretation) -> BaseInterpretation:
    INSTANCES[interp.name] = interp
    return interp


KLEENE = _register(BaseInterpretation(
    "kleene", total=False, typed=False, nat_mode=PRECISE, stateful=False,
    preds=_KLEENE_PREDS))

KREISEL = _register(BaseInterpretation(
    "kreisel", total=True, typed=True, nat_mode=PRECISE, stateful=False,
    preds=_KLEENE_PREDS))

HERBRAND = _register(BaseInterpretation(
    "herbrand", total=True, typed=True, nat_mode=UNIFORM, stateful=False,
    preds={
        syntax.FALSITY: PredSpec((), _b_false, uniform=True),
        syntax.NAT: PredSpec((), _b_nat_true, uniform=True),
        syntax.EQ: PredSpec((), _b_eq_uniform, uniform=True),
        syntax.ST: PredSpec((TSet(NAT),), _b_st_member, uniform=False),
    }))

CLASSICAL = _register(BaseInterpretation(
    "classical", total=True, typed=True, nat_mode=PRECISE, stateful=False,
    preds={
        syntax.FALSITY: PredSpec((OPAQUE,), _b_bot_opaque, uniform=False),
        syntax.NAT: PredSpec((NAT,), _b_nat_precise, uniform=False),
        syntax.EQ: PredSpec((), _b_eq_uniform, uniform=True),
    }))

CLASSICAL_FRIEDMAN = _register(BaseInterpretation(
    "classical-friedman", total=True, typed=True, nat_mode=PRECISE,
    stateful=False,
    preds={
        syntax.FALSITY: PredSpec((OPAQUE,), _b_bot_opaque, uniform=False),
        syntax.NAT: PredSpec((NAT,), _b_nat_precise, uniform=False),
        syntax.EQ: PredSpec((OPAQUE,), _b_eq_friedman, uniform=False),
    }))

LEARNING = _register(BaseInterpretation(
    "learning", total=True, typed=True, nat_mode=STATEFUL, stateful=True,
    preds={
        syntax.FALSITY: PredSpec((_S2S,), _b_bot_state, uniform=False),
        syntax.NAT: PredSpec((_S2N,), _b_nat_state, uniform=False),
        syntax.EQ: PredSpec((_S2S,), _b_eq_state, uniform=False),
    }))

BOUNDED = _register(BaseInterpretation(
    "bounded", total=True, typed=True, nat_mode=APPROXIMATE, stateful=False,
    preds={
        syntax.FALSITY: PredSpec((), _b_false, uniform=True),
        syntax.NAT: PredSpec((NAT,), _b_nat_le, uniform=False),
        syntax.EQ: PredSpec((), _b_eq_uniform, uniform=True),
    }))


def get_instance(name: str) -> BaseInterpretation:
    try:
        return INSTANCES[name]
    except KeyError:
        raise KeyError(
            f"unknown interpretation {name!r}; choose from "
            f"{', '.join(sorted(INSTANCES))}") from None


def bounding(interp: BaseInterpretation, pred: str, args, avars) -> TargetFormula:
    """The instance's bounding relation for P(args) witnessed by avars."""
    spec = interp.pred(pred)
    if len(args) != syntax.PRED_ARITY[pred]:
        raise ArityError(f"{pred} expects {syntax.PRED_ARITY[pred]} arguments")
    if len(avars) != len(spec.types):
        raise ArityError(
            f"{pred} under {interp.name} expects {len(spec.types)} "
            f"realizers, got {len(avars)}")
    emb = tuple(t if isinstance(t, Term) else embed_src_term(t) for t in args)
    return spec.builder(emb, tuple(avars))


# ---------------------------------------------------------------------------
# formula types and arities

def formula_types(a: Formula, interp: BaseInterpretation) -> RTypeTuple:
    """Realizer type tuple of a formula (the enumeration shape for the
    untyped instance)."""
    if isinstance(a, Atom):
        return interp.pred(a.pred).types
    if isinstance(a, And):
        return formula_types(a.left, interp) + formula_types(a.right, interp)
    if isinstance(a, Imp):
        return arrow(formula_types(a.left, interp),
                     formula_types(a.right, interp))
    if isinstance(a, (Exists, Forall)):
        return formula_types(a.body, interp)
    raise TypeError(a)


def formula_arity(a: Formula, interp: BaseInterpretation) -> int:
    return len(formula_types(a, interp))


def type_of_formula(a: Formula, interp: BaseInterpretation) -> RTypeTuple:
    if not interp.typed:
        raise NotTyped(f"the {interp.name} instance is untyped")
    return formula_types(a, interp)


def uniform_preds(interp: BaseInterpretation) -> frozenset[str]:
    return frozenset(p for p, spec in interp.preds.items() if spec.uniform)


def is_uniform_formula(a: Formula, interp: BaseInterpretation) -> bool:
    if isinstance(a, Atom):
        return a.pred in interp.preds and interp.preds[a.pred].uniform
    if isinstance(a, (And, Imp)):
        return (is_uniform_formula(a.left, interp)
                and is_uniform_formula(a.right, interp))
    if isinstance(a, (Exists, Forall)):
        return is_uniform_formula(a.body, interp)
    raise TypeError(a)


def embed_formula(a: Formula, interp: BaseInterpretation) -> TargetFormula:
    """Structural image of a uniform formula in the target language."""
    if isinstance(a, Atom):
        spec = interp.pred(a.pred)
        if not spec.uniform:
            raise UnsupportedPredicate(
                f"{a.pred} is not uniform under {interp.name}")
        return bounding(interp, a.pred, a.args, ())
    if isinstance(a, And):
        return tg.TAnd(embed_formula(a.left, interp),
                       embed_formula(a.right, interp))
    if isinstance(a, Imp):
        return TImp(embed_formula(a.left, interp),
                    embed_formula(a.right, interp))
    if isinstance(a, Exists):
        return tg.TExistsSrc(a.var, embed_formula(a.body, interp))
    if isinstance(a, Forall):
        return tg.TForallSrc(a.var, embed_formula(a.body, interp))
    raise TypeError(a)


# ---------------------------------------------------------------------------
# canonical inhabitants (vacuous ex-falso realizers, fallback witnesses)

def inhabit_type(ty: RType, _depth: int = 0) -> Term:
    if isinstance(ty, TNat):
        return RZERO
    if isinstance(ty, TSet):
        return SetLit((inhabit_type(ty.elem, _depth + 1),))
    if isinstance(ty, TState):
        return EMPTY_STATE
    if isinstance(ty, TArrow):
        params = tuple(f"a.i{_depth}.{k}" for k in range(len(ty.args)))
        return Lam(params, (inhabit_type(ty.ret, _depth + 1),))
    if ty == OPAQUE:
        return Opaque("o.w")
    raise NotApplicable(f"no canonical inhabitant for {ty}")


def inhabit_formula(a: Formula, interp: BaseInterpretation) -> tuple:
    return tuple(inhabit_type(ty) for ty in formula_types(a, interp))


# ---------------------------------------------------------------------------
# induction realizers

def _nat_max(u: Term, v: Term) -> Term:
    """max(u, v) = u + (v - u), coded with the recursor only."""
    pred = Lam(("a.x",),
               (Rec((RZERO,), Lam(("a.p2", "a.r2"), (RVar("a.p2"),)),
                    RVar("a.x")),))
    monus = Rec((v,), Lam(("a.p3", "a.r3"), (App(pred, (RVar("a.r3"),)),)), u)
    return Rec((u,), Lam(("a.p4", "a.r4"), (RSucc(RVar("a.r4")),)), monus)


def join_term(ty: RType, u: Term, v: Term) -> Term:
    """An upper bound of u and v at a joinable type."""
    if isinstance(ty, TSet) or isinstance(ty, TState):
        return Join(u, v)
    if isinstance(ty, TNat):
        return _nat_max(u, v)
    raise NotApplicable(f"no join at type {ty}")


def _rec_components(base, stepfn, arg: Term, k: int) -> tuple:
    r = Rec(tuple(base), stepfn, arg)
    if k == 1:
        return (r,)
    return tuple(Proj(i, r) for i in range(k))


def _psi(base, apply_step, types, join_mode: bool):
    """Returns arg_term -> component tuple of the recursion
    psi(0) = base, psi(m+1) = step(m, psi(m)), joined when requested."""
    k = len(base)
    rvars = tuple(f"a.r{i}" for i in range(k))
    rterms = tuple(RVar(v) for v in rvars)
    p = RVar("a.p")
    body = tuple(apply_step(p, rterms))
    if join_mode:
        body = tuple(join_term(types[i], rterms[i], body[i]) for i in range(k))
    stepfn = Lam(("a.p",) + rvars, body)
    return lambda arg: _rec_components(base, stepfn, arg, k)


def induction_realizer(interp: BaseInterpretation, base, step,
                       types: RTypeTuple | None = None) -> tuple:
    """The recursion realizer built from closed base and step tuples.

    Precise modes iterate the step; the approximate mode joins each stage
    with the previous one so the result bounds every earlier stage.
    """
    base, step = tuple(base), tuple(step)
    k = len(base)
    if len(step) != k:
        raise ArityError("base and step tuples must have the same width")
    if k == 0:
        return ()
    if interp.nat_mode == UNIFORM:
        raise NotApplicable(
            f"{interp.name} treats numbers uniformly; induction carries no "
            "realizers unless the predicate is realizer-free")
    join_mode = interp.nat_mode == APPROXIMATE
    if join_mode and types is None:
        from .rtypes import infer_types
        types = infer_types(base)
    apply_step = lambda p, rs: tuple(mk_app(s, (p,) + rs) for s in step)
    rec_at = _psi(base, apply_step, types, join_mode)
    return tuple(Lam(("a.c",), (comp,)) for comp in rec_at(RVar("a.c")))


# ---------------------------------------------------------------------------
# ex falso via the witness lift (instances whose falsity can actually hold)

def _bottom_lift(interp: BaseInterpretation, a: Formula, bot_var: Term,
                 _counter=None) -> tuple:
    counter = _counter if _counter is not None else [0]
    if isinstance(a, Atom):
        if a.pred == syntax.FALSITY or a.pred == syntax.EQ:
            return (bot_var,)
        if a.pred == syntax.NAT:
            t = a.args[0]
            if syntax.term_free_vars(t):
                raise UnsupportedAxiom(
                    interp.name, "exfalso",
                    f"number atom (N {syntax.term_to_text(t)}) with a free "
                    "variable in positive position")
            v = rnum(syntax.term_value(t))
            if interp.stateful:
                return (Lam(("a.z",), (v,)),)
            return (v,)
        raise UnsupportedPredicate(
            f"{a.pred} is not part of the {interp.name} language")
    if isinstance(a, And):
        return (_bottom_lift(interp, a.left, bot_var, counter)
                + _bottom_lift(interp, a.right, bot_var, counter))
    if isinstance(a, Imp):
        k = len(formula_types(a.left, interp))
        counter[0] += 1
        hvars = tuple(f"x.{counter[0]}.{j}" for j in range(k))
        return mk_lam(hvars, _bottom_lift(interp, a.right, bot_var, counter))
    if isinstance(a, (Exists, Forall)):
        return _bottom_lift(interp, a.body, bot_var, counter)
    raise TypeError(a)


# ---------------------------------------------------------------------------
# axiom realizers

_ID1 = Lam(("a.a",), (RVar("a.a"),))


def _learning_axiom(inst: AxiomInstance) -> tuple:
    s = inst.schema
    z = RVar("a.z")
    identity_state = Lam(("a.z",), (z,))
    if s == "refl":
        return (identity_state,)
    if s == "sym":
        return (Lam(("a.g",), (RVar("a.g"),)),)
    if s == "trans":
        g1, g2 = RVar("a.g1"), RVar("a.g2")
        joined = Lam(("a.z",), (Join(App(g1, (z,)), App(g2, (z,))),))
        return (Lam(("a.g1", "a.g2"), (joined,)),)
    if s == "nat-eq":
        raise UnsupportedAxiom(
            "learning", "nat-eq",
            "an inconsistent state frees the equality witness, leaving the "
            "number witness unconstrained")
    if s == "nat-zero":
        return (Lam(("a.z",), (RZERO,)),)
    if s == "nat-succ":
        return (Lam(("a.al",),
                    (Lam(("a.z",), (RSucc(App(RVar("a.al"), (z,))),)),)),)
    if s == "succ-inj":
        return (Lam(("a.al",), (Lam(("a.be",),
                                    (Lam(("a.g",), (RVar("a.g"),)),)),)),)
    if s == "succ-nonzero":
        return (Lam(("a.al",), (Lam(("a.g",), (RVar("a.g"),)),)),)
    raise UnsupportedAxiom("learning", s)


def _friedman_axiom(inst: AxiomInstance) -> tuple:
    s = inst.schema
    if s == "refl":
        return (Opaque("o.w"),)
    if s == "sym":
        return (_ID1,)
    if s == "trans":
        raise UnsupportedAxiom(
            "classical-friedman", "trans",
            "no term selects which premise carries the witness under an "
            "opaque predicate")
    if s == "nat-eq":
        raise UnsupportedAxiom(
            "classical-friedman", "nat-eq",
            "the lifted equality may hold via the witness disjunct, leaving "
            "the number witness unconstrained")
    if s == "nat-zero":
        return (RZERO,)
    if s == "nat-succ":
        return (Lam(("a.m",), (RSucc(RVar("a.m")),)),)
    if s == "succ-inj":
        return (Lam(("a.a",), (Lam(("a.b",), (_ID1,)),)),)
    if s == "succ-nonzero":
        return (Lam(("a.a",), (_ID1,)),)
    raise UnsupportedAxiom("classical-friedman", s)


def _precise_axiom(interp: BaseInterpretation, inst: AxiomInstance) -> tuple:
    """Axioms under precise number witnessing with uniform equality
    (kleene, kreisel, classical in minimal mode)."""
    s = inst.schema
    if s in ("refl", "sym", "trans", "succ-inj"):
        return ()
    if s == "succ-nonzero":
        if interp.name == "classical":
            return (Lam(("a.a",), (Opaque("o.w"),)),)
        return ()
    if s == "nat-eq":
        return (_ID1,)
    if s == "nat-zero":
        return (RZERO,)
    if s == "nat-succ":
        return (Lam(("a.m",), (RSucc(RVar("a.m")),)),)
    raise UnsupportedAxiom(interp.name, s)


def _bounded_axiom(inst: AxiomInstance) -> tuple:
    s = inst.schema
    if s in ("refl", "sym", "trans", "succ-inj", "succ-nonzero"):
        return ()
    if s == "nat-eq":
        return (_ID1,)
    if s == "nat-zero":
        return (RZERO,)
    if s == "nat-succ":
        return (Lam(("a.m",), (RSucc(RVar("a.m")),)),)
    raise UnsupportedAxiom("bounded", s)


def _induction_axiom_realizer(interp: BaseInterpretation,
                              inst: AxiomInstance) -> tuple:
    a, x, mode = inst.formula, inst.var, inst.mode
    types = formula_types(a, interp)
    k = len(types)
    if k == 0:
        return ()
    if interp.nat_mode == UNIFORM:
        raise UnsupportedAxiom(
            interp.name, "induction",
            "numbers are uniform, so a single realizer tuple would have to "
            f"cover every instance of {syntax.formula_to_text(a)}")
    bvars = tuple(f"b.{i}" for i in range(k))
    fvars = tuple(f"f.{i}" for i in range(k))
    fterms = tuple(RVar(v) for v in fvars)

    if mode == RESTRICTED:
        if interp.nat_mode == STATEFUL:
            def apply_step(p, rs):
                const_p = Lam(("a.z",), (p,))
                return tuple(mk_app(mk_app(f, (const_p,)), rs) for f in fterms)
        else:
            def apply_step(p, rs):
                return tuple(mk_app(mk_app(f, (p,)), rs) for f in fterms)
    else:
        def apply_step(p, rs):
            return tuple(mk_app(f, rs) for f in fterms)

    join_mode = interp.nat_mode == APPROXIMATE
    base_terms = tuple(RVar(v) for v in bvars)
    rec_at = _psi(base_terms, apply_step, types, join_mode)

    if interp.nat_mode == STATEFUL:
        arg = App(RVar("a.al"), (_STATE_TERM,))
        psi = tuple(Lam(("a.al",), (comp,)) for comp in rec_at(arg))
    else:
        psi = tuple(Lam(("a.c",), (comp,)) for comp in rec_at(RVar("a.c")))
    return tuple(Lam(bvars + fvars, (component,)) for component in psi)


def axiom_realizer(interp: BaseInterpretation, inst: AxiomInstance,
                   hyp_vars=()) -> tuple:
    """A closed realizer tuple for the desugared axiom sequent.

    ``hyp_vars`` supplies variable tuples for the axiom's own context; only
    ex falso has one (the falsity hypothesis).
    """
    s = inst.schema
    if s == "induction":
        return _induction_axiom_realizer(interp, inst)
    if s == "exfalso":
        bot_spec = interp.pred(syntax.FALSITY)
        if bot_spec.uniform:
            # Falsity translates to itself, so the hypothesis can never
            # hold; any well-shaped tuple realizes the conclusion.
            return inhabit_formula(inst.formula, interp)
        if interp.name == "classical":
            raise UnsupportedAxiom(
                "classical", "exfalso",
                "minimal-logic mode; use classical-friedman")
        bot_var = RVar(hyp_vars[0][0]) if hyp_vars and hyp_vars[0] \
            else RVar("g.0.0")
        return _bottom_lift(interp, inst.formula, bot_var)
    if interp.name == "learning":
        return _learning_axiom(inst)
    if interp.name == "classical-friedman":
        return _friedman_axiom(inst)
    if interp.name == "bounded":
        return _bounded_axiom(inst)
    if interp.name == "herbrand":
        seq = _axiom_conclusion_arity(inst)
        if seq == 0:
            return ()
        raise UnsupportedAxiom("herbrand", s)
    return _precise_axiom(interp, inst)


def _axiom_conclusion_arity(inst: AxiomInstance) -> int:
    from .proofs import axiom_sequent
    return formula_arity(axiom_sequent(inst).conclusion, HERBRAND)


# ---------------------------------------------------------------------------
# Herbrand conversion between set-taking and element-taking realizers

F_TO_G = "f-to-g"
G_TO_F = "g-to-f"


def herbrand_convert(direction: str, h: Term) -> Term:
    """Convert between a set-taking realizer f and an element-taking g:
    g(n) = f({n}) and f(S) = the union of g(n) over n in S."""
    from .rtypes import infer_type, TVar
    ty = infer_type(h)
    if not isinstance(ty, TArrow) or len(ty.args) != 1:
        raise ArityError(f"expected a one-argument function, got {ty}")
    if direction == F_TO_G:
        if not isinstance(ty.args[0], (TSet, TVar)):
            raise ArityError("direction f-to-g needs a set-taking function")
        return Lam(("a.n",), (App(h, (SetLit((RVar("a.n"),)),)),))
    if direction == G_TO_F:
        if not isinstance(ty.ret, (TSet, TVar)):
            raise ArityError("direction g-to-f needs a set-valued function")
        return Lam(("a.S",), (SetBind(h, RVar("a.S")),))
    raise ArityError(f"unknown direction {direction!r}")
