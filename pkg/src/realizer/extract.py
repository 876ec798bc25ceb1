"""Realizer extraction: compile a checked derivation into a realizer tuple.

Rules map to term operations: a hypothesis projects its context variables,
conjunction introduction concatenates, implication introduction abstracts
the discharged hypothesis' variables componentwise, elimination applies,
and the quantifier rules pass realizers through untouched.  Existential
elimination substitutes the witness tuple for the hypothesis variables of
its second premise; the eigenvariable never enters the terms because
extraction introduces no source variables.

Context realizers are fresh variable tuples allocated in context order
(``g.<position>.<component>``), so extracted terms are deterministic and
their only free variables are the context variables (plus the state
parameter under the stateful instance).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import RuleMismatch
from .interp import (
    BaseInterpretation, axiom_realizer, formula_arity, formula_types,
)
from .proofs import Derivation, check
from .syntax import Sequent, alpha_eq
from . import target as tg
from .target import TAnd, TDefined
from .terms import RVar, beta_normalize, mk_app, mk_lam, rsubst
from .translate import translate
from .rtypes import RTypeTuple


def context_vars(seq: Sequent, interp: BaseInterpretation) -> tuple:
    """One fresh variable tuple per context formula, sized by its arity."""
    return tuple(
        tuple(f"g.{i}.{j}" for j in range(formula_arity(c, interp)))
        for i, c in enumerate(seq.context))


class _Extractor:
    def __init__(self, interp: BaseInterpretation):
        self.interp = interp
        self.depth = 0

    def _fresh_hyp(self, width: int) -> tuple:
        self.depth += 1
        return tuple(f"h.{self.depth}.{j}" for j in range(width))

    def run(self, d: Derivation, ctx_vars) -> tuple:
        interp = self.interp
        rule = d.rule

        if rule == "hyp":
            ctx, a = d.data
            for i, c in enumerate(ctx):
                if alpha_eq(c, a):
                    return tuple(RVar(v) for v in ctx_vars[i])
            raise RuleMismatch((), "hypothesis not in context")

        if rule == "axiom":
            return axiom_realizer(interp, d.data[0], hyp_vars=ctx_vars)

        if rule == "and-intro":
            return (self.run(d.premises[0], ctx_vars)
                    + self.run(d.premises[1], ctx_vars))

        if rule in ("and-elim1", "and-elim2"):
            conj = check(d.premises[0]).conclusion
            k = formula_arity(conj.left, interp)
            t = self.run(d.premises[0], ctx_vars)
            return t[:k] if rule == "and-elim1" else t[k:]

        if rule == "imp-intro":
            premise_seq = check(d.premises[0])
            hyp_formula = premise_seq.context[-1]
            hvars = self._fresh_hyp(formula_arity(hyp_formula, interp))
            t = self.run(d.premises[0], ctx_vars + (hvars,))
            return mk_lam(hvars, t)

        if rule == "imp-elim":
            f = self.run(d.premises[0], ctx_vars)
            s = self.run(d.premises[1], ctx_vars)
            return tuple(mk_app(fi, s) for fi in f)

        if rule == "ex-elim":
            witness = self.run(d.premises[0], ctx_vars)
            hyp_formula = check(d.premises[1]).context[-1]
            hvars = self._fresh_hyp(formula_arity(hyp_formula, interp))
            t = self.run(d.premises[1], ctx_vars + (hvars,))
            mapping = dict(zip(hvars, witness))
            return tuple(rsubst(ti, mapping) for ti in t)

        if rule in ("ex-intro", "all-intro", "all-elim"):
            return self.run(d.premises[0], ctx_vars)

        if rule == "weaken":
            (new_ctx,) = d.data
            old_ctx = check(d.premises[0]).context
            old_vars = []
            for c in old_ctx:
                for j, target_formula in enumerate(new_ctx):
                    if alpha_eq(c, target_formula):
                        old_vars.append(ctx_vars[j])
                        break
                else:
                    raise RuleMismatch((), "weakened context drops a hypothesis")
            return self.run(d.premises[0], tuple(old_vars))

        raise RuleMismatch((), f"unknown rule {rule!r}")


def extract(d: Derivation, interp: BaseInterpretation) -> tuple:
    """Closed realizer tuple for *d*, beta-normal, free in the context
    variables only (and the state parameter under the stateful instance)."""
    seq = check(d)
    cvars = context_vars(seq, interp)
    raw = _Extractor(interp).run(d, cvars)
    out = beta_normalize(raw)
    expected = formula_arity(seq.conclusion, interp)
    if len(out) != expected:
        raise AssertionError(
            f"extracted tuple has width {len(out)}, expected {expected}")
    return out


@dataclass(frozen=True)
class RealizabilityStatement:
    """The executable reading of 'this sequent is realizable'."""
    interp_name: str
    sequent: Sequent
    context_vars: tuple          # per-hypothesis variable name tuples
    context_types: tuple         # per-hypothesis realizer type tuples
    hypotheses: tuple            # per-hypothesis target formulas
    realizers: tuple             # extracted terms over the context variables
    realizer_types: RTypeTuple
    conclusion: tg.TargetFormula
    stateful: bool


def realizability_sequent(d: Derivation,
                          interp: BaseInterpretation) -> RealizabilityStatement:
    seq = check(d)
    cvars = context_vars(seq, interp)
    terms = extract(d, interp)
    hyps = tuple(translate(c, interp, v)
                 for c, v in zip(seq.context, cvars))
    body = translate(seq.conclusion, interp, terms)
    if not interp.total and terms:
        body = TAnd(TDefined(terms), body)
    return RealizabilityStatement(
        interp_name=interp.name,
        sequent=seq,
        context_vars=cvars,
        context_types=tuple(formula_types(c, interp) for c in seq.context),
        hypotheses=hyps,
        realizers=terms,
        realizer_types=formula_types(seq.conclusion, interp),
        conclusion=body,
        stateful=interp.stateful,
    )
