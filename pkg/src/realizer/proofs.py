"""Derivations and the checking kernel.

A derivation is a tree of rule applications plus axiom leaves.  The checker
recomputes every node's sequent from its premises and rule data, enforcing
the eigenvariable side-conditions, and reports failures with the path of
premise indices from the root.

Contexts are ordered lists.  The logical axiom is a membership test, and an
explicit ``weaken`` rule replaces a context by any supercontext; together
these provide the structural rules (weakening, contraction, exchange) the
rule table leaves implicit.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import sexpr
from .errors import EigenvariableViolation, ParseError, RuleMismatch
from .syntax import (
    And, Atom, BOT, Exists, Forall, Formula, Imp, Sequent, Succ, Var, ZERO,
    alpha_eq, desugar, eq, formula_from_sexpr, formula_to_sexpr, free_vars,
    nat, sequent_from_sexpr, sequent_to_sexpr, substitute, term_from_sexpr,
    term_to_sexpr,
)

RESTRICTED = "restricted"
UNRESTRICTED = "unrestricted"

AXIOM_SCHEMAS = (
    "exfalso", "refl", "sym", "trans", "nat-eq",
    "nat-zero", "nat-succ", "succ-inj", "succ-nonzero", "induction",
)


@dataclass(frozen=True, slots=True)
class AxiomInstance:
    schema: str
    formula: Formula | None = None  # exfalso target / induction predicate
    var: str | None = None          # induction variable
    mode: str | None = None         # induction: restricted | unrestricted


@dataclass(frozen=True, slots=True)
class Derivation:
    rule: str
    data: tuple
    premises: tuple["Derivation", ...]


# -- constructors ------------------------------------------------------------

def hyp(context, formula: Formula) -> Derivation:
    return Derivation("hyp", (tuple(context), formula), ())

def axiom(inst: AxiomInstance) -> Derivation:
    return Derivation("axiom", (inst,), ())

def and_intro(d1: Derivation, d2: Derivation) -> Derivation:
    return Derivation("and-intro", (), (d1, d2))

def and_elim1(d: Derivation) -> Derivation:
    return Derivation("and-elim1", (), (d,))

def and_elim2(d: Derivation) -> Derivation:
    return Derivation("and-elim2", (), (d,))

def imp_intro(d: Derivation) -> Derivation:
    return Derivation("imp-intro", (), (d,))

def imp_elim(dimp: Derivation, darg: Derivation) -> Derivation:
    return Derivation("imp-elim", (), (dimp, darg))

def ex_intro(target: Formula, witness, d: Derivation) -> Derivation:
    return Derivation("ex-intro", (target, witness), (d,))

def ex_elim(eigen: str, d_ex: Derivation, d_body: Derivation) -> Derivation:
    return Derivation("ex-elim", (eigen,), (d_ex, d_body))

def all_intro(var: str, d: Derivation) -> Derivation:
    return Derivation("all-intro", (var,), (d,))

def all_elim(witness, d: Derivation) -> Derivation:
    return Derivation("all-elim", (witness,), (d,))

def weaken(new_context, d: Derivation) -> Derivation:
    return Derivation("weaken", (tuple(new_context),), (d,))


# -- axiom sequents ----------------------------------------------------------

def _forall_nat(var: str, body: Formula) -> Formula:
    return Forall(var, Imp(nat(Var(var)), body))


def axiom_sequent(inst: AxiomInstance) -> Sequent:
    """The sequent an axiom leaf proves, qualified quantifiers expanded."""
    s = inst.schema
    n, m, i = Var("n"), Var("m"), Var("i")
    if s == "exfalso":
        if inst.formula is None:
            raise ParseError("exfalso needs a target formula")
        return Sequent((BOT,), inst.formula)
    if s == "refl":
        return Sequent((), Forall("n", eq(n, n)))
    if s == "sym":
        return Sequent((), Forall("n", Forall("m", Imp(eq(n, m), eq(m, n)))))
    if s == "trans":
        return Sequent((), Forall("n", Forall("i", Forall("m", Imp(
            And(eq(n, i), eq(i, m)), eq(n, m))))))
    if s == "nat-eq":
        return Sequent((), Forall("n", Forall("m", Imp(
            And(nat(n), eq(n, m)), nat(m)))))
    if s == "nat-zero":
        return Sequent((), nat(ZERO))
    if s == "nat-succ":
        return Sequent((), Forall("n", Imp(nat(n), nat(Succ(n)))))
    if s == "succ-inj":
        return Sequent((), _forall_nat("n", _forall_nat("m", Imp(
            eq(Succ(n), Succ(m)), eq(n, m)))))
    if s == "succ-nonzero":
        return Sequent((), _forall_nat("n", Imp(eq(Succ(n), ZERO), BOT)))
    if s == "induction":
        if inst.formula is None or inst.var is None or inst.mode not in (
                RESTRICTED, UNRESTRICTED):
            raise ParseError("induction needs a mode, a variable and a formula")
        x, a = inst.var, inst.formula
        base = substitute(a, x, ZERO)
        step_body = Imp(a, substitute(a, x, Succ(Var(x))))
        if inst.mode == RESTRICTED:
            step = Forall(x, Imp(nat(Var(x)), step_body))
        else:
            step = Forall(x, step_body)
        concl = Forall(x, Imp(nat(Var(x)), a))
        return Sequent((), Imp(And(base, step), concl))
    raise ParseError(f"unknown axiom schema {s!r}")


# -- the checker -------------------------------------------------------------

def _ctx_eq(c1, c2) -> bool:
    return len(c1) == len(c2) and all(alpha_eq(a, b) for a, b in zip(c1, c2))


def check(d: Derivation, _path=()) -> Sequent:
    """Return the root sequent, or raise CheckError at the offending node."""
    rule = d.rule

    if rule == "hyp":
        ctx, a = d.data
        if not any(alpha_eq(a, c) for c in ctx):
            raise RuleMismatch(_path, "hypothesis is not in the context")
        return Sequent(ctx, a)

    if rule == "axiom":
        return axiom_sequent(d.data[0])

    if rule == "and-intro":
        s1 = check(d.premises[0], _path + (0,))
        s2 = check(d.premises[1], _path + (1,))
        if not _ctx_eq(s1.context, s2.context):
            raise RuleMismatch(_path, "premise contexts differ")
        return Sequent(s1.context, And(s1.conclusion, s2.conclusion))

    if rule in ("and-elim1", "and-elim2"):
        s = check(d.premises[0], _path + (0,))
        if not isinstance(s.conclusion, And):
            raise RuleMismatch(_path, "premise is not a conjunction")
        part = s.conclusion.left if rule == "and-elim1" else s.conclusion.right
        return Sequent(s.context, part)

    if rule == "imp-intro":
        s = check(d.premises[0], _path + (0,))
        if not s.context:
            raise RuleMismatch(_path, "no hypothesis to discharge")
        return Sequent(s.context[:-1], Imp(s.context[-1], s.conclusion))

    if rule == "imp-elim":
        s1 = check(d.premises[0], _path + (0,))
        s2 = check(d.premises[1], _path + (1,))
        if not isinstance(s1.conclusion, Imp):
            raise RuleMismatch(_path, "first premise is not an implication")
        if not _ctx_eq(s1.context, s2.context):
            raise RuleMismatch(_path, "premise contexts differ")
        if not alpha_eq(s1.conclusion.left, s2.conclusion):
            raise RuleMismatch(_path, "argument does not match the antecedent")
        return Sequent(s1.context, s1.conclusion.right)

    if rule == "ex-intro":
        target, witness = d.data
        if not isinstance(target, Exists):
            raise RuleMismatch(_path, "target is not existential")
        s = check(d.premises[0], _path + (0,))
        expected = substitute(target.body, target.var, witness)
        if not alpha_eq(s.conclusion, expected):
            raise RuleMismatch(_path, "premise does not match the instantiated body")
        return Sequent(s.context, target)

    if rule == "ex-elim":
        (eigen,) = d.data
        s1 = check(d.premises[0], _path + (0,))
        s2 = check(d.premises[1], _path + (1,))
        if not isinstance(s1.conclusion, Exists):
            raise RuleMismatch(_path, "first premise is not existential")
        hyp_formula = substitute(s1.conclusion.body, s1.conclusion.var, Var(eigen))
        if not s2.context or not alpha_eq(s2.context[-1], hyp_formula):
            raise RuleMismatch(
                _path, "second premise must end with the instantiated body")
        if not _ctx_eq(s1.context, s2.context[:-1]):
            raise RuleMismatch(_path, "premise contexts differ")
        offenders = [c for c in s1.context if eigen in free_vars(c)]
        if offenders or eigen in free_vars(s2.conclusion):
            raise EigenvariableViolation(
                _path, f"eigenvariable {eigen!r} occurs free in the context "
                       "or the conclusion")
        return Sequent(s1.context, s2.conclusion)

    if rule == "all-intro":
        (var,) = d.data
        s = check(d.premises[0], _path + (0,))
        if any(var in free_vars(c) for c in s.context):
            raise EigenvariableViolation(
                _path, f"eigenvariable {var!r} occurs free in the context")
        return Sequent(s.context, Forall(var, s.conclusion))

    if rule == "all-elim":
        (witness,) = d.data
        s = check(d.premises[0], _path + (0,))
        if not isinstance(s.conclusion, Forall):
            raise RuleMismatch(_path, "premise is not universal")
        return Sequent(
            s.context,
            substitute(s.conclusion.body, s.conclusion.var, witness))

    if rule == "weaken":
        (new_ctx,) = d.data
        s = check(d.premises[0], _path + (0,))
        for a in s.context:
            if not any(alpha_eq(a, c) for c in new_ctx):
                raise RuleMismatch(_path, "weakened context drops a hypothesis")
        return Sequent(new_ctx, s.conclusion)

    raise RuleMismatch(_path, f"unknown rule {rule!r}")


def weaken_tree(d: Derivation, extra: Formula) -> Derivation:
    """Mechanically weaken: add *extra* at the front of every context."""
    if d.rule == "hyp":
        ctx, a = d.data
        return hyp((extra,) + ctx, a)
    if d.rule == "weaken":
        (ctx,) = d.data
        return weaken((extra,) + ctx, weaken_tree(d.premises[0], extra))
    if d.rule == "axiom":
        s = axiom_sequent(d.data[0])
        return weaken((extra,) + s.context, d)
    return Derivation(d.rule, d.data,
                      tuple(weaken_tree(p, extra) for p in d.premises))


# -- proof files -------------------------------------------------------------

_LEAF_TAGS = {"hyp", "axiom"}


def axiom_from_sexpr(sx) -> AxiomInstance:
    if not (isinstance(sx, tuple) and sx and sx[0] == "axiom"):
        raise ParseError(f"bad axiom leaf: {sexpr.to_text(sx)}")
    if len(sx) < 2:
        raise ParseError("axiom leaf needs a schema name")
    schema = sx[1]
    if schema == "exfalso":
        if len(sx) != 3:
            raise ParseError("exfalso expects a formula")
        return AxiomInstance("exfalso",
                             formula=formula_from_sexpr(desugar(sx[2])))
    if schema == "induction":
        if len(sx) != 5:
            raise ParseError("induction expects: mode, variable, formula")
        mode, var = sx[2], sx[3]
        if mode not in (RESTRICTED, UNRESTRICTED):
            raise ParseError(f"bad induction mode {mode!r}")
        return AxiomInstance("induction", mode=mode, var=var,
                             formula=formula_from_sexpr(desugar(sx[4])))
    if schema in AXIOM_SCHEMAS:
        if len(sx) != 2:
            raise ParseError(f"axiom {schema} takes no arguments")
        return AxiomInstance(schema)
    raise ParseError(f"unknown axiom schema {schema!r}")


def axiom_to_sexpr(inst: AxiomInstance):
    if inst.schema == "exfalso":
        return ("axiom", "exfalso", formula_to_sexpr(inst.formula))
    if inst.schema == "induction":
        return ("axiom", "induction", inst.mode, inst.var,
                formula_to_sexpr(inst.formula))
    return ("axiom", inst.schema)


def derivation_from_sexpr(sx) -> Derivation:
    if isinstance(sx, tuple) and sx and sx[0] == "axiom":
        return axiom(axiom_from_sexpr(sx))
    if not (isinstance(sx, tuple) and len(sx) >= 2 and sx[0] == "rule"):
        raise ParseError(f"bad proof node: {sexpr.to_text(sx)}")
    tag = sx[1]
    rest = sx[2:]

    def fm(x):
        return formula_from_sexpr(desugar(x))

    if tag == "hyp":
        if len(rest) != 2 or not isinstance(rest[0], tuple):
            raise ParseError("hyp expects a context list and a formula")
        return hyp(tuple(fm(x) for x in rest[0]), fm(rest[1]))
    if tag == "weaken":
        if len(rest) != 2 or not isinstance(rest[0], tuple):
            raise ParseError("weaken expects a context list and a premise")
        return weaken(tuple(fm(x) for x in rest[0]),
                      derivation_from_sexpr(rest[1]))
    if tag in ("and-intro", "imp-elim"):
        if len(rest) != 2:
            raise ParseError(f"{tag} expects two premises")
        return Derivation(tag, (), (derivation_from_sexpr(rest[0]),
                                    derivation_from_sexpr(rest[1])))
    if tag in ("and-elim1", "and-elim2", "imp-intro"):
        if len(rest) != 1:
            raise ParseError(f"{tag} expects one premise")
        return Derivation(tag, (), (derivation_from_sexpr(rest[0]),))
    if tag == "ex-intro":
        if len(rest) != 3:
            raise ParseError("ex-intro expects: formula, witness, premise")
        return ex_intro(fm(rest[0]), term_from_sexpr(rest[1]),
                        derivation_from_sexpr(rest[2]))
    if tag == "ex-elim":
        if len(rest) != 3 or not isinstance(rest[0], str):
            raise ParseError("ex-elim expects: variable, two premises")
        return ex_elim(rest[0], derivation_from_sexpr(rest[1]),
                       derivation_from_sexpr(rest[2]))
    if tag == "all-intro":
        if len(rest) != 2 or not isinstance(rest[0], str):
            raise ParseError("all-intro expects: variable, premise")
        return all_intro(rest[0], derivation_from_sexpr(rest[1]))
    if tag == "all-elim":
        if len(rest) != 2:
            raise ParseError("all-elim expects: witness term, premise")
        return all_elim(term_from_sexpr(rest[0]),
                        derivation_from_sexpr(rest[1]))
    raise ParseError(f"unknown rule tag {tag!r}")


def derivation_to_sexpr(d: Derivation):
    if d.rule == "axiom":
        return axiom_to_sexpr(d.data[0])
    if d.rule == "hyp":
        ctx, a = d.data
        return ("rule", "hyp", tuple(formula_to_sexpr(c) for c in ctx),
                formula_to_sexpr(a))
    if d.rule == "weaken":
        (ctx,) = d.data
        return ("rule", "weaken", tuple(formula_to_sexpr(c) for c in ctx),
                derivation_to_sexpr(d.premises[0]))
    if d.rule == "ex-intro":
        target, witness = d.data
        return ("rule", "ex-intro", formula_to_sexpr(target),
                term_to_sexpr(witness), derivation_to_sexpr(d.premises[0]))
    if d.rule == "ex-elim":
        return ("rule", "ex-elim", d.data[0],
                derivation_to_sexpr(d.premises[0]),
                derivation_to_sexpr(d.premises[1]))
    if d.rule == "all-intro":
        return ("rule", "all-intro", d.data[0],
                derivation_to_sexpr(d.premises[0]))
    if d.rule == "all-elim":
        return ("rule", "all-elim", term_to_sexpr(d.data[0]),
                derivation_to_sexpr(d.premises[0]))
    return ("rule", d.rule) + tuple(derivation_to_sexpr(p) for p in d.premises)


@dataclass(frozen=True, slots=True)
class ProofFile:
    claim: Sequent
    derivation: Derivation


def proof_from_text(text: str) -> ProofFile:
    exprs = sexpr.read_all(text)
    if len(exprs) != 2:
        raise ParseError("a proof file holds a claim and one derivation")
    head = exprs[0]
    if not (isinstance(head, tuple) and len(head) == 2 and head[0] == "claim"):
        raise ParseError("missing (claim <sequent>) header")
    return ProofFile(sequent_from_sexpr(head[1]),
                     derivation_from_sexpr(exprs[1]))


def proof_to_text(pf: ProofFile) -> str:
    return (sexpr.to_text(("claim", sequent_to_sexpr(pf.claim))) + "\n"
            + sexpr.to_text(derivation_to_sexpr(pf.derivation)) + "\n")


def check_proof_file(pf: ProofFile) -> Sequent:
    """Check the derivation and confirm it proves the claimed sequent."""
    got = check(pf.derivation)
    from .syntax import sequent_alpha_eq
    if not sequent_alpha_eq(got, pf.claim):
        raise RuleMismatch((), f"claim mismatch: derivation proves '{got}', "
                               f"file claims '{pf.claim}'")
    return got
