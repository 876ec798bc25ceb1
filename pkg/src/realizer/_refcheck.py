"""Naive reference evaluator for target-formula truth.

This is the anti-bug oracle for the main verifier: the dumbest possible
recursion over the formula, with no short-circuiting, no counterexample
bookkeeping and no caching.  Quantifier domains are materialized as lists
and every branch is evaluated.  Tests compare it with the main verifier on
the whole corpus.
"""

from __future__ import annotations

from . import target as tg
from . import terms as tm
from .evaluator import DIVERGED, STUCK, VALUE, evaluate


class RefUnknown(Exception):
    """A resource cap prevented a definite answer."""


def _value(t, env, fuel):
    r = evaluate((t,), env, fuel)
    if r.status == DIVERGED:
        raise RefUnknown("fuel exhausted")
    if r.status == STUCK:
        return None
    if len(r.values) != 1:
        return None
    return r.values[0]


def ref_truth(tf, env, uni) -> bool:
    fuel = uni.fuel
    if isinstance(tf, tg.TTrue):
        return True
    if isinstance(tf, tg.TFalse):
        return False
    if isinstance(tf, tg.TEq):
        a = _value(tf.left, env, fuel)
        b = _value(tf.right, env, fuel)
        return a is not None and b is not None and a == b
    if isinstance(tf, tg.TLe):
        a = _value(tf.left, env, fuel)
        b = _value(tf.right, env, fuel)
        if a is None or b is None:
            return False
        try:
            return tm.rnum_value(a) <= tm.rnum_value(b)
        except ValueError:
            return False
    if isinstance(tf, tg.TMember):
        e = _value(tf.elem, env, fuel)
        s = _value(tf.coll, env, fuel)
        if e is None or not isinstance(s, tm.SetLit):
            return False
        return e in s.items
    if isinstance(tf, tg.TOpaqueP):
        v = _value(tf.arg, env, fuel)
        return v is not None and uni.opaque_holds(v)
    if isinstance(tf, tg.TDefined):
        results = [evaluate((t,), env, fuel).status == VALUE
                   for t in tf.terms]
        return all(results)
    if isinstance(tf, tg.TAnd):
        results = [ref_truth(tf.left, env, uni), ref_truth(tf.right, env, uni)]
        return results[0] and results[1]
    if isinstance(tf, tg.TOr):
        results = [ref_truth(tf.left, env, uni), ref_truth(tf.right, env, uni)]
        return results[0] or results[1]
    if isinstance(tf, tg.TImp):
        results = [ref_truth(tf.left, env, uni), ref_truth(tf.right, env, uni)]
        return (not results[0]) or results[1]
    if isinstance(tf, tg.TForallSrc):
        results = [ref_truth(tf.body, {**env, tf.var: n}, uni)
                   for n in uni.naturals()]
        return all(results)
    if isinstance(tf, tg.TExistsSrc):
        results = [ref_truth(tf.body, {**env, tf.var: n}, uni)
                   for n in uni.naturals()]
        return any(results)
    if isinstance(tf, (tg.TForallReal, tg.TExistsReal)):
        domains = [uni.enum(ty) for ty in tf.types]
        results = []
        for combo in _product(domains):
            inner = dict(env)
            inner.update(zip(tf.vars, combo))
            results.append(ref_truth(tf.body, inner, uni))
        if isinstance(tf, tg.TForallReal):
            return all(results)
        return any(results)
    raise TypeError(tf)


def _product(domains):
    if not domains:
        return [()]
    rest = _product(domains[1:])
    return [(d,) + r for d in domains[0] for r in rest]
