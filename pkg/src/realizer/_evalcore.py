"""Call-by-value reduction of realizer terms under a fuel budget.

This is the hot kernel: the verifier calls it inside every quantifier
assignment.  It is written to compile cleanly with Cython (integer tag
dispatch, no pattern matching); the interpreted module is used when the
compiled extension is not built.

Values are closed terms in normal form.  A term may reduce to a tuple of
values (tuple-bodied lambdas, simultaneous recursion), so every internal
result is a list that callers splice.
"""

from .terms import (
    K_APP, K_BIND, K_JOIN, K_LAM, K_OPQ, K_PROJ, K_REC, K_SET, K_STATE,
    K_SUCC, K_TABLE, K_VAR, K_ZERO,
    Lam, RSucc, RZERO, SetLit, Table, canon_key, mk_set, state_join,
)


class Diverged(Exception):
    """Fuel ran out."""


class Stuck(Exception):
    """Reduction reached an ill-formed configuration."""


def eval_tuple(ts, env, fuel):
    """Evaluate a term tuple; returns (values, fuel_left)."""
    cell = [fuel]
    vals = []
    for t in ts:
        vals.extend(_eval(t, env, cell))
    return vals, cell[0]


def apply_value(f, argvals, fuel):
    """Apply an already-evaluated function value; returns (values, fuel_left)."""
    cell = [fuel]
    vals = _apply(f, list(argvals), cell)
    return vals, cell[0]


def _spend(cell, n):
    cell[0] -= n
    if cell[0] < 0:
        raise Diverged()


def _single(vals, what):
    if len(vals) != 1:
        raise Stuck(f"{what}: expected one value, got {len(vals)}")
    return vals[0]


def _eval(t, env, cell):
    k = t.kind

    if k == K_VAR:
        v = env.get(t.name)
        if v is None:
            raise Stuck(f"unbound variable {t.name!r}")
        return [v]

    if k == K_ZERO or k == K_STATE or k == K_OPQ or k == K_TABLE:
        return [t]

    if k == K_SUCC:
        v = _single(_eval(t.arg, env, cell), "succ argument")
        vk = v.kind
        if vk != K_ZERO and vk != K_SUCC:
            raise Stuck("succ of a non-numeral")
        return [RSucc(v)]

    if k == K_LAM:
        return [_close(t, env)]

    if k == K_APP:
        f = _single(_eval(t.head, env, cell), "application head")
        argvals = []
        for a in t.args:
            argvals.extend(_eval(a, env, cell))
        return _apply(f, argvals, cell)

    if k == K_REC:
        argv = _single(_eval(t.arg, env, cell), "recursor argument")
        n = 0
        while argv.kind == K_SUCC:
            n += 1
            argv = argv.arg
        if argv.kind != K_ZERO:
            raise Stuck("recursor argument is not a numeral")
        step = _single(_eval(t.step, env, cell), "recursor step")
        vals = []
        for b in t.base:
            vals.extend(_eval(b, env, cell))
        idx = RZERO
        for _ in range(n):
            _spend(cell, 1)
            vals = _apply(step, [idx] + vals, cell)
            idx = RSucc(idx)
        return vals

    if k == K_PROJ:
        vals = _eval(t.tup, env, cell)
        if t.index >= len(vals):
            raise Stuck(f"projection {t.index} out of range {len(vals)}")
        return [vals[t.index]]

    if k == K_SET:
        _spend(cell, 1)
        items = []
        for x in t.items:
            items.extend(_eval(x, env, cell))
        return [mk_set(items)]

    if k == K_JOIN:
        _spend(cell, 1)
        left = _single(_eval(t.left, env, cell), "join")
        right = _single(_eval(t.right, env, cell), "join")
        if left.kind == K_SET and right.kind == K_SET:
            return [mk_set(left.items + right.items)]
        if left.kind == K_STATE and right.kind == K_STATE:
            return [state_join(left, right)]
        raise Stuck("join of incompatible values")

    if k == K_BIND:
        f = _single(_eval(t.fn, env, cell), "big-union function")
        coll = _single(_eval(t.coll, env, cell), "big-union collection")
        if coll.kind != K_SET:
            raise Stuck("big-union over a non-set")
        items = []
        for x in coll.items:
            _spend(cell, 1)
            r = _single(_apply(f, [x], cell), "big-union element image")
            if r.kind != K_SET:
                raise Stuck("big-union image is not a set")
            items.extend(r.items)
        return [mk_set(items)]

    raise Stuck(f"cannot evaluate term kind {k}")


def _apply(f, argvals, cell):
    _spend(cell, 1)
    k = f.kind
    if k == K_LAM:
        if len(f.params) != len(argvals):
            raise Stuck(f"arity mismatch: {len(f.params)} parameters, "
                        f"{len(argvals)} arguments")
        env = {}
        i = 0
        for p in f.params:
            env[p] = argvals[i]
            i += 1
        vals = []
        for b in f.body:
            vals.extend(_eval(b, env, cell))
        return vals
    if k == K_TABLE:
        key = tuple(argvals)
        for tk, tv in f.entries:
            if tk == key:
                return [tv]
        if f.default is None:
            if len(argvals) != 1:
                raise Stuck("identity tables take one argument")
            return [argvals[0]]
        return [f.default]
    raise Stuck("applying a non-function value")


def _close(t, env):
    """Substitute closed values for the free variables of a lambda."""
    if not env:
        return t
    k = t.kind
    if k == K_VAR:
        v = env.get(t.name)
        return t if v is None else v
    if k == K_ZERO or k == K_STATE or k == K_OPQ:
        return t
    if k == K_SUCC:
        return RSucc(_close(t.arg, env))
    if k == K_LAM:
        inner = env
        for p in t.params:
            if p in inner:
                if inner is env:
                    inner = dict(env)
                del inner[p]
        if not inner:
            return t
        return Lam(t.params, tuple(_close(b, inner) for b in t.body))
    # Remaining constructors are rebuilt generically via their dataclass
    # fields; this path is rare (lambda bodies are mostly small).
    if k == K_APP:
        head = _close(t.head, env)
        args = tuple(_close(a, env) for a in t.args)
        return type(t)(head, args)
    if k == K_REC:
        return type(t)(tuple(_close(b, env) for b in t.base),
                       _close(t.step, env), _close(t.arg, env))
    if k == K_PROJ:
        return type(t)(t.index, _close(t.tup, env))
    if k == K_SET:
        return SetLit(tuple(_close(x, env) for x in t.items))
    if k == K_JOIN:
        return type(t)(_close(t.left, env), _close(t.right, env))
    if k == K_BIND:
        return type(t)(_close(t.fn, env), _close(t.coll, env))
    if k == K_TABLE:
        return Table(tuple((tuple(_close(a, env) for a in keys),
                            _close(b, env))
                           for keys, b in t.entries),
                     None if t.default is None else _close(t.default, env))
    raise Stuck(f"cannot close term kind {k}")
