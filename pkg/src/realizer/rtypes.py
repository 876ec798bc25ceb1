"""Simple types for realizer terms and a small unification-based inferencer.

Types: ``nat``, finite sets ``T*``, knowledge states, the opaque witness
type, and multi-argument arrows.  A tuple of terms has a tuple of types;
a tuple-bodied lambda or a simultaneous recursor is a single term whose
type is a tuple (one arrow per component).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IllTyped
from . import terms as tm


class RType:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class TNat(RType):
    pass


@dataclass(frozen=True, slots=True)
class TState(RType):
    pass


@dataclass(frozen=True, slots=True)
class TOpaque(RType):
    pass


@dataclass(frozen=True, slots=True)
class TSet(RType):
    elem: RType


@dataclass(frozen=True, slots=True)
class TArrow(RType):
    args: tuple[RType, ...]
    ret: RType


@dataclass(frozen=True, slots=True)
class TVar(RType):
    ident: int


NAT = TNat()
STATE = TState()
OPAQUE = TOpaque()

RTypeTuple = tuple


def arrow(args, ret_tuple) -> RTypeTuple:
    """The tuple arrow: one curried arrow per component of the result tuple;
    an empty argument tuple collapses to the result itself."""
    args = tuple(args)
    ret_tuple = tuple(ret_tuple)
    if not args:
        return ret_tuple
    return tuple(TArrow(args, r) for r in ret_tuple)


def type_to_sexpr(t: RType):
    if isinstance(t, TNat):
        return "nat"
    if isinstance(t, TState):
        return "state"
    if isinstance(t, TOpaque):
        return "opq"
    if isinstance(t, TSet):
        return ("set*", type_to_sexpr(t.elem))
    if isinstance(t, TArrow):
        return ("->", tuple(type_to_sexpr(a) for a in t.args),
                type_to_sexpr(t.ret))
    if isinstance(t, TVar):
        return f"?{t.ident}"
    raise TypeError(t)


def type_to_text(t: RType) -> str:
    from . import sexpr
    return sexpr.to_text(type_to_sexpr(t))


def tuple_type_to_text(ts) -> str:
    from . import sexpr
    return sexpr.to_text(("tuple",) + tuple(type_to_sexpr(t) for t in ts)) \
        if len(ts) != 1 else type_to_text(ts[0])


class _Infer:
    def __init__(self):
        self.subst: dict[int, RType] = {}
        self.counter = 0
        self.joinable: list[RType] = []

    def fresh(self) -> TVar:
        self.counter += 1
        return TVar(self.counter)

    def resolve(self, t: RType) -> RType:
        while isinstance(t, TVar) and t.ident in self.subst:
            t = self.subst[t.ident]
        if isinstance(t, TSet):
            return TSet(self.resolve(t.elem))
        if isinstance(t, TArrow):
            return TArrow(tuple(self.resolve(a) for a in t.args),
                          self.resolve(t.ret))
        return t

    def _occurs(self, ident: int, t: RType) -> bool:
        t = self.resolve(t)
        if isinstance(t, TVar):
            return t.ident == ident
        if isinstance(t, TSet):
            return self._occurs(ident, t.elem)
        if isinstance(t, TArrow):
            return (any(self._occurs(ident, a) for a in t.args)
                    or self._occurs(ident, t.ret))
        return False

    def unify(self, a: RType, b: RType):
        a, b = self.resolve(a), self.resolve(b)
        if a == b:
            return
        if isinstance(a, TVar):
            if self._occurs(a.ident, b):
                raise IllTyped("occurs check failed")
            self.subst[a.ident] = b
            return
        if isinstance(b, TVar):
            self.unify(b, a)
            return
        if isinstance(a, TSet) and isinstance(b, TSet):
            self.unify(a.elem, b.elem)
            return
        if isinstance(a, TArrow) and isinstance(b, TArrow):
            if len(a.args) != len(b.args):
                raise IllTyped(
                    f"arity mismatch: {type_to_text(a)} vs {type_to_text(b)}")
            for x, y in zip(a.args, b.args):
                self.unify(x, y)
            self.unify(a.ret, b.ret)
            return
        raise IllTyped(f"cannot unify {type_to_text(a)} with {type_to_text(b)}")

    def infer_tuple(self, ts, ctx) -> list[RType]:
        out: list[RType] = []
        for t in ts:
            out.extend(self.infer(t, ctx))
        return out

    def infer(self, t, ctx) -> list[RType]:
        if isinstance(t, tm.RVar):
            ty = ctx.get(t.name)
            if ty is None:
                raise IllTyped(f"unbound variable {t.name!r}")
            return [ty]
        if isinstance(t, tm.RZero):
            return [NAT]
        if isinstance(t, tm.RSucc):
            (ty,) = self._one(t.arg, ctx, "succ")
            self.unify(ty, NAT)
            return [NAT]
        if isinstance(t, tm.Lam):
            ptypes = tuple(self.fresh() for _ in t.params)
            inner = dict(ctx)
            inner.update(zip(t.params, ptypes))
            body = self.infer_tuple(t.body, inner)
            return [TArrow(ptypes, r) for r in body]
        if isinstance(t, tm.App):
            heads = self.infer(t.head, ctx)
            args = tuple(self.infer_tuple(t.args, ctx))
            out = []
            for h in heads:
                r = self.fresh()
                self.unify(h, TArrow(args, r))
                out.append(r)
            return out
        if isinstance(t, tm.Rec):
            base = self.infer_tuple(t.base, ctx)
            (argty,) = self._one(t.arg, ctx, "recursor argument")
            self.unify(argty, NAT)
            steps = self.infer(t.step, ctx)
            if len(steps) != len(base):
                raise IllTyped("recursor step width differs from base width")
            sig = (NAT,) + tuple(base)
            for s, r in zip(steps, base):
                self.unify(s, TArrow(sig, r))
            return list(base)
        if isinstance(t, tm.Proj):
            inner = self.infer(t.tup, ctx)
            if t.index >= len(inner):
                raise IllTyped(f"projection {t.index} out of range {len(inner)}")
            return [inner[t.index]]
        if isinstance(t, tm.SetLit):
            elem = self.fresh()
            for x in t.items:
                (ty,) = self._one(x, ctx, "set element")
                self.unify(ty, elem)
            return [TSet(elem)]
        if isinstance(t, tm.Join):
            (l,) = self._one(t.left, ctx, "join")
            (r,) = self._one(t.right, ctx, "join")
            self.unify(l, r)
            self.joinable.append(l)
            return [l]
        if isinstance(t, tm.SetBind):
            (cty,) = self._one(t.coll, ctx, "big-union collection")
            elem, out = self.fresh(), self.fresh()
            self.unify(cty, TSet(elem))
            (fty,) = self._one(t.fn, ctx, "big-union function")
            self.unify(fty, TArrow((elem,), TSet(out)))
            return [TSet(out)]
        if isinstance(t, tm.StateLit):
            return [STATE]
        if isinstance(t, tm.Table):
            width = len(t.entries[0][0]) if t.entries else 1
            keys = tuple(self.fresh() for _ in range(width))
            out = self.fresh()
            for ks, v in t.entries:
                if len(ks) != width:
                    raise IllTyped("table entries have mixed arities")
                for k, key_ty in zip(ks, keys):
                    (kt,) = self._one(k, ctx, "table key")
                    self.unify(kt, key_ty)
                (vt,) = self._one(v, ctx, "table value")
                self.unify(vt, out)
            if t.default is None:
                if width != 1:
                    raise IllTyped("identity tables take one argument")
                self.unify(keys[0], out)
            else:
                (dt,) = self._one(t.default, ctx, "table default")
                self.unify(dt, out)
            return [TArrow(keys, out)]
        if isinstance(t, tm.Opaque):
            return [OPAQUE]
        raise IllTyped(f"cannot type {t!r}")

    def _one(self, t, ctx, what) -> list[RType]:
        tys = self.infer(t, ctx)
        if len(tys) != 1:
            raise IllTyped(f"{what}: expected a single value")
        return tys

    def finish(self):
        for ty in self.joinable:
            ty = self.resolve(ty)
            if not isinstance(ty, (TSet, TState, TVar)):
                raise IllTyped(f"join at non-joinable type {type_to_text(ty)}")


def infer_types(ts, ctx=None) -> RTypeTuple:
    """Principal types of a term tuple; leftover inference variables are
    reported as ``?n`` placeholders."""
    eng = _Infer()
    out = eng.infer_tuple(tuple(ts), dict(ctx or {}))
    eng.finish()
    return tuple(eng.resolve(t) for t in out)


def infer_type(t, ctx=None) -> RType:
    out = infer_types((t,), ctx)
    if len(out) != 1:
        raise IllTyped("term is tuple-valued; it has a tuple of types")
    return out[0]


def check_tuple(ts, expected, ctx=None):
    """Check a term tuple against an expected type tuple (unifies, so
    underdetermined components are accepted when consistent)."""
    eng = _Infer()
    got = eng.infer_tuple(tuple(ts), dict(ctx or {}))
    expected = tuple(expected)
    if len(got) != len(expected):
        raise IllTyped(
            f"width mismatch: {len(got)} values for {len(expected)} types")
    for g, e in zip(got, expected):
        eng.unify(g, e)
    eng.finish()
