"""The judgement checker: context/type/term checking in quadratic time.

The top-level ``check`` decomposes a judgement the way the complexity
argument does: first the context is validated entry by entry, then the
candidate type under the promise that the context is fine, then the term
under the promise that the type is fine.  The promise-carrying stages are
module-internal (``_check_type_star``/``_check_term_star``): they are allowed
to answer arbitrarily when their promise is violated, so external callers only
get the safe composition.

Under the promises, each constructor is handled by exactly one rule, so the
checker makes one equality comparison against the stated result type plus a
fixed set of recursive calls, and never re-derives a premise that unique
derivability already guarantees.  In particular both computation constructors
(`betaconv`, `idconv`, and their Nat analogues) are pure comparisons with
zero recursive calls.  All comparisons go through the lazy environment
comparator, so their cost is bounded by the size of the input type, not by
the size of any substituted form; the one materialization is the identity
eliminator's motive instance for the base premise, whose size the cost budget
explicitly covers.

There is no normalization, reduction or conversion checking anywhere in this
module: equality of types is syntactic equality, full stop.

``CheckReport.steps`` is a deterministic work counter: one unit per processed
obligation, per comparison step, per variable-lookup hop and per materialized
node.  The benchmark gates on it instead of wall time.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional, Union

from . import kernel as _k
from .kernel import (
    APP, BETA, CLO, CONST, ID, IDCONV, IDREC, LAM, NAT, NATCONVSUCC,
    NATCONVZERO, NATREC, PI, REFL, SUCC, VAR, ZERO,
)
from .terms import Context, Signature, Term

__all__ = [
    "CheckReport", "Judgement", "CtxtWF", "TypeWF", "HasType",
    "check", "check_ctxt", "infer", "InferFailure",
]


@dataclass(frozen=True)
class CtxtWF:
    ctx: Context


@dataclass(frozen=True)
class TypeWF:
    ctx: Context
    ty: Term


@dataclass(frozen=True)
class HasType:
    ctx: Context
    term: Term
    ty: Term


Judgement = Union[CtxtWF, TypeWF, HasType]


@dataclass(frozen=True)
class CheckReport:
    verdict: str  # "accept" or "reject"
    reason: Optional[str]
    locus: Optional[tuple]
    steps: int
    nanoseconds: int

    @property
    def ok(self) -> bool:
        return self.verdict == "accept"

    def to_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "locus": list(self.locus) if self.locus is not None else None,
            "steps": self.steps,
            "nanoseconds": self.nanoseconds,
        }


class InferFailure(Exception):
    def __init__(self, reason: str, locus: tuple = ()):
        super().__init__(f"{reason} at {list(locus)}")
        self.reason = reason
        self.locus = locus


_TYPE = 0
_TERM = 1

# Task tuples: (kind, ctx cons-list, subject, target-or-None, path cons-list).
# The context is a linked list (entry, parent) with the innermost entry at the
# head, so extending it is O(1); looking up index i walks i links and the
# walk is charged to the step counter.


def _cons_ctx(ctx: Context):
    c = None
    for ty in ctx:
        c = (ty, c)
    return c


def _path(p) -> tuple:
    out = []
    while p is not None:
        out.append(p[0])
        p = p[1]
    out.reverse()
    return tuple(out)


def _run(sig: Signature, stack: list, trace=None):
    """Process obligations depth-first; first failure wins.

    Returns (ok, reason, locus-path, steps).
    """
    consts = sig.constants
    atomics = sig.atomic_types
    steps = 0
    while stack:
        kind, ctx, t, target, path = stack.pop()
        steps += 1
        tag = t[0]
        if kind == _TYPE:
            if tag == PI:
                stack.append((_TYPE, (t[1], ctx), t[2], None, (1, path)))
                stack.append((_TYPE, ctx, t[1], None, (0, path)))
                if trace is not None:
                    trace.append((kind, tag, 2))
            elif tag == ID:
                stack.append((_TERM, ctx, t[3], t[1], (2, path)))
                stack.append((_TERM, ctx, t[2], t[1], (1, path)))
                stack.append((_TYPE, ctx, t[1], None, (0, path)))
                if trace is not None:
                    trace.append((kind, tag, 3))
            elif tag == NAT:
                if trace is not None:
                    trace.append((kind, tag, 0))
            elif tag == CONST and t[1] in atomics:
                if trace is not None:
                    trace.append((kind, tag, 0))
            else:
                return False, "not a type", _path(path), steps
            continue

        # term against target
        if tag == VAR:
            i = t[1]
            entry = ctx
            hops = 0
            while entry is not None and hops < i:
                entry = entry[1]
                hops += 1
            steps += hops
            if entry is None:
                return False, "unbound variable", _path(path), steps
            eq, c = _k.eq_lazy((CLO, entry[0], (0, (), i + 1)), target)
            steps += c
            if not eq:
                return False, "variable type mismatch", _path(path), steps
            pushed = 0
        elif tag == CONST:
            declared = consts.get(t[1])
            if declared is None:
                return False, "not a term constant", _path(path), steps
            eq, c = _k.eq_lazy(declared, target)
            steps += c
            if not eq:
                return False, "constant type mismatch", _path(path), steps
            pushed = 0
        elif tag == LAM:
            a, b, body = t[1], t[2], t[3]
            eq, c = _k.eq_lazy((PI, a, b), target)
            steps += c
            if not eq:
                return False, "lambda against non-matching type", _path(path), steps
            stack.append((_TERM, (a, ctx), body, b, (2, path)))
            pushed = 1
        elif tag == APP:
            a, b, fun, arg = t[1], t[2], t[3], t[4]
            eq, c = _k.eq_lazy((CLO, b, (0, (arg,), 0)), target)
            steps += c
            if not eq:
                return False, "application result mismatch", _path(path), steps
            stack.append((_TERM, ctx, arg, a, (3, path)))
            stack.append((_TERM, ctx, fun, (PI, a, b), (2, path)))
            stack.append((_TYPE, (a, ctx), b, None, (1, path)))
            stack.append((_TYPE, ctx, a, None, (0, path)))
            pushed = 4
        elif tag == BETA:
            a, b, arg, body = t[1], t[2], t[3], t[4]
            sub = (0, (arg,), 0)
            expected = (
                ID,
                (CLO, b, sub),
                (APP, a, b, (LAM, a, b, body), arg),
                (CLO, body, sub),
            )
            eq, c = _k.eq_lazy(expected, target)
            steps += c
            if not eq:
                return False, "betaconv type mismatch", _path(path), steps
            pushed = 0
        elif tag == REFL:
            a, point = t[1], t[2]
            eq, c = _k.eq_lazy((ID, a, point, point), target)
            steps += c
            if not eq:
                return False, "refl type mismatch", _path(path), steps
            stack.append((_TERM, ctx, point, a, (1, path)))
            pushed = 1
        elif tag == IDREC:
            a, p, lhs, rhs, pth, base = t[1], t[2], t[3], t[4], t[5], t[6]
            eq, c = _k.eq_lazy((CLO, p, (0, (pth, rhs, lhs), 0)), target)
            steps += c
            if not eq:
                return False, "idrec result mismatch", _path(path), steps
            a1, c1 = _k.inst(a, (), 1, 0)
            a2, c2 = _k.inst(a, (), 2, 0)
            minst, c3 = _k.inst(p, ((REFL, a1, (VAR, 0)), (VAR, 0), (VAR, 0)), 1, 0)
            steps += c1 + c2 + c3
            ctx3 = ((ID, a2, (VAR, 1), (VAR, 0)), (a1, (a, ctx)))
            stack.append((_TERM, (a, ctx), base, minst, (5, path)))
            stack.append((_TERM, ctx, pth, (ID, a, lhs, rhs), (4, path)))
            stack.append((_TERM, ctx, rhs, a, (3, path)))
            stack.append((_TERM, ctx, lhs, a, (2, path)))
            stack.append((_TYPE, ctx3, p, None, (1, path)))
            stack.append((_TYPE, ctx, a, None, (0, path)))
            pushed = 6
        elif tag == IDCONV:
            a, p, point, base = t[1], t[2], t[3], t[4]
            rfl = (REFL, a, point)
            expected = (
                ID,
                (CLO, p, (0, (rfl, point, point), 0)),
                (IDREC, a, p, point, point, rfl, base),
                (CLO, base, (0, (point,), 0)),
            )
            eq, c = _k.eq_lazy(expected, target)
            steps += c
            if not eq:
                return False, "idconv type mismatch", _path(path), steps
            pushed = 0
        elif tag == ZERO:
            eq, c = _k.eq_lazy((NAT,), target)
            steps += c
            if not eq:
                return False, "zero against non-Nat type", _path(path), steps
            pushed = 0
        elif tag == SUCC:
            eq, c = _k.eq_lazy((NAT,), target)
            steps += c
            if not eq:
                return False, "succ against non-Nat type", _path(path), steps
            stack.append((_TERM, ctx, t[1], (NAT,), (0, path)))
            pushed = 1
        elif tag == NATREC:
            p, z, s, scrut = t[1], t[2], t[3], t[4]
            eq, c = _k.eq_lazy((CLO, p, (0, (scrut,), 0)), target)
            steps += c
            if not eq:
                return False, "natrec result mismatch", _path(path), steps
            pz, c1 = _k.inst(p, ((ZERO,),), 0, 0)
            ps, c2 = _k.inst(p, ((SUCC, (VAR, 1)),), 2, 0)
            steps += c1 + c2
            stack.append((_TERM, ctx, scrut, (NAT,), (3, path)))
            stack.append((_TERM, (p, ((NAT,), ctx)), s, ps, (2, path)))
            stack.append((_TERM, ctx, z, pz, (1, path)))
            stack.append((_TYPE, ((NAT,), ctx), p, None, (0, path)))
            pushed = 4
        elif tag == NATCONVZERO:
            p, z, s = t[1], t[2], t[3]
            expected = (
                ID,
                (CLO, p, (0, ((ZERO,),), 0)),
                (NATREC, p, z, s, (ZERO,)),
                z,
            )
            eq, c = _k.eq_lazy(expected, target)
            steps += c
            if not eq:
                return False, "natconv_zero type mismatch", _path(path), steps
            pushed = 0
        elif tag == NATCONVSUCC:
            p, z, s, m = t[1], t[2], t[3], t[4]
            expected = (
                ID,
                (CLO, p, (0, ((SUCC, m),), 0)),
                (NATREC, p, z, s, (SUCC, m)),
                (CLO, s, (0, ((NATREC, p, z, s, m), m), 0)),
            )
            eq, c = _k.eq_lazy(expected, target)
            steps += c
            if not eq:
                return False, "natconv_succ type mismatch", _path(path), steps
            pushed = 0
        else:
            return False, "no term-level rule for this constructor", _path(path), steps
        if trace is not None:
            trace.append((kind, tag, pushed))
    return True, None, None, steps


def _seed_judgement(j: Judgement) -> list:
    """Build the initial obligation stack: context entries first, then the
    type stage, then the term stage (later stages are not reached if an
    earlier one fails)."""
    stack = []
    if isinstance(j, HasType):
        full = _cons_ctx(j.ctx)
        stack.append((_TERM, full, j.term, j.ty, ("term", None)))
        stack.append((_TYPE, full, j.ty, None, ("type", None)))
        ctx = j.ctx
    elif isinstance(j, TypeWF):
        stack.append((_TYPE, _cons_ctx(j.ctx), j.ty, None, ("type", None)))
        ctx = j.ctx
    else:
        ctx = j.ctx
    for i in range(len(ctx) - 1, -1, -1):
        stack.append((_TYPE, _cons_ctx(ctx[:i]), ctx[i], None, (("ctx", i), None)))
    return stack


def check(sig: Signature, j: Judgement) -> CheckReport:
    """Decide a judgement from scratch; the safe, promise-free entry point."""
    t0 = time.perf_counter_ns()
    ok, reason, locus, steps = _run(sig, _seed_judgement(j))
    ns = time.perf_counter_ns() - t0
    if ok:
        return CheckReport("accept", None, None, steps, ns)
    return CheckReport("reject", reason, locus, steps, ns)


def check_ctxt(sig: Signature, ctx: Context) -> CheckReport:
    """Decide that ``ctx`` is a well-formed context."""
    return check(sig, CtxtWF(ctx))


def _check_type_star(sig: Signature, ctx: Context, sigma: Term) -> CheckReport:
    """PROMISE: ctx is well-formed.  Internal."""
    t0 = time.perf_counter_ns()
    ok, reason, locus, steps = _run(
        sig, [(_TYPE, _cons_ctx(ctx), sigma, None, None)]
    )
    ns = time.perf_counter_ns() - t0
    return CheckReport("accept" if ok else "reject", reason, locus, steps, ns)


def _check_term_star(sig: Signature, ctx: Context, a: Term, sigma: Term) -> CheckReport:
    """PROMISE: sigma is a type over ctx.  Internal."""
    t0 = time.perf_counter_ns()
    ok, reason, locus, steps = _run(
        sig, [(_TERM, _cons_ctx(ctx), a, sigma, None)]
    )
    ns = time.perf_counter_ns() - t0
    return CheckReport("accept" if ok else "reject", reason, locus, steps, ns)


def _case_recursion_count(sig: Signature, ctx: Context, a: Term, sigma: Term) -> int:
    """Recursive obligations pushed for the head constructor of ``a`` alone
    (testing hook for the per-rule call-count discipline)."""
    trace: list = []
    ok, reason, locus, _ = _run(
        sig, [(_TERM, _cons_ctx(ctx), a, sigma, None)], trace=trace
    )
    if not ok:
        raise InferFailure(reason or "rejected", locus or ())
    return trace[0][2]


def _type_case_recursion_count(sig: Signature, ctx: Context, sigma: Term) -> int:
    """As above but for the head of a type-formation obligation."""
    trace: list = []
    ok, reason, locus, _ = _run(
        sig, [(_TYPE, _cons_ctx(ctx), sigma, None, None)], trace=trace
    )
    if not ok:
        raise InferFailure(reason or "rejected", locus or ())
    return trace[0][2]


# Type synthesis.  Uniqueness of types makes the result canonical: the one
# type the checker would accept.  Unlike the starred stages this verifies
# every premise, since nothing has been promised about the pieces.

def infer(sig: Signature, ctx: Context, a: Term) -> Term:
    """Return the unique type of ``a`` over ``ctx`` (which must be
    well-formed), or raise InferFailure."""
    return _infer(sig, _cons_ctx(ctx), a, None)


def _require_type(sig, ctx, ty, path):
    ok, reason, locus, _ = _run(sig, [(_TYPE, ctx, ty, None, path)])
    if not ok:
        raise InferFailure(reason or "not a type", locus or ())


def _require_term(sig, ctx, a, ty, path):
    ok, reason, locus, _ = _run(sig, [(_TERM, ctx, a, ty, path)])
    if not ok:
        raise InferFailure(reason or "ill-typed", locus or ())


def _infer(sig: Signature, ctx, a: Term, path) -> Term:
    tag = a[0]
    if tag == VAR:
        i = a[1]
        entry = ctx
        while entry is not None and i > 0:
            entry = entry[1]
            i -= 1
        if entry is None:
            raise InferFailure("unbound variable", _path(path))
        out, _ = _k.inst(entry[0], (), a[1] + 1, 0)
        return out
    if tag == CONST:
        declared = sig.constants.get(a[1])
        if declared is None:
            raise InferFailure("not a term constant", _path(path))
        return declared
    if tag == LAM:
        dom, cod, body = a[1], a[2], a[3]
        _require_type(sig, ctx, dom, (0, path))
        _require_type(sig, (dom, ctx), cod, (1, path))
        _require_term(sig, (dom, ctx), body, cod, (2, path))
        return (PI, dom, cod)
    if tag == APP:
        dom, cod, fun, arg = a[1], a[2], a[3], a[4]
        _require_type(sig, ctx, dom, (0, path))
        _require_type(sig, (dom, ctx), cod, (1, path))
        _require_term(sig, ctx, fun, (PI, dom, cod), (2, path))
        _require_term(sig, ctx, arg, dom, (3, path))
        out, _ = _k.inst(cod, (arg,), 0, 0)
        return out
    if tag == BETA:
        dom, cod, arg, body = a[1], a[2], a[3], a[4]
        _require_type(sig, ctx, dom, (0, path))
        _require_type(sig, (dom, ctx), cod, (1, path))
        _require_term(sig, (dom, ctx), body, cod, (3, path))
        _require_term(sig, ctx, arg, dom, (2, path))
        cod_a, _ = _k.inst(cod, (arg,), 0, 0)
        body_a, _ = _k.inst(body, (arg,), 0, 0)
        return (ID, cod_a, (APP, dom, cod, (LAM, dom, cod, body), arg), body_a)
    if tag == REFL:
        over, point = a[1], a[2]
        _require_type(sig, ctx, over, (0, path))
        _require_term(sig, ctx, point, over, (1, path))
        return (ID, over, point, point)
    if tag == IDREC or tag == IDCONV:
        over = a[1]
        motive = a[2]
        _require_type(sig, ctx, over, (0, path))
        a1, _ = _k.inst(over, (), 1, 0)
        a2, _ = _k.inst(over, (), 2, 0)
        ctx3 = ((ID, a2, (VAR, 1), (VAR, 0)), (a1, (over, ctx)))
        _require_type(sig, ctx3, motive, (1, path))
        minst, _ = _k.inst(motive, ((REFL, a1, (VAR, 0)), (VAR, 0), (VAR, 0)), 1, 0)
        if tag == IDREC:
            lhs, rhs, pth, base = a[3], a[4], a[5], a[6]
            _require_term(sig, ctx, lhs, over, (2, path))
            _require_term(sig, ctx, rhs, over, (3, path))
            _require_term(sig, ctx, pth, (ID, over, lhs, rhs), (4, path))
            _require_term(sig, (over, ctx), base, minst, (5, path))
            out, _ = _k.inst(motive, (pth, rhs, lhs), 0, 0)
            return out
        point, base = a[3], a[4]
        _require_term(sig, ctx, point, over, (2, path))
        _require_term(sig, (over, ctx), base, minst, (3, path))
        rfl = (REFL, over, point)
        p_pt, _ = _k.inst(motive, (rfl, point, point), 0, 0)
        base_pt, _ = _k.inst(base, (point,), 0, 0)
        return (ID, p_pt, (IDREC, over, motive, point, point, rfl, base), base_pt)
    if tag == ZERO:
        return (NAT,)
    if tag == SUCC:
        _require_term(sig, ctx, a[1], (NAT,), (0, path))
        return (NAT,)
    if tag == NATREC or tag == NATCONVZERO or tag == NATCONVSUCC:
        motive, z, s = a[1], a[2], a[3]
        _require_type(sig, ((NAT,), ctx), motive, (0, path))
        pz, _ = _k.inst(motive, ((ZERO,),), 0, 0)
        ps, _ = _k.inst(motive, ((SUCC, (VAR, 1)),), 2, 0)
        _require_term(sig, ctx, z, pz, (1, path))
        _require_term(sig, (motive, ((NAT,), ctx)), s, ps, (2, path))
        if tag == NATREC:
            scrut = a[4]
            _require_term(sig, ctx, scrut, (NAT,), (3, path))
            out, _ = _k.inst(motive, (scrut,), 0, 0)
            return out
        if tag == NATCONVZERO:
            return (ID, pz, (NATREC, motive, z, s, (ZERO,)), z)
        m = a[4]
        _require_term(sig, ctx, m, (NAT,), (3, path))
        p_sm, _ = _k.inst(motive, ((SUCC, m),), 0, 0)
        s_inst, _ = _k.inst(s, ((NATREC, motive, z, s, m), m), 0, 0)
        return (ID, p_sm, (NATREC, motive, z, s, (SUCC, m)), s_inst)
    raise InferFailure("no term-level rule for this constructor", _path(path))
