"""Independent derivability oracle: exhaustive bottom-up rule enumeration.

Used only by tests, as the ground truth the checker is compared against.  It
shares nothing with the checker's machinery: substitution here is the naive
recursive definition, and derivability is decided by generating every
derivable judgement within explicit size caps (applying each inference rule
to everything derived so far, until a fixpoint), then testing membership.
That makes it hopeless on large inputs and trustworthy on small ones, which
is exactly the trade a test oracle wants.

Every stored judgement is derivable by construction: each one is produced by
a rule from stored premises, starting from the declared roots.  Completeness
is budgeted: a root context carries a term-size budget, and extending the
context (entering a binder) costs at least the size the derived term must
invest in the corresponding annotation, so any derivation of a term within
the root budget stays inside the enumerated space.  Queries below the caps
are therefore answered exactly; queries beyond them raise
ResourceCapExceeded instead of guessing.
"""

from __future__ import annotations

from itertools import product

from .checker import CtxtWF, Judgement, TypeWF
from .kernel import (
    APP, BETA, CONST, ID, IDCONV, IDREC, LAM, NAT, NATCONVSUCC,
    NATCONVZERO, NATREC, PI, REFL, SUCC, VAR, ZERO,
)
from .terms import Context, Signature, Term

__all__ = ["DerivationSpace", "oracle_derivable", "ResourceCapExceeded", "all_terms"]


class ResourceCapExceeded(Exception):
    pass


_BINDERS = {
    PI: (0, 1),
    LAM: (0, 1, 1),
    APP: (0, 1, 0, 0),
    BETA: (0, 1, 0, 1),
    ID: (0, 0, 0),
    REFL: (0, 0),
    IDREC: (0, 3, 0, 0, 0, 1),
    IDCONV: (0, 3, 0, 1),
    SUCC: (0,),
    NATREC: (1, 0, 2, 0),
    NATCONVZERO: (1, 0, 2),
    NATCONVSUCC: (1, 0, 2, 0),
}


def _size(t) -> int:
    if t[0] <= CONST or len(t) == 1:
        return 1
    return 1 + sum(_size(c) for c in t[1:])


def _shift(t, by, cutoff=0):
    tag = t[0]
    if tag == VAR:
        return (VAR, t[1] + by) if t[1] >= cutoff else t
    if tag == CONST or len(t) == 1:
        return t
    binders = _BINDERS[tag]
    return (tag,) + tuple(
        _shift(c, by, cutoff + binders[i]) for i, c in enumerate(t[1:])
    )


def _sub0(t, a, depth=0):
    """Replace index ``depth`` by ``a`` (shifted), decrement higher indices."""
    tag = t[0]
    if tag == VAR:
        i = t[1]
        if i == depth:
            return _shift(a, depth)
        return (VAR, i - 1) if i > depth else t
    if tag == CONST or len(t) == 1:
        return t
    binders = _BINDERS[tag]
    return (tag,) + tuple(
        _sub0(c, a, depth + binders[i]) for i, c in enumerate(t[1:])
    )


def _sub3(t, t0, t1, t2):
    """Substitute indices 0,1,2 simultaneously (t0,t1,t2 expressed in the
    result context) as three nested single substitutions."""
    return _sub0(_sub0(_sub0(t, _shift(t0, 2)), _shift(t1, 1)), t2)


class DerivationSpace:
    """All derivable judgements over a signature within size budgets.

    ``budget[ctx]`` bounds the size of terms derived over ``ctx``; context
    extensions decrement it by the term material a derivation must spend to
    enter the binder, so the context tree is finite and small.
    """

    def __init__(self, sig: Signature, max_term=8, roots=(), rounds=None,
                 slot_cap=None):
        self.sig = sig
        self.max_term = max_term
        self.slot_cap = slot_cap
        self.types: dict[Context, dict] = {}
        self.terms: dict[Context, dict] = {}
        self.budget: dict[Context, int] = {}
        self._register((), max_term)
        for ctx in roots:
            for i in range(len(ctx) + 1):
                self._register(ctx[:i], max_term)
        self._build(rounds)

    def _register(self, ctx: Context, budget: int):
        old = self.budget.get(ctx)
        if old is None:
            self.types[ctx] = {}
            self.terms[ctx] = {}
            self.budget[ctx] = budget
            return True
        if budget > old:
            self.budget[ctx] = budget
            return True
        return False

    def _build(self, rounds):
        done = 0
        changed = True
        while changed and (rounds is None or done < rounds):
            changed = False
            done += 1
            for ctx in list(self.types):
                if self._pass(ctx):
                    changed = True

    def _pass(self, ctx: Context) -> bool:
        sig = self.sig
        types = self.types[ctx]
        terms = self.terms[ctx]
        tb = self.budget[ctx]
        changed = False

        cap = self.slot_cap

        def add_type(ty):
            nonlocal changed
            if _size(ty) <= tb + 2 and ty not in types:
                types[ty] = None
                changed = True

        def add_term(term, ty):
            nonlocal changed
            if _size(term) > tb:
                return
            slot = terms.setdefault(ty, {})
            if term not in slot and (cap is None or len(slot) < cap):
                slot[term] = None
                changed = True

        def extend(entries, cost):
            """Register the context extended by ``entries`` at ``tb - cost``;
            None when the budget or the per-entry arity is exhausted."""
            nonlocal changed
            if cost > tb - 1:
                return None
            new = ctx
            for ty in entries:
                new = new + (ty,)
            if self._register(new, tb - cost):
                changed = True
            return new

        # atomic types and Nat
        for name in sig.atomic_types:
            add_type((CONST, name))
        add_type((NAT,))

        # variables and constants
        n = len(ctx)
        for i in range(n):
            add_term((VAR, i), _shift(ctx[n - 1 - i], i + 1))
        for name, ty in sig.constants.items():
            add_term((CONST, name), ty)

        # Nat introduction
        add_term((ZERO,), (NAT,))
        for m in tuple(terms.get((NAT,), ())):
            add_term((SUCC, m), (NAT,))

        # Id formation
        for a_ty in list(types):
            for lhs, rhs in product(tuple(terms.get(a_ty, ())), repeat=2):
                add_type((ID, a_ty, lhs, rhs))

        # Pi formation, lambda, app, betaconv, refl
        for a_ty in list(types):
            args = tuple(terms.get(a_ty, ()))
            for point in args:
                add_term((REFL, a_ty, point), (ID, a_ty, point, point))
            ctx_a = extend((a_ty,), _size(a_ty) + 1)
            if ctx_a is None:
                continue
            for b_ty in list(self.types[ctx_a]):
                add_type((PI, a_ty, b_ty))
                pi = (PI, a_ty, b_ty)
                for body in tuple(self.terms[ctx_a].get(b_ty, ())):
                    add_term((LAM, a_ty, b_ty, body), pi)
                    for arg in args:
                        add_term(
                            (BETA, a_ty, b_ty, arg, body),
                            (ID, _sub0(b_ty, arg),
                             (APP, a_ty, b_ty, (LAM, a_ty, b_ty, body), arg),
                             _sub0(body, arg)),
                        )
                for fun in tuple(terms.get(pi, ())):
                    for arg in args:
                        add_term((APP, a_ty, b_ty, fun, arg), _sub0(b_ty, arg))

        # identity elimination and computation
        for a_ty in list(types):
            s_a = _size(a_ty)
            ctx_a = extend((a_ty,), s_a + 1)
            if ctx_a is None:
                continue
            a1 = _shift(a_ty, 1)
            ctx3 = extend(
                (a_ty, a1, (ID, _shift(a_ty, 2), (VAR, 1), (VAR, 0))), s_a + 5
            )
            if ctx3 is None:
                continue
            rfl_x = (REFL, a1, (VAR, 0))
            args = tuple(terms.get(a_ty, ()))
            for motive in list(self.types[ctx3]):
                minst = _sub0(_sub0(motive, _shift(rfl_x, 1)), (VAR, 0))
                bases = tuple(self.terms[ctx_a].get(minst, ()))
                if not bases:
                    continue
                for lhs, rhs in product(args, repeat=2):
                    for pth in tuple(terms.get((ID, a_ty, lhs, rhs), ())):
                        for base in bases:
                            add_term(
                                (IDREC, a_ty, motive, lhs, rhs, pth, base),
                                _sub3(motive, pth, rhs, lhs),
                            )
                for point in args:
                    rfl = (REFL, a_ty, point)
                    for base in bases:
                        add_term(
                            (IDCONV, a_ty, motive, point, base),
                            (ID, _sub3(motive, rfl, point, point),
                             (IDREC, a_ty, motive, point, point, rfl, base),
                             _sub0(base, point)),
                        )

        # Nat elimination and computation
        ctx_n = extend(((NAT,),), 2)
        if ctx_n is not None:
            nats = tuple(terms.get((NAT,), ()))
            for motive in list(self.types[ctx_n]):
                pz = _sub0(motive, (ZERO,))
                psucc = _sub0(_shift(motive, 2, 1), (SUCC, (VAR, 1)))
                ctx_np = extend(((NAT,), motive), _size(motive) + 2)
                if ctx_np is None:
                    continue
                for z in tuple(terms.get(pz, ())):
                    for s in tuple(self.terms[ctx_np].get(psucc, ())):
                        for scrut in nats:
                            add_term((NATREC, motive, z, s, scrut),
                                     _sub0(motive, scrut))
                        add_term(
                            (NATCONVZERO, motive, z, s),
                            (ID, pz, (NATREC, motive, z, s, (ZERO,)), z),
                        )
                        for m in nats:
                            add_term(
                                (NATCONVSUCC, motive, z, s, m),
                                (ID, _sub0(motive, (SUCC, m)),
                                 (NATREC, motive, z, s, (SUCC, m)),
                                 _sub0(_sub0(s, _shift((NATREC, motive, z, s, m), 1)), m)),
                            )
        return changed

    # membership queries

    def ctxt_derivable(self, ctx: Context) -> bool:
        for i, entry in enumerate(ctx):
            prefix = ctx[:i]
            if prefix not in self.types:
                raise ResourceCapExceeded(f"context {prefix!r} outside enumerated space")
            if entry not in self.types[prefix]:
                return False
        return True

    def type_derivable(self, ctx: Context, ty: Term) -> bool:
        if not self.ctxt_derivable(ctx):
            return False
        if _size(ty) > self.budget[ctx] + 2:
            raise ResourceCapExceeded("type exceeds enumeration budget")
        return ty in self.types[ctx]

    def term_derivable(self, ctx: Context, term: Term, ty: Term) -> bool:
        if not self.ctxt_derivable(ctx):
            return False
        if _size(term) > self.budget[ctx]:
            raise ResourceCapExceeded("term exceeds enumeration budget")
        return term in self.terms[ctx].get(ty, ())

    def derivable(self, j: Judgement) -> bool:
        if isinstance(j, CtxtWF):
            return self.ctxt_derivable(j.ctx)
        if isinstance(j, TypeWF):
            return self.type_derivable(j.ctx, j.ty)
        return self.term_derivable(j.ctx, j.term, j.ty)

    def judgement_count(self) -> int:
        n = sum(len(v) for v in self.types.values())
        n += sum(len(s) for d in self.terms.values() for s in d.values())
        return n

    def all_term_judgements(self):
        """Iterate (ctx, term, type) over every stored term judgement."""
        for ctx, by_ty in self.terms.items():
            for ty, slot in by_ty.items():
                for term in slot:
                    yield ctx, term, ty


_SPACES: dict = {}


def _space_for(sig: Signature, max_term: int, roots=()) -> DerivationSpace:
    key = (
        tuple(sorted(sig.atomic_types)),
        tuple(sorted(sig.constants.items())),
        max_term,
        tuple(roots),
    )
    if key not in _SPACES:
        _SPACES[key] = DerivationSpace(sig, max_term=max_term, roots=roots)
    return _SPACES[key]


def oracle_derivable(sig: Signature, j: Judgement, max_term: int = 8) -> bool:
    """Decide derivability by exhaustive enumeration (tests only; small
    instances)."""
    space = _space_for(sig, max_term, roots=(j.ctx,))
    return space.derivable(j)


def all_terms(max_size: int, const_names=("A", "a"), max_var: int = 3):
    """Every syntactic tree of each size up to ``max_size``: dict size -> list.

    This enumerates raw syntax (mostly ill-typed), for small-scope agreement
    testing.
    """
    leaves = [(VAR, i) for i in range(max_var)]
    leaves += [(CONST, n) for n in const_names]
    leaves += [(NAT,), (ZERO,)]
    by_size: dict[int, list] = {1: leaves}
    shapes = [
        (SUCC, 1), (PI, 2), (REFL, 2), (LAM, 3), (ID, 3), (NATCONVZERO, 3),
        (APP, 4), (BETA, 4), (IDCONV, 4), (NATREC, 4), (NATCONVSUCC, 4),
        (IDREC, 6),
    ]
    for n in range(2, max_size + 1):
        acc = []
        for tag, arity in shapes:
            if n - 1 < arity:
                continue
            for split in _compositions(n - 1, arity):
                for children in product(*(by_size[k] for k in split)):
                    acc.append((tag,) + children)
        by_size[n] = acc
    return by_size


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
