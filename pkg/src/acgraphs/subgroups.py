"""Subgroup machinery: closures, normal closures, derived subgroups,
abelianization with invariant factors, quotients, normal-generation
statistics and the lifting of normal generators through quotients.

Everything works on element indices of a ``FiniteGroup``.  Heavy
predicates (does this tuple normally generate?) go through a
``JoinOracle``: the distinct single-element closures form a small
join-semilattice, closures of sets are joins of singleton closures, and
the joins are memoized, so exhaustive tuple censuses cost a table lookup
per tuple instead of a saturation.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence
from weakref import WeakKeyDictionary

import numpy as np

from .elements import AbelianTuple, GroupElement, Permutation
from .errors import PreconditionError, ResourceCapError
from .groups import FiniteGroup

DEFAULT_ND_CAP = 200
DEFAULT_TUPLE_CAP = 4_000_000


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup
    members: tuple[int, ...]  # sorted element indices
    is_normal: bool

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def is_whole_group(self) -> bool:
        return len(self.members) == self.group.order

    def is_trivial(self) -> bool:
        return len(self.members) == 1

    def contains_index(self, i: int) -> bool:
        return i in self.member_set

    def elements(self) -> tuple[GroupElement, ...]:
        return tuple(self.group.elements[i] for i in self.members)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "members": list(self.members),
            "order": self.order,
            "isNormal": self.is_normal,
        }

    def __repr__(self):
        return f"Subgroup({self.group.name}, order={self.order}, normal={self.is_normal})"


def _saturate(group: FiniteGroup, seed: Iterable[int]) -> frozenset[int]:
    """Multiplicative saturation of a seed set (plus identity).

    BFS by right multiplication with the seeds: every product of seeds is
    reached, and in a finite group that semigroup closure is already the
    subgroup (inverses arise as powers).  Cost O(|result| * |seed|)."""
    seeds = sorted(set(seed))
    members = {0} | set(seeds)
    frontier = list(members)
    mul = group.mul
    while frontier:
        new = []
        for x in frontier:
            for s in seeds:
                y = mul(x, s)
                if y not in members:
                    members.add(y)
                    new.append(y)
        frontier = new
    return frozenset(members)


def _is_normal_members(group: FiniteGroup, members: frozenset[int]) -> bool:
    # closure under conjugation by the generators implies normality
    return all(
        group.conj(m, g) in members for m in members for g in group.generators
    )


def closure(group: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the seed indices."""
    members = _saturate(group, seed)
    return Subgroup(group, tuple(sorted(members)), _is_normal_members(group, members))


def conjugation_orbit(group: FiniteGroup, i: int) -> frozenset[int]:
    """Conjugacy class of element i, as the orbit under generator conjugation."""
    orbit = {i}
    frontier = [i]
    while frontier:
        new = []
        for x in frontier:
            for g in group.generators:
                y = group.conj(x, g)
                if y not in orbit:
                    orbit.add(y)
                    new.append(y)
        frontier = new
    return frozenset(orbit)


def conjugacy_classes(group: FiniteGroup) -> list[tuple[int, ...]]:
    """All conjugacy classes, each sorted, ordered by minimal member."""
    seen: set[int] = set()
    classes = []
    for i in range(group.order):
        if i in seen:
            continue
        cls = conjugation_orbit(group, i)
        seen |= cls
        classes.append(tuple(sorted(cls)))
    return classes


def normal_closure(group: FiniteGroup, seed: Iterable[int]) -> Subgroup:
    """Smallest normal subgroup containing the seed: the subgroup generated
    by the union of the seeds' conjugacy classes."""
    conjugates: set[int] = set()
    for i in set(seed):
        conjugates |= conjugation_orbit(group, i)
    members = _saturate(group, conjugates)
    return Subgroup(group, tuple(sorted(members)), True)


def derived_subgroup(group: FiniteGroup) -> Subgroup:
    """[G,G]: computed as the normal closure of generator commutators,
    which equals the closure of all commutators."""
    gens = group.generators
    comms = {group.comm(a, b) for a in gens for b in gens}
    return normal_closure(group, comms)


def is_soluble(group: FiniteGroup) -> bool:
    """Derived series reaches the trivial subgroup."""
    current = Subgroup(group, tuple(range(group.order)), True)
    while current.order > 1:
        sub = _derived_of_members(group, current.members)
        if len(sub) == current.order:
            return False
        current = Subgroup(group, tuple(sorted(sub)), False)
    return True


def _derived_of_members(group: FiniteGroup, members: Sequence[int]) -> frozenset[int]:
    comms = {
        group.comm(a, b) for a in members for b in members
    }
    return _saturate(group, comms)


class JoinOracle:
    """Join-semilattice of subgroup closures of single elements.

    mode "normal": singleton closure of x is its normal closure; the
    closure of any set is the join of singleton closures, so normal
    generation tests reduce to memoized join lookups.  mode "plain": the
    same with cyclic subgroups and ordinary generation.
    """

    def __init__(self, group: FiniteGroup, mode: str = "normal"):
        if mode not in ("normal", "plain"):
            raise ValueError(f"unknown oracle mode {mode!r}")
        self.group = group
        self.mode = mode
        # interning and the join memo mutate under reads from walker
        # fan-out threads; serialize them
        self._lock = threading.RLock()
        self._subgroups: list[frozenset[int]] = [frozenset([0])]
        self._id_of: dict[frozenset[int], int] = {self._subgroups[0]: 0}
        self.singleton_ids = self._build_singletons()
        self._join_memo: dict[tuple[int, int], int] = {}
        self.full_id = self.id_of_members(frozenset(range(group.order)))

    def _build_singletons(self) -> np.ndarray:
        group = self.group
        ids = np.zeros(group.order, dtype=np.int64)
        if self.mode == "normal":
            # same class -> same normal closure
            for cls in conjugacy_classes(group):
                sub = normal_closure(group, [cls[0]]).member_set
                ids[list(cls)] = self._intern(sub)
        else:
            done: dict[int, int] = {}
            for i in range(group.order):
                if i in done:
                    continue
                sub = _saturate(group, [i])
                sid = self._intern(sub)
                # every generator of the same cyclic subgroup gets the same id
                for j in sub:
                    if j not in done and _saturate(group, [j]) == sub:
                        done[j] = sid
                ids[i] = sid
            for i, sid in done.items():
                ids[i] = sid
        return ids

    def _intern(self, members: frozenset[int]) -> int:
        with self._lock:
            sid = self._id_of.get(members)
            if sid is None:
                sid = len(self._subgroups)
                self._subgroups.append(members)
                self._id_of[members] = sid
            return sid

    def members_of(self, sid: int) -> frozenset[int]:
        return self._subgroups[sid]

    def id_of_members(self, members: frozenset[int]) -> int:
        return self._intern(members)

    def singleton_id(self, i: int) -> int:
        return int(self.singleton_ids[i])

    def join(self, a: int, b: int) -> int:
        if a == b:
            return a
        if a > b:
            a, b = b, a
        key = (a, b)
        sid = self._join_memo.get(key)
        if sid is None:
            with self._lock:
                sid = self._join_memo.get(key)
                if sid is None:
                    ma, mb = self._subgroups[a], self._subgroups[b]
                    if ma <= mb:
                        sid = b
                    elif mb <= ma:
                        sid = a
                    else:
                        sid = self._intern(_saturate(self.group, ma | mb))
                    self._join_memo[key] = sid
        return sid

    def join_of_indices(self, indices: Iterable[int]) -> int:
        sid = 0
        for i in indices:
            sid = self.join(sid, self.singleton_id(i))
        return sid

    def generates(self, indices: Iterable[int]) -> bool:
        """Whole group generated (normally, in mode 'normal') by these indices."""
        return self.join_of_indices(indices) == self.full_id

    def subgroup_of_tuple(self, indices: Iterable[int]) -> Subgroup:
        members = self.members_of(self.join_of_indices(indices))
        return Subgroup(
            self.group, tuple(sorted(members)), self.mode == "normal" or
            _is_normal_members(self.group, members)
        )


_oracle_cache: "WeakKeyDictionary[FiniteGroup, dict[str, JoinOracle]]" = (
    WeakKeyDictionary()
)


def get_join_oracle(group: FiniteGroup, mode: str) -> JoinOracle:
    """Per-group memoized oracle; groups are immutable, so reuse is safe."""
    per_group = _oracle_cache.setdefault(group, {})
    if mode not in per_group:
        per_group[mode] = JoinOracle(group, mode)
    return per_group[mode]


def normal_subgroups(group: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups: the join-semilattice generated by singleton
    normal closures (every normal subgroup is the join of the closures of
    its own elements), ordered by ascending order then members."""
    oracle = JoinOracle(group, "normal")
    ids = {0} | {oracle.singleton_id(i) for i in range(group.order)}
    changed = True
    while changed:
        changed = False
        for a, b in combinations(sorted(ids), 2):
            j = oracle.join(a, b)
            if j not in ids:
                ids.add(j)
                changed = True
    subs = [
        Subgroup(group, tuple(sorted(oracle.members_of(sid))), True) for sid in ids
    ]
    return sorted(subs, key=lambda s: (s.order, s.members))


# -- quotients -----------------------------------------------------------------


def quotient_group(
    group: FiniteGroup, modulo: Subgroup
) -> tuple[FiniteGroup, tuple[int, ...]]:
    """The factor group G/M realized concretely, plus the projection.

    Cosets act on themselves by right multiplication; each coset becomes a
    permutation of the coset indices (the regular representation, faithful
    and compatible with the left-to-right composition convention).
    Returns ``(Q, pi)`` with ``pi[g] = index in Q of gM``.
    """
    if modulo.group is not group:
        raise PreconditionError("subgroup belongs to a different group")
    if not modulo.is_normal:
        raise PreconditionError("can only quotient by a normal subgroup")
    mem = modulo.member_set
    coset_id: dict[int, int] = {}
    reps: list[int] = []
    for i in range(group.order):
        if i in coset_id:
            continue
        cid = len(reps)
        reps.append(i)
        for m in mem:
            coset_id[group.mul(i, m)] = cid
    q = len(reps)
    perms = []
    for c in range(q):
        images = tuple(coset_id[group.mul(reps[i], reps[c])] for i in range(q))
        perms.append(Permutation(images))
    gen_perms = [perms[coset_id[g]] for g in group.generators]
    quotient = FiniteGroup(f"{group.name}/[order {modulo.order}]", perms, gen_perms)
    projection = tuple(
        quotient.index_of(perms[coset_id[i]]) for i in range(group.order)
    )
    return quotient, projection


# -- abelianization -------------------------------------------------------------


@dataclass(frozen=True)
class AbelianStructure:
    """Ab(G) = G/[G,G] in invariant-factor form e_1 | e_2 | ... | e_r."""

    group: FiniteGroup
    invariant_factors: tuple[int, ...]
    target: FiniteGroup  # the concrete product of Z_{e_i}
    projection: tuple[AbelianTuple, ...]  # per ambient element index
    projection_idx: tuple[int, ...]  # per ambient element index, into target

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors) if self.invariant_factors else 1

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "invariantFactors": list(self.invariant_factors),
            "generatorImages": [
                self.projection[g].to_json() for g in self.group.generators
            ],
        }


def _abelian_basis(q: FiniteGroup) -> list[int]:
    """Basis of an abelian group: element indices of orders m_1 >= m_2 >= ...
    forming a direct decomposition with the divisibility chain reversed."""
    if q.order == 1:
        return []
    orders = [(q.element_order(i), i) for i in range(q.order)]
    m, a = max(orders)
    cyc = _saturate(q, [a])
    sub = Subgroup(q, tuple(sorted(cyc)), True)  # abelian: everything normal
    q2, pi2 = quotient_group(q, sub)
    # powers of a for discrete logs in <a>
    power_of: dict[int, int] = {}
    x, e = 0, 0
    while True:
        power_of[x] = e
        x = q.mul(x, a)
        e += 1
        if x == 0 and e > 0:
            break
    basis = [a]
    for b2 in _abelian_basis(q2):
        d = q2.element_order(b2)
        b = next(i for i in range(q.order) if pi2[i] == b2)
        bd = 0
        for _ in range(d):
            bd = q.mul(bd, b)
        t = power_of[bd]
        if t % d != 0:
            raise AssertionError("abelian basis lift: order obstruction")
        shift = (-(t // d)) % m
        adj = 0
        for _ in range(shift):
            adj = q.mul(adj, a)
        basis.append(q.mul(b, adj))
    return basis


def abelianization(group: FiniteGroup) -> AbelianStructure:
    """Invariant factors of G/[G,G] and the projection map for every element."""
    derived = derived_subgroup(group)
    quotient, pi = quotient_group(group, derived)
    basis = _abelian_basis(quotient)
    orders_desc = [quotient.element_order(b) for b in basis]
    factors = tuple(reversed(orders_desc))  # ascending chain e_1 | ... | e_r
    for small, big in zip(factors, factors[1:]):
        if big % small != 0:
            raise AssertionError(f"invariant factors not a chain: {factors}")
    # coordinates of every quotient element w.r.t. the basis
    coords: dict[int, tuple[int, ...]] = {}
    for exps in product(*[range(m) for m in orders_desc]) if basis else [()]:
        x = 0
        for b, e in zip(basis, exps):
            for _ in range(e):
                x = quotient.mul(x, b)
        key = tuple(reversed(exps))  # ascending factor order
        if x in coords:
            raise AssertionError("abelian basis is not independent")
        coords[x] = key
    if len(coords) != quotient.order:
        raise AssertionError("abelian basis does not span")
    target_elements = [AbelianTuple(r, factors) for r in coords.values()]
    gens = []
    for i in range(len(factors)):
        unit = [0] * len(factors)
        unit[i] = 1
        gens.append(AbelianTuple(unit, factors))
    target = FiniteGroup(f"ab({group.name})", target_elements, gens)
    projection = tuple(AbelianTuple(coords[pi[i]], factors) for i in range(group.order))
    projection_idx = tuple(target.index_of(t) for t in projection)
    return AbelianStructure(group, factors, target, projection, projection_idx)


# -- normal generation statistics ------------------------------------------------


def nd_pair(group: FiniteGroup, *, cap: int = DEFAULT_ND_CAP) -> tuple[int, int]:
    """(nd, nd_m): minimal number of normal generators, and maximal size of
    a minimal (irredundant) normal generating set.

    Works on the join-semilattice of distinct singleton normal closures:
    a set of elements is interchangeable with its family of closures, and
    a minimal set has pairwise distinct, jointly irredundant closures.
    """
    if group.order > cap:
        raise ResourceCapError("nd_search", group.order, cap)
    if group.order == 1:
        return (0, 0)
    oracle = JoinOracle(group, "normal")
    ids = sorted({oracle.singleton_id(i) for i in range(1, group.order)} - {0})
    full = oracle.full_id

    def join_family(fam: Sequence[int]) -> int:
        sid = 0
        for f in fam:
            sid = oracle.join(sid, f)
        return sid

    nd = None
    for size in range(1, len(ids) + 1):
        if any(join_family(fam) == full for fam in combinations(ids, size)):
            nd = size
            break
    if nd is None:
        raise AssertionError(f"{group.name}: no normal generating set found")
    max_size = max(1, math.floor(math.log2(group.order)))
    nd_m = nd
    for size in range(nd, max_size + 1):
        found = False
        for fam in combinations(ids, size):
            if join_family(fam) != full:
                continue
            if all(
                join_family(fam[:i] + fam[i + 1:]) != full for i in range(size)
            ):
                found = True
                break
        if found:
            nd_m = size
    return (nd, nd_m)


def min_generator_count(group: FiniteGroup, upto: int) -> int | None:
    """Smallest k <= upto with a k-element generating set (ordinary
    generation), or None if every family up to that size falls short."""
    if group.order == 1:
        return 0
    oracle = JoinOracle(group, "plain")
    ids = sorted({oracle.singleton_id(i) for i in range(1, group.order)} - {0})
    for size in range(1, upto + 1):
        for fam in combinations(ids, size):
            sid = 0
            for f in fam:
                sid = oracle.join(sid, f)
            if sid == oracle.full_id:
                return size
    return None


def psi_k(
    group: FiniteGroup, k: int, *, cap: int = DEFAULT_TUPLE_CAP
) -> Fraction:
    """Exact probability that k independent uniform elements normally
    generate the group: |V_k(G,G)| / |G|^k."""
    if k < 1:
        raise PreconditionError("psi_k needs k >= 1")
    total = group.order**k
    if total > cap:
        raise ResourceCapError("tuple_census", total, cap)
    oracle = JoinOracle(group, "normal")
    count = _count_generating_tuples(oracle, k)
    return Fraction(count, total)


def _count_generating_tuples(oracle: JoinOracle, k: int) -> int:
    """Census over G^k via the join semilattice: fold the id distribution."""
    n = oracle.group.order
    dist: dict[int, int] = {}
    for i in range(n):
        sid = oracle.singleton_id(i)
        dist[sid] = dist.get(sid, 0) + 1
    current = dict(dist)
    for _ in range(k - 1):
        nxt: dict[int, int] = {}
        for a, ca in current.items():
            for b, cb in dist.items():
                j = oracle.join(a, b)
                nxt[j] = nxt.get(j, 0) + ca * cb
        current = nxt
    return current.get(oracle.full_id, 0)


def mazurov_lift(
    group: FiniteGroup, modulo: Subgroup, g: Sequence[int]
) -> tuple[int, ...] | None:
    """Adjust g = (g_1..g_k) by elements of M so the result normally
    generates G, given that the images of g normally generate G/M and G is
    normally k-generated.  Exhaustive over M^k; a witness must exist, so
    ``None`` signals a bug (or unverified preconditions upstream)."""
    k = len(g)
    if k < 1:
        raise PreconditionError("need a nonempty tuple")
    if not modulo.is_normal or modulo.group is not group:
        raise PreconditionError("M must be a normal subgroup of G")
    nd, _ = nd_pair(group)
    if nd > k:
        raise PreconditionError(
            f"{group.name} is not normally generated by {k} elements (nd={nd})"
        )
    quotient, pi = quotient_group(group, modulo)
    q_oracle = JoinOracle(quotient, "normal")
    if not q_oracle.generates(pi[i] for i in g):
        raise PreconditionError("images of g do not normally generate G/M")
    oracle = JoinOracle(group, "normal")
    for ms in product(modulo.members, repeat=k):
        candidate = tuple(group.mul(gi, mi) for gi, mi in zip(g, ms))
        if oracle.generates(candidate):
            return candidate
    return None


# -- covering numbers -------------------------------------------------------------


@dataclass(frozen=True)
class CoveringNumbers:
    group: FiniteGroup
    or_value: int  # least n with C^n = G for some nontrivial class
    cn_value: int  # least n with C^n = G for every nontrivial class
    per_class: tuple[tuple[int, int], ...]  # (class min element, cover exponent)


def covering_numbers(group: FiniteGroup) -> CoveringNumbers:
    """Brute-force or(G) and cn(G) from conjugacy-class set powers.

    Defined for groups where every nontrivial class eventually covers,
    i.e. simple groups; raises ``PreconditionError`` otherwise.
    """
    subs = normal_subgroups(group)
    if len(subs) != 2:
        raise PreconditionError(
            f"covering numbers need a simple group; {group.name} has "
            f"{len(subs)} normal subgroups"
        )
    all_idx = frozenset(range(group.order))
    per_class = []
    for cls in conjugacy_classes(group):
        if cls == (0,):
            continue
        current = frozenset(cls)
        n = 1
        while current != all_idx:
            current = frozenset(
                group.mul(a, b) for a in current for b in cls
            )
            n += 1
            if n > group.order:
                raise AssertionError("class power never covers a simple group?")
        per_class.append((cls[0], n))
    exps = [n for _, n in per_class]
    return CoveringNumbers(group, min(exps), max(exps), tuple(per_class))
