"""Implicit-graph engine for tuple-transformation graphs over finite groups.

Four graph families share one vertex/edge machinery, selected by
``GraphMode``:

* full AC: k-tuples of a normal subgroup N that normally generate it;
  edges are component multiplication by another component (either side,
  either sign), component inversion, and conjugation of a component by
  any group element;
* restricted AC: same vertices, conjugation only by a generating set S
  (by default S together with its inverses, so the neighbor relation is
  symmetric; a directed reading is available behind a flag);
* Nielsen: generating k-tuples of the group, multiplication moves only;
* extended Nielsen: Nielsen plus component inversion.

Vertices are encoded as mixed-radix integers over the member positions
of N.  Edges are never stored: BFS expands move images level by level
with numpy gathers over precomputed product/inverse/conjugation tables,
keeping only the distance array and the frontier.  Vertex predicates are
evaluated for the whole code space at once by folding singleton-closure
ids through a memoized join table.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .elements import format_element
from .errors import PreconditionError, ResourceCapError, VerificationError
from .groups import FiniteGroup
from .subgroups import (
    Subgroup,
    abelianization,
    get_join_oracle,
    is_soluble,
    min_generator_count,
    nd_pair,
    quotient_group,
)

DEFAULT_TUPLE_CAP = 4_000_000
_CHUNK_CELLS = 2_000_000


def tuple_cap() -> int:
    raw = os.environ.get("ACGRAPHS_MAX_TUPLES")
    return int(raw) if raw else DEFAULT_TUPLE_CAP


@dataclass(frozen=True)
class GraphMode:
    kind: str  # "full-ac" | "restricted-ac" | "nielsen" | "extended-nielsen"
    conjugators: tuple[int, ...] | None = None
    directed_conjugators: bool = False

    KINDS = ("full-ac", "restricted-ac", "nielsen", "extended-nielsen")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown graph mode {self.kind!r}")
        if self.kind != "restricted-ac" and self.conjugators is not None:
            raise ValueError("explicit conjugators only make sense in restricted-ac")

    @classmethod
    def full_ac(cls) -> "GraphMode":
        return cls("full-ac")

    @classmethod
    def restricted_ac(
        cls, conjugators: Sequence[int] | None = None, *, directed: bool = False
    ) -> "GraphMode":
        conj = tuple(conjugators) if conjugators is not None else None
        return cls("restricted-ac", conj, directed)

    @classmethod
    def nielsen(cls) -> "GraphMode":
        return cls("nielsen")

    @classmethod
    def extended_nielsen(cls) -> "GraphMode":
        return cls("extended-nielsen")

    @property
    def is_ac(self) -> bool:
        return self.kind in ("full-ac", "restricted-ac")

    @property
    def has_inversion(self) -> bool:
        return self.kind != "nielsen"

    def describe(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "restricted-ac":
            out["conjugators"] = (
                "generators" if self.conjugators is None else list(self.conjugators)
            )
            out["directedConjugators"] = self.directed_conjugators
        return out


class GraphHandle:
    """A lazily expanded tuple graph over a finite group.

    ``normal`` is the target subgroup N for AC modes (default: the whole
    group); Nielsen modes always work over the whole group.
    """

    def __init__(
        self,
        group: FiniteGroup,
        k: int,
        mode: GraphMode,
        normal: Subgroup | None = None,
        *,
        cap: int | None = None,
    ):
        if k < 1:
            raise PreconditionError("tuple length k must be >= 1")
        self.group = group
        self.k = k
        self.mode = mode
        whole = Subgroup(group, tuple(range(group.order)), True)
        if mode.is_ac:
            self.normal = normal if normal is not None else whole
            if not self.normal.is_normal:
                raise PreconditionError("AC graphs need a normal subgroup")
        else:
            if normal is not None and not normal.is_whole_group():
                raise PreconditionError("Nielsen graphs range over the whole group")
            self.normal = whole

        members = np.array(self.normal.members, dtype=np.int64)
        nm = len(members)
        limit = tuple_cap() if cap is None else cap
        if nm**k > limit:
            raise ResourceCapError("graph_tuples", nm**k, limit)
        self.nm = nm
        self.member_idx = members
        pos_of = np.full(group.order, -1, dtype=np.int64)
        pos_of[members] = np.arange(nm)
        self.pos_of = pos_of

        self.NMUL, self.NINV = self._member_tables()
        self.conjugator_indices = self._conjugator_list()
        self.CONJ = self._conj_table()

        self.radix = np.array([nm ** (k - 1 - i) for i in range(k)], dtype=np.int64)
        self.size = nm**k

        oracle_mode = "normal" if mode.is_ac else "plain"
        self.oracle = get_join_oracle(group, oracle_mode)
        if mode.is_ac:
            self.target_id = self.oracle.id_of_members(self.normal.member_set)
        else:
            self.target_id = self.oracle.full_id
        self.vertex_mask = self._vertex_mask()
        self.vertex_count = int(self.vertex_mask.sum())

    # -- tables -----------------------------------------------------------------

    def _member_tables(self) -> tuple[np.ndarray, np.ndarray]:
        g, m = self.group, self.member_idx
        ninv = self.pos_of[g.inv_array[m]]
        if (ninv < 0).any():
            raise PreconditionError("member set not closed under inverse")
        if g.mul_table is not None:
            nmul = self.pos_of[g.mul_table[np.ix_(m, m)].astype(np.int64)]
        else:
            nmul = np.empty((self.nm, self.nm), dtype=np.int64)
            for a in range(self.nm):
                ia = int(m[a])
                nmul[a] = [self.pos_of[g.mul(ia, int(b))] for b in m]
        if (nmul < 0).any():
            raise PreconditionError("member set not closed under product")
        return nmul.astype(np.int64), ninv.astype(np.int64)

    def _conjugator_list(self) -> tuple[int, ...]:
        mode = self.mode
        if mode.kind == "full-ac":
            return tuple(range(self.group.order))
        if mode.kind == "restricted-ac":
            base = (
                mode.conjugators
                if mode.conjugators is not None
                else self.group.generators
            )
            if not base:
                raise PreconditionError("restricted AC needs a nonempty conjugator set")
            if mode.directed_conjugators:
                return tuple(dict.fromkeys(base))
            sym = list(base) + [self.group.inv(s) for s in base]
            return tuple(dict.fromkeys(sym))
        return ()

    def _conj_table(self) -> np.ndarray:
        ws = self.conjugator_indices
        if not ws:
            return np.empty((0, self.nm), dtype=np.int64)
        g, m = self.group, self.member_idx
        table = np.empty((len(ws), self.nm), dtype=np.int64)
        if g.mul_table is not None:
            mt = g.mul_table
            for r, w in enumerate(ws):
                winv = g.inv(w)
                table[r] = self.pos_of[mt[mt[winv, m].astype(np.int64), w]]
        else:
            for r, w in enumerate(ws):
                table[r] = [self.pos_of[g.conj(int(x), w)] for x in m]
        if (table < 0).any():
            raise PreconditionError("member set not closed under conjugation")
        return table

    def _vertex_mask(self) -> np.ndarray:
        ids1 = self.oracle.singleton_ids[self.member_idx]
        distinct = sorted(set(int(i) for i in ids1) | {0, self.target_id})
        # fold positions through a dense join table over the ids seen so far;
        # joins of semilattice members stay inside it, grown on demand
        ids = ids1.copy()
        for _ in range(self.k - 1):
            seen = sorted(set(int(i) for i in ids) | set(distinct))
            remap = {sid: r for r, sid in enumerate(seen)}
            join_rows = np.empty((len(seen), len(seen)), dtype=np.int64)
            for a, sa in enumerate(seen):
                for b, sb in enumerate(seen):
                    join_rows[a, b] = self.oracle.join(sa, sb)
            la = np.vectorize(remap.__getitem__, otypes=[np.int64])
            ids = join_rows[np.repeat(la(ids), self.nm), np.tile(la(ids1), len(ids))]
        return ids == self.target_id

    # -- codec ------------------------------------------------------------------

    def encode(self, tup: Sequence[int]) -> int:
        """Mixed-radix code of a tuple of group element indices."""
        if len(tup) != self.k:
            raise PreconditionError(f"tuple length {len(tup)} != k={self.k}")
        code = 0
        for i in tup:
            p = int(self.pos_of[i])
            if p < 0:
                raise PreconditionError(f"element index {i} outside the member set")
            code = code * self.nm + p
        return code

    def decode(self, code: int) -> tuple[int, ...]:
        """Tuple of group element indices for a vertex code."""
        out = []
        for _ in range(self.k):
            code, p = divmod(code, self.nm)
            out.append(int(self.member_idx[p]))
        return tuple(reversed(out))

    def is_vertex(self, tup: Sequence[int]) -> bool:
        return bool(self.vertex_mask[self.encode(tup)])

    def vertices(self) -> Iterator[tuple[int, ...]]:
        """Stream of vertex tuples, ascending by code (count: vertex_count)."""
        for code in np.flatnonzero(self.vertex_mask):
            yield self.decode(int(code))

    def format_tuple(self, tup: Sequence[int]) -> str:
        return "; ".join(format_element(self.group.elements[i]) for i in tup)

    # -- move ids (geodesic bookkeeping) ------------------------------------------

    @property
    def _inv_base(self) -> int:
        return 4 * self.k * self.k

    @property
    def _conj_base(self) -> int:
        return self._inv_base + self.k

    def describe_move(self, move_id: int) -> dict:
        k = self.k
        if move_id < self._inv_base:
            pair, variant = divmod(move_id, 4)
            i, j = divmod(pair, k)
            side = "right" if variant < 2 else "left"
            return {
                "type": f"multiply_{side}",
                "i": i,
                "j": j,
                "inverse": bool(variant % 2),
            }
        if move_id < self._conj_base:
            return {"type": "invert", "i": move_id - self._inv_base}
        row, i = divmod(move_id - self._conj_base, k)
        w = self.conjugator_indices[row]
        return {
            "type": "conjugate",
            "i": i,
            "w": format_element(self.group.elements[w]),
            "wIndex": int(w),
        }

    # -- neighbor generation -------------------------------------------------------

    def neighbors(self, tup: Sequence[int]) -> list[tuple[int, ...]]:
        """Deduplicated neighbor tuples of a vertex (self-loops removed)."""
        code = self.encode(tup)
        if not self.vertex_mask[code]:
            raise PreconditionError(f"not a vertex: {tuple(tup)}")
        out = sorted(self._neighbor_codes_single(code))
        return [self.decode(c) for c in out]

    def _neighbor_codes_single(self, code: int) -> set[int]:
        k, nm = self.k, self.nm
        comps = [(code // int(self.radix[i])) % nm for i in range(k)]
        found: set[int] = set()

        def add(i: int, newpos: int):
            if newpos != comps[i]:
                found.add(code + (newpos - comps[i]) * int(self.radix[i]))

        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                a, b = comps[i], comps[j]
                add(i, int(self.NMUL[a, b]))
                add(i, int(self.NMUL[a, self.NINV[b]]))
                add(i, int(self.NMUL[b, a]))
                add(i, int(self.NMUL[self.NINV[b], a]))
            if self.mode.has_inversion:
                add(i, int(self.NINV[comps[i]]))
            for row in range(len(self.conjugator_indices)):
                add(i, int(self.CONJ[row, comps[i]]))
        return found

    # -- BFS core -------------------------------------------------------------------

    def _expand_frontier(self, frontier: np.ndarray) -> list[np.ndarray]:
        """Candidate neighbor codes of a frontier, one array per move batch."""
        k, nm = self.k, self.nm
        comps = [(frontier // self.radix[i]) % nm for i in range(k)]
        out = []
        for i in range(k):
            base = frontier - comps[i] * self.radix[i]
            for j in range(k):
                if i == j:
                    continue
                a, b = comps[i], comps[j]
                out.append(base + self.NMUL[a, b] * self.radix[i])
                out.append(base + self.NMUL[a, self.NINV[b]] * self.radix[i])
                out.append(base + self.NMUL[b, a] * self.radix[i])
                out.append(base + self.NMUL[self.NINV[b], a] * self.radix[i])
            if self.mode.has_inversion:
                out.append(base + self.NINV[comps[i]] * self.radix[i])
            c = len(self.conjugator_indices)
            if c:
                rows = max(1, _CHUNK_CELLS // max(len(frontier), 1))
                for start in range(0, c, rows):
                    block = self.CONJ[start : start + rows, comps[i]]
                    out.append((base[None, :] + block * self.radix[i]).ravel())
        return out

    def bfs_distances(
        self, sources: Sequence[int], *, target: int | None = None
    ) -> np.ndarray:
        """Distance array (int32, -1 unreached) from source codes; stops
        early when ``target`` is reached."""
        dist = np.full(self.size, -1, dtype=np.int32)
        src = np.asarray(sorted(set(int(s) for s in sources)), dtype=np.int64)
        if not self.vertex_mask[src].all():
            raise PreconditionError("BFS source is not a vertex")
        dist[src] = 0
        frontier = src
        d = 0
        while frontier.size:
            if target is not None and dist[target] >= 0:
                return dist
            d += 1
            new_parts = []
            for cand in self._expand_frontier(frontier):
                cand = cand[(dist[cand] < 0) & self.vertex_mask[cand]]
                if cand.size:
                    fresh = np.unique(cand)
                    dist[fresh] = d
                    new_parts.append(fresh)
            frontier = (
                np.unique(np.concatenate(new_parts))
                if new_parts
                else np.empty(0, dtype=np.int64)
            )
        return dist

    def bfs_with_parents(
        self, source: int, *, target: int | None = None
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """BFS recording one (parent, move) per visited code, for geodesics.

        Slower than ``bfs_distances``; used when a path must be emitted.
        """
        dist = np.full(self.size, -1, dtype=np.int32)
        parent = np.full(self.size, -1, dtype=np.int64)
        move = np.full(self.size, -1, dtype=np.int32)
        if not self.vertex_mask[source]:
            raise PreconditionError("BFS source is not a vertex")
        dist[source] = 0
        frontier = np.array([source], dtype=np.int64)
        k, nm = self.k, self.nm
        d = 0
        while frontier.size:
            if target is not None and dist[target] >= 0:
                return dist, parent, move
            d += 1
            cand_all, par_all, mv_all = [], [], []
            comps = [(frontier // self.radix[i]) % nm for i in range(k)]

            def emit(cand: np.ndarray, parents: np.ndarray, mv):
                cand_all.append(cand)
                par_all.append(parents)
                if np.isscalar(mv):
                    mv_all.append(np.full(cand.shape, mv, dtype=np.int32))
                else:
                    mv_all.append(mv)

            for i in range(k):
                base = frontier - comps[i] * self.radix[i]
                for j in range(k):
                    if i == j:
                        continue
                    a, b = comps[i], comps[j]
                    pair = (i * k + j) * 4
                    emit(base + self.NMUL[a, b] * self.radix[i], frontier, pair)
                    emit(
                        base + self.NMUL[a, self.NINV[b]] * self.radix[i],
                        frontier,
                        pair + 1,
                    )
                    emit(base + self.NMUL[b, a] * self.radix[i], frontier, pair + 2)
                    emit(
                        base + self.NMUL[self.NINV[b], a] * self.radix[i],
                        frontier,
                        pair + 3,
                    )
                if self.mode.has_inversion:
                    emit(
                        base + self.NINV[comps[i]] * self.radix[i],
                        frontier,
                        self._inv_base + i,
                    )
                c = len(self.conjugator_indices)
                if c:
                    rows = max(1, _CHUNK_CELLS // max(len(frontier), 1))
                    for start in range(0, c, rows):
                        block = self.CONJ[start : start + rows, comps[i]]
                        codes = (base[None, :] + block * self.radix[i]).ravel()
                        nrow = block.shape[0]
                        mv = (
                            self._conj_base
                            + (np.arange(start, start + nrow, dtype=np.int32) * k + i)[
                                :, None
                            ]
                        )
                        emit(
                            codes,
                            np.broadcast_to(frontier, (nrow, len(frontier))).ravel(),
                            np.broadcast_to(mv, (nrow, len(frontier))).ravel(),
                        )
            cand = np.concatenate(cand_all)
            pars = np.concatenate(par_all)
            mvs = np.concatenate(mv_all)
            keep = (dist[cand] < 0) & self.vertex_mask[cand]
            cand, pars, mvs = cand[keep], pars[keep], mvs[keep]
            if cand.size:
                fresh, first = np.unique(cand, return_index=True)
                dist[fresh] = d
                parent[fresh] = pars[first]
                move[fresh] = mvs[first]
                frontier = fresh
            else:
                frontier = np.empty(0, dtype=np.int64)
        return dist, parent, move

    def geodesic(self, source: int, target: int) -> list[dict] | None:
        """Move sequence of one shortest path source -> target, or None."""
        dist, parent, move = self.bfs_with_parents(source, target=target)
        if dist[target] < 0:
            return None
        path = []
        code = target
        while code != source:
            path.append(
                {
                    "from": self.format_tuple(self.decode(int(parent[code]))),
                    "to": self.format_tuple(self.decode(int(code))),
                    "move": self.describe_move(int(move[code])),
                }
            )
            code = int(parent[code])
        path.reverse()
        return path

    def describe(self) -> dict:
        return {
            "groupSpec": self.group.name,
            "normalSubgroup": {
                "order": self.normal.order,
                "wholeGroup": self.normal.is_whole_group(),
            },
            "k": self.k,
            "mode": self.mode.describe(),
        }


@dataclass
class ComponentPartition:
    handle: GraphHandle
    labels: np.ndarray  # per code: component label or -1
    sizes: tuple[int, ...]  # by label
    reps: tuple[int, ...]  # minimal vertex code per label

    @property
    def count(self) -> int:
        return len(self.sizes)

    def label_of(self, code: int) -> int:
        lab = int(self.labels[code])
        if lab < 0:
            raise PreconditionError(f"code {code} is not a vertex")
        return lab

    def codes_of(self, label: int) -> np.ndarray:
        return np.flatnonzero(self.labels == label)

    def to_json(self) -> dict:
        return {
            "componentCount": self.count,
            "components": [
                {
                    "size": int(s),
                    "sampleVertex": self.handle.format_tuple(
                        self.handle.decode(int(r))
                    ),
                }
                for s, r in zip(self.sizes, self.reps)
            ],
        }


def components(handle: GraphHandle) -> ComponentPartition:
    """Connected components via repeated BFS over the vertex mask."""
    labels = np.full(handle.size, -1, dtype=np.int32)
    sizes: list[int] = []
    reps: list[int] = []
    vertex_codes = np.flatnonzero(handle.vertex_mask)
    for code in vertex_codes:
        if labels[code] >= 0:
            continue
        dist = handle.bfs_distances([int(code)])
        comp = dist >= 0
        labels[comp] = len(sizes)
        sizes.append(int(comp.sum()))
        reps.append(int(code))
    return ComponentPartition(handle, labels, tuple(sizes), tuple(reps))


def distance(handle: GraphHandle, u: Sequence[int], v: Sequence[int]) -> int | None:
    """Shortest path length between vertex tuples; None across components."""
    cu, cv = handle.encode(u), handle.encode(v)
    for c in (cu, cv):
        if not handle.vertex_mask[c]:
            raise PreconditionError("distance endpoints must be vertices")
    dist = handle.bfs_distances([cu], target=cv)
    d = int(dist[cv])
    return d if d >= 0 else None


def diameter(
    handle: GraphHandle,
    component_codes: np.ndarray | Sequence[int],
    *,
    exact: bool = True,
) -> int:
    """Max eccentricity of one component.

    Exact mode sweeps BFS over the component, pruning vertices whose
    triangle-inequality upper bound cannot beat the running lower bound;
    ``exact=False`` returns the double-sweep lower bound only.
    """
    codes = np.asarray(component_codes, dtype=np.int64)
    if codes.size == 0:
        raise PreconditionError("empty component")
    if codes.size == 1:
        return 0

    def ecc(dist: np.ndarray) -> int:
        comp_d = dist[codes]
        if (comp_d < 0).any():
            raise PreconditionError("codes are not a single component")
        return int(comp_d.max())

    d0 = handle.bfs_distances([int(codes[0])])
    e0 = ecc(d0)
    far = int(codes[np.argmax(d0[codes])])
    d1 = handle.bfs_distances([far])
    e1 = ecc(d1)
    lb = max(e0, e1)
    if not exact:
        return lb
    upper = np.minimum(e0 + d0[codes], e1 + d1[codes])
    order = np.argsort(-d1[codes], kind="stable")
    for pos in order:
        if upper[pos] <= lb:
            continue
        e = ecc(handle.bfs_distances([int(codes[pos])]))
        lb = max(lb, e)
    return lb


def cayley_diameter(group: FiniteGroup, generator_indices: Sequence[int]) -> int:
    """Diameter of the (undirected) Cayley graph of the group w.r.t. the
    given generators.  Vertex-transitive, so one BFS from the identity."""
    gens = list(dict.fromkeys(list(generator_indices) +
                              [group.inv(s) for s in generator_indices]))
    if not gens:
        raise PreconditionError("Cayley graph needs generators")
    dist = np.full(group.order, -1, dtype=np.int32)
    dist[0] = 0
    frontier = [0]
    d = 0
    while frontier:
        d += 1
        new = []
        for x in frontier:
            for s in gens:
                y = group.mul(x, s)
                if dist[y] < 0:
                    dist[y] = d
                    new.append(y)
        frontier = new
    if (dist < 0).any():
        raise PreconditionError("generators do not generate the group")
    return int(dist.max())


# -- quotient-compatibility checks ----------------------------------------------


@dataclass
class CoverCheckReport:
    group: FiniteGroup
    modulo_order: int
    k: int
    surjective: bool
    group_components: int
    quotient_components: int
    correspondence: tuple[tuple[int, int, int], ...]  # (g label, size, q label)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "moduloOrder": self.modulo_order,
            "k": self.k,
            "surjective": self.surjective,
            "groupComponents": self.group_components,
            "quotientComponents": self.quotient_components,
            "correspondence": [
                {"component": g, "size": s, "mapsTo": q}
                for g, s, q in self.correspondence
            ],
        }


def _project_codes(
    src: GraphHandle, dst: GraphHandle, projection: Sequence[int], codes: np.ndarray
) -> np.ndarray:
    """Apply an index projection componentwise to vertex codes."""
    pi = np.asarray(projection, dtype=np.int64)
    out = np.zeros(codes.shape, dtype=np.int64)
    for i in range(src.k):
        comp = src.member_idx[(codes // src.radix[i]) % src.nm]
        out += dst.pos_of[pi[comp]] * dst.radix[i]
    return out


def cover_check(group: FiniteGroup, modulo: Subgroup, k: int) -> CoverCheckReport:
    """Check that the induced map of whole-group AC graphs onto the
    quotient's hits every quotient vertex, and report the component
    correspondence (each source component maps into one quotient
    component; preimages are unions of source components)."""
    nd, _ = nd_pair(group)
    if nd > k:
        raise PreconditionError(
            f"{group.name} is not normally generated by {k} elements"
        )
    src = GraphHandle(group, k, GraphMode.full_ac())
    quotient, pi = quotient_group(group, modulo)
    dst = GraphHandle(quotient, k, GraphMode.full_ac())
    src_codes = np.flatnonzero(src.vertex_mask)
    images = _project_codes(src, dst, pi, src_codes)
    if not dst.vertex_mask[images].all():
        raise VerificationError("image of a vertex is not a vertex in the quotient")
    surjective = len(np.unique(images)) == dst.vertex_count

    src_parts = components(src)
    dst_parts = components(dst)
    pairs = []
    for lab in range(src_parts.count):
        comp_codes = src_parts.codes_of(lab)
        q_labels = np.unique(
            dst_parts.labels[_project_codes(src, dst, pi, comp_codes)]
        )
        if len(q_labels) != 1:
            raise VerificationError(
                "a connected component maps into several quotient components"
            )
        pairs.append((lab, int(src_parts.sizes[lab]), int(q_labels[0])))
    return CoverCheckReport(
        group,
        modulo.order,
        k,
        surjective,
        src_parts.count,
        dst_parts.count,
        tuple(pairs),
    )


@dataclass
class SolubleComponentReport:
    group: FiniteGroup
    k: int
    invariant_factors: tuple[int, ...]
    group_components: int
    quotient_components: int
    bijection: tuple[tuple[int, int, int], ...]  # (g label, size, q label)

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "k": self.k,
            "invariantFactors": list(self.invariant_factors),
            "groupComponents": self.group_components,
            "quotientComponents": self.quotient_components,
            "pairs": [
                {"component": g, "size": s, "mapsTo": q}
                for g, s, q in self.bijection
            ],
        }


def soluble_component_check(group: FiniteGroup, k: int) -> SolubleComponentReport:
    """For a soluble k-generated group: the components of the whole-group
    AC graph biject with the components of the extended-Nielsen graph of
    the abelianization, via the projection.  Raises VerificationError if
    the bijection fails."""
    if not is_soluble(group):
        raise PreconditionError(f"{group.name} is not soluble")
    if min_generator_count(group, k) is None:
        raise PreconditionError(f"{group.name} is not generated by {k} elements")
    ab = abelianization(group)
    src = GraphHandle(group, k, GraphMode.full_ac())
    dst = GraphHandle(ab.target, k, GraphMode.extended_nielsen())
    src_codes = np.flatnonzero(src.vertex_mask)
    images = _project_codes(src, dst, ab.projection_idx, src_codes)
    if not dst.vertex_mask[images].all():
        raise VerificationError("projection of a vertex fails to generate Ab(G)")
    src_parts = components(src)
    dst_parts = components(dst)
    mapping: dict[int, int] = {}
    pairs = []
    for lab in range(src_parts.count):
        comp_codes = src_parts.codes_of(lab)
        q_labels = np.unique(
            dst_parts.labels[_project_codes(src, dst, ab.projection_idx, comp_codes)]
        )
        if len(q_labels) != 1:
            raise VerificationError(
                "a component maps into several abelianized components"
            )
        q = int(q_labels[0])
        if q in mapping.values():
            raise VerificationError(
                "two components share an abelianized component: preimage disconnected"
            )
        mapping[lab] = q
        pairs.append((lab, int(src_parts.sizes[lab]), q))
    if len(mapping) != dst_parts.count:
        raise VerificationError("component map is not onto the quotient components")
    return SolubleComponentReport(
        group,
        k,
        ab.invariant_factors,
        src_parts.count,
        dst_parts.count,
        tuple(pairs),
    )
