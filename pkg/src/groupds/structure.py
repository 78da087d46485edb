"""Layered multiplication structures built from subgroup extensions.

Each layer multiplies a group ``G`` using a structure for a subgroup and a few
tables whose total size is linear in ``|G|`` plus the square of the index.
Inside a node, elements of ``G`` are numbered ``0..|G|-1`` in the numbering of
the group handed to the builder; the child sees the subgroup's elements
renumbered by their rank in sorted order. Only ``Fuse`` tables emit ids of the
node's own group, so a query never needs a global-to-local translation.
"""

from __future__ import annotations

import io
import json
import struct
from dataclasses import dataclass

import numpy as np

from .core import CayleyGroup, GroupError, NotNormalError, Subgroup, \
    non_normalizing_witness, transversal

MAGIC = b"GDS1"
TAG_BASE, TAG_COSET, TAG_CYCLIC = 0, 1, 2
VALIDATION_SAMPLES = 1000


class StructureError(GroupError):
    pass


class QuotientNotCyclic(StructureError):
    pass


class VersionError(StructureError):
    pass


class CorruptionError(StructureError):
    pass


def _frozen(a) -> np.ndarray:
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64)).astype(np.uint32)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class BaseTable:
    group_order: int
    identity: int
    table: np.ndarray
    to_local: np.ndarray

    kind = "base"
    TABLES = ("table", "to_local")

    @property
    def child(self):
        return None

    @property
    def sub_order(self) -> int:
        return self.group_order


@dataclass(frozen=True, eq=False)
class CosetNode:
    """One coset extension: ``G`` over a subgroup ``H`` with ``[G:H] = index``."""
    group_order: int
    identity: int
    index: int
    child: object
    sL: np.ndarray
    sR: np.ndarray
    cL: np.ndarray
    cR: np.ndarray
    FlipH: np.ndarray
    FlipR: np.ndarray
    CrossH: np.ndarray
    CrossR: np.ndarray
    Fuse: np.ndarray

    kind = "coset"
    TABLES = ("sL", "sR", "cL", "cR", "FlipH", "FlipR", "CrossH", "CrossR", "Fuse")

    @property
    def sub_order(self) -> int:
        return self.child.group_order


@dataclass(frozen=True, eq=False)
class CyclicNode:
    """``G`` over a normal ``N`` with cyclic quotient of order ``k``, generated by ``g0 N``."""
    group_order: int
    identity: int
    index: int
    g0: int
    child: object
    e: np.ndarray
    sR: np.ndarray
    sL: np.ndarray
    Flip: np.ndarray
    red_e: np.ndarray
    red_N: np.ndarray
    Fuse: np.ndarray

    kind = "cyclic"
    TABLES = ("e", "sR", "sL", "Flip", "red_e", "red_N", "Fuse")

    @property
    def sub_order(self) -> int:
        return self.child.group_order


GroupDS = BaseTable | CosetNode | CyclicNode


def build_base(G: CayleyGroup) -> BaseTable:
    n = G.order
    return BaseTable(n, G.identity, _frozen(G.table), _frozen(np.arange(n)))


def _local_rank(G: CayleyGroup, H: Subgroup) -> np.ndarray:
    rank = np.full(G.order, -1, dtype=np.int64)
    rank[H.elements] = np.arange(H.order)
    return rank


def _check_child(H: Subgroup, child):
    if child.group_order != H.order:
        raise StructureError(
            f"child multiplies a group of order {child.group_order}, subgroup has order {H.order}")
    local_e = int(np.searchsorted(H.elements, H.parent.identity))
    if child.identity != local_e:
        raise StructureError("child identity does not match the subgroup's identity")


def build_coset_node(G: CayleyGroup, H: Subgroup, child) -> CosetNode:
    _check_child(H, child)
    T, inv = G.table, G.inverses
    rank = _local_rank(G, H)
    right = transversal(G, H, "right")
    left = transversal(G, H, "left")
    R, L = right.reps, left.reps
    g = np.arange(G.order)
    cR = right.coset_of
    cL = left.coset_of
    sR = rank[T[g, inv[R[cR]]]]
    sL = rank[T[inv[L[cL]], g]]
    lh = T[L[:, None], H.elements[None, :]]
    rr = T[R[:, None], R[None, :]]
    return CosetNode(
        G.order, G.identity, right.index, child,
        sL=_frozen(sL), sR=_frozen(sR), cL=_frozen(cL), cR=_frozen(cR),
        FlipH=_frozen(sR[lh]), FlipR=_frozen(cR[lh]),
        CrossH=_frozen(sR[rr]), CrossR=_frozen(cR[rr]),
        Fuse=_frozen(T[H.elements[:, None], R[None, :]]),
    )


def quotient_orders(G: CayleyGroup, N: Subgroup) -> np.ndarray:
    """Order of each coset ``gN`` in ``G/N``."""
    k = G.order // N.order
    out = np.zeros(G.order, dtype=np.int64)
    cur = np.arange(G.order, dtype=np.int32)
    for j in range(1, k + 1):
        hit = N.membership[cur] & (out == 0)
        out[hit] = j
        cur = G.table[cur, np.arange(G.order)]
    return out


def build_cyclic_node(G: CayleyGroup, N: Subgroup, child) -> CyclicNode:
    _check_child(N, child)
    w = non_normalizing_witness(G, N)
    if w is not None:
        raise NotNormalError(f"subgroup is not normal: element {w + 1} does not normalize it", w)
    T, inv = G.table, G.inverses
    k = G.order // N.order
    qo = quotient_orders(G, N)
    gens = np.flatnonzero(qo == k)
    if gens.size == 0:
        raise QuotientNotCyclic(f"quotient of order {k} is not cyclic")
    g0 = int(gens[0])
    pows = np.empty(2 * k - 1, dtype=np.int64)
    pows[0] = G.identity
    for i in range(1, 2 * k - 1):
        pows[i] = T[pows[i - 1], g0]
    rank = _local_rank(G, N)
    e = np.empty(G.order, dtype=np.int64)
    for i in range(k):
        e[T[pows[i], N.elements]] = i
    g = np.arange(G.order)
    ginv = inv[pows[e]]
    sR = rank[T[ginv, g]]
    sL = rank[T[g, ginv]]
    ik = np.arange(k)
    flip = rank[T[T[inv[pows[ik]][None, :], N.elements[:, None]], pows[ik][None, :]]]
    l = np.arange(2 * k - 1)
    red_e = np.where(l < k, l, l - k)
    red_N = rank[T[inv[pows[red_e]], pows[l]]]
    fuse = T[pows[ik][:, None], N.elements[None, :]]
    return CyclicNode(
        G.order, G.identity, k, g0, child,
        e=_frozen(e), sR=_frozen(sR), sL=_frozen(sL), Flip=_frozen(flip),
        red_e=_frozen(red_e), red_N=_frozen(red_N), Fuse=_frozen(fuse),
    )


class LookupCounter:
    __slots__ = ("count",)

    def __init__(self):
        self.count = 0

    def __call__(self, arr, *idx):
        self.count += 1
        return int(arr[idx])


def _query(ds, a: int, b: int, look) -> int:
    if ds.kind == "base":
        return look(ds.table, look(ds.to_local, a), look(ds.to_local, b))
    c = ds.child
    if ds.kind == "coset":
        h1 = _query(c, look(ds.sL, a), look(ds.sR, b), look)
        l = look(ds.cL, a)
        h2 = look(ds.FlipH, l, h1)
        r1 = look(ds.FlipR, l, h1)
        r = look(ds.cR, b)
        h3 = look(ds.CrossH, r1, r)
        r3 = look(ds.CrossR, r1, r)
        h4 = _query(c, h2, h3, look)
        return look(ds.Fuse, h4, r3)
    n1 = _query(c, look(ds.sR, a), look(ds.sL, b), look)
    eb = look(ds.e, b)
    ea = look(ds.e, a)
    n2 = look(ds.Flip, n1, eb)
    s = ea + eb
    gamma = look(ds.red_e, s)
    n3 = _query(c, look(ds.red_N, s), n2, look)
    return look(ds.Fuse, gamma, n3)


def _plain(arr, *idx):
    return int(arr[idx])


def multiply(ds, a: int, b: int, counter: LookupCounter | None = None) -> int:
    """Product ``a*b`` (0-based ids) evaluated by table lookups only."""
    n = ds.group_order
    if not (0 <= a < n and 0 <= b < n):
        raise IndexError(f"element ids must lie in 0..{n - 1}")
    return _query(ds, int(a), int(b), counter if counter is not None else _plain)


def multiply_many(ds, a, b) -> np.ndarray:
    """Vectorized ``multiply`` over equal-length id arrays; same lookup path."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if ds.kind == "base":
        return ds.table[ds.to_local[a], ds.to_local[b]].astype(np.int64)
    c = ds.child
    if ds.kind == "coset":
        h1 = multiply_many(c, ds.sL[a], ds.sR[b])
        l = ds.cL[a]
        h2, r1 = ds.FlipH[l, h1], ds.FlipR[l, h1]
        r = ds.cR[b]
        h3, r3 = ds.CrossH[r1, r], ds.CrossR[r1, r]
        h4 = multiply_many(c, h2, h3)
        return ds.Fuse[h4, r3].astype(np.int64)
    n1 = multiply_many(c, ds.sR[a], ds.sL[b])
    eb, ea = ds.e[b].astype(np.int64), ds.e[a].astype(np.int64)
    n2 = ds.Flip[n1, eb]
    s = ea + eb
    n3 = multiply_many(c, ds.red_N[s], n2)
    return ds.Fuse[ds.red_e[s], n3].astype(np.int64)


def lookup_count(ds) -> int:
    """Worst-case table lookups for one query."""
    if ds.kind == "base":
        return 3
    per_node = 9 if ds.kind == "coset" else 8
    return per_node + 2 * lookup_count(ds.child)


def node_words(ds) -> int:
    return sum(int(getattr(ds, name).size) for name in ds.TABLES)


def word_count(ds) -> int:
    total = 0
    while ds is not None:
        total += node_words(ds)
        ds = ds.child
    return total


def layers(ds) -> list:
    out = []
    while ds is not None:
        out.append(ds)
        ds = ds.child
    return out


def depth(ds) -> int:
    return len(layers(ds)) - 1


# identities checked exhaustively against the group the node multiplies

def check_identities(ds, G: CayleyGroup, H: Subgroup | None = None) -> list[str]:
    """Return the names of violated table identities (empty when all hold).

    ``G`` is the group of this node; ``H`` the subgroup the child multiplies.
    """
    T = G.table
    bad = []
    if ds.kind == "base":
        if not np.array_equal(ds.table.astype(np.int64), T):
            bad.append("table")
        return bad
    Hel = H.elements.astype(np.int64)
    g = np.arange(G.order)
    if ds.kind == "coset":
        R = ds.Fuse[int(np.searchsorted(Hel, G.identity)), :].astype(np.int64)
        L = T[g, G.inverses[Hel[ds.sL]]]  # g * sL(g)^-1 is the left rep
        glob = lambda x: Hel[np.asarray(x, dtype=np.int64)]
        if not np.array_equal(T[glob(ds.sR), R[ds.cR]], g):
            bad.append("g = sR(g) cR(g)")
        if not np.array_equal(T[L, glob(ds.sL)], g):
            bad.append("g = cL(g) sL(g)")
        lreps = np.zeros(ds.index, dtype=np.int64)
        lreps[ds.cL] = L
        if not np.array_equal(T[lreps[:, None], Hel[None, :]],
                              T[glob(ds.FlipH), R[ds.FlipR]]):
            bad.append("l h = FlipH FlipR")
        if not np.array_equal(T[R[:, None], R[None, :]], T[glob(ds.CrossH), R[ds.CrossR]]):
            bad.append("r r' = CrossH CrossR")
        if not np.array_equal(ds.Fuse, T[Hel[:, None], R[None, :]]):
            bad.append("Fuse(h, r) = h r")
        return bad
    k = ds.index
    pows = [G.identity]
    for _ in range(2 * k - 2):
        pows.append(int(T[pows[-1], ds.g0]))
    pows = np.array(pows, dtype=np.int64)
    glob = lambda x: Hel[np.asarray(x, dtype=np.int64)]
    pe = pows[ds.e]
    if not np.array_equal(T[pe, glob(ds.sR)], g):
        bad.append("g = g0^e sR")
    if not np.array_equal(T[glob(ds.sL), pe], g):
        bad.append("g = sL g0^e")
    ik = np.arange(k)
    if not np.array_equal(T[Hel[:, None], pows[ik][None, :]],
                          T[pows[ik][None, :], glob(ds.Flip)]):
        bad.append("n g0^i = g0^i Flip")
    l = np.arange(2 * k - 1)
    if not np.array_equal(pows[l], T[pows[ds.red_e], glob(ds.red_N)]):
        bad.append("g0^l = g0^red_e red_N")
    if not np.array_equal(ds.Fuse, T[pows[ik][:, None], Hel[None, :]]):
        bad.append("Fuse(i, n) = g0^i n")
    return bad


# serialization

_HEAD = struct.Struct("<IIII")


def _write_array(out: io.BytesIO, a: np.ndarray):
    flat = np.ascontiguousarray(a, dtype="<u4").ravel()
    out.write(struct.pack("<I", flat.size))
    out.write(flat.tobytes())


def serialize(ds) -> bytes:
    out = io.BytesIO()
    out.write(MAGIC)
    for node in layers(ds):
        tag = {"base": TAG_BASE, "coset": TAG_COSET, "cyclic": TAG_CYCLIC}[node.kind]
        index = getattr(node, "index", 1)
        out.write(_HEAD.pack(tag, node.group_order, node.identity, index))
        if node.kind == "cyclic":
            out.write(struct.pack("<I", node.g0))
        for name in node.TABLES:
            _write_array(out, getattr(node, name))
    return out.getvalue()


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise CorruptionError("unexpected end of data")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def array(self, expected: int, shape=None) -> np.ndarray:
        size = self.u32()
        if size != expected:
            raise CorruptionError(f"array length {size}, expected {expected}")
        a = np.frombuffer(self.take(4 * size), dtype="<u4").astype(np.uint32)
        if shape is not None:
            a = a.reshape(shape)
        a.setflags(write=False)
        return a


def _shapes(tag: int, n: int, sub: int, idx: int) -> list[tuple[tuple[int, ...], int]]:
    """(shape, value bound) per table, in serialization order."""
    if tag == TAG_BASE:
        return [((n, n), n), ((n,), n)]
    if tag == TAG_COSET:
        return [((n,), sub), ((n,), sub), ((n,), idx), ((n,), idx),
                ((idx, sub), sub), ((idx, sub), idx),
                ((idx, idx), sub), ((idx, idx), idx), ((sub, idx), n)]
    return [((n,), idx), ((n,), sub), ((n,), sub), ((sub, idx), sub),
            ((2 * idx - 1,), idx), ((2 * idx - 1,), sub), ((idx, sub), n)]


def deserialize(data: bytes, *, seed: int = 0, samples: int = VALIDATION_SAMPLES):
    if len(data) < 4 or data[:4] != MAGIC:
        if len(data) >= 4 and data[:3] == MAGIC[:3]:
            raise VersionError(f"unsupported container version {data[3:4]!r}")
        raise CorruptionError("missing GDS1 header")
    rd = _Reader(data)
    rd.take(4)
    heads = []
    while True:
        tag, n, ident, idx = _HEAD.unpack(rd.take(_HEAD.size))
        if tag not in (TAG_BASE, TAG_COSET, TAG_CYCLIC):
            raise CorruptionError(f"unknown node tag {tag}")
        if n == 0 or idx == 0 or n % idx or ident >= n:
            raise CorruptionError("inconsistent node header")
        g0 = rd.u32() if tag == TAG_CYCLIC else None
        sub = n if tag == TAG_BASE else n // idx
        arrays = []
        for shape, bound in _shapes(tag, n, sub, idx):
            a = rd.array(int(np.prod(shape)), shape)
            if a.size and int(a.max()) >= bound:
                raise CorruptionError("table cell out of range")
            arrays.append(a)
        heads.append((tag, n, ident, idx, g0, arrays))
        if tag == TAG_BASE:
            break
    if rd.pos != len(data):
        raise CorruptionError("trailing bytes after structure")
    ds = None
    for tag, n, ident, idx, g0, arrays in reversed(heads):
        if ds is not None and ds.group_order != n // idx:
            raise CorruptionError("child order does not match node index")
        if tag == TAG_BASE:
            ds = BaseTable(n, ident, *arrays)
        elif tag == TAG_COSET:
            ds = CosetNode(n, ident, idx, ds, *arrays)
        else:
            ds = CyclicNode(n, ident, idx, g0, ds, *arrays)
    validate(ds, seed=seed, samples=samples)
    return ds


def validate(ds, *, seed: int = 0, samples: int = VALIDATION_SAMPLES):
    """Spot-check decomposition identities using nothing but the stored tables."""
    rng = np.random.default_rng(seed)
    for node in layers(ds):
        n = node.group_order
        g = rng.integers(0, n, size=samples)
        if node.kind == "base":
            h = rng.integers(0, n, size=samples)
            e = node.identity
            if not (np.array_equal(node.table[e, g], g) and np.array_equal(node.table[g, e], g)):
                raise CorruptionError("base table identity row is damaged")
            if not (node.table[g, h] < n).all():
                raise CorruptionError("base table cell out of range")
            continue
        if node.kind == "coset":
            l, h = node.cL[g], node.sL[g]
            checks = {
                "g = sR(g) cR(g)": node.Fuse[node.sR[g], node.cR[g]] == g,
                "g = cL(g) sL(g)": node.Fuse[node.FlipH[l, h], node.FlipR[l, h]] == g,
            }
        else:
            checks = {
                "g = g0^e sR": node.Fuse[node.e[g], node.sR[g]] == g,
                "sR = Flip(sL, e)": node.Flip[node.sL[g], node.e[g]] == node.sR[g],
            }
        for name, ok in checks.items():
            if not ok.all():
                raise CorruptionError(f"identity {name} fails on stored tables")
    a, b, c = rng.integers(0, ds.group_order, size=(3, samples))
    ab_c = multiply_many(ds, multiply_many(ds, a, b), c)
    a_bc = multiply_many(ds, a, multiply_many(ds, b, c))
    if not np.array_equal(ab_c, a_bc):
        raise CorruptionError("stored tables do not define an associative product")
    e = ds.identity
    if not np.array_equal(multiply_many(ds, np.full(samples, e), a), a):
        raise CorruptionError("stored tables do not fix the identity")


def to_dict(ds) -> dict:
    """JSON-ready dump of the whole structure (cells as nested lists)."""
    nodes = []
    for node in layers(ds):
        d = {"kind": node.kind, "group_order": node.group_order,
             "identity": node.identity, "words": node_words(node)}
        if node.kind != "base":
            d["index"] = node.index
        if node.kind == "cyclic":
            d["g0"] = node.g0
        d["tables"] = {name: getattr(node, name).tolist() for name in node.TABLES}
        nodes.append(d)
    return {"format": MAGIC.decode(), "lookup_count": lookup_count(ds),
            "word_count": word_count(ds), "nodes": nodes}


def dumps_json(ds) -> str:
    return json.dumps(to_dict(ds), indent=1)
