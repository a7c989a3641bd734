"""Reduction engine: linear-time recognizer plus a quadratic reference.

The linear engine keeps every known reduction in per-edge triple lists
(good / bad / waiting).  Graph edits never search the lists: removing an
edge renames its bad list to good, inserting an edge renames good and
waiting to bad, and everything else is resolved lazily when an entry is
popped, by re-classifying the candidate against the current graph.
Renames move whole buckets, so their cost amortizes against the
insert events that filled them.

The quadratic recognizer shares classification and application code and
simply rescans all candidates from scratch after every reduction.  Both
accept a graph only when the reductions drain into an extended wheel
*and* the trace then rebuilds into a verified drawing of the input.
The rebuild is not decorative: on rare non-members a locally good
reduction can land inside the class (a 2-switch mutant on 15 vertices
drains to XW_8 under one candidate order and strands under another), so
a drained wheel alone would over-accept.  Inverting the trace and
checking the five drawing clauses turns every accept into a
certificate, which is also why the two engines agree on all inputs.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from .embedding import EmbeddedGraph, reconstruct, separating_quad, verify_embedding
from .graph import DynamicGraph, StructuralFault, edge_key, precheck_reason
from .records import EditRecord
from .rules import (
    Classification,
    CRReduction,
    Kind,
    NotOptimal,
    Reduction,
    SRReduction,
    XWStructure,
    apply_cr,
    apply_sr,
    classify,
    detect_xw,
    match_cc,
)

EdgeKey = tuple[int, int]


@dataclass
class Stats:
    n0: int = 0
    m0: int = 0
    applied_sr: int = 0
    applied_cr: int = 0
    accesses: int = 0
    unsuccessful: int = 0
    rescans: int = 0
    rescan_hits: int = 0


@dataclass
class RecognitionResult:
    accepted: bool
    reason: str | None
    xw: XWStructure | None
    trace: list[EditRecord]
    stats: Stats
    terminal: DynamicGraph | None
    #: verified drawing of the input, present exactly on accept
    emb: EmbeddedGraph | None = None

    @property
    def final_k(self) -> int | None:
        return self.xw.k if self.xw else None

    def __bool__(self) -> bool:
        return self.accepted


def _certify(
    orig: DynamicGraph,
    g: DynamicGraph,
    xw: XWStructure,
    trace: list[EditRecord],
    stats: Stats,
) -> RecognitionResult:
    """Turn a drained wheel into an accept, or reject the impostor.

    The trace is inverted step by step as drawing expansions on the
    terminal wheel.  For a member every drain sequence inverts (each
    intermediate is itself a member with an essentially unique drawing);
    a sequence that does not, or whose rebuilt drawing fails
    verification against the untouched input, came from outside the
    class.
    """
    try:
        emb = reconstruct(trace, xw.k, terminal=(g, xw))
    except StructuralFault as ex:
        return RecognitionResult(
            False, f"wheel reached but the trace does not invert to a drawing: {ex}",
            None, trace, stats, g,
        )
    rep = verify_embedding(orig, emb)
    if not rep.ok:
        return RecognitionResult(
            False, f"rebuilt drawing fails verification: {rep.failures[0]}",
            None, trace, stats, g,
        )
    return RecognitionResult(True, None, xw, trace, stats, g, emb)


# -- triple lists -------------------------------------------------------------


class _Entry:
    __slots__ = ("stored", "bucket")

    def __init__(self, stored: "_Stored") -> None:
        self.stored = stored
        self.bucket: "_Bucket | None" = None


class _Stored:
    """A reduction currently known to the bank, with its 0-2 list entries."""

    __slots__ = ("red", "entries", "owners")

    def __init__(self, red: Reduction, owners: tuple[int, ...]) -> None:
        self.red = red
        self.entries: list[_Entry] = []
        self.owners = owners


class _Bucket:
    """One physical list: the entries currently filed at (key, role)."""

    __slots__ = ("sr", "cr", "role")

    def __init__(self, role: str) -> None:
        self.sr: dict[int, _Entry] = {}
        self.cr: dict[int, _Entry] = {}
        self.role = role

    def add(self, entry: _Entry) -> None:
        side = self.cr if isinstance(entry.stored.red, CRReduction) else self.sr
        side[id(entry)] = entry
        entry.bucket = self

    def discard(self, entry: _Entry) -> None:
        self.cr.pop(id(entry), None)
        self.sr.pop(id(entry), None)
        entry.bucket = None

    def take(self) -> _Entry:
        # crossed-cube reductions take precedence over crossed stars
        side = self.cr or self.sr
        entry = side.pop(next(iter(side)))
        entry.bucket = None
        return entry

    def __len__(self) -> int:
        return len(self.sr) + len(self.cr)


class _Triple:
    __slots__ = ("good", "bad", "wait")

    def __init__(self) -> None:
        self.good: _Bucket | None = None
        self.bad: _Bucket | None = None
        self.wait: _Bucket | None = None


class ListBank:
    """All stored reductions, indexed by the edges that can unblock them."""

    def __init__(self, order: str = "lifo", seed: int = 0) -> None:
        if order not in ("lifo", "fifo", "random"):
            raise ValueError(f"unknown pop order {order!r}")
        self.order = order
        self.rng = random.Random(seed)
        self.triples: dict[EdgeKey, _Triple] = {}
        self.queue: deque[_Bucket] | list[_Bucket]
        self.queue = [] if order == "random" else deque()
        self.owners: dict[int, set[_Stored]] = {}
        self.cc_seen: dict[frozenset[int], _Stored] = {}

    # -- filing ---------------------------------------------------------------

    def _push(self, bucket: _Bucket) -> None:
        self.queue.append(bucket)

    def _bucket(self, key: EdgeKey, role: str) -> _Bucket:
        triple = self.triples.get(key)
        if triple is None:
            triple = self.triples[key] = _Triple()
        b = getattr(triple, role)
        if b is None:
            b = _Bucket(role)
            setattr(triple, role, b)
        return b

    def add(self, red: Reduction, cls: Classification) -> None:
        """File a classified reduction under its two red keys."""
        owners = (red.x,) if isinstance(red, SRReduction) else red.inner
        stored = _Stored(red, owners)
        if cls.kind is Kind.GOOD:
            roles = [(k, "good") for k in red.red_keys]
        elif cls.kind is Kind.BLOCKED_RED:
            roles = [
                (k, "bad" if k in cls.blocking else "wait") for k in red.red_keys
            ]
        else:
            return
        for key, role in roles:
            entry = _Entry(stored)
            stored.entries.append(entry)
            bucket = self._bucket(key, role)
            bucket.add(entry)
            if role == "good" and len(bucket) == 1:
                self._push(bucket)
        for v in stored.owners:
            self.owners.setdefault(v, set()).add(stored)
        if isinstance(red, CRReduction):
            self.cc_seen[frozenset(red.inner)] = stored

    def discard(self, stored: _Stored) -> None:
        for entry in stored.entries:
            if entry.bucket is not None:
                entry.bucket.discard(entry)
        stored.entries.clear()
        for v in stored.owners:
            group = self.owners.get(v)
            if group is not None:
                group.discard(stored)
                if not group:
                    del self.owners[v]
        if isinstance(stored.red, CRReduction):
            key = frozenset(stored.red.inner)
            if self.cc_seen.get(key) is stored:
                del self.cc_seen[key]

    def remove_owned(self, v: int, sr_only: bool = False) -> None:
        group = self.owners.get(v)
        if not group:
            return
        for stored in list(group):
            if sr_only and isinstance(stored.red, CRReduction):
                continue
            self.discard(stored)

    def drop_key(self, key: EdgeKey) -> None:
        """Forget a key whose edge vanished with a removed vertex."""
        triple = self.triples.pop(key, None)
        if triple is None:
            return
        for bucket in (triple.good, triple.bad, triple.wait):
            if bucket is None:
                continue
            for entry in list(bucket.cr.values()) + list(bucket.sr.values()):
                self.discard(entry.stored)
            bucket.role = "dead"

    # -- the two renames -------------------------------------------------------

    def on_insert(self, key: EdgeKey) -> None:
        """The edge at key appeared: good and waiting entries turn bad."""
        triple = self.triples.get(key)
        if triple is None:
            return
        target = triple.bad
        for src in (triple.good, triple.wait):
            if src is None:
                continue
            if target is None:
                target = src
                target.role = "bad"
            else:
                for entry in list(src.cr.values()) + list(src.sr.values()):
                    src.discard(entry)
                    target.add(entry)
                src.role = "dead"
        triple.good = triple.wait = None
        triple.bad = target

    def on_remove(self, key: EdgeKey) -> None:
        """The edge at key vanished: bad entries turn good."""
        triple = self.triples.get(key)
        if triple is None or triple.bad is None:
            return
        src = triple.bad
        triple.bad = None
        if triple.good is None:
            src.role = "good"
            triple.good = src
            if len(src):
                self._push(src)
        else:
            for entry in list(src.cr.values()) + list(src.sr.values()):
                src.discard(entry)
                triple.good.add(entry)
            src.role = "dead"
            if len(triple.good):
                self._push(triple.good)

    # -- popping ----------------------------------------------------------------

    def pop(self) -> _Entry | None:
        q = self.queue
        while q:
            if self.order == "lifo":
                bucket = q[-1]
                if bucket.role != "good" or not len(bucket):
                    q.pop()
                    continue
                entry = bucket.take()
                if not len(bucket):
                    q.pop()
                return entry
            if self.order == "fifo":
                bucket = q[0]
                if bucket.role != "good" or not len(bucket):
                    q.popleft()
                    continue
                entry = bucket.take()
                if not len(bucket):
                    q.popleft()
                return entry
            i = self.rng.randrange(len(q))
            bucket = q[i]
            if bucket.role != "good" or not len(bucket):
                q[i] = q[-1]
                q.pop()
                continue
            entry = bucket.take()
            if not len(bucket):
                q[i] = q[-1]
                q.pop()
            return entry
        return None


# -- linear engine -------------------------------------------------------------


def _file_candidate(g: DynamicGraph, v: int, bank: ListBank, enable_cr: bool) -> None:
    """Classify candidate v and file its reductions (refreshing its old ones)."""
    items = classify(g, v)
    bank.remove_owned(v, sr_only=True)
    for red, cls in items:
        if isinstance(red, CRReduction):
            if not enable_cr:
                continue
            ident = frozenset(red.inner)
            for u in red.inner:
                bank.remove_owned(u, sr_only=True)
            if ident not in bank.cc_seen:
                bank.add(red, cls)
        elif cls.kind in (Kind.GOOD, Kind.BLOCKED_RED):
            bank.add(red, cls)


def _audit(g: DynamicGraph) -> None:
    if g.m != 4 * g.n - 8:
        raise StructuralFault(f"edge count {g.m} != 4n-8 after reduction")
    for v in g.vertices():
        d = g.degree(v)
        if d < 6 or d & 1:
            raise StructuralFault(f"degree {d} at {v} after reduction")


def _after_sr(g, bank, red, enable_cr):
    x, target = red.x, red.target
    ring = (target,) + red.mates + red.others
    bank.remove_owned(x)
    bank.remove_owned(target)
    for y in ring:
        bank.drop_key(edge_key(x, y))
    bank.on_remove(edge_key(*red.mates))
    for r in red.others:
        bank.on_insert(edge_key(target, r))
    # every surviving ring vertex kept or reached degree 6 with a changed
    # neighborhood; refreshing them here is O(1) and keeps the lists honest
    for w in ring:
        if g.degree(w) == 6:
            _file_candidate(g, w, bank, enable_cr)


def _after_cr(g, bank, red, edit, enable_cr):
    for u in red.inner:
        bank.remove_owned(u)
    for u, v in edit.removals:
        bank.drop_key(edge_key(u, v))
    for d in red.red_keys:
        bank.on_insert(d)
    for w in red.outer:
        if g.degree(w) == 6:
            _file_candidate(g, w, bank, enable_cr)


def _rescan(g: DynamicGraph, bank: ListBank, enable_cr: bool) -> bool:
    """Refile every candidate that classifies good right now.

    Safety net for the rare relabeling ambiguity of the crossed-star
    roles: a key chosen under one labeling can strand an entry under
    edges that never change again.  One sweep either recovers a good
    reduction or proves the queues drained for a reason.
    """
    found = False
    for v in sorted(g.vertices()):
        if g.degree(v) != 6:
            continue
        items = classify(g, v)
        for red, cls in items:
            if cls.kind is not Kind.GOOD:
                continue
            if isinstance(red, CRReduction) and not enable_cr:
                continue
            _file_candidate(g, v, bank, enable_cr)
            found = True
            break
    return found


def _resolve_sr(g, bank, entry, enable_cr) -> SRReduction | None:
    """Re-classify a popped crossed-star entry; good means apply now."""
    red = entry.stored.red
    x = red.x
    bank.discard(entry.stored)
    if not (g.is_alive(x) and g.degree(x) == 6 and g.is_alive(red.target)):
        return None
    if red.target not in g.neighbors(x):
        return None
    fresh = classify(g, x)
    hit = None
    for fred, fcls in fresh:
        if isinstance(fred, SRReduction) and fred.target == red.target:
            hit = (fred, fcls)
            break
    if hit is not None and hit[1].kind is Kind.GOOD:
        return hit[0]
    # stale or still blocked: refresh x's whole reduction set from fresh data
    bank.remove_owned(x, sr_only=True)
    for fred, fcls in fresh:
        if isinstance(fred, SRReduction) and fcls.kind in (Kind.GOOD, Kind.BLOCKED_RED):
            bank.add(fred, fcls)
        elif isinstance(fred, CRReduction) and enable_cr:
            if frozenset(fred.inner) not in bank.cc_seen:
                bank.add(fred, fcls)
    return None


def _resolve_cr(g, bank, entry) -> CRReduction | None:
    """Re-classify a popped crossed-cube entry; good means apply now."""
    red = entry.stored.red
    bank.discard(entry.stored)
    if not all(g.is_alive(u) and g.degree(u) == 6 for u in red.inner):
        return None
    fresh = classify(g, red.inner[0])
    for fred, fcls in fresh:
        if isinstance(fred, CRReduction) and set(fred.inner) == set(red.inner):
            if fcls.kind is Kind.GOOD:
                return fred
            bank.add(fred, fcls)
            return None
    return None


def recognize_linear(
    g: DynamicGraph,
    *,
    order: str = "lifo",
    seed: int = 0,
    enable_cr: bool = True,
    rescan: bool = True,
    debug_checks: bool = False,
    copy: bool = True,
) -> RecognitionResult:
    """Decide membership by draining the reduction lists.  Expected O(n).

    order picks which good list a pop serves first (lifo, fifo or
    random); all orders must agree on the verdict, though not on the
    size of the terminal wheel.  With enable_cr off only crossed-star
    reductions run; graphs accepted that way are 5-connected members,
    but the drain can strand on other 5-connected members, so rejects
    under that flag are inconclusive (recognize_5connected settles them).

    An accept always carries the rebuilt, verified drawing in emb.
    """
    orig = g
    if copy:
        g = g.copy()
    else:
        orig = g.copy()
    stats = Stats(n0=g.n, m0=g.m)
    trace: list[EditRecord] = []
    why = precheck_reason(g)
    if why is not None:
        return RecognitionResult(False, f"precheck: {why}", None, trace, stats, g)
    bank = ListBank(order, seed)
    try:
        for v in sorted(g.vertices()):
            if g.degree(v) == 6:
                _file_candidate(g, v, bank, enable_cr)
        while True:
            entry = bank.pop()
            if entry is None:
                if rescan and g.n > 8:
                    stats.rescans += 1
                    if _rescan(g, bank, enable_cr):
                        stats.rescan_hits += 1
                        continue
                break
            stats.accesses += 1
            red = entry.stored.red
            if isinstance(red, SRReduction):
                good = _resolve_sr(g, bank, entry, enable_cr)
                if good is None:
                    stats.unsuccessful += 1
                    continue
                edit = apply_sr(g, good)
                trace.append(edit)
                stats.applied_sr += 1
                _after_sr(g, bank, good, enable_cr)
            else:
                good = _resolve_cr(g, bank, entry)
                if good is None:
                    stats.unsuccessful += 1
                    continue
                edit = apply_cr(g, good)
                trace.append(edit)
                stats.applied_cr += 1
                _after_cr(g, bank, good, edit, enable_cr)
            if debug_checks:
                _audit(g)
    except NotOptimal as ex:
        return RecognitionResult(False, str(ex), None, trace, stats, g)
    except StructuralFault as ex:
        return RecognitionResult(False, f"structure violation: {ex}", None, trace, stats, g)
    xw = detect_xw(g)
    if xw is None:
        return RecognitionResult(False, "reductions drained short of an extended wheel", None, trace, stats, g)
    return _certify(orig, g, xw, trace, stats)


# -- quadratic reference engine --------------------------------------------------


def recognize_quadratic(
    g: DynamicGraph,
    *,
    enable_cr: bool = True,
    debug_checks: bool = False,
    copy: bool = True,
) -> RecognitionResult:
    """Reference recognizer: rescan every candidate after each reduction.

    No lists, no renames, no laziness; each round walks all vertices in
    id order and applies the first good reduction it sees (crossed cubes
    before crossed stars at one candidate).  O(n^2) overall.  Accepts
    carry the rebuilt, verified drawing in emb.
    """
    orig = g
    if copy:
        g = g.copy()
    else:
        orig = g.copy()
    stats = Stats(n0=g.n, m0=g.m)
    trace: list[EditRecord] = []
    why = precheck_reason(g)
    if why is not None:
        return RecognitionResult(False, f"precheck: {why}", None, trace, stats, g)
    try:
        progress = True
        while progress:
            progress = False
            for v in sorted(g.vertices()):
                if g.degree(v) != 6:
                    continue
                pick: Reduction | None = None
                for red, cls in classify(g, v):
                    if cls.kind is not Kind.GOOD:
                        continue
                    if isinstance(red, CRReduction):
                        if enable_cr:
                            pick = red
                            break
                    elif pick is None:
                        pick = red
                if pick is None:
                    continue
                if isinstance(pick, CRReduction):
                    trace.append(apply_cr(g, pick))
                    stats.applied_cr += 1
                else:
                    trace.append(apply_sr(g, pick))
                    stats.applied_sr += 1
                if debug_checks:
                    _audit(g)
                progress = True
                break
    except NotOptimal as ex:
        return RecognitionResult(False, str(ex), None, trace, stats, g)
    except StructuralFault as ex:
        return RecognitionResult(False, f"structure violation: {ex}", None, trace, stats, g)
    xw = detect_xw(g)
    if xw is None:
        return RecognitionResult(False, "reductions drained short of an extended wheel", None, trace, stats, g)
    return _certify(orig, g, xw, trace, stats)


def recognize_5connected(g: DynamicGraph, *, algorithm: str = "linear", **kw) -> RecognitionResult:
    """Membership test for the 5-connected part of the class.

    Draining to a wheel on crossed stars alone certifies there is no
    separating 4-cycle, because only a crossed-cube move gets past one.
    That probe accepts exactly right but can also strand on 5-connected
    inputs: star reductions may paint the graph into a corner that only
    a cube move escapes.  A stranded run therefore proves nothing, and
    the verdict is settled by the full engine plus a scan of the
    reconstructed embedding for a separating quadrilateral.
    """
    if algorithm == "linear":
        run = recognize_linear
    elif algorithm == "quadratic":
        run = recognize_quadratic
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    probe = run(g, enable_cr=False, **{**kw, "copy": True})
    if probe.accepted:
        return probe
    full = run(g, **kw)
    if not full.accepted:
        return full
    quad = separating_quad(full.emb)
    if quad is None:
        return full
    return RecognitionResult(
        False, f"separating 4-cycle at {quad}", None,
        full.trace, full.stats, full.terminal,
    )
