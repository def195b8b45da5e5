"""Exact primitivity and simplicity indexes via principal quotients,
certified interval bounds for the non-filling index, index-function tables,
an independent cover-census oracle, and divisibility / residual-growth
helpers.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .errors import InvalidInputError, ResourceGuardError
from .graphs import (
    AGraph,
    canonical_key,
    circle_graph,
    collapse_vertices,
    cover_census,
    fold_with_map,
    graph_to_json,
    is_cover,
    path_terminus,
    rewrite_loop,
    rewrite_loop_cyclic,
    set_partitions_with_blocks,
    spanning_data,
    trace_path,
)
from .words import (
    CyclicWord,
    Word,
    concat,
    cyclic_class_key,
    enumerate_cyclically_reduced,
    index_candidates_exact,
)
from .whitehead import is_primitive, is_simple, rauzy3_full

CERT_PRIMITIVE = "primitive-in-subgroup"
CERT_SIMPLE = "simple-in-subgroup"
CERT_RAUZY = "rauzy3-filling"
CERT_UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Witness:
    graph: AGraph
    certificate: str

    def to_json(self) -> dict:
        return {"certificate": self.certificate, "graph": graph_to_json(self.graph)}


@dataclass(frozen=True)
class IndexReport:
    word: CyclicWord
    d_prim: int
    d_simp: int
    d_fill_lower: int
    d_fill_upper: int
    witnesses: dict[str, Witness]

    def __post_init__(self):
        n = len(self.word)
        assert (
            self.d_fill_lower
            <= self.d_fill_upper
            <= self.d_simp
            <= self.d_prim
            <= n
        )

    def to_json(self) -> dict:
        return {
            "word": self.word.text(),
            "rank": self.word.rank,
            "d_prim": self.d_prim,
            "d_simp": self.d_simp,
            "d_fill": [self.d_fill_lower, self.d_fill_upper],
            "witnesses": {k: w.to_json() for k, w in self.witnesses.items()},
        }


@dataclass
class _Quotient:
    graph: AGraph
    cover: bool
    primitive: bool
    simple_success: bool
    fill_potential: bool


def _quotient_predicates(q: AGraph, w: CyclicWord) -> _Quotient:
    loop = trace_path(q, q.base, w)
    assert path_terminus(q, loop) == q.base
    sd = spanning_data(q)
    lin = rewrite_loop(q, sd, loop)
    cover = is_cover(q)
    primitive = is_primitive(lin)
    if cover:
        simple_success = is_simple(lin)
        fill_potential = simple_success or not rauzy3_full(
            rewrite_loop_cyclic(q, sd, loop)
        )
    else:
        simple_success = True
        fill_potential = True
    return _Quotient(q, cover, primitive, simple_success, fill_potential)


@dataclass
class _Scan:
    d_prim: int | None = None
    d_simp: int | None = None
    d_fill_lower: int | None = None
    prim_witness: Witness | None = None
    simp_witness: Witness | None = None
    fill_witness: Witness | None = None
    partitions_used: int = 0


def _scan_quotients(
    w: CyclicWord,
    need_prim: bool,
    max_index: int | None = None,
    max_partitions: int | None = None,
) -> _Scan:
    """Best-first scan of principal quotients by ascending block count.

    A quotient with m vertices also arises from an m-block partition, so at
    block count k only quotients with exactly k vertices are new; the first
    success per predicate therefore realizes its minimum vertex count.
    """
    if len(w) == 0:
        raise InvalidInputError("index operations reject the trivial word")
    n = len(w)
    cw_graph = circle_graph(w)
    res = _Scan()
    k_cap = n if max_index is None else min(n, max_index)
    for k in range(1, k_cap + 1):
        best: dict[str, tuple] = {}
        seen: set = set()
        for blocks in set_partitions_with_blocks(n, k):
            res.partitions_used += 1
            if max_partitions is not None and res.partitions_used > max_partitions:
                raise ResourceGuardError(
                    f"principal-quotient scan exceeded {max_partitions} partitions"
                )
            collapsed, _ = collapse_vertices(cw_graph, blocks)
            folded, _ = fold_with_map(collapsed)
            if folded.num_vertices < k:
                continue  # already seen at a lower block count
            key = canonical_key(folded)
            if key in seen:
                continue
            seen.add(key)
            facts = _quotient_predicates(folded, w)
            if facts.primitive and res.d_prim is None:
                cand = (key, Witness(folded, CERT_PRIMITIVE))
                if "prim" not in best or cand[0] < best["prim"][0]:
                    best["prim"] = cand
            if facts.simple_success and res.d_simp is None:
                cert = CERT_SIMPLE
                cand = (key, Witness(folded, cert))
                if "simp" not in best or cand[0] < best["simp"][0]:
                    best["simp"] = cand
            if facts.fill_potential and res.d_fill_lower is None:
                cert = CERT_SIMPLE if facts.simple_success else CERT_UNDETERMINED
                cand = (key, Witness(folded, cert))
                if "fill" not in best or cand[0] < best["fill"][0]:
                    best["fill"] = cand
        if "prim" in best:
            res.d_prim, res.prim_witness = k, best["prim"][1]
        if "simp" in best:
            res.d_simp, res.simp_witness = k, best["simp"][1]
        if "fill" in best:
            res.d_fill_lower, res.fill_witness = k, best["fill"][1]
        done_prim = res.d_prim is not None or not need_prim
        if done_prim and res.d_simp is not None and res.d_fill_lower is not None:
            break
    return res


def d_prim(
    w: CyclicWord,
    max_index: int | None = None,
    max_partitions: int | None = None,
) -> tuple[int, Witness]:
    """Least index of a subgroup holding w as a primitive element, with a
    witness quotient graph of that many vertices."""
    res = _scan_quotients(w, True, max_index, max_partitions)
    if res.d_prim is None:
        raise ResourceGuardError("d_prim not reached within max_index")
    return res.d_prim, res.prim_witness  # type: ignore[return-value]


def d_simp(
    w: CyclicWord,
    max_index: int | None = None,
    max_partitions: int | None = None,
) -> tuple[int, Witness]:
    """Least index of a subgroup holding w as a simple element."""
    res = _scan_quotients(w, False, max_index, max_partitions)
    if res.d_simp is None:
        raise ResourceGuardError("d_simp not reached within max_index")
    return res.d_simp, res.simp_witness  # type: ignore[return-value]


@dataclass(frozen=True)
class FillBounds:
    lower: int
    upper: int | None
    lower_witness: Witness | None
    upper_witness: Witness | None

    @property
    def exact(self) -> bool:
        return self.upper == self.lower


def d_fill_bounds(
    w: CyclicWord,
    max_index: int | None = None,
    max_partitions: int | None = None,
) -> FillBounds:
    """Certified interval for the non-filling index.

    upper: least vertex count of a quotient certified non-filling (simple,
    or a non-cover whose completion keeps w inside a proper free factor).
    lower: least vertex count of a quotient not certified filling by the
    level-3 subword test, hence a possible non-filling witness.
    """
    res = _scan_quotients(w, False, max_index, max_partitions)
    if res.d_fill_lower is None:
        # every quotient within the cap was certified filling
        cap = max_index if max_index is not None else len(w)
        return FillBounds(cap + 1, None, None, None)
    return FillBounds(
        res.d_fill_lower,
        res.d_simp,
        res.fill_witness,
        res.simp_witness,
    )


def index_report(
    w: CyclicWord,
    max_index: int | None = None,
    max_partitions: int | None = None,
) -> IndexReport:
    """One scan computing d_prim, d_simp, and the d_fill interval."""
    res = _scan_quotients(w, True, max_index, max_partitions)
    if res.d_prim is None or res.d_simp is None or res.d_fill_lower is None:
        raise ResourceGuardError("index scan did not finish within caps")
    return IndexReport(
        word=w,
        d_prim=res.d_prim,
        d_simp=res.d_simp,
        d_fill_lower=res.d_fill_lower,
        d_fill_upper=res.d_simp,
        witnesses={
            "prim": res.prim_witness,  # type: ignore[dict-item]
            "simp": res.simp_witness,  # type: ignore[dict-item]
            "fill_lower": res.fill_witness,  # type: ignore[dict-item]
        },
    )


# -- class-level cache --------------------------------------------------------

_value_cache: dict[tuple[int, tuple[int, ...]], tuple[int, int, int]] = {}


def index_values(w: CyclicWord) -> tuple[int, int, int]:
    """(d_prim, d_simp, d_fill_lower) with caching per equivalence class
    under rotation, inversion and relabeling (all three are invariant)."""
    key = (w.rank, cyclic_class_key(w.letters, w.rank))
    hit = _value_cache.get(key)
    if hit is None:
        rep = CyclicWord(key[1], w.rank)
        res = _scan_quotients(rep, True)
        hit = (res.d_prim, res.d_simp, res.d_fill_lower)  # type: ignore[assignment]
        _value_cache[key] = hit
    return hit


# -- tables ---------------------------------------------------------------------

@dataclass(frozen=True)
class TableRow:
    n: int
    f_prim: int
    f_simp: int
    f_fill_lower: int
    f_fill_upper: int
    witness_prim: str
    witness_simp: str


@dataclass(frozen=True)
class IndexFunctionTable:
    rank: int
    rows: tuple[TableRow, ...]

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "rows": [
                {
                    "n": r.n,
                    "f_prim": r.f_prim,
                    "f_simp": r.f_simp,
                    "f_fill": [r.f_fill_lower, r.f_fill_upper],
                    "witness_prim": r.witness_prim,
                    "witness_simp": r.witness_simp,
                }
                for r in self.rows
            ],
        }


def _rep_values(task: tuple[int, tuple[int, ...], int | None]) -> tuple[int, int, int]:
    rank, letters, max_partitions = task
    res = _scan_quotients(
        CyclicWord(letters, rank), True, max_partitions=max_partitions
    )
    return res.d_prim, res.d_simp, res.d_fill_lower  # type: ignore[return-value]


def f_table(
    n_max: int,
    rank: int,
    max_partitions: int | None = None,
    jobs: int = 1,
) -> IndexFunctionTable:
    """Index-function table over root-free class representatives of each
    length; columns are running maxima so they are monotone by construction.

    jobs > 1 shards the per-word scans across processes; the monotone fold
    makes the result schedule-independent.
    """
    if n_max < 1:
        raise InvalidInputError("need n_max >= 1")
    per_length: list[list[CyclicWord]] = [
        list(index_candidates_exact(n, rank)) for n in range(1, n_max + 1)
    ]
    tasks = [
        (rank, rep.letters, max_partitions) for reps in per_length for rep in reps
    ]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            values = list(pool.map(_rep_values, tasks, chunksize=4))
    else:
        values = [_rep_values(t) for t in tasks]
    rows: list[TableRow] = []
    fp = fs = fl = fu = 0
    wp = ws = ""
    i = 0
    for n, reps in enumerate(per_length, start=1):
        for rep in reps:
            dp, ds, dl = values[i]
            i += 1
            if dp > fp:
                fp, wp = dp, rep.text()
            if ds > fs:
                fs, ws = ds, rep.text()
            fl = max(fl, dl)
            fu = max(fu, ds)
        rows.append(
            TableRow(
                n=n,
                f_prim=fp,
                f_simp=fs,
                f_fill_lower=fl,
                f_fill_upper=fu,
                witness_prim=wp,
                witness_simp=ws,
            )
        )
    return IndexFunctionTable(rank=rank, rows=tuple(rows))


# -- census oracles -------------------------------------------------------------

def _closed_trace(g: AGraph, letters) -> bool:
    p = trace_path(g, g.base, letters)
    return path_terminus(g, p) == g.base


def d_prim_census_oracle(w: CyclicWord, d_max: int) -> int | None:
    """Independent oracle: least cover degree <= d_max whose traced w-loop
    closes and rewrites to a primitive dual word; None when none found."""
    if len(w) == 0:
        raise InvalidInputError("index operations reject the trivial word")
    for d in range(1, d_max + 1):
        for g in cover_census(w.rank, d):
            p = trace_path(g, g.base, w)
            if path_terminus(g, p) != g.base:
                continue
            sd = spanning_data(g)
            if is_primitive(rewrite_loop(g, sd, p)):
                return d
    return None


def d_simp_census(w: CyclicWord, d_max: int) -> int | None:
    """Exact d_simp capped at d_max via the cover census (subgroups of
    index k are exactly the based degree-k covers)."""
    if len(w) == 0:
        raise InvalidInputError("index operations reject the trivial word")
    for d in range(1, d_max + 1):
        for g in cover_census(w.rank, d):
            p = trace_path(g, g.base, w)
            if path_terminus(g, p) != g.base:
                continue
            sd = spanning_data(g)
            if is_simple(rewrite_loop(g, sd, p)):
                return d
    return None


def divisibility(g: Word, d_max: int) -> int | None:
    """Least degree <= d_max of a based cover whose traced g-path does not
    close (a subgroup avoiding g); None if every cover contains g."""
    if g.is_trivial():
        raise InvalidInputError("divisibility of the trivial word is undefined")
    for d in range(1, d_max + 1):
        for cov in cover_census(g.rank, d):
            p = trace_path(cov, cov.base, g)
            if path_terminus(cov, p) != cov.base:
                return d
    return None


def _cyclic_class_reps_with_powers(n: int, rank: int) -> Iterator[CyclicWord]:
    for cw in enumerate_cyclically_reduced(n, rank):
        if cw.letters == cyclic_class_key(cw.letters, rank):
            yield cw


def rf_growth(n: int, rank: int, d_max: int) -> int:
    """max of divisibility over all nontrivial words of length <= n.

    Divisibility is invariant under conjugation, inversion and relabeling,
    so cyclically reduced class representatives (powers included) suffice.
    """
    best = 0
    for m in range(1, n + 1):
        for rep in _cyclic_class_reps_with_powers(m, rank):
            v = divisibility(rep.word(), d_max)
            if v is None:
                raise ResourceGuardError(
                    f"divisibility of {rep.text()} exceeds census cap {d_max}"
                )
            best = max(best, v)
    return best


def commutator_witness(w: Word) -> Word:
    """The commutator [w, w^a] for the first basis letter a not commuting
    with w; nontrivial, never a proper power, length <= 4|w| + 4."""
    if w.is_trivial():
        raise InvalidInputError("need a nontrivial word")
    for g in range(1, w.rank + 1):
        a = Word((g,), w.rank)
        if concat(w, a, w.inverse(), a.inverse()).letters:
            conj = concat(a.inverse(), w, a)
            gamma = concat(w, conj, w.inverse(), conj.inverse())
            assert len(gamma) <= 4 * len(w) + 4
            return gamma
    raise InvalidInputError("word commutes with every generator")
