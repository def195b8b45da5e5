"""Per-cover blocking and forcing words, and witness words whose
non-filling index provably exceeds a chosen degree.

The blocking word for a cover traces through the square-chain pattern loop
from every vertex (so containing loops cannot be simple); the forcing word
traces through the universal length-3 pattern loop (so containing loops are
certified filling by the level-3 subword test).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError, ResourceGuardError
from .index import CERT_RAUZY, CERT_UNDETERMINED
from .graphs import (
    AGraph,
    EdgePath,
    SpanningData,
    alpha_path,
    beta_path,
    connector_path,
    cover_census,
    coverage_word,
    is_cover,
    path_contains,
    path_letters,
    path_terminus,
    rewrite_loop_cyclic,
    spanning_data,
    trace_covers_all_edges,
    trace_path,
    tree_path,
)
from .whitehead import rauzy3_full
from .words import CyclicWord, Word, alphabet

KIND_ALPHA = "alpha-blocking"
KIND_BETA = "beta-forcing"


@dataclass(frozen=True)
class BlockerReport:
    cover: AGraph
    tree: SpanningData
    word: Word
    kind: str
    length_bound: int
    verified: bool
    piece_lengths: tuple[int, ...]

    def to_json(self) -> dict:
        from .graphs import graph_to_json

        return {
            "kind": self.kind,
            "degree": self.cover.num_vertices,
            "rank": self.cover.rank,
            "word": self.word.text(),
            "length": len(self.word),
            "length_bound": self.length_bound,
            "piece_lengths": list(self.piece_lengths),
            "verified": self.verified,
            "cover": graph_to_json(self.cover),
        }


def _pattern_covering_word(
    g: AGraph, sd: SpanningData, pattern: EdgePath
) -> tuple[Word, tuple[int, ...]]:
    """Word whose trace from every vertex (ascending id) runs through the
    pattern loop: per vertex, steer into the pattern with a reduced
    connector and append the pattern's label."""
    first_edge = pattern.edges[0]
    pattern_letters = path_letters(g, pattern)
    pieces: list[tuple[int, ...]] = []
    sofar: list[int] = []
    for i in range(g.num_vertices):
        if i == 0:
            into_base = tree_path(g, sd, 0, g.base)
            if into_base:
                q = connector_path(g, into_base[-1], first_edge)
                edges = into_base + q.edges[1:] + pattern.edges[1:]
            else:
                edges = pattern.edges
            piece = tuple(g.label(e) for e in edges)
        else:
            traced = trace_path(g, i, tuple(sofar))
            q = connector_path(g, traced.edges[-1], first_edge)
            piece = tuple(g.label(e) for e in q.edges[1:]) + pattern_letters[1:]
        pieces.append(piece)
        sofar.extend(piece)
    word = Word(tuple(sofar), g.rank)
    return word, tuple(len(p) for p in pieces)


def _verify_containment(g: AGraph, w: Word, pattern: EdgePath) -> bool:
    return all(
        path_contains(trace_path(g, x, w), pattern)
        for x in range(g.num_vertices)
    )


def blocking_word(g: AGraph) -> BlockerReport:
    """Simplicity-blocking word: every vertex's trace contains the
    square-chain pattern loop; |word| <= (2N+5) d^3."""
    if not is_cover(g):
        raise InvalidInputError("blocking_word expects a connected cover")
    sd = spanning_data(g)
    pattern = alpha_path(g, sd)
    word, piece_lengths = _pattern_covering_word(g, sd, pattern)
    d, n = g.num_vertices, g.rank
    bound = (2 * n + 5) * d**3
    verified = len(word) <= bound and _verify_containment(g, word, pattern)
    return BlockerReport(g, sd, word, KIND_ALPHA, bound, verified, piece_lengths)


def forcing_word(g: AGraph) -> BlockerReport:
    """Filling-forcing word: every vertex's trace contains the universal
    length-3 pattern loop; |word| <= 1000 N^3 d^5."""
    if not is_cover(g):
        raise InvalidInputError("forcing_word expects a connected cover")
    sd = spanning_data(g)
    pattern = beta_path(g, sd)
    word, piece_lengths = _pattern_covering_word(g, sd, pattern)
    d, n = g.num_vertices, g.rank
    bound = 1000 * n**3 * d**5
    verified = len(word) <= bound and _verify_containment(g, word, pattern)
    return BlockerReport(g, sd, word, KIND_BETA, bound, verified, piece_lengths)


@dataclass(frozen=True)
class AuditEntry:
    degree: int
    cover_index: int
    contains: bool
    certificate: str | None


@dataclass(frozen=True)
class WitnessAudit:
    degree: int
    rank: int
    census_size: int
    entries: tuple[AuditEntry, ...]

    @property
    def complete(self) -> bool:
        """Every census cover either misses the word or certifies filling."""
        return all(
            e.certificate == CERT_RAUZY for e in self.entries if e.contains
        )

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "rank": self.rank,
            "census_size": self.census_size,
            "complete": self.complete,
            "entries": [
                {
                    "degree": e.degree,
                    "cover_index": e.cover_index,
                    "contains": e.contains,
                    "certificate": e.certificate,
                }
                for e in self.entries
            ],
        }


def _separator(last: int, first: int, rank: int) -> tuple[int, ...]:
    """Smallest letter joining two blocks reducibly; empty when possible."""
    if last != -first:
        return ()
    for y in alphabet(rank):
        if y != -last and y != -first:
            return (y,)
    raise InvalidInputError("no separator letter exists")


def witness_word(
    d: int, rank: int, max_covers: int | None = None
) -> tuple[CyclicWord, WitnessAudit]:
    """Concatenate the forcing words of every based cover of degree <= d
    into one cyclically reduced word, and audit that each census cover
    containing its loop carries a filling certificate; a complete audit
    shows the word's non-filling index exceeds d."""
    if d < 1:
        raise InvalidInputError("degree must be >= 1")
    census: list[tuple[int, int, AGraph]] = []
    for deg in range(1, d + 1):
        for i, g in enumerate(cover_census(rank, deg)):
            census.append((deg, i, g))
        if max_covers is not None and len(census) > max_covers:
            raise ResourceGuardError(
                f"census of degree <= {d} exceeds cover cap {max_covers}"
            )
    blocks = [forcing_word(g).word.letters for _, _, g in census]
    letters: list[int] = list(blocks[0])
    for block in blocks[1:]:
        letters.extend(_separator(letters[-1], block[0], rank))
        letters.extend(block)
    letters.extend(_separator(letters[-1], letters[0], rank))
    z = CyclicWord(tuple(letters), rank)

    entries = []
    for deg, i, g in census:
        p = trace_path(g, g.base, z)
        contains = path_terminus(g, p) == g.base
        cert = None
        if contains:
            sd = spanning_data(g)
            rewritten = rewrite_loop_cyclic(g, sd, p)
            cert = CERT_RAUZY if rauzy3_full(rewritten) else CERT_UNDETERMINED
        entries.append(AuditEntry(deg, i, contains, cert))
    audit = WitnessAudit(d, rank, len(census), tuple(entries))
    return z, audit


@dataclass(frozen=True)
class CoverageReport:
    degree: int
    rank: int
    results: tuple[tuple[int, int, bool], ...]  # (cover index, |v|, all covered)

    @property
    def all_pass(self) -> bool:
        return all(ok for _, _, ok in self.results)


def coverage_demo(d: int, rank: int) -> CoverageReport:
    """For every cover of degree d, build the full-coverage word and check
    edge coverage from every vertex."""
    results = []
    for i, g in enumerate(cover_census(rank, d)):
        v = coverage_word(g)
        ok = all(trace_covers_all_edges(g, x, v) for x in range(g.num_vertices))
        results.append((i, len(v), ok))
    return CoverageReport(d, rank, tuple(results))
