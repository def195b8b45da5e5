import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primindex.errors import InvalidInputError
from primindex.whitehead import (
    WhiteheadAut,
    apply,
    conjugation_by,
    contains_blocking_pattern,
    enumerate_whitehead,
    has_cut_vertex,
    identity_aut,
    is_primitive,
    is_simple,
    minimize,
    orbit_min_oracle,
    rauzy3_full,
    replay_trace,
    whitehead_graph,
    WhiteheadGraph,
)
from primindex.words import (
    CyclicWord,
    Word,
    cyclic_reduce,
    enumerate_cyclically_reduced,
    enumerate_reduced,
    free_reduce,
)

W = Word.parse
CW = CyclicWord.parse

words_f2 = st.builds(
    lambda raw: free_reduce(raw, 2),
    st.lists(st.sampled_from([1, -1, 2, -2]), min_size=0, max_size=12),
)


# -- enumeration ---------------------------------------------------------------

def test_enumeration_counts_rank2():
    auts = enumerate_whitehead(2)
    ids = [t for t in auts if t.is_identity()]
    seconds = [t for t in auts if t.kind == "second"]
    firsts = [t for t in auts if t.kind == "first"]
    assert len(ids) == 1
    assert len(seconds) == 4 * 3  # 4 multipliers, 4 tag options each, minus identity
    assert len(firsts) == 1 + 3  # identity + 2 inversions + 1 transposition
    assert len(auts) == 16


def test_conjugation_is_enumerated():
    conj = conjugation_by(1, 2)
    assert conj in enumerate_whitehead(2)
    w = W("b", 2)
    assert apply(conj, w).text() == "Aba"


def test_rank1_enumeration():
    auts = enumerate_whitehead(1)
    assert len(auts) == 2  # identity and the inversion
    assert all(t.kind == "first" for t in auts)


# -- apply ----------------------------------------------------------------------

@given(words_f2)
@settings(max_examples=80)
def test_apply_inverse_roundtrip(w):
    for t in enumerate_whitehead(2):
        assert apply(t.inverse(), apply(t, w)).letters == w.letters


@given(words_f2)
@settings(max_examples=60)
def test_first_kind_preserves_length(w):
    for t in enumerate_whitehead(2):
        if t.kind == "first":
            assert len(apply(t, w)) == len(w)


def test_apply_second_kind_substitution():
    # multiplier a, action b -> ba
    t = WhiteheadAut(2, "second", multiplier=1, tags=("id", "right"))
    assert apply(t, W("b", 2)).text() == "ba"
    assert apply(t, W("B", 2)).text() == "AB"
    assert apply(t, W("a", 2)).text() == "a"


# -- minimize --------------------------------------------------------------------

def test_minimize_examples():
    m, trace = minimize(W("a", 2))
    assert m.text() == "a" and trace == []
    m, trace = minimize(W("abA", 2))
    assert m.text() == "b"
    assert len(trace) == 1 and trace[0].kind == "second"
    m, _ = minimize(W("aabb", 2))
    assert len(m) == 4  # a^2 b^2 is already Whitehead minimal


def test_minimize_rejects_trivial():
    with pytest.raises(InvalidInputError):
        minimize(Word((), 2))


@given(words_f2.filter(lambda w: len(w) > 0))
@settings(max_examples=50, deadline=None)
def test_minimize_result_is_whitehead_minimal(w):
    m, trace = minimize(w)
    from primindex.whitehead import apply_letters

    n = len(m)
    for t in enumerate_whitehead(2):
        image = cyclic_reduce(Word(apply_letters(t, m.letters), 2))[1]
        assert len(image) >= n
    assert replay_trace(w, trace).letters == m.letters


def test_minimize_matches_oracle_small():
    for n in range(1, 5):
        for cw in enumerate_cyclically_reduced(n, 2):
            m, _ = minimize(cw)
            o = orbit_min_oracle(cw)
            assert len(m) == len(o)


# -- primitivity and simplicity ---------------------------------------------------

def test_primitive_examples():
    assert is_primitive(W("a", 2))
    assert is_primitive(W("ab", 2))
    assert not is_primitive(W("aabb", 2))


def test_generators_primitive_and_first_kind_invariance():
    for i, g in enumerate(["a", "b"], start=1):
        assert is_primitive(W(g, 2))
    w = W("abb", 2)
    for t in enumerate_whitehead(2):
        if t.kind == "first":
            assert is_primitive(apply(t, w)) == is_primitive(w)


def test_simple_examples():
    assert is_simple(W("a", 2))
    assert not is_simple(W("abAB", 2))
    assert not is_simple(W("aabb", 2))


def test_simple_uses_one_minimal_form():
    # aab is primitive hence simple
    assert is_primitive(W("aab", 2))
    assert is_simple(W("aab", 2))


def test_simple_implies_cut_vertex_up_to_len8():
    from primindex.words import is_proper_power

    for n in range(1, 9):
        for w in enumerate_cyclically_reduced(n, 2):
            if is_proper_power(w)[0]:
                continue
            if is_simple(w.word()):
                m, _ = minimize(w)
                assert has_cut_vertex(whitehead_graph(m)), w.text()


# -- Whitehead graphs ---------------------------------------------------------------

def test_whitehead_graph_of_square_word():
    g = whitehead_graph(CW("aabb", 2))
    assert g.edges == frozenset(
        {(1, -1), (-1, 2), (2, -2), (1, -2)}
    ) or len(g.edges) == 4
    # 4-cycle: every vertex has degree 2
    for v in (1, -1, 2, -2):
        assert len(g.neighbors(v)) == 2
    assert not has_cut_vertex(g)


def test_whitehead_graph_single_letter():
    g = whitehead_graph(CW("a", 2))
    assert g.edges == frozenset({(1, -1)})
    assert has_cut_vertex(g)  # isolated b/B disconnect once an endpoint goes


def test_whitehead_graph_rotation_inversion_invariant():
    w = CW("aabAb", 2)
    g = whitehead_graph(w)
    for rot in w.rotations():
        assert whitehead_graph(CyclicWord(rot, 2)).edges == g.edges
    assert whitehead_graph(w.inverse()).edges == g.edges


def test_star_has_cut_vertex():
    g = WhiteheadGraph(2, frozenset({(1, -1), (1, 2), (1, -2)}))
    assert has_cut_vertex(g)


def test_blocking_pattern_word_not_simple():
    # contains b^2 a^2 b^2
    w = CW("bbaabb", 2)
    assert contains_blocking_pattern(w)
    assert not has_cut_vertex(whitehead_graph(w))
    assert not is_simple(w.word())


def test_contains_blocking_pattern_cyclic_wraparound():
    w = CW("aabbbb", 2)  # rotation of bbaabb; occurrence wraps around
    assert contains_blocking_pattern(w)
    assert not contains_blocking_pattern(CW("ab", 2))


# -- rauzy3 ---------------------------------------------------------------------

def test_rauzy3_examples():
    from primindex.graphs import universal_three_word

    u = universal_three_word(2)
    ls = list(u.letters)
    if ls[0] == -ls[-1]:  # append a joiner to close up cyclically
        for y in (1, -1, 2, -2):
            if y != -ls[-1] and y != -ls[0]:
                ls.append(y)
                break
    w = CyclicWord(tuple(ls), 2)
    assert rauzy3_full(w)
    assert not rauzy3_full(CW("a", 2))
    assert not rauzy3_full(CW("ababab", 2))


def test_rauzy3_implies_not_simple_not_primitive():
    from primindex.graphs import universal_three_word

    u = universal_three_word(2)
    ls = list(u.letters)
    if ls[0] == -ls[-1]:
        ls.append(1 if -ls[-1] != 1 and -ls[0] != 1 else 2)
    w = CyclicWord(tuple(ls), 2)
    assert rauzy3_full(w)
    assert not is_simple(w.word())
    assert not is_primitive(w.word())


# -- oracle -------------------------------------------------------------------

def test_orbit_oracle_returns_class_member():
    w = W("abA", 2)
    o = orbit_min_oracle(w)
    assert len(o) == 1
