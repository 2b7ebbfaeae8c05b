from hypothesis import given, strategies as st

from idealspaces import encoding as enc

nat = st.integers(min_value=0, max_value=10**6)

# frozen from tests/oracle/derive.py (diagonal walk, not the closed form)
DIAGONAL = [(0, 0, 0), (1, 0, 1), (0, 1, 2), (2, 0, 3), (1, 1, 4), (0, 2, 5), (3, 0, 6),
            (2, 1, 7), (1, 2, 8), (0, 3, 9), (4, 0, 10), (3, 1, 11), (2, 2, 12), (1, 3, 13),
            (0, 4, 14)]
SEQ_CODES = {(): 0, (0,): 1, (1,): 2, (0, 0): 3, (1, 0): 5, (1, 0, 0): 14, (2, 1): 13,
             (0, 1, 2): 231}


def test_pairing_matches_diagonal_walk():
    for a, b, code in DIAGONAL:
        assert enc.pair_encode(a, b) == code
        assert enc.pair_decode(code) == (a, b)


def test_sequence_codes_match_oracle():
    for seq, code in SEQ_CODES.items():
        assert enc.seq_encode(seq) == code
        assert enc.seq_decode(code) == seq


@given(nat, nat)
def test_pair_roundtrip(a, b):
    assert enc.pair_decode(enc.pair_encode(a, b)) == (a, b)


@given(nat)
def test_pair_decode_is_onto(n):
    assert enc.pair_encode(*enc.pair_decode(n)) == n


def test_huge_pair_roundtrip():
    a, b = 3**200, 7**150
    assert enc.pair_decode(enc.pair_encode(a, b)) == (a, b)


@given(nat, nat, nat)
def test_triple_roundtrip(n, m, k):
    assert enc.triple_decode(enc.triple_encode(n, m, k)) == (n, m, k)


@given(st.frozensets(st.integers(0, 80)))
def test_finset_roundtrip(F):
    code = enc.finset_encode(F)
    assert enc.finset_decode(code) == F
    assert sorted(enc.finset_members(code)) == sorted(F)
    assert enc.finset_size(code) == len(F)


def test_finset_examples():
    assert enc.finset_encode([]) == 0
    assert enc.finset_encode([1, 3]) == 10
    assert enc.finset_encode([5]) == 32
    assert enc.finset_contains(10, 3) and not enc.finset_contains(10, 2)


@given(st.frozensets(st.integers(0, 12)), st.frozensets(st.integers(0, 12)))
def test_finset_subset_agrees_with_sets(A, B):
    assert enc.finset_subset(enc.finset_encode(A), enc.finset_encode(B)) == (A <= B)


def test_finset_subsets_lists_all():
    subs = sorted(enc.finset_subsets(enc.finset_encode([0, 2, 5])))
    assert subs == sorted(enc.finset_encode(s) for s in
                          [[], [0], [2], [5], [0, 2], [0, 5], [2, 5], [0, 2, 5]])


@given(st.lists(st.integers(0, 9), max_size=6))
def test_seq_roundtrip(seq):
    assert enc.seq_decode(enc.seq_encode(seq)) == tuple(seq)


@given(st.integers(0, 5000))
def test_seq_decode_is_onto(n):
    assert enc.seq_encode(enc.seq_decode(n)) == n


def test_prefix_codes_are_smaller():
    seq = [3, 1, 4, 1, 5]
    codes = [enc.seq_encode(seq[:i]) for i in range(len(seq) + 1)]
    assert codes == sorted(codes) and len(set(codes)) == len(codes)
