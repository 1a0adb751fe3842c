import numpy as np
import pytest

from eoa.codes import (LinearCode, code_report, gf_matmul, gf_rank,
                       hamming_code, nullspace, read_code, rref, write_code)
from eoa.gf import gf_new

F4 = gf_new(2, 2)
F2 = gf_new(2, 1)


def identity_code(field, n):
    return LinearCode(field, np.eye(n, dtype=np.int64))


def test_rref_and_rank():
    mat = np.array([[1, 0], [2, 3], [0, 1]])
    r, pivots = rref(mat, F4)
    assert pivots == [0, 1]
    assert gf_rank(mat, F4) == 2
    # col1 = w * col0 makes this rank 1
    assert gf_rank(np.array([[1, 2], [2, 3], [0, 0]]), F4) == 1
    ns = nullspace(mat.T, F4)
    assert ns.shape == (3, 1)
    assert not gf_matmul(mat.T, ns, F4).any()


def test_generator_rank_enforced():
    with pytest.raises(ValueError):
        LinearCode(F4, np.array([[1, 2], [2, 3], [3, 1]]))  # col2 = w * col1


def test_hamming_gf4_m2_parameters():
    code = hamming_code(F4, 2)
    assert (code.n, code.k) == (5, 3)
    assert code.min_distance() == 3


def test_hamming_gf2_m3_is_7_4_3():
    code = hamming_code(F2, 3)
    assert (code.n, code.k) == (7, 4)
    assert code.min_distance() == 3


def test_dual_of_hamming_gf4_m2():
    dual = hamming_code(F4, 2).dual()
    assert (dual.n, dual.k) == (5, 2)
    words = dual.codewords()
    assert words.shape == (5, 16)
    weights = np.count_nonzero(words, axis=0)
    assert set(weights[1:].tolist()) == {4}
    assert dual.min_distance() == 4


def test_dual_pairing_is_zero():
    code = hamming_code(F4, 2)
    dual = code.dual()
    products = gf_matmul(dual.gen.T, code.gen, F4)  # all dot products
    assert not products.any()


def test_bidual_has_same_codeword_set():
    code = hamming_code(F4, 2).dual()      # [5,2]_4
    bidual = code.dual().dual()
    a = {tuple(c) for c in code.codewords().T.tolist()}
    b = {tuple(c) for c in bidual.codewords().T.tolist()}
    assert a == b


def test_dual_dimension_and_full_space_rejected():
    code = hamming_code(F2, 3)
    assert code.dual().k == code.n - code.k
    with pytest.raises(ValueError):
        identity_code(F4, 3).dual()


def test_min_distance_identity_generator():
    assert identity_code(F4, 4).min_distance() == 1


def test_singleton_bound():
    for code in [hamming_code(F4, 2), hamming_code(F4, 2).dual(),
                 hamming_code(F2, 3), hamming_code(F2, 3).dual(),
                 identity_code(F4, 3)]:
        assert code.min_distance() <= code.n - code.k + 1


def test_codewords_first_is_zero_and_closed_under_addition():
    code = hamming_code(F4, 2).dual()
    words = code.codewords()
    assert not words[:, 0].any()
    word_set = {tuple(c) for c in words.T.tolist()}
    rng = np.random.default_rng(7)
    for _ in range(50):
        i, j = rng.integers(0, words.shape[1], size=2)
        summed = F4.add_table[words[:, i], words[:, j]]
        assert tuple(summed.tolist()) in word_set


def test_codeword_set_is_generator_closure():
    # the enumerated codeword set equals the additive closure of the
    # generator columns, for every desk-scale code here
    for code in [hamming_code(F4, 2).dual(), hamming_code(F2, 3)]:
        words = {tuple(c) for c in code.codewords().T.tolist()}
        closure = {(0,) * code.n}
        frontier = [(0,) * code.n]
        gens = [tuple(code.gen[:, j]) for j in range(code.k)]
        scaled = []
        for g in gens:
            for s in range(1, code.q):
                scaled.append(tuple(F4.mul_table[s, list(g)]
                                    if code.q == 4 else
                                    code.field.mul_table[s, list(g)]))
        while frontier:
            cur = frontier.pop()
            for g in scaled:
                nxt = tuple(code.field.add_table[list(cur), list(g)])
                if nxt not in closure:
                    closure.add(nxt)
                    frontier.append(nxt)
        assert closure == words


def test_encode_linearity_and_identity():
    code = hamming_code(F4, 2).dual()
    assert not code.encode([0, 0]).any()
    rng = np.random.default_rng(3)
    for _ in range(20):
        m1 = rng.integers(0, 4, size=2)
        m2 = rng.integers(0, 4, size=2)
        msum = F4.add_table[m1, m2]
        lhs = code.encode(msum)
        rhs = F4.add_table[code.encode(m1), code.encode(m2)]
        assert np.array_equal(lhs, rhs)
    ident = identity_code(F4, 3)
    assert np.array_equal(ident.encode([1, 2, 3]), [1, 2, 3])


def test_encode_rejects_wrong_length():
    with pytest.raises(ValueError):
        hamming_code(F4, 2).encode([1, 2, 3, 0, 0])


def test_code_report_hamming_gf4():
    rep = code_report(hamming_code(F4, 2))
    assert (rep.n, rep.k, rep.d_min, rep.d_dual) == (5, 3, 3, 4)
    rep_dual = code_report(hamming_code(F4, 2).dual())
    assert (rep_dual.d_min, rep_dual.d_dual) == (4, 3)


def test_code_file_roundtrip(tmp_path):
    code = hamming_code(F4, 2).dual()
    path = tmp_path / "dual.txt"
    write_code(path, code)
    back = read_code(path)
    assert back.q == 4 and (back.n, back.k) == (5, 2)
    assert np.array_equal(back.gen, code.gen)
    # byte-identical rewrite
    write_code(tmp_path / "again.txt", back)
    assert (tmp_path / "again.txt").read_bytes() == path.read_bytes()


def test_read_code_rejects_malformed(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("OA 4 5 2\n")
    with pytest.raises(ValueError):
        read_code(bad)
    bad.write_text("CODE 4 2 1\n0\n")
    with pytest.raises(ValueError):
        read_code(bad)
