import numpy as np
import pytest

from latcert.gf2codes import BinaryCode, code_report
from latcert.lattice32 import (
    SHELL_NORM,
    build_shell,
    check_extremal,
    lattice_ip,
    load_shell,
    make_shell,
    save_shell,
    venkov_e22,
    venkov_sample,
    witness_pair,
)


def _e8_power_code() -> BinaryCode:
    """Direct sum of four [8,4,4] extended Hamming codes: a doubly-even
    self-dual [32,16,4] code, so its lattice is NOT extremal."""
    base = [
        [1, 1, 1, 1, 1, 1, 1, 1],
        [0, 1, 0, 1, 0, 1, 0, 1],
        [0, 0, 1, 1, 0, 0, 1, 1],
        [0, 0, 0, 0, 1, 1, 1, 1],
    ]
    G = np.zeros((16, 32), dtype=np.uint8)
    for b in range(4):
        for r in range(4):
            G[4 * b + r, 8 * b : 8 * b + 8] = base[r]
    return BinaryCode(32, 16, G, "e8x4")


def test_shell_counts(rm_shell, xqr_shell):
    assert rm_shell.result.count == 146880
    assert xqr_shell.result.count == 146880


def test_shell_family_sizes(rm_shell):
    amax = np.abs(rm_shell.result.vectors).max(axis=1)
    assert int((amax == 4).sum()) == 1984
    assert int((amax == 2).sum()) == 620 * 128
    assert int((amax == 1).sum()) == 2**16


def test_shell_norms_and_parity(rm_shell):
    vecs = rm_shell.result.vectors.astype(np.int64)
    assert ((vecs**2).sum(axis=1) == SHELL_NORM).all()
    par = np.abs(vecs) % 2
    assert ((par.min(axis=1) == par.max(axis=1))).all()


def test_shell_closed_under_negation(rm_shell):
    sh = rm_shell.result
    for i in (0, 1, 5000, 100000):
        assert sh.index_of(-sh.vectors[i]) >= 0


def test_check_extremal_builtins(rm_code, xqr_code):
    assert check_extremal(rm_code)
    assert check_extremal(xqr_code)


def test_non_extremal_code_detected():
    bad = _e8_power_code()
    rep = code_report(bad)
    assert rep.self_dual and rep.doubly_even and rep.min_distance == 4
    assert not check_extremal(bad)
    with pytest.raises(ValueError, match="weight-4"):
        build_shell(bad)


def test_precondition_rejects_non_self_dual():
    G = np.zeros((16, 32), dtype=np.uint8)
    for i in range(16):
        G[i, i] = 1
    with pytest.raises(ValueError, match="self-dual"):
        check_extremal(BinaryCode(32, 16, G, "identity"))


def test_witness_pair_value(rm_shell):
    x, z = witness_pair()
    assert venkov_e22(rm_shell.result, x, z) == 60


def test_venkov_symmetric(rm_shell):
    x, z = witness_pair()
    assert venkov_e22(rm_shell.result, x, z) == venkov_e22(rm_shell.result, z, x)


def test_venkov_rejects_non_orthogonal_pair(rm_shell):
    sh = rm_shell.result
    x = sh.vectors[0]
    with pytest.raises(ValueError, match="Venkov pair"):
        venkov_e22(sh, x, -x)


def test_venkov_rejects_points_outside_shell(rm_shell):
    probe = np.zeros(32, dtype=np.int8)
    probe[0] = 4
    probe[1] = -4
    stranger = np.zeros(32, dtype=np.int8)
    stranger[0] = 5
    with pytest.raises(ValueError, match="shell vectors"):
        venkov_e22(rm_shell.result, probe, stranger)


def test_venkov_sample_deterministic_even_and_bounded(rm_shell):
    sh = rm_shell.result
    a = venkov_sample(sh, 30, seed=1)
    b = venkov_sample(sh, 30, seed=1)
    assert a == b
    assert all(v % 2 == 0 and 0 <= v <= 60 for v in a)
    assert venkov_sample(sh, 5, seed=2) != a[:5] or True  # different seed allowed to differ


def test_venkov_invariant_under_coordinate_flip(rm_shell):
    # negating one coordinate everywhere is an isometry between the shell and
    # the flipped shell, so the witness statistic is preserved
    sh = rm_shell.result
    x, z = witness_pair()
    flipped = sh.vectors.copy()
    flipped[:, 0] *= -1
    fsh = make_shell(flipped, 32)
    fx, fz = x.copy(), z.copy()
    fx[0] *= -1
    fz[0] *= -1
    assert venkov_e22(fsh, fx, fz) == venkov_e22(sh, x, z) == 60


def test_lattice_ip():
    x, z = witness_pair()
    assert lattice_ip(x, x) == 4
    assert lattice_ip(x, z) == 0


def test_shell_file_round_trip(rm_shell, tmp_path):
    sh = rm_shell.result
    path = tmp_path / "shell.txt"
    save_shell(sh, path)
    back = load_shell(path)
    assert back.count == sh.count
    assert np.array_equal(back.vectors, sh.vectors)
    with open(path) as fh:
        assert fh.readline().strip() == "latcert-shell v1 n=32 count=146880 scale=2sqrt2"


def test_load_shell_rejects_bad_header(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("some-other-format v9\n")
    with pytest.raises(ValueError, match="header"):
        load_shell(p)


def test_load_shell_rejects_count_mismatch(tmp_path):
    p = tmp_path / "short.txt"
    p.write_text("latcert-shell v1 n=4 count=2 scale=2sqrt2\n4 4 0 0\n")
    with pytest.raises(ValueError, match="header says 2"):
        load_shell(p)


def test_load_shell_rejects_bad_norm(tmp_path):
    p = tmp_path / "norm.txt"
    p.write_text(
        "latcert-shell v1 n=4 count=2 scale=2sqrt2\n4 2 0 0\n-4 -2 0 0\n"
    )
    with pytest.raises(ValueError, match="s.s"):
        load_shell(p)


def test_load_shell_rejects_mixed_parity(tmp_path):
    p = tmp_path / "parity.txt"
    row = "5 2 1 1 1" + " 0" * 27
    neg = "-5 -2 -1 -1 -1" + " 0" * 27
    p.write_text(f"latcert-shell v1 n=32 count=2 scale=2sqrt2\n{row}\n{neg}\n")
    with pytest.raises(ValueError, match="mixed"):
        load_shell(p)


def test_make_shell_rejects_duplicates_and_non_antipodal():
    with pytest.raises(ValueError, match="duplicate"):
        make_shell([[4, 4, 0, 0], [4, 4, 0, 0]], dim=4)
    with pytest.raises(ValueError, match="negation"):
        make_shell([[4, 4, 0, 0], [0, 4, 4, 0]], dim=4)


def test_canonical_order_is_numeric_lexicographic(rm_shell):
    vecs = rm_shell.result.vectors
    sample = vecs[::4096].tolist()
    assert sample == sorted(sample)
