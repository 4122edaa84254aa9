import math

import pytest

from fiberlrc.exceptions import InvalidParameterError
from fiberlrc.families import (
    EXAMPLE_7_1_GENERATORS,
    artin_schreier_genus,
    artin_schreier_parameters,
    artin_schreier_total_points,
    build_artin_schreier,
    build_gk,
    build_preset,
    gk_expected_points,
    gk_parameters,
    gk_total_points,
    suzuki_params,
)


def test_example_7_1_parameters():
    code = artin_schreier_parameters(3, 3, 3, l=699)
    assert (code.n, code.k, code.d_lower) == (19683, 5600, 54)
    assert code.locality == (2, 2, 2)


def test_as_3_2_2_parameters():
    # maximal l = q - t*p^h + 2*t*p^(h-1) - t = 73; floor 2*t*p^(t-1) = 12
    code = artin_schreier_parameters(3, 2, 2, l=73)
    assert (code.n, code.k, code.d_lower) == (729, 296, 12)


def test_as_rejects_t_above_h():
    with pytest.raises(InvalidParameterError) as e:
        artin_schreier_parameters(2, 2, 3, l=0)
    assert e.value.token == "t-exceeds-h"


def test_as_default_generators_are_kernel_prefix():
    bundle = build_artin_schreier(2, 2, 2, l=1)
    assert bundle.generators == (1, 6)


def test_as_rejects_dependent_generators():
    with pytest.raises(InvalidParameterError) as e:
        build_artin_schreier(3, 2, 2, l=1, generators=[1, 2])
    assert e.value.token == "invalid-generators"


def test_as_rejects_non_kernel_generator():
    with pytest.raises(InvalidParameterError):
        build_artin_schreier(2, 2, 2, l=1, generators=[1, 3])


def test_gk_table_1_parameters():
    code = gk_parameters(3, 3, l=270)
    assert (code.n, code.k, code.d_lower) == (6048, 3252, 215)
    assert code.locality == (6, 2)
    rows = {270: (3252, 215), 260: (3132, 425), 250: (3012, 635),
            240: (2892, 845), 230: (2772, 1055), 220: (2652, 1265),
            210: (2532, 1475)}
    for l, (k, d) in rows.items():
        code = gk_parameters(3, 3, l=l)
        assert (code.n, code.k, code.d_lower) == (6048, k, d)


def test_gk_small_bundle():
    bundle = build_gk(2, 3, l=0)
    assert (bundle.descriptor.n, bundle.descriptor.k,
            bundle.descriptor.d_lower) == (216, 2, 208)
    assert bundle.descriptor.locality == (2, 1)


def test_gk_rejects_even_N():
    with pytest.raises(InvalidParameterError) as e:
        gk_parameters(3, 4, l=0)
    assert e.value.token == "N-not-odd"


def test_gk_rejects_l_out_of_range():
    with pytest.raises(InvalidParameterError) as e:
        gk_parameters(2, 3, l=36)
    assert e.value.token == "l-out-of-range"


def test_gk_desk_scale_guardrail():
    with pytest.raises(InvalidParameterError) as e:
        build_gk(2, 5, l=0)
    assert e.value.token == "field-too-large"


def test_suzuki_cases():
    case1, case2 = suzuki_params(2)
    assert (case1.n, case1.k) == (56, 42)
    assert (case2.n, case2.k) == (5880, 4410)
    assert case1.locality == (7, 6)
    assert case1.d_floor == 3 and case2.d_floor == 3
    assert not case1.constructed and not case2.constructed


def test_suzuki_rejects_non_power_of_two():
    with pytest.raises(InvalidParameterError) as e:
        suzuki_params(3)
    assert e.value.token == "q0-not-power-of-two"


@pytest.mark.parametrize("p,h,t,total", [(2, 2, 2, 65), (3, 2, 2, 730)])
def test_as_maximality_counts(p, h, t, total):
    count = artin_schreier_total_points(p, h, t)
    assert count == p ** t * p ** (2 * h) + 1 == total
    q = p ** (2 * h)
    genus = artin_schreier_genus(p, h, t)
    assert count == q + 1 + 2 * genus * math.isqrt(q)


def test_as_hermitian_genus_at_t_equals_h():
    # t = h: the fiber product has the Hermitian genus
    for p, h in ((2, 2), (3, 2)):
        sq = p ** h
        assert artin_schreier_genus(p, h, h) == (sq - 1) * sq // 2


@pytest.mark.parametrize("q,N,total", [(2, 3, 225), (3, 3, 6076)])
def test_gk_maximality_counts(q, N, total):
    count = gk_total_points(q, N)
    assert count == gk_expected_points(q, N) == total
    field_size = q ** (2 * N)
    sq = math.isqrt(field_size)
    twice_g_sq = count - field_size - 1
    assert twice_g_sq % (2 * sq) == 0  # integral solved genus


def test_gk_n_equals_count_minus_excluded():
    for q, N in ((2, 3), (3, 3)):
        bundle_n = gk_parameters(q, N, l=0).n
        assert bundle_n == gk_expected_points(q, N) - (q ** 3 + 1)


def test_presets():
    bundle = build_preset("gk-table-1")
    assert bundle.descriptor.n == 6048
    with pytest.raises(InvalidParameterError):
        build_preset("nope")


def test_example_7_1_preset_generators():
    assert EXAMPLE_7_1_GENERATORS == (58, 91, 523)


def test_bundle_passes_core_invariants():
    bundle = build_gk(2, 3, l=3)
    G = bundle.generator_matrix()
    assert G.shape == (bundle.descriptor.k, bundle.descriptor.n)
    # full fibers
    counts = {}
    for b in bundle.eval_set.base:
        counts[int(b)] = counts.get(int(b), 0) + 1
    assert set(counts.values()) == {bundle.descriptor.d_g}
