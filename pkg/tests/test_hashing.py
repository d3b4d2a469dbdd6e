"""Hash states, inner products, collision spectra, codes, and size accounting."""

import math

import numpy as np
import pytest

from qabelhash.biased_sets import BiasedSet, aghp_set, bias_exact, greedy_biased_set, manual_set
from qabelhash.errors import CapacityError, ParseError, UsageError
from qabelhash.groups import AbelianGroup, sample_elements
from qabelhash.hashing import (
    code_matrix,
    collision_spectrum,
    hash_from_payload,
    hash_size_fields,
    hash_state,
    hash_to_payload,
    inner_product,
    load_hash,
    save_hash,
    size_report,
)

from oracles import random_mixed_orders


def _full_set(orders):
    group = AbelianGroup(orders)
    return manual_set(group, list(group.elements()), certify=False)


# ---------------------------------------------------------------------------
# hash construction
# ---------------------------------------------------------------------------


def test_hash_z2_fingerprint_example():
    bset = _full_set((2,))
    h = hash_state(bset, (1,))
    root_half = 1 / math.sqrt(2)
    assert h.qubits == 1
    assert np.allclose(h.amplitudes, [root_half, -root_half], atol=1e-15)


def test_hash_identity_message_is_uniform():
    bset = _full_set((3, 2))
    h = hash_state(bset, (0, 0))
    assert np.allclose(h.amplitudes[:6], np.full(6, 1 / math.sqrt(6)), atol=1e-15)
    assert np.all(h.amplitudes[6:] == 0)


def test_hash_z4_quarter_phases_exact():
    bset = _full_set((4,))
    h = hash_state(bset, (1,))
    assert h.amplitudes.tolist() == [0.5 + 0j, 0.5j, -0.5 + 0j, -0.5j]


def test_hash_unit_norm_and_padding():
    group = AbelianGroup((5,))
    bset = manual_set(group, [(0,), (2,), (3,)], certify=False)
    h = hash_state(bset, (4,))
    assert h.qubits == 2
    assert abs(np.linalg.norm(h.amplitudes) - 1.0) < 1e-12
    assert h.amplitudes[3] == 0


def test_hash_amplitudes_follow_characters():
    rng = np.random.default_rng(67)
    group = AbelianGroup((3, 4, 2))
    elements = tuple(sample_elements(group, rng, 10))
    bset = manual_set(group, list(elements), certify=False)
    message = (2, 3, 1)
    h = hash_state(bset, message)
    scale = 1 / math.sqrt(10)
    for j, x in enumerate(elements):
        expected = group.character_value(message, x) * scale
        assert abs(h.amplitudes[j] - expected) < 1e-12


def test_hash_equal_modulus_on_support():
    bset = _full_set((2, 2, 2))
    for i in range(8):
        h = hash_state(bset, bset.group.element_at(i))
        assert np.allclose(np.abs(h.amplitudes[:8]), 1 / math.sqrt(8), atol=1e-12)


def test_hash_duplicate_elements_occupy_distinct_positions():
    group = AbelianGroup((2,))
    bset = manual_set(group, [(1,), (1,)], certify=False)
    h = hash_state(bset, (1,))
    root_half = 1 / math.sqrt(2)
    assert np.allclose(h.amplitudes, [-root_half, -root_half], atol=1e-15)
    assert abs(np.linalg.norm(h.amplitudes) - 1.0) < 1e-12


def test_hash_rejects_foreign_message():
    bset = _full_set((2, 2))
    with pytest.raises(UsageError):
        hash_state(bset, (0, 2))
    with pytest.raises(UsageError):
        hash_state(bset, (0,))


# ---------------------------------------------------------------------------
# inner products
# ---------------------------------------------------------------------------


def test_inner_product_self_is_one():
    bset = _full_set((3, 3))
    h = hash_state(bset, (1, 2))
    assert abs(inner_product(h, h) - 1.0) < 1e-12


def test_inner_product_orthogonal_fingerprints():
    bset = _full_set((2,))
    assert abs(inner_product(hash_state(bset, (0,)), hash_state(bset, (1,)))) < 1e-15


def test_inner_product_conjugate_linearity():
    rng = np.random.default_rng(71)
    group = AbelianGroup((5, 3))
    bset = manual_set(group, sample_elements(group, rng, 7), certify=False)
    h1 = hash_state(bset, (2, 1))
    h2 = hash_state(bset, (4, 2))
    assert abs(inner_product(h1, h2) - inner_product(h2, h1).conjugate()) < 1e-12


def test_inner_product_is_difference_character_sum():
    rng = np.random.default_rng(73)
    for _ in range(10):
        orders = random_mixed_orders(rng, max_order=64)
        group = AbelianGroup(orders)
        elements = tuple(sample_elements(group, rng, int(rng.integers(2, 9))))
        bset = manual_set(group, list(elements), certify=False)
        a1, a2 = sample_elements(group, rng, 2)
        lhs = inner_product(hash_state(bset, a1), hash_state(bset, a2))
        diff = group.sub(a2, a1)
        rhs = sum(group.character_value(diff, x) for x in elements) / len(elements)
        assert abs(lhs - rhs) < 1e-9


def test_inner_product_rejects_mismatched_sets():
    h1 = hash_state(_full_set((2,)), (0,))
    h2 = hash_state(_full_set((3,)), (0,))
    with pytest.raises(UsageError):
        inner_product(h1, h2)


def test_lemma_bound_for_certified_exact_set():
    bset = greedy_biased_set(AbelianGroup((2, 2, 2)), 8)
    group = bset.group
    for i in range(group.order):
        for j in range(i + 1, group.order):
            ip = inner_product(
                hash_state(bset, group.element_at(i)), hash_state(bset, group.element_at(j))
            )
            assert abs(ip) <= bset.certified_epsilon + 1e-9


# ---------------------------------------------------------------------------
# collision spectrum
# ---------------------------------------------------------------------------


def test_spectrum_full_cube_is_orthogonal():
    spec = collision_spectrum(_full_set((2, 2, 2)))
    assert spec.max_modulus < 1e-12
    assert spec.num_pairs == 28


def test_spectrum_singleton_all_collide():
    group = AbelianGroup((2, 2))
    spec = collision_spectrum(manual_set(group, [(0, 0)], certify=False))
    assert spec.max_modulus == pytest.approx(1.0, abs=1e-12)


def test_spectrum_max_equals_bias_for_greedy_z2_6():
    bset = greedy_biased_set(AbelianGroup((2,) * 6), 16)
    spec = collision_spectrum(bset)
    assert abs(spec.max_modulus - bias_exact(bset)) < 1e-9


def test_spectrum_max_equals_bias_for_aghp():
    bset = aghp_set(4, 3)
    spec = collision_spectrum(bset)
    assert abs(spec.max_modulus - bias_exact(bset)) < 1e-9
    i1, i2 = bset.group.index_of(spec.witness[0]), bset.group.index_of(spec.witness[1])
    assert i1 != i2


def test_spectrum_histogram_counts_all_pairs():
    bset = aghp_set(3, 2)
    spec = collision_spectrum(bset, bins=10)
    assert sum(spec.histogram_counts) == spec.num_pairs == 8 * 7 // 2
    assert len(spec.histogram_edges) == 11


def test_spectrum_capacity_limit():
    with pytest.raises(CapacityError):
        collision_spectrum(_full_set((2, 2, 2)), limit=4)


# ---------------------------------------------------------------------------
# code matrix
# ---------------------------------------------------------------------------


def test_code_full_cube_perfectly_balanced():
    cm = code_matrix(_full_set((2, 2)))
    assert cm.matrix.shape == (3, 4)
    assert list(cm.weights) == [2, 2, 2]
    assert cm.max_imbalance == 0.0


def test_code_aghp_4_3_weights_within_band():
    bset = aghp_set(4, 3)
    cm = code_matrix(bset)
    low, high = (1 - 0.375) / 2, (1 + 0.375) / 2
    fractions = cm.weights / bset.size
    assert cm.matrix.shape == (15, 64)
    assert np.all(fractions >= low - 1e-12)
    assert np.all(fractions <= high + 1e-12)


def test_code_singleton_zero_column():
    group = AbelianGroup((2, 2, 2, 2))
    cm = code_matrix(manual_set(group, [(0, 0, 0, 0)], certify=False))
    assert np.all(cm.matrix == 0)
    assert cm.max_imbalance == 1.0


def test_code_imbalance_equals_bias():
    rng = np.random.default_rng(79)
    group = AbelianGroup((2,) * 5)
    for _ in range(5):
        bset = manual_set(group, sample_elements(group, rng, 12), certify=False)
        cm = code_matrix(bset)
        assert abs(cm.max_imbalance - bias_exact(bset)) < 1e-9


def test_code_entries_are_inner_product_bits():
    bset = aghp_set(3, 2)
    cm = code_matrix(bset)
    group = bset.group
    for i in range(1, group.order):
        a = group.element_at(i)
        for j, x in enumerate(bset.elements):
            expected = sum(ai * xi for ai, xi in zip(a, x)) % 2
            assert cm.matrix[i - 1, j] == expected


def test_code_requires_boolean_group():
    with pytest.raises(UsageError):
        code_matrix(_full_set((3,)))


# ---------------------------------------------------------------------------
# size accounting
# ---------------------------------------------------------------------------


def test_hash_size_fields_examples():
    assert hash_size_fields(1 << 256, 1 << 16) == (256, 16)
    assert hash_size_fields(1 << 8, 12) == (8, 4)
    assert hash_size_fields(2, 1) == (1, 0)
    with pytest.raises(UsageError):
        hash_size_fields(1, 1)


def test_size_report_fields():
    group = AbelianGroup((2,) * 8)
    bset = manual_set(group, [(0,) * 8] * 12, certify=False)
    report = size_report(bset, 0.3)
    assert report.input_bits == 8
    assert report.qubits == 4
    assert report.paper_upper_form is None  # not a random-method set
    assert report.lower_bound_form == pytest.approx(math.log2(8 / 0.3))
    with pytest.raises(UsageError):
        size_report(bset, 0.0)


def test_size_report_includes_paper_form_for_random_sets():
    from qabelhash.biased_sets import random_biased_set

    bset = random_biased_set(AbelianGroup((2,) * 6), epsilon=0.4, seed=3)
    report = size_report(bset, 0.4)
    expected = math.log2(4.0 * math.log(64) / 0.16)
    assert report.paper_upper_form == pytest.approx(expected)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_hash_payload_roundtrip_exact():
    bset = _full_set((3, 4))
    h = hash_state(bset, (2, 3))
    back = hash_from_payload(hash_to_payload(h))
    assert back.qubits == h.qubits
    assert back.message == h.message
    assert back.set_id == h.set_id
    assert np.array_equal(back.amplitudes, h.amplitudes)  # full double precision


def test_hash_save_load_roundtrip(tmp_path):
    bset = aghp_set(2, 2)
    h = hash_state(bset, (1, 0))
    path = tmp_path / "hash.json"
    save_hash(h, path)
    loaded = load_hash(path)
    assert np.array_equal(loaded.amplitudes, h.amplitudes)
    assert loaded.set_id == h.set_id


def test_hash_payload_validation():
    with pytest.raises(ParseError):
        hash_from_payload({"set_id": "x", "message": [0], "qubits": 1})
    with pytest.raises(ParseError):
        hash_from_payload(
            {"set_id": "x", "message": [0], "qubits": 2, "amplitudes": [[1.0, 0.0]]}
        )
