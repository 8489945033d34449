import random
import statistics
from collections import Counter

import pytest

from slrsim.coords import HopAddress, UsableAddress, enumerate_viewports
from slrsim.netsim.rng import SALT_PAIRS, derive_seed
from slrsim.viewport import (
    OpCounter,
    Prioritization,
    aligned_anchor,
    optimal_viewport_bruteforce,
    random_viewport,
    remote_anchor,
    retransmitter_counts,
    select_viewport,
)

ADDR_A = HopAddress((0, 4, 6, 4, 4, 6, 7, 6))
ADDR_B = HopAddress((7, 6, 4, 6, 6, 4, 0, 4))


class TestAlignedAnchor:
    def test_degenerate_pair_breaks_tie_to_lowest_index(self):
        assert aligned_anchor(ADDR_A, ADDR_A) == 1

    def test_corner_pair_on_grid_field(self, desk_field):
        # A node in A1's corner zone versus one in A7's: the score for
        # A1 spans the whole hop diameter and A7 ties; the lower wins.
        a1 = desk_field.address(desk_field.anchor_ids[0])
        a7 = desk_field.address(desk_field.anchor_ids[6])
        assert aligned_anchor(a1, a7) == 1

    def test_swap_symmetry(self):
        assert aligned_anchor(ADDR_A, ADDR_B) == aligned_anchor(ADDR_B, ADDR_A)

    def test_incomplete_address_rejected(self):
        partial = HopAddress((0, None, 2, 3, 4, 5, 6, 7))
        with pytest.raises(ValueError):
            aligned_anchor(partial, ADDR_A)


class TestSelectViewport:
    def test_loop_runs_exactly_nine_times(self):
        counter = OpCounter()
        select_viewport(ADDR_A, ADDR_B, counter=counter)
        assert counter.loop_iterations == 9

    def test_budget_is_101_integer_operations(self):
        counter = OpCounter()
        select_viewport(ADDR_A, ADDR_B, Prioritization.RESOLUTION, counter)
        assert counter.scan == 16
        assert counter.init == 2
        assert counter.loop == 81
        assert counter.projection == 2
        assert counter.total == 101

    def test_degenerate_pair_is_deterministic(self):
        c1 = select_viewport(ADDR_A, ADDR_A)
        c2 = select_viewport(ADDR_A, ADDR_A)
        assert c1 == c2
        assert c1.ua1 == c1.ua2

    def test_resolution_choice_contains_aligned_anchor(self, desk_field):
        ids = [int(i) for i in desk_field.addressed_ids()]
        rng = random.Random(5)
        for _ in range(50):
            s, r = rng.sample(ids, 2)
            addr1, addr2 = desk_field.address(s), desk_field.address(r)
            choice = select_viewport(addr1, addr2, Prioritization.RESOLUTION)
            assert aligned_anchor(addr1, addr2) in choice.vp

    def test_distance_choice_contains_remote_anchor(self, desk_field):
        ids = [int(i) for i in desk_field.addressed_ids()]
        rng = random.Random(6)
        for _ in range(50):
            s, r = rng.sample(ids, 2)
            addr1, addr2 = desk_field.address(s), desk_field.address(r)
            choice = select_viewport(addr1, addr2, Prioritization.DISTANCE)
            assert remote_anchor(addr1, addr2) in choice.vp

    def test_projected_addresses_match_inputs(self):
        choice = select_viewport(ADDR_A, ADDR_B)
        assert choice.ua1 == ADDR_A.project(choice.vp)
        assert choice.ua2 == ADDR_B.project(choice.vp)

    def test_integer_purity_of_selection(self):
        class GuardedInt(int):
            def _no_float(self, *args):
                raise AssertionError("float op in viewport selection")
            __truediv__ = __rtruediv__ = __float__ = _no_float

        addr1 = HopAddress(tuple(GuardedInt(v) for v in ADDR_A.r))
        addr2 = HopAddress(tuple(GuardedInt(v) for v in ADDR_B.r))
        aligned_anchor(addr1, addr2)
        select_viewport(addr1, addr2, Prioritization.RESOLUTION)
        select_viewport(addr1, addr2, Prioritization.DISTANCE)


class TestBruteForce:
    @pytest.fixture(scope="class")
    def tables(self, desk_field):
        return desk_field.zone_tables()

    def test_optimal_dominates_heuristic_and_mean(self, desk_field, tables):
        ids = [int(i) for i in desk_field.addressed_ids()]
        rng = random.Random(derive_seed(1, SALT_PAIRS))
        for _ in range(40):
            s, r = rng.sample(ids, 2)
            addr1, addr2 = desk_field.address(s), desk_field.address(r)
            for m in (1, 2):
                counts = retransmitter_counts(addr1, addr2, tables, m)
                best_vp = optimal_viewport_bruteforce(addr1, addr2, tables, m)
                optimal = counts[best_vp]
                assert optimal == min(counts.values())
                chosen = select_viewport(addr1, addr2).vp
                assert optimal <= counts[chosen] <= max(counts.values())
                assert optimal <= sum(counts.values()) / len(counts)

    def test_tie_breaks_to_enumeration_order(self, desk_field, tables):
        ids = [int(i) for i in desk_field.addressed_ids()]
        rng = random.Random(3)
        s, r = rng.sample(ids, 2)
        addr1, addr2 = desk_field.address(s), desk_field.address(r)
        counts = retransmitter_counts(addr1, addr2, tables, 1)
        best = optimal_viewport_bruteforce(addr1, addr2, tables, 1)
        minimum = min(counts.values())
        for vp in enumerate_viewports():
            if counts[vp] == minimum:
                assert vp == best
                break

    def test_heuristic_beats_random_at_reference_scale(self, paper_field):
        # On the full-scale zone structure the model-fitting choice has
        # a lower median excess than uniform viewport choice.
        tables = paper_field.zone_tables()
        ids = [int(i) for i in paper_field.addressed_ids()]
        rng = random.Random(derive_seed(1, SALT_PAIRS, 0))
        heur, rand = [], []
        for _ in range(100):
            s, r = rng.sample(ids, 2)
            addr1, addr2 = paper_field.address(s), paper_field.address(r)
            counts = retransmitter_counts(addr1, addr2, tables, 1)
            optimal = min(counts.values())
            heur.append((counts[select_viewport(addr1, addr2).vp] - optimal) / optimal)
            rand.append((sum(counts.values()) / 24 - optimal) / optimal)
        assert statistics.median(heur) < statistics.median(rand)

    def test_weighted_and_unweighted_tables_agree_on_sets(self, desk_field, tables):
        ids = [int(i) for i in desk_field.addressed_ids()]
        rng = random.Random(9)
        s, r = rng.sample(ids, 2)
        addr1, addr2 = desk_field.address(s), desk_field.address(r)
        unit_tables = {vp: {ua: 1 for ua in tab} for vp, tab in tables.items()}
        set_tables = {vp: list(tab.keys()) for vp, tab in tables.items()}
        a = retransmitter_counts(addr1, addr2, unit_tables, 1)
        b = retransmitter_counts(addr1, addr2, set_tables, 1)
        assert a == b


class TestRandomViewport:
    def test_seeded_sequence_reproduces(self):
        seq1 = [random_viewport(random.Random(11)) for _ in range(1)]
        rng_a, rng_b = random.Random(11), random.Random(11)
        seq_a = [random_viewport(rng_a) for _ in range(100)]
        seq_b = [random_viewport(rng_b) for _ in range(100)]
        assert seq_a == seq_b
        assert seq1[0] == seq_a[0]

    def test_uniform_frequency(self):
        rng = random.Random(0)
        counts = Counter(random_viewport(rng).anchors for _ in range(24_000))
        assert len(counts) == 24
        for c in counts.values():
            assert abs(c / 24_000 - 1 / 24) < 0.02
            # tighter deterministic check for this frozen seed
            assert abs(c - 1000) < 150
