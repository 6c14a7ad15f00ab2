import random

import numpy as np
import pytest

from wareplan import (
    ConstraintId,
    SpaceSpec,
    check_efficiency,
    check_functional,
    clear_width_map,
    initial_layout,
    is_valid,
    validate,
)
from wareplan.fileio import parse_ascii

from conftest import (
    brute_square_widths,
    random_layout,
    with_cells,
    with_extra_reserved,
)


class TestClearWidthMap:
    def test_straight_corridor(self):
        layout = parse_ascii(
            "WWWWWWWW\nW......W\nW......W\nW......W\nWWWWWWWW", aisle_width=3
        )
        cw = clear_width_map(layout)
        assert (cw[1:4, 1:7] == 3).all()
        assert (cw[0] == 0).all()

    def test_pillar_obstruction(self):
        layout = parse_ascii(
            "WWWWWWWW\nW......W\nW..P...W\nW......W\nWWWWWWWW", aisle_width=3
        )
        cw = clear_width_map(layout)
        assert cw[2, 3] == 0  # the pillar itself
        assert cw[2, 2] == 2  # squished between wall and pillar
        assert cw[2, 4] == 3  # full-width square exists to the right

    def test_matches_brute_force(self):
        rng = random.Random(31)
        for _ in range(20):
            layout = random_layout(rng, max_size=9)
            assert np.array_equal(
                clear_width_map(layout),
                brute_square_widths(layout.aisle_mask()),
            )


class TestFunctional:
    def test_disconnected_door_is_f2(self):
        layout = parse_ascii(
            "WWWWWW\n"
            "D.WW.D\n"
            "WSWWSW\n"
            "WWWWWW"
        )
        report = check_functional(layout)
        assert ConstraintId.F2_AISLE_UNREACHABLE_FROM_DOOR in report.constraint_ids

    def test_storage_on_reserved_is_f3(self, ring):
        mutated = with_extra_reserved(ring, (4, 4))
        report = check_functional(mutated)
        assert report.constraint_ids == {ConstraintId.F3_STORAGE_IN_DOORWAY_OR_RESERVED}

    def test_full_layout_passes_vacuously(self):
        spec = SpaceSpec(
            width=6, height=6,
            walls={(0, c) for c in range(6) if c != 2},
            door_connections={(0, 2)},
        )
        layout = initial_layout(spec)
        assert layout.n_pick_faces == 0
        assert validate(layout).valid


class TestEfficiency:
    def test_merged_wide_aisle_is_e1(self):
        layout = parse_ascii(
            "WWWWWWWW\n"
            "WSSSSSSW\n"
            "W......W\n"
            "W......W\n"
            "W......W\n"
            "WSSSSSSW\n"
            "WWWWWWWW",
            aisle_width=2,
        )
        report = check_efficiency(layout)
        assert ConstraintId.E1_AISLE_TOO_WIDE in report.constraint_ids

    def test_single_cell_store_is_e3(self):
        layout = parse_ascii("WWWW\nW.SW\nWWWW")
        report = check_efficiency(layout)
        assert ConstraintId.E3_SINGLE_ITEM_BLOCK_STORE in report.constraint_ids

    def test_one_row_two_sided_store_is_e2(self):
        layout = parse_ascii(
            "WWWWWW\n"
            "W....W\n"
            "WSSSSW\n"
            "W....W\n"
            "WWWWWW"
        )
        report = check_efficiency(layout)
        assert ConstraintId.E2_TWO_SIDED_STORE_UNDER_TWO_ROWS in report.constraint_ids


def _mutations(ring):
    """One injected violation per constraint id, crafted to stay isolated."""
    height, width = ring.cells.shape
    block_w = width - 6
    c_mid = 3 + block_w // 2
    return {
        ConstraintId.F1_AISLE_TOO_NARROW_AT_PICK_FACE: with_cells(
            ring, {(1, c_mid): "W"}
        ),
        ConstraintId.F2_AISLE_UNREACHABLE_FROM_DOOR: with_cells(
            ring, {(height - 1, 3): "D"}
        ),
        ConstraintId.F3_STORAGE_IN_DOORWAY_OR_RESERVED: with_extra_reserved(
            ring, (4, c_mid)
        ),
        ConstraintId.F4_PILLAR_BLOCKS_AISLE: with_cells(
            ring, {(1, c_mid): "P"}
        ),
        ConstraintId.E1_AISLE_TOO_WIDE: with_cells(ring, {(3, 3): "."}),
        ConstraintId.E2_TWO_SIDED_STORE_UNDER_TWO_ROWS: with_cells(
            ring,
            {(r, c): "." for r in (4, 5) for c in range(3, 3 + block_w)},
        ),
        ConstraintId.E3_SINGLE_ITEM_BLOCK_STORE: with_cells(
            ring, {(height - 2, 3): "W"}
        ),
    }


class TestMutationSuite:
    def test_base_fixture_is_valid(self, ring):
        assert is_valid(ring)

    def test_each_injected_violation_detected_exactly(self, ring):
        for target, mutated in _mutations(ring).items():
            report = validate(mutated)
            assert report.constraint_ids == {target}, (
                f"expected only {target}, got {report.constraint_ids}"
            )

    def test_soundness_of_offending_cells(self, ring):
        # every reported cell really exhibits the violated predicate
        for target, mutated in _mutations(ring).items():
            report = validate(mutated)
            for violation in report.violations:
                assert violation.cells, "violations must name offending cells"
                cw = clear_width_map(mutated)
                aw = mutated.spec.aisle_width
                for r, c in violation.cells:
                    if violation.constraint == ConstraintId.E1_AISLE_TOO_WIDE:
                        assert cw[r, c] > aw
                    elif violation.constraint in (
                        ConstraintId.F1_AISLE_TOO_NARROW_AT_PICK_FACE,
                        ConstraintId.F4_PILLAR_BLOCKS_AISLE,
                    ):
                        assert cw[r, c] < aw
                    elif violation.constraint == (
                        ConstraintId.F3_STORAGE_IN_DOORWAY_OR_RESERVED
                    ):
                        assert (r, c) in (
                            mutated.spec.reserved | mutated.spec.door_connections
                        )


class TestReportInvariants:
    def test_valid_iff_no_violations(self):
        rng = random.Random(37)
        for _ in range(20):
            layout = random_layout(rng)
            report = validate(layout)
            assert report.valid == (not report.violations)

    def test_is_valid_agrees_with_full_report(self, ring):
        rng = random.Random(43)
        layouts = [random_layout(rng) for _ in range(40)]
        layouts.append(ring)
        layouts.extend(_mutations(ring).values())
        for layout in layouts:
            assert is_valid(layout) == validate(layout).valid

    def test_determinism(self):
        rng = random.Random(41)
        for _ in range(10):
            layout = random_layout(rng)
            assert validate(layout) == validate(layout)

    def test_f3_depends_only_on_full_masks(self, ring):
        # a violation-free carve never creates or fixes F3
        from wareplan import enumerate_children

        assert ConstraintId.F3_STORAGE_IN_DOORWAY_OR_RESERVED not in (
            validate(ring).constraint_ids
        )
        for child in enumerate_children(ring)[:5]:
            assert ConstraintId.F3_STORAGE_IN_DOORWAY_OR_RESERVED not in (
                validate(child).constraint_ids
            )
