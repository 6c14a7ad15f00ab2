import pytest

from wareplan import (
    Refiner,
    RefinerKind,
    ScoringParams,
    SearchResult,
    SearchStats,
    UnknownRefinerId,
    apply_refiners,
    score,
)
from wareplan.fileio import parse_ascii

PARAMS = ScoringParams(alpha=0.5, theta=0.1)


def _result(text):
    layout = parse_ascii(text)
    return SearchResult(
        optimal=layout,
        breakdown=score(layout, PARAMS),
        connectivity=None,
        params=PARAMS,
        stats=SearchStats(),
    )


# lone store of two cells, accessed from the corridor: omega = 2
EVEN = _result(
    "WWWWWW\n"
    "WSSWWW\n"
    "D....W\n"
    "WWWWWW"
)
# three access lanes on the north face: omega = 3
ODD = _result(
    "WWWWWW\n"
    "WSSSWW\n"
    "D....W\n"
    "WWWWWW"
)
# pillar touches the corridor that holds the door
PILLAR_OPEN = _result(
    "WWWWWW\n"
    "WSSP.W\n"
    "D....W\n"
    "WWWWWW"
)
# pillar fully enclosed by storage and walls
PILLAR_BOXED = _result(
    "WWWWWW\n"
    "WSPSWW\n"
    "WSSSWW\n"
    "D....W\n"
    "WWWWWW"
)


def even():
    return Refiner(id="even", kind=RefinerKind.EVEN_RACKING_UNITS)


def pillar(coords):
    return Refiner(
        id="pillar", kind=RefinerKind.PILLAR_ACCESS, config={"pillars": coords}
    )


def external(results):
    return Refiner(
        id="ext", kind=RefinerKind.EXTERNAL, config={"results": results}
    )


class TestApplyRefiners:
    def test_empty_pipeline_passes_everything(self):
        passed, rejected = apply_refiners([EVEN, ODD], [])
        assert passed == [EVEN, ODD]
        assert rejected == []

    def test_partition_is_exact(self):
        candidates = [EVEN, ODD, PILLAR_OPEN, PILLAR_BOXED]
        passed, rejected = apply_refiners(candidates, [even()])
        assert len(passed) + len(rejected) == len(candidates)
        passed_ids = {id(c) for c in passed}
        rejected_ids = {id(c) for c, _ in rejected}
        assert passed_ids.isdisjoint(rejected_ids)

    def test_even_racking_rejects_odd_omega(self):
        passed, rejected = apply_refiners([EVEN, ODD], [even()])
        assert passed == [EVEN]
        assert rejected == [(ODD, "even")]

    def test_pillar_access(self):
        passed, rejected = apply_refiners(
            [PILLAR_OPEN], [pillar([(1, 3)])]
        )
        assert passed == [PILLAR_OPEN] and rejected == []
        passed, rejected = apply_refiners(
            [PILLAR_BOXED], [pillar([(1, 2)])]
        )
        assert passed == [] and rejected == [(PILLAR_BOXED, "pillar")]

    def test_pillar_access_with_no_pillars_is_vacuous(self):
        passed, rejected = apply_refiners([PILLAR_BOXED], [pillar([])])
        assert passed == [PILLAR_BOXED]

    def test_external_lookup(self):
        digest = EVEN.optimal.digest
        passed, rejected = apply_refiners(
            [EVEN, ODD], [external({digest: True})]
        )
        assert passed == [EVEN]
        # a candidate the external tool never scored is rejected
        assert rejected == [(ODD, "ext")]

    def test_rejection_names_first_failing_refiner(self):
        pipeline = [external({}), even()]
        _, rejected = apply_refiners([ODD], pipeline)
        assert rejected == [(ODD, "ext")]

    def test_idempotent(self):
        candidates = [EVEN, ODD, PILLAR_OPEN]
        pipeline = [even()]
        passed1, _ = apply_refiners(candidates, pipeline)
        passed2, rejected2 = apply_refiners(passed1, pipeline)
        assert passed2 == passed1 and rejected2 == []

    def test_duplicate_ids_rejected(self):
        with pytest.raises(UnknownRefinerId):
            apply_refiners([EVEN], [even(), even()])


class TestRefinerFromDict:
    def test_round_trip(self):
        refiner = Refiner.from_dict(
            {"id": "p1", "kind": "pillar_access", "config": {"pillars": [[1, 3]]}}
        )
        assert refiner.id == "p1"
        assert refiner.kind == RefinerKind.PILLAR_ACCESS

    def test_defaults_id_to_kind(self):
        refiner = Refiner.from_dict({"kind": "even_racking_units"})
        assert refiner.id == "even_racking_units"

    def test_unknown_kind_raises(self):
        with pytest.raises(UnknownRefinerId):
            Refiner.from_dict({"kind": "sparkle"})
