from types import SimpleNamespace

import pytest

from hamming_partitions import drivers
from hamming_partitions.codes import hamming_code
from hamming_partitions.config_schema import ReportFormat, TableConfig, ToolkitConfig
from hamming_partitions.drivers import (
    ChainStatus,
    RowStatus,
    corollary_counts,
    delta,
    e_range,
    generated_import,
    lemma3_chains,
    predicted_value,
    register_generator,
    registered_generators,
    render,
    theorem_table,
    two_transitive_bound,
    uniform_bound,
    unregister_generator,
)
from hamming_partitions.mollard import construction_b
from hamming_partitions.partitions import VerificationError, trivial_partition
from hamming_partitions.recipes import (
    BuildContext,
    ImportedPartition,
    RecipeMismatchError,
    build_and_certify,
    parse_recipe,
)


def _row_summary(rows):
    return [(r.predicted, r.status, r.recipe) for r in rows]


def test_arithmetic():
    assert delta(5) == 1 and delta(6) == 0
    assert list(e_range(5)) == [1, 2, 3]
    assert list(e_range(6)) == [1, 2, 3]
    assert predicted_value(5, 1) == 22
    assert predicted_value(7, 3) == 118
    with pytest.raises(ValueError):
        predicted_value(6, 4)


def test_table_for_m3():
    rows = theorem_table(3)
    assert _row_summary(rows) == [
        (2, RowStatus.BUILT, "P7"),
        (4, RowStatus.BUILT, "T7"),
    ]
    assert [r.computed for r in rows] == [2, 4]


def test_table_for_m4_keeps_the_open_row():
    rows = theorem_table(4)
    assert _row_summary(rows) == [
        (9, RowStatus.OPEN, "open"),
        (11, RowStatus.BUILT, "T15"),
    ]


def test_table_for_m5():
    rows = theorem_table(5)
    assert _row_summary(rows) == [
        (22, RowStatus.MISSING_IMPORT, "requires-import"),
        (24, RowStatus.BUILT, "B(T3,P7)"),
        (26, RowStatus.BUILT, "T31"),
    ]
    assert rows[1].partition.length == 31


def test_table_rejects_an_import_off_its_value(trivial3, phelps7):
    fake = ImportedPartition("n31", construction_b(trivial3, phelps7), 22)
    with pytest.raises(RecipeMismatchError) as err:
        theorem_table(5, [fake])
    assert err.value.computed == 24


def test_table_for_m6():
    rows = theorem_table(6)
    assert _row_summary(rows) == [
        (53, RowStatus.NOT_UNIFORM, "B(P7,P7)"),
        (55, RowStatus.BUILT, "B(P7,T7)"),
        (57, RowStatus.BUILT, "T63"),
    ]
    assert rows[0].computed is None
    assert "53" in rows[0].note and "55" in rows[0].note


def test_guarded_only_table_for_m6():
    cfg = ToolkitConfig(tables=TableConfig(attempt_unguarded=False))
    rows = theorem_table(6, config=cfg)
    assert rows[0].status == RowStatus.MISSING_IMPORT
    assert rows[1].status == RowStatus.BUILT


def test_table_needs_m_at_least_three():
    with pytest.raises(ValueError):
        theorem_table(2)


def test_chains_without_imports():
    steps = lemma3_chains()
    assert [s.status for s in steps] == [
        ChainStatus.VERIFIED, ChainStatus.SKIPPED, ChainStatus.SKIPPED, ChainStatus.SKIPPED,
    ]
    assert steps[0].computed == 24
    assert steps[0].as_record()["arithmetic"] == "1+2+21=24"


def test_chain_rejects_a_falsely_labelled_import(trivial3, phelps7):
    fake = ImportedPartition("n31", construction_b(trivial3, phelps7), 22)
    with pytest.raises(RecipeMismatchError) as err:
        lemma3_chains([fake])
    assert err.value.predicted == 116
    assert err.value.computed == 118


def test_chain_stops_after_a_non_uniform_step(monkeypatch, trivial3, phelps7):
    real = drivers.build_and_certify
    certified = {
        "B(T3,I:n31)": SimpleNamespace(is_uniform=True, uniformity_number=116, distinct_code_values=(116,)),
        "B(P7,I:n31)": SimpleNamespace(is_uniform=False, uniformity_number=None, distinct_code_values=(239, 241)),
    }

    def certify(recipe, ctx):
        report = certified.get(str(recipe))
        if report is None:
            return real(recipe, ctx)
        report.describe = lambda: "stand-in report"
        return SimpleNamespace(recipe=recipe, report=report, computed=report.uniformity_number)

    monkeypatch.setattr(drivers, "build_and_certify", certify)
    fake = ImportedPartition("n31", construction_b(trivial3, phelps7), 22)
    steps = lemma3_chains([fake])
    assert [s.status for s in steps] == [
        ChainStatus.VERIFIED, ChainStatus.VERIFIED, ChainStatus.NOT_UNIFORM, ChainStatus.SKIPPED,
    ]
    assert steps[1].computed == 116
    assert "239" in steps[2].note
    assert steps[3].recipe == "B(T3,B(P7,I:n31))"
    assert steps[3].note == "depends on 255/241"


def test_counts_for_m3():
    report = corollary_counts(3)
    assert [e.recipe for e in report.entries] == ["P7", "T7"]
    assert report.uniform_exhibited == 2
    assert report.two_transitive_exhibited == 2
    assert report.two_transitive_required == 2
    assert all(e.extension_preserves for e in report.entries)
    for entry in report.entries:
        ext = entry.extended_transitivity
        assert ext.points == 8 and ext.orbit_size == 56
        assert entry.as_record()["extended_2-transitive"] is True
    assert report.met


def test_counts_for_m5():
    report = corollary_counts(5)
    by_recipe = {e.recipe: e for e in report.entries}
    assert set(by_recipe) == {"B(T3,P7)", "T31"}
    assert by_recipe["T31"].transitivity.two_transitive
    assert by_recipe["T31"].extended_transitivity.two_transitive
    composed = by_recipe["B(T3,P7)"].transitivity
    assert composed.transitive and not composed.two_transitive
    assert by_recipe["B(T3,P7)"].extended_transitivity.orbit_size == composed.orbit_size
    assert report.uniform_exhibited == 2
    assert report.two_transitive_exhibited == 1
    assert report.two_transitive_required == 2
    assert not report.two_transitive_met
    assert not report.uniform_met
    assert report.summary()["uniform"] == "2/3"
    assert report.summary()["2-transitive"] == "1/2"


@pytest.mark.parametrize("m,uniform,doubly", [
    (3, 2, 2), (4, None, 1), (5, 3, 2), (6, 3, 2), (7, 4, 2), (9, 5, 3),
])
def test_count_bounds(m, uniform, doubly):
    assert uniform_bound(m) == uniform
    assert two_transitive_bound(m) == doubly


def test_generator_registry():
    name = "length-7-trivial"

    @register_generator(name)
    def _make():
        return trivial_partition(hamming_code(3))

    try:
        assert name in registered_generators()
        with pytest.raises(ValueError):
            register_generator(name)(_make)
        imported = generated_import(name, expected_uniformity=4)
        assert imported.uniformity_number == 4
        with pytest.raises(VerificationError):
            generated_import(name, expected_uniformity=2)
    finally:
        unregister_generator(name)
    assert name not in registered_generators()
    with pytest.raises(ValueError):
        generated_import(name)


def test_render_formats():
    records = [{"m": 5, "recipe": "B(T3,P7)", "note": "two words"}, {"m": 6, "recipe": "T63", "note": ""}]
    table = render(records, ReportFormat.TABLE).splitlines()
    assert table[0].split() == ["m", "recipe", "note"]
    assert set(table[1].replace(" ", "")) == {"-"}
    assert table[2].split() == ["5", "B(T3,P7)", "two", "words"]
    lines = render(records, ReportFormat.RECORDS).splitlines()
    assert lines[0] == 'm=5 recipe=B(T3,P7) note="two words"'
    assert lines[1] == 'm=6 recipe=T63 note=""'
    assert render([]) == ""


def test_row_records_are_flat():
    ctx = BuildContext()
    rows = theorem_table(3, ctx=ctx)
    record = rows[0].as_record()
    assert record["status"] == "built-and-verified"
    assert record["computed"] == 2
    assert build_and_certify(parse_recipe("P7"), ctx).partition is rows[0].partition
