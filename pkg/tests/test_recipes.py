import pytest

from hamming_partitions.config_schema import ToolkitConfig
from hamming_partitions.mollard import construction_b
from hamming_partitions.recipes import (
    BuildContext,
    Compose,
    ImportedPartition,
    Imported,
    Phelps,
    Trivial,
    build,
    build_and_certify,
    law_guarded,
    m_of_length,
    parse_recipe,
    predicted_uniformity,
    reachable,
    recipe_length,
    split_orders,
    check_import_name,
    import_label,
    is_trivial,
    walk,
)


def test_parse_and_print():
    recipe = parse_recipe("B(T3, B(P7,I:n31))")
    assert recipe == Compose(Trivial(2), Compose(Phelps(), Imported("n31")))
    assert str(recipe) == "B(T3,B(P7,I:n31))"
    assert parse_recipe(str(recipe)) == recipe


@pytest.mark.parametrize("text", ["B(T3,P7", "T8", "X7", "B(T3 P7)", "P7)", "I:"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_recipe(text)


def test_lengths():
    assert m_of_length(31) == 5
    with pytest.raises(ValueError):
        m_of_length(30)
    assert recipe_length(parse_recipe("B(T3,P7)"), {}) == 31
    assert recipe_length(parse_recipe("B(T3,B(T7,B(T3,P7)))"), {}) == 1023


@pytest.mark.parametrize("text,value", [
    ("T3", 1),
    ("T7", 4),
    ("P7", 2),
    ("B(T3,P7)", 24),
    ("B(P7,T7)", 55),
    ("B(P7,P7)", 53),
    ("B(T3,B(T3,P7))", 118),
    ("B(P7,T15)", 118),
    ("B(T3,B(T7,B(T3,P7)))", 1011),
    ("T1023", 1013),
])
def test_composition_law(text, value):
    assert predicted_uniformity(parse_recipe(text)) == value


def test_law_guard():
    assert law_guarded(parse_recipe("B(T3,P7)"))
    assert law_guarded(parse_recipe("B(T3,B(T7,B(T3,P7)))"))
    assert not law_guarded(parse_recipe("B(P7,P7)"))
    assert not law_guarded(parse_recipe("B(T3,B(P7,P7))"))
    assert not law_guarded(parse_recipe("B(P7,I:x)"))
    assert law_guarded(parse_recipe("P7"))


def test_triviality_looks_at_every_leaf():
    assert is_trivial(parse_recipe("B(T3,B(T7,T15))"))
    assert not is_trivial(parse_recipe("B(T3,B(T7,P7))"))
    assert not is_trivial(parse_recipe("I:x"))


def test_imports_must_be_supplied():
    with pytest.raises(ValueError):
        predicted_uniformity(parse_recipe("B(T3,I:missing)"))


def test_walk_is_post_order():
    recipe = parse_recipe("B(T3,B(P7,T7))")
    assert [str(r) for r in walk(recipe)] == ["T3", "P7", "T7", "B(P7,T7)", "B(T3,B(P7,T7))"]


def test_split_orders():
    assert split_orders(5) == [2, 3]
    assert split_orders(6) == [3, 2, 4]
    assert split_orders(6, general=False) == [3, 2]
    assert split_orders(7) == [2, 3, 4, 5]
    assert split_orders(3) == []


def test_reachable_values():
    assert sorted(reachable(3, {})) == [2, 4]
    assert sorted(reachable(5, {})) == [24, 26]
    at6 = reachable(6, {})
    assert str(at6[53][0]) == "B(P7,P7)"
    assert str(at6[55][0]) == "B(P7,T7)"
    assert str(reachable(7, {})[118][0]) == "B(T3,B(T3,P7))"


def test_reachable_uses_imports(trivial3, phelps7):
    fake = ImportedPartition("n31", construction_b(trivial3, phelps7), 22)
    options = reachable(5, {"n31": fake})
    assert options[22] == [Imported("n31")]
    assert Compose(Trivial(2), Imported("n31")) in reachable(7, {"n31": fake})[116]


def test_build_caches_by_recipe_text():
    ctx = BuildContext(ToolkitConfig())
    first = build(parse_recipe("B(T3,T3)"), ctx)
    assert build(parse_recipe("B(T3,T3)"), ctx) is first
    assert set(ctx.built) == {"T3", "B(T3,T3)"}


def test_build_and_certify_reports_unguarded_results():
    ctx = BuildContext()
    outcome = build_and_certify(parse_recipe("B(P7,P7)"), ctx)
    assert not outcome.guarded
    assert outcome.predicted == 53
    assert outcome.computed is None
    guarded = build_and_certify(parse_recipe("B(T3,P7)"), ctx)
    assert guarded.guarded and guarded.computed == 24


def test_duplicate_import_is_rejected(trivial7):
    ctx = BuildContext()
    ctx.add_import(ImportedPartition("x", trivial7, 4))
    with pytest.raises(ValueError):
        ctx.add_import(ImportedPartition("x", trivial7, 4))


def test_import_names_avoid_recipe_punctuation(trivial7):
    assert import_label("krotov(31)") == "krotov_31_"
    assert import_label("two words") == "two_words"
    assert check_import_name("n31") == "n31"
    with pytest.raises(ValueError):
        check_import_name("a,b")
    with pytest.raises(ValueError):
        ImportedPartition("x y", trivial7, 4)
    with pytest.raises(ValueError):
        Imported("")
