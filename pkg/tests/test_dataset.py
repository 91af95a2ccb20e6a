import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sympredict.dataset import (
    RawDataset,
    SplitSpec,
    SymptomVocabulary,
    binarize,
    encode_symptoms,
    normalize_term,
    parse_raw_csv,
    split,
)
from sympredict.errors import ConfigError, EncodeError, ParseError

from conftest import make_dataset, random_dataset


# -- parse_raw_csv ----------------------------------------------------------

def test_parse_minimal_row():
    raw = parse_raw_csv("disease,symptom_1,symptom_2\nFungal infection,itching,skin_rash\n")
    assert raw.records == (("fungal_infection", ("itching", "skin_rash")),)


def test_parse_empty_input_fails():
    with pytest.raises(ParseError):
        parse_raw_csv("")
    with pytest.raises(ParseError):
        parse_raw_csv("   \n ")


def test_parse_drops_trailing_empty_cells_and_normalizes_spaces():
    raw = parse_raw_csv("disease,symptom_1,symptom_2\nCold,runny nose,\n")
    assert raw.records == (("cold", ("runny_nose",)),)


def test_parse_rejects_wrong_first_header():
    with pytest.raises(ParseError):
        parse_raw_csv("illness,symptom_1\nCold,cough\n")


def test_parse_rejects_too_wide_row():
    with pytest.raises(ParseError) as err:
        parse_raw_csv("disease,symptom_1\nCold,cough,extra\n")
    assert err.value.row == 1


def test_parse_rejects_symptomless_record():
    with pytest.raises(ParseError) as err:
        parse_raw_csv("disease,symptom_1,symptom_2\nA,x,y\nCold,,\n")
    assert err.value.row == 2


def test_parse_rejects_missing_disease_name():
    with pytest.raises(ParseError):
        parse_raw_csv("disease,symptom_1\n,cough\n")


def test_normalize_term():
    assert normalize_term("  Swelled  Lymph Nodes ") == "swelled_lymph_nodes"


# -- binarize ----------------------------------------------------------------

def test_binarize_marks_cells():
    raw = RawDataset(records=(("a", ("itching",)), ("b", ("skin_rash",))))
    ds = binarize(raw)
    assert ds.vocabulary.symptoms == ("itching", "skin_rash")
    assert ds.class_names == ("a", "b")
    assert ds.features.tolist() == [[1, 0], [0, 1]]
    assert ds.labels.tolist() == [0, 1]


def test_binarize_is_idempotent_for_repeated_symptoms():
    ds = binarize(RawDataset(records=(("a", ("itching", "itching")),)))
    assert ds.features.tolist() == [[1]]


def test_binarize_same_disease_different_symptoms_two_rows():
    raw = RawDataset(records=(("flu", ("cough",)), ("flu", ("fever",))))
    ds = binarize(raw)
    assert ds.n_rows == 2
    assert ds.labels.tolist() == [0, 0]
    assert ds.features.tolist() != [ds.features.tolist()[0]] * 2


def test_parse_binarize_deterministic():
    text = "disease,symptom_1,symptom_2\nA,x,y\nB,y,\nA,z,x\n"
    a = binarize(parse_raw_csv(text))
    b = binarize(parse_raw_csv(text))
    assert np.array_equal(a.features, b.features)
    assert np.array_equal(a.labels, b.labels)
    assert a.vocabulary.symptoms == b.vocabulary.symptoms


@given(
    st.lists(
        st.tuples(
            st.sampled_from(["flu", "cold", "malaria"]),
            st.lists(st.sampled_from(["a", "b", "c", "d", "e"]), min_size=1, max_size=4),
        ),
        min_size=1,
        max_size=20,
    )
)
@settings(max_examples=50, deadline=None)
def test_binarize_invariants(records):
    ds = binarize(RawDataset(records=tuple((d, tuple(s)) for d, s in records)))
    assert ds.features.shape[1] == len(ds.vocabulary)
    assert set(np.unique(ds.features)) <= {0, 1}
    assert (ds.features.sum(axis=1) >= 1).all()
    assert list(ds.class_names) == sorted(set(ds.class_names))
    for i, (disease, symptoms) in enumerate(records):
        for j, name in enumerate(ds.vocabulary.symptoms):
            assert ds.features[i, j] == (1 if name in symptoms else 0)


# -- split --------------------------------------------------------------------

def test_split_floor_arithmetic_4921():
    rng = np.random.default_rng(0)
    ds = random_dataset(rng, 4921, 5, 7)
    train, test = split(ds, SplitSpec(test_fraction=0.2, seed=3))
    assert test.n_rows == 984
    assert train.n_rows == 3937


def test_split_single_class_small():
    ds = make_dataset([[1, 0]] * 10, [0] * 10)
    train, test = split(ds, SplitSpec(test_fraction=0.2, seed=1))
    assert test.n_rows == 2
    assert set(test.labels.tolist()) == {0}


def test_split_deterministic():
    rng = np.random.default_rng(5)
    ds = random_dataset(rng, 60, 6, 3)
    a = split(ds, SplitSpec(seed=42))
    b = split(ds, SplitSpec(seed=42))
    assert np.array_equal(a[0].features, b[0].features)
    assert np.array_equal(a[1].features, b[1].features)


@pytest.mark.parametrize("fraction", [0.0, 1.0, -0.5, 1.2])
def test_split_rejects_bad_fraction(fraction):
    with pytest.raises(ConfigError):
        SplitSpec(test_fraction=fraction)


def test_split_needs_two_rows():
    ds = make_dataset([[1]], [0])
    with pytest.raises(ConfigError):
        split(ds, SplitSpec())


def test_split_partitions_exactly(rng):
    for trial in range(10):
        n = int(rng.integers(5, 200))
        ds = random_dataset(rng, n, 4, 3)
        spec = SplitSpec(
            test_fraction=float(rng.uniform(0.1, 0.9)),
            seed=int(rng.integers(0, 1000)),
            stratified=bool(trial % 2),
        )
        train, test = split(ds, spec)
        assert train.n_rows + test.n_rows == n
        assert test.n_rows == int(np.floor(spec.test_fraction * n))
        combined = np.vstack([train.features, test.features])
        key = np.lexsort(combined.T[::-1])
        orig = np.lexsort(ds.features.T[::-1])
        assert np.array_equal(combined[key], ds.features[orig])


def test_split_stratified_proportions():
    ds = make_dataset(
        [[1, 0]] * 50 + [[0, 1]] * 30 + [[1, 1]] * 20,
        [0] * 50 + [1] * 30 + [2] * 20,
    )
    _, test = split(ds, SplitSpec(test_fraction=0.2, seed=11, stratified=True))
    counts = np.bincount(test.labels, minlength=3)
    assert counts.tolist() == [10, 6, 4]


def test_split_stratified_keeps_small_classes_in_both():
    ds = make_dataset(
        [[1, 0]] * 95 + [[0, 1]] * 5,
        [0] * 95 + [1] * 5,
    )
    train, test = split(ds, SplitSpec(test_fraction=0.2, seed=7, stratified=True))
    assert (np.bincount(train.labels, minlength=2) > 0).all()
    assert (np.bincount(test.labels, minlength=2) > 0).all()


# -- encode_symptoms -----------------------------------------------------------

VOCAB = SymptomVocabulary(("itching", "skin_rash"))


def test_encode_basic():
    vector, unknown = encode_symptoms(["itching"], VOCAB)
    assert vector.tolist() == [1, 0]
    assert unknown == []


def test_encode_normalizes_and_dedupes():
    vector, unknown = encode_symptoms(["Itching ", "ITCHING"], VOCAB)
    assert vector.tolist() == [1, 0]
    assert unknown == []


def test_encode_all_unknown_raises():
    with pytest.raises(EncodeError) as err:
        encode_symptoms(["quantum_flu"], VOCAB)
    assert err.value.unknown == ["quantum_flu"]


def test_encode_empty_list_raises():
    with pytest.raises(EncodeError):
        encode_symptoms([], VOCAB)


def test_encode_reports_unknown_alongside_known():
    vector, unknown = encode_symptoms(["itching", "weird one", "weird  one"], VOCAB)
    assert vector.tolist() == [1, 0]
    assert unknown == ["weird one"]


def test_encode_roundtrip_recovers_recognized_subset(rng):
    names = list(VOCAB.symptoms) + ["nope"]
    for _ in range(20):
        take = [n for n in names if rng.random() < 0.6]
        if not any(n in VOCAB.symptoms for n in take):
            continue
        vector, unknown = encode_symptoms(take, VOCAB)
        decoded = {VOCAB.symptoms[i] for i in np.flatnonzero(vector)}
        assert decoded == {n for n in take if n in VOCAB.symptoms}
        assert set(unknown) == {n for n in take if n not in VOCAB.symptoms}


def test_vocabulary_rejects_unsorted_or_duplicate():
    with pytest.raises(ConfigError):
        SymptomVocabulary(("b", "a"))
    with pytest.raises(ConfigError):
        SymptomVocabulary(("a", "a"))
    with pytest.raises(ConfigError):
        SymptomVocabulary(())
