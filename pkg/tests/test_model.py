import json

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from interceptgraph import (
    Dataset,
    ParseError,
    SchemaError,
    Transform,
    Trend,
    ValidationError,
    apply_rank_transform,
    make_item,
    parse_csv,
    parse_json,
    serialize_dataset,
)
from interceptgraph.model import average_ranks, dataset_to_dict


# ── items ────────────────────────────────────────────────────────────


class TestItems:
    def test_trend_derivation(self):
        assert make_item("a", 33, 35).trend is Trend.RISE
        assert make_item("a", 35, 33).trend is Trend.DROP
        assert make_item("a", 5, 5).trend is Trend.FLAT

    def test_delta_derivation(self):
        item = make_item("a", 33, 35)
        assert item.delta == 2.0

    def test_nonfinite_rejected(self):
        with pytest.raises(ValidationError):
            make_item("a", float("nan"), 1.0)
        with pytest.raises(ValidationError):
            make_item("a", 0.0, float("inf"))

    def test_improvement_flag(self):
        riser = make_item("a", 3, 1)  # rank went from 3rd to 1st
        assert riser.trend is Trend.DROP
        assert riser.is_improvement(invert_improvement=True)
        assert not riser.is_improvement(invert_improvement=False)


class TestDataset:
    def test_empty_rejected(self):
        with pytest.raises(ValidationError, match="empty"):
            Dataset(())

    def test_duplicate_ids_listed(self):
        items = (make_item("a", 0, 1), make_item("b", 0, 1), make_item("a", 1, 2))
        with pytest.raises(ValidationError, match="a"):
            Dataset(items)


# ── CSV ──────────────────────────────────────────────────────────────


class TestParseCsv:
    def test_basic_rows(self):
        ds = parse_csv(b"id,initial,final\nA,33,35\n")
        item = ds.items[0]
        assert (item.id, item.initial, item.final) == ("A", 33.0, 35.0)
        assert item.delta == 2.0 and item.trend is Trend.RISE

    def test_flat_row(self):
        ds = parse_csv(b"id,initial,final\nB,5,5\n")
        assert ds.items[0].trend is Trend.FLAT
        assert ds.items[0].delta == 0.0

    def test_parse_error_reports_data_row_number(self):
        data = b"id,initial,final\nA,33,35\nB,5,5\nC,10,abc\n"
        with pytest.raises(ParseError, match="row 2"):
            parse_csv(data)

    def test_missing_column_named(self):
        with pytest.raises(SchemaError, match="'final'"):
            parse_csv(b"id,initial\nA,1\n")

    def test_duplicate_ids(self):
        with pytest.raises(ValidationError, match="duplicate"):
            parse_csv(b"id,initial,final\nA,1,2\nA,3,4\n")

    def test_column_mapping(self):
        data = b"player,ppg18,ppg19\nA,20.5,22.1\n"
        ds = parse_csv(data, id_column="player", initial_column="ppg18",
                       final_column="ppg19")
        assert ds.items[0].initial == 20.5

    def test_label_column_autodetected(self):
        ds = parse_csv(b"id,label,initial,final\nA,Ann,1,2\n")
        assert ds.items[0].label == "Ann"

    def test_label_defaults_to_id(self):
        ds = parse_csv(b"id,initial,final\nA,1,2\n")
        assert ds.items[0].label == "A"

    def test_document_order_preserved(self):
        ds = parse_csv(b"id,initial,final\nZ,1,2\nA,3,4\nM,5,6\n")
        assert ds.ids() == ("Z", "A", "M")

    def test_nonfinite_cell_rejected(self):
        with pytest.raises(ParseError, match="row 0"):
            parse_csv(b"id,initial,final\nA,inf,2\n")


# ── JSON ─────────────────────────────────────────────────────────────


class TestParseJson:
    def test_single_item(self):
        ds = parse_json(b'{"items":[{"id":"A","initial":33,"final":35}]}')
        assert len(ds.items) == 1
        assert ds.items[0].delta == 2.0

    def test_empty_items_rejected(self):
        with pytest.raises(ValidationError, match="empty dataset"):
            parse_json(b'{"items":[]}')

    def test_missing_field_has_json_path(self):
        with pytest.raises(SchemaError, match=r"items\[0\]\.final"):
            parse_json(b'{"items":[{"id":"A","initial":33}]}')

    def test_unknown_top_level_field_rejected(self):
        with pytest.raises(SchemaError, match="extra"):
            parse_json(b'{"items":[{"id":"A","initial":1,"final":2}],"extra":1}')

    def test_unknown_item_field_rejected(self):
        with pytest.raises(SchemaError, match="color"):
            parse_json(b'{"items":[{"id":"A","initial":1,"final":2,"color":"red"}]}')

    def test_malformed_document(self):
        with pytest.raises(ParseError):
            parse_json(b"{not json")

    def test_boolean_is_not_a_number(self):
        with pytest.raises(SchemaError, match=r"items\[0\]\.initial"):
            parse_json(b'{"items":[{"id":"A","initial":true,"final":2}]}')

    def test_transform_field(self):
        ds = parse_json(
            b'{"items":[{"id":"A","initial":1,"final":2}],'
            b'"transform":"rank_desc","invertImprovement":true}'
        )
        assert ds.transform is Transform.RANK_DESC
        assert ds.invert_improvement

    def test_bad_transform_name(self):
        with pytest.raises(SchemaError, match="transform"):
            parse_json(b'{"items":[{"id":"A","initial":1,"final":2}],"transform":"sorted"}')


ids_strategy = st.lists(
    st.text(st.characters(min_codepoint=33, max_codepoint=126), min_size=1, max_size=8),
    min_size=1,
    max_size=20,
    unique=True,
)
value_strategy = st.floats(-1e9, 1e9, allow_nan=False, allow_infinity=False)


class TestRoundTrip:
    @given(ids_strategy, st.data())
    def test_json_round_trip_is_identity(self, ids, data):
        items = tuple(
            make_item(i, data.draw(value_strategy), data.draw(value_strategy))
            for i in ids
        )
        ds = Dataset(items, transform=data.draw(st.sampled_from(list(Transform))),
                     invert_improvement=data.draw(st.booleans()))
        assert parse_json(serialize_dataset(ds)) == ds

    def test_serialized_document_matches_schema(self, demo_dataset):
        doc = json.loads(serialize_dataset(demo_dataset))
        assert set(doc) == {"items", "transform", "invertImprovement"}
        assert set(doc["items"][0]) <= {"id", "label", "initial", "final"}

    def test_dataset_to_dict_omits_default_labels(self):
        ds = Dataset((make_item("A", 1, 2),))
        assert "label" not in dataset_to_dict(ds)["items"][0]


# ── rank transform ───────────────────────────────────────────────────


class TestRankTransform:
    def test_descending_ranks(self):
        values = np.array([25.0, 30.1, 27.3])
        assert list(average_ranks(values, descending=True)) == [3.0, 1.0, 2.0]

    def test_ties_share_average_rank(self):
        assert list(average_ranks(np.array([5.0, 5.0]))) == [1.5, 1.5]

    def test_matches_scipy_rankdata(self):
        rng = np.random.default_rng(51)
        for _ in range(50):
            n = int(rng.integers(1, 60))
            values = rng.integers(0, 10, n).astype(float)  # force ties
            assert np.array_equal(average_ranks(values), stats.rankdata(values))
            assert np.array_equal(
                average_ranks(values, descending=True), stats.rankdata(-values)
            )

    def test_columns_ranked_independently(self):
        ds = Dataset((make_item("a", 25.0, 1.0), make_item("b", 30.1, 3.0),
                      make_item("c", 27.3, 2.0)))
        ranked = apply_rank_transform(ds, Transform.RANK_DESC)
        assert [it.initial for it in ranked.items] == [3.0, 1.0, 2.0]
        assert [it.final for it in ranked.items] == [3.0, 1.0, 2.0]

    def test_deltas_and_trends_recomputed(self):
        ds = Dataset((make_item("a", 10.0, 30.0), make_item("b", 20.0, 20.0),
                      make_item("c", 30.0, 10.0)))
        ranked = apply_rank_transform(ds, Transform.RANK_ASC)
        a = ranked.items[0]
        assert (a.initial, a.final, a.delta, a.trend) == (1.0, 3.0, 2.0, Trend.RISE)

    def test_source_values_retained(self):
        ds = Dataset((make_item("a", 10.5, 30.25), make_item("b", 20.0, 10.0)))
        ranked = apply_rank_transform(ds, Transform.RANK_ASC)
        assert ranked.items[0].source_initial == 10.5
        assert ranked.items[0].source_final == 30.25

    def test_rank_improvement_labeling(self):
        # third place to first place: delta -2, drop trend, improvement
        ds = Dataset(
            (make_item("a", 21.0, 29.0), make_item("b", 25.0, 24.0),
             make_item("c", 29.0, 19.0)),
            invert_improvement=True,
        )
        ranked = apply_rank_transform(ds, Transform.RANK_DESC)
        a = ranked.items[0]
        assert (a.initial, a.final) == (3.0, 1.0)
        assert a.delta == -2.0 and a.trend is Trend.DROP
        assert a.is_improvement(ranked.invert_improvement)

    def test_idempotent_on_tie_free_ranked_columns(self):
        rng = np.random.default_rng(53)
        values = rng.permutation(np.arange(1.0, 41.0))
        finals = rng.permutation(np.arange(1.0, 41.0))
        ds = Dataset(tuple(
            make_item(f"i{j}", values[j], finals[j]) for j in range(40)
        ))
        once = apply_rank_transform(ds, Transform.RANK_ASC)
        twice = apply_rank_transform(once, Transform.RANK_ASC)
        assert [it.initial for it in once.items] == [it.initial for it in twice.items]
        assert [it.final for it in once.items] == [it.final for it in twice.items]

    def test_order_isomorphism_on_tie_free_columns(self):
        rng = np.random.default_rng(57)
        for _ in range(20):
            n = int(rng.integers(2, 51))
            initial = rng.permutation(rng.uniform(0, 100, n))
            final = rng.uniform(0, 100, n)
            ds = Dataset(tuple(
                make_item(f"i{j}", initial[j], final[j]) for j in range(n)
            ))
            ranked = apply_rank_transform(ds, Transform.RANK_ASC)
            for a in range(n):
                for b in range(n):
                    raw = ds.items[a].initial - ds.items[b].initial
                    rk = ranked.items[a].initial - ranked.items[b].initial
                    assert np.sign(raw) == np.sign(rk)

    def test_ranked_columns_are_permutations(self, demo_dataset):
        ranked = apply_rank_transform(demo_dataset, Transform.RANK_DESC)
        n = len(ranked.items)
        assert sorted(it.initial for it in ranked.items) == list(range(1, n + 1))
        assert sorted(it.final for it in ranked.items) == list(range(1, n + 1))

    def test_identity_direction_rejected(self):
        ds = Dataset((make_item("a", 1, 2),))
        with pytest.raises(ValidationError):
            apply_rank_transform(ds, Transform.IDENTITY)
