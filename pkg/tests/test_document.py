import json
from fractions import Fraction

import pytest

from semilin.document import (Document, DocumentError, encode_value,
                              parse_document, serialize_document)
from semilin.intervals import boundedness, isolate_interval, metrics
from semilin.planar import Point, decompose, pc_normalize, stab_bd
from semilin.synthesis import derive_ray
from semilin.classifier import classify

from conftest import iu, random_bounded_family, random_complex, random_union

F = Fraction


def roundtrip(doc: Document) -> Document:
    return parse_document(serialize_document(doc))


class TestRoundTrip:
    def test_interval_union(self, rng):
        for _ in range(40):
            x = random_union(rng)
            assert roundtrip(Document({"x": x})).objects["x"] == x

    def test_planar_complex(self, rng):
        for _ in range(40):
            x = random_complex(rng, 4)
            assert roundtrip(Document({"x": x})).objects["x"] == x

    def test_family(self, rng):
        for _ in range(40):
            f = random_bounded_family(rng)
            assert roundtrip(Document({"f": f})).objects["f"] == f

    def test_trace(self):
        y = iu("(-inf,0) (1,2)")
        _, trace = derive_ray(y)
        assert roundtrip(Document({"t": trace})).objects["t"] == trace

    def test_records_pass_through(self):
        doc = Document({
            "b": encode_value(boundedness(iu("(0,3) (5,6)"))),
            "m": encode_value(metrics(iu("(0,1)"))),
            "i": encode_value(isolate_interval(iu("(0,1) (2,4)"))),
            "s": encode_value(stab_bd(pc_normalize([Point(0, 0)]))),
            "d": encode_value(decompose(pc_normalize([Point(0, 0)]))),
            "v": encode_value(classify({"x": iu("(0,1)")})),
        })
        text = serialize_document(doc)
        assert serialize_document(parse_document(text)) == text

    def test_identity_on_canonical_text(self, rng):
        doc = Document({"x": random_union(rng), "p": random_complex(rng, 3)})
        text = serialize_document(doc)
        assert serialize_document(parse_document(text)) == text


class TestCanonicalization:
    def test_unnormalized_input_normalizes(self):
        text = json.dumps({
            "version": "1",
            "objects": {"x": {"type": "interval_union", "intervals": [
                {"lo": "2", "hi": "10/2", "lo_closed": False, "hi_closed": False},
                {"lo": "0", "hi": "3", "lo_closed": False, "hi_closed": False},
            ]}},
        })
        doc = parse_document(text)
        assert doc.objects["x"] == iu("(0,5)")

    def test_rationals_reduce(self):
        text = json.dumps({
            "version": "1",
            "objects": {"x": {"type": "interval_union", "intervals": [
                {"lo": "2/4", "hi": "6/4", "lo_closed": False, "hi_closed": False},
            ]}},
        })
        out = serialize_document(parse_document(text))
        assert '"1/2"' in out and '"3/2"' in out


def _doc(objects):
    return json.dumps({"version": "1", "objects": objects})


class TestStrictness:
    def test_rejects_unknown_field(self):
        with pytest.raises(DocumentError):
            parse_document(_doc({"x": {"type": "interval_union",
                                       "intervals": [], "extra": 1}}))

    def test_rejects_unknown_type(self):
        with pytest.raises(DocumentError):
            parse_document(_doc({"x": {"type": "polygon"}}))

    def test_rejects_duplicate_names(self):
        text = ('{"version": "1", "objects": {"x": {"type": "interval_union",'
            ' "intervals": []}, "x": {"type": "interval_union", "intervals": []}}}')
        with pytest.raises(DocumentError):
            parse_document(text)

    def test_rejects_bad_version(self):
        with pytest.raises(DocumentError):
            parse_document('{"version": "99", "objects": {}}')

    def test_rejects_float_rationals(self):
        with pytest.raises(DocumentError):
            parse_document(_doc({"x": {"type": "interval_union", "intervals": [
                {"lo": "0.5", "hi": "1", "lo_closed": False, "hi_closed": False},
            ]}}))

    def test_rejects_malformed_interval(self):
        with pytest.raises(DocumentError):
            parse_document(_doc({"x": {"type": "interval_union", "intervals": [
                {"lo": "1", "hi": "0", "lo_closed": False, "hi_closed": False},
            ]}}))

    def test_rejects_non_json(self):
        with pytest.raises(DocumentError):
            parse_document("not json")

    def test_rejects_bad_trace_step(self):
        with pytest.raises(DocumentError):
            parse_document(_doc({"t": {"type": "trace", "generators": ["Y"],
                                       "steps": [{"op": "closure", "src": "Y"}],
                                       "output": "Y"}}))

    def test_rejects_section_without_offset(self):
        with pytest.raises(DocumentError):
            parse_document(_doc({"t": {"type": "trace", "generators": ["Y"],
                                       "steps": [{"op": "section", "src": "Y",
                                                  "slope": "1"}],
                                       "output": 0}}))
