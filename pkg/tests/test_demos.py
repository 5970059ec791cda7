import json

import pytest

from codecrypt_lab import reference_data as ref
from codecrypt_lab.demos import DEMOS, run_demo
from codecrypt_lab.errors import UnknownParamSet


@pytest.mark.parametrize("key", sorted(DEMOS))
def test_every_demo_matches_its_reference(key):
    result = run_demo(key)
    failed = [c.name for c in result.checks if not c.ok]
    assert result.ok, failed
    assert result.checks


def test_demo_json_is_serializable():
    data = run_demo("prange-f5").to_json()
    assert data["example"] == "prange-f5"
    assert data["ok"] is True
    json.dumps(data)


def test_every_reference_example_has_a_demo():
    keys = {record.key for record in ref.ALL_EXAMPLES}
    assert keys == set(DEMOS)
    assert ref.get_example("3dm") is ref.TDM_EXAMPLE


def test_unknown_demo():
    with pytest.raises(UnknownParamSet):
        run_demo("rsa")
    with pytest.raises(UnknownParamSet):
        ref.get_example("rsa")
